//! IO, file formats and parallel search for the `clashfree` command.

pub mod error;
pub mod format;
pub mod parallel;
pub mod random;

pub use error::CliError;
