//! The permutation text form: one JSON object `{"n": 5, "perm": [0,2,4,1,3]}`.
//!
//! Readers ignore extra fields, so the output of `construct` can be fed
//! straight back into `verify` or `render`.

use clashfree_core::Permutation;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermText {
    pub n: usize,
    pub perm: Vec<usize>,
}

impl PermText {
    pub fn to_permutation(&self) -> Result<Permutation, CliError> {
        if self.perm.len() != self.n {
            return Err(CliError::Param(format!(
                "field n = {} but perm has {} entries",
                self.n,
                self.perm.len()
            )));
        }
        Ok(Permutation::new(self.perm.clone())?)
    }
}

impl From<&Permutation> for PermText {
    fn from(p: &Permutation) -> Self {
        PermText {
            n: p.n(),
            perm: p.as_slice().to_vec(),
        }
    }
}

pub fn parse_permutation(text: &str) -> Result<Permutation, CliError> {
    let parsed: PermText = serde_json::from_str(text.trim())
        .map_err(|e| CliError::Param(format!("bad permutation text: {e}")))?;
    parsed.to_permutation()
}

pub fn permutation_to_string(p: &Permutation) -> String {
    serde_json::to_string(&PermText::from(p)).expect("plain struct serializes")
}
