//! Clash-free permutations of `Z_n`.
//!
//! A permutation `π` of `Z_n` is `(s,k)`-clash-free when any two distinct
//! indices at cyclic distance `< s` are sent to images at cyclic distance
//! `≥ k`. More generally it is `(s,k,r)`-clash-free when no `(r+1)`-subset
//! fits in a cyclic interval of length `< s` while its image fits in one of
//! length `< k`. Geometrically: `n` open `s×k` rectangles centred at
//! `(i, π(i))` on the `n×n` torus, no point interior to more than `r` of them.
//!
//! The crate is `no_std` and only needs `alloc`. It provides
//!
//! * [`ring`]: cyclic distance, interval span, the [`Permutation`] type;
//! * [`construct`]: the matrix-cycle construction reaching
//!   `s = ⌊(rn−1)/k⌋−1`, plus the bound formulas;
//! * [`verify`]: a sliding-window clash detector and a literal
//!   subset-enumeration oracle;
//! * [`search`]: exact `σ(n,k,r)` for small `n` by backtracking;
//! * [`render`]: half-lattice coverage counts and SVG output.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod construct;
mod error;
pub mod render;
pub mod ring;
pub mod search;
pub mod verify;

pub use construct::{
    build_cycle_permutation, construct_multi, construct_pairwise, construction_condition,
    cycle_walk, sigma_bounds, sigma_bounds_multi, Bounds, Construction, ConstructionParams,
    CycleWalk, Move,
};
pub use error::{Error, Result};
pub use render::{coverage_counts, render_svg, CoverageGrid, SvgOptions};
pub use ring::{circ_dist, Permutation, ResidueSet};
pub use search::{exists_clash_free, sigma_exact, sigma_exact_multi, SearchLimits, SigmaResult};
pub use verify::{
    find_multi_clashes, find_pair_clashes, is_clash_free, is_clash_free_multi, oracle_clashes,
    oracle_multi, ClashWitness, OracleLimit,
};
