//! Reproducible random permutations: ChaCha8 seeded from a `u64`, shuffled
//! with Fisher–Yates.

use clashfree_core::Permutation;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::CliError;

pub fn random_permutation(n: usize, seed: u64) -> Result<Permutation, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values: Vec<usize> = (0..n).collect();
    values.shuffle(&mut rng);
    Ok(Permutation::new(values)?)
}
