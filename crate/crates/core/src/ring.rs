//! Residue arithmetic on `Z_n`: cyclic distance, interval span and the
//! permutation type everything else works with.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use crate::error::{param_err, Result};

/// Cyclic distance without range checks. Callers guarantee `i, j < n`.
#[inline]
pub(crate) fn dist(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j);
    d.min(n - d)
}

/// `(b - a) mod n` for residues `a, b < n`.
#[inline]
pub(crate) fn forward(a: usize, b: usize, n: usize) -> usize {
    if b >= a {
        b - a
    } else {
        n - a + b
    }
}

/// The distance between `i` and `j` when `Z_n` is drawn as a cycle:
/// `min((i−j) mod n, (j−i) mod n)`.
pub fn circ_dist(i: usize, j: usize, n: usize) -> Result<usize> {
    if n < 2 {
        return Err(param_err!("modulus must be at least 2, got {n}"));
    }
    if i >= n || j >= n {
        return Err(param_err!("residues {i}, {j} out of range for n = {n}"));
    }
    Ok(dist(i, j, n))
}

/// Span of sorted distinct residues: `n` minus the largest cyclic gap.
pub(crate) fn sorted_span(members: &[usize], n: usize) -> usize {
    match members.len() {
        0 | 1 => 0,
        len => {
            let mut gap = n - members[len - 1] + members[0];
            for w in members.windows(2) {
                gap = gap.max(w[1] - w[0]);
            }
            n - gap
        }
    }
}

/// A nonempty subset of `Z_n`, members kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueSet {
    n: usize,
    members: Vec<usize>,
}

impl ResidueSet {
    /// Builds a set from arbitrary residues; duplicates are merged.
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self> {
        if n < 2 {
            return Err(param_err!("modulus must be at least 2, got {n}"));
        }
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m >= n) {
            return Err(param_err!("residue {bad} out of range for n = {n}"));
        }
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(param_err!("residue set must be nonempty"));
        }
        Ok(ResidueSet { n, members })
    }

    /// `members` must already be sorted, distinct, nonempty and `< n`.
    pub(crate) fn from_sorted(n: usize, members: Vec<usize>) -> Self {
        debug_assert!(!members.is_empty());
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|&m| m < n));
        ResidueSet { n, members }
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `||X||_n`: the least `t` such that `X ⊆ x + [0, t] mod n` for some `x`.
    ///
    /// Computed as `n` minus the largest gap between cyclically consecutive
    /// members, so a singleton has span 0.
    pub fn span(&self) -> usize {
        sorted_span(&self.members, self.n)
    }
}

/// A bijection on `Z_n`, stored as its value table: entry `t` is `π(t)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Validates that `values` lists every residue of `Z_n` exactly once,
    /// where `n = values.len() ≥ 2`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(param_err!("permutation needs n >= 2, got {n}"));
        }
        let mut seen = vec![false; n];
        for (t, &v) in values.iter().enumerate() {
            if v >= n {
                return Err(param_err!(
                    "value {v} at position {t} out of range for n = {n}"
                ));
            }
            if core::mem::replace(&mut seen[v], true) {
                return Err(param_err!("value {v} repeated at position {t}"));
            }
        }
        Ok(Permutation { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(param_err!("permutation needs n >= 2, got {n}"));
        }
        Ok(Permutation {
            values: (0..n).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.values
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(t, &v)| t == v)
    }

    /// `π^{-1}`, so that `inverse[π(i)] = i`.
    pub fn invert(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { values: inv }
    }

    /// `π′(i) = π(i − a) + b (mod n)`.
    ///
    /// Shifts the torus picture by `a` columns and `b` rows; clash-freeness
    /// is preserved.
    pub fn translate(&self, a: usize, b: usize) -> Result<Permutation> {
        let n = self.n();
        if a >= n || b >= n {
            return Err(param_err!("shift ({a}, {b}) out of range for n = {n}"));
        }
        let values = (0..n)
            .map(|i| (self.values[(i + n - a) % n] + b) % n)
            .collect();
        Ok(Permutation { values })
    }

    /// Image of a residue set under `π`.
    pub fn image(&self, set: &ResidueSet) -> ResidueSet {
        debug_assert_eq!(set.modulus(), self.n());
        let mut members: Vec<usize> = set.members().iter().map(|&i| self.values[i]).collect();
        members.sort_unstable();
        ResidueSet::from_sorted(self.n(), members)
    }
}

impl Index<usize> for Permutation {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.values[i]
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.values)
    }
}
