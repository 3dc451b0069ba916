//! The matrix-cycle construction.
//!
//! For `s+1 < n` let `d = gcd(s+1, n)` and `ℓ = n/d`. The `d×ℓ` matrix with
//! entries `A[i][j] = i + j(s+1) mod n` lists every residue exactly once (row
//! `i` is the coset `i + ⟨s+1⟩`). Starting at `A[0][0]`, the walk steps one
//! column east (cyclically) at every move, and additionally
//!
//! * drops one row (south-east) when `j ≡ ℓ−1−i (mod ℓ)` and `i < d−1`;
//! * climbs one row (north-east) when `j ≡ ℓ−i (mod ℓ)` and `i > 0`.
//!
//! East, south-east and north-east moves add `s+1`, `s+2` and `s` to the
//! entry. Reading the entries along the walk gives a permutation `π` whose
//! consecutive values differ by at least `s` and, over any `k` consecutive
//! positions, by at most `(k−1)(s+1)+d−1`. That makes `π` a
//! `(k,s,r)`-clash-free permutation whenever `k(s+1)+d−3 ≤ rn−1`, so its
//! inverse is `(s,k,r)`-clash-free.
//!
//! The matrix itself is never materialised: the walk only tracks its
//! current cell.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{param_err, Error, Result};
use crate::ring::Permutation;

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Shape of the cycle matrix for a given `(n, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConstructionParams {
    pub n: usize,
    pub s: usize,
    /// `gcd(s+1, n)`: number of rows.
    pub d: usize,
    /// `n / d`: number of columns, the additive order of `s+1` in `Z_n`.
    pub ell: usize,
}

impl ConstructionParams {
    /// Requires `1 ≤ s` and `s+1 < n`.
    pub fn new(n: usize, s: usize) -> Result<Self> {
        if s == 0 {
            return Err(param_err!("width s must be positive"));
        }
        if s.checked_add(1).is_none_or(|s1| s1 >= n) {
            return Err(param_err!(
                "need s + 1 < n for the cycle matrix, got n = {n}, s = {s}"
            ));
        }
        let d = gcd(s + 1, n);
        Ok(ConstructionParams {
            n,
            s,
            d,
            ell: n / d,
        })
    }

    fn check_cell(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.d || j >= self.ell {
            return Err(param_err!(
                "cell ({i}, {j}) outside the {}x{} matrix",
                self.d,
                self.ell
            ));
        }
        Ok(())
    }

    /// `A[i][j] = i + j(s+1) mod n`.
    pub fn matrix_entry(&self, i: usize, j: usize) -> Result<usize> {
        self.check_cell(i, j)?;
        Ok(self.entry(i, j))
    }

    // j < ell and j(s+1) < ell(s+1) ≤ n·(s+1)/d; use u128 to stay clear of overflow.
    fn entry(&self, i: usize, j: usize) -> usize {
        ((i as u128 + j as u128 * (self.s as u128 + 1)) % self.n as u128) as usize
    }

    /// The move taken out of cell `(i, j)`.
    pub fn next_move(&self, i: usize, j: usize) -> Result<Move> {
        self.check_cell(i, j)?;
        Ok(self.move_at(i, j))
    }

    fn move_at(&self, i: usize, j: usize) -> Move {
        let ell = self.ell;
        let down_col = (ell - 1 + ell - i % ell) % ell;
        let up_col = (down_col + 1) % ell;
        if j == down_col && i + 1 < self.d {
            Move::SouthEast
        } else if j == up_col && i > 0 {
            Move::NorthEast
        } else {
            Move::East
        }
    }

    /// Rows and columns of the matrix, for display.
    pub fn matrix_rows(&self) -> Vec<Vec<usize>> {
        (0..self.d)
            .map(|i| (0..self.ell).map(|j| self.entry(i, j)).collect())
            .collect()
    }
}

/// One step of the walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    East,
    SouthEast,
    NorthEast,
}

impl Move {
    /// Increment of the matrix entry: `s+1`, `s+2` or `s`.
    pub fn delta(self, s: usize) -> usize {
        match self {
            Move::East => s + 1,
            Move::SouthEast => s + 2,
            Move::NorthEast => s,
        }
    }

    /// Cell reached from `(i, j)` in a `d×ℓ` matrix.
    pub fn apply(self, (i, j): (usize, usize), ell: usize) -> (usize, usize) {
        let j = (j + 1) % ell;
        match self {
            Move::East => (i, j),
            Move::SouthEast => (i + 1, j),
            Move::NorthEast => (i - 1, j),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Move::East => "E",
            Move::SouthEast => "SE",
            Move::NorthEast => "NE",
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// The full closed walk through the matrix.
///
/// `moves[t]` leads from `cells[t]` to `cells[t+1]`, and `moves[n−1]`
/// leads back to `(0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWalk {
    pub params: ConstructionParams,
    pub cells: Vec<(usize, usize)>,
    pub moves: Vec<Move>,
}

impl CycleWalk {
    /// Matrix entries in walk order.
    pub fn values(&self) -> Vec<usize> {
        self.cells
            .iter()
            .map(|&(i, j)| self.params.entry(i, j))
            .collect()
    }

    pub fn count(&self, kind: Move) -> usize {
        self.moves.iter().filter(|&&m| m == kind).count()
    }
}

/// Walks the matrix from `(0, 0)` for `n` steps, checking that every cell
/// is visited once and that the walk closes.
pub fn cycle_walk(params: &ConstructionParams) -> Result<CycleWalk> {
    let n = params.n;
    let mut visited = vec![false; n];
    let mut cells = Vec::with_capacity(n);
    let mut moves = Vec::with_capacity(n);
    let mut cell = (0, 0);
    for step in 0..n {
        let value = params.entry(cell.0, cell.1);
        if core::mem::replace(&mut visited[value], true) {
            return Err(Error::Construction(alloc::format!(
                "walk revisits cell {cell:?} at step {step}"
            )));
        }
        let mv = params.move_at(cell.0, cell.1);
        cells.push(cell);
        moves.push(mv);
        cell = mv.apply(cell, params.ell);
    }
    if cell != (0, 0) {
        return Err(Error::Construction(alloc::format!(
            "walk ends at {cell:?} instead of closing at (0, 0)"
        )));
    }
    Ok(CycleWalk {
        params: *params,
        cells,
        moves,
    })
}

/// Reads the matrix entries along the walk: `π(t)` is the entry of the
/// `t`-th cell visited. This is the forward permutation, `(k,s)`-clash-free
/// under the usual conditions; [`construct_pairwise`] returns its inverse.
pub fn build_cycle_permutation(n: usize, s: usize) -> Result<Permutation> {
    let params = ConstructionParams::new(n, s)?;
    let walk = cycle_walk(&params)?;
    Ok(Permutation::from_vec_unchecked(walk.values()))
}

/// An interval `[lower, upper]` known to contain `σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub lower: usize,
    pub upper: usize,
}

impl Bounds {
    pub fn contains(&self, value: usize) -> bool {
        self.lower <= value && value <= self.upper
    }
}

fn check_modulus(n: usize) -> Result<()> {
    if n < 2 {
        return Err(param_err!("modulus must be at least 2, got {n}"));
    }
    Ok(())
}

/// Bounds on `σ(n,k)`: `[max(1, ⌊(n−1)/k⌋−1), ⌊(n−1)/k⌋]` for `2 ≤ k < n`.
///
/// For `k ≥ n` every distinct pair of images is closer than `k`, so only
/// `s = 1` works and the interval is `[1, 1]`. For `k = 1` nothing can
/// clash and the interval is `[n, n]`.
pub fn sigma_bounds(n: usize, k: usize) -> Result<Bounds> {
    check_modulus(n)?;
    match k {
        0 => Err(param_err!("k must be positive")),
        1 => Ok(Bounds { lower: n, upper: n }),
        k if k >= n => Ok(Bounds { lower: 1, upper: 1 }),
        k => {
            let upper = (n - 1) / k;
            Ok(Bounds {
                lower: upper.saturating_sub(1).max(1),
                upper,
            })
        }
    }
}

fn check_multi_range(n: usize, k: usize, r: usize) -> Result<()> {
    check_modulus(n)?;
    if !(1 < r && r < k && k < n) {
        return Err(param_err!(
            "multiple-coverage bounds assume 1 < r < k < n, got n = {n}, k = {k}, r = {r}"
        ));
    }
    Ok(())
}

/// `⌊(rn−1)/k⌋` in wide arithmetic.
fn multi_upper(n: usize, k: usize, r: usize) -> usize {
    ((r as u128 * n as u128 - 1) / k as u128) as usize
}

/// Bounds on `σ(n,k,r)`: `[⌊(rn−1)/k⌋−1, ⌊(rn−1)/k⌋]` for `1 < r < k < n`.
pub fn sigma_bounds_multi(n: usize, k: usize, r: usize) -> Result<Bounds> {
    check_multi_range(n, k, r)?;
    let upper = multi_upper(n, k, r);
    Ok(Bounds {
        lower: upper - 1,
        upper,
    })
}

/// Whether `k(s+1) + d − 3 ≤ rn − 1` with `d = gcd(s+1, n)`: the condition
/// under which the inverse of the walk permutation is `(s,k,r)`-clash-free.
pub fn construction_condition(n: usize, k: usize, s: usize, r: usize) -> Result<bool> {
    check_modulus(n)?;
    if !(1 <= r && r < k && k < n) {
        return Err(param_err!(
            "construction condition assumes 1 <= r < k < n, got n = {n}, k = {k}, r = {r}"
        ));
    }
    let params = ConstructionParams::new(n, s)?;
    let lhs = k as u128 * (s as u128 + 1) + params.d as u128;
    let rhs = r as u128 * n as u128 + 2;
    Ok(lhs <= rhs)
}

/// Output of [`construct_pairwise`] and [`construct_multi`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub s: usize,
    /// `None` in the trivial regime, where no walk is needed.
    pub params: Option<ConstructionParams>,
    /// Set when `s ≤ 1`: every permutation is clash-free there and the
    /// identity is returned.
    pub trivial: bool,
    pub perm: Permutation,
}

fn finish(n: usize, k: usize, r: usize, s: usize) -> Result<Construction> {
    if s <= 1 {
        return Ok(Construction {
            n,
            k,
            r,
            s: s.max(1),
            params: None,
            trivial: true,
            perm: Permutation::identity(n)?,
        });
    }
    let params = ConstructionParams::new(n, s)?;
    let walk = cycle_walk(&params)?;
    let forward = Permutation::from_vec_unchecked(walk.values());
    Ok(Construction {
        n,
        k,
        r,
        s,
        params: Some(params),
        trivial: false,
        perm: forward.invert(),
    })
}

/// An `(s,k)`-clash-free permutation of `Z_n` with `s = ⌊(n−1)/k⌋−1`.
pub fn construct_pairwise(n: usize, k: usize) -> Result<Construction> {
    check_modulus(n)?;
    if k < 2 || k >= n {
        return Err(param_err!(
            "pairwise construction needs 2 <= k < n, got n = {n}, k = {k}"
        ));
    }
    let s = ((n - 1) / k).saturating_sub(1);
    finish(n, k, 1, s)
}

/// An `(s,k,r)`-clash-free permutation of `Z_n` with `s = ⌊(rn−1)/k⌋−1`.
pub fn construct_multi(n: usize, k: usize, r: usize) -> Result<Construction> {
    check_multi_range(n, k, r)?;
    let s = multi_upper(n, k, r) - 1;
    if s >= 2 && !construction_condition(n, k, s, r)? {
        return Err(Error::Construction(alloc::format!(
            "condition k(s+1)+d-3 <= rn-1 fails at n = {n}, k = {k}, r = {r}, s = {s}"
        )));
    }
    finish(n, k, r, s)
}
