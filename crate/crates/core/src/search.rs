//! Exact `σ(n,k,r)` for small `n` by backtracking.
//!
//! Indices are assigned in order `0, 1, …, n−1` with `π(0) = 0` fixed (any
//! clash-free permutation can be shifted in the image so that this holds,
//! and the shift keeps it clash-free). A partial assignment is abandoned as
//! soon as the assigned indices already contain a clash, which can never be
//! undone by later assignments. Values are tried in increasing order, so the
//! first complete assignment is the lexicographically least witness.

use alloc::vec;
use alloc::vec::Vec;

use crate::construct::{sigma_bounds, sigma_bounds_multi, Bounds};
use crate::error::{param_err, Error, Result};
use crate::ring::{dist, forward, Permutation};

/// Largest modulus the search accepts; the used-value set is a `u64` mask.
pub const HARD_MAX_N: usize = 64;

/// Size cap for exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_n: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_n: 12 }
    }
}

/// Outcome of one decision search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub witness: Option<Permutation>,
    pub nodes: u64,
}

/// A validated instance of "is there an `(s,k,r)`-clash-free permutation of
/// `Z_n`?".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Problem {
    pub n: usize,
    pub s: usize,
    pub k: usize,
    pub r: usize,
}

impl Problem {
    pub fn new(n: usize, s: usize, k: usize, r: usize, limits: SearchLimits) -> Result<Self> {
        check_size(n, limits)?;
        if s == 0 || k == 0 || r == 0 {
            return Err(param_err!(
                "s, k and r must be positive, got s = {s}, k = {k}, r = {r}"
            ));
        }
        if s > n || k > n {
            return Err(param_err!(
                "s and k must not exceed n = {n}, got s = {s}, k = {k}"
            ));
        }
        Ok(Problem { n, s, k, r })
    }

    /// Candidate values for `π(1)`, in search order. The subtrees are
    /// independent, so callers may explore them concurrently and keep the
    /// first witness in this order.
    pub fn branches(&self) -> core::ops::Range<usize> {
        1..self.n
    }

    pub fn solve(&self) -> Decision {
        let mut state = State::new(self);
        let found = state.extend(1);
        state.finish(found)
    }

    /// Explores only the subtree with `π(1) = second`.
    pub fn solve_branch(&self, second: usize) -> Decision {
        let mut state = State::new(self);
        let found = second < self.n && state.try_place(1, second) && state.extend(2);
        state.finish(found)
    }
}

fn check_size(n: usize, limits: SearchLimits) -> Result<()> {
    if n < 2 {
        return Err(param_err!("modulus must be at least 2, got {n}"));
    }
    let cap = limits.max_n.min(HARD_MAX_N);
    if n > cap {
        return Err(Error::ResourceLimit(alloc::format!(
            "exhaustive search capped at n = {cap}, got n = {n}"
        )));
    }
    Ok(())
}

struct State<'a> {
    p: &'a Problem,
    vals: Vec<usize>,
    used: u64,
    nodes: u64,
    scratch: Vec<usize>,
}

impl<'a> State<'a> {
    fn new(p: &'a Problem) -> Self {
        let mut vals = vec![0; p.n];
        vals[0] = 0;
        State {
            p,
            vals,
            used: 1,
            nodes: 1,
            scratch: Vec::with_capacity(p.s),
        }
    }

    fn finish(self, found: bool) -> Decision {
        Decision {
            witness: found.then(|| Permutation::from_vec_unchecked(self.vals)),
            nodes: self.nodes,
        }
    }

    fn extend(&mut self, t: usize) -> bool {
        if t == self.p.n {
            return true;
        }
        for v in 1..self.p.n {
            if self.try_place(t, v) {
                if self.extend(t + 1) {
                    return true;
                }
                self.used &= !(1 << v);
            }
        }
        false
    }

    /// Places `π(t) = v` if `v` is free and no clash appears among
    /// indices `0..=t`. Leaves the state unchanged on rejection.
    fn try_place(&mut self, t: usize, v: usize) -> bool {
        if self.used >> v & 1 == 1 {
            return false;
        }
        self.vals[t] = v;
        if self.clashes_at(t) {
            return false;
        }
        self.used |= 1 << v;
        self.nodes += 1;
        true
    }

    /// Whether a clash exists among indices `0..=t` that the previous
    /// placements did not already rule out, i.e. one containing `t`.
    fn clashes_at(&mut self, t: usize) -> bool {
        let Problem { n, s, k, r } = *self.p;
        let v = self.vals[t];
        if r == 1 {
            return (0..t).any(|j| dist(j, t, n) < s && dist(self.vals[j], v, n) < k);
        }
        let windows = if s == n { 1 } else { s };
        for o in 0..windows {
            let start = (t + n - o) % n;
            self.scratch.clear();
            for q in 0..s {
                let i = (start + q) % n;
                if i <= t {
                    self.scratch.push(self.vals[i]);
                }
            }
            if self.scratch.len() <= r {
                continue;
            }
            let pts = &self.scratch;
            let crowded = pts
                .iter()
                .any(|&a| pts.iter().filter(|&&b| forward(a, b, n) < k).count() > r);
            if crowded {
                return true;
            }
        }
        false
    }
}

/// A lexicographically least `(s,k,r)`-clash-free permutation of `Z_n`, or
/// `None` when none exists.
pub fn exists_clash_free(
    n: usize,
    s: usize,
    k: usize,
    r: usize,
    limits: SearchLimits,
) -> Result<Option<Permutation>> {
    Ok(Problem::new(n, s, k, r, limits)?.solve().witness)
}

/// How a σ value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `k = 1`: nothing can clash, `σ = n`.
    UnitK,
    /// `r = 1`, `k ≥ n`: every pair of images is within `k`, `σ = 1`.
    KAtLeastN,
    /// `r ≥ n`: there are no `(r+1)`-subsets, `σ = n`.
    RAtLeastN,
    /// `r ≥ k`: every `(r+1)`-subset has image span `≥ r ≥ k`, `σ = n`.
    RAtLeastK,
    /// Determined by exhaustive search.
    Searched,
}

/// Exact `σ(n,k,r)` with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaResult {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub value: usize,
    /// An `(value, k, r)`-clash-free permutation.
    pub witness: Permutation,
    pub nodes_explored: u64,
    /// The known interval for `σ`, when the parameters fall in its range.
    pub bounds: Option<Bounds>,
    /// Result of probing `s = upper + 1`; `Some(false)` certifies the upper
    /// bound. `None` when no probe ran.
    pub above_upper_feasible: Option<bool>,
    pub regime: Regime,
}

/// Exact `σ(n,k)` (the pairwise case `r = 1`).
pub fn sigma_exact(n: usize, k: usize, limits: SearchLimits) -> Result<SigmaResult> {
    sigma_exact_multi(n, k, 1, limits)
}

/// Exact `σ(n,k,r)`, searching single-threaded.
pub fn sigma_exact_multi(
    n: usize,
    k: usize,
    r: usize,
    limits: SearchLimits,
) -> Result<SigmaResult> {
    sigma_exact_with(n, k, r, limits, |p| p.solve())
}

/// Exact `σ(n,k,r)` with a caller-supplied decision procedure, which must
/// agree with [`Problem::solve`] on feasibility.
pub fn sigma_exact_with(
    n: usize,
    k: usize,
    r: usize,
    limits: SearchLimits,
    mut decide: impl FnMut(&Problem) -> Decision,
) -> Result<SigmaResult> {
    if n < 2 {
        return Err(param_err!("modulus must be at least 2, got {n}"));
    }
    if k == 0 || r == 0 {
        return Err(param_err!("k and r must be positive, got k = {k}, r = {r}"));
    }
    let trivial = |value: usize, regime: Regime| -> Result<SigmaResult> {
        Ok(SigmaResult {
            n,
            k,
            r,
            value,
            witness: Permutation::identity(n)?,
            nodes_explored: 0,
            bounds: (r == 1).then(|| sigma_bounds(n, k)).transpose()?,
            above_upper_feasible: None,
            regime,
        })
    };
    if k == 1 {
        return trivial(n, Regime::UnitK);
    }
    if r >= n {
        return trivial(n, Regime::RAtLeastN);
    }
    if r >= k {
        return trivial(n, Regime::RAtLeastK);
    }
    if r == 1 && k >= n {
        return trivial(1, Regime::KAtLeastN);
    }
    check_size(n, limits)?;

    // Image spans never reach n, so k > n behaves like k = n.
    let k_eff = k.min(n);
    let bounds = if r == 1 {
        Some(sigma_bounds(n, k)?)
    } else if k < n {
        Some(sigma_bounds_multi(n, k, r)?)
    } else {
        None
    };

    let mut nodes = 0;
    let mut probe = |s: usize| -> Result<Option<Permutation>> {
        let d = decide(&Problem::new(n, s, k_eff, r, limits)?);
        nodes += d.nodes;
        Ok(d.witness)
    };

    let mut above_upper_feasible = None;
    let mut best: Option<(usize, Permutation)> = None;
    let start = match bounds {
        Some(b) if b.upper < n => {
            let found = probe(b.upper + 1)?;
            above_upper_feasible = Some(found.is_some());
            if let Some(w) = found {
                // Walk upward; feasibility is monotone in s.
                let mut s = b.upper + 1;
                let mut w = w;
                while s < n {
                    match probe(s + 1)? {
                        Some(next) => {
                            s += 1;
                            w = next;
                        }
                        None => break,
                    }
                }
                best = Some((s, w));
            }
            b.upper
        }
        Some(b) => b.upper.min(n),
        None => n,
    };
    if best.is_none() {
        for s in (1..=start).rev() {
            if let Some(w) = probe(s)? {
                best = Some((s, w));
                break;
            }
        }
    }
    let (value, witness) = best.ok_or_else(|| {
        Error::Construction(alloc::format!(
            "no clash-free permutation found even at s = 1 for n = {n}, k = {k}, r = {r}"
        ))
    })?;
    Ok(SigmaResult {
        n,
        k,
        r,
        value,
        witness,
        nodes_explored: nodes,
        bounds,
        above_upper_feasible,
        regime: Regime::Searched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{is_clash_free, is_clash_free_multi, oracle_multi, OracleLimit};

    /// All permutations of `0..n` in lexicographic order.
    fn lex_perms(n: usize) -> Vec<Vec<usize>> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = vec![cur.clone()];
        loop {
            let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
            out.push(cur.clone());
        }
    }

    fn limits(max_n: usize) -> SearchLimits {
        SearchLimits { max_n }
    }

    #[test]
    fn unit_width_gives_identity() {
        let w = exists_clash_free(5, 1, 5, 1, limits(12)).unwrap().unwrap();
        assert!(w.is_identity());
    }

    #[test]
    fn torus_example_parameters_are_feasible() {
        let w = exists_clash_free(20, 5, 3, 1, limits(20)).unwrap().unwrap();
        assert!(is_clash_free(&w, 5, 3));
    }

    #[test]
    fn upper_bound_is_tight_for_z6() {
        assert_eq!(exists_clash_free(6, 6, 2, 1, limits(12)), Ok(None));
        let any = lex_perms(6)
            .into_iter()
            .any(|v| is_clash_free(&Permutation::new(v).unwrap(), 6, 2));
        assert!(!any);
    }

    #[test]
    fn decision_matches_brute_force() {
        for n in 2..=7 {
            let perms: Vec<Permutation> = lex_perms(n)
                .into_iter()
                .map(|v| Permutation::new(v).unwrap())
                .collect();
            for s in 1..=n {
                for k in 1..=n {
                    for r in 1..=3 {
                        let expected = perms
                            .iter()
                            .find(|p| oracle_multi(p, s, k, r, OracleLimit::default()).unwrap());
                        let got = exists_clash_free(n, s, k, r, limits(12)).unwrap();
                        assert_eq!(got.as_ref(), expected, "n={n} s={s} k={k} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn branches_merge_to_the_same_witness() {
        for (n, s, k, r) in [(8, 2, 3, 1), (8, 3, 4, 2), (7, 3, 2, 1), (6, 6, 2, 1)] {
            let p = Problem::new(n, s, k, r, limits(12)).unwrap();
            let whole = p.solve();
            let merged = p.branches().find_map(|b| p.solve_branch(b).witness);
            assert_eq!(whole.witness, merged);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            exists_clash_free(13, 2, 2, 1, SearchLimits::default()),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            sigma_exact(65, 3, limits(100)),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            exists_clash_free(6, 7, 2, 1, limits(12)),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn sigma_edge_regimes() {
        let lim = limits(12);
        let res = sigma_exact(8, 8, lim).unwrap();
        assert_eq!((res.value, res.regime), (1, Regime::KAtLeastN));
        let res = sigma_exact(8, 1, lim).unwrap();
        assert_eq!((res.value, res.regime), (8, Regime::UnitK));
        assert_eq!(sigma_exact_multi(6, 3, 5, lim).unwrap().value, 6);
        assert_eq!(sigma_exact_multi(6, 3, 4, lim).unwrap().value, 6);
        // too large to search, but answered without searching
        assert_eq!(sigma_exact(100, 1, lim).unwrap().value, 100);
    }

    #[test]
    fn unit_k_agrees_with_search() {
        for n in 2..=7 {
            // s = n is feasible at k = 1 by search as well
            assert!(exists_clash_free(n, n, 1, 1, limits(12)).unwrap().is_some());
        }
    }

    #[test]
    fn sigma_within_bounds() {
        let lim = limits(12);
        let res = sigma_exact(8, 3, lim).unwrap();
        assert!([1, 2].contains(&res.value));
        assert_eq!(res.above_upper_feasible, Some(false));
        assert!(is_clash_free(&res.witness, res.value, 3));

        let res = sigma_exact_multi(7, 3, 2, lim).unwrap();
        assert!([3, 4].contains(&res.value));
        assert_eq!(is_clash_free_multi(&res.witness, res.value, 3, 2), Ok(true));
    }

    #[test]
    fn sigma_is_the_largest_feasible_width() {
        let lim = limits(12);
        for n in 3..=7 {
            for k in 1..=n + 1 {
                for r in 1..=3 {
                    let res = sigma_exact_multi(n, k, r, lim).unwrap();
                    let kk = k.min(n);
                    assert_eq!(
                        is_clash_free_multi(&res.witness, res.value, kk, r),
                        Ok(true)
                    );
                    if res.value < n {
                        assert_eq!(
                            exists_clash_free(n, res.value + 1, kk, r, lim),
                            Ok(None),
                            "n={n} k={k} r={r}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn full_image_window_gives_sigma_r() {
        // With k ≥ n every image set is close, so a clash is any (r+1)-subset
        // of span < s; the least such span is r.
        for n in 4..=8 {
            for r in 2..n {
                for k in [n, n + 3] {
                    assert_eq!(sigma_exact_multi(n, k, r, limits(12)).unwrap().value, r);
                }
            }
        }
    }
}
