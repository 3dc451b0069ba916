//! Clash detection.
//!
//! An `(s,k,r)`-clash of `π` is an `(r+1)`-subset `X ⊆ Z_n` with
//! `||X||_n < s` and `||π(X)||_n < k`; for `r = 1` this is a pair at
//! distance `< s` whose images are at distance `< k`.
//!
//! The fast detector slides a window of `s` consecutive indices around the
//! cycle (any `X` of span `< s` sits inside one) and, for each window, sweeps
//! a window of `k` consecutive residues over the sorted images. The oracle
//! enumerates subsets and evaluates spans from the definition; it exists to
//! cross-check the fast path on small instances.

use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::error::{param_err, Error, Result};
use crate::ring::{dist, forward, Permutation, ResidueSet};

/// A subset certifying a clash, with its domain and image spans.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClashWitness {
    pub subset: ResidueSet,
    pub domain_span: usize,
    pub image_span: usize,
}

impl ClashWitness {
    fn of(perm: &Permutation, subset: ResidueSet) -> Self {
        let image_span = perm.image(&subset).span();
        ClashWitness {
            domain_span: subset.span(),
            image_span,
            subset,
        }
    }
}

/// Calls `f(i, j)` with `i < j` once for every unordered pair at cyclic
/// distance `< s`.
fn close_pairs<B>(
    n: usize,
    s: usize,
    mut f: impl FnMut(usize, usize) -> ControlFlow<B>,
) -> ControlFlow<B> {
    for off in 1..=(n / 2).min(s.saturating_sub(1)) {
        let half_turn = 2 * off == n;
        for i in 0..n {
            if half_turn && i >= off {
                break;
            }
            let j = (i + off) % n;
            f(i.min(j), i.max(j))?;
        }
    }
    ControlFlow::Continue(())
}

/// Every `(s,k)`-clash of `perm`, as pairs in lexicographic order.
pub fn find_pair_clashes(perm: &Permutation, s: usize, k: usize) -> Vec<ClashWitness> {
    let n = perm.n();
    let mut out = Vec::new();
    let _ = close_pairs::<()>(n, s, |i, j| {
        let image = dist(perm[i], perm[j], n);
        if image < k {
            out.push(ClashWitness {
                subset: ResidueSet::from_sorted(n, alloc::vec![i, j]),
                domain_span: dist(i, j, n),
                image_span: image,
            });
        }
        ControlFlow::Continue(())
    });
    out.sort_unstable();
    out
}

/// Whether `perm` has no `(s,k)`-clash. Stops at the first clash.
pub fn is_clash_free(perm: &Permutation, s: usize, k: usize) -> bool {
    let n = perm.n();
    close_pairs(n, s, |i, j| {
        if dist(perm[i], perm[j], n) < k {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .is_continue()
}

fn check_multi(perm: &Permutation, s: usize, k: usize, r: usize) -> Result<()> {
    let n = perm.n();
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
    Ok(())
}

/// Runs the sliding-window sweep. For every domain window holding an image
/// window with at least `r+1` points, `on_clash` receives the least (in
/// lexicographic order of index sets) clash inside that domain window.
fn sweep<B>(
    perm: &Permutation,
    s: usize,
    k: usize,
    r: usize,
    mut on_clash: impl FnMut(Vec<usize>) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let n = perm.n();
    let need = r + 1;
    if need > s {
        return ControlFlow::Continue(());
    }
    let windows = if s == n { 1 } else { n };
    let mut pts: Vec<(usize, usize)> = Vec::with_capacity(s);
    for start in 0..windows {
        pts.clear();
        pts.extend((0..s).map(|o| {
            let i = (start + o) % n;
            (perm[i], i)
        }));
        pts.sort_unstable();
        let m = pts.len();
        let mut best: Option<Vec<usize>> = None;
        let mut end = 0;
        for a in 0..m {
            end = end.max(a + 1);
            while end < a + m && forward(pts[a].0, pts[end % m].0, n) < k {
                end += 1;
            }
            if end - a >= need {
                let mut idx: Vec<usize> = (a..a + need).map(|b| pts[b % m].1).collect();
                idx.sort_unstable();
                if best.as_ref().is_none_or(|cur| idx < *cur) {
                    best = Some(idx);
                }
            }
        }
        if let Some(idx) = best {
            on_clash(idx)?;
        }
    }
    ControlFlow::Continue(())
}

/// One canonical `(s,k,r)`-clash per offending domain window, deduplicated
/// and sorted. Empty exactly when `perm` is `(s,k,r)`-clash-free.
pub fn find_multi_clashes(
    perm: &Permutation,
    s: usize,
    k: usize,
    r: usize,
) -> Result<Vec<ClashWitness>> {
    check_multi(perm, s, k, r)?;
    let n = perm.n();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let _ = sweep::<()>(perm, s, k, r, |idx| {
        sets.push(idx);
        ControlFlow::Continue(())
    });
    sets.sort_unstable();
    sets.dedup();
    Ok(sets
        .into_iter()
        .map(|idx| ClashWitness::of(perm, ResidueSet::from_sorted(n, idx)))
        .collect())
}

/// Whether `perm` has no `(s,k,r)`-clash. Stops at the first clash.
pub fn is_clash_free_multi(perm: &Permutation, s: usize, k: usize, r: usize) -> Result<bool> {
    check_multi(perm, s, k, r)?;
    Ok(sweep(perm, s, k, r, |_| ControlFlow::Break(())).is_continue())
}

/// Size cap for the subset-enumeration oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimit {
    /// Largest number of `(r+1)`-subsets the oracle will enumerate.
    pub max_subsets: u64,
}

impl Default for OracleLimit {
    fn default() -> Self {
        OracleLimit {
            max_subsets: 5_000_000,
        }
    }
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Span straight from the definition: the least `t` with
/// `X ⊆ x + [0, t]`. An optimal interval can always start at a member.
fn span_by_definition(set: &[usize], n: usize) -> usize {
    set.iter()
        .map(|&x| set.iter().map(|&m| (m + n - x) % n).max().unwrap_or(0))
        .min()
        .unwrap_or(0)
}

fn enumerate_subsets<B>(
    perm: &Permutation,
    s: usize,
    k: usize,
    r: usize,
    limit: OracleLimit,
    mut on_clash: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Result<ControlFlow<B>> {
    let n = perm.n();
    if s == 0 || k == 0 || r == 0 {
        return Err(param_err!(
            "s, k and r must be positive, got s = {s}, k = {k}, r = {r}"
        ));
    }
    let size = r + 1;
    let total = binomial(n as u64, size as u64);
    if total.is_none_or(|t| t > limit.max_subsets) {
        return Err(Error::ResourceLimit(alloc::format!(
            "C({n}, {size}) subsets exceeds the oracle cap of {}",
            limit.max_subsets
        )));
    }
    if size > n {
        return Ok(ControlFlow::Continue(()));
    }
    let mut comb: Vec<usize> = (0..size).collect();
    let mut image = alloc::vec![0; size];
    loop {
        if span_by_definition(&comb, n) < s {
            for (slot, &i) in image.iter_mut().zip(&comb) {
                *slot = perm[i];
            }
            if span_by_definition(&image, n) < k {
                if let ControlFlow::Break(b) = on_clash(&comb) {
                    return Ok(ControlFlow::Break(b));
                }
            }
        }
        // Advance to the next combination in lexicographic order.
        let mut pos = size;
        loop {
            if pos == 0 {
                return Ok(ControlFlow::Continue(()));
            }
            pos -= 1;
            if comb[pos] < n - size + pos {
                break;
            }
        }
        comb[pos] += 1;
        for q in pos + 1..size {
            comb[q] = comb[q - 1] + 1;
        }
    }
}

/// Clash-freeness decided by enumerating every `(r+1)`-subset.
pub fn oracle_multi(
    perm: &Permutation,
    s: usize,
    k: usize,
    r: usize,
    limit: OracleLimit,
) -> Result<bool> {
    Ok(enumerate_subsets(perm, s, k, r, limit, |_| ControlFlow::Break(()))?.is_continue())
}

/// Every `(s,k,r)`-clash, in lexicographic order, by enumeration.
pub fn oracle_clashes(
    perm: &Permutation,
    s: usize,
    k: usize,
    r: usize,
    limit: OracleLimit,
) -> Result<Vec<ClashWitness>> {
    let n = perm.n();
    let mut out = Vec::new();
    let _ = enumerate_subsets::<()>(perm, s, k, r, limit, |comb| {
        out.push(ClashWitness::of(
            perm,
            ResidueSet::from_sorted(n, comb.to_vec()),
        ));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_cycle_permutation, construct_multi, construct_pairwise};

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn fig1() -> Permutation {
        perm(&[
            0, 4, 8, 12, 16, 1, 5, 9, 13, 18, 2, 6, 10, 15, 19, 3, 7, 11, 14, 17,
        ])
    }

    #[test]
    fn identity_pair_clashes() {
        let id = Permutation::identity(6).unwrap();
        let w = find_pair_clashes(&id, 2, 2);
        assert_eq!(w.len(), 6);
        assert_eq!(w[0].subset.members(), [0, 1]);
        assert_eq!(w[5].subset.members(), [4, 5]);
        assert!(w.iter().any(|c| c.subset.members() == [0, 5]));
        assert!(!is_clash_free(&id, 2, 2));
    }

    #[test]
    fn unit_width_never_clashes() {
        let p = perm(&[3, 0, 4, 1, 2]);
        for k in 1..=5 {
            assert!(find_pair_clashes(&p, 1, k).is_empty());
            for r in 1..4 {
                assert_eq!(oracle_multi(&p, 1, k, r, OracleLimit::default()), Ok(true));
            }
        }
    }

    #[test]
    fn torus_example_is_clash_free() {
        assert!(find_pair_clashes(&fig1(), 5, 3).is_empty());
        assert!(is_clash_free(&fig1(), 5, 3));
        assert_eq!(fig1(), build_cycle_permutation(20, 3).unwrap());
    }

    #[test]
    fn constructed_pairwise_is_clash_free() {
        let c = construct_pairwise(50, 2).unwrap();
        assert!(is_clash_free(&c.perm, 23, 2));
    }

    #[test]
    fn even_modulus_antipodal_pairs_counted_once() {
        let id = Permutation::identity(6).unwrap();
        let w = find_pair_clashes(&id, 4, 4);
        // all 15 pairs have distance ≤ 3
        assert_eq!(w.len(), 15);
    }

    #[test]
    fn multi_examples() {
        let p = perm(&[2, 5, 0, 3, 1, 4]);
        for k in 1..=6 {
            assert_eq!(find_multi_clashes(&p, 2, k, 2), Ok(Vec::new()));
        }
        let id = Permutation::identity(6).unwrap();
        let w = find_multi_clashes(&id, 3, 3, 2).unwrap();
        assert!(w.iter().any(|c| c.subset.members() == [0, 1, 2]));
        for c in &w {
            assert_eq!(c.subset.len(), 3);
            assert!(c.domain_span < 3 && c.image_span < 3);
        }
        assert_eq!(is_clash_free_multi(&id, 3, 3, 2), Ok(false));

        let c = construct_multi(10, 4, 2).unwrap();
        assert_eq!(find_multi_clashes(&c.perm, 3, 4, 2), Ok(Vec::new()));
        let c = construct_multi(12, 5, 3).unwrap();
        assert_eq!(is_clash_free_multi(&c.perm, 6, 5, 3), Ok(true));
    }

    #[test]
    fn multi_rejects_oversized_windows() {
        let id = Permutation::identity(6).unwrap();
        assert!(find_multi_clashes(&id, 7, 2, 1).is_err());
        assert!(is_clash_free_multi(&id, 2, 7, 1).is_err());
        assert!(is_clash_free_multi(&id, 0, 2, 1).is_err());
        assert!(is_clash_free_multi(&id, 2, 2, 0).is_err());
    }

    #[test]
    fn coverage_at_least_k_is_always_clash_free() {
        let p = perm(&[4, 1, 6, 0, 3, 5, 2]);
        for s in 1..=7 {
            for k in 1..=7 {
                for r in k..7 {
                    assert_eq!(is_clash_free_multi(&p, s, k, r), Ok(true));
                }
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let id = Permutation::identity(5).unwrap();
        assert_eq!(
            oracle_multi(&id, 2, 2, 1, OracleLimit::default()),
            Ok(false)
        );
        let all = oracle_clashes(&id, 2, 2, 1, OracleLimit::default()).unwrap();
        assert_eq!(all.len(), 5);
        let tiny = OracleLimit { max_subsets: 3 };
        assert!(matches!(
            oracle_multi(&id, 2, 2, 1, tiny),
            Err(Error::ResourceLimit(_))
        ));
        // more points than residues: nothing to enumerate
        assert_eq!(oracle_multi(&id, 5, 5, 5, OracleLimit::default()), Ok(true));
    }

    #[test]
    fn pair_and_multi_agree_on_all_perms_of_z5() {
        let mut values: Vec<usize> = (0..5).collect();
        let mut all = Vec::new();
        heap(&mut values, 5, &mut all);
        for p in all {
            let p = perm(&p);
            for s in 1..=5 {
                for k in 1..=5 {
                    let pair = find_pair_clashes(&p, s, k).is_empty();
                    assert_eq!(pair, is_clash_free(&p, s, k));
                    assert_eq!(Ok(pair), is_clash_free_multi(&p, s, k, 1));
                    let pairs = oracle_clashes(&p, s, k, 1, OracleLimit::default()).unwrap();
                    assert_eq!(pairs, find_pair_clashes(&p, s, k));
                }
            }
        }
    }

    fn heap(v: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
        if len == 1 {
            out.push(v.clone());
            return;
        }
        for i in 0..len {
            heap(v, len - 1, out);
            if len.is_multiple_of(2) {
                v.swap(i, len - 1);
            } else {
                v.swap(0, len - 1);
            }
        }
    }
}
