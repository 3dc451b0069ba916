#![allow(dead_code)]

use clashfree_core::{cycle_walk, ConstructionParams, Move, Permutation};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

/// A random instance with `2 ≤ n ≤ max_n`, `1 ≤ s, k ≤ n`, `1 ≤ r ≤ 3`.
pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize) -> (Permutation, usize, usize, usize) {
    let n = rng.gen_range(2..=max_n);
    let p = random_perm(rng, n);
    (
        p,
        rng.gen_range(1..=n),
        rng.gen_range(1..=n),
        rng.gen_range(1..=3),
    )
}

/// All permutations of `0..n`.
pub fn all_perms(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if left.is_empty() {
            out.push(Permutation::new(prefix.clone()).unwrap());
            return;
        }
        for idx in 0..left.len() {
            let v = left.remove(idx);
            prefix.push(v);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(idx, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// Structural facts about the walk for `(n, s)`; returns a description of
/// the first violation found.
pub fn walk_violation(n: usize, s: usize) -> Option<String> {
    let params = match ConstructionParams::new(n, s) {
        Ok(p) => p,
        Err(e) => return Some(format!("params: {e}")),
    };
    let d = gcd(s + 1, n);
    if params.d != d || params.ell * d != n {
        return Some(format!("d/ell wrong: {params:?}"));
    }
    let ell = params.ell;
    let walk = match cycle_walk(&params) {
        Ok(w) => w,
        Err(e) => return Some(format!("walk: {e}")),
    };
    let values = walk.values();
    let perm = match Permutation::new(values.clone()) {
        Ok(p) => p,
        Err(e) => return Some(format!("not a bijection: {e}")),
    };
    let allowed = [s % n, (s + 1) % n, (s + 2) % n];
    for t in 0..n {
        let inc = (perm[(t + 1) % n] + n - perm[t]) % n;
        if !allowed.contains(&inc) {
            return Some(format!("increment {inc} at t = {t}"));
        }
        if inc != walk.moves[t].delta(s) % n {
            return Some(format!(
                "move {:?} disagrees with increment at t = {t}",
                walk.moves[t]
            ));
        }
    }
    let se: Vec<usize> = (0..n)
        .filter(|&t| walk.moves[t] == Move::SouthEast)
        .collect();
    let ne = walk.moves.iter().filter(|&&m| m == Move::NorthEast).count();
    if se.len() != d - 1 || ne != d - 1 {
        return Some(format!(
            "census: {} SE, {ne} NE, expected {}",
            se.len(),
            d - 1
        ));
    }
    // East moves strictly between cyclically consecutive south-east moves.
    for (idx, &a) in se.iter().enumerate() {
        let b = se[(idx + 1) % se.len()];
        let gap = if b > a { b - a } else { b + n - a };
        let easts = (1..gap)
            .filter(|&o| walk.moves[(a + o) % n] == Move::East)
            .count();
        if easts + 2 < ell {
            return Some(format!("only {easts} east moves after SE at t = {a}"));
        }
    }
    let ne_runs = (0..n)
        .filter(|&t| {
            walk.moves[t] == Move::NorthEast && walk.moves[(t + n - 1) % n] != Move::NorthEast
        })
        .count();
    if ne > 0 && ne_runs != 1 {
        return Some(format!("north-east moves split into {ne_runs} runs"));
    }
    None
}
