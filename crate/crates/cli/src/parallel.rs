//! Multi-threaded decision search.
//!
//! The subtrees under each choice of `π(1)` are explored by a pool of
//! scoped threads. Results are merged in branch order, so the witness is the
//! same lexicographically least one the sequential search returns. Once a
//! branch succeeds, later branches are skipped; node counts therefore vary
//! between runs, values and witnesses do not.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clashfree_core::search::{sigma_exact_with, Decision, Problem};
use clashfree_core::{SearchLimits, SigmaResult};

use crate::CliError;

pub fn solve_parallel(problem: &Problem, threads: usize) -> Decision {
    if threads <= 1 {
        return problem.solve();
    }
    let branches: Vec<usize> = problem.branches().collect();
    let next = AtomicUsize::new(0);
    let first_hit = AtomicUsize::new(usize::MAX);
    let results: Mutex<Vec<Option<Decision>>> = Mutex::new(vec![None; branches.len()]);
    std::thread::scope(|scope| {
        for _ in 0..threads.min(branches.len()) {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= branches.len() || idx > first_hit.load(Ordering::Relaxed) {
                    break;
                }
                let d = problem.solve_branch(branches[idx]);
                if d.witness.is_some() {
                    first_hit.fetch_min(idx, Ordering::Relaxed);
                }
                results.lock().unwrap()[idx] = Some(d);
            });
        }
    });
    let results = results.into_inner().unwrap();
    let nodes = results.iter().flatten().map(|d| d.nodes).sum();
    let witness = results.into_iter().flatten().find_map(|d| d.witness);
    Decision { witness, nodes }
}

pub fn sigma_parallel(
    n: usize,
    k: usize,
    r: usize,
    limits: SearchLimits,
    threads: usize,
) -> Result<SigmaResult, CliError> {
    Ok(sigma_exact_with(n, k, r, limits, |p| {
        solve_parallel(p, threads)
    })?)
}
