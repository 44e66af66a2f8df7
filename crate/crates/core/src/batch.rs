//! Running many independent problems at once.
//!
//! Each problem gets its own context, so results do not depend on the
//! execution mode. With the `parallel` feature the work is spread over a
//! rayon thread pool; the sequential path is always available.

use crate::checker::{check_proof, CheckReport};
use crate::proof::{ProofTree, Sequent};
use crate::prover::{initial_table, proof_steps, Context, StopReason};
use crate::search::{prove_bounded, SearchLimit};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Mode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Mode::Parallel
        } else {
            Mode::Sequential
        }
    }
}

/// Applies `f` to every item, keeping order.
pub fn map<T, R, F>(mode: Mode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        Mode::Parallel => par_map(items, f),
        Mode::Sequential => items.iter().map(f).collect(),
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Outcome of running the committed strategy on one sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunSummary {
    pub stop: StopReason,
    pub steps: usize,
}

impl RunSummary {
    pub fn proved(&self) -> bool {
        self.stop == StopReason::Proved
    }
}

/// Reads `seq` as a goal and runs at most `limit` steps.
pub fn run_one(seq: &Sequent, limit: Option<usize>) -> RunSummary {
    let mut cx = Context::new();
    let tab = initial_table(&seq.left, &seq.right, &mut cx);
    match proof_steps(limit, tab, &mut cx) {
        Ok(s) => RunSummary { stop: s.stop, steps: s.events.len() },
        // an empty goal cannot close and cannot be reduced
        Err(_) => RunSummary { stop: StopReason::NoRules, steps: 0 },
    }
}

pub fn run_all(mode: Mode, seqs: &[Sequent], limit: Option<usize>) -> Vec<RunSummary> {
    map(mode, seqs, |s| run_one(s, limit))
}

pub fn prove_all(mode: Mode, seqs: &[Sequent], limit: SearchLimit) -> Vec<Option<ProofTree>> {
    map(mode, seqs, |s| prove_bounded(&s.left, &s.right, limit))
}

pub fn check_all(mode: Mode, trees: &[ProofTree]) -> Vec<CheckReport> {
    map(mode, trees, check_proof)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn goals(xs: &[&str]) -> Vec<Sequent> {
        xs.iter().map(|s| Sequent::new(vec![], vec![parse(s).unwrap()])).collect()
    }

    #[test]
    fn modes_agree() {
        let seqs = goals(&["P --> P", "P --> Q", "(P --> Q) | (Q --> P)", "(ALL x. P(x)) --> P(a)"]);
        let a = run_all(Mode::Sequential, &seqs, Some(50));
        let b = run_all(Mode::Parallel, &seqs, Some(50));
        assert_eq!(a, b);
        assert_eq!(a.iter().map(RunSummary::proved).collect::<Vec<_>>(), vec![true, false, true, true]);
        let trees: Vec<_> = prove_all(Mode::Parallel, &seqs, SearchLimit(1)).into_iter().flatten().collect();
        assert_eq!(trees.len(), 3);
        assert!(check_all(Mode::Sequential, &trees).iter().all(CheckReport::accepted));
    }

    #[test]
    fn map_keeps_order() {
        let xs: Vec<u32> = (0..1000).collect();
        assert_eq!(map(Mode::Parallel, &xs, |x| x * 2), map(Mode::Sequential, &xs, |x| x * 2));
    }
}
