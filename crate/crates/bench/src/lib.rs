//! Benchmark workloads.

use nomsup_core::automata::Nfa;
use nomsup_core::binding::NamedTerm;
use nomsup_core::nomrep::{AtomPool, FinPresentation};
use nomsup_core::{Atom, Symmetry};

/// The unordered-pairs presentation with a pool of `n` atoms.
pub fn pairs_workload(n: usize) -> (FinPresentation, AtomPool) {
    (FinPresentation::unordered_pairs(), AtomPool::first(Symmetry::Equality, n))
}

/// A word of length `len` over `k` values whose first letter never repeats,
/// so every prefix keeps the first-repeat automaton busy.
pub fn no_repeat_word(len: usize, k: u64) -> Vec<Atom> {
    (0..len as u64).map(|i| Atom::Nat(if i == 0 { 0 } else { 1 + i % k })).collect()
}

/// `λv0. λv1. … v0 v1 … ` nested `depth` times with a spine of applications.
pub fn nested_term(depth: u64) -> NamedTerm {
    let mut body = NamedTerm::var(depth + 3);
    for a in 0..depth {
        body = NamedTerm::app(body, NamedTerm::var(a));
    }
    (0..depth).rev().fold(body, |t, a| NamedTerm::lam(a, t))
}

/// A chain NFA `0 → 1 → … → n−1` on both letters, with self-loops on
/// letter 0 everywhere, so subsets grow along a run.
pub fn chain_nfa(n: usize) -> Nfa {
    use std::collections::BTreeSet;
    let delta = (0..n)
        .map(|q| {
            let next: BTreeSet<usize> = if q + 1 < n { [q, q + 1].into() } else { [q].into() };
            vec![next, [(q + 1) % n].into()]
        })
        .collect();
    let mut finals = vec![false; n];
    finals[n - 1] = true;
    Nfa { letters: 2, initial: [0].into(), finals, delta }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nomsup_core::{automata, shipped};

    #[test]
    fn workloads_are_well_formed() {
        let ra = shipped::first_repeat();
        assert!(!automata::accepts(&ra, &no_repeat_word(20, 5)).unwrap());
        assert_eq!(nested_term(3).free_atoms().len(), 1);
        assert!(chain_nfa(4).accepts(&[0, 0, 0]));
        let (p, pool) = pairs_workload(4);
        assert_eq!(nomsup_core::nomrep::element_count(&p, &pool), 6);
    }
}
