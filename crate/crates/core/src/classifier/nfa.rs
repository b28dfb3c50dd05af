//! Standard unary NFAs: conversion from the problem automaton, the Chrobak
//! length test, and exact eventual periodicity by subset construction.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::automaton::Automaton;
use crate::bits::{step, Bits};
use crate::model::{LclProblem, ModelError};

pub const DEFAULT_SUBSET_BUDGET: usize = 1 << 20;

#[derive(Debug, Error)]
pub enum NfaError {
    #[error("NFA has no transitions")]
    NoTransitions,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Unary NFA with a single start state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryNfa {
    pub start: usize,
    pub accept: Vec<bool>,
    pub succ: Vec<Vec<usize>>,
}

impl UnaryNfa {
    pub fn new(n: usize, start: usize, accept: &[usize], edges: &[(usize, usize)]) -> Self {
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in edges {
            succ[a].push(b);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        let mut acc = vec![false; n];
        for &a in accept {
            acc[a] = true;
        }
        UnaryNfa {
            start,
            accept: acc,
            succ,
        }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    fn rows(&self) -> Vec<Bits> {
        self.succ
            .iter()
            .map(|s| {
                let mut b = Bits::new(self.len());
                for &t in s {
                    b.set(t);
                }
                b
            })
            .collect()
    }

    /// `accepted[m]` for m in 0..=max by direct DP.
    pub fn accepts_up_to(&self, max: usize) -> Vec<bool> {
        let rows = self.rows();
        let acc = Bits::from_bools(&self.accept);
        let mut cur = Bits::new(self.len());
        cur.set(self.start);
        let mut out = Vec::with_capacity(max + 1);
        for m in 0..=max {
            if m > 0 {
                cur = step(&cur, &rows);
            }
            out.push(cur.intersects(&acc));
        }
        out
    }
}

/// Adds a fresh start state; length m is accepted iff a path with m edges is solvable.
pub fn to_standard_nfa(a: &Automaton) -> UnaryNfa {
    let n = a.len();
    let fresh = n;
    let mut edges: Vec<(usize, usize)> = a.transitions().collect();
    edges.extend((0..n).filter(|&i| a.is_start(i)).map(|i| (fresh, i)));
    let accept: Vec<usize> = (0..n).filter(|&i| a.is_accept(i)).collect();
    UnaryNfa::new(n + 1, fresh, &accept, &edges)
}

/// Problem whose solvable path lengths are the accepted lengths of `nfa`.
pub fn nfa_to_lcl(nfa: &UnaryNfa) -> Result<LclProblem, NfaError> {
    let edges: Vec<(usize, usize)> = nfa
        .succ
        .iter()
        .enumerate()
        .flat_map(|(a, s)| s.iter().map(move |&b| (a, b)))
        .collect();
    if edges.is_empty() {
        return Err(NfaError::NoTransitions);
    }
    let n = nfa.len();
    let labels = (0..n).map(|i| format!("q{i}")).collect();
    let diag: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    let accept: Vec<usize> = (0..n).filter(|&i| nfa.accept[i]).collect();
    Ok(LclProblem::new(labels, &edges, &diag, &[nfa.start], &accept)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChrobakAnswer {
    Yes,
    No,
}

/// Yes iff every length 0..=|Q|² is accepted.
pub fn chrobak_test(nfa: &UnaryNfa) -> ChrobakAnswer {
    chrobak_test_from(nfa, 0)
}

/// Same test ignoring lengths below `min_len`.
pub fn chrobak_test_from(nfa: &UnaryNfa, min_len: usize) -> ChrobakAnswer {
    let n = nfa.len();
    let acc = nfa.accepts_up_to(n * n);
    if acc.iter().skip(min_len).all(|&b| b) {
        ChrobakAnswer::Yes
    } else {
        ChrobakAnswer::No
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Periodicity {
    /// `accepted[m]` for m < preperiod + period; beyond that the pattern repeats with the period.
    Periodic {
        preperiod: usize,
        period: usize,
        accepted: Vec<bool>,
    },
    Undetermined { explored: usize },
}

impl Periodicity {
    pub fn accepts(&self, m: usize) -> Option<bool> {
        match self {
            Periodicity::Periodic {
                preperiod,
                period,
                accepted,
            } => {
                let idx = if m < *preperiod {
                    m
                } else {
                    preperiod + (m - preperiod) % period
                };
                Some(accepted[idx])
            }
            Periodicity::Undetermined { .. } => None,
        }
    }
}

/// Exact eventually periodic form of the accepted lengths, via the chain of subsets.
pub fn eventual_periodicity(nfa: &UnaryNfa, budget: usize) -> Periodicity {
    let rows = nfa.rows();
    let acc = Bits::from_bools(&nfa.accept);
    let mut seen: HashMap<Bits, usize> = HashMap::new();
    let mut accepted = Vec::new();
    let mut cur = Bits::new(nfa.len());
    cur.set(nfa.start);
    loop {
        if let Some(&first) = seen.get(&cur) {
            return Periodicity::Periodic {
                preperiod: first,
                period: accepted.len() - first,
                accepted,
            };
        }
        if seen.len() >= budget {
            return Periodicity::Undetermined {
                explored: seen.len(),
            };
        }
        seen.insert(cur.clone(), accepted.len());
        accepted.push(cur.intersects(&acc));
        cur = step(&cur, &rows);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn parity() -> UnaryNfa {
        // accepts even lengths
        UnaryNfa::new(2, 0, &[0], &[(0, 1), (1, 0)])
    }

    #[test]
    fn chrobak_examples() {
        let all = UnaryNfa::new(1, 0, &[0], &[(0, 0)]);
        assert_eq!(chrobak_test(&all), ChrobakAnswer::Yes);
        assert_eq!(chrobak_test(&parity()), ChrobakAnswer::No);
        // rejects only length 1
        let one = UnaryNfa::new(3, 0, &[0, 2], &[(0, 1), (1, 2), (2, 2)]);
        assert_eq!(chrobak_test(&one), ChrobakAnswer::No);
    }

    #[test]
    fn periodicity_examples() {
        match eventual_periodicity(&parity(), DEFAULT_SUBSET_BUDGET) {
            Periodicity::Periodic {
                preperiod,
                period,
                accepted,
            } => {
                assert_eq!((preperiod, period), (0, 2));
                assert_eq!(accepted, vec![true, false]);
            }
            other => panic!("{other:?}"),
        }
        let all = UnaryNfa::new(1, 0, &[0], &[(0, 0)]);
        assert!(matches!(
            eventual_periodicity(&all, 10),
            Periodicity::Periodic { period: 1, .. }
        ));
    }

    #[test]
    fn standard_nfa_of_two_coloring_accepts_every_positive_length() {
        let a = Automaton::build(&catalog::edge_two_coloring()).prune();
        let nfa = to_standard_nfa(&a);
        assert_eq!(nfa.len(), 3);
        let acc = nfa.accepts_up_to(20);
        assert!(!acc[0] && acc[1..].iter().all(|&b| b));
    }

    #[test]
    fn forced_endpoints_accept_odd_lengths() {
        let a = Automaton::build(&catalog::forced_endpoints(&["1"])).prune();
        let acc = to_standard_nfa(&a).accepts_up_to(20);
        for (m, &ok) in acc.iter().enumerate() {
            assert_eq!(ok, m % 2 == 1, "m={m}");
        }
    }

    #[test]
    fn nfa_to_lcl_refuses_empty() {
        let nfa = UnaryNfa::new(1, 0, &[0], &[]);
        assert!(matches!(nfa_to_lcl(&nfa), Err(NfaError::NoTransitions)));
    }
}
