//! Brute-force ground truth: solvable lengths, exact solving, exhaustive search.

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{Automaton, Topology};
use crate::bits::{step, Bits};
use crate::instance::{Instance, Labeling};
use crate::model::LclProblem;
use crate::properties::state_periods;
use crate::verifier::{verify, VerifyError};

pub const EXHAUSTIVE_CAP: f64 = 1e8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("asymmetric problems are undefined on undirected instances")]
    AsymmetricOnUndirected,
    #[error("exhaustive search over {0:.3e} labelings exceeds the cap")]
    TooLarge(f64),
    #[error("automaton has a flexible state")]
    FlexibleState,
}

/// Solvable lengths 1..=max_n; paths by edge count, cycles by node count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthSet {
    pub topology: Topology,
    pub max_n: usize,
    /// Index 0 is unused and always false.
    pub solvable: Vec<bool>,
}

impl LengthSet {
    pub fn contains(&self, n: usize) -> bool {
        self.solvable.get(n).copied().unwrap_or(false)
    }

    pub fn unsolvable(&self) -> Vec<usize> {
        (1..=self.max_n).filter(|&n| !self.solvable[n]).collect()
    }

    pub fn solvable_list(&self) -> Vec<usize> {
        (1..=self.max_n).filter(|&n| self.solvable[n]).collect()
    }
}

fn rows(a: &Automaton) -> Vec<Bits> {
    (0..a.len())
        .map(|i| {
            let mut b = Bits::new(a.len());
            for &j in a.succ(i) {
                b.set(j);
            }
            b
        })
        .collect()
}

/// `out[m]`: some walk of m states runs from a start state to an accept state.
pub fn path_lengths(a: &Automaton, max_n: usize) -> Vec<bool> {
    let rows = rows(a);
    let acc = Bits::from_bools(a.accept_set());
    let mut cur = Bits::from_bools(a.start_set());
    let mut out = vec![false; max_n + 1];
    for (m, slot) in out.iter_mut().enumerate().skip(1) {
        if m > 1 {
            cur = step(&cur, &rows);
        }
        *slot = cur.intersects(&acc);
    }
    out
}

/// `out[q][l]`: a closed walk of length l through q exists.
pub fn closed_walk_lengths(a: &Automaton, q: usize, max_len: usize) -> Vec<bool> {
    let rows = rows(a);
    let mut cur = Bits::new(a.len());
    cur.set(q);
    let mut out = vec![false; max_len + 1];
    for slot in out.iter_mut().skip(1) {
        cur = step(&cur, &rows);
        *slot = cur.get(q);
    }
    out
}

/// `out[n]`: some closed walk of length n exists.
pub fn cycle_lengths(a: &Automaton, max_n: usize) -> Vec<bool> {
    let mut out = vec![false; max_n + 1];
    for q in 0..a.len() {
        for (n, ok) in closed_walk_lengths(a, q, max_n).into_iter().enumerate() {
            out[n] |= ok;
        }
    }
    out
}

pub fn solvable_lengths(p: &LclProblem, topology: Topology, max_n: usize) -> LengthSet {
    let a = Automaton::build(p);
    let solvable = match topology {
        Topology::Cycle => cycle_lengths(&a, max_n),
        _ => path_lengths(&a, max_n),
    };
    LengthSet {
        topology,
        max_n,
        solvable,
    }
}

/// Least state sequence of exactly `len` states: a start→accept walk, or a
/// closed walk when `cyclic`.
pub fn solve_sequence(a: &Automaton, len: usize, cyclic: bool) -> Option<Vec<usize>> {
    if len == 0 {
        return None;
    }
    if cyclic {
        (0..a.len()).find_map(|q| {
            a.exact_length_walk(q, q, len).map(|mut w| {
                w.pop();
                w
            })
        })
    } else {
        a.walk_between_sets(a.start_set(), a.accept_set(), len - 1)
    }
}

/// Lexicographically least labeling, or `None` when the instance is unsolvable.
pub fn solve_exact(p: &LclProblem, inst: &Instance) -> Result<Option<Labeling>, OracleError> {
    if !inst.directed && !p.is_symmetric() {
        return Err(OracleError::AsymmetricOnUndirected);
    }
    let a = Automaton::build(p);
    if inst.topology == Topology::RootedTree {
        return Ok(solve_tree(&a, inst));
    }
    let cyclic = inst.topology == Topology::Cycle;
    Ok(solve_sequence(&a, inst.edge_count(), cyclic).map(|seq| Labeling {
        ports: seq
            .iter()
            .map(|&s| {
                let st = a.state(s);
                [st.tail, st.head]
            })
            .collect(),
    }))
}

/// Tree DP over edge states: an edge state is feasible when the child's
/// subtree can be completed below it.
pub fn solve_tree(a: &Automaton, inst: &Instance) -> Option<Labeling> {
    let n = inst.n();
    let children = inst.children();
    let pe = inst.parent_edge();
    let depths = inst.depths();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(depths[v]));
    // feasible[v][s]: edge into v may carry state s
    let mut feasible = vec![Vec::new(); n];
    for &v in &order {
        if inst.parents[v].is_none() {
            continue;
        }
        feasible[v] = (0..a.len())
            .map(|s| {
                if children[v].is_empty() {
                    a.is_accept(s)
                } else {
                    children[v]
                        .iter()
                        .all(|&c| a.succ(s).iter().any(|&t| feasible[c][t]))
                }
            })
            .collect();
    }
    let root = inst.root()?;
    let mut state = vec![usize::MAX; n];
    for &c in &children[root] {
        state[c] = (0..a.len()).find(|&s| a.is_start(s) && feasible[c][s])?;
    }
    order.reverse();
    for &v in &order {
        if v == root {
            continue;
        }
        for &c in &children[v] {
            state[c] = *a
                .succ(state[v])
                .iter()
                .find(|&&t| feasible[c][t])
                .expect("feasible parent state has a feasible child state");
        }
    }
    let mut ports = vec![[0, 0]; inst.edge_count()];
    for v in 0..n {
        if let Some(e) = pe[v] {
            let st = a.state(state[v]);
            ports[e] = [st.tail, st.head];
        }
    }
    Some(Labeling { ports })
}

/// Minimal K such that every closed-walk length in [K, bound] occurs at q and
/// K−1 does not; `None` when the tail of width 2|Q| has a gap.
pub fn brute_force_flexibility(a: &Automaton, q: usize, bound: usize) -> Option<usize> {
    let lens = closed_walk_lengths(a, q, bound);
    let tail = bound.saturating_sub(2 * a.len()).max(1);
    if !lens[tail..=bound].iter().all(|&b| b) {
        return None;
    }
    let mut k = tail;
    while k > 1 && lens[k - 1] {
        k -= 1;
    }
    Some(k)
}

/// Unsolvable cycle lengths up to `max_n` for automata without flexible states.
/// Contains the progression kb+1 for b the product of the state gcds.
pub fn unsolvable_cycle_witnesses(a: &Automaton, max_n: usize) -> Result<Vec<usize>, OracleError> {
    let periods = state_periods(a);
    if periods.contains(&1) {
        return Err(OracleError::FlexibleState);
    }
    let lens = cycle_lengths(a, max_n);
    let out: Vec<usize> = (1..=max_n).filter(|&n| !lens[n]).collect();
    if let Some(b) = progression_base(&periods) {
        let mut n = b + 1;
        while n <= max_n {
            assert!(!lens[n], "length {n} = kb+1 must be unsolvable");
            n += b;
        }
    }
    Ok(out)
}

/// Product of the gcds of all repeatable states; `None` on overflow or when
/// nothing repeats.
pub fn progression_base(periods: &[usize]) -> Option<usize> {
    let mut b: usize = 1;
    let mut any = false;
    for &g in periods.iter().filter(|&&g| g > 0) {
        any = true;
        b = b.checked_mul(g)?;
    }
    any.then_some(b)
}

/// All verifier-accepted labelings, by depth-first search with early pruning.
/// Refuses when |Γ|^(2·edges) exceeds the cap.
pub fn exhaustive_solutions(
    p: &LclProblem,
    inst: &Instance,
    cap: f64,
) -> Result<Vec<Labeling>, OracleError> {
    if !inst.directed && !p.is_symmetric() {
        return Err(OracleError::AsymmetricOnUndirected);
    }
    let g = p.alphabet_size() as f64;
    let space = g.powi(2 * inst.edge_count() as i32);
    if space > cap {
        return Err(OracleError::TooLarge(space));
    }
    let m = inst.edge_count();
    let mut found = Vec::new();
    let mut ports = Vec::with_capacity(m);
    search(p, inst, m, &mut ports, &mut found);
    Ok(found)
}

fn search(p: &LclProblem, inst: &Instance, m: usize, ports: &mut Vec<[usize; 2]>, found: &mut Vec<Labeling>) {
    if ports.len() == m {
        let lab = Labeling {
            ports: ports.clone(),
        };
        match verify(p, inst, &lab) {
            Ok(()) => found.push(lab),
            Err(VerifyError::Violations(_)) => {}
            Err(e) => panic!("unexpected verifier error {e}"),
        }
        return;
    }
    for a in 0..p.alphabet_size() {
        for b in 0..p.alphabet_size() {
            // only the edge relation is checked early; nodes are left to the verifier
            if !p.has_edge(a, b) {
                continue;
            }
            ports.push([a, b]);
            search(p, inst, m, ports, found);
            ports.pop();
        }
    }
}
