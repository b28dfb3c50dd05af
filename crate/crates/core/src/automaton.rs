//! The unary NFA of a problem: states are C_edge pairs, transitions come from C_node.

use std::collections::HashMap;
use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::model::{LclProblem, StatePair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Topology {
    Path,
    Cycle,
    RootedTree,
}

#[derive(Clone, Debug)]
pub struct Automaton {
    states: Vec<StatePair>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    start: Vec<bool>,
    accept: Vec<bool>,
    scc: Vec<usize>,
    scc_count: usize,
    mirror: Vec<Option<usize>>,
    index: HashMap<StatePair, usize>,
}

impl Automaton {
    pub fn build(p: &LclProblem) -> Automaton {
        let states: Vec<StatePair> = p.edge().pairs().map(|(a, b)| StatePair::new(a, b)).collect();
        let mut by_tail = vec![Vec::new(); p.alphabet_size()];
        for (i, s) in states.iter().enumerate() {
            by_tail[s.tail].push(i);
        }
        let mut edges = Vec::new();
        for (i, s) in states.iter().enumerate() {
            for (c, tails) in by_tail.iter().enumerate() {
                if p.has_node(s.head, c) {
                    edges.extend(tails.iter().map(|&j| (i, j)));
                }
            }
        }
        let start = states.iter().map(|s| p.is_start(s.tail)).collect();
        let accept = states.iter().map(|s| p.is_end(s.head)).collect();
        let a = Self::from_parts(states, &edges, start, accept);
        if p.is_symmetric() {
            debug_assert!(a.mirror_symmetric());
        }
        a
    }

    /// Raw constructor; state pairs only label states and need not be distinct
    /// from a real problem, but they must be distinct from each other.
    pub fn from_parts(
        states: Vec<StatePair>,
        edges: &[(usize, usize)],
        start: Vec<bool>,
        accept: Vec<bool>,
    ) -> Automaton {
        let n = states.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(i, j) in edges {
            succ[i].push(j);
            pred[j].push(i);
        }
        for v in succ.iter_mut().chain(pred.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        let index: HashMap<StatePair, usize> =
            states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mirror = states
            .iter()
            .map(|s| index.get(&s.swapped()).copied())
            .collect();
        let mut g = DiGraph::<(), ()>::with_capacity(n, edges.len());
        for _ in 0..n {
            g.add_node(());
        }
        for (i, js) in succ.iter().enumerate() {
            for &j in js {
                g.add_edge(NodeIndex::new(i), NodeIndex::new(j), ());
            }
        }
        let comps = tarjan_scc(&g);
        let mut scc = vec![0; n];
        for (c, comp) in comps.iter().enumerate() {
            for v in comp {
                scc[v.index()] = c;
            }
        }
        Automaton {
            states,
            succ,
            pred,
            start,
            accept,
            scc,
            scc_count: comps.len(),
            mirror,
            index,
        }
    }

    /// Automaton over `0..n` with dummy state pairs (i,i); for random testing.
    pub fn from_relation(n: usize, edges: &[(usize, usize)]) -> Automaton {
        let states = (0..n).map(|i| StatePair::new(i, i)).collect();
        Self::from_parts(states, edges, vec![true; n], vec![true; n])
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[StatePair] {
        &self.states
    }

    pub fn state(&self, i: usize) -> StatePair {
        self.states[i]
    }

    pub fn index_of(&self, s: StatePair) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn succ(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn pred(&self, i: usize) -> &[usize] {
        &self.pred[i]
    }

    pub fn has_transition(&self, i: usize, j: usize) -> bool {
        self.succ[i].binary_search(&j).is_ok()
    }

    pub fn transition_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(i, js)| js.iter().map(move |&j| (i, j)))
    }

    pub fn is_start(&self, i: usize) -> bool {
        self.start[i]
    }

    pub fn is_accept(&self, i: usize) -> bool {
        self.accept[i]
    }

    pub fn start_set(&self) -> &[bool] {
        &self.start
    }

    pub fn accept_set(&self) -> &[bool] {
        &self.accept
    }

    pub fn scc_of(&self, i: usize) -> usize {
        self.scc[i]
    }

    pub fn scc_count(&self) -> usize {
        self.scc_count
    }

    pub fn scc_members(&self, c: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.scc[i] == c).collect()
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.has_transition(i, i)
    }

    /// Index of the mirror state, if the swapped pair is a state here.
    pub fn mirror(&self, i: usize) -> Option<usize> {
        self.mirror[i]
    }

    /// True iff the state lies on some closed walk.
    pub fn on_cycle(&self, i: usize) -> bool {
        self.is_loop(i) || self.scc_members_count(self.scc[i]) > 1
    }

    fn scc_members_count(&self, c: usize) -> usize {
        self.scc.iter().filter(|&&x| x == c).count()
    }

    fn mirror_symmetric(&self) -> bool {
        self.transitions().all(|(i, j)| {
            match (self.mirror[i], self.mirror[j]) {
                (Some(mi), Some(mj)) => self.has_transition(mj, mi),
                _ => false,
            }
        })
    }

    /// Sub-automaton on the kept states, preserving their relative order.
    pub fn restrict(&self, keep: &[bool]) -> Automaton {
        let mut new_index = vec![usize::MAX; self.len()];
        let mut states = Vec::new();
        for i in 0..self.len() {
            if keep[i] {
                new_index[i] = states.len();
                states.push(self.states[i]);
            }
        }
        let edges: Vec<(usize, usize)> = self
            .transitions()
            .filter(|&(i, j)| keep[i] && keep[j])
            .map(|(i, j)| (new_index[i], new_index[j]))
            .collect();
        let start = (0..self.len()).filter(|&i| keep[i]).map(|i| self.start[i]).collect();
        let accept = (0..self.len()).filter(|&i| keep[i]).map(|i| self.accept[i]).collect();
        Self::from_parts(states, &edges, start, accept)
    }

    pub fn reachable_from(&self, sources: &[bool]) -> Vec<bool> {
        flood(sources, &self.succ)
    }

    pub fn coreachable_to(&self, targets: &[bool]) -> Vec<bool> {
        flood(targets, &self.pred)
    }

    /// Keeps states reachable from a start state and co-reachable to an accept state.
    pub fn prune(&self) -> Automaton {
        let f = self.reachable_from(&self.start);
        let b = self.coreachable_to(&self.accept);
        let keep: Vec<bool> = f.iter().zip(&b).map(|(x, y)| *x && *y).collect();
        self.restrict(&keep)
    }

    /// States on closed walks; the automaton relevant for cycles.
    pub fn cycle_core(&self) -> Automaton {
        let keep: Vec<bool> = (0..self.len()).map(|i| self.on_cycle(i)).collect();
        self.restrict(&keep)
    }

    /// `table[l][s]`: from `s` some target is reachable in exactly `l` steps.
    fn backward_table(&self, targets: &[bool], len: usize) -> Vec<Vec<bool>> {
        let mut table = Vec::with_capacity(len + 1);
        table.push(targets.to_vec());
        for l in 1..=len {
            let prev = &table[l - 1];
            let cur: Vec<bool> = (0..self.len())
                .map(|s| self.succ[s].iter().any(|&t| prev[t]))
                .collect();
            table.push(cur);
        }
        table
    }

    fn greedy(&self, from: usize, table: &[Vec<bool>]) -> Vec<usize> {
        let len = table.len() - 1;
        let mut walk = Vec::with_capacity(len + 1);
        walk.push(from);
        let mut cur = from;
        for step in (0..len).rev() {
            cur = *self.succ[cur]
                .iter()
                .find(|&&t| table[step][t])
                .expect("table guarantees a successor");
            walk.push(cur);
        }
        walk
    }

    /// Lexicographically least walk with exactly `len` transitions.
    pub fn exact_length_walk(&self, from: usize, to: usize, len: usize) -> Option<Vec<usize>> {
        let mut target = vec![false; self.len()];
        target[to] = true;
        let table = self.backward_table(&target, len);
        table[len][from].then(|| self.greedy(from, &table))
    }

    /// Least walk of `len` transitions starting anywhere in `sources`, ending at `to`.
    pub fn walk_from_set(&self, sources: &[bool], to: usize, len: usize) -> Option<Vec<usize>> {
        let mut target = vec![false; self.len()];
        target[to] = true;
        let table = self.backward_table(&target, len);
        let from = (0..self.len()).find(|&s| sources[s] && table[len][s])?;
        Some(self.greedy(from, &table))
    }

    /// Least walk of `len` transitions from `from` ending anywhere in `targets`.
    pub fn walk_to_set(&self, from: usize, targets: &[bool], len: usize) -> Option<Vec<usize>> {
        let table = self.backward_table(targets, len);
        table[len][from].then(|| self.greedy(from, &table))
    }

    /// Least walk of `len` transitions between two sets.
    pub fn walk_between_sets(
        &self,
        sources: &[bool],
        targets: &[bool],
        len: usize,
    ) -> Option<Vec<usize>> {
        let table = self.backward_table(targets, len);
        let from = (0..self.len()).find(|&s| sources[s] && table[len][s])?;
        Some(self.greedy(from, &table))
    }

    /// Whether the state sequence is generated as a path or a cycle.
    pub fn generates(&self, seq: &[usize], topology: Topology) -> bool {
        if seq.is_empty() || seq.iter().any(|&s| s >= self.len()) {
            return false;
        }
        let chain = seq.windows(2).all(|w| self.has_transition(w[0], w[1]));
        match topology {
            Topology::Cycle => chain && self.has_transition(seq[seq.len() - 1], seq[0]),
            Topology::Path | Topology::RootedTree => {
                chain && self.start[seq[0]] && self.accept[seq[seq.len() - 1]]
            }
        }
    }

    pub fn to_dot(&self, p: &LclProblem) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
        for (i, &s) in self.states.iter().enumerate() {
            let shape = if self.accept[i] { "doublecircle" } else { "circle" };
            let style = if self.start[i] { ", style=bold" } else { "" };
            let _ = writeln!(
                out,
                "  q{i} [label=\"{}\", shape={shape}{style}];",
                p.state_display(s).replace('"', "\\\"")
            );
        }
        for (i, j) in self.transitions() {
            let _ = writeln!(out, "  q{i} -> q{j};");
        }
        out.push_str("}\n");
        out
    }
}

fn flood(seeds: &[bool], adj: &[Vec<usize>]) -> Vec<bool> {
    let mut seen = seeds.to_vec();
    let mut stack: Vec<usize> = (0..seeds.len()).filter(|&i| seeds[i]).collect();
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}
