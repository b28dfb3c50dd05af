//! Rooted trees: one-sided anchoring along every root-to-leaf path, gathering,
//! and tree anchorings.

use std::collections::HashMap;

use crate::automaton::{Automaton, Topology};
use crate::classifier::classify;
use crate::instance::{Instance, Labeling};
use crate::model::{Label, LclProblem};
use crate::oracle::solve_tree;

use super::coloring::{cv_iterations, cv_step};
use super::exec::id_bits;
use super::{make_one_sided, plan_automaton, synthesize, AlgorithmPlan, RuntimeError, SimTrace, Strategy};

/// Fixed schedule of the one-sided anchoring for flexibility `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct TreeSchedule {
    pub levels: usize,
    /// Most edges between consecutive marks of the last level along a path.
    pub spacing: usize,
    /// Deepest possible first mark of the last level.
    pub first: usize,
    /// Depth of the forced anchor.
    pub p0: usize,
    pub shift: usize,
}

pub(crate) fn tree_schedule(k: usize) -> TreeSchedule {
    let (mut min, mut spacing, mut first, mut levels) = (1usize, 1usize, 0usize, 0usize);
    while min < k || levels == 0 {
        first += 5 * spacing;
        min *= 2;
        spacing *= 4;
        levels += 1;
    }
    let p0 = k;
    TreeSchedule {
        levels,
        spacing,
        first,
        p0,
        shift: k.max(first.saturating_sub(p0)) + spacing,
    }
}

/// Output shift of the one-sided plan with flexibility `k`.
pub(crate) fn shift_for(k: usize) -> usize {
    tree_schedule(k).shift
}

/// Rounds until every node knows its own marks.
fn mark_rounds(s: &TreeSchedule, bits: u32) -> usize {
    let per_level = cv_iterations(bits) + 6 + 2;
    let mut spacing = 1;
    let mut total = 0;
    for _ in 0..s.levels {
        total += per_level * spacing;
        spacing *= 4;
    }
    total
}

fn tree_radius(s: &TreeSchedule, bits: u32) -> usize {
    s.shift + s.spacing + mark_rounds(s, bits)
}

/// Proper 3-coloring of a rooted forest in which each node reads only its parent.
/// `order` lists the members with parents before children.
fn color_forest(order: &[usize], parent: &[Option<usize>], ids: &[u64], bits: u32) -> Vec<u128> {
    let n = parent.len();
    let mut c: Vec<u128> = vec![0; n];
    for &v in order {
        c[v] = ids[v] as u128;
    }
    for _ in 0..cv_iterations(bits) {
        let prev = c.clone();
        for &v in order {
            c[v] = cv_step(prev[v], parent[v].map(|p| prev[p]));
        }
    }
    let free = |used: &[u128]| (0u128..3).find(|x| !used.contains(x)).expect("free color");
    for color in [5u128, 4, 3] {
        // shift down: children take the parent's color, so a node's children
        // all carry its old color
        let old = c.clone();
        for &v in order {
            c[v] = match parent[v] {
                Some(p) => old[p],
                None => free(&[old[v]]),
            };
        }
        let shifted = c.clone();
        for &v in order {
            if shifted[v] == color {
                let mut used = vec![old[v]];
                if let Some(p) = parent[v] {
                    used.push(shifted[p]);
                }
                c[v] = free(&used);
            }
        }
    }
    c
}

/// Marks of the last level: along every root-to-leaf path, consecutive marks are
/// at least `k` and at most `spacing` edges apart.
fn marks(inst: &Instance, order: &[usize], s: &TreeSchedule, bits: u32) -> Vec<bool> {
    let n = inst.n();
    let mut member = vec![true; n];
    let mut vparent: Vec<Option<usize>> = inst.parents.clone();
    for level in 0..s.levels {
        let members: Vec<usize> = order.iter().copied().filter(|&v| member[v]).collect();
        let colors = color_forest(&members, &vparent, &inst.ids, bits);
        let mut next = vec![false; n];
        for &w in &members {
            let Some(p) = vparent[w] else { continue };
            let Some(g) = vparent[p] else { continue };
            next[w] = colors[p] < colors[g] && colors[p] < colors[w];
        }
        member = next;
        if level + 1 < s.levels {
            // virtual parent: nearest marked proper ancestor
            let mut nearest: Vec<Option<usize>> = vec![None; n];
            for &v in order {
                if let Some(p) = inst.parents[v] {
                    nearest[v] = if member[p] { Some(p) } else { nearest[p] };
                }
            }
            vparent = nearest;
        }
    }
    member
}

/// Node labels of the one-sided anchoring algorithm with anchor state `q`.
fn one_sided_labels(inst: &Instance, a: &Automaton, q: usize, k: usize) -> Result<(Vec<Label>, usize), RuntimeError> {
    let n = inst.n();
    let qs = a.state(q);
    if a.is_loop(q) {
        return Ok((vec![qs.tail; n], 0));
    }
    let s = tree_schedule(k);
    let bits = id_bits(inst);
    let depths = inst.depths();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| depths[v]);
    let mark = marks(inst, &order, &s, bits);
    let (t, p0) = (s.shift, s.p0);
    let anchor_at = |v: usize| depths[v] == p0 || (depths[v] >= p0 + k && mark[v]);

    let top = a
        .walk_from_set(a.start_set(), q, t + p0 - 1)
        .ok_or(RuntimeError::NoWalk { from: q, to: q, len: t + p0 - 1 })?;
    let mut walks: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut out = vec![0; n];
    let mut path = Vec::new();
    for v in 0..n {
        let d = depths[v];
        if d == 0 {
            out[v] = a.state(top[0]).tail;
            continue;
        }
        if d <= t + p0 {
            out[v] = a.state(top[d - 1]).head;
            continue;
        }
        let x = d - t;
        // ancestors of v at depths d, d−1, ..., p0
        path.clear();
        let mut u = v;
        while depths[u] >= p0 {
            path.push(u);
            if depths[u] == p0 {
                break;
            }
            u = inst.parents[u].expect("non-root");
        }
        let at_depth = |j: usize| path[d - j];
        let j1 = (p0..=x).rev().find(|&j| anchor_at(at_depth(j))).expect("forced anchor");
        let j2 = (x + 1..=d).find(|&j| anchor_at(at_depth(j)));
        let Some(j2) = j2 else {
            unreachable!("anchors are at most {} apart below depth {}", t, p0)
        };
        let len = j2 - j1;
        if let std::collections::hash_map::Entry::Vacant(e) = walks.entry(len) {
            let w = a
                .exact_length_walk(q, q, len)
                .ok_or(RuntimeError::NoWalk { from: q, to: q, len })?;
            e.insert(w);
        }
        out[v] = a.state(walks[&len][x - j1]).head;
    }
    Ok((out, tree_radius(&s, bits)))
}

fn node_labeling(inst: &Instance, labels: &[Label]) -> Labeling {
    Labeling {
        ports: inst.edges().iter().map(|&(p, c)| [labels[p], labels[c]]).collect(),
    }
}

fn gather(inst: &Instance, p: &LclProblem) -> Result<Labeling, RuntimeError> {
    solve_tree(&Automaton::build(p), inst).ok_or(RuntimeError::Unsolvable)
}

pub(crate) fn run_tree(inst: &Instance, plan: &AlgorithmPlan, p: &LclProblem) -> Result<(Labeling, SimTrace), RuntimeError> {
    let height = inst.height();
    match plan.strategy {
        Strategy::GatherDP => gather(inst, p).map(|l| (l, SimTrace::flooding(inst, 2 * height))),
        Strategy::FiniteBrute => {
            let a = plan_automaton(p, Topology::RootedTree);
            if height > a.len() {
                return Err(RuntimeError::Unsolvable);
            }
            let r = (2 * height).min(a.len() + 1);
            gather(inst, p).map(|l| (l, SimTrace::flooding(inst, r)))
        }
        Strategy::TreeOneSided => {
            if !p.is_edge_checkable() {
                return Err(RuntimeError::NotEdgeCheckable);
            }
            let a = plan_automaton(p, Topology::RootedTree);
            let q = plan
                .state_index
                .filter(|&q| q < a.len())
                .ok_or_else(|| RuntimeError::PlanMismatch("plan state missing from the automaton".into()))?;
            let k = plan.flexibility.unwrap_or(1);
            let (labels, radius) = one_sided_labels(inst, &a, q, k)?;
            Ok((node_labeling(inst, &labels), SimTrace::flooding(inst, radius)))
        }
        s => Err(RuntimeError::PlanMismatch(format!("{s:?} is not a tree plan"))),
    }
}

/// Classifies the directed-path reading of an edge-checkable problem, makes
/// the plan one-sided and runs it on every root-to-leaf path at once.
pub fn solve_rooted_tree(p: &LclProblem, inst: &Instance) -> Result<(Labeling, SimTrace), RuntimeError> {
    if !p.is_edge_checkable() {
        return Err(RuntimeError::NotEdgeCheckable);
    }
    if inst.topology != Topology::RootedTree {
        return Err(RuntimeError::PlanMismatch("not a rooted tree".into()));
    }
    let c = classify(p).map_err(|e| RuntimeError::PlanMismatch(e.to_string()))?;
    let path_plan = synthesize(p, &c, Topology::Path, true)?;
    let plan = match path_plan.strategy {
        Strategy::LoopFill | Strategy::FlexAnchor => {
            let t = shift_for(path_plan.flexibility.unwrap_or(1));
            make_one_sided(path_plan, t)
        }
        _ => synthesize(p, &c, Topology::RootedTree, true)?,
    };
    run_tree(inst, &plan, p)
}

fn subtree_heights(inst: &Instance, children: &[Vec<usize>], order: &[usize]) -> Vec<usize> {
    let mut h = vec![0; inst.n()];
    for &v in order.iter().rev() {
        h[v] = children[v].iter().map(|&c| h[c] + 1).max().unwrap_or(0);
    }
    h
}

fn depth_order(inst: &Instance) -> Vec<usize> {
    let depths = inst.depths();
    let mut order: Vec<usize> = (0..inst.n()).collect();
    order.sort_by_key(|&v| depths[v]);
    order
}

/// Cut edges (indexed like the tree's edges) splitting the tree into subtrees
/// of height at least `k − 1` whose cut leaves all sit at the subtree's height.
/// Greedy top-down: each subtree is cut at its shallowest admissible level.
pub fn tree_distance_k_anchoring(inst: &Instance, k: usize) -> Result<Vec<bool>, RuntimeError> {
    if inst.topology != Topology::RootedTree {
        return Err(RuntimeError::PlanMismatch("not a rooted tree".into()));
    }
    let height = inst.height();
    if height < k {
        return Err(RuntimeError::TreeTooShallow { height, k });
    }
    let children = inst.children();
    let order = depth_order(inst);
    let sub = subtree_heights(inst, &children, &order);
    let pe = inst.parent_edge();
    let need = k.saturating_sub(1);
    let mut cut = vec![false; inst.edge_count()];
    let mut roots = vec![inst.root().expect("rooted")];
    while let Some(r) = roots.pop() {
        // levels of r's subtree, level 0 = r
        let mut levels = vec![vec![r]];
        loop {
            let next: Vec<usize> = levels
                .last()
                .expect("non-empty")
                .iter()
                .flat_map(|&v| children[v].iter().copied())
                .collect();
            if next.is_empty() {
                break;
            }
            let h = levels.len() - 1;
            if h >= need && next.iter().all(|&c| sub[c] >= need) {
                for &c in &next {
                    cut[pe[c].expect("non-root")] = true;
                    roots.push(c);
                }
                break;
            }
            levels.push(next);
        }
    }
    Ok(cut)
}

/// Checks both subtree conditions of a tree anchoring.
pub fn check_tree_anchoring(inst: &Instance, cut: &[bool], k: usize) -> bool {
    let children = inst.children();
    let pe = inst.parent_edge();
    let depths = inst.depths();
    let order = depth_order(inst);
    let is_cut = |v: usize| pe[v].is_some_and(|e| cut[e]);
    // component root of every node
    let mut comp = vec![0; inst.n()];
    for &v in &order {
        comp[v] = match inst.parents[v] {
            Some(p) if !is_cut(v) => comp[p],
            _ => v,
        };
    }
    let mut height: HashMap<usize, usize> = HashMap::new();
    for v in 0..inst.n() {
        let h = height.entry(comp[v]).or_insert(0);
        *h = (*h).max(depths[v] - depths[comp[v]]);
    }
    if height.values().any(|&h| h + 1 < k) {
        return false;
    }
    (0..inst.n()).all(|v| {
        let internal = !children[v].is_empty();
        let leaf_here = children[v].iter().all(|&c| is_cut(c));
        !(internal && leaf_here) || depths[v] - depths[comp[v]] == height[&comp[v]]
    })
}
