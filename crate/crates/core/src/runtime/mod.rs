//! Synthesized LOCAL algorithms and their round-by-round simulation.
//!
//! Paths and cycles run on chains of edges: every edge is an item whose id is
//! derived from its endpoint ids, and whose port 0 faces the endpoint with the
//! smaller id (undirected) or the tail (directed). Nodes follow a fixed
//! schedule; the reported radius is the radius of that schedule.

mod chain;
mod coloring;
mod exec;
mod fill;
mod tree;

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{Automaton, Topology};
use crate::classifier::Classification;
use crate::instance::{Instance, Labeling};
use crate::model::LclProblem;
use crate::properties::PropertyReport;

pub use exec::{distance_k_anchoring, distance_k_orientation};
pub use fill::{fill_gap, fix_ends};
pub use tree::{check_tree_anchoring, solve_rooted_tree, tree_distance_k_anchoring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    LoopFill,
    MirrorLoopOrient,
    FlexAnchor,
    MirrorFlexAnchor,
    GatherDP,
    FiniteBrute,
    TreeOneSided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgorithmPlan {
    pub strategy: Strategy,
    pub topology: Topology,
    pub directed: bool,
    /// The anchor or loop state, by name.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    /// Index of that state in the plan automaton (pruned for paths and trees, cycle core for cycles).
    #[serde(skip)]
    pub state_index: Option<usize>,
    /// K for flexible plans, K_m for mirror plans.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flexibility: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchoring_distance: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub end_fix_radius: Option<usize>,
    /// Output shift of a one-sided plan.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner: Option<Box<AlgorithmPlan>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AlgorithmPlan {
    fn bare(strategy: Strategy, topology: Topology, directed: bool) -> Self {
        AlgorithmPlan {
            strategy,
            topology,
            directed,
            state: None,
            state_index: None,
            flexibility: None,
            anchoring_distance: None,
            end_fix_radius: None,
            shift: None,
            inner: None,
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimTrace {
    pub rounds: usize,
    pub max_radius: usize,
    pub messages_total: usize,
    #[serde(skip)]
    pub per_node_messages: Vec<usize>,
}

impl SimTrace {
    /// One message per port per round for `radius` rounds.
    fn flooding(inst: &Instance, radius: usize) -> SimTrace {
        let mut degree = vec![0usize; inst.n()];
        for (t, h) in inst.edges() {
            degree[t] += 1;
            degree[h] += 1;
        }
        let per_node_messages: Vec<usize> = degree.iter().map(|d| d * radius).collect();
        SimTrace {
            rounds: radius,
            max_radius: radius,
            messages_total: per_node_messages.iter().sum(),
            per_node_messages,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuntimeError {
    #[error("asymmetric problems are undefined on undirected instances")]
    AsymmetricOnUndirected,
    #[error("the instance has no solution")]
    Unsolvable,
    #[error("plan does not fit: {0}")]
    PlanMismatch(String),
    #[error("instance too small: n = {n}, needs more than {min}")]
    TooSmall { n: usize, min: usize },
    #[error("tree height {height} is below {k}")]
    TreeTooShallow { height: usize, k: usize },
    #[error("no walk of length {len} from state {from} to state {to}")]
    NoWalk { from: usize, to: usize, len: usize },
    #[error("the path ends cannot be completed")]
    UnsolvableEnds,
    #[error("rooted-tree plans need an edge-checkable problem")]
    NotEdgeCheckable,
}

/// Automaton a plan runs on: pruned for paths and trees, cycle core for cycles.
pub(crate) fn plan_automaton(p: &LclProblem, topology: Topology) -> Automaton {
    let full = Automaton::build(p);
    match topology {
        Topology::Cycle => full.cycle_core(),
        Topology::Path | Topology::RootedTree => full.prune(),
    }
}

fn with_state(mut plan: AlgorithmPlan, r: &PropertyReport, q: usize) -> AlgorithmPlan {
    plan.state = Some(r.state(q).state.clone());
    plan.state_index = Some(q);
    plan
}

/// Chooses the canonical algorithm for one setting.
pub fn synthesize(
    p: &LclProblem,
    c: &Classification,
    topology: Topology,
    directed: bool,
) -> Result<AlgorithmPlan, RuntimeError> {
    if !directed && !c.symmetric {
        return Err(RuntimeError::AsymmetricOnUndirected);
    }
    if topology == Topology::RootedTree {
        return synthesize_tree(p, c);
    }
    let r = match topology {
        Topology::Cycle => &c.cycle_properties,
        _ => &c.path_properties,
    };
    let q_count = r.states.len();
    let end_fix = |k: usize| (topology == Topology::Path).then_some(k + q_count);
    use Strategy::*;
    let plan = if directed && r.has_loop {
        let q = r.states.iter().find(|s| s.is_loop).expect("loop").index;
        let mut plan = with_state(AlgorithmPlan::bare(LoopFill, topology, true), r, q);
        plan.flexibility = Some(1);
        plan.end_fix_radius = end_fix(1);
        plan
    } else if directed && r.has_flexible {
        let (k, q) = r.min_flexible().expect("flexible");
        let mut plan = with_state(AlgorithmPlan::bare(FlexAnchor, topology, true), r, q);
        plan.flexibility = Some(k);
        plan.anchoring_distance = Some(k);
        plan.end_fix_radius = end_fix(k);
        plan
    } else if !directed && r.has_mirror_flexible_loop {
        let (k, q) = r
            .states
            .iter()
            .filter(|s| s.mirror_flexible_loop)
            .filter_map(|s| Some((s.mirror_flexibility?, s.index)))
            .min()
            .expect("mirror-flexible loop");
        let mut plan = with_state(AlgorithmPlan::bare(MirrorLoopOrient, topology, false), r, q);
        plan.flexibility = Some(k);
        plan.anchoring_distance = Some(exec::orientation_distance(k));
        plan.end_fix_radius = end_fix(k);
        plan.notes.push(
            "orientation via anchoring: O(log* n) rounds instead of the constant-round orientation".into(),
        );
        plan
    } else if !directed && r.has_mirror_flexible {
        let (k, q) = r
            .states
            .iter()
            .filter_map(|s| Some((s.mirror_flexibility?, s.index)))
            .min()
            .expect("mirror-flexible");
        let mut plan = with_state(AlgorithmPlan::bare(MirrorFlexAnchor, topology, false), r, q);
        plan.flexibility = Some(k);
        plan.anchoring_distance = Some(k);
        plan.end_fix_radius = end_fix(k);
        plan
    } else if r.has_repeatable {
        AlgorithmPlan::bare(GatherDP, topology, directed)
    } else {
        AlgorithmPlan::bare(FiniteBrute, topology, directed)
    };
    Ok(plan)
}

fn synthesize_tree(p: &LclProblem, c: &Classification) -> Result<AlgorithmPlan, RuntimeError> {
    let inner = synthesize(p, c, Topology::Path, true)?;
    match inner.strategy {
        Strategy::LoopFill | Strategy::FlexAnchor if p.is_edge_checkable() => {
            let t = tree::shift_for(inner.flexibility.expect("flexible plan"));
            Ok(make_one_sided(inner, t))
        }
        Strategy::FiniteBrute => Ok(AlgorithmPlan::bare(Strategy::FiniteBrute, Topology::RootedTree, true)),
        _ => {
            let mut plan = AlgorithmPlan::bare(Strategy::GatherDP, Topology::RootedTree, true);
            plan.notes.push("gathers the whole tree".into());
            Ok(plan)
        }
    }
}

/// Wraps a directed-path plan so that every output depends only on the node
/// and its ancestors: outputs are shifted down by `t` and the top of every
/// root-to-leaf path is labeled locally.
pub fn make_one_sided(plan: AlgorithmPlan, t: usize) -> AlgorithmPlan {
    let mut out = AlgorithmPlan::bare(Strategy::TreeOneSided, Topology::RootedTree, true);
    out.state = plan.state.clone();
    out.state_index = plan.state_index;
    out.flexibility = plan.flexibility;
    if plan.strategy == Strategy::GatherDP {
        out.notes.push("not applicable beyond small trees: gathers the whole tree".into());
    }
    out.shift = Some(if plan.strategy == Strategy::LoopFill { 0 } else { t });
    out.inner = Some(Box::new(plan));
    out
}

/// Runs a plan on an instance.
pub fn run_local(
    inst: &Instance,
    plan: &AlgorithmPlan,
    p: &LclProblem,
) -> Result<(Labeling, SimTrace), RuntimeError> {
    if !inst.directed && !p.is_symmetric() {
        return Err(RuntimeError::AsymmetricOnUndirected);
    }
    if plan.topology != inst.topology || (inst.topology != Topology::RootedTree && plan.directed != inst.directed) {
        return Err(RuntimeError::PlanMismatch(format!(
            "plan for {:?} (directed: {}), instance is {:?} (directed: {})",
            plan.topology, plan.directed, inst.topology, inst.directed
        )));
    }
    if inst.topology == Topology::RootedTree {
        return tree::run_tree(inst, plan, p);
    }
    let (lab, radius) = exec::run_chain(inst, plan, p)?;
    Ok((lab, SimTrace::flooding(inst, radius)))
}
