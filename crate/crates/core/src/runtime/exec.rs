//! Executing chain plans on paths and cycles.

use crate::automaton::{Automaton, Topology};
use crate::instance::{Instance, Labeling};
use crate::model::{Label, LclProblem};
use crate::oracle::solve_sequence;

use super::chain::{Chain, Clock};
use super::coloring::{anchor_schedule, anchors, orient, orient_window};
use super::fill::fill;
use super::{plan_automaton, AlgorithmPlan, RuntimeError, Strategy};

/// Largest id any node may carry: n² unless the instance uses larger ids.
fn id_space(inst: &Instance) -> u128 {
    let n = inst.n() as u128;
    let max_id = inst.ids.iter().copied().max().unwrap_or(0) as u128;
    (n * n).max(max_id)
}

/// Bits needed for item ids.
pub(crate) fn id_bits(inst: &Instance) -> u32 {
    let m = id_space(inst);
    let top = (m + 1).saturating_mul(m + 1) - 1;
    (128 - top.leading_zeros()).max(1)
}

/// The chain of edges of a path or cycle instance.
pub(crate) fn chain_of(inst: &Instance) -> Chain {
    let m = id_space(inst);
    let n = inst.n();
    let ids = &inst.ids;
    let edges = inst.edge_count();
    let mut item_ids = Vec::with_capacity(edges);
    let mut flip = Vec::with_capacity(edges);
    for e in 0..edges {
        let (u, v) = (ids[e] as u128, ids[(e + 1) % n] as u128);
        item_ids.push(u.min(v) * (m + 1) + u.max(v));
        flip.push(!inst.directed && v < u);
    }
    Chain {
        cyclic: inst.topology == Topology::Cycle,
        ids: item_ids,
        flip,
    }
}

/// Port labels of every item back in instance orientation.
fn labeling_from(chain: &Chain, out: &[[Label; 2]]) -> Labeling {
    Labeling {
        ports: out
            .iter()
            .zip(&chain.flip)
            .map(|(l, &f)| if f { [l[1], l[0]] } else { *l })
            .collect(),
    }
}

/// Least solution computed from the whole instance.
fn central(a: &Automaton, inst: &Instance) -> Result<Labeling, RuntimeError> {
    let cyclic = inst.topology == Topology::Cycle;
    let seq = solve_sequence(a, inst.edge_count(), cyclic).ok_or(RuntimeError::Unsolvable)?;
    Ok(Labeling {
        ports: seq
            .iter()
            .map(|&s| {
                let st = a.state(s);
                [st.tail, st.head]
            })
            .collect(),
    })
}

/// Radius at which every node sees the whole instance.
fn gather_radius(inst: &Instance) -> usize {
    match inst.topology {
        Topology::Cycle => inst.n() / 2,
        _ => inst.n() - 1,
    }
}

/// Half-width of the relabeled zone around an orientation flip.
fn flip_margin(km: usize) -> usize {
    km.saturating_sub(1).div_ceil(2).max(1)
}

/// Orientation distance used by loop-orientation plans with mirror-flexibility `km`.
pub(crate) fn orientation_distance(km: usize) -> usize {
    2 * flip_margin(km) + 1
}

#[derive(Clone, Copy, Debug)]
enum Mode {
    Anchor { d: usize },
    Orient { k: usize, h: usize },
}

/// Fixed schedule of an anchored plan for one chain shape.
#[derive(Clone, Copy, Debug)]
struct Geometry {
    mode: Mode,
    d_end: usize,
    window: usize,
    large_rounds: usize,
    /// Chains with at most this many items are solved from a full view.
    small_len: usize,
    radius: usize,
}

impl Geometry {
    fn new(plan: &AlgorithmPlan, cyclic: bool, states: usize, bits: u32) -> Geometry {
        let k = plan.flexibility.unwrap_or(1).max(1);
        let (mode, gapmax) = match plan.strategy {
            Strategy::MirrorLoopOrient => {
                let h = flip_margin(k);
                (Mode::Orient { k: 2 * h + 1, h }, 2 * h + 1)
            }
            _ => (Mode::Anchor { d: k - 1 }, 2 * (k - 1) + 1),
        };
        let d_end = if cyclic { 0 } else { k + states };
        let window = if cyclic { gapmax } else { d_end + gapmax };
        let (sym_rounds, sym_windows, min_cycle) = match mode {
            Mode::Anchor { d: 0 } => (0, 0, 0),
            Mode::Anchor { d } => {
                let s = anchor_schedule(d, bits);
                (s.rounds, s.max_spacing, 3 * s.max_spacing)
            }
            Mode::Orient { k, h } => {
                let s = anchor_schedule(k, bits);
                let ow = orient_window(k);
                (s.rounds + ow + h, s.max_spacing.max(ow), 3 * s.max_spacing)
            }
        };
        let end_check = if cyclic { 0 } else { d_end + 1 };
        let large_rounds = sym_rounds + end_check + window;
        let (small_len, small_radius) = if cyclic {
            let len = min_cycle.max(2 * sym_windows.max(window) + 1);
            (len, len / 2 + 1)
        } else {
            let extra = match mode {
                Mode::Orient { k, .. } => 2 * orient_window(k),
                Mode::Anchor { .. } => 0,
            };
            let len = 2 * (d_end + 1) + 2 * gapmax + extra;
            (len, len)
        };
        Geometry {
            mode,
            d_end,
            window,
            large_rounds,
            small_len,
            radius: large_rounds.max(small_radius),
        }
    }
}

fn large(chain: &Chain, a: &Automaton, q: usize, directed: bool, geo: &Geometry, bits: u32) -> Option<Vec<[Label; 2]>> {
    let mut clock = Clock::default();
    let qs = a.state(q);
    let fixed: Vec<Option<[Label; 2]>> = match geo.mode {
        Mode::Anchor { d } => {
            let anc = if d == 0 {
                vec![true; chain.len()]
            } else {
                anchors(chain, d, &mut clock, bits)
            };
            anc.iter().map(|&x| x.then_some([qs.tail, qs.head])).collect()
        }
        Mode::Orient { k, h } => {
            let dirs = orient(chain, k, &mut clock, bits);
            // keep items whose orientation agrees with everything within h
            chain.run(&mut clock, h, h, |v| {
                let me = *v.me(&dirs);
                let calm = (0..2).all(|p| {
                    (1..=h).all(|t| match v.at(p, t) {
                        Some(x) => (*x.read(&dirs) == 1 - x.back) == (me == p),
                        None => true,
                    })
                });
                calm.then(|| {
                    let mut l = [0; 2];
                    l[me] = qs.head;
                    l[1 - me] = qs.tail;
                    l
                })
            })
        }
    };
    let fixed = if chain.cyclic {
        fixed
    } else {
        let r = geo.d_end + 1;
        chain.run(&mut clock, r, r, |v| {
            v.me(&fixed).filter(|_| v.at(0, r).is_some() && v.at(1, r).is_some())
        })
    };
    let out = fill(chain, a, &fixed, directed, geo.window, &mut clock);
    debug_assert_eq!(clock.rounds, geo.large_rounds);
    out.into_iter().collect()
}

/// Labeling and schedule radius for a chain plan.
pub(crate) fn run_chain(
    inst: &Instance,
    plan: &AlgorithmPlan,
    p: &LclProblem,
) -> Result<(Labeling, usize), RuntimeError> {
    let a = plan_automaton(p, inst.topology);
    let cyclic = inst.topology == Topology::Cycle;
    let len = inst.edge_count();
    match plan.strategy {
        Strategy::GatherDP => return central(&a, inst).map(|l| (l, gather_radius(inst))),
        Strategy::FiniteBrute => {
            // acyclic automaton: no solution has more than |Q| edges
            if a.is_empty() || len > a.len() {
                return Err(RuntimeError::Unsolvable);
            }
            return central(&a, inst).map(|l| (l, gather_radius(inst).min(a.len() + 1)));
        }
        Strategy::TreeOneSided => {
            return Err(RuntimeError::PlanMismatch("tree plan on a chain".into()));
        }
        _ => {}
    }
    let q = plan
        .state_index
        .filter(|&q| q < a.len())
        .ok_or_else(|| RuntimeError::PlanMismatch("plan state missing from the automaton".into()))?;
    let chain = chain_of(inst);
    if plan.strategy == Strategy::LoopFill && cyclic {
        if !a.is_loop(q) {
            return Err(RuntimeError::PlanMismatch("loop plan without a loop state".into()));
        }
        let s = a.state(q);
        return Ok((labeling_from(&chain, &vec![[s.tail, s.head]; len]), 0));
    }
    let bits = id_bits(inst);
    let geo = Geometry::new(plan, cyclic, a.len(), bits);
    if len <= geo.small_len {
        return central(&a, inst).map(|l| (l, geo.radius));
    }
    match large(&chain, &a, q, inst.directed, &geo, bits) {
        Some(out) => Ok((labeling_from(&chain, &out), geo.radius)),
        None if !cyclic => central(&a, inst).map(|l| (l, gather_radius(inst))),
        None => Err(RuntimeError::PlanMismatch("gap without a walk on a cycle".into())),
    }
}

/// Anchors (as edge flags) splitting the instance into fragments of at least
/// `k − 1` edges, maximal with respect to that property.
pub fn distance_k_anchoring(inst: &Instance, k: usize) -> Result<Vec<bool>, RuntimeError> {
    if inst.topology == Topology::RootedTree {
        return Err(RuntimeError::PlanMismatch("use tree anchoring for rooted trees".into()));
    }
    if inst.n() <= 2 * k + 2 {
        return Err(RuntimeError::TooSmall { n: inst.n(), min: 2 * k + 2 });
    }
    let chain = chain_of(inst);
    let d = k.max(1) - 1;
    let sched = anchor_schedule(d, id_bits(inst));
    if chain.cyclic && d > 0 && chain.len() <= 3 * sched.max_spacing {
        // too short for the distributed rule: spacing k from the smallest item
        let len = chain.len();
        let step = d + 1;
        let start = (0..len).min_by_key(|&i| chain.ids[i]).expect("non-empty");
        let mut out = vec![false; len];
        for t in 0..len / step {
            out[(start + t * step) % len] = true;
        }
        return Ok(out);
    }
    Ok(anchors(&chain, d, &mut Clock::default(), id_bits(inst)))
}

/// Edge orientation (true: from node `i` to node `i+1`) whose maximal
/// consistently oriented fragments have at least `k` edges.
pub fn distance_k_orientation(inst: &Instance, k: usize) -> Result<Vec<bool>, RuntimeError> {
    if inst.topology == Topology::RootedTree {
        return Err(RuntimeError::PlanMismatch("orientation is defined on paths and cycles".into()));
    }
    let len = inst.edge_count();
    if inst.directed {
        return Ok(vec![true; len]);
    }
    if inst.n() <= 4 * k {
        return Err(RuntimeError::TooSmall { n: inst.n(), min: 4 * k });
    }
    let n = inst.n();
    if k <= 1 {
        return Ok((0..len).map(|e| inst.ids[(e + 1) % n] > inst.ids[e]).collect());
    }
    let chain = chain_of(inst);
    let bits = id_bits(inst);
    let sched = anchor_schedule(k, bits);
    if chain.cyclic && len <= (3 * sched.max_spacing).max(2 * orient_window(k) + 1) {
        return Ok(vec![true; len]);
    }
    let dirs = orient(&chain, k, &mut Clock::default(), bits);
    Ok(dirs
        .iter()
        .zip(&chain.flip)
        .map(|(&d, &f)| (d == 1) != f)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fragments(o: &[bool], cyclic: bool) -> Vec<usize> {
        let n = o.len();
        if o.iter().all(|&x| x == o[0]) {
            return vec![n];
        }
        let start = if cyclic { (0..n).find(|&i| o[i] != o[(i + n - 1) % n]).unwrap() } else { 0 };
        let mut out = vec![1];
        for t in 1..n {
            let (i, j) = ((start + t - 1) % n, (start + t) % n);
            if o[i] == o[j] {
                *out.last_mut().unwrap() += 1;
            } else {
                out.push(1);
            }
        }
        out
    }

    #[test]
    fn orientation_fragments() {
        for seed in 0..10 {
            for topo in [Topology::Cycle, Topology::Path] {
                let inst = Instance::random(topo, 300, false, seed).unwrap();
                let o = distance_k_orientation(&inst, 3).unwrap();
                let fr = fragments(&o, topo == Topology::Cycle);
                assert!(fr.iter().all(|&f| f >= 3), "{fr:?}");
            }
        }
    }

    #[test]
    fn small_anchorings() {
        let inst = Instance::cycle((1..=7).collect(), false).unwrap();
        let a = distance_k_anchoring(&inst, 2).unwrap();
        assert_eq!(a, distance_k_anchoring(&inst, 2).unwrap());
        let big = Instance::cycle((1..=15).collect(), false).unwrap();
        assert!(matches!(distance_k_anchoring(&big, 10), Err(RuntimeError::TooSmall { .. })));
    }
}
