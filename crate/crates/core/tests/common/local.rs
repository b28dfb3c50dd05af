use lclkit::automaton::Topology;
use lclkit::classifier::classify;
use lclkit::instance::Instance;
use lclkit::model::LclProblem;
use lclkit::oracle::solve_exact;
use lclkit::runtime::{run_local, synthesize};
use lclkit::verifier::verify;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

pub fn build(topology: Topology, ids: Vec<u64>, directed: bool) -> Instance {
    match topology {
        Topology::Cycle => Instance::cycle(ids, directed).unwrap(),
        _ => Instance::path(ids, directed).unwrap(),
    }
}

pub fn settings(p: &LclProblem) -> Vec<(Topology, bool)> {
    let mut out = Vec::new();
    for topology in [Topology::Path, Topology::Cycle] {
        out.push((topology, true));
        if p.is_symmetric() {
            out.push((topology, false));
        }
    }
    out
}

/// Runs the synthesized plan and checks it against the exact solver.
pub fn check_sound(p: &LclProblem, inst: &Instance) {
    let c = classify(p).unwrap();
    let plan = synthesize(p, &c, inst.topology, inst.directed).unwrap();
    let exact = solve_exact(p, inst).unwrap();
    match run_local(inst, &plan, p) {
        Ok((lab, _)) => {
            assert!(exact.is_some(), "runtime solved an unsolvable instance");
            assert!(verify(p, inst, &lab).is_ok(), "{:?} n={} {:?}", inst.topology, inst.n(), plan.strategy);
        }
        Err(e) => assert!(exact.is_none(), "{:?} n={} {:?}: {e}", inst.topology, inst.n(), plan.strategy),
    }
}

/// Re-randomizes every id farther than `keep` from edge `e` (distinct, at most n²).
pub fn rerandomize(inst: &Instance, e: usize, keep: usize, rng: &mut ChaCha8Rng) -> Instance {
    let n = inst.n();
    let cyclic = inst.topology == Topology::Cycle;
    let dist = |v: usize| {
        let d = |a: usize, b: usize| {
            let l = a.abs_diff(b);
            if cyclic { l.min(n - l) } else { l }
        };
        d(v, e).min(d(v, (e + 1) % n))
    };
    let fixed: HashSet<u64> = (0..n).filter(|&v| dist(v) <= keep).map(|v| inst.ids[v]).collect();
    let space = (n * n) as u64;
    let mut used = fixed.clone();
    let ids = (0..n)
        .map(|v| {
            if dist(v) <= keep {
                return inst.ids[v];
            }
            loop {
                let x = rng.gen_range(1..=space);
                if used.insert(x) {
                    return x;
                }
            }
        })
        .collect();
    build(inst.topology, ids, inst.directed)
}

/// Same ids on the root-to-`v` path; every other node is rewired below it
/// with a fresh id, keeping `n`.
pub fn rewire_around(inst: &Instance, v: usize, rng: &mut ChaCha8Rng) -> (Instance, usize) {
    let n = inst.n();
    let mut chain = vec![v];
    while let Some(p) = inst.parents[*chain.last().unwrap()] {
        chain.push(p);
    }
    chain.reverse();
    let mut used: HashSet<u64> = chain.iter().map(|&u| inst.ids[u]).collect();
    let space = (n * n) as u64;
    let mut ids: Vec<u64> = chain.iter().map(|&u| inst.ids[u]).collect();
    let mut parents: Vec<Option<usize>> = (0..chain.len()).map(|i| i.checked_sub(1)).collect();
    while ids.len() < n {
        let x = rng.gen_range(1..=space);
        if used.insert(x) {
            let i = ids.len();
            ids.push(x);
            parents.push(Some(rng.gen_range(i.saturating_sub(4)..i)));
        }
    }
    (Instance::tree(parents, ids).unwrap(), chain.len() - 1)
}

