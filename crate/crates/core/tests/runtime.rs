mod common;

use common::local::*;
use lclkit::automaton::Topology;
use lclkit::catalog;
use lclkit::classifier::classify;
use lclkit::instance::random_ids;
use lclkit::model::LclProblem;
use lclkit::oracle::solve_exact;
use lclkit::runtime::*;
use lclkit::verifier::verify;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn catalog_is_sound_on_small_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut problems: Vec<LclProblem> = catalog::types().into_iter().map(|(_, p)| p).collect();
    problems.push(catalog::maximal_matching());
    for p in &problems {
        for (topology, directed) in settings(p) {
            for n in 3..20 {
                for _ in 0..3 {
                    check_sound(p, &build(topology, random_ids(n, &mut rng), directed));
                }
            }
        }
    }
}

#[test]
fn catalog_is_sound_on_larger_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (name, p) in catalog::types() {
        let c = classify(&p).unwrap();
        for (topology, directed) in settings(&p) {
            let plan = synthesize(&p, &c, topology, directed).unwrap();
            for n in [257, 1000] {
                let inst = build(topology, random_ids(n, &mut rng), directed);
                match run_local(&inst, &plan, &p) {
                    Ok((lab, _)) => assert!(verify(&p, &inst, &lab).is_ok(), "{name}"),
                    Err(RuntimeError::Unsolvable) => {
                        assert!(solve_exact(&p, &inst).unwrap().is_none(), "{name}")
                    }
                    Err(e) => panic!("{name} {topology:?} {directed}: {e}"),
                }
            }
        }
    }
}

#[test]
fn outputs_depend_only_on_the_radius_ball() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, p) in catalog::types() {
        let c = classify(&p).unwrap();
        for (topology, directed) in settings(&p) {
            let plan = synthesize(&p, &c, topology, directed).unwrap();
            let n = 600;
            let inst = build(topology, random_ids(n, &mut rng), directed);
            let Ok((lab, trace)) = run_local(&inst, &plan, &p) else { continue };
            if 2 * trace.max_radius + 4 >= n {
                continue;
            }
            for _ in 0..5 {
                let e = rng.gen_range(0..inst.edge_count());
                let other = rerandomize(&inst, e, trace.max_radius + 2, &mut rng);
                let (lab2, _) = run_local(&other, &plan, &p).unwrap();
                assert_eq!(lab.ports[e], lab2.ports[e], "{name} {topology:?} directed={directed} {:?}", plan.strategy);
            }
        }
    }
}

/// Numbers of unflagged items between consecutive flags; path end fragments are left out.
fn gaps(flags: &[bool], cyclic: bool) -> Vec<usize> {
    let at: Vec<usize> = (0..flags.len()).filter(|&i| flags[i]).collect();
    let mut out: Vec<usize> = at.windows(2).map(|w| w[1] - w[0] - 1).collect();
    if cyclic {
        out.push(flags.len() - at[at.len() - 1] + at[0] - 1);
    }
    out
}

#[test]
fn anchorings_are_spaced() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for topology in [Topology::Path, Topology::Cycle] {
        for directed in [true, false] {
            for k in 1..6 {
                for n in [40, 300, 2000] {
                    let inst = build(topology, random_ids(n, &mut rng), directed);
                    let flags = distance_k_anchoring(&inst, k).unwrap();
                    assert_eq!(flags.len(), inst.edge_count());
                    assert!(flags.iter().any(|&b| b));
                    for g in gaps(&flags, topology == Topology::Cycle) {
                        assert!(g + 1 >= k, "k={k} n={n} gap={g}");
                    }
                }
            }
        }
    }
}

#[test]
fn orientations_have_long_runs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for topology in [Topology::Path, Topology::Cycle] {
        for k in 1..5 {
            for n in [100, 1500] {
                let inst = build(topology, random_ids(n, &mut rng), false);
                let dirs = distance_k_orientation(&inst, k).unwrap();
                assert_eq!(dirs.len(), inst.edge_count());
                let runs = runs_of(&dirs, topology == Topology::Cycle);
                assert!(runs.iter().all(|&r| r >= k), "k={k} n={n} runs={runs:?}");
            }
        }
    }
}

/// Lengths of maximal runs of equal direction; on paths the end runs are included.
fn runs_of(d: &[bool], cyclic: bool) -> Vec<usize> {
    let len = d.len();
    if d.iter().all(|&x| x == d[0]) {
        return vec![len];
    }
    let start = if cyclic { (0..len).find(|&i| d[i] != d[(i + len - 1) % len]).unwrap() } else { 0 };
    let mut out = Vec::new();
    let mut run = 1;
    for i in 1..len {
        if d[(start + i) % len] == d[(start + i - 1) % len] {
            run += 1;
        } else {
            out.push(run);
            run = 1;
        }
    }
    out.push(run);
    out
}

#[test]
fn each_type_gets_its_strategy() {
    use Strategy::*;
    let expect = [
        ("A", LoopFill, MirrorLoopOrient),
        ("B", LoopFill, MirrorFlexAnchor),
        ("C", LoopFill, GatherDP),
        ("E", FlexAnchor, MirrorFlexAnchor),
        ("F", FlexAnchor, GatherDP),
        ("H", GatherDP, GatherDP),
        ("J", FiniteBrute, FiniteBrute),
    ];
    let types = catalog::types();
    for (name, directed, undirected) in expect {
        let p = &types.iter().find(|(t, _)| *t == name).unwrap().1;
        let c = classify(p).unwrap();
        let d = synthesize(p, &c, Topology::Cycle, true).unwrap();
        let u = synthesize(p, &c, Topology::Cycle, false).unwrap();
        assert_eq!((d.strategy, u.strategy), (directed, undirected), "{name}");
    }
}
