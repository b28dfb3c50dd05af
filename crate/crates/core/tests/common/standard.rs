use lclkit::automaton::Topology;
use lclkit::instance::Instance;
use lclkit::normalizer::*;
use lclkit::oracle::solve_exact;
use lclkit::verifier::verify;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn names(k: usize) -> Vec<String> {
    ["a", "b", "c"][..k].iter().map(|s| s.to_string()).collect()
}

/// Random reversal-closed subset of all views.
pub fn random_standard(r: usize, k: usize, rng: &mut ChaCha8Rng) -> StandardLcl {
    let all = StandardLcl::permissive(r, names(k)).unwrap();
    let density: f64 = rng.gen_range(0.3..0.95);
    let mut keep = Vec::new();
    while keep.is_empty() {
        for v in all.views() {
            let rev: ViewString = v.iter().rev().copied().collect();
            if v <= &rev && rng.gen_bool(density) {
                keep.push(v.clone());
                keep.push(rev);
            }
        }
    }
    StandardLcl::new(r, names(k), keep).unwrap()
}

pub fn instance(topology: Topology, n: usize, directed: bool) -> Instance {
    let ids = (1..=n as u64).collect();
    match topology {
        Topology::Cycle => Instance::cycle(ids, directed).unwrap(),
        _ => Instance::path(ids, directed).unwrap(),
    }
}

pub fn check_equivalence(s: &StandardLcl, max_n: usize) {
    let p = normalize(s).unwrap();
    let r = s.radius();
    for topology in [Topology::Path, Topology::Cycle] {
        for n in 2 * r + 2..=max_n {
            let inst = instance(topology, n, false);
            let direct = solve_standard(s, &inst).unwrap();
            let via = solve_exact(&p, &inst).unwrap();
            assert_eq!(direct.is_some(), via.is_some(), "{topology:?} n={n} {:?}", s.to_doc());
            if let Some(l) = via {
                let back = project_labeling(s, &inst, &l).unwrap();
                assert!(is_legal(s, &inst, &back).unwrap());
            }
            if let Some(l) = direct {
                let lifted = lift_labeling(s, &inst, &l).unwrap();
                assert!(verify(&p, &inst, &lifted).is_ok());
            }
        }
    }
}

