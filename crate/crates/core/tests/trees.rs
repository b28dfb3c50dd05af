mod common;

use common::local::rewire_around;
use lclkit::catalog;
use lclkit::instance::Instance;
use lclkit::runtime::*;
use lclkit::verifier::verify;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn three_coloring_random_trees() {
    let p = catalog::tree_coloring(3);
    for seed in 0..20 {
        for window in [1, 3, 10] {
            let inst = Instance::random_tree(500, seed, window).unwrap();
            let (lab, trace) = solve_rooted_tree(&p, &inst).unwrap();
            assert!(verify(&p, &inst, &lab).is_ok(), "seed {seed} window {window}");
            assert!(trace.max_radius <= 64, "radius {}", trace.max_radius);
        }
    }
}

#[test]
fn outputs_are_one_sided() {
    let p = catalog::tree_coloring(3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 0..10 {
        let inst = Instance::random_tree(400, seed, 3).unwrap();
        let (lab, _) = solve_rooted_tree(&p, &inst).unwrap();
        let pe = inst.parent_edge();
        for _ in 0..10 {
            let v = rng.gen_range(1..inst.n());
            let (other, w) = rewire_around(&inst, v, &mut rng);
            let Ok((lab2, _)) = solve_rooted_tree(&p, &other) else { continue };
            let e = pe[v].unwrap();
            let e2 = other.parent_edge()[w].unwrap();
            assert_eq!(lab.ports[e][1], lab2.ports[e2][1], "seed {seed} node {v}");
        }
    }
}

#[test]
fn tree_anchorings_hold() {
    for seed in 0..30 {
        let inst = Instance::random_tree(300, seed, 2 + seed as usize % 4).unwrap();
        for k in 1..5 {
            let cut = tree_distance_k_anchoring(&inst, k).unwrap();
            assert!(check_tree_anchoring(&inst, &cut, k), "seed {seed} k {k}");
        }
    }
}

#[test]
fn shallow_trees_are_rejected() {
    let inst = Instance::tree(vec![None, Some(0), Some(0)], vec![1, 2, 3]).unwrap();
    assert!(matches!(
        tree_distance_k_anchoring(&inst, 3),
        Err(RuntimeError::TreeTooShallow { height: 1, k: 3 })
    ));
}
