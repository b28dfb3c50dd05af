mod common;

use lclkit::catalog;
use lclkit::classifier::classify;
use lclkit::model::{parse_problem, LclProblem, ModelError};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn problem(seed: u64, symmetric: bool) -> LclProblem {
    common::random_problem(&mut ChaCha8Rng::seed_from_u64(seed), 4, symmetric)
}

proptest! {
    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let p = problem(seed, false);
        prop_assert_eq!(parse_problem(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn mirroring_is_an_involution(seed in any::<u64>()) {
        let p = problem(seed, false);
        prop_assert_eq!(p.mirrored().mirrored(), p.clone());
        prop_assert_eq!(p.mirrored() == p, p.is_symmetric());
    }

    #[test]
    fn renaming_keeps_the_type(seed in any::<u64>()) {
        let p = problem(seed, seed % 2 == 0);
        let n = p.alphabet_size();
        let perm: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let q = p.renamed(&perm);
        prop_assert_eq!(classify(&p).unwrap().problem_type, classify(&q).unwrap().problem_type);
    }

    #[test]
    fn product_sizes(a in any::<u64>(), b in any::<u64>()) {
        let (p, q) = (problem(a, false), problem(b, false));
        let r = p.product(&q);
        prop_assert_eq!(r.alphabet_size(), p.alphabet_size() * q.alphabet_size());
        prop_assert_eq!(r.edge().len(), p.edge().len() * q.edge().len());
        prop_assert_eq!(r.node().len(), p.node().len() * q.node().len());
    }
}

#[test]
fn document_errors() {
    let undeclared = r#"{"alphabet":["a"],"edge_constraint":[["a","b"]],"node_constraint":[]}"#;
    assert!(matches!(parse_problem(undeclared), Err(ModelError::UndeclaredLabel { .. })));
    let dup = r#"{"alphabet":["a","a"],"edge_constraint":[],"node_constraint":[]}"#;
    assert!(matches!(parse_problem(dup), Err(ModelError::DuplicateLabel(_))));
    assert!(matches!(parse_problem("{"), Err(ModelError::Syntax { .. })));
}

#[test]
fn catalog_documents_match_data_files() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let files = [
        ("fragment_orientation", catalog::fragment_orientation()),
        ("orientation_or_three_coloring", catalog::orientation_or_three_coloring()),
        ("consistent_orientation", catalog::consistent_orientation()),
        ("positive_orientation", catalog::positive_orientation()),
        ("edge_three_coloring", catalog::edge_three_coloring()),
        ("oriented_three_coloring", catalog::oriented_three_coloring()),
        ("positive_three_coloring", catalog::positive_three_coloring()),
        ("edge_two_coloring", catalog::edge_two_coloring()),
        ("positive_two_coloring", catalog::positive_two_coloring()),
        ("short_paths", catalog::short_paths()),
        ("short_directed_paths", catalog::short_directed_paths()),
        ("maximal_matching", catalog::maximal_matching()),
        ("tree_three_coloring", catalog::tree_coloring(3)),
    ];
    for (name, p) in files {
        let text = std::fs::read_to_string(format!("{dir}/{name}.json")).unwrap();
        assert_eq!(parse_problem(&text).unwrap(), p, "{name}");
    }
}
