mod common;

use lclkit::catalog;
use lclkit::classifier::{classify, Complexity, CountClass, ProblemType};
use lclkit::cli::oracle_check;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::table::{check_row, TABLE};
use Complexity::{Constant as C1, Linear as Lin};

#[test]
fn catalog_matches_the_table() {
    for (name, p) in catalog::types() {
        let c = classify(&p).unwrap();
        assert_eq!(c.problem_type.name(), name);
        let row = TABLE.iter().find(|r| r.types.contains(&name)).unwrap();
        check_row(name, &c, row);
        // C/D, F/G, H/I, J/K: the first of each pair is symmetric
        let paired_asymmetric = ["D", "G", "I", "K"].contains(&name);
        assert_eq!(c.symmetric, !paired_asymmetric, "{name}");
    }
}

#[test]
fn two_coloring_and_orientation_facts() {
    let c = classify(&catalog::edge_two_coloring()).unwrap();
    assert_eq!(c.complexity.directed_cycles, Lin);
    assert_eq!(c.complexity.undirected_paths, Lin);
    let check = oracle_check(&catalog::edge_two_coloring(), &c, 200);
    assert!(check.agrees);
    let odd_cycles = lclkit::oracle::solvable_lengths(&catalog::edge_two_coloring(), lclkit::automaton::Topology::Cycle, 200);
    assert_eq!(odd_cycles.unsolvable(), (1..=200).filter(|n| n % 2 == 1).collect::<Vec<_>>());

    let o = classify(&catalog::consistent_orientation()).unwrap();
    assert_eq!((o.complexity.directed_cycles, o.complexity.undirected_cycles), (C1, Lin));
    assert_eq!(o.solvability.unsolvable_cycles, CountClass::Zero);
    assert_eq!(o.solvability.unsolvable_paths, CountClass::Zero);
    assert!(oracle_check(&catalog::consistent_orientation(), &o, 200).agrees);
}

#[test]
fn random_problems_agree_with_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut seen = std::collections::HashSet::new();
    for i in 0..300 {
        let p = common::random_problem(&mut rng, 4, i % 2 == 0);
        let c = classify(&p).unwrap();
        seen.insert(c.problem_type);
        let check = oracle_check(&p, &c, 80);
        assert!(check.agrees, "{}\n{:?}", p.to_json(), check.quadrants);
    }
    assert!(seen.len() >= 6, "random problems cover few types: {seen:?}");
}

#[test]
fn types_depend_only_on_the_automaton() {
    // adding an unused label changes nothing
    let p = catalog::edge_three_coloring();
    let mut doc = p.to_doc();
    doc.alphabet.push("unused".into());
    let q = lclkit::model::LclProblem::from_doc(&doc).unwrap();
    assert_eq!(classify(&q).unwrap().problem_type, ProblemType::E);
}
