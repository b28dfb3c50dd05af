#![allow(dead_code)]

pub mod local;
pub mod standard;
pub mod table;

use lclkit::model::{Label, LclProblem};
use rand::Rng;

/// Random problem over 1..=max_labels labels. Start/end sets are sometimes
/// all of Γ; `symmetric` closes both relations under reversal.
pub fn random_problem(rng: &mut impl Rng, max_labels: usize, symmetric: bool) -> LclProblem {
    let n = rng.gen_range(1..=max_labels);
    let density = rng.gen_range(0.2..0.8);
    let mut rel = || {
        let mut pairs: Vec<(Label, Label)> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if (!symmetric || a <= b) && rng.gen_bool(density) {
                    pairs.push((a, b));
                    if symmetric {
                        pairs.push((b, a));
                    }
                }
            }
        }
        pairs
    };
    let edge = rel();
    let node = rel();
    let mut set = || -> Vec<Label> {
        if rng.gen_bool(0.5) {
            (0..n).collect()
        } else {
            (0..n).filter(|_| rng.gen_bool(0.6)).collect()
        }
    };
    let start = set();
    let end = if symmetric { start.clone() } else { set() };
    let labels = (0..n).map(|i| format!("l{i}")).collect();
    LclProblem::new(labels, &edge, &node, &start, &end).unwrap()
}

/// Random transition relation over `n` states.
pub fn random_edges(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    let density = rng.gen_range(0.1..0.6);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(density) {
                out.push((i, j));
            }
        }
    }
    out
}
