mod common;

use lclkit::automaton::Automaton;
use lclkit::oracle::{brute_force_flexibility, closed_walk_lengths};
use lclkit::properties::{analyze, flexibility, mirror_flexibility};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn brute_bound(n: usize) -> usize {
    4 * n * n + 8
}

/// Least K with walks of every length ≥ K in all four families, scanning to `bound`.
fn brute_mirror(a: &Automaton, q: usize, bound: usize) -> Option<usize> {
    let m = a.mirror(q)?;
    let reach = |from: usize, to: usize| -> Vec<bool> {
        let mut out = vec![false; bound + 1];
        let mut cur = vec![false; a.len()];
        cur[from] = true;
        for slot in out.iter_mut().skip(1) {
            let mut next = vec![false; a.len()];
            for (i, &on) in cur.iter().enumerate() {
                if on {
                    for &j in a.succ(i) {
                        next[j] = true;
                    }
                }
            }
            cur = next;
            *slot = cur[to];
        }
        out
    };
    let fams = [reach(q, q), reach(q, m), reach(m, q), reach(m, m)];
    let all = |l: usize| fams.iter().all(|f| f[l]);
    let tail = bound - 2 * a.len();
    if !(tail..=bound).all(all) {
        return None;
    }
    let mut k = tail;
    while k > 1 && all(k - 1) {
        k -= 1;
    }
    Some(k)
}

proptest! {
    #[test]
    fn flexibility_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 + (seed % 8) as usize;
        let a = Automaton::from_relation(n, &common::random_edges(&mut rng, n));
        for q in 0..n {
            prop_assert_eq!(flexibility(&a, q), brute_force_flexibility(&a, q, brute_bound(n)));
        }
    }

    #[test]
    fn property_chain(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_problem(&mut rng, 4, true);
        let a = Automaton::build(&p).prune();
        let r = analyze(&a, true, |s| p.state_display(s)).unwrap();
        for s in &r.states {
            // loop ⇒ flexible ⇒ repeatable, and loops have K = 1
            if s.is_loop {
                prop_assert_eq!(s.flexibility, Some(1));
            }
            if s.flexibility.is_some() {
                prop_assert!(s.repeatable);
            }
            if s.mirror_flexibility.is_some() {
                prop_assert!(s.flexibility.is_some());
            }
            if s.mirror_flexible_loop {
                prop_assert!(s.is_loop && s.mirror_flexibility.is_some());
            }
            let closed = closed_walk_lengths(&a, s.index, 2 * a.len());
            prop_assert_eq!(s.repeatable, closed.iter().any(|&b| b));
        }
    }

    #[test]
    fn mirror_flexibility_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_problem(&mut rng, 3, true);
        let a = Automaton::build(&p);
        let bound = 8 * a.len() * a.len() + 8;
        for q in 0..a.len() {
            prop_assert_eq!(mirror_flexibility(&a, q).unwrap(), brute_mirror(&a, q, bound));
        }
    }
}

#[test]
fn exhaustive_three_states() {
    // every relation on 3 states
    for mask in 0u32..(1 << 9) {
        let edges: Vec<(usize, usize)> = (0..9).filter(|b| mask >> b & 1 == 1).map(|b| (b / 3, b % 3)).collect();
        let a = Automaton::from_relation(3, &edges);
        for q in 0..3 {
            assert_eq!(flexibility(&a, q), brute_force_flexibility(&a, q, brute_bound(3)), "mask {mask:09b}");
        }
    }
}
