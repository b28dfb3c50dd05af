//! Filling the items between fixed items with exact-length walks.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::automaton::Automaton;
use crate::model::{Label, StatePair};

use super::chain::{Chain, Clock, Probe, View};
use super::RuntimeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Between(usize, usize, usize),
    FromStart(usize, usize),
    ToAccept(usize, usize),
}

/// Memoized canonical walks; every item asking the same question gets the same walk.
pub(crate) struct Walker<'a> {
    a: &'a Automaton,
    cache: RefCell<HashMap<Key, Option<Vec<usize>>>>,
}

impl<'a> Walker<'a> {
    pub fn new(a: &'a Automaton) -> Self {
        Walker {
            a,
            cache: RefCell::new(HashMap::new()),
        }
    }

    fn get(&self, key: Key) -> Option<Vec<usize>> {
        if let Some(w) = self.cache.borrow().get(&key) {
            return w.clone();
        }
        let a = self.a;
        let w = match key {
            Key::Between(f, t, len) => a.exact_length_walk(f, t, len),
            Key::FromStart(t, len) => a.walk_from_set(a.start_set(), t, len),
            Key::ToAccept(f, len) => a.walk_to_set(f, a.accept_set(), len),
        };
        self.cache.borrow_mut().insert(key, w.clone());
        w
    }

    fn state(&self, tail: Label, head: Label) -> Option<usize> {
        self.a.index_of(StatePair::new(tail, head))
    }
}

/// Intermediate states of a walk with `gap_len + 1` transitions from `left` to `right`.
pub fn fill_gap(a: &Automaton, left: usize, right: usize, gap_len: usize) -> Result<Vec<usize>, RuntimeError> {
    let mut w = a
        .exact_length_walk(left, right, gap_len + 1)
        .ok_or(RuntimeError::NoWalk { from: left, to: right, len: gap_len + 1 })?;
    w.pop();
    w.remove(0);
    Ok(w)
}

/// Completes a directed path labeling whose unknown entries form a prefix and
/// a suffix around a valid interior.
pub fn fix_ends(a: &Automaton, partial: &[Option<usize>]) -> Result<Vec<usize>, RuntimeError> {
    let first = partial.iter().position(Option::is_some);
    let Some(first) = first else {
        return crate::oracle::solve_sequence(a, partial.len(), false).ok_or(RuntimeError::UnsolvableEnds);
    };
    let last = partial.iter().rposition(Option::is_some).expect("some entry is known");
    let mut out: Vec<usize> = Vec::with_capacity(partial.len());
    let head = partial[first].expect("known");
    let pre = a
        .walk_from_set(a.start_set(), head, first)
        .ok_or(RuntimeError::UnsolvableEnds)?;
    out.extend_from_slice(&pre[..first]);
    for s in &partial[first..=last] {
        out.push(s.ok_or(RuntimeError::UnsolvableEnds)?);
    }
    let tail = partial[last].expect("known");
    let post = a
        .walk_to_set(tail, a.accept_set(), partial.len() - 1 - last)
        .ok_or(RuntimeError::UnsolvableEnds)?;
    out.extend_from_slice(&post[1..]);
    if a.generates(&out, crate::automaton::Topology::Path) {
        Ok(out)
    } else {
        Err(RuntimeError::UnsolvableEnds)
    }
}

/// Reading of a fixed item as a state when a walk leaves it through port `bp`.
fn exit_reading(w: &Walker, lab: [Label; 2], bp: usize) -> Option<usize> {
    w.state(lab[1 - bp], lab[bp])
}

/// Reading of a fixed item as a state when a walk enters it through port `bp`.
fn enter_reading(w: &Walker, lab: [Label; 2], bp: usize) -> Option<usize> {
    w.state(lab[bp], lab[1 - bp])
}

enum Arm {
    Fixed { dist: usize, probe: Probe, lab: [Label; 2] },
    End { beyond: usize },
}

fn scan(v: &View, port: usize, fixed: &[Option<[Label; 2]>], window: usize) -> Option<Arm> {
    for dist in 1..=window {
        match v.at(port, dist) {
            Some(x) => {
                if let Some(lab) = *x.read(fixed) {
                    return Some(Arm::Fixed { dist, probe: x, lab });
                }
            }
            None => return Some(Arm::End { beyond: dist - 1 }),
        }
    }
    None
}

/// Labels every non-fixed item from the fixed items around it. Directed chains
/// travel from port 0 to port 1; undirected gaps travel away from the fixed
/// item with the smaller id, and end segments start at the chain end.
/// `None` marks an item whose segment admits no walk.
pub(crate) fn fill(
    chain: &Chain,
    a: &Automaton,
    fixed: &[Option<[Label; 2]>],
    directed: bool,
    window: usize,
    clock: &mut Clock,
) -> Vec<Option<[Label; 2]>> {
    let walker = Walker::new(a);
    chain.run(clock, window, window, |v| {
        if let Some(l) = *v.me(fixed) {
            return Some(l);
        }
        let arms = [scan(v, 0, fixed, window)?, scan(v, 1, fixed, window)?];
        // (state, port of this item facing where the walk comes from)
        let (st, from_port) = match (&arms[0], &arms[1]) {
            (Arm::Fixed { .. }, Arm::Fixed { .. }) => {
                let (f, g) = if directed {
                    (0, 1)
                } else {
                    let id = |p: usize| match &arms[p] {
                        Arm::Fixed { probe, .. } => probe.id,
                        Arm::End { .. } => unreachable!(),
                    };
                    if id(0) < id(1) { (0, 1) } else { (1, 0) }
                };
                let (Arm::Fixed { dist: tf, probe: pf, lab: lf }, Arm::Fixed { dist: tg, probe: pg, lab: lg }) =
                    (&arms[f], &arms[g])
                else {
                    unreachable!()
                };
                let from = exit_reading(&walker, *lf, pf.back)?;
                let to = enter_reading(&walker, *lg, pg.back)?;
                let w = walker.get(Key::Between(from, to, tf + tg))?;
                (w[*tf], f)
            }
            (Arm::End { beyond }, Arm::Fixed { dist, probe, lab })
            | (Arm::Fixed { dist, probe, lab }, Arm::End { beyond }) => {
                let end_port = if matches!(arms[0], Arm::End { .. }) { 0 } else { 1 };
                if directed && end_port == 1 {
                    let from = exit_reading(&walker, *lab, probe.back)?;
                    let w = walker.get(Key::ToAccept(from, dist + beyond))?;
                    (w[*dist], 0)
                } else {
                    let to = enter_reading(&walker, *lab, probe.back)?;
                    let w = walker.get(Key::FromStart(to, beyond + dist))?;
                    (w[*beyond], end_port)
                }
            }
            (Arm::End { .. }, Arm::End { .. }) => return None,
        };
        let s = a.state(st);
        let mut out = [0; 2];
        out[from_port] = s.tail;
        out[1 - from_port] = s.head;
        Some(out)
    })
}
