//! Repeatable, flexible, loop and mirror-flexible states, with exact thresholds.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::automaton::Automaton;
use crate::bits::{step, Bits};
use crate::model::StatePair;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PropertyError {
    #[error("mirror flexibility needs a symmetric problem")]
    AsymmetricProblem,
    #[error("walk families of state {state} not stable within scan bound {bound}")]
    ScanBoundExceeded { state: usize, bound: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkLengthProfile {
    pub state: StatePair,
    pub short_lengths: Vec<usize>,
    pub gcd: usize,
}

pub fn scan_bound(states: usize) -> usize {
    let w = 2 * states.max(1) - 1;
    w * w + 2 * states
}

pub fn mirror_scan_bound(states: usize) -> usize {
    let w = 2 * states.max(1) - 1;
    2 * w * w + 4 * states
}

fn succ_rows(a: &Automaton) -> Vec<Bits> {
    (0..a.len())
        .map(|i| {
            let mut b = Bits::new(a.len());
            for &j in a.succ(i) {
                b.set(j);
            }
            b
        })
        .collect()
}

/// Closed-walk lengths at `q` up to 2|Q|−1 and their gcd.
pub fn walk_length_profile(a: &Automaton, q: usize) -> WalkLengthProfile {
    let rows = succ_rows(a);
    let mut cur = Bits::new(a.len());
    cur.set(q);
    let mut short = Vec::new();
    for l in 1..2 * a.len() {
        cur = step(&cur, &rows);
        if cur.get(q) {
            short.push(l);
        }
    }
    let gcd = short.iter().fold(0, |g, &l| g.gcd(&l));
    WalkLengthProfile {
        state: a.state(q),
        short_lengths: short,
        gcd,
    }
}

/// gcd of closed-walk lengths for every state, via SCC periods (0 = not repeatable).
pub fn state_periods(a: &Automaton) -> Vec<usize> {
    let mut period = vec![0; a.len()];
    for c in 0..a.scc_count() {
        let members = a.scc_members(c);
        let root = members[0];
        let mut level = vec![usize::MAX; a.len()];
        level[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        let mut g = 0usize;
        while let Some(u) = queue.pop_front() {
            for &v in a.succ(u) {
                if a.scc_of(v) != c {
                    continue;
                }
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                } else {
                    g = g.gcd(&(level[u] + 1).abs_diff(level[v]));
                }
            }
        }
        for &m in &members {
            period[m] = g;
        }
    }
    period
}

/// Length of the shortest closed walk through each state (0 = none).
pub fn shortest_closed_walks(a: &Automaton) -> Vec<usize> {
    (0..a.len())
        .map(|q| {
            let mut dist = vec![usize::MAX; a.len()];
            dist[q] = 0;
            let mut queue = std::collections::VecDeque::from([q]);
            let mut best = usize::MAX;
            while let Some(u) = queue.pop_front() {
                for &v in a.succ(u) {
                    if v == q {
                        best = best.min(dist[u] + 1);
                    } else if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if best == usize::MAX {
                0
            } else {
                best
            }
        })
        .collect()
}

/// Tracks the first run of consecutive present lengths that is long enough
/// to be closed under adding a fixed closed-walk length.
#[derive(Clone, Copy, Default)]
struct RunTracker {
    start: usize,
    len: usize,
    done: bool,
}

impl RunTracker {
    fn feed(&mut self, l: usize, present: bool, needed: usize) {
        if self.done {
            return;
        }
        if present {
            if self.len == 0 {
                self.start = l;
            }
            self.len += 1;
            if self.len >= needed {
                self.done = true;
            }
        } else {
            self.len = 0;
        }
    }
}

/// Flexibility number K of `q`, or `None` when the state is not flexible.
pub fn flexibility(a: &Automaton, q: usize) -> Option<usize> {
    let periods = state_periods(a);
    let shortest = shortest_closed_walks(a);
    flexibility_with(a, q, &periods, &shortest, &succ_rows(a))
}

fn flexibility_with(
    a: &Automaton,
    q: usize,
    periods: &[usize],
    shortest: &[usize],
    rows: &[Bits],
) -> Option<usize> {
    if periods[q] != 1 {
        return None;
    }
    let mut cur = Bits::new(a.len());
    cur.set(q);
    let mut run = RunTracker::default();
    for l in 1..=scan_bound(a.len()) {
        cur = step(&cur, rows);
        run.feed(l, cur.get(q), shortest[q]);
        if run.done {
            return Some(run.start);
        }
    }
    unreachable!("gcd 1 state without a stable tail below the scan bound")
}

/// Mirror-flexibility number K_m: all of q⤳q, q⤳q', q'⤳q, q'⤳q' exist at every length ≥ K_m.
pub fn mirror_flexibility(a: &Automaton, q: usize) -> Result<Option<usize>, PropertyError> {
    let periods = state_periods(a);
    let shortest = shortest_closed_walks(a);
    mirror_flexibility_with(a, q, &periods, &shortest, &succ_rows(a))
}

fn mirror_flexibility_with(
    a: &Automaton,
    q: usize,
    periods: &[usize],
    shortest: &[usize],
    rows: &[Bits],
) -> Result<Option<usize>, PropertyError> {
    let Some(m) = a.mirror(q) else {
        return Err(PropertyError::AsymmetricProblem);
    };
    if periods[q] != 1 || a.scc_of(q) != a.scc_of(m) {
        return Ok(None);
    }
    let mut from_q = Bits::new(a.len());
    from_q.set(q);
    let mut from_m = Bits::new(a.len());
    from_m.set(m);
    let mut runs = [RunTracker::default(); 4];
    let bound = mirror_scan_bound(a.len());
    for l in 1..=bound {
        from_q = step(&from_q, rows);
        from_m = step(&from_m, rows);
        runs[0].feed(l, from_q.get(q), shortest[q]);
        runs[1].feed(l, from_q.get(m), shortest[m]);
        runs[2].feed(l, from_m.get(q), shortest[q]);
        runs[3].feed(l, from_m.get(m), shortest[m]);
        if runs.iter().all(|r| r.done) {
            return Ok(Some(runs.iter().map(|r| r.start).max().unwrap_or(1)));
        }
    }
    Err(PropertyError::ScanBoundExceeded { state: q, bound })
}

/// Some SCC is reachable from every state and contains a flexible state.
pub fn has_d3_directing_word(a: &Automaton) -> bool {
    let periods = state_periods(a);
    (0..a.scc_count()).any(|c| {
        let members = a.scc_members(c);
        if periods[members[0]] != 1 {
            return false;
        }
        let mut target = vec![false; a.len()];
        for &m in &members {
            target[m] = true;
        }
        a.coreachable_to(&target).iter().all(|&b| b)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateProperties {
    pub state: String,
    pub index: usize,
    pub scc: usize,
    pub gcd: usize,
    pub shortest_closed_walk: usize,
    pub repeatable: bool,
    pub is_loop: bool,
    pub flexibility: Option<usize>,
    pub mirror_flexibility: Option<usize>,
    pub mirror_flexible_loop: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub states: Vec<StateProperties>,
    pub has_repeatable: bool,
    pub has_loop: bool,
    pub has_flexible: bool,
    pub has_mirror_flexible: bool,
    pub has_mirror_flexible_loop: bool,
    pub has_d3_directing_word_component: bool,
    pub scan_bound: usize,
    /// Implementation-defined bound for the mirror scan; present for symmetric problems.
    pub mirror_scan_bound: Option<usize>,
}

impl PropertyReport {
    pub fn state(&self, i: usize) -> &StateProperties {
        &self.states[i]
    }

    /// Least flexibility number over all states, with its state.
    pub fn min_flexible(&self) -> Option<(usize, usize)> {
        self.states
            .iter()
            .filter_map(|s| s.flexibility.map(|k| (k, s.index)))
            .min()
    }
}

/// Full property analysis. Mirror properties are computed only when `symmetric`.
pub fn analyze(
    a: &Automaton,
    symmetric: bool,
    name: impl Fn(StatePair) -> String,
) -> Result<PropertyReport, PropertyError> {
    let periods = state_periods(a);
    let shortest = shortest_closed_walks(a);
    let rows = succ_rows(a);
    let mut states = Vec::with_capacity(a.len());
    for q in 0..a.len() {
        let flexibility = flexibility_with(a, q, &periods, &shortest, &rows);
        let mirror_flexibility = if symmetric {
            mirror_flexibility_with(a, q, &periods, &shortest, &rows)?
        } else {
            None
        };
        states.push(StateProperties {
            state: name(a.state(q)),
            index: q,
            scc: a.scc_of(q),
            gcd: periods[q],
            shortest_closed_walk: shortest[q],
            repeatable: periods[q] > 0,
            is_loop: a.is_loop(q),
            flexibility,
            mirror_flexibility,
            mirror_flexible_loop: mirror_flexibility.is_some() && a.is_loop(q),
        });
    }
    let any = |f: &dyn Fn(&StateProperties) -> bool| states.iter().any(f);
    Ok(PropertyReport {
        has_repeatable: any(&|s| s.repeatable),
        has_loop: any(&|s| s.is_loop),
        has_flexible: any(&|s| s.flexibility.is_some()),
        has_mirror_flexible: any(&|s| s.mirror_flexibility.is_some()),
        has_mirror_flexible_loop: any(&|s| s.mirror_flexible_loop),
        has_d3_directing_word_component: !a.is_empty() && has_d3_directing_word(a),
        scan_bound: scan_bound(a.len()),
        mirror_scan_bound: symmetric.then(|| mirror_scan_bound(a.len())),
        states,
    })
}
