//! Chains of items (edges of a path or cycle) with port-ordered, radius-bounded views.
//!
//! A rule only sees its own id and what lies along its two arms within the
//! phase radius; it never learns global positions.

/// Item sequence; port 0 of item `i` faces its left neighbor unless `flip[i]`.
#[derive(Clone, Debug)]
pub(crate) struct Chain {
    pub cyclic: bool,
    pub ids: Vec<u128>,
    pub flip: Vec<bool>,
}

/// Round accounting for a run.
#[derive(Clone, Debug, Default)]
pub(crate) struct Clock {
    pub rounds: usize,
}

impl Clock {
    pub fn advance(&mut self, r: usize) {
        self.rounds += r;
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Probe {
    index: usize,
    pub id: u128,
    /// Port of the probed item that faces back toward the viewer.
    pub back: usize,
}

impl Probe {
    pub fn read<'s, S>(&self, states: &'s [S]) -> &'s S {
        &states[self.index]
    }
}

pub(crate) struct View<'c> {
    chain: &'c Chain,
    center: usize,
    radius: usize,
}

impl View<'_> {
    pub fn id(&self) -> u128 {
        self.chain.ids[self.center]
    }

    pub fn me<'s, S>(&self, states: &'s [S]) -> &'s S {
        &states[self.center]
    }

    /// The item `dist` steps away along arm `port`, if the chain reaches that far.
    pub fn at(&self, port: usize, dist: usize) -> Option<Probe> {
        assert!(dist <= self.radius, "view radius exceeded");
        let c = self.chain;
        let len = c.ids.len();
        let right = (port == 1) != c.flip[self.center];
        let j = if c.cyclic {
            debug_assert!(2 * dist < len, "view wraps around the cycle");
            if right {
                (self.center + dist) % len
            } else {
                (self.center + len - dist % len) % len
            }
        } else if right {
            let j = self.center + dist;
            if j >= len {
                return None;
            }
            j
        } else {
            self.center.checked_sub(dist)?
        };
        // the probed item's port facing back toward us
        let back_faces_right = !right;
        let back = if back_faces_right != c.flip[j] { 1 } else { 0 };
        Some(Probe {
            index: j,
            id: c.ids[j],
            back,
        })
    }
}

impl Chain {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    /// Applies `f` at every item with views of `radius`; advances the clock by `cost`.
    pub fn run<T>(
        &self,
        clock: &mut Clock,
        radius: usize,
        cost: usize,
        f: impl Fn(&View<'_>) -> T,
    ) -> Vec<T> {
        clock.advance(cost);
        (0..self.len())
            .map(|center| {
                f(&View {
                    chain: self,
                    center,
                    radius,
                })
            })
            .collect()
    }

    /// The chain of marked items in their physical order, with the index map.
    pub fn sub(&self, keep: &[bool]) -> (Chain, Vec<usize>) {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep[i]).collect();
        let chain = Chain {
            cyclic: self.cyclic,
            ids: idx.iter().map(|&i| self.ids[i]).collect(),
            flip: idx.iter().map(|&i| self.flip[i]).collect(),
        };
        (chain, idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probes_report_back_ports() {
        let c = Chain {
            cyclic: true,
            ids: vec![10, 20, 30, 40, 50],
            flip: vec![false, true, false, false, true],
        };
        let mut clock = Clock::default();
        let out = c.run(&mut clock, 2, 2, |v| {
            let p = v.at(1, 1).unwrap();
            (p.id, p.back)
        });
        // item 0 port 1 faces right to item 1, whose port 1 faces left
        assert_eq!(out[0], (20, 1));
        // item 1 is flipped: its port 1 faces left, toward item 0
        assert_eq!(out[1], (10, 1));
        assert_eq!(clock.rounds, 2);
    }

    #[test]
    fn path_ends() {
        let c = Chain {
            cyclic: false,
            ids: vec![1, 2, 3, 4],
            flip: vec![false; 4],
        };
        let mut clock = Clock::default();
        let out = c.run(&mut clock, 5, 0, |v| (v.at(0, 1).is_some(), v.at(1, 3).is_some(), v.at(1, 4).is_some()));
        assert_eq!(out[0], (false, true, false));
        assert_eq!(out[2], (true, false, false));
    }
}
