//! Symmetry breaking on chains: 3-coloring by two pseudo-forests and Cole–Vishkin
//! reduction, maximal independent sets, and spaced anchor sets.

use super::chain::{Chain, Clock};

/// Number of Cole–Vishkin steps that bring colors below `2^bits` under 6.
pub(crate) fn cv_iterations(bits: u32) -> usize {
    let mut bound: u128 = if bits >= 127 { u128::MAX } else { 1u128 << bits };
    let mut it = 0;
    while bound > 6 {
        let width = 128 - (bound - 1).leading_zeros() as u128;
        bound = 2 * width.max(1);
        it += 1;
    }
    it
}

pub(crate) fn cv_step(c: u128, parent: Option<u128>) -> u128 {
    match parent {
        Some(p) => {
            let i = (c ^ p).trailing_zeros() as u128;
            2 * i + ((c >> i) & 1)
        }
        None => c & 1,
    }
}

/// Rounds used by [`three_color`].
pub(crate) fn three_color_rounds(bits: u32) -> usize {
    1 + cv_iterations(bits) + 3 + 6
}

/// Proper 3-coloring of the chain. Each virtual round costs `scale` real rounds.
pub(crate) fn three_color(chain: &Chain, clock: &mut Clock, bits: u32, scale: usize) -> Vec<u8> {
    // parents: larger-id neighbors, smaller one in forest 0, larger in forest 1
    let parents: Vec<[Option<usize>; 2]> = chain.run(clock, 1, scale, |v| {
        let mut up: Vec<(u128, usize)> = (0..2)
            .filter_map(|p| v.at(p, 1).map(|x| (x.id, p)))
            .filter(|&(id, _)| id > v.id())
            .collect();
        up.sort_unstable();
        [up.first().map(|x| x.1), up.get(1).map(|x| x.1)]
    });
    let mut colors: Vec<[u128; 2]> = chain.run(clock, 0, 0, |v| [v.id(), v.id()]);
    for _ in 0..cv_iterations(bits) {
        let prev = colors;
        colors = chain.run(clock, 1, scale, |v| {
            let mine = v.me(&prev);
            let par = v.me(&parents);
            let mut out = [0; 2];
            for f in 0..2 {
                let pc = par[f].map(|p| v.at(p, 1).expect("parent exists").read(&prev)[f]);
                out[f] = cv_step(mine[f], pc);
            }
            out
        });
    }
    // 6 → 3 per forest; forest degree is at most 2, so a free color exists
    for c in [5u128, 4, 3] {
        let prev = colors;
        colors = chain.run(clock, 1, scale, |v| {
            let mut out = *v.me(&prev);
            let par = v.me(&parents);
            for f in 0..2 {
                if out[f] != c {
                    continue;
                }
                let mut used = [false; 3];
                for p in 0..2 {
                    if let Some(x) = v.at(p, 1) {
                        let is_parent = par[f] == Some(p);
                        let is_child = x.read(&parents)[f] == Some(x.back);
                        if is_parent || is_child {
                            let xc = x.read(&prev)[f];
                            if xc < 3 {
                                used[xc as usize] = true;
                            }
                        }
                    }
                }
                out[f] = used.iter().position(|&u| !u).expect("free color") as u128;
            }
            out
        });
    }
    let mut nine: Vec<u8> = chain.run(clock, 0, 0, |v| {
        let c = v.me(&colors);
        (3 * c[0] + c[1]) as u8
    });
    for c in (3u8..9).rev() {
        let prev = nine;
        nine = chain.run(clock, 1, scale, |v| {
            let mine = *v.me(&prev);
            if mine != c {
                return mine;
            }
            let mut used = [false; 3];
            for p in 0..2 {
                if let Some(x) = v.at(p, 1) {
                    let xc = *x.read(&prev);
                    if xc < 3 {
                        used[xc as usize] = true;
                    }
                }
            }
            used.iter().position(|&u| !u).expect("free color") as u8
        });
    }
    nine
}

/// Maximal independent set from a proper 3-coloring, one color class per round.
pub(crate) fn mis(chain: &Chain, colors: &[u8], clock: &mut Clock, scale: usize) -> Vec<bool> {
    let mut inside = vec![false; chain.len()];
    for c in 0..3u8 {
        let prev = inside;
        inside = chain.run(clock, 1, scale, |v| {
            *v.me(&prev)
                || (*v.me(colors) == c
                    && (0..2).all(|p| v.at(p, 1).is_none_or(|x| !*x.read(&prev))))
        });
    }
    inside
}

/// Shape of the anchoring schedule for minimum spacing `d + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct AnchorSchedule {
    pub levels: usize,
    /// Maximum spacing between consecutive ruling members after the last level.
    pub max_spacing: usize,
    pub rounds: usize,
}

pub(crate) fn anchor_schedule(d: usize, bits: u32) -> AnchorSchedule {
    let per_level = three_color_rounds(bits) + 3;
    let (mut min, mut max, mut rounds, mut levels) = (1usize, 1usize, 0usize, 0usize);
    while min < d + 1 {
        rounds += per_level * max;
        min *= 2;
        max *= 3;
        levels += 1;
    }
    AnchorSchedule {
        levels,
        max_spacing: max,
        rounds: rounds + max,
    }
}

/// Anchor set with consecutive anchors `d+1 ..= 2d+1` items apart (closer only at path ends).
pub(crate) fn anchors(chain: &Chain, d: usize, clock: &mut Clock, bits: u32) -> Vec<bool> {
    let sched = anchor_schedule(d, bits);
    let mut members = vec![true; chain.len()];
    let mut spacing = 1;
    for _ in 0..sched.levels {
        let (sub, idx) = chain.sub(&members);
        let colors = three_color(&sub, clock, bits, spacing);
        let chosen = mis(&sub, &colors, clock, spacing);
        members = vec![false; chain.len()];
        for (k, &i) in idx.iter().enumerate() {
            members[i] = chosen[k];
        }
        spacing *= 3;
    }
    let w = sched.max_spacing;
    let step = d + 1;
    chain.run(clock, w, w, |v| {
        if *v.me(&members) {
            return true;
        }
        let find = |port: usize| -> Result<(usize, u128), usize> {
            for dist in 1..=w {
                match v.at(port, dist) {
                    Some(x) if *x.read(&members) => return Ok((dist, x.id)),
                    Some(_) => {}
                    None => return Err(dist - 1),
                }
            }
            unreachable!("ruling members are at most {w} apart")
        };
        match (find(0), find(1)) {
            (Ok((t0, id0)), Ok((t1, id1))) => {
                let len = t0 + t1;
                let t = if id0 < id1 { t0 } else { t1 };
                t % step == 0 && t + step <= len
            }
            (Ok((t, _)), Err(_)) | (Err(_), Ok((t, _))) => t % step == 0,
            (Err(_), Err(_)) => unreachable!("every path has a ruling member"),
        }
    })
}

/// Radius of the direction rule in [`orient`].
pub(crate) fn orient_window(k: usize) -> usize {
    2 * (2 * k + 1) + 1
}

/// Per item, the port its orientation points to. Maximal consistently oriented
/// runs have at least `k` items: anchors split the chain into runs of at least
/// `k` non-anchors, each run points from its smaller-id anchor to the larger,
/// and an anchor joins the run on its port-0 side. On paths the end runs and
/// the first anchor follow the neighboring interior run.
pub(crate) fn orient(chain: &Chain, k: usize, clock: &mut Clock, bits: u32) -> Vec<usize> {
    let anchor = anchors(chain, k, clock, bits);
    let w = orient_window(k);
    chain.run(clock, w, w, |v| {
        // next anchor along `port` strictly beyond `from`
        let next = |port: usize, from: usize| -> Option<(usize, u128)> {
            for dist in from + 1..=w {
                let x = v.at(port, dist)?;
                if *x.read(&anchor) {
                    return Some((dist, x.id));
                }
            }
            None
        };
        if *v.me(&anchor) {
            if let Some((_, c)) = next(0, 0) {
                return if v.id() < c { 0 } else { 1 };
            }
            return match next(1, 0) {
                Some((_, c)) if v.id() > c => 0,
                _ => 1,
            };
        }
        match (next(0, 0), next(1, 0)) {
            (Some((_, a)), Some((_, b))) => {
                if a < b {
                    1
                } else {
                    0
                }
            }
            (None, Some((tf, f))) | (Some((tf, f)), None) => {
                let fp = if next(0, 0).is_some() { 0 } else { 1 };
                match next(fp, tf) {
                    Some((_, g)) if f > g => 1 - fp,
                    _ => fp,
                }
            }
            (None, None) => 1,
        }
    })
}
