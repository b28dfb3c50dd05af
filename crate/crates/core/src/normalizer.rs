//! Radius-r LCLs in standard form (allowed views of half-edge labels) and
//! their translation into node-edge-checkable problems.
//!
//! A view of node `v` toward a neighbor `u` is a string of `4r` half-edge
//! labels read along the path through `v`, with `u` on the right: first the
//! `r` edges on the far side (each as far label, near label), then the `r`
//! edges toward `u` (near label, far label). Missing edges near a path end
//! are padded with ⊥ (`None`).

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automaton::Topology;
use crate::instance::{Instance, Labeling};
use crate::model::{Label, LclProblem, Relation};

pub const MAX_RADIUS: usize = 2;
pub const DEFAULT_CAP: usize = 50_000;
pub const CAP_ENV: &str = "LCLKIT_NORMALIZE_CAP";

/// Half-edge labels with ⊥ as `None`.
pub type ViewString = Vec<Option<Label>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("radius must be between 1 and {max}, got {radius}")]
    Radius { radius: usize, max: usize },
    #[error("empty or duplicate alphabet")]
    BadAlphabet,
    #[error("view {0:?} is malformed")]
    BadView(String),
    #[error("unknown label {0:?} in a view")]
    UnknownLabel(String),
    #[error("the reverse of view {0:?} is not allowed")]
    NotReversalClosed(String),
    #[error("no edge labels, node labels or orientation requested")]
    NothingRequested,
    #[error("{count} views exceed the cap of {cap}")]
    TooLarge { count: usize, cap: usize },
    #[error("only paths and cycles are supported")]
    Topology,
    #[error("cycles need at least {min} nodes, got {n}")]
    ShortCycle { n: usize, min: usize },
    #[error("input labeling is illegal at node {node}")]
    IllegalInput { node: usize },
    #[error("views disagree at edge {edge}")]
    InconsistentViews { edge: usize },
    #[error("{0}")]
    Document(String),
}

/// Cap from `LCLKIT_NORMALIZE_CAP`, or [`DEFAULT_CAP`].
pub fn cap_from_env() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

fn reversed(s: &[Option<Label>]) -> ViewString {
    s.iter().rev().copied().collect()
}

fn well_formed(s: &[Option<Label>], r: usize) -> bool {
    if s.len() != 4 * r {
        return false;
    }
    let pre = s.iter().take_while(|x| x.is_none()).count();
    if pre == s.len() {
        return false;
    }
    let suf = s.iter().rev().take_while(|x| x.is_none()).count();
    pre % 2 == 0
        && suf % 2 == 0
        && pre <= 2 * r
        && suf <= 2 * r
        && s[pre..s.len() - suf].iter().all(Option::is_some)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardLcl {
    radius: usize,
    alphabet: Vec<String>,
    views: Vec<ViewString>,
    index: HashMap<ViewString, usize>,
}

/// A view as a list of labels or, for single-character alphabets, one string.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ViewDoc {
    Labels(Vec<String>),
    Text(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StandardDoc {
    pub radius: usize,
    pub alphabet: Vec<String>,
    pub allowed_views: Vec<ViewDoc>,
}

impl StandardLcl {
    /// Validates and deduplicates; views are kept in sorted order.
    pub fn new(radius: usize, alphabet: Vec<String>, views: Vec<ViewString>) -> Result<Self, NormalizeError> {
        if radius == 0 || radius > MAX_RADIUS {
            return Err(NormalizeError::Radius { radius, max: MAX_RADIUS });
        }
        let distinct: HashSet<&String> = alphabet.iter().collect();
        if alphabet.is_empty() || distinct.len() != alphabet.len() {
            return Err(NormalizeError::BadAlphabet);
        }
        let mut views = views;
        views.sort();
        views.dedup();
        let mut s = StandardLcl {
            radius,
            alphabet,
            views: Vec::new(),
            index: HashMap::new(),
        };
        for v in &views {
            if v.iter().flatten().any(|&l| l >= s.alphabet.len()) || !well_formed(v, radius) {
                return Err(NormalizeError::BadView(s.render(v)));
            }
        }
        s.index = views.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        for v in &views {
            if !s.index.contains_key(&reversed(v)) {
                return Err(NormalizeError::NotReversalClosed(s.render(v)));
            }
        }
        s.views = views;
        Ok(s)
    }

    /// Every well-formed view over the alphabet.
    pub fn permissive(radius: usize, alphabet: Vec<String>) -> Result<Self, NormalizeError> {
        let views = all_views(radius, alphabet.len(), DEFAULT_CAP)?;
        Self::new(radius, alphabet, views)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn views(&self) -> &[ViewString] {
        &self.views
    }

    pub fn allows(&self, v: &[Option<Label>]) -> bool {
        self.index.contains_key(v)
    }

    fn compact(&self) -> bool {
        self.alphabet.iter().all(|l| l.chars().count() == 1 && l != "_")
    }

    /// `_` for ⊥; labels concatenated when all are single characters, else space-separated.
    pub fn render(&self, v: &[Option<Label>]) -> String {
        let name = |x: &Option<Label>| match x {
            Some(l) => self.alphabet.get(*l).cloned().unwrap_or_else(|| format!("#{l}")),
            None => "_".to_string(),
        };
        let parts: Vec<String> = v.iter().map(name).collect();
        if self.compact() {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    pub fn from_doc(doc: &StandardDoc) -> Result<Self, NormalizeError> {
        let index: HashMap<&str, Label> = doc.alphabet.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let parse = |tok: &str| -> Result<Option<Label>, NormalizeError> {
            if tok == "_" {
                return Ok(None);
            }
            index
                .get(tok)
                .map(|&l| Some(l))
                .ok_or_else(|| NormalizeError::UnknownLabel(tok.to_string()))
        };
        let mut views = Vec::new();
        for v in &doc.allowed_views {
            let tokens: Vec<String> = match v {
                ViewDoc::Labels(l) => l.clone(),
                ViewDoc::Text(t) if t.contains(char::is_whitespace) => {
                    t.split_whitespace().map(str::to_string).collect()
                }
                ViewDoc::Text(t) => t.chars().map(|c| c.to_string()).collect(),
            };
            views.push(tokens.iter().map(|t| parse(t)).collect::<Result<ViewString, _>>()?);
        }
        Self::new(doc.radius, doc.alphabet.clone(), views)
    }

    pub fn to_doc(&self) -> StandardDoc {
        let compact = self.compact();
        StandardDoc {
            radius: self.radius,
            alphabet: self.alphabet.clone(),
            allowed_views: self
                .views
                .iter()
                .map(|v| {
                    if compact {
                        ViewDoc::Text(self.render(v))
                    } else {
                        ViewDoc::Labels(
                            v.iter()
                                .map(|x| x.map_or("_".to_string(), |l| self.alphabet[l].clone()))
                                .collect(),
                        )
                    }
                })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, NormalizeError> {
        let doc: StandardDoc = serde_json::from_str(text).map_err(|e| NormalizeError::Document(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

/// Number of well-formed views of radius `r` over `k` labels.
pub fn view_count(r: usize, k: usize) -> u128 {
    let mut total = 0u128;
    for a in 0..=r {
        for b in 0..=r {
            if a + b > 0 {
                total = total.saturating_add((k as u128).saturating_pow(2 * (a + b) as u32));
            }
        }
    }
    total
}

fn all_views(r: usize, k: usize, cap: usize) -> Result<Vec<ViewString>, NormalizeError> {
    let count = view_count(r, k);
    if count > cap as u128 {
        return Err(NormalizeError::TooLarge {
            count: usize::try_from(count).unwrap_or(usize::MAX),
            cap,
        });
    }
    let mut out = Vec::new();
    for a in 0..=r {
        for b in 0..=r {
            if a + b == 0 {
                continue;
            }
            let m = 2 * (a + b);
            let mut digits = vec![0usize; m];
            loop {
                let mut v = vec![None; 2 * (r - a)];
                v.extend(digits.iter().map(|&d| Some(d)));
                v.extend(std::iter::repeat_n(None, 2 * (r - b)));
                out.push(v);
                if !bump(&mut digits, k) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Mixed-radix increment; false after the last value.
fn bump(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// One edge of a [`GeneralView`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeView {
    pub label: Option<Label>,
    /// Whether the edge points in reading direction; `None` without orientation.
    pub forward: Option<bool>,
}

/// A radius-r neighborhood with node labels, edge labels and orientations,
/// read left to right. `nodes[center]` is the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralView {
    pub nodes: Vec<Option<Label>>,
    pub edges: Vec<EdgeView>,
    pub center: usize,
}

impl GeneralView {
    pub fn reversed(&self) -> GeneralView {
        GeneralView {
            nodes: self.nodes.iter().rev().copied().collect(),
            edges: self
                .edges
                .iter()
                .rev()
                .map(|e| EdgeView {
                    label: e.label,
                    forward: e.forward.map(|f| !f),
                })
                .collect(),
            center: self.nodes.len() - 1 - self.center,
        }
    }
}

pub type ViewPredicate = Arc<dyn Fn(&GeneralView) -> bool + Send + Sync>;

/// An LCL over node labels, edge labels and edge orientations.
#[derive(Clone)]
pub struct GeneralLcl {
    pub radius: usize,
    pub edge_alphabet: Option<Vec<String>>,
    pub node_alphabet: Option<Vec<String>>,
    pub wants_orientation: bool,
    /// A view is allowed when the predicate holds for it and its reverse.
    pub allowed: ViewPredicate,
}

impl fmt::Debug for GeneralLcl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneralLcl")
            .field("radius", &self.radius)
            .field("edge_alphabet", &self.edge_alphabet)
            .field("node_alphabet", &self.node_alphabet)
            .field("wants_orientation", &self.wants_orientation)
            .finish_non_exhaustive()
    }
}

impl GeneralLcl {
    pub fn new(
        radius: usize,
        edge_alphabet: Option<Vec<String>>,
        node_alphabet: Option<Vec<String>>,
        wants_orientation: bool,
        allowed: impl Fn(&GeneralView) -> bool + Send + Sync + 'static,
    ) -> Result<Self, NormalizeError> {
        if edge_alphabet.is_none() && node_alphabet.is_none() && !wants_orientation {
            return Err(NormalizeError::NothingRequested);
        }
        if radius == 0 || radius > MAX_RADIUS {
            return Err(NormalizeError::Radius { radius, max: MAX_RADIUS });
        }
        for a in [&edge_alphabet, &node_alphabet].into_iter().flatten() {
            if a.is_empty() {
                return Err(NormalizeError::BadAlphabet);
            }
        }
        Ok(GeneralLcl {
            radius,
            edge_alphabet,
            node_alphabet,
            wants_orientation,
            allowed: Arc::new(allowed),
        })
    }
}

/// Half-edge encoding: each half-edge carries (edge label, node label, H/T),
/// and a view is allowed when the parts are consistent (edge parts equal
/// across an edge, node parts equal around a node, one H and one T per edge)
/// and the decoded view is allowed.
pub fn generalize_labels(g: &GeneralLcl) -> Result<StandardLcl, NormalizeError> {
    let r = g.radius;
    let ke = g.edge_alphabet.as_ref().map_or(1, Vec::len);
    let kv = g.node_alphabet.as_ref().map_or(1, Vec::len);
    let ko = if g.wants_orientation { 2 } else { 1 };
    let mut alphabet = Vec::with_capacity(ke * kv * ko);
    for e in 0..ke {
        for v in 0..kv {
            for o in 0..ko {
                let mut parts = Vec::new();
                if let Some(a) = &g.edge_alphabet {
                    parts.push(a[e].clone());
                }
                if let Some(a) = &g.node_alphabet {
                    parts.push(a[v].clone());
                }
                if g.wants_orientation {
                    parts.push(["H", "T"][o].to_string());
                }
                alphabet.push(parts.join(":"));
            }
        }
    }
    let code = |e: usize, v: usize, o: usize| (e * kv + v) * ko + o;
    // H marks the head side, T the tail side
    const H: usize = 0;
    const T: usize = 1;

    let cap = cap_from_env();
    let mut views = Vec::new();
    for a in 0..=r {
        for b in 0..=r {
            if a + b == 0 {
                continue;
            }
            let m = a + b + 1;
            // digits: node labels, then edge labels, then orientations
            let bases: Vec<usize> = std::iter::repeat_n(kv, m)
                .chain(std::iter::repeat_n(ke, m - 1))
                .chain(std::iter::repeat_n(ko, m - 1))
                .collect();
            let mut digits = vec![0usize; bases.len()];
            loop {
                let nodes = &digits[..m];
                let edges = &digits[m..2 * m - 1];
                let orient = &digits[2 * m - 1..];
                let view = GeneralView {
                    nodes: nodes.iter().map(|&x| g.node_alphabet.as_ref().map(|_| x)).collect(),
                    edges: (0..m - 1)
                        .map(|j| EdgeView {
                            label: g.edge_alphabet.as_ref().map(|_| edges[j]),
                            forward: g.wants_orientation.then_some(orient[j] == 0),
                        })
                        .collect(),
                    center: a,
                };
                if (g.allowed)(&view) && (g.allowed)(&view.reversed()) {
                    let mut s: ViewString = vec![None; 2 * (r - a)];
                    for j in 0..m - 1 {
                        let (left, right) = if !g.wants_orientation {
                            (0, 0)
                        } else if orient[j] == 0 {
                            (T, H)
                        } else {
                            (H, T)
                        };
                        s.push(Some(code(edges[j], nodes[j], left)));
                        s.push(Some(code(edges[j], nodes[j + 1], right)));
                    }
                    s.extend(std::iter::repeat_n(None, 2 * (r - b)));
                    views.push(s);
                    if views.len() > cap {
                        return Err(NormalizeError::TooLarge { count: views.len(), cap });
                    }
                }
                if !bump_mixed(&mut digits, &bases) {
                    break;
                }
            }
        }
    }
    StandardLcl::new(r, alphabet, views)
}

fn bump_mixed(digits: &mut [usize], bases: &[usize]) -> bool {
    for (d, &b) in digits.iter_mut().zip(bases) {
        *d += 1;
        if *d < b {
            return true;
        }
        *d = 0;
    }
    false
}

/// Node-edge-checkable problem over the views, using the cap from the environment.
pub fn normalize(s: &StandardLcl) -> Result<LclProblem, NormalizeError> {
    normalize_with_cap(s, cap_from_env())
}

/// Labels are the views, in the order of [`StandardLcl::views`]. The two ports
/// of a node carry reverse views; across an edge the views agree on the
/// `4r - 2` half-edges they share; a path end carries a view whose far side
/// is all ⊥.
pub fn normalize_with_cap(s: &StandardLcl, cap: usize) -> Result<LclProblem, NormalizeError> {
    let n = s.views.len();
    if n > cap {
        return Err(NormalizeError::TooLarge { count: n, cap });
    }
    let r = s.radius;
    let shared = 4 * r - 2;
    let mut by_suffix: HashMap<&[Option<Label>], Vec<usize>> = HashMap::new();
    // a view whose right side is all ⊥ faces no edge and never sits on one
    for (i, v) in s.views.iter().enumerate() {
        if v[2 * r].is_some() {
            by_suffix.entry(&v[4 * r - shared..]).or_default().push(i);
        }
    }
    let mut edge = Vec::new();
    let mut node = Vec::new();
    for (i, v) in s.views.iter().enumerate() {
        node.push((i, s.index[&reversed(v)]));
        if v[2 * r].is_none() {
            continue;
        }
        let want = reversed(&v[4 * r - shared..]);
        for &j in by_suffix.get(want.as_slice()).map_or(&[][..], Vec::as_slice) {
            edge.push((i, j));
        }
    }
    let ends: Vec<Label> = (0..n).filter(|&i| s.views[i][..2 * r].iter().all(Option::is_none)).collect();
    let labels = s.views.iter().map(|v| s.render(v)).collect();
    LclProblem::new(labels, &edge, &node, &ends, &ends).map_err(|e| NormalizeError::Document(e.to_string()))
}

fn chain_nodes(inst: &Instance, r: usize) -> Result<(usize, bool), NormalizeError> {
    let n = inst.n();
    match inst.topology {
        Topology::Path => Ok((n, false)),
        Topology::Cycle if n < 2 * r + 2 => Err(NormalizeError::ShortCycle { n, min: 2 * r + 2 }),
        Topology::Cycle => Ok((n, true)),
        Topology::RootedTree => Err(NormalizeError::Topology),
    }
}

/// Reads views out of a (possibly partial) half-edge labeling of a path or cycle.
struct Reader<'a> {
    n: usize,
    cyclic: bool,
    r: usize,
    ports: &'a [[Label; 2]],
}

impl Reader<'_> {
    /// Label of node `x` on the edge joining `x` and its neighbor in direction `d`.
    fn half(&self, x: usize, d: isize) -> Label {
        if d > 0 {
            self.ports[x][0]
        } else {
            self.ports[(x + self.n - 1) % self.n][1]
        }
    }

    fn step(&self, x: usize, d: isize) -> Option<usize> {
        let y = x as isize + d;
        if self.cyclic {
            Some(y.rem_euclid(self.n as isize) as usize)
        } else if (0..self.n as isize).contains(&y) {
            Some(y as usize)
        } else {
            None
        }
    }

    /// View of `v` with direction `d` to the right.
    fn view(&self, v: usize, d: isize) -> ViewString {
        let r = self.r;
        let mut left = Vec::new();
        let mut x = v;
        for _ in 0..r {
            let Some(y) = self.step(x, -d) else { break };
            // far label first once reversed
            left.push(Some(self.half(x, -d)));
            left.push(Some(self.half(y, d)));
            x = y;
        }
        left.resize(2 * r, None);
        let mut s: ViewString = left.into_iter().rev().collect();
        let mut x = v;
        for _ in 0..r {
            let Some(y) = self.step(x, d) else { break };
            s.push(Some(self.half(x, d)));
            s.push(Some(self.half(y, -d)));
            x = y;
        }
        s.resize(4 * r, None);
        s
    }
}

/// First node whose view is not allowed.
fn first_illegal(s: &StandardLcl, inst: &Instance, lab: &Labeling) -> Result<Option<usize>, NormalizeError> {
    let (n, cyclic) = chain_nodes(inst, s.radius)?;
    if lab.ports.len() != inst.edge_count() || lab.ports.iter().flatten().any(|&l| l >= s.alphabet.len()) {
        return Err(NormalizeError::IllegalInput { node: 0 });
    }
    let rd = Reader { n, cyclic, r: s.radius, ports: &lab.ports };
    Ok((0..n).find(|&v| !s.allows(&rd.view(v, 1))))
}

/// Whether a half-edge labeling is legal for `s`.
pub fn is_legal(s: &StandardLcl, inst: &Instance, lab: &Labeling) -> Result<bool, NormalizeError> {
    Ok(first_illegal(s, inst, lab)?.is_none())
}

/// Every half-edge gets the view of its node toward the edge.
pub fn lift_labeling(s: &StandardLcl, inst: &Instance, lab: &Labeling) -> Result<Labeling, NormalizeError> {
    if let Some(node) = first_illegal(s, inst, lab)? {
        return Err(NormalizeError::IllegalInput { node });
    }
    let (n, cyclic) = chain_nodes(inst, s.radius)?;
    let rd = Reader { n, cyclic, r: s.radius, ports: &lab.ports };
    let ports = inst
        .edges()
        .into_iter()
        .map(|(t, h)| [s.index[&rd.view(t, 1)], s.index[&rd.view(h, -1)]])
        .collect();
    Ok(Labeling { ports })
}

/// Reads each half-edge label from the view on that half-edge.
pub fn project_labeling(s: &StandardLcl, inst: &Instance, lab: &Labeling) -> Result<Labeling, NormalizeError> {
    let r = s.radius;
    let (_, _) = chain_nodes(inst, r)?;
    let mut ports = Vec::with_capacity(lab.ports.len());
    for (e, pair) in lab.ports.iter().enumerate() {
        let mut out = [0; 2];
        for side in 0..2 {
            let v = s.views.get(pair[side]).ok_or(NormalizeError::InconsistentViews { edge: e })?;
            let other = &s.views[pair[1 - side]];
            let (Some(mine), Some(seen)) = (v[2 * r], other.get(2 * r + 1).copied().flatten()) else {
                return Err(NormalizeError::InconsistentViews { edge: e });
            };
            if mine != seen {
                return Err(NormalizeError::InconsistentViews { edge: e });
            }
            out[side] = mine;
        }
        ports.push(out);
    }
    let projected = Labeling { ports };
    let edges = inst.edge_count();
    match lift_labeling(s, inst, &projected) {
        Ok(back) => match (0..edges).find(|&e| back.ports[e] != lab.ports[e]) {
            None => Ok(projected),
            Some(edge) => Err(NormalizeError::InconsistentViews { edge }),
        },
        Err(NormalizeError::IllegalInput { node }) => Err(NormalizeError::InconsistentViews {
            edge: node.min(edges - 1),
        }),
        Err(e) => Err(e),
    }
}

/// Depth-first search over half-edge labelings, checking each node's view
/// as soon as the edges it covers are assigned. Calls `found` on every legal
/// labeling until it returns false.
fn search(s: &StandardLcl, inst: &Instance, mut found: impl FnMut(&Labeling) -> bool) -> Result<(), NormalizeError> {
    let r = s.radius;
    let (n, cyclic) = chain_nodes(inst, r)?;
    let m = inst.edge_count();
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); m];
    for v in 0..n {
        let last = if cyclic {
            if v >= r && v + r <= n { v + r - 1 } else { m - 1 }
        } else {
            (v + r - 1).min(m - 1)
        };
        check_at[last].push(v);
    }
    let k = s.alphabet.len();
    let mut lab = Labeling { ports: vec![[0, 0]; m] };
    // iterative DFS over edges; each edge takes k² values
    let mut choice = vec![0usize; m];
    let mut e = 0usize;
    loop {
        if choice[e] == k * k {
            choice[e] = 0;
            if e == 0 {
                return Ok(());
            }
            e -= 1;
            choice[e] += 1;
            continue;
        }
        lab.ports[e] = [choice[e] / k, choice[e] % k];
        let rd = Reader { n, cyclic, r, ports: &lab.ports };
        if check_at[e].iter().all(|&v| s.allows(&rd.view(v, 1))) {
            if e + 1 == m {
                if !found(&lab) {
                    return Ok(());
                }
                choice[e] += 1;
            } else {
                e += 1;
            }
        } else {
            choice[e] += 1;
        }
    }
}

/// A legal labeling for `s`, if one exists.
pub fn solve_standard(s: &StandardLcl, inst: &Instance) -> Result<Option<Labeling>, NormalizeError> {
    let mut out = None;
    search(s, inst, |l| {
        out = Some(l.clone());
        false
    })?;
    Ok(out)
}

/// All legal labelings, up to `limit`.
pub fn all_standard_solutions(s: &StandardLcl, inst: &Instance, limit: usize) -> Result<Vec<Labeling>, NormalizeError> {
    let mut out = Vec::new();
    search(s, inst, |l| {
        out.push(l.clone());
        out.len() < limit
    })?;
    Ok(out)
}

/// Conjoins `p` with a problem that is solvable on every path and on exactly
/// the cycles of length at least `min_len`: a directed walk around a flower
/// whose petals are cycles of lengths `min_len ..= 2 min_len - 1`.
pub fn guard_short_cycles(p: &LclProblem, min_len: usize) -> LclProblem {
    let flower = flower(min_len.max(1));
    p.product(&flower)
}

fn flower(l: usize) -> LclProblem {
    // vertex 0 is the center
    let mut arcs = Vec::new();
    let mut next = 1;
    for len in l..2 * l {
        let mut prev = 0;
        for _ in 0..len - 1 {
            arcs.push((prev, next));
            prev = next;
            next += 1;
        }
        arcs.push((prev, 0));
    }
    let verts = next;
    // label 2x is "x out", 2x + 1 is "x in"
    let labels: Vec<String> = (0..verts).flat_map(|x| [format!("{x}o"), format!("{x}i")]).collect();
    let mut edge = Relation::empty(2 * verts);
    for &(u, v) in &arcs {
        edge.insert(2 * u, 2 * v + 1);
        edge.insert(2 * v + 1, 2 * u);
    }
    let edge: Vec<(Label, Label)> = edge.pairs().collect();
    let node: Vec<(Label, Label)> = (0..verts).flat_map(|x| [(2 * x + 1, 2 * x), (2 * x, 2 * x + 1)]).collect();
    let all: Vec<Label> = (0..2 * verts).collect();
    LclProblem::new(labels, &edge, &node, &all, &all).expect("flower is well formed")
}

/// Node 2-coloring as a general LCL.
pub fn node_two_coloring(radius: usize) -> GeneralLcl {
    GeneralLcl::new(radius, None, Some(vec!["1".into(), "2".into()]), false, |v| {
        v.nodes.windows(2).all(|w| w[0] != w[1])
    })
    .expect("valid")
}
