//! Node-edge-checkable problems over port labels.
//!
//! Labels are interned to dense indices; relations are dense boolean matrices.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Label = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("label {label:?} used in `{field}` is not declared in the alphabet")]
    UndeclaredLabel { field: String, label: String },
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("label {0:?} declared twice")]
    DuplicateLabel(String),
    #[error("label index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("mirror of state ({tail},{head}) is not a state")]
    MirrorNotAState { tail: String, head: String },
}

/// Ordered pair relation over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, a: Label, b: Label) -> bool {
        self.bits[a * self.n + b]
    }

    pub fn insert(&mut self, a: Label, b: Label) {
        self.bits[a * self.n + b] = true;
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        (0..self.n)
            .flat_map(move |a| (0..self.n).map(move |b| (a, b)))
            .filter(move |&(a, b)| self.contains(a, b))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(a, b)| self.contains(b, a))
    }

    pub fn transpose(&self) -> Relation {
        let mut t = Relation::empty(self.n);
        for (a, b) in self.pairs() {
            t.insert(b, a);
        }
        t
    }

    fn renamed(&self, perm: &[Label]) -> Relation {
        let mut r = Relation::empty(self.n);
        for (a, b) in self.pairs() {
            r.insert(perm[a], perm[b]);
        }
        r
    }
}

/// A state of the problem automaton: one element of C_edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StatePair {
    pub tail: Label,
    pub head: Label,
}

impl StatePair {
    pub fn new(tail: Label, head: Label) -> Self {
        StatePair { tail, head }
    }

    pub fn swapped(self) -> Self {
        StatePair {
            tail: self.head,
            head: self.tail,
        }
    }
}

/// The tuple (Γ, C_edge, C_node, C_start, C_end).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LclProblem {
    labels: Vec<String>,
    edge: Relation,
    node: Relation,
    start: Vec<bool>,
    end: Vec<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    pub alphabet: Vec<String>,
    pub edge_constraint: Vec<[String; 2]>,
    pub node_constraint: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end: Option<Vec<String>>,
}

impl LclProblem {
    /// Builds a problem from label names and index-based constraints.
    pub fn new(
        labels: Vec<String>,
        edge: &[(Label, Label)],
        node: &[(Label, Label)],
        start: &[Label],
        end: &[Label],
    ) -> Result<Self, ModelError> {
        if labels.is_empty() {
            return Err(ModelError::EmptyAlphabet);
        }
        let n = labels.len();
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(ModelError::DuplicateLabel(l.clone()));
            }
        }
        let check = |x: Label| {
            if x < n {
                Ok(x)
            } else {
                Err(ModelError::IndexOutOfRange(x))
            }
        };
        let mut e = Relation::empty(n);
        for &(a, b) in edge {
            e.insert(check(a)?, check(b)?);
        }
        let mut v = Relation::empty(n);
        for &(a, b) in node {
            v.insert(check(a)?, check(b)?);
        }
        let mut s = vec![false; n];
        for &a in start {
            s[check(a)?] = true;
        }
        let mut t = vec![false; n];
        for &a in end {
            t[check(a)?] = true;
        }
        Ok(LclProblem {
            labels,
            edge: e,
            node: v,
            start: s,
            end: t,
        })
    }

    /// Builds a problem from label names. `None` for start/end means all of Γ.
    pub fn from_names(
        alphabet: &[&str],
        edge: &[(&str, &str)],
        node: &[(&str, &str)],
        start: Option<&[&str]>,
        end: Option<&[&str]>,
    ) -> Result<Self, ModelError> {
        let pairs = |v: &[(&str, &str)]| {
            v.iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect()
        };
        let list = |v: Option<&[&str]>| v.map(|s| s.iter().map(|x| x.to_string()).collect());
        Self::from_doc(&ProblemDoc {
            alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
            edge_constraint: pairs(edge),
            node_constraint: pairs(node),
            start: list(start),
            end: list(end),
        })
    }

    /// Edge-checkable tree problem: C_node is the diagonal and C_start = C_end = Γ.
    pub fn edge_checkable(labels: Vec<String>, edge: &[(Label, Label)]) -> Result<Self, ModelError> {
        let n = labels.len();
        let diag: Vec<(Label, Label)> = (0..n).map(|a| (a, a)).collect();
        let all: Vec<Label> = (0..n).collect();
        Self::new(labels, edge, &diag, &all, &all)
    }

    pub fn is_edge_checkable(&self) -> bool {
        let n = self.alphabet_size();
        self.start.iter().all(|&b| b)
            && self.end.iter().all(|&b| b)
            && (0..n).all(|a| (0..n).all(|b| self.node.contains(a, b) == (a == b)))
    }

    pub fn from_doc(doc: &ProblemDoc) -> Result<Self, ModelError> {
        if doc.alphabet.is_empty() {
            return Err(ModelError::EmptyAlphabet);
        }
        let mut index = HashMap::new();
        for (i, l) in doc.alphabet.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(ModelError::DuplicateLabel(l.clone()));
            }
        }
        let look = |field: &str, l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| ModelError::UndeclaredLabel {
                    field: field.to_string(),
                    label: l.to_string(),
                })
        };
        let mut edge = Vec::new();
        for [a, b] in &doc.edge_constraint {
            edge.push((look("edge_constraint", a)?, look("edge_constraint", b)?));
        }
        let mut node = Vec::new();
        for [a, b] in &doc.node_constraint {
            node.push((look("node_constraint", a)?, look("node_constraint", b)?));
        }
        let all: Vec<Label> = (0..doc.alphabet.len()).collect();
        let set = |field: &str, v: &Option<Vec<String>>| -> Result<Vec<Label>, ModelError> {
            match v {
                None => Ok(all.clone()),
                Some(v) => v.iter().map(|l| look(field, l)).collect(),
            }
        };
        let start = set("start", &doc.start)?;
        let end = set("end", &doc.end)?;
        Self::new(doc.alphabet.clone(), &edge, &node, &start, &end)
    }

    pub fn to_doc(&self) -> ProblemDoc {
        let name = |a: Label| self.labels[a].clone();
        let all = |v: &[bool]| v.iter().all(|&b| b);
        let list = |v: &[bool]| {
            v.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| name(i))
                .collect::<Vec<_>>()
        };
        ProblemDoc {
            alphabet: self.labels.clone(),
            edge_constraint: self.edge.pairs().map(|(a, b)| [name(a), name(b)]).collect(),
            node_constraint: self.node.pairs().map(|(a, b)| [name(a), name(b)]).collect(),
            start: (!all(&self.start)).then(|| list(&self.start)),
            end: (!all(&self.end)).then(|| list(&self.end)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("problem serializes")
    }

    pub fn alphabet_size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_name(&self, a: Label) -> &str {
        &self.labels[a]
    }

    pub fn label_index(&self, name: &str) -> Option<Label> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn edge(&self) -> &Relation {
        &self.edge
    }

    pub fn node(&self) -> &Relation {
        &self.node
    }

    pub fn has_edge(&self, a: Label, b: Label) -> bool {
        self.edge.contains(a, b)
    }

    pub fn has_node(&self, a: Label, b: Label) -> bool {
        self.node.contains(a, b)
    }

    pub fn is_start(&self, a: Label) -> bool {
        self.start[a]
    }

    pub fn is_end(&self, a: Label) -> bool {
        self.end[a]
    }

    pub fn start_set(&self) -> &[bool] {
        &self.start
    }

    pub fn end_set(&self) -> &[bool] {
        &self.end
    }

    pub fn state_name(&self, s: StatePair) -> String {
        format!("{}{}", self.labels[s.tail], self.labels[s.head])
    }

    /// Display form with a separator, safe for multi-character labels.
    pub fn state_display(&self, s: StatePair) -> String {
        if self.labels.iter().all(|l| l.chars().count() == 1) {
            self.state_name(s)
        } else {
            format!("{}|{}", self.labels[s.tail], self.labels[s.head])
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.edge.is_symmetric() && self.node.is_symmetric() && self.start == self.end
    }

    pub fn mirror_state(&self, s: StatePair) -> Result<StatePair, ModelError> {
        let m = s.swapped();
        if self.edge.contains(m.tail, m.head) {
            Ok(m)
        } else {
            Err(ModelError::MirrorNotAState {
                tail: self.labels[s.tail].clone(),
                head: self.labels[s.head].clone(),
            })
        }
    }

    /// The same problem read in the opposite direction.
    pub fn mirrored(&self) -> LclProblem {
        LclProblem {
            labels: self.labels.clone(),
            edge: self.edge.transpose(),
            node: self.node.transpose(),
            start: self.end.clone(),
            end: self.start.clone(),
        }
    }

    /// Applies the bijection `perm` to label indices; names move with their labels.
    pub fn renamed(&self, perm: &[Label]) -> LclProblem {
        let n = self.alphabet_size();
        assert_eq!(perm.len(), n);
        let mut labels = vec![String::new(); n];
        let mut start = vec![false; n];
        let mut end = vec![false; n];
        for a in 0..n {
            labels[perm[a]] = self.labels[a].clone();
            start[perm[a]] = self.start[a];
            end[perm[a]] = self.end[a];
        }
        LclProblem {
            labels,
            edge: self.edge.renamed(perm),
            node: self.node.renamed(perm),
            start,
            end,
        }
    }

    /// Componentwise conjunction; labels are pairs joined with `&`.
    pub fn product(&self, other: &LclProblem) -> LclProblem {
        let m = other.alphabet_size();
        let n = self.alphabet_size() * m;
        let idx = |a: Label, b: Label| a * m + b;
        let mut labels = Vec::with_capacity(n);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}&{b}"));
            }
        }
        let mut edge = Relation::empty(n);
        for (a1, a2) in self.edge.pairs() {
            for (b1, b2) in other.edge.pairs() {
                edge.insert(idx(a1, b1), idx(a2, b2));
            }
        }
        let mut node = Relation::empty(n);
        for (a1, a2) in self.node.pairs() {
            for (b1, b2) in other.node.pairs() {
                node.insert(idx(a1, b1), idx(a2, b2));
            }
        }
        let mut start = vec![false; n];
        let mut end = vec![false; n];
        for a in 0..self.alphabet_size() {
            for b in 0..m {
                start[idx(a, b)] = self.start[a] && other.start[b];
                end[idx(a, b)] = self.end[a] && other.end[b];
            }
        }
        LclProblem {
            labels,
            edge,
            node,
            start,
            end,
        }
    }
}

impl fmt::Display for LclProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "|Γ|={} |C_edge|={} |C_node|={}",
            self.alphabet_size(),
            self.edge.len(),
            self.node.len()
        )
    }
}

pub fn parse_problem(text: &str) -> Result<LclProblem, ModelError> {
    let doc: ProblemDoc = serde_json::from_str(text).map_err(|e| ModelError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    LclProblem::from_doc(&doc)
}
