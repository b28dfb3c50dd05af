//! Concrete paths, cycles and rooted trees with node identifiers, and port labelings.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automaton::Topology;
use crate::model::{Label, LclProblem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("a cycle needs at least 3 nodes, got {0}")]
    CycleTooSmall(usize),
    #[error("a path needs at least 2 nodes, got {0}")]
    PathTooSmall(usize),
    #[error("expected {expected} ids, got {got}")]
    IdCount { expected: usize, got: usize },
    #[error("duplicate id {0}")]
    DuplicateId(u64),
    #[error("rooted trees must have exactly one root and no cycles")]
    BadTree,
    #[error("rooted trees are always directed")]
    UndirectedTree,
    #[error("unknown label {0:?} in labeling")]
    UnknownLabel(String),
    #[error("{0}")]
    Document(String),
}

/// Nodes are `0..n`. Path and cycle edge `i` joins `i` and `i+1 (mod n)`; in a
/// directed instance node `i` is its tail. Tree edges run parent → child and are
/// indexed in increasing child order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub topology: Topology,
    pub directed: bool,
    pub ids: Vec<u64>,
    pub parents: Vec<Option<usize>>,
}

fn check_ids(ids: &[u64], n: usize) -> Result<(), InstanceError> {
    if ids.len() != n {
        return Err(InstanceError::IdCount {
            expected: n,
            got: ids.len(),
        });
    }
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(InstanceError::DuplicateId(w[0]));
        }
    }
    Ok(())
}

/// `n` distinct ids from 1..=n².
pub fn random_ids(n: usize, rng: &mut impl Rng) -> Vec<u64> {
    let space = (n * n).max(n).max(1);
    sample(rng, space, n)
        .into_iter()
        .map(|x| x as u64 + 1)
        .collect()
}

impl Instance {
    pub fn path(ids: Vec<u64>, directed: bool) -> Result<Self, InstanceError> {
        if ids.len() < 2 {
            return Err(InstanceError::PathTooSmall(ids.len()));
        }
        check_ids(&ids, ids.len())?;
        Ok(Instance {
            topology: Topology::Path,
            directed,
            ids,
            parents: Vec::new(),
        })
    }

    pub fn cycle(ids: Vec<u64>, directed: bool) -> Result<Self, InstanceError> {
        if ids.len() < 3 {
            return Err(InstanceError::CycleTooSmall(ids.len()));
        }
        check_ids(&ids, ids.len())?;
        Ok(Instance {
            topology: Topology::Cycle,
            directed,
            ids,
            parents: Vec::new(),
        })
    }

    pub fn tree(parents: Vec<Option<usize>>, ids: Vec<u64>) -> Result<Self, InstanceError> {
        let n = parents.len();
        check_ids(&ids, n)?;
        if n == 0 || parents.iter().filter(|p| p.is_none()).count() != 1 {
            return Err(InstanceError::BadTree);
        }
        if parents.iter().any(|p| p.is_some_and(|p| p >= n)) {
            return Err(InstanceError::BadTree);
        }
        // every node must reach the root
        let mut state = vec![0u8; n];
        for v in 0..n {
            let mut chain = Vec::new();
            let mut cur = v;
            loop {
                if state[cur] == 2 {
                    break;
                }
                if state[cur] == 1 {
                    return Err(InstanceError::BadTree);
                }
                state[cur] = 1;
                chain.push(cur);
                match parents[cur] {
                    Some(p) => cur = p,
                    None => break,
                }
            }
            for c in chain {
                state[c] = 2;
            }
        }
        Ok(Instance {
            topology: Topology::RootedTree,
            directed: true,
            ids,
            parents,
        })
    }

    pub fn random(topology: Topology, n: usize, directed: bool, seed: u64) -> Result<Self, InstanceError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ids = random_ids(n, &mut rng);
        match topology {
            Topology::Path => Self::path(ids, directed),
            Topology::Cycle => Self::cycle(ids, directed),
            Topology::RootedTree => Self::random_tree(n, seed, 3),
        }
    }

    /// Random tree rooted at 0 where node i picks its parent among the `window`
    /// preceding nodes; small windows give deep trees.
    pub fn random_tree(n: usize, seed: u64, window: usize) -> Result<Self, InstanceError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ids = random_ids(n, &mut rng);
        let parents = (0..n)
            .map(|i| {
                (i > 0).then(|| {
                    let lo = i.saturating_sub(window.max(1));
                    rng.gen_range(lo..i)
                })
            })
            .collect();
        Self::tree(parents, ids)
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        match self.topology {
            Topology::Cycle => self.n(),
            _ => self.n() - 1,
        }
    }

    /// Edges as (tail, head) in index order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        match self.topology {
            Topology::Path => (0..n - 1).map(|i| (i, i + 1)).collect(),
            Topology::Cycle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
            Topology::RootedTree => (0..n)
                .filter_map(|v| self.parents[v].map(|p| (p, v)))
                .collect(),
        }
    }

    pub fn root(&self) -> Option<usize> {
        self.parents.iter().position(|p| p.is_none())
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.n()];
        for (v, p) in self.parents.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(v);
            }
        }
        ch
    }

    /// Tree edge index of the edge into each non-root node.
    pub fn parent_edge(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.n()];
        let mut e = 0;
        for (v, p) in self.parents.iter().enumerate() {
            if p.is_some() {
                out[v] = Some(e);
                e += 1;
            }
        }
        out
    }

    pub fn depths(&self) -> Vec<usize> {
        let n = self.n();
        let mut depth = vec![usize::MAX; n];
        for v in 0..n {
            let mut chain = Vec::new();
            let mut cur = v;
            while depth[cur] == usize::MAX {
                chain.push(cur);
                match self.parents[cur] {
                    Some(p) => cur = p,
                    None => {
                        depth[cur] = 0;
                        chain.pop();
                        break;
                    }
                }
            }
            let mut d = depth[cur];
            for &c in chain.iter().rev() {
                d += 1;
                depth[c] = d;
            }
        }
        depth
    }

    pub fn height(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    pub fn to_doc(&self) -> InstanceDoc {
        InstanceDoc {
            topology: self.topology,
            directed: Some(self.directed),
            n: self.n(),
            ids: Some(self.ids.clone()),
            parents: (self.topology == Topology::RootedTree).then(|| self.parents.clone()),
            seed: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub topology: Topology,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directed: Option<bool>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ids: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parents: Option<Vec<Option<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl InstanceDoc {
    pub fn build(&self) -> Result<Instance, InstanceError> {
        let seed = self.seed.unwrap_or(0);
        let ids = match &self.ids {
            Some(ids) => ids.clone(),
            None => random_ids(self.n, &mut ChaCha8Rng::seed_from_u64(seed)),
        };
        let directed = self.directed.unwrap_or(true);
        match self.topology {
            Topology::Path => Instance::path(ids, directed),
            Topology::Cycle => Instance::cycle(ids, directed),
            Topology::RootedTree => {
                if !directed {
                    return Err(InstanceError::UndirectedTree);
                }
                match &self.parents {
                    Some(p) => Instance::tree(p.clone(), ids),
                    None => Instance::random_tree(self.n, seed, 3),
                }
            }
        }
    }
}

/// Port labels per edge: `ports[e] = [label at tail, label at head]`, using
/// the (tail, head) order of [`Instance::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling {
    pub ports: Vec<[Label; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LabelingDoc {
    pub ports: Vec<[String; 2]>,
}

impl Labeling {
    pub fn to_doc(&self, p: &LclProblem) -> LabelingDoc {
        LabelingDoc {
            ports: self
                .ports
                .iter()
                .map(|[a, b]| [p.label_name(*a).to_string(), p.label_name(*b).to_string()])
                .collect(),
        }
    }

    pub fn from_doc(doc: &LabelingDoc, p: &LclProblem) -> Result<Labeling, InstanceError> {
        let look = |s: &String| {
            p.label_index(s)
                .ok_or_else(|| InstanceError::UnknownLabel(s.clone()))
        };
        let ports = doc
            .ports
            .iter()
            .map(|[a, b]| Ok([look(a)?, look(b)?]))
            .collect::<Result<_, InstanceError>>()?;
        Ok(Labeling { ports })
    }

    /// Tree labeling where every port of a node carries the node's label.
    pub fn from_node_labels(inst: &Instance, labels: &[Label]) -> Labeling {
        Labeling {
            ports: inst
                .edges()
                .into_iter()
                .map(|(u, v)| [labels[u], labels[v]])
                .collect(),
        }
    }
}
