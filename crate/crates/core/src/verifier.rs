//! Checks port labelings against a problem on a concrete instance.

use serde::Serialize;
use thiserror::Error;

use crate::automaton::Topology;
use crate::instance::{Instance, Labeling};
use crate::model::LclProblem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Edge,
    Node,
    Start,
    End,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub constraint: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node: Option<usize>,
    pub observed: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("asymmetric problems are undefined on undirected instances")]
    AsymmetricOnUndirected,
    #[error("labeling covers {got} edges, instance has {expected}")]
    Partial { expected: usize, got: usize },
    #[error("label index {0} outside the alphabet")]
    BadLabel(usize),
    #[error("{} violation(s)", .0.len())]
    Violations(Vec<Violation>),
}

/// Ok iff every edge, node and endpoint condition holds.
///
/// Directed instances use the tail/head roles of each edge; a tree node checks
/// (in-port, out-port) against C_node for every child, the root's out-ports
/// against C_start and leaf in-ports against C_end. Undirected instances
/// apply the symmetric relations without orientation.
pub fn verify(p: &LclProblem, inst: &Instance, lab: &Labeling) -> Result<(), VerifyError> {
    if !inst.directed && !p.is_symmetric() {
        return Err(VerifyError::AsymmetricOnUndirected);
    }
    let edges = inst.edges();
    if lab.ports.len() != edges.len() {
        return Err(VerifyError::Partial {
            expected: edges.len(),
            got: lab.ports.len(),
        });
    }
    if let Some(&bad) = lab.ports.iter().flatten().find(|&&l| l >= p.alphabet_size()) {
        return Err(VerifyError::BadLabel(bad));
    }
    let name = |l: usize| p.label_name(l).to_string();
    let mut out = Vec::new();
    for (e, &[a, b]) in lab.ports.iter().enumerate() {
        if !p.has_edge(a, b) {
            out.push(Violation {
                kind: ViolationKind::Edge,
                constraint: "C_edge",
                edge: Some(e),
                node: None,
                observed: vec![name(a), name(b)],
            });
        }
    }
    // per node: labels on incoming (head) ports and outgoing (tail) ports
    let n = inst.n();
    let mut incoming = vec![Vec::new(); n];
    let mut outgoing = vec![Vec::new(); n];
    for (e, &(t, h)) in edges.iter().enumerate() {
        outgoing[t].push(lab.ports[e][0]);
        incoming[h].push(lab.ports[e][1]);
    }
    for v in 0..n {
        let (ins, outs) = (&incoming[v], &outgoing[v]);
        let mut push = |kind, constraint, observed: Vec<usize>| {
            out.push(Violation {
                kind,
                constraint,
                edge: None,
                node: Some(v),
                observed: observed.into_iter().map(name).collect(),
            })
        };
        if inst.topology == Topology::RootedTree || inst.directed {
            for &x in ins {
                for &y in outs {
                    if !p.has_node(x, y) {
                        push(ViolationKind::Node, "C_node", vec![x, y]);
                    }
                }
            }
            if ins.is_empty() {
                for &y in outs {
                    if !p.is_start(y) {
                        push(ViolationKind::Start, "C_start", vec![y]);
                    }
                }
            }
            if outs.is_empty() {
                for &x in ins {
                    if !p.is_end(x) {
                        push(ViolationKind::End, "C_end", vec![x]);
                    }
                }
            }
        } else {
            let ports: Vec<usize> = ins.iter().chain(outs).copied().collect();
            match ports.as_slice() {
                [x, y] => {
                    if !p.has_node(*x, *y) {
                        push(ViolationKind::Node, "C_node", vec![*x, *y]);
                    }
                }
                [x]
                    if !p.is_start(*x) => {
                        push(ViolationKind::Start, "C_start", vec![*x]);
                    }
                _ => {}
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(VerifyError::Violations(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn cycle(n: usize, directed: bool) -> Instance {
        Instance::cycle((1..=n as u64).collect(), directed).unwrap()
    }

    #[test]
    fn alternating_two_coloring() {
        let p = catalog::edge_two_coloring();
        let lab = Labeling {
            ports: (0..6).map(|i| if i % 2 == 0 { [0, 0] } else { [1, 1] }).collect(),
        };
        assert_eq!(verify(&p, &cycle(6, true), &lab), Ok(()));
        let same = Labeling {
            ports: vec![[0, 0]; 5],
        };
        match verify(&p, &cycle(5, true), &same) {
            Err(VerifyError::Violations(v)) => {
                assert_eq!(v.len(), 5);
                assert!(v.iter().all(|x| x.kind == ViolationKind::Node));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unmatched_neighbors_break_matching() {
        let p = catalog::maximal_matching();
        let l = |s: &str| p.label_index(s).unwrap();
        // path 0-1-2-3: nodes 1 and 2 unmatched and adjacent
        let inst = Instance::path(vec![1, 2, 3, 4], false).unwrap();
        let lab = Labeling {
            ports: vec![[l("1"), l("0")], [l("0"), l("0")], [l("0"), l("1")]],
        };
        let Err(VerifyError::Violations(v)) = verify(&p, &inst, &lab) else {
            panic!()
        };
        assert!(v.iter().any(|x| x.kind == ViolationKind::Edge && x.edge == Some(1)));
    }

    #[test]
    fn errors() {
        let d = catalog::positive_orientation();
        let lab = Labeling {
            ports: vec![[0, 1]; 3],
        };
        assert_eq!(
            verify(&d, &cycle(3, false), &lab),
            Err(VerifyError::AsymmetricOnUndirected)
        );
        assert_eq!(verify(&d, &cycle(3, true), &lab), Ok(()));
        assert!(matches!(
            verify(&d, &cycle(4, true), &lab),
            Err(VerifyError::Partial { .. })
        ));
    }
}
