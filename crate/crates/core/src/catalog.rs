//! Encodings of the standard example problems, one per type plus a few extras.

use crate::model::LclProblem;

fn build(
    alphabet: &[&str],
    edge: &[(&str, &str)],
    node: &[(&str, &str)],
    start: Option<&[&str]>,
    end: Option<&[&str]>,
) -> LclProblem {
    LclProblem::from_names(alphabet, edge, node, start, end).expect("catalog problem is valid")
}

/// A: orient edges so each consistently oriented fragment is long; 12 marks a
/// turning point, 34/43 run along a fragment.
pub fn fragment_orientation() -> LclProblem {
    build(
        &["1", "2", "3", "4"],
        &[("1", "2"), ("2", "1"), ("3", "4"), ("4", "3")],
        &[("2", "3"), ("3", "2"), ("4", "3"), ("3", "4"), ("1", "1"), ("4", "4")],
        None,
        None,
    )
}

/// B: either a consistent orientation (12/21) or an edge 3-coloring (33/44/55).
pub fn orientation_or_three_coloring() -> LclProblem {
    build(
        &["1", "2", "3", "4", "5"],
        &[("1", "2"), ("2", "1"), ("3", "3"), ("4", "4"), ("5", "5")],
        &[
            ("1", "2"),
            ("2", "1"),
            ("3", "4"),
            ("4", "3"),
            ("3", "5"),
            ("5", "3"),
            ("4", "5"),
            ("5", "4"),
        ],
        None,
        None,
    )
}

/// C: consistent orientation.
pub fn consistent_orientation() -> LclProblem {
    build(
        &["H", "T"],
        &[("H", "T"), ("T", "H")],
        &[("T", "H"), ("H", "T")],
        None,
        None,
    )
}

/// D: orientation in the positive direction.
pub fn positive_orientation() -> LclProblem {
    build(&["H", "T"], &[("H", "T")], &[("T", "H")], None, None)
}

/// E: edge 3-coloring.
pub fn edge_three_coloring() -> LclProblem {
    build(
        &["1", "2", "3"],
        &[("1", "1"), ("2", "2"), ("3", "3")],
        &[("1", "2"), ("2", "1"), ("1", "3"), ("3", "1"), ("2", "3"), ("3", "2")],
        None,
        None,
    )
}

fn colored_orientation(both_directions: bool) -> LclProblem {
    let names: Vec<String> = (1..=3)
        .flat_map(|c| [format!("H{c}"), format!("T{c}")])
        .collect();
    let alphabet: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut edge = Vec::new();
    let mut node = Vec::new();
    for c in 1..=3 {
        edge.push((format!("H{c}"), format!("T{c}")));
        if both_directions {
            edge.push((format!("T{c}"), format!("H{c}")));
        }
        for d in 1..=3 {
            if c != d {
                node.push((format!("T{c}"), format!("H{d}")));
                if both_directions {
                    node.push((format!("H{c}"), format!("T{d}")));
                }
            }
        }
    }
    let e: Vec<(&str, &str)> = edge.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let v: Vec<(&str, &str)> = node.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    build(&alphabet, &e, &v, None, None)
}

/// F: consistent orientation together with an edge 3-coloring.
pub fn oriented_three_coloring() -> LclProblem {
    colored_orientation(true)
}

/// G: positive orientation together with an edge 3-coloring.
pub fn positive_three_coloring() -> LclProblem {
    colored_orientation(false)
}

/// H: edge 2-coloring.
pub fn edge_two_coloring() -> LclProblem {
    build(
        &["1", "2"],
        &[("1", "1"), ("2", "2")],
        &[("1", "2"), ("2", "1")],
        None,
        None,
    )
}

/// I: positive orientation together with an edge 2-coloring.
pub fn positive_two_coloring() -> LclProblem {
    build(
        &["H1", "H2", "T1", "T2"],
        &[("H1", "T1"), ("H2", "T2")],
        &[("T1", "H2"), ("T2", "H1")],
        None,
        None,
    )
}

/// J: only paths with one or two edges are solvable.
pub fn short_paths() -> LclProblem {
    build(
        &["e", "m"],
        &[("e", "m"), ("m", "e"), ("e", "e")],
        &[("m", "m")],
        Some(&["e"]),
        Some(&["e"]),
    )
}

/// K: directed variant of J.
pub fn short_directed_paths() -> LclProblem {
    build(
        &["e", "m", "f"],
        &[("e", "m"), ("m", "f"), ("e", "f")],
        &[("m", "m")],
        Some(&["e"]),
        Some(&["f"]),
    )
}

/// Maximal matching: M marks a matched port, 1 an unmatched port of a matched
/// node, 0 a port of an unmatched node.
pub fn maximal_matching() -> LclProblem {
    build(
        &["0", "1", "M"],
        &[("M", "M"), ("1", "0"), ("0", "1"), ("1", "1")],
        &[("M", "1"), ("1", "M"), ("0", "0")],
        Some(&["0", "M"]),
        Some(&["0", "M"]),
    )
}

/// Edge 2-coloring whose path endpoints must use the given colors.
pub fn forced_endpoints(colors: &[&str]) -> LclProblem {
    build(
        &["1", "2"],
        &[("1", "1"), ("2", "2")],
        &[("1", "2"), ("2", "1")],
        Some(colors),
        Some(colors),
    )
}

/// Vertex c-coloring of a rooted tree as an edge-checkable problem.
pub fn tree_coloring(colors: usize) -> LclProblem {
    let labels: Vec<String> = (1..=colors).map(|c| c.to_string()).collect();
    let pairs: Vec<(usize, usize)> = (0..colors)
        .flat_map(|a| (0..colors).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    LclProblem::edge_checkable(labels, &pairs).expect("valid")
}

/// The eleven type representatives in order A through K.
pub fn types() -> Vec<(&'static str, LclProblem)> {
    vec![
        ("A", fragment_orientation()),
        ("B", orientation_or_three_coloring()),
        ("C", consistent_orientation()),
        ("D", positive_orientation()),
        ("E", edge_three_coloring()),
        ("F", oriented_three_coloring()),
        ("G", positive_three_coloring()),
        ("H", edge_two_coloring()),
        ("I", positive_two_coloring()),
        ("J", short_paths()),
        ("K", short_directed_paths()),
    ]
}
