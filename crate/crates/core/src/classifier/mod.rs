//! Type assignment (A–K) and the per-quadrant solvability and complexity verdicts.

pub mod nfa;

use serde::Serialize;

use crate::automaton::Automaton;
use crate::model::LclProblem;
use crate::oracle::{cycle_lengths, path_lengths, progression_base};
use crate::properties::{analyze, PropertyError, PropertyReport};
use nfa::{chrobak_test_from, eventual_periodicity, to_standard_nfa, ChrobakAnswer, Periodicity};

pub use nfa::DEFAULT_SUBSET_BUDGET;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ProblemType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    #[serde(rename = "DEGENERATE")]
    Degenerate,
}

impl ProblemType {
    pub fn name(self) -> &'static str {
        match self {
            ProblemType::A => "A",
            ProblemType::B => "B",
            ProblemType::C => "C",
            ProblemType::D => "D",
            ProblemType::E => "E",
            ProblemType::F => "F",
            ProblemType::G => "G",
            ProblemType::H => "H",
            ProblemType::I => "I",
            ProblemType::J => "J",
            ProblemType::K => "K",
            ProblemType::Degenerate => "DEGENERATE",
        }
    }
}

/// How many lengths fall in a quadrant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum CountClass {
    Zero,
    /// Every counted length is below `below`; `witnesses` lists them exactly when known.
    Finite {
        below: u64,
        #[serde(skip_serializing_if = "Option::is_none")]
        witnesses: Option<Vec<u64>>,
    },
    /// Every length ℓ ≥ `from` with (no period, or ℓ mod period ∈ residues) is counted.
    Infinite {
        #[serde(skip_serializing_if = "Option::is_none")]
        from: Option<u64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        period: Option<u64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        residues: Option<Vec<u64>>,
    },
    Undetermined { tested_up_to: u64 },
}

impl CountClass {
    fn infinite_from(from: usize) -> Self {
        CountClass::Infinite {
            from: Some(from as u64),
            period: None,
            residues: None,
        }
    }

    fn finite(below: usize, witnesses: Vec<usize>) -> Self {
        if witnesses.is_empty() {
            CountClass::Zero
        } else {
            CountClass::Finite {
                below: below as u64,
                witnesses: Some(witnesses.into_iter().map(|w| w as u64).collect()),
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CountClass::Zero => "0",
            CountClass::Finite { .. } => "finite",
            CountClass::Infinite { .. } => "infinite",
            CountClass::Undetermined { .. } => "undetermined",
        }
    }

    /// Whether `counted[1..]` (a finite prefix of the truth) is consistent with this verdict.
    pub fn consistent_with(&self, counted: &[bool]) -> bool {
        let max = counted.len().saturating_sub(1);
        let hits: Vec<usize> = (1..=max).filter(|&n| counted[n]).collect();
        match self {
            CountClass::Zero => hits.is_empty(),
            CountClass::Finite { below, witnesses } => {
                let under = hits.iter().all(|&n| (n as u64) < *below);
                let exact = match witnesses {
                    Some(w) => {
                        let listed: Vec<usize> = w
                            .iter()
                            .map(|&x| x as usize)
                            .filter(|&x| x <= max)
                            .collect();
                        listed == hits
                    }
                    None => true,
                };
                under && exact && !hits.is_empty()
            }
            CountClass::Infinite {
                from,
                period,
                residues,
            } => {
                let Some(from) = from else { return true };
                (*from as usize..=max).all(|n| {
                    let member = match (period, residues) {
                        (Some(p), Some(r)) => r.contains(&(n as u64 % p)),
                        _ => true,
                    };
                    !member || counted[n]
                })
            }
            CountClass::Undetermined { .. } => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvabilityVerdict {
    pub solvable_cycles: CountClass,
    pub solvable_paths: CountClass,
    pub unsolvable_cycles: CountClass,
    pub unsolvable_paths: CountClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Complexity {
    #[serde(rename = "O(1)")]
    Constant,
    #[serde(rename = "Θ(log* n)")]
    LogStar,
    #[serde(rename = "Θ(n)")]
    Linear,
    #[serde(rename = "not applicable")]
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityVerdict {
    pub directed_cycles: Complexity,
    pub directed_paths: Complexity,
    pub undirected_cycles: Complexity,
    pub undirected_paths: Complexity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub state: String,
    pub index: usize,
    pub flexibility: Option<usize>,
    pub mirror_flexibility: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomatonStats {
    pub states: usize,
    pub transitions: usize,
    pub pruned_states: usize,
    pub cycle_states: usize,
    pub sccs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    #[serde(rename = "type")]
    pub problem_type: ProblemType,
    pub path_type: ProblemType,
    pub cycle_type: ProblemType,
    pub symmetric: bool,
    pub solvability: SolvabilityVerdict,
    pub complexity: ComplexityVerdict,
    pub path_witness: Option<Witness>,
    pub cycle_witness: Option<Witness>,
    pub path_properties: PropertyReport,
    pub cycle_properties: PropertyReport,
    pub automaton_stats: AutomatonStats,
    pub notes: Vec<String>,
}

/// The type ladder over one property report.
pub fn type_of(r: &PropertyReport, empty: bool, symmetric: bool) -> ProblemType {
    use ProblemType::*;
    let pick = |s, a| if symmetric { s } else { a };
    if empty {
        Degenerate
    } else if !r.has_repeatable {
        pick(J, K)
    } else if !r.has_flexible {
        pick(H, I)
    } else if !r.has_loop {
        if r.has_mirror_flexible {
            E
        } else {
            pick(F, G)
        }
    } else if r.has_mirror_flexible_loop {
        A
    } else if r.has_mirror_flexible {
        B
    } else {
        pick(C, D)
    }
}

/// Table row for (directed, undirected) on cycles or on paths; undirected
/// entries need a symmetric problem.
fn complexity_row(t: ProblemType, symmetric: bool) -> (Complexity, Complexity) {
    use Complexity::*;
    use ProblemType::*;
    let sym = |c| if symmetric { c } else { NotApplicable };
    match t {
        A => (Constant, Constant),
        B => (Constant, LogStar),
        C | D => (Constant, sym(Linear)),
        E => (LogStar, LogStar),
        F | G => (LogStar, sym(Linear)),
        H | I => (Linear, sym(Linear)),
        J | K | Degenerate => (Constant, sym(Constant)),
    }
}

pub struct ClassifyOptions {
    pub subset_budget: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            subset_budget: DEFAULT_SUBSET_BUDGET,
        }
    }
}

pub fn classify(p: &LclProblem) -> Result<Classification, PropertyError> {
    classify_with(p, &ClassifyOptions::default())
}

pub fn classify_with(p: &LclProblem, opts: &ClassifyOptions) -> Result<Classification, PropertyError> {
    let symmetric = p.is_symmetric();
    let full = Automaton::build(p);
    let pruned = full.prune();
    let core = full.cycle_core();
    let name = |s| p.state_display(s);
    let path_props = analyze(&pruned, symmetric, name)?;
    let cycle_props = analyze(&core, symmetric, name)?;
    let path_type = type_of(&path_props, pruned.is_empty(), symmetric);
    let cycle_type = type_of(&cycle_props, core.is_empty(), symmetric);
    let problem_type = if path_type == ProblemType::Degenerate {
        cycle_type
    } else {
        path_type
    };
    let mut notes = Vec::new();

    let (dc, uc) = complexity_row(cycle_type, symmetric);
    let (dp, up) = complexity_row(path_type, symmetric);
    if matches!(path_type, ProblemType::J | ProblemType::K | ProblemType::Degenerate)
        || cycle_type == ProblemType::Degenerate
    {
        notes.push(
            "constant complexity for short-only or degenerate settings means every long instance is unsolvable and nodes detect it locally".into(),
        );
    }
    if matches!(path_type, ProblemType::H | ProblemType::I) {
        notes.push("unsolvable-paths verdict computed by subset construction".into());
    }

    let (solvable_cycles, unsolvable_cycles) = cycle_counts(&core, &cycle_props);
    let (solvable_paths, unsolvable_paths) =
        path_counts(&pruned, &path_props, path_type, opts.subset_budget);

    let witness = |r: &PropertyReport| -> Option<Witness> {
        let pick = r
            .states
            .iter()
            .filter(|s| s.mirror_flexibility.is_some())
            .min_by_key(|s| (!s.is_loop, s.mirror_flexibility, s.index))
            .or_else(|| {
                r.states
                    .iter()
                    .filter(|s| s.flexibility.is_some())
                    .min_by_key(|s| (s.flexibility, s.index))
            })
            .or_else(|| r.states.iter().find(|s| s.repeatable))?;
        Some(Witness {
            state: pick.state.clone(),
            index: pick.index,
            flexibility: pick.flexibility,
            mirror_flexibility: pick.mirror_flexibility,
        })
    };

    Ok(Classification {
        problem_type,
        path_type,
        cycle_type,
        symmetric,
        solvability: SolvabilityVerdict {
            solvable_cycles,
            solvable_paths,
            unsolvable_cycles,
            unsolvable_paths,
        },
        complexity: ComplexityVerdict {
            directed_cycles: dc,
            directed_paths: dp,
            undirected_cycles: uc,
            undirected_paths: up,
        },
        path_witness: witness(&path_props),
        cycle_witness: witness(&cycle_props),
        automaton_stats: AutomatonStats {
            states: full.len(),
            transitions: full.transition_count(),
            pruned_states: pruned.len(),
            cycle_states: core.len(),
            sccs: full.scc_count(),
        },
        path_properties: path_props,
        cycle_properties: cycle_props,
        notes,
    })
}

fn cycle_counts(core: &Automaton, r: &PropertyReport) -> (CountClass, CountClass) {
    if core.is_empty() {
        return (CountClass::Zero, CountClass::infinite_from(1));
    }
    if let Some((k, _)) = r.min_flexible() {
        let lens = cycle_lengths(core, k);
        let bad: Vec<usize> = (1..k).filter(|&n| !lens[n]).collect();
        return (CountClass::infinite_from(k), CountClass::finite(k, bad));
    }
    // repeatable but not flexible: multiples of a closed walk are solvable,
    // lengths kb+1 are not
    let q = r
        .states
        .iter()
        .filter(|s| s.repeatable)
        .min_by_key(|s| (s.shortest_closed_walk, s.index))
        .expect("non-empty cycle core has a repeatable state");
    let l0 = q.shortest_closed_walk as u64;
    let solvable = CountClass::Infinite {
        from: Some(l0),
        period: Some(l0),
        residues: Some(vec![0]),
    };
    let periods: Vec<usize> = r.states.iter().map(|s| s.gcd).collect();
    let unsolvable = match progression_base(&periods) {
        Some(b) => CountClass::Infinite {
            from: Some(1),
            period: Some(b as u64),
            residues: Some(vec![1 % b as u64]),
        },
        None => CountClass::Infinite {
            from: None,
            period: None,
            residues: None,
        },
    };
    (solvable, unsolvable)
}

/// Shortest number of states on a start ⤳ q ⤳ accept walk (0 if none).
fn through_length(a: &Automaton, q: usize) -> Option<usize> {
    let bfs = |seeds: Vec<usize>, forward: bool| {
        let mut dist = vec![usize::MAX; a.len()];
        let mut queue = std::collections::VecDeque::new();
        for s in seeds {
            dist[s] = 0;
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            let next = if forward { a.succ(u) } else { a.pred(u) };
            for &v in next {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    };
    let from_start = bfs((0..a.len()).filter(|&i| a.is_start(i)).collect(), true);
    let to_accept = bfs((0..a.len()).filter(|&i| a.is_accept(i)).collect(), false);
    (from_start[q] != usize::MAX && to_accept[q] != usize::MAX)
        .then(|| from_start[q] + to_accept[q] + 1)
}

fn path_counts(
    pruned: &Automaton,
    r: &PropertyReport,
    t: ProblemType,
    budget: usize,
) -> (CountClass, CountClass) {
    if pruned.is_empty() {
        return (CountClass::Zero, CountClass::infinite_from(1));
    }
    if !r.has_repeatable {
        let cap = pruned.len();
        let lens = path_lengths(pruned, cap);
        let ok: Vec<usize> = (1..=cap).filter(|&m| lens[m]).collect();
        return (CountClass::finite(cap + 1, ok), CountClass::infinite_from(cap + 1));
    }
    if r.has_flexible {
        let (threshold, _) = r
            .states
            .iter()
            .filter_map(|s| {
                let k = s.flexibility?;
                Some((through_length(pruned, s.index)? + k, s.index))
            })
            .min()
            .expect("pruned states lie on start-accept walks");
        let lens = path_lengths(pruned, threshold);
        let bad: Vec<usize> = (1..threshold).filter(|&m| !lens[m]).collect();
        return (
            CountClass::infinite_from(threshold),
            CountClass::finite(threshold, bad),
        );
    }
    debug_assert!(matches!(t, ProblemType::H | ProblemType::I));
    let (h, l0) = r
        .states
        .iter()
        .filter(|s| s.repeatable)
        .filter_map(|s| Some((through_length(pruned, s.index)?, s.shortest_closed_walk)))
        .min()
        .expect("repeatable state on a start-accept walk");
    let solvable = CountClass::Infinite {
        from: Some(h as u64),
        period: Some(l0 as u64),
        residues: Some(vec![(h % l0) as u64]),
    };
    (solvable, path_unsolvability_class(pruned, budget))
}

/// Exact class of unsolvable path lengths, within the subset budget.
pub fn path_unsolvability_class(a: &Automaton, budget: usize) -> CountClass {
    let nfa = to_standard_nfa(a);
    let chrobak = chrobak_test_from(&nfa, 1);
    match eventual_periodicity(&nfa, budget) {
        Periodicity::Periodic {
            preperiod,
            period,
            accepted,
        } => {
            let tail_rejects: Vec<u64> = (0..period)
                .filter(|&o| !accepted[preperiod + o])
                .map(|o| ((preperiod + o) % period) as u64)
                .collect();
            if !tail_rejects.is_empty() {
                let mut residues = tail_rejects;
                residues.sort_unstable();
                return CountClass::Infinite {
                    from: Some(preperiod.max(1) as u64),
                    period: Some(period as u64),
                    residues: Some(residues),
                };
            }
            let bad: Vec<usize> = (1..preperiod).filter(|&m| !accepted[m]).collect();
            debug_assert_eq!(bad.is_empty(), chrobak == ChrobakAnswer::Yes);
            CountClass::finite(preperiod, bad)
        }
        Periodicity::Undetermined { .. } => CountClass::Undetermined {
            tested_up_to: (nfa.len() * nfa.len()) as u64,
        },
    }
}
