//! Command-line front end. Reports are JSON documents on stdout; diagnostics go to stderr.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::automaton::{Automaton, Topology};
use crate::classifier::{classify_with, Classification, ClassifyOptions, CountClass, DEFAULT_SUBSET_BUDGET};
use crate::instance::{Instance, InstanceDoc, Labeling, LabelingDoc};
use crate::model::{parse_problem, LclProblem};
use crate::normalizer::{self, NormalizeError, StandardLcl};
use crate::oracle::{self, solvable_lengths};
use crate::properties::PropertyError;
use crate::runtime::{run_local, synthesize, RuntimeError};
use crate::verifier::{verify, VerifyError};

pub const BUDGET_ENV: &str = "LCLKIT_SUBSET_BUDGET";

pub mod exit {
    pub const OK: i32 = 0;
    pub const VIOLATIONS: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const UNSOLVABLE: i32 = 3;
    pub const BUDGET: i32 = 4;
}

#[derive(Parser, Debug)]
#[command(name = "lclkit", version, about = "Classify LCL problems on paths, cycles and rooted trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TopologyArg {
    Path,
    Cycle,
    Tree,
}

impl From<TopologyArg> for Topology {
    fn from(t: TopologyArg) -> Topology {
        match t {
            TopologyArg::Path => Topology::Path,
            TopologyArg::Cycle => Topology::Cycle,
            TopologyArg::Tree => Topology::RootedTree,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DotView {
    Full,
    Pruned,
    Core,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Type, complexities and solvability classes of a problem.
    Classify {
        problem: PathBuf,
        /// Cross-check the solvability verdicts against the oracle up to this length.
        #[arg(long)]
        check: Option<usize>,
    },
    /// Synthesize a LOCAL algorithm, run it on an instance and verify the output.
    Solve {
        problem: PathBuf,
        #[arg(long, value_enum)]
        topology: Option<TopologyArg>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, conflicts_with = "directed")]
        undirected: bool,
        #[arg(long)]
        directed: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Rooted tree instance document.
        #[arg(long)]
        tree: Option<PathBuf>,
        /// Any instance document.
        #[arg(long, conflicts_with = "tree")]
        instance: Option<PathBuf>,
        /// Write the labeling here instead of embedding it in the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force solvable lengths, or an exact solution on one instance.
    Oracle {
        problem: PathBuf,
        #[arg(long, default_value_t = 50)]
        max_n: usize,
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Check a labeling against a problem on an instance.
    Verify {
        problem: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
    },
    /// Turn a standard-form LCL (allowed views) into a node-edge-checkable problem.
    Normalize {
        standard: PathBuf,
        /// Also make the problem unsolvable on cycles shorter than 2r+2.
        #[arg(long)]
        guard_short_cycles: bool,
    },
    /// Graphviz rendering of the problem automaton.
    ExportDot {
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "pruned")]
        view: DotView,
    },
}

/// Error carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: exit::INPUT,
            message: message.to_string(),
        }
    }
}

/// What a command produced: a document for stdout and the exit code.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_problem(path: &Path) -> Result<LclProblem, Failure> {
    parse_problem(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    let doc: InstanceDoc =
        serde_json::from_str(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    doc.build().map_err(Failure::input)
}

fn subset_budget() -> usize {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SUBSET_BUDGET)
}

fn pretty(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

/// FNV-1a of the canonical problem document.
fn fingerprint(p: &LclProblem) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in p.to_json().bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn digest(p: &LclProblem) -> Value {
    json!({
        "fingerprint": fingerprint(p),
        "alphabet_size": p.alphabet_size(),
        "edge_pairs": p.edge().len(),
        "node_pairs": p.node().len(),
        "symmetric": p.is_symmetric(),
        "edge_checkable": p.is_edge_checkable(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadrantCheck {
    pub quadrant: &'static str,
    pub classifier: String,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleCheck {
    pub producer: &'static str,
    pub max_n: usize,
    pub agrees: bool,
    pub quadrants: Vec<QuadrantCheck>,
}

/// Compares the four solvability verdicts with brute-force lengths `1..=max_n`.
pub fn oracle_check(p: &LclProblem, c: &Classification, max_n: usize) -> OracleCheck {
    let cyc = solvable_lengths(p, Topology::Cycle, max_n).solvable;
    let path = solvable_lengths(p, Topology::Path, max_n).solvable;
    let complement = |v: &[bool]| -> Vec<bool> { v.iter().enumerate().map(|(i, &b)| i > 0 && !b).collect() };
    let s = &c.solvability;
    let rows: [(&'static str, &CountClass, Vec<bool>); 4] = [
        ("solvable_cycles", &s.solvable_cycles, cyc.clone()),
        ("unsolvable_cycles", &s.unsolvable_cycles, complement(&cyc)),
        ("solvable_paths", &s.solvable_paths, path.clone()),
        ("unsolvable_paths", &s.unsolvable_paths, complement(&path)),
    ];
    let quadrants: Vec<QuadrantCheck> = rows
        .into_iter()
        .map(|(quadrant, class, counted)| QuadrantCheck {
            quadrant,
            classifier: class.label().to_string(),
            agrees: class.consistent_with(&counted),
        })
        .collect();
    OracleCheck {
        producer: "oracle",
        max_n,
        agrees: quadrants.iter().all(|q| q.agrees),
        quadrants,
    }
}

fn has_undetermined(c: &Classification) -> bool {
    let s = &c.solvability;
    [&s.solvable_cycles, &s.unsolvable_cycles, &s.solvable_paths, &s.unsolvable_paths]
        .iter()
        .any(|x| matches!(x, CountClass::Undetermined { .. }))
}

fn classify_problem(p: &LclProblem) -> Result<Classification, Failure> {
    let opts = ClassifyOptions {
        subset_budget: subset_budget(),
    };
    classify_with(p, &opts).map_err(|e| Failure {
        code: match e {
            PropertyError::ScanBoundExceeded { .. } => exit::BUDGET,
            PropertyError::AsymmetricProblem => exit::INPUT,
        },
        message: e.to_string(),
    })
}

fn cmd_classify(problem: &Path, check: Option<usize>) -> Result<Outcome, Failure> {
    let p = load_problem(problem)?;
    let c = classify_problem(&p)?;
    let check = check.map(|n| oracle_check(&p, &c, n));
    let mut code = if has_undetermined(&c) { exit::BUDGET } else { exit::OK };
    if check.as_ref().is_some_and(|k| !k.agrees) {
        code = exit::VIOLATIONS;
    }
    let mut report = json!({
        "problem": digest(&p),
        "classification": { "producer": "classifier", "result": c },
    });
    if let Some(k) = check {
        report["oracle_check"] = serde_json::to_value(k).expect("serializes");
    }
    Ok(Outcome {
        output: pretty(&report),
        code,
    })
}

fn runtime_failure(e: RuntimeError) -> Failure {
    let code = match e {
        RuntimeError::Unsolvable | RuntimeError::UnsolvableEnds => exit::UNSOLVABLE,
        _ => exit::INPUT,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    problem: &Path,
    topology: Option<TopologyArg>,
    n: Option<usize>,
    undirected: bool,
    seed: u64,
    tree: Option<&Path>,
    instance: Option<&Path>,
    out: Option<&Path>,
) -> Result<Outcome, Failure> {
    let p = load_problem(problem)?;
    let inst = match (tree.or(instance), topology) {
        (Some(path), _) => load_instance(path)?,
        (None, Some(t)) => {
            let n = n.ok_or_else(|| Failure::input("--n is required with --topology"))?;
            let t: Topology = t.into();
            if t == Topology::RootedTree && undirected {
                return Err(Failure::input("rooted trees are always directed"));
            }
            Instance::random(t, n, !undirected, seed).map_err(Failure::input)?
        }
        (None, None) => return Err(Failure::input("give --topology and --n, --tree or --instance")),
    };
    let c = classify_problem(&p)?;
    let plan = synthesize(&p, &c, inst.topology, inst.directed).map_err(runtime_failure)?;
    let (lab, trace) = run_local(&inst, &plan, &p).map_err(runtime_failure)?;
    let check = verify(&p, &inst, &lab);
    let violations = match &check {
        Ok(()) => Vec::new(),
        Err(VerifyError::Violations(v)) => v.clone(),
        Err(e) => return Err(Failure::input(e)),
    };
    let mut report = json!({
        "problem": digest(&p),
        "instance": { "topology": inst.topology, "n": inst.n(), "directed": inst.directed },
        "plan": { "producer": "synthesizer", "result": plan },
        "trace": { "producer": "simulator", "result": trace },
        "verification": { "producer": "verifier", "ok": violations.is_empty(), "violations": violations },
    });
    let doc = lab.to_doc(&p);
    match out {
        Some(path) => fs::write(path, pretty(&doc)).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => report["labeling"] = serde_json::to_value(doc).expect("serializes"),
    }
    Ok(Outcome {
        output: pretty(&report),
        code: if check.is_ok() { exit::OK } else { exit::VIOLATIONS },
    })
}

fn cmd_oracle(problem: &Path, max_n: usize, instance: Option<&Path>) -> Result<Outcome, Failure> {
    let p = load_problem(problem)?;
    if let Some(path) = instance {
        let inst = load_instance(path)?;
        let sol = oracle::solve_exact(&p, &inst).map_err(Failure::input)?;
        let code = if sol.is_some() { exit::OK } else { exit::UNSOLVABLE };
        let report = json!({
            "problem": digest(&p),
            "producer": "oracle",
            "solvable": sol.is_some(),
            "labeling": sol.map(|l| l.to_doc(&p)),
        });
        return Ok(Outcome {
            output: pretty(&report),
            code,
        });
    }
    let lengths = |t| {
        let s = solvable_lengths(&p, t, max_n);
        json!({ "solvable": s.solvable_list(), "unsolvable": s.unsolvable() })
    };
    let report = json!({
        "problem": digest(&p),
        "producer": "oracle",
        "max_n": max_n,
        "cycles": lengths(Topology::Cycle),
        "paths_by_edges": lengths(Topology::Path),
    });
    Ok(Outcome {
        output: pretty(&report),
        code: exit::OK,
    })
}

fn cmd_verify(problem: &Path, instance: &Path, labeling: &Path) -> Result<Outcome, Failure> {
    let p = load_problem(problem)?;
    let inst = load_instance(instance)?;
    let doc: LabelingDoc =
        serde_json::from_str(&read(labeling)?).map_err(|e| Failure::input(format!("{}: {e}", labeling.display())))?;
    let lab = Labeling::from_doc(&doc, &p).map_err(Failure::input)?;
    let (ok, violations) = match verify(&p, &inst, &lab) {
        Ok(()) => (true, Vec::new()),
        Err(VerifyError::Violations(v)) => (false, v),
        Err(e) => return Err(Failure::input(e)),
    };
    let report = json!({
        "problem": digest(&p),
        "verification": { "producer": "verifier", "ok": ok, "violations": violations },
    });
    Ok(Outcome {
        output: pretty(&report),
        code: if ok { exit::OK } else { exit::VIOLATIONS },
    })
}

fn normalize_failure(e: NormalizeError) -> Failure {
    Failure {
        code: match e {
            NormalizeError::TooLarge { .. } | NormalizeError::Radius { .. } => exit::BUDGET,
            _ => exit::INPUT,
        },
        message: e.to_string(),
    }
}

fn cmd_normalize(standard: &Path, guard: bool) -> Result<Outcome, Failure> {
    let s = StandardLcl::parse(&read(standard)?).map_err(normalize_failure)?;
    let mut p = normalizer::normalize(&s).map_err(normalize_failure)?;
    if guard {
        p = normalizer::guard_short_cycles(&p, 2 * s.radius() + 2);
    } else {
        eprintln!(
            "note: cycle verdicts for this problem apply to lengths >= {}",
            2 * s.radius() + 2
        );
    }
    eprintln!("|Γ'| = {}", p.alphabet_size());
    Ok(Outcome {
        output: p.to_json(),
        code: exit::OK,
    })
}

fn cmd_export_dot(problem: &Path, view: DotView) -> Result<Outcome, Failure> {
    let p = load_problem(problem)?;
    let full = Automaton::build(&p);
    let a = match view {
        DotView::Full => full,
        DotView::Pruned => full.prune(),
        DotView::Core => full.cycle_core(),
    };
    Ok(Outcome {
        output: a.to_dot(&p),
        code: exit::OK,
    })
}

pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Classify { problem, check } => cmd_classify(problem, *check),
        Command::Solve {
            problem,
            topology,
            n,
            undirected,
            directed: _,
            seed,
            tree,
            instance,
            out,
        } => cmd_solve(
            problem,
            *topology,
            *n,
            *undirected,
            *seed,
            tree.as_deref(),
            instance.as_deref(),
            out.as_deref(),
        ),
        Command::Oracle {
            problem,
            max_n,
            instance,
        } => cmd_oracle(problem, *max_n, instance.as_deref()),
        Command::Verify {
            problem,
            instance,
            labeling,
        } => cmd_verify(problem, instance, labeling),
        Command::Normalize {
            standard,
            guard_short_cycles,
        } => cmd_normalize(standard, *guard_short_cycles),
        Command::ExportDot { problem, view } => cmd_export_dot(problem, *view),
    }
}

/// Parses arguments, runs, prints, and returns the exit code.
pub fn run(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            use std::io::Write;
            // a closed pipe is not an error for a report
            let _ = writeln!(std::io::stdout().lock(), "{}", out.output);
            out.code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
