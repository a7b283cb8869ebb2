use std::io::Write;
use std::ops::ControlFlow;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::args::{GenerateArgs, ReportArgs, SolveArgs, SolverOptions, VerifyArgs};
use super::{input_err, sidecar_path, CliError, LoadedGraph, Report};
use crate::budget::{SearchBudget, SearchOutcome};
use crate::constructions::RoleLabels;
use crate::count::spanning_tree_count;
use crate::formats::{emit_dot, emit_graph6};
use crate::graph::Graph;
use crate::star::{
    max_min_star_size_parallel, star_size_bound, validate_star_factor, StarBoundParams, StarError,
};
use crate::trees::{
    certificate_check, enumerate_spanning_trees_parallel,
    exists_tree_all_internal_at_least_parallel, max_leaf_greedy, max_min_internal_degree_parallel,
    random_spanning_tree, tree_profile, SpanningTree, TreeError,
};

const CONFIRMED: &str = "CONFIRMED";
const REFUTED: &str = "REFUTED-FOR-THIS-GRAPH";
const INDETERMINATE: &str = "INDETERMINATE";

fn tree_err(e: TreeError) -> CliError {
    CliError::Input(e.to_string())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(
    report: Report,
    opts: &SolverOptions,
    start: Instant,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let mut report = report;
    if opts.timing {
        report.wall_time_seconds = Some(start.elapsed().as_secs_f64());
    }
    let text = report.to_json();
    match &opts.report {
        Some(path) => write_file(path, text.as_bytes()),
        None => out.write_all(text.as_bytes()).map_err(input_err),
    }
}

fn budget_json(budget: SearchBudget) -> Value {
    serde_json::to_value(budget).expect("budget is serializable")
}

pub fn generate(a: &GenerateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let LoadedGraph { graph, labels } = a.source.load()?;
    let mut g6 = emit_graph6(&graph);
    g6.push(b'\n');
    match &a.out {
        Some(path) => {
            write_file(path, &g6)?;
            if let Some(labels) = &labels {
                let text = serde_json::to_string_pretty(labels).expect("labels are serializable");
                write_file(&sidecar_path(path), format!("{text}\n").as_bytes())?;
            }
        }
        None => out.write_all(&g6).map_err(input_err)?,
    }
    if let Some(path) = &a.dot {
        write_file(path, emit_dot(&graph, labels.as_ref()).as_bytes())?;
    }
    Ok(())
}

#[derive(Default)]
struct CertificateTally {
    checked: AtomicU64,
    passed: AtomicU64,
    first_failure: Mutex<Option<Value>>,
}

impl CertificateTally {
    fn check(&self, g: &Graph, labels: &RoleLabels, t: &SpanningTree) {
        self.checked.fetch_add(1, Ordering::Relaxed);
        match certificate_check(g, labels, t) {
            Ok(r) if r.passed() => {
                self.passed.fetch_add(1, Ordering::Relaxed);
            }
            Ok(r) => {
                let mut slot = self.first_failure.lock().unwrap();
                slot.get_or_insert_with(|| json!({ "tree": t, "report": r }));
            }
            Err(e) => {
                let mut slot = self.first_failure.lock().unwrap();
                slot.get_or_insert_with(|| json!({ "tree": t, "error": e.to_string() }));
            }
        }
    }

    fn to_json(&self, sampled: bool) -> Value {
        json!({
            "trees_checked": self.checked.load(Ordering::Relaxed),
            "passed": self.passed.load(Ordering::Relaxed),
            "sampled": sampled,
            "first_failure": *self.first_failure.lock().unwrap(),
        })
    }

    fn all_passed(&self) -> bool {
        self.checked.load(Ordering::Relaxed) == self.passed.load(Ordering::Relaxed)
    }
}

pub fn verify(a: &VerifyArgs, echo: Vec<String>, out: &mut dyn Write) -> Result<(), CliError> {
    let start = Instant::now();
    let LoadedGraph { graph: g, labels } = a.source.load()?;
    if !g.is_connected() {
        return Err(CliError::Input("not connected".into()));
    }
    let budget = a.solver.budget()?;
    let workers = a.solver.workers.max(1);
    let count = spanning_tree_count(&g);
    let enumerate = count.to_u64().is_some_and(|c| c <= a.enum_threshold);
    let tally = CertificateTally::default();
    let mut problems = Vec::new();

    let enumeration = if enumerate {
        let with_degree_two = AtomicU64::new(0);
        // smallest tree (by edge list) lacking an internal degree-2 vertex
        let counterexample: Mutex<Option<SpanningTree>> = Mutex::new(None);
        let stats = enumerate_spanning_trees_parallel(&g, workers, |t| {
            let profile = tree_profile(&g, t).expect("enumerated trees are valid");
            if profile.has_internal_of_degree(2) {
                with_degree_two.fetch_add(1, Ordering::Relaxed);
            } else {
                let mut slot = counterexample.lock().unwrap();
                if slot.as_ref().is_none_or(|s| t.edges() < s.edges()) {
                    *slot = Some(t.clone());
                }
            }
            if let Some(labels) = &labels {
                tally.check(&g, labels, t);
            }
            ControlFlow::Continue(())
        })
        .map_err(tree_err)?;
        let trees = stats.trees;
        let with_two = with_degree_two.into_inner();
        if count.to_u64() != Some(trees) {
            problems.push(format!(
                "enumerated {trees} trees but the determinant gives {count}"
            ));
        }
        Some((trees, with_two, counterexample.into_inner().unwrap()))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(a.source.seed);
        if let Some(labels) = &labels {
            for _ in 0..a.samples {
                let t = random_spanning_tree(&g, &mut rng).map_err(tree_err)?;
                tally.check(&g, labels, &t);
            }
        }
        None
    };

    let decision =
        exists_tree_all_internal_at_least_parallel(&g, 3, budget, workers).map_err(tree_err)?;

    let verdict = match (&enumeration, &decision) {
        (Some((trees, with_two, _)), _) => {
            if trees == with_two {
                CONFIRMED
            } else {
                REFUTED
            }
        }
        (None, SearchOutcome::Infeasible) => CONFIRMED,
        (None, SearchOutcome::Found(_)) => REFUTED,
        (None, SearchOutcome::Indeterminate) => INDETERMINATE,
    };
    let decision_verdict = match &decision {
        SearchOutcome::Found(_) => REFUTED,
        SearchOutcome::Infeasible => CONFIRMED,
        SearchOutcome::Indeterminate => INDETERMINATE,
    };
    if decision_verdict != INDETERMINATE && decision_verdict != verdict {
        problems.push(format!(
            "enumeration says {verdict}, decision solver says {decision_verdict}"
        ));
    }
    if labels.is_some() && !tally.all_passed() {
        problems.push("certificate check failed on a counterexample graph".into());
    }
    if labels.is_some() && verdict == REFUTED {
        problems.push("labeled counterexample graph has a tree without internal degree 2".into());
    }

    let witness = match (&decision, &enumeration) {
        (SearchOutcome::Found(t), _) => Some(t.clone()),
        (_, Some((_, _, t))) => t.clone(),
        _ => None,
    };
    let results = json!({
        "question": "does every spanning tree have an internal vertex of degree 2",
        "spanning_tree_count": count,
        "method": if enumerate { "enumeration+decision" } else { "decision" },
        "enumeration": enumeration.as_ref().map(|(trees, with_two, _)| json!({
            "trees": trees.to_string(),
            "trees_with_internal_degree_2": with_two.to_string(),
        })),
        "decision": {
            "k": 3,
            "exists_tree_all_internal_at_least_k": decision.verdict(),
            "exhaustive": !matches!(decision, SearchOutcome::Indeterminate),
            "budget": budget_json(budget),
        },
        "certificate": labels.as_ref().map(|_| tally.to_json(!enumerate)),
        "methods_agree": problems.is_empty(),
        "witness_tree_without_degree_2": witness,
        "verdict": verdict,
    });
    let report = Report::new(&g, echo, results, verdict == INDETERMINATE);
    emit(report, &a.solver, start, out)?;
    if problems.is_empty() {
        Ok(())
    } else {
        Err(CliError::Inconsistency(problems.join("; ")))
    }
}

fn star_bound_json(g: &Graph, c: f64) -> Result<Value, CliError> {
    let min_degree = g.min_degree().unwrap_or(0);
    if min_degree < 2 {
        return Ok(Value::Null);
    }
    let params = StarBoundParams::new(c, min_degree as u64).map_err(input_err)?;
    Ok(json!({
        "c": c,
        "d": min_degree,
        "log": "natural",
        "formula": "c * (d / ln d)^(1/3)",
        "value": star_size_bound(params),
    }))
}

fn mmid_json(g: &Graph, budget: SearchBudget, workers: usize) -> Result<(Value, bool), CliError> {
    let r = max_min_internal_degree_parallel(g, budget, workers).map_err(tree_err)?;
    let json = json!({
        "value": r.value,
        "exhaustive": r.exhaustive,
        "witness": r.witness,
        "nodes": r.nodes,
        "budget": budget_json(budget),
    });
    Ok((json, !r.exhaustive))
}

fn star_json(
    g: &Graph,
    budget: SearchBudget,
    workers: usize,
    c: f64,
) -> Result<(Value, bool), CliError> {
    let r = max_min_star_size_parallel(g, budget, workers).map_err(input_err)?;
    let check = validate_star_factor(g, &r.witness);
    if !check.valid || check.min_size != Some(r.value) {
        return Err(CliError::Inconsistency(format!(
            "star witness failed validation: {check:?}"
        )));
    }
    let json = json!({
        "value": r.value,
        "exhaustive": r.exhaustive,
        "witness": r.witness,
        "nodes": r.nodes,
        "budget": budget_json(budget),
        "bound": star_bound_json(g, c)?,
    });
    Ok((json, !r.exhaustive))
}

fn maxleaf_json(g: &Graph) -> Result<Value, CliError> {
    let r = max_leaf_greedy(g).map_err(tree_err)?;
    let n = g.vertex_count();
    Ok(json!({
        "leaves": r.leaves,
        "vertices": n,
        "leaf_fraction": if n == 0 { 0.0 } else { r.leaves as f64 / n as f64 },
        "tree": r.tree,
    }))
}

pub fn solve(a: &SolveArgs, echo: Vec<String>, out: &mut dyn Write) -> Result<(), CliError> {
    let start = Instant::now();
    let g = a.source.load()?.graph;
    let budget = a.solver.budget()?;
    let workers = a.solver.workers.max(1);
    let (mode, (mut results, indeterminate)) = if a.count {
        (
            "count",
            (
                json!({ "spanning_tree_count": spanning_tree_count(&g) }),
                false,
            ),
        )
    } else if a.mmid {
        ("mmid", mmid_json(&g, budget, workers)?)
    } else if a.starfactor {
        ("starfactor", star_json(&g, budget, workers, a.c)?)
    } else if a.maxleaf {
        ("maxleaf", (maxleaf_json(&g)?, false))
    } else if let Some(k) = a.decide {
        let outcome =
            exists_tree_all_internal_at_least_parallel(&g, k, budget, workers).map_err(tree_err)?;
        let indeterminate = matches!(outcome, SearchOutcome::Indeterminate);
        let witness = match outcome {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        };
        let verdict = if indeterminate {
            "indeterminate"
        } else if witness.is_some() {
            "true"
        } else {
            "false"
        };
        let json = json!({
            "k": k,
            "exists_tree_all_internal_at_least_k": verdict,
            "exhaustive": !indeterminate,
            "witness": witness,
            "budget": budget_json(budget),
        });
        ("decide", (json, indeterminate))
    } else {
        return Err(CliError::Usage("choose a solver".into()));
    };
    results["mode"] = json!(mode);
    emit(
        Report::new(&g, echo, results, indeterminate),
        &a.solver,
        start,
        out,
    )
}

pub fn report(a: &ReportArgs, echo: Vec<String>, out: &mut dyn Write) -> Result<(), CliError> {
    let start = Instant::now();
    let g = a.source.load()?.graph;
    let budget = a.solver.budget()?;
    let workers = a.solver.workers.max(1);
    let connected = g.is_connected();
    let mut indeterminate = false;

    let (mmid, maxleaf) = if connected {
        let (m, ind) = mmid_json(&g, budget, workers)?;
        indeterminate |= ind;
        (m, maxleaf_json(&g)?)
    } else {
        (Value::Null, Value::Null)
    };
    let star = match star_json(&g, budget, workers, a.c) {
        Ok((s, ind)) => {
            indeterminate |= ind;
            s
        }
        Err(CliError::Input(msg))
            if msg == StarError::EmptyGraph.to_string()
                || msg.starts_with("no star factor exists") =>
        {
            json!({ "error": msg })
        }
        Err(e) => return Err(e),
    };
    let bridges: Vec<_> = g.find_bridges().into_iter().collect();
    let results = json!({
        "connected": connected,
        "min_degree": g.min_degree().ok(),
        "max_degree": g.max_degree().ok(),
        "bridges": bridges,
        "spanning_tree_count": spanning_tree_count(&g),
        "mmid": mmid,
        "starfactor": star,
        "maxleaf": maxleaf,
    });
    emit(
        Report::new(&g, echo, results, indeterminate),
        &a.solver,
        start,
        out,
    )
}
