//! Acceptance suite: one line per criterion, then a single assertion that
//! all of them passed.

mod common;

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spanlab::constructions::{
    build_complete, build_counterexample, build_cycle, build_path, build_random_regular,
    CounterexampleParams,
};
use spanlab::formats::{emit_graph6, parse_graph6};
use spanlab::graph::{Edge, Graph};
use spanlab::star::{max_min_star_size, validate_star_factor};
use spanlab::trees::{
    certificate_check, enumerate_spanning_trees, enumerate_spanning_trees_parallel,
    exists_tree_all_internal_at_least, max_min_internal_degree, random_spanning_tree, tree_profile,
    MinInternal,
};
use spanlab::{spanning_tree_count, SearchBudget, SearchOutcome};

use common::{
    brute_force_star_optimum, enumeration_mmid, random_connected_graphs,
    random_graphs_without_isolated,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn workers() -> usize {
    std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(8)
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure!(took <= limit, "took {took:?}, limit {limit:?}");
    Ok(took)
}

fn minimal_d2() -> Outcome {
    let start = Instant::now();
    let params = CounterexampleParams::new(2, 8).unwrap();
    let (g, labels) = build_counterexample(params);
    ensure!(g.vertex_count() == 8, "vertices {}", g.vertex_count());
    ensure!(g.edge_count() == 9, "edges {}", g.edge_count());
    ensure!(
        g.min_degree().unwrap() == 2,
        "min degree {:?}",
        g.min_degree()
    );

    let mut trees = 0u64;
    let mut failures = Vec::new();
    enumerate_spanning_trees(&g, |t| {
        trees += 1;
        let profile = tree_profile(&g, t).unwrap();
        let cert = certificate_check(&g, &labels, t).unwrap();
        if !profile.has_internal_of_degree(2) || !cert.passed() {
            failures.push(t.clone());
        }
        ControlFlow::Continue(())
    })
    .unwrap();
    ensure!(trees == 9, "enumerated {trees} trees");
    let det = spanning_tree_count(&g);
    ensure!(det.to_u64() == Some(9), "determinant count {det}");
    ensure!(
        failures.is_empty(),
        "trees failing profile/certificate: {failures:?}"
    );

    let mmid = max_min_internal_degree(&g, SearchBudget::unbounded()).unwrap();
    ensure!(mmid.value == MinInternal::Degree(2), "mmid {}", mmid.value);
    ensure!(mmid.exhaustive, "mmid not exhaustive");
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!(
        "9 trees, 9 certificates, mmid 2 exhaustive in {took:.2?}"
    ))
}

fn minimal_d3() -> Outcome {
    let start = Instant::now();
    let (g, labels) = build_counterexample(CounterexampleParams::new(3, 15).unwrap());
    let det = spanning_tree_count(&g);
    ensure!(det.to_u64() == Some(12288), "determinant count {det}");

    let with_three = AtomicU64::new(0);
    let cert_fail = AtomicU64::new(0);
    let stats = enumerate_spanning_trees_parallel(&g, workers(), |t| {
        let profile = tree_profile(&g, t).unwrap();
        if profile
            .internals
            .iter()
            .all(|&v| profile.tree_degree[v] >= 3)
        {
            with_three.fetch_add(1, Ordering::Relaxed);
        }
        if !certificate_check(&g, &labels, t).unwrap().passed() {
            cert_fail.fetch_add(1, Ordering::Relaxed);
        }
        ControlFlow::Continue(())
    })
    .unwrap();
    ensure!(
        stats.trees == 12288 && stats.completed,
        "enumerated {:?}",
        stats
    );
    ensure!(
        with_three.into_inner() == 0,
        "enumeration found a tree with all internal degrees >= 3"
    );
    ensure!(
        cert_fail.into_inner() == 0,
        "certificate failed on some tree"
    );

    let decision = exists_tree_all_internal_at_least(&g, 3, SearchBudget::unbounded()).unwrap();
    ensure!(
        matches!(decision, SearchOutcome::Infeasible),
        "decision solver returned {}",
        decision.verdict()
    );
    let took = within(Duration::from_secs(60), start)?;
    Ok(format!(
        "12288 trees, none HIST-3, all certificates pass in {took:.2?}"
    ))
}

fn minimal_d4() -> Outcome {
    let start = Instant::now();
    let (g, labels) = build_counterexample(CounterexampleParams::new(4, 24).unwrap());
    let det = spanning_tree_count(&g);
    let expected = 16u64 * 5u64.pow(12);
    ensure!(expected == 3_906_250_000, "closed form arithmetic");
    ensure!(det.to_u64() == Some(expected), "determinant count {det}");

    let decision =
        exists_tree_all_internal_at_least(&g, 3, SearchBudget::nodes(100_000_000)).unwrap();
    ensure!(
        matches!(decision, SearchOutcome::Infeasible),
        "decision solver returned {}",
        decision.verdict()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let samples = 200;
    for i in 0..samples {
        let t = random_spanning_tree(&g, &mut rng).unwrap();
        let cert = certificate_check(&g, &labels, &t).unwrap();
        ensure!(cert.passed(), "sample {i} failed certificate: {cert:?}");
    }
    let took = within(Duration::from_secs(120), start)?;
    Ok(format!(
        "count 16*5^12, HIST-3 refuted, {samples} sampled certificates in {took:.2?}"
    ))
}

fn mmid_matches_enumeration() -> Outcome {
    let graphs = random_connected_graphs(200, 1);
    for (i, g) in graphs.iter().enumerate() {
        let solver = max_min_internal_degree(g, SearchBudget::unbounded()).unwrap();
        let oracle = enumeration_mmid(g);
        ensure!(solver.exhaustive, "graph {i} not exhaustive");
        ensure!(
            solver.value == oracle,
            "graph {i} ({:?}): solver {} vs enumeration {}",
            g.edges(),
            solver.value,
            oracle
        );
        let witness = tree_profile(g, &solver.witness).unwrap();
        ensure!(
            witness.min_internal_degree == solver.value,
            "graph {i}: witness does not attain value"
        );
    }
    Ok(format!("{} random connected graphs agree", graphs.len()))
}

fn star_matches_partitions() -> Outcome {
    let graphs = random_graphs_without_isolated(200, 5000);
    for (i, g) in graphs.iter().enumerate() {
        let solver = max_min_star_size(g, SearchBudget::unbounded()).unwrap();
        let oracle = brute_force_star_optimum(g);
        ensure!(
            Some(solver.value) == oracle,
            "graph {i} ({:?}): solver {} vs partitions {:?}",
            g.edges(),
            solver.value,
            oracle
        );
        let check = validate_star_factor(g, &solver.witness);
        ensure!(
            check.valid && check.min_size == Some(solver.value),
            "graph {i}: witness {check:?}"
        );
    }
    let spot = [
        ("K4", build_complete(4), 3),
        ("C6", build_cycle(6).unwrap(), 2),
        (
            "cex(2,8)",
            build_counterexample(CounterexampleParams::new(2, 8).unwrap()).0,
            3,
        ),
    ];
    for (name, g, want) in spot {
        let got = max_min_star_size(&g, SearchBudget::unbounded())
            .unwrap()
            .value;
        ensure!(got == want, "{name}: {got}, expected {want}");
    }
    Ok(format!(
        "{} random graphs agree; K4=3, C6=2, cex(2,8)=3",
        graphs.len()
    ))
}

fn bridges_are_anchor_edges() -> Outcome {
    for d in 2..=5 {
        let (g, labels) = build_counterexample(CounterexampleParams::minimal(d).unwrap());
        let mut expected: BTreeSet<Edge> = labels.anchor_edges().into_iter().collect();
        if d == 2 {
            expected.insert(Edge::new(0, 1));
        }
        let bridges = g.find_bridges();
        ensure!(
            bridges == expected,
            "d={d}: bridges {bridges:?}, expected {expected:?}"
        );
        let oracle: BTreeSet<Edge> = common::brute_force_bridges(&g).into_iter().collect();
        ensure!(oracle == expected, "d={d}: deletion oracle disagrees");
    }
    Ok("d=2..5 bridge sets match".into())
}

fn graph6_round_trip() -> Outcome {
    let mut corpus: Vec<Graph> = Vec::new();
    for d in 2..=6 {
        let p = CounterexampleParams::minimal(d).unwrap();
        corpus.push(build_counterexample(p).0);
        corpus.push(build_counterexample(CounterexampleParams::new(d, p.n() + 5).unwrap()).0);
    }
    for m in 1..=12 {
        corpus.push(build_complete(m));
        corpus.push(build_path(m));
    }
    corpus.push(build_cycle(70).unwrap());
    corpus.push(build_random_regular(3, 100, 7).unwrap());
    corpus.extend(random_connected_graphs(50, 9000));
    for (i, g) in corpus.iter().enumerate() {
        let bytes = emit_graph6(g);
        let back = parse_graph6(&bytes).map_err(|e| format!("graph {i}: {e}"))?;
        ensure!(&back == g, "graph {i} did not round-trip");
    }
    let k4 = emit_graph6(&build_complete(4));
    ensure!(
        k4 == b"C~",
        "K4 encodes as {:?}",
        String::from_utf8_lossy(&k4)
    );
    Ok(format!("{} graphs round-trip; K4 = C~", corpus.len()))
}

fn complete_graphs_have_star_trees() -> Outcome {
    for m in 4..=7 {
        let g = build_complete(m);
        let r = max_min_internal_degree(&g, SearchBudget::unbounded()).unwrap();
        ensure!(
            r.value == MinInternal::Degree(m - 1),
            "K{m}: mmid {}",
            r.value
        );
        let degrees = r.witness.degrees(m);
        ensure!(
            degrees.contains(&(m - 1)),
            "K{m}: witness is not a star: {:?}",
            r.witness
        );
    }
    Ok("K4..K7 mmid m-1 with star witnesses".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("minimal counterexample d=2", minimal_d2),
        ("minimal counterexample d=3", minimal_d3),
        ("minimal counterexample d=4", minimal_d4),
        ("mmid solver vs enumeration", mmid_matches_enumeration),
        ("star solver vs partitions", star_matches_partitions),
        ("bridges are anchor edges", bridges_are_anchor_edges),
        ("graph6 round trip", graph6_round_trip),
        ("complete graphs", complete_graphs_have_star_trees),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("[{}] PASS {name}: {detail}", i + 1),
            Err(detail) => {
                println!("[{}] FAIL {name}: {detail}", i + 1);
                failed.push(*name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
