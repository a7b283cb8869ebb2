//! Command-line front end. Every command that computes something prints a
//! JSON report; exit codes are 0 (success, including indeterminate
//! results), 1 (usage), 2 (invalid input), 3 (internal inconsistency).

mod args;
mod commands;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

pub use args::{Cli, Command};
pub use report::Report;

use crate::budget::SearchBudget;
use crate::constructions::{
    build_complete, build_counterexample, build_cycle, build_path, build_random_regular,
    build_star, CounterexampleParams, RoleLabels,
};
use crate::formats::parse_graph6;
use crate::graph::Graph;
use args::{GraphSource, SolverOptions};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("INTERNAL INCONSISTENCY: {0}")]
    Inconsistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Inconsistency(_) => 3,
        }
    }
}

pub(crate) fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// A resolved graph with its role labels, if known.
pub(crate) struct LoadedGraph {
    pub graph: Graph,
    pub labels: Option<RoleLabels>,
}

impl GraphSource {
    fn count_sources(&self) -> usize {
        [
            self.counterexample,
            self.random_regular,
            self.complete.is_some(),
            self.path.is_some(),
            self.cycle.is_some(),
            self.star.is_some(),
            self.input.is_some(),
        ]
        .into_iter()
        .filter(|&b| b)
        .count()
    }

    pub(crate) fn load(&self) -> Result<LoadedGraph, CliError> {
        match self.count_sources() {
            0 => return Err(CliError::Usage("no graph source given".into())),
            1 => {}
            _ => return Err(CliError::Usage("give exactly one graph source".into())),
        }
        let plain = |graph| LoadedGraph {
            graph,
            labels: None,
        };
        if self.counterexample {
            let (d, n) = match (self.d, self.n) {
                (Some(d), Some(n)) => (d, n),
                _ => return Err(CliError::Usage("--counterexample needs --d and --n".into())),
            };
            let params = CounterexampleParams::new(d, n).map_err(input_err)?;
            let (graph, labels) = build_counterexample(params);
            return Ok(LoadedGraph {
                graph,
                labels: Some(labels),
            });
        }
        if self.random_regular {
            let (d, m) = match (self.d, self.m) {
                (Some(d), Some(m)) => (d, m),
                _ => return Err(CliError::Usage("--random-regular needs --d and --m".into())),
            };
            return build_random_regular(d, m, self.seed)
                .map(plain)
                .map_err(input_err);
        }
        if let Some(m) = self.complete {
            return Ok(plain(build_complete(m)));
        }
        if let Some(m) = self.path {
            return Ok(plain(build_path(m)));
        }
        if let Some(m) = self.cycle {
            return build_cycle(m).map(plain).map_err(input_err);
        }
        if let Some(m) = self.star {
            return Ok(plain(build_star(m)));
        }
        let path = self.input.as_ref().expect("one source is set");
        let bytes =
            std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let first = bytes.split(|&b| b == b'\n').next().unwrap_or_default();
        let graph =
            parse_graph6(first).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let labels_path = match &self.labels {
            Some(p) => Some(p.clone()),
            None => Some(sidecar_path(path)).filter(|p| p.exists()),
        };
        let labels = match labels_path {
            Some(p) => {
                let text = std::fs::read_to_string(&p)
                    .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
                let labels: RoleLabels = serde_json::from_str(&text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
                labels.validate_against(&graph).map_err(input_err)?;
                Some(labels)
            }
            None => None,
        };
        Ok(LoadedGraph { graph, labels })
    }
}

impl SolverOptions {
    pub(crate) fn budget(&self) -> Result<SearchBudget, CliError> {
        let mut budget = SearchBudget {
            node_limit: self.budget_nodes,
            time_limit: None,
        };
        if let Some(secs) = self.budget_seconds {
            let limit = Duration::try_from_secs_f64(secs).map_err(|_| {
                CliError::Usage(format!("--budget-seconds must be nonnegative, got {secs}"))
            })?;
            budget = budget.with_time_limit(limit);
        }
        Ok(budget)
    }
}

/// `dir/name.g6` -> `dir/name.roles.json`.
pub fn sidecar_path(graph6: &Path) -> PathBuf {
    graph6.with_extension("roles.json")
}

/// Parses `args` (without the program name) and runs the command, writing
/// reports to `out` unless a report path is given.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(std::iter::once(OsString::from("spanlab")).chain(args)) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            write!(out, "{}", e.render()).map_err(input_err)?;
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.render().to_string())),
    };
    match cli.command {
        Command::Generate(a) => commands::generate(&a, out),
        Command::Verify(a) => commands::verify(&a, echo, out),
        Command::Solve(a) => commands::solve(&a, echo, out),
        Command::Report(a) => commands::report(&a, echo, out),
    }
}
