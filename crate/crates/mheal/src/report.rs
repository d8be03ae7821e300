//! Machine-readable run reporting: a JSON report on stdout per invocation, a
//! JSON error object on stderr on failure, and the process exit-code
//! contract (0 success, 1 usage, 2 data, 3 numeric).

use crate::error::Error;
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// Effective post-default configuration; re-running with exactly these
    /// values reproduces every artifact byte for byte.
    pub config: serde_json::Value,
    pub wall_time_ms: f64,
    pub counters: BTreeMap<String, u64>,
    pub artifacts: Vec<String>,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        RunReport {
            command: command.to_string(),
            config,
            wall_time_ms: 0.0,
            counters: BTreeMap::new(),
            artifacts: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn counter(&mut self, name: &str, value: u64) {
        self.counters.insert(name.to_string(), value);
    }

    pub fn artifact(&mut self, path: &std::path::Path) {
        self.artifacts.push(path.display().to_string());
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    /// Stamps the wall time and prints the report to stdout.
    pub fn emit(mut self, started: Instant) {
        self.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
        println!("{}", serde_json::to_string_pretty(&self).unwrap());
    }
}

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Usage errors are bad parameter values; data errors are unreadable or
/// malformed inputs; everything else that a computation can raise
/// (degenerate geometry, infeasible budgets, empty survivor sets) is a
/// numeric failure.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter { .. } => EXIT_USAGE,
        Error::Io(_)
        | Error::Parse { .. }
        | Error::InconsistentDimension { .. }
        | Error::BadLabel { .. }
        | Error::EmptyData
        | Error::EmptyInput => EXIT_DATA,
        _ => EXIT_NUMERIC,
    }
}

fn kind_name(err: &Error) -> &'static str {
    match err {
        Error::EmptyInput => "empty_input",
        Error::FewerThanTwoPoints(_) => "fewer_than_two_points",
        Error::FewerThanThreePoints(_) => "fewer_than_three_points",
        Error::ZeroNormRow { .. } => "zero_norm_row",
        Error::NonFiniteInput { .. } => "non_finite_input",
        Error::DuplicatePoints { .. } => "duplicate_points",
        Error::BudgetExceedsPool { .. } => "budget_exceeds_pool",
        Error::PoolExhausted => "pool_exhausted",
        Error::IndexOutOfBounds { .. } => "index_out_of_bounds",
        Error::KExceedsDistinctPoints { .. } => "k_exceeds_distinct_points",
        Error::MExceedsCluster { .. } => "m_exceeds_cluster",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::EmptySubset => "empty_subset",
        Error::EmptyData => "empty_data",
        Error::BadLabel { .. } => "bad_label",
        Error::NoSurvivors => "no_survivors",
        Error::InvalidParameter { .. } => "invalid_parameter",
        Error::Parse { .. } => "parse",
        Error::InconsistentDimension { .. } => "inconsistent_dimension",
        Error::Io(_) => "io",
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: String,
    kind: &'a str,
    exit_code: i32,
}

/// The JSON object printed to stderr when a run fails.
pub fn error_json(err: &Error) -> String {
    serde_json::to_string(&ErrorReport {
        error: err.to_string(),
        kind: kind_name(err),
        exit_code: exit_code(err),
    })
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_partition_the_error_space() {
        assert_eq!(exit_code(&Error::invalid("k", "zero")), EXIT_USAGE);
        assert_eq!(
            exit_code(&Error::Parse {
                line: 3,
                reason: "x".into()
            }),
            EXIT_DATA
        );
        assert_eq!(exit_code(&Error::EmptyData), EXIT_DATA);
        assert_eq!(
            exit_code(&Error::DuplicatePoints { i: 0, j: 1 }),
            EXIT_NUMERIC
        );
        assert_eq!(exit_code(&Error::PoolExhausted), EXIT_NUMERIC);
        assert_eq!(exit_code(&Error::NoSurvivors), EXIT_NUMERIC);
    }

    #[test]
    fn error_json_is_parseable_and_tagged() {
        let msg = error_json(&Error::BudgetExceedsPool { budget: 9, pool: 4 });
        let v: serde_json::Value = serde_json::from_str(&msg).unwrap();
        assert_eq!(v["kind"], "budget_exceeds_pool");
        assert_eq!(v["exit_code"], 3);
        assert!(v["error"].as_str().unwrap().contains('9'));
    }

    #[test]
    fn report_serializes_with_all_sections() {
        let mut rep = RunReport::new("select", serde_json::json!({"budget": 4}));
        rep.counter("distance_evals", 42);
        rep.artifact(std::path::Path::new("/tmp/out/indices.csv"));
        rep.warn("something mild");
        let text = serde_json::to_string(&rep).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["command"], "select");
        assert_eq!(v["config"]["budget"], 4);
        assert_eq!(v["counters"]["distance_evals"], 42);
        assert_eq!(v["artifacts"][0], "/tmp/out/indices.csv");
        assert_eq!(v["warnings"][0], "something mild");
    }
}
