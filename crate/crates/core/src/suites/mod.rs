//! Randomized verification suites shared by the acceptance tests and the `lhverify` driver.

mod arch;
pub mod gen;
mod models;
mod padic;
mod weil;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::exact::rational::is_prime;

pub const SUITES: [&str; 11] = [
    "tate-fe",
    "asymptotic-padic",
    "asymptotic-arch",
    "isometry-padic",
    "isometry-arch",
    "densities",
    "spherical-gl2",
    "spherical-sl2t",
    "metaplectic",
    "weil-rep",
    "all",
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("invalid option: {0}")]
    InvalidOption(String),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteOptions {
    pub primes: Option<Vec<u64>>,
    pub cases: Option<usize>,
    pub seed: u64,
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// `"exact"` for exact comparisons, otherwise the numeric error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Deviation {
    Exact,
    Numeric(f64),
}

impl Serialize for Deviation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Deviation::Exact => s.serialize_str("exact"),
            Deviation::Numeric(e) => s.serialize_str(&sig12(*e)),
        }
    }
}

/// Twelve significant digits.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn sig12_complex(z: num_complex::Complex64) -> String {
    if z.im < 0.0 {
        format!("{} - {}i", sig12(z.re), sig12(-z.im))
    } else {
        format!("{} + {}i", sig12(z.re), sig12(z.im))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub inputs: String,
    pub digest: String,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
    pub error: Deviation,
    pub note: Option<String>,
}

impl CaseResult {
    pub fn new(id: String, inputs: String) -> Self {
        let digest = format!("{:016x}", fnv1a(inputs.as_bytes()));
        CaseResult {
            id,
            inputs,
            digest,
            lhs: String::new(),
            rhs: String::new(),
            status: Status::Skipped,
            error: Deviation::Exact,
            note: None,
        }
    }

    pub fn exact(mut self, lhs: impl ToString, rhs: impl ToString, holds: bool) -> Self {
        self.lhs = lhs.to_string();
        self.rhs = rhs.to_string();
        self.status = if holds { Status::Pass } else { Status::Fail };
        self.error = Deviation::Exact;
        self
    }

    pub fn numeric(mut self, lhs: impl ToString, rhs: impl ToString, err: f64, tol: f64) -> Self {
        self.lhs = lhs.to_string();
        self.rhs = rhs.to_string();
        self.status = if err <= tol { Status::Pass } else { Status::Fail };
        self.error = Deviation::Numeric(err);
        self
    }

    pub fn skipped(mut self, reason: impl ToString) -> Self {
        self.status = Status::Skipped;
        self.note = Some(reason.to_string());
        self
    }

    /// An error from the library counts as a failure.
    pub fn failed(mut self, err: impl ToString) -> Self {
        self.status = Status::Fail;
        self.note = Some(err.to_string());
        self
    }

    pub fn with_note(mut self, note: impl ToString) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf29ce484222325u64, |h, b| {
        (h ^ *b as u64).wrapping_mul(0x100000001b3)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
    /// Kept out of the JSON so reports stay byte-identical for a fixed seed.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, mut cases: Vec<CaseResult>, wall_time: Duration) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let count = |s: Status| cases.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            total: cases.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
        };
        SuiteReport {
            suite: suite.to_string(),
            seed,
            cases,
            summary,
            wall_time,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Largest numeric error among the cases, if any case is numeric.
    pub fn max_error(&self) -> Option<f64> {
        self.cases
            .iter()
            .filter_map(|c| match c.error {
                Deviation::Numeric(e) => Some(e),
                Deviation::Exact => None,
            })
            .reduce(f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} seed {}", self.suite, self.seed);
        let _ = writeln!(out, "{:<40} {:<8} {:<20} {}", "id", "status", "error", "note");
        for c in &self.cases {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            let err = match c.error {
                Deviation::Exact => "exact".to_string(),
                Deviation::Numeric(e) => sig12(e),
            };
            let note = c.note.as_deref().unwrap_or("");
            let _ = writeln!(out, "{:<40} {:<8} {:<20} {}", c.id, status, err, note);
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "total {} passed {} failed {} skipped {} ({:.2}s)",
            s.total,
            s.passed,
            s.failed,
            s.skipped,
            self.wall_time.as_secs_f64()
        );
        if let Some(e) = self.max_error() {
            let _ = writeln!(out, "max error {}", sig12(e));
        }
        out
    }
}

/// Resolved options handed to the individual suites.
#[derive(Debug, Clone)]
pub(crate) struct Plan {
    pub primes: Vec<u64>,
    pub cases: usize,
    pub seed: u64,
    pub tol: f64,
}

struct Defaults {
    primes: &'static [u64],
    cases: usize,
    tol: f64,
    odd_only: bool,
}

fn defaults(name: &str) -> Defaults {
    let d = |primes, cases, tol, odd_only| Defaults {
        primes,
        cases,
        tol,
        odd_only,
    };
    match name {
        "tate-fe" => d(&[3, 5], 10, 0.0, false),
        "asymptotic-padic" => d(&[3, 5], 20, 0.0, false),
        "asymptotic-arch" => d(&[], 3, 1e-3, false),
        "isometry-padic" => d(&[2, 3, 5, 7], 3, 0.0, false),
        "isometry-arch" => d(&[], 4, 1e-6, false),
        "densities" => d(&[2, 3, 5], 4, 0.0, false),
        "spherical-gl2" => d(&[2, 3, 5], 4, 1e-12, false),
        "spherical-sl2t" => d(&[3, 5, 7], 4, 0.0, true),
        "metaplectic" => d(&[3, 5], 1000, 0.0, false),
        _ => d(&[3, 5], 50, 0.0, true),
    }
}

fn plan(name: &str, options: &SuiteOptions) -> Result<Plan, SuiteError> {
    let d = defaults(name);
    let primes = options.primes.clone().unwrap_or_else(|| d.primes.to_vec());
    for &p in &primes {
        if !is_prime(p) {
            return Err(SuiteError::InvalidOption(format!("{p} is not prime")));
        }
        if p == 2 && d.odd_only {
            return Err(SuiteError::InvalidOption(format!("suite {name} needs odd primes")));
        }
        if p > 97 {
            return Err(SuiteError::InvalidOption(format!("prime {p} is too large for exact arithmetic")));
        }
    }
    let cases = options.cases.unwrap_or(d.cases);
    if cases == 0 {
        return Err(SuiteError::InvalidOption("cases must be positive".into()));
    }
    let tol = options.tol.unwrap_or(d.tol);
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(SuiteError::InvalidOption(format!("tolerance {tol} must be finite and nonnegative")));
    }
    Ok(Plan {
        primes,
        cases,
        seed: options.seed,
        tol,
    })
}

fn dispatch(name: &str, plan: &Plan) -> Vec<CaseResult> {
    match name {
        "tate-fe" => padic::tate_fe(plan),
        "asymptotic-padic" => padic::asymptotic(plan),
        "asymptotic-arch" => arch::asymptotic(plan),
        "isometry-padic" => padic::isometry(plan),
        "isometry-arch" => arch::isometry(plan),
        "densities" => padic::densities(plan),
        "spherical-gl2" => models::gl2(plan),
        "spherical-sl2t" => models::sl2t(plan),
        "metaplectic" => weil::metaplectic(plan),
        "weil-rep" => weil::weil_rep(plan),
        _ => unreachable!("suite names are validated"),
    }
}

/// Runs a named suite; `all` runs every suite with its own defaults and only honours the seed.
pub fn run_suite(name: &str, options: &SuiteOptions) -> Result<SuiteReport, SuiteError> {
    if !SUITES.contains(&name) {
        return Err(SuiteError::UnknownSuite(name.to_string()));
    }
    let start = Instant::now();
    let cases = if name == "all" {
        let mut all = Vec::new();
        for suite in &SUITES[..SUITES.len() - 1] {
            let opts = SuiteOptions {
                seed: options.seed,
                ..Default::default()
            };
            let plan = plan(suite, &opts)?;
            all.extend(dispatch(suite, &plan).into_iter().map(|mut c| {
                c.id = format!("{suite}/{}", c.id);
                c
            }));
        }
        all
    } else {
        dispatch(name, &plan(name, options)?)
    };
    Ok(SuiteReport::new(name, options.seed, cases, start.elapsed()))
}
