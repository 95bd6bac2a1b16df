//! Batches of representation checks and the isolation driver.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::search::{find_representation_with, RepOutcome};
use crate::construct::{enumerate_index_p_sublattices, is_prime};
use crate::error::Result;
use crate::exactlin::GramMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Represented,
    NotRepresented,
}

impl Expectation {
    pub fn as_str(self) -> &'static str {
        match self {
            Expectation::Represented => "represented",
            Expectation::NotRepresented => "not-represented",
        }
    }
}

/// One `target → host` question with the answer a claim needs.
#[derive(Clone, Debug)]
pub struct Check {
    pub family: String,
    pub parameters: String,
    pub target: GramMatrix,
    pub host: GramMatrix,
    pub expect: Expectation,
}

impl Check {
    pub fn new(
        family: impl Into<String>,
        parameters: impl Into<String>,
        target: GramMatrix,
        host: GramMatrix,
        expect: Expectation,
    ) -> Self {
        Check {
            family: family.into(),
            parameters: parameters.into(),
            target,
            host,
            expect,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckEntry {
    pub family: String,
    pub parameters: String,
    pub expect: Expectation,
    pub outcome: RepOutcome,
    pub nodes: u64,
    pub millis: u128,
}

impl CheckEntry {
    /// `None` when the search ran out of budget.
    pub fn passed(&self) -> Option<bool> {
        match (&self.outcome, self.expect) {
            (RepOutcome::Unknown { .. }, _) => None,
            (RepOutcome::Found(_), e) => Some(e == Expectation::Represented),
            (RepOutcome::NotRepresented, e) => Some(e == Expectation::NotRepresented),
        }
    }

    /// JSON record; wall-clock time is included only on request so that
    /// repeated runs produce identical output by default.
    pub fn to_json(&self, timings: bool) -> Value {
        let mut v = json!({
            "family": self.family,
            "parameters": self.parameters,
            "expect": self.expect.as_str(),
            "status": self.outcome.status(),
        });
        if let RepOutcome::Found(rep) = &self.outcome {
            let rows: Vec<Vec<String>> = rep
                .matrix()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect();
            let rows: Vec<Value> = rows
                .into_iter()
                .map(|r| Value::Array(r.into_iter().map(|x| Value::Number(x.parse().expect("integer"))).collect()))
                .collect();
            v["certificate"] = Value::Array(rows);
        }
        v["nodes"] = json!(self.nodes);
        if timings {
            v["millis"] = json!(self.millis as u64);
        }
        v
    }

    pub fn tsv_row(&self) -> String {
        let verdict = match self.passed() {
            Some(true) => "ok",
            Some(false) => "FAIL",
            None => "unknown",
        };
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.family,
            self.parameters,
            self.expect.as_str(),
            self.outcome.status(),
            self.nodes,
            verdict
        )
    }
}

pub const TSV_HEADER: &str = "family\tparameters\texpect\tstatus\tnodes\tverdict";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// Fail dominates, then inconclusive.
    pub fn combine(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn verdict_of(entries: &[CheckEntry]) -> Verdict {
    entries.iter().fold(Verdict::Pass, |acc, e| {
        acc.combine(match e.passed() {
            Some(true) => Verdict::Pass,
            Some(false) => Verdict::Fail,
            None => Verdict::Inconclusive,
        })
    })
}

/// Runs the checks on the current rayon pool; output order follows input.
pub fn run_checks(checks: &[Check], budget: u64) -> Result<Vec<CheckEntry>> {
    checks
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let r = find_representation_with(&c.target, &c.host, budget)?;
            Ok(CheckEntry {
                family: c.family.clone(),
                parameters: c.parameters.clone(),
                expect: c.expect,
                outcome: r.outcome,
                nodes: r.nodes,
                millis: start.elapsed().as_millis(),
            })
        })
        .collect()
}

/// Checks for "`host` represents every index-`p` sublattice of `I_n` for
/// primes `p ≤ prime_bound` and every `I_k` with `k < n`, but not `I_n`".
pub fn isolation_checks(host: &GramMatrix, n: usize, prime_bound: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for p in (2..=prime_bound).filter(|&p| is_prime(p)) {
        for (i, g) in enumerate_index_p_sublattices(n, p)?.into_iter().enumerate() {
            checks.push(Check::new(
                "index-p",
                format!("n={n} p={p} class={i} gram={g}"),
                g,
                host.clone(),
                Expectation::Represented,
            ));
        }
    }
    for k in 1..n {
        checks.push(Check::new(
            "cubic",
            format!("I_{k}"),
            GramMatrix::identity(k),
            host.clone(),
            Expectation::Represented,
        ));
    }
    checks.push(Check::new(
        "cubic",
        format!("I_{n}"),
        GramMatrix::identity(n),
        host.clone(),
        Expectation::NotRepresented,
    ));
    Ok(checks)
}

#[derive(Clone, Debug)]
pub struct IsolationReport {
    pub entries: Vec<CheckEntry>,
    pub verdict: Verdict,
}

/// Bounded check that `host` is an isolation of `I_n`: a pass means it is
/// consistent with isolation for all primes up to `prime_bound`.
pub fn verify_isolation(host: &GramMatrix, n: usize, prime_bound: u64, budget: u64) -> Result<IsolationReport> {
    let entries = run_checks(&isolation_checks(host, n, prime_bound)?, budget)?;
    let verdict = verdict_of(&entries);
    Ok(IsolationReport { entries, verdict })
}

/// The rank-one case: `⟨m²⟩ → host` for `2 ≤ m ≤ max_square`, and `⟨1⟩ ↛ host`.
pub fn unary_square_checks(host: &GramMatrix, max_square: i64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for m in 1..=max_square {
        checks.push(Check::new(
            "square",
            format!("m={m}"),
            GramMatrix::diagonal(&[m * m])?,
            host.clone(),
            if m == 1 {
                Expectation::NotRepresented
            } else {
                Expectation::Represented
            },
        ));
    }
    Ok(checks)
}
