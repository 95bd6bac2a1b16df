//! Named verification runs for the isolation results, with reports.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::construct::{
    ank, build_glue, d12_remark_basis, enumerate_index_p_sublattices, is_prime, named_lattice, parse_glue,
    remark_l29, ternary_iabp,
};
use crate::error::{Error, Result};
use crate::exactlin::{
    isometry_test_with, min_norm, orthogonal_sum, successive_minima, GramMatrix, DEFAULT_NODE_BUDGET,
};
use crate::represent::{
    default_exponent, find_representation_with, isolation_checks, rep_mod_pk, run_checks, unary_square_checks,
    verdict_of, Check, CheckEntry, Expectation, Verdict, TSV_HEADER,
};

pub const CLAIMS: [&str; 9] = [
    "iso1",
    "table1",
    "table1-candidates",
    "iso2",
    "iso2alt",
    "iso3",
    "remark-a16",
    "remark-d12",
    "thm44-witness",
];

#[derive(Clone, Debug)]
pub struct ClaimOptions {
    /// Overrides the per-claim default prime bound.
    pub prime_bound: Option<u64>,
    pub node_budget: u64,
    pub mod_exponent: Option<u32>,
    pub max_square: i64,
}

impl Default for ClaimOptions {
    fn default() -> Self {
        ClaimOptions {
            prime_bound: None,
            node_budget: DEFAULT_NODE_BUDGET,
            mod_exponent: None,
            max_square: 30,
        }
    }
}

/// A checked statement that is not a single representation question.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub name: String,
    pub expected: String,
    pub observed: String,
}

impl Fact {
    pub fn new(name: impl Into<String>, expected: impl ToString, observed: impl ToString) -> Self {
        Fact {
            name: name.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.observed
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub command: String,
    pub config: Vec<(String, String)>,
    pub entries: Vec<CheckEntry>,
    pub facts: Vec<Fact>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl VerificationReport {
    fn assemble(command: String, config: Vec<(String, String)>, entries: Vec<CheckEntry>, facts: Vec<Fact>, notes: Vec<String>) -> Self {
        let verdict = facts.iter().fold(verdict_of(&entries), |v, f| {
            v.combine(if f.passed() { Verdict::Pass } else { Verdict::Fail })
        });
        VerificationReport {
            command,
            config,
            entries,
            facts,
            notes,
            verdict,
        }
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let config: serde_json::Map<String, Value> =
            self.config.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        json!({
            "command": self.command,
            "config": config,
            "entries": self.entries.iter().map(|e| e.to_json(timings)).collect::<Vec<_>>(),
            "facts": self.facts.iter().map(|f| json!({
                "name": f.name,
                "expected": f.expected,
                "observed": f.observed,
                "passed": f.passed(),
            })).collect::<Vec<_>>(),
            "notes": self.notes,
            "verdict": self.verdict.as_str(),
        })
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from(TSV_HEADER);
        out.push('\n');
        for e in &self.entries {
            out.push_str(&e.tsv_row());
            out.push('\n');
        }
        for f in &self.facts {
            out.push_str(&format!(
                "fact\t{}\t{}\t{}\t0\t{}\n",
                f.name,
                f.expected,
                f.observed,
                if f.passed() { "ok" } else { "FAIL" }
            ));
        }
        out
    }
}

fn glued(text: &str) -> Result<GramMatrix> {
    Ok(build_glue(&parse_glue(text)?)?.gram().clone())
}

/// `I_k(p) = Z(e_2 + k e_1) + Z(p e_2)`.
pub fn binary_ikp(k: i64, p: i64) -> Result<GramMatrix> {
    GramMatrix::from_rows(&[[1 + k * k, k * p], [k * p, p * p]])
}

#[derive(Clone, Debug)]
pub struct Table1Row {
    pub candidate_name: String,
    /// The part orthogonal to `⟨1⟩`.
    pub n: GramMatrix,
    pub candidate: GramMatrix,
    pub k: i64,
    pub p: u64,
    pub exception: GramMatrix,
}

/// Quaternary `⟨1⟩ ⊥ N` candidates and a binary sublattice of `I_2` each one misses.
pub fn table1_rows() -> Result<Vec<Table1Row>> {
    let one = GramMatrix::identity(1);
    let two = GramMatrix::diagonal(&[2])?;
    let mut specs: Vec<(String, GramMatrix, i64, u64)> = Vec::new();
    for b in 2..=5 {
        specs.push((format!("<1,2,2,{b}>"), GramMatrix::diagonal(&[2, 2, b])?, 1, 3));
    }
    for (glue, k, p) in [("A2", 0, 3), ("A1 10[1 1/2]", 0, 5), ("A1 14[1 1/2]", 1, 3), ("A1 18[1 1/2]", 2, 5)] {
        specs.push((format!("<1,2> + {glue}"), orthogonal_sum(&[&two, &glued(glue)?]), k, p));
    }
    for (glue, k, p) in [
        ("A3", 0, 3),
        ("A1 A1 8[1 1 1/2]", 2, 5),
        ("A1 A1 12[1 1 1/2]", 0, 3),
        ("A1 A1 16[1 1 1/2]", 0, 5),
    ] {
        specs.push((format!("<1> + {glue}"), glued(glue)?, k, p));
    }
    specs
        .into_iter()
        .map(|(name, n, k, p)| {
            Ok(Table1Row {
                candidate_name: name,
                candidate: orthogonal_sum(&[&one, &n]),
                n,
                k,
                p,
                exception: binary_ikp(k, p as i64)?,
            })
        })
        .collect()
}

/// Ternary `N` with `min N ≥ 2`, `⟨2,2⟩ → N` and `μ_3(N) ≤ 5`, up to isometry.
///
/// Such an `N` has a reduced basis with norms `2, 2, d`, `2 ≤ d ≤ 5`, and
/// off-diagonal entries in `{-1, 0, 1}`.
pub fn table1_candidate_classes(budget: u64) -> Result<Vec<GramMatrix>> {
    let two_two = GramMatrix::diagonal(&[2, 2])?;
    let mut classes: Vec<GramMatrix> = Vec::new();
    for d in 2..=5i64 {
        for a in -1..=1i64 {
            for b in -1..=1i64 {
                for c in -1..=1i64 {
                    let Ok(n) = GramMatrix::from_rows(&[[2, a, b], [a, 2, c], [b, c, d]]) else {
                        continue;
                    };
                    if min_norm(&n, budget)? < 2 || successive_minima(&n, 3, budget)?[2] > 5 {
                        continue;
                    }
                    if !find_representation_with(&two_two, &n, budget)?.outcome.is_found() {
                        continue;
                    }
                    let mut seen = false;
                    for c in &classes {
                        if isometry_test_with(c, &n, budget)? {
                            seen = true;
                            break;
                        }
                    }
                    if !seen {
                        classes.push(n);
                    }
                }
            }
        }
    }
    Ok(classes)
}

/// The first `I_k(p)`, by `p` then `k`, that `host` does not represent.
pub fn first_missed_binary(host: &GramMatrix, prime_bound: u64, budget: u64) -> Result<Option<(i64, u64)>> {
    for p in (2..=prime_bound).filter(|&p| is_prime(p)) {
        for k in 0..=(p / 2) as i64 {
            let r = find_representation_with(&binary_ikp(k, p as i64)?, host, budget)?;
            if matches!(r.outcome, crate::represent::RepOutcome::NotRepresented) {
                return Ok(Some((k, p)));
            }
        }
    }
    Ok(None)
}

fn local_notes(target: &GramMatrix, host: &GramMatrix, exponent: Option<u32>) -> Vec<String> {
    [2u64, 3]
        .into_iter()
        .map(|p| {
            let e = exponent.unwrap_or_else(|| default_exponent(p));
            let what = match rep_mod_pk(target, host, p, e) {
                Ok(true) => "represented".to_string(),
                Ok(false) => "not represented".to_string(),
                Err(err) => format!("not decided ({err})"),
            };
            format!("I_{} modulo {p}^{e}: {what}", target.rank())
        })
        .collect()
}

fn integer_gram(l: &crate::construct::EmbeddedLattice, vs: &[Vec<crate::exactlin::linalg::Rat>]) -> Result<GramMatrix> {
    let rows: Vec<Vec<BigInt>> = vs
        .iter()
        .map(|u| {
            vs.iter()
                .map(|v| {
                    let x = l.inner(u, v);
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(Error::NonIntegralGlue(format!("inner product {x}")))
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    GramMatrix::new(rows)
}

pub fn run_claim(name: &str, opts: &ClaimOptions) -> Result<VerificationReport> {
    let budget = opts.node_budget;
    let mut config = vec![("node_budget".to_string(), budget.to_string())];
    let mut facts = Vec::new();
    let mut notes = Vec::new();
    let run = |checks: Vec<Check>| run_checks(&checks, budget);
    let entries = match name {
        "iso1" => {
            config.push(("max_square".into(), opts.max_square.to_string()));
            run(unary_square_checks(&named_lattice("iso1_ternary")?, opts.max_square)?)?
        }
        "table1" => {
            let rows = table1_rows()?;
            for r in &rows {
                let classes = enumerate_index_p_sublattices(2, r.p)?;
                let mut listed = false;
                for c in &classes {
                    if isometry_test_with(c, &r.exception, budget)? {
                        listed = true;
                        break;
                    }
                }
                facts.push(Fact::new(
                    format!("I_{}({}) is an index-{} sublattice of I_2", r.k, r.p, r.p),
                    true,
                    listed,
                ));
                let missed = first_missed_binary(&r.candidate, 13, budget)?;
                facts.push(Fact::new(
                    format!("{} misses some I_k(p) with p <= 13", r.candidate_name),
                    true,
                    missed.is_some(),
                ));
                if let Some((k, p)) = missed {
                    notes.push(format!(
                        "{}: listed exception I_{}({}), first miss I_{k}({p})",
                        r.candidate_name, r.k, r.p
                    ));
                }
            }
            run(rows
                .into_iter()
                .map(|r| {
                    Check::new(
                        "table1",
                        format!("{} vs I_{}({})", r.candidate_name, r.k, r.p),
                        r.exception,
                        r.candidate,
                        Expectation::NotRepresented,
                    )
                })
                .collect())?
        }
        "table1-candidates" => {
            let found = table1_candidate_classes(budget)?;
            let rows = table1_rows()?;
            facts.push(Fact::new("number of classes", rows.len(), found.len()));
            for r in &rows {
                let mut hit = false;
                for c in &found {
                    if isometry_test_with(c, &r.n, budget)? {
                        hit = true;
                        break;
                    }
                }
                facts.push(Fact::new(format!("{} is among the classes", r.candidate_name), true, hit));
            }
            Vec::new()
        }
        "iso2" | "iso2alt" => {
            let p = opts.prime_bound.unwrap_or(17);
            config.push(("prime_bound".into(), p.to_string()));
            let host = named_lattice(if name == "iso2" { "iso2_quinary" } else { "iso2_quinary_alt" })?;
            notes.extend(local_notes(&GramMatrix::identity(2), &host, opts.mod_exponent));
            run(isolation_checks(&host, 2, p)?)?
        }
        "iso3" => {
            let bound = opts.prime_bound.unwrap_or(11);
            config.push(("prime_bound".into(), bound.to_string()));
            let host = named_lattice("iso3_senary")?;
            let mut checks = Vec::new();
            for p in (2..=bound).filter(|&p| is_prime(p)) {
                for b in 0..=(p / 2) as i64 {
                    for a in 0..=b {
                        checks.push(Check::new(
                            "ternary",
                            format!("a={a} b={b} p={p}"),
                            ternary_iabp(a, b, p as i64)?,
                            host.clone(),
                            Expectation::Represented,
                        ));
                    }
                }
            }
            for k in 1..=3 {
                checks.push(Check::new(
                    "cubic",
                    format!("I_{k}"),
                    GramMatrix::identity(k),
                    host.clone(),
                    if k < 3 { Expectation::Represented } else { Expectation::NotRepresented },
                ));
            }
            let i2 = GramMatrix::identity(2);
            let i113 = ternary_iabp(1, 1, 3)?;
            for glue in ["A3", "A3 8[2 1/2]"] {
                checks.push(Check::new(
                    "rival",
                    format!("I_2 + {glue} vs I_1,1(3)"),
                    i113.clone(),
                    orthogonal_sum(&[&i2, &glued(glue)?]),
                    Expectation::NotRepresented,
                ));
            }
            notes.extend(local_notes(&GramMatrix::identity(3), &host, opts.mod_exponent));
            run(checks)?
        }
        "remark-a16" => {
            let target = ank(16, 4)?.gram().clone();
            let a15 = glued("A15[4]")?;
            let with_one = orthogonal_sum(&[&GramMatrix::identity(1), &a15]);
            run(vec![
                Check::new("remark", "A_16,4 vs <1> + A15[4]", target.clone(), with_one, Expectation::Represented),
                Check::new("remark", "A_16,4 vs A15[4]", target, a15, Expectation::NotRepresented),
            ])?
        }
        "remark-d12" => {
            let (host, vs) = d12_remark_basis(1)?;
            facts.push(Fact::new("vectors lie in D12[1]", true, vs.iter().all(|v| host.contains(v))));
            let g = integer_gram(&host, &vs)?;
            let target = ank(11, 3)?.gram().clone();
            facts.push(Fact::new("isometric to A_11,3", true, isometry_test_with(&g, &target, budget)?));
            Vec::new()
        }
        "thm44-witness" => {
            let (l, shift) = remark_l29()?;
            let g = l.gram();
            notes.push(format!("glue alignment shift {shift}"));
            facts.push(Fact::new("rank", 29, g.rank()));
            facts.push(Fact::new("determinant", 2, g.determinant()));
            facts.push(Fact::new("minimum", 2, min_norm(g, budget)?));
            let odd = (0..g.rank()).any(|i| !(g.get(i, i) % BigInt::from(2)).is_zero());
            facts.push(Fact::new("odd lattice", true, odd));
            Vec::new()
        }
        _ => return Err(Error::UnknownClaim(name.to_string())),
    };
    Ok(VerificationReport::assemble(
        format!("verify {name}"),
        config,
        entries,
        facts,
        notes,
    ))
}
