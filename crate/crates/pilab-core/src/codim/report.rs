//! Machine-readable run reports. All counts are serialized as decimal
//! strings so consumers never face precision loss; n-th roots and ratios are
//! six-decimal renderings derived from the exact values. JSON output is
//! byte-deterministic for a fixed configuration and seed.

use std::f64::consts::LN_2;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::Error;

use super::{ArithMode, CocharacterDecomposition, Engine, EvaluationTarget, GradedCocharacter};

/// Which sequence a run computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunMode {
    Ordinary,
    Graded,
}

impl RunMode {
    pub fn label(&self) -> &'static str {
        match self {
            RunMode::Ordinary => "ordinary",
            RunMode::Graded => "graded",
        }
    }
}

impl std::str::FromStr for RunMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<RunMode, Error> {
        match s {
            "ordinary" => Ok(RunMode::Ordinary),
            "graded" => Ok(RunMode::Graded),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ArithProvenance {
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<String>,
    pub seed: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CocharEntry {
    pub lambda: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<u32>>,
    pub m: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureRow {
    pub q: u32,
    pub m: u32,
    pub c_qm: String,
    pub l_qm: String,
    pub cocharacter: Vec<CocharEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_n: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_n_gr: Option<String>,
    pub l_n: String,
    pub max_d_lambda: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nth_root: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
    pub cocharacter: Vec<CocharEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signatures: Option<Vec<SignatureRow>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl CheckRecord {
    pub fn pass(name: impl Into<String>) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            status: "pass".to_string(),
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: serde_json::Value) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            status: "fail".to_string(),
            witness: Some(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub target: String,
    pub mode: String,
    pub spanning: String,
    pub arithmetic: ArithProvenance,
    pub rows: Vec<ReportRow>,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    /// CSV mirror of the per-degree rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,c_n,c_n_gr,l_n,max_d_lambda,nth_root,ratio\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.n,
                row.c_n.as_deref().unwrap_or(""),
                row.c_n_gr.as_deref().unwrap_or(""),
                row.l_n,
                row.max_d_lambda,
                row.nth_root.as_deref().unwrap_or(""),
                row.ratio.as_deref().unwrap_or(""),
            ));
        }
        out
    }
}

fn provenance(engine: &Engine) -> ArithProvenance {
    let mode = engine.options().arithmetic;
    ArithProvenance {
        mode: mode.label().to_string(),
        prime: match mode {
            ArithMode::Exact => None,
            _ => Some(engine.prime().to_string()),
        },
        seed: engine.options().seed.to_string(),
    }
}

fn ordinary_entries(d: &CocharacterDecomposition) -> Vec<CocharEntry> {
    d.entries()
        .map(|(p, m)| CocharEntry {
            lambda: p.parts().to_vec(),
            mu: None,
            m,
        })
        .collect()
}

fn graded_entries(d: &GradedCocharacter) -> Vec<CocharEntry> {
    d.entries()
        .map(|((l, mu), m)| CocharEntry {
            lambda: l.parts().to_vec(),
            mu: Some(mu.parts().to_vec()),
            m,
        })
        .collect()
}

/// `c^(1/n)` as a float; exact inputs of any size are handled through their
/// bit length.
pub fn nth_root_f64(c: &BigUint, n: u32) -> f64 {
    if c.is_zero() {
        return 0.0;
    }
    let bits = c.bits();
    if bits <= 52 {
        let v = c.to_f64().expect("small value");
        (v.ln() / n as f64).exp()
    } else {
        let shift = bits - 52;
        let top = (c >> shift).to_f64().expect("52-bit value");
        ((top.ln() + shift as f64 * LN_2) / n as f64).exp()
    }
}

fn ratio_f64(current: &BigUint, previous: &BigUint) -> Option<f64> {
    if previous.is_zero() {
        return None;
    }
    let c = nth_root_f64(current, 1);
    let p = nth_root_f64(previous, 1);
    Some(c / p)
}

fn six_places(v: f64) -> String {
    format!("{v:.6}")
}

/// Runs the engine over a degree range and assembles the report rows.
pub fn codim_report(
    engine: &Engine,
    target: &EvaluationTarget,
    mode: RunMode,
    degrees: RangeInclusive<u32>,
) -> Result<Report, Error> {
    let mut rows = Vec::new();
    let mut previous: Option<BigUint> = None;
    for n in degrees {
        let row = match mode {
            RunMode::Ordinary => {
                let a = engine.ordinary_analysis(target, n)?;
                let c = BigUint::from(a.codimension);
                let row = ReportRow {
                    n,
                    c_n: Some(c.to_string()),
                    c_n_gr: None,
                    l_n: a.cocharacter.colength().to_string(),
                    max_d_lambda: a.cocharacter.max_dimension().to_string(),
                    nth_root: Some(six_places(nth_root_f64(&c, n))),
                    ratio: previous
                        .as_ref()
                        .and_then(|p| ratio_f64(&c, p))
                        .map(six_places),
                    cocharacter: ordinary_entries(&a.cocharacter),
                    signatures: None,
                };
                previous = Some(c);
                row
            }
            RunMode::Graded => {
                let mut signatures = Vec::new();
                let mut total = BigUint::zero();
                let mut total_colength = 0u64;
                let mut max_d = BigUint::zero();
                for q in 0..=n {
                    let a = engine.graded_analysis(target, q, n - q)?;
                    total += super::binomial(n, q) * BigUint::from(a.codimension);
                    total_colength += a.cocharacter.colength();
                    max_d = max_d.max(a.cocharacter.max_dimension());
                    signatures.push(SignatureRow {
                        q,
                        m: n - q,
                        c_qm: a.codimension.to_string(),
                        l_qm: a.cocharacter.colength().to_string(),
                        cocharacter: graded_entries(&a.cocharacter),
                    });
                }
                let row = ReportRow {
                    n,
                    c_n: None,
                    c_n_gr: Some(total.to_string()),
                    l_n: total_colength.to_string(),
                    max_d_lambda: max_d.to_string(),
                    nth_root: Some(six_places(nth_root_f64(&total, n))),
                    ratio: previous
                        .as_ref()
                        .and_then(|p| ratio_f64(&total, p))
                        .map(six_places),
                    cocharacter: Vec::new(),
                    signatures: Some(signatures),
                };
                previous = Some(total);
                row
            }
        };
        rows.push(row);
    }
    Ok(Report {
        target: target.describe(),
        mode: mode.label().to_string(),
        spanning: engine
            .options()
            .spanning
            .unwrap_or(target.default_span_kind())
            .label()
            .to_string(),
        arithmetic: provenance(engine),
        rows,
        checks: Vec::new(),
    })
}

/// Builds a report carrying only check results.
pub fn check_report(
    engine: &Engine,
    target: &EvaluationTarget,
    mode: RunMode,
    checks: Vec<CheckRecord>,
) -> Report {
    Report {
        target: target.describe(),
        mode: mode.label().to_string(),
        spanning: engine
            .options()
            .spanning
            .unwrap_or(target.default_span_kind())
            .label()
            .to_string(),
        arithmetic: provenance(engine),
        rows: Vec::new(),
        checks,
    }
}

/// One line of the exponent trend table.
#[derive(Clone, Debug, Serialize)]
pub struct ExponentRow {
    pub n: u32,
    pub c_n: String,
    pub nth_root: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
    /// Set when `c_n` dropped below the previous value.
    pub decreased: bool,
}

/// Exponent trend over a codimension sequence: n-th roots, consecutive
/// ratios, and flags for monotonicity violations when the target is
/// expected to be monotone (centerless envelopes).
#[derive(Clone, Debug, Serialize)]
pub struct ExponentReport {
    pub rows: Vec<ExponentRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_exponent: Option<u64>,
    pub expect_monotone: bool,
    pub monotonicity_violations: Vec<u32>,
}

pub fn exponent_report(
    sequence: &[(u32, BigUint)],
    reference_exponent: Option<u64>,
    expect_monotone: bool,
) -> ExponentReport {
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let mut previous: Option<&BigUint> = None;
    for (n, c) in sequence {
        let decreased = previous.is_some_and(|p| c < p);
        if decreased && expect_monotone {
            violations.push(*n);
        }
        rows.push(ExponentRow {
            n: *n,
            c_n: c.to_string(),
            nth_root: six_places(nth_root_f64(c, *n)),
            ratio: previous.and_then(|p| ratio_f64(c, p)).map(six_places),
            decreased,
        });
        previous = Some(c);
    }
    ExponentReport {
        rows,
        reference_exponent,
        expect_monotone,
        monotonicity_violations: violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_simple_sequences() {
        // c_n = n - 1: roots decrease toward 1
        let seq: Vec<(u32, BigUint)> = (2..=30).map(|n| (n, BigUint::from(n - 1u32))).collect();
        let rep = exponent_report(&seq, Some(1), false);
        let roots: Vec<f64> = rep
            .rows
            .iter()
            .map(|r| r.nth_root.parse::<f64>().unwrap())
            .collect();
        for w in roots.windows(2).skip(3) {
            assert!(w[0] >= w[1]);
        }
        assert!(roots.last().unwrap() - 1.0 < 0.15);
        assert!(rep.monotonicity_violations.is_empty());

        // c_n = 2^n: roots constantly 2
        let seq: Vec<(u32, BigUint)> = (1..=20)
            .map(|n| (n, BigUint::from(2u32).pow(n)))
            .collect();
        let rep = exponent_report(&seq, Some(2), true);
        for r in &rep.rows {
            assert_eq!(r.nth_root, "2.000000");
        }
    }

    #[test]
    fn monotonicity_flagging() {
        let seq = vec![
            (2u32, BigUint::from(4u32)),
            (3, BigUint::from(2u32)),
            (4, BigUint::from(5u32)),
        ];
        let rep = exponent_report(&seq, None, true);
        assert_eq!(rep.monotonicity_violations, vec![3]);
        assert!(rep.rows[1].decreased);
    }

    #[test]
    fn nth_root_handles_huge_values() {
        // 2^1000: the 10th root is 2^100
        let big = BigUint::from(2u32).pow(1000);
        let root = nth_root_f64(&big, 1000);
        assert!((root - 2.0).abs() < 1e-9);
    }

    #[test]
    fn csv_mirrors_rows() {
        use crate::algebras::AlgebraSpec;
        let engine = Engine::with_defaults();
        let t = EvaluationTarget::plain(AlgebraSpec::builtin("metabelian").unwrap());
        let report = codim_report(&engine, &t, RunMode::Ordinary, 2..=4).unwrap();
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("2,1,"));
        assert!(lines[3].starts_with("4,3,"));
    }

    #[test]
    fn identical_runs_serialize_identically() {
        use crate::algebras::AlgebraSpec;
        use crate::codim::EngineOptions;
        let opts = EngineOptions {
            arithmetic: ArithMode::Modular,
            seed: 11,
            ..EngineOptions::default()
        };
        let t = EvaluationTarget::plain(AlgebraSpec::builtin("sl2-cartan").unwrap());
        let a = codim_report(&Engine::new(opts.clone()), &t, RunMode::Ordinary, 2..=4)
            .unwrap()
            .to_json();
        let b = codim_report(&Engine::new(opts), &t, RunMode::Ordinary, 2..=4)
            .unwrap()
            .to_json();
        assert_eq!(a, b);
    }
}
