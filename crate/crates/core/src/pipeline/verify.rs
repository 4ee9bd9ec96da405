use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::cache::Cache;
use super::run::{check_budget, run_problem, CountRecord, RunOptions};
use super::spec::{Problem, Resolved};
use crate::error::{Error, Result};
use crate::exactmath::{lagrange_fit, QPoly};
use crate::lieoracle::{gprime_multiplicity, lr_coefficient};
use crate::rootdata::nu_map;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    /// Every count vanished and the oracle multiplicity is zero.
    #[serde(rename = "zero polynomial")]
    ZeroPolynomial,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self != Verdict::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::ZeroPolynomial => "zero polynomial",
            Verdict::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub q: u32,
    #[serde(with = "crate::serde_bigint")]
    pub observed: BigInt,
    pub predicted: String,
    pub residual: String,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub label: String,
    pub polynomial: QPoly,
    pub expected_degree: usize,
    pub actual_degree: Option<usize>,
    #[serde(with = "crate::serde_bigint")]
    pub expected_leading: BigInt,
    pub actual_leading: String,
    pub fit_q: Vec<u32>,
    pub residuals: Vec<Residual>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

impl VerifyReport {
    /// `degree d, leading c, VERDICT`.
    pub fn summary(&self) -> String {
        let degree = self
            .actual_degree
            .map_or("-".to_string(), |d| d.to_string());
        format!(
            "degree {degree}, leading {}, {}",
            self.actual_leading,
            self.verdict.as_str()
        )
    }
}

/// The oracle's leading coefficient: an LR coefficient or a `g'` multiplicity.
pub fn expected_leading(problem: &Problem) -> Result<BigInt> {
    match problem {
        Problem::Hall { lambda, mus } => lr_coefficient(lambda, mus),
        Problem::Quiver { xi, etas, .. } => gprime_multiplicity(xi, etas),
    }
}

/// Fits through the first `degree + 1` sample points and checks every other
/// record (remaining samples and held-out values) against the fit.
pub fn fit_and_verify(spec: &Resolved, records: &[CountRecord]) -> Result<VerifyReport> {
    let problem = &spec.problem;
    let fingerprint = problem.fingerprint();
    let expected_degree = problem.expected_degree()?;
    let expected_leading = expected_leading(problem)?;
    let value = |q: u32| {
        records
            .iter()
            .find(|r| r.q == q && r.fingerprint == fingerprint)
            .map(|r| r.normalized.clone())
    };
    let samples: Vec<(u32, BigInt)> = spec
        .q
        .iter()
        .filter_map(|&q| value(q).map(|v| (q, v)))
        .collect();
    let held: Vec<(u32, BigInt)> = spec
        .holdout
        .iter()
        .filter_map(|&q| value(q).map(|v| (q, v)))
        .collect();
    let need = expected_degree + 1;
    if samples.len() < need || held.is_empty() {
        return Err(Error::InsufficientPoints {
            need: need + 1,
            have: samples.len().min(need) + held.len(),
        });
    }
    let (fit, extra) = samples.split_at(need);
    let points: Vec<(BigInt, BigInt)> = fit
        .iter()
        .map(|(q, v)| (BigInt::from(*q), v.clone()))
        .collect();
    let polynomial = lagrange_fit(&points)?;

    let residuals: Vec<Residual> = extra
        .iter()
        .chain(&held)
        .map(|(q, observed)| {
            let predicted = polynomial.eval_int(&BigInt::from(*q));
            let residual = BigRational::from_integer(observed.clone()) - &predicted;
            Residual {
                q: *q,
                observed: observed.clone(),
                predicted: predicted.to_string(),
                exact: residual.is_zero(),
                residual: residual.to_string(),
            }
        })
        .collect();
    let held_ok = residuals.iter().all(|r| r.exact);
    let integral = polynomial.is_integral();
    let all_zero = fit.iter().chain(&held).all(|(_, v)| v.is_zero());

    let actual_degree = polynomial.degree();
    let actual_leading = polynomial.leading();
    let (checks, verdict) = if all_zero && polynomial.is_zero() {
        let oracle_zero = expected_leading.is_zero();
        let checks = vec![
            Check {
                name: "oracle multiplicity 0",
                pass: oracle_zero,
            },
            Check {
                name: "held-out",
                pass: held_ok,
            },
        ];
        let verdict = if oracle_zero && held_ok {
            Verdict::ZeroPolynomial
        } else {
            Verdict::Fail
        };
        (checks, verdict)
    } else {
        let checks = vec![
            Check {
                name: "degree",
                pass: actual_degree == Some(expected_degree),
            },
            Check {
                name: "leading",
                pass: actual_leading == BigRational::from_integer(expected_leading.clone()),
            },
            Check {
                name: "integral",
                pass: integral,
            },
            Check {
                name: "held-out",
                pass: held_ok,
            },
        ];
        let verdict = if checks.iter().all(|c| c.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        (checks, verdict)
    };
    Ok(VerifyReport {
        label: problem.label(),
        polynomial,
        expected_degree,
        actual_degree,
        expected_leading,
        actual_leading: actual_leading.to_string(),
        fit_q: fit.iter().map(|(q, _)| *q).collect(),
        residuals,
        checks,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossRow {
    pub q: u32,
    #[serde(with = "crate::serde_bigint")]
    pub quiver: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub hall: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub quiver_label: String,
    pub hall_label: String,
    pub rows: Vec<CrossRow>,
}

/// Compares the quiver count with the classical count on the `nu`-image, field by field.
pub fn cross_check_a_type(
    spec: &Resolved,
    opts: &RunOptions,
    cache: &mut Cache,
) -> Result<CrossCheckReport> {
    let computed;
    let hall = match (&spec.partner, &spec.problem) {
        (Some(p), _) => p,
        (None, Problem::Quiver { xi, etas, .. }) => {
            let lambda = nu_map(xi)?;
            let mus = etas.iter().map(nu_map).collect::<Result<Vec<_>>>()?;
            computed = Problem::Hall { lambda, mus };
            &computed
        }
        (None, Problem::Hall { .. }) => {
            return Err(Error::InvalidSpec(
                "cross-check needs a concentrated type-A quiver spec".into(),
            ))
        }
    };
    let qs: Vec<u32> = spec.all_q().collect();
    check_budget(hall, &qs, opts, cache)?;
    check_budget(&spec.problem, &qs, opts, cache)?;
    let mut rows = Vec::with_capacity(qs.len());
    for &q in &qs {
        let a = run_problem(&spec.problem, &[q], opts, cache)?
            .remove(0)
            .normalized;
        let b = run_problem(hall, &[q], opts, cache)?.remove(0).normalized;
        if a != b {
            return Err(Error::CrossCheckMismatch {
                q,
                quiver: a.to_string(),
                hall: b.to_string(),
            });
        }
        rows.push(CrossRow {
            q,
            quiver: a,
            hall: b,
        });
    }
    Ok(CrossCheckReport {
        quiver_label: spec.problem.label(),
        hall_label: hall.label(),
        rows,
    })
}
