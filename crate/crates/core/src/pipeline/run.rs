use std::time::Instant;

use log::info;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::cache::Cache;
use super::spec::{Problem, Resolved, CODE_VERSION};
use crate::error::{Error, Result};
use crate::exactmath::FiniteField;
use crate::jordan::count_n;
use crate::quiverlab::{count_p_detailed, dimensions, enumeration_size, flag_space_size};
use crate::rootdata::as_dims;

pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// One exact count at one field size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub fingerprint: String,
    pub label: String,
    pub q: u32,
    /// Pair count before dividing by the gauge group; equal to `normalized` on the Hall side.
    #[serde(with = "crate::serde_bigint")]
    pub raw: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub group_order: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub normalized: BigInt,
    pub wall_ms: u64,
    pub code_version: String,
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub budget: u128,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Estimated field operations for one count: search space times flag space.
pub fn estimate_cost(problem: &Problem, q: u32) -> u128 {
    let q64 = q as u64;
    let est = match problem {
        Problem::Hall { lambda, mus } => {
            let n = lambda.size();
            let steps: Vec<Vec<usize>> = mus.iter().map(|m| vec![m.size()]).collect();
            let flags = flag_space_size(q64, &[n], &steps)
                .to_f64()
                .unwrap_or(f64::INFINITY);
            flags * ((n * n * n).max(1) as f64)
        }
        Problem::Quiver { graph, xi, etas } => {
            let Ok((d, v)) = dimensions(xi) else {
                return u128::MAX;
            };
            let steps: Vec<Vec<usize>> = etas.iter().map(|e| as_dims(&e.delta())).collect();
            let flags = flag_space_size(q64, &d, &steps)
                .to_f64()
                .unwrap_or(f64::INFINITY);
            enumeration_size(graph, q64, &d, &v) * flags.max(1.0)
        }
    };
    if est.is_finite() && est < u128::MAX as f64 {
        est.ceil() as u128
    } else {
        u128::MAX
    }
}

/// Refuses if any uncached count is estimated above the budget.
pub fn check_budget(problem: &Problem, qs: &[u32], opts: &RunOptions, cache: &Cache) -> Result<()> {
    let fingerprint = problem.fingerprint();
    for &q in qs {
        let estimate = estimate_cost(problem, q);
        if estimate > opts.budget && cache.get(&fingerprint, q).is_none() {
            return Err(Error::BudgetExceeded {
                estimate,
                budget: opts.budget,
            });
        }
    }
    Ok(())
}

fn count_one(problem: &Problem, q: u32) -> Result<(BigInt, BigInt, BigInt)> {
    let field = FiniteField::from_order(q)?;
    match problem {
        Problem::Hall { lambda, mus } => {
            let n = count_n(field, lambda, mus)?;
            Ok((n.clone(), BigInt::one(), n))
        }
        Problem::Quiver { graph, xi, etas } => {
            let c = count_p_detailed(graph, xi, etas, field)?;
            Ok((c.raw, c.group_order, c.count))
        }
    }
}

/// Counts `problem` at each `q`, reusing cached records. Every `q` is checked
/// against the budget before the first count starts.
pub fn run_problem(
    problem: &Problem,
    qs: &[u32],
    opts: &RunOptions,
    cache: &mut Cache,
) -> Result<Vec<CountRecord>> {
    check_budget(problem, qs, opts, cache)?;
    let fingerprint = problem.fingerprint();
    let label = problem.label();
    let mut out = Vec::with_capacity(qs.len());
    for &q in qs {
        if let Some(r) = cache.get(&fingerprint, q) {
            out.push(r.clone());
            continue;
        }
        let start = Instant::now();
        let (raw, group_order, normalized) = count_one(problem, q)?;
        let wall_ms = start.elapsed().as_millis() as u64;
        info!("{label} q={q}: {normalized} ({wall_ms} ms)");
        let record = CountRecord {
            fingerprint: fingerprint.clone(),
            label: label.clone(),
            q,
            raw,
            group_order,
            normalized,
            wall_ms,
            code_version: CODE_VERSION.to_string(),
        };
        cache.store(record.clone())?;
        out.push(record);
    }
    Ok(out)
}

/// One record per sample and held-out `q`, in that order. A cross-check spec
/// yields the quiver-side records followed by the classical ones.
pub fn run_experiment(
    spec: &Resolved,
    opts: &RunOptions,
    cache: &mut Cache,
) -> Result<Vec<CountRecord>> {
    let qs: Vec<u32> = spec.all_q().collect();
    let mut out = Vec::new();
    if let Some(partner) = &spec.partner {
        check_budget(partner, &qs, opts, cache)?;
    }
    out.extend(run_problem(&spec.problem, &qs, opts, cache)?);
    if let Some(partner) = &spec.partner {
        out.extend(run_problem(partner, &qs, opts, cache)?);
    }
    Ok(out)
}
