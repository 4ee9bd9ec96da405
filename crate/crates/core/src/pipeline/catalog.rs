use std::sync::Arc;

use super::cache::Cache;
use super::report::Report;
use super::run::{run_experiment, RunOptions};
use super::spec::{ExperimentSpec, Kind};
use super::verify::{cross_check_a_type, fit_and_verify};
use crate::error::Result;
use crate::rootdata::{build_graph, weight_of_partition, Family, Partition, WeightJson};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: ExperimentSpec,
}

#[derive(Clone, Debug)]
pub struct CatalogOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn entry(name: &str, spec: ExperimentSpec) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        spec,
    }
}

/// The fitted experiments of the built-in suite.
pub fn fit_catalog() -> Vec<CatalogEntry> {
    let dv = |rank, xi, etas: &[(&[i64], &[i64])], q: &[u32], h: &[u32]| {
        ExperimentSpec::quiver_dv(Family::A, rank, xi, etas, q, h).expect("catalog spec")
    };
    let std1: (&[i64], &[i64]) = (&[1], &[0]);
    let std2: (&[i64], &[i64]) = (&[1, 0], &[0, 0]);
    vec![
        entry(
            "hall (1,1) / (1),(1)",
            ExperimentSpec::hall(&[1, 1], &[&[1], &[1]], &[2, 3, 4, 5], &[7, 8]),
        ),
        entry(
            "hall (2) / (1),(1)",
            ExperimentSpec::hall(&[2], &[&[1], &[1]], &[2, 3, 4], &[5, 7]),
        ),
        entry(
            "hall (2,1) / (1)x3",
            ExperimentSpec::hall(&[2, 1], &[&[1], &[1], &[1]], &[2, 3, 4, 5, 7, 8], &[9]),
        ),
        entry(
            "A1 X (2,1)",
            dv(1, (&[2], &[1]), &[(&[2], &[1])], &[2, 3, 4], &[5]),
        ),
        entry(
            "A1 (3,1) / std x3",
            dv(
                1,
                (&[3], &[1]),
                &[std1, std1, std1],
                &[2, 3, 4, 5, 7, 8],
                &[9],
            ),
        ),
        entry(
            "A2 (2,0;1,0) / std x2",
            dv(2, (&[2, 0], &[1, 0]), &[std2, std2], &[2, 3, 4], &[5]),
        ),
        entry(
            "A2 (2,0;0,0) / std x2",
            dv(2, (&[2, 0], &[0, 0]), &[std2, std2], &[2, 3], &[4]),
        ),
    ]
}

/// Ordered lists of nonempty partitions with at most `parts` parts and total size `n`.
fn partition_lists(n: usize, parts: usize) -> Vec<Vec<Partition>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 1..=n {
        for first in Partition::all_of_size(k)
            .into_iter()
            .filter(|p| p.length() <= parts)
        {
            for mut rest in partition_lists(n - k, parts) {
                rest.insert(0, first.clone());
                out.push(rest);
            }
        }
    }
    out
}

/// Every concentrated `A_{N-1}` cross-check with `|d| <= max_size` and at least two factors.
pub fn cross_check_sweep(n: usize, max_size: usize, q: &[u32]) -> Vec<CatalogEntry> {
    let graph = Arc::new(build_graph(Family::A, n - 1).expect("type A"));
    let to_json = |p: &Partition| {
        let w = weight_of_partition(&graph, p).expect("at most N parts");
        WeightJson {
            family: None,
            rank: None,
            u: w.u().0.clone(),
            v: w.v().0.clone(),
        }
    };
    let mut out = Vec::new();
    for size in 1..=max_size {
        for lambda in Partition::all_of_size(size)
            .into_iter()
            .filter(|p| p.length() <= n)
        {
            for mus in partition_lists(size, n)
                .into_iter()
                .filter(|m| m.len() >= 2)
            {
                let names: Vec<String> = mus.iter().map(|m| format!("{m:?}")).collect();
                let spec = ExperimentSpec {
                    kind: Kind::CrossCheck,
                    family: Some(Family::A),
                    rank: Some(n - 1),
                    xi: Some(to_json(&lambda)),
                    etas: mus.iter().map(to_json).collect(),
                    lambda: None,
                    mus: Vec::new(),
                    q: q.to_vec(),
                    holdout: Vec::new(),
                };
                out.push(entry(
                    &format!("cross A{} {lambda:?} / {}", n - 1, names.join(",")),
                    spec,
                ));
            }
        }
    }
    out
}

pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = fit_catalog();
    out.extend(cross_check_sweep(3, 3, &[2, 3]));
    out
}

/// Runs one entry, collecting its artifacts into `report`.
pub fn run_entry(
    e: &CatalogEntry,
    opts: &RunOptions,
    cache: &mut Cache,
    report: &mut Report,
) -> Result<CatalogOutcome> {
    let spec = e.spec.resolve()?;
    if spec.kind == Kind::CrossCheck {
        return Ok(match cross_check_a_type(&spec, opts, cache) {
            Ok(c) => {
                let vals: Vec<String> = c
                    .rows
                    .iter()
                    .map(|r| format!("q={}: {}", r.q, r.quiver))
                    .collect();
                report.cross.push(c);
                CatalogOutcome {
                    name: e.name.clone(),
                    pass: true,
                    detail: vals.join(", "),
                }
            }
            Err(err) => CatalogOutcome {
                name: e.name.clone(),
                pass: false,
                detail: err.to_string(),
            },
        });
    }
    let records = run_experiment(&spec, opts, cache)?;
    let v = fit_and_verify(&spec, &records)?;
    let outcome = CatalogOutcome {
        name: e.name.clone(),
        pass: v.verdict.passed(),
        detail: format!("{} ({})", v.summary(), v.polynomial),
    };
    report.records.extend(records);
    report.verify.push(v);
    Ok(outcome)
}
