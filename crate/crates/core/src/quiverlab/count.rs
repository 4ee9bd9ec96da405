use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::datum::{bar, ADHMDatum, GradedSubspace};
use crate::error::{Error, Result};
use crate::exactmath::{
    enumerate_subspaces, gaussian_binomial, graded_gl_order, FMatrix, FiniteField, Subspace,
};
use crate::rootdata::{DynkinGraph, GPrimeWeight, IVec};

/// A raw solution count together with its normalization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverCount {
    #[serde(with = "crate::serde_bigint")]
    pub raw: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub group_order: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub count: BigInt,
}

fn dims_of(w: &IVec) -> Result<Vec<usize>> {
    w.as_slice()
        .iter()
        .map(|&x| {
            usize::try_from(x)
                .map_err(|_| Error::InvalidSpec(format!("negative dimension in {w:?}")))
        })
        .collect()
}

/// `(d, v)` of a weight, both required to be nonnegative.
pub fn dimensions(xi: &GPrimeWeight) -> Result<(Vec<usize>, Vec<usize>)> {
    Ok((dims_of(&xi.delta())?, dims_of(xi.v())?))
}

fn check_graph(graph: &DynkinGraph, xi: &GPrimeWeight) -> Result<()> {
    if (graph.family(), graph.rank()) != (xi.graph().family(), xi.graph().rank()) {
        return Err(Error::RankMismatch {
            expected: graph.rank(),
            got: xi.graph().rank(),
        });
    }
    Ok(())
}

fn shapes(
    graph: &DynkinGraph,
    d: &[usize],
    v: &[usize],
) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let x = graph
        .arrows()
        .iter()
        .map(|a| (v[a.target], v[a.source]))
        .collect();
    let p = (0..graph.rank()).map(|i| (v[i], d[i])).collect();
    (x, p)
}

fn space_size(q: u64, shapes: &[(usize, usize)]) -> Option<u64> {
    let cells: usize = shapes.iter().map(|(r, c)| r * c).sum();
    q.checked_pow(cells as u32)
}

fn decode(field: FiniteField, shapes: &[(usize, usize)], mut code: u64) -> Vec<FMatrix> {
    let q = field.order() as u64;
    shapes
        .iter()
        .map(|&(r, c)| {
            let size = q.pow((r * c) as u32);
            let m = FMatrix::from_index(field, r, c, code % size);
            code /= size;
            m
        })
        .collect()
}

/// Rough number of candidate data visited: all `(x, p)` times the `q`-solutions
/// for a full-rank `p`.
pub fn enumeration_size(graph: &DynkinGraph, q: u64, d: &[usize], v: &[usize]) -> f64 {
    let (xs, ps) = shapes(graph, d, v);
    let cells: usize = xs.iter().chain(&ps).map(|(r, c)| r * c).sum::<usize>()
        + (0..graph.rank())
            .map(|i| v[i] * d[i].saturating_sub(v[i]))
            .sum::<usize>();
    (q as f64).powi(cells as i32)
}

/// Visits every flat, stable, costable datum with dimensions `(d, v)` and sums `visit`.
pub fn for_each_bistable<F>(
    graph: &Arc<DynkinGraph>,
    field: FiniteField,
    d: &[usize],
    v: &[usize],
    visit: F,
) -> Result<u128>
where
    F: Fn(&ADHMDatum) -> u128 + Sync,
{
    let q = field.order() as u64;
    let (xs, ps) = shapes(graph, d, v);
    let too_big = || Error::BudgetExceeded {
        estimate: u128::MAX,
        budget: u64::MAX as u128,
    };
    let nx = space_size(q, &xs).ok_or_else(too_big)?;
    let np = space_size(q, &ps).ok_or_else(too_big)?;
    let total = nx.checked_mul(np).ok_or_else(too_big)?;
    let sum = (0..total)
        .into_par_iter()
        .map(|code| {
            let x = decode(field, &xs, code % nx);
            let p = decode(field, &ps, code / nx);
            let mut datum = ADHMDatum::zero(graph.clone(), field, d.to_vec(), v.to_vec());
            datum.x = x;
            datum.p = p;
            if !datum.is_stable() {
                return 0;
            }
            visit_q_solutions(&mut datum, &visit)
        })
        .sum();
    Ok(sum)
}

/// Enumerates all `q` with `p_i q_i = sum eps x x` and sums `visit` over the costable ones.
fn visit_q_solutions<F>(datum: &mut ADHMDatum, visit: &F) -> u128
where
    F: Fn(&ADHMDatum) -> u128,
{
    let f = datum.field;
    let n = datum.rank();
    let mut particular = Vec::with_capacity(n);
    let mut kernels = Vec::with_capacity(n);
    for i in 0..n {
        let mut target = FMatrix::zeros(f, datum.v[i], datum.v[i]);
        for h in datum.graph.arrows_into(i) {
            let eps = f.from_int(datum.graph.arrows()[h].epsilon as i64);
            target = target.add(&datum.x[h].mul(&datum.x[bar(h)]).scale(eps));
        }
        let Some(sol) = datum.p[i].solve(&target) else {
            return 0;
        };
        particular.push(sol);
        kernels.push(datum.p[i].kernel_basis());
    }
    let q = f.order() as u64;
    let coeff_shapes: Vec<(usize, usize)> =
        (0..n).map(|i| (kernels[i].cols(), datum.v[i])).collect();
    let count = space_size(q, &coeff_shapes).expect("solution space too large");
    let mut sum = 0;
    for code in 0..count {
        let coeffs = decode(f, &coeff_shapes, code);
        for i in 0..n {
            datum.q[i] = particular[i].add(&kernels[i].mul(&coeffs[i]));
        }
        if datum.is_costable() {
            sum += visit(datum);
        }
    }
    sum
}

fn normalize(raw: u128, v: &[usize], q: u64) -> Result<QuiverCount> {
    let raw = BigInt::from(raw);
    let dims: Vec<i64> = v.iter().map(|&x| x as i64).collect();
    let order = graded_gl_order(&dims, q);
    if !(&raw % &order).is_zero() {
        return Err(Error::InexactOrbitCount {
            raw: raw.to_string(),
            order: order.to_string(),
        });
    }
    Ok(QuiverCount {
        count: &raw / &order,
        raw,
        group_order: order,
    })
}

pub fn count_x_detailed(
    graph: &Arc<DynkinGraph>,
    xi: &GPrimeWeight,
    field: FiniteField,
) -> Result<QuiverCount> {
    check_graph(graph, xi)?;
    let (d, v) = dimensions(xi)?;
    let raw = for_each_bistable(graph, field, &d, &v, |_| 1)?;
    normalize(raw, &v, field.order() as u64)
}

/// Isomorphism classes, weighted by automorphisms, of representations of type `xi`.
pub fn count_x(graph: &Arc<DynkinGraph>, xi: &GPrimeWeight, field: FiniteField) -> Result<BigInt> {
    Ok(count_x_detailed(graph, xi, field)?.count)
}

/// Targets `(d, v)` for each filtration step.
type StepTypes = Vec<(Vec<usize>, Vec<usize>)>;

fn step_types(xi: &GPrimeWeight, etas: &[GPrimeWeight]) -> Result<StepTypes> {
    for w in std::iter::once(xi).chain(etas) {
        if !w.is_positive_integrable() {
            return Err(Error::NotPositiveIntegrable);
        }
    }
    let total = xi.delta();
    let parts = etas
        .iter()
        .fold(IVec::zeros(total.len()), |acc, e| &acc + &e.delta());
    if total != parts {
        return Err(Error::SizeMismatch {
            total: format!("{total:?}"),
            parts: format!("{parts:?}"),
        });
    }
    etas.iter().map(dimensions).collect()
}

/// Graded subspaces of `D` with the given dimension vector.
pub fn graded_subspaces(field: FiniteField, d: &[usize], s: &[usize]) -> Vec<GradedSubspace> {
    let per: Vec<Vec<Subspace>> = d
        .iter()
        .zip(s)
        .map(|(&n, &m)| {
            enumerate_subspaces(field, n, m)
                .map(|it| it.collect())
                .unwrap_or_default()
        })
        .collect();
    let mut out = vec![Vec::new()];
    for choices in per {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for c in &choices {
                let mut v = prefix.clone();
                v.push(c.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(GradedSubspace).collect()
}

/// Filtrations of the datum's `D` by subrepresentations with subquotient types `steps`.
pub fn count_flags(datum: &ADHMDatum, steps: &[(Vec<usize>, Vec<usize>)]) -> u128 {
    let Some(((last_d, last_v), rest)) = steps.split_last() else {
        return u128::from(datum.d.iter().all(|&x| x == 0));
    };
    if rest.is_empty() {
        return u128::from(&datum.d == last_d && &datum.effective_v() == last_v);
    }
    let Some(sub_dims): Option<Vec<usize>> = datum
        .d
        .iter()
        .zip(last_d)
        .map(|(a, b)| a.checked_sub(*b))
        .collect()
    else {
        return 0;
    };
    let mut sum = 0;
    for s in graded_subspaces(datum.field, &datum.d, &sub_dims) {
        if let Some((sub, quo)) = datum.split(&s) {
            if &quo.effective_v() == last_v {
                sum += count_flags(&sub, rest);
            }
        }
    }
    sum
}

pub fn count_p_detailed(
    graph: &Arc<DynkinGraph>,
    xi: &GPrimeWeight,
    etas: &[GPrimeWeight],
    field: FiniteField,
) -> Result<QuiverCount> {
    check_graph(graph, xi)?;
    for e in etas {
        check_graph(graph, e)?;
    }
    let steps = step_types(xi, etas)?;
    let (d, v) = dimensions(xi)?;
    let raw = for_each_bistable(graph, field, &d, &v, |datum| count_flags(datum, &steps))?;
    normalize(raw, &v, field.order() as u64)
}

/// Pairs (representation of type `xi`, filtration with subquotient types `etas`), per automorphism.
pub fn count_p(
    graph: &Arc<DynkinGraph>,
    xi: &GPrimeWeight,
    etas: &[GPrimeWeight],
    field: FiniteField,
) -> Result<BigInt> {
    Ok(count_p_detailed(graph, xi, etas, field)?.count)
}

/// Every bistable datum of the given dimensions, for inspection at tiny sizes.
pub fn collect_bistable(
    graph: &Arc<DynkinGraph>,
    field: FiniteField,
    d: &[usize],
    v: &[usize],
    limit: usize,
) -> Result<Vec<ADHMDatum>> {
    let found = std::sync::Mutex::new(Vec::new());
    for_each_bistable(graph, field, d, v, |datum| {
        let mut g = found.lock().unwrap();
        if g.len() < limit {
            g.push(datum.clone());
        }
        1
    })?;
    let mut out = found.into_inner().unwrap();
    out.sort_by_key(|x| format!("{:?}", x.to_json()));
    Ok(out)
}

/// The number of graded flags of the given step sizes, before any invariance test.
pub fn flag_space_size(q: u64, d: &[usize], steps: &[Vec<usize>]) -> BigInt {
    let mut remaining = d.to_vec();
    let mut total = BigInt::from(1);
    for step in steps.iter().rev() {
        let lower: Vec<usize> = remaining
            .iter()
            .zip(step)
            .map(|(a, b)| a.saturating_sub(*b))
            .collect();
        for (n, m) in remaining.iter().zip(&lower) {
            total *= gaussian_binomial(*n, *m, q);
        }
        remaining = lower;
    }
    total
}
