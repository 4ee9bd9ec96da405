//! Nilpotent operators over `F_q` as `k[[t]]`-modules: types, orbit counts,
//! invariant flags and Hall polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{
    enumerate_subspaces, gl_order, lagrange_fit, FMatrix, FiniteField, QPoly, Subspace,
};
use crate::rootdata::{f_dim, o_dim, Partition};

/// A finite `k[[t]]`-module, given by the nilpotent action of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentRep {
    t: FMatrix,
}

impl NilpotentRep {
    pub fn new(t: FMatrix) -> Result<NilpotentRep> {
        if !t.is_square() || !t.pow(t.rows()).is_zero() {
            return Err(Error::NotNilpotent);
        }
        Ok(NilpotentRep { t })
    }

    pub fn field(&self) -> FiniteField {
        self.t.field()
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    pub fn matrix(&self) -> &FMatrix {
        &self.t
    }

    pub fn is_invariant(&self, s: &Subspace) -> bool {
        (0..s.dim()).all(|r| s.contains(&self.t.apply(s.basis().row(r))))
    }

    /// Action on an invariant subspace, in the coordinates of its RREF basis.
    pub fn restrict(&self, s: &Subspace) -> NilpotentRep {
        let k = s.dim();
        let mut m = FMatrix::zeros(self.field(), k, k);
        for j in 0..k {
            let image = self.t.apply(s.basis().row(j));
            let c = s.coords(&image).expect("subspace is not invariant");
            for (i, x) in c.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        NilpotentRep { t: m }
    }

    /// Induced action on `F^n / s`, in free-column coordinates.
    pub fn quotient(&self, s: &Subspace) -> NilpotentRep {
        let free = s.free_columns();
        let n = self.dim();
        let mut m = FMatrix::zeros(self.field(), free.len(), free.len());
        for (j, &c) in free.iter().enumerate() {
            let mut e = vec![0; n];
            e[c] = 1;
            for (i, x) in s.quotient_coords(&self.t.apply(&e)).into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        NilpotentRep { t: m }
    }
}

/// `lambda_i = rank T^{i-1} - rank T^i`.
pub fn module_type(rep: &NilpotentRep) -> Partition {
    let mut ranks = vec![rep.dim()];
    let mut power = FMatrix::identity(rep.field(), rep.dim());
    while *ranks.last().unwrap() > 0 {
        power = power.mul(&rep.t);
        ranks.push(power.rank());
    }
    let parts: Vec<i64> = ranks.windows(2).map(|w| (w[0] - w[1]) as i64).collect();
    Partition::new(parts).expect("rank differences of a nilpotent operator decrease")
}

/// Jordan normal form with block sizes given by the conjugate of `lambda`.
pub fn rep_of_type(field: FiniteField, lambda: &Partition) -> NilpotentRep {
    let n = lambda.size();
    let mut t = FMatrix::zeros(field, n, n);
    let mut offset = 0;
    for &block in lambda.conjugate().parts() {
        for i in 1..block {
            t.set(offset + i - 1, offset + i, 1);
        }
        offset += block;
    }
    let rep = NilpotentRep { t };
    debug_assert_eq!(&module_type(&rep), lambda);
    rep
}

/// Order of `Aut(rep_of_type(lambda))` over `F_q`.
///
/// With `m_k` the number of Jordan blocks of size `k`, this is
/// `q^(sum lambda_i^2 - sum m_k(m_k+1)/2) * prod_k prod_{j<=m_k} (q^j - 1)`.
pub fn centralizer_order(lambda: &Partition, q: u64) -> BigInt {
    let q = BigInt::from(q);
    let mut mult: BTreeMap<usize, u32> = BTreeMap::new();
    for &b in lambda.conjugate().parts() {
        *mult.entry(b).or_default() += 1;
    }
    let square: u32 = lambda.parts().iter().map(|&x| (x * x) as u32).sum();
    let tri: u32 = mult.values().map(|&m| m * (m + 1) / 2).sum();
    let mut out: BigInt = Pow::pow(&q, square - tri);
    for &m in mult.values() {
        for j in 1..=m {
            out *= Pow::pow(&q, j) - 1;
        }
    }
    out
}

/// Invertible matrices commuting with `T`, counted by listing the commutant.
pub fn centralizer_order_exhaustive(rep: &NilpotentRep) -> BigInt {
    let f = rep.field();
    let n = rep.dim();
    // the linear map X -> TX - XT on n^2 coordinates
    let mut sys = FMatrix::zeros(f, n * n, n * n);
    for k in 0..n * n {
        let mut x = FMatrix::zeros(f, n, n);
        x.set(k / n, k % n, 1);
        let c = rep.t.mul(&x).sub(&x.mul(&rep.t));
        for (r, &v) in c.entries().iter().enumerate() {
            sys.set(r, k, v);
        }
    }
    let kernel = sys.kernel_basis();
    let dim = kernel.cols();
    let q = f.order() as u64;
    let total = q
        .checked_pow(dim as u32)
        .expect("commutant too large to list");
    (0..total)
        .into_par_iter()
        .filter(|&code| {
            let coeffs = FMatrix::from_index(f, dim, 1, code);
            let flat = kernel.mul(&coeffs);
            FMatrix::from_vec(f, n, n, flat.entries().to_vec()).is_invertible()
        })
        .count()
        .into()
}

/// Number of nilpotent `n x n` matrices of type `lambda`: `|GL_n| / |Aut|`.
pub fn count_o(lambda: &Partition, q: u64) -> BigInt {
    let g = gl_order(lambda.size(), q);
    let c = centralizer_order(lambda, q);
    debug_assert!((&g % &c).is_zero());
    g / c
}

fn all_square_matrices(field: FiniteField, n: usize) -> Result<u64> {
    (field.order() as u64)
        .checked_pow((n * n) as u32)
        .filter(|&t| t <= 1 << 26)
        .ok_or(Error::BudgetExceeded {
            estimate: (field.order() as u128).saturating_pow((n * n) as u32),
            budget: 1 << 26,
        })
}

/// Direct enumeration of all `n x n` matrices of type `lambda`.
pub fn count_o_exhaustive(field: FiniteField, lambda: &Partition) -> Result<BigInt> {
    let n = lambda.size();
    let total = all_square_matrices(field, n)?;
    Ok((0..total)
        .into_par_iter()
        .filter(|&code| {
            NilpotentRep::new(FMatrix::from_index(field, n, n, code))
                .is_ok_and(|r| &module_type(&r) == lambda)
        })
        .count()
        .into())
}

pub fn invariant_subspaces(
    rep: &NilpotentRep,
    m: usize,
) -> Result<impl Iterator<Item = Subspace> + '_> {
    Ok(enumerate_subspaces(rep.field(), rep.dim(), m)?.filter(move |s| rep.is_invariant(s)))
}

fn check_sizes(n: usize, mus: &[Partition]) -> Result<()> {
    let parts: usize = mus.iter().map(Partition::size).sum();
    if parts != n {
        return Err(Error::SizeMismatch {
            total: n.to_string(),
            parts: parts.to_string(),
        });
    }
    Ok(())
}

/// Invariant filtrations `0 = D^0 < ... < D^n = D` with `D^a / D^{a-1}` of type `mus[a-1]`.
pub fn count_flags_fixed(rep: &NilpotentRep, mus: &[Partition]) -> Result<BigInt> {
    check_sizes(rep.dim(), mus)?;
    Ok(flags_rec(rep, mus))
}

fn flags_rec(rep: &NilpotentRep, mus: &[Partition]) -> BigInt {
    let Some((last, rest)) = mus.split_last() else {
        return BigInt::from(u8::from(rep.dim() == 0));
    };
    if rest.is_empty() {
        return BigInt::from(u8::from(&module_type(rep) == last));
    }
    let m = rep.dim() - last.size();
    invariant_subspaces(rep, m)
        .expect("dimension checked")
        .filter(|s| &module_type(&rep.quotient(s)) == last)
        .map(|s| flags_rec(&rep.restrict(&s), rest))
        .sum()
}

/// `#{(T, flag)}` with `T` of type `lambda`, via orbit size times flags of one representative.
pub fn count_n(field: FiniteField, lambda: &Partition, mus: &[Partition]) -> Result<BigInt> {
    check_sizes(lambda.size(), mus)?;
    let flags = flags_rec(&rep_of_type(field, lambda), mus);
    Ok(count_o(lambda, field.order() as u64) * flags)
}

/// The same count by enumerating every matrix and every filtration.
pub fn count_n_direct(field: FiniteField, lambda: &Partition, mus: &[Partition]) -> Result<BigInt> {
    let n = lambda.size();
    check_sizes(n, mus)?;
    let total = all_square_matrices(field, n)?;
    Ok((0..total)
        .into_par_iter()
        .filter_map(|code| {
            let rep = NilpotentRep::new(FMatrix::from_index(field, n, n, code)).ok()?;
            (&module_type(&rep) == lambda).then(|| flags_rec(&rep, mus))
        })
        .sum())
}

/// `f + (o_lambda + sum o_mu) / 2`, the predicted degree of the count polynomial.
pub fn hall_degree_bound(lambda: &Partition, mus: &[Partition]) -> Result<usize> {
    let sizes: Vec<i64> = mus.iter().map(|m| m.size() as i64).collect();
    let twice = 2 * f_dim(&sizes) + o_dim(lambda) + mus.iter().map(o_dim).sum::<i64>();
    if twice % 2 != 0 || twice < 0 {
        return Err(Error::InvalidSpec(format!("odd degree bound {twice}/2")));
    }
    Ok((twice / 2) as usize)
}

fn fit_validated(points: &[(BigInt, BigInt)], degree: usize) -> Result<QPoly> {
    if points.len() < degree + 1 {
        return Err(Error::InsufficientPoints {
            need: degree + 1,
            have: points.len(),
        });
    }
    let (fit, held) = points.split_at(degree + 1);
    let poly = lagrange_fit(fit)?;
    for (x, y) in held {
        let got = poly.eval_int(x);
        if got != num_rational::BigRational::from_integer(y.clone()) {
            return Err(Error::ValidationFailed {
                q: x.to_string(),
                observed: y.to_string(),
                predicted: got.to_string(),
            });
        }
    }
    Ok(poly)
}

/// Hall polynomial `h = n / o_lambda`, fitted from counts at the given fields.
pub fn hall_polynomial(
    fields: &[FiniteField],
    lambda: &Partition,
    mus: &[Partition],
) -> Result<QPoly> {
    let deg_n = hall_degree_bound(lambda, mus)?;
    let deg_o = o_dim(lambda) as usize;
    let mut n_points = Vec::new();
    let mut o_points = Vec::new();
    for f in fields {
        let q = f.order() as u64;
        n_points.push((BigInt::from(q), count_n(*f, lambda, mus)?));
        o_points.push((BigInt::from(q), count_o(lambda, q)));
    }
    let n_poly = fit_validated(&n_points, deg_n)?;
    let o_poly = fit_validated(&o_points, deg_o)?;
    n_poly.div_exact(&o_poly)
}

/// One exact count on the classical side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallCountRecord {
    pub lambda: Partition,
    pub mus: Vec<Partition>,
    pub q: u32,
    #[serde(with = "crate::serde_bigint")]
    pub count: BigInt,
}

impl HallCountRecord {
    pub fn compute(
        field: FiniteField,
        lambda: &Partition,
        mus: &[Partition],
    ) -> Result<HallCountRecord> {
        Ok(HallCountRecord {
            lambda: lambda.clone(),
            mus: mus.to_vec(),
            q: field.order(),
            count: count_n(field, lambda, mus)?,
        })
    }
}

/// Total number of nilpotent `n x n` matrices, `q^(n^2 - n)`.
pub fn nilpotent_total(n: usize, q: u64) -> BigInt {
    Pow::pow(&BigInt::from(q), (n * n - n) as u32)
}
