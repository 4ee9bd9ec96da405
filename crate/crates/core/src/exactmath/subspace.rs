//! Subspaces of `F_q^n` in canonical RREF form, and their enumeration.

use num_bigint::BigInt;
use num_traits::One;

use super::field::{Elem, FiniteField};
use super::matrix::FMatrix;
use crate::error::{Error, Result};

/// A subspace of `F_q^n`, stored by its unique reduced row echelon basis
/// (one basis vector per row).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FiniteField, n: usize) -> Subspace {
        Subspace {
            basis: FMatrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FiniteField, n: usize) -> Subspace {
        Subspace {
            basis: FMatrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    /// Row space of `rows`.
    pub fn span(rows: &FMatrix) -> Subspace {
        let ech = rows.rref();
        let keep: Vec<usize> = (0..ech.rank).collect();
        let all: Vec<usize> = (0..rows.cols()).collect();
        Subspace {
            basis: ech.matrix.select(&keep, &all),
            pivots: ech.pivots,
        }
    }

    /// Builds from a matrix already in RREF with full row rank.
    fn from_rref(basis: FMatrix, pivots: Vec<usize>) -> Subspace {
        debug_assert_eq!(basis.rows(), pivots.len());
        Subspace { basis, pivots }
    }

    pub fn field(&self) -> FiniteField {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &FMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns not carrying a pivot; the quotient `F^n / self` is coordinatized by them.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient_dim())
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Subtracts the unique combination of basis rows that clears the pivot entries.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (j, &b) in self.basis.row(r).iter().enumerate() {
                if b != 0 {
                    out[j] = f.add(out[j], f.mul(neg, b));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).iter().all(|&e| e == 0)
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&p| v[p]).collect())
        } else {
            None
        }
    }

    /// Image of `v` in `F^n / self`, in free-column coordinates.
    pub fn quotient_coords(&self, v: &[Elem]) -> Vec<Elem> {
        let r = self.reduce(v);
        self.free_columns().iter().map(|&c| r[c]).collect()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.basis.vstack(&other.basis))
    }

    /// Image under the linear map `m` acting on column vectors.
    pub fn image(&self, m: &FMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient_dim());
        Subspace::span(&self.basis.mul(&m.transpose()))
    }

    /// Basis vectors as columns of an `n x dim` matrix.
    pub fn basis_columns(&self) -> FMatrix {
        self.basis.transpose()
    }
}

/// Enumerates all `m`-dimensional subspaces of `F_q^n`, each exactly once as its RREF basis.
pub fn enumerate_subspaces(field: FiniteField, n: usize, m: usize) -> Result<SubspaceIter> {
    if m > n {
        return Err(Error::DimensionTooLarge { m, n });
    }
    let mut shapes = Vec::new();
    for pivots in combinations(n, m) {
        let mut free = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        shapes.push((pivots, free));
    }
    Ok(SubspaceIter {
        field,
        n,
        m,
        shapes,
        shape: 0,
        filling: 0,
    })
}

pub struct SubspaceIter {
    field: FiniteField,
    n: usize,
    m: usize,
    shapes: Vec<(Vec<usize>, Vec<(usize, usize)>)>,
    shape: usize,
    filling: u64,
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let q = self.field.order() as u64;
        loop {
            let (pivots, free) = self.shapes.get(self.shape)?;
            let total = q.pow(free.len() as u32);
            if self.filling >= total {
                self.shape += 1;
                self.filling = 0;
                continue;
            }
            let mut basis = FMatrix::zeros(self.field, self.m, self.n);
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(r, pc, 1);
            }
            let mut code = self.filling;
            for &(r, c) in free {
                basis.set(r, c, (code % q) as Elem);
                code /= q;
            }
            self.filling += 1;
            return Some(Subspace::from_rref(basis, pivots.clone()));
        }
    }
}

fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// `prod_{i<m} (q^{n-i} - 1) / (q^{m-i} - 1)`.
pub fn gaussian_binomial(n: usize, m: usize, q: u64) -> BigInt {
    if m > n {
        return BigInt::from(0);
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..m {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((m - i) as u32) - 1;
    }
    num / den
}

/// `|GL_n(F_q)| = prod_{i<n} (q^n - q^i)`.
pub fn gl_order(n: usize, q: u64) -> BigInt {
    let q = BigInt::from(q);
    let qn = q.pow(n as u32);
    (0..n).map(|i| &qn - q.pow(i as u32)).product()
}

/// Order of the graded group `prod_i GL_{dims_i}(F_q)`.
pub fn graded_gl_order(dims: &[i64], q: u64) -> BigInt {
    dims.iter().map(|&d| gl_order(d as usize, q)).product()
}
