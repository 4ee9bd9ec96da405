//! Dense matrices over a [`FiniteField`].

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Elem, FiniteField};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FMatrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FMatrix<{}>{}x{}[", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Output of [`FMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: FMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl FMatrix {
    pub fn zeros(field: FiniteField, rows: usize, cols: usize) -> FMatrix {
        FMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FiniteField, n: usize) -> FMatrix {
        let mut m = FMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(field: FiniteField, rows: usize, cols: usize, data: Vec<Elem>) -> FMatrix {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        assert!(
            data.iter().all(|&e| (e as u32) < field.order()),
            "entries must be reduced"
        );
        FMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from integer rows, mapping each entry through `Z -> F_p`.
    pub fn from_ints(field: FiniteField, rows: &[&[i64]]) -> FMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| field.from_int(x)));
        }
        FMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Decodes `code` as base-`q` digits filling the entries row-major.
    pub fn from_index(field: FiniteField, rows: usize, cols: usize, mut code: u64) -> FMatrix {
        let q = field.order() as u64;
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            data.push((code % q) as Elem);
            code /= q;
        }
        FMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> FMatrix {
        let mut t = FMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let f = self.field;
        let mut out = FMatrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &FMatrix) -> FMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in sum"
        );
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        FMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &FMatrix) -> FMatrix {
        self.add(&rhs.scale(self.field.neg(1)))
    }

    pub fn scale(&self, s: Elem) -> FMatrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        FMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn pow(&self, e: usize) -> FMatrix {
        assert!(self.is_square());
        let mut acc = FMatrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        FMatrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        }
    }

    /// Submatrix of the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> FMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c));
            }
        }
        FMatrix {
            field: self.field,
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for j in c..m.cols {
                    let v = f.add(m.get(i, j), f.mul(neg, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            rank: pivots.len(),
            pivots,
            matrix: m,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space, one basis vector per column.
    pub fn kernel_basis(&self) -> FMatrix {
        let f = self.field;
        let ech = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut basis = FMatrix::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, 1);
            for (row, &pc) in ech.pivots.iter().enumerate() {
                basis.set(pc, k, f.neg(ech.matrix.get(row, fc)));
            }
        }
        basis
    }

    /// One solution `x` of `self * x = rhs` (columnwise), or `None` if inconsistent.
    pub fn solve(&self, rhs: &FMatrix) -> Option<FMatrix> {
        assert_eq!(self.rows, rhs.rows, "row mismatch in solve");
        let f = self.field;
        let aug = self.hstack(rhs).rref();
        if aug.pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = FMatrix::zeros(f, self.cols, rhs.cols);
        for (row, &pc) in aug.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, aug.matrix.get(row, self.cols + j));
            }
        }
        Some(x)
    }

    /// Whether the square matrix is invertible.
    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}
