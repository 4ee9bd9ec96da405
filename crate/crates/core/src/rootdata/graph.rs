use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            other => Err(Error::InvalidSpec(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// An oriented edge. Vertices are 0-based internally; user-facing labels are `index + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    /// Index of the same edge with the opposite orientation.
    pub reverse: usize,
    pub epsilon: i8,
}

/// A simply laced Dynkin graph with its doubled arrow set `H`, a sign
/// function `epsilon` on `H`, and the Cartan matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DynkinGraph {
    family: Family,
    rank: usize,
    edges: Vec<(usize, usize)>,
    arrows: Vec<Arrow>,
    cartan: Vec<Vec<i64>>,
}

impl fmt::Debug for DynkinGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Canonical labeling: `A_n` is a chain, `D_n` a chain `1..n-2` with two
/// leaves on `n-2`, `E_n` the chain `1-3-4-5-...` with `2` attached to `4`.
pub fn build_graph(family: Family, rank: usize) -> Result<DynkinGraph> {
    let invalid = Error::InvalidGraph {
        family: family.letter(),
        rank,
    };
    let labelled: Vec<(usize, usize)> = match family {
        Family::A if rank >= 1 => (1..rank).map(|i| (i, i + 1)).collect(),
        Family::D if rank >= 4 => {
            let mut e: Vec<_> = (1..rank - 2).map(|i| (i, i + 1)).collect();
            e.push((rank - 2, rank - 1));
            e.push((rank - 2, rank));
            e
        }
        Family::E if (6..=8).contains(&rank) => {
            let mut e = vec![(1, 3), (3, 4), (2, 4)];
            e.extend((4..rank).map(|i| (i, i + 1)));
            e
        }
        _ => return Err(invalid),
    };
    let edges: Vec<(usize, usize)> = labelled.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    Ok(DynkinGraph::from_edges(family, rank, edges))
}

impl DynkinGraph {
    fn from_edges(family: Family, rank: usize, edges: Vec<(usize, usize)>) -> DynkinGraph {
        let mut arrows = Vec::with_capacity(2 * edges.len());
        for (k, &(a, b)) in edges.iter().enumerate() {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            arrows.push(Arrow {
                source: lo,
                target: hi,
                reverse: 2 * k + 1,
                epsilon: 1,
            });
            arrows.push(Arrow {
                source: hi,
                target: lo,
                reverse: 2 * k,
                epsilon: -1,
            });
        }
        let mut cartan = vec![vec![0i64; rank]; rank];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(a, b) in &edges {
            cartan[a][b] = -1;
            cartan[b][a] = -1;
        }
        DynkinGraph {
            family,
            rank,
            edges,
            arrows,
            cartan,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Arrow indices with the given target.
    pub fn arrows_into(&self, vertex: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&h| self.arrows[h].target == vertex)
    }

    pub fn arrows_out_of(&self, vertex: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&h| self.arrows[h].source == vertex)
    }

    /// Same graph with `epsilon` replaced by `-epsilon` everywhere.
    pub fn negate_epsilon(&self) -> DynkinGraph {
        let mut g = self.clone();
        for a in &mut g.arrows {
            a.epsilon = -a.epsilon;
        }
        g
    }

    /// Swaps which orientation of edge `edge` carries `epsilon = +1`.
    pub fn flip_edge(&self, edge: usize) -> DynkinGraph {
        let mut g = self.clone();
        for h in [2 * edge, 2 * edge + 1] {
            g.arrows[h].epsilon = -g.arrows[h].epsilon;
        }
        g
    }

    /// Whether `perm` (0-based, `perm[i]` is the image of `i`) preserves the edge set.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.rank {
            return false;
        }
        let mut seen = vec![false; self.rank];
        for &p in perm {
            if p >= self.rank || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        self.edges.iter().all(|&(a, b)| {
            let (x, y) = (perm[a], perm[b]);
            self.edges.contains(&(x, y)) || self.edges.contains(&(y, x))
        })
    }

    /// `A v`.
    pub fn cartan_apply(&self, v: &[i64]) -> Vec<i64> {
        self.cartan
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `A^{-1}` as exact rationals.
    pub fn cartan_inverse(&self) -> Vec<Vec<Rational64>> {
        let n = self.rank;
        let mut m: Vec<Vec<Rational64>> = self
            .cartan
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r: Vec<Rational64> =
                    row.iter().map(|&a| Rational64::from_integer(a)).collect();
                r.extend((0..n).map(|j| {
                    if i == j {
                        Rational64::one()
                    } else {
                        Rational64::zero()
                    }
                }));
                r
            })
            .collect();
        for c in 0..n {
            let piv = (c..n)
                .find(|&r| !m[r][c].is_zero())
                .expect("Cartan matrix is invertible");
            m.swap(c, piv);
            let inv = m[c][c].recip();
            for x in m[c].iter_mut() {
                *x *= inv;
            }
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let factor = m[r][c];
                    for k in 0..2 * n {
                        let sub = factor * m[c][k];
                        m[r][k] -= sub;
                    }
                }
            }
        }
        m.into_iter().map(|row| row[n..].to_vec()).collect()
    }

    /// Determinant of the Cartan matrix.
    pub fn cartan_det(&self) -> i64 {
        match self.family {
            Family::A => self.rank as i64 + 1,
            Family::D => 4,
            Family::E => 9 - self.rank as i64,
        }
    }

    /// `det(A) * A^{-1}`, an integer matrix.
    pub fn cartan_adjugate(&self) -> Vec<Vec<i64>> {
        let det = Rational64::from_integer(self.cartan_det());
        self.cartan_inverse()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| {
                        let y = x * det;
                        assert!(y.is_integer());
                        y.to_integer()
                    })
                    .collect()
            })
            .collect()
    }
}
