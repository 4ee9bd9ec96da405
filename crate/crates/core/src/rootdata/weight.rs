use std::fmt;
use std::ops::{Add, Index, Sub};
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::graph::{build_graph, DynkinGraph, Family};
use crate::error::{Error, Result};

/// An integer vector indexed by the vertices of a graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IVec(pub Vec<i64>);

impl IVec {
    pub fn zeros(n: usize) -> IVec {
        IVec(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn scaled(&self, s: i64) -> IVec {
        IVec(self.0.iter().map(|x| x * s).collect())
    }
}

impl fmt::Debug for IVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<i64>> for IVec {
    fn from(v: Vec<i64>) -> IVec {
        IVec(v)
    }
}

impl From<&[i64]> for IVec {
    fn from(v: &[i64]) -> IVec {
        IVec(v.to_vec())
    }
}

impl Index<usize> for IVec {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &IVec {
    type Output = IVec;
    fn add(self, rhs: &IVec) -> IVec {
        assert_eq!(self.len(), rhs.len());
        IVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IVec {
    type Output = IVec;
    fn sub(self, rhs: &IVec) -> IVec {
        assert_eq!(self.len(), rhs.len());
        IVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

fn check_len(graph: &DynkinGraph, v: &IVec) -> Result<()> {
    if v.len() == graph.rank() {
        Ok(())
    } else {
        Err(Error::RankMismatch {
            expected: graph.rank(),
            got: v.len(),
        })
    }
}

/// `kappa(u, v) = (u - v, u - v + A v)`.
pub fn kappa(graph: &DynkinGraph, u: &IVec, v: &IVec) -> (IVec, IVec) {
    let gamma = u - v;
    let delta = &gamma + &IVec(graph.cartan_apply(v.as_slice()));
    (gamma, delta)
}

/// Preimage of `(gamma, delta)` under `kappa`, if it lies in the lattice image.
pub fn kappa_inv(graph: &DynkinGraph, gamma: &IVec, delta: &IVec) -> Result<(IVec, IVec)> {
    check_len(graph, gamma)?;
    check_len(graph, delta)?;
    let diff = delta - gamma;
    let inv = graph.cartan_inverse();
    let mut v = Vec::with_capacity(graph.rank());
    for row in &inv {
        let s: num_rational::Rational64 = row
            .iter()
            .zip(diff.as_slice())
            .map(|(a, &b)| *a * b)
            .fold(Zero::zero(), |acc, x| acc + x);
        if !s.is_integer() {
            return Err(Error::NotInLattice);
        }
        v.push(s.to_integer());
    }
    let v = IVec(v);
    let u = gamma + &v;
    Ok((u, v))
}

/// A weight of `g' = g + t`, stored as its `kappa`-preimage `(u, v)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GPrimeWeight {
    graph: Arc<DynkinGraph>,
    u: IVec,
    v: IVec,
}

impl GPrimeWeight {
    pub fn new(graph: Arc<DynkinGraph>, u: IVec, v: IVec) -> Result<GPrimeWeight> {
        check_len(&graph, &u)?;
        check_len(&graph, &v)?;
        Ok(GPrimeWeight { graph, u, v })
    }

    pub fn graph(&self) -> &Arc<DynkinGraph> {
        &self.graph
    }

    pub fn u(&self) -> &IVec {
        &self.u
    }

    pub fn v(&self) -> &IVec {
        &self.v
    }

    /// The `Q_g` component `u - v`, in fundamental weight coordinates.
    pub fn gamma(&self) -> IVec {
        &self.u - &self.v
    }

    /// The `Q_t` component `|xi| = u - v + A v`.
    pub fn delta(&self) -> IVec {
        kappa(&self.graph, &self.u, &self.v).1
    }

    pub fn is_integrable(&self) -> bool {
        self.u.is_nonnegative() && self.v.is_nonnegative()
    }

    pub fn is_positive_integrable(&self) -> bool {
        self.is_integrable() && self.gamma().is_nonnegative() && self.delta().is_nonnegative()
    }

    /// Same weight transported along a vertex permutation (`perm[i]` is the image of `i`).
    pub fn permuted(&self, graph: Arc<DynkinGraph>, perm: &[usize]) -> GPrimeWeight {
        let map = |x: &IVec| {
            let mut out = vec![0; x.len()];
            for (i, &p) in perm.iter().enumerate() {
                out[p] = x[i];
            }
            IVec(out)
        };
        GPrimeWeight {
            graph,
            u: map(&self.u),
            v: map(&self.v),
        }
    }
}

impl fmt::Debug for GPrimeWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "xi(d={:?}, v={:?})", self.delta(), self.v)
    }
}

/// The type `kappa(d + v - A v, v)` attached to dimension vectors `(d, v)`.
pub fn type_from_dv(graph: &Arc<DynkinGraph>, d: &IVec, v: &IVec) -> Result<GPrimeWeight> {
    check_len(graph, d)?;
    check_len(graph, v)?;
    let av = IVec(graph.cartan_apply(v.as_slice()));
    let u = &(d + v) - &av;
    let w = GPrimeWeight::new(graph.clone(), u, v.clone())?;
    assert_eq!(&w.delta(), d, "|xi| must equal d");
    Ok(w)
}

/// `sum_i v_i (2|xi| - A v)_i`.
pub fn x_dim(xi: &GPrimeWeight) -> i64 {
    let delta = xi.delta();
    let av = xi.graph.cartan_apply(xi.v.as_slice());
    (0..xi.v.len())
        .map(|i| xi.v[i] * (2 * delta[i] - av[i]))
        .sum()
}

/// `sum_{a<b} v^a v^b`.
pub fn f_dim(sizes: &[i64]) -> i64 {
    let mut acc = 0;
    for a in 0..sizes.len() {
        for b in a + 1..sizes.len() {
            acc += sizes[a] * sizes[b];
        }
    }
    acc
}

/// `sum_{a<b} sum_i v^a_i v^b_i`.
pub fn g_dim(vecs: &[IVec]) -> i64 {
    let Some(first) = vecs.first() else {
        return 0;
    };
    (0..first.len())
        .map(|i| f_dim(&vecs.iter().map(|v| v[i]).collect::<Vec<_>>()))
        .sum()
}

/// A partition, stored with its positive parts in weakly decreasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Accepts a weakly decreasing nonnegative sequence; trailing zeros are dropped.
    pub fn new(parts: Vec<i64>) -> Result<Partition> {
        let ordered = parts.windows(2).all(|w| w[0] >= w[1]);
        if !ordered || parts.iter().any(|&x| x < 0) {
            return Err(Error::NotAPartition(parts));
        }
        Ok(Partition(
            parts
                .into_iter()
                .filter(|&x| x > 0)
                .map(|x| x as usize)
                .collect(),
        ))
    }

    pub fn from_parts(parts: &[usize]) -> Partition {
        Partition::new(parts.iter().map(|&x| x as i64).collect()).expect("valid partition")
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition(
            (1..=first)
                .map(|k| self.0.iter().filter(|&&p| p >= k).count())
                .collect(),
        )
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Partition> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Vec<i64> {
        p.0.into_iter().map(|x| x as i64).collect()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `sum_{i != j} lambda_i lambda_j`.
pub fn o_dim(lambda: &Partition) -> i64 {
    let n = lambda.size() as i64;
    let sq: i64 = lambda.parts().iter().map(|&p| (p * p) as i64).sum();
    n * n - sq
}

fn require_type_a(graph: &DynkinGraph) -> Result<usize> {
    if graph.family() == Family::A {
        Ok(graph.rank() + 1)
    } else {
        Err(Error::NotTypeA)
    }
}

/// The `A_{N-1}` dictionary from weights concentrated at vertex 1 to partitions with at most `N` parts.
pub fn nu_map(eta: &GPrimeWeight) -> Result<Partition> {
    let n = require_type_a(&eta.graph)?;
    let delta = eta.delta();
    if delta.as_slice()[1..].iter().any(|&x| x != 0) {
        return Err(Error::NotConcentrated);
    }
    let v = eta.v();
    let mut nu = Vec::with_capacity(n);
    nu.push(delta[0] - v[0]);
    for i in 1..n - 1 {
        nu.push(v[i - 1] - v[i]);
    }
    nu.push(v[n - 2]);
    Partition::new(nu)
}

/// Inverse of [`nu_map`]: the concentrated weight with `d = (|lambda|, 0, ...)`.
pub fn weight_of_partition(graph: &Arc<DynkinGraph>, lambda: &Partition) -> Result<GPrimeWeight> {
    let n = require_type_a(graph)?;
    if lambda.length() > n {
        return Err(Error::InvalidSpec(format!(
            "partition {lambda:?} has more than {n} parts"
        )));
    }
    let mut v = vec![0i64; n - 1];
    let mut tail = 0i64;
    for i in (1..n).rev() {
        tail += lambda.part(i) as i64;
        v[i - 1] = tail;
    }
    let mut d = vec![0i64; n - 1];
    d[0] = lambda.size() as i64;
    type_from_dv(graph, &IVec(d), &IVec(v))
}

/// JSON form `{"family","rank","u","v"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub u: Vec<i64>,
    pub v: Vec<i64>,
}

impl From<&GPrimeWeight> for WeightJson {
    fn from(w: &GPrimeWeight) -> WeightJson {
        WeightJson {
            family: Some(w.graph.family()),
            rank: Some(w.graph.rank()),
            u: w.u.0.clone(),
            v: w.v.0.clone(),
        }
    }
}

impl WeightJson {
    /// Resolves against `graph`; an embedded family/rank must agree with it.
    pub fn resolve(&self, graph: &Arc<DynkinGraph>) -> Result<GPrimeWeight> {
        if self.family.is_some_and(|f| f != graph.family())
            || self.rank.is_some_and(|r| r != graph.rank())
        {
            return Err(Error::InvalidSpec(format!(
                "weight declared on {:?}{:?} used on {graph:?}",
                self.family, self.rank
            )));
        }
        GPrimeWeight::new(graph.clone(), IVec(self.u.clone()), IVec(self.v.clone()))
    }

    pub fn resolve_standalone(&self) -> Result<GPrimeWeight> {
        let (Some(family), Some(rank)) = (self.family, self.rank) else {
            return Err(Error::InvalidSpec("weight without family/rank".into()));
        };
        self.resolve(&Arc::new(build_graph(family, rank)?))
    }
}

impl Serialize for GPrimeWeight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeightJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GPrimeWeight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        WeightJson::deserialize(d)?
            .resolve_standalone()
            .map_err(serde::de::Error::custom)
    }
}

/// Checked conversion used when dimension vectors index matrices.
pub fn as_dims(v: &IVec) -> Vec<usize> {
    v.0.iter()
        .map(|&x| x.to_usize().expect("nonnegative dimension"))
        .collect()
}
