use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Elem, FMatrix, FiniteField, Subspace};
use crate::rootdata::{type_from_dv, DynkinGraph, GPrimeWeight, IVec};

/// One subspace per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSubspace(pub Vec<Subspace>);

impl GradedSubspace {
    pub fn zero(field: FiniteField, dims: &[usize]) -> GradedSubspace {
        GradedSubspace(dims.iter().map(|&n| Subspace::zero(field, n)).collect())
    }

    pub fn full(field: FiniteField, dims: &[usize]) -> GradedSubspace {
        GradedSubspace(dims.iter().map(|&n| Subspace::full(field, n)).collect())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.0.iter().map(Subspace::dim).collect()
    }

    pub fn contains_space(&self, other: &GradedSubspace) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| a.contains_space(b))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|s| s.dim() == 0)
    }
}

impl std::ops::Index<usize> for GradedSubspace {
    type Output = Subspace;
    fn index(&self, i: usize) -> &Subspace {
        &self.0[i]
    }
}

/// A chain `0 = D^0 < D^1 < ... < D^n = D` of graded subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFlag(pub Vec<GradedSubspace>);

impl GradedFlag {
    pub fn new(steps: Vec<GradedSubspace>) -> Result<GradedFlag> {
        let ok = steps.first().is_some_and(GradedSubspace::is_zero)
            && steps.windows(2).all(|w| w[1].contains_space(&w[0]));
        if !ok {
            return Err(Error::InvalidSpec(
                "flag steps must increase from zero".into(),
            ));
        }
        Ok(GradedFlag(steps))
    }
}

/// Framed data `x_h: V_s(h) -> V_t(h)`, `p_i: D_i -> V_i`, `q_i: V_i -> D_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ADHMDatum {
    pub graph: Arc<DynkinGraph>,
    pub field: FiniteField,
    pub d: Vec<usize>,
    pub v: Vec<usize>,
    pub x: Vec<FMatrix>,
    pub p: Vec<FMatrix>,
    pub q: Vec<FMatrix>,
}

pub(crate) fn bar(h: usize) -> usize {
    h ^ 1
}

impl ADHMDatum {
    pub fn new(
        graph: Arc<DynkinGraph>,
        field: FiniteField,
        d: Vec<usize>,
        v: Vec<usize>,
        x: Vec<FMatrix>,
        p: Vec<FMatrix>,
        q: Vec<FMatrix>,
    ) -> Result<ADHMDatum> {
        let n = graph.rank();
        let shape_err = || Error::InvalidSpec("datum matrix shapes do not match (d, v)".into());
        if d.len() != n
            || v.len() != n
            || p.len() != n
            || q.len() != n
            || x.len() != graph.arrows().len()
        {
            return Err(shape_err());
        }
        for (h, a) in graph.arrows().iter().enumerate() {
            if (x[h].rows(), x[h].cols()) != (v[a.target], v[a.source]) {
                return Err(shape_err());
            }
        }
        for i in 0..n {
            if (p[i].rows(), p[i].cols()) != (v[i], d[i])
                || (q[i].rows(), q[i].cols()) != (d[i], v[i])
            {
                return Err(shape_err());
            }
        }
        Ok(ADHMDatum {
            graph,
            field,
            d,
            v,
            x,
            p,
            q,
        })
    }

    /// The all-zero datum of the given dimensions.
    pub fn zero(
        graph: Arc<DynkinGraph>,
        field: FiniteField,
        d: Vec<usize>,
        v: Vec<usize>,
    ) -> ADHMDatum {
        let x = graph
            .arrows()
            .iter()
            .map(|a| FMatrix::zeros(field, v[a.target], v[a.source]))
            .collect();
        let p = (0..graph.rank())
            .map(|i| FMatrix::zeros(field, v[i], d[i]))
            .collect();
        let q = (0..graph.rank())
            .map(|i| FMatrix::zeros(field, d[i], v[i]))
            .collect();
        ADHMDatum {
            graph,
            field,
            d,
            v,
            x,
            p,
            q,
        }
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    /// `R_i = sum_{t(h)=i} eps(h) x_h x_hbar - p_i q_i`.
    pub fn moment_residual(&self) -> Vec<FMatrix> {
        let f = self.field;
        (0..self.rank())
            .map(|i| {
                let mut r = self.p[i].mul(&self.q[i]).scale(f.neg(1));
                for h in self.graph.arrows_into(i) {
                    let term = self.x[h].mul(&self.x[bar(h)]);
                    let eps = f.from_int(self.graph.arrows()[h].epsilon as i64);
                    r = r.add(&term.scale(eps));
                }
                r
            })
            .collect()
    }

    pub fn is_flat(&self) -> bool {
        self.moment_residual().iter().all(FMatrix::is_zero)
    }

    /// Smallest `x`-invariant graded subspace of `V` containing `seed`.
    pub fn saturate(&self, seed: &GradedSubspace) -> GradedSubspace {
        let mut cur = seed.clone();
        loop {
            let mut grew = false;
            for (h, a) in self.graph.arrows().iter().enumerate() {
                if cur[a.source].dim() == 0 {
                    continue;
                }
                let img = cur[a.source].image(&self.x[h]);
                if !cur[a.target].contains_space(&img) {
                    cur.0[a.target] = cur[a.target].sum(&img);
                    grew = true;
                }
            }
            if !grew {
                return cur;
            }
        }
    }

    /// `p(S)` for a graded subspace `S` of `D`.
    pub fn p_image(&self, s: &GradedSubspace) -> GradedSubspace {
        GradedSubspace((0..self.rank()).map(|i| s[i].image(&self.p[i])).collect())
    }

    pub fn q_image(&self, w: &GradedSubspace) -> GradedSubspace {
        GradedSubspace((0..self.rank()).map(|i| w[i].image(&self.q[i])).collect())
    }

    pub fn is_stable(&self) -> bool {
        let full = GradedSubspace::full(self.field, &self.d);
        self.saturate(&self.p_image(&full)).dims() == self.v
    }

    /// Largest `x`-invariant graded subspace of `V` inside `ker q`, as the
    /// common kernel of the constraint rows `C_i`.
    pub fn costable_radical(&self) -> GradedSubspace {
        let mut c: Vec<FMatrix> = self.q.clone();
        loop {
            let mut next = Vec::with_capacity(self.rank());
            for i in 0..self.rank() {
                let mut m = c[i].clone();
                for h in self.graph.arrows_out_of(i) {
                    let t = self.graph.arrows()[h].target;
                    m = m.vstack(&c[t].mul(&self.x[h]));
                }
                next.push(Subspace::span(&m).basis().clone());
            }
            let stable = next.iter().zip(&c).all(|(a, b)| a.rows() == b.rank());
            c = next;
            if stable {
                break;
            }
        }
        GradedSubspace(
            c.iter()
                .map(|ci| Subspace::span(&ci.kernel_basis().transpose()))
                .collect(),
        )
    }

    pub fn is_costable(&self) -> bool {
        self.costable_radical().is_zero()
    }

    /// `dim V - dim` of the costable radical.
    pub fn effective_v(&self) -> Vec<usize> {
        let w = self.costable_radical().dims();
        self.v.iter().zip(w).map(|(a, b)| a - b).collect()
    }

    pub fn type_of(&self) -> Result<GPrimeWeight> {
        if !self.is_flat() {
            return Err(Error::NotFlat);
        }
        if !self.is_stable() {
            return Err(Error::NotStable);
        }
        let d = IVec(self.d.iter().map(|&x| x as i64).collect());
        let v = IVec(self.effective_v().iter().map(|&x| x as i64).collect());
        type_from_dv(&self.graph, &d, &v)
    }

    /// `V' = saturate(p(S))`.
    pub fn generated(&self, s: &GradedSubspace) -> GradedSubspace {
        self.saturate(&self.p_image(s))
    }

    pub fn is_subrep(&self, s: &GradedSubspace) -> bool {
        let vp = self.generated(s);
        s.contains_space(&self.q_image(&vp))
    }

    fn sub_with(&self, s: &GradedSubspace, vp: &GradedSubspace) -> ADHMDatum {
        let f = self.field;
        let x = self
            .graph
            .arrows()
            .iter()
            .enumerate()
            .map(|(h, a)| restrict_map(f, &self.x[h], &vp[a.source], &vp[a.target]))
            .collect();
        let p = (0..self.rank())
            .map(|i| restrict_map(f, &self.p[i], &s[i], &vp[i]))
            .collect();
        let q = (0..self.rank())
            .map(|i| restrict_map(f, &self.q[i], &vp[i], &s[i]))
            .collect();
        ADHMDatum {
            graph: self.graph.clone(),
            field: f,
            d: s.dims(),
            v: vp.dims(),
            x,
            p,
            q,
        }
    }

    fn quotient_with(&self, s: &GradedSubspace, vp: &GradedSubspace) -> ADHMDatum {
        let f = self.field;
        let x = self
            .graph
            .arrows()
            .iter()
            .enumerate()
            .map(|(h, a)| quotient_map(f, &self.x[h], &vp[a.source], &vp[a.target]))
            .collect();
        let p = (0..self.rank())
            .map(|i| quotient_map(f, &self.p[i], &s[i], &vp[i]))
            .collect();
        let q = (0..self.rank())
            .map(|i| quotient_map(f, &self.q[i], &vp[i], &s[i]))
            .collect();
        ADHMDatum {
            graph: self.graph.clone(),
            field: f,
            d: self.d.iter().zip(s.dims()).map(|(a, b)| a - b).collect(),
            v: self.v.iter().zip(vp.dims()).map(|(a, b)| a - b).collect(),
            x,
            p,
            q,
        }
    }

    pub fn sub_datum(&self, s: &GradedSubspace) -> Result<ADHMDatum> {
        let vp = self.generated(s);
        if !s.contains_space(&self.q_image(&vp)) {
            return Err(Error::NotSubrep);
        }
        Ok(self.sub_with(s, &vp))
    }

    pub fn quotient_datum(&self, s: &GradedSubspace) -> Result<ADHMDatum> {
        let vp = self.generated(s);
        if !s.contains_space(&self.q_image(&vp)) {
            return Err(Error::NotSubrep);
        }
        Ok(self.quotient_with(s, &vp))
    }

    /// Both halves at once, or `None` when `s` is not a subrepresentation.
    pub(crate) fn split(&self, s: &GradedSubspace) -> Option<(ADHMDatum, ADHMDatum)> {
        let vp = self.generated(s);
        if !s.contains_space(&self.q_image(&vp)) {
            return None;
        }
        Some((self.sub_with(s, &vp), self.quotient_with(s, &vp)))
    }

    /// Types of the successive subquotients of a flag of subrepresentations.
    pub fn flag_types(&self, flag: &GradedFlag) -> Result<Vec<GPrimeWeight>> {
        let steps = &flag.0;
        if steps.last().map(GradedSubspace::dims) != Some(self.d.clone()) {
            return Err(Error::InvalidSpec("flag must end at the full space".into()));
        }
        let mut out = Vec::new();
        for a in 1..steps.len() {
            let upper = self.sub_datum(&steps[a])?;
            let lower = GradedSubspace(
                (0..self.rank())
                    .map(|i| {
                        let rows: Vec<Vec<Elem>> = (0..steps[a - 1][i].dim())
                            .map(|r| steps[a][i].coords(steps[a - 1][i].basis().row(r)).unwrap())
                            .collect();
                        span_rows(self.field, steps[a][i].dim(), &rows)
                    })
                    .collect(),
            );
            out.push(upper.quotient_datum(&lower)?.type_of()?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> DatumJson {
        let conv =
            |m: &FMatrix| -> Vec<Vec<u8>> { (0..m.rows()).map(|r| m.row(r).to_vec()).collect() };
        DatumJson {
            family: self.graph.family().letter(),
            rank: self.rank(),
            q: self.field.order(),
            d: self.d.clone(),
            v: self.v.clone(),
            x: self.x.iter().map(conv).collect(),
            p: self.p.iter().map(conv).collect(),
            q_maps: self.q.iter().map(conv).collect(),
        }
    }
}

fn span_rows(field: FiniteField, n: usize, rows: &[Vec<Elem>]) -> Subspace {
    let data: Vec<Elem> = rows.iter().flatten().copied().collect();
    Subspace::span(&FMatrix::from_vec(field, rows.len(), n, data))
}

/// Matrix of `m` restricted to `src -> dst` in RREF-basis coordinates.
fn restrict_map(f: FiniteField, m: &FMatrix, src: &Subspace, dst: &Subspace) -> FMatrix {
    let mut out = FMatrix::zeros(f, dst.dim(), src.dim());
    for j in 0..src.dim() {
        let image = m.apply(src.basis().row(j));
        let c = dst
            .coords(&image)
            .expect("map does not preserve the subspaces");
        for (i, x) in c.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    out
}

/// Induced map between quotients, in free-column coordinates.
fn quotient_map(f: FiniteField, m: &FMatrix, src: &Subspace, dst: &Subspace) -> FMatrix {
    let free = src.free_columns();
    let mut out = FMatrix::zeros(f, dst.ambient_dim() - dst.dim(), free.len());
    for (j, &c) in free.iter().enumerate() {
        for (i, x) in dst.quotient_coords(&m.column(c)).into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    out
}

/// Debug dump of a datum; matrices are row lists of field element codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumJson {
    pub family: char,
    pub rank: usize,
    pub q: u32,
    pub d: Vec<usize>,
    pub v: Vec<usize>,
    pub x: Vec<Vec<Vec<u8>>>,
    pub p: Vec<Vec<Vec<u8>>>,
    #[serde(rename = "q_maps")]
    pub q_maps: Vec<Vec<Vec<u8>>>,
}
