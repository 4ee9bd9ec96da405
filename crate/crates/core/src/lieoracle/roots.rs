use std::collections::HashSet;

use crate::rootdata::{DynkinGraph, IVec};

/// Root system data of a simply laced graph. Weights use fundamental-weight
/// coordinates; roots are kept in simple-root coordinates.
#[derive(Clone, Debug)]
pub struct RootSystem {
    graph: DynkinGraph,
    positive: Vec<IVec>,
    adjugate: Vec<Vec<i64>>,
    det: i64,
}

impl RootSystem {
    pub fn new(graph: &DynkinGraph) -> RootSystem {
        RootSystem {
            positive: positive_roots(graph),
            adjugate: graph.cartan_adjugate(),
            det: graph.cartan_det(),
            graph: graph.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn positive_roots(&self) -> &[IVec] {
        &self.positive
    }

    /// `det(A)` times the invariant form `(a, b) = a^T A^{-1} b` on weights.
    pub fn scaled_form(&self, a: &IVec, b: &IVec) -> i64 {
        (0..self.rank())
            .map(|i| {
                a[i] * (0..self.rank())
                    .map(|j| self.adjugate[i][j] * b[j])
                    .sum::<i64>()
            })
            .sum()
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    /// `(weight, root)` for a root in simple-root coordinates.
    pub fn pair_with_root(weight: &IVec, root: &IVec) -> i64 {
        weight
            .as_slice()
            .iter()
            .zip(root.as_slice())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Root in simple-root coordinates expressed in fundamental-weight coordinates.
    pub fn root_as_weight(&self, root: &IVec) -> IVec {
        IVec(self.graph.cartan_apply(root.as_slice()))
    }

    /// Simple reflection `s_i(w) = w - w_i alpha_i`.
    pub fn reflect(&self, w: &IVec, i: usize) -> IVec {
        let c = w[i];
        IVec(
            (0..self.rank())
                .map(|j| w[j] - c * self.graph.cartan()[i][j])
                .collect(),
        )
    }

    pub fn dominant_conjugate(&self, w: &IVec) -> IVec {
        let mut w = w.clone();
        while let Some(i) = (0..self.rank()).find(|&i| w[i] < 0) {
            w = self.reflect(&w, i);
        }
        w
    }

    pub fn orbit(&self, w: &IVec) -> Vec<IVec> {
        let mut seen: HashSet<IVec> = HashSet::new();
        let mut stack = vec![w.clone()];
        seen.insert(w.clone());
        while let Some(x) = stack.pop() {
            for i in 0..self.rank() {
                if x[i] != 0 {
                    let y = self.reflect(&x, i);
                    if seen.insert(y.clone()) {
                        stack.push(y);
                    }
                }
            }
        }
        let mut out: Vec<IVec> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// `det(A)` times the pairing with `rho^vee`; strictly increasing along the dominance order.
    pub fn scaled_height(&self, w: &IVec) -> i64 {
        (0..self.rank())
            .map(|i| {
                (0..self.rank())
                    .map(|j| self.adjugate[i][j] * w[j])
                    .sum::<i64>()
            })
            .sum()
    }

    pub fn rho(&self) -> IVec {
        IVec(vec![1; self.rank()])
    }
}

/// Positive roots by height, using root strings: `beta + alpha_i` is a root
/// iff `p - <beta, alpha_i> > 0`, where `p` is how far the string extends down.
fn positive_roots(graph: &DynkinGraph) -> Vec<IVec> {
    let n = graph.rank();
    let simple: Vec<IVec> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            IVec(e)
        })
        .collect();
    let mut all: HashSet<IVec> = simple.iter().cloned().collect();
    let mut layer = simple;
    let mut out = layer.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            let pairing = graph.cartan_apply(beta.as_slice());
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down.0[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing[i] > 0 {
                    let mut up = beta.clone();
                    up.0[i] += 1;
                    if all.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
