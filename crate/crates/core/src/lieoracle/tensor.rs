use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::character::{irr_character_with, weyl_dimension, Character};
use super::roots::RootSystem;
use crate::error::{Error, Result};
use crate::rootdata::{DynkinGraph, IVec};

/// Irreducible constituents of a tensor product, keyed by highest weight.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DecompositionResult {
    pub multiplicities: BTreeMap<IVec, BigInt>,
}

impl DecompositionResult {
    pub fn multiplicity(&self, hw: &IVec) -> BigInt {
        self.multiplicities.get(hw).cloned().unwrap_or_default()
    }
}

pub fn tensor_decompose(graph: &DynkinGraph, hws: &[IVec]) -> Result<DecompositionResult> {
    let rs = RootSystem::new(graph);
    for hw in hws {
        if hw.len() != graph.rank() {
            return Err(Error::RankMismatch {
                expected: graph.rank(),
                got: hw.len(),
            });
        }
        if !hw.is_nonnegative() {
            return Err(Error::NotDominant(hw.0.clone()));
        }
    }
    let mut product = Character::trivial(graph.rank());
    let mut expected_dim = BigInt::one();
    for hw in hws {
        product = product.tensor(&irr_character_with(&rs, hw));
        expected_dim *= weyl_dimension(&rs, hw);
    }
    let result = peel(&rs, product);

    let total: BigInt = result
        .multiplicities
        .iter()
        .map(|(hw, m)| m * weyl_dimension(&rs, hw))
        .sum();
    assert_eq!(total, expected_dim, "dimension not conserved");
    Ok(result)
}

/// Repeatedly strip the irreducible whose highest weight is maximal among the
/// surviving dominant weights.
fn peel(rs: &RootSystem, ch: Character) -> DecompositionResult {
    let mut remaining = ch.into_weights();
    let mut out = BTreeMap::new();
    let mut remaining_dim: BigInt = remaining.values().sum();
    while !remaining.is_empty() {
        let top = remaining
            .keys()
            .filter(|w| w.is_nonnegative())
            .max_by_key(|w| (rs.scaled_height(w), (*w).clone()))
            .cloned()
            .expect("a nonzero character has a dominant weight");
        let m = remaining[&top].clone();
        assert!(m.is_positive(), "negative multiplicity at {top:?}");
        let irr = irr_character_with(rs, &top);
        for (w, k) in irr.weights() {
            let entry = remaining.entry(w.clone()).or_insert_with(BigInt::zero);
            *entry -= &m * k;
            if entry.is_zero() {
                remaining.remove(w);
            }
        }
        let next_dim: BigInt = remaining.values().sum();
        assert!(next_dim < remaining_dim, "peeling did not make progress");
        remaining_dim = next_dim;
        out.insert(top, m);
    }
    DecompositionResult {
        multiplicities: out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_graph, Family};

    fn iv(v: &[i64]) -> IVec {
        IVec(v.to_vec())
    }

    fn decomp(pairs: &[(&[i64], i64)]) -> BTreeMap<IVec, BigInt> {
        pairs
            .iter()
            .map(|(w, m)| (iv(w), BigInt::from(*m)))
            .collect()
    }

    #[test]
    fn clebsch_gordan() {
        let g = build_graph(Family::A, 1).unwrap();
        let r = tensor_decompose(&g, &[iv(&[1]), iv(&[1])]).unwrap();
        assert_eq!(r.multiplicities, decomp(&[(&[2], 1), (&[0], 1)]));
        let r = tensor_decompose(&g, &[iv(&[1]), iv(&[1]), iv(&[1])]).unwrap();
        assert_eq!(r.multiplicities, decomp(&[(&[3], 1), (&[1], 2)]));
    }

    #[test]
    fn sl3_products() {
        let g = build_graph(Family::A, 2).unwrap();
        let r = tensor_decompose(&g, &[iv(&[1, 0]), iv(&[1, 0])]).unwrap();
        assert_eq!(r.multiplicities, decomp(&[(&[2, 0], 1), (&[0, 1], 1)]));
        let r = tensor_decompose(&g, &[iv(&[1, 1]), iv(&[1, 1])]).unwrap();
        assert_eq!(
            r.multiplicities,
            decomp(&[
                (&[2, 2], 1),
                (&[3, 0], 1),
                (&[0, 3], 1),
                (&[1, 1], 2),
                (&[0, 0], 1)
            ])
        );
    }

    #[test]
    fn empty_product_is_trivial() {
        let g = build_graph(Family::D, 4).unwrap();
        let r = tensor_decompose(&g, &[]).unwrap();
        assert_eq!(r.multiplicities, decomp(&[(&[0, 0, 0, 0], 1)]));
    }

    #[test]
    fn d4_triality() {
        // 8_v x 8_s = 8_c + 56
        let g = build_graph(Family::D, 4).unwrap();
        let r = tensor_decompose(&g, &[iv(&[1, 0, 0, 0]), iv(&[0, 0, 1, 0])]).unwrap();
        assert_eq!(
            r.multiplicities,
            decomp(&[(&[1, 0, 1, 0], 1), (&[0, 0, 0, 1], 1)])
        );
    }
}
