use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::roots::RootSystem;
use crate::error::{Error, Result};
use crate::rootdata::{DynkinGraph, IVec};

/// Weight multiset of a finite-dimensional representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    rank: usize,
    weights: BTreeMap<IVec, BigInt>,
}

impl Character {
    pub fn trivial(rank: usize) -> Character {
        let mut weights = BTreeMap::new();
        weights.insert(IVec::zeros(rank), BigInt::one());
        Character { rank, weights }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weights(&self) -> &BTreeMap<IVec, BigInt> {
        &self.weights
    }

    pub fn multiplicity(&self, w: &IVec) -> BigInt {
        self.weights.get(w).cloned().unwrap_or_default()
    }

    pub fn dim(&self) -> BigInt {
        self.weights.values().sum()
    }

    /// Pointwise convolution of weight multisets.
    pub fn tensor(&self, other: &Character) -> Character {
        let mut acc: HashMap<IVec, BigInt> = HashMap::new();
        for (a, m) in &self.weights {
            for (b, n) in &other.weights {
                *acc.entry(a + b).or_default() += m * n;
            }
        }
        Character {
            rank: self.rank,
            weights: acc.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
        }
    }

    pub(crate) fn into_weights(self) -> BTreeMap<IVec, BigInt> {
        self.weights
    }
}

fn check_dominant(graph: &DynkinGraph, hw: &IVec) -> Result<()> {
    if hw.len() != graph.rank() {
        return Err(Error::RankMismatch {
            expected: graph.rank(),
            got: hw.len(),
        });
    }
    if !hw.is_nonnegative() {
        return Err(Error::NotDominant(hw.0.clone()));
    }
    Ok(())
}

/// Multiplicities of the dominant weights of `L(hw)` via Freudenthal's recursion.
pub fn dominant_multiplicities(rs: &RootSystem, hw: &IVec) -> BTreeMap<IVec, BigInt> {
    let n = rs.rank();
    // hw - mu = A n with n >= 0 integral, so n_i <= (A^{-1} hw)_i
    let det = rs.det();
    let bound: Vec<i64> = (0..n)
        .map(|i| {
            let mut e = IVec::zeros(n);
            e.0[i] = 1;
            rs.scaled_form(&e, hw).div_euclid(det)
        })
        .collect();
    let mut candidates: Vec<(i64, IVec)> = Vec::new();
    let mut coef = vec![0i64; n];
    loop {
        let root = IVec(coef.clone());
        let mu = hw - &rs.root_as_weight(&root);
        if mu.is_nonnegative() {
            candidates.push((root.total(), mu));
        }
        let mut k = 0;
        while k < n {
            if coef[k] < bound[k] {
                coef[k] += 1;
                break;
            }
            coef[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    candidates.sort();

    let rho = rs.rho();
    let top = rs.scaled_form(&(hw + &rho), &(hw + &rho));
    let mut mult: BTreeMap<IVec, BigInt> = BTreeMap::new();
    let lookup = |mult: &BTreeMap<IVec, BigInt>, w: &IVec| -> BigInt {
        mult.get(&rs.dominant_conjugate(w))
            .cloned()
            .unwrap_or_default()
    };
    for (height, mu) in candidates {
        if height == 0 {
            mult.insert(mu, BigInt::one());
            continue;
        }
        let mut sum = BigInt::zero();
        for alpha in rs.positive_roots() {
            let step = rs.root_as_weight(alpha);
            let mut w = &mu + &step;
            loop {
                let m = lookup(&mult, &w);
                if m.is_zero() {
                    break;
                }
                sum += m * RootSystem::pair_with_root(&w, alpha);
                w = &w + &step;
            }
        }
        let denom = top - rs.scaled_form(&(&mu + &rho), &(&mu + &rho));
        let num: BigInt = sum * 2 * det;
        debug_assert!(denom > 0);
        let m = &num / denom;
        debug_assert!((&m * denom) == num, "inexact Freudenthal step");
        if m.is_positive() {
            mult.insert(mu, m);
        }
    }
    mult
}

/// Weyl dimension formula.
pub fn weyl_dimension(rs: &RootSystem, hw: &IVec) -> BigInt {
    let rho = rs.rho();
    let shifted = hw + &rho;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for alpha in rs.positive_roots() {
        num *= RootSystem::pair_with_root(&shifted, alpha);
        den *= RootSystem::pair_with_root(&rho, alpha);
    }
    num / den
}

pub fn irr_character(graph: &DynkinGraph, hw: &IVec) -> Result<Character> {
    check_dominant(graph, hw)?;
    let rs = RootSystem::new(graph);
    Ok(irr_character_with(&rs, hw))
}

pub(crate) fn irr_character_with(rs: &RootSystem, hw: &IVec) -> Character {
    let dominant = dominant_multiplicities(rs, hw);
    let mut weights = BTreeMap::new();
    for (mu, m) in &dominant {
        for w in rs.orbit(mu) {
            weights.insert(w, m.clone());
        }
    }
    let ch = Character {
        rank: rs.rank(),
        weights,
    };
    assert_eq!(
        ch.dim(),
        weyl_dimension(rs, hw),
        "Freudenthal disagrees with Weyl at {hw:?}"
    );
    ch
}
