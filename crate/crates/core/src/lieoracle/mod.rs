//! Lie-theoretic ground truth: Littlewood–Richardson coefficients and tensor
//! product multiplicities, by two independent methods.

pub mod character;
pub mod lr;
pub mod roots;
pub mod tensor;

pub use character::{irr_character, weyl_dimension, Character};
pub use lr::{lr_coefficient, lr_two};
pub use roots::RootSystem;
pub use tensor::{tensor_decompose, DecompositionResult};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rootdata::{DynkinGraph, GPrimeWeight, IVec, Partition};

/// `lambda -> sum_i (lambda_i - lambda_{i+1}) omega_i` on `A_rank`.
pub fn partition_to_weight(lambda: &Partition, rank: usize) -> IVec {
    IVec(
        (0..rank)
            .map(|i| lambda.part(i) as i64 - lambda.part(i + 1) as i64)
            .collect(),
    )
}

/// Multiplicity of `L_xi` in `L_{eta^1} x ... x L_{eta^n}` for the extended algebra.
/// The central part is fixed by requiring `|xi| = sum |eta^a|`.
pub fn gprime_multiplicity(xi: &GPrimeWeight, etas: &[GPrimeWeight]) -> Result<BigInt> {
    let graph: &DynkinGraph = xi.graph();
    for w in std::iter::once(xi).chain(etas) {
        if (w.graph().family(), w.graph().rank()) != (graph.family(), graph.rank()) {
            return Err(Error::RankMismatch {
                expected: graph.rank(),
                got: w.graph().rank(),
            });
        }
        if !w.is_positive_integrable() {
            return Err(Error::NotPositiveIntegrable);
        }
    }
    let total = xi.delta();
    let parts = etas
        .iter()
        .fold(IVec::zeros(graph.rank()), |acc, e| &acc + &e.delta());
    if total != parts {
        return Err(Error::SizeMismatch {
            total: format!("{total:?}"),
            parts: format!("{parts:?}"),
        });
    }
    let hws: Vec<IVec> = etas.iter().map(GPrimeWeight::gamma).collect();
    Ok(tensor_decompose(graph, &hws)?.multiplicity(&xi.gamma()))
}
