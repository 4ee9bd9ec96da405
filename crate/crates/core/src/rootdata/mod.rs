//! Dynkin graph data, the weight lattice of `g'`, the dimension formulas
//! and the type-A dictionary between weights and partitions.

mod graph;
mod weight;

pub use graph::{build_graph, Arrow, DynkinGraph, Family};
pub use weight::{
    as_dims, f_dim, g_dim, kappa, kappa_inv, nu_map, o_dim, type_from_dv, weight_of_partition,
    x_dim, GPrimeWeight, IVec, Partition, WeightJson,
};

#[cfg(test)]
mod tests;
