//! Representations of the extended preprojective-type algebra over `F_q`,
//! realized as framed quiver data, and the counts over them.

pub mod bridge;
pub mod count;
pub mod datum;
pub mod words;

pub use bridge::a_type_bridge;
pub use count::{
    collect_bistable, count_flags, count_p, count_p_detailed, count_x, count_x_detailed,
    dimensions, enumeration_size, flag_space_size, for_each_bistable, graded_subspaces,
    QuiverCount,
};
pub use datum::{ADHMDatum, DatumJson, GradedFlag, GradedSubspace};
pub use words::{product, words_up_to, FElement, Word};

#[cfg(test)]
mod tests;
