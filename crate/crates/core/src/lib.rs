pub mod error;
pub mod exactmath;
pub mod jordan;
pub mod lieoracle;
pub mod pipeline;
pub mod quiverlab;
pub mod rootdata;
pub mod serde_bigint;

pub use error::{Error, Result};
