pub mod algebra;
pub mod classify;
pub mod cli;
pub mod error;
pub mod group;
pub mod ground;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod reduce;
pub mod scalar;
pub mod skew;
pub mod structure;
pub mod tower;

pub use error::{Error, Result};
