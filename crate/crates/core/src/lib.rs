pub mod aco;
pub mod assessment;
pub mod error;
pub mod interval;
pub mod optimizer;
pub mod outranking;
pub mod pareto;
pub mod problems;

pub use error::{Error, Result};
