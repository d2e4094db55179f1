#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod numeric;
pub mod scalar;
pub mod shapes;
pub mod euclid;
pub mod gauss1d;
pub mod experiments;

pub use config::QuadratureConfig;
pub use error::{Error, Result};
