//! Generic one-dimensional numerics: adaptive quadrature, bracketing root
//! finding and derivative-free minimization.

pub mod optimize;
pub mod quad;
pub mod roots;

pub use optimize::{golden_section, nelder_mead, Minimum, SimplexResult};
pub use quad::{integrate, integrate_panels, Integral};
pub use roots::{bisect, Root};
