//! Tolerances and grid sizes shared by every numeric routine.
//!
//! All defaults live in [`QuadratureConfig::default`]; the CLI echoes the
//! effective values into every report it writes.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Absolute tolerance of adaptive quadrature.
    pub quad_abs_tol: f64,
    /// Relative tolerance of adaptive quadrature.
    pub quad_rel_tol: f64,
    /// Maximum number of Gauss-Kronrod panels per integral.
    pub max_panels: usize,
    /// Tolerance for scalar root finding (relative residual for the
    /// Gaussian tail equation, relative area residual for polygon Cheeger).
    pub root_tol: f64,
    /// Gaussian integrals over unbounded ranges are cut at `|t| = truncation`.
    pub truncation: f64,
    /// Points per axis of the coarse center search.
    pub search_grid: usize,
    /// Number of best grid points refined by the simplex search.
    pub refine_starts: usize,
    /// Stopping tolerance (in the objective) for simplex refinement.
    pub refine_tol: f64,
    /// Central-difference step for derivative checks.
    pub fd_step: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            quad_abs_tol: 1e-10,
            quad_rel_tol: 1e-12,
            max_panels: 20_000,
            root_tol: 1e-14,
            truncation: 40.0,
            search_grid: 41,
            refine_starts: 3,
            refine_tol: 1e-12,
            fd_step: 1e-4,
        }
    }
}

impl QuadratureConfig {
    pub fn with_quad_tol(mut self, tol: f64) -> Self {
        self.quad_abs_tol = tol;
        self
    }

    pub fn with_root_tol(mut self, tol: f64) -> Self {
        self.root_tol = tol;
        self
    }
}
