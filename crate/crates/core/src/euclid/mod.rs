//! Planar asymmetry indexes and Cheeger constants.

mod cheeger;
mod indexes;
mod search;

pub use cheeger::{
    ball_cheeger, cheeger_bracket, cheeger_bracket_with, cheeger_convex_2d,
    cheeger_lower_bound_iso, cheeger_upper_bound, CheegerBounds,
};
pub use indexes::{
    ball_overlap, beta_sq_at, boundary_flux, euclid_indexes, fraenkel_alpha, fraenkel_alpha_at,
    oscillation_beta_sq, potential_integral, riesz_zeta, riesz_zeta_at, zeta_and_beta, EuclidIndexes, IndexKind,
    IndexReport, OptimizerStatus,
};

/// Ambient dimension of every Euclidean computation in this module.
pub const DIM: usize = 2;
