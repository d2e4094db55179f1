//! Scripted reproductions of the three extremal constructions, randomized
//! sweeps estimating the constants of the quantitative inequalities, and
//! the lemma checks, all emitted as [`Table`]s.
//!
//! Samples are drawn sequentially from a seeded ChaCha stream; evaluation
//! is parallel with order-preserving collection, so a table depends only on
//! its inputs.

mod lemmas;
mod reproduce;
mod sweeps;
mod table;

pub use lemmas::{barycenter_constant, lemma_suite};
pub use reproduce::{
    halfline_slope_bound, reproduce_annulus, reproduce_flower, reproduce_gauss_sharpness,
    CHEEGER_1D_TOL,
};
pub use sweeps::{
    random_convex_polygon, sweep_gauss_constants, sweep_zeta_constant, BIN_HALF_WIDTH,
    DEGENERACY_THRESHOLD,
};
pub use table::{fmt, Check, ExperimentRow, Relation, Table, SCHEMA};
