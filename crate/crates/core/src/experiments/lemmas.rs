use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::QuadratureConfig;
use crate::error::Result;
use crate::euclid::{boundary_flux, zeta_and_beta};
use crate::gauss1d::{barycenter, gauss_measure, random_interval_set};
use crate::numeric::integrate;
use crate::scalar::{
    erfc_bracket, halfline_cheeger_ratio, halfline_ratio_derivative, log_asymmetry_phi,
    ratio_derivative_identity_check, std_normal_cdf, FRAC_1_SQRT_2PI,
};
use crate::shapes::{annulus_family, flower, ConvexPolygon, Shape2D};

use super::table::{Check, ExperimentRow, Table};

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
}

fn half_line_ratio_row() -> ExperimentRow {
    let pts: Vec<f64> = grid(-8.0, 8.0, 1601).collect();
    let values: Vec<f64> = pts.iter().map(|&s| halfline_cheeger_ratio(s)).collect();
    let min_drop = values.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
    let max_slope = pts
        .iter()
        .map(|&s| halfline_ratio_derivative(s))
        .fold(f64::NEG_INFINITY, f64::max);
    let divergence = pts
        .iter()
        .zip(&values)
        .filter(|(s, _)| **s <= -2.0)
        .map(|(s, v)| v - s.abs())
        .fold(f64::INFINITY, f64::min);
    let mut row = ExperimentRow::new("halfline-ratio", 0.0);
    row.value("grid_points", pts.len() as f64)
        .value("min_consecutive_drop", min_drop)
        .value("max_derivative", max_slope)
        .value("min_excess_over_abs_s", divergence)
        .check(Check::ge("strictly_decreasing", min_drop, f64::MIN_POSITIVE, 0.0))
        .check(Check::le("derivative_negative", max_slope, -f64::MIN_POSITIVE, 0.0))
        .check(Check::ge("at_least_abs_s_below_minus_2", divergence, 0.0, 0.0));
    row
}

fn identity_row(cfg: &QuadratureConfig) -> ExperimentRow {
    let step = cfg.fd_step;
    let worst = grid(-4.0, 2.0, 25)
        .map(|s| ratio_derivative_identity_check(s, step))
        .fold(0.0, f64::max);
    let order = [-1.0, 0.0, 1.0, 2.0]
        .iter()
        .map(|&s| ratio_derivative_identity_check(s, 1e-2) / ratio_derivative_identity_check(s, 5e-3))
        .fold(f64::INFINITY, f64::min);
    let mut row = ExperimentRow::new("derivative-identity", step);
    row.value("max_residual", worst)
        .value("min_halving_ratio", order)
        .check(Check::le("residual_below_1e-6", worst, 1e-6, 0.0))
        .check(Check::near("second_order_decay", order, 4.0, 0.5));
    row
}

fn phi_row() -> ExperimentRow {
    let pts: Vec<f64> = grid(0.0, 1.0, 1000).collect();
    let phi = |r: f64| log_asymmetry_phi(r).unwrap_or(f64::NAN);
    let values: Vec<f64> = pts.iter().map(|&r| phi(r)).collect();
    let min_step = values.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let max_excess = pts.iter().zip(&values).map(|(r, v)| v - r).fold(f64::NEG_INFINITY, f64::max);
    let factor = 4.0 * (1.0 + 4f64.ln().sqrt());
    let min_quarter = pts
        .iter()
        .zip(&values)
        .map(|(r, v)| phi(r / 4.0) - v / factor)
        .fold(f64::INFINITY, f64::min);
    let mut row = ExperimentRow::new("log-asymmetry-profile", 0.0);
    row.value("grid_points", pts.len() as f64)
        .value("min_step", min_step)
        .value("max_excess_over_rho", max_excess)
        .value("min_quarter_margin", min_quarter)
        .check(Check::ge("nondecreasing", min_step, 0.0, 0.0))
        .check(Check::le("below_identity", max_excess, 0.0, 0.0))
        .check(Check::ge("quarter_lower_bound", min_quarter, 0.0, 0.0));
    row
}

/// `sup_s Phi(|b(H_s)|) / gamma(H_s)` on a grid of step 0.001 over `[-10, 10]`.
pub fn barycenter_constant() -> f64 {
    grid(-10.0, 10.0, 20_001)
        .map(|s| {
            let b = FRAC_1_SQRT_2PI * (-0.5 * s * s).exp();
            log_asymmetry_phi(b).unwrap_or(f64::NAN) / std_normal_cdf(s)
        })
        .fold(0.0, f64::max)
}

fn barycenter_row() -> Result<ExperimentRow> {
    let c_emp = barycenter_constant();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..500 {
        let set = random_interval_set(&mut rng);
        let b = barycenter(&set).abs().min(1.0);
        worst = worst.max(log_asymmetry_phi(b)? - c_emp * gauss_measure(&set));
    }
    let mut row = ExperimentRow::new("barycenter-bound", 500.0);
    row.value("c_emp", c_emp)
        .value("max_violation", worst)
        .check(Check::le("phi_b_below_c_gamma", worst, 0.0, 1e-9));
    Ok(row)
}

fn erfc_row(cfg: &QuadratureConfig) -> Result<ExperimentRow> {
    let strict = QuadratureConfig {
        quad_abs_tol: 1e-300,
        quad_rel_tol: 1e-15,
        ..*cfg
    };
    let mut lower_margin = f64::INFINITY;
    let mut upper_margin = f64::INFINITY;
    for x in grid(2.0, 6.0, 41) {
        let q = 2.0 / PI.sqrt() * integrate(|t: f64| (-t * t).exp(), x, x + 30.0, &strict).value;
        let (lo, hi) = erfc_bracket(x)?;
        lower_margin = lower_margin.min((q - lo) / q);
        upper_margin = upper_margin.min((hi - q) / q);
    }
    let mut row = ExperimentRow::new("erfc-bracket", 41.0);
    row.value("min_relative_lower_margin", lower_margin)
        .value("min_relative_upper_margin", upper_margin)
        .check(Check::ge("lower_below_quadrature", lower_margin, 0.0, 0.0))
        .check(Check::ge("upper_above_quadrature", upper_margin, 0.0, 0.0));
    Ok(row)
}

/// `P(B) beta^2 = P - P(B) + zeta` at the potential maximizer, with the
/// potential recomputed through the boundary flux.
fn identity_shapes(cfg: &QuadratureConfig) -> Result<ExperimentRow> {
    let shapes: Vec<Shape2D> = vec![
        flower(5, 0.1)?.into(),
        ConvexPolygon::rectangle([0.0, 0.0], [1.0, 1.0])?.into(),
        ConvexPolygon::regular(7, 1.0, [0.3, -0.2])?.into(),
        annulus_family(4)?.0.into(),
    ];
    let mut worst = 0.0f64;
    for shape in &shapes {
        let (zeta, beta) = zeta_and_beta(shape, cfg);
        let pb = 2.0 * PI * shape.equivalent_ball().radius;
        let p = shape.perimeter(cfg);
        let via_flux = (p - boundary_flux(shape, zeta.center, cfg)) / pb;
        let via_zeta = (p - pb + zeta.value) / pb;
        worst = worst.max((via_flux - via_zeta).abs()).max((beta.value - via_zeta).abs());
    }
    let mut row = ExperimentRow::new("beta-zeta-identity", shapes.len() as f64);
    row.value("max_residual", worst)
        .check(Check::le("identity_residual", worst, 1e-8, 0.0));
    Ok(row)
}

/// Checks of the one-dimensional lemmas, the erfc bracket and the
/// `beta^2`-`zeta` identity, each with its worst-case margin.
pub fn lemma_suite(cfg: &QuadratureConfig) -> Result<Table> {
    let mut table = Table::new("verify", *cfg);
    table.rows = vec![
        half_line_ratio_row(),
        identity_row(cfg),
        phi_row(),
        barycenter_row()?,
        erfc_row(cfg)?,
        identity_shapes(cfg)?,
    ];
    Ok(table)
}
