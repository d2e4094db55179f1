use std::f64::consts::TAU;

use cheeger_core::euclid::{cheeger_bracket, euclid_indexes, IndexReport, OptimizerStatus};
use cheeger_core::experiments::{Check, ExperimentRow, Table, CHEEGER_1D_TOL};
use cheeger_core::gauss1d::{alpha_gamma, beta_gamma, cheeger_1d, gauss_report, IntervalSet};
use cheeger_core::scalar::{halfline_cheeger_ratio, std_normal_quantile};
use cheeger_core::shapes::Shape2D;
use cheeger_core::{QuadratureConfig, Result};

fn index_row(r: &IndexReport) -> ExperimentRow {
    let mut row = ExperimentRow::new(r.index.name(), 0.0);
    row.value("value", r.value)
        .value("center_x", r.center[0])
        .value("center_y", r.center[1])
        .value("converged", if r.status == OptimizerStatus::Converged { 1.0 } else { 0.0 })
        .value("evaluations", r.evaluations as f64);
    row
}

/// Measures, asymmetry indexes and the Cheeger bracket of a planar set.
pub fn planar(shape: &Shape2D, cfg: &QuadratureConfig) -> Table {
    let area = shape.area();
    let perimeter = shape.perimeter(cfg);
    let ball_perimeter = TAU * shape.equivalent_ball().radius;
    let bracket = cheeger_bracket(shape, cfg);
    let idx = euclid_indexes(shape, cfg);
    let mut measures = ExperimentRow::new("measures", 0.0);
    measures
        .value("area", area)
        .value("perimeter", perimeter)
        .value("ball_perimeter", ball_perimeter)
        .check(Check::ge("isoperimetric", perimeter, ball_perimeter, 1e-9 * ball_perimeter));
    let mut cheeger = ExperimentRow::new("cheeger", 0.0);
    cheeger
        .value("h_lower", bracket.lower)
        .value("h_upper", bracket.upper)
        .value("exact", if bracket.exact { 1.0 } else { 0.0 })
        .check(Check::le("bracket_ordered", bracket.lower, bracket.upper, 0.0));
    let mut alpha = index_row(&idx.alpha);
    alpha.check(Check::ge("alpha_nonnegative", idx.alpha.value, 0.0, 0.0));
    let mut zeta = index_row(&idx.zeta);
    zeta.check(Check::ge("zeta_nonnegative", idx.zeta.value, 0.0, 1e-9));
    let mut beta = index_row(&idx.beta_sq);
    beta.check(Check::near(
        "beta_zeta_identity",
        ball_perimeter * idx.beta_sq.value,
        perimeter - ball_perimeter + idx.zeta.value,
        1e-9 * perimeter,
    ));
    let mut table = Table::new("compute", *cfg);
    table.rows = vec![measures, cheeger, alpha, zeta, beta];
    table.notes.push(format!("cheeger witness: {}", bracket.witness));
    table
}

/// Gaussian measures, indexes and Cheeger constant of an interval set.
pub fn line(set: &IntervalSet, cfg: &QuadratureConfig) -> Result<Table> {
    let report = gauss_report(set);
    let cheeger = cheeger_1d(set, CHEEGER_1D_TOL, cfg)?;
    let h_half = halfline_cheeger_ratio(std_normal_quantile(report.measure)?);
    let alpha = alpha_gamma(set)?;
    let beta = beta_gamma(set)?;
    let mut row = ExperimentRow::new("intervals", set.intervals().len() as f64);
    row.value("measure", report.measure)
        .value("perimeter", report.perimeter)
        .value("barycenter", report.barycenter)
        .value("h", cheeger.h)
        .value("h_halfline", h_half)
        .value("gap", cheeger.h - h_half)
        .value("alpha_gamma", alpha.value)
        .value("beta_gamma", beta.value)
        .check(Check::ge("cheeger_above_halfline", cheeger.h, h_half, 1e-9))
        .check(Check::le("beta_at_most_1", beta.value, 1.0, 1e-12));
    let mut table = Table::new("compute", *cfg);
    table.rows = vec![row];
    table.notes.push(format!("cheeger minimizer: {}", cheeger.minimizer));
    Ok(table)
}
