use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::euclid::{ball_cheeger, cheeger_convex_2d, riesz_zeta};
use crate::gauss1d::{alpha_gamma, beta_gamma, cheeger_1d, gauss_measure, random_interval_set, IntervalSet};
use crate::scalar::{halfline_cheeger_ratio, log_asymmetry_phi, std_normal_quantile};
use crate::shapes::{ConvexPolygon, Shape2D};

use super::reproduce::CHEEGER_1D_TOL;
use super::table::{Check, ExperimentRow, Table};

/// Ratios whose numerator or denominator falls below this are excluded.
pub const DEGENERACY_THRESHOLD: f64 = 1e-8;
/// Half-width of a Gaussian measure bin.
pub const BIN_HALF_WIDTH: f64 = 0.02;
const HISTOGRAM_BINS: usize = 12;

/// Convex polygon with 5 to 12 vertices at jittered angles and radii
/// `1 +- 0.25` about the origin.
pub fn random_convex_polygon<R: Rng + ?Sized>(rng: &mut R) -> ConvexPolygon {
    let n = rng.random_range(5..=12usize);
    loop {
        let mut angles: Vec<f64> = (0..n)
            .map(|i| TAU * (i as f64 + rng.random_range(-0.35..0.35)) / n as f64)
            .collect();
        angles.sort_by(f64::total_cmp);
        let vertices = angles
            .iter()
            .map(|t| {
                let r = 1.0 + rng.random_range(-0.25..0.25);
                [r * t.cos(), r * t.sin()]
            })
            .collect();
        if let Ok(p) = ConvexPolygon::new(vertices) {
            return p;
        }
    }
}

/// Log-spaced histogram of positive values as summary entries.
fn histogram(table: &mut Table, prefix: &str, values: &[f64]) {
    if values.is_empty() {
        return;
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min).log10();
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max).log10();
    let width = ((hi - lo) / HISTOGRAM_BINS as f64).max(f64::MIN_POSITIVE);
    let mut counts = [0usize; HISTOGRAM_BINS];
    for v in values {
        let k = (((v.log10() - lo) / width) as usize).min(HISTOGRAM_BINS - 1);
        counts[k] += 1;
    }
    table.summary.push((format!("{prefix}_hist_log10_lo"), lo));
    table.summary.push((format!("{prefix}_hist_log10_hi"), hi));
    for (k, c) in counts.iter().enumerate() {
        table.summary.push((format!("{prefix}_hist_{k}"), *c as f64));
    }
}

/// Empirical infimum of `((h - h_B)/h_B) / zeta` over random convex polygons.
pub fn sweep_zeta_constant(n_samples: usize, seed: u64, cfg: &QuadratureConfig) -> Result<Table> {
    if n_samples < 50 {
        return Err(Error::domain("sweep_zeta_constant", format!("{n_samples} < 50 samples")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polygons: Vec<ConvexPolygon> = (0..n_samples).map(|_| random_convex_polygon(&mut rng)).collect();
    let rows = polygons
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let h = cheeger_convex_2d(p, cfg.root_tol.max(1e-10))?;
            let shape = Shape2D::Polygon(p.clone());
            let h_ball = ball_cheeger(2, shape.equivalent_ball().radius);
            let deficit = (h.upper - h_ball) / h_ball;
            let zeta = riesz_zeta(&shape, cfg).value;
            let included = zeta > DEGENERACY_THRESHOLD && deficit > DEGENERACY_THRESHOLD;
            let mut row = ExperimentRow::new("sample", i as f64);
            row.value("vertices", p.vertices().len() as f64)
                .value("area", p.area())
                .value("h", h.upper)
                .value("h_ball", h_ball)
                .value("deficit", deficit)
                .value("zeta", zeta)
                .value("included", if included { 1.0 } else { 0.0 })
                .value("ratio", if included { deficit / zeta } else { f64::NAN })
                .check(Check::ge("deficit_nonnegative", deficit, 0.0, 1e-12))
                .check(Check::ge("zeta_nonnegative", zeta, 0.0, 1e-9));
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new("sweep-zeta", *cfg);
    let ratios: Vec<f64> = rows
        .iter()
        .filter(|r| r.get("included") == Some(1.0))
        .filter_map(|r| r.get("ratio"))
        .collect();
    let excluded_zeta = rows
        .iter()
        .filter(|r| r.get("zeta").is_some_and(|z| z <= DEGENERACY_THRESHOLD))
        .count();
    let inf = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    table.summary.push(("seed".into(), seed as f64));
    table.summary.push(("threshold".into(), DEGENERACY_THRESHOLD));
    table.summary.push(("included".into(), ratios.len() as f64));
    table.summary.push(("excluded".into(), (rows.len() - ratios.len()) as f64));
    table.summary.push(("excluded_small_zeta".into(), excluded_zeta as f64));
    table.summary.push(("ratio_inf".into(), inf));
    histogram(&mut table, "ratio", &ratios);
    table.checks.push(Check::ge("ratio_inf_positive", inf, f64::MIN_POSITIVE, 0.0));
    table.rows = rows;
    Ok(table)
}

/// Random interval sets with measure within [`BIN_HALF_WIDTH`] of each bin
/// center, drawn sequentially from one stream; each draw goes to the first
/// bin that still needs samples.
fn binned_sets(n_samples: usize, seed: u64, bins: &[f64]) -> Result<Vec<Vec<IntervalSet>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<IntervalSet>> = vec![Vec::with_capacity(n_samples); bins.len()];
    let budget = 10_000 * n_samples * bins.len();
    for _ in 0..budget {
        if out.iter().all(|b| b.len() >= n_samples) {
            return Ok(out);
        }
        let set = random_interval_set(&mut rng);
        let m = gauss_measure(&set);
        if let Some(k) = (0..bins.len())
            .find(|&k| (m - bins[k]).abs() <= BIN_HALF_WIDTH && out[k].len() < n_samples)
        {
            out[k].push(set);
        }
    }
    Err(Error::domain(
        "sweep_gauss_constants",
        format!("could not fill the measure bins within {budget} draws"),
    ))
}

/// Per measure bin, empirical infima of `gap / alpha_gamma^2` and
/// `gap / Phi(beta_gamma)`, where `gap = h_gamma(E) - h_gamma(H_E)`.
pub fn sweep_gauss_constants(
    n_samples: usize,
    seed: u64,
    bins: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Table> {
    if n_samples == 0 || bins.is_empty() {
        return Err(Error::domain("sweep_gauss_constants", "need samples and bins"));
    }
    if let Some(b) = bins
        .iter()
        .find(|b| !(**b - BIN_HALF_WIDTH > 0.0 && **b + BIN_HALF_WIDTH < 1.0))
    {
        return Err(Error::domain(
            "sweep_gauss_constants",
            format!("bin {b} +- {BIN_HALF_WIDTH} is not inside (0, 1)"),
        ));
    }
    let sets = binned_sets(n_samples, seed, bins)?;
    let jobs: Vec<(f64, usize, &IntervalSet)> = bins
        .iter()
        .zip(&sets)
        .flat_map(|(&b, s)| s.iter().enumerate().map(move |(i, set)| (b, i, set)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(bin, i, set)| {
            let m = gauss_measure(set);
            let h = cheeger_1d(set, CHEEGER_1D_TOL, cfg)?.h;
            let h_half = halfline_cheeger_ratio(std_normal_quantile(m)?);
            let gap = h - h_half;
            let alpha = alpha_gamma(set)?.value;
            let beta = beta_gamma(set)?.value;
            let phi_beta = log_asymmetry_phi(beta.min(1.0))?;
            let keep_alpha = gap > DEGENERACY_THRESHOLD && alpha > DEGENERACY_THRESHOLD;
            let keep_beta = gap > DEGENERACY_THRESHOLD && phi_beta > DEGENERACY_THRESHOLD;
            let mut row = ExperimentRow::new(format!("bin{bin}"), i as f64);
            row.value("bin", bin)
                .value("measure", m)
                .value("components", set.intervals().len() as f64)
                .value("h", h)
                .value("h_halfline", h_half)
                .value("gap", gap)
                .value("alpha_gamma", alpha)
                .value("beta_gamma", beta)
                .value("phi_beta", phi_beta)
                .value("included_alpha", if keep_alpha { 1.0 } else { 0.0 })
                .value("included_beta", if keep_beta { 1.0 } else { 0.0 })
                .value("ratio_alpha", if keep_alpha { gap / (alpha * alpha) } else { f64::NAN })
                .value("ratio_beta", if keep_beta { gap / phi_beta } else { f64::NAN })
                .check(Check::ge("gap_nonnegative", gap, 0.0, 1e-9))
                .check(Check::le("beta_at_most_1", beta, 1.0, 1e-12));
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new("sweep-gauss", *cfg);
    table.summary.push(("seed".into(), seed as f64));
    table.summary.push(("threshold".into(), DEGENERACY_THRESHOLD));
    table.summary.push(("bin_half_width".into(), BIN_HALF_WIDTH));
    for &bin in bins {
        let in_bin: Vec<&ExperimentRow> = rows.iter().filter(|r| r.get("bin") == Some(bin)).collect();
        for index in ["alpha", "beta"] {
            let ratios: Vec<f64> = in_bin
                .iter()
                .filter(|r| r.get(&format!("included_{index}")) == Some(1.0))
                .filter_map(|r| r.get(&format!("ratio_{index}")))
                .collect();
            let inf = ratios.iter().copied().fold(f64::INFINITY, f64::min);
            let label = format!("bin{bin}_{index}");
            table.summary.push((format!("{label}_included"), ratios.len() as f64));
            table
                .summary
                .push((format!("{label}_excluded"), (in_bin.len() - ratios.len()) as f64));
            table.summary.push((format!("{label}_ratio_inf"), inf));
            histogram(&mut table, &label, &ratios);
            table
                .checks
                .push(Check::ge(format!("{label}_ratio_inf_positive"), inf, f64::MIN_POSITIVE, 0.0));
        }
    }
    table.rows = rows;
    Ok(table)
}
