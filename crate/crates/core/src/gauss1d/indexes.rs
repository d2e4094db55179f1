use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::numeric::integrate;
use crate::scalar::{
    std_normal_cdf, std_normal_pdf, std_normal_quantile, std_normal_sf, FRAC_1_SQRT_2PI,
};

use super::sets::{Ext, Interval, IntervalSet};

/// `e^{-x^2/2}`, zero at infinity.
pub(crate) fn weight(x: Ext) -> f64 {
    match x {
        Ext::Finite(v) => (-0.5 * v * v).exp(),
        _ => 0.0,
    }
}

fn short_interval_cfg() -> &'static QuadratureConfig {
    static CFG: OnceLock<QuadratureConfig> = OnceLock::new();
    // relative accuracy down to the underflow region, where it is moot
    CFG.get_or_init(|| QuadratureConfig {
        quad_abs_tol: 1e-300,
        quad_rel_tol: 1e-15,
        ..QuadratureConfig::default()
    })
}

/// `gamma((a, b))`. Short finite intervals are integrated directly so the
/// result keeps relative precision however close `a` and `b` are.
pub fn gauss_mass(a: Ext, b: Ext) -> f64 {
    match (a, b) {
        (Ext::NegInf, Ext::PosInf) => 1.0,
        (Ext::NegInf, Ext::Finite(t)) => std_normal_cdf(t),
        (Ext::Finite(s), Ext::PosInf) => std_normal_sf(s),
        (Ext::Finite(s), Ext::Finite(t)) if t <= s => 0.0,
        (Ext::Finite(s), Ext::Finite(t)) => {
            // Quadrature while the density changes by at most e^{1/2} over
            // the interval; beyond that the tail difference loses at most a
            // factor 1/(1 - e^{-1/2}) of relative precision.
            if (t - s) * s.abs().max(t.abs()).max(1.0) <= 0.5 {
                integrate(std_normal_pdf, s, t, short_interval_cfg()).value
            } else if s >= 0.0 {
                std_normal_sf(s) - std_normal_sf(t)
            } else {
                std_normal_cdf(t) - std_normal_cdf(s)
            }
        }
        _ => 0.0,
    }
}

/// `gamma((a, a + width))` computed from the width itself, which keeps full
/// relative precision even when `a + width` rounds to `a`.
pub fn gauss_mass_width(a: f64, width: f64) -> f64 {
    if !(width > 0.0) {
        return 0.0;
    }
    integrate(|u| std_normal_pdf(a + u), 0.0, width, short_interval_cfg()).value
}

pub fn gauss_measure(set: &IntervalSet) -> f64 {
    set.intervals().iter().map(|iv| gauss_mass(iv.lo, iv.hi)).sum()
}

/// One-dimensional Gaussian perimeter: `sum e^{-x^2/2}` over finite
/// endpoints.
pub fn gauss_perimeter(set: &IntervalSet) -> f64 {
    set.intervals().iter().map(|iv| weight(iv.lo) + weight(iv.hi)).sum()
}

/// Non-renormalized barycenter `int_E x dgamma`.
pub fn barycenter(set: &IntervalSet) -> f64 {
    FRAC_1_SQRT_2PI
        * set
            .intervals()
            .iter()
            .map(|iv| weight(iv.lo) - weight(iv.hi))
            .sum::<f64>()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussReport {
    pub measure: f64,
    pub perimeter: f64,
    pub barycenter: f64,
}

pub fn gauss_report(set: &IntervalSet) -> GaussReport {
    GaussReport {
        measure: gauss_measure(set),
        perimeter: gauss_perimeter(set),
        barycenter: barycenter(set),
    }
}

/// Orientation `omega` of the halfline `{x omega < s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// `(-inf, s)`
    Plus,
    /// `(-s, inf)`
    Minus,
}

impl Orientation {
    pub fn from_sign(sign: i32) -> Result<Self> {
        match sign {
            1 => Ok(Orientation::Plus),
            -1 => Ok(Orientation::Minus),
            _ => Err(Error::domain("orientation", format!("{sign} is not +-1"))),
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Orientation::Plus => 1,
            Orientation::Minus => -1,
        }
    }
}

/// The halfline of Gaussian measure `m` with the given orientation.
pub fn halfline_with_measure(m: f64, orientation: Orientation) -> Result<IntervalSet> {
    if !(m > 0.0 && m < 1.0) {
        return Err(Error::domain("halfline_with_measure", format!("measure {m} not in (0, 1)")));
    }
    let s = std_normal_quantile(m)?;
    let iv = match orientation {
        Orientation::Plus => Interval::new(Ext::NegInf, Ext::Finite(s))?,
        Orientation::Minus => Interval::new(Ext::Finite(-s), Ext::PosInf)?,
    };
    Ok(IntervalSet::new(vec![iv]))
}

/// Value of a Gaussian asymmetry index with the halfline that attains it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussIndex {
    pub value: f64,
    pub orientation: Orientation,
    pub halfline: IntervalSet,
}

fn nondegenerate(set: &IntervalSet, op: &'static str) -> Result<f64> {
    let m = gauss_measure(set);
    if !(m > 0.0 && m < 1.0) {
        return Err(Error::domain(op, format!("measure {m} is degenerate")));
    }
    Ok(m)
}

/// Minimizes `score(halfline)` over both orientations, preferring `Plus`
/// on ties.
fn over_orientations<F: Fn(&IntervalSet) -> f64>(m: f64, score: F) -> Result<GaussIndex> {
    let mut best: Option<GaussIndex> = None;
    for orientation in [Orientation::Plus, Orientation::Minus] {
        let halfline = halfline_with_measure(m, orientation)?;
        let value = score(&halfline);
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(GaussIndex { value, orientation, halfline });
        }
    }
    Ok(best.expect("two orientations"))
}

/// `min_omega gamma(E Delta H_{E,omega})`, by exact interval algebra.
pub fn alpha_gamma(set: &IntervalSet) -> Result<GaussIndex> {
    let m = nondegenerate(set, "alpha_gamma")?;
    over_orientations(m, |h| gauss_measure(&set.symmetric_difference(h)))
}

/// `min_omega |b(H_{E,omega}) - b(E)|`.
pub fn beta_gamma(set: &IntervalSet) -> Result<GaussIndex> {
    let m = nondegenerate(set, "beta_gamma")?;
    let b = barycenter(set);
    over_orientations(m, |h| (barycenter(h) - b).abs())
}
