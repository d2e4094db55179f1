use serde::{Deserialize, Serialize};

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::numeric::bisect;
use crate::scalar::{std_normal_sf, FRAC_1_SQRT_2PI};

use super::indexes::gauss_mass_width;
use super::sets::{Ext, IntervalSet};

/// `(-inf, -1) u (T, inf)`.
pub fn omega_t(t: f64) -> Result<IntervalSet> {
    if !(t > 1.0) || !t.is_finite() {
        return Err(Error::domain("omega_t", format!("T = {t} must exceed 1")));
    }
    IntervalSet::from_pairs(&[(Ext::NegInf, Ext::Finite(-1.0)), (Ext::Finite(t), Ext::PosInf)])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonRoot {
    pub eps: f64,
    /// `|gamma((-1, -1 + eps)) - gamma((T, inf))| / gamma((T, inf))`.
    pub relative_residual: f64,
    pub iterations: usize,
}

/// The `eps` in `(0, 1)` with `gamma((-1, -1 + eps)) = gamma((T, inf))`:
/// moving mass from the far tail to just right of `-1` keeps the measure
/// of `Omega_T`. Bisection runs until the residual relative to the tail
/// mass is below `cfg.root_tol` or the bracket collapses.
pub fn epsilon_t(t: f64, cfg: &QuadratureConfig) -> Result<EpsilonRoot> {
    if !(t > 1.0) || !t.is_finite() {
        return Err(Error::domain("epsilon_t", format!("T = {t} must exceed 1")));
    }
    let tail = std_normal_sf(t);
    let g = |eps: f64| gauss_mass_width(-1.0, eps) - tail;
    let rel = |eps: f64| (g(eps) / tail).abs();
    // for T > 1 the tail is smaller than gamma((-1, 0)), so (0, 1) brackets
    let root = bisect(g, 0.0, 1.0, 0.0, |eps| rel(eps) <= cfg.root_tol)?;
    let eps = [root.x, root.lo, root.hi]
        .into_iter()
        .filter(|e| *e > 0.0)
        .min_by(|a, b| rel(*a).total_cmp(&rel(*b)))
        .unwrap_or(root.x);
    Ok(EpsilonRoot { eps, relative_residual: rel(eps), iterations: root.iterations })
}

/// `beta_gamma(Omega_T)` in closed form for the `(-inf, s)` orientation,
/// `(2 pi)^{-1/2} (e^{-(1-eps)^2/2} - e^{-1/2} + e^{-T^2/2})`, with the
/// first difference written as `e^{-1/2} expm1(eps - eps^2/2)`.
pub fn beta_gamma_closed_form(t: f64, eps: f64) -> f64 {
    FRAC_1_SQRT_2PI * ((-0.5f64).exp() * (eps - 0.5 * eps * eps).exp_m1() + (-0.5 * t * t).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::integrate;

    #[test]
    fn omega_t_shape() {
        let o = omega_t(4.0).unwrap();
        assert_eq!(o.pairs(), vec![(f64::NEG_INFINITY, -1.0), (4.0, f64::INFINITY)]);
        assert!(omega_t(1.0).is_err());
    }

    #[test]
    fn epsilon_residual_and_monotonicity() {
        let cfg = QuadratureConfig::default();
        let mut prev = 1.0;
        for t in [1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0] {
            let r = epsilon_t(t, &cfg).unwrap();
            assert!(r.relative_residual <= 1e-14, "T={t}: {}", r.relative_residual);
            assert!(r.eps > 0.0 && r.eps < prev);
            prev = r.eps;
        }
    }

    #[test]
    fn epsilon_against_quadrature_and_tail_bounds() {
        let cfg = QuadratureConfig::default();
        let t = 4.0;
        let eps = epsilon_t(t, &cfg).unwrap().eps;
        let w = |x: f64| (-0.5 * x * x).exp();
        let tight = QuadratureConfig { quad_abs_tol: 0.0, quad_rel_tol: 1e-15, ..cfg };
        let left = integrate(w, t, t + 40.0, &tight).value;
        let right = integrate(|u| w(-1.0 + u), 0.0, eps, &tight).value;
        assert!((left - right).abs() <= 1e-14 * left);
        let upper = w(t) / t;
        let lower = w(t) / (2.0 * t);
        assert!(lower <= left && left <= upper);
    }
}
