//! One-dimensional special functions: the standard normal CDF and its
//! inverse, the complementary error function and its elementary bracket,
//! the Cheeger ratio of Gaussian half-lines and the logarithmic asymmetry
//! profile `rho / (1 + sqrt|ln rho|)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::numeric::{integrate, integrate_panels};

/// `sqrt(2 pi)`.
pub const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
/// `1 / sqrt(2 pi)`, the magnitude of the barycenter of the half-line `(-inf, 0)`.
pub const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Complementary error function `2/sqrt(pi) * int_x^inf exp(-t^2) dt`.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

pub fn std_normal_pdf(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Standard normal CDF, accurate to a few ulp in both tails. Returns 0 once
/// the value underflows (`s < -38.5`).
pub fn std_normal_cdf(s: f64) -> f64 {
    0.5 * erfc(-s * FRAC_1_SQRT_2)
}

/// Upper tail `1 - Phi(s)`, without the cancellation of `1 - std_normal_cdf(s)`.
pub fn std_normal_sf(s: f64) -> f64 {
    0.5 * erfc(s * FRAC_1_SQRT_2)
}

/// Normal CDF by adaptive quadrature of the density on `(-L, s)` with
/// `L = cfg.truncation`. Returns the value together with a certified bound on
/// the discarded tail mass, taken from the upper half of [`erfc_bracket`].
pub fn std_normal_cdf_quadrature(s: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let cut = cfg.truncation;
    if !s.is_finite() || s <= -cut {
        return Err(Error::domain(
            "std_normal_cdf_quadrature",
            format!("s = {s} must be finite and above -{cut}"),
        ));
    }
    let mut panels = vec![-cut];
    let mut x = -cut;
    while x + 1.0 < s {
        x += 1.0;
        panels.push(x);
    }
    panels.push(s);
    let strict = QuadratureConfig {
        quad_abs_tol: cfg.quad_abs_tol.min(1e-15),
        quad_rel_tol: 1e-15,
        ..*cfg
    };
    let r = integrate_panels(std_normal_pdf, &panels, &strict);
    let (_, tail_upper) = erfc_bracket(cut * FRAC_1_SQRT_2)?;
    Ok((r.value, 0.5 * tail_upper))
}

/// Inverse of [`std_normal_cdf`] on `(0, 1)`.
pub fn std_normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(
            "std_normal_quantile",
            format!("p = {p} is outside (0, 1)"),
        ));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    // Work on the lower tail and reflect; Newton on ln Phi is well scaled
    // even when p is close to the smallest positive double.
    let (q, sign) = if p < 0.5 { (p, 1.0) } else { (1.0 - p, -1.0) };
    let mut x = -SQRT_2 * statrs::function::erf::erfc_inv(2.0 * q);
    let target = q.ln();
    for _ in 0..8 {
        let cdf = std_normal_cdf(x);
        if cdf <= 0.0 {
            break;
        }
        let step = (cdf.ln() - target) * cdf / std_normal_pdf(x);
        if !step.is_finite() {
            break;
        }
        x -= step;
        if step.abs() <= 1e-16 * x.abs().max(1.0) {
            break;
        }
    }
    Ok(sign * x)
}

/// The elementary bracket of `erfc(x)`:
/// `exp(-x^2)/sqrt(pi) * (1/x - 1/x^3) <= erfc(x) <= exp(-x^2)/sqrt(pi) / x`.
/// Exposed for `x >= 1`; the lower end is positive (and the bracket valid)
/// from `x >= sqrt(3)/sqrt(2)` on, and vacuous below.
pub fn erfc_bracket(x: f64) -> Result<(f64, f64)> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::domain("erfc_bracket", format!("x = {x} must be >= 1")));
    }
    let scale = (-x * x).exp() / PI.sqrt();
    let upper = scale / x;
    let lower = scale * (1.0 / x - 1.0 / (x * x * x));
    Ok((lower, upper))
}

/// Mills ratio `(1 - Phi(x)) / pdf(x)` for `x > 0`, by the Laplace
/// continued fraction `1/(x + 1/(x + 2/(x + 3/(x + ...))))` (modified Lentz).
fn mills_ratio(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..10_000 {
        let a = k as f64;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / f
}

/// Cheeger ratio `P_gamma(H_s) / gamma(H_s) = exp(-s^2/2) / Phi(s)` of the
/// half-line `(-inf, s)`. Strictly decreasing, and at least `|s|` for
/// `s <= -2`.
pub fn halfline_cheeger_ratio(s: f64) -> f64 {
    if s < -20.0 {
        SQRT_2PI / mills_ratio(-s)
    } else {
        (-0.5 * s * s).exp() / std_normal_cdf(s)
    }
}

/// `f(s) = sqrt(2 pi) exp(s^2/2) Phi(s)`, the reciprocal of the half-line
/// ratio up to the factor `sqrt(2 pi)`.
pub fn halfline_f(s: f64) -> f64 {
    SQRT_2PI / halfline_cheeger_ratio(s)
}

/// Closed-form derivative of [`halfline_cheeger_ratio`], through
/// `f'(s) = 1 + s f(s)`.
pub fn halfline_ratio_derivative(s: f64) -> f64 {
    let ratio = halfline_cheeger_ratio(s);
    let f = SQRT_2PI / ratio;
    -ratio * (1.0 + s * f) / f
}

/// Central difference of `g` at `s` with step `h`.
fn central_difference<G: Fn(f64) -> f64>(g: &G, s: f64, h: f64) -> f64 {
    (g(s + h) - g(s - h)) / (2.0 * h)
}

/// Central difference with one Richardson extrapolation step, error `O(h^4)`.
pub fn richardson_derivative<G: Fn(f64) -> f64>(g: G, s: f64, h: f64) -> f64 {
    let coarse = central_difference(&g, s, h);
    let fine = central_difference(&g, s, 0.5 * h);
    (4.0 * fine - coarse) / 3.0
}

/// One sample of the half-line ratio with a numerically differentiated slope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioSample {
    pub s: f64,
    pub value: f64,
    pub derivative: f64,
}

pub fn ratio_sample(s: f64, step: f64) -> RatioSample {
    RatioSample {
        s,
        value: halfline_cheeger_ratio(s),
        derivative: richardson_derivative(halfline_cheeger_ratio, s, step),
    }
}

/// `|f'_h(s) - (1 + s f(s))|` where `f'_h` is the plain central difference
/// with step `h`; the residual is pure discretization error, `O(h^2)`.
pub fn ratio_derivative_identity_check(s: f64, step: f64) -> f64 {
    let numeric = central_difference(&halfline_f, s, step);
    (numeric - (1.0 + s * halfline_f(s))).abs()
}

/// `phi(a) - phi(a + delta)` for the half-line ratio `phi`, computed without
/// cancellation when `delta` is small by integrating `-phi'` over the step.
pub fn ratio_drop(a: f64, delta: f64, cfg: &QuadratureConfig) -> f64 {
    if delta == 0.0 {
        return 0.0;
    }
    if delta.abs() > 0.25 {
        return halfline_cheeger_ratio(a) - halfline_cheeger_ratio(a + delta);
    }
    let strict = QuadratureConfig {
        quad_abs_tol: 0.0,
        quad_rel_tol: 1e-14,
        ..*cfg
    };
    let r = integrate(|u| -halfline_ratio_derivative(a + u), 0.0, delta.abs(), &strict);
    r.value * delta.signum()
}

/// `Phi(rho) = rho / (1 + sqrt|ln rho|)` on `[0, 1]`, with `Phi(0) = 0`.
pub fn log_asymmetry_phi(rho: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::domain(
            "log_asymmetry_phi",
            format!("rho = {rho} is outside [0, 1]"),
        ));
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    Ok(rho / (1.0 + rho.ln().abs().sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cdf_oracle(s: f64) -> f64 {
        // Composite quadrature of the density on (-40, s), independent of erfc.
        let cfg = QuadratureConfig {
            quad_abs_tol: 1e-16,
            quad_rel_tol: 1e-16,
            ..Default::default()
        };
        let n = 4 * (s + 40.0).ceil() as usize;
        let pts: Vec<f64> = (0..=n)
            .map(|i| -40.0 + (s + 40.0) * i as f64 / n as f64)
            .collect();
        integrate_panels(std_normal_pdf, &pts, &cfg).value
    }

    #[test]
    fn cdf_examples() {
        assert_eq!(std_normal_cdf(0.0), 0.5);
        let deep = std_normal_cdf(-38.0);
        assert!(deep > 0.0 && deep < 1e-300);
        assert!((std_normal_cdf(1.0) - cdf_oracle(1.0)).abs() < 1e-12);
    }

    #[test]
    fn cdf_quadrature_route_agrees() {
        let cfg = QuadratureConfig::default();
        for s in [-6.0, -1.0, 0.3, 2.5] {
            let (v, tail) = std_normal_cdf_quadrature(s, &cfg).unwrap();
            assert!((v - std_normal_cdf(s)).abs() < 1e-13, "s={s}");
            assert!(tail < 1e-300);
        }
        assert!(std_normal_cdf_quadrature(-41.0, &cfg).is_err());
    }

    #[test]
    fn quantile_examples() {
        assert_eq!(std_normal_quantile(0.5).unwrap(), 0.0);
        let x = std_normal_quantile(std_normal_cdf(-1.7)).unwrap();
        assert!((x + 1.7).abs() < 1e-10);
        // Bisection oracle on (0, 10).
        let root = crate::numeric::bisect(|x| std_normal_cdf(x) - 0.9, 0.0, 10.0, 0.0, |_| false)
            .unwrap();
        assert!((std_normal_quantile(0.9).unwrap() - root.x).abs() < 1e-10);
        assert!(std_normal_quantile(0.0).is_err());
        assert!(std_normal_quantile(1.0).is_err());
        assert!(std_normal_quantile(f64::NAN).is_err());
    }

    #[test]
    fn erfc_bracket_examples() {
        let (lo, hi) = erfc_bracket(3.0).unwrap();
        let scale = (-9.0f64).exp() / PI.sqrt();
        assert!((lo - scale * (1.0 / 3.0 - 1.0 / 27.0)).abs() < 1e-18);
        assert!((hi - scale / 3.0).abs() < 1e-18);
        let (lo, hi) = erfc_bracket(2.0).unwrap();
        // erfc(2) = 2/sqrt(pi) int_2^40 exp(-t^2) dt
        let cfg = QuadratureConfig {
            quad_abs_tol: 1e-18,
            quad_rel_tol: 1e-15,
            ..Default::default()
        };
        let q = 2.0 / PI.sqrt() * integrate(|t: f64| (-t * t).exp(), 2.0, 40.0, &cfg).value;
        assert!(lo <= q && q <= hi, "{lo} {q} {hi}");
        assert!(erfc_bracket(0.5).is_err());
    }

    #[test]
    fn halfline_ratio_examples() {
        assert!((halfline_cheeger_ratio(0.0) - 2.0).abs() < 1e-15);
        assert!(halfline_cheeger_ratio(-6.0) >= 6.0);
        // Continued-fraction branch agrees with the direct quotient where both apply.
        for s in [-6.0f64, -12.0, -20.0, -30.0] {
            let direct = (-0.5 * s * s).exp() / std_normal_cdf(s);
            let cf = SQRT_2PI / mills_ratio(-s);
            assert!((direct - cf).abs() / direct < 1e-13, "s={s}: {direct} {cf}");
        }
        assert!(halfline_cheeger_ratio(-100.0).is_finite());
    }

    #[test]
    fn identity_residual_is_second_order() {
        assert!(ratio_derivative_identity_check(0.0, 1e-4) < 1e-6);
        assert!(ratio_derivative_identity_check(-3.0, 1e-4) < 1e-6);
        let r1 = ratio_derivative_identity_check(2.0, 1e-2);
        let r2 = ratio_derivative_identity_check(2.0, 5e-3);
        let order = r1 / r2;
        assert!((order - 4.0).abs() < 0.2, "ratio {order}");
    }

    #[test]
    fn ratio_drop_matches_direct_difference() {
        let cfg = QuadratureConfig::default();
        let d = ratio_drop(-1.0, 0.1, &cfg);
        let direct = halfline_cheeger_ratio(-1.0) - halfline_cheeger_ratio(-0.9);
        assert!((d - direct).abs() < 1e-13);
        // For tiny steps the drop is linear in the step.
        let tiny = ratio_drop(-1.0, 1e-12, &cfg);
        let slope = -halfline_ratio_derivative(-1.0);
        assert!((tiny / 1e-12 - slope).abs() / slope < 1e-9);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(log_asymmetry_phi(1.0).unwrap(), 1.0);
        assert_eq!(log_asymmetry_phi(0.0).unwrap(), 0.0);
        let bound = 1.0 / (4.0 * (1.0 + 4f64.ln().sqrt()));
        assert!(log_asymmetry_phi(0.25).unwrap() >= bound);
        assert!(log_asymmetry_phi(1.5).is_err());
        assert!(log_asymmetry_phi(-0.1).is_err());
    }
}
