use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::config::QuadratureConfig;
use crate::numeric::{bisect, integrate_panels};
use crate::shapes::{Point, Profile, RadialPiece, Shape2D};

use super::search::minimize_over_centers;
use super::DIM;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexKind {
    Alpha,
    Zeta,
    BetaSq,
}

impl IndexKind {
    pub fn name(self) -> &'static str {
        match self {
            IndexKind::Alpha => "alpha",
            IndexKind::Zeta => "zeta",
            IndexKind::BetaSq => "beta_sq",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizerStatus {
    Converged,
    GridOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub index: IndexKind,
    pub value: f64,
    pub center: Point,
    pub status: OptimizerStatus,
    pub evaluations: usize,
}

/// Inner integral `int_0^r rho / |rho e - p| drho` along one ray from a
/// piece center, where `p = y - center`.
fn ray_potential(p: Point, e: Point, r: f64) -> f64 {
    let d = p[0].hypot(p[1]);
    if d == 0.0 {
        return r;
    }
    let b = e[0] * p[0] + e[1] * p[1];
    let cross = p[0] * e[1] - p[1] * e[0];
    let h2 = cross * cross;
    let sq = ((r - b) * (r - b) + h2).sqrt();
    // ln(rho - b + sqrt q) between 0 and r, rewritten through
    // (rho - b + sqrt q)(sqrt q - rho + b) = h2 where it would cancel.
    let log_diff = if b <= 0.0 {
        (r - b + sq).ln() - (d - b).ln()
    } else if r <= b {
        (d + b).ln() - (sq - r + b).ln()
    } else {
        (r - b + sq).ln() - h2.ln() + (d + b).ln()
    };
    sq - d + b * log_diff
}

/// `int rho drho` over the part of the ray `[0, r]` inside the disc of
/// radius `radius` about `p`.
fn ray_overlap(p: Point, e: Point, r: f64, radius: f64) -> f64 {
    let b = e[0] * p[0] + e[1] * p[1];
    let cross = p[0] * e[1] - p[1] * e[0];
    let disc = radius * radius - cross * cross;
    if disc <= 0.0 {
        return 0.0;
    }
    let s = disc.sqrt();
    let lo = (b - s).max(0.0);
    let hi = (b + s).min(r);
    if hi <= lo {
        0.0
    } else {
        0.5 * (hi - lo) * (hi + lo)
    }
}

/// `int_Omega |x - y|^{-1} dx`.
///
/// Discs and polygons use polar coordinates about `y`, where the integrand
/// is the length of the chord each ray cuts from the piece. Star profiles
/// use polar coordinates about their own center with the radial integral in
/// closed form.
pub fn potential_integral(shape: &Shape2D, y: Point, cfg: &QuadratureConfig) -> f64 {
    shape
        .pieces()
        .iter()
        .map(|piece| piece.sign * piece_potential(piece, y, cfg))
        .sum()
}

fn piece_potential(piece: &RadialPiece<'_>, y: Point, cfg: &QuadratureConfig) -> f64 {
    match piece.profile {
        Profile::Round(radius) => {
            let p = [piece.center[0] - y[0], piece.center[1] - y[1]];
            let d = p[0].hypot(p[1]);
            let toward = p[1].atan2(p[0]);
            let mut extra = vec![toward];
            if d > radius {
                let half = (radius / d).asin();
                extra.extend([toward - half, toward + half]);
            }
            let chord = |t: f64| {
                let e = [t.cos(), t.sin()];
                let b = e[0] * p[0] + e[1] * p[1];
                let cross = p[0] * e[1] - p[1] * e[0];
                let disc = radius * radius - cross * cross;
                if disc <= 0.0 {
                    return 0.0;
                }
                let s = disc.sqrt();
                (b + s - (b - s).max(0.0)).max(0.0)
            };
            integrate_panels(chord, &panel_breaks(8, &extra), cfg).value
        }
        Profile::Polygon(poly) => {
            let planes: Vec<(Point, f64)> = poly
                .half_planes()
                .into_iter()
                .map(|(n, c)| (n, c - n[0] * y[0] - n[1] * y[1]))
                .collect();
            let extra: Vec<f64> = poly
                .vertices()
                .iter()
                .map(|v| (v[1] - y[1]).atan2(v[0] - y[0]))
                .collect();
            let chord = |t: f64| {
                let e = [t.cos(), t.sin()];
                let (mut lo, mut hi) = (0.0f64, f64::INFINITY);
                for &(n, slack) in &planes {
                    let ne = n[0] * e[0] + n[1] * e[1];
                    if ne > 0.0 {
                        hi = hi.min(slack / ne);
                    } else if ne < 0.0 {
                        lo = lo.max(slack / ne);
                    } else if slack < 0.0 {
                        return 0.0;
                    }
                }
                (hi - lo).max(0.0)
            };
            integrate_panels(chord, &panel_breaks(8, &extra), cfg).value
        }
        Profile::Star(_) => {
            let p = [y[0] - piece.center[0], y[1] - piece.center[1]];
            let toward = p[1].atan2(p[0]);
            piece
                .angular_integral(|t, r| ray_potential(p, [t.cos(), t.sin()], r), &[toward], cfg)
                .value
        }
    }
}

/// `|Omega n B(y, radius)|`.
pub fn ball_overlap(shape: &Shape2D, y: Point, radius: f64, cfg: &QuadratureConfig) -> f64 {
    shape
        .pieces()
        .iter()
        .map(|piece| {
            let p = [y[0] - piece.center[0], y[1] - piece.center[1]];
            let d = p[0].hypot(p[1]);
            let toward = p[1].atan2(p[0]);
            let mut breaks = vec![toward];
            if d > radius {
                let half = (radius / d).asin();
                breaks.extend([toward - half, toward + half]);
            }
            breaks.extend(circle_crossings(piece, y, radius));
            let integral = piece.angular_integral(
                |t, r| ray_overlap(p, [t.cos(), t.sin()], r, radius),
                &breaks,
                cfg,
            );
            piece.sign * integral.value
        })
        .sum()
}

/// `int_{dOmega} nu(x) . (x - y)/|x - y| ds`, computed directly on the
/// boundary (closed form on polygon edges, quadrature on curves).
pub fn boundary_flux(shape: &Shape2D, y: Point, cfg: &QuadratureConfig) -> f64 {
    let circle = |c: Point, r: f64, orientation: f64| {
        let p = [y[0] - c[0], y[1] - c[1]];
        let f = |t: f64| {
            let (s, co) = t.sin_cos();
            let x = [c[0] + r * co - y[0], c[1] + r * s - y[1]];
            orientation * r * (co * x[0] + s * x[1]) / x[0].hypot(x[1])
        };
        let toward = p[1].atan2(p[0]).rem_euclid(TAU);
        integrate_panels(f, &panel_breaks(8, &[toward]), cfg).value
    };
    shape
        .components()
        .iter()
        .map(|c| match c {
            Shape2D::Disc(d) => circle(d.center, d.radius, 1.0),
            Shape2D::Annulus(a) => circle(a.center, a.outer, 1.0) + circle(a.center, a.inner, -1.0),
            Shape2D::Star(s) => {
                let c = s.center();
                let f = |t: f64| {
                    let (sn, co) = t.sin_cos();
                    let r = s.radius(t);
                    let dr = s.radius_derivative(t);
                    let x = [c[0] + r * co - y[0], c[1] + r * sn - y[1]];
                    let tangent = [dr * co - r * sn, dr * sn + r * co];
                    (x[0] * tangent[1] - x[1] * tangent[0]) / x[0].hypot(x[1])
                };
                let toward = (y[1] - c[1]).atan2(y[0] - c[0]).rem_euclid(TAU);
                integrate_panels(f, &panel_breaks(s.panel_count(), &[toward]), cfg).value
            }
            Shape2D::Polygon(poly) => {
                let vs = poly.vertices();
                (0..vs.len())
                    .map(|i| {
                        let a = vs[i];
                        let b = vs[(i + 1) % vs.len()];
                        let len = (b[0] - a[0]).hypot(b[1] - a[1]);
                        let t = [(b[0] - a[0]) / len, (b[1] - a[1]) / len];
                        let nu = [t[1], -t[0]];
                        let ay = [a[0] - y[0], a[1] - y[1]];
                        let by = [b[0] - y[0], b[1] - y[1]];
                        let delta = nu[0] * ay[0] + nu[1] * ay[1];
                        if delta == 0.0 {
                            return 0.0;
                        }
                        let u1 = t[0] * ay[0] + t[1] * ay[1];
                        let u2 = t[0] * by[0] + t[1] * by[1];
                        delta * ((u2 / delta.abs()).asinh() - (u1 / delta.abs()).asinh())
                    })
                    .sum()
            }
            Shape2D::Union(_) => unreachable!("unions are flattened"),
        })
        .sum()
}

/// Angles (about the piece center) where the piece boundary crosses the
/// circle `|x - y| = radius`; the overlap integrand has kinks there.
fn circle_crossings(piece: &RadialPiece<'_>, y: Point, radius: f64) -> Vec<f64> {
    let gap = |t: f64| {
        let r = piece.radius(t);
        let x = piece.center[0] + r * t.cos() - y[0];
        let z = piece.center[1] + r * t.sin() - y[1];
        x.hypot(z) - radius
    };
    let samples = 16 * match piece.profile {
        Profile::Round(_) => 8,
        Profile::Star(s) => s.panel_count(),
        Profile::Polygon(p) => p.vertices().len().max(8),
    };
    let grid: Vec<(f64, f64)> = (0..=samples)
        .map(|i| {
            let t = TAU * i as f64 / samples as f64;
            (t, gap(t))
        })
        .collect();
    grid.windows(2)
        .filter(|w| (w[0].1 < 0.0) != (w[1].1 < 0.0))
        .filter_map(|w| bisect(gap, w[0].0, w[1].0, 0.0, |_| false).ok())
        .map(|root| root.x)
        .collect()
}

/// Uniform panel grid on `[0, 2 pi]` refined by extra angles (any branch).
fn panel_breaks(panels: usize, extra: &[f64]) -> Vec<f64> {
    let mut pts: Vec<f64> = (0..=panels).map(|i| TAU * i as f64 / panels as f64).collect();
    pts.extend(extra.iter().map(|t| t.rem_euclid(TAU)));
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    pts
}

/// `|Omega Delta (B_Omega + y)| / |Omega|`.
pub fn fraenkel_alpha_at(shape: &Shape2D, y: Point, cfg: &QuadratureConfig) -> f64 {
    let area = shape.area();
    let radius = (area / PI).sqrt();
    2.0 * (area - ball_overlap(shape, y, radius, cfg)) / area
}

/// `P(B_Omega)/(n-1) - int_Omega |x - y|^{-1} dx` at a fixed center.
pub fn riesz_zeta_at(shape: &Shape2D, y: Point, cfg: &QuadratureConfig) -> f64 {
    ball_perimeter(shape) / (DIM - 1) as f64 - potential_integral(shape, y, cfg)
}

/// `(P(Omega) - (n-1) int_Omega |x - y|^{-1} dx) / P(B_Omega)` at a fixed
/// center.
pub fn beta_sq_at(shape: &Shape2D, y: Point, cfg: &QuadratureConfig) -> f64 {
    (shape.perimeter(cfg) - (DIM - 1) as f64 * potential_integral(shape, y, cfg))
        / ball_perimeter(shape)
}

fn ball_perimeter(shape: &Shape2D) -> f64 {
    TAU * shape.equivalent_ball().radius
}

pub fn fraenkel_alpha(shape: &Shape2D, cfg: &QuadratureConfig) -> IndexReport {
    let area = shape.area();
    let radius = (area / PI).sqrt();
    let found = minimize_over_centers(shape, |y, c| -ball_overlap(shape, y, radius, c), cfg);
    IndexReport {
        index: IndexKind::Alpha,
        value: (2.0 * (area + found.value) / area).clamp(0.0, 2.0),
        center: found.center,
        status: found.status,
        evaluations: found.evaluations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EuclidIndexes {
    pub alpha: IndexReport,
    pub zeta: IndexReport,
    pub beta_sq: IndexReport,
}

/// `zeta` and `beta^2` share the potential maximizer; the pair is computed
/// from a single search.
pub fn zeta_and_beta(shape: &Shape2D, cfg: &QuadratureConfig) -> (IndexReport, IndexReport) {
    let found = minimize_over_centers(shape, |y, c| -potential_integral(shape, y, c), cfg);
    let max_pot = -found.value;
    let pb = ball_perimeter(shape);
    let report = |index, value| IndexReport {
        index,
        value,
        center: found.center,
        status: found.status,
        evaluations: found.evaluations,
    };
    (
        report(IndexKind::Zeta, pb / (DIM - 1) as f64 - max_pot),
        report(
            IndexKind::BetaSq,
            (shape.perimeter(cfg) - (DIM - 1) as f64 * max_pot) / pb,
        ),
    )
}

pub fn riesz_zeta(shape: &Shape2D, cfg: &QuadratureConfig) -> IndexReport {
    zeta_and_beta(shape, cfg).0
}

pub fn oscillation_beta_sq(shape: &Shape2D, cfg: &QuadratureConfig) -> IndexReport {
    zeta_and_beta(shape, cfg).1
}

pub fn euclid_indexes(shape: &Shape2D, cfg: &QuadratureConfig) -> EuclidIndexes {
    let (zeta, beta_sq) = zeta_and_beta(shape, cfg);
    EuclidIndexes {
        alpha: fraenkel_alpha(shape, cfg),
        zeta,
        beta_sq,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{Annulus, ConvexPolygon, Disc};

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn disc_potential_at_center() {
        let d: Shape2D = Disc::unit().into();
        assert!((potential_integral(&d, [0.0, 0.0], &cfg()) - TAU).abs() < 1e-12);
        let d: Shape2D = Disc::new([1.0, -2.0], 0.3).unwrap().into();
        assert!((potential_integral(&d, [1.0, -2.0], &cfg()) - TAU * 0.3).abs() < 1e-12);
    }

    #[test]
    fn disc_potential_off_center_closed_form() {
        // Inside a unit disc the potential is 4 E(|y|) with E the complete
        // elliptic integral of the second kind; outside, for |y| = s > 1,
        // it is 4 s [E(1/s) - (1 - 1/s^2) K(1/s)].
        let ellip = |k: f64| {
            // arithmetic-geometric mean evaluation of K and E
            let (mut a, mut g, mut c2sum, mut pow) = (1.0f64, (1.0 - k * k).sqrt(), 0.5 * k * k, 1.0);
            for _ in 0..30 {
                let an = 0.5 * (a + g);
                let gn = (a * g).sqrt();
                let cn = 0.5 * (a - g);
                pow *= 2.0;
                c2sum += 0.5 * pow * cn * cn;
                a = an;
                g = gn;
            }
            let kk = PI / (2.0 * a);
            (kk, kk * (1.0 - c2sum))
        };
        let d: Shape2D = Disc::unit().into();
        for s in [0.3, 0.9] {
            let (_, e) = ellip(s);
            let v = potential_integral(&d, [0.0, s], &cfg());
            assert!((v - 4.0 * e).abs() < 1e-9, "{s}: {v} vs {}", 4.0 * e);
        }
        let s = 3.0;
        let (k, e) = ellip(1.0 / s);
        let exact = 4.0 * s * (e - (1.0 - 1.0 / (s * s)) * k);
        let v = potential_integral(&d, [s, 0.0], &cfg());
        assert!((v - exact).abs() < 1e-10, "{v} vs {exact}");
    }

    #[test]
    fn lens_overlap_closed_form() {
        // two unit discs with centers distance s apart
        let d: Shape2D = Disc::unit().into();
        for s in [0.0f64, 0.4, 1.0, 1.7, 2.5] {
            let lens = if s >= 2.0 {
                0.0
            } else {
                2.0 * (s / 2.0).acos() - 0.5 * s * (4.0 - s * s).sqrt()
            };
            let v = ball_overlap(&d, [s, 0.0], 1.0, &cfg());
            assert!((v - lens).abs() < 1e-10, "{s}: {v} vs {lens}");
        }
    }

    #[test]
    fn annulus_potential_at_center() {
        let a: Shape2D = Annulus::new([0.0, 0.0], 1.0, 1.5).unwrap().into();
        assert!((potential_integral(&a, [0.0, 0.0], &cfg()) - TAU * 0.5).abs() < 1e-12);
    }

    #[test]
    fn flux_matches_potential_on_square() {
        let sq: Shape2D = ConvexPolygon::rectangle([0.0, 0.0], [1.0, 1.0]).unwrap().into();
        for y in [[0.5, 0.5], [0.1, 0.8], [2.0, -1.0]] {
            let a = boundary_flux(&sq, y, &cfg());
            let b = potential_integral(&sq, y, &cfg());
            assert!((a - b).abs() < 1e-9, "{y:?}: {a} vs {b}");
        }
    }
}
