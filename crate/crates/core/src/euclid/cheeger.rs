use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::shapes::{cheeger_radius, erode_convex, ConvexPolygon, Shape2D};

/// Two-sided enclosure of a Cheeger constant. `witness` names the
/// competitor set that realizes `upper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheegerBounds {
    pub lower: f64,
    pub upper: f64,
    pub exact: bool,
    pub witness: String,
}

/// `h(B_r) = n / r` in dimension `n`.
pub fn ball_cheeger(n: usize, r: f64) -> f64 {
    assert!(n >= 1 && r > 0.0, "ball_cheeger needs n >= 1 and r > 0");
    n as f64 / r
}

/// `h(Omega) >= h(B_Omega)`, the Cheeger constant of the equal-area disc.
pub fn cheeger_lower_bound_iso(shape: &Shape2D) -> f64 {
    ball_cheeger(2, shape.equivalent_ball().radius)
}

const CONTAINMENT_PROBES: usize = 10_000;

/// `P(E)/|E|` for a competitor `E`, after checking `E` lies in the shape at
/// sampled boundary points of `E`. A probe on the shape's own boundary
/// counts as contained when some point within `1e-9` relative distance is
/// inside.
pub fn cheeger_upper_bound(
    shape: &Shape2D,
    competitor: &Shape2D,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let per_curve = CONTAINMENT_PROBES / competitor.components().len().max(1);
    let (lo, hi) = shape.bounding_box();
    let nudge = 1e-9 * (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let near = |p: [f64; 2]| {
        shape.contains(p)
            || (0..8).any(|k| {
                let t = std::f64::consts::FRAC_PI_4 * k as f64;
                shape.contains([p[0] + nudge * t.cos(), p[1] + nudge * t.sin()])
            })
    };
    let violations = competitor
        .boundary_samples(per_curve)
        .into_iter()
        .filter(|&p| !near(p))
        .count();
    if violations > 0 {
        return Err(Error::Containment { violations });
    }
    Ok(competitor.perimeter(cfg) / competitor.area())
}

/// Cheeger constant of a convex polygon from the inner-parallel-set
/// equation `|Omega^{-t}| = pi t^2`, with `h = 1/t`. The witness is the
/// eroded body dilated by `t`; `tol` bounds the area residual relative to
/// the polygon's area.
pub fn cheeger_convex_2d(polygon: &ConvexPolygon, tol: f64) -> Result<CheegerBounds> {
    if !(tol > 0.0) {
        return Err(Error::domain("cheeger_convex_2d", format!("tol = {tol} must be > 0")));
    }
    let root = cheeger_radius(polygon)?;
    let area = polygon.area();
    let t = root.lo;
    let eroded = erode_convex(polygon, t)?.ok_or(Error::Bracket { lo: root.lo, hi: root.hi })?;
    let residual = eroded.area() - PI * t * t;
    if residual.abs() > tol * area {
        return Err(Error::domain(
            "cheeger_convex_2d",
            format!("area residual {residual:e} exceeds {tol:e} of the area"),
        ));
    }
    let (pe, ae) = (eroded.perimeter(), eroded.area());
    let rounded = (pe + 2.0 * PI * t) / (ae + pe * t + PI * t * t);
    let lower = 1.0 / root.hi;
    Ok(CheegerBounds {
        lower,
        // the witness ratio equals 1/t up to rounding
        upper: rounded.min(1.0 / root.lo).max(lower),
        exact: true,
        witness: format!("eroded body dilated by t = {t:.15e}"),
    })
}

/// Best disc known to sit inside a primitive, as `(ratio, description)`.
fn inscribed_disc(component: &Shape2D) -> Option<(f64, String)> {
    let ratio = |r: f64| ball_cheeger(2, r);
    match component {
        Shape2D::Disc(d) => Some((ratio(d.radius), format!("disc of radius {:.15e}", d.radius))),
        Shape2D::Star(s) => {
            let r = s.min_radius();
            Some((ratio(r), format!("inscribed concentric disc of radius {r:.15e}")))
        }
        Shape2D::Annulus(a) => {
            let r = 0.5 * (a.outer - a.inner);
            Some((ratio(r), format!("disc of radius {r:.15e} inside the annulus")))
        }
        Shape2D::Polygon(_) | Shape2D::Union(_) => None,
    }
}

/// Brackets `h(Omega)` between the equal-area-disc lower bound and the best
/// member of the competitor library: inscribed discs of each component,
/// the rounded erosion of each convex component, and the shape itself.
pub fn cheeger_bracket(shape: &Shape2D, cfg: &QuadratureConfig) -> CheegerBounds {
    bracket(shape, cfg, Vec::new())
}

/// [`cheeger_bracket`] with additional user competitors, each checked for
/// containment before use.
pub fn cheeger_bracket_with(
    shape: &Shape2D,
    extra: &[Shape2D],
    cfg: &QuadratureConfig,
) -> Result<CheegerBounds> {
    let mut registered = Vec::with_capacity(extra.len());
    for (i, c) in extra.iter().enumerate() {
        registered.push((cheeger_upper_bound(shape, c, cfg)?, format!("registered competitor {i}")));
    }
    Ok(bracket(shape, cfg, registered))
}

fn bracket(shape: &Shape2D, cfg: &QuadratureConfig, mut candidates: Vec<(f64, String)>) -> CheegerBounds {
    let lower = cheeger_lower_bound_iso(shape);
    candidates.push((shape.perimeter(cfg) / shape.area(), "the set itself".into()));
    for c in shape.components() {
        candidates.extend(inscribed_disc(c));
        if let Shape2D::Polygon(p) = c {
            if let Ok(b) = cheeger_convex_2d(p, cfg.root_tol.max(1e-10)) {
                candidates.push((b.upper, b.witness));
            }
        }
    }
    let (upper, witness) = candidates
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("the set itself is always a candidate");
    let upper = upper.max(lower);
    CheegerBounds {
        lower,
        upper,
        exact: upper - lower <= 1e-12 * upper,
        witness,
    }
}
