use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::bisect;

use super::Point;

/// A strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn signed_area(vs: &[Point]) -> f64 {
    let n = vs.len();
    0.5 * (0..n)
        .map(|i| {
            let a = vs[i];
            let b = vs[(i + 1) % n];
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
}

impl ConvexPolygon {
    /// Validates strict convexity. Clockwise input is reversed.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidShape("a polygon needs at least 3 vertices".into()));
        }
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidShape("non-finite polygon vertex".into()));
        }
        let area = signed_area(&vertices);
        if area < 0.0 {
            vertices.reverse();
        }
        let n = vertices.len();
        let extent = vertices
            .iter()
            .flatten()
            .fold(0.0f64, |m, c| m.max(c.abs()))
            .max(1e-300);
        for i in 0..n {
            let turn = cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if !(turn > 1e-14 * extent * extent) {
                return Err(Error::InvalidShape(format!(
                    "polygon is not strictly convex at vertex {}",
                    (i + 1) % n
                )));
            }
        }
        // Local convexity at every vertex still admits self-winding stars.
        let total_turn: f64 = (0..n)
            .map(|i| {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                let c = vertices[(i + 2) % n];
                let e1 = [b[0] - a[0], b[1] - a[1]];
                let e2 = [c[0] - b[0], c[1] - b[1]];
                (e1[0] * e2[1] - e1[1] * e2[0]).atan2(e1[0] * e2[0] + e1[1] * e2[1])
            })
            .sum();
        if (total_turn - 2.0 * PI).abs() > 1e-6 {
            return Err(Error::InvalidShape("polygon winds more than once".into()));
        }
        Ok(Self { vertices })
    }

    /// Regular `n`-gon with circumradius `r`, first vertex on the positive x axis.
    pub fn regular(n: usize, circumradius: f64, center: Point) -> Result<Self> {
        let vs = (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                [center[0] + circumradius * t.cos(), center[1] + circumradius * t.sin()]
            })
            .collect();
        Self::new(vs)
    }

    pub fn rectangle(lo: Point, hi: Point) -> Result<Self> {
        Self::new(vec![lo, [hi[0], lo[1]], hi, [lo[0], hi[1]]])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                (b[0] - a[0]).hypot(b[1] - a[1])
            })
            .sum()
    }

    pub fn centroid(&self) -> Point {
        let n = self.vertices.len();
        let (mut cx, mut cy) = (0.0, 0.0);
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let w = a[0] * b[1] - b[0] * a[1];
            cx += (a[0] + b[0]) * w;
            cy += (a[1] + b[1]) * w;
        }
        let six_area = 6.0 * self.area();
        [cx / six_area, cy / six_area]
    }

    /// Outward unit normal `n` and offset `d` of every edge, so that the
    /// polygon is `{x : n . x <= d}` for all edges.
    pub fn half_planes(&self) -> Vec<(Point, f64)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
                let len = dx.hypot(dy);
                let normal = [dy / len, -dx / len];
                (normal, normal[0] * a[0] + normal[1] * a[1])
            })
            .collect()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.half_planes()
            .iter()
            .all(|(n, d)| n[0] * p[0] + n[1] * p[1] < *d)
    }

    /// Distance from `origin` to the boundary along the unit direction `e`,
    /// for `origin` inside the polygon.
    pub fn ray_exit(&self, origin: Point, e: Point) -> f64 {
        self.half_planes()
            .iter()
            .filter_map(|(n, d)| {
                let along = n[0] * e[0] + n[1] * e[1];
                (along > 0.0).then(|| (d - n[0] * origin[0] - n[1] * origin[1]) / along)
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn translated(&self, v: Point) -> Self {
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|p| [p[0] + v[0], p[1] + v[1]])
                .collect(),
        }
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|p| [p[0] * lambda, p[1] * lambda])
                .collect(),
        }
    }

    /// Radius of the largest inscribed disc, by bisection on non-emptiness of
    /// the inner parallel set.
    pub fn inradius(&self) -> f64 {
        let c = self.centroid();
        let hi = self
            .half_planes()
            .iter()
            .map(|(n, d)| d - n[0] * c[0] - n[1] * c[1])
            .fold(f64::INFINITY, f64::min)
            .max(0.0);
        // The centroid's distance to the boundary is a lower bound; the
        // inradius is at most half the minimal width, bounded by the diameter.
        let diameter = self
            .vertices
            .iter()
            .flat_map(|a| self.vertices.iter().map(move |b| (a[0] - b[0]).hypot(a[1] - b[1])))
            .fold(0.0, f64::max);
        let area_at = |t: f64| eroded_vertices(self, t).map_or(0.0, |v| signed_area(&v));
        let (mut lo, mut hi) = (hi, 0.5 * diameter);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if area_at(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

/// Clips a convex vertex loop by `n . x <= d`.
fn clip(poly: &[Point], n: Point, d: f64) -> Vec<Point> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    let m = poly.len();
    for i in 0..m {
        let a = poly[i];
        let b = poly[(i + 1) % m];
        let fa = n[0] * a[0] + n[1] * a[1] - d;
        let fb = n[0] * b[0] + n[1] * b[1] - d;
        if fa <= 0.0 {
            out.push(a);
        }
        if (fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0) {
            let s = fa / (fa - fb);
            out.push([a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]);
        }
    }
    out
}

/// Vertices of the inner parallel set at distance `t`, or `None` when empty.
pub(crate) fn eroded_vertices(poly: &ConvexPolygon, t: f64) -> Option<Vec<Point>> {
    let mut current = poly.vertices.clone();
    for (n, d) in poly.half_planes() {
        current = clip(&current, n, d - t);
        if current.len() < 3 {
            return None;
        }
    }
    (signed_area(&current) > 0.0).then_some(current)
}

/// Removes repeated and collinear vertices left behind by clipping.
fn simplify(mut vs: Vec<Point>, scale: f64) -> Vec<Point> {
    let tol = 1e-13 * scale;
    vs.dedup_by(|a, b| (a[0] - b[0]).hypot(a[1] - b[1]) <= tol);
    while vs.len() > 1 {
        let first = vs[0];
        let last = vs[vs.len() - 1];
        if (first[0] - last[0]).hypot(first[1] - last[1]) <= tol {
            vs.pop();
        } else {
            break;
        }
    }
    let mut changed = true;
    while changed && vs.len() >= 3 {
        changed = false;
        let n = vs.len();
        for i in 0..n {
            let turn = cross(vs[(i + n - 1) % n], vs[i], vs[(i + 1) % n]);
            if turn <= tol * scale {
                vs.remove(i);
                changed = true;
                break;
            }
        }
    }
    vs
}

/// Inner parallel set `{x : dist(x, complement) >= t}` of a convex polygon,
/// as the intersection of the inward-offset edge half-planes. Returns `None`
/// once `t` reaches the inradius.
pub fn erode_convex(poly: &ConvexPolygon, t: f64) -> Result<Option<ConvexPolygon>> {
    if !(t >= 0.0) {
        return Err(Error::domain("erode_convex", format!("t = {t} must be >= 0")));
    }
    if t == 0.0 {
        return Ok(Some(poly.clone()));
    }
    let scale = poly.perimeter();
    Ok(eroded_vertices(poly, t).and_then(|vs| {
        let vs = simplify(vs, scale);
        (vs.len() >= 3).then_some(ConvexPolygon { vertices: vs })
    }))
}

/// Area of the inner parallel set at distance `t` (zero when empty).
pub fn eroded_area(poly: &ConvexPolygon, t: f64) -> f64 {
    eroded_vertices(poly, t).map_or(0.0, |v| signed_area(&v).max(0.0))
}

/// Solves `|inner parallel set at t| = pi t^2` on `(0, min(inradius, sqrt(|P|/pi))]`.
/// The function is strictly decreasing there, so bisection runs to full
/// floating-point resolution.
pub(crate) fn cheeger_radius(poly: &ConvexPolygon) -> Result<crate::numeric::Root> {
    let area = poly.area();
    let hi = poly.inradius().min((area / PI).sqrt());
    let g = |t: f64| eroded_area(poly, t) - PI * t * t;
    bisect(g, 0.0, hi, 0.0, |_| false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::rectangle([0.0, 0.0], [1.0, 1.0]).unwrap()
    }

    #[test]
    fn square_erosion() {
        let e = erode_convex(&unit_square(), 0.1).unwrap().unwrap();
        assert!((e.area() - 0.64).abs() < 1e-14);
        assert_eq!(e.vertices().len(), 4);
        assert_eq!(erode_convex(&unit_square(), 0.0).unwrap().unwrap(), unit_square());
        assert!(erode_convex(&unit_square(), 0.5).unwrap().is_none());
        assert!(erode_convex(&unit_square(), -0.1).is_err());
        assert!((unit_square().inradius() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn orientation_and_convexity_checks() {
        let cw = ConvexPolygon::new(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!(cw.area() > 0.0);
        let collinear = ConvexPolygon::new(vec![[0.0, 0.0], [0.5, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        assert!(collinear.is_err());
        let reflex = ConvexPolygon::new(vec![[0.0, 0.0], [2.0, 0.0], [1.0, 0.3], [1.0, 2.0]]);
        assert!(reflex.is_err());
    }

    #[test]
    fn hexagon_erosion_matches_distance_monte_carlo() {
        use rand::{Rng, SeedableRng};
        let hex = ConvexPolygon::regular(6, 1.0, [0.0, 0.0]).unwrap();
        let t = 0.2;
        let exact = erode_convex(&hex, t).unwrap().unwrap().area();
        let planes = hex.half_planes();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        // The eroded hexagon has circumradius 0.77 and inradius 0.67.
        let samples = 10_000_000;
        let hits = (0..samples)
            .filter(|_| {
                let p = [rng.random_range(-0.8..0.8), rng.random_range(-0.7..0.7)];
                planes
                    .iter()
                    .map(|(n, d)| d - n[0] * p[0] - n[1] * p[1])
                    .fold(f64::INFINITY, f64::min)
                    >= t
            })
            .count();
        let mc = 1.6 * 1.4 * hits as f64 / samples as f64;
        assert!((mc - exact).abs() < 1e-3, "{mc} vs {exact}");
    }
}
