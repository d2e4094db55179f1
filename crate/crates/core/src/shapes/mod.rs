//! Planar sets: star-shaped polar profiles, convex polygons, discs, annuli
//! and finite disjoint unions of these, with their exact or quadrature
//! measures.
//!
//! Every primitive is also exposed as a signed sum of *radial pieces*
//! (a center plus a radius function of the angle), which is what the
//! asymmetry indexes integrate over.

mod circle;
mod polygon;
mod star;

use std::f64::consts::{PI, TAU};

pub use circle::{Annulus, Disc};
pub use polygon::{erode_convex, eroded_area, ConvexPolygon};
pub(crate) use polygon::cheeger_radius;
pub use star::{flower, Harmonic, StarShape};

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::numeric::{integrate_panels, Integral};

pub type Point = [f64; 2];

/// Finite union of primitives with pairwise disjoint closures.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeUnion {
    components: Vec<Shape2D>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shape2D {
    Disc(Disc),
    Annulus(Annulus),
    Polygon(ConvexPolygon),
    Star(StarShape),
    Union(ShapeUnion),
}

impl From<Disc> for Shape2D {
    fn from(d: Disc) -> Self {
        Shape2D::Disc(d)
    }
}
impl From<Annulus> for Shape2D {
    fn from(a: Annulus) -> Self {
        Shape2D::Annulus(a)
    }
}
impl From<ConvexPolygon> for Shape2D {
    fn from(p: ConvexPolygon) -> Self {
        Shape2D::Polygon(p)
    }
}
impl From<StarShape> for Shape2D {
    fn from(s: StarShape) -> Self {
        Shape2D::Star(s)
    }
}
impl From<ShapeUnion> for Shape2D {
    fn from(u: ShapeUnion) -> Self {
        Shape2D::Union(u)
    }
}

/// Radius function of a radial piece.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Profile<'a> {
    Round(f64),
    Star(&'a StarShape),
    Polygon(&'a ConvexPolygon),
}

/// `sign * {center + rho e(theta) : rho < r(theta)}`; shapes are signed sums
/// of these.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RadialPiece<'a> {
    pub center: Point,
    pub sign: f64,
    pub profile: Profile<'a>,
}

impl RadialPiece<'_> {
    pub fn radius(&self, theta: f64) -> f64 {
        match self.profile {
            Profile::Round(r) => r,
            Profile::Star(s) => s.radius(theta),
            Profile::Polygon(p) => p.ray_exit(self.center, [theta.cos(), theta.sin()]),
        }
    }

    /// Sorted breakpoints in `[0, 2 pi]`: a uniform panel grid plus the
    /// profile's kinks plus any caller-supplied angles.
    fn breakpoints(&self, extra: &[f64]) -> Vec<f64> {
        let panels = match self.profile {
            Profile::Round(_) | Profile::Polygon(_) => 8,
            Profile::Star(s) => s.panel_count(),
        };
        let mut pts: Vec<f64> = (0..=panels).map(|i| TAU * i as f64 / panels as f64).collect();
        if let Profile::Polygon(p) = self.profile {
            pts.extend(
                p.vertices()
                    .iter()
                    .map(|v| (v[1] - self.center[1]).atan2(v[0] - self.center[0])),
            );
        }
        pts.extend_from_slice(extra);
        for t in pts.iter_mut() {
            *t = t.rem_euclid(TAU);
        }
        pts.push(TAU);
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        pts
    }

    /// `int_0^{2 pi} g(theta, r(theta)) dtheta`.
    pub fn angular_integral<G: Fn(f64, f64) -> f64>(
        &self,
        g: G,
        extra_breaks: &[f64],
        cfg: &QuadratureConfig,
    ) -> Integral {
        let pts = self.breakpoints(extra_breaks);
        integrate_panels(|t| g(t, self.radius(t)), &pts, cfg)
    }
}

impl ShapeUnion {
    /// Flattens nested unions and certifies that component closures are
    /// pairwise disjoint; touching or overlapping components are rejected.
    pub fn new(components: Vec<Shape2D>) -> Result<Self> {
        let mut flat = Vec::new();
        for c in components {
            match c {
                Shape2D::Union(u) => flat.extend(u.components),
                other => flat.push(other),
            }
        }
        if flat.is_empty() {
            return Err(Error::InvalidShape("empty union".into()));
        }
        for i in 0..flat.len() {
            for j in (i + 1)..flat.len() {
                if !certified_disjoint(&flat[i], &flat[j]) {
                    return Err(Error::InvalidShape(format!(
                        "union components {i} and {j} are not certifiably disjoint"
                    )));
                }
            }
        }
        Ok(Self { components: flat })
    }

    pub fn components(&self) -> &[Shape2D] {
        &self.components
    }
}

/// Closed radial band `[inner, outer]` about `c` containing the primitive.
fn radial_band(shape: &Shape2D, c: Point) -> (f64, f64) {
    let dist = |p: Point| (p[0] - c[0]).hypot(p[1] - c[1]);
    match shape {
        Shape2D::Disc(d) => {
            let delta = dist(d.center);
            ((delta - d.radius).max(0.0), delta + d.radius)
        }
        Shape2D::Annulus(a) => {
            let delta = dist(a.center);
            let inner = if delta <= a.inner {
                a.inner - delta
            } else {
                (delta - a.outer).max(0.0)
            };
            (inner, delta + a.outer)
        }
        Shape2D::Star(s) => {
            let delta = dist(s.center());
            let r = s.max_radius();
            ((delta - r).max(0.0), delta + r)
        }
        Shape2D::Polygon(p) => {
            let outer = p.vertices().iter().map(|&v| dist(v)).fold(0.0, f64::max);
            let inner = if p.contains(c) {
                0.0
            } else {
                let vs = p.vertices();
                (0..vs.len())
                    .map(|i| segment_distance(c, vs[i], vs[(i + 1) % vs.len()]))
                    .fold(f64::INFINITY, f64::min)
            };
            (inner, outer)
        }
        Shape2D::Union(_) => (0.0, f64::INFINITY),
    }
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let t = ((ap[0] * ab[0] + ap[1] * ab[1]) / (ab[0] * ab[0] + ab[1] * ab[1])).clamp(0.0, 1.0);
    (ap[0] - t * ab[0]).hypot(ap[1] - t * ab[1])
}

fn certified_disjoint(a: &Shape2D, b: &Shape2D) -> bool {
    [a.anchor(), b.anchor()].into_iter().any(|c| {
        let (ia, oa) = radial_band(a, c);
        let (ib, ob) = radial_band(b, c);
        oa < ib || ob < ia
    })
}

impl Shape2D {
    /// Reference point of a primitive (center, or centroid for polygons).
    fn anchor(&self) -> Point {
        match self {
            Shape2D::Disc(d) => d.center,
            Shape2D::Annulus(a) => a.center,
            Shape2D::Star(s) => s.center(),
            Shape2D::Polygon(p) => p.centroid(),
            Shape2D::Union(u) => u.components[0].anchor(),
        }
    }

    /// Primitive components (a primitive is its own single component).
    pub fn components(&self) -> &[Shape2D] {
        match self {
            Shape2D::Union(u) => &u.components,
            other => std::slice::from_ref(other),
        }
    }

    pub(crate) fn pieces(&self) -> Vec<RadialPiece<'_>> {
        let mut out = Vec::new();
        for c in self.components() {
            match c {
                Shape2D::Disc(d) => out.push(RadialPiece {
                    center: d.center,
                    sign: 1.0,
                    profile: Profile::Round(d.radius),
                }),
                Shape2D::Annulus(a) => {
                    out.push(RadialPiece {
                        center: a.center,
                        sign: 1.0,
                        profile: Profile::Round(a.outer),
                    });
                    out.push(RadialPiece {
                        center: a.center,
                        sign: -1.0,
                        profile: Profile::Round(a.inner),
                    });
                }
                Shape2D::Star(s) => out.push(RadialPiece {
                    center: s.center(),
                    sign: 1.0,
                    profile: Profile::Star(s),
                }),
                Shape2D::Polygon(p) => out.push(RadialPiece {
                    center: p.centroid(),
                    sign: 1.0,
                    profile: Profile::Polygon(p),
                }),
                Shape2D::Union(_) => unreachable!("unions are flattened"),
            }
        }
        out
    }

    pub fn area(&self) -> f64 {
        match self {
            Shape2D::Disc(d) => d.area(),
            Shape2D::Annulus(a) => a.area(),
            Shape2D::Polygon(p) => p.area(),
            Shape2D::Star(s) => s.area(),
            Shape2D::Union(u) => u.components.iter().map(Shape2D::area).sum(),
        }
    }

    /// Perimeter; for unions, the sum over components (their closures are
    /// disjoint, so no boundary is shared).
    pub fn perimeter(&self, cfg: &QuadratureConfig) -> f64 {
        match self {
            Shape2D::Disc(d) => d.perimeter(),
            Shape2D::Annulus(a) => a.perimeter(),
            Shape2D::Polygon(p) => p.perimeter(),
            Shape2D::Star(s) => s.perimeter(cfg),
            Shape2D::Union(u) => u.components.iter().map(|c| c.perimeter(cfg)).sum(),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match self {
            Shape2D::Disc(d) => d.contains(p),
            Shape2D::Annulus(a) => a.contains(p),
            Shape2D::Polygon(q) => q.contains(p),
            Shape2D::Star(s) => s.contains(p),
            Shape2D::Union(u) => u.components.iter().any(|c| c.contains(p)),
        }
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> (Point, Point) {
        let grow = |(lo, hi): (Point, Point), c: Point, r: f64| {
            (
                [lo[0].min(c[0] - r), lo[1].min(c[1] - r)],
                [hi[0].max(c[0] + r), hi[1].max(c[1] + r)],
            )
        };
        let empty = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        self.components().iter().fold(empty, |acc, c| match c {
            Shape2D::Disc(d) => grow(acc, d.center, d.radius),
            Shape2D::Annulus(a) => grow(acc, a.center, a.outer),
            Shape2D::Star(s) => grow(acc, s.center(), s.max_radius()),
            Shape2D::Polygon(p) => p.vertices().iter().fold(acc, |a, &v| grow(a, v, 0.0)),
            Shape2D::Union(_) => unreachable!("unions are flattened"),
        })
    }

    pub fn translated(&self, v: Point) -> Shape2D {
        let shift = |c: Point| [c[0] + v[0], c[1] + v[1]];
        match self {
            Shape2D::Disc(d) => Shape2D::Disc(Disc { center: shift(d.center), ..*d }),
            Shape2D::Annulus(a) => Shape2D::Annulus(Annulus { center: shift(a.center), ..*a }),
            Shape2D::Polygon(p) => Shape2D::Polygon(p.translated(v)),
            Shape2D::Star(s) => Shape2D::Star(s.translated(v)),
            Shape2D::Union(u) => Shape2D::Union(ShapeUnion {
                components: u.components.iter().map(|c| c.translated(v)).collect(),
            }),
        }
    }

    /// Dilation about the origin by `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Shape2D {
        let mul = |c: Point| [c[0] * lambda, c[1] * lambda];
        match self {
            Shape2D::Disc(d) => Shape2D::Disc(Disc {
                center: mul(d.center),
                radius: d.radius * lambda,
            }),
            Shape2D::Annulus(a) => Shape2D::Annulus(Annulus {
                center: mul(a.center),
                inner: a.inner * lambda,
                outer: a.outer * lambda,
            }),
            Shape2D::Polygon(p) => Shape2D::Polygon(p.scaled(lambda)),
            Shape2D::Star(s) => Shape2D::Star(s.scaled(lambda)),
            Shape2D::Union(u) => Shape2D::Union(ShapeUnion {
                components: u.components.iter().map(|c| c.scaled(lambda)).collect(),
            }),
        }
    }

    /// Disc centered at the origin with the same area.
    pub fn equivalent_ball(&self) -> Disc {
        Disc {
            center: [0.0, 0.0],
            radius: (self.area() / PI).sqrt(),
        }
    }

    /// Points sampled on the boundary, `per_component` per boundary curve.
    pub fn boundary_samples(&self, per_curve: usize) -> Vec<Point> {
        let mut out = Vec::new();
        let circle = |out: &mut Vec<Point>, c: Point, r: f64| {
            out.extend((0..per_curve).map(|i| {
                let t = TAU * i as f64 / per_curve as f64;
                [c[0] + r * t.cos(), c[1] + r * t.sin()]
            }))
        };
        for c in self.components() {
            match c {
                Shape2D::Disc(d) => circle(&mut out, d.center, d.radius),
                Shape2D::Annulus(a) => {
                    circle(&mut out, a.center, a.inner);
                    circle(&mut out, a.center, a.outer);
                }
                Shape2D::Star(s) => out.extend((0..per_curve).map(|i| {
                    let t = TAU * i as f64 / per_curve as f64;
                    let r = s.radius(t);
                    [s.center()[0] + r * t.cos(), s.center()[1] + r * t.sin()]
                })),
                Shape2D::Polygon(p) => {
                    let vs = p.vertices();
                    let per_edge = (per_curve / vs.len()).max(1);
                    for i in 0..vs.len() {
                        let a = vs[i];
                        let b = vs[(i + 1) % vs.len()];
                        out.extend((0..per_edge).map(|k| {
                            let s = k as f64 / per_edge as f64;
                            [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]
                        }));
                    }
                }
                Shape2D::Union(_) => unreachable!("unions are flattened"),
            }
        }
        out
    }
}

/// Radius of the largest disc concentric with a star-shaped set that it
/// contains, `min_theta r(theta)`. Discs count as constant profiles.
pub fn inscribed_concentric_radius(shape: &Shape2D) -> Result<f64> {
    match shape {
        Shape2D::Star(s) => Ok(s.min_radius()),
        Shape2D::Disc(d) => Ok(d.radius),
        _ => Err(Error::InvalidShape(
            "inscribed concentric radius needs a star-shaped profile".into(),
        )),
    }
}

/// The disc-plus-shell family `B_{1-1/j} u A_{1, 1+eps(j)}` of total area
/// `pi`, returned with `eps(j) = sqrt(2 - (1 - 1/j)^2) - 1`.
pub fn annulus_family(j: u32) -> Result<(ShapeUnion, f64)> {
    if j < 2 {
        return Err(Error::InvalidShape(format!("annulus family needs j >= 2, got {j}")));
    }
    let core = 1.0 - 1.0 / j as f64;
    let eps = (2.0 - core * core).sqrt() - 1.0;
    let union = ShapeUnion::new(vec![
        Disc::new([0.0, 0.0], core)?.into(),
        Annulus::new([0.0, 0.0], 1.0, 1.0 + eps)?.into(),
    ])?;
    Ok((union, eps))
}

/// Connected variant of [`annulus_family`]: two radial bridges of width `w`
/// along the vertical axis join the core disc to the shell, and the shell
/// is thinned so the total area stays `pi`. Only area and perimeter are
/// provided.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BridgedAnnulus {
    pub core: f64,
    pub outer: f64,
    pub width: f64,
}

impl BridgedAnnulus {
    pub fn new(j: u32, width: f64) -> Result<Self> {
        if j < 2 {
            return Err(Error::InvalidShape(format!("annulus family needs j >= 2, got {j}")));
        }
        let core = 1.0 - 1.0 / j as f64;
        if !(width > 0.0 && width < 2.0 * core) {
            return Err(Error::InvalidShape(format!("bridge width {width} out of range")));
        }
        let mut shape = Self { core, outer: 1.0, width };
        let shell = PI - PI * core * core - 2.0 * shape.bridge_area();
        if shell <= 0.0 {
            return Err(Error::InvalidShape("bridges leave no area for the shell".into()));
        }
        shape.outer = (1.0 + shell / PI).sqrt();
        Ok(shape)
    }

    fn bridge_area(&self) -> f64 {
        // int_{-w/2}^{w/2} sqrt(1 - x^2) - sqrt(core^2 - x^2) dx
        let prim = |x: f64, r: f64| 0.5 * (x * (r * r - x * x).sqrt() + r * r * (x / r).asin());
        let h = 0.5 * self.width;
        2.0 * (prim(h, 1.0) - prim(h, self.core))
    }

    pub fn area(&self) -> f64 {
        PI * (self.core * self.core + self.outer * self.outer - 1.0) + 2.0 * self.bridge_area()
    }

    pub fn perimeter(&self) -> f64 {
        let h = 0.5 * self.width;
        let side = (1.0 - h * h).sqrt() - (self.core * self.core - h * h).sqrt();
        let removed_arcs = 2.0 * self.core * (h / self.core).asin() + 2.0 * h.asin();
        TAU * (self.core + 1.0 + self.outer) + 2.0 * (2.0 * side - removed_arcs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn disc_measures() {
        let d: Shape2D = Disc::unit().into();
        assert!((d.area() - PI).abs() < 1e-15);
        assert!((d.perimeter(&cfg()) - TAU).abs() < 1e-15);
        let far: Shape2D = Disc::new([5.0, 5.0], 2.0).unwrap().into();
        let b = far.equivalent_ball();
        assert_eq!(b.center, [0.0, 0.0]);
        assert!((b.radius - 2.0).abs() < 1e-15);
    }

    #[test]
    fn flower_equivalent_ball_is_unit() {
        let f: Shape2D = flower(7, 0.1).unwrap().into();
        assert!((f.equivalent_ball().radius - 1.0).abs() < 1e-15);
    }

    #[test]
    fn annulus_family_area_and_eps() {
        let (u, eps) = annulus_family(2).unwrap();
        assert!(((1.0 + eps).powi(2) - (2.0 - 0.25)).abs() < 1e-15);
        for j in [2, 3, 4, 10, 50, 1000] {
            let (u, _) = annulus_family(j).unwrap();
            let s: Shape2D = u.into();
            assert!((s.area() - PI).abs() < 1e-12);
            assert!((s.equivalent_ball().radius - 1.0).abs() < 1e-12);
        }
        let (_, e1) = annulus_family(10).unwrap();
        let (_, e2) = annulus_family(1000).unwrap();
        assert!(e2 < e1 && e2 < 1e-3);
        assert_eq!(u.components().len(), 2);
        assert!(annulus_family(1).is_err());
    }

    #[test]
    fn overlapping_union_rejected() {
        let a: Shape2D = Disc::new([0.0, 0.0], 1.0).unwrap().into();
        let b: Shape2D = Disc::new([1.5, 0.0], 1.0).unwrap().into();
        assert!(ShapeUnion::new(vec![a.clone(), b]).is_err());
        let touching: Shape2D = Annulus::new([0.0, 0.0], 1.0, 2.0).unwrap().into();
        assert!(ShapeUnion::new(vec![a.clone(), touching]).is_err());
        let apart: Shape2D = Disc::new([3.0, 0.0], 0.5).unwrap().into();
        let u = ShapeUnion::new(vec![a, apart]).unwrap();
        let s: Shape2D = u.into();
        assert!((s.area() - 1.25 * PI).abs() < 1e-14);
        assert!((s.perimeter(&cfg()) - 3.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn inscribed_radius_requires_star() {
        let f: Shape2D = flower(4, 0.2).unwrap().into();
        let r = inscribed_concentric_radius(&f).unwrap();
        assert!((r - 0.8 / 1.02f64.sqrt()).abs() < 1e-15);
        let d: Shape2D = Disc::new([1.0, 1.0], 0.7).unwrap().into();
        assert_eq!(inscribed_concentric_radius(&d).unwrap(), 0.7);
        let sq: Shape2D = ConvexPolygon::rectangle([0.0, 0.0], [1.0, 1.0]).unwrap().into();
        assert!(inscribed_concentric_radius(&sq).is_err());
    }

    #[test]
    fn polygon_area_matches_monte_carlo() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let vs: Vec<Point> = (0..7)
            .map(|i| {
                let t = TAU * (i as f64 + rng.random_range(-0.3..0.3)) / 7.0;
                let r = 1.0 + rng.random_range(-0.2..0.2);
                [r * t.cos(), r * t.sin()]
            })
            .collect();
        let poly: Shape2D = ConvexPolygon::new(vs).unwrap().into();
        let (lo, hi) = poly.bounding_box();
        let box_area = (hi[0] - lo[0]) * (hi[1] - lo[1]);
        let n = 10_000_000;
        let hits = (0..n)
            .filter(|_| {
                poly.contains([
                    rng.random_range(lo[0]..hi[0]),
                    rng.random_range(lo[1]..hi[1]),
                ])
            })
            .count();
        let mc = box_area * hits as f64 / n as f64;
        assert!((mc - poly.area()).abs() / poly.area() < 1e-3, "{mc} {}", poly.area());
    }

    #[test]
    fn bridged_variant_keeps_area() {
        let b = BridgedAnnulus::new(5, 0.1).unwrap();
        assert!((b.area() - PI).abs() < 1e-12);
        assert!(b.outer < 1.0 + annulus_family(5).unwrap().1);
        assert!(b.perimeter() > 0.0);
    }
}
