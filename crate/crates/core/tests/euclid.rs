use std::f64::consts::{PI, TAU};

use cheeger_core::euclid::*;
use cheeger_core::numeric::golden_section;
use cheeger_core::shapes::*;
use cheeger_core::QuadratureConfig;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn polygon_on_circle(rng: &mut ChaCha8Rng, n: usize) -> ConvexPolygon {
    loop {
        let mut angles: Vec<f64> = (0..n)
            .map(|i| TAU * (i as f64 + rng.random_range(-0.35..0.35)) / n as f64)
            .collect();
        angles.sort_by(f64::total_cmp);
        let vs = angles
            .iter()
            .map(|t| {
                let r = 1.0 + rng.random_range(-0.25..0.25);
                [r * t.cos(), r * t.sin()]
            })
            .collect();
        if let Ok(p) = ConvexPolygon::new(vs) {
            return p;
        }
    }
}

fn test_shapes() -> Vec<(&'static str, Shape2D)> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    vec![
        ("flower5", flower(5, 0.1).unwrap().into()),
        ("flower12", flower(12, 0.2).unwrap().into()),
        ("heptagon", polygon_on_circle(&mut rng, 7).into()),
        ("square", ConvexPolygon::rectangle([0.0, 0.0], [1.0, 1.0]).unwrap().into()),
        ("annulus4", annulus_family(4).unwrap().0.into()),
        (
            "disc_and_triangle",
            ShapeUnion::new(vec![
                Disc::new([0.0, 0.0], 0.8).unwrap().into(),
                ConvexPolygon::regular(3, 0.5, [2.0, 0.5]).unwrap().into(),
            ])
            .unwrap()
            .into(),
        ),
    ]
}

#[test]
fn beta_zeta_identity_at_fixed_centers() {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for (name, shape) in test_shapes() {
        let (lo, hi) = shape.bounding_box();
        let pb = TAU * shape.equivalent_ball().radius;
        let perimeter = shape.perimeter(&cfg);
        for _ in 0..20 {
            let y = [rng.random_range(lo[0]..hi[0]), rng.random_range(lo[1]..hi[1])];
            // beta^2 from the boundary integral of |nu - pi_y|^2 = 2 - 2 nu . pi_y
            let beta_sq = (perimeter - boundary_flux(&shape, y, &cfg)) / pb;
            let zeta = riesz_zeta_at(&shape, y, &cfg);
            let lhs = pb * beta_sq;
            let rhs = perimeter - pb + zeta;
            assert!((lhs - rhs).abs() < 1e-8, "{name} at {y:?}: {lhs} vs {rhs}");
            assert!((beta_sq_at(&shape, y, &cfg) - beta_sq).abs() < 1e-8);
        }
    }
}

#[test]
fn indexes_nonnegative_and_sound() {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for (name, shape) in test_shapes() {
        let ix = euclid_indexes(&shape, &cfg);
        assert!(ix.zeta.value >= -1e-9, "{name}: zeta {}", ix.zeta.value);
        assert!(ix.beta_sq.value >= -1e-9, "{name}: beta {}", ix.beta_sq.value);
        assert!((0.0..=2.0).contains(&ix.alpha.value));
        assert!(
            (fraenkel_alpha_at(&shape, ix.alpha.center, &cfg) - ix.alpha.value).abs() < 1e-8,
            "{name}"
        );
        assert!((riesz_zeta_at(&shape, ix.zeta.center, &cfg) - ix.zeta.value).abs() < 1e-8);
        assert!((beta_sq_at(&shape, ix.beta_sq.center, &cfg) - ix.beta_sq.value).abs() < 1e-8);

        let (lo, hi) = shape.bounding_box();
        let r = shape.equivalent_ball().radius;
        for _ in 0..100 {
            let y = [
                rng.random_range(lo[0] - r..hi[0] + r),
                rng.random_range(lo[1] - r..hi[1] + r),
            ];
            assert!(ix.alpha.value <= fraenkel_alpha_at(&shape, y, &cfg) + 1e-12, "{name} {y:?}");
            assert!(ix.zeta.value <= riesz_zeta_at(&shape, y, &cfg) + 1e-12, "{name} {y:?}");
        }
    }
}

#[test]
fn indexes_vanish_on_discs() {
    let cfg = cfg();
    for (c, r) in [([0.0, 0.0], 1.0), ([0.3, 0.0], 1.0), ([2.0, -1.0], 0.7)] {
        let d: Shape2D = Disc::new(c, r).unwrap().into();
        let ix = euclid_indexes(&d, &cfg);
        for rep in [ix.alpha, ix.zeta, ix.beta_sq] {
            assert!(rep.value.abs() <= 1e-6, "{:?} at {c:?}: {}", rep.index, rep.value);
        }
        assert!((ix.zeta.center[0] - c[0]).hypot(ix.zeta.center[1] - c[1]) < 1e-4);
    }
}

#[test]
fn indexes_translation_invariant() {
    let cfg = cfg();
    for (name, shape) in test_shapes().into_iter().take(5) {
        let moved = shape.translated([1.7, -0.4]);
        let a = euclid_indexes(&shape, &cfg);
        let b = euclid_indexes(&moved, &cfg);
        for (x, y) in [(a.alpha, b.alpha), (a.zeta, b.zeta), (a.beta_sq, b.beta_sq)] {
            assert!((x.value - y.value).abs() <= 1e-6, "{name} {:?}: {} vs {}", x.index, x.value, y.value);
        }
    }
}

#[test]
fn disc_potential_matches_monte_carlo() {
    let d: Shape2D = Disc::unit().into();
    let y = [3.0, 0.0];
    let v = potential_integral(&d, y, &cfg());
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let n = 10_000_000;
    let mut sum = 0.0;
    for _ in 0..n {
        let r = rng.random::<f64>().sqrt();
        let t = TAU * rng.random::<f64>();
        sum += 1.0 / (r * t.cos() - y[0]).hypot(r * t.sin() - y[1]);
    }
    let mc = PI * sum / n as f64;
    assert!((mc - v).abs() / v < 1e-3, "{mc} vs {v}");
}

/// Area of the intersection of discs of radii `a`, `b` at distance `d`.
fn lens(a: f64, b: f64, d: f64) -> f64 {
    if d >= a + b {
        return 0.0;
    }
    if d <= (a - b).abs() {
        return PI * a.min(b).powi(2);
    }
    let x = (d * d + a * a - b * b) / (2.0 * d * a);
    let z = (d * d + b * b - a * a) / (2.0 * d * b);
    a * a * x.acos() + b * b * z.acos()
        - 0.5 * ((-d + a + b) * (d + a - b) * (d - a + b) * (d + a + b)).sqrt()
}

#[test]
fn annulus_alpha_matches_dense_grid() {
    let (u, eps) = annulus_family(4).unwrap();
    let core = 0.75;
    let outer = 1.0 + eps;
    let alpha_at = |s: f64| {
        let overlap = lens(1.0, core, s) + lens(1.0, outer, s) - lens(1.0, 1.0, s);
        2.0 * (PI - overlap) / PI
    };
    let n = 400;
    let mut best = (f64::INFINITY, [0.0, 0.0]);
    for i in 0..n {
        for k in 0..n {
            let y = [-2.0 + 4.0 * i as f64 / (n - 1) as f64, -2.0 + 4.0 * k as f64 / (n - 1) as f64];
            let v = alpha_at(y[0].hypot(y[1]));
            if v < best.0 {
                best = (v, y);
            }
        }
    }
    let s0 = best.1[0].hypot(best.1[1]);
    let refined = golden_section(alpha_at, (s0 - 0.02).max(0.0), s0 + 0.02, 1e-12);
    let report = fraenkel_alpha(&u.into(), &cfg());
    assert!((report.value - refined.value).abs() < 1e-4, "{} vs {}", report.value, refined.value);
    // the minimizing centers form a circle, not the origin
    assert!(alpha_at(0.0) > refined.value + 0.1);
    let s = report.center[0].hypot(report.center[1]);
    assert!((s - refined.x).abs() < 1e-3, "{s} vs {}", refined.x);
}

#[test]
fn flower_alpha_attained_at_origin() {
    let cfg = cfg();
    let f: Shape2D = flower(5, 0.1).unwrap().into();
    let report = fraenkel_alpha(&f, &cfg);
    let at_origin = fraenkel_alpha_at(&f, [0.0, 0.0], &cfg);
    let overlap = ball_overlap(&f, [0.0, 0.0], 1.0, &cfg);
    assert!(report.value > 0.0);
    assert!(report.value <= 2.0 * (1.0 - overlap / PI) + 1e-12);
    assert!((report.value - at_origin).abs() < 1e-9);
}

#[test]
fn flower_zeta_nearly_independent_of_frequency() {
    let cfg = cfg();
    let values: Vec<f64> = [5, 10, 15]
        .iter()
        .map(|&j| riesz_zeta(&flower(j, 0.1).unwrap().into(), &cfg).value)
        .collect();
    assert!(values[0] > 0.0);
    for v in &values {
        assert!((v - values[0]).abs() < 1e-4, "{values:?}");
    }
}

#[test]
fn beta_lower_bounds_for_paper_families() {
    let cfg = cfg();
    let f: Shape2D = flower(15, 0.1).unwrap().into();
    let b = oscillation_beta_sq(&f, &cfg).value;
    let p = f.perimeter(&cfg);
    let floor = (12.0 / 1.005f64.sqrt() - TAU) / TAU;
    assert!(floor > 0.0);
    assert!(b >= (p - TAU) / TAU && (p - TAU) / TAU >= floor);
    for j in [4, 10, 50] {
        let a: Shape2D = annulus_family(j).unwrap().0.into();
        assert!(oscillation_beta_sq(&a, &cfg).value >= 2.0 - 1e-6);
    }
}

#[test]
fn cheeger_bounds_scale_inversely() {
    let cfg = cfg();
    for (name, shape) in test_shapes() {
        let base = cheeger_bracket(&shape, &cfg);
        assert!(base.lower <= base.upper, "{name}");
        for lambda in [0.5, 2.0] {
            let b = cheeger_bracket(&shape.scaled(lambda), &cfg);
            assert!((b.lower - base.lower / lambda).abs() < 1e-9, "{name} lower");
            assert!((b.upper - base.upper / lambda).abs() < 1e-9, "{name} upper");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn random_polygons_respect_cheeger_ordering(seed in any::<u64>(), n in 5usize..13) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let poly = polygon_on_circle(&mut rng, n);
        let shape: Shape2D = poly.clone().into();
        let exact = cheeger_convex_2d(&poly, 1e-10).unwrap();
        let iso = cheeger_lower_bound_iso(&shape);
        prop_assert!(exact.lower <= exact.upper);
        prop_assert!(exact.upper - exact.lower <= 1e-9 * exact.upper);
        prop_assert!(iso <= exact.lower);
        prop_assert!(exact.upper <= poly.perimeter() / poly.area());
        let bracket = cheeger_bracket(&shape, &cfg());
        prop_assert!(bracket.lower <= bracket.upper);
        prop_assert!((bracket.upper - exact.upper).abs() < 1e-9);
    }

    #[test]
    fn random_polygon_zeta_nonnegative(seed in any::<u64>(), n in 5usize..13) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape: Shape2D = polygon_on_circle(&mut rng, n).into();
        let cfg = cfg();
        let zeta = riesz_zeta(&shape, &cfg);
        prop_assert!(zeta.value >= -1e-9);
        let y = [rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5)];
        let flux = boundary_flux(&shape, y, &cfg);
        prop_assert!((flux - potential_integral(&shape, y, &cfg)).abs() < 1e-9);
    }
}
