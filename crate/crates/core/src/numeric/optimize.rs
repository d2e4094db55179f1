//! Derivative-free minimizers: golden-section search in one dimension and a
//! Nelder-Mead simplex in two.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub evals: usize,
}

/// Golden-section search for the minimum of `f` on `[a, b]`, assuming the
/// objective is unimodal there. Stops once the bracket is narrower than
/// `x_tol` (absolute) or floating point stops shrinking it.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, x_tol: f64) -> Minimum {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evals = 2;
    while b - a > x_tol && evals < 400 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            if !(x1 > a && x1 < x2) {
                break;
            }
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            if !(x2 < b && x2 > x1) {
                break;
            }
            f2 = f(x2);
        }
        evals += 1;
    }
    if f1 <= f2 {
        Minimum { x: x1, value: f1, evals }
    } else {
        Minimum { x: x2, value: f2, evals }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexResult {
    pub x: [f64; 2],
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Nelder-Mead minimization in the plane with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
///
/// Converges when the spread of objective values across the simplex is at
/// most `f_tol` and the simplex diameter is at most `x_tol`.
pub fn nelder_mead<F: Fn([f64; 2]) -> f64>(
    f: F,
    start: [f64; 2],
    step: f64,
    f_tol: f64,
    x_tol: f64,
    max_evals: usize,
) -> SimplexResult {
    let mut simplex = [
        start,
        [start[0] + step, start[1]],
        [start[0], start[1] + step],
    ];
    let mut values = simplex.map(&f);
    let mut evals = 3;
    let mut converged = false;

    while evals < max_evals {
        // Sort ascending; ties keep lexicographic order for determinism.
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| {
            values[i]
                .total_cmp(&values[j])
                .then(simplex[i][0].total_cmp(&simplex[j][0]))
                .then(simplex[i][1].total_cmp(&simplex[j][1]))
        });
        simplex = order.map(|i| simplex[i]);
        values = order.map(|i| values[i]);

        let spread = values[2] - values[0];
        let diameter = (1..3)
            .map(|i| {
                let dx = simplex[i][0] - simplex[0][0];
                let dy = simplex[i][1] - simplex[0][1];
                (dx * dx + dy * dy).sqrt()
            })
            .fold(0.0, f64::max);
        if spread <= f_tol && diameter <= x_tol {
            converged = true;
            break;
        }

        let centroid = [
            0.5 * (simplex[0][0] + simplex[1][0]),
            0.5 * (simplex[0][1] + simplex[1][1]),
        ];
        let along = |t: f64| {
            [
                centroid[0] + t * (simplex[2][0] - centroid[0]),
                centroid[1] + t * (simplex[2][1] - centroid[1]),
            ]
        };

        let reflected = along(-1.0);
        let fr = f(reflected);
        evals += 1;
        if fr < values[0] {
            let expanded = along(-2.0);
            let fe = f(expanded);
            evals += 1;
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
        } else {
            let (contracted, fc) = if fr < values[2] {
                let p = along(-0.5);
                (p, f(p))
            } else {
                let p = along(0.5);
                (p, f(p))
            };
            evals += 1;
            if fc < values[2].min(fr) {
                simplex[2] = contracted;
                values[2] = fc;
            } else {
                for i in 1..3 {
                    simplex[i] = [
                        simplex[0][0] + 0.5 * (simplex[i][0] - simplex[0][0]),
                        simplex[0][1] + 0.5 * (simplex[i][1] - simplex[0][1]),
                    ];
                    values[i] = f(simplex[i]);
                }
                evals += 2;
            }
        }
    }

    let best = (0..3)
        .min_by(|&i, &j| values[i].total_cmp(&values[j]))
        .unwrap_or(0);
    SimplexResult {
        x: simplex[best],
        value: values[best],
        evals,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_vertex() {
        let m = golden_section(|x| (x - 0.3).powi(2) + 1.0, -2.0, 5.0, 1e-10);
        // A flat minimum is only resolvable to about sqrt(machine epsilon).
        assert!((m.x - 0.3).abs() < 1e-7);
        assert!((m.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn simplex_finds_rosenbrock_minimum() {
        let r = nelder_mead(
            |p| (1.0 - p[0]).powi(2) + 100.0 * (p[1] - p[0] * p[0]).powi(2),
            [-1.2, 1.0],
            0.5,
            1e-14,
            1e-9,
            20_000,
        );
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-5 && (r.x[1] - 1.0).abs() < 1e-5, "{r:?}");
    }
}
