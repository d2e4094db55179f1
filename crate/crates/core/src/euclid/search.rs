use std::cmp::Ordering;

use rayon::prelude::*;

use crate::config::QuadratureConfig;
use crate::numeric::nelder_mead;
use crate::shapes::{Point, Shape2D};

use super::indexes::OptimizerStatus;

#[derive(Debug, Clone, Copy)]
pub(crate) struct CenterSearch {
    pub center: Point,
    pub value: f64,
    pub status: OptimizerStatus,
    pub evaluations: usize,
}

/// Value first, then smaller `|y|`, then lexicographic `y`.
fn rank(a: &(Point, f64), b: &(Point, f64)) -> Ordering {
    a.1.total_cmp(&b.1)
        .then_with(|| a.0[0].hypot(a.0[1]).total_cmp(&b.0[0].hypot(b.0[1])))
        .then_with(|| a.0[0].total_cmp(&b.0[0]))
        .then_with(|| a.0[1].total_cmp(&b.0[1]))
}

/// Minimizes `objective` over centers `y`: a coarse grid on the bounding box
/// inflated by the equivalent-ball radius, then simplex refinement from the
/// best few grid points. Grid evaluation runs in parallel but the result
/// does not depend on the thread count.
pub(crate) fn minimize_over_centers<F>(shape: &Shape2D, objective: F, cfg: &QuadratureConfig) -> CenterSearch
where
    F: Fn(Point, &QuadratureConfig) -> f64 + Sync,
{
    // The grid only ranks starting points, so it runs at a looser tolerance.
    let coarse = QuadratureConfig {
        quad_abs_tol: cfg.quad_abs_tol.max(1e-8),
        quad_rel_tol: cfg.quad_rel_tol.max(1e-8),
        ..*cfg
    };
    let pad = shape.equivalent_ball().radius;
    let (lo, hi) = shape.bounding_box();
    let lo = [lo[0] - pad, lo[1] - pad];
    let hi = [hi[0] + pad, hi[1] + pad];
    let n = cfg.search_grid.max(2);
    let step = [(hi[0] - lo[0]) / (n - 1) as f64, (hi[1] - lo[1]) / (n - 1) as f64];

    let mut grid: Vec<(Point, f64)> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let y = [lo[0] + (k % n) as f64 * step[0], lo[1] + (k / n) as f64 * step[1]];
            (y, objective(y, &coarse))
        })
        .collect();
    let mut evaluations = grid.len();
    grid.sort_by(rank);

    // Quadrature noise sits near the absolute tolerance, so the simplex
    // cannot resolve differences much below it.
    let f_tol = cfg.refine_tol.max(100.0 * cfg.quad_abs_tol);
    let simplex_step = 0.5 * step[0].min(step[1]);
    let refined: Vec<_> = grid
        .iter()
        .take(cfg.refine_starts.max(1))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|&(y, _)| nelder_mead(|x| objective(x, cfg), y, simplex_step, f_tol, 1e-9, 800))
        .collect();

    // Each simplex run ends no worse than its starting grid point.
    let mut best = (refined[0].x, refined[0].value, refined[0].converged);
    for r in &refined {
        evaluations += r.evals;
        if rank(&(r.x, r.value), &(best.0, best.1)) == Ordering::Less {
            best = (r.x, r.value, r.converged);
        }
    }
    CenterSearch {
        center: best.0,
        value: best.1,
        status: if best.2 { OptimizerStatus::Converged } else { OptimizerStatus::GridOnly },
        evaluations,
    }
}
