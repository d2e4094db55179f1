use serde::{Deserialize, Serialize};

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::numeric::golden_section;

use super::indexes::{gauss_mass, weight};
use super::sets::{Ext, Interval, IntervalSet};

/// Gaussian Cheeger constant of a set with a minimizing interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cheeger1d {
    pub h: f64,
    pub minimizer: IntervalSet,
}

/// `P_gamma((s, t)) / gamma((s, t))`, infinite for empty intervals.
pub fn pair_ratio(s: Ext, t: Ext) -> f64 {
    let mass = gauss_mass(s, t);
    if mass <= 0.0 {
        return f64::INFINITY;
    }
    (weight(s) + weight(t)) / mass
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    ratio: f64,
    s: Ext,
    t: Ext,
}

impl Candidate {
    fn at(s: Ext, t: Ext) -> Self {
        Self { ratio: pair_ratio(s, t), s, t }
    }

    /// Strictly better ratio, or equal ratio further left.
    fn beats(&self, other: &Candidate) -> bool {
        self.ratio < other.ratio
            || (self.ratio == other.ratio
                && (self.s.to_f64(), self.t.to_f64()) < (other.s.to_f64(), other.t.to_f64()))
    }
}

/// Minimizes a unimodal-looking function on `[lo, hi]`: a sampling pass
/// locates the best cell, then golden section refines inside it.
fn grid_golden<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    const SAMPLES: usize = 64;
    let step = (hi - lo) / SAMPLES as f64;
    let (k, _) = (1..SAMPLES)
        .map(|k| (k, f(lo + k as f64 * step)))
        .fold((1, f64::INFINITY), |best, (k, v)| if v < best.1 { (k, v) } else { best });
    let m = golden_section(&f, lo + (k - 1) as f64 * step, lo + (k + 1) as f64 * step, tol);
    (m.x, m.value)
}

/// Best interval inside the component `(a, b)`.
///
/// A stationary point with both ends free would need `s > 0 > t`, so the
/// optimum keeps at least one end of the component. The four regimes (both
/// ends kept, one end kept, both free) are all evaluated; the free searches
/// run on `[-L, L]` with `L` the truncation radius when an end is infinite.
fn component_optimum(iv: Interval, tol: f64, cfg: &QuadratureConfig) -> Candidate {
    let (a, b) = (iv.lo, iv.hi);
    let mut best = Candidate::at(a, b);
    if !a.is_finite() && !b.is_finite() {
        return best;
    }
    let lo = a.to_f64().max(-cfg.truncation);
    let hi = b.to_f64().min(cfg.truncation);
    let mut offer = |c: Candidate| {
        if c.beats(&best) {
            best = c;
        }
    };
    if lo < hi {
        // s = a kept, t free
        let (t, _) = grid_golden(|t| pair_ratio(a, Ext::Finite(t)), lo, hi, tol);
        offer(Candidate::at(a, Ext::Finite(t)));
        // t = b kept, s free
        let (s, _) = grid_golden(|s| pair_ratio(Ext::Finite(s), b), lo, hi, tol);
        offer(Candidate::at(Ext::Finite(s), b));
        // both free: nested golden section from stratified outer brackets
        let strata = 5;
        let width = (hi - lo) / strata as f64;
        for k in 0..strata {
            let inner = |s: f64| {
                golden_section(|t| pair_ratio(Ext::Finite(s), Ext::Finite(t)), s, hi, tol)
            };
            let outer = golden_section(
                |s| inner(s).value,
                lo + k as f64 * width,
                lo + (k + 1) as f64 * width,
                tol,
            );
            let t = inner(outer.x).x;
            offer(Candidate::at(Ext::Finite(outer.x), Ext::Finite(t)));
        }
    }
    best
}

/// Gaussian Cheeger constant `inf P_gamma(E)/gamma(E)` over `E` inside the
/// set. By the mediant inequality a union is never better than its best
/// piece, so the search runs over single intervals in each component.
/// `tol` is the endpoint tolerance of the free searches; the leftmost of
/// equal minimizers is returned.
pub fn cheeger_1d(set: &IntervalSet, tol: f64, cfg: &QuadratureConfig) -> Result<Cheeger1d> {
    if !(tol > 0.0) {
        return Err(Error::domain("cheeger_1d", format!("tol = {tol} must be > 0")));
    }
    if set.is_empty() {
        return Err(Error::InvalidSet("cheeger_1d of the empty set".into()));
    }
    let mut best: Option<Candidate> = None;
    for &iv in set.intervals() {
        let c = component_optimum(iv, tol, cfg);
        if best.is_none_or(|b| c.beats(&b)) {
            best = Some(c);
        }
    }
    let best = best.expect("nonempty set");
    Ok(Cheeger1d {
        h: best.ratio,
        minimizer: IntervalSet::new(vec![Interval::new(best.s, best.t)?]),
    })
}
