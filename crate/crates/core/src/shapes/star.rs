use std::f64::consts::TAU;

use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::numeric::{golden_section, integrate_panels};

use super::Point;

/// One term `sin * sin(k theta) + cos * cos(k theta)` of a radial profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harmonic {
    pub k: u32,
    pub sin: f64,
    pub cos: f64,
}

/// A star-shaped planar set bounded by the polar curve
/// `r(theta) = scale * (1 + sum_k a_k sin(k theta) + b_k cos(k theta))`
/// around `center`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarShape {
    center: Point,
    scale: f64,
    harmonics: Vec<Harmonic>,
    min_radius: f64,
}

impl StarShape {
    pub fn new(center: Point, scale: f64, harmonics: Vec<Harmonic>) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::InvalidShape(format!("star scale {scale} must be positive")));
        }
        let mut merged: Vec<Harmonic> = Vec::new();
        for h in harmonics {
            if h.k == 0 {
                return Err(Error::InvalidShape("harmonic index must be >= 1".into()));
            }
            if !h.sin.is_finite() || !h.cos.is_finite() {
                return Err(Error::InvalidShape("non-finite harmonic coefficient".into()));
            }
            match merged.iter_mut().find(|m| m.k == h.k) {
                Some(m) => {
                    m.sin += h.sin;
                    m.cos += h.cos;
                }
                None => merged.push(h),
            }
        }
        merged.retain(|h| h.sin != 0.0 || h.cos != 0.0);
        merged.sort_by_key(|h| h.k);
        let mut shape = Self {
            center,
            scale,
            harmonics: merged,
            min_radius: 0.0,
        };
        shape.min_radius = shape.extreme_radius(false);
        if !(shape.min_radius > 0.0) {
            return Err(Error::InvalidShape(format!(
                "radial profile reaches {} <= 0; the polar curve is not simple",
                shape.min_radius
            )));
        }
        Ok(shape)
    }

    /// A disc written as a constant profile.
    pub fn round(center: Point, radius: f64) -> Result<Self> {
        Self::new(center, radius, Vec::new())
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn harmonics(&self) -> &[Harmonic] {
        &self.harmonics
    }

    pub fn max_frequency(&self) -> u32 {
        self.harmonics.iter().map(|h| h.k).max().unwrap_or(0)
    }

    pub fn radius(&self, theta: f64) -> f64 {
        let wave: f64 = self
            .harmonics
            .iter()
            .map(|h| {
                let (s, c) = (h.k as f64 * theta).sin_cos();
                h.sin * s + h.cos * c
            })
            .sum();
        self.scale * (1.0 + wave)
    }

    pub fn radius_derivative(&self, theta: f64) -> f64 {
        let wave: f64 = self
            .harmonics
            .iter()
            .map(|h| {
                let k = h.k as f64;
                let (s, c) = (k * theta).sin_cos();
                k * (h.sin * c - h.cos * s)
            })
            .sum();
        self.scale * wave
    }

    /// `1/2 int r^2` in closed form by orthogonality of the harmonics.
    pub fn area(&self) -> f64 {
        let energy: f64 = self
            .harmonics
            .iter()
            .map(|h| h.sin * h.sin + h.cos * h.cos)
            .sum();
        0.5 * self.scale * self.scale * (TAU + std::f64::consts::PI * energy)
    }

    /// Angular panels used by every quadrature over this profile: at least
    /// four per period of the fastest harmonic, never fewer than eight.
    pub fn panel_count(&self) -> usize {
        (4 * self.max_frequency() as usize).max(8)
    }

    pub fn perimeter(&self, cfg: &QuadratureConfig) -> f64 {
        if self.harmonics.is_empty() {
            return TAU * self.scale;
        }
        let n = self.panel_count();
        let pts: Vec<f64> = (0..=n).map(|i| TAU * i as f64 / n as f64).collect();
        integrate_panels(
            |t| self.radius(t).hypot(self.radius_derivative(t)),
            &pts,
            cfg,
        )
        .value
    }

    /// `min_theta r(theta)`: closed form for at most one harmonic, otherwise
    /// a dense grid followed by golden-section refinement.
    pub fn min_radius(&self) -> f64 {
        self.min_radius
    }

    pub fn max_radius(&self) -> f64 {
        self.extreme_radius(true)
    }

    fn extreme_radius(&self, maximize: bool) -> f64 {
        let sign = if maximize { -1.0 } else { 1.0 };
        match self.harmonics.as_slice() {
            [] => return self.scale,
            [h] => return self.scale * (1.0 - sign * h.sin.hypot(h.cos)),
            _ => {}
        }
        let objective = |t: f64| sign * self.radius(t);
        let n = 64 * self.max_frequency() as usize;
        let step = TAU / n as f64;
        let mut samples: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let t = i as f64 * step;
                (objective(t), t)
            })
            .collect();
        samples.sort_by(|a, b| a.0.total_cmp(&b.0));
        let best = samples
            .iter()
            .take(8)
            .map(|&(_, t)| golden_section(objective, t - step, t + step, 1e-13).value)
            .fold(f64::INFINITY, f64::min);
        sign * best
    }

    pub fn contains(&self, p: Point) -> bool {
        let dx = p[0] - self.center[0];
        let dy = p[1] - self.center[1];
        let rho = dx.hypot(dy);
        rho < self.radius(dy.atan2(dx))
    }

    pub fn translated(&self, v: Point) -> Self {
        Self {
            center: [self.center[0] + v[0], self.center[1] + v[1]],
            ..self.clone()
        }
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            center: [self.center[0] * lambda, self.center[1] * lambda],
            scale: self.scale * lambda,
            harmonics: self.harmonics.clone(),
            min_radius: self.min_radius * lambda,
        }
    }
}

/// The oscillating profile `(1 + eps^2/2)^(-1/2) (1 + eps sin(2 j theta))`,
/// of area exactly `pi` for every `j`.
pub fn flower(j: u32, eps: f64) -> Result<StarShape> {
    if j == 0 {
        return Err(Error::InvalidShape("flower index j must be >= 1".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidShape(format!("flower eps = {eps} must lie in (0, 1)")));
    }
    StarShape::new(
        [0.0, 0.0],
        (1.0 + 0.5 * eps * eps).powf(-0.5),
        vec![Harmonic { k: 2 * j, sin: eps, cos: 0.0 }],
    )
}
