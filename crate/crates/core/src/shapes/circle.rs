use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

use super::Point;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disc {
    pub center: Point,
    pub radius: f64,
}

impl Disc {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidShape(format!("disc radius {radius} must be positive")));
        }
        Ok(Self { center, radius })
    }

    pub fn unit() -> Self {
        Self { center: [0.0, 0.0], radius: 1.0 }
    }

    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    pub fn perimeter(&self) -> f64 {
        TAU * self.radius
    }

    pub fn contains(&self, p: Point) -> bool {
        (p[0] - self.center[0]).hypot(p[1] - self.center[1]) < self.radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annulus {
    pub center: Point,
    pub inner: f64,
    pub outer: f64,
}

impl Annulus {
    pub fn new(center: Point, inner: f64, outer: f64) -> Result<Self> {
        if !(inner > 0.0 && inner < outer) || !outer.is_finite() {
            return Err(Error::InvalidShape(format!(
                "annulus radii must satisfy 0 < {inner} < {outer}"
            )));
        }
        Ok(Self { center, inner, outer })
    }

    pub fn area(&self) -> f64 {
        PI * (self.outer * self.outer - self.inner * self.inner)
    }

    pub fn perimeter(&self) -> f64 {
        TAU * (self.inner + self.outer)
    }

    pub fn contains(&self, p: Point) -> bool {
        let rho = (p[0] - self.center[0]).hypot(p[1] - self.center[1]);
        rho > self.inner && rho < self.outer
    }
}
