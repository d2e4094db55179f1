use crate::error::{Error, Result};

/// Result of a bracketing root search. `lo` and `hi` always straddle the
/// sign change, so `[lo, hi]` is a certified enclosure of a root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub lo: f64,
    pub hi: f64,
    pub iterations: usize,
}

/// Bisection on `[lo, hi]`; stops when the bracket width is below `x_tol`,
/// when `stop(f(x))` holds at the midpoint, or when the midpoint no longer
/// splits the bracket in floating point.
pub fn bisect<F, S>(f: F, mut lo: f64, mut hi: f64, x_tol: f64, stop: S) -> Result<Root>
where
    F: Fn(f64) -> f64,
    S: Fn(f64) -> bool,
{
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(Root { x: lo, lo, hi: lo, iterations: 0 });
    }
    if f_hi == 0.0 {
        return Ok(Root { x: hi, lo: hi, hi, iterations: 0 });
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::Bracket { lo, hi });
    }
    let lo_negative = f_lo < 0.0;
    let mut iterations = 0;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= x_tol {
            break;
        }
        iterations += 1;
        let fm = f(mid);
        if fm == 0.0 || stop(fm) {
            return Ok(Root { x: mid, lo, hi, iterations });
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
    Ok(Root { x, lo, hi, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 0.0, |_| false).unwrap();
        assert!((r.x - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(r.lo <= std::f64::consts::SQRT_2 && std::f64::consts::SQRT_2 <= r.hi);
    }

    #[test]
    fn rejects_bad_bracket() {
        assert!(matches!(
            bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12, |_| false),
            Err(Error::Bracket { .. })
        ));
    }
}
