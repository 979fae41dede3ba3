// SPDX-License-Identifier: Apache-2.0

//! Bracketed root finding for monotone functions.

/// Iteration cap for [`bisect_decreasing`].
pub const MAX_ITER: usize = 200;

/// Finds a root of `d` in `[lo, hi]`, assuming `d(lo) >= 0 >= d(hi)`.
///
/// Stops as soon as `|d(mid)| <= tol`, when the bracket can no longer be
/// split in floating point, or after [`MAX_ITER`] halvings.
pub fn bisect_decreasing<F: Fn(f64) -> f64>(d: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    debug_assert!(lo <= hi);
    if d(lo).abs() <= tol {
        return lo;
    }
    if d(hi).abs() <= tol {
        return hi;
    }
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = d(mid);
        if v.abs() <= tol {
            return mid;
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Locates the crossing of a function that is linear between consecutive
/// `knots`, given its values `d` at those knots. `d[0] >= 0 >= d[last]` and
/// `d` must be nonincreasing. Returns the first abscissa where the sign
/// changes, exactly up to rounding of one interpolation.
pub(crate) fn linear_crossing(knots: &[f64], d: &[f64]) -> f64 {
    debug_assert_eq!(knots.len(), d.len());
    if d[0] <= 0.0 {
        return knots[0];
    }
    for i in 0..knots.len() - 1 {
        let (d0, d1) = (d[i], d[i + 1]);
        if d1 == 0.0 {
            return knots[i + 1];
        }
        if d1 < 0.0 {
            let (x0, x1) = (knots[i], knots[i + 1]);
            let x = x0 + d0 * (x1 - x0) / (d0 - d1);
            return x.clamp(x0, x1);
        }
    }
    knots[knots.len() - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_finds_sqrt2() {
        let r = bisect_decreasing(|x| 2.0 - x * x, 0.0, 2.0, 1e-14);
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-13);
    }

    #[test]
    fn bisection_returns_endpoint_roots() {
        assert_eq!(bisect_decreasing(|x| -x, 0.0, 1.0, 1e-12), 0.0);
        assert_eq!(bisect_decreasing(|x| 1.0 - x, 0.0, 1.0, 1e-12), 1.0);
    }

    #[test]
    fn linear_crossing_interpolates() {
        let x = linear_crossing(&[0.0, 1.0, 2.0], &[2.0, 1.0, -1.0]);
        assert!((x - 1.5).abs() < 1e-15);
        assert_eq!(linear_crossing(&[0.0, 1.0, 2.0], &[2.0, 0.0, -1.0]), 1.0);
        assert_eq!(linear_crossing(&[0.0, 1.0], &[0.0, -1.0]), 0.0);
    }
}
