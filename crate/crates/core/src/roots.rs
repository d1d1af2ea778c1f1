//! Bracketed scalar root finding.

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_ITERATIONS: usize = 400;

/// Finds a root of `f` in `[a, b]` where `f(a)` and `f(b)` differ in sign.
///
/// Illinois regula falsi, falling back to a bisection step whenever the
/// interpolated point fails to halve the bracket. Converges when the bracket
/// is narrower than `tol * max(1, |x|)` or `f` vanishes exactly.
pub fn bracketed_root<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T) -> Result<T> {
    let (mut a, mut b) = if a <= b { (a, b) } else { (b, a) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::RootFinding(format!(
            "no sign change on [{a}, {b}] (f = {fa}, {fb})"
        )));
    }
    let mut side = 0i8;
    for _ in 0..MAX_ITERATIONS {
        let width = b - a;
        let mid = a + width * T::half();
        if width <= tol * T::one().max(mid.abs()) || mid == a || mid == b {
            return Ok(mid);
        }
        let mut x = (a * fb - b * fa) / (fb - fa);
        if !(x > a && x < b) {
            x = mid;
        }
        let fx = f(x);
        if fx == T::zero() {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
            if side == -1 {
                fb = fb * T::half();
            }
            side = -1;
        } else {
            b = x;
            fb = fx;
            if side == 1 {
                fa = fa * T::half();
            }
            side = 1;
        }
        if b - a > width * T::lit(0.5) {
            // Interpolation stalled; force a bisection step.
            let m = a + (b - a) * T::half();
            let fm = f(m);
            if fm == T::zero() {
                return Ok(m);
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
            side = 0;
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
    })
}

/// Splits `[a, b]` into `pieces` equal subintervals and returns a root from
/// every one that shows a sign change.
pub fn scan_roots<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, pieces: usize, tol: T) -> Result<Vec<T>> {
    let step = (b - a) / T::of(pieces);
    let mut roots = Vec::new();
    let mut lo = a;
    let mut flo = f(lo);
    for i in 1..=pieces {
        let hi = if i == pieces { b } else { a + step * T::of(i) };
        let fhi = f(hi);
        if flo == T::zero() {
            roots.push(lo);
        } else if fhi != T::zero() && flo.signum() != fhi.signum() {
            roots.push(bracketed_root(&f, lo, hi, tol)?);
        }
        lo = hi;
        flo = fhi;
    }
    if flo == T::zero() {
        roots.push(b);
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_simple_roots() {
        let r = bracketed_root(|x: f64| x * x - 2.0, 0.0, 3.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
        let r = bracketed_root(|x: f64| x.cos() - x, 0.0, 1.0, 1e-14).unwrap();
        assert!((r.cos() - r).abs() < 1e-13);
    }

    #[test]
    fn handles_flat_and_steep_functions() {
        let r = bracketed_root(|x: f64| (x - 0.3).powi(9), 0.0, 1.0, 1e-12).unwrap();
        assert!((r - 0.3).abs() < 1e-3);
        let r = bracketed_root(|x: f64| (50.0 * (x - 0.7)).tanh(), 0.0, 1.0, 1e-14).unwrap();
        assert!((r - 0.7).abs() < 1e-13);
    }

    #[test]
    fn rejects_missing_bracket() {
        assert!(matches!(
            bracketed_root(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::RootFinding(_))
        ));
    }

    #[test]
    fn scan_finds_all_sine_zeros() {
        let roots = scan_roots(|x: f64| x.sin(), 0.5, 10.0, 40, 1e-14).unwrap();
        assert_eq!(roots.len(), 3);
        for (k, r) in roots.iter().enumerate() {
            assert!((r - (k + 1) as f64 * std::f64::consts::PI).abs() < 1e-12);
        }
    }

    #[test]
    fn works_in_single_precision() {
        let r = bracketed_root(|x: f32| x * x * x - 8.0, 0.0, 5.0, 1e-6).unwrap();
        assert!((r - 2.0).abs() < 1e-5);
    }
}
