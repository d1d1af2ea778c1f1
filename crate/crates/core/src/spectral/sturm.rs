//! Sturm-sequence counting and bisection.
//!
//! For tridiagonal matrices with zero diagonal (the free-fermion hopping
//! matrices of bipartite chains) the pivot recurrence only multiplies and
//! divides nonzero quantities, so bisection resolves eigenvalues to high
//! relative accuracy, including edge modes whose magnitude lies far below
//! machine epsilon. An exactly vanishing pivot is treated as the limit from
//! above, which keeps the inertia at `sigma = 0` exact.

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_BISECTIONS: usize = 4096;

pub(crate) struct Sturm<'a, T> {
    diag: &'a [T],
    off_sq: Vec<T>,
    bound: T,
}

impl<'a, T: Real> Sturm<'a, T> {
    pub(crate) fn new(diag: &'a [T], off: &[T]) -> Self {
        let n = diag.len();
        let bound = (0..n)
            .map(|i| {
                let left = if i > 0 { off[i - 1].abs() } else { T::zero() };
                let right = if i + 1 < n { off[i].abs() } else { T::zero() };
                diag[i].abs() + left + right
            })
            .fold(T::zero(), T::max);
        Self {
            diag,
            off_sq: off.iter().map(|e| *e * *e).collect(),
            bound,
        }
    }

    /// Number of eigenvalues strictly below `sigma`.
    pub(crate) fn count_below(&self, sigma: T) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - sigma;
        let mut prev_zero = false;
        if q == T::zero() {
            count += 1;
            prev_zero = true;
        } else if q < T::zero() {
            count += 1;
        }
        for i in 1..self.diag.len() {
            if prev_zero {
                // pivot after a vanishing one is +infinity
                prev_zero = false;
                q = T::infinity();
                continue;
            }
            q = (self.diag[i] - sigma) - self.off_sq[i - 1] / q;
            if q == T::zero() {
                count += 1;
                prev_zero = true;
            } else if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based), optionally seeded with an
    /// approximation that is accurate in the absolute sense.
    pub(crate) fn eigenvalue(&self, k: usize, seed: Option<T>) -> Result<T> {
        let n = self.diag.len();
        let outer = self.bound * (T::one() + T::lit(4.0) * T::eps()) + T::min_positive_value();
        let (mut lo, mut hi) = (-outer, outer);
        if let Some(s) = seed {
            let radius = T::lit(8.0) * T::of(n) * T::eps() * self.bound + T::min_positive_value();
            let (a, b) = (s - radius, s + radius);
            if self.count_below(a) <= k && self.count_below(b) > k {
                lo = a;
                hi = b;
            }
        }
        for _ in 0..MAX_BISECTIONS {
            let mid = split(lo, hi);
            if mid <= lo || mid >= hi {
                return Ok(pick(lo, hi));
            }
            if self.count_below(mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
            let scale = lo.abs().max(hi.abs());
            if lo.signum() == hi.signum()
                && lo != T::zero()
                && hi != T::zero()
                && hi - lo <= T::two() * T::eps() * scale
            {
                return Ok(pick(lo, hi));
            }
        }
        Err(Error::NoConvergence {
            iterations: MAX_BISECTIONS,
        })
    }
}

/// Next probe inside `(lo, hi)`: zero when the interval straddles it, a
/// geometric mean when the endpoints differ by orders of magnitude.
fn split<T: Real>(lo: T, hi: T) -> T {
    let zero = T::zero();
    if lo < zero && hi > zero {
        return zero;
    }
    let tiny = T::min_positive_value();
    if lo >= zero {
        let a = lo.max(tiny);
        if hi > T::lit(4.0) * a && a * hi > zero {
            return (a.sqrt() * hi.sqrt()).max(lo);
        }
    } else {
        let b = (-hi).max(tiny);
        let a = -lo;
        if a > T::lit(4.0) * b {
            return -(a.sqrt() * b.sqrt()).max(-hi);
        }
    }
    lo + (hi - lo) * T::half()
}

/// Representative of a converged bracket, never exactly zero unless both ends are.
fn pick<T: Real>(lo: T, hi: T) -> T {
    if lo == T::zero() {
        hi
    } else if hi == T::zero() {
        lo
    } else {
        lo + (hi - lo) * T::half()
    }
}
