//! Implicit-shift QL iteration for symmetric tridiagonal matrices.

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Diagonalizes the tridiagonal matrix `(diag, off)` in place.
///
/// On return `diag` holds the eigenvalues in ascending order. `rows` holds a
/// subset of the rows of the accumulated orthogonal transform `Z` (column `k`
/// of `Z` is the eigenvector of `diag[k]`); pass rows of the identity to get
/// eigenvector components at those positions. Tracking only a few rows makes
/// the cost quadratic instead of cubic.
pub(crate) fn implicit_ql<T: Real>(diag: &mut [T], off: &[T], rows: &mut [Vec<T>]) -> Result<()> {
    let n = diag.len();
    if n == 0 {
        return Ok(());
    }
    let mut e: Vec<T> = off.iter().copied().chain(std::iter::once(T::zero())).collect();
    let eps = T::eps();
    let tiny = T::min_positive_value();

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if e[m].abs() <= eps * dd || e[m].abs() <= tiny {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
                return Err(Error::NoConvergence {
                    iterations: MAX_SWEEPS_PER_EIGENVALUE,
                });
            }

            let mut g = (diag[l + 1] - diag[l]) / (T::two() * e[l]);
            let mut r = g.hypot(T::one());
            g = diag[m] - diag[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated_early = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    diag[i + 1] = diag[i + 1] - p;
                    e[m] = T::zero();
                    deflated_early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + T::two() * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                for z in rows.iter_mut() {
                    let zf = z[i + 1];
                    z[i + 1] = s * z[i] + c * zf;
                    z[i] = c * z[i] - s * zf;
                }
            }
            if deflated_early {
                continue;
            }
            diag[l] = diag[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| diag[a].partial_cmp(&diag[b]).expect("finite eigenvalues"));
    let sorted: Vec<T> = order.iter().map(|&k| diag[k]).collect();
    diag.copy_from_slice(&sorted);
    for z in rows.iter_mut() {
        let permuted: Vec<T> = order.iter().map(|&k| z[k]).collect();
        *z = permuted;
    }
    Ok(())
}

/// Rows `which` of the `n x n` identity.
pub(crate) fn identity_rows<T: Real>(n: usize, which: impl IntoIterator<Item = usize>) -> Vec<Vec<T>> {
    which
        .into_iter()
        .map(|r| {
            let mut row = vec![T::zero(); n];
            row[r] = T::one();
            row
        })
        .collect()
}
