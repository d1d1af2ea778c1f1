use super::{AnalyticModel, Constants, Quasimomentum, QuasimomentumSet};
use crate::error::{Error, Result};
use crate::roots::bracketed_root;
use crate::scalar::{alternating_sign, Real};
use crate::spectral::Parity;

const ROOT_TOL: f64 = 1e-14;
const SUBDIVISIONS: usize = 4;

fn check(length: usize, lambda: impl Real) -> Result<()> {
    if length < 4 || !length.is_multiple_of(2) {
        return Err(Error::InvalidLength(length));
    }
    if !(lambda > num_traits::zero() && lambda <= num_traits::one()) {
        return Err(Error::InvalidLambda(lambda.to_f64_lossy()));
    }
    Ok(())
}

fn ratio<T: Real>(lambda: T) -> T {
    let l2 = lambda * lambda;
    l2 / (T::two() - l2)
}

/// `mu cot k [cot(m k)]^mu - r` multiplied through by its denominators.
fn parity_equation<T: Real>(length: usize, lambda: T, parity: Parity) -> impl Fn(T) -> T {
    let m = T::of(length - 1) * T::half();
    let r = ratio(lambda);
    move |k: T| {
        let (s, c) = k.sin_cos();
        let (sm, cm) = (m * k).sin_cos();
        match parity {
            Parity::Even => c * cm - r * s * sm,
            Parity::Odd => -c * sm - r * s * cm,
        }
    }
}

/// Poles of the parity-`mu` branch inside `(0, pi)`.
fn poles<T: Real>(length: usize, parity: Parity) -> Vec<T> {
    let step = T::PI() / T::of(length - 1);
    let first = match parity {
        Parity::Even => 2,
        Parity::Odd => 1,
    };
    (first..length - 1).step_by(2).map(|j| step * T::of(j)).collect()
}

/// The `L` real quasimomenta in `(0, pi)`, each tagged with its parity.
pub fn endbond_quasimomenta<T: Real>(length: usize, lambda: T) -> Result<QuasimomentumSet<T>> {
    check(length, lambda)?;
    let pi = T::PI();
    let inset = pi / T::of(length) * T::lit(1e-9).max(T::lit(64.0) * T::eps());
    let tol = T::lit(ROOT_TOL).max(T::eps() * T::lit(4.0));
    let mut roots = Vec::with_capacity(length);
    for parity in [Parity::Even, Parity::Odd] {
        let f = parity_equation(length, lambda, parity);
        let mut breaks = vec![inset];
        breaks.extend(poles::<T>(length, parity));
        breaks.push(T::FRAC_PI_2());
        breaks.push(pi - inset);
        breaks.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let mut found = 0;
        for w in breaks.windows(2) {
            let step = (w[1] - w[0]) / T::of(SUBDIVISIONS);
            for i in 0..SUBDIVISIONS {
                let lo = w[0] + step * T::of(i);
                let hi = if i + 1 == SUBDIVISIONS { w[1] } else { lo + step };
                let (flo, fhi) = (f(lo), f(hi));
                if flo == T::zero() || flo.signum() != fhi.signum() && fhi != T::zero() {
                    roots.push(Quasimomentum {
                        k: bracketed_root(&f, lo, hi, tol)?,
                        parity: Some(parity),
                    });
                    found += 1;
                }
            }
        }
        if found != length / 2 {
            return Err(Error::RootCount {
                expected: length / 2,
                found,
            });
        }
    }
    roots.sort_by(|a, b| a.k.partial_cmp(&b.k).expect("finite"));
    if roots.windows(2).any(|w| w[1].k - w[0].k <= tol) {
        return Err(Error::RootFinding("duplicate quasimomenta".into()));
    }
    Ok(QuasimomentumSet {
        model: AnalyticModel::EndBond { lambda, length },
        real_roots: roots,
        complex_mode: None,
    })
}

/// `A_k^2 = (L-1)[2(1-lambda^2) cos^2 k + lambda^4/2] + 2 lambda^2 - lambda^4`.
pub fn endbond_normalization<T: Real>(k: T, lambda: T, length: usize) -> T {
    let l2 = lambda * lambda;
    let l4 = l2 * l2;
    let c = k.cos();
    T::of(length - 1) * (T::two() * (T::one() - l2) * c * c + l4 * T::half()) + T::two() * l2 - l4
}

/// Eigenvector of the end-bond hopping matrix for root `k` of parity `mu`.
///
/// Interior sites `i = 2..L-1` carry `sin(i k) + (1 - lambda^2) sin((i-2) k)`.
pub fn endbond_eigenvector<T: Real>(k: T, parity: Parity, lambda: T, length: usize) -> Vec<T> {
    let norm = endbond_normalization(k, lambda, length).sqrt();
    let l2 = lambda * lambda;
    let end = lambda * k.sin() / norm;
    let mut v = Vec::with_capacity(length);
    v.push(end);
    for i in 2..length {
        let i = T::of(i);
        v.push(((i * k).sin() + (T::one() - l2) * ((i - T::two()) * k).sin()) / norm);
    }
    v.push(parity.sign::<T>() * end);
    v
}

/// Zero-temperature `x` from the filled modes `pi/2 < k < pi`.
pub fn endbond_x_zero_t<T: Real>(length: usize, lambda: T) -> Result<T> {
    let set = endbond_quasimomenta(length, lambda)?;
    let l2 = lambda * lambda;
    Ok(set
        .real_roots
        .iter()
        .filter(|q| q.k > T::FRAC_PI_2())
        .map(|q| {
            let s = q.k.sin();
            let mu: T = q.parity.expect("end-bond roots carry parity").sign();
            mu * l2 * s * s / endbond_normalization(q.k, lambda, length)
        })
        .sum())
}

/// `(-1)^{L/2} [1/2 - lambda^2 L c]`.
pub fn endbond_x_smalllambda<T: Real>(length: usize, lambda: T) -> T {
    let c = Constants::<T>::new().c_coefficient;
    alternating_sign::<T>(length / 2) * (T::half() - lambda * lambda * T::of(length) * c)
}

/// Whether `lambda^2 L <= 0.1`, where the small-coupling law is meant to hold.
pub fn smalllambda_regime_holds<T: Real>(length: usize, lambda: T) -> bool {
    lambda * lambda * T::of(length) <= T::lit(0.1)
}

/// `(-1)^{L/2} / (lambda^2 (L - 3) + 4)`.
pub fn endbond_x_largelambda<T: Real>(length: usize, lambda: T) -> T {
    alternating_sign::<T>(length / 2) / (lambda * lambda * (T::of(length) - T::lit(3.0)) + T::lit(4.0))
}

/// `(-1)^{L/2} / (2 + 4 c L lambda^2)`.
pub fn endbond_x_interpolated<T: Real>(length: usize, lambda: T) -> T {
    let c = Constants::<T>::new().c_coefficient;
    alternating_sign::<T>(length / 2) / (T::two() + T::lit(4.0) * c * T::of(length) * lambda * lambda)
}

/// `pi/(2(L-1)) - pi / ((L-1)^2 lambda^2/(2 - lambda^2) + 2(L-1))`.
pub fn endbond_gap_approx<T: Real>(length: usize, lambda: T) -> T {
    let n = T::of(length - 1);
    let pi = T::PI();
    pi / (T::two() * n) - pi / (n * n * ratio(lambda) + T::two() * n)
}
