use super::{dimer_ratio, AnalyticModel, ComplexMode, Quasimomentum, QuasimomentumSet};
use crate::error::{Error, Result};
use crate::roots::bracketed_root;
use crate::scalar::{alternating_sign, Real};

const ROOT_TOL: f64 = 1e-14;

fn check_delta<T: Real>(delta: T) -> Result<()> {
    if !(delta >= T::zero() && delta < T::one()) {
        return Err(Error::InvalidDelta(delta.to_f64_lossy()));
    }
    Ok(())
}

fn check_length(length: usize) -> Result<()> {
    if length < 4 || !length.is_multiple_of(2) {
        return Err(Error::InvalidLength(length));
    }
    Ok(())
}

/// Two-band dispersion in the printed form `+-sqrt(cos^2 k + 4 delta^2 sin^2 k)`.
///
/// The band that the hopping matrix actually has is [`dimer_band`].
pub fn dimer_dispersion<T: Real>(k: T, delta: T) -> (T, T) {
    let (s, c) = k.sin_cos();
    let e = (c * c + T::lit(4.0) * delta * delta * s * s).sqrt();
    (e, -e)
}

/// Upper band `sqrt(cos^2 k + delta^2 sin^2 k)` of the dimerized hopping
/// matrix, in units of `J`.
pub fn dimer_band<T: Real>(k: T, delta: T) -> T {
    let (s, c) = k.sin_cos();
    (c * c + delta * delta * s * s).sqrt()
}

/// `zeta = 2 / ln((1 + delta)/(1 - delta))`; infinite at `delta = 0`.
pub fn localization_length<T: Real>(delta: T) -> T {
    if delta == T::zero() {
        return T::infinity();
    }
    // ln((1+d)/(1-d)) = 2 atanh(d)
    delta.atanh().recip()
}

/// Leading-order gap `2 (1 - a) exp(-L / zeta)`.
pub fn dimer_gap_asymptotic<T: Real>(length: usize, delta: T) -> T {
    let a = dimer_ratio(delta);
    T::two() * (T::one() - a) * (-T::of(length) / localization_length(delta)).exp()
}

/// `x_inf = (-1)^{L/2} 2 delta / (1 + delta)^2`.
pub fn dimer_x_asymptotic<T: Real>(length: usize, delta: T) -> T {
    let d1 = T::one() + delta;
    alternating_sign::<T>(length / 2) * T::two() * delta / (d1 * d1)
}

/// Asymptotic `(C, f)` as functions of the bond ratio `a`.
pub fn dimer_concurrence_fidelity<T: Real>(a: T) -> (T, T) {
    let a2 = a * a;
    let g = T::half() - a2 + a2 * a2 / T::lit(4.0);
    (T::two() * g.max(T::zero()), T::two() / T::lit(3.0) * (T::one() + g))
}

/// Leading-order boundary-mode parameter: `e^{2p} = 1/a - (1 - a^2) a^{L-1}`.
pub fn dimer_complex_seed<T: Real>(length: usize, delta: T) -> T {
    let a = dimer_ratio(delta);
    let e2p = a.recip() - (T::one() - a * a) * a.powi(length as i32 - 1);
    e2p.ln() * T::half()
}

fn real_root_equation<T: Real>(length: usize, a: T) -> impl Fn(T) -> T {
    // sin(k(L+2)) / sin(kL) = -1/a, cleared of its poles.
    let l = T::of(length);
    move |k: T| (k * (l + T::two())).sin() * a + (k * l).sin()
}

/// `eps(p) = 2 sinh(2p) / (e^{2Lp} - 1)`, so that the boundary-mode equation
/// `cosh 2p + coth(Lp) sinh 2p = 1/a` reads `e^{2p} + eps(p) = 1/a`.
fn finite_size_shift<T: Real>(length: usize, p: T) -> T {
    let two_p = p * T::two();
    T::two() * two_p.sinh() / (two_p * T::of(length)).exp_m1()
}

fn complex_mode_equation<T: Real>(length: usize, a: T) -> impl Fn(T) -> T {
    move |p: T| (p * T::two()).exp() + finite_size_shift(length, p) - a.recip()
}

/// `|Lambda(pi/2 + i p)| = t2 sqrt((e^{2p} - a)(e^{-2p} - a))` with
/// `t2 = (1 + delta)/2`, using `e^{2p} = 1/a - eps` to avoid cancellation.
fn complex_mode_energy<T: Real>(length: usize, delta: T, p: T) -> T {
    let a = dimer_ratio(delta);
    let eps = finite_size_shift(length, p);
    let upper = a.recip() - eps - a;
    let lower = a * a * eps / (T::one() - a * eps);
    (T::one() + delta) * T::half() * (upper * lower).max(T::zero()).sqrt()
}

/// Real quasimomenta in `(0, pi/2)` and, when `a < L/(L+2)`, the complex
/// boundary mode.
pub fn dimer_quasimomenta<T: Real>(length: usize, delta: T) -> Result<QuasimomentumSet<T>> {
    check_length(length)?;
    check_delta(delta)?;
    let a = dimer_ratio(delta);
    let l = T::of(length);
    let localized = a < l / (l + T::two());
    let pi = T::PI();
    let half_pi = T::FRAC_PI_2();
    let tol = T::lit(ROOT_TOL).max(T::eps() * T::lit(4.0));
    let f = real_root_equation(length, a);

    let half = length / 2;
    let margin = T::lit(1e-12).max(T::lit(64.0) * T::eps() * l);
    let mut edges: Vec<T> = (0..half).map(|m| T::of(m) * pi / l).collect();
    edges[0] = pi / l * margin;
    edges.push(half_pi * (T::one() - margin));

    let mut real_roots = Vec::with_capacity(half);
    for w in edges.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if f(lo).signum() != f(hi).signum() {
            real_roots.push(Quasimomentum {
                k: bracketed_root(&f, lo, hi, tol)?,
                parity: None,
            });
        }
    }
    let expected = if localized { half - 1 } else { half };
    if real_roots.len() != expected {
        return Err(Error::RootCount {
            expected,
            found: real_roots.len(),
        });
    }

    let complex_mode = if localized {
        let g = complex_mode_equation(length, a);
        let hi = a.recip().ln() * T::half();
        let lo = hi * T::lit(1e-12);
        // For long chains the root is closer to `hi` than the residual can resolve.
        let p = if g(hi) <= T::zero() {
            hi
        } else {
            bracketed_root(&g, lo, hi, tol)?
        };
        Some(ComplexMode {
            p,
            energy: complex_mode_energy(length, delta, p),
        })
    } else {
        None
    };

    Ok(QuasimomentumSet {
        model: AnalyticModel::Dimer { delta, length },
        real_roots,
        complex_mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::Constants;
    use crate::model::ChainSpec;
    use crate::spectral::eigenvalues;
    use approx::assert_relative_eq;

    #[test]
    fn printed_dispersion_examples() {
        let (p, m) = dimer_dispersion(0.0, 0.3);
        assert_relative_eq!(p, 1.0);
        assert_relative_eq!(m, -1.0);
        let (p, _) = dimer_dispersion(std::f64::consts::FRAC_PI_2, 0.3);
        assert_relative_eq!(p, 0.6, epsilon = 1e-15);
        let (p, m) = dimer_dispersion(std::f64::consts::FRAC_PI_4, 0.5);
        assert_relative_eq!(p, 1.0, epsilon = 1e-15);
        assert_relative_eq!(m, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn band_edges_of_the_hopping_matrix() {
        // Bloch bands of alternating hoppings t1, t2: |t1 + t2 e^{iq}|.
        let delta = 0.3;
        let (t1, t2) = ((1.0 - delta) / 2.0, (1.0 + delta) / 2.0);
        for i in 0..50 {
            let k = i as f64 * 0.031;
            let q = 2.0 * k;
            let bloch = (t1 * t1 + t2 * t2 + 2.0 * t1 * t2 * q.cos()).sqrt();
            assert_relative_eq!(dimer_band(k, delta), bloch, epsilon = 1e-14);
        }
        assert_relative_eq!(dimer_band(std::f64::consts::FRAC_PI_2, delta), delta);
    }

    #[test]
    fn localization_length_examples() {
        assert_relative_eq!(localization_length(0.5), 2.0 / 3f64.ln(), epsilon = 1e-14);
        assert_relative_eq!(localization_length(0.5), 1.8205, epsilon = 1e-4);
        assert!(localization_length(0.0f64).is_infinite());
        assert!(localization_length(0.999_999f64) < 0.3);
        let c = Constants::<f64>::new();
        assert!((localization_length(c.delta0) - 7.479).abs() < 1e-3);
        assert!((localization_length(0.3f64) - 3.230).abs() < 1e-3);
    }

    #[test]
    fn gap_and_correlation_formulas() {
        assert!((dimer_gap_asymptotic(20, 0.5f64) - 2.26e-5).abs() < 0.01e-5);
        assert!((dimer_gap_asymptotic(40, 0.3f64) - 3.87e-6).abs() < 0.01e-6);
        assert!(dimer_gap_asymptotic(40, 0.9999f64) < 1e-80);
        assert_relative_eq!(dimer_x_asymptotic(400, 0.3), 0.355_029_585_798_816_6, epsilon = 1e-15);
        assert_relative_eq!(dimer_x_asymptotic(402, 0.3), -0.355_029_585_798_816_6, epsilon = 1e-15);
        assert!((dimer_x_asymptotic(400, 1.0f64 - 1e-9) - 0.5).abs() < 1e-9);
    }

    #[test]
    fn concurrence_fidelity_examples() {
        let (c, f) = dimer_concurrence_fidelity(0.5);
        assert_relative_eq!(c, 0.53125, epsilon = 1e-15);
        assert_relative_eq!(f, 0.84375, epsilon = 1e-15);
        let (c, f) = dimer_concurrence_fidelity(0.0);
        assert_eq!((c, f), (1.0, 1.0));
        let d0 = Constants::<f64>::new().delta0;
        let (c, f) = dimer_concurrence_fidelity(dimer_ratio(d0));
        assert!(c.abs() < 1e-15);
        assert!((f - 2.0 / 3.0).abs() < 1e-15);
        assert!(dimer_concurrence_fidelity(dimer_ratio(d0 + 1e-3)).0 > 0.0);
        assert_eq!(dimer_concurrence_fidelity(dimer_ratio(d0 - 1e-3)).0, 0.0);
    }

    #[test]
    fn concurrence_matches_observables_pipeline() {
        for delta in [0.2, 0.4, 0.7] {
            let x = dimer_x_asymptotic(100, delta);
            let (c, f) = dimer_concurrence_fidelity(dimer_ratio(delta));
            assert_relative_eq!(c, crate::observables::concurrence_from_x(x), epsilon = 1e-14);
            assert_relative_eq!(f, crate::observables::fidelity_from_x(x), epsilon = 1e-14);
        }
    }

    #[test]
    fn implied_spectrum_matches_eigensolver() {
        for &(length, delta) in &[
            (20usize, 0.5f64),
            (40, 0.3),
            (16, 0.8),
            (30, 0.2),
            (10, 0.0),
            (12, 0.01),
            (100, 0.5),
        ] {
            let set = dimer_quasimomenta(length, delta).unwrap();
            let analytic = set.implied_spectrum();
            let numeric = eigenvalues(&ChainSpec::dimer(length, delta, 1.0).unwrap().adjacency()).unwrap();
            assert_eq!(analytic.len(), length);
            for (x, y) in analytic.iter().zip(&numeric) {
                assert!((x - y).abs() < 1e-9, "L={length} delta={delta}: {x} vs {y}");
            }
            for q in &set.real_roots {
                assert!(q.k > 0.0 && q.k < std::f64::consts::FRAC_PI_2);
            }
        }
    }

    #[test]
    fn root_counts_follow_the_regime() {
        let set = dimer_quasimomenta(20, 0.5f64).unwrap();
        assert_eq!(set.real_roots.len(), 9);
        assert!(set.complex_mode.is_some());
        // a >= L/(L+2): no boundary mode.
        let set = dimer_quasimomenta(10, 0.05).unwrap();
        assert_eq!(set.real_roots.len(), 5);
        assert!(set.complex_mode.is_none());
        assert!(dimer_quasimomenta(7, 0.3).is_err());
        assert!(dimer_quasimomenta(8, 1.0).is_err());
    }

    #[test]
    fn complex_mode_seed_and_limit() {
        let set = dimer_quasimomenta(20, 0.5f64).unwrap();
        let p = set.complex_mode.unwrap().p;
        let seed = (3.0 - 8.0 / 9.0 * (1.0f64 / 3.0).powi(19)).ln() / 2.0;
        assert_relative_eq!(dimer_complex_seed(20, 0.5), seed, epsilon = 1e-15);
        assert!(((2.0 * p).exp() - (2.0 * seed).exp()).abs() < 1e-9);
        let residual: f64 = complex_mode_equation(20, dimer_ratio(0.5))(p);
        assert!(residual.abs() < 1e-12);
        for delta in [0.2f64, 0.5, 0.8] {
            let p = dimer_quasimomenta(400, delta).unwrap().complex_mode.unwrap().p;
            assert!((p - 1.0 / localization_length(delta)).abs() < 1e-8);
        }
        let p = dimer_quasimomenta(2000, 0.5f64).unwrap().complex_mode.unwrap().p;
        assert!((p - 3f64.ln() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn boundary_mode_energy_matches_smallest_eigenvalue() {
        for &(length, delta) in &[(16usize, 0.8f64), (20, 0.5), (60, 0.5), (200, 0.3), (400, 0.5)] {
            let mode = dimer_quasimomenta(length, delta).unwrap().complex_mode.unwrap();
            let m = ChainSpec::dimer(length, delta, 1.0).unwrap().adjacency();
            let numeric = crate::spectral::smallest_magnitude_eigenvalue(&m).unwrap();
            assert!(
                ((mode.energy - numeric) / numeric).abs() < 1e-6,
                "L={length} delta={delta}"
            );
        }
    }

    #[test]
    fn single_precision_roots() {
        let set = dimer_quasimomenta(20, 0.5f32).unwrap();
        assert_eq!(set.real_roots.len(), 9);
    }
}
