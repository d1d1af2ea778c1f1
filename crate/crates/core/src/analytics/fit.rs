use super::dimer_x_asymptotic;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Result of fitting `x_inf - |x_L| = A0 L^power exp(-L / zeta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceFit<T> {
    pub x_inf: T,
    pub amplitude: T,
    pub zeta_fit: T,
    pub slope: T,
    pub intercept: T,
}

/// Surface-order fit with the `L^2` prefactor.
pub fn fit_surface_order<T: Real>(delta: T, pairs: &[(usize, T)]) -> Result<SurfaceFit<T>> {
    fit_surface_order_with_power(delta, pairs, T::two())
}

/// Least-squares line through `(L, ln[(x_inf - |x_L|) / L^power])` with
/// `x_inf` fixed to the asymptotic value.
pub fn fit_surface_order_with_power<T: Real>(delta: T, pairs: &[(usize, T)], power: T) -> Result<SurfaceFit<T>> {
    if pairs.len() < 4 {
        return Err(Error::TooFewPoints(pairs.len()));
    }
    if !(delta > T::zero() && delta < T::one()) {
        return Err(Error::InvalidDelta(delta.to_f64_lossy()));
    }
    let x_inf = dimer_x_asymptotic(0, delta);
    let mut pts = Vec::with_capacity(pairs.len());
    for &(length, x) in pairs {
        let residual = x_inf - x.abs();
        if !(residual > T::zero()) {
            return Err(Error::NonPositiveResidual {
                length,
                residual: residual.to_f64_lossy(),
            });
        }
        let l = T::of(length);
        pts.push((l, residual.ln() - power * l.ln()));
    }
    let n = T::of(pts.len());
    let mean_l = pts.iter().map(|p| p.0).sum::<T>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<T>() / n;
    let sxx: T = pts.iter().map(|p| (p.0 - mean_l) * (p.0 - mean_l)).sum();
    let sxy: T = pts.iter().map(|p| (p.0 - mean_l) * (p.1 - mean_y)).sum();
    if sxx == T::zero() {
        return Err(Error::Parameter("fit needs at least two distinct lengths".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_l;
    Ok(SurfaceFit {
        x_inf,
        amplitude: intercept.exp(),
        zeta_fit: -slope.recip(),
        slope,
        intercept,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::localization_length;
    use crate::model::ChainSpec;
    use crate::observables::{EndToEndState, ThermalContext};
    use approx::assert_relative_eq;

    #[test]
    fn recovers_synthetic_generator() {
        let delta = 0.3;
        let x_inf = dimer_x_asymptotic(0, delta);
        let pairs: Vec<(usize, f64)> = (60..100)
            .step_by(2)
            .map(|l| (l, x_inf - 2.0 * (l * l) as f64 * (-(l as f64) / 5.0).exp()))
            .collect();
        let fit = fit_surface_order(delta, &pairs).unwrap();
        assert_relative_eq!(fit.amplitude, 2.0, epsilon = 1e-9);
        assert_relative_eq!(fit.zeta_fit, 5.0, epsilon = 1e-9);
        assert_relative_eq!(fit.x_inf, x_inf);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            fit_surface_order(0.3, &[(10, 0.1), (12, 0.1), (14, 0.1)]),
            Err(Error::TooFewPoints(3))
        ));
        let pairs = [(10, 0.1), (12, 0.2), (14, 0.36), (16, 0.1)];
        assert!(matches!(
            fit_surface_order(0.3, &pairs),
            Err(Error::NonPositiveResidual { length: 14, .. })
        ));
    }

    fn numeric_pairs(delta: f64) -> Vec<(usize, f64)> {
        (16..=64)
            .step_by(2)
            .map(|l| {
                let spec = ChainSpec::dimer(l, delta, 1.0).unwrap();
                (l, EndToEndState::compute(&spec, ThermalContext::ground()).unwrap().x)
            })
            .collect()
    }

    #[test]
    fn numeric_residuals_are_positive() {
        for delta in [0.15, 0.2, 0.3] {
            assert!(fit_surface_order(delta, &numeric_pairs(delta)).unwrap().amplitude > 0.0);
        }
    }

    #[test]
    fn square_root_prefactor_recovers_localization_length() {
        let delta = 0.3;
        let fit = fit_surface_order_with_power(delta, &numeric_pairs(delta), 0.5).unwrap();
        let zeta = localization_length(delta);
        assert!(((fit.zeta_fit - zeta) / zeta).abs() < 0.03, "{}", fit.zeta_fit);
    }
}
