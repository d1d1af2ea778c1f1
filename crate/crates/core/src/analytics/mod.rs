//! Closed-form results for the dimerized and end-bond chains.

mod dimer;
mod endbond;
mod fit;

pub use dimer::{
    dimer_band, dimer_complex_seed, dimer_concurrence_fidelity, dimer_dispersion, dimer_gap_asymptotic,
    dimer_quasimomenta, dimer_x_asymptotic, localization_length,
};
pub use endbond::{
    endbond_eigenvector, endbond_gap_approx, endbond_normalization, endbond_quasimomenta, endbond_x_interpolated,
    endbond_x_largelambda, endbond_x_smalllambda, endbond_x_zero_t, smalllambda_regime_holds,
};
pub use fit::{fit_surface_order, fit_surface_order_with_power, SurfaceFit};

use crate::scalar::Real;
use crate::spectral::Parity;

/// Catalan's constant.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

/// Numerical constants of the model, computed from their defining expressions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants<T> {
    /// `|x|` above which the endpoints are entangled: `(sqrt2 - 1) / 2`.
    pub x_threshold: T,
    /// Dimerization at which the asymptotic concurrence vanishes.
    pub delta0: T,
    /// Localization length at `delta0`.
    pub zeta0: T,
    pub catalan: T,
    /// `1/4 + 2 G / pi^2`.
    pub c_coefficient: T,
}

impl<T: Real> Constants<T> {
    pub fn new() -> Self {
        let sqrt2 = T::two().sqrt();
        let a0 = (T::two() - sqrt2).sqrt();
        let delta0 = (T::one() - a0) / (T::one() + a0);
        let catalan = T::lit(CATALAN);
        Self {
            x_threshold: (sqrt2 - T::one()) * T::half(),
            delta0,
            zeta0: localization_length(delta0),
            catalan,
            c_coefficient: T::lit(0.25) + T::two() * catalan / (T::PI() * T::PI()),
        }
    }
}

impl<T: Real> Default for Constants<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// Weak-to-strong bond ratio `a = (1 - delta) / (1 + delta)`.
pub fn dimer_ratio<T: Real>(delta: T) -> T {
    (T::one() - delta) / (T::one() + delta)
}

/// Which transcendental equation a root set solves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticModel<T> {
    Dimer { delta: T, length: usize },
    EndBond { lambda: T, length: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quasimomentum<T> {
    pub k: T,
    /// Reflection parity of the mode, when the equation resolves it.
    pub parity: Option<Parity>,
}

/// The boundary mode `k0 = pi/2 + i p` of the dimer chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMode<T> {
    pub p: T,
    /// `|Lambda(k0)|` in units of `J`.
    pub energy: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasimomentumSet<T> {
    pub model: AnalyticModel<T>,
    /// Real roots in ascending order.
    pub real_roots: Vec<Quasimomentum<T>>,
    pub complex_mode: Option<ComplexMode<T>>,
}

impl<T: Real> QuasimomentumSet<T> {
    /// One-body energies (units of `J`) implied by the roots, ascending.
    pub fn implied_spectrum(&self) -> Vec<T> {
        let mut out: Vec<T> = match self.model {
            AnalyticModel::EndBond { .. } => self.real_roots.iter().map(|q| q.k.cos()).collect(),
            AnalyticModel::Dimer { delta, .. } => {
                let mut v = Vec::with_capacity(2 * self.real_roots.len() + 2);
                for q in &self.real_roots {
                    let e = dimer_band(q.k, delta);
                    v.push(e);
                    v.push(-e);
                }
                if let Some(mode) = self.complex_mode {
                    v.push(mode.energy);
                    v.push(-mode.energy);
                }
                v
            }
        };
        out.sort_by(|a, b| a.partial_cmp(b).expect("finite energies"));
        out
    }

    pub fn roots(&self) -> Vec<T> {
        self.real_roots.iter().map(|q| q.k).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_reference_values() {
        let c = Constants::<f64>::new();
        assert!((c.delta0 - 0.13291).abs() < 1e-5);
        assert!((c.zeta0 - 7.479).abs() < 1e-3);
        assert!((c.c_coefficient - 0.4356).abs() < 1e-4);
        assert!((c.x_threshold - 0.2071068).abs() < 1e-7);
        // Rounded anchors.
        assert_eq!((c.delta0 * 1000.0).floor() / 1000.0, 0.132);
        assert!((c.catalan - 0.915).abs() < 1e-3);
    }

    #[test]
    fn threshold_dimerization_gives_threshold_correlation() {
        let c = Constants::<f64>::new();
        assert!((dimer_x_asymptotic(4, c.delta0) - c.x_threshold).abs() < 1e-12);
    }

    #[test]
    fn constants_in_single_precision() {
        let c = Constants::<f32>::new();
        assert!((c.delta0 - 0.13291).abs() < 1e-5);
        assert!((c.zeta0 - 7.479).abs() < 2e-3);
    }
}
