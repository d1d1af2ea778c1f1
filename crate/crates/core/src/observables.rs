//! End-to-end correlation and the quantities derived from it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ChainSpec;
use crate::scalar::{alternating_sign, Real};
use crate::spectral::{endpoint_spectrum, EndpointModes};

/// Temperature in units of `J / k_B`. Zero temperature is its own branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThermalContext<T> {
    Ground,
    Thermal { temperature: T, beta: T },
}

impl<T: Real> ThermalContext<T> {
    pub fn ground() -> Self {
        ThermalContext::Ground
    }

    /// `temperature == 0` selects the exact ground state.
    pub fn new(temperature: T) -> Result<Self> {
        if !(temperature >= T::zero()) || !temperature.is_finite() {
            return Err(Error::InvalidTemperature(temperature.to_f64_lossy()));
        }
        if temperature == T::zero() {
            return Ok(ThermalContext::Ground);
        }
        Ok(ThermalContext::Thermal {
            temperature,
            beta: temperature.recip(),
        })
    }

    pub fn temperature(&self) -> T {
        match *self {
            ThermalContext::Ground => T::zero(),
            ThermalContext::Thermal { temperature, .. } => temperature,
        }
    }

    /// `None` stands for infinite beta.
    pub fn beta(&self) -> Option<T> {
        match *self {
            ThermalContext::Ground => None,
            ThermalContext::Thermal { beta, .. } => Some(beta),
        }
    }

    /// Occupation of a one-body level of energy `lambda`.
    pub fn occupation(&self, lambda: T) -> T {
        match *self {
            ThermalContext::Ground => {
                if lambda < T::zero() {
                    T::one()
                } else if lambda > T::zero() {
                    T::zero()
                } else {
                    T::half()
                }
            }
            ThermalContext::Thermal { beta, .. } => {
                let y = beta * lambda;
                if y > T::zero() {
                    let e = (-y).exp();
                    e / (T::one() + e)
                } else {
                    T::one() / (T::one() + y.exp())
                }
            }
        }
    }
}

/// `x = <c_1^dag c_L>`.
///
/// At zero temperature a mode with exactly vanishing energy is given weight
/// one half.
pub fn end_to_end_correlation<T: Real, S: EndpointModes<T> + ?Sized>(modes: &S, ctx: ThermalContext<T>) -> T {
    let mut x = T::zero();
    for (k, &lambda) in modes.eigenvalues().iter().enumerate() {
        if matches!(ctx, ThermalContext::Ground) && lambda == T::zero() {
            log::warn!("zero mode at index {k}: assigning occupation 1/2");
        }
        let n = ctx.occupation(lambda);
        if n != T::zero() {
            x = x + n * modes.endpoint_product(k);
        }
    }
    x
}

/// Endpoint two-qubit state in the basis `|s_1 s_L>`, index `2 b_1 + b_L`,
/// with spin up encoded as bit 0.
pub fn reduced_density_matrix<T: Real>(x: T, length: usize) -> Result<[[T; 4]; 4]> {
    if !(x.abs() <= T::half() + T::lit(1e-9)) {
        return Err(Error::UnphysicalCorrelation(x.to_f64_lossy()));
    }
    let s = transverse_coefficient(x, length);
    let z = -x * x;
    let quarter = T::lit(0.25);
    let mut rho = [[T::zero(); 4]; 4];
    rho[0][0] = quarter + z;
    rho[3][3] = quarter + z;
    rho[1][1] = quarter - z;
    rho[2][2] = quarter - z;
    rho[1][2] = s * T::two();
    rho[2][1] = s * T::two();
    Ok(rho)
}

/// `s = -(-1)^{L/2} x / 2`, the coefficient of `sx sx + sy sy`.
fn transverse_coefficient<T: Real>(x: T, length: usize) -> T {
    -alternating_sign::<T>(length / 2) * x * T::half()
}

/// `C = 2 max(0, x^2 + |x| - 1/4)`.
pub fn concurrence_from_x<T: Real>(x: T) -> T {
    let g = x * x + x.abs() - T::lit(0.25);
    T::two() * g.max(T::zero())
}

/// `F = 1/4 + |x| + x^2`.
pub fn fully_entangled_fraction<T: Real>(x: T) -> T {
    T::lit(0.25) + x.abs() + x * x
}

/// Average teleportation fidelity `(2F + 1) / 3`.
pub fn fidelity_from_x<T: Real>(x: T) -> T {
    (T::two() * fully_entangled_fraction(x) + T::one()) / T::lit(3.0)
}

/// Lowest one-body excitation, `min_k |Lambda_k|`.
pub fn energy_gap<T: Real, S: EndpointModes<T> + ?Sized>(modes: &S) -> T {
    modes.eigenvalues().iter().fold(T::infinity(), |m, l| m.min(l.abs()))
}

/// Everything known about the endpoint pair for one chain and temperature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EndToEndState<T> {
    pub length: usize,
    pub x: T,
    /// `<S_1^x S_L^x>`
    pub transverse: T,
    /// `<S_1^z S_L^z>`
    pub longitudinal: T,
    pub rho: [[T; 4]; 4],
    pub concurrence: T,
    pub fef: T,
    pub fidelity: T,
}

impl<T: Real> EndToEndState<T> {
    pub fn from_x(x: T, length: usize) -> Result<Self> {
        let rho = reduced_density_matrix(x, length)?;
        Ok(Self {
            length,
            x,
            transverse: transverse_coefficient(x, length),
            longitudinal: -x * x,
            rho,
            concurrence: concurrence_from_x(x),
            fef: fully_entangled_fraction(x),
            fidelity: fidelity_from_x(x),
        })
    }

    pub fn compute(spec: &ChainSpec<T>, ctx: ThermalContext<T>) -> Result<Self> {
        let modes = endpoint_spectrum(&spec.adjacency())?;
        Self::from_x(end_to_end_correlation(&modes, ctx), spec.length())
    }
}
