//! Open XX spin-1/2 chains solved through their free-fermion form.
//!
//! A chain is described by a [`ChainSpec`]; its hopping matrix is
//! diagonalized by [`spectral`], and [`observables`] turns the spectrum into
//! the end-to-end correlation `x = <c_1^dag c_L>`, the endpoint two-qubit
//! state, its concurrence and the teleportation fidelity. [`analytics`] holds
//! the closed forms for the dimerized and end-bond chains, and [`oracle`] is a
//! brute-force many-body reference for short chains.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the aliases in
//! this module fix the scalar to `f64`, and [`single`] fixes it to `f32`.
//!
//! ```
//! use xxchain::{ChainSpec, EndToEndState, ThermalContext};
//!
//! let spec = ChainSpec::uniform(4, 1.0).unwrap();
//! let state = EndToEndState::compute(&spec, ThermalContext::ground()).unwrap();
//! assert!((state.x - 1.0 / (2.0 * 5f64.sqrt())).abs() < 1e-12);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytics;
pub mod datasets;
pub mod error;
pub mod model;
pub mod observables;
pub mod oracle;
pub mod roots;
pub mod scalar;
pub mod spectral;
pub mod sweep;
pub mod validation;

pub use error::{Error, Result};
pub use scalar::Real;
pub use spectral::{EndpointModes, Parity};
pub use sweep::SweepResult;

pub type ChainSpec = model::ChainSpec<f64>;
pub type Pattern = model::Pattern<f64>;
pub type TridiagonalMatrix = model::TridiagonalMatrix<f64>;
pub type SpectralDecomposition = spectral::SpectralDecomposition<f64>;
pub type EndpointSpectrum = spectral::EndpointSpectrum<f64>;
pub type ThermalContext = observables::ThermalContext<f64>;
pub type EndToEndState = observables::EndToEndState<f64>;
pub type QuasimomentumSet = analytics::QuasimomentumSet<f64>;
pub type Constants = analytics::Constants<f64>;

/// Single-precision aliases.
pub mod single {
    pub type ChainSpec = crate::model::ChainSpec<f32>;
    pub type TridiagonalMatrix = crate::model::TridiagonalMatrix<f32>;
    pub type SpectralDecomposition = crate::spectral::SpectralDecomposition<f32>;
    pub type EndpointSpectrum = crate::spectral::EndpointSpectrum<f32>;
    pub type ThermalContext = crate::observables::ThermalContext<f32>;
    pub type EndToEndState = crate::observables::EndToEndState<f32>;
    pub type QuasimomentumSet = crate::analytics::QuasimomentumSet<f32>;
}
