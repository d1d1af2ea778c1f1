//! Chain instances and their one-body adjacency matrix.
//!
//! A chain of `L` spins is fully described by its `L - 1` nearest-neighbour
//! couplings. Couplings are stored explicitly, so named patterns and custom
//! chains share a single code path; the pattern tag is kept only so that
//! analytic results can be dispatched on it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{alternating_sign, Real};

/// Coupling pattern a chain was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Pattern<T> {
    Uniform,
    /// Alternating bonds `J(1 - delta), J(1 + delta), ...`, weak at both ends.
    Dimer {
        delta: T,
    },
    /// Uniform bulk with two end bonds of strength `lambda * J`.
    EndBond {
        lambda: T,
    },
    Custom,
}

impl<T> Pattern<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Pattern::Uniform => "uniform",
            Pattern::Dimer { .. } => "dimer",
            Pattern::EndBond { .. } => "end_bond",
            Pattern::Custom => "custom",
        }
    }
}

/// One open XX chain instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "ChainSpecRepr<T>",
    into = "ChainSpecRepr<T>",
    bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>")
)]
pub struct ChainSpec<T: Real> {
    length: usize,
    couplings: Vec<T>,
    pattern: Pattern<T>,
    scale: T,
}

fn check_length(length: usize) -> Result<()> {
    if length < 4 || !length.is_multiple_of(2) {
        return Err(Error::InvalidLength(length));
    }
    Ok(())
}

fn check_scale<T: Real>(scale: T) -> Result<()> {
    if !(scale > T::zero()) || !scale.is_finite() {
        return Err(Error::InvalidScale(scale.to_f64_lossy()));
    }
    Ok(())
}

impl<T: Real> ChainSpec<T> {
    /// Uniform chain with every coupling equal to `scale`.
    pub fn uniform(length: usize, scale: T) -> Result<Self> {
        check_length(length)?;
        check_scale(scale)?;
        Ok(Self {
            length,
            couplings: vec![scale; length - 1],
            pattern: Pattern::Uniform,
            scale,
        })
    }

    /// Dimerized chain: `J_i = J (1 + (-1)^i delta)` for `i = 1..L-1`.
    pub fn dimer(length: usize, delta: T, scale: T) -> Result<Self> {
        check_length(length)?;
        check_scale(scale)?;
        if !(delta >= T::zero() && delta < T::one()) {
            return Err(Error::InvalidDelta(delta.to_f64_lossy()));
        }
        let couplings = (1..length)
            .map(|i| scale * (T::one() + alternating_sign::<T>(i) * delta))
            .collect();
        Ok(Self {
            length,
            couplings,
            pattern: Pattern::Dimer { delta },
            scale,
        })
    }

    /// Uniform bulk of strength `J` with end bonds `lambda * J`.
    pub fn end_bond(length: usize, lambda: T, scale: T) -> Result<Self> {
        check_length(length)?;
        check_scale(scale)?;
        if !(lambda > T::zero() && lambda <= T::one()) {
            return Err(Error::InvalidLambda(lambda.to_f64_lossy()));
        }
        let mut couplings = vec![scale; length - 1];
        couplings[0] = lambda * scale;
        couplings[length - 2] = lambda * scale;
        Ok(Self {
            length,
            couplings,
            pattern: Pattern::EndBond { lambda },
            scale,
        })
    }

    /// Arbitrary positive couplings (absolute energies, not in units of `scale`).
    pub fn custom(couplings: Vec<T>, scale: T) -> Result<Self> {
        let length = couplings.len() + 1;
        check_length(length)?;
        check_scale(scale)?;
        for (i, &c) in couplings.iter().enumerate() {
            if !(c > T::zero()) || !c.is_finite() {
                return Err(Error::InvalidCoupling {
                    index: i + 1,
                    value: c.to_f64_lossy(),
                });
            }
        }
        Ok(Self {
            length,
            couplings,
            pattern: Pattern::Custom,
            scale,
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn couplings(&self) -> &[T] {
        &self.couplings
    }

    pub fn pattern(&self) -> Pattern<T> {
        self.pattern
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    /// Weak/strong bond ratio `a = (1 - delta) / (1 + delta)`; only defined for dimers.
    pub fn dimer_ratio(&self) -> Option<T> {
        match self.pattern {
            Pattern::Dimer { delta } => Some((T::one() - delta) / (T::one() + delta)),
            _ => None,
        }
    }

    pub fn is_palindromic(&self) -> bool {
        self.couplings.iter().eq(self.couplings.iter().rev())
    }

    /// One-body hopping matrix `M` with entries `J_i / 2`.
    pub fn adjacency(&self) -> TridiagonalMatrix<T> {
        build_adjacency(self)
    }
}

/// Symmetric tridiagonal matrix stored as diagonal and first off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix<T> {
    diagonal: Vec<T>,
    off_diagonal: Vec<T>,
}

impl<T: Real> TridiagonalMatrix<T> {
    /// Requires `off_diagonal.len() + 1 == diagonal.len()` and nonzero off-diagonals.
    pub fn new(diagonal: Vec<T>, off_diagonal: Vec<T>) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::InvalidMatrix(format!(
                "diagonal has {} entries, off-diagonal {}",
                diagonal.len(),
                off_diagonal.len()
            )));
        }
        if let Some(i) = off_diagonal.iter().position(|e| *e == T::zero() || !e.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "off-diagonal entry {i} is zero or not finite"
            )));
        }
        if diagonal.iter().any(|d| !d.is_finite()) {
            return Err(Error::InvalidMatrix("non-finite diagonal".into()));
        }
        Ok(Self { diagonal, off_diagonal })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[T] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &[T] {
        &self.off_diagonal
    }

    /// Largest entry in absolute value.
    pub fn max_abs(&self) -> T {
        self.diagonal
            .iter()
            .chain(self.off_diagonal.iter())
            .fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Invariant under the reflection `j -> n + 1 - j`.
    pub fn is_palindromic(&self) -> bool {
        self.diagonal.iter().eq(self.diagonal.iter().rev())
            && self.off_diagonal.iter().eq(self.off_diagonal.iter().rev())
    }

    /// `y = M v`.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut acc = self.diagonal[i] * v[i];
                if i > 0 {
                    acc = acc + self.off_diagonal[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc = acc + self.off_diagonal[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.dim();
        let mut m = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            m[i][i] = self.diagonal[i];
            if i + 1 < n {
                m[i][i + 1] = self.off_diagonal[i];
                m[i + 1][i] = self.off_diagonal[i];
            }
        }
        m
    }
}

/// Free-fermion hopping matrix of a chain: zero diagonal, off-diagonal `J_i / 2`.
pub fn build_adjacency<T: Real>(spec: &ChainSpec<T>) -> TridiagonalMatrix<T> {
    TridiagonalMatrix {
        diagonal: vec![T::zero(); spec.length],
        off_diagonal: spec.couplings.iter().map(|&c| c * T::half()).collect(),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
struct ChainSpecRepr<T> {
    length: usize,
    pattern: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<T>,
    couplings: Vec<T>,
    scale: T,
}

impl<T: Real> From<ChainSpec<T>> for ChainSpecRepr<T> {
    fn from(spec: ChainSpec<T>) -> Self {
        let (delta, lambda) = match spec.pattern {
            Pattern::Dimer { delta } => (Some(delta), None),
            Pattern::EndBond { lambda } => (None, Some(lambda)),
            _ => (None, None),
        };
        Self {
            length: spec.length,
            pattern: spec.pattern.name().to_string(),
            delta,
            lambda,
            couplings: spec.couplings,
            scale: spec.scale,
        }
    }
}

impl<T: Real> TryFrom<ChainSpecRepr<T>> for ChainSpec<T> {
    type Error = Error;

    fn try_from(repr: ChainSpecRepr<T>) -> Result<Self> {
        let missing = |what: &str| Error::Parameter(format!("pattern {} needs {what}", repr.pattern));
        let spec = match repr.pattern.as_str() {
            "uniform" => ChainSpec::uniform(repr.length, repr.scale)?,
            "dimer" => ChainSpec::dimer(repr.length, repr.delta.ok_or_else(|| missing("delta"))?, repr.scale)?,
            "end_bond" => ChainSpec::end_bond(repr.length, repr.lambda.ok_or_else(|| missing("lambda"))?, repr.scale)?,
            "custom" => ChainSpec::custom(repr.couplings.clone(), repr.scale)?,
            other => return Err(Error::Parameter(format!("unknown pattern {other:?}"))),
        };
        if spec.length != repr.length {
            return Err(Error::CouplingCount {
                length: repr.length,
                expected: repr.length.saturating_sub(1),
                got: repr.couplings.len(),
            });
        }
        let tol = T::lit(1e3) * T::eps() * repr.scale;
        let consistent = spec.couplings.len() == repr.couplings.len()
            && spec
                .couplings
                .iter()
                .zip(&repr.couplings)
                .all(|(a, b)| (*a - *b).abs() <= tol);
        if !consistent {
            return Err(Error::Parameter(format!(
                "couplings do not match the {} pattern",
                repr.pattern
            )));
        }
        Ok(spec)
    }
}
