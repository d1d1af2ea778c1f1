//! Diagonalization of the one-body hopping matrix.
//!
//! Reflection-symmetric matrices of even dimension are split into their
//! parity sectors before anything else. Inside a sector the spectrum has no
//! near-degenerate pairs, so eigenvectors are well conditioned even when the
//! full matrix carries an exponentially split pair of edge modes. Eigenvalues
//! come from Sturm bisection, eigenvectors from implicit QL.

mod ql;
mod sturm;

use crate::error::{Error, Result};
use crate::model::TridiagonalMatrix;
use crate::scalar::Real;

pub(crate) use sturm::Sturm;

/// Left-right reflection eigenvalue of a one-body mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign<T: Real>(self) -> T {
        match self {
            Parity::Even => T::one(),
            Parity::Odd => -T::one(),
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

/// Anything that exposes one-body energies together with the products
/// `xi_k(1) * xi_k(L)` of the end-site amplitudes.
pub trait EndpointModes<T> {
    fn eigenvalues(&self) -> &[T];
    fn endpoint_product(&self, k: usize) -> T;
}

/// Full eigendecomposition `M xi_k = Lambda_k xi_k`, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<T: Real> {
    eigenvalues: Vec<T>,
    eigenvectors: Vec<Vec<T>>,
    parities: Option<Vec<Parity>>,
    source: TridiagonalMatrix<T>,
}

impl<T: Real> SpectralDecomposition<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Eigenvector of the `k`-th eigenvalue; its first component is positive.
    pub fn eigenvector(&self, k: usize) -> &[T] {
        &self.eigenvectors[k]
    }

    pub fn eigenvectors(&self) -> &[Vec<T>] {
        &self.eigenvectors
    }

    /// Parity labels of the sector each mode was computed in, if the source is
    /// reflection symmetric.
    pub fn parities(&self) -> Option<&[Parity]> {
        self.parities.as_deref()
    }

    pub fn source(&self) -> &TridiagonalMatrix<T> {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `max_k |M xi_k - Lambda_k xi_k|_inf`.
    pub fn max_residual(&self) -> T {
        self.eigenvalues
            .iter()
            .zip(&self.eigenvectors)
            .map(|(&lambda, v)| {
                self.source
                    .apply(v)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |m, (mv, vi)| m.max((*mv - lambda * *vi).abs()))
            })
            .fold(T::zero(), T::max)
    }

    /// `max_{k,q} |<xi_k, xi_q> - delta_kq|`.
    pub fn orthonormality_defect(&self) -> T {
        let n = self.len();
        let mut worst = T::zero();
        for k in 0..n {
            for q in k..n {
                let dot: T = self.eigenvectors[k]
                    .iter()
                    .zip(&self.eigenvectors[q])
                    .map(|(a, b)| *a * *b)
                    .sum();
                let want = if k == q { T::one() } else { T::zero() };
                worst = worst.max((dot - want).abs());
            }
        }
        worst
    }

    pub fn endpoint_spectrum(&self) -> EndpointSpectrum<T> {
        let last = self.len() - 1;
        EndpointSpectrum {
            eigenvalues: self.eigenvalues.clone(),
            first: self.eigenvectors.iter().map(|v| v[0]).collect(),
            last: self.eigenvectors.iter().map(|v| v[last]).collect(),
            parities: self.parities.clone(),
        }
    }
}

impl<T: Real> EndpointModes<T> for SpectralDecomposition<T> {
    fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    fn endpoint_product(&self, k: usize) -> T {
        let v = &self.eigenvectors[k];
        v[0] * v[v.len() - 1]
    }
}

/// Eigenvalues plus the two end-site amplitudes of every mode; all that the
/// end-to-end observables need, at quadratic cost.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointSpectrum<T> {
    eigenvalues: Vec<T>,
    first: Vec<T>,
    last: Vec<T>,
    parities: Option<Vec<Parity>>,
}

impl<T: Real> EndpointSpectrum<T> {
    pub fn first_components(&self) -> &[T] {
        &self.first
    }

    pub fn last_components(&self) -> &[T] {
        &self.last
    }

    pub fn parities(&self) -> Option<&[Parity]> {
        self.parities.as_deref()
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

impl<T: Real> EndpointModes<T> for EndpointSpectrum<T> {
    fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    fn endpoint_product(&self, k: usize) -> T {
        self.first[k] * self.last[k]
    }
}

/// Which rows of the eigenvector matrix to compute.
#[derive(Clone, Copy)]
enum Rows {
    All,
    Ends,
    None,
}

/// One diagonalized block: ascending eigenvalues and the tracked rows of its
/// eigenvector matrix.
struct Block<T> {
    eigenvalues: Vec<T>,
    rows: Vec<Vec<T>>,
}

fn solve_block<T: Real>(diag: &[T], off: &[T], rows: Rows) -> Result<Block<T>> {
    let n = diag.len();
    let mut z = match rows {
        Rows::All => ql::identity_rows(n, 0..n),
        Rows::Ends if n > 1 => ql::identity_rows(n, [0, n - 1]),
        Rows::Ends => ql::identity_rows(n, [0]),
        Rows::None => Vec::new(),
    };
    let mut seeds = diag.to_vec();
    ql::implicit_ql(&mut seeds, off, &mut z)?;
    let sturm = Sturm::new(diag, off);
    let eigenvalues = seeds
        .iter()
        .enumerate()
        .map(|(k, &s)| sturm.eigenvalue(k, Some(s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Block { eigenvalues, rows: z })
}

/// Reflection sector of an even-dimensional symmetric matrix: sites `1..n`
/// with the middle bond folded onto the last diagonal entry.
fn sector<T: Real>(m: &TridiagonalMatrix<T>, parity: Parity) -> (Vec<T>, Vec<T>) {
    let n = m.dim() / 2;
    let mut diag = m.diagonal()[..n].to_vec();
    diag[n - 1] = diag[n - 1] + parity.sign::<T>() * m.off_diagonal()[n - 1];
    (diag, m.off_diagonal()[..n - 1].to_vec())
}

fn uses_sectors<T: Real>(m: &TridiagonalMatrix<T>) -> bool {
    m.dim() >= 2 && m.dim().is_multiple_of(2) && m.is_palindromic()
}

/// A mode assembled from a sector or from the full matrix.
struct Mode<T> {
    value: T,
    parity: Option<Parity>,
    /// Tracked rows of the sector (or full) eigenvector for this mode.
    column: Vec<T>,
}

fn collect_modes<T: Real>(m: &TridiagonalMatrix<T>, rows: Rows) -> Result<(Vec<Mode<T>>, bool)> {
    let sectored = uses_sectors(m);
    let mut modes = Vec::with_capacity(m.dim());
    if sectored {
        for parity in [Parity::Even, Parity::Odd] {
            let (diag, off) = sector(m, parity);
            let block = solve_block(&diag, &off, rows)?;
            push_modes(&mut modes, block, Some(parity));
        }
    } else {
        let block = solve_block(m.diagonal(), m.off_diagonal(), rows)?;
        push_modes(&mut modes, block, None);
    }
    modes.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("finite eigenvalues"));
    Ok((modes, sectored))
}

fn push_modes<T: Real>(modes: &mut Vec<Mode<T>>, block: Block<T>, parity: Option<Parity>) {
    for (k, value) in block.eigenvalues.into_iter().enumerate() {
        let column = block.rows.iter().map(|row| row[k]).collect();
        modes.push(Mode { value, parity, column });
    }
}

fn first_nonzero_sign<T: Real>(v: &[T]) -> T {
    v.iter()
        .find(|x| **x != T::zero())
        .map(|x| x.signum())
        .unwrap_or_else(T::one)
}

/// Full eigendecomposition of a symmetric tridiagonal matrix.
///
/// Eigenvalues are strictly ascending for unreduced input; each eigenvector is
/// unit norm with its first nonzero component positive.
pub fn diagonalize<T: Real>(m: &TridiagonalMatrix<T>) -> Result<SpectralDecomposition<T>> {
    let dim = m.dim();
    let (modes, sectored) = collect_modes(m, Rows::All)?;
    let inv_sqrt2 = T::one() / T::two().sqrt();
    let mut eigenvalues = Vec::with_capacity(dim);
    let mut eigenvectors = Vec::with_capacity(dim);
    let mut parities = Vec::with_capacity(dim);
    for mode in modes {
        let mut v = if sectored {
            let parity = mode.parity.expect("sector modes carry parity");
            let half = dim / 2;
            let mut full = vec![T::zero(); dim];
            for j in 0..half {
                full[j] = mode.column[j] * inv_sqrt2;
                full[dim - 1 - j] = parity.sign::<T>() * mode.column[j] * inv_sqrt2;
            }
            full
        } else {
            mode.column
        };
        let sign = first_nonzero_sign(&v);
        v.iter_mut().for_each(|x| *x = *x * sign);
        eigenvalues.push(mode.value);
        eigenvectors.push(v);
        if let Some(p) = mode.parity {
            parities.push(p);
        }
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        parities: sectored.then_some(parities),
        source: m.clone(),
    })
}

/// Eigenvalues and end-site amplitudes only.
pub fn endpoint_spectrum<T: Real>(m: &TridiagonalMatrix<T>) -> Result<EndpointSpectrum<T>> {
    let (modes, sectored) = collect_modes(m, Rows::Ends)?;
    let inv_sqrt2 = T::one() / T::two().sqrt();
    let mut out = EndpointSpectrum {
        eigenvalues: Vec::with_capacity(m.dim()),
        first: Vec::with_capacity(m.dim()),
        last: Vec::with_capacity(m.dim()),
        parities: None,
    };
    let mut parities = Vec::new();
    for mode in modes {
        let (first, last) = if sectored {
            let parity = mode.parity.expect("sector modes carry parity");
            let f = mode.column[0].abs() * inv_sqrt2;
            parities.push(parity);
            (f, parity.sign::<T>() * f)
        } else {
            let sign = first_nonzero_sign(&mode.column);
            let last = *mode.column.last().expect("nonempty");
            (mode.column[0] * sign, last * sign)
        };
        out.eigenvalues.push(mode.value);
        out.first.push(first);
        out.last.push(last);
    }
    if sectored {
        out.parities = Some(parities);
    }
    Ok(out)
}

/// Ascending eigenvalues only.
pub fn eigenvalues<T: Real>(m: &TridiagonalMatrix<T>) -> Result<Vec<T>> {
    let (modes, _) = collect_modes(m, Rows::None)?;
    Ok(modes.into_iter().map(|mode| mode.value).collect())
}

/// `min_k |Lambda_k|`, found by bisecting only the two eigenvalues adjacent to zero.
pub fn smallest_magnitude_eigenvalue<T: Real>(m: &TridiagonalMatrix<T>) -> Result<T> {
    let sturm = Sturm::new(m.diagonal(), m.off_diagonal());
    let below = sturm.count_below(T::zero());
    let mut best = T::infinity();
    if below > 0 {
        best = best.min(sturm.eigenvalue(below - 1, None)?.abs());
    }
    if below < m.dim() {
        best = best.min(sturm.eigenvalue(below, None)?.abs());
    }
    Ok(best)
}

/// Parity of every mode read off the end-site amplitudes:
/// `sign(xi_k(1) * xi_k(L))`. `None` when the source matrix is not reflection
/// symmetric, where parity is undefined.
pub fn classify_parity<T: Real>(decomp: &SpectralDecomposition<T>) -> Option<Vec<Parity>> {
    if !decomp.source.is_palindromic() {
        return None;
    }
    Some(
        (0..decomp.len())
            .map(|k| {
                if decomp.endpoint_product(k) >= T::zero() {
                    Parity::Even
                } else {
                    Parity::Odd
                }
            })
            .collect(),
    )
}

/// Validates the decomposition invariants at the given tolerances.
pub fn check_invariants<T: Real>(decomp: &SpectralDecomposition<T>, tol: T) -> Result<()> {
    let scale = decomp.source.max_abs().max(T::min_positive_value());
    let residual = decomp.max_residual();
    if residual > tol * scale {
        return Err(Error::InvalidMatrix(format!("residual {residual:e} above tolerance")));
    }
    let defect = decomp.orthonormality_defect();
    if defect > tol {
        return Err(Error::InvalidMatrix(format!("orthonormality defect {defect:e}")));
    }
    if decomp.eigenvalues.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidMatrix("eigenvalues not strictly increasing".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
