//! Brute-force many-body reference for short chains.
//!
//! Works directly with spin states, never with fermions. Basis states are
//! bit strings with site 1 as the most significant bit and spin up encoded
//! as 0. The Hamiltonian conserves total `S^z`, so it is stored and
//! diagonalized block by block; [`DenseHamiltonian::to_dense`] assembles the
//! full `2^L` matrix when needed.

use nalgebra::{Complex, DMatrix, Matrix4, SymmetricEigen};

use crate::error::{Error, Result};
use crate::model::ChainSpec;
use crate::scalar::alternating_sign;

pub type C64 = Complex<f64>;

pub const MAX_ORACLE_LENGTH: usize = 12;

/// Energy window for ground-state degeneracy, in units of `J`.
pub const DEGENERACY_WINDOW: f64 = 1e-10;

/// Fixed-magnetization block: basis states with a given number of down spins.
#[derive(Debug, Clone)]
pub struct Sector {
    pub down_spins: usize,
    pub states: Vec<usize>,
    pub matrix: DMatrix<f64>,
}

#[derive(Debug, Clone)]
pub struct DenseHamiltonian {
    length: usize,
    sectors: Vec<Sector>,
}

fn bit(length: usize, site: usize) -> usize {
    1 << (length - 1 - site)
}

/// Many-body Hamiltonian `sum_i J_i (S^x_i S^x_{i+1} + S^y_i S^y_{i+1})`.
pub fn dense_hamiltonian(spec: &ChainSpec<f64>) -> Result<DenseHamiltonian> {
    let length = spec.length();
    if length > MAX_ORACLE_LENGTH {
        return Err(Error::OracleTooLarge(length));
    }
    let couplings = spec.couplings();
    let sectors = (0..=length)
        .map(|down| {
            let states: Vec<usize> = (0..1usize << length)
                .filter(|s| s.count_ones() as usize == down)
                .collect();
            let n = states.len();
            let mut matrix = DMatrix::zeros(n, n);
            for (col, &s) in states.iter().enumerate() {
                for (i, &j) in couplings.iter().enumerate() {
                    let pair = bit(length, i) | bit(length, i + 1);
                    let masked = s & pair;
                    if masked != 0 && masked != pair {
                        let t = s ^ pair;
                        let row = states.binary_search(&t).expect("flip-flop preserves magnetization");
                        matrix[(row, col)] += j / 2.0;
                    }
                }
            }
            Sector {
                down_spins: down,
                states,
                matrix,
            }
        })
        .collect();
    Ok(DenseHamiltonian { length, sectors })
}

impl DenseHamiltonian {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let dim = 1usize << self.length;
        let mut h = DMatrix::zeros(dim, dim);
        for sector in &self.sectors {
            for (a, &sa) in sector.states.iter().enumerate() {
                for (b, &sb) in sector.states.iter().enumerate() {
                    h[(sa, sb)] = sector.matrix[(a, b)];
                }
            }
        }
        h
    }

    /// All many-body energies, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .sectors
            .iter()
            .flat_map(|s| {
                SymmetricEigen::new(s.matrix.clone())
                    .eigenvalues
                    .iter()
                    .copied()
                    .collect::<Vec<_>>()
            })
            .collect();
        out.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        out
    }
}

/// Inverse temperature; `Infinite` selects the ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Beta {
    Finite(f64),
    Infinite,
}

impl Beta {
    /// `T = 0` maps to `Infinite`.
    pub fn from_temperature(t: f64) -> Result<Self> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::InvalidTemperature(t));
        }
        Ok(if t == 0.0 {
            Beta::Infinite
        } else {
            Beta::Finite(1.0 / t)
        })
    }
}

/// Density matrix that is block diagonal in total magnetization.
#[derive(Debug, Clone)]
pub struct DenseState {
    length: usize,
    blocks: Vec<(Vec<usize>, DMatrix<C64>)>,
}

/// `exp(-beta H) / Z`, or the equal mixture of ground states.
pub fn gibbs_state(h: &DenseHamiltonian, beta: Beta) -> DenseState {
    if let Beta::Finite(b) = beta {
        assert!(b >= 0.0 && b.is_finite(), "beta must be finite and non-negative");
    }
    let eig: Vec<_> = h
        .sectors
        .iter()
        .map(|s| SymmetricEigen::new(s.matrix.clone()))
        .collect();
    let e0 = eig
        .iter()
        .flat_map(|e| e.eigenvalues.iter().copied())
        .fold(f64::INFINITY, f64::min);
    let weight = |e: f64| match beta {
        Beta::Finite(b) => (-b * (e - e0)).exp(),
        Beta::Infinite => {
            if e - e0 <= DEGENERACY_WINDOW {
                1.0
            } else {
                0.0
            }
        }
    };
    let z: f64 = eig.iter().flat_map(|e| e.eigenvalues.iter().map(|&x| weight(x))).sum();
    let blocks = h
        .sectors
        .iter()
        .zip(&eig)
        .map(|(sector, e)| {
            let n = sector.states.len();
            let mut rho = DMatrix::<f64>::zeros(n, n);
            for (k, &ek) in e.eigenvalues.iter().enumerate() {
                let w = weight(ek) / z;
                if w == 0.0 {
                    continue;
                }
                let v = e.eigenvectors.column(k);
                rho += w * v * v.transpose();
            }
            (sector.states.clone(), rho.map(|x| C64::new(x, 0.0)))
        })
        .collect();
    DenseState {
        length: h.length,
        blocks,
    }
}

impl DenseState {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        1 << self.length
    }

    pub fn trace(&self) -> C64 {
        self.blocks.iter().map(|(_, m)| m.trace()).sum()
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let dim = self.dimension();
        let mut rho = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
        for (states, m) in &self.blocks {
            for (a, &sa) in states.iter().enumerate() {
                for (b, &sb) in states.iter().enumerate() {
                    rho[(sa, sb)] = m[(a, b)];
                }
            }
        }
        rho
    }

    /// Smallest eigenvalue over all blocks.
    pub fn min_eigenvalue(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|(_, m)| {
                SymmetricEigen::new(m.clone())
                    .eigenvalues
                    .iter()
                    .copied()
                    .collect::<Vec<_>>()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest entry of `|rho H - H rho|`.
    pub fn commutator_norm(&self, h: &DenseHamiltonian) -> f64 {
        self.blocks
            .iter()
            .zip(&h.sectors)
            .map(|((_, rho), sector)| {
                let hc = sector.matrix.map(|x| C64::new(x, 0.0));
                (rho * &hc - &hc * rho).iter().fold(0.0f64, |m, z| m.max(z.norm()))
            })
            .fold(0.0, f64::max)
    }

    /// `<S^z_i>` for every site.
    pub fn site_magnetization(&self) -> Vec<f64> {
        (0..self.length)
            .map(|site| {
                let mask = bit(self.length, site);
                self.blocks
                    .iter()
                    .flat_map(|(states, m)| {
                        states
                            .iter()
                            .enumerate()
                            .map(move |(a, &s)| if s & mask == 0 { 0.5 } else { -0.5 } * m[(a, a)].re)
                    })
                    .sum()
            })
            .collect()
    }
}

/// Partial trace onto sites 1 and `L`, basis index `2 b_1 + b_L`.
pub fn reduce_to_endpoints(rho: &DenseState) -> Matrix4<C64> {
    let length = rho.length;
    let first = bit(length, 0);
    let last = bit(length, length - 1);
    let outer = first | last;
    let index = |s: usize| 2 * usize::from(s & first != 0) + usize::from(s & last != 0);
    let mut out = Matrix4::from_element(C64::new(0.0, 0.0));
    for (states, m) in &rho.blocks {
        for (a, &sa) in states.iter().enumerate() {
            for (b, &sb) in states.iter().enumerate() {
                if sa & !outer == sb & !outer {
                    out[(index(sa), index(sb))] += m[(a, b)];
                }
            }
        }
    }
    out
}

fn hermitian_eigen(m: &Matrix4<C64>) -> SymmetricEigen<C64, nalgebra::U4> {
    SymmetricEigen::new(*m)
}

/// Wootters concurrence of an arbitrary two-qubit density matrix.
pub fn wootters_concurrence(rho: &Matrix4<C64>) -> Result<f64> {
    let herm_defect = (rho - rho.adjoint()).iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if herm_defect > 1e-10 {
        return Err(Error::InvalidMatrix(format!("not Hermitian (defect {herm_defect:e})")));
    }
    let eig = hermitian_eigen(rho);
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -1e-10 {
        return Err(Error::InvalidMatrix(format!(
            "not positive semidefinite (eigenvalue {min:e})"
        )));
    }
    let sqrt_vals = eig.eigenvalues.map(|x| C64::new(x.max(0.0).sqrt(), 0.0));
    let sqrt_rho = eig.eigenvectors * Matrix4::from_diagonal(&sqrt_vals) * eig.eigenvectors.adjoint();
    // sigma_y (x) sigma_y is real: antidiagonal (-1, 1, 1, -1).
    let mut flip = Matrix4::from_element(C64::new(0.0, 0.0));
    flip[(0, 3)] = C64::new(-1.0, 0.0);
    flip[(1, 2)] = C64::new(1.0, 0.0);
    flip[(2, 1)] = C64::new(1.0, 0.0);
    flip[(3, 0)] = C64::new(-1.0, 0.0);
    // sqrt(rho) rho~ sqrt(rho) = A^dagger A with A = sqrt(rho~) sqrt(rho), so the
    // square roots of its eigenvalues are the singular values of A.
    let sqrt_tilde = flip * sqrt_rho.conjugate() * flip;
    let mut mu: Vec<f64> = (sqrt_tilde * sqrt_rho).singular_values().iter().copied().collect();
    mu.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).max(0.0))
}

/// Endpoint spin correlators measured directly in the spin basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndCorrelators {
    /// `<S_1^+ S_L^- + S_1^- S_L^+>`
    pub transverse: f64,
    /// `<S_1^z S_L^z>`
    pub longitudinal: f64,
    /// `-(-1)^{L/2} transverse / 2`, comparable with the fermionic `x`.
    pub x_inferred: f64,
}

pub fn oracle_end_correlators(rho: &DenseState) -> EndCorrelators {
    let r = reduce_to_endpoints(rho);
    // S_1^+ S_L^- maps |down up> (index 2) to |up down> (index 1).
    let transverse = (r[(2, 1)] + r[(1, 2)]).re;
    let longitudinal = 0.25 * (r[(0, 0)] - r[(1, 1)] - r[(2, 2)] + r[(3, 3)]).re;
    let sign: f64 = alternating_sign(rho.length / 2);
    EndCorrelators {
        transverse,
        longitudinal,
        x_inferred: -sign * transverse / 2.0,
    }
}
