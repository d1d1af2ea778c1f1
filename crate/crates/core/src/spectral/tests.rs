use super::*;
use crate::model::ChainSpec;
use approx::assert_relative_eq;
use proptest::prelude::*;
use std::f64::consts::PI;

fn dense_eigenvalues(m: &TridiagonalMatrix<f64>) -> Vec<f64> {
    let n = m.dim();
    let dense = nalgebra::DMatrix::from_fn(n, n, |i, j| m.to_dense()[i][j]);
    let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(dense)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

fn hopping(couplings: &[f64]) -> TridiagonalMatrix<f64> {
    let off = couplings.iter().map(|j| j / 2.0).collect::<Vec<_>>();
    TridiagonalMatrix::new(vec![0.0; couplings.len() + 1], off).unwrap()
}

fn specs() -> Vec<ChainSpec<f64>> {
    vec![
        ChainSpec::uniform(4, 1.0).unwrap(),
        ChainSpec::uniform(30, 1.0).unwrap(),
        ChainSpec::dimer(20, 0.5, 1.0).unwrap(),
        ChainSpec::dimer(64, 0.3, 2.0).unwrap(),
        ChainSpec::end_bond(40, 0.1, 1.0).unwrap(),
        ChainSpec::end_bond(50, 0.7, 1.0).unwrap(),
        ChainSpec::custom(vec![1.0, 0.3, 2.0, 0.7, 1.1, 0.4, 0.9], 1.0).unwrap(),
        ChainSpec::custom(vec![1.0, 0.5, 1.5, 0.5, 1.0], 1.0).unwrap(),
    ]
}

#[test]
fn uniform_four_site_spectrum() {
    let m = ChainSpec::uniform(4, 1.0).unwrap().adjacency();
    let d = diagonalize(&m).unwrap();
    let golden = (1.0 + 5f64.sqrt()) / 4.0;
    let inner = (5f64.sqrt() - 1.0) / 4.0;
    let want = [-golden, -inner, inner, golden];
    for (got, want) in d.eigenvalues().iter().zip(want) {
        assert_relative_eq!(*got, want, epsilon = 1e-14);
    }
}

#[test]
fn uniform_spectrum_matches_cosine_band() {
    for length in [2, 3, 7, 10, 31, 100] {
        let m = hopping(&vec![1.0; length - 1]);
        let ev = eigenvalues(&m).unwrap();
        for (k, got) in ev.iter().enumerate() {
            let want = -((k + 1) as f64 * PI / (length + 1) as f64).cos();
            assert!((got - want).abs() < 1e-13, "L={length} k={k}: {got} vs {want}");
        }
    }
}

#[test]
fn decomposition_invariants() {
    for spec in specs() {
        let d = diagonalize(&spec.adjacency()).unwrap();
        assert!(d.max_residual() < 1e-10 * spec.scale(), "{:?}", spec.pattern());
        assert!(d.orthonormality_defect() < 1e-10);
        check_invariants(&d, 1e-10).unwrap();
        for v in d.eigenvectors() {
            assert!(v[0] > 0.0);
        }
    }
}

#[test]
fn agrees_with_dense_solver() {
    for spec in specs() {
        let m = spec.adjacency();
        let ours = eigenvalues(&m).unwrap();
        let theirs = dense_eigenvalues(&m);
        for (a, b) in ours.iter().zip(&theirs) {
            assert!((a - b).abs() < 1e-12 * spec.scale());
        }
    }
}

#[test]
fn chiral_pairing_and_mirror_symmetry() {
    for spec in specs().into_iter().filter(|s| s.is_palindromic()) {
        let d = diagonalize(&spec.adjacency()).unwrap();
        let n = d.len();
        let ev = d.eigenvalues();
        for k in 0..n {
            assert!((ev[k] + ev[n - 1 - k]).abs() < 1e-12 * spec.scale());
        }
        let parities = d.parities().expect("palindromic input");
        for (k, v) in d.eigenvectors().iter().enumerate() {
            let mu: f64 = parities[k].sign();
            for j in 0..n {
                assert!((v[j] - mu * v[n - 1 - j]).abs() < 1e-8);
            }
        }
    }
}

#[test]
fn completeness() {
    for spec in specs() {
        let d = diagonalize(&spec.adjacency()).unwrap();
        let n = d.len();
        for i in 0..n {
            for j in 0..n {
                let sum: f64 = d.eigenvectors().iter().map(|v| v[i] * v[j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((sum - want).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn parity_alternates_and_splits_evenly() {
    for spec in specs()
        .into_iter()
        .filter(|s| s.is_palindromic() && s.length() % 2 == 0)
    {
        let d = diagonalize(&spec.adjacency()).unwrap();
        let p = d.parities().unwrap();
        assert_eq!(p.iter().filter(|p| **p == Parity::Even).count(), spec.length() / 2);
        for w in p.windows(2) {
            assert_ne!(w[0], w[1]);
        }
        assert_eq!(classify_parity(&d).unwrap(), p);
        // Highest mode is nodeless, so even.
        assert_eq!(*p.last().unwrap(), Parity::Even);
    }
}

#[test]
fn classify_parity_is_none_without_reflection_symmetry() {
    let m = ChainSpec::custom(vec![1.0, 0.3, 2.0], 1.0).unwrap().adjacency();
    let d = diagonalize(&m).unwrap();
    assert!(d.parities().is_none());
    assert!(classify_parity(&d).is_none());
}

#[test]
fn dimer_edge_modes_sit_inside_the_gap() {
    let delta = 0.3;
    let spec = ChainSpec::dimer(100, delta, 1.0).unwrap();
    let d = diagonalize(&spec.adjacency()).unwrap();
    let band_edge = delta * (1.0 - 1e-3);
    let inside: Vec<f64> = d
        .eigenvalues()
        .iter()
        .copied()
        .filter(|e: &f64| e.abs() < band_edge)
        .collect();
    assert_eq!(inside.len(), 2);
    assert!(inside[0] < 0.0 && inside[1] > 0.0);
    assert!(inside[1] < 1e-10);
    for e in d.eigenvalues().iter().filter(|e| e.abs() >= band_edge) {
        assert!(e.abs() <= 1.0 + 1e-12);
    }
}

#[test]
fn exponentially_small_modes_keep_relative_accuracy() {
    let delta = 0.5;
    let a: f64 = (1.0 - delta) / (1.0 + delta);
    for length in [40usize, 100, 400, 1000] {
        let m = ChainSpec::dimer(length, delta, 1.0).unwrap().adjacency();
        let e = smallest_magnitude_eigenvalue(&m).unwrap();
        // Ratio of successive gaps approaches a^2 per added dimer.
        let m2 = ChainSpec::dimer(length + 2, delta, 1.0).unwrap().adjacency();
        let e2 = smallest_magnitude_eigenvalue(&m2).unwrap();
        assert!(e > 0.0 && e2 > 0.0);
        assert!((e2 / e - a).abs() < 1e-6, "L={length}: {}", e2 / e);
    }
}

#[test]
fn endpoint_spectrum_matches_full_decomposition() {
    for spec in specs() {
        let m = spec.adjacency();
        let full = diagonalize(&m).unwrap();
        let ends = endpoint_spectrum(&m).unwrap();
        assert_eq!(EndpointModes::eigenvalues(&full), EndpointModes::eigenvalues(&ends));
        for k in 0..full.len() {
            assert!((full.endpoint_product(k) - ends.endpoint_product(k)).abs() < 1e-12);
        }
    }
}

#[test]
fn deterministic_across_threads() {
    let spec = ChainSpec::dimer(200, 0.2, 1.0).unwrap();
    let m = spec.adjacency();
    let reference = endpoint_spectrum(&m).unwrap();
    let runs: Vec<_> = {
        use rayon::prelude::*;
        (0..8).into_par_iter().map(|_| endpoint_spectrum(&m).unwrap()).collect()
    };
    for run in runs {
        assert_eq!(run, reference);
    }
}

#[test]
fn single_precision_works() {
    let m = ChainSpec::<f32>::dimer(20, 0.4, 1.0).unwrap().adjacency();
    let d = diagonalize(&m).unwrap();
    assert!(d.max_residual() < 1e-5);
    assert!(d.orthonormality_defect() < 1e-5);
}

proptest! {
    #[test]
    fn weyl_bound_under_perturbation(
        base in proptest::collection::vec(0.2f64..2.0, 3..24),
        noise in proptest::collection::vec(-0.05f64..0.05, 24),
    ) {
        let perturbed: Vec<f64> = base.iter().zip(&noise).map(|(b, n)| b + n).collect();
        let eps = noise.iter().take(base.len()).fold(0.0f64, |m, n| m.max(n.abs()));
        let a = eigenvalues(&hopping(&base)).unwrap();
        let b = eigenvalues(&hopping(&perturbed)).unwrap();
        // ||dM||_2 <= 2 * max|dJ|/2.
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= eps + 1e-12);
        }
    }

    #[test]
    fn random_chains_satisfy_invariants(couplings in proptest::collection::vec(0.05f64..3.0, 1..40)) {
        let m = hopping(&couplings);
        let d = diagonalize(&m).unwrap();
        prop_assert!(d.max_residual() < 1e-10 * m.max_abs().max(1.0));
        prop_assert!(d.orthonormality_defect() < 1e-10);
        let dense = dense_eigenvalues(&m);
        for (x, y) in d.eigenvalues().iter().zip(&dense) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }
}
