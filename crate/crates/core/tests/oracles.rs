//! Comparisons against independent implementations.

use approx::assert_relative_eq;
use eja::cone::{divided_difference, LownerKernel};
use eja::linalg::eigh;
use eja::means::{mean_value, MeanKind};
use eja::quadrature::gauss_legendre_unit;
use eja::rng::SplitMix64;
use eja::{Complex64, Element};
use nalgebra::DMatrix;

#[test]
fn jacobi_matches_nalgebra_symmetric_eigen() {
    let mut rng = SplitMix64::new(11);
    for n in 1..=7 {
        for _ in 0..20 {
            let g = DMatrix::from_fn(n, n, |_, _| rng.normal());
            let a = &g + g.transpose();
            let mut want: Vec<f64> = a.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
            want.sort_by(|x, y| y.total_cmp(x));
            let mut got = eigh(&a).unwrap().values;
            got.sort_by(|x, y| y.total_cmp(x));
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() <= 1e-11 * a.norm().max(1.0), "{g} vs {w}");
            }
        }
    }
}

#[test]
fn hermitian_eigenvalues_match_real_embedding() {
    // [[Re, -Im], [Im, Re]] has each eigenvalue of H twice
    let mut rng = SplitMix64::new(12);
    for n in 1..=4 {
        let g = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.normal(), rng.normal()));
        let h = &g + g.adjoint();
        let mut big = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let z = h[(i, j)];
                big[(i, j)] = z.re;
                big[(i + n, j + n)] = z.re;
                big[(i, j + n)] = -z.im;
                big[(i + n, j)] = z.im;
            }
        }
        let mut want: Vec<f64> = big.symmetric_eigen().eigenvalues.iter().copied().collect();
        want.sort_by(|x, y| y.total_cmp(x));
        let got = Element::complex_herm(h).unwrap().eigenvalues().unwrap();
        for (k, g) in got.iter().enumerate() {
            assert!((g - want[2 * k]).abs() < 1e-10);
            assert!((g - want[2 * k + 1]).abs() < 1e-10);
        }
    }
}

#[test]
fn gauss_legendre_integrates_known_functions() {
    let five: f64 = gauss_legendre_unit(5).iter().map(|(x, w)| w * x.exp()).sum();
    // 5-node error term is (5!)⁴/(11·(10!)³)·e^ξ ≈ 4e−13 on [0, 1]
    assert_relative_eq!(five, std::f64::consts::E - 1.0, max_relative = 1e-12);
    for n in [8, 16, 20, 32] {
        let rule = gauss_legendre_unit(n);
        let q = |f: &dyn Fn(f64) -> f64| rule.iter().map(|(x, w)| w * f(*x)).sum::<f64>();
        assert_relative_eq!(q(&|x: f64| x.exp()), std::f64::consts::E - 1.0, max_relative = 1e-13);
        assert_relative_eq!(q(&|x: f64| (std::f64::consts::PI * x).sin()), 2.0 / std::f64::consts::PI, max_relative = 1e-9);
    }
}

#[test]
fn log_mean_matches_midpoint_quadrature_of_its_integral() {
    // m_L(t, s) = ∫₀¹ t^u s^{1−u} du, integrated by a fine composite midpoint rule
    let mut rng = SplitMix64::new(13);
    for _ in 0..50 {
        let t = rng.uniform(-2.0, 2.0).exp();
        let s = rng.uniform(-2.0, 2.0).exp();
        let m = 20_000;
        let num: f64 = (0..m)
            .map(|k| {
                let u = (k as f64 + 0.5) / m as f64;
                t.powf(u) * s.powf(1.0 - u)
            })
            .sum::<f64>()
            / m as f64;
        assert_relative_eq!(mean_value(MeanKind::Logarithmic, t, s).unwrap(), num, max_relative = 1e-8);
    }
}

#[test]
fn divided_differences_match_central_differences() {
    let h = 1e-6;
    for (t, s) in [(0.3, 1.7), (2.0, 2.0 + 1e-9), (1.0, 1.0)] {
        let exp_dd = divided_difference(&LownerKernel::Exp, t, s).unwrap();
        let want = if (t - s).abs() > 1e-3 {
            (f64::exp(t) - f64::exp(s)) / (t - s)
        } else {
            let m = 0.5 * (t + s);
            (f64::exp(m + h) - f64::exp(m - h)) / (2.0 * h)
        };
        assert_relative_eq!(exp_dd, want, max_relative = 1e-8);
    }
}
