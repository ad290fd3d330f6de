use eja::harness::{gen_correlation, gen_frame, gen_majorized_vectors};
use eja::majorize::{
    birkhoff_decompose, ds_transfer_matrix, is_doubly_stochastic, majorizes, majorizes_elements, BirkhoffDecomposition,
};
use eja::peirce::schur_product;
use eja::rng::SplitMix64;
use eja::{Algebra, CoeffMatrix, Element};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn apply(d: &DMatrix<f64>, v: &[f64]) -> Vec<f64> {
    (d * DVector::from_column_slice(v)).iter().copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn majorization_is_reflexive(q in prop::collection::vec(-5.0f64..5.0, 1..9)) {
        prop_assert!(majorizes(&q, &q, None).unwrap().holds);
    }

    #[test]
    fn hlp_and_birkhoff_round_trip(n in 1usize..9, terms in 1usize..5, seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let vp = gen_majorized_vectors(n, terms, &mut rng);
        let chain = ds_transfer_matrix(&vp.p, &vp.q, None).unwrap();
        let norm: f64 = vp.q.iter().map(|v| v.abs()).sum();
        let dq = apply(&chain.product, &vp.q);
        for (a, b) in dq.iter().zip(&vp.p) {
            prop_assert!((a - b).abs() <= 1e-10 * norm.max(f64::MIN_POSITIVE));
        }
        prop_assert!(chain.transforms.len() < n.max(1));
        prop_assert!(is_doubly_stochastic(&chain.product, 1e-12));
        for d in [&vp.d0, &chain.product] {
            let bd = birkhoff_decompose(d).unwrap();
            prop_assert!((bd.reconstruct() - d).amax() <= 1e-10);
            prop_assert!(bd.terms.len() <= BirkhoffDecomposition::term_bound(n));
            prop_assert!((bd.total_weight() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn transitivity(n in 2usize..8, seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let a = gen_majorized_vectors(n, 3, &mut rng);
        let b = gen_majorized_vectors(n, 3, &mut rng);
        let r = apply(&b.d0, &a.p);
        prop_assert!(majorizes(&r, &a.p, None).unwrap().holds);
        prop_assert!(majorizes(&r, &a.q, None).unwrap().holds);
    }

    #[test]
    fn mutual_majorization_means_equal_sorted(q in prop::collection::vec(-5.0f64..5.0, 2..8), rot in 0usize..8) {
        let mut p = q.clone();
        let k = rot % p.len();
        p.rotate_left(k);
        prop_assert!(majorizes(&p, &q, None).unwrap().holds && majorizes(&q, &p, None).unwrap().holds);
    }

    #[test]
    fn moving_mass_upward_breaks_majorization(q in prop::collection::vec(-5.0f64..5.0, 2..8), eps in 1e-3f64..1.0) {
        // p with a larger top entry and equal total cannot be majorized by q
        let mut p = q.clone();
        let (imax, _) = p.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        let imin = if imax == 0 { 1 } else { 0 };
        p[imax] += eps;
        p[imin] -= eps;
        let v = majorizes(&p, &q, None).unwrap();
        prop_assert!(!v.holds);
        prop_assert!(v.margin() < 0.0);
    }
}

#[test]
fn correlation_schur_products_are_doubly_stochastic() {
    let mut rng = SplitMix64::new(31);
    for alg in ["realsym:4", "herm:3", "spin:4", "realsym:1+spin:3"] {
        let alg: Algebra = alg.parse().unwrap();
        for _ in 0..50 {
            let c = gen_correlation(alg.rank(), &mut rng).unwrap();
            let frame = gen_frame(&alg, &mut rng).unwrap();
            let len = Element::zero(&alg).coords().len();
            let x = Element::from_coords(&alg, &(0..len).map(|_| rng.normal()).collect::<Vec<_>>()).unwrap();
            let cx = schur_product(&c, &x, &frame).unwrap();
            assert!(majorizes_elements(&cx, &x, None).unwrap().holds);
        }
    }
}

#[test]
fn non_unital_kernel_is_detected() {
    // diagonal 2 doubles the trace, so majorization must fail
    let alg = Algebra::RealSym(3);
    let mut rng = SplitMix64::new(32);
    let frame = gen_frame(&alg, &mut rng).unwrap();
    let a = CoeffMatrix::new(DMatrix::identity(3, 3) * 2.0).unwrap();
    let x = Element::real_sym_rows(3, &[3.0, 1.0, 0.0, 1.0, 2.0, 0.5, 0.0, 0.5, 1.0]).unwrap();
    let ax = schur_product(&a, &x, &frame).unwrap();
    let v = majorizes_elements(&ax, &x, None).unwrap();
    assert!(!v.holds);
    assert!((v.trace_gap + x.trace()).abs() < 1e-12);
}
