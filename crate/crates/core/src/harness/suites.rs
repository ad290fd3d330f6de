//! Suite bodies and the catalog.

use nalgebra::{DMatrix, DVector};

use super::gen::{
    gen_correlation, gen_element, gen_frame, gen_gaussian, gen_majorized_pair, gen_majorized_vectors,
    gen_orthogonal, gen_psd_matrix, gen_spectrum, gen_unitary, GenKind, POSITIVE_HI, POSITIVE_LO,
};
use super::{SuiteInfo, Trial};
use crate::algebra::{Algebra, Element};
use crate::cone::{
    derivative_kernel_psd, delta2, divided_difference_matrix, emi_local_check, geodesic_path, log_distance,
    lowner_derivative, path_lengths, perturbed_polyline, piecewise_lengths, straight_segment, LownerKernel,
    DEFAULT_PATH_SAMPLES,
};
use crate::error::Result;
use crate::majorize::{
    birkhoff_decompose, corr_abs_diff, corr_posdef_fn, corr_ratio, ds_transfer_matrix, find_positivity_violation,
    find_substochastic_violation, is_correlation, is_doubly_stochastic, majorizes, ratio_matrix, schur_power,
    weak_majorizes, BirkhoffDecomposition, ConsequenceBattery, MajorizationVerdict, PosDefFn,
};
use crate::means::{
    interpolated_quad_rep, log_mean_integral, mean_matrix, mean_transform, mean_value, MeanKind, DEFAULT_NODES,
};
use crate::peirce::{
    arithmetic_kernel, det_in_peirce_one, diag_part, idempotent_split, lyapunov, lyapunov_via_kernel, peirce_blocks,
    product_kernel, quad_rep, quad_rep_via_kernel, schur_product, CoeffMatrix, JordanFrame, FRAME_TOL,
};
use crate::rng::SplitMix64;

const DEFAULT4: &[&str] = &["realsym:4", "herm:3", "spin:5", "realsym:2+spin:3"];
const P_NORMS: [f64; 3] = [1.0, 2.0, f64::INFINITY];
/// Relative tolerance for algebraic identities.
const IDENTITY_TOL: f64 = 1e-9;
/// Relative tolerance for determinant comparisons.
const DET_TOL: f64 = 1e-7;
const POSITIVITY_PROBES: usize = 200;
const SUBSTOCHASTIC_PROBES: usize = 1000;

fn l1(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

fn abs_tol(t: &Trial, q: &[f64]) -> Option<f64> {
    t.tol.map(|r| r * l1(q).max(1.0))
}

fn maj_vec(t: &mut Trial, name: &str, p: &[f64], q: &[f64]) -> Result<MajorizationVerdict> {
    let v = majorizes(p, q, abs_tol(t, q))?;
    t.verdict(name, &v);
    Ok(v)
}

fn maj(t: &mut Trial, name: &str, x: &Element, y: &Element) -> Result<MajorizationVerdict> {
    maj_vec(t, name, &x.eigenvalues()?, &y.eigenvalues()?)
}

fn weak_maj(t: &mut Trial, name: &str, x: &Element, y: &Element) -> Result<MajorizationVerdict> {
    let q = y.eigenvalues()?;
    let v = weak_majorizes(&x.eigenvalues()?, &q, abs_tol(t, &q))?;
    t.verdict(name, &v);
    Ok(v)
}

fn battery(t: &mut Trial, name: &str, lhs: &Element, rhs: &Element, v: &MajorizationVerdict) -> Result<()> {
    let b = ConsequenceBattery::evaluate(lhs, rhs, v.tol_used)?;
    t.flag(name, b.all(), || format!("{b:?}"));
    Ok(())
}

fn dist(x: &Element, y: &Element) -> f64 {
    (x - y).norm()
}

fn input_frame(t: &mut Trial, f: &JordanFrame) {
    for e in f.idempotents() {
        t.input(e);
    }
}

fn amax1(a: &CoeffMatrix) -> f64 {
    a.matrix().amax().max(1.0)
}

/// `max(1, |λ|_max)`
fn spec_scale(x: &Element) -> Result<f64> {
    let v = x.eigenvalues()?;
    Ok(v.iter().fold(1.0f64, |m, l| m.max(l.abs())))
}

fn rel_det_tol(a: f64, b: f64, floor: f64) -> f64 {
    DET_TOL * a.abs().max(b.abs()) + floor
}

fn any(_: &Algebra) -> bool {
    true
}

fn matrix_only(alg: &Algebra) -> bool {
    alg.is_matrix()
}

fn spin_only(alg: &Algebra) -> bool {
    matches!(alg, Algebra::Spin(_))
}

fn rank_two_plus(alg: &Algebra) -> bool {
    alg.rank() >= 2
}

fn symmetric(n: usize, mut f: impl FnMut() -> f64) -> Result<CoeffMatrix> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = f();
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    CoeffMatrix::new(m)
}

fn sorted_positive(n: usize, lo: f64, hi: f64, rng: &mut SplitMix64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.uniform(lo, hi)).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Element with `|λᵢ| ≥ 0.3` on a random frame, with its frame coefficients.
fn gen_invertible(alg: &Algebra, rng: &mut SplitMix64) -> Result<(Element, JordanFrame, Vec<f64>)> {
    let frame = gen_frame(alg, rng)?;
    let spec: Vec<f64> = gen_spectrum(frame.len(), GenKind::Any, rng)?
        .into_iter()
        .map(|l| if l.abs() < 0.3 { 0.3f64.copysign(l) } else { l })
        .collect();
    Ok((frame.combine(&spec), frame, spec))
}

fn algebra_axioms(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let x = gen_element(alg, GenKind::Any, rng)?;
    let y = gen_gaussian(alg, rng)?;
    let z = gen_gaussian(alg, rng)?;
    for e in [&x, &y, &z] {
        t.input(e);
    }
    let (sx, sy, sz) = (x.scale_of(), y.scale_of(), z.scale_of());

    let x2 = x.square();
    let lhs = x.jordan(&x2.jordan(&y)?)?;
    let rhs = x2.jordan(&x.jordan(&y)?)?;
    t.small("jordan-identity", dist(&lhs, &rhs), IDENTITY_TOL * sx.powi(3) * sy);
    t.small("commutativity", dist(&x.jordan(&y)?, &y.jordan(&x)?), IDENTITY_TOL * sx * sy);
    let e = Element::unit(alg);
    t.small("unit", dist(&e.jordan(&x)?, &x), IDENTITY_TOL * sx);
    let a = x.jordan(&y)?.inner(&z)?;
    let b = x.inner(&y.jordan(&z)?)?;
    t.small("trace-associativity", (a - b).abs(), IDENTITY_TOL * sx * sy * sz);

    let sd = x.spectral()?;
    t.small("spectral-reconstruction", dist(&sd.reconstruct(), &x), 1e-10 * sx);
    t.small("spectral-frame", sd.frame.defects().max(), FRAME_TOL);
    t.flag("eigenvalues-sorted", sd.eigenvalues.windows(2).all(|w| w[0] >= w[1]), || {
        format!("{:?}", sd.eigenvalues)
    });
    t.small("trace-is-eigenvalue-sum", (x.trace() - sd.eigenvalues.iter().sum::<f64>()).abs(), 1e-10 * sx);

    let mut want: Vec<f64> = sd.eigenvalues.iter().map(|l| l.exp()).collect();
    want.sort_by(|a, b| b.total_cmp(a));
    let got = x.exp()?.eigenvalues()?;
    let worst = got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let gscale = want.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    t.small("spectral-map", worst, 1e-8 * gscale);

    if let Some(parts) = x.parts() {
        let mut merged = Vec::new();
        for p in parts {
            merged.extend(p.eigenvalues()?);
        }
        merged.sort_by(|a, b| b.total_cmp(a));
        let worst = merged.iter().zip(&sd.eigenvalues).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        t.small("direct-sum-spectrum", worst, 1e-12 * sx);
    }

    let frame = gen_frame(alg, rng)?;
    input_frame(t, &frame);
    let blocks = peirce_blocks(&y, &frame)?;
    t.small("peirce-completeness", dist(&blocks.reconstruct(), &y), 1e-10 * sy);
    let mut worst = 0.0f64;
    for (i, j, blk) in blocks.iter() {
        for (k, ek) in frame.idempotents().iter().enumerate() {
            let want = match (i == j, k == i || k == j) {
                (true, true) => 1.0,
                (false, true) => 0.5,
                _ => 0.0,
            };
            worst = worst.max(dist(&ek.jordan(blk)?, &blk.scale(want)));
        }
    }
    t.small("peirce-eigenspaces", worst, IDENTITY_TOL * sy);

    let a = gen_element(alg, GenKind::Any, rng)?;
    t.input(&a);
    let sa = a.scale_of();
    t.small("lyapunov-kernel", dist(&lyapunov_via_kernel(&a, &y)?, &lyapunov(&a, &y)?), IDENTITY_TOL * sa * sy);
    t.small(
        "quad-rep-kernel",
        dist(&quad_rep_via_kernel(&a, &y)?, &quad_rep(&a, &y)?),
        IDENTITY_TOL * sa * sa * sy,
    );
    Ok(())
}

fn thm1_positivity(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let n = alg.rank();
    let a = gen_psd_matrix(n, rng)?;
    let frame = gen_frame(alg, rng)?;
    let x = gen_element(alg, GenKind::Psd, rng)?;
    t.input_coeff(&a);
    input_frame(t, &frame);
    t.input(&x);
    let ax = schur_product(&a, &x, &frame)?;
    t.le("psd-preserved", 0.0, ax.lambda_min()?, 1e-8 * amax1(&a) * x.scale_of());

    let shifted = CoeffMatrix::new(a.matrix() + DMatrix::identity(n, n) * 0.05)?;
    let xp = gen_element(alg, GenKind::Positive, rng)?;
    t.input(&xp);
    let l = schur_product(&shifted, &xp, &frame)?.lambda_min()?;
    t.flag("positive-preserved", l > 0.0, || format!("lambda_min={l:e}"));

    if alg.is_simple() {
        let shift = a.lambda_min()? + rng.uniform(0.1, 1.0);
        let bad = CoeffMatrix::new(a.matrix() - DMatrix::identity(n, n) * shift)?;
        t.input_coeff(&bad);
        t.flag("converse-kernel-indefinite", bad.lambda_min()? <= -0.1 + 1e-12, || {
            "generated kernel is not indefinite".into()
        });
        match find_positivity_violation(&bad, alg, POSITIVITY_PROBES, rng)? {
            Some(w) => {
                let lmin = schur_product(&bad, &w.x, &w.frame)?.lambda_min()?;
                let ok = w.x.is_psd(None)? && lmin < 0.0;
                t.flag("converse-witness", ok, || format!("witness lambda_min={lmin:e}"));
                t.observe("converse-witness-lambda-min", lmin);
            }
            None => t.inconclusive("converse-witness", "no x >= 0 with A•x not >= 0 found"),
        }
    }
    Ok(())
}

fn thm2_automorphisms(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let (x, y) = gen_majorized_pair(alg, rng)?;
    t.input(&x);
    t.input(&y);
    maj(t, "average-majorized", &x, &y)?;
    let p = x.eigenvalues()?;
    let q = y.eigenvalues()?;
    let chain = ds_transfer_matrix(&p, &q, abs_tol(t, &q))?;
    let dq = &chain.product * DVector::from_column_slice(&q);
    let res = dq.iter().zip(&p).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    t.small("spectral-transfer", res, 1e-10 * l1(&q).max(1.0));

    let conj = match alg {
        Algebra::RealSym(n) => {
            let o = gen_orthogonal(*n, rng);
            Element::real_sym(&o * y.as_real_sym().expect("real symmetric") * o.transpose())?
        }
        Algebra::ComplexHerm(n) => {
            let u = gen_unitary(*n, rng);
            Element::complex_herm(&u * y.as_complex_herm().expect("hermitian") * u.adjoint())?
        }
        _ => unreachable!("matrix algebras only"),
    };
    let cq = conj.eigenvalues()?;
    let worst = cq.iter().zip(&q).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    t.small("automorphism-spectrum", worst, 1e-10 * y.scale_of());
    maj(t, "automorphism-image-majorized", &conj, &y)?;
    Ok(())
}

fn thm3_correlation(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let n = alg.rank();
    let frame = gen_frame(alg, rng)?;
    let x = gen_element(alg, GenKind::Any, rng)?;
    let recipe = rng.below(4);
    let c = match recipe {
        0 => gen_correlation(n, rng)?,
        1 => corr_ratio(&sorted_positive(n, POSITIVE_LO, POSITIVE_HI, rng))?,
        2 => corr_abs_diff(&(0..n).map(|_| rng.normal()).collect::<Vec<_>>())?,
        _ => {
            let phi = PosDefFn::ALL[rng.below(PosDefFn::ALL.len())];
            corr_posdef_fn(phi, &(0..n).map(|_| rng.normal()).collect::<Vec<_>>())?
        }
    };
    input_frame(t, &frame);
    t.input(&x);
    t.input_coeff(&c);
    t.observe("recipe", recipe as f64);
    t.flag("recipe-is-correlation", is_correlation(&c, 1e-9), || format!("{c:?}"));

    let cx = schur_product(&c, &x, &frame)?;
    maj(t, "cx-majorized-by-x", &cx, &x)?;
    let e = Element::unit(alg);
    t.small("unital", dist(&schur_product(&c, &e, &frame)?, &e), 1e-10 * n as f64);
    t.small("trace-preserving", (cx.trace() - x.trace()).abs(), 1e-10 * x.scale_of());
    let xp = gen_element(alg, GenKind::Psd, rng)?;
    t.input(&xp);
    let l = schur_product(&c, &xp, &frame)?.lambda_min()?;
    t.le("positive", 0.0, l, 1e-8 * xp.scale_of());
    Ok(())
}

/// Correlation kernel with entries bounded away from zero.
fn bounded_correlation(n: usize, rng: &mut SplitMix64) -> Result<CoeffMatrix> {
    let pts: Vec<f64> = (0..n).map(|_| 0.5 * rng.normal()).collect();
    match rng.below(3) {
        0 => corr_abs_diff(&pts),
        1 => corr_posdef_fn(PosDefFn::ExpAbs, &pts),
        _ => corr_ratio(&sorted_positive(n, 0.5, 2.0, rng)),
    }
}

fn thm4_schur_powers(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let n = alg.rank();
    let frame = gen_frame(alg, rng)?;
    let x = gen_element(alg, GenKind::Any, rng)?;
    let c = bounded_correlation(n, rng)?;
    let b = symmetric(n, || {
        let m = rng.uniform(0.5, 2.0);
        if rng.bernoulli(0.5) {
            m
        } else {
            -m
        }
    })?;
    let a = c.hadamard(&b)?;
    input_frame(t, &frame);
    t.input(&x);
    t.input_coeff(&a);
    t.input_coeff(&b);
    let ratio = ratio_matrix(&a, &b)?;
    t.flag("ratio-is-correlation", is_correlation(&ratio, 1e-9), || format!("{ratio:?}"));
    for k in [1, 2, 3, -1, -2, -3] {
        let ak = schur_product(&schur_power(&a, k)?, &x, &frame)?;
        let bk = schur_product(&schur_power(&b, k)?, &x, &frame)?;
        let (lhs, rhs) = if k > 0 { (ak, bk) } else { (bk, ak) };
        let v = maj(t, &format!("k={k}"), &lhs, &rhs)?;
        battery(t, &format!("consequences k={k}"), &lhs, &rhs, &v)?;
    }
    Ok(())
}

fn eq12_pa_la(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let (a, frame, coeffs) = gen_invertible(alg, rng)?;
    let x = gen_gaussian(alg, rng)?;
    t.input(&a);
    t.input(&x);
    let sx = x.scale_of();
    let top = coeffs.iter().fold(1.0f64, |m, l| m.max(l.abs()));
    let bottom = coeffs.iter().fold(f64::INFINITY, |m, l| m.min(l.abs()));
    let pk_kernel = product_kernel(&coeffs);
    let lk_kernel = arithmetic_kernel(&coeffs.iter().map(|v| v * v).collect::<Vec<_>>());

    let a2 = a.square();
    let (mut pk, mut lk) = (x.clone(), x.clone());
    for k in 1..=3 {
        pk = quad_rep(&a, &pk)?;
        lk = a2.jordan(&lk)?;
        let v = maj(t, &format!("pa^{k} vs la2^{k}"), &pk, &lk)?;
        if k == 1 {
            battery(t, "consequences k=1", &pk, &lk, &v)?;
        }
        let scale = top.powi(2 * k) * sx;
        let via_p = schur_product(&schur_power(&pk_kernel, k)?, &x, &frame)?;
        let via_l = schur_product(&schur_power(&lk_kernel, k)?, &x, &frame)?;
        t.small(&format!("pa^{k} schur route"), dist(&via_p, &pk), IDENTITY_TOL * scale);
        t.small(&format!("la2^{k} schur route"), dist(&via_l, &lk), IDENTITY_TOL * scale);
    }
    for k in [-1, -2, -3] {
        let ak = schur_product(&schur_power(&pk_kernel, k)?, &x, &frame)?;
        let bk = schur_product(&schur_power(&lk_kernel, k)?, &x, &frame)?;
        maj(t, &format!("reversal k={k}"), &bk, &ak)?;
        if k == -1 {
            let direct = quad_rep(&a.inverse()?, &x)?;
            t.small("inverse-quad-rep", dist(&direct, &ak), IDENTITY_TOL * bottom.powi(-2) * sx);
        }
    }
    Ok(())
}

fn eq13_corollary(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let n = alg.rank();
    let a = gen_psd_matrix(n, rng)?;
    let frame = gen_frame(alg, rng)?;
    let x = gen_element(alg, GenKind::Any, rng)?;
    t.input_coeff(&a);
    input_frame(t, &frame);
    t.input(&x);
    let d = a.diagonal();
    let b = CoeffMatrix::from_fn(n, |i, j| (d[i] * d[j]).sqrt());
    let ax = schur_product(&a, &x, &frame)?;
    let bx = schur_product(&b, &x, &frame)?;
    let v = maj(t, "ax-majorized-by-p-sqrt-diag", &ax, &bx)?;
    battery(t, "consequences", &ax, &bx, &v)?;
    let root = frame.combine(&d.iter().map(|v| v.sqrt()).collect::<Vec<_>>());
    t.small("quad-rep-route", dist(&quad_rep(&root, &x)?, &bx), IDENTITY_TOL * amax1(&a) * x.scale_of());
    let dmax = d.iter().fold(0.0f64, |m, v| m.max(*v));
    for p in P_NORMS {
        let bound = dmax * x.p_norm(p)?;
        t.le(&format!("norm-bound p={p}"), ax.p_norm(p)?, bound, 1e-8 * bound.max(1.0));
    }

    let c = gen_element(alg, GenKind::Any, rng)?;
    t.input(&c);
    maj(t, "pc-majorized-by-p-abs-c", &quad_rep(&c, &x)?, &quad_rep(&c.abs()?, &x)?)?;
    Ok(())
}

/// Absolute floor for determinant comparisons whose true value may vanish.
fn det_floor(a: &CoeffMatrix, x: &Element) -> Result<f64> {
    Ok(1e-12 * (amax1(a) * spec_scale(x)?).powi(x.rank() as i32))
}

fn eq14_det(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let n = alg.rank();
    let a = gen_psd_matrix(n, rng)?;
    let frame = gen_frame(alg, rng)?;
    let x = gen_element(alg, GenKind::Psd, rng)?;
    t.input_coeff(&a);
    input_frame(t, &frame);
    t.input(&x);
    let lhs = a.diagonal().iter().product::<f64>() * x.det()?;
    let rhs = schur_product(&a, &x, &frame)?.det()?;
    t.le("det-lower-bound", lhs, rhs, rel_det_tol(lhs, rhs, det_floor(&a, &x)?));

    let r = gen_element(alg, GenKind::Positive, rng)?;
    t.input(&r);
    let got = quad_rep(&r, &x)?.det()?;
    let want = r.det()?.powi(2) * x.det()?;
    let floor = 1e-12 * (spec_scale(&r)?.powi(2) * spec_scale(&x)?).powi(n as i32);
    t.small("det-quad-rep", (got - want).abs(), IDENTITY_TOL * got.abs().max(want.abs()) + floor);
    Ok(())
}

fn schur_hadamard_oppenheim(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let n = alg.rank();
    let frame = gen_frame(alg, rng)?;
    let x = gen_element(alg, GenKind::Any, rng)?;
    input_frame(t, &frame);
    t.input(&x);
    maj(t, "diag-majorized-schur", &diag_part(&x, &frame)?, &x)?;

    let xp = gen_element(alg, GenKind::Psd, rng)?;
    let a = gen_psd_matrix(n, rng)?;
    t.input(&xp);
    t.input_coeff(&a);
    let floor = det_floor(&a, &xp)?;
    let det_x = xp.det()?;
    let det_diag = diag_part(&xp, &frame)?.det()?;
    t.le("hadamard", det_x, det_diag, rel_det_tol(det_x, det_diag, floor));
    let prod = a.diagonal().iter().product::<f64>();
    let det_ax = schur_product(&a, &xp, &frame)?.det()?;
    t.le("oppenheim-lower", prod * det_x, det_ax, rel_det_tol(prod * det_x, det_ax, floor));
    t.le("oppenheim-upper", det_ax, prod * det_diag, rel_det_tol(det_ax, prod * det_diag, floor));
    Ok(())
}

fn fischer_split(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let n = alg.rank();
    let frame = gen_frame(alg, rng)?;
    let k = 1 + rng.below(n - 1);
    let subset: Vec<usize> = rng.permutation(n)[..k].to_vec();
    let c = frame.partial_unit(&subset);
    let x = gen_element(alg, GenKind::Any, rng)?;
    input_frame(t, &frame);
    t.input(&c);
    t.input(&x);
    let sx = x.scale_of();
    let s = idempotent_split(&x, &c)?;
    let uw = &s.u + &s.w;
    maj(t, "u+w-majorized-by-x", &uw, &x)?;
    let inside: Vec<bool> = (0..n).map(|i| subset.contains(&i)).collect();
    let block = CoeffMatrix::from_fn(n, |i, j| if inside[i] == inside[j] { 1.0 } else { 0.0 });
    t.small("block-schur-route", dist(&schur_product(&block, &x, &frame)?, &uw), 1e-10 * sx);
    let worst = [
        dist(&c.jordan(&s.u)?, &s.u),
        c.jordan(&s.w)?.norm(),
        dist(&c.jordan(&s.v)?, &s.v.scale(0.5)),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    t.small("peirce-eigenspaces", worst, IDENTITY_TOL * sx);

    let xp = gen_element(alg, GenKind::Psd, rng)?;
    t.input(&xp);
    let sp = idempotent_split(&xp, &c)?;
    let comp = &Element::unit(alg) - &c;
    let lhs = xp.det()?;
    let rhs = det_in_peirce_one(&sp.u, &c)? * det_in_peirce_one(&sp.w, &comp)?;
    let floor = 1e-12 * spec_scale(&xp)?.powi(n as i32);
    t.le("fischer", lhs, rhs, rel_det_tol(lhs, rhs, floor));
    Ok(())
}

/// `f(A)` through nalgebra's symmetric eigensolver.
fn dense_fn(a: &DMatrix<f64>, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
    let se = a.clone().symmetric_eigen();
    let d = DMatrix::from_diagonal(&se.eigenvalues.map(f));
    &se.eigenvectors * d * se.eigenvectors.transpose()
}

fn dense_means(t: &mut Trial, a: &Element, x: &Element, tt: f64, scale: f64) -> Result<()> {
    let (Some(am), Some(xm)) = (a.as_real_sym(), x.as_real_sym()) else {
        return Ok(());
    };
    let rs = dense_fn(am, f64::sqrt);
    let geo = &rs * xm * &rs;
    let at = dense_fn(am, |l| l.powf(tt));
    let as_ = dense_fn(am, |l| l.powf(1.0 - tt));
    let interp = (&at * xm * &as_ + &as_ * xm * &at) * 0.5;
    let lyap = (am * xm + xm * am) * 0.5;
    let harm = mean_transform(MeanKind::Harmonic, a, x)?;
    let hm = harm.as_real_sym().expect("real symmetric");
    let ainv = am.clone().try_inverse().expect("positive definite");
    let harm_res = (&ainv * hm + hm * &ainv) * 0.5 - xm;
    let cases = [
        ("dense sqrt-quad", (quad_rep(&a.sqrt()?, x)?.as_real_sym().expect("real") - geo).norm()),
        ("dense interpolated", (interpolated_quad_rep(a, x, tt)?.as_real_sym().expect("real") - interp).norm()),
        ("dense lyapunov", (lyapunov(a, x)?.as_real_sym().expect("real") - lyap).norm()),
        ("dense harmonic", harm_res.norm() / ainv.norm().max(1.0)),
    ];
    for (name, r) in cases {
        t.small(name, r, IDENTITY_TOL * scale);
    }
    Ok(())
}

/// Worst violation over random scalar pairs of symmetry, betweenness and `H ≤ G ≤ L ≤ A`.
fn mean_invariants(rng: &mut SplitMix64, pairs: usize) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..pairs {
        let s = rng.uniform((1e-3f64).ln(), (1e3f64).ln()).exp();
        let rel = match rng.below(4) {
            0 => rng.normal(),
            1 => 1e-6 * rng.normal(),
            2 => 1e-12 * rng.normal(),
            _ => 0.0,
        };
        let r = (s * (1.0 + rel)).abs().max(1e-300);
        let (lo, hi) = (s.min(r), s.max(r));
        let slack = 4.0 * f64::EPSILON * hi;
        let mut vals = Vec::with_capacity(4);
        for k in MeanKind::ALL {
            let m = mean_value(k, s, r)?;
            worst = worst.max((m - mean_value(k, r, s)?).abs() - slack);
            worst = worst.max(lo - m - slack).max(m - hi - slack);
            vals.push(m);
        }
        for w in vals.windows(2) {
            worst = worst.max(w[0] - w[1] - slack);
        }
    }
    Ok(worst)
}

fn mean_chains(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let a = gen_element(alg, GenKind::Positive, rng)?;
    let x = gen_element(alg, GenKind::Any, rng)?;
    let tt = rng.uniform(0.0, 1.0);
    t.input(&a);
    t.input(&x);
    t.input_scalars(&[tt]);
    let scale = x.scale_of() * spec_scale(&a)?;

    let h = mean_transform(MeanKind::Harmonic, &a, &x)?;
    let g = quad_rep(&a.sqrt()?, &x)?;
    let l = log_mean_integral(&a, &x, DEFAULT_NODES)?;
    let ar = lyapunov(&a, &x)?;
    let pt = interpolated_quad_rep(&a, &x, tt)?;
    maj(t, "harmonic < sqrt-quad", &h, &g)?;
    maj(t, "sqrt-quad < log-integral", &g, &l)?;
    maj(t, "log-integral < lyapunov", &l, &ar)?;
    maj(t, "sqrt-quad < interpolated", &g, &pt)?;
    maj(t, "interpolated < lyapunov", &pt, &ar)?;

    let kernel: Vec<Element> = MeanKind::ALL
        .iter()
        .map(|&k| mean_transform(k, &a, &x))
        .collect::<Result<_>>()?;
    for (i, w) in kernel.windows(2).enumerate() {
        let name = format!("m{} < m{}", MeanKind::ALL[i].letter(), MeanKind::ALL[i + 1].letter());
        maj(t, &name, &w[0], &w[1])?;
    }
    t.small("log-mean-quadrature", dist(&l, &kernel[2]), IDENTITY_TOL * scale);
    t.small("geometric-kernel-route", dist(&g, &kernel[1]), IDENTITY_TOL * scale);
    t.small("arithmetic-kernel-route", dist(&ar, &kernel[3]), IDENTITY_TOL * scale);
    dense_means(t, &a, &x, tt, scale)?;
    let worst = mean_invariants(rng, 50)?;
    t.small("scalar-mean-invariants", worst.max(0.0), 0.0);
    Ok(())
}

fn spin_means(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let Algebra::Spin(d) = alg else {
        unreachable!("spin algebras only")
    };
    let mut dir: Vec<f64> = (0..d - 1).map(|_| rng.normal()).collect();
    if dir.iter().all(|v| *v == 0.0) {
        dir[0] = 1.0;
    }
    let frame = JordanFrame::spin_direction(&dir)?;
    let (lo, hi) = (POSITIVE_LO.ln(), POSITIVE_HI.ln());
    let spec = [rng.uniform(lo, hi).exp(), rng.uniform(lo, hi).exp()];
    let x = gen_gaussian(alg, rng)?;
    input_frame(t, &frame);
    t.input_scalars(&spec);
    t.input(&x);
    let images: Vec<Element> = MeanKind::ALL
        .iter()
        .map(|&k| schur_product(&mean_matrix(k, &spec)?, &x, &frame))
        .collect::<Result<_>>()?;
    for i in 0..4 {
        for j in i + 1..4 {
            let name = format!("m{} < m{}", MeanKind::ALL[i].letter(), MeanKind::ALL[j].letter());
            maj(t, &name, &images[i], &images[j])?;
        }
    }
    let off: Vec<f64> = MeanKind::ALL
        .iter()
        .map(|&k| mean_value(k, spec[0], spec[1]))
        .collect::<Result<_>>()?;
    t.flag("off-diagonal-ordered", off.windows(2).all(|w| w[0] <= w[1] * (1.0 + 1e-15)), || {
        format!("{off:?}")
    });
    Ok(())
}

fn eq20_emi_local(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let a = gen_element(alg, GenKind::Any, rng)?.scale(0.5);
    let x = gen_element(alg, GenKind::Any, rng)?;
    t.input(&a);
    t.input(&x);
    for (i, p) in P_NORMS.into_iter().enumerate() {
        let r = emi_local_check(&a, &x, p, None)?;
        if i == 0 {
            maj(t, "x-majorized-by-bx", &x, &r.bx)?;
            t.small("kernel-residual", r.kernel_residual, IDENTITY_TOL);
        }
        t.le(&format!("norm p={p}"), r.norm_x, r.norm_bx, 1e-8 * r.norm_bx.max(1.0));
    }
    Ok(())
}

fn unit_direction(alg: &Algebra, rng: &mut SplitMix64) -> Result<Element> {
    let x = gen_gaussian(alg, rng)?;
    let n = x.norm();
    Ok(if n > 0.0 { x.scale(1.0 / n) } else { Element::unit(alg) })
}

fn central_difference(
    f: impl Fn(&Element) -> Result<Element>,
    a: &Element,
    x: &Element,
    h: f64,
) -> Result<Element> {
    Ok((&f(&a.axpy(h, x))? - &f(&a.axpy(-h, x))?).scale(0.5 / h))
}

fn lowner_derivative_suite(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let h = 1e-5;
    let a = gen_element(alg, GenKind::Any, rng)?.scale(0.5);
    let b = gen_element(alg, GenKind::Positive, rng)?;
    let x = unit_direction(alg, rng)?;
    let y = unit_direction(alg, rng)?;
    for e in [&a, &b, &x, &y] {
        t.input(e);
    }
    let exp_scale = spec_scale(&a.exp()?)?;
    let fd = central_difference(|z| z.exp(), &a, &x, h)?;
    let d = lowner_derivative(&LownerKernel::Exp, &a, &x)?;
    t.small("exp finite-difference", dist(&fd, &d), 1e-6 * exp_scale);

    let log_scale = 1.0f64.max(1.0 / b.lambda_min()?);
    let fd = central_difference(|z| z.log(), &b, &x, h)?;
    let d = lowner_derivative(&LownerKernel::Log, &b, &x)?;
    t.small("log finite-difference", dist(&fd, &d), 1e-6 * log_scale);

    let sq = lowner_derivative(&LownerKernel::Square, &a, &x)?;
    t.small("square closed-form", dist(&sq, &a.jordan(&x)?.scale(2.0)), 1e-10 * a.scale_of());
    let id = lowner_derivative(&LownerKernel::Identity, &a, &x)?;
    t.small("identity closed-form", dist(&id, &x), 1e-12);

    let combo = x.axpy(2.0, &y);
    let lhs = lowner_derivative(&LownerKernel::Exp, &a, &combo)?;
    let rhs = lowner_derivative(&LownerKernel::Exp, &a, &x)?.axpy(2.0, &lowner_derivative(&LownerKernel::Exp, &a, &y)?);
    t.small("linearity", dist(&lhs, &rhs), 1e-10 * 3.0 * exp_scale);

    let log_psd = derivative_kernel_psd(&LownerKernel::Log, &b, 1e-12 * log_scale)?;
    t.flag("log-kernel-psd", log_psd, || "divided differences of log not PSD".into());
    let exp_kernel = divided_difference_matrix(&LownerKernel::Exp, &a.eigenvalues()?)?;
    t.observe("exp-kernel-lambda-min", exp_kernel.lambda_min()?);
    Ok(())
}

fn eq21_22_emi_global(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let u = gen_element(alg, GenKind::Positive, rng)?;
    let v = gen_element(alg, GenKind::Positive, rng)?;
    t.input(&u);
    t.input(&v);
    let target: Vec<f64> = P_NORMS.iter().map(|&p| log_distance(&u, &v, p)).collect::<Result<_>>()?;
    let geo = path_lengths(&geodesic_path(&u, &v, DEFAULT_PATH_SAMPLES)?, &P_NORMS)?;
    let straight = path_lengths(&straight_segment(&u, &v, DEFAULT_PATH_SAMPLES)?, &P_NORMS)?;
    let pieces = perturbed_polyline(&u, &v, 3, 0.5, 33, rng)?;
    let poly = piecewise_lengths(&pieces, &P_NORMS)?;
    for (family, lens) in [("geodesic", &geo), ("straight", &straight), ("polyline", &poly)] {
        for ((p, l), d) in P_NORMS.iter().zip(lens).zip(&target) {
            t.le(
                &format!("{family} p={p}"),
                *d,
                l.value + l.error_budget,
                1e-9 * d.max(1.0),
            );
        }
    }

    let frame = gen_frame(alg, rng)?;
    let n = frame.len();
    let su = gen_spectrum(n, GenKind::Positive, rng)?;
    let sv = gen_spectrum(n, GenKind::Positive, rng)?;
    let (cu, cv) = (frame.combine(&su), frame.combine(&sv));
    input_frame(t, &frame);
    t.input(&cu);
    t.input(&cv);
    let lens = path_lengths(&geodesic_path(&cu, &cv, DEFAULT_PATH_SAMPLES)?, &P_NORMS)?;
    for (p, l) in P_NORMS.iter().zip(&lens) {
        let d = log_distance(&cu, &cv, *p)?;
        t.small(&format!("commuting-equality p={p}"), (l.value - d).abs(), 1e-6 * d.max(1.0));
    }
    Ok(())
}

fn delta2_metric(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let u = gen_element(alg, GenKind::Positive, rng)?;
    let v = gen_element(alg, GenKind::Positive, rng)?;
    let w = gen_element(alg, GenKind::Positive, rng)?;
    let rf = gen_frame(alg, rng)?;
    let rs: Vec<f64> = (0..rf.len()).map(|_| rng.uniform(-1.0, 1.0).exp()).collect();
    let r = rf.combine(&rs);
    for e in [&u, &v, &w, &r] {
        t.input(e);
    }
    let tol = 1e-8;
    let d_uv = delta2(&u, &v)?;
    let d_vu = delta2(&v, &u)?;
    let d_vw = delta2(&v, &w)?;
    let d_uw = delta2(&u, &w)?;
    t.small("identity", delta2(&u, &u)?, tol);
    t.small("symmetry", (d_uv - d_vu).abs(), tol * d_uv.max(1.0));
    let (pu, pv) = (quad_rep(&r, &u)?, quad_rep(&r, &v)?);
    t.small("isometry p=2", (delta2(&pu, &pv)? - d_uv).abs(), tol * d_uv.max(1.0));
    t.le("triangle", d_uw, d_uv + d_vw, tol * (d_uv + d_vw).max(1.0));
    t.le("log-distance-lower-bound", log_distance(&u, &v, 2.0)?, d_uv, tol * d_uv.max(1.0));

    let geo = geodesic_path(&u, &v, DEFAULT_PATH_SAMPLES)?;
    let lens = path_lengths(&geo, &P_NORMS)?;
    t.le("path-length-upper-bound", d_uv, lens[1].value + lens[1].error_budget, tol * d_uv.max(1.0));
    let image = path_lengths(&geo.quad_rep_image(&r)?, &P_NORMS)?;
    for i in [0, 2] {
        t.observe(&format!("isometry-gap p={}", P_NORMS[i]), image[i].value - lens[i].value);
    }
    t.observe("isometry-gap p=2", image[1].value - lens[1].value);

    let n = rf.len();
    let su = gen_spectrum(n, GenKind::Positive, rng)?;
    let sv = gen_spectrum(n, GenKind::Positive, rng)?;
    t.input_scalars(&su);
    t.input_scalars(&sv);
    let want = su.iter().zip(&sv).map(|(a, b)| (b / a).ln().powi(2)).sum::<f64>().sqrt();
    let got = delta2(&rf.combine(&su), &rf.combine(&sv))?;
    t.small("commuting-closed-form", (got - want).abs(), tol * want.max(1.0));
    Ok(())
}

fn weak_substochastic(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let n = alg.rank();
    let raw = gen_psd_matrix(n, rng)?;
    let dmax = raw.diagonal().iter().fold(0.0f64, |m, v| m.max(*v));
    let a = if dmax > 0.0 {
        let s = rng.uniform(0.3, 1.0) / dmax;
        raw.map(|v| v * s)
    } else {
        raw
    };
    let frame = gen_frame(alg, rng)?;
    let x = gen_element(alg, GenKind::Psd, rng)?;
    t.input_coeff(&a);
    input_frame(t, &frame);
    t.input(&x);
    t.flag("diagonal-at-most-one", a.diagonal().iter().all(|&v| v <= 1.0), || format!("{:?}", a.diagonal()));
    weak_maj(t, "ax-weakly-majorized", &schur_product(&a, &x, &frame)?, &x)?;

    let mut c = gen_correlation(n, rng)?.matrix().clone();
    let k = rng.below(n);
    c[(k, k)] += 0.1;
    let c = CoeffMatrix::new(c)?;
    t.input_coeff(&c);
    match find_substochastic_violation(&c, &frame, SUBSTOCHASTIC_PROBES, rng)? {
        Some(wit) => {
            let ok = wit.x.is_psd(None)? && !wit.verdict.holds;
            t.flag("converse-witness", ok, || format!("witness at probe {}", wit.trial));
            t.observe("converse-witness-probe", wit.trial as f64);
        }
        None => t.inconclusive("converse-witness", "no weak-majorization failure found"),
    }
    Ok(())
}

fn birkhoff_checks(t: &mut Trial, label: &str, d: &DMatrix<f64>) -> Result<()> {
    let n = d.nrows();
    let bd = birkhoff_decompose(d)?;
    t.small(&format!("{label} reconstruct"), (bd.reconstruct() - d).amax(), 1e-10);
    t.small(&format!("{label} weight-sum"), (bd.total_weight() - 1.0).abs(), 1e-12);
    t.le(
        &format!("{label} term-count"),
        bd.terms.len() as f64,
        BirkhoffDecomposition::term_bound(n) as f64,
        0.0,
    );
    t.flag(&format!("{label} weights"), bd.terms.iter().all(|w| w.weight > 0.0 && w.weight <= 1.0 + 1e-12), || {
        "weight outside (0, 1]".into()
    });
    Ok(())
}

fn transfer_checks(t: &mut Trial, label: &str, p: &[f64], q: &[f64]) -> Result<DMatrix<f64>> {
    let n = p.len();
    let chain = ds_transfer_matrix(p, q, abs_tol(t, q))?;
    let d = chain.product.clone();
    let dq = &d * DVector::from_column_slice(q);
    let res = dq.iter().zip(p).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    t.small(&format!("{label} dq=p"), res, 1e-10 * l1(q));
    t.le(&format!("{label} t-transform-count"), chain.transforms.len() as f64, n.saturating_sub(1) as f64, 0.0);
    t.flag(&format!("{label} doubly-stochastic"), is_doubly_stochastic(&d, 1e-12), || format!("{d}"));
    let mut prod = DMatrix::identity(n, n);
    for m in chain.matrices() {
        prod = m * prod;
    }
    t.small(&format!("{label} factor-product"), (prod - &d).amax(), 1e-12);
    Ok(d)
}

fn hlp_birkhoff(t: &mut Trial, alg: &Algebra, rng: &mut SplitMix64) -> Result<()> {
    let n = alg.rank();
    let terms = 1 + rng.below(4);
    let vp = gen_majorized_vectors(n, terms, rng);
    t.input_scalars(&vp.p);
    t.input_scalars(&vp.q);
    maj_vec(t, "p-majorized-by-q", &vp.p, &vp.q)?;
    let d = transfer_checks(t, "vectors", &vp.p, &vp.q)?;
    birkhoff_checks(t, "birkhoff d0", &vp.d0)?;
    birkhoff_checks(t, "birkhoff transfer", &d)?;

    maj_vec(t, "reflexive", &vp.q, &vp.q)?;
    let second = gen_majorized_vectors(n, terms, rng);
    let p2: Vec<f64> = (0..n).map(|i| (0..n).map(|j| second.d0[(i, j)] * vp.p[j]).sum()).collect();
    maj_vec(t, "transitive", &p2, &vp.q)?;
    let perm = rng.permutation(n);
    let qp: Vec<f64> = perm.iter().map(|&i| vp.q[i]).collect();
    let fwd = majorizes(&qp, &vp.q, None)?.holds;
    let back = majorizes(&vp.q, &qp, None)?.holds;
    t.flag("antisymmetric-up-to-permutation", fwd && back, || "permuted vector not equivalent".into());

    if alg.is_matrix() {
        let (x, y) = gen_majorized_pair(alg, rng)?;
        t.input(&x);
        t.input(&y);
        transfer_checks(t, "spectra", &x.eigenvalues()?, &y.eigenvalues()?)?;
    }
    Ok(())
}

pub(crate) static CATALOG: &[SuiteInfo] = &[
    SuiteInfo {
        name: "algebra-axioms",
        description: "Jordan identity, trace-form associativity, spectral reconstruction, Peirce blocks",
        default_algebras: DEFAULT4,
        default_trials: 200,
        supports: any,
        run: algebra_axioms,
    },
    SuiteInfo {
        name: "thm1-positivity",
        description: "A PSD implies A•x >= 0 for x >= 0; indefinite A admits a witness in simple algebras",
        default_algebras: DEFAULT4,
        default_trials: 500,
        supports: any,
        run: thm1_positivity,
    },
    SuiteInfo {
        name: "thm2-automorphisms",
        description: "convex combinations of automorphism images are majorized",
        default_algebras: &["realsym:4", "herm:3"],
        default_trials: 300,
        supports: matrix_only,
        run: thm2_automorphisms,
    },
    SuiteInfo {
        name: "thm3-correlation",
        description: "correlation A gives A•x ≺ x, unital and trace preserving",
        default_algebras: DEFAULT4,
        default_trials: 500,
        supports: any,
        run: thm3_correlation,
    },
    SuiteInfo {
        name: "thm4-schur-powers",
        description: "A^(k)•x ≺ B^(k)•x for k = 1..3 and the reversal for k = -1..-3",
        default_algebras: DEFAULT4,
        default_trials: 300,
        supports: any,
        run: thm4_schur_powers,
    },
    SuiteInfo {
        name: "eq12-pa-la",
        description: "P_a^k(x) ≺ L_{a²}^k(x) for k = 1..3 and the inverse-power reversal",
        default_algebras: DEFAULT4,
        default_trials: 300,
        supports: any,
        run: eq12_pa_la,
    },
    SuiteInfo {
        name: "eq13-corollary",
        description: "A•x ≺ P_{√diag A}(x) for PSD A, norm bounds, P_c ≺ P_|c|",
        default_algebras: DEFAULT4,
        default_trials: 300,
        supports: any,
        run: eq13_corollary,
    },
    SuiteInfo {
        name: "eq14-det",
        description: "(Π a_ii) det x <= det(A•x) for PSD A and x >= 0",
        default_algebras: DEFAULT4,
        default_trials: 300,
        supports: any,
        run: eq14_det,
    },
    SuiteInfo {
        name: "schur-hadamard-oppenheim",
        description: "Diag(x) ≺ x, Hadamard and Oppenheim determinant inequalities",
        default_algebras: DEFAULT4,
        default_trials: 300,
        supports: any,
        run: schur_hadamard_oppenheim,
    },
    SuiteInfo {
        name: "fischer-split",
        description: "u + w ≺ x for the idempotent split and the Fischer determinant inequality",
        default_algebras: DEFAULT4,
        default_trials: 300,
        supports: rank_two_plus,
        run: fischer_split,
    },
    SuiteInfo {
        name: "mean-chains",
        description: "harmonic ≺ geometric ≺ logarithmic ≺ arithmetic transformation chains",
        default_algebras: DEFAULT4,
        default_trials: 200,
        supports: any,
        run: mean_chains,
    },
    SuiteInfo {
        name: "spin-means",
        description: "every ordered pair of mean transformations in spin algebras",
        default_algebras: &["spin:3", "spin:5"],
        default_trials: 200,
        supports: spin_only,
        run: spin_means,
    },
    SuiteInfo {
        name: "eq20-emi-local",
        description: "x ≺ B•x for the sinh kernel B and the norm consequence",
        default_algebras: DEFAULT4,
        default_trials: 300,
        supports: any,
        run: eq20_emi_local,
    },
    SuiteInfo {
        name: "lowner-derivative",
        description: "divided-difference derivative against central differences",
        default_algebras: DEFAULT4,
        default_trials: 200,
        supports: any,
        run: lowner_derivative_suite,
    },
    SuiteInfo {
        name: "eq21-22-emi-global",
        description: "path lengths dominate ‖log u − log v‖_p over three path families",
        default_algebras: DEFAULT4,
        default_trials: 200,
        supports: any,
        run: eq21_22_emi_global,
    },
    SuiteInfo {
        name: "delta2-metric",
        description: "δ₂ symmetry, P_r isometry, triangle inequality and bounds",
        default_algebras: DEFAULT4,
        default_trials: 200,
        supports: any,
        run: delta2_metric,
    },
    SuiteInfo {
        name: "weak-substochastic",
        description: "PSD A with diagonal <= 1 gives A•x ≺_w x; a_kk > 1 yields a witness",
        default_algebras: DEFAULT4,
        default_trials: 300,
        supports: any,
        run: weak_substochastic,
    },
    SuiteInfo {
        name: "hlp-birkhoff",
        description: "T-transform synthesis Dq = p and Birkhoff decomposition round trips",
        default_algebras: &["realsym:3", "realsym:5", "realsym:8", "herm:4"],
        default_trials: 50,
        supports: any,
        run: hlp_birkhoff,
    },
];
