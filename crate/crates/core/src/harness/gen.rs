//! Seeded generators of algebra elements, frames and coefficient matrices.
//! Every generator validates its output before returning it.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Complex64, Element};
use crate::error::{Error, Result};
use crate::majorize::{corr_normalize, is_correlation, majorizes_elements};
use crate::peirce::{CoeffMatrix, JordanFrame, FRAME_TOL};
use crate::rng::SplitMix64;

/// Probability that a generated spectrum gets a duplicated eigenvalue.
pub const DEGENERATE_RATE: f64 = 0.1;
/// Positive spectra are drawn log-uniformly from `[POSITIVE_LO, POSITIVE_HI]`.
pub const POSITIVE_LO: f64 = 0.1;
pub const POSITIVE_HI: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    Any,
    Psd,
    Positive,
    Idempotent,
    Frame,
    Correlation,
    PsdMatrix,
}

#[derive(Clone, Debug)]
pub enum Generated {
    Element(Element),
    Frame(JordanFrame),
    Coeff(CoeffMatrix),
}

/// Draws a value of `kind` in `alg` (coefficient matrices are `rank × rank`).
pub fn gen_value(alg: &Algebra, kind: GenKind, rng: &mut SplitMix64) -> Result<Generated> {
    let n = alg.rank();
    Ok(match kind {
        GenKind::Any | GenKind::Psd | GenKind::Positive | GenKind::Idempotent => {
            Generated::Element(gen_element(alg, kind, rng)?)
        }
        GenKind::Frame => Generated::Frame(gen_frame(alg, rng)?),
        GenKind::Correlation => Generated::Coeff(gen_correlation(n, rng)?),
        GenKind::PsdMatrix => Generated::Coeff(gen_psd_matrix(n, rng)?),
    })
}

/// Element with Gaussian coordinates.
pub fn gen_gaussian(alg: &Algebra, rng: &mut SplitMix64) -> Result<Element> {
    let len = Element::zero(alg).coords().len();
    let c: Vec<f64> = (0..len).map(|_| rng.normal()).collect();
    Element::from_coords(alg, &c)
}

/// Jacobi (spectral) frame of a Gaussian element, revalidated.
pub fn gen_frame(alg: &Algebra, rng: &mut SplitMix64) -> Result<JordanFrame> {
    let sd = gen_gaussian(alg, rng)?.spectral()?;
    let frame = JordanFrame::new(alg.clone(), sd.frame.idempotents().to_vec())?;
    let order = rng.permutation(frame.len());
    Ok(frame.permuted(&order))
}

fn maybe_degenerate(v: &mut [f64], rng: &mut SplitMix64) {
    if v.len() >= 2 && rng.bernoulli(DEGENERATE_RATE) {
        let i = rng.below(v.len());
        let mut j = rng.below(v.len() - 1);
        if j >= i {
            j += 1;
        }
        v[j] = v[i];
    }
}

/// Spectrum of `n` values for `kind` (`Any`, `Psd` or `Positive`).
pub fn gen_spectrum(n: usize, kind: GenKind, rng: &mut SplitMix64) -> Result<Vec<f64>> {
    let mut v: Vec<f64> = match kind {
        GenKind::Any => (0..n).map(|_| 2.0 * rng.normal()).collect(),
        GenKind::Psd => (0..n)
            .map(|_| if rng.bernoulli(0.15) { 0.0 } else { rng.uniform(0.0, 5.0) })
            .collect(),
        GenKind::Positive => {
            let (lo, hi) = (POSITIVE_LO.ln(), POSITIVE_HI.ln());
            (0..n).map(|_| rng.uniform(lo, hi).exp()).collect()
        }
        other => return Err(Error::Usage(format!("{other:?} is not a spectrum kind"))),
    };
    maybe_degenerate(&mut v, rng);
    Ok(v)
}

/// Element of `kind` built spectrally on a random frame (idempotents are
/// sums of a random nonempty subset of the frame).
pub fn gen_element(alg: &Algebra, kind: GenKind, rng: &mut SplitMix64) -> Result<Element> {
    let frame = gen_frame(alg, rng)?;
    let n = frame.len();
    let x = match kind {
        GenKind::Idempotent => {
            let k = 1 + rng.below(n);
            let subset: Vec<usize> = rng.permutation(n)[..k].to_vec();
            frame.partial_unit(&subset)
        }
        GenKind::Any | GenKind::Psd | GenKind::Positive => frame.combine(&gen_spectrum(n, kind, rng)?),
        other => return Err(Error::Usage(format!("{other:?} is not an element kind"))),
    };
    validate_element(&x, kind)?;
    Ok(x)
}

fn validate_element(x: &Element, kind: GenKind) -> Result<()> {
    let ok = match kind {
        GenKind::Psd => x.is_psd(None)?,
        GenKind::Positive => x.is_positive(Some(0.5 * POSITIVE_LO))?,
        GenKind::Idempotent => (&x.square() - x).norm() <= FRAME_TOL * x.scale_of(),
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Numeric(format!("generated {kind:?} element failed validation")))
    }
}

/// `G Gᵀ / n` with `G` Gaussian `n × r`, `r` random in `1..=n` (rank deficient at times).
pub fn gen_psd_matrix(n: usize, rng: &mut SplitMix64) -> Result<CoeffMatrix> {
    let r = if rng.bernoulli(DEGENERATE_RATE) { 1 + rng.below(n) } else { n };
    let g = DMatrix::from_fn(n, r, |_, _| rng.normal());
    let m = CoeffMatrix::new(&g * g.transpose() / n as f64)?;
    if !m.is_psd(1e-12 * m.matrix().norm().max(1.0))? {
        return Err(Error::Numeric("generated PSD matrix failed validation".into()));
    }
    Ok(m)
}

/// `corr_normalize(G Gᵀ + εI)`, `ε = 1e−3`.
pub fn gen_correlation(n: usize, rng: &mut SplitMix64) -> Result<CoeffMatrix> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.normal());
    let m = CoeffMatrix::new(&g * g.transpose() + DMatrix::identity(n, n) * 1e-3)?;
    let c = corr_normalize(&m)?;
    if !is_correlation(&c, 1e-9) {
        return Err(Error::Numeric("generated correlation matrix failed validation".into()));
    }
    Ok(c)
}

/// Haar-like orthogonal matrix (QR of a Gaussian matrix with sign fix).
pub fn gen_orthogonal(n: usize, rng: &mut SplitMix64) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.normal());
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

pub fn gen_unitary(n: usize, rng: &mut SplitMix64) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.normal(), rng.normal()));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let m = d.norm();
        if m > 0.0 {
            let phase = d / m;
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// `(x, y)` with `x = Σ wₖ Qₖ y Qₖ*` for three random orthogonal or unitary
/// `Qₖ` and simplex weights, so that `x ≺ y`.
pub fn gen_majorized_pair(alg: &Algebra, rng: &mut SplitMix64) -> Result<(Element, Element)> {
    let terms = 3;
    let y = gen_element(alg, GenKind::Any, rng)?;
    let w = rng.simplex(terms);
    let x = match alg {
        Algebra::RealSym(n) => {
            let ym = y.as_real_sym().expect("real symmetric");
            let mut acc = DMatrix::zeros(*n, *n);
            for wk in &w {
                let q = gen_orthogonal(*n, rng);
                acc += (&q * ym * q.transpose()) * *wk;
            }
            Element::real_sym(acc)?
        }
        Algebra::ComplexHerm(n) => {
            let ym = y.as_complex_herm().expect("hermitian");
            let mut acc = DMatrix::<Complex64>::zeros(*n, *n);
            for wk in &w {
                let q = gen_unitary(*n, rng);
                acc += (&q * ym * q.adjoint()).map(|z| z * *wk);
            }
            Element::complex_herm(acc)?
        }
        other => return Err(Error::Usage(format!("{other} is not a matrix algebra"))),
    };
    if !majorizes_elements(&x, &y, None)?.holds {
        return Err(Error::Numeric("generated pair is not majorized".into()));
    }
    Ok((x, y))
}

/// `p = D₀ q` with `D₀` a convex combination of `terms` random permutations.
#[derive(Clone, Debug)]
pub struct VectorPair {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub d0: DMatrix<f64>,
}

pub fn gen_majorized_vectors(n: usize, terms: usize, rng: &mut SplitMix64) -> VectorPair {
    let mut q: Vec<f64> = (0..n).map(|_| 2.0 * rng.normal()).collect();
    maybe_degenerate(&mut q, rng);
    let w = rng.simplex(terms);
    let mut d0 = DMatrix::zeros(n, n);
    for wk in w {
        for (i, j) in rng.permutation(n).into_iter().enumerate() {
            d0[(i, j)] += wk;
        }
    }
    let p = (0..n).map(|i| (0..n).map(|j| d0[(i, j)] * q[j]).sum()).collect();
    VectorPair { p, q, d0 }
}
