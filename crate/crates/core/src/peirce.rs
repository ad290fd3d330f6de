//! Jordan frames, Peirce decompositions and Schur-product transformations.
//!
//! Relative to a Jordan frame `{e₁,…,eₙ}` every element splits as
//! `x = Σ_{i≤j} x_ij` with `x_ii = P_{eᵢ}(x)` and `x_ij = 4 eᵢ∘(eⱼ∘x)` for
//! `i < j`. The Schur product `A•x = Σ a_ij x_ij` scales each block by the
//! matching entry of a real symmetric coefficient matrix.

use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg;

/// Tolerance used when validating a frame at construction.
pub const FRAME_TOL: f64 = 1e-8;

/// An ordered complete system of orthogonal primitive idempotents.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanFrame {
    algebra: Algebra,
    idempotents: Vec<Element>,
}

/// Largest defect found by [`JordanFrame::defects`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FrameDefects {
    pub idempotent: f64,
    pub orthogonal: f64,
    pub completeness: f64,
    pub trace: f64,
}

impl FrameDefects {
    pub fn max(&self) -> f64 {
        self.idempotent
            .max(self.orthogonal)
            .max(self.completeness)
            .max(self.trace)
    }
}

impl JordanFrame {
    /// Validates `eᵢ² = eᵢ`, `eᵢ∘eⱼ = 0`, `Σ eᵢ = e` and `tr(eᵢ) = 1` within [`FRAME_TOL`].
    pub fn new(algebra: Algebra, idempotents: Vec<Element>) -> Result<Self> {
        algebra.validate()?;
        if idempotents.len() != algebra.rank() {
            return Err(Error::Usage(format!(
                "frame needs {} idempotents for {algebra}, got {}",
                algebra.rank(),
                idempotents.len()
            )));
        }
        let probe = Element::zero(&algebra);
        for c in &idempotents {
            probe.check_same(c)?;
        }
        let frame = JordanFrame {
            algebra,
            idempotents,
        };
        let d = frame.defects();
        if d.max() > FRAME_TOL {
            return Err(Error::Usage(format!("invalid Jordan frame: {d:?}")));
        }
        Ok(frame)
    }

    /// Frames produced internally (e.g. by the eigensolver) skip validation.
    pub(crate) fn trusted(algebra: Algebra, idempotents: Vec<Element>) -> Self {
        JordanFrame {
            algebra,
            idempotents,
        }
    }

    /// Diagonal matrix units for matrix algebras, `½(1, ±ε₁)` for spin,
    /// concatenated summand frames for direct sums.
    pub fn canonical(algebra: &Algebra) -> Self {
        let idempotents = match algebra {
            Algebra::RealSym(n) | Algebra::ComplexHerm(n) => {
                let n = *n;
                (0..n)
                    .map(|i| {
                        let mut d = vec![0.0; n * n];
                        d[i * n + i] = 1.0;
                        if matches!(algebra, Algebra::RealSym(_)) {
                            Element::real_sym_rows(n, &d).expect("square")
                        } else {
                            let mut c = vec![0.0; 2 * n * n];
                            c[2 * (i * n + i)] = 1.0;
                            Element::from_coords(algebra, &c).expect("coords")
                        }
                    })
                    .collect()
            }
            Algebra::Spin(d) => {
                let mut u = vec![0.0; d - 1];
                u[0] = 1.0;
                return Self::spin_direction(&u).expect("unit axis");
            }
            Algebra::DirectSum(parts) => {
                let mut out = Vec::with_capacity(algebra.rank());
                for (idx, p) in parts.iter().enumerate() {
                    for c in JordanFrame::canonical(p).idempotents {
                        out.push(Element::embed(parts, idx, c));
                    }
                }
                out
            }
        };
        JordanFrame {
            algebra: algebra.clone(),
            idempotents,
        }
    }

    /// Spin frame `{½(1, u), ½(1, −u)}` for a nonzero direction `u` (normalized here).
    pub fn spin_direction(u: &[f64]) -> Result<Self> {
        let r = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(r > 0.0) {
            return Err(Error::Usage("spin frame direction must be nonzero".into()));
        }
        let plus: Vec<f64> = u.iter().map(|v| 0.5 * v / r).collect();
        let minus: Vec<f64> = plus.iter().map(|v| -v).collect();
        Ok(JordanFrame {
            algebra: Algebra::Spin(u.len() + 1),
            idempotents: vec![Element::spin(0.5, &plus)?, Element::spin(0.5, &minus)?],
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn idempotents(&self) -> &[Element] {
        &self.idempotents
    }

    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    /// `Σ cᵢ eᵢ`
    pub fn combine(&self, coeffs: &[f64]) -> Element {
        assert_eq!(coeffs.len(), self.len(), "coefficient count must equal frame size");
        let mut acc = Element::zero(&self.algebra);
        for (c, e) in coeffs.iter().zip(&self.idempotents) {
            if *c != 0.0 {
                acc = acc.axpy(*c, e);
            }
        }
        acc
    }

    /// Sum of a subset of the frame, an idempotent of rank `subset.len()`.
    pub fn partial_unit(&self, subset: &[usize]) -> Element {
        let mut coeffs = vec![0.0; self.len()];
        for &i in subset {
            coeffs[i] = 1.0;
        }
        self.combine(&coeffs)
    }

    /// Reorders the frame; `order[k]` is the old index placed at position `k`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        JordanFrame {
            algebra: self.algebra.clone(),
            idempotents: order.iter().map(|&i| self.idempotents[i].clone()).collect(),
        }
    }

    /// Absolute defects of the four frame identities.
    pub fn defects(&self) -> FrameDefects {
        let mut d = FrameDefects::default();
        let mut sum = Element::zero(&self.algebra);
        for (i, ei) in self.idempotents.iter().enumerate() {
            d.idempotent = d.idempotent.max((&ei.square() - ei).norm());
            d.trace = d.trace.max((ei.trace() - 1.0).abs());
            for ej in &self.idempotents[i + 1..] {
                d.orthogonal = d.orthogonal.max(ei.jordan_unchecked(ej).norm());
            }
            sum = &sum + ei;
        }
        d.completeness = (&sum - &Element::unit(&self.algebra)).norm();
        d
    }
}

impl Serialize for JordanFrame {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.idempotents.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JordanFrame {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let idem = Vec::<Element>::deserialize(d)?;
        let alg = idem
            .first()
            .map(Element::algebra)
            .ok_or_else(|| serde::de::Error::custom("empty frame"))?;
        JordanFrame::new(alg, idem).map_err(serde::de::Error::custom)
    }
}

/// Real symmetric `n × n` matrix of Schur-product coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffMatrix(DMatrix<f64>);

impl CoeffMatrix {
    /// Symmetrizes `(M + Mᵀ)/2`.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: m.nrows().max(1),
                got: m.ncols(),
            });
        }
        let t = m.transpose();
        Ok(CoeffMatrix((m + t) * 0.5))
    }

    pub fn from_rows(n: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        Self::new(DMatrix::from_row_slice(n, n, entries))
    }

    /// Builds from `f(i, j)` evaluated on `i ≤ j` and mirrored.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        CoeffMatrix(m)
    }

    /// `𝟙ₙₓₙ`
    pub fn ones(n: usize) -> Self {
        CoeffMatrix(DMatrix::from_element(n, n, 1.0))
    }

    pub fn identity(n: usize) -> Self {
        CoeffMatrix(DMatrix::identity(n, n))
    }

    /// Entry `a_ij`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn map(&self, f: impl FnMut(f64) -> f64) -> Self {
        CoeffMatrix(self.0.map(f))
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.0[(i, i)]).collect()
    }

    /// Entrywise (matrix Schur) product.
    pub fn hadamard(&self, other: &CoeffMatrix) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(CoeffMatrix(self.0.component_mul(&other.0)))
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::sym_eigenvalues(&self.0)
    }

    pub fn lambda_min(&self) -> Result<f64> {
        Ok(*self.eigenvalues()?.last().expect("n >= 1"))
    }

    pub fn is_psd(&self, tol: f64) -> Result<bool> {
        Ok(self.lambda_min()? >= -tol)
    }

    /// Row-major entries.
    pub fn entries(&self) -> Vec<f64> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffRepr {
    n: usize,
    entries: Vec<f64>,
}

impl Serialize for CoeffMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoeffRepr {
            n: self.n(),
            entries: self.entries(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoeffMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CoeffRepr::deserialize(d)?;
        CoeffMatrix::from_rows(r.n, &r.entries).map_err(serde::de::Error::custom)
    }
}

/// `[(λᵢ + λⱼ)/2]`, the kernel of `L_a` on the spectral frame of `a`.
pub fn arithmetic_kernel(spectrum: &[f64]) -> CoeffMatrix {
    CoeffMatrix::from_fn(spectrum.len(), |i, j| 0.5 * (spectrum[i] + spectrum[j]))
}

/// `[λᵢ λⱼ]`, the kernel of `P_a` on the spectral frame of `a`.
pub fn product_kernel(spectrum: &[f64]) -> CoeffMatrix {
    CoeffMatrix::from_fn(spectrum.len(), |i, j| spectrum[i] * spectrum[j])
}

/// Peirce blocks `x_ij`, `i ≤ j`, of an element relative to a frame.
#[derive(Clone, Debug)]
pub struct PeirceBlocks {
    pub frame: JordanFrame,
    blocks: Vec<Element>,
}

fn tri_index(n: usize, i: usize, j: usize) -> usize {
    // row-major upper triangle including the diagonal
    i * n - i * (i + 1) / 2 + j
}

impl PeirceBlocks {
    /// Block `x_ij`; the pair is unordered.
    pub fn block(&self, i: usize, j: usize) -> &Element {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        &self.blocks[tri_index(self.frame.len(), i, j)]
    }

    /// `(i, j, x_ij)` in row-major upper-triangular order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Element)> {
        let n = self.frame.len();
        (0..n)
            .flat_map(move |i| (i..n).map(move |j| (i, j)))
            .zip(&self.blocks)
            .map(|((i, j), b)| (i, j, b))
    }

    pub fn reconstruct(&self) -> Element {
        let mut acc = Element::zero(self.frame.algebra());
        for b in &self.blocks {
            acc = &acc + b;
        }
        acc
    }
}

fn check_frame_for(x: &Element, frame: &JordanFrame) -> Result<()> {
    match frame.idempotents.first() {
        Some(e) if e.same_algebra(x) => Ok(()),
        Some(e) => Err(Error::AlgebraMismatch {
            left: x.algebra(),
            right: e.algebra(),
        }),
        None => Err(Error::Usage("empty frame".into())),
    }
}

/// Peirce decomposition of `x` relative to `frame`.
pub fn peirce_blocks(x: &Element, frame: &JordanFrame) -> Result<PeirceBlocks> {
    check_frame_for(x, frame)?;
    let n = frame.len();
    let e = frame.idempotents();
    let ex: Vec<Element> = e.iter().map(|c| c.jordan_unchecked(x)).collect();
    let mut blocks = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            let b = if i == j {
                // P_{eᵢ}(x) = 2 eᵢ∘(eᵢ∘x) − eᵢ∘x
                e[i].jordan_unchecked(&ex[i]).scale(2.0).axpy(-1.0, &ex[i])
            } else {
                e[i].jordan_unchecked(&ex[j]).scale(4.0)
            };
            blocks.push(b);
        }
    }
    Ok(PeirceBlocks {
        frame: frame.clone(),
        blocks,
    })
}

/// `A•x = Σ_{i≤j} a_ij x_ij` relative to `frame`.
pub fn schur_product(a: &CoeffMatrix, x: &Element, frame: &JordanFrame) -> Result<Element> {
    check_frame_for(x, frame)?;
    let n = frame.len();
    if a.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.n(),
        });
    }
    let e = frame.idempotents();
    let ex: Vec<Element> = e.iter().map(|c| c.jordan_unchecked(x)).collect();
    let mut acc = Element::zero(frame.algebra());
    for i in 0..n {
        let aii = a.get(i, i);
        if aii != 0.0 {
            let xii = e[i].jordan_unchecked(&ex[i]).scale(2.0).axpy(-1.0, &ex[i]);
            acc = acc.axpy(aii, &xii);
        }
        for j in (i + 1)..n {
            let aij = a.get(i, j);
            if aij != 0.0 {
                acc = acc.axpy(4.0 * aij, &e[i].jordan_unchecked(&ex[j]));
            }
        }
    }
    Ok(acc)
}

/// Lyapunov transformation `L_a(x) = a∘x`.
pub fn lyapunov(a: &Element, x: &Element) -> Result<Element> {
    a.jordan(x)
}

/// Quadratic representation `P_a(x) = 2a∘(a∘x) − a²∘x`.
pub fn quad_rep(a: &Element, x: &Element) -> Result<Element> {
    a.check_same(x)?;
    let ax = a.jordan_unchecked(x);
    let aax = a.jordan_unchecked(&ax);
    let a2x = a.square().jordan_unchecked(x);
    Ok(aax.scale(2.0).axpy(-1.0, &a2x))
}

/// `P_{u,v}(x) = u∘(v∘x) + v∘(u∘x) − (u∘v)∘x`.
pub fn quad_rep2(u: &Element, v: &Element, x: &Element) -> Result<Element> {
    u.check_same(v)?;
    u.check_same(x)?;
    let uvx = u.jordan_unchecked(&v.jordan_unchecked(x));
    let vux = v.jordan_unchecked(&u.jordan_unchecked(x));
    let uv_x = u.jordan_unchecked(v).jordan_unchecked(x);
    Ok((&uvx + &vux).axpy(-1.0, &uv_x))
}

/// `L_a` evaluated as a Schur product with the arithmetic kernel on `a`'s spectral frame.
pub fn lyapunov_via_kernel(a: &Element, x: &Element) -> Result<Element> {
    a.check_same(x)?;
    let sd = a.spectral()?;
    schur_product(&arithmetic_kernel(&sd.eigenvalues), x, &sd.frame)
}

/// `P_a` evaluated as a Schur product with the product kernel on `a`'s spectral frame.
pub fn quad_rep_via_kernel(a: &Element, x: &Element) -> Result<Element> {
    a.check_same(x)?;
    let sd = a.spectral()?;
    schur_product(&product_kernel(&sd.eigenvalues), x, &sd.frame)
}

/// `Diag(x) = Σ x_ii`
pub fn diag_part(x: &Element, frame: &JordanFrame) -> Result<Element> {
    schur_product(&CoeffMatrix::identity(frame.len()), x, frame)
}

/// Peirce split `x = u + v + w` relative to an idempotent `c`, where
/// `u ∈ V(c,1)`, `v ∈ V(c,½)`, `w ∈ V(c,0)`.
#[derive(Clone, Debug)]
pub struct IdempotentSplit {
    pub u: Element,
    pub v: Element,
    pub w: Element,
}

pub fn idempotent_split(x: &Element, c: &Element) -> Result<IdempotentSplit> {
    x.check_same(c)?;
    let scale = c.scale_of();
    if c.norm() <= FRAME_TOL {
        return Err(Error::Usage("idempotent must be nonzero".into()));
    }
    let defect = (&c.square() - c).norm();
    if defect > FRAME_TOL * scale {
        return Err(Error::Usage(format!(
            "element is not idempotent (|c² − c| = {defect:e})"
        )));
    }
    let u = quad_rep(c, x)?;
    let comp = &Element::unit(&c.algebra()) - c;
    let w = quad_rep(&comp, x)?;
    let v = &(x - &u) - &w;
    Ok(IdempotentSplit { u, v, w })
}

/// Determinant of `u ∈ V(c,1)` computed inside the subalgebra with unit `c`,
/// i.e. the product of the `tr(c)` eigenvalues of `u` carried by `c`.
pub fn det_in_peirce_one(u: &Element, c: &Element) -> Result<f64> {
    u.check_same(c)?;
    let comp = &Element::unit(&c.algebra()) - c;
    (u + &comp).det()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Element, b: &Element, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn m2(a: f64, b: f64, c: f64) -> Element {
        Element::real_sym_rows(2, &[a, b, b, c]).unwrap()
    }

    #[test]
    fn canonical_frames_are_valid() {
        for alg in [
            Algebra::RealSym(3),
            Algebra::ComplexHerm(2),
            Algebra::Spin(4),
            Algebra::DirectSum(vec![Algebra::RealSym(2), Algebra::Spin(3)]),
        ] {
            let f = JordanFrame::canonical(&alg);
            assert_eq!(f.len(), alg.rank());
            assert!(f.defects().max() < 1e-15, "{alg}");
            assert!(JordanFrame::new(alg.clone(), f.idempotents().to_vec()).is_ok());
        }
    }

    #[test]
    fn invalid_frames_rejected() {
        let alg = Algebra::RealSym(2);
        let bad = vec![Element::diag(&[1.0, 0.0]), Element::diag(&[1.0, 0.0])];
        assert!(matches!(JordanFrame::new(alg.clone(), bad), Err(Error::Usage(_))));
        assert!(JordanFrame::new(alg, vec![Element::diag(&[1.0, 1.0])]).is_err());
    }

    #[test]
    fn peirce_matrix_entries() {
        let x = m2(2.0, 1.0, 2.0);
        let f = JordanFrame::canonical(&Algebra::RealSym(2));
        let pb = peirce_blocks(&x, &f).unwrap();
        assert!(close(pb.block(0, 0), &Element::diag(&[2.0, 0.0]), 1e-15));
        assert!(close(pb.block(1, 1), &Element::diag(&[0.0, 2.0]), 1e-15));
        assert!(close(pb.block(0, 1), &m2(0.0, 1.0, 0.0), 1e-15));
        assert!(close(&pb.reconstruct(), &x, 1e-15));
    }

    #[test]
    fn peirce_of_unit() {
        let alg = Algebra::ComplexHerm(3);
        let e = Element::unit(&alg);
        let f = JordanFrame::canonical(&alg);
        let pb = peirce_blocks(&e, &f).unwrap();
        for (i, j, b) in pb.iter() {
            if i == j {
                assert!(close(b, &f.idempotents()[i], 1e-15));
            } else {
                assert!(b.norm() < 1e-15);
            }
        }
    }

    #[test]
    fn peirce_spin_off_block() {
        // direction (1,0): x = (0,(0,1)) lies entirely in V₁₂.
        let f = JordanFrame::spin_direction(&[1.0, 0.0]).unwrap();
        let x = Element::spin(0.0, &[0.0, 1.0]).unwrap();
        let pb = peirce_blocks(&x, &f).unwrap();
        assert!(pb.block(0, 0).norm() < 1e-15);
        assert!(pb.block(1, 1).norm() < 1e-15);
        assert!(close(pb.block(0, 1), &x, 1e-15));
    }

    #[test]
    fn schur_examples() {
        let x = m2(2.0, 1.0, 2.0);
        let f = JordanFrame::canonical(&Algebra::RealSym(2));
        let a = CoeffMatrix::from_rows(2, &[1.0, 2.0, 2.0, 1.0]).unwrap();
        assert!(close(&schur_product(&a, &x, &f).unwrap(), &m2(2.0, 2.0, 2.0), 1e-15));
        assert!(close(&schur_product(&CoeffMatrix::ones(2), &x, &f).unwrap(), &x, 1e-15));
        let d = schur_product(&CoeffMatrix::identity(2), &x, &f).unwrap();
        assert!(close(&d, &Element::diag(&[2.0, 2.0]), 1e-15));
        assert!(close(&diag_part(&x, &f).unwrap(), &d, 0.0));
        assert!(matches!(
            schur_product(&CoeffMatrix::ones(3), &x, &f),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lyapunov_and_quad_examples() {
        let a = Element::diag(&[1.0, 3.0]);
        let x = m2(0.0, 1.0, 0.0);
        assert!(close(&lyapunov(&a, &x).unwrap(), &m2(0.0, 2.0, 0.0), 1e-15));
        assert!(close(&quad_rep(&a, &x).unwrap(), &m2(0.0, 3.0, 0.0), 1e-15));
        let e = Element::unit(&Algebra::RealSym(2));
        assert!(close(&lyapunov(&e, &x).unwrap(), &x, 0.0));
        assert!(close(&lyapunov(&a, &e).unwrap(), &a, 0.0));
        assert!(close(&quad_rep(&e, &x).unwrap(), &x, 0.0));
        assert!(close(&quad_rep2(&a, &a, &x).unwrap(), &quad_rep(&a, &x).unwrap(), 1e-14));
        assert!(close(&quad_rep2(&e, &a, &x).unwrap(), &lyapunov(&a, &x).unwrap(), 1e-14));
        assert!(close(&lyapunov_via_kernel(&a, &x).unwrap(), &m2(0.0, 2.0, 0.0), 1e-14));
        assert!(close(&quad_rep_via_kernel(&a, &x).unwrap(), &m2(0.0, 3.0, 0.0), 1e-14));
    }

    #[test]
    fn split_examples() {
        let x = m2(2.0, 1.0, 2.0);
        let s = idempotent_split(&x, &Element::diag(&[1.0, 0.0])).unwrap();
        assert!(close(&s.u, &Element::diag(&[2.0, 0.0]), 1e-15));
        assert!(close(&s.v, &m2(0.0, 1.0, 0.0), 1e-15));
        assert!(close(&s.w, &Element::diag(&[0.0, 2.0]), 1e-15));

        let e = Element::unit(&Algebra::RealSym(2));
        let s = idempotent_split(&x, &e).unwrap();
        assert!(close(&s.u, &x, 1e-15) && s.v.norm() < 1e-15 && s.w.norm() < 1e-15);

        assert!(idempotent_split(&x, &Element::diag(&[2.0, 0.0])).is_err());
        assert!(idempotent_split(&x, &Element::diag(&[0.0, 0.0])).is_err());
    }

    #[test]
    fn det_inside_subalgebra() {
        let u = Element::diag(&[3.0, 0.0, 0.0]);
        let c = Element::diag(&[1.0, 0.0, 0.0]);
        assert!((det_in_peirce_one(&u, &c).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn coeff_matrix_json() {
        let a = CoeffMatrix::from_rows(2, &[1.0, 0.25, 0.75, 1.0]).unwrap();
        assert_eq!(a.get(0, 1), 0.5);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"n":2,"entries":[1.0,0.5,0.5,1.0]}"#);
        let b: CoeffMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn frame_json_validates() {
        let f = JordanFrame::canonical(&Algebra::Spin(3));
        let s = serde_json::to_string(&f).unwrap();
        let g: JordanFrame = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        let bad = r#"[{"algebra":{"kind":"realsym","n":2},"coords":[1,0,0,0]},
                      {"algebra":{"kind":"realsym","n":2},"coords":[1,0,0,0]}]"#;
        assert!(serde_json::from_str::<JordanFrame>(bad).is_err());
    }
}
