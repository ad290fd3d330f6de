//! Concrete Euclidean Jordan algebras and their elements.
//!
//! Supported algebras are real symmetric matrices `Sⁿ`, complex Hermitian
//! matrices `Hⁿ`, the Jordan spin algebra on `R × R^{d-1}` and finite direct
//! sums of those. Every element carries its own coordinates; the algebra
//! descriptor is derived from them, so two elements compose only when their
//! shapes agree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;
use crate::peirce::JordanFrame;

pub type Complex64 = nalgebra::Complex<f64>;

/// Relative reconstruction tolerance promised by [`Element::spectral`].
pub const SPECTRAL_RTOL: f64 = 1e-10;

/// Below `SPIN_DEGENERATE · max(1, |x₀|)` the spin vector part is treated as zero.
const SPIN_DEGENERATE: f64 = 1e-14;

/// Descriptor of a Euclidean Jordan algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    /// `n × n` real symmetric matrices.
    RealSym(usize),
    /// `n × n` complex Hermitian matrices.
    ComplexHerm(usize),
    /// Jordan spin algebra of ambient dimension `d ≥ 2` (rank 2).
    Spin(usize),
    DirectSum(Vec<Algebra>),
}

impl Algebra {
    pub fn rank(&self) -> usize {
        match self {
            Algebra::RealSym(n) | Algebra::ComplexHerm(n) => *n,
            Algebra::Spin(_) => 2,
            Algebra::DirectSum(parts) => parts.iter().map(Algebra::rank).sum(),
        }
    }

    /// Ambient real dimension.
    pub fn dim(&self) -> usize {
        match self {
            Algebra::RealSym(n) => n * (n + 1) / 2,
            Algebra::ComplexHerm(n) => n * n,
            Algebra::Spin(d) => *d,
            Algebra::DirectSum(parts) => parts.iter().map(Algebra::dim).sum(),
        }
    }

    /// Simple algebras are the non-decomposable ones. `Spin(2)` is isomorphic
    /// to `R ⊕ R` and a direct sum of two or more parts is never simple.
    pub fn is_simple(&self) -> bool {
        match self {
            Algebra::Spin(d) => *d >= 3,
            Algebra::DirectSum(parts) => parts.len() == 1 && parts[0].is_simple(),
            _ => true,
        }
    }

    pub fn is_matrix(&self) -> bool {
        matches!(self, Algebra::RealSym(_) | Algebra::ComplexHerm(_))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Algebra::RealSym(0) | Algebra::ComplexHerm(0) => {
                Err(Error::Usage("matrix algebra rank must be at least 1".into()))
            }
            Algebra::Spin(d) if *d < 2 => Err(Error::Usage(format!(
                "spin algebra needs dimension d >= 2, got {d}"
            ))),
            Algebra::DirectSum(parts) if parts.is_empty() => {
                Err(Error::Usage("direct sum needs at least one summand".into()))
            }
            Algebra::DirectSum(parts) => parts.iter().try_for_each(Algebra::validate),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::RealSym(n) => write!(f, "realsym:{n}"),
            Algebra::ComplexHerm(n) => write!(f, "herm:{n}"),
            Algebra::Spin(d) => write!(f, "spin:{d}"),
            Algebra::DirectSum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Algebra {
    type Err = Error;

    /// Parses `realsym:N`, `herm:N` (or `complexherm:N`), `spin:D`, and direct
    /// sums written as summands joined by `+`, e.g. `realsym:2+spin:3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('+') {
            let parts = s
                .split('+')
                .map(str::parse)
                .collect::<Result<Vec<Algebra>>>()?;
            let alg = Algebra::DirectSum(parts);
            alg.validate()?;
            return Ok(alg);
        }
        let (kind, size) = s
            .split_once(':')
            .ok_or_else(|| Error::Usage(format!("expected KIND:N, got `{s}`")))?;
        let size: usize = size
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad size in `{s}`")))?;
        let alg = match kind.trim().to_ascii_lowercase().as_str() {
            "realsym" | "sym" | "s" => Algebra::RealSym(size),
            "herm" | "complexherm" | "h" => Algebra::ComplexHerm(size),
            "spin" | "lorentz" => Algebra::Spin(size),
            other => return Err(Error::Usage(format!("unknown algebra kind `{other}`"))),
        };
        alg.validate()?;
        Ok(alg)
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraRepr {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parts: Option<Vec<AlgebraRepr>>,
}

impl From<&Algebra> for AlgebraRepr {
    fn from(a: &Algebra) -> Self {
        let mut r = AlgebraRepr {
            kind: String::new(),
            n: None,
            d: None,
            parts: None,
        };
        match a {
            Algebra::RealSym(n) => {
                r.kind = "realsym".into();
                r.n = Some(*n);
            }
            Algebra::ComplexHerm(n) => {
                r.kind = "herm".into();
                r.n = Some(*n);
            }
            Algebra::Spin(d) => {
                r.kind = "spin".into();
                r.d = Some(*d);
            }
            Algebra::DirectSum(parts) => {
                r.kind = "sum".into();
                r.parts = Some(parts.iter().map(AlgebraRepr::from).collect());
            }
        }
        r
    }
}

impl TryFrom<AlgebraRepr> for Algebra {
    type Error = Error;

    fn try_from(r: AlgebraRepr) -> Result<Self> {
        let need = |v: Option<usize>, field: &str| {
            v.ok_or_else(|| Error::Usage(format!("algebra `{}` needs field `{field}`", r.kind)))
        };
        let alg = match r.kind.as_str() {
            "realsym" => Algebra::RealSym(need(r.n, "n")?),
            "herm" | "complexherm" => Algebra::ComplexHerm(need(r.n, "n")?),
            "spin" => Algebra::Spin(need(r.d, "d")?),
            "sum" => Algebra::DirectSum(
                r.parts
                    .ok_or_else(|| Error::Usage("direct sum needs `parts`".into()))?
                    .into_iter()
                    .map(Algebra::try_from)
                    .collect::<Result<_>>()?,
            ),
            other => return Err(Error::Usage(format!("unknown algebra kind `{other}`"))),
        };
        alg.validate()?;
        Ok(alg)
    }
}

impl Serialize for Algebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Algebra {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = AlgebraRepr::deserialize(d)?;
        Algebra::try_from(repr).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    RealSym(DMatrix<f64>),
    ComplexHerm(DMatrix<Complex64>),
    Spin(f64, DVector<f64>),
    DirectSum(Vec<Element>),
}

/// A point of a Euclidean Jordan algebra in native coordinates.
///
/// Matrix coordinates are kept exactly symmetric (Hermitian); every
/// constructor symmetrizes its input.
#[derive(Clone, Debug, PartialEq)]
pub struct Element(Repr);

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    let t = m.transpose();
    (m + t) * 0.5
}

fn hermitize(m: DMatrix<Complex64>) -> DMatrix<Complex64> {
    let t = m.adjoint();
    (m + t).map(|z| z * 0.5)
}

fn require_square(rows: usize, cols: usize) -> Result<()> {
    if rows != cols || rows == 0 {
        return Err(Error::DimensionMismatch {
            expected: rows.max(1),
            got: cols,
        });
    }
    Ok(())
}

impl Element {
    pub fn real_sym(m: DMatrix<f64>) -> Result<Self> {
        require_square(m.nrows(), m.ncols())?;
        Ok(Element(Repr::RealSym(symmetrize(m))))
    }

    /// Real symmetric element from `n × n` row-major data.
    pub fn real_sym_rows(n: usize, data: &[f64]) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: data.len(),
            });
        }
        Self::real_sym(DMatrix::from_row_slice(n, n, data))
    }

    /// Diagonal real symmetric matrix.
    pub fn diag(values: &[f64]) -> Self {
        Element(Repr::RealSym(DMatrix::from_diagonal(&DVector::from_row_slice(
            values,
        ))))
    }

    pub fn complex_herm(m: DMatrix<Complex64>) -> Result<Self> {
        require_square(m.nrows(), m.ncols())?;
        Ok(Element(Repr::ComplexHerm(hermitize(m))))
    }

    /// Spin element `(x₀, x̄)`; the algebra is `Spin(1 + x̄.len())`.
    pub fn spin(x0: f64, bar: &[f64]) -> Result<Self> {
        if bar.is_empty() {
            return Err(Error::Usage("spin vector part must be nonempty".into()));
        }
        Ok(Element(Repr::Spin(x0, DVector::from_row_slice(bar))))
    }

    pub fn direct_sum(parts: Vec<Element>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Usage("direct sum needs at least one summand".into()));
        }
        Ok(Element(Repr::DirectSum(parts)))
    }

    pub fn as_real_sym(&self) -> Option<&DMatrix<f64>> {
        match &self.0 {
            Repr::RealSym(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_complex_herm(&self) -> Option<&DMatrix<Complex64>> {
        match &self.0 {
            Repr::ComplexHerm(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_spin(&self) -> Option<(f64, &DVector<f64>)> {
        match &self.0 {
            Repr::Spin(x0, bar) => Some((*x0, bar)),
            _ => None,
        }
    }

    pub fn parts(&self) -> Option<&[Element]> {
        match &self.0 {
            Repr::DirectSum(p) => Some(p),
            _ => None,
        }
    }

    pub fn algebra(&self) -> Algebra {
        match &self.0 {
            Repr::RealSym(m) => Algebra::RealSym(m.nrows()),
            Repr::ComplexHerm(m) => Algebra::ComplexHerm(m.nrows()),
            Repr::Spin(_, bar) => Algebra::Spin(bar.len() + 1),
            Repr::DirectSum(p) => Algebra::DirectSum(p.iter().map(Element::algebra).collect()),
        }
    }

    pub fn rank(&self) -> usize {
        match &self.0 {
            Repr::RealSym(m) => m.nrows(),
            Repr::ComplexHerm(m) => m.nrows(),
            Repr::Spin(..) => 2,
            Repr::DirectSum(p) => p.iter().map(Element::rank).sum(),
        }
    }

    /// Structural algebra equality without building descriptors.
    pub fn same_algebra(&self, other: &Element) -> bool {
        match (&self.0, &other.0) {
            (Repr::RealSym(a), Repr::RealSym(b)) => a.nrows() == b.nrows(),
            (Repr::ComplexHerm(a), Repr::ComplexHerm(b)) => a.nrows() == b.nrows(),
            (Repr::Spin(_, a), Repr::Spin(_, b)) => a.len() == b.len(),
            (Repr::DirectSum(a), Repr::DirectSum(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_algebra(y))
            }
            _ => false,
        }
    }

    pub(crate) fn check_same(&self, other: &Element) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.algebra(),
                right: other.algebra(),
            })
        }
    }

    pub fn zero(alg: &Algebra) -> Self {
        match alg {
            Algebra::RealSym(n) => Element(Repr::RealSym(DMatrix::zeros(*n, *n))),
            Algebra::ComplexHerm(n) => Element(Repr::ComplexHerm(DMatrix::zeros(*n, *n))),
            Algebra::Spin(d) => Element(Repr::Spin(0.0, DVector::zeros(d.saturating_sub(1)))),
            Algebra::DirectSum(p) => Element(Repr::DirectSum(p.iter().map(Element::zero).collect())),
        }
    }

    /// The unit element `e`.
    pub fn unit(alg: &Algebra) -> Self {
        match alg {
            Algebra::RealSym(n) => Element(Repr::RealSym(DMatrix::identity(*n, *n))),
            Algebra::ComplexHerm(n) => Element(Repr::ComplexHerm(DMatrix::identity(*n, *n))),
            Algebra::Spin(d) => Element(Repr::Spin(1.0, DVector::zeros(d.saturating_sub(1)))),
            Algebra::DirectSum(p) => Element(Repr::DirectSum(p.iter().map(Element::unit).collect())),
        }
    }

    /// A real-linear spanning set (in fact a basis) of the algebra.
    pub fn basis(alg: &Algebra) -> Vec<Element> {
        match alg {
            Algebra::RealSym(n) => {
                let n = *n;
                let mut out = Vec::with_capacity(n * (n + 1) / 2);
                for i in 0..n {
                    for j in i..n {
                        let mut m = DMatrix::zeros(n, n);
                        m[(i, j)] = 1.0;
                        m[(j, i)] = 1.0;
                        out.push(Element(Repr::RealSym(m)));
                    }
                }
                out
            }
            Algebra::ComplexHerm(n) => {
                let n = *n;
                let mut out = Vec::with_capacity(n * n);
                for i in 0..n {
                    for j in i..n {
                        let mut m = DMatrix::zeros(n, n);
                        m[(i, j)] = Complex64::new(1.0, 0.0);
                        m[(j, i)] = Complex64::new(1.0, 0.0);
                        out.push(Element(Repr::ComplexHerm(m)));
                        if i != j {
                            let mut m = DMatrix::zeros(n, n);
                            m[(i, j)] = Complex64::new(0.0, 1.0);
                            m[(j, i)] = Complex64::new(0.0, -1.0);
                            out.push(Element(Repr::ComplexHerm(m)));
                        }
                    }
                }
                out
            }
            Algebra::Spin(d) => {
                let mut out = vec![Element::unit(alg)];
                for k in 0..d - 1 {
                    let mut bar = DVector::zeros(d - 1);
                    bar[k] = 1.0;
                    out.push(Element(Repr::Spin(0.0, bar)));
                }
                out
            }
            Algebra::DirectSum(parts) => {
                let mut out = Vec::new();
                for (idx, p) in parts.iter().enumerate() {
                    for b in Element::basis(p) {
                        out.push(Element::embed(parts, idx, b));
                    }
                }
                out
            }
        }
    }

    /// Places `x` into summand `idx` of a direct sum, zero elsewhere.
    pub fn embed(parts: &[Algebra], idx: usize, x: Element) -> Element {
        let mut comps: Vec<Element> = parts.iter().map(Element::zero).collect();
        comps[idx] = x;
        Element(Repr::DirectSum(comps))
    }

    /// Flat coordinate vector: row-major matrix entries (complex entries as
    /// interleaved re/im), `[x₀, x̄…]` for spin, concatenation for direct sums.
    pub fn coords(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.push_coords(&mut out);
        out
    }

    fn push_coords(&self, out: &mut Vec<f64>) {
        match &self.0 {
            Repr::RealSym(m) => {
                for i in 0..m.nrows() {
                    for j in 0..m.ncols() {
                        out.push(m[(i, j)]);
                    }
                }
            }
            Repr::ComplexHerm(m) => {
                for i in 0..m.nrows() {
                    for j in 0..m.ncols() {
                        out.push(m[(i, j)].re);
                        out.push(m[(i, j)].im);
                    }
                }
            }
            Repr::Spin(x0, bar) => {
                out.push(*x0);
                out.extend(bar.iter().copied());
            }
            Repr::DirectSum(p) => p.iter().for_each(|x| x.push_coords(out)),
        }
    }

    fn coord_len(alg: &Algebra) -> usize {
        match alg {
            Algebra::RealSym(n) => n * n,
            Algebra::ComplexHerm(n) => 2 * n * n,
            Algebra::Spin(d) => *d,
            Algebra::DirectSum(p) => p.iter().map(Element::coord_len).sum(),
        }
    }

    /// Inverse of [`Element::coords`].
    pub fn from_coords(alg: &Algebra, coords: &[f64]) -> Result<Self> {
        alg.validate()?;
        let need = Self::coord_len(alg);
        if coords.len() != need {
            return Err(Error::DimensionMismatch {
                expected: need,
                got: coords.len(),
            });
        }
        Ok(match alg {
            Algebra::RealSym(n) => Element::real_sym_rows(*n, coords)?,
            Algebra::ComplexHerm(n) => {
                let n = *n;
                let m = DMatrix::from_fn(n, n, |i, j| {
                    let k = 2 * (i * n + j);
                    Complex64::new(coords[k], coords[k + 1])
                });
                Element::complex_herm(m)?
            }
            Algebra::Spin(_) => Element::spin(coords[0], &coords[1..])?,
            Algebra::DirectSum(parts) => {
                let mut off = 0;
                let mut comps = Vec::with_capacity(parts.len());
                for p in parts {
                    let len = Self::coord_len(p);
                    comps.push(Element::from_coords(p, &coords[off..off + len])?);
                    off += len;
                }
                Element(Repr::DirectSum(comps))
            }
        })
    }

    fn zip_with(&self, other: &Element, f: &impl Fn(f64, f64) -> f64) -> Element {
        match (&self.0, &other.0) {
            (Repr::RealSym(a), Repr::RealSym(b)) => Element(Repr::RealSym(a.zip_map(b, f))),
            (Repr::ComplexHerm(a), Repr::ComplexHerm(b)) => Element(Repr::ComplexHerm(
                a.zip_map(b, |x, y| Complex64::new(f(x.re, y.re), f(x.im, y.im))),
            )),
            (Repr::Spin(a0, a), Repr::Spin(b0, b)) => {
                Element(Repr::Spin(f(*a0, *b0), a.zip_map(b, f)))
            }
            (Repr::DirectSum(a), Repr::DirectSum(b)) => Element(Repr::DirectSum(
                a.iter().zip(b).map(|(x, y)| x.zip_with(y, f)).collect(),
            )),
            _ => panic!("algebra mismatch in elementwise operation"),
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(self.zip_with(other, &|a, b| a + b))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(self.zip_with(other, &|a, b| a - b))
    }

    pub fn scale(&self, s: f64) -> Element {
        match &self.0 {
            Repr::RealSym(a) => Element(Repr::RealSym(a * s)),
            Repr::ComplexHerm(a) => Element(Repr::ComplexHerm(a.map(|z| z * s))),
            Repr::Spin(a0, a) => Element(Repr::Spin(a0 * s, a * s)),
            Repr::DirectSum(p) => Element(Repr::DirectSum(p.iter().map(|x| x.scale(s)).collect())),
        }
    }

    /// `self + s·other`
    pub(crate) fn axpy(&self, s: f64, other: &Element) -> Element {
        self.zip_with(other, &|a, b| a + s * b)
    }

    /// Jordan product `x∘y`.
    pub fn jordan(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(self.jordan_unchecked(other))
    }

    pub(crate) fn jordan_unchecked(&self, other: &Element) -> Element {
        match (&self.0, &other.0) {
            (Repr::RealSym(a), Repr::RealSym(b)) => {
                let ab = a * b;
                let t = ab.transpose();
                Element(Repr::RealSym((ab + t) * 0.5))
            }
            (Repr::ComplexHerm(a), Repr::ComplexHerm(b)) => {
                let ab = a * b;
                let t = ab.adjoint();
                Element(Repr::ComplexHerm((ab + t).map(|z| z * 0.5)))
            }
            (Repr::Spin(a0, a), Repr::Spin(b0, b)) => {
                Element(Repr::Spin(a0 * b0 + a.dot(b), b * *a0 + a * *b0))
            }
            (Repr::DirectSum(a), Repr::DirectSum(b)) => Element(Repr::DirectSum(
                a.iter().zip(b).map(|(x, y)| x.jordan_unchecked(y)).collect(),
            )),
            _ => panic!("algebra mismatch in Jordan product"),
        }
    }

    pub fn square(&self) -> Element {
        self.jordan_unchecked(self)
    }

    /// Trace inner product `⟨x, y⟩ = tr(x∘y)`.
    pub fn inner(&self, other: &Element) -> Result<f64> {
        self.check_same(other)?;
        Ok(self.inner_unchecked(other))
    }

    pub(crate) fn inner_unchecked(&self, other: &Element) -> f64 {
        match (&self.0, &other.0) {
            (Repr::RealSym(a), Repr::RealSym(b)) => a.dot(b),
            (Repr::ComplexHerm(a), Repr::ComplexHerm(b)) => a
                .iter()
                .zip(b.iter())
                .map(|(x, y)| x.re * y.re + x.im * y.im)
                .sum(),
            (Repr::Spin(a0, a), Repr::Spin(b0, b)) => 2.0 * (a0 * b0 + a.dot(b)),
            (Repr::DirectSum(a), Repr::DirectSum(b)) => {
                a.iter().zip(b).map(|(x, y)| x.inner_unchecked(y)).sum()
            }
            _ => panic!("algebra mismatch in inner product"),
        }
    }

    /// `tr(x)`, the sum of the eigenvalues (computed linearly, no eigensolve).
    pub fn trace(&self) -> f64 {
        match &self.0 {
            Repr::RealSym(a) => a.trace(),
            Repr::ComplexHerm(a) => a.trace().re,
            Repr::Spin(a0, _) => 2.0 * a0,
            Repr::DirectSum(p) => p.iter().map(Element::trace).sum(),
        }
    }

    /// Trace-form norm `√⟨x,x⟩`, which equals the spectral 2-norm `‖λ(x)‖₂`.
    pub fn norm(&self) -> f64 {
        self.inner_unchecked(self).max(0.0).sqrt()
    }

    /// Scale used by relative tolerances: `max(1, ‖x‖₂)`.
    pub fn scale_of(&self) -> f64 {
        self.norm().max(1.0)
    }

    pub fn spectral(&self) -> Result<SpectralDecomposition> {
        let alg = self.algebra();
        let (eigenvalues, idempotents) = self.spectral_parts()?;
        Ok(SpectralDecomposition {
            eigenvalues,
            frame: JordanFrame::trusted(alg, idempotents),
        })
    }

    fn spectral_parts(&self) -> Result<(Vec<f64>, Vec<Element>)> {
        match &self.0 {
            Repr::RealSym(a) => {
                let e = linalg::eigh(a)?;
                let idem = (0..a.nrows())
                    .map(|k| {
                        let q = e.vectors.column(k);
                        normalize_idempotent(Element(Repr::RealSym(&q * q.transpose())))
                    })
                    .collect();
                Ok((e.values, idem))
            }
            Repr::ComplexHerm(a) => {
                let e = linalg::eigh(a)?;
                let idem = (0..a.nrows())
                    .map(|k| {
                        let q = e.vectors.column(k);
                        let m = hermitize(&q * q.adjoint());
                        normalize_idempotent(Element(Repr::ComplexHerm(m)))
                    })
                    .collect();
                Ok((e.values, idem))
            }
            Repr::Spin(x0, bar) => {
                let r = bar.norm();
                let dir = if r <= SPIN_DEGENERATE * x0.abs().max(1.0) {
                    let mut u = DVector::zeros(bar.len());
                    u[0] = 1.0;
                    u
                } else {
                    bar / r
                };
                let e1 = Element(Repr::Spin(0.5, &dir * 0.5));
                let e2 = Element(Repr::Spin(0.5, &dir * -0.5));
                Ok((vec![x0 + r, x0 - r], vec![e1, e2]))
            }
            Repr::DirectSum(parts) => {
                let algs: Vec<Algebra> = parts.iter().map(Element::algebra).collect();
                let mut all: Vec<(f64, Element)> = Vec::new();
                for (idx, p) in parts.iter().enumerate() {
                    let (vals, idem) = p.spectral_parts()?;
                    for (v, c) in vals.into_iter().zip(idem) {
                        all.push((v, Element::embed(&algs, idx, c)));
                    }
                }
                all.sort_by(|a, b| b.0.total_cmp(&a.0));
                Ok(all.into_iter().unzip())
            }
        }
    }

    /// `λ(x)`, eigenvalues in decreasing order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        match &self.0 {
            Repr::RealSym(a) => Ok(linalg::eigh(a)?.values),
            Repr::ComplexHerm(a) => Ok(linalg::eigh(a)?.values),
            Repr::Spin(x0, bar) => {
                let r = bar.norm();
                Ok(vec![x0 + r, x0 - r])
            }
            Repr::DirectSum(parts) => {
                let mut vals = Vec::with_capacity(self.rank());
                for p in parts {
                    vals.extend(p.eigenvalues()?);
                }
                vals.sort_by(|a, b| b.total_cmp(a));
                Ok(vals)
            }
        }
    }

    /// `det(x)`, the product of the eigenvalues.
    pub fn det(&self) -> Result<f64> {
        match &self.0 {
            Repr::Spin(x0, bar) => Ok(x0 * x0 - bar.norm_squared()),
            _ => Ok(self.eigenvalues()?.iter().product()),
        }
    }

    /// Spectral p-norm `‖λ(x)‖_p`, `p ∈ [1, ∞]` (use `f64::INFINITY` for ∞).
    pub fn p_norm(&self, p: f64) -> Result<f64> {
        Ok(vector_p_norm(&self.eigenvalues()?, p)?)
    }

    pub fn lambda_max(&self) -> Result<f64> {
        Ok(self.eigenvalues()?[0])
    }

    pub fn lambda_min(&self) -> Result<f64> {
        Ok(*self.eigenvalues()?.last().expect("rank >= 1"))
    }

    /// Sum of the `k` largest eigenvalues, `1 ≤ k ≤ rank`.
    pub fn sum_top_k(&self, k: usize) -> Result<f64> {
        let n = self.rank();
        if k == 0 || k > n {
            return Err(Error::Domain(format!("k = {k} outside 1..={n}")));
        }
        Ok(self.eigenvalues()?[..k].iter().sum())
    }

    fn default_psd_tol(&self) -> f64 {
        1e-9 * self.scale_of()
    }

    /// `x ≥ 0` up to `tol` (default `1e-9·max(1,‖x‖₂)`).
    pub fn is_psd(&self, tol: Option<f64>) -> Result<bool> {
        let tol = tol.unwrap_or_else(|| self.default_psd_tol());
        Ok(self.lambda_min()? >= -tol)
    }

    /// `x > 0`: smallest eigenvalue exceeds `tol`.
    pub fn is_positive(&self, tol: Option<f64>) -> Result<bool> {
        let tol = tol.unwrap_or_else(|| self.default_psd_tol());
        Ok(self.lambda_min()? > tol)
    }

    /// Löwner map `Σ g(λᵢ) eᵢ` after checking every eigenvalue against `domain`.
    pub fn spectral_map(&self, g: impl Fn(f64) -> f64, domain: SpectralDomain) -> Result<Element> {
        let sd = self.spectral()?;
        let atol = 1e-12 * self.scale_of();
        let vals = domain.admit(&sd.eigenvalues, atol)?;
        Ok(sd.frame.combine(&vals.iter().map(|&l| g(l)).collect::<Vec<_>>()))
    }

    pub fn sqrt(&self) -> Result<Element> {
        self.spectral_map(f64::sqrt, SpectralDomain::NonNegative)
    }

    /// `|x| = Σ |λᵢ| eᵢ`
    pub fn abs(&self) -> Result<Element> {
        self.spectral_map(f64::abs, SpectralDomain::All)
    }

    pub fn inverse(&self) -> Result<Element> {
        self.spectral_map(|l| 1.0 / l, SpectralDomain::NonZero)
    }

    /// `xᵗ` for `t ≥ 0`. Integer exponents accept any spectrum; fractional
    /// exponents need `x ≥ −atol` and clamp tiny negative eigenvalues to zero.
    pub fn power(&self, t: f64) -> Result<Element> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("power exponent {t} must be >= 0")));
        }
        if t.fract() == 0.0 && t <= i32::MAX as f64 {
            let k = t as i32;
            return self.spectral_map(move |l| l.powi(k), SpectralDomain::All);
        }
        self.spectral_map(move |l| l.powf(t), SpectralDomain::NonNegative)
    }

    pub fn exp(&self) -> Result<Element> {
        self.spectral_map(f64::exp, SpectralDomain::All)
    }

    pub fn log(&self) -> Result<Element> {
        self.spectral_map(f64::ln, SpectralDomain::Positive)
    }
}

fn normalize_idempotent(c: Element) -> Element {
    let tr = c.trace();
    if (tr - 1.0).abs() <= 1e-12 || tr == 0.0 {
        c
    } else {
        c.scale(1.0 / tr)
    }
}

/// `‖v‖_p` on `Rⁿ` for `p ∈ [1, ∞]`.
pub fn vector_p_norm(v: &[f64], p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("p = {p} must lie in [1, inf]")));
    }
    Ok(if p.is_infinite() {
        v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    } else if p == 1.0 {
        v.iter().map(|x| x.abs()).sum()
    } else if p == 2.0 {
        v.iter().map(|x| x * x).sum::<f64>().sqrt()
    } else {
        v.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    })
}

/// Admissible spectra for [`Element::spectral_map`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralDomain {
    All,
    /// `λ ≥ −atol`; values in `[−atol, 0)` are clamped to zero.
    NonNegative,
    /// `λ > atol`
    Positive,
    /// `|λ| > atol`
    NonZero,
}

impl SpectralDomain {
    pub(crate) fn admit(self, vals: &[f64], atol: f64) -> Result<Vec<f64>> {
        vals.iter()
            .enumerate()
            .map(|(index, &v)| {
                let ok = match self {
                    SpectralDomain::All => v.is_finite(),
                    SpectralDomain::NonNegative => v >= -atol,
                    SpectralDomain::Positive => v > atol,
                    SpectralDomain::NonZero => v.abs() > atol,
                };
                if !ok {
                    return Err(Error::EigenvalueDomain {
                        index,
                        value: v,
                        domain: format!("{self:?}"),
                    });
                }
                Ok(if self == SpectralDomain::NonNegative {
                    v.max(0.0)
                } else {
                    v
                })
            })
            .collect()
    }
}

/// `x = Σ λᵢ eᵢ` with `λ` nonincreasing.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub frame: JordanFrame,
}

impl SpectralDecomposition {
    pub fn reconstruct(&self) -> Element {
        self.frame.combine(&self.eigenvalues)
    }

    /// `Σ g(λᵢ) eᵢ` on the stored frame.
    pub fn map(&self, g: impl Fn(f64) -> f64) -> Element {
        let vals: Vec<f64> = self.eigenvalues.iter().map(|&l| g(l)).collect();
        self.frame.combine(&vals)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("algebra mismatch in addition")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("algebra mismatch in subtraction")
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Mul<f64> for &Element {
    type Output = Element;
    fn mul(self, s: f64) -> Element {
        self.scale(s)
    }
}

impl Mul<f64> for Element {
    type Output = Element;
    fn mul(self, s: f64) -> Element {
        self.scale(s)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::RealSym(m) => {
                f.write_str("[")?;
                for i in 0..m.nrows() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str("[")?;
                    for j in 0..m.ncols() {
                        if j > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{:.6}", m[(i, j)])?;
                    }
                    f.write_str("]")?;
                }
                f.write_str("]")
            }
            Repr::ComplexHerm(m) => {
                f.write_str("[")?;
                for i in 0..m.nrows() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str("[")?;
                    for j in 0..m.ncols() {
                        if j > 0 {
                            f.write_str(", ")?;
                        }
                        let z = m[(i, j)];
                        write!(f, "{:.6}{:+.6}i", z.re, z.im)?;
                    }
                    f.write_str("]")?;
                }
                f.write_str("]")
            }
            Repr::Spin(x0, bar) => {
                write!(f, "({x0:.6}, (")?;
                for (k, b) in bar.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{b:.6}")?;
                }
                f.write_str("))")
            }
            Repr::DirectSum(p) => {
                f.write_str("⊕[")?;
                for (k, x) in p.iter().enumerate() {
                    if k > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    algebra: Algebra,
    coords: Vec<f64>,
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            algebra: self.algebra(),
            coords: self.coords(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ElementRepr::deserialize(d)?;
        Element::from_coords(&r.algebra, &r.coords).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Element, b: &Element, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn descriptor_sizes() {
        assert_eq!(Algebra::RealSym(3).dim(), 6);
        assert_eq!(Algebra::ComplexHerm(3).dim(), 9);
        assert_eq!(Algebra::Spin(5).rank(), 2);
        let s = Algebra::DirectSum(vec![Algebra::RealSym(2), Algebra::Spin(3)]);
        assert_eq!(s.rank(), 4);
        assert_eq!(s.dim(), 6);
        assert!(!s.is_simple());
        assert!(!Algebra::Spin(2).is_simple());
        assert!(Algebra::Spin(3).is_simple());
        assert!(Algebra::Spin(1).validate().is_err());
        assert!(Algebra::RealSym(0).validate().is_err());
    }

    #[test]
    fn parse_and_display() {
        let a: Algebra = "realsym:2+spin:3".parse().unwrap();
        assert_eq!(a, Algebra::DirectSum(vec![Algebra::RealSym(2), Algebra::Spin(3)]));
        assert_eq!(a.to_string(), "realsym:2+spin:3");
        assert_eq!("herm:3".parse::<Algebra>().unwrap(), Algebra::ComplexHerm(3));
        assert!("spin:1".parse::<Algebra>().is_err());
        assert!("octonion:3".parse::<Algebra>().is_err());
    }

    #[test]
    fn jordan_examples() {
        let e1 = Element::diag(&[1.0, 0.0]);
        let x = Element::real_sym_rows(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let p = e1.jordan(&x).unwrap();
        assert_eq!(p, Element::real_sym_rows(2, &[0.0, 0.5, 0.5, 0.0]).unwrap());

        let a = Element::spin(1.0, &[1.0, 0.0]).unwrap();
        let b = Element::spin(1.0, &[0.0, 1.0]).unwrap();
        assert_eq!(a.jordan(&b).unwrap(), Element::spin(1.0, &[1.0, 1.0]).unwrap());

        let e = Element::unit(&a.algebra());
        assert_eq!(e.jordan(&a).unwrap(), a);
    }

    #[test]
    fn mismatch_is_usage_error() {
        let a = Element::diag(&[1.0, 2.0]);
        let b = Element::spin(1.0, &[0.0]).unwrap();
        assert!(matches!(a.jordan(&b), Err(Error::AlgebraMismatch { .. })));
        assert!(a.inner(&b).is_err());
    }

    #[test]
    fn unit_elements() {
        assert_eq!(
            Element::unit(&Algebra::RealSym(3)).as_real_sym().unwrap(),
            &DMatrix::identity(3, 3)
        );
        assert_eq!(
            Element::unit(&Algebra::Spin(4)),
            Element::spin(1.0, &[0.0, 0.0, 0.0]).unwrap()
        );
        let sum = Algebra::DirectSum(vec![Algebra::RealSym(2), Algebra::Spin(3)]);
        let e = Element::unit(&sum);
        assert_eq!(e.parts().unwrap()[1], Element::unit(&Algebra::Spin(3)));
        assert_eq!(e.trace(), 4.0);
    }

    #[test]
    fn inner_examples() {
        let e1 = Element::diag(&[1.0, 0.0]);
        let e2 = Element::diag(&[0.0, 1.0]);
        assert_eq!(e1.inner(&e2).unwrap(), 0.0);
        let s = Element::spin(1.0, &[1.0, 0.0]).unwrap();
        assert_eq!(s.inner(&s).unwrap(), 4.0);
        let e = Element::unit(&Algebra::ComplexHerm(3));
        assert_eq!(e.inner(&e).unwrap(), 3.0);
    }

    #[test]
    fn spectral_examples() {
        let x = Element::real_sym_rows(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let sd = x.spectral().unwrap();
        assert!((sd.eigenvalues[0] - 3.0).abs() < 1e-14);
        assert!((sd.eigenvalues[1] - 1.0).abs() < 1e-14);
        assert!(close(&sd.reconstruct(), &x, 1e-13));

        let s = Element::spin(0.0, &[3.0, 4.0]).unwrap();
        let sd = s.spectral().unwrap();
        assert_eq!(sd.eigenvalues, vec![5.0, -5.0]);
        let f = &sd.frame.idempotents();
        assert!(close(&f[0], &Element::spin(0.5, &[0.3, 0.4]).unwrap(), 1e-15));
        assert!(close(&f[1], &Element::spin(0.5, &[-0.3, -0.4]).unwrap(), 1e-15));

        let e = Element::unit(&Algebra::RealSym(3));
        assert_eq!(e.eigenvalues().unwrap(), vec![1.0; 3]);
        assert_eq!((-&e).eigenvalues().unwrap(), vec![-1.0; 3]);
        assert_eq!(
            Element::spin(1.0, &[1.0, 0.0]).unwrap().eigenvalues().unwrap(),
            vec![2.0, 0.0]
        );
    }

    #[test]
    fn degenerate_spin_direction_is_first_axis() {
        let s = Element::spin(2.0, &[0.0, 0.0, 0.0]).unwrap();
        let sd = s.spectral().unwrap();
        assert_eq!(sd.frame.idempotents()[0], Element::spin(0.5, &[0.5, 0.0, 0.0]).unwrap());
    }

    #[test]
    fn direct_sum_eigenvalues_merge() {
        let x = Element::direct_sum(vec![
            Element::diag(&[1.0, -3.0]),
            Element::spin(0.5, &[2.0, 0.0]).unwrap(),
        ])
        .unwrap();
        assert_eq!(x.eigenvalues().unwrap(), vec![2.5, 1.0, -1.5, -3.0]);
        let sd = x.spectral().unwrap();
        assert_eq!(sd.eigenvalues, vec![2.5, 1.0, -1.5, -3.0]);
        assert!(close(&sd.reconstruct(), &x, 1e-14));
    }

    #[test]
    fn trace_det_norms() {
        let x = Element::real_sym_rows(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        assert!((x.det().unwrap() - 3.0).abs() < 1e-13);
        assert!((x.p_norm(f64::INFINITY).unwrap() - 3.0).abs() < 1e-13);
        assert!((x.sum_top_k(1).unwrap() - 3.0).abs() < 1e-13);
        assert!((x.sum_top_k(2).unwrap() - x.trace()).abs() < 1e-13);
        assert!(x.sum_top_k(0).is_err());
        assert!(x.sum_top_k(3).is_err());
        let e = Element::unit(&Algebra::ComplexHerm(3));
        assert_eq!(e.p_norm(1.0).unwrap(), 3.0);
        assert!(e.p_norm(0.5).is_err());
        let s = Element::spin(3.0, &[1.0, 2.0]).unwrap();
        assert_eq!(s.det().unwrap(), 9.0 - 5.0);
    }

    #[test]
    fn psd_predicates() {
        let alg = Algebra::RealSym(2);
        let e = Element::unit(&alg);
        assert!(e.is_psd(None).unwrap() && e.is_positive(None).unwrap());
        assert!(!(-&e).is_psd(None).unwrap() && !(-&e).is_positive(None).unwrap());
        let e1 = Element::diag(&[1.0, 0.0]);
        assert!(e1.is_psd(None).unwrap());
        assert!(!e1.is_positive(None).unwrap());
    }

    #[test]
    fn spectral_functions() {
        let e = Element::unit(&Algebra::RealSym(3));
        assert!(close(&e.sqrt().unwrap(), &e, 1e-15));
        let d = Element::diag(&[1.0, -1.0]);
        assert!(close(&d.abs().unwrap(), &Element::unit(&Algebra::RealSym(2)), 1e-15));
        match Element::diag(&[1.0, -1.0]).log() {
            Err(Error::EigenvalueDomain { index, value, .. }) => {
                assert_eq!(index, 1);
                assert_eq!(value, -1.0);
            }
            other => panic!("expected domain error, got {other:?}"),
        }
        assert!(Element::diag(&[1.0, 0.0]).inverse().is_err());
        // tiny negative eigenvalue is clamped for fractional powers
        let near = Element::diag(&[4.0, -1e-14]);
        let r = near.power(0.5).unwrap();
        assert!(close(&r, &Element::diag(&[2.0, 0.0]), 1e-15));
        let x = Element::real_sym_rows(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        assert!(close(&x.power(2.0).unwrap(), &x.square(), 1e-12));
    }

    #[test]
    fn coords_json_round_trip() {
        let x = Element::direct_sum(vec![
            Element::real_sym_rows(2, &[0.1, 1.0 / 3.0, 1.0 / 3.0, -2.5e-17]).unwrap(),
            Element::spin(std::f64::consts::PI, &[1e-300, -7.0]).unwrap(),
        ])
        .unwrap();
        let s = serde_json::to_string(&x).unwrap();
        let y: Element = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert!(s.contains("\"kind\":\"sum\""));
    }

    #[test]
    fn herm_coords_interleave() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(0.5, 2.0),
                Complex64::new(0.5, -2.0),
                Complex64::new(3.0, 0.0),
            ],
        );
        let x = Element::complex_herm(m).unwrap();
        assert_eq!(x.coords(), vec![1.0, 0.0, 0.5, 2.0, 0.5, -2.0, 3.0, 0.0]);
        let back = Element::from_coords(&Algebra::ComplexHerm(2), &x.coords()).unwrap();
        assert_eq!(back, x);
        assert!(Element::from_coords(&Algebra::ComplexHerm(2), &[1.0]).is_err());
    }
}
