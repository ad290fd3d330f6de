//! Löwner maps, divided differences and path geometry on the symmetric cone
//! `Ω = {x > 0}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{vector_p_norm, Algebra, Element, SpectralDomain};
use crate::error::{Error, Result};
use crate::majorize::{majorizes_elements, MajorizationVerdict};
use crate::peirce::{quad_rep, schur_product, CoeffMatrix};
use crate::rng::SplitMix64;

pub const DEFAULT_PATH_SAMPLES: usize = 129;
/// `|u|` below which `sinh(u)/u` uses its series.
pub const SINHC_SERIES_THRESHOLD: f64 = 1e-4;

/// `sinh(u)/u`, equal to 1 at 0.
pub fn sinhc(u: f64) -> f64 {
    if u.abs() <= SINHC_SERIES_THRESHOLD {
        let u2 = u * u;
        1.0 + u2 / 6.0 * (1.0 + u2 / 20.0)
    } else {
        u.sinh() / u
    }
}

/// User-supplied `C¹` function on the open interval `(lo, hi)`.
#[derive(Clone, Copy, Debug)]
pub struct CustomKernel {
    pub name: &'static str,
    pub g: fn(f64) -> f64,
    pub dg: fn(f64) -> f64,
    pub lo: f64,
    pub hi: f64,
}

/// A scalar function `g` with derivative `g′` on an open interval `I`.
#[derive(Clone, Copy, Debug)]
pub enum LownerKernel {
    Exp,
    /// `ln` on `(0, ∞)`
    Log,
    Identity,
    Square,
    Custom(CustomKernel),
}

impl fmt::Display for LownerKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LownerKernel::Exp => f.write_str("exp"),
            LownerKernel::Log => f.write_str("log"),
            LownerKernel::Identity => f.write_str("identity"),
            LownerKernel::Square => f.write_str("square"),
            LownerKernel::Custom(c) => f.write_str(c.name),
        }
    }
}

impl LownerKernel {
    /// Open interval `I`.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            LownerKernel::Log => (0.0, f64::INFINITY),
            LownerKernel::Custom(c) => (c.lo, c.hi),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        let (lo, hi) = self.domain();
        t > lo && t < hi
    }

    fn check(&self, t: f64) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            let (lo, hi) = self.domain();
            Err(Error::Domain(format!("{t} outside the domain ({lo}, {hi}) of {self}")))
        }
    }

    pub fn g(&self, t: f64) -> f64 {
        match self {
            LownerKernel::Exp => t.exp(),
            LownerKernel::Log => t.ln(),
            LownerKernel::Identity => t,
            LownerKernel::Square => t * t,
            LownerKernel::Custom(c) => (c.g)(t),
        }
    }

    pub fn dg(&self, t: f64) -> f64 {
        match self {
            LownerKernel::Exp => t.exp(),
            LownerKernel::Log => 1.0 / t,
            LownerKernel::Identity => 1.0,
            LownerKernel::Square => 2.0 * t,
            LownerKernel::Custom(c) => (c.dg)(t),
        }
    }

    /// Central-difference check `|g′(t) − (g(t+h) − g(t−h))/2h| ≤ tol·max(1,|g′(t)|)`.
    pub fn derivative_sane(&self, t: f64, h: f64, tol: f64) -> bool {
        if !self.contains(t - h) || !self.contains(t + h) {
            return false;
        }
        let fd = (self.g(t + h) - self.g(t - h)) / (2.0 * h);
        let d = self.dg(t);
        (fd - d).abs() <= tol * d.abs().max(1.0)
    }
}

/// `g^{[1]}(t, s)`: `(g(t) − g(s))/(t − s)`, or `g′(t)` when `t = s`.
pub fn divided_difference(kernel: &LownerKernel, t: f64, s: f64) -> Result<f64> {
    kernel.check(t)?;
    kernel.check(s)?;
    let (lo, hi) = if t <= s { (t, s) } else { (s, t) };
    let d = hi - lo;
    Ok(match kernel {
        LownerKernel::Exp => {
            let m = 0.5 * (lo + hi);
            m.exp() * sinhc(0.5 * d)
        }
        LownerKernel::Log => {
            if d == 0.0 {
                1.0 / lo
            } else {
                (d / lo).ln_1p() / d
            }
        }
        LownerKernel::Identity => 1.0,
        LownerKernel::Square => lo + hi,
        LownerKernel::Custom(c) => {
            if d <= 1e-8 * lo.abs().max(hi.abs()).max(1.0) {
                (c.dg)(0.5 * (lo + hi))
            } else {
                ((c.g)(hi) - (c.g)(lo)) / d
            }
        }
    })
}

/// `A_a = [g^{[1]}(aᵢ, aⱼ)]`
pub fn divided_difference_matrix(kernel: &LownerKernel, spectrum: &[f64]) -> Result<CoeffMatrix> {
    for &t in spectrum {
        kernel.check(t)?;
    }
    Ok(CoeffMatrix::from_fn(spectrum.len(), |i, j| {
        divided_difference(kernel, spectrum[i], spectrum[j]).expect("checked domain")
    }))
}

/// `G(a) = Σ g(aᵢ) eᵢ`
pub fn lowner_map(kernel: &LownerKernel, a: &Element) -> Result<Element> {
    let sd = a.spectral()?;
    for &t in &sd.eigenvalues {
        kernel.check(t)?;
    }
    Ok(sd.map(|t| kernel.g(t)))
}

/// `G′(a) x = A_a • x` on the spectral frame of `a`.
pub fn lowner_derivative(kernel: &LownerKernel, a: &Element, x: &Element) -> Result<Element> {
    a.check_same(x)?;
    let sd = a.spectral()?;
    let k = divided_difference_matrix(kernel, &sd.eigenvalues)?;
    schur_product(&k, x, &sd.frame)
}

/// Whether `A_a` is positive semidefinite (operator monotonicity diagnostic at `a`).
pub fn derivative_kernel_psd(kernel: &LownerKernel, a: &Element, tol: f64) -> Result<bool> {
    let sd = a.spectral()?;
    divided_difference_matrix(kernel, &sd.eigenvalues)?.is_psd(tol)
}

/// Local exponential-metric check at `a` for direction `x`.
#[derive(Clone, Debug)]
pub struct EmiLocal {
    /// `x ≺ B•x`, where `B•x = P_c(G′(a)x)`, `c = exp(−a/2)`, `G = exp`.
    pub verdict: MajorizationVerdict,
    pub norm_x: f64,
    pub norm_bx: f64,
    pub norm_holds: bool,
    /// `‖B•x − P_c(exp′(a) x)‖ / max(1, ‖x‖)`.
    pub kernel_residual: f64,
    pub bx: Element,
}

/// `[sinh((aᵢ − aⱼ)/2) / ((aᵢ − aⱼ)/2)]`
pub fn sinh_kernel(spectrum: &[f64]) -> CoeffMatrix {
    CoeffMatrix::from_fn(spectrum.len(), |i, j| sinhc(0.5 * (spectrum[i] - spectrum[j])))
}

pub fn emi_local_check(a: &Element, x: &Element, p: f64, tol: Option<f64>) -> Result<EmiLocal> {
    a.check_same(x)?;
    let sd = a.spectral()?;
    let bx = schur_product(&sinh_kernel(&sd.eigenvalues), x, &sd.frame)?;
    let c = sd.map(|t| (-0.5 * t).exp());
    let direct = quad_rep(&c, &lowner_derivative(&LownerKernel::Exp, a, x)?)?;
    let kernel_residual = (&bx - &direct).norm() / x.scale_of();
    let verdict = majorizes_elements(x, &bx, tol)?;
    let norm_x = x.p_norm(p)?;
    let norm_bx = bx.p_norm(p)?;
    let norm_holds = norm_x <= norm_bx + verdict.tol_used;
    Ok(EmiLocal {
        verdict,
        norm_x,
        norm_bx,
        norm_holds,
        kernel_residual,
        bx,
    })
}

/// One sample `(t, γ(t), γ′(t))`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathSample {
    pub t: f64,
    pub point: Element,
    pub derivative: Element,
}

/// A sampled `C¹` path in `Ω` over a strictly increasing partition.
#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
pub struct ConePath {
    samples: Vec<PathSample>,
}

impl ConePath {
    pub fn new(samples: Vec<PathSample>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Domain("a path needs at least 2 samples".into()));
        }
        let alg = samples[0].point.algebra();
        for (k, s) in samples.iter().enumerate() {
            if s.point.algebra() != alg || s.derivative.algebra() != alg {
                return Err(Error::AlgebraMismatch {
                    left: alg,
                    right: s.point.algebra(),
                });
            }
            let lmin = s.point.lambda_min()?;
            if !(lmin > 1e-14 * s.point.scale_of()) {
                return Err(Error::Domain(format!(
                    "path point {k} (t = {}) is not positive: lambda_min = {lmin:e}",
                    s.t
                )));
            }
            if k > 0 && !(s.t > samples[k - 1].t) {
                return Err(Error::Domain(format!("partition not increasing at sample {k}")));
            }
        }
        Ok(ConePath { samples })
    }

    pub fn samples(&self) -> &[PathSample] {
        &self.samples
    }

    pub fn algebra(&self) -> Algebra {
        self.samples[0].point.algebra()
    }

    pub fn start(&self) -> &Element {
        &self.samples[0].point
    }

    pub fn end(&self) -> &Element {
        &self.samples[self.samples.len() - 1].point
    }

    /// Largest gap of the partition.
    pub fn mesh(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| w[1].t - w[0].t)
            .fold(0.0, f64::max)
    }

    /// Joins `self` and `next` where `next` starts at `self`'s final parameter.
    pub fn concat(&self, next: &ConePath) -> Result<ConePath> {
        let last = self.samples.last().expect("nonempty");
        if next.samples[0].t != last.t {
            return Err(Error::Domain("paths do not share an endpoint parameter".into()));
        }
        let mut s = self.samples.clone();
        s.extend(next.samples[1..].iter().cloned());
        ConePath::new(s)
    }

    /// `P_{γ(t)^{−1/2}} γ′(t)` at every sample.
    pub fn normalized_velocities(&self) -> Result<Vec<Element>> {
        self.samples
            .iter()
            .map(|s| {
                let r = s.point.spectral_map(|l| l.powf(-0.5), SpectralDomain::Positive)?;
                quad_rep(&r, &s.derivative)
            })
            .collect()
    }

    /// `‖P_{γ(t)^{−1/2}} γ′(t)‖_p` at every sample.
    pub fn integrand(&self, p: f64) -> Result<Vec<f64>> {
        self.normalized_velocities()?.iter().map(|w| w.p_norm(p)).collect()
    }

    /// Image `P_r ∘ γ` (derivatives map linearly).
    pub fn quad_rep_image(&self, r: &Element) -> Result<ConePath> {
        let s = self
            .samples
            .iter()
            .map(|s| {
                Ok(PathSample {
                    t: s.t,
                    point: quad_rep(r, &s.point)?,
                    derivative: quad_rep(r, &s.derivative)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ConePath::new(s)
    }
}

impl<'de> Deserialize<'de> for ConePath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = Vec::<PathSample>::deserialize(d)?;
        ConePath::new(s).map_err(serde::de::Error::custom)
    }
}

/// Composite trapezoid value of a path integral with its error budget.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathLength {
    pub value: f64,
    /// `10 · mesh² · max|f″|`, with `f″` from second differences of the integrand.
    pub error_budget: f64,
}

fn trapezoid(ts: &[f64], f: &[f64]) -> f64 {
    ts.windows(2)
        .zip(f.windows(2))
        .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0] + v[1]))
        .sum()
}

fn curvature_estimate(ts: &[f64], f: &[f64]) -> f64 {
    let mut m: f64 = 0.0;
    for k in 1..ts.len().saturating_sub(1) {
        let h1 = ts[k] - ts[k - 1];
        let h2 = ts[k + 1] - ts[k];
        let d2 = 2.0 * ((f[k + 1] - f[k]) / h2 - (f[k] - f[k - 1]) / h1) / (h1 + h2);
        m = m.max(d2.abs());
    }
    m
}

/// `L(γ) = ∫ ‖P_{γ(t)^{−1/2}} γ′(t)‖_p dt` by the composite trapezoid rule.
pub fn path_length(path: &ConePath, p: f64) -> Result<f64> {
    Ok(path_length_with_budget(path, p)?.value)
}

pub fn path_length_with_budget(path: &ConePath, p: f64) -> Result<PathLength> {
    Ok(path_lengths(path, &[p])?[0])
}

/// Lengths for several `p` from one pass over the samples.
pub fn path_lengths(path: &ConePath, ps: &[f64]) -> Result<Vec<PathLength>> {
    let w = path.normalized_velocities()?;
    let ts: Vec<f64> = path.samples.iter().map(|s| s.t).collect();
    let h = path.mesh();
    ps.iter()
        .map(|&p| {
            let f = w.iter().map(|x| x.p_norm(p)).collect::<Result<Vec<f64>>>()?;
            Ok(PathLength {
                value: trapezoid(&ts, &f),
                error_budget: 10.0 * h * h * curvature_estimate(&ts, &f),
            })
        })
        .collect()
}

/// Sum of the lengths of consecutive pieces (each piece smooth, corners allowed).
pub fn piecewise_length(pieces: &[ConePath], p: f64) -> Result<PathLength> {
    Ok(piecewise_lengths(pieces, &[p])?[0])
}

pub fn piecewise_lengths(pieces: &[ConePath], ps: &[f64]) -> Result<Vec<PathLength>> {
    let mut out = vec![
        PathLength {
            value: 0.0,
            error_budget: 0.0,
        };
        ps.len()
    ];
    for piece in pieces {
        for (acc, l) in out.iter_mut().zip(path_lengths(piece, ps)?) {
            acc.value += l.value;
            acc.error_budget += l.error_budget;
        }
    }
    Ok(out)
}

fn uniform_ts(samples: usize) -> Result<Vec<f64>> {
    if samples < 2 {
        return Err(Error::Domain(format!("need at least 2 samples, got {samples}")));
    }
    let m = (samples - 1) as f64;
    Ok((0..samples).map(|k| k as f64 / m).collect())
}

fn require_positive(u: &Element, what: &str) -> Result<()> {
    let l = u.lambda_min()?;
    if l > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} is not positive (lambda_min = {l:e})")))
    }
}

/// `γ(t) = exp((1−t) log u + t log v)` on `[0, 1]`, `γ′(t) = exp′(φ(t))(log v − log u)`.
pub fn geodesic_path(u: &Element, v: &Element, samples: usize) -> Result<ConePath> {
    u.check_same(v)?;
    require_positive(u, "u")?;
    require_positive(v, "v")?;
    let lu = u.log()?;
    let lv = v.log()?;
    let dir = &lv - &lu;
    let mut out = Vec::with_capacity(samples);
    for t in uniform_ts(samples)? {
        let sd = lu.axpy(t, &dir).spectral()?;
        let point = sd.map(f64::exp);
        let k = divided_difference_matrix(&LownerKernel::Exp, &sd.eigenvalues)?;
        let derivative = schur_product(&k, &dir, &sd.frame)?;
        out.push(PathSample { t, point, derivative });
    }
    ConePath::new(out)
}

/// `γ(t) = (1−t)u + tv` on `[t0, t1]`, reparametrized so `γ(t0) = u`, `γ(t1) = v`.
pub fn straight_segment_on(u: &Element, v: &Element, t0: f64, t1: f64, samples: usize) -> Result<ConePath> {
    u.check_same(v)?;
    require_positive(u, "u")?;
    require_positive(v, "v")?;
    if !(t1 > t0) {
        return Err(Error::Domain("segment interval must be increasing".into()));
    }
    let derivative = (v - u).scale(1.0 / (t1 - t0));
    let out = uniform_ts(samples)?
        .into_iter()
        .map(|s| PathSample {
            t: t0 + s * (t1 - t0),
            point: u.scale(1.0 - s).axpy(s, v),
            derivative: derivative.clone(),
        })
        .collect();
    ConePath::new(out)
}

pub fn straight_segment(u: &Element, v: &Element, samples: usize) -> Result<ConePath> {
    straight_segment_on(u, v, 0.0, 1.0, samples)
}

/// Polyline `u → w₁ → ⋯ → w_m → v` of straight pieces over `[0, 1]`, where
/// `w_k = exp((1−s_k) log u + s_k log v + amplitude·z_k)` with random `z_k`.
pub fn perturbed_polyline(
    u: &Element,
    v: &Element,
    knots: usize,
    amplitude: f64,
    samples_per_piece: usize,
    rng: &mut SplitMix64,
) -> Result<Vec<ConePath>> {
    u.check_same(v)?;
    require_positive(u, "u")?;
    require_positive(v, "v")?;
    let alg = u.algebra();
    let lu = u.log()?;
    let lv = v.log()?;
    let mut vertices = vec![u.clone()];
    for k in 1..=knots {
        let s = k as f64 / (knots + 1) as f64;
        let coords: Vec<f64> = (0..lu.coords().len()).map(|_| rng.normal()).collect();
        let z = Element::from_coords(&alg, &coords)?;
        let zn = z.norm().max(1e-300);
        let w = lu.scale(1.0 - s).axpy(s, &lv).axpy(amplitude / zn, &z).exp()?;
        vertices.push(w);
    }
    vertices.push(v.clone());
    let m = vertices.len() - 1;
    (0..m)
        .map(|k| {
            straight_segment_on(
                &vertices[k],
                &vertices[k + 1],
                k as f64 / m as f64,
                (k + 1) as f64 / m as f64,
                samples_per_piece,
            )
        })
        .collect()
}

/// `δ₂(u, v) = ‖log P_{u^{−1/2}}(v)‖₂`
pub fn delta2(u: &Element, v: &Element) -> Result<f64> {
    u.check_same(v)?;
    require_positive(u, "u")?;
    require_positive(v, "v")?;
    let r = u.spectral_map(|l| l.powf(-0.5), SpectralDomain::Positive)?;
    let w = quad_rep(&r, v)?;
    let vals = w.eigenvalues()?;
    if let Some(&bad) = vals.iter().find(|&&l| !(l > 0.0)) {
        return Err(Error::Numeric(format!("P_(u^-1/2)(v) lost positivity: {bad:e}")));
    }
    let logs: Vec<f64> = vals.iter().map(|l| l.ln()).collect();
    vector_p_norm(&logs, 2.0)
}

/// `‖log u − log v‖_p`
pub fn log_distance(u: &Element, v: &Element, p: f64) -> Result<f64> {
    u.check_same(v)?;
    (&u.log()? - &v.log()?).p_norm(p)
}

/// `L_x L_y = L_y L_x`, tested on a basis with residual `≤ tol·max(1,‖x‖)·max(1,‖y‖)`.
pub fn operator_commute(x: &Element, y: &Element, tol: f64) -> Result<bool> {
    x.check_same(y)?;
    let scale = x.scale_of() * y.scale_of();
    for z in Element::basis(&x.algebra()) {
        let a = x.jordan_unchecked(&y.jordan_unchecked(&z));
        let b = y.jordan_unchecked(&x.jordan_unchecked(&z));
        if (&a - &b).norm() > tol * scale {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn divided_difference_examples() {
        let e = LownerKernel::Exp;
        assert_eq!(divided_difference(&e, 0.0, 0.0).unwrap(), 1.0);
        let l2 = 2f64.ln();
        assert!(close(divided_difference(&e, 0.0, l2).unwrap(), 1.0 / l2, 1e-15));
        assert!(close(divided_difference(&e, 0.3, 0.3 + 1e-9).unwrap(), (0.3f64 + 5e-10).exp(), 1e-14));
        assert_eq!(divided_difference(&LownerKernel::Identity, -3.0, 8.0).unwrap(), 1.0);
        assert_eq!(divided_difference(&LownerKernel::Square, 1.0, 3.0).unwrap(), 4.0);
        assert!(close(divided_difference(&LownerKernel::Log, 1.0, 2.0).unwrap(), l2, 1e-15));
        assert_eq!(divided_difference(&LownerKernel::Log, 4.0, 4.0).unwrap(), 0.25);
        assert!(divided_difference(&LownerKernel::Log, -1.0, 2.0).is_err());
        for k in [LownerKernel::Exp, LownerKernel::Log, LownerKernel::Square] {
            assert_eq!(
                divided_difference(&k, 0.7, 1.9).unwrap(),
                divided_difference(&k, 1.9, 0.7).unwrap()
            );
        }
        let cubic = LownerKernel::Custom(CustomKernel {
            name: "cube",
            g: |t| t * t * t,
            dg: |t| 3.0 * t * t,
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        });
        assert!(close(divided_difference(&cubic, 1.0, 2.0).unwrap(), 7.0, 1e-14));
        assert!(close(divided_difference(&cubic, 2.0, 2.0).unwrap(), 12.0, 1e-14));
        assert!(cubic.derivative_sane(0.4, 1e-5, 1e-8));
    }

    #[test]
    fn derivative_examples() {
        let a = Element::diag(&[1.0, 3.0]);
        let x = Element::real_sym_rows(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let d = lowner_derivative(&LownerKernel::Identity, &a, &x).unwrap();
        assert!((&d - &x).norm() < 1e-15);
        let d = lowner_derivative(&LownerKernel::Square, &a, &x).unwrap();
        assert!((&d - &x.scale(4.0)).norm() < 1e-14);
        assert!(lowner_map(&LownerKernel::Log, &Element::diag(&[1.0, -1.0])).is_err());

        let a = Element::real_sym_rows(3, &[0.2, 0.5, -0.1, 0.5, -0.4, 0.3, -0.1, 0.3, 0.9]).unwrap();
        let x = Element::real_sym_rows(3, &[1.0, -0.2, 0.4, -0.2, 0.3, 0.8, 0.4, 0.8, -0.5]).unwrap();
        let h = 1e-5;
        let fd = (&a.axpy(h, &x).exp().unwrap() - &a.axpy(-h, &x).exp().unwrap()).scale(0.5 / h);
        let d = lowner_derivative(&LownerKernel::Exp, &a, &x).unwrap();
        assert!((&fd - &d).norm() < 1e-6 * x.scale_of());
    }

    #[test]
    fn emi_local_examples() {
        let x = Element::real_sym_rows(2, &[1.0, 2.0, 2.0, -1.0]).unwrap();
        for a in [Element::zero(&Algebra::RealSym(2)), Element::diag(&[1.0, 1.0])] {
            let r = emi_local_check(&a, &x, 2.0, None).unwrap();
            assert!((&r.bx - &x).norm() < 1e-14);
            assert!(r.verdict.holds && r.norm_holds);
        }
        let a = Element::real_sym_rows(2, &[0.3, 1.5, 1.5, -2.0]).unwrap();
        let r = emi_local_check(&a, &x, f64::INFINITY, None).unwrap();
        assert!(r.verdict.holds && r.norm_holds);
        assert!(r.kernel_residual < 1e-9);
        assert!(close(sinhc(1e-4), 1e-4f64.sinh() / 1e-4, 1e-16));
    }

    #[test]
    fn path_examples() {
        let alg = Algebra::RealSym(3);
        let e = Element::unit(&alg);
        let c = straight_segment(&e, &e, 9).unwrap();
        assert_eq!(path_length(&c, 2.0).unwrap(), 0.0);

        let ts = uniform_ts(DEFAULT_PATH_SAMPLES).unwrap();
        let exp_path = ConePath::new(
            ts.iter()
                .map(|&t| PathSample {
                    t,
                    point: e.scale(t.exp()),
                    derivative: e.scale(t.exp()),
                })
                .collect(),
        )
        .unwrap();
        for p in [1.0, 2.0, f64::INFINITY] {
            let want = 3f64.powf(if p.is_infinite() { 0.0 } else { 1.0 / p });
            assert!(close(path_length(&exp_path, p).unwrap(), want, 1e-12));
        }

        let u = Element::diag(&[1.0, 1.0]);
        let v = Element::diag(&[1f64.exp().powi(2), 1.0]);
        let g = geodesic_path(&u, &v, DEFAULT_PATH_SAMPLES).unwrap();
        assert!(close(path_length(&g, 2.0).unwrap(), 2.0, 1e-12));
        assert!((g.end() - &v).norm() < 1e-9 * v.scale_of());
        assert!(geodesic_path(&u, &Element::diag(&[1.0, -1.0]), 5).is_err());
    }

    #[test]
    fn concatenation_is_additive() {
        let u = Element::diag(&[1.0, 2.0]);
        let w = Element::real_sym_rows(2, &[2.0, 0.5, 0.5, 1.0]).unwrap();
        let v = Element::diag(&[4.0, 0.5]);
        let a = straight_segment_on(&u, &w, 0.0, 0.5, 33).unwrap();
        let b = straight_segment_on(&w, &v, 0.5, 1.0, 33).unwrap();
        let whole = a.concat(&b).unwrap();
        let sum = path_length(&a, 2.0).unwrap() + path_length(&b, 2.0).unwrap();
        assert!(close(path_length(&whole, 2.0).unwrap(), sum, 1e-13));
        let json = serde_json::to_string(&a).unwrap();
        let back: ConePath = serde_json::from_str(&json).unwrap();
        assert_eq!(back.samples().len(), 33);
    }

    #[test]
    fn delta2_examples() {
        let alg = Algebra::ComplexHerm(3);
        let e = Element::unit(&alg);
        assert!(close(delta2(&e, &e.scale(5.0)).unwrap(), 3f64.sqrt() * 5f64.ln(), 1e-13));
        let u = Element::diag(&[1.0, 2.0, 3.0]);
        let v = Element::diag(&[2.0, 2.0, 0.5]);
        let want = (2f64.ln().powi(2) + (0.5f64 / 3.0).ln().powi(2)).sqrt();
        assert!(close(delta2(&u, &v).unwrap(), want, 1e-13));
        assert!(delta2(&u, &u).unwrap() < 1e-14);
    }

    #[test]
    fn commute_examples() {
        let x = Element::real_sym_rows(2, &[1.0, 0.0, 0.0, 2.0]).unwrap();
        let y = Element::real_sym_rows(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        assert!(!operator_commute(&x, &y, 1e-10).unwrap());
        assert!(operator_commute(&y, &y.square(), 1e-10).unwrap());
        assert!(operator_commute(&Element::unit(&Algebra::RealSym(2)), &y, 1e-10).unwrap());
        let s = Element::spin(1.0, &[0.3, 0.4]).unwrap();
        let t = Element::spin(-2.0, &[0.6, 0.8]).unwrap();
        assert!(operator_commute(&s, &t, 1e-10).unwrap());
        assert!(!operator_commute(&s, &Element::spin(0.0, &[1.0, 0.0]).unwrap(), 1e-10).unwrap());
    }
}
