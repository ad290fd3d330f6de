//! Majorization and weak majorization, for vectors and for elements via
//! their eigenvalue vectors, plus the Schur-product checks built on them.

mod correlation;
mod stochastic;

pub use correlation::{
    corr_abs_diff, corr_normalize, corr_posdef_fn, corr_ratio, is_correlation, ratio_matrix,
    schur_power, PosDefFn,
};
pub use stochastic::{
    birkhoff_decompose, ds_transfer_matrix, is_doubly_stochastic, BirkhoffDecomposition,
    BirkhoffTerm, TTransform, TTransformChain,
};

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::peirce::{schur_product, CoeffMatrix, JordanFrame};
use crate::rng::SplitMix64;

/// Relative tolerance for majorization comparisons, scaled by `max(1, ‖q‖₁)`.
pub const DEFAULT_REL_TOL: f64 = 1e-8;

/// Outcome of `p ≺ q` (or `p ≺_w q`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MajorizationVerdict {
    pub holds: bool,
    /// `Σᵏ q↓ − Σᵏ p↓` for `k = 1…n`.
    #[serde(rename = "slacks")]
    pub partial_sum_slacks: Vec<f64>,
    /// `Σ q − Σ p`.
    pub trace_gap: f64,
    #[serde(rename = "tol")]
    pub tol_used: f64,
    #[serde(skip)]
    pub weak: bool,
}

impl MajorizationVerdict {
    /// Smallest partial-sum slack (the last entry is included).
    pub fn min_slack(&self) -> f64 {
        self.partial_sum_slacks
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Signed margin by which the verdict holds; negative means it fails.
    pub fn margin(&self) -> f64 {
        let m = self.min_slack() + self.tol_used;
        if self.weak {
            m
        } else {
            m.min(self.tol_used - self.trace_gap.abs())
        }
    }
}

pub fn default_tol(q: &[f64]) -> f64 {
    DEFAULT_REL_TOL * q.iter().map(|v| v.abs()).sum::<f64>().max(1.0)
}

fn sorted_desc(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn compare(p: &[f64], q: &[f64], tol: Option<f64>, weak: bool) -> Result<MajorizationVerdict> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: q.len(),
            got: p.len(),
        });
    }
    let tol = tol.unwrap_or_else(|| default_tol(q));
    let ps = sorted_desc(p);
    let qs = sorted_desc(q);
    let mut sp = 0.0;
    let mut sq = 0.0;
    let slacks: Vec<f64> = ps
        .iter()
        .zip(&qs)
        .map(|(a, b)| {
            sp += a;
            sq += b;
            sq - sp
        })
        .collect();
    let trace_gap = slacks.last().copied().unwrap_or(0.0);
    let partial_ok = slacks.iter().all(|&s| s >= -tol);
    let holds = if weak {
        partial_ok
    } else {
        partial_ok && trace_gap.abs() <= tol
    };
    Ok(MajorizationVerdict {
        holds,
        partial_sum_slacks: slacks,
        trace_gap,
        tol_used: tol,
        weak,
    })
}

/// `p ≺ q`: decreasing partial sums of `p` bounded by those of `q`, equal totals.
pub fn majorizes(p: &[f64], q: &[f64], tol: Option<f64>) -> Result<MajorizationVerdict> {
    compare(p, q, tol, false)
}

/// `p ≺_w q`: partial sums only.
pub fn weak_majorizes(p: &[f64], q: &[f64], tol: Option<f64>) -> Result<MajorizationVerdict> {
    compare(p, q, tol, true)
}

/// `x ≺ y ⇔ λ(x) ≺ λ(y)`.
pub fn majorizes_elements(x: &Element, y: &Element, tol: Option<f64>) -> Result<MajorizationVerdict> {
    x.check_same(y)?;
    majorizes(&x.eigenvalues()?, &y.eigenvalues()?, tol)
}

/// `x ≺_w y ⇔ λ(x) ≺_w λ(y)`.
pub fn weak_majorizes_elements(
    x: &Element,
    y: &Element,
    tol: Option<f64>,
) -> Result<MajorizationVerdict> {
    x.check_same(y)?;
    weak_majorizes(&x.eigenvalues()?, &y.eigenvalues()?, tol)
}

/// Spectral consequences of `lhs ≺ rhs` (each flag true when the inequality holds).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsequenceBattery {
    pub lambda_max: bool,
    pub lambda_min: bool,
    pub sum_top_k: Vec<bool>,
    /// `‖lhs‖_p ≤ ‖rhs‖_p` for `p = 1, 2, ∞`.
    pub norms: [bool; 3],
}

impl ConsequenceBattery {
    pub fn all(&self) -> bool {
        self.lambda_max && self.lambda_min && self.sum_top_k.iter().all(|&b| b) && self.norms.iter().all(|&b| b)
    }

    pub fn evaluate(lhs: &Element, rhs: &Element, tol: f64) -> Result<Self> {
        let l = lhs.eigenvalues()?;
        let r = rhs.eigenvalues()?;
        let n = l.len();
        let mut sl = 0.0;
        let mut sr = 0.0;
        let sum_top_k = (0..n)
            .map(|k| {
                sl += l[k];
                sr += r[k];
                sl <= sr + tol
            })
            .collect();
        let pn = |v: &[f64], p: f64| crate::algebra::vector_p_norm(v, p);
        let ps = [1.0, 2.0, f64::INFINITY];
        let mut norms = [false; 3];
        for (slot, p) in norms.iter_mut().zip(ps) {
            *slot = pn(&l, p)? <= pn(&r, p)? + tol;
        }
        Ok(ConsequenceBattery {
            lambda_max: l[0] <= r[0] + tol,
            lambda_min: r[n - 1] <= l[n - 1] + tol,
            sum_top_k,
            norms,
        })
    }
}

/// Result of comparing two Schur-power transformations on one element.
#[derive(Clone, Debug)]
pub struct SchurComparison {
    /// Whether `[a_ij / b_ij]` is a correlation matrix (the hypothesis).
    pub ratio_is_correlation: bool,
    /// `lhs ≺ rhs`; for `k ≥ 1` lhs is `A^{(k)}•x`, for `k ≤ −1` lhs is `B^{(k)}•x`.
    pub verdict: MajorizationVerdict,
    pub consequences: ConsequenceBattery,
    pub lhs: Element,
    pub rhs: Element,
}

impl SchurComparison {
    /// The implication "ratio is a correlation ⇒ majorization and consequences" holds.
    pub fn consistent(&self) -> bool {
        !self.ratio_is_correlation || (self.verdict.holds && self.consequences.all())
    }
}

/// Compares `A^{(k)}•x` with `B^{(k)}•x`; negative `k` checks the reversed
/// inequality `B^{(k)}•x ≺ A^{(k)}•x`.
pub fn check_schur_majorization(
    a: &CoeffMatrix,
    b: &CoeffMatrix,
    x: &Element,
    frame: &JordanFrame,
    k: i32,
    tol: Option<f64>,
) -> Result<SchurComparison> {
    if k == 0 {
        return Err(Error::Domain("Schur power k must be nonzero".into()));
    }
    let ratio = ratio_matrix(a, b)?;
    let ratio_is_correlation = is_correlation(&ratio, 1e-9);
    let ak = schur_product(&schur_power(a, k)?, x, frame)?;
    let bk = schur_product(&schur_power(b, k)?, x, frame)?;
    let (lhs, rhs) = if k > 0 { (ak, bk) } else { (bk, ak) };
    let lr = lhs.eigenvalues()?;
    let rr = rhs.eigenvalues()?;
    let verdict = majorizes(&lr, &rr, tol)?;
    let consequences = ConsequenceBattery::evaluate(&lhs, &rhs, verdict.tol_used)?;
    Ok(SchurComparison {
        ratio_is_correlation,
        verdict,
        consequences,
        lhs,
        rhs,
    })
}

/// An element `x ≥ 0` whose Schur product `A•x` has a negative eigenvalue.
#[derive(Clone, Debug)]
pub struct PositivityWitness {
    pub x: Element,
    pub frame: JordanFrame,
    pub lambda_min: f64,
    /// `None` for the eigenvector-aligned candidate, else the random trial index.
    pub trial: Option<usize>,
}

/// `Σᵢ vᵢ² eᵢ + Σ_{i<j} vᵢvⱼ f_ij` on the canonical frame, where `f_ij` is the
/// unit off-diagonal element of `V_ij`. This is the rank-one element `v vᵀ`.
fn aligned_rank_one(alg: &Algebra, v: &[f64]) -> Result<Element> {
    match alg {
        Algebra::RealSym(n) | Algebra::ComplexHerm(n) => {
            let n = *n;
            let mut d = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    d[i * n + j] = v[i] * v[j];
                }
            }
            let real = Element::real_sym_rows(n, &d)?;
            if matches!(alg, Algebra::RealSym(_)) {
                Ok(real)
            } else {
                let c: Vec<f64> = d.iter().flat_map(|&re| [re, 0.0]).collect();
                Element::from_coords(alg, &c)
            }
        }
        Algebra::Spin(d) if *d >= 3 => {
            let mut bar = vec![0.0; d - 1];
            bar[0] = 0.5 * (v[0] * v[0] - v[1] * v[1]);
            bar[1] = v[0] * v[1];
            Element::spin(0.5 * (v[0] * v[0] + v[1] * v[1]), &bar)
        }
        _ => Err(Error::Usage(format!("{alg} is not simple"))),
    }
}

/// Random element `≥ 0` of rank one in a random frame direction, or a random square.
pub(crate) fn random_psd_probe(alg: &Algebra, rng: &mut SplitMix64) -> Result<Element> {
    let y = random_any(alg, rng)?;
    if rng.bernoulli(0.5) {
        let sd = random_any(alg, rng)?.spectral()?;
        let c = &sd.frame.idempotents()[rng.below(sd.frame.len())];
        crate::peirce::quad_rep(&y, c)
    } else {
        Ok(y.square())
    }
}

fn random_any(alg: &Algebra, rng: &mut SplitMix64) -> Result<Element> {
    let coords: Vec<f64> = (0..gaussian_coord_len(alg)).map(|_| rng.normal()).collect();
    Element::from_coords(alg, &coords)
}

pub(crate) fn gaussian_coord_len(alg: &Algebra) -> usize {
    Element::zero(alg).coords().len()
}

/// Best-effort search for `x ≥ 0` with `A•x` not `≥ 0` in a simple algebra
/// (Schur products on the canonical frame). Returns `None` when nothing was
/// found, which is inconclusive rather than a certificate of positivity.
pub fn find_positivity_violation(
    a: &CoeffMatrix,
    alg: &Algebra,
    trials: usize,
    rng: &mut SplitMix64,
) -> Result<Option<PositivityWitness>> {
    if !alg.is_simple() {
        return Err(Error::Usage(format!("{alg} is not a simple algebra")));
    }
    if a.n() != alg.rank() {
        return Err(Error::DimensionMismatch {
            expected: alg.rank(),
            got: a.n(),
        });
    }
    let frame = JordanFrame::canonical(alg);
    let violation = |x: &Element| -> Result<Option<f64>> {
        let ax = schur_product(a, x, &frame)?;
        let tol = 1e-9 * ax.scale_of();
        let lmin = ax.lambda_min()?;
        Ok((lmin < -10.0 * tol).then_some(lmin))
    };

    let eig = crate::linalg::eigh(a.matrix())?;
    let n = a.n();
    let v: Vec<f64> = (0..n).map(|i| eig.vectors[(i, n - 1)]).collect();
    let aligned = aligned_rank_one(alg, &v)?;
    if let Some(lambda_min) = violation(&aligned)? {
        return Ok(Some(PositivityWitness {
            x: aligned,
            frame,
            lambda_min,
            trial: None,
        }));
    }
    for t in 0..trials {
        let x = random_psd_probe(alg, rng)?;
        if let Some(lambda_min) = violation(&x)? {
            return Ok(Some(PositivityWitness {
                x,
                frame,
                lambda_min,
                trial: Some(t),
            }));
        }
    }
    Ok(None)
}

/// `A•x ≺_w x` for `x ≥ 0` relative to `frame`.
pub fn check_substochastic(
    a: &CoeffMatrix,
    x: &Element,
    frame: &JordanFrame,
    tol: Option<f64>,
) -> Result<MajorizationVerdict> {
    let ax = schur_product(a, x, frame)?;
    weak_majorizes(&ax.eigenvalues()?, &x.eigenvalues()?, tol)
}

/// An `x ≥ 0` with `A•x ⊀_w x`.
#[derive(Clone, Debug)]
pub struct SubstochasticWitness {
    pub x: Element,
    pub verdict: MajorizationVerdict,
    pub trial: usize,
}

/// Best-effort search for a weak-majorization failure of `A•x ≺_w x` over
/// `x ≥ 0`: frame idempotents first, then random probes. Trials are counted
/// across both phases.
pub fn find_substochastic_violation(
    a: &CoeffMatrix,
    frame: &JordanFrame,
    trials: usize,
    rng: &mut SplitMix64,
) -> Result<Option<SubstochasticWitness>> {
    let alg = frame.algebra().clone();
    for t in 0..trials {
        let x = if t < frame.len() {
            frame.idempotents()[t].clone()
        } else {
            random_psd_probe(&alg, rng)?
        };
        let verdict = check_substochastic(a, &x, frame, None)?;
        if verdict.margin() < -10.0 * verdict.tol_used {
            return Ok(Some(SubstochasticWitness {
                x,
                verdict,
                trial: t,
            }));
        }
    }
    Ok(None)
}
