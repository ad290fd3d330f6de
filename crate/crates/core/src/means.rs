//! Scalar means, the coefficient matrices they induce on a spectrum, and the
//! corresponding transformations with their majorization chains.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::majorize::{majorizes_elements, MajorizationVerdict};
use crate::peirce::{lyapunov, quad_rep, quad_rep2, schur_product, CoeffMatrix};
use crate::quadrature::gauss_legendre_unit;

/// Relative distance `|t − s| / max(t, s)` below which the logarithmic mean
/// switches to its series.
pub const LOG_MEAN_SERIES_THRESHOLD: f64 = 1e-8;
pub const DEFAULT_NODES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeanKind {
    Harmonic,
    Geometric,
    Logarithmic,
    Arithmetic,
}

impl MeanKind {
    /// In the pointwise order `m_H ≤ m_G ≤ m_L ≤ m_A`.
    pub const ALL: [MeanKind; 4] = [
        MeanKind::Harmonic,
        MeanKind::Geometric,
        MeanKind::Logarithmic,
        MeanKind::Arithmetic,
    ];

    pub fn letter(self) -> char {
        match self {
            MeanKind::Harmonic => 'H',
            MeanKind::Geometric => 'G',
            MeanKind::Logarithmic => 'L',
            MeanKind::Arithmetic => 'A',
        }
    }

    /// `m(t, s)` for `t, s > 0`.
    pub fn eval(self, t: f64, s: f64) -> Result<f64> {
        mean_value(self, t, s)
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MeanKind::Harmonic => "harmonic",
            MeanKind::Geometric => "geometric",
            MeanKind::Logarithmic => "logarithmic",
            MeanKind::Arithmetic => "arithmetic",
        };
        f.write_str(s)
    }
}

impl FromStr for MeanKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h" | "harmonic" => Ok(MeanKind::Harmonic),
            "g" | "geometric" => Ok(MeanKind::Geometric),
            "l" | "log" | "logarithmic" => Ok(MeanKind::Logarithmic),
            "a" | "arithmetic" => Ok(MeanKind::Arithmetic),
            _ => Err(Error::Usage(format!("unknown mean '{s}'"))),
        }
    }
}

fn log_mean(t: f64, s: f64) -> f64 {
    let (lo, hi) = if t <= s { (t, s) } else { (s, t) };
    let u = (hi - lo) / lo;
    if hi - lo <= LOG_MEAN_SERIES_THRESHOLD * hi {
        // u / ln(1 + u) = 1 + u/2 − u²/12 + u³/24 − …
        lo * (1.0 + u * (0.5 + u * (-1.0 / 12.0 + u / 24.0)))
    } else {
        (hi - lo) / u.ln_1p()
    }
}

pub fn mean_value(kind: MeanKind, t: f64, s: f64) -> Result<f64> {
    if !(t > 0.0 && s > 0.0) || !t.is_finite() || !s.is_finite() {
        return Err(Error::Domain(format!(
            "{kind} mean needs positive finite arguments, got ({t}, {s})"
        )));
    }
    Ok(match kind {
        MeanKind::Arithmetic => 0.5 * (t + s),
        MeanKind::Geometric => (t * s).sqrt(),
        MeanKind::Harmonic => 2.0 * t * s / (t + s),
        MeanKind::Logarithmic => log_mean(t, s),
    })
}

/// `[m(λᵢ, λⱼ)]`
pub fn mean_matrix(kind: MeanKind, spectrum: &[f64]) -> Result<CoeffMatrix> {
    if let Some((i, v)) = spectrum.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::Domain(format!("spectrum entry {i} = {v} is not positive")));
    }
    if spectrum.is_empty() {
        return Err(Error::Domain("empty spectrum".into()));
    }
    Ok(CoeffMatrix::from_fn(spectrum.len(), |i, j| {
        if i == j {
            spectrum[i]
        } else {
            mean_value(kind, spectrum[i], spectrum[j]).expect("positive spectrum")
        }
    }))
}

fn require_positive(a: &Element) -> Result<()> {
    let vals = a.eigenvalues()?;
    if let Some((index, &value)) = vals.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::EigenvalueDomain {
            index,
            value,
            domain: "(0, inf)".into(),
        });
    }
    Ok(())
}

/// `M•x` with `M = [m(aᵢ, aⱼ)]` on the spectral frame of `a > 0`.
///
/// Harmonic gives `(L_{a⁻¹})⁻¹(x)`, geometric `P_{√a}(x)`, logarithmic
/// `∫₀¹ P_{aᵗ,a^{1−t}}(x) dt`, arithmetic `L_a(x)`.
pub fn mean_transform(kind: MeanKind, a: &Element, x: &Element) -> Result<Element> {
    a.check_same(x)?;
    require_positive(a)?;
    let sd = a.spectral()?;
    schur_product(&mean_matrix(kind, &sd.eigenvalues)?, x, &sd.frame)
}

/// `∫₀¹ P_{aᵗ,a^{1−t}}(x) dt` by Gauss–Legendre quadrature with `nodes` points.
pub fn log_mean_integral(a: &Element, x: &Element, nodes: usize) -> Result<Element> {
    a.check_same(x)?;
    if nodes < 2 {
        return Err(Error::Domain(format!("need at least 2 nodes, got {nodes}")));
    }
    require_positive(a)?;
    let sd = a.spectral()?;
    let mut acc = Element::zero(&a.algebra());
    for (t, w) in gauss_legendre_unit(nodes) {
        let at = sd.map(|l| l.powf(t));
        let a1t = sd.map(|l| l.powf(1.0 - t));
        acc = acc.axpy(w, &quad_rep2(&at, &a1t, x)?);
    }
    Ok(acc)
}

/// `P_{aᵗ,a^{1−t}}(x)`
pub fn interpolated_quad_rep(a: &Element, x: &Element, t: f64) -> Result<Element> {
    a.check_same(x)?;
    require_positive(a)?;
    let sd = a.spectral()?;
    quad_rep2(&sd.map(|l| l.powf(t)), &sd.map(|l| l.powf(1.0 - t)), x)
}

/// One link `lhs ≺ rhs` of a mean chain.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainLink {
    pub lhs: String,
    pub rhs: String,
    pub verdict: MajorizationVerdict,
}

/// The links
/// `(L_{a⁻¹})⁻¹(x) ≺ P_{√a}(x) ≺ ∫₀¹P_{aᵗ,a^{1−t}}(x)dt ≺ L_a(x)` and
/// `P_{√a}(x) ≺ P_{aᵗ,a^{1−t}}(x) ≺ L_a(x)`, each transformation computed
/// by its own direct route.
pub fn check_mean_chain(a: &Element, x: &Element, t: f64) -> Result<Vec<ChainLink>> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t = {t} outside [0, 1]")));
    }
    a.check_same(x)?;
    require_positive(a)?;
    let h = mean_transform(MeanKind::Harmonic, a, x)?;
    let g = quad_rep(&a.sqrt()?, x)?;
    let l = log_mean_integral(a, x, DEFAULT_NODES)?;
    let ar = lyapunov(a, x)?;
    let pt = interpolated_quad_rep(a, x, t)?;
    let pairs: [(&str, &Element, &str, &Element); 5] = [
        ("harmonic", &h, "sqrt-quad", &g),
        ("sqrt-quad", &g, "log-integral", &l),
        ("log-integral", &l, "lyapunov", &ar),
        ("sqrt-quad", &g, "interpolated", &pt),
        ("interpolated", &pt, "lyapunov", &ar),
    ];
    pairs
        .into_iter()
        .map(|(ln, le, rn, re)| {
            Ok(ChainLink {
                lhs: ln.into(),
                rhs: rn.into(),
                verdict: majorizes_elements(le, re, None)?,
            })
        })
        .collect()
}
