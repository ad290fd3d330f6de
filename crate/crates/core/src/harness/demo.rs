//! Small worked examples with intermediate values.

use std::fmt::Write;

use nalgebra::DMatrix;

use crate::algebra::{Algebra, Element};
use crate::cone::{
    delta2, emi_local_check, geodesic_path, log_distance, path_length_with_budget, sinh_kernel, straight_segment,
};
use crate::error::{Error, Result};
use crate::majorize::{
    birkhoff_decompose, corr_abs_diff, ds_transfer_matrix, is_correlation, majorizes_elements,
};
use crate::means::{check_mean_chain, log_mean_integral, mean_matrix, mean_transform, MeanKind, DEFAULT_NODES};
use crate::peirce::{idempotent_split, quad_rep, schur_product, JordanFrame};

pub const DEMOS: &[(&str, &str)] = &[
    ("pa-la", "P_a(x) ≺ L_{a²}(x) in RealSym(2)"),
    ("schur", "correlation Schur product in RealSym(3)"),
    ("hlp", "T-transform synthesis for (2,2,2) ≺ (3,2,1)"),
    ("birkhoff", "Birkhoff decomposition of a 3×3 doubly stochastic matrix"),
    ("log-mean", "logarithmic-mean transformation by quadrature and closed form"),
    ("emi", "local and global exponential metric increasing checks"),
    ("spin-means", "mean transformations in Spin(3)"),
    ("fischer", "idempotent split and Fischer inequality in RealSym(3)"),
];

pub fn demo_names() -> Vec<&'static str> {
    DEMOS.iter().map(|d| d.0).collect()
}

pub fn run_demo(name: &str) -> Result<String> {
    let mut out = String::new();
    let w = &mut out;
    match name {
        "pa-la" => pa_la(w)?,
        "schur" => schur(w)?,
        "hlp" => hlp(w)?,
        "birkhoff" => birkhoff(w)?,
        "log-mean" => log_mean(w)?,
        "emi" => emi(w)?,
        "spin-means" => spin_means(w)?,
        "fischer" => fischer(w)?,
        _ => {
            return Err(Error::Usage(format!(
                "unknown demo '{name}'; available: {}",
                demo_names().join(", ")
            )))
        }
    }
    Ok(out)
}

fn vec_str(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}

fn pa_la(w: &mut String) -> Result<()> {
    let a = Element::real_sym_rows(2, &[2.0, 0.0, 0.0, 1.0])?;
    let x = Element::real_sym_rows(2, &[1.0, 1.0, 1.0, 1.0])?;
    let pa = quad_rep(&a, &x)?;
    let la = a.square().jordan(&x)?;
    let v = majorizes_elements(&pa, &la, None)?;
    writeln!(w, "a = {a}").ok();
    writeln!(w, "x = {x}").ok();
    writeln!(w, "P_a(x) = {pa}   eigenvalues {}", vec_str(&pa.eigenvalues()?)).ok();
    writeln!(w, "L_(a^2)(x) = {la}   eigenvalues {}", vec_str(&la.eigenvalues()?)).ok();
    writeln!(w, "partial-sum slacks {}   holds: {}", vec_str(&v.partial_sum_slacks), v.holds).ok();
    Ok(())
}

fn schur(w: &mut String) -> Result<()> {
    let alg = Algebra::RealSym(3);
    let frame = JordanFrame::canonical(&alg);
    let c = corr_abs_diff(&[0.0, 1.0, 3.0])?;
    let x = Element::real_sym_rows(3, &[4.0, 1.0, 2.0, 1.0, 3.0, 0.5, 2.0, 0.5, 1.0])?;
    let cx = schur_product(&c, &x, &frame)?;
    let v = majorizes_elements(&cx, &x, None)?;
    writeln!(w, "C = [1/(1+|a_i-a_j|)], a = (0, 1, 3); correlation: {}", is_correlation(&c, 1e-12)).ok();
    writeln!(w, "x = {x}").ok();
    writeln!(w, "C•x = {cx}").ok();
    writeln!(w, "λ(C•x) = {}", vec_str(&cx.eigenvalues()?)).ok();
    writeln!(w, "λ(x)   = {}", vec_str(&x.eigenvalues()?)).ok();
    writeln!(w, "C•x ≺ x: {} (slacks {})", v.holds, vec_str(&v.partial_sum_slacks)).ok();
    Ok(())
}

fn hlp(w: &mut String) -> Result<()> {
    let p = [2.0, 2.0, 2.0];
    let q = [3.0, 2.0, 1.0];
    let chain = ds_transfer_matrix(&p, &q, None)?;
    writeln!(w, "p = {}  q = {}", vec_str(&p), vec_str(&q)).ok();
    for (i, t) in chain.transforms.iter().enumerate() {
        writeln!(w, "T{}: indices ({}, {}), lambda = {:.6}", i + 1, t.j, t.k, t.lambda).ok();
    }
    writeln!(w, "D = {}", matrix_str(&chain.product)).ok();
    let dq: Vec<f64> = (0..3).map(|i| (0..3).map(|j| chain.product[(i, j)] * q[j]).sum()).collect();
    writeln!(w, "Dq = {}", vec_str(&dq)).ok();
    Ok(())
}

fn matrix_str(m: &DMatrix<f64>) -> String {
    let rows: Vec<String> = (0..m.nrows())
        .map(|i| vec_str(&(0..m.ncols()).map(|j| m[(i, j)]).collect::<Vec<_>>()))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn birkhoff(w: &mut String) -> Result<()> {
    let d = DMatrix::from_row_slice(3, 3, &[0.5, 0.3, 0.2, 0.2, 0.5, 0.3, 0.3, 0.2, 0.5]);
    let bd = birkhoff_decompose(&d)?;
    writeln!(w, "D = {}", matrix_str(&d)).ok();
    for t in &bd.terms {
        writeln!(w, "{:.6} · σ = {:?}", t.weight, t.permutation).ok();
    }
    let err = (bd.reconstruct() - &d).amax();
    writeln!(w, "terms = {} (bound {}), reconstruction error {err:e}", bd.terms.len(), 3 * 3 - 2 * 3 + 2).ok();
    Ok(())
}

fn log_mean(w: &mut String) -> Result<()> {
    let a = Element::real_sym_rows(2, &[4.0, 1.0, 1.0, 2.0])?;
    let x = Element::real_sym_rows(2, &[1.0, -1.0, -1.0, 3.0])?;
    let quad = log_mean_integral(&a, &x, DEFAULT_NODES)?;
    let closed = mean_transform(MeanKind::Logarithmic, &a, &x)?;
    writeln!(w, "a = {a}, λ(a) = {}", vec_str(&a.eigenvalues()?)).ok();
    writeln!(w, "x = {x}").ok();
    writeln!(w, "{DEFAULT_NODES}-node quadrature  {quad}").ok();
    writeln!(w, "closed-form kernel     {closed}").ok();
    writeln!(w, "difference {:e}", (&quad - &closed).norm()).ok();
    for link in check_mean_chain(&a, &x, 0.25)? {
        writeln!(w, "{} ≺ {}: {}", link.lhs, link.rhs, link.verdict.holds).ok();
    }
    Ok(())
}

fn emi(w: &mut String) -> Result<()> {
    let a = Element::real_sym_rows(2, &[1.0, 0.5, 0.5, -1.0])?;
    let x = Element::real_sym_rows(2, &[0.0, 1.0, 1.0, 0.0])?;
    let sd = a.spectral()?;
    writeln!(w, "λ(a) = {}", vec_str(&sd.eigenvalues)).ok();
    writeln!(w, "sinh kernel B = {}", matrix_str(sinh_kernel(&sd.eigenvalues).matrix())).ok();
    let r = emi_local_check(&a, &x, 2.0, None)?;
    writeln!(w, "B•x = {}   x ≺ B•x: {}   ‖x‖₂ = {:.6} ≤ ‖B•x‖₂ = {:.6}", r.bx, r.verdict.holds, r.norm_x, r.norm_bx)
        .ok();
    let u = Element::real_sym_rows(2, &[2.0, 0.0, 0.0, 1.0])?;
    let v = Element::real_sym_rows(2, &[1.0, 0.8, 0.8, 1.0])?;
    writeln!(w, "u = {u}, v = {v}").ok();
    writeln!(w, "‖log u − log v‖₂ = {:.6}", log_distance(&u, &v, 2.0)?).ok();
    let g = path_length_with_budget(&geodesic_path(&u, &v, 129)?, 2.0)?;
    let s = path_length_with_budget(&straight_segment(&u, &v, 129)?, 2.0)?;
    writeln!(w, "L₂(log-linear path) = {:.6} (budget {:e})", g.value, g.error_budget).ok();
    writeln!(w, "L₂(straight segment) = {:.6} (budget {:e})", s.value, s.error_budget).ok();
    writeln!(w, "δ₂(u, v) = {:.6}", delta2(&u, &v)?).ok();
    Ok(())
}

fn spin_means(w: &mut String) -> Result<()> {
    let frame = JordanFrame::spin_direction(&[1.0, 0.0])?;
    let spec = [0.5, 4.0];
    let x = Element::spin(1.0, &[0.2, 1.0])?;
    writeln!(w, "frame direction (1, 0), a = 0.5·e₁ + 4·e₂, x = {x}").ok();
    let mut prev: Option<Element> = None;
    for k in MeanKind::ALL {
        let m = mean_matrix(k, &spec)?;
        let y = schur_product(&m, &x, &frame)?;
        write!(w, "m{} off-diagonal {:.6}: λ = {}", k.letter(), m.get(0, 1), vec_str(&y.eigenvalues()?)).ok();
        if let Some(p) = &prev {
            write!(w, "  (previous ≺ this: {})", majorizes_elements(p, &y, None)?.holds).ok();
        }
        writeln!(w).ok();
        prev = Some(y);
    }
    Ok(())
}

fn fischer(w: &mut String) -> Result<()> {
    let alg = Algebra::RealSym(3);
    let frame = JordanFrame::canonical(&alg);
    let c = frame.partial_unit(&[0, 1]);
    let x = Element::real_sym_rows(3, &[4.0, 1.0, 1.0, 1.0, 3.0, 1.0, 1.0, 1.0, 2.0])?;
    let s = idempotent_split(&x, &c)?;
    let uw = &s.u + &s.w;
    writeln!(w, "c = e₁ + e₂, x = {x}").ok();
    writeln!(w, "u = {}\nv = {}\nw = {}", s.u, s.v, s.w).ok();
    writeln!(w, "u + w ≺ x: {}", majorizes_elements(&uw, &x, None)?.holds).ok();
    let comp = &Element::unit(&alg) - &c;
    let du = crate::peirce::det_in_peirce_one(&s.u, &c)?;
    let dw = crate::peirce::det_in_peirce_one(&s.w, &comp)?;
    writeln!(w, "det x = {:.6} ≤ det(u)·det(w) = {:.6}·{:.6} = {:.6}", x.det()?, du, dw, du * dw).ok();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_demo_runs() {
        for name in demo_names() {
            let s = run_demo(name).unwrap();
            assert!(!s.is_empty(), "{name}");
            assert!(!s.contains("false"), "{name}: {s}");
        }
        assert!(matches!(run_demo("nope"), Err(Error::Usage(_))));
    }
}
