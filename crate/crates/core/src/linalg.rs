//! Dense Hermitian eigensolver (cyclic Jacobi) shared by the matrix algebras
//! and by coefficient-matrix positivity checks.

use nalgebra::{ComplexField, DMatrix};

use crate::error::{Error, Result};

/// Off-diagonal Frobenius mass, relative to `‖X‖_F`, at which a sweep loop stops.
pub const JACOBI_REL_TOL: f64 = 1e-12;
/// Maximum number of full cyclic sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 40;

/// Eigenpairs of a Hermitian matrix, eigenvalues sorted decreasing,
/// eigenvectors stored as the matching columns of `vectors`.
#[derive(Debug, Clone)]
pub struct Eigh<T: ComplexField<RealField = f64>> {
    pub values: Vec<f64>,
    pub vectors: DMatrix<T>,
    pub sweeps: usize,
}

fn frobenius<T: ComplexField<RealField = f64> + Copy>(m: &DMatrix<T>) -> (f64, f64) {
    let n = m.nrows();
    let mut total = 0.0;
    let mut off = 0.0;
    for j in 0..n {
        for i in 0..n {
            let v = m[(i, j)].modulus_squared();
            total += v;
            if i != j {
                off += v;
            }
        }
    }
    (total.sqrt(), off.sqrt())
}

/// Cyclic Jacobi diagonalization of a Hermitian (or real symmetric) matrix.
///
/// Each pivot is first made real by a diagonal phase and then annihilated by
/// a plane rotation, so the same code serves `f64` and `Complex<f64>`.
/// Only the Hermitian part of `a` is meaningful.
pub fn eigh<T: ComplexField<RealField = f64> + Copy>(a: &DMatrix<T>) -> Result<Eigh<T>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.ncols(),
        });
    }
    let mut m = a.clone();
    let mut v = DMatrix::<T>::identity(n, n);
    let (total, _) = frobenius(&m);
    if !total.is_finite() {
        return Err(Error::Numeric("non-finite matrix entry".into()));
    }

    let mut sweeps = 0;
    loop {
        let (_, off) = frobenius(&m);
        if off <= JACOBI_REL_TOL * total {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::Numeric(format!(
                "Jacobi did not converge after {JACOBI_MAX_SWEEPS} sweeps (off-diagonal {off:e})"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let r = apq.modulus();
                if r == 0.0 {
                    continue;
                }
                let phase = apq.signum().conjugate();
                let app = m[(p, p)].real();
                let aqq = m[(q, q)].real();
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // unitary U restricted to columns (p, q)
                let upp = T::from_real(c);
                let upq = T::from_real(s);
                let uqp = phase.scale(-s);
                let uqq = phase.scale(c);

                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp * upp + akq * uqp;
                    m[(k, q)] = akp * upq + akq * uqq;
                }
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = upp.conjugate() * apk + uqp.conjugate() * aqk;
                    m[(q, k)] = upq.conjugate() * apk + uqq.conjugate() * aqk;
                }
                m[(p, q)] = T::zero();
                m[(q, p)] = T::zero();
                m[(p, p)] = T::from_real(m[(p, p)].real());
                m[(q, q)] = T::from_real(m[(q, q)].real());
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * upp + vkq * uqp;
                    v[(k, q)] = vkp * upq + vkq * uqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].real().total_cmp(&m[(i, i)].real()));
    let values = order.iter().map(|&i| m[(i, i)].real()).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(Eigh {
        values,
        vectors,
        sweeps,
    })
}

/// Eigenvalues (decreasing) of a real symmetric matrix.
pub fn sym_eigenvalues(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    Ok(eigh(a)?.values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Complex;

    #[test]
    fn two_by_two_constant_row_sums() {
        let a = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let e = eigh(&a).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_matrix_converges_immediately() {
        let e = eigh(&DMatrix::<f64>::zeros(3, 3)).unwrap();
        assert_eq!(e.sweeps, 0);
        assert_eq!(e.values, vec![0.0; 3]);
    }

    #[test]
    fn hermitian_reconstruction() {
        let n = 4;
        let mut h = DMatrix::<Complex<f64>>::zeros(n, n);
        let mut k = 0.3_f64;
        for i in 0..n {
            for j in i..n {
                k = (k * 7.13 + 0.41).fract();
                let z = if i == j {
                    Complex::new(k * 4.0 - 2.0, 0.0)
                } else {
                    Complex::new(k - 0.5, (k * 3.7).fract() - 0.5)
                };
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        let e = eigh(&h).unwrap();
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            n,
            e.values.iter().map(|&x| Complex::new(x, 0.0)),
        ));
        let rec = &e.vectors * d * e.vectors.adjoint();
        assert!((rec - &h).norm() < 1e-12);
        let unit = e.vectors.adjoint() * &e.vectors;
        assert!((unit - DMatrix::identity(n, n)).norm() < 1e-12);
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn rejects_non_square() {
        assert!(eigh(&DMatrix::<f64>::zeros(2, 3)).is_err());
    }
}
