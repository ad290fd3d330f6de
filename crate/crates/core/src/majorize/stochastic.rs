//! Doubly stochastic matrices: T-transform chains realizing `p = Dq` and
//! Birkhoff decompositions into permutation matrices.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::majorizes;
use crate::error::{Error, Result};

/// Nonnegative entries (within `tol`) and unit row and column sums (within `tol`).
pub fn is_doubly_stochastic(d: &DMatrix<f64>, tol: f64) -> bool {
    let n = d.nrows();
    if d.ncols() != n {
        return false;
    }
    d.iter().all(|&v| v >= -tol)
        && (0..n).all(|i| (d.row(i).sum() - 1.0).abs() <= tol && (d.column(i).sum() - 1.0).abs() <= tol)
}

fn permutation_matrix(perm: &[usize]) -> DMatrix<f64> {
    let n = perm.len();
    let mut m = DMatrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        m[(i, j)] = 1.0;
    }
    m
}

/// `λI + (1−λ)Π_{jk}` acting on sorted coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TTransform {
    pub j: usize,
    pub k: usize,
    pub lambda: f64,
}

impl TTransform {
    pub fn matrix(&self, n: usize) -> DMatrix<f64> {
        let mut m = DMatrix::identity(n, n);
        let mu = 1.0 - self.lambda;
        m[(self.j, self.j)] = self.lambda;
        m[(self.k, self.k)] = self.lambda;
        m[(self.j, self.k)] = mu;
        m[(self.k, self.j)] = mu;
        m
    }

    /// Applies the transform to the rows of `m` in place.
    fn apply_rows(&self, m: &mut DMatrix<f64>) {
        let mu = 1.0 - self.lambda;
        for c in 0..m.ncols() {
            let a = m[(self.j, c)];
            let b = m[(self.k, c)];
            m[(self.j, c)] = self.lambda * a + mu * b;
            m[(self.k, c)] = mu * a + self.lambda * b;
        }
    }
}

/// `D = S_pᵀ · T_m ⋯ T_1 · S_q`, where `S_v` sorts `v` decreasingly
/// (`(S_v v)_i = v[sort_v[i]]`, ties broken by original index).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TTransformChain {
    pub sort_q: Vec<usize>,
    pub transforms: Vec<TTransform>,
    pub sort_p: Vec<usize>,
    #[serde(with = "matrix_rows")]
    pub product: DMatrix<f64>,
}

impl TTransformChain {
    /// Every factor in application order: `S_q`, the T-transforms, `S_pᵀ`.
    pub fn matrices(&self) -> Vec<DMatrix<f64>> {
        let n = self.sort_q.len();
        let mut out = vec![permutation_matrix(&self.sort_q)];
        out.extend(self.transforms.iter().map(|t| t.matrix(n)));
        out.push(permutation_matrix(&self.sort_p).transpose());
        out
    }
}

fn sort_order(v: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[b].total_cmp(&v[a]).then(a.cmp(&b)));
    idx
}

/// Doubly stochastic `D` with `Dq = p`, built from at most `n − 1` T-transforms.
pub fn ds_transfer_matrix(p: &[f64], q: &[f64], tol: Option<f64>) -> Result<TTransformChain> {
    let verdict = majorizes(p, q, tol)?;
    if !verdict.holds {
        let (k, slack) = verdict
            .partial_sum_slacks
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, s)| (i + 1, s))
            .unwrap_or((0, 0.0));
        let (k, slack) = if slack >= -verdict.tol_used {
            (p.len(), -verdict.trace_gap.abs())
        } else {
            (k, slack)
        };
        return Err(Error::NotMajorized { k, slack });
    }
    let n = p.len();
    let sort_p = sort_order(p);
    let sort_q = sort_order(q);
    let target: Vec<f64> = sort_p.iter().map(|&i| p[i]).collect();
    let mut r: Vec<f64> = sort_q.iter().map(|&i| q[i]).collect();
    let eps = 1e-13 * q.iter().map(|v| v.abs()).sum::<f64>().max(1.0);

    let mut transforms = Vec::new();
    while transforms.len() < n.saturating_sub(1) {
        let Some(j) = (0..n).find(|&i| r[i] > target[i] + eps) else {
            break;
        };
        let Some(k) = (j + 1..n).find(|&i| r[i] < target[i] - eps) else {
            break;
        };
        let dj = r[j] - target[j];
        let dk = target[k] - r[k];
        let delta = dj.min(dk);
        let lambda = (1.0 - delta / (r[j] - r[k])).clamp(0.0, 1.0);
        let t = TTransform { j, k, lambda };
        let (a, b) = (r[j], r[k]);
        r[j] = lambda * a + (1.0 - lambda) * b;
        r[k] = (1.0 - lambda) * a + lambda * b;
        if dj <= dk {
            r[j] = target[j];
        }
        if dk <= dj {
            r[k] = target[k];
        }
        transforms.push(t);
    }

    let mut m = permutation_matrix(&sort_q);
    for t in &transforms {
        t.apply_rows(&mut m);
    }
    let product = permutation_matrix(&sort_p).transpose() * m;
    Ok(TTransformChain {
        sort_q,
        transforms,
        sort_p,
        product,
    })
}

/// One term `weight · P_σ` with `P_σ[i][σ(i)] = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BirkhoffTerm {
    pub weight: f64,
    pub permutation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BirkhoffDecomposition {
    pub n: usize,
    pub terms: Vec<BirkhoffTerm>,
}

impl BirkhoffDecomposition {
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for t in &self.terms {
            for (i, &j) in t.permutation.iter().enumerate() {
                m[(i, j)] += t.weight;
            }
        }
        m
    }

    pub fn total_weight(&self) -> f64 {
        self.terms.iter().map(|t| t.weight).sum()
    }

    /// `n² − 2n + 2`
    pub fn term_bound(n: usize) -> usize {
        (n * n + 2).saturating_sub(2 * n)
    }
}

/// Perfect matching of rows to columns using only entries where `allowed`
/// holds (Kuhn's augmenting paths). Returns `row → column`.
fn perfect_matching(n: usize, allowed: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    fn augment(
        row: usize,
        n: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        col_owner: &mut [Option<usize>],
    ) -> bool {
        for c in 0..n {
            if allowed(row, c) && !seen[c] {
                seen[c] = true;
                if col_owner[c].is_none_or(|r| augment(r, n, allowed, seen, col_owner)) {
                    col_owner[c] = Some(row);
                    return true;
                }
            }
        }
        false
    }
    let mut col_owner = vec![None; n];
    for row in 0..n {
        let mut seen = vec![false; n];
        if !augment(row, n, &allowed, &mut seen, &mut col_owner) {
            return None;
        }
    }
    let mut perm = vec![0; n];
    for (c, r) in col_owner.iter().enumerate() {
        perm[r.expect("perfect matching")] = c;
    }
    Some(perm)
}

/// Greedy Birkhoff decomposition: repeatedly subtracts the permutation whose
/// smallest supported entry is largest (bottleneck matching).
pub fn birkhoff_decompose(d: &DMatrix<f64>) -> Result<BirkhoffDecomposition> {
    let n = d.nrows();
    if d.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: d.ncols(),
        });
    }
    if !is_doubly_stochastic(d, 1e-9) {
        return Err(Error::Domain("matrix is not doubly stochastic within 1e-9".into()));
    }
    let mut r = d.map(|v| v.max(0.0));
    let mut terms = Vec::new();
    let mut remaining = 1.0;
    let cap = BirkhoffDecomposition::term_bound(n).max(1) + n * n;
    while remaining > 1e-13 && r.max() > 1e-13 && terms.len() < cap {
        let mut levels: Vec<f64> = r.iter().copied().filter(|&v| v > 0.0).collect();
        levels.sort_by(f64::total_cmp);
        levels.dedup();
        let Some(mut perm) = perfect_matching(n, |i, j| r[(i, j)] > 0.0) else {
            if remaining <= 1e-9 {
                break;
            }
            return Err(Error::Numeric(format!(
                "no perfect matching on the support with residual mass {remaining:e}"
            )));
        };
        let (mut lo, mut hi) = (0, levels.len() - 1);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            let t = levels[mid];
            match perfect_matching(n, |i, j| r[(i, j)] >= t) {
                Some(p) => {
                    perm = p;
                    lo = mid;
                }
                None => hi = mid - 1,
            }
        }
        let weight = perm
            .iter()
            .enumerate()
            .map(|(i, &j)| r[(i, j)])
            .fold(f64::INFINITY, f64::min);
        for (i, &j) in perm.iter().enumerate() {
            let v = r[(i, j)] - weight;
            r[(i, j)] = if v <= 0.0 { 0.0 } else { v };
        }
        remaining -= weight;
        terms.push(BirkhoffTerm {
            weight,
            permutation: perm,
        });
    }
    Ok(BirkhoffDecomposition { n, terms })
}

mod matrix_rows {
    use nalgebra::DMatrix;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &DMatrix<f64>, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<DMatrix<f64>, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom("matrix must be square"));
        }
        Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn two_point_example() {
        let c = ds_transfer_matrix(&[2.0, 2.0], &[3.0, 1.0], None).unwrap();
        assert_eq!(c.transforms.len(), 1);
        assert!((c.transforms[0].lambda - 0.5).abs() < 1e-15);
        assert!((&c.product - DMatrix::from_element(2, 2, 0.5)).norm() < 1e-15);
        assert_eq!(c.matrices().len(), 3);
    }

    #[test]
    fn identity_when_equal() {
        let q = [0.3, 1.2, -0.4, 0.9];
        let c = ds_transfer_matrix(&q, &q, None).unwrap();
        assert!(c.transforms.is_empty());
        assert_eq!(c.product, DMatrix::identity(4, 4));
    }

    #[test]
    fn rejects_non_majorized() {
        match ds_transfer_matrix(&[3.0, 1.0], &[2.0, 2.0], None) {
            Err(Error::NotMajorized { k, slack }) => {
                assert_eq!(k, 1);
                assert_eq!(slack, -1.0);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            ds_transfer_matrix(&[1.0, 1.0], &[3.0, 1.0], None),
            Err(Error::NotMajorized { k: 2, .. })
        ));
    }

    #[test]
    fn random_round_trips() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..50 {
            let n = 6;
            let w = rng.simplex(4);
            let mut d0 = DMatrix::zeros(n, n);
            for wk in w {
                d0 += permutation_matrix(&rng.permutation(n)) * wk;
            }
            let q: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
            let p: Vec<f64> = (&d0 * nalgebra::DVector::from_column_slice(&q)).iter().copied().collect();
            let c = ds_transfer_matrix(&p, &q, None).unwrap();
            assert!(c.transforms.len() < n);
            let dq = &c.product * nalgebra::DVector::from_column_slice(&q);
            let l1: f64 = q.iter().map(|v| v.abs()).sum();
            for i in 0..n {
                assert!((dq[i] - p[i]).abs() <= 1e-10 * l1);
            }
            assert!(is_doubly_stochastic(&c.product, 1e-12));

            let b = birkhoff_decompose(&d0).unwrap();
            assert!((b.reconstruct() - &d0).amax() < 1e-10);
            assert!((b.total_weight() - 1.0).abs() < 1e-12);
            assert!(b.terms.len() <= BirkhoffDecomposition::term_bound(n));
        }
    }

    #[test]
    fn birkhoff_examples() {
        let b = birkhoff_decompose(&DMatrix::from_element(2, 2, 0.5)).unwrap();
        assert_eq!(b.terms.len(), 2);
        assert!(b.terms.iter().all(|t| (t.weight - 0.5).abs() < 1e-15));
        let mut perms: Vec<_> = b.terms.iter().map(|t| t.permutation.clone()).collect();
        perms.sort();
        assert_eq!(perms, vec![vec![0, 1], vec![1, 0]]);
        let p = permutation_matrix(&[2, 0, 1]);
        let b = birkhoff_decompose(&p).unwrap();
        assert_eq!(b.terms, vec![BirkhoffTerm { weight: 1.0, permutation: vec![2, 0, 1] }]);
        assert!(birkhoff_decompose(&DMatrix::from_element(2, 2, 0.6)).is_err());
    }

    #[test]
    fn chain_json_round_trip() {
        let c = ds_transfer_matrix(&[2.0, 2.0, 1.0], &[3.0, 1.0, 1.0], None).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: TTransformChain = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
