//! Dense symmetric eigensolver: Householder reduction to tridiagonal form,
//! then implicit-shift QL.

use super::operator::{DenseOperator, LinearOperator};
use super::spectrum::SpectrumResult;
use crate::error::{Error, Result};

/// Largest dimension [`dense_full_spectrum`] accepts by default.
pub const DEFAULT_DENSE_LIMIT: usize = 4096;

const MAX_QL_SWEEPS: usize = 60;

/// Builds the dense matrix of `op` column by column from basis vectors.
pub fn materialize(op: &dyn LinearOperator) -> DenseOperator {
    let n = op.dim();
    let mut data = vec![0.0; n * n];
    let mut basis = vec![0.0; n];
    let mut col = vec![0.0; n];
    for j in 0..n {
        basis[j] = 1.0;
        op.apply_unchecked(&basis, &mut col);
        basis[j] = 0.0;
        for i in 0..n {
            data[i * n + j] = col[i];
        }
    }
    DenseOperator::from_row_major(n, data).expect("n*n entries")
}

/// All eigenvalues of `op` (descending), optionally with eigenvectors.
pub fn dense_full_spectrum(
    op: &dyn LinearOperator,
    n_limit: usize,
    want_vectors: bool,
) -> Result<SpectrumResult> {
    let n = op.dim();
    if n > n_limit {
        return Err(Error::DenseLimitExceeded { n, limit: n_limit });
    }
    if !op.is_symmetric() {
        return Err(Error::InvalidArgument("operator is not symmetric".into()));
    }
    let dense = materialize(op);
    let eig = symmetric_eigen(dense.data().to_vec(), n, want_vectors)?;
    let residuals = match &eig.vectors {
        Some(vs) => vs
            .iter()
            .zip(&eig.values)
            .map(|(v, &z)| {
                let av = dense.matvec(v).expect("dimension n");
                av.iter()
                    .zip(v)
                    .map(|(a, b)| (a - z * b).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .collect(),
        None => Vec::new(),
    };
    Ok(SpectrumResult {
        eigenvalues: eig.values,
        eigenvectors: eig.vectors,
        residuals,
        iterations: eig.sweeps,
    })
}

#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// Descending.
    pub values: Vec<f64>,
    /// `vectors[i]` pairs with `values[i]`; unit norm.
    pub vectors: Option<Vec<Vec<f64>>>,
    /// Total QL iterations.
    pub sweeps: usize,
}

/// Eigen-decomposition of a symmetric row-major `n x n` matrix. Only the
/// lower triangle is read.
pub fn symmetric_eigen(mut a: Vec<f64>, n: usize, want_vectors: bool) -> Result<SymmetricEigen> {
    if a.len() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            got: a.len(),
        });
    }
    if n == 0 {
        return Ok(SymmetricEigen {
            values: Vec::new(),
            vectors: want_vectors.then(Vec::new),
            sweeps: 0,
        });
    }
    let tri = tridiagonalize(&mut a, n, want_vectors);
    let (mut d, mut e) = (tri.diag, tri.off);
    let mut z = tri.q_transposed;
    let sweeps = tridiagonal_ql(&mut d, &mut e, z.as_deref_mut(), n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].total_cmp(&d[i]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = z.map(|z| {
        order
            .iter()
            .map(|&i| {
                let mut v = z[i * n..(i + 1) * n].to_vec();
                let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v.iter_mut().for_each(|x| *x /= nrm);
                v
            })
            .collect()
    });
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
    })
}

struct Tridiagonal {
    diag: Vec<f64>,
    /// `off[i]` couples `i` and `i + 1`; `off[n - 1] = 0`.
    off: Vec<f64>,
    /// Row `i` is column `i` of the orthogonal factor `Q` with `A = Q T Q^T`.
    q_transposed: Option<Vec<f64>>,
}

/// Householder reduction working on the lower triangle of `a` (destroyed).
fn tridiagonalize(a: &mut [f64], n: usize, want_q: bool) -> Tridiagonal {
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    let mut reflectors: Vec<(usize, Vec<f64>, f64)> = Vec::new();
    let mut p = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        diag[k] = a[k * n + k];
        let base = k + 1;
        let s = n - base;
        let mut v: Vec<f64> = (0..s).map(|t| a[(base + t) * n + k]).collect();
        let tail: f64 = v[1..].iter().map(|x| x * x).sum();
        if tail == 0.0 {
            off[k] = v[0];
            continue;
        }
        let norm = (v[0] * v[0] + tail).sqrt();
        let alpha = if v[0] >= 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let beta = 2.0 / (v[0] * v[0] + tail);
        off[k] = alpha;

        // p = beta * A22 v from the lower triangle.
        let p = &mut p[..s];
        p.iter_mut().for_each(|x| *x = 0.0);
        for i in 0..s {
            let row = &a[(base + i) * n + base..(base + i) * n + base + i + 1];
            let vi = v[i];
            let mut acc = 0.0;
            for (j, &aij) in row[..i].iter().enumerate() {
                acc += aij * v[j];
                p[j] += aij * vi;
            }
            p[i] += acc + row[i] * vi;
        }
        p.iter_mut().for_each(|x| *x *= beta);
        let kfac = 0.5 * beta * p.iter().zip(&v).map(|(x, y)| x * y).sum::<f64>();
        // w = p - kfac v, stored in p
        for (pi, vi) in p.iter_mut().zip(&v) {
            *pi -= kfac * vi;
        }
        for i in 0..s {
            let (vi, wi) = (v[i], p[i]);
            let row = &mut a[(base + i) * n + base..(base + i) * n + base + i + 1];
            for (j, aij) in row.iter_mut().enumerate() {
                *aij -= vi * p[j] + wi * v[j];
            }
        }
        if want_q {
            reflectors.push((base, v, beta));
        }
    }
    if n >= 2 {
        diag[n - 2] = a[(n - 2) * n + n - 2];
        off[n - 2] = a[(n - 1) * n + n - 2];
    }
    diag[n - 1] = a[(n - 1) * n + n - 1];

    let q_transposed = want_q.then(|| {
        let mut q = vec![0.0; n * n];
        for i in 0..n {
            q[i * n + i] = 1.0;
        }
        let mut t = vec![0.0; n];
        for (base, v, beta) in reflectors.iter().rev() {
            t.iter_mut().for_each(|x| *x = 0.0);
            for (r, &vr) in v.iter().enumerate() {
                let row = &q[(base + r) * n..(base + r + 1) * n];
                for (tc, &qc) in t.iter_mut().zip(row) {
                    *tc += vr * qc;
                }
            }
            for (r, &vr) in v.iter().enumerate() {
                let f = beta * vr;
                let row = &mut q[(base + r) * n..(base + r + 1) * n];
                for (qc, &tc) in row.iter_mut().zip(&t) {
                    *qc -= f * tc;
                }
            }
        }
        let mut qt = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                qt[j * n + i] = q[i * n + j];
            }
        }
        qt
    });

    Tridiagonal {
        diag,
        off,
        q_transposed,
    }
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. On return `d` holds
/// the (unsorted) eigenvalues; if `zt` is given, its rows are rotated so
/// that row `i` becomes the eigenvector of `d[i]`.
fn tridiagonal_ql(
    d: &mut [f64],
    e: &mut [f64],
    mut zt: Option<&mut [f64]>,
    n: usize,
) -> Result<usize> {
    let mut total = 0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            total += 1;
            if iter > MAX_QL_SWEEPS {
                return Err(Error::QlNoConvergence { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = zt.as_deref_mut() {
                    let (lo, hi) = z.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..(i + 1) * n];
                    let zi1 = &mut hi[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let f = *b;
                        *b = s * *a + c * f;
                        *a = c * *a - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand::Rng;

    fn random_symmetric(n: usize, seed: u64) -> DenseOperator {
        let mut r = rng::stream(seed, 0);
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let x: f64 = r.gen_range(-1.0..1.0);
                data[i * n + j] = x;
                data[j * n + i] = x;
            }
        }
        DenseOperator::from_row_major(n, data).unwrap()
    }

    #[test]
    fn two_by_two_swap() {
        let m = DenseOperator::from_row_major(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let r = dense_full_spectrum(&m, DEFAULT_DENSE_LIMIT, false).unwrap();
        assert!((r.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!((r.eigenvalues[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_matrix() {
        let m = DenseOperator::diagonal(&[0.0; 3]);
        let r = dense_full_spectrum(&m, DEFAULT_DENSE_LIMIT, true).unwrap();
        assert_eq!(r.eigenvalues, vec![0.0; 3]);
    }

    #[test]
    fn trace_and_frobenius_identities() {
        let m = random_symmetric(50, 3);
        let r = dense_full_spectrum(&m, DEFAULT_DENSE_LIMIT, false).unwrap();
        let sum: f64 = r.eigenvalues.iter().sum();
        let sumsq: f64 = r.eigenvalues.iter().map(|z| z * z).sum();
        assert!((sum - m.trace()).abs() < 1e-8);
        assert!((sumsq - m.frobenius_sq()).abs() < 1e-8);
        assert!(r.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn eigenvectors_are_orthonormal_with_small_residuals() {
        let m = random_symmetric(40, 11);
        let r = dense_full_spectrum(&m, DEFAULT_DENSE_LIMIT, true).unwrap();
        let vs = r.eigenvectors.as_ref().unwrap();
        for (i, vi) in vs.iter().enumerate() {
            for (j, vj) in vs.iter().enumerate().take(i + 1) {
                let d: f64 = vi.iter().zip(vj).map(|(a, b)| a * b).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-10, "({i},{j}) = {d}");
            }
        }
        assert!(r.residuals.iter().all(|&res| res < 1e-10));
    }

    #[test]
    fn already_tridiagonal_and_diagonal_inputs() {
        let m = DenseOperator::diagonal(&[1.0, 3.0, 2.0]);
        let r = dense_full_spectrum(&m, DEFAULT_DENSE_LIMIT, true).unwrap();
        assert_eq!(r.eigenvalues, vec![3.0, 2.0, 1.0]);
        let v0 = &r.eigenvectors.unwrap()[0];
        assert!((v0[1].abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn limit_and_symmetry_enforced() {
        let m = DenseOperator::diagonal(&[1.0; 5]);
        assert!(matches!(
            dense_full_spectrum(&m, 4, false),
            Err(Error::DenseLimitExceeded { n: 5, limit: 4 })
        ));
        let ns = DenseOperator::from_fn(3, |i, j| (2 * i + j) as f64);
        assert!(dense_full_spectrum(&ns, 10, false).is_err());
    }

    #[test]
    fn one_by_one() {
        let m = DenseOperator::diagonal(&[-4.5]);
        let r = dense_full_spectrum(&m, 10, true).unwrap();
        assert_eq!(r.eigenvalues, vec![-4.5]);
        assert_eq!(r.eigenvectors.unwrap(), vec![vec![1.0]]);
    }
}
