//! Thick-restart Lanczos for the algebraically largest eigenpairs of a
//! symmetric operator.
//!
//! Each cycle extends an orthonormal basis to `basis_size` vectors with
//! full reorthogonalization (classical Gram-Schmidt, two passes) and takes
//! Rayleigh-Ritz on the projected matrix `V^T Op V`. A restart keeps the
//! leading half of the Ritz vectors plus the current residual direction.
//! When the Krylov space becomes invariant the next basis vector is a fresh
//! seeded random vector, so repeated eigenvalues are still found.

use rand::Rng as _;

use super::dense::symmetric_eigen;
use super::operator::{axpy, dot, norm, LinearOperator};
use super::spectrum::SpectrumResult;
use crate::error::{Error, Result};
use crate::rng::{self, tag};

pub const DEFAULT_TOL: f64 = 1e-8;

/// `10 sqrt(n) + 200` operator applications.
pub fn default_max_iter(n: usize) -> usize {
    (10.0 * (n as f64).sqrt()) as usize + 200
}

#[derive(Debug, Clone, PartialEq)]
pub struct LanczosOptions {
    pub k: usize,
    /// Converged when `||Op v - z v|| <= tol * max(1, |z|)` for every pair.
    pub tol: f64,
    /// Budget of operator applications.
    pub max_iter: usize,
    pub seed: u64,
    /// Basis vectors per cycle; defaults to `max(2k + 30, 50)`, capped at `n`.
    pub basis_size: Option<usize>,
}

impl LanczosOptions {
    pub fn new(k: usize, n: usize, seed: u64) -> Self {
        LanczosOptions {
            k,
            tol: DEFAULT_TOL,
            max_iter: default_max_iter(n),
            seed,
            basis_size: None,
        }
    }
}

/// The `k` algebraically largest eigenpairs of `op`.
pub fn extremal_eigenpairs(
    op: &dyn LinearOperator,
    k: usize,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> Result<SpectrumResult> {
    extremal_eigenpairs_with(
        op,
        &LanczosOptions {
            k,
            tol,
            max_iter,
            seed,
            basis_size: None,
        },
    )
}

pub fn extremal_eigenpairs_with(
    op: &dyn LinearOperator,
    opts: &LanczosOptions,
) -> Result<SpectrumResult> {
    let n = op.dim();
    let k = opts.k;
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    if !op.is_symmetric() {
        return Err(Error::InvalidArgument("operator is not symmetric".into()));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {}",
            opts.tol
        )));
    }
    let cap = opts
        .basis_size
        .unwrap_or((2 * k + 30).max(50))
        .max(k + 1)
        .min(n);
    let mut rng = rng::stream(opts.seed, tag::LANCZOS);

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(cap);
    let mut h = vec![0.0; cap * cap];
    let mut w = vec![0.0; n];
    let mut coef = vec![0.0; cap];
    let mut scale = 0.0f64;
    let mut applications = 0usize;

    basis.push(fresh_direction(&basis, n, &mut rng));
    let mut best: Option<SpectrumResult> = None;

    loop {
        // Extend to a full basis; `residual_norm` couples the last vector to
        // the (unstored) next direction held in `w`.
        let mut residual_norm;
        loop {
            let j = basis.len() - 1;
            op.apply_unchecked(&basis[j], &mut w);
            applications += 1;
            coef[..=j].iter_mut().for_each(|c| *c = 0.0);
            for _ in 0..2 {
                for (i, v) in basis.iter().enumerate() {
                    let c = dot(v, &w);
                    coef[i] += c;
                    axpy(-c, v, &mut w);
                }
            }
            for i in 0..=j {
                h[i * cap + j] = coef[i];
                h[j * cap + i] = coef[i];
                scale = scale.max(coef[i].abs());
            }
            residual_norm = norm(&w);
            scale = scale.max(residual_norm);
            if basis.len() == cap {
                break;
            }
            let next = if residual_norm > 1e-10 * scale.max(f64::MIN_POSITIVE) {
                h[(j + 1) * cap + j] = residual_norm;
                h[j * cap + j + 1] = residual_norm;
                w.iter().map(|x| x / residual_norm).collect()
            } else {
                h[(j + 1) * cap + j] = 0.0;
                h[j * cap + j + 1] = 0.0;
                fresh_direction(&basis, n, &mut rng)
            };
            basis.push(next);
        }

        let size = basis.len();
        let proj: Vec<f64> = (0..size * size)
            .map(|idx| h[(idx / size) * cap + idx % size])
            .collect();
        let eig = symmetric_eigen(proj, size, true)?;
        let ritz = eig.vectors.expect("requested vectors");
        let estimates: Vec<f64> = ritz
            .iter()
            .take(k)
            .map(|y| (residual_norm * y[size - 1]).abs())
            .collect();
        let estimated_ok = estimates
            .iter()
            .zip(&eig.values)
            .all(|(r, z)| *r <= opts.tol * z.abs().max(1.0));
        let exhausted = applications >= opts.max_iter;

        if estimated_ok || exhausted || size == n {
            let result = finalize(op, &basis, &ritz, &eig.values, k, applications);
            let worst = worst_relative(&result);
            if worst <= opts.tol {
                return Ok(result);
            }
            let better = best.as_ref().is_none_or(|b| worst < worst_relative(b));
            if better {
                best = Some(result);
            }
            if exhausted || size == n {
                let best = best.expect("set above");
                return Err(Error::NotConverged {
                    iterations: applications,
                    worst_residual: best.residuals.iter().cloned().fold(0.0, f64::max),
                    best: Box::new(best),
                });
            }
        }

        // Thick restart.
        let keep = (k + (size - k) / 2).min(size - 1).max(k);
        let mut kept: Vec<Vec<f64>> = ritz[..keep].iter().map(|y| combine(&basis, y, n)).collect();
        h.iter_mut().for_each(|x| *x = 0.0);
        for (i, y) in ritz[..keep].iter().enumerate() {
            let coupling = residual_norm * y[size - 1];
            h[i * cap + i] = eig.values[i];
            h[i * cap + keep] = coupling;
            h[keep * cap + i] = coupling;
        }
        let next = if residual_norm > 1e-10 * scale.max(f64::MIN_POSITIVE) {
            w.iter().map(|x| x / residual_norm).collect()
        } else {
            fresh_direction(&kept, n, &mut rng)
        };
        kept.push(next);
        basis = kept;
    }
}

fn finalize(
    op: &dyn LinearOperator,
    basis: &[Vec<f64>],
    ritz: &[Vec<f64>],
    values: &[f64],
    k: usize,
    applications: usize,
) -> SpectrumResult {
    let n = op.dim();
    let mut vectors = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    let mut av = vec![0.0; n];
    for (y, &z) in ritz.iter().zip(values).take(k) {
        let mut v = combine(basis, y, n);
        let nrm = norm(&v);
        v.iter_mut().for_each(|x| *x /= nrm);
        orient(&mut v);
        op.apply_unchecked(&v, &mut av);
        residuals.push(
            av.iter()
                .zip(&v)
                .map(|(a, b)| (a - z * b).powi(2))
                .sum::<f64>()
                .sqrt(),
        );
        vectors.push(v);
    }
    SpectrumResult {
        eigenvalues: values[..k].to_vec(),
        eigenvectors: Some(vectors),
        residuals,
        iterations: applications,
    }
}

fn worst_relative(r: &SpectrumResult) -> f64 {
    r.residuals
        .iter()
        .zip(&r.eigenvalues)
        .map(|(res, z)| res / z.abs().max(1.0))
        .fold(0.0, f64::max)
}

fn combine(basis: &[Vec<f64>], coeffs: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n];
    for (v, &c) in basis.iter().zip(coeffs) {
        axpy(c, v, &mut out);
    }
    out
}

/// Sign convention: the largest-magnitude entry is positive.
fn orient(v: &mut [f64]) {
    let pivot = v
        .iter()
        .copied()
        .fold(0.0f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
    if pivot < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Random unit vector orthogonal to `basis`.
fn fresh_direction(basis: &[Vec<f64>], n: usize, rng: &mut rng::Rng) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let before = norm(&v);
        for _ in 0..2 {
            for b in basis {
                let c = dot(b, &v);
                axpy(-c, b, &mut v);
            }
        }
        let after = norm(&v);
        if after > 1e-8 * before {
            v.iter_mut().for_each(|x| *x /= after);
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::operator::DenseOperator;

    #[test]
    fn diagonal_fixture() {
        let op = DenseOperator::diagonal(&[1.0, 3.0, 2.0]);
        let r = extremal_eigenpairs(&op, 2, 1e-10, 100, 0).unwrap();
        assert!((r.eigenvalues[0] - 3.0).abs() < 1e-12);
        assert!((r.eigenvalues[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rank_one_operator() {
        let n = 30;
        let u: Vec<f64> = (0..n).map(|i| ((i as f64) * 0.7).sin()).collect();
        let un = norm(&u);
        let u: Vec<f64> = u.iter().map(|x| x / un).collect();
        let op = DenseOperator::from_fn(n, |i, j| u[i] * u[j]);
        let r = extremal_eigenpairs(&op, 1, 1e-10, 500, 5).unwrap();
        assert!((r.eigenvalues[0] - 1.0).abs() < 1e-10);
        let v = &r.eigenvectors.as_ref().unwrap()[0];
        assert!((dot(v, &u).abs() - 1.0).abs() < 1e-10);
        assert!((norm(v) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn repeated_eigenvalue_is_found_twice() {
        let mut diag = vec![0.0; 120];
        for (i, d) in diag.iter_mut().enumerate() {
            *d = -(i as f64) / 120.0;
        }
        diag[7] = 5.0;
        diag[90] = 5.0;
        let op = DenseOperator::diagonal(&diag);
        let r = extremal_eigenpairs(&op, 2, 1e-9, 2000, 1).unwrap();
        assert!((r.eigenvalues[0] - 5.0).abs() < 1e-9);
        assert!((r.eigenvalues[1] - 5.0).abs() < 1e-9);
    }

    #[test]
    fn zero_operator() {
        let op = DenseOperator::diagonal(&[0.0; 10]);
        let r = extremal_eigenpairs(&op, 2, 1e-8, 100, 0).unwrap();
        assert_eq!(r.eigenvalues, vec![0.0, 0.0]);
    }

    #[test]
    fn budget_exhaustion_reports_best() {
        let diag: Vec<f64> = (0..400).map(|i| 1.0 - (i as f64) * 1e-6).collect();
        let op = DenseOperator::diagonal(&diag);
        let opts = LanczosOptions {
            k: 2,
            tol: 1e-14,
            max_iter: 60,
            seed: 0,
            basis_size: Some(20),
        };
        match extremal_eigenpairs_with(&op, &opts) {
            Err(Error::NotConverged {
                iterations, best, ..
            }) => {
                assert!(iterations >= 60);
                assert_eq!(best.eigenvalues.len(), 2);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let op = DenseOperator::diagonal(&[1.0, 2.0]);
        assert!(extremal_eigenpairs(&op, 0, 1e-8, 10, 0).is_err());
        assert!(extremal_eigenpairs(&op, 3, 1e-8, 10, 0).is_err());
        let ns = DenseOperator::from_fn(3, |i, j| (2 * i + j) as f64);
        assert!(extremal_eigenpairs(&ns, 1, 1e-8, 10, 0).is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        let op = DenseOperator::from_fn(60, |i, j| 1.0 / (1.0 + (i as f64 - j as f64).abs()));
        let a = extremal_eigenpairs(&op, 3, 1e-10, 1000, 4).unwrap();
        let b = extremal_eigenpairs(&op, 3, 1e-10, 1000, 4).unwrap();
        assert_eq!(a, b);
    }
}
