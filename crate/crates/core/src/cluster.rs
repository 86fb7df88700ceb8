//! Seeded k-means (k-means++ initialization, Lloyd iterations).

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::rng::{self, tag};

const MAX_LLOYD_ITERS: usize = 300;
const RETRY_ROUNDS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansResult {
    pub labels: Vec<usize>,
    pub centroids: Vec<f64>,
    /// Within-cluster sum of squared distances.
    pub inertia: f64,
}

/// Clusters `points` (row-major, `dim` columns) into `k` groups, keeping the
/// lowest-inertia run out of `restarts`. Runs that end with an empty
/// cluster are discarded; if a whole round is discarded, another round with
/// fresh seeds is tried before giving up.
pub fn kmeans(
    points: &[f64],
    dim: usize,
    k: usize,
    restarts: usize,
    seed: u64,
) -> Result<KMeansResult> {
    if dim == 0 || !points.len().is_multiple_of(dim) {
        return Err(Error::InvalidArgument(
            "point buffer does not match dimension".into(),
        ));
    }
    let n = points.len() / dim;
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "cannot form {k} clusters from {n} points"
        )));
    }
    let restarts = restarts.max(1);
    for round in 0..RETRY_ROUNDS {
        let mut best: Option<KMeansResult> = None;
        for r in 0..restarts {
            let stream = tag::KMEANS + (round * restarts + r) as u64;
            let mut rng = rng::stream(seed, stream);
            if let Some(run) = lloyd(points, dim, k, &mut rng) {
                if best.as_ref().is_none_or(|b| run.inertia < b.inertia) {
                    best = Some(run);
                }
            }
        }
        if let Some(best) = best {
            return Ok(best);
        }
    }
    Err(Error::EmptyCluster {
        attempts: RETRY_ROUNDS * restarts,
    })
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()
}

fn nearest(point: &[f64], centroids: &[f64], dim: usize) -> (usize, f64) {
    centroids
        .chunks_exact(dim)
        .enumerate()
        .map(|(c, cen)| (c, sq_dist(point, cen)))
        .fold(
            (0, f64::INFINITY),
            |best, cur| if cur.1 < best.1 { cur } else { best },
        )
}

fn plus_plus_init(points: &[f64], dim: usize, k: usize, rng: &mut rng::Rng) -> Vec<f64> {
    let n = points.len() / dim;
    let mut centroids = Vec::with_capacity(k * dim);
    let first = rng.gen_range(0..n);
    centroids.extend_from_slice(&points[first * dim..(first + 1) * dim]);
    let mut d2: Vec<f64> = points
        .chunks_exact(dim)
        .map(|p| sq_dist(p, &centroids[..dim]))
        .collect();
    for _ in 1..k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let mut target = rng.gen::<f64>() * total;
            let mut idx = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                if target < w {
                    idx = i;
                    break;
                }
                target -= w;
            }
            idx
        } else {
            rng.gen_range(0..n)
        };
        let start = centroids.len();
        centroids.extend_from_slice(&points[pick * dim..(pick + 1) * dim]);
        for (p, d) in points.chunks_exact(dim).zip(d2.iter_mut()) {
            *d = d.min(sq_dist(p, &centroids[start..start + dim]));
        }
    }
    centroids
}

fn lloyd(points: &[f64], dim: usize, k: usize, rng: &mut rng::Rng) -> Option<KMeansResult> {
    let n = points.len() / dim;
    let mut centroids = plus_plus_init(points, dim, k, rng);
    let mut labels = vec![usize::MAX; n];
    for _ in 0..MAX_LLOYD_ITERS {
        let mut changed = false;
        for (i, p) in points.chunks_exact(dim).enumerate() {
            let (c, _) = nearest(p, &centroids, dim);
            if labels[i] != c {
                labels[i] = c;
                changed = true;
            }
        }
        let mut sums = vec![0.0; k * dim];
        let mut counts = vec![0usize; k];
        for (p, &l) in points.chunks_exact(dim).zip(&labels) {
            counts[l] += 1;
            for (s, x) in sums[l * dim..(l + 1) * dim].iter_mut().zip(p) {
                *s += x;
            }
        }
        if counts.contains(&0) {
            return None;
        }
        for c in 0..k {
            for d in 0..dim {
                centroids[c * dim + d] = sums[c * dim + d] / counts[c] as f64;
            }
        }
        if !changed {
            break;
        }
    }
    let inertia = points
        .chunks_exact(dim)
        .zip(&labels)
        .map(|(p, &l)| sq_dist(p, &centroids[l * dim..(l + 1) * dim]))
        .sum();
    Some(KMeansResult {
        labels,
        centroids,
        inertia,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separates_well_spaced_blobs() {
        let centers = [(0.0, 0.0), (10.0, 0.0), (0.0, 10.0)];
        let mut pts = Vec::new();
        for (cx, cy) in centers {
            for t in 0..20 {
                let a = t as f64 * 0.7;
                pts.extend_from_slice(&[cx + 0.3 * a.cos(), cy + 0.3 * a.sin()]);
            }
        }
        let r = kmeans(&pts, 2, 3, 10, 1).unwrap();
        for blob in r.labels.chunks(20) {
            assert!(blob.iter().all(|&l| l == blob[0]));
        }
        let mut firsts: Vec<usize> = r.labels.chunks(20).map(|b| b[0]).collect();
        firsts.sort();
        assert_eq!(firsts, vec![0, 1, 2]);
    }

    #[test]
    fn too_few_distinct_points_fails_cleanly() {
        let pts = vec![1.0; 10];
        assert!(matches!(
            kmeans(&pts, 1, 3, 4, 0),
            Err(Error::EmptyCluster { .. })
        ));
    }

    #[test]
    fn argument_checks() {
        assert!(kmeans(&[1.0, 2.0, 3.0], 2, 1, 1, 0).is_err());
        assert!(kmeans(&[1.0, 2.0], 1, 3, 1, 0).is_err());
    }
}
