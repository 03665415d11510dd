//! Distance from a point to the convex hull of a finite point set, via
//! Wolfe's minimum-norm-point algorithm.

use nalgebra::{DMatrix, DVector};

use crate::linalg::{dot, norm, norm_sq};

/// Euclidean distance from `x` to `conv(vertices)`.
pub fn hull_distance(vertices: &[Vec<f64>], x: &[f64]) -> f64 {
    let shifted: Vec<Vec<f64>> = vertices
        .iter()
        .map(|v| v.iter().zip(x).map(|(a, b)| a - b).collect())
        .collect();
    norm(&min_norm_point(&shifted))
}

/// Minimum-norm point of `conv(points)`.
pub fn min_norm_point(points: &[Vec<f64>]) -> Vec<f64> {
    assert!(!points.is_empty(), "min_norm_point on empty set");
    let dim = points[0].len();
    let scale = points.iter().map(|p| norm_sq(p)).fold(0.0, f64::max).max(1e-300);
    let eps = 1e-12 * scale;

    let combine = |set: &[usize], weights: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for (&i, &w) in set.iter().zip(weights) {
            for (o, p) in out.iter_mut().zip(&points[i]) {
                *o += w * p;
            }
        }
        out
    };

    let start = (0..points.len())
        .min_by(|&a, &b| norm_sq(&points[a]).total_cmp(&norm_sq(&points[b])))
        .unwrap_or(0);
    let mut set = vec![start];
    let mut lambda = vec![1.0];
    let mut x = points[start].clone();

    for _major in 0..(10 * points.len() + 100) {
        let xx = norm_sq(&x);
        if xx <= eps * 1e-6 {
            break;
        }
        let (j, best) = (0..points.len())
            .map(|j| (j, dot(&x, &points[j])))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if xx - best <= eps || set.contains(&j) {
            break;
        }
        set.push(j);
        lambda.push(0.0);
        loop {
            let mu = affine_minimizer(points, &set);
            if mu.iter().all(|&m| m > 1e-15) {
                lambda = mu;
                x = combine(&set, &lambda);
                break;
            }
            let mut theta = 1.0f64;
            for (l, m) in lambda.iter().zip(&mu) {
                if *m <= 1e-15 && l - m > 0.0 {
                    theta = theta.min(l / (l - m));
                }
            }
            for (l, m) in lambda.iter_mut().zip(&mu) {
                *l = (1.0 - theta) * *l + theta * m;
            }
            let mut keep_set = Vec::with_capacity(set.len());
            let mut keep_lambda = Vec::with_capacity(set.len());
            for (&i, &l) in set.iter().zip(&lambda) {
                if l > 1e-15 {
                    keep_set.push(i);
                    keep_lambda.push(l);
                }
            }
            if keep_set.is_empty() {
                keep_set.push(*set.last().unwrap());
                keep_lambda.push(1.0);
            }
            let total: f64 = keep_lambda.iter().sum();
            keep_lambda.iter_mut().for_each(|l| *l /= total);
            set = keep_set;
            lambda = keep_lambda;
            x = combine(&set, &lambda);
            if set.len() == 1 {
                break;
            }
        }
    }
    x
}

/// Weights `mu` (summing to one) minimizing `||sum mu_i p_i||` over the
/// affine hull of the selected points.
fn affine_minimizer(points: &[Vec<f64>], set: &[usize]) -> Vec<f64> {
    let k = set.len();
    let mut sys = DMatrix::<f64>::zeros(k + 1, k + 1);
    for a in 0..k {
        for b in a..k {
            let g = dot(&points[set[a]], &points[set[b]]);
            sys[(a, b)] = g;
            sys[(b, a)] = g;
        }
        sys[(a, k)] = 1.0;
        sys[(k, a)] = 1.0;
    }
    let mut rhs = DVector::<f64>::zeros(k + 1);
    rhs[k] = 1.0;
    let sol = sys
        .clone()
        .lu()
        .solve(&rhs)
        .filter(|s| s.iter().all(|v| v.is_finite()))
        .unwrap_or_else(|| {
            sys.svd(true, true)
                .solve(&rhs, 1e-12)
                .unwrap_or_else(|_| DVector::from_element(k + 1, 1.0 / k as f64))
        });
    sol.iter().take(k).copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_distances() {
        let tri = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(hull_distance(&tri, &[0.2, 0.2]) < 1e-12);
        assert!((hull_distance(&tri, &[1.0, 1.0]) - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((hull_distance(&tri, &[-1.0, 0.0]) - 1.0).abs() < 1e-12);
        assert!(hull_distance(&tri, &[0.0, 1.0]) < 1e-12);
    }

    #[test]
    fn cube_interior_and_exterior() {
        let mut verts = Vec::new();
        for m in 0..8u32 {
            verts.push((0..3).map(|i| f64::from((m >> i) & 1)).collect::<Vec<_>>());
        }
        assert!(hull_distance(&verts, &[0.3, 0.9, 0.5]) < 1e-12);
        assert!((hull_distance(&verts, &[1.5, 0.5, 0.5]) - 0.5).abs() < 1e-12);
        assert!((hull_distance(&verts, &[2.0, 2.0, 1.0]) - 2f64.sqrt()).abs() < 1e-12);
    }
}
