//! Reference computations that share no code with the solvers.

use nalgebra::DMatrix;

/// Simplex projection by bisection on the KKT threshold
/// `sum_i max(v_i - theta, 0) = 1`.
pub fn simplex_project_bisection(v: &[f64]) -> Vec<f64> {
    let mass = |t: f64| v.iter().map(|x| (x - t).max(0.0)).sum::<f64>();
    let mut lo = v.iter().copied().fold(f64::INFINITY, f64::min) - 1.0;
    let mut hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mass(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    v.iter().map(|x| (x - t).max(0.0)).collect()
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut out = vec![a.clone()];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Edge sets of all `source -> sink` paths of an edge list.
pub fn all_paths(edges: &[[usize; 3]], source: usize, sink: usize) -> Vec<Vec<usize>> {
    fn go(edges: &[[usize; 3]], node: usize, sink: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if node == sink {
            out.push(acc.clone());
            return;
        }
        for (e, edge) in edges.iter().enumerate() {
            if edge[0] == node {
                acc.push(e);
                go(edges, edge[1], sink, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(edges, source, sink, &mut Vec::new(), &mut out);
    out
}

/// Smallest eigenvalue of a dense symmetric `n x n` matrix.
pub fn dense_min_eigenvalue(n: usize, dense: &[f64]) -> f64 {
    DMatrix::from_row_slice(n, n, dense)
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// `max_i (A x)_i` for a dense row-major `A`.
pub fn max_affine(rows: usize, cols: usize, a: &[f64], x: &[f64]) -> f64 {
    (0..rows)
        .map(|i| (0..cols).map(|j| a[i * cols + j] * x[j]).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Lower bound on `min_{x in simplex} max_{y in simplex} <Ax, y>` by
/// weak duality over a grid of `y` with step `1/steps`.
pub fn matrix_game_lower_bound(rows: usize, cols: usize, a: &[f64], steps: usize) -> f64 {
    let mut best = f64::NEG_INFINITY;
    let mut y = vec![0usize; rows];
    fn rec(
        i: usize,
        left: usize,
        y: &mut Vec<usize>,
        steps: usize,
        rows: usize,
        cols: usize,
        a: &[f64],
        best: &mut f64,
    ) {
        if i == rows - 1 {
            y[i] = left;
            let val = (0..cols)
                .map(|j| (0..rows).map(|r| a[r * cols + j] * y[r] as f64 / steps as f64).sum::<f64>())
                .fold(f64::INFINITY, f64::min);
            *best = best.max(val);
            return;
        }
        for take in 0..=left {
            y[i] = take;
            rec(i + 1, left - take, y, steps, rows, cols, a, best);
        }
    }
    rec(0, steps, &mut y, steps, rows, cols, a, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heap_permutations() {
        let p = permutations(4);
        assert_eq!(p.len(), 24);
        let mut s = p.clone();
        s.sort();
        s.dedup();
        assert_eq!(s.len(), 24);
    }

    #[test]
    fn bisection_projection() {
        let p = simplex_project_bisection(&[2.0, 0.0]);
        assert!((p[0] - 1.0).abs() < 1e-12 && p[1].abs() < 1e-12);
    }

    #[test]
    fn matching_pennies_value_is_zero() {
        let a = [1.0, -1.0, -1.0, 1.0];
        assert!(matrix_game_lower_bound(2, 2, &a, 10).abs() < 1e-12);
    }
}
