//! Small dense/sparse vector and matrix kernels.
//!
//! Points are plain `Vec<f64>`. Symmetric matrices (spectrahedron points) are
//! stored in scaled packed form ("svec"): the upper triangle row by row with
//! off-diagonal entries multiplied by `sqrt(2)`, so the Euclidean inner product
//! of two packed vectors equals the Frobenius inner product of the matrices.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

pub fn norm(a: &[f64]) -> f64 {
    norm_sq(a).sqrt()
}

pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// `<c, a - b>` without materializing the difference.
pub fn dot_diff(c: &[f64], a: &[f64], b: &[f64]) -> f64 {
    c.iter()
        .zip(a.iter().zip(b))
        .map(|(ci, (ai, bi))| ci * (ai - bi))
        .sum()
}

/// `y += alpha * x`
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `(1 - t) a + t b`
pub fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| (1.0 - t) * x + t * y).collect()
}

/// In-place `a <- (1 - t) a + t b`.
pub fn lerp_into(a: &mut [f64], b: &[f64], t: f64) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = (1.0 - t) * *x + t * y;
    }
}

pub fn scale_in_place(a: &mut [f64], s: f64) {
    for x in a.iter_mut() {
        *x *= s;
    }
}

/// Packed length of an `n x n` symmetric matrix.
pub fn svec_len(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Side length `n` such that `svec_len(n) == len`, if one exists.
pub fn svec_side(len: usize) -> Option<usize> {
    let n = ((((8 * len + 1) as f64).sqrt() - 1.0) / 2.0).round() as usize;
    (svec_len(n) == len).then_some(n)
}

/// Packs a dense row-major symmetric matrix.
pub fn svec_pack(n: usize, dense: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(svec_len(n));
    for i in 0..n {
        out.push(dense[i * n + i]);
        for j in (i + 1)..n {
            out.push(0.5 * (dense[i * n + j] + dense[j * n + i]) * std::f64::consts::SQRT_2);
        }
    }
    out
}

/// Unpacks to a dense row-major symmetric matrix.
pub fn svec_unpack(n: usize, packed: &[f64]) -> Vec<f64> {
    let mut dense = vec![0.0; n * n];
    let mut idx = 0;
    for i in 0..n {
        dense[i * n + i] = packed[idx];
        idx += 1;
        for j in (i + 1)..n {
            let v = packed[idx] / std::f64::consts::SQRT_2;
            dense[i * n + j] = v;
            dense[j * n + i] = v;
            idx += 1;
        }
    }
    dense
}

/// Packed form of the rank-one matrix `v v^T`.
pub fn svec_outer(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut out = Vec::with_capacity(svec_len(n));
    for i in 0..n {
        out.push(v[i] * v[i]);
        for j in (i + 1)..n {
            out.push(v[i] * v[j] * std::f64::consts::SQRT_2);
        }
    }
    out
}

/// Dense row-major or CSR real matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "format", rename_all = "lowercase")]
pub enum Matrix {
    Dense {
        rows: usize,
        cols: usize,
        data: Vec<f64>,
    },
    Csr {
        rows: usize,
        cols: usize,
        indptr: Vec<usize>,
        indices: Vec<usize>,
        values: Vec<f64>,
    },
}

impl Matrix {
    pub fn dense(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        check_dim(rows * cols, data.len())?;
        Ok(Matrix::Dense { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_dim(cols, r.len())?;
            data.extend_from_slice(r);
        }
        Ok(Matrix::Dense {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n])
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let n = d.len();
        let mut data = vec![0.0; n * n];
        for (i, &di) in d.iter().enumerate() {
            data[i * n + i] = di;
        }
        Matrix::Dense {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Builds a CSR matrix from a dense row-major buffer, dropping exact zeros.
    pub fn csr_from_dense(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        check_dim(rows * cols, data.len())?;
        let mut indptr = Vec::with_capacity(rows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for i in 0..rows {
            for j in 0..cols {
                let v = data[i * cols + j];
                if v != 0.0 {
                    indices.push(j);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Ok(Matrix::Csr {
            rows,
            cols,
            indptr,
            indices,
            values,
        })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Matrix::Dense { rows, cols, data } => check_dim(rows * cols, data.len()),
            Matrix::Csr {
                rows,
                cols,
                indptr,
                indices,
                values,
            } => {
                check_dim(rows + 1, indptr.len())?;
                check_dim(indices.len(), values.len())?;
                if indptr.first() != Some(&0) || indptr.last() != Some(&indices.len()) {
                    return Err(Error::domain("csr indptr does not span the index array"));
                }
                if indptr.windows(2).any(|w| w[0] > w[1]) {
                    return Err(Error::domain("csr indptr is not monotone"));
                }
                if indices.iter().any(|&j| j >= *cols) {
                    return Err(Error::domain("csr column index out of range"));
                }
                Ok(())
            }
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            Matrix::Dense { rows, .. } | Matrix::Csr { rows, .. } => *rows,
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Matrix::Dense { cols, .. } | Matrix::Csr { cols, .. } => *cols,
        }
    }

    pub fn nnz(&self) -> usize {
        match self {
            Matrix::Dense { data, .. } => data.iter().filter(|v| **v != 0.0).count(),
            Matrix::Csr { values, .. } => values.len(),
        }
    }

    pub fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        match self {
            Matrix::Dense { cols, data, .. } => dot(&data[i * cols..(i + 1) * cols], x),
            Matrix::Csr {
                indptr,
                indices,
                values,
                ..
            } => (indptr[i]..indptr[i + 1])
                .map(|p| values[p] * x[indices[p]])
                .sum(),
        }
    }

    /// `out += alpha * row_i`
    pub fn row_axpy(&self, i: usize, alpha: f64, out: &mut [f64]) {
        match self {
            Matrix::Dense { cols, data, .. } => axpy(alpha, &data[i * cols..(i + 1) * cols], out),
            Matrix::Csr {
                indptr,
                indices,
                values,
                ..
            } => {
                for p in indptr[i]..indptr[i + 1] {
                    out[indices[p]] += alpha * values[p];
                }
            }
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows()).map(|i| self.row_dot(i, x)).collect()
    }

    pub fn mul_t_vec(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols()];
        for (i, &yi) in y.iter().enumerate() {
            if yi != 0.0 {
                self.row_axpy(i, yi, &mut out);
            }
        }
        out
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<f64> {
        match self {
            Matrix::Dense { data, .. } => data.clone(),
            Matrix::Csr {
                rows,
                cols,
                indptr,
                indices,
                values,
            } => {
                let mut out = vec![0.0; rows * cols];
                for i in 0..*rows {
                    for p in indptr[i]..indptr[i + 1] {
                        out[i * cols + indices[p]] = values[p];
                    }
                }
                out
            }
        }
    }
}

/// Result of a dominant-eigenpair power iteration.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub iterations: usize,
}

/// Power iteration for the dominant eigenpair of a symmetric PSD operator.
///
/// Stops once `||M v - rho v|| <= tol * scale`. Returns a numerical error
/// carrying the last residual when `max_iter` is exhausted.
pub fn power_iteration<F>(
    mut apply: F,
    start: Vec<f64>,
    tol: f64,
    scale: f64,
    max_iter: usize,
) -> Result<EigenPair>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let n = start.len();
    let mut v = start;
    let nv = norm(&v);
    if nv == 0.0 {
        return Err(Error::domain("power iteration start vector is zero"));
    }
    scale_in_place(&mut v, 1.0 / nv);
    let mut w = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        apply(&v, &mut w);
        let rho = dot(&v, &w);
        residual = w
            .iter()
            .zip(&v)
            .map(|(wi, vi)| (wi - rho * vi) * (wi - rho * vi))
            .sum::<f64>()
            .sqrt();
        let nw = norm(&w);
        if residual <= tol * scale || nw == 0.0 {
            return Ok(EigenPair {
                value: rho,
                vector: v,
                iterations: it,
            });
        }
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / nw;
        }
    }
    Err(Error::Numerical {
        iterations: max_iter,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svec_preserves_frobenius_inner_product() {
        let a = [1.0, 2.0, 3.0, 2.0, -1.0, 0.5, 3.0, 0.5, 4.0];
        let b = [0.0, 1.0, -2.0, 1.0, 3.0, 1.0, -2.0, 1.0, 1.0];
        let frob: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let packed = dot(&svec_pack(3, &a), &svec_pack(3, &b));
        assert!((frob - packed).abs() < 1e-12);
        assert_eq!(svec_unpack(3, &svec_pack(3, &a)), a.to_vec());
    }

    #[test]
    fn svec_side_inverts_len() {
        for n in 1..40 {
            assert_eq!(svec_side(svec_len(n)), Some(n));
        }
        assert_eq!(svec_side(4), None);
    }

    #[test]
    fn csr_matches_dense_products() {
        let data = vec![1.0, 0.0, 2.0, 0.0, 0.0, 3.0];
        let d = Matrix::dense(2, 3, data.clone()).unwrap();
        let s = Matrix::csr_from_dense(2, 3, &data).unwrap();
        s.validate().unwrap();
        let x = [1.0, -1.0, 0.5];
        assert_eq!(d.mul_vec(&x), s.mul_vec(&x));
        assert_eq!(d.mul_t_vec(&[2.0, 1.0]), s.mul_t_vec(&[2.0, 1.0]));
        assert_eq!(s.to_dense(), data);
        assert_eq!(s.nnz(), 3);
    }

    #[test]
    fn power_iteration_diagonal() {
        let d = [1.0, 5.0, 2.0];
        let pair = power_iteration(
            |v, w| {
                for i in 0..3 {
                    w[i] = d[i] * v[i];
                }
            },
            vec![1.0, 1.0, 1.0],
            1e-12,
            5.0,
            10_000,
        )
        .unwrap();
        assert!((pair.value - 5.0).abs() < 1e-12);
        assert!((pair.vector[1].abs() - 1.0).abs() < 1e-9);
    }
}
