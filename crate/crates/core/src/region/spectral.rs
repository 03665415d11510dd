//! Linear minimization over the standard spectrahedron `{X psd, tr X = 1}`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{power_iteration, svec_outer, svec_unpack, EigenPair};

/// Relative residual tolerance of the shifted power iteration.
pub const EIGEN_TOL: f64 = 1e-9;

/// Iteration cap `10 n ln(n + 1)`, never below `min_cap`.
pub fn iteration_cap(n: usize, min_cap: usize) -> usize {
    let base = (10.0 * n as f64 * ((n + 1) as f64).ln()).ceil() as usize;
    base.max(min_cap)
}

/// Unit eigenvector for the largest eigenvalue of `-C`, where `C` is given in
/// packed form.
///
/// Runs power iteration on `s I - C` with the Gershgorin shift
/// `s = max_i sum_j |C_ij|`, starting from the all-ones vector with its first
/// entry doubled.
pub fn min_eigenvector(n: usize, packed: &[f64], min_cap: usize) -> Result<EigenPair> {
    let c = svec_unpack(n, packed);
    let shift = (0..n)
        .map(|i| c[i * n..(i + 1) * n].iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut start = vec![1.0; n];
    start[0] = 2.0;
    if shift == 0.0 {
        let nv = (start.iter().map(|v| v * v).sum::<f64>()).sqrt();
        return Ok(EigenPair {
            value: 0.0,
            vector: start.iter().map(|v| v / nv).collect(),
            iterations: 0,
        });
    }
    let mut pair = power_iteration(
        |v, w| {
            for i in 0..n {
                let row = &c[i * n..(i + 1) * n];
                w[i] = shift * v[i] - row.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
            }
        },
        start,
        EIGEN_TOL,
        shift,
        iteration_cap(n, min_cap),
    )?;
    // report the eigenvalue of C itself
    pair.value = shift - pair.value;
    Ok(pair)
}

/// [`min_eigenvector`], falling back to a dense eigensolve when the power
/// iteration stalls (clustered bottom eigenvalues).
pub fn min_eigenvector_or_dense(n: usize, packed: &[f64], min_cap: usize) -> Result<EigenPair> {
    match min_eigenvector(n, packed, min_cap) {
        Err(Error::Numerical { iterations, .. }) => {
            let eig = DMatrix::from_row_slice(n, n, &svec_unpack(n, packed)).symmetric_eigen();
            let i = eig.eigenvalues.imin();
            Ok(EigenPair {
                value: eig.eigenvalues[i],
                vector: eig.eigenvectors.column(i).iter().copied().collect(),
                iterations,
            })
        }
        other => other,
    }
}

/// Packed `v v^T` together with a hashable identity for `v`.
pub fn rank_one_vertex(v: &[f64]) -> (Vec<f64>, Vec<u64>) {
    // fix the sign so that v and -v map to the same vertex id
    let flip = v
        .iter()
        .find(|x| x.abs() > 1e-12)
        .map_or(false, |x| *x < 0.0);
    let key = v
        .iter()
        .map(|x| {
            let y = if flip { -x } else { *x };
            (y + 0.0).to_bits()
        })
        .collect();
    (svec_outer(v), key)
}

/// Smallest eigenvalue of the packed symmetric matrix (dense solve).
pub fn min_eigenvalue_dense(n: usize, packed: &[f64]) -> f64 {
    let m = DMatrix::from_row_slice(n, n, &svec_unpack(n, packed));
    m.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}
