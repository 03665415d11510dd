//! Objective functions and first-order oracles.

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{dist_sq, power_iteration, sub, Matrix};

/// Deterministic first-order oracle.
pub trait Objective: Send + Sync {
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> Result<f64>;
    /// Gradient, or a subgradient for non-smooth objectives.
    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>>;
}

/// Stochastic first-order oracle: unbiased gradient samples.
pub trait StochasticObjective: Objective {
    fn sample_gradient(&self, z: &[f64], rng: &mut dyn RngCore) -> Result<Vec<f64>>;
}

/// `f(x) = ||A x - b||^2` with uniform row sampling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeastSquares {
    pub a: Matrix,
    pub b: Vec<f64>,
}

impl LeastSquares {
    pub fn new(a: Matrix, b: Vec<f64>) -> Result<Self> {
        a.validate()?;
        check_dim(a.rows(), b.len())?;
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::domain("least squares needs a non-empty matrix"));
        }
        Ok(LeastSquares { a, b })
    }

    /// `b = A x_star`, so the optimal value is zero.
    pub fn with_solution(a: Matrix, x_star: &[f64]) -> Result<Self> {
        check_dim(a.cols(), x_star.len())?;
        let b = a.mul_vec(x_star);
        Self::new(a, b)
    }

    /// `||x - c||^2`, i.e. `A = I`, `b = c`.
    pub fn distance_to(c: &[f64]) -> Self {
        LeastSquares {
            a: Matrix::identity(c.len()),
            b: c.to_vec(),
        }
    }

    pub fn residual(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.a.cols(), x.len())?;
        Ok(sub(&self.a.mul_vec(x), &self.b))
    }

    /// `2 sigma_max(A)^2` by power iteration on `A^T A`.
    pub fn estimate_lipschitz(&self) -> Result<f64> {
        Ok(2.0 * largest_singular_value_sq(&self.a)?)
    }

    /// `1.1 x` the empirical mean of `||sample - grad||^2` at `x_ref`.
    pub fn estimate_variance(&self, x_ref: &[f64], samples: usize, rng: &mut dyn RngCore) -> Result<f64> {
        estimate_sigma2(self, x_ref, samples, rng)
    }
}

impl Objective for LeastSquares {
    fn dim(&self) -> usize {
        self.a.cols()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        Ok(self.residual(x)?.iter().map(|r| r * r).sum())
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut r = self.residual(x)?;
        r.iter_mut().for_each(|v| *v *= 2.0);
        Ok(self.a.mul_t_vec(&r))
    }
}

impl StochasticObjective for LeastSquares {
    fn sample_gradient(&self, z: &[f64], rng: &mut dyn RngCore) -> Result<Vec<f64>> {
        check_dim(self.a.cols(), z.len())?;
        let m = self.a.rows();
        let i = rng.gen_range(0..m);
        let scale = 2.0 * m as f64 * (self.a.row_dot(i, z) - self.b[i]);
        let mut out = vec![0.0; z.len()];
        self.a.row_axpy(i, scale, &mut out);
        Ok(out)
    }
}

/// Largest eigenvalue of `A^T A`.
pub fn largest_singular_value_sq(a: &Matrix) -> Result<f64> {
    let n = a.cols();
    let mut start = vec![1.0; n];
    start[0] = 2.0;
    let frob: f64 = a.to_dense().iter().map(|v| v * v).sum();
    if frob == 0.0 {
        return Ok(0.0);
    }
    let pair = power_iteration(
        |v, w| {
            let av = a.mul_vec(v);
            w.copy_from_slice(&a.mul_t_vec(&av));
        },
        start,
        1e-9,
        frob,
        100_000,
    )?;
    Ok(pair.value)
}

/// Smoothness constant of `||Ax - b||^2`.
pub fn estimate_lipschitz(obj: &LeastSquares) -> Result<f64> {
    obj.estimate_lipschitz()
}

/// Variance bound estimate: `1.1 x` the mean of `||F'(x, xi) - f'(x)||^2`.
pub fn estimate_sigma2<O: StochasticObjective + ?Sized>(
    obj: &O,
    x_ref: &[f64],
    samples: usize,
    rng: &mut dyn RngCore,
) -> Result<f64> {
    if samples < 1000 {
        return Err(Error::domain("variance estimate needs at least 1000 samples"));
    }
    let grad = obj.gradient(x_ref)?;
    let mut total = 0.0;
    for _ in 0..samples {
        total += dist_sq(&obj.sample_gradient(x_ref, rng)?, &grad);
    }
    Ok(1.1 * total / samples as f64)
}

/// `f(x) = ||x - c||_1` with sign subgradients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct L1Distance {
    pub center: Vec<f64>,
}

impl Objective for L1Distance {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.center.len(), x.len())?;
        Ok(x.iter().zip(&self.center).map(|(a, b)| (a - b).abs()).sum())
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.center.len(), x.len())?;
        Ok(x.iter()
            .zip(&self.center)
            .map(|(a, b)| {
                let d = a - b;
                if d > 0.0 {
                    1.0
                } else if d < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            })
            .collect())
    }
}

impl StochasticObjective for L1Distance {
    fn sample_gradient(&self, z: &[f64], _rng: &mut dyn RngCore) -> Result<Vec<f64>> {
        self.gradient(z)
    }
}

/// `f(x) = max_{y in simplex} <A x, y>` with Euclidean smoothing around the
/// uniform distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothedSaddle {
    pub a: Matrix,
}

/// Smoothed value and gradient at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothedEval {
    pub value: f64,
    pub grad: Vec<f64>,
    /// Inner maximizer.
    pub y: Vec<f64>,
}

impl SmoothedSaddle {
    pub fn new(a: Matrix) -> Result<Self> {
        a.validate()?;
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::domain("saddle objective needs a non-empty matrix"));
        }
        Ok(SmoothedSaddle { a })
    }

    /// Modulus of the prox function `1/2 ||y - c||^2`.
    pub fn prox_modulus(&self) -> f64 {
        1.0
    }

    /// `max_y 1/2 ||y - c||^2 = (m - 1) / (2m)` over the simplex.
    pub fn smoothing_diameter_sq(&self) -> f64 {
        let m = self.a.rows() as f64;
        (m - 1.0) / (2.0 * m)
    }

    pub fn operator_norm(&self) -> Result<f64> {
        Ok(largest_singular_value_sq(&self.a)?.sqrt())
    }

    fn center(&self) -> Vec<f64> {
        let m = self.a.rows();
        vec![1.0 / m as f64; m]
    }

    /// `f_tau(x) = max_y <Ax, y> - tau (W(y) - D^2)` and its gradient `A^T y*`.
    pub fn smoothed(&self, x: &[f64], tau: f64) -> Result<SmoothedEval> {
        check_dim(self.a.cols(), x.len())?;
        if !(tau > 0.0) {
            return Err(Error::domain(format!("smoothing needs tau > 0, got {tau}")));
        }
        let ax = self.a.mul_vec(x);
        let c = self.center();
        let shifted: Vec<f64> = ax.iter().zip(&c).map(|(v, ci)| ci + v / tau).collect();
        let y = simplex_project(&shifted);
        let w = 0.5 * dist_sq(&y, &c);
        let value = ax.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>()
            - tau * (w - self.smoothing_diameter_sq());
        let grad = self.a.mul_t_vec(&y);
        Ok(SmoothedEval { value, grad, y })
    }
}

impl Objective for SmoothedSaddle {
    fn dim(&self) -> usize {
        self.a.cols()
    }

    /// The non-smooth `max_i (Ax)_i`.
    fn value(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.a.cols(), x.len())?;
        Ok(self.a.mul_vec(x).into_iter().fold(f64::NEG_INFINITY, f64::max))
    }

    /// Row of `A` attaining the max (lowest index on ties).
    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.a.cols(), x.len())?;
        let ax = self.a.mul_vec(x);
        let mut best = 0;
        for (i, v) in ax.iter().enumerate() {
            if *v > ax[best] {
                best = i;
            }
        }
        let mut g = vec![0.0; x.len()];
        self.a.row_axpy(best, 1.0, &mut g);
        Ok(g)
    }
}

/// Euclidean projection onto the probability simplex (sort and threshold).
pub fn simplex_project(v: &[f64]) -> Vec<f64> {
    if v.is_empty() {
        return Vec::new();
    }
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        cum += uj;
        let t = (cum - 1.0) / (j + 1) as f64;
        if uj - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_least_squares() {
        let ls = LeastSquares::new(Matrix::identity(3), vec![0.0; 3]).unwrap();
        let x = [1.0, -2.0, 0.5];
        assert_eq!(ls.value(&x).unwrap(), 5.25);
        assert_eq!(ls.gradient(&x).unwrap(), vec![2.0, -4.0, 1.0]);
        assert!((ls.estimate_lipschitz().unwrap() - 2.0).abs() < 1e-9);
        let one = LeastSquares::new(Matrix::diagonal(&[3.0]), vec![0.0]).unwrap();
        assert!((one.estimate_lipschitz().unwrap() - 18.0).abs() < 1e-9);
    }

    #[test]
    fn single_row_sample_is_exact() {
        let ls = LeastSquares::new(Matrix::from_rows(&[vec![1.0, 2.0]]).unwrap(), vec![0.5]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let z = [0.3, 0.7];
        assert_eq!(ls.sample_gradient(&z, &mut rng).unwrap(), ls.gradient(&z).unwrap());
    }

    #[test]
    fn projection_examples() {
        assert_eq!(simplex_project(&[2.0, 0.0]), vec![1.0, 0.0]);
        let p = simplex_project(&[0.2, 0.3, 0.5]);
        for (a, b) in p.iter().zip(&[0.2, 0.3, 0.5]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn symmetric_smoothing() {
        let s = SmoothedSaddle::new(Matrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap()).unwrap();
        let e = s.smoothed(&[0.5, 0.5], 0.3).unwrap();
        assert_eq!(e.y, vec![0.5, 0.5]);
        assert!((e.value - 0.3 * 0.25).abs() < 1e-15);
        assert!(s.smoothed(&[0.5, 0.5], 0.0).is_err());
    }
}
