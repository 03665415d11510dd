//! Parameter-free lazy conditional gradient inner solver.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, BudgetExhausted, Error, Result};
use crate::linalg::{dist_sq, dot, dot_diff, lerp_into};
use crate::oracle::{initial_gap, weak_separation, OracleResponse, VertexCache};
use crate::region::Region;

/// Quadratic subproblem `psi(x) = <g, x> + beta/2 ||x - center||^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Subproblem {
    pub g: Vec<f64>,
    pub center: Vec<f64>,
    pub beta: f64,
}

impl Subproblem {
    pub fn new(g: Vec<f64>, center: Vec<f64>, beta: f64) -> Result<Self> {
        check_dim(g.len(), center.len())?;
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::domain(format!("subproblem needs beta > 0, got {beta}")));
        }
        Ok(Subproblem { g, center, beta })
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        dot(&self.g, x) + 0.5 * self.beta * dist_sq(x, &self.center)
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        self.g
            .iter()
            .zip(x.iter().zip(&self.center))
            .map(|(g, (xi, ci))| g + self.beta * (xi - ci))
            .collect()
    }

    /// Curvature bound `beta D^2` over a region of diameter `diameter`.
    pub fn curvature(&self, diameter: f64) -> f64 {
        self.beta * diameter * diameter
    }
}

/// Output of one inner solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LcgResult {
    pub point: Vec<f64>,
    /// Gap reported by the final negative oracle call.
    pub cert_gap: f64,
    /// Weak separation calls made by this invocation.
    pub iterations: usize,
    pub weak_sep_calls: u64,
    pub exact_lmo_calls: u64,
    pub cache_hits: u64,
    pub phi0: f64,
    /// `Phi_{t-1}` used at each iteration `t`.
    pub phi_trace: Vec<f64>,
    /// `psi(u_t)` at each iteration `t`.
    pub psi_trace: Vec<f64>,
}

impl LcgResult {
    pub fn phi_final(&self) -> f64 {
        self.phi_trace.last().copied().unwrap_or(self.phi0)
    }
}

/// Exact line search for the quadratic along `u -> v`, clamped to `[0, 1]`.
pub fn line_search_quadratic(sub: &Subproblem, u: &[f64], v: &[f64]) -> f64 {
    let d2 = dist_sq(u, v);
    if d2 == 0.0 {
        return 0.0;
    }
    let slope = dot_diff(&sub.gradient(u), u, v);
    (slope / (sub.beta * d2)).clamp(0.0, 1.0)
}

/// Frank-Wolfe gap `max_y <grad psi(x), x - y>` via one exact LMO call.
pub fn duality_gap(sub: &Subproblem, region: &Region, x: &[f64]) -> Result<f64> {
    let grad = sub.gradient(x);
    let y = region.lmo(&grad)?;
    Ok(dot_diff(&grad, x, &y.point))
}

/// Upper bound on the number of weak separation calls of one inner solve.
///
/// `kappa = 4 alpha ceil(log2(phi0 / (alpha C))) + log2(phi0 / eta)`, logs
/// clamped at 0, then `kappa + 8 alpha^2 C / eta + 2` when `eta < alpha C`
/// and `kappa + 4 alpha + 4 alpha^2 C / eta + 2` otherwise.
pub fn iteration_bound(phi0: f64, c_phi: f64, eta: f64, alpha: f64) -> usize {
    let log_pos = |x: f64| if x > 1.0 { x.log2() } else { 0.0 };
    let first = if c_phi > 0.0 {
        4.0 * alpha * log_pos(phi0 / (alpha * c_phi)).ceil()
    } else {
        0.0
    };
    let kappa = first + log_pos(phi0 / eta);
    let bound = if eta < alpha * c_phi {
        kappa + 8.0 * alpha * alpha * c_phi / eta + 2.0
    } else {
        kappa + 4.0 * alpha + 4.0 * alpha * alpha * c_phi / eta + 2.0
    };
    if !bound.is_finite() || bound >= usize::MAX as f64 {
        return usize::MAX;
    }
    (bound + 1e-9).floor() as usize
}

/// Runs the lazy conditional gradient procedure from `u1`.
///
/// `cap` limits weak separation calls; `None` uses four times
/// [`iteration_bound`] with `C = beta D^2`.
pub fn lcg_solve(
    sub: &Subproblem,
    region: &Region,
    u1: &[f64],
    alpha: f64,
    eta: f64,
    cache: &mut VertexCache,
    cap: Option<usize>,
) -> Result<LcgResult> {
    if !(eta > 0.0) {
        return Err(Error::domain(format!("lcg needs eta > 0, got {eta}")));
    }
    if !(alpha >= 1.0) {
        return Err(Error::domain(format!("lcg needs alpha >= 1, got {alpha}")));
    }
    check_dim(region.dim(), u1.len())?;
    check_dim(region.dim(), sub.g.len())?;
    if cap == Some(0) {
        return Err(Error::domain("lcg cap must be >= 1"));
    }
    let start = cache.counters();

    let mut u = u1.to_vec();
    let (gap0, _) = initial_gap(cache, region, &sub.gradient(&u), &u)?;
    let phi0 = gap0.max(eta);
    let cap = cap.unwrap_or_else(|| {
        iteration_bound(phi0, sub.curvature(region.diameter()), eta, alpha).saturating_mul(4)
    });

    let mut phi = phi0;
    let mut phi_trace = Vec::new();
    let mut psi_trace = Vec::new();
    loop {
        if phi_trace.len() >= cap {
            return Err(Error::Budget(Box::new(BudgetExhausted {
                iterations: phi_trace.len(),
                phi,
                eta,
                best: u,
            })));
        }
        phi_trace.push(phi);
        psi_trace.push(sub.value(&u));
        let grad = sub.gradient(&u);
        match weak_separation(cache, region, &grad, &u, phi, alpha)? {
            OracleResponse::Positive(v) => {
                let lambda = line_search_quadratic(sub, &u, &v.point);
                lerp_into(&mut u, &v.point, lambda);
            }
            OracleResponse::Negative(_, gap) => {
                if phi == eta {
                    let end = cache.counters();
                    return Ok(LcgResult {
                        point: u,
                        cert_gap: gap,
                        iterations: phi_trace.len(),
                        weak_sep_calls: end.weak_sep_calls - start.weak_sep_calls,
                        exact_lmo_calls: end.exact_lmo_calls - start.exact_lmo_calls,
                        cache_hits: end.hits - start.hits,
                        phi0,
                        phi_trace,
                        psi_trace,
                    });
                }
                phi = (phi / 2.0).max(eta);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_examples() {
        assert_eq!(iteration_bound(1.0, 1.0, 1.0, 1.0), 10);
        assert_eq!(iteration_bound(1.0, 1.0, 0.125, 1.0), 69);
        // curvature term 8 * 4 / 0.125 = 256, plus kappa = 3 and the constant 2
        assert_eq!(iteration_bound(1.0, 1.0, 0.125, 2.0), 261);
    }

    #[test]
    fn line_search_examples() {
        let sub = Subproblem::new(vec![1.0, -1.0], vec![1.0, 0.0], 2.0).unwrap();
        assert_eq!(line_search_quadratic(&sub, &[1.0, 0.0], &[0.0, 1.0]), 0.5);
        let u = [0.3, 0.7];
        let v = [1.0, 0.0];
        let sub = Subproblem::new(vec![-0.7, 0.7], u.to_vec(), 1.0).unwrap();
        assert_eq!(line_search_quadratic(&sub, &u, &v), 1.0);
        let sub = Subproblem::new(vec![1.0, 1.0], u.to_vec(), 1.0).unwrap();
        assert_eq!(line_search_quadratic(&sub, &u, &v), 0.0);
        assert_eq!(line_search_quadratic(&sub, &u, &u), 0.0);
    }

    #[test]
    fn optimum_at_start() {
        let beta = 3.0;
        let sub = Subproblem::new(vec![0.0, beta], vec![1.0, 0.0], beta).unwrap();
        let mut cache = VertexCache::default();
        let r = Region::simplex(2);
        let res = lcg_solve(&sub, &r, &[1.0, 0.0], 1.0, 1e-3, &mut cache, None).unwrap();
        assert_eq!(res.point, vec![1.0, 0.0]);
        assert_eq!(res.cert_gap, 0.0);
    }

    #[test]
    fn projection_example() {
        let sub = Subproblem::new(vec![1.0, -1.0], vec![1.0, 0.0], 1.0).unwrap();
        let r = Region::simplex(2);
        let mut cache = VertexCache::default();
        let res = lcg_solve(&sub, &r, &[1.0, 0.0], 1.0, 1e-3, &mut cache, None).unwrap();
        assert!(duality_gap(&sub, &r, &res.point).unwrap() <= 1e-3);
        assert!(res.cert_gap <= 1e-3);
    }

    #[test]
    fn large_eta_returns_immediately() {
        let sub = Subproblem::new(vec![1.0, 0.0], vec![1.0, 0.0], 1.0).unwrap();
        let r = Region::simplex(2);
        let mut cache = VertexCache::default();
        let res = lcg_solve(&sub, &r, &[1.0, 0.0], 1.0, 10.0, &mut cache, None).unwrap();
        assert_eq!(res.iterations, 1);
        assert_eq!(res.phi0, 10.0);
        assert_eq!(res.point, vec![1.0, 0.0]);
    }

    #[test]
    fn tiny_cap_is_a_budget_error() {
        let sub = Subproblem::new(vec![1.0, -1.0, 0.5], vec![1.0, 0.0, 0.0], 1.0).unwrap();
        let r = Region::simplex(3);
        let mut cache = VertexCache::default();
        let err = lcg_solve(&sub, &r, &[1.0, 0.0, 0.0], 1.0, 1e-9, &mut cache, Some(1)).unwrap_err();
        assert!(err.is_budget());
    }
}
