use lazy_sliding::lcg::{duality_gap, iteration_bound, lcg_solve, Subproblem};
use lazy_sliding::linalg::{dist_sq, dot};
use lazy_sliding::oracle::VertexCache;
use lazy_sliding::region::Region;
use proptest::prelude::*;

/// Simplex projection by bisection on the threshold.
fn project_simplex(v: &[f64], radius: f64) -> Vec<f64> {
    let mass = |t: f64| v.iter().map(|x| (x - t).max(0.0)).sum::<f64>();
    let (mut lo, mut hi) = (v.iter().copied().fold(f64::INFINITY, f64::min) - radius, v.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mass(mid) > radius {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    v.iter().map(|x| (x - 0.5 * (lo + hi)).max(0.0)).collect()
}

fn project(region: &Region, v: &[f64]) -> Vec<f64> {
    match region {
        Region::Simplex { .. } => project_simplex(v, 1.0),
        Region::Box { lo, hi } => v.iter().zip(lo.iter().zip(hi)).map(|(x, (l, h))| x.clamp(*l, *h)).collect(),
        Region::L1Ball { radius, .. } => {
            if v.iter().map(|x| x.abs()).sum::<f64>() <= *radius {
                return v.to_vec();
            }
            let mags: Vec<f64> = v.iter().map(|x| x.abs()).collect();
            project_simplex(&mags, *radius).iter().zip(v).map(|(m, x)| m * x.signum()).collect()
        }
        _ => unreachable!(),
    }
}

fn region_for(kind: usize, n: usize) -> Region {
    match kind {
        0 => Region::simplex(n),
        1 => Region::boxed(vec![-0.5; n], vec![1.0; n]).unwrap(),
        _ => Region::l1_ball(n, 1.3),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inner_solve_invariants(
        kind in 0usize..3,
        n in 2usize..8,
        g in prop::collection::vec(-3.0f64..3.0, 8),
        weights in prop::collection::vec(0.01f64..1.0, 8),
        beta_exp in -1.0f64..1.5,
        eta_exp in -4.0f64..0.5,
        alpha_ix in 0usize..4,
        capacity in prop::sample::select(vec![0usize, 4, 64]),
    ) {
        let region = region_for(kind, n);
        let g = g[..n].to_vec();
        // feasible center: convex combination of axis vertices
        let mut center = vec![0.0; n];
        let total: f64 = weights[..n].iter().sum();
        for (i, w) in weights[..n].iter().enumerate() {
            let mut c = vec![0.0; n];
            c[i] = if i % 2 == 0 { -1.0 } else { 1.0 };
            let v = region.lmo(&c).unwrap();
            center.iter_mut().zip(&v.point).for_each(|(a, b)| *a += w / total * b);
        }
        let beta = 10f64.powf(beta_exp);
        let sub = Subproblem::new(g.clone(), center.clone(), beta).unwrap();
        let d = region.diameter();
        let curvature = sub.curvature(d);
        let eta = curvature * 10f64.powf(eta_exp);
        let alpha = [1.0, 1.5, 2.0, 3.0][alpha_ix];
        let mut cache = VertexCache::new(capacity);
        let u1 = region.lmo(&g).unwrap().point;
        let res = lcg_solve(&sub, &region, &u1, alpha, eta, &mut cache, None).unwrap();

        // certification by an independent audit
        prop_assert!(duality_gap(&sub, &region, &res.point).unwrap() <= eta + 1e-12);
        prop_assert!(region.contains(&res.point, 1e-9).unwrap());
        // iteration bound
        prop_assert!(res.iterations <= iteration_bound(res.phi0, curvature, eta, alpha));
        prop_assert_eq!(res.iterations, res.phi_trace.len());
        prop_assert_eq!(res.weak_sep_calls as usize, res.iterations);
        // monotone descent
        for w in res.psi_trace.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-12 * w[0].abs().max(1.0));
        }
        // phi schedule
        prop_assert!(res.phi0 >= eta);
        let mut prev = res.phi0;
        for &phi in &res.phi_trace {
            prop_assert!(phi >= eta);
            prop_assert!(phi == prev || phi == prev / 2.0 || (phi == eta && prev / 2.0 < eta));
            prev = phi;
        }
        // psi(u_t) - psi* <= 2 Phi_{t-1}
        let target: Vec<f64> = center.iter().zip(&g).map(|(c, gi)| c - gi / beta).collect();
        let star = project(&region, &target);
        let psi_star = dot(&g, &star) + 0.5 * beta * dist_sq(&star, &center);
        for (psi, phi) in res.psi_trace.iter().zip(&res.phi_trace) {
            prop_assert!(psi - psi_star <= 2.0 * phi + 1e-9 * psi_star.abs().max(1.0));
        }
        prop_assert!(sub.value(&res.point) - psi_star <= 2.0 * eta + 1e-9);
    }
}

#[test]
fn bound_reference_values() {
    assert_eq!(iteration_bound(1.0, 1.0, 1.0, 1.0), 10);
    assert_eq!(iteration_bound(1.0, 1.0, 0.125, 1.0), 69);
    assert_eq!(iteration_bound(1.0, 1.0, 0.125, 2.0), 261);
}

#[test]
fn small_initial_gap_returns_immediately() {
    let region = Region::simplex(3);
    let sub = Subproblem::new(vec![0.0; 3], vec![1.0 / 3.0; 3], 1.0).unwrap();
    let u1 = vec![1.0 / 3.0; 3];
    let res = lcg_solve(&sub, &region, &u1, 1.0, 0.1, &mut VertexCache::default(), None).unwrap();
    assert_eq!(res.iterations, 1);
    assert_eq!(res.phi0, 0.1);
    assert_eq!(res.point, u1);
}

#[test]
fn tiny_cap_reports_budget() {
    let region = Region::simplex(20);
    let g: Vec<f64> = (0..20).map(|i| (i as f64).sin()).collect();
    let sub = Subproblem::new(g, vec![0.05; 20], 0.5).unwrap();
    let u1 = region.default_start().unwrap();
    let err = lcg_solve(&sub, &region, &u1, 1.0, 1e-9, &mut VertexCache::default(), Some(3)).unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn rejects_bad_parameters() {
    let region = Region::simplex(2);
    let sub = Subproblem::new(vec![1.0, 0.0], vec![0.5, 0.5], 1.0).unwrap();
    let mut cache = VertexCache::default();
    assert!(lcg_solve(&sub, &region, &[0.5, 0.5], 1.0, 0.0, &mut cache, None).is_err());
    assert!(lcg_solve(&sub, &region, &[0.5, 0.5], 0.9, 0.1, &mut cache, None).is_err());
    assert!(Subproblem::new(vec![1.0], vec![0.5, 0.5], 1.0).is_err());
    assert!(Subproblem::new(vec![1.0, 0.0], vec![0.5, 0.5], 0.0).is_err());
}
