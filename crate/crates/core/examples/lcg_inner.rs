//! One inner solve of the lazy conditional gradient procedure.

use lazy_sliding::lcg::{duality_gap, iteration_bound, lcg_solve, Subproblem};
use lazy_sliding::oracle::VertexCache;
use lazy_sliding::region::Region;

fn main() -> lazy_sliding::Result<()> {
    let region = Region::simplex(8);
    let g: Vec<f64> = (0..8).map(|i| (i as f64 - 3.5) / 4.0).collect();
    let center = vec![0.125; 8];
    let beta = 2.0;
    let sub = Subproblem::new(g, center, beta)?;
    let (alpha, eta) = (1.5, 1e-4);
    let u1 = region.default_start()?;
    let mut cache = VertexCache::new(32);
    let res = lcg_solve(&sub, &region, &u1, alpha, eta, &mut cache, None)?;
    let c_phi = sub.curvature(region.diameter());
    println!("psi(u) = {:.6}", sub.value(&res.point));
    println!("certified gap {:.2e} (eta {eta:.0e}), audited {:.2e}", res.cert_gap, duality_gap(&sub, &region, &res.point)?);
    println!(
        "{} weak separation calls (bound {}), {} exact LMO calls, {} cache hits",
        res.iterations,
        iteration_bound(res.phi0, c_phi, eta, alpha),
        res.exact_lmo_calls,
        res.cache_hits
    );
    let halvings: Vec<String> = res.phi_trace.windows(2).filter(|w| w[1] < w[0]).map(|w| format!("{:.1e}", w[1])).collect();
    println!("phi: {:.2e} -> {}", res.phi0, halvings.join(" -> "));
    Ok(())
}
