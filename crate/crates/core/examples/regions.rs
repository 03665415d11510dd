//! Linear minimization over each feasible-region kind.

use lazy_sliding::linalg::{dot, svec_pack};
use lazy_sliding::region::{generators, DagGraph, Region};

fn main() -> lazy_sliding::Result<()> {
    let regions = vec![
        Region::simplex(4),
        Region::l1_ball(4, 2.0),
        Region::unit_box(4),
        Region::birkhoff(3),
        Region::spectrahedron(3),
        Region::DagPath(DagGraph::layered(2, 2)?),
        generators::hamiltonian_polytope(5)?,
    ];
    for region in &regions {
        let dim = region.dim();
        let c: Vec<f64> = if region.kind() == "spectrahedron" {
            svec_pack(3, &[1.0, 0.5, 0.0, 0.5, -1.0, 0.2, 0.0, 0.2, 0.3])
        } else {
            (0..dim).map(|i| ((i * 7 + 3) % 5) as f64 - 2.0).collect()
        };
        let v = region.lmo(&c)?;
        println!(
            "{:<14} dim {:>2}  diameter {:.3}  min <c, x> = {:>7.3}  vertex {:?}",
            region.kind(),
            dim,
            region.diameter(),
            dot(&c, &v.point),
            v.id
        );
        assert!(region.contains(&v.point, 1e-9)?);
    }
    Ok(())
}
