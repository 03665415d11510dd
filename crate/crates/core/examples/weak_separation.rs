//! The weak separation oracle and its vertex cache.

use lazy_sliding::oracle::{initial_gap, weak_separation, OracleResponse, VertexCache};
use lazy_sliding::region::Region;

fn main() -> lazy_sliding::Result<()> {
    let region = Region::birkhoff(4);
    let mut cache = VertexCache::new(16);
    let x = vec![0.25; 16];
    let c: Vec<f64> = (0..16).map(|i| ((i * 5) % 7) as f64 - 3.0).collect();

    let (gap, _) = initial_gap(&mut cache, &region, &c, &x)?;
    println!("exact gap at the barycenter: {gap:.3}");
    for phi in [gap / 4.0, gap / 2.0, gap, 2.0 * gap] {
        match weak_separation(&mut cache, &region, &c, &x, phi, 2.0)? {
            OracleResponse::Positive(v) => println!("phi {phi:>6.3}: positive, vertex {:?}", v.id),
            OracleResponse::Negative(_, g) => println!("phi {phi:>6.3}: negative, certified gap {g:.3}"),
        }
    }
    println!("{:?}", cache.counters());
    Ok(())
}
