//! Builders for the small combinatorial polytopes used by the benchmarks.

use crate::error::{Error, Result};

use super::{Region, VertexSet};

/// Index of undirected edge `{i, j}` (`i < j`) in the upper-triangle order.
pub fn edge_index(nodes: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * nodes - i * (i + 1) / 2 + (j - i - 1)
}

/// Edge-indicator vectors of all Hamiltonian cycles of the complete graph on
/// `nodes` vertices, each cycle listed once.
pub fn hamiltonian_cycles(nodes: usize) -> Result<Vec<Vec<f64>>> {
    if !(3..=8).contains(&nodes) {
        return Err(Error::domain("hamiltonian cycle enumeration supports 3..=8 nodes"));
    }
    let dim = nodes * (nodes - 1) / 2;
    let mut out = Vec::new();
    // fix node 0 first; keep orientation with perm[1] < perm[last]
    let mut rest: Vec<usize> = (1..nodes).collect();
    permute(&mut rest, 0, &mut |p| {
        if p[0] > p[p.len() - 1] {
            return;
        }
        let mut x = vec![0.0; dim];
        let mut prev = 0;
        for &v in p {
            x[edge_index(nodes, prev, v)] = 1.0;
            prev = v;
        }
        x[edge_index(nodes, prev, 0)] = 1.0;
        out.push(x);
    });
    Ok(out)
}

/// Convex hull of the Hamiltonian cycles on `nodes` vertices.
pub fn hamiltonian_polytope(nodes: usize) -> Result<Region> {
    Ok(Region::Enumerated(VertexSet::new(hamiltonian_cycles(nodes)?)?))
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_counts() {
        assert_eq!(hamiltonian_cycles(4).unwrap().len(), 3);
        assert_eq!(hamiltonian_cycles(5).unwrap().len(), 12);
        let seven = hamiltonian_cycles(7).unwrap();
        assert_eq!(seven.len(), 360);
        assert_eq!(seven[0].len(), 21);
        assert!(seven.iter().all(|x| x.iter().sum::<f64>() == 7.0));
    }

    #[test]
    fn edge_indices_cover_upper_triangle() {
        let n = 6;
        let mut seen = vec![false; n * (n - 1) / 2];
        for i in 0..n {
            for j in (i + 1)..n {
                seen[edge_index(n, i, j)] = true;
                assert_eq!(edge_index(n, i, j), edge_index(n, j, i));
            }
        }
        assert!(seen.iter().all(|s| *s));
    }
}
