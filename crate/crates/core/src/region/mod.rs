//! Feasible regions with exact linear minimization oracles.
//!
//! All geometry is Euclidean; matrix-shaped regions use the Frobenius inner
//! product (Birkhoff points are row-major `n x n`, spectrahedron points are
//! packed with [`crate::linalg::svec_pack`]).

pub mod assignment;
pub mod dag;
pub mod generators;
pub mod hull;
pub mod spectral;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{dist_sq, dot, norm, svec_len};

pub use dag::{DagGraph, DagSpec};

/// Stable identity of a vertex, used by the separation cache.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexId {
    /// Coordinate vertex of the simplex, or index into an explicit vertex list.
    Index(usize),
    /// `+-r e_i` of an l1 ball.
    Signed { index: usize, negative: bool },
    /// Box corner: bit `i` set means coordinate `i` sits at its upper bound.
    Corner(Vec<bool>),
    /// Permutation `row -> col`.
    Permutation(Vec<usize>),
    /// Edge indices of a source-sink path.
    Path(Vec<usize>),
    /// Bit patterns of a sign-normalized unit vector `v` for `X = v v^T`.
    RankOne(Vec<u64>),
}

/// An extreme point of a region.
#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub point: Vec<f64>,
    pub id: VertexId,
}

/// Explicit vertex list for tiny combinatorial polytopes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VertexSetSpec", into = "VertexSetSpec")]
pub struct VertexSet {
    vertices: Vec<Vec<f64>>,
    diameter: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexSetSpec {
    pub vertices: Vec<Vec<f64>>,
}

/// Cap on explicit vertex lists.
pub const MAX_ENUMERATED_VERTICES: usize = 5000;

impl TryFrom<VertexSetSpec> for VertexSet {
    type Error = Error;
    fn try_from(spec: VertexSetSpec) -> Result<Self> {
        VertexSet::new(spec.vertices)
    }
}

impl From<VertexSet> for VertexSetSpec {
    fn from(v: VertexSet) -> Self {
        VertexSetSpec { vertices: v.vertices }
    }
}

impl VertexSet {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        if vertices.is_empty() || vertices.len() > MAX_ENUMERATED_VERTICES {
            return Err(Error::domain(format!(
                "enumerated region needs 1..={MAX_ENUMERATED_VERTICES} vertices, got {}",
                vertices.len()
            )));
        }
        let dim = vertices[0].len();
        if dim == 0 {
            return Err(Error::domain("enumerated vertices have dimension 0"));
        }
        for v in &vertices {
            check_dim(dim, v.len())?;
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::domain("enumerated vertex has non-finite entries"));
            }
        }
        let mut best = 0.0f64;
        for i in 0..vertices.len() {
            for j in (i + 1)..vertices.len() {
                best = best.max(dist_sq(&vertices[i], &vertices[j]));
            }
        }
        Ok(VertexSet {
            vertices,
            diameter: best.sqrt(),
        })
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }
}

/// A feasible region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    /// Probability simplex in `R^n`.
    Simplex { n: usize },
    /// `{x : ||x||_1 <= radius}`.
    L1Ball { n: usize, radius: f64 },
    /// Axis-aligned box `[lo, hi]`.
    Box { lo: Vec<f64>, hi: Vec<f64> },
    /// Doubly stochastic `n x n` matrices, stored row-major.
    Birkhoff { n: usize },
    /// `{X psd, tr X = 1}`, stored packed.
    Spectrahedron {
        n: usize,
        /// Floor for the power-iteration cap.
        #[serde(default = "default_min_power_iters")]
        min_power_iters: usize,
    },
    /// Unit-flow path polytope of a layered DAG.
    DagPath(DagGraph),
    /// Convex hull of an explicit vertex list.
    Enumerated(VertexSet),
}

fn default_min_power_iters() -> usize {
    DEFAULT_MIN_POWER_ITERS
}

/// Default floor for the spectrahedron power-iteration cap.
pub const DEFAULT_MIN_POWER_ITERS: usize = 10_000;

impl Region {
    pub fn simplex(n: usize) -> Self {
        Region::Simplex { n }
    }

    pub fn l1_ball(n: usize, radius: f64) -> Self {
        Region::L1Ball { n, radius }
    }

    pub fn unit_box(n: usize) -> Self {
        Region::Box {
            lo: vec![0.0; n],
            hi: vec![1.0; n],
        }
    }

    pub fn boxed(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        let r = Region::Box { lo, hi };
        r.validate()?;
        Ok(r)
    }

    pub fn birkhoff(n: usize) -> Self {
        Region::Birkhoff { n }
    }

    pub fn spectrahedron(n: usize) -> Self {
        Region::Spectrahedron {
            n,
            min_power_iters: DEFAULT_MIN_POWER_ITERS,
        }
    }

    pub fn enumerated(vertices: Vec<Vec<f64>>) -> Result<Self> {
        Ok(Region::Enumerated(VertexSet::new(vertices)?))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Region::Simplex { .. } => "simplex",
            Region::L1Ball { .. } => "l1_ball",
            Region::Box { .. } => "box",
            Region::Birkhoff { .. } => "birkhoff",
            Region::Spectrahedron { .. } => "spectrahedron",
            Region::DagPath(_) => "dag_path",
            Region::Enumerated(_) => "enumerated",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Region::Simplex { n } | Region::Birkhoff { n } | Region::Spectrahedron { n, .. } => {
                if *n == 0 {
                    return Err(Error::domain(format!("{} needs n >= 1", self.kind())));
                }
            }
            Region::L1Ball { n, radius } => {
                if *n == 0 || !(*radius > 0.0) {
                    return Err(Error::domain("l1 ball needs n >= 1 and radius > 0"));
                }
            }
            Region::Box { lo, hi } => {
                check_dim(lo.len(), hi.len())?;
                if lo.is_empty() || lo.iter().zip(hi).any(|(l, h)| !(l <= h) || !l.is_finite() || !h.is_finite()) {
                    return Err(Error::domain("box needs finite lo <= hi and n >= 1"));
                }
            }
            Region::DagPath(_) | Region::Enumerated(_) => {}
        }
        Ok(())
    }

    /// Ambient dimension of points in this region.
    pub fn dim(&self) -> usize {
        match self {
            Region::Simplex { n } | Region::L1Ball { n, .. } => *n,
            Region::Box { lo, .. } => lo.len(),
            Region::Birkhoff { n } => n * n,
            Region::Spectrahedron { n, .. } => svec_len(*n),
            Region::DagPath(g) => g.edge_count(),
            Region::Enumerated(v) => v.vertices[0].len(),
        }
    }

    /// Exact minimizer of `<c, x>` over the region.
    pub fn lmo(&self, c: &[f64]) -> Result<Vertex> {
        check_dim(self.dim(), c.len())?;
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("lmo cost vector has non-finite entries"));
        }
        let vertex = match self {
            Region::Simplex { n } => {
                let i = argmin(c);
                Vertex {
                    point: unit(*n, i, 1.0),
                    id: VertexId::Index(i),
                }
            }
            Region::L1Ball { n, radius } => {
                let mut best = 0;
                for (i, v) in c.iter().enumerate() {
                    if v.abs() > c[best].abs() {
                        best = i;
                    }
                }
                let negative = c[best] > 0.0;
                let s = if negative { -radius } else { *radius };
                Vertex {
                    point: unit(*n, best, s),
                    id: VertexId::Signed { index: best, negative },
                }
            }
            Region::Box { lo, hi } => {
                let upper: Vec<bool> = c.iter().map(|&v| v < 0.0).collect();
                let point = upper
                    .iter()
                    .enumerate()
                    .map(|(i, &u)| if u { hi[i] } else { lo[i] })
                    .collect();
                Vertex {
                    point,
                    id: VertexId::Corner(upper),
                }
            }
            Region::Birkhoff { n } => {
                let perm = assignment::min_cost_assignment(*n, c);
                Vertex {
                    point: permutation_matrix(&perm),
                    id: VertexId::Permutation(perm),
                }
            }
            Region::Spectrahedron { n, min_power_iters } => {
                let pair = spectral::min_eigenvector_or_dense(*n, c, *min_power_iters)?;
                let (point, key) = spectral::rank_one_vertex(&pair.vector);
                Vertex {
                    point,
                    id: VertexId::RankOne(key),
                }
            }
            Region::DagPath(g) => {
                let (path, _) = g.shortest_path(c);
                Vertex {
                    point: path_indicator(g.edge_count(), &path),
                    id: VertexId::Path(path),
                }
            }
            Region::Enumerated(set) => {
                let mut best = 0;
                let mut best_val = dot(c, &set.vertices[0]);
                for (i, v) in set.vertices.iter().enumerate().skip(1) {
                    let val = dot(c, v);
                    if val < best_val {
                        best = i;
                        best_val = val;
                    }
                }
                Vertex {
                    point: set.vertices[best].clone(),
                    id: VertexId::Index(best),
                }
            }
        };
        Ok(vertex)
    }

    /// Euclidean diameter (exact, or a provable upper bound for DAG paths).
    pub fn diameter(&self) -> f64 {
        match self {
            Region::Simplex { n } | Region::Spectrahedron { n, .. } => {
                if *n >= 2 {
                    2f64.sqrt()
                } else {
                    0.0
                }
            }
            Region::L1Ball { radius, .. } => 2.0 * radius,
            Region::Box { lo, hi } => dist_sq(lo, hi).sqrt(),
            Region::Birkhoff { n } => {
                if *n >= 2 {
                    (2.0 * *n as f64).sqrt()
                } else {
                    0.0
                }
            }
            Region::DagPath(g) => (2.0 * g.max_path_edges() as f64).sqrt(),
            Region::Enumerated(set) => set.diameter,
        }
    }

    /// Membership test with absolute tolerance `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        check_dim(self.dim(), x.len())?;
        if !(tol >= 0.0) {
            return Err(Error::domain("membership tolerance must be >= 0"));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Ok(false);
        }
        let ok = match self {
            Region::Simplex { .. } => {
                x.iter().all(|&v| v >= -tol) && (x.iter().sum::<f64>() - 1.0).abs() <= tol
            }
            Region::L1Ball { radius, .. } => x.iter().map(|v| v.abs()).sum::<f64>() <= radius + tol,
            Region::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(v, (l, h))| *v >= l - tol && *v <= h + tol),
            Region::Birkhoff { n } => {
                let n = *n;
                x.iter().all(|&v| v >= -tol)
                    && (0..n).all(|i| (x[i * n..(i + 1) * n].iter().sum::<f64>() - 1.0).abs() <= tol)
                    && (0..n).all(|j| ((0..n).map(|i| x[i * n + j]).sum::<f64>() - 1.0).abs() <= tol)
            }
            Region::Spectrahedron { n, .. } => {
                let n = *n;
                let mut idx = 0;
                let mut trace = 0.0;
                for i in 0..n {
                    trace += x[idx];
                    idx += n - i;
                }
                (trace - 1.0).abs() <= tol && spectral::min_eigenvalue_dense(n, x) >= -tol
            }
            Region::DagPath(g) => x.iter().all(|&v| v >= -tol) && g.conservation_residual(x) <= tol,
            Region::Enumerated(set) => hull::hull_distance(&set.vertices, x) <= tol,
        };
        Ok(ok)
    }

    /// A deterministic feasible starting point (the LMO answer for a zero cost).
    pub fn default_start(&self) -> Result<Vec<f64>> {
        Ok(self.lmo(&vec![0.0; self.dim()])?.point)
    }

    /// Every vertex of the region, when there are at most `limit` of them.
    ///
    /// Spectrahedra have infinitely many extreme points and return `None`.
    pub fn enumerate_vertices(&self, limit: usize) -> Option<Vec<Vertex>> {
        match self {
            Region::Simplex { n } => (*n <= limit).then(|| {
                (0..*n)
                    .map(|i| Vertex {
                        point: unit(*n, i, 1.0),
                        id: VertexId::Index(i),
                    })
                    .collect()
            }),
            Region::L1Ball { n, radius } => (2 * n <= limit).then(|| {
                (0..*n)
                    .flat_map(|i| {
                        [false, true].map(|negative| Vertex {
                            point: unit(*n, i, if negative { -radius } else { *radius }),
                            id: VertexId::Signed { index: i, negative },
                        })
                    })
                    .collect()
            }),
            Region::Box { lo, hi } => {
                let n = lo.len();
                if n >= 63 || (1usize << n) > limit {
                    return None;
                }
                Some(
                    (0..(1usize << n))
                        .map(|mask| {
                            let upper: Vec<bool> = (0..n).map(|i| (mask >> i) & 1 == 1).collect();
                            Vertex {
                                point: (0..n).map(|i| if upper[i] { hi[i] } else { lo[i] }).collect(),
                                id: VertexId::Corner(upper),
                            }
                        })
                        .collect(),
                )
            }
            Region::Birkhoff { n } => {
                let count: usize = (1..=*n).product();
                if *n > 10 || count > limit {
                    return None;
                }
                let mut out = Vec::with_capacity(count);
                let mut perm: Vec<usize> = (0..*n).collect();
                permutations(&mut perm, 0, &mut |p| {
                    out.push(Vertex {
                        point: permutation_matrix(p),
                        id: VertexId::Permutation(p.to_vec()),
                    })
                });
                Some(out)
            }
            Region::Spectrahedron { .. } => None,
            Region::DagPath(g) => g.enumerate_paths(limit).map(|paths| {
                paths
                    .into_iter()
                    .map(|p| Vertex {
                        point: path_indicator(g.edge_count(), &p),
                        id: VertexId::Path(p),
                    })
                    .collect()
            }),
            Region::Enumerated(set) => (set.vertices.len() <= limit).then(|| {
                set.vertices
                    .iter()
                    .enumerate()
                    .map(|(i, v)| Vertex {
                        point: v.clone(),
                        id: VertexId::Index(i),
                    })
                    .collect()
            }),
        }
    }

    /// Centroid of a vertex sample; feasible by convexity.
    pub fn centroid(&self, vertices: &[Vertex]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for v in vertices {
            for (o, p) in out.iter_mut().zip(&v.point) {
                *o += p;
            }
        }
        let k = vertices.len().max(1) as f64;
        out.iter_mut().for_each(|o| *o /= k);
        out
    }
}

fn argmin(c: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in c.iter().enumerate() {
        if *v < c[best] {
            best = i;
        }
    }
    best
}

fn unit(n: usize, i: usize, s: f64) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = s;
    e
}

fn permutation_matrix(perm: &[usize]) -> Vec<f64> {
    let n = perm.len();
    let mut out = vec![0.0; n * n];
    for (r, &c) in perm.iter().enumerate() {
        out[r * n + c] = 1.0;
    }
    out
}

fn path_indicator(m: usize, path: &[usize]) -> Vec<f64> {
    let mut out = vec![0.0; m];
    for &e in path {
        out[e] = 1.0;
    }
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Euclidean norm helper re-exported for callers measuring distances.
pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    norm(&crate::linalg::sub(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::svec_pack;

    #[test]
    fn simplex_lmo_picks_min_coordinate() {
        let v = Region::simplex(3).lmo(&[3.0, -1.0, 2.0]).unwrap();
        assert_eq!(v.point, vec![0.0, 1.0, 0.0]);
        assert_eq!(v.id, VertexId::Index(1));
        // ties go to the lowest index
        let v = Region::simplex(3).lmo(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(v.id, VertexId::Index(1));
        let v = Region::simplex(3).lmo(&[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(v.id, VertexId::Index(0));
    }

    #[test]
    fn l1_and_box_lmo() {
        let v = Region::l1_ball(3, 2.0).lmo(&[0.5, -3.0, 1.0]).unwrap();
        assert_eq!(v.point, vec![0.0, 2.0, 0.0]);
        let v = Region::l1_ball(2, 1.0).lmo(&[4.0, -1.0]).unwrap();
        assert_eq!(v.point, vec![-1.0, 0.0]);
        let b = Region::boxed(vec![-1.0, 0.0], vec![1.0, 2.0]).unwrap();
        assert_eq!(b.lmo(&[1.0, -1.0]).unwrap().point, vec![-1.0, 2.0]);
    }

    #[test]
    fn spectrahedron_diagonal_cost() {
        let r = Region::spectrahedron(2);
        let c = svec_pack(2, &[1.0, 0.0, 0.0, -2.0]);
        let v = r.lmo(&c).unwrap();
        let expected = svec_pack(2, &[0.0, 0.0, 0.0, 1.0]);
        for (a, b) in v.point.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn birkhoff_anti_diagonal() {
        let mut cost = vec![1.0; 9];
        for r in 0..3 {
            cost[r * 3 + 2 - r] = 0.0;
        }
        let v = Region::birkhoff(3).lmo(&cost).unwrap();
        assert_eq!(v.point, vec![0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn dag_lmo_matches_example() {
        let g = DagGraph::new(4, vec![[0, 1, 0], [1, 3, 1], [0, 2, 0], [2, 3, 1]], 0, 3).unwrap();
        let r = Region::DagPath(g);
        let c = [1.0, 1.0, 3.0, -2.5];
        let v = r.lmo(&c).unwrap();
        assert_eq!(v.point, vec![0.0, 0.0, 1.0, 1.0]);
        assert!((dot(&c, &v.point) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn diameters() {
        assert!((Region::simplex(5).diameter() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(Region::l1_ball(4, 1.0).diameter(), 2.0);
        assert!((Region::unit_box(4).diameter() - 2.0).abs() < 1e-15);
        assert!((Region::birkhoff(3).diameter() - 6f64.sqrt()).abs() < 1e-15);
        let tri = Region::enumerated(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!((tri.diameter() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn membership() {
        let s = Region::simplex(3);
        assert!(s.contains(&[0.2, 0.3, 0.5], 1e-9).unwrap());
        assert!(!s.contains(&[0.2, 0.3, 0.6], 1e-9).unwrap());
        let sp = Region::spectrahedron(2);
        let half = svec_pack(2, &[0.5, 0.0, 0.0, 0.5]);
        assert!(sp.contains(&half, 1e-9).unwrap());
        let indefinite = svec_pack(2, &[1.5, 0.0, 0.0, -0.5]);
        assert!(!sp.contains(&indefinite, 1e-9).unwrap());
        assert!(matches!(s.contains(&[1.0], 0.0), Err(Error::Dimension { .. })));
        assert!(matches!(s.lmo(&[1.0]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn region_json_shapes() {
        let r: Region = serde_json::from_str(r#"{"kind":"simplex","n":4}"#).unwrap();
        assert_eq!(r, Region::simplex(4));
        let r: Region = serde_json::from_str(
            r#"{"kind":"dag_path","n":3,"edges":[[0,1,0],[1,2,1]]}"#,
        )
        .unwrap();
        assert_eq!(r.dim(), 2);
        let r: Region =
            serde_json::from_str(r#"{"kind":"enumerated","vertices":[[0,0],[1,0],[0,1]]}"#).unwrap();
        assert_eq!(r.dim(), 2);
        let r: Region = serde_json::from_str(r#"{"kind":"spectrahedron","n":3}"#).unwrap();
        assert_eq!(r.dim(), 6);
        assert!(serde_json::from_str::<Region>(r#"{"kind":"enumerated","vertices":[]}"#).is_err());
    }
}
