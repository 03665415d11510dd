//! Synthetic least-squares instances with a known zero optimum.

use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{svec_len, svec_pack, Matrix};
use crate::objective::{LeastSquares, Objective};
use crate::region::{generators, DagGraph, Region};
use crate::rng;

/// Region shorthands expanded at generation time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratedRegion {
    /// Convex hull of Hamiltonian cycles of the complete graph.
    Hamiltonian { nodes: usize },
    /// Complete layered DAG, source to sink.
    LayeredDag { layers: usize, width: usize },
}

/// Either a generator shorthand or a fully specified region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RegionSpec {
    Generated(GeneratedRegion),
    Explicit(Region),
}

impl RegionSpec {
    pub fn build(&self) -> Result<Region> {
        let region = match self {
            RegionSpec::Generated(GeneratedRegion::Hamiltonian { nodes }) => generators::hamiltonian_polytope(*nodes)?,
            RegionSpec::Generated(GeneratedRegion::LayeredDag { layers, width }) => {
                Region::DagPath(DagGraph::layered(*layers, *width)?)
            }
            RegionSpec::Explicit(r) => r.clone(),
        };
        region.validate()?;
        Ok(region)
    }
}

fn default_vertices() -> usize {
    8
}

/// Generator parameters for `||Ax - b||^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub region: RegionSpec,
    /// Rows of `A`.
    pub m: usize,
    /// Fraction of non-zero entries of `A`.
    pub density: f64,
    pub seed: u64,
    /// Vertices averaged into `x*` for polytopes.
    #[serde(default = "default_vertices")]
    pub x_star_vertices: usize,
}

/// A generated instance: region, objective and the planted optimum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub region: Region,
    pub objective: LeastSquares,
    pub x_star: Vec<f64>,
}

/// Draws `A` (entries non-zero with probability `density`, values uniform
/// on `[0, 1]`), a feasible `x*`, and sets `b = A x*`.
pub fn gen_instance(spec: &InstanceSpec) -> Result<Instance> {
    if !(spec.density > 0.0 && spec.density <= 1.0) {
        return Err(Error::domain(format!("density must be in (0, 1], got {}", spec.density)));
    }
    if spec.m == 0 {
        return Err(Error::domain("instance needs m >= 1"));
    }
    let region = spec.region.build()?;
    let n = region.dim();
    let mut r = rng::seeded(spec.seed);

    let x_star = match &region {
        Region::Spectrahedron { n: side, .. } => {
            let mut eye = vec![0.0; side * side];
            for i in 0..*side {
                eye[i * side + i] = 1.0 / *side as f64;
            }
            let packed = svec_pack(*side, &eye);
            debug_assert_eq!(packed.len(), svec_len(*side));
            packed
        }
        _ => {
            let count = spec.x_star_vertices.max(1);
            let verts = (0..count)
                .map(|_| {
                    let c: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
                    region.lmo(&c)
                })
                .collect::<Result<Vec<_>>>()?;
            region.centroid(&verts)
        }
    };

    let mut data = vec![0.0; spec.m * n];
    for v in data.iter_mut() {
        if r.gen::<f64>() < spec.density {
            *v = r.gen::<f64>();
        }
    }
    let a = if spec.density < 0.5 {
        Matrix::csr_from_dense(spec.m, n, &data)?
    } else {
        Matrix::dense(spec.m, n, data)?
    };
    let objective = LeastSquares::with_solution(a, &x_star)?;
    Ok(Instance {
        spec: spec.clone(),
        region,
        objective,
        x_star,
    })
}

impl Instance {
    /// Objective value at the planted optimum (zero up to rounding).
    pub fn optimum_value(&self) -> Result<f64> {
        self.objective.value(&self.x_star)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string(self)?;
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(density: f64) -> InstanceSpec {
        InstanceSpec {
            region: RegionSpec::Generated(GeneratedRegion::Hamiltonian { nodes: 5 }),
            m: 40,
            density,
            seed: 11,
            x_star_vertices: 4,
        }
    }

    #[test]
    fn planted_optimum_is_zero() {
        let inst = gen_instance(&spec(0.6)).unwrap();
        assert_eq!(inst.optimum_value().unwrap(), 0.0);
        assert!(inst.region.contains(&inst.x_star, 1e-9).unwrap());
    }

    #[test]
    fn density_semantics() {
        let full = gen_instance(&spec(1.0)).unwrap();
        assert_eq!(full.objective.a.nnz(), 40 * 10);
        assert!(gen_instance(&spec(0.0)).is_err());
    }

    #[test]
    fn explicit_regions_parse() {
        let s: RegionSpec = serde_json::from_str(r#"{"kind":"simplex","n":3}"#).unwrap();
        assert_eq!(s.build().unwrap(), Region::simplex(3));
        let s: RegionSpec = serde_json::from_str(r#"{"kind":"hamiltonian","nodes":4}"#).unwrap();
        assert_eq!(s.build().unwrap().dim(), 6);
    }
}
