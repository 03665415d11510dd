//! Weak separation oracle with a move-to-front vertex cache.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::dot_diff;
use crate::region::{Region, Vertex};

/// Default number of cached vertices.
pub const DEFAULT_CACHE_CAPACITY: usize = 512;

/// Oracle call counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCounters {
    pub hits: u64,
    /// Exact answers reused for a bitwise-identical cost vector.
    pub memo_hits: u64,
    pub misses: u64,
    pub exact_lmo_calls: u64,
    pub weak_sep_calls: u64,
}

/// Previously seen vertices, most recently useful first.
#[derive(Debug, Clone)]
pub struct VertexCache {
    entries: VecDeque<Vertex>,
    capacity: usize,
    counters: OracleCounters,
    last_exact: Option<(Vec<f64>, Vertex)>,
}

impl Default for VertexCache {
    fn default() -> Self {
        Self::new(DEFAULT_CACHE_CAPACITY)
    }
}

impl VertexCache {
    /// A capacity of 0 disables caching; every call then hits the exact LMO.
    pub fn new(capacity: usize) -> Self {
        VertexCache {
            entries: VecDeque::with_capacity(capacity.min(4096)),
            capacity,
            counters: OracleCounters::default(),
            last_exact: None,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn counters(&self) -> OracleCounters {
        self.counters
    }

    pub fn entries(&self) -> impl Iterator<Item = &Vertex> {
        self.entries.iter()
    }

    /// Inserts at the front, moving an existing copy instead of duplicating.
    pub fn insert(&mut self, v: Vertex) {
        if self.capacity == 0 {
            return;
        }
        if let Some(pos) = self.entries.iter().position(|e| e.id == v.id) {
            let old = self.entries.remove(pos).expect("position is in range");
            self.entries.push_front(old);
            return;
        }
        if self.entries.len() == self.capacity {
            self.entries.pop_back();
        }
        self.entries.push_front(v);
    }

    /// Exact LMO call that is counted against this cache's run.
    pub fn exact_lmo(&mut self, region: &Region, c: &[f64]) -> Result<Vertex> {
        self.counters.exact_lmo_calls += 1;
        let v = region.lmo(c)?;
        self.last_exact = Some((c.to_vec(), v.clone()));
        Ok(v)
    }

    /// Exact minimizer for `c`, reusing the previous answer when `c` is
    /// bitwise identical to the last exact query.
    pub fn exact_lmo_memo(&mut self, region: &Region, c: &[f64]) -> Result<Vertex> {
        if let Some((last_c, v)) = &self.last_exact {
            if last_c.len() == c.len() && last_c.iter().zip(c).all(|(a, b)| a.to_bits() == b.to_bits()) {
                self.counters.memo_hits += 1;
                return Ok(v.clone());
            }
        }
        self.exact_lmo(region, c)
    }
}

/// Answer of a weak separation call.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleResponse {
    /// `<c, x - y> > phi / alpha`.
    Positive(Vertex),
    /// `y` is an exact minimizer and `gap = <c, x - y> <= phi / alpha`.
    Negative(Vertex, f64),
}

impl OracleResponse {
    pub fn vertex(&self) -> &Vertex {
        match self {
            OracleResponse::Positive(v) | OracleResponse::Negative(v, _) => v,
        }
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, OracleResponse::Positive(_))
    }
}

/// Weak separation: scan the cache, then fall back to the exact LMO.
pub fn weak_separation(
    cache: &mut VertexCache,
    region: &Region,
    c: &[f64],
    x: &[f64],
    phi: f64,
    alpha: f64,
) -> Result<OracleResponse> {
    if !(phi > 0.0) {
        return Err(Error::domain(format!("weak separation needs phi > 0, got {phi}")));
    }
    if !(alpha >= 1.0) {
        return Err(Error::domain(format!("weak separation needs alpha >= 1, got {alpha}")));
    }
    check_dim(region.dim(), c.len())?;
    check_dim(region.dim(), x.len())?;
    cache.counters.weak_sep_calls += 1;
    let threshold = phi / alpha;

    if let Some(pos) = cache
        .entries
        .iter()
        .position(|v| dot_diff(c, x, &v.point) > threshold)
    {
        cache.counters.hits += 1;
        let v = cache.entries.remove(pos).expect("position is in range");
        cache.entries.push_front(v.clone());
        return Ok(OracleResponse::Positive(v));
    }

    cache.counters.misses += 1;
    let y = cache.exact_lmo_memo(region, c)?;
    let gap = dot_diff(c, x, &y.point);
    if gap > threshold {
        cache.insert(y.clone());
        Ok(OracleResponse::Positive(y))
    } else {
        Ok(OracleResponse::Negative(y, gap))
    }
}

/// `Phi_0 = max_u <grad, u1 - u>` via one exact LMO call; seeds the cache.
pub fn initial_gap(
    cache: &mut VertexCache,
    region: &Region,
    grad: &[f64],
    u1: &[f64],
) -> Result<(f64, Vertex)> {
    check_dim(region.dim(), u1.len())?;
    let y = cache.exact_lmo(region, grad)?;
    let gap = dot_diff(grad, u1, &y.point).max(0.0);
    cache.insert(y.clone());
    Ok((gap, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_then_cached() {
        let r = Region::simplex(2);
        let mut cache = VertexCache::default();
        let resp = weak_separation(&mut cache, &r, &[1.0, 0.0], &[1.0, 0.0], 0.5, 1.0).unwrap();
        assert_eq!(resp.vertex().point, vec![0.0, 1.0]);
        assert!(resp.is_positive());
        assert_eq!(cache.counters().exact_lmo_calls, 1);
        let again = weak_separation(&mut cache, &r, &[1.0, 0.0], &[1.0, 0.0], 0.5, 1.0).unwrap();
        assert!(again.is_positive());
        assert_eq!(cache.counters().exact_lmo_calls, 1);
        assert_eq!(cache.counters().hits, 1);
        assert_eq!(cache.counters().misses, 1);
        assert_eq!(cache.counters().weak_sep_calls, 2);
    }

    #[test]
    fn negative_at_minimizer() {
        let r = Region::simplex(2);
        let mut cache = VertexCache::new(0);
        let resp = weak_separation(&mut cache, &r, &[1.0, 0.0], &[0.0, 1.0], 0.3, 1.0).unwrap();
        match resp {
            OracleResponse::Negative(v, g) => {
                assert_eq!(v.point, vec![0.0, 1.0]);
                assert_eq!(g, 0.0);
            }
            other => panic!("expected negative, got {other:?}"),
        }
    }

    #[test]
    fn boundary_equality_is_negative() {
        let r = Region::simplex(2);
        let mut cache = VertexCache::default();
        let resp = weak_separation(&mut cache, &r, &[1.0, 0.0], &[1.0, 0.0], 1.0, 1.0).unwrap();
        assert!(!resp.is_positive());
    }

    #[test]
    fn rejects_bad_parameters() {
        let r = Region::simplex(2);
        let mut cache = VertexCache::default();
        assert!(weak_separation(&mut cache, &r, &[1.0, 0.0], &[1.0, 0.0], 0.0, 1.0).is_err());
        assert!(weak_separation(&mut cache, &r, &[1.0, 0.0], &[1.0, 0.0], 1.0, 0.5).is_err());
    }

    #[test]
    fn initial_gaps() {
        let mut cache = VertexCache::default();
        let (g, _) = initial_gap(&mut cache, &Region::simplex(3), &[0.0; 3], &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(g, 0.0);
        let (g, v) = initial_gap(&mut cache, &Region::simplex(2), &[1.0, 0.0], &[1.0, 0.0]).unwrap();
        assert_eq!(g, 1.0);
        assert_eq!(v.point, vec![0.0, 1.0]);
        let (g, _) = initial_gap(&mut cache, &Region::unit_box(1), &[-2.0], &[0.0]).unwrap();
        assert_eq!(g, 2.0);
    }

    #[test]
    fn eviction_from_back() {
        let r = Region::simplex(4);
        let mut cache = VertexCache::new(2);
        for i in 0..4 {
            let mut c = vec![0.0; 4];
            c[i] = -1.0;
            cache.insert(r.lmo(&c).unwrap());
        }
        let ids: Vec<_> = cache.entries().map(|v| v.id.clone()).collect();
        assert_eq!(ids, vec![crate::region::VertexId::Index(3), crate::region::VertexId::Index(2)]);
    }
}
