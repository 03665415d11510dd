//! Unit-flow path polytopes on layered DAGs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Serialized form of a layered DAG: `edges` are `[u, v, layer]` triples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DagSpec {
    pub n: usize,
    pub edges: Vec<[usize; 3]>,
    #[serde(default)]
    pub source: Option<usize>,
    #[serde(default)]
    pub sink: Option<usize>,
}

/// A validated layered DAG with a distinguished source and sink.
///
/// Points of the associated region are edge-indexed flow vectors. Source
/// defaults to node 0 and sink to node `n - 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DagSpec", into = "DagSpec")]
pub struct DagGraph {
    n: usize,
    edges: Vec<[usize; 3]>,
    source: usize,
    sink: usize,
    topo: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    max_path_edges: usize,
}

impl TryFrom<DagSpec> for DagGraph {
    type Error = Error;

    fn try_from(spec: DagSpec) -> Result<Self> {
        let source = spec.source.unwrap_or(0);
        let sink = spec.sink.unwrap_or(spec.n.saturating_sub(1));
        DagGraph::new(spec.n, spec.edges, source, sink)
    }
}

impl From<DagGraph> for DagSpec {
    fn from(g: DagGraph) -> Self {
        DagSpec {
            n: g.n,
            edges: g.edges,
            source: Some(g.source),
            sink: Some(g.sink),
        }
    }
}

impl DagGraph {
    pub fn new(n: usize, edges: Vec<[usize; 3]>, source: usize, sink: usize) -> Result<Self> {
        if n < 2 || source >= n || sink >= n || source == sink {
            return Err(Error::domain("dag needs n >= 2 and distinct in-range source/sink"));
        }
        if edges.is_empty() {
            return Err(Error::domain("dag has no edges"));
        }
        let mut node_layer: Vec<Option<usize>> = vec![None; n];
        let mut out_edges = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for (e, &[u, v, layer]) in edges.iter().enumerate() {
            if u >= n || v >= n || u == v {
                return Err(Error::domain(format!("edge {e} has invalid endpoints ({u}, {v})")));
            }
            for (node, want) in [(u, layer), (v, layer + 1)] {
                match node_layer[node] {
                    Some(l) if l != want => {
                        return Err(Error::domain(format!(
                            "edge {e} puts node {node} in layer {want}, already in layer {l}"
                        )))
                    }
                    _ => node_layer[node] = Some(want),
                }
            }
            out_edges[u].push(e);
            indegree[v] += 1;
        }
        // Kahn; the layer check already rules out cycles but keep the order explicit
        let mut topo = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).rev().filter(|&i| indegree[i] == 0).collect();
        while let Some(u) = stack.pop() {
            topo.push(u);
            for &e in out_edges[u].iter().rev() {
                let v = edges[e][1];
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    stack.push(v);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::domain("edge list contains a cycle"));
        }
        let mut g = DagGraph {
            n,
            edges,
            source,
            sink,
            topo,
            out_edges,
            max_path_edges: 0,
        };
        let longest = g.longest_path_edges();
        if longest[sink].is_none() {
            return Err(Error::domain("sink is not reachable from source"));
        }
        g.max_path_edges = longest[sink].unwrap_or(0);
        Ok(g)
    }

    /// Layered DAG with `layers` inner layers of `width` nodes each, complete
    /// bipartite connections between consecutive layers, a source feeding the
    /// first layer and a sink drained by the last one.
    pub fn layered(layers: usize, width: usize) -> Result<Self> {
        if layers == 0 || width == 0 {
            return Err(Error::domain("layered dag needs layers >= 1 and width >= 1"));
        }
        let n = layers * width + 2;
        let node = |layer: usize, i: usize| 1 + layer * width + i;
        let mut edges = Vec::new();
        for i in 0..width {
            edges.push([0, node(0, i), 0]);
        }
        for l in 0..layers - 1 {
            for i in 0..width {
                for j in 0..width {
                    edges.push([node(l, i), node(l + 1, j), l + 1]);
                }
            }
        }
        for i in 0..width {
            edges.push([node(layers - 1, i), n - 1, layers]);
        }
        DagGraph::new(n, edges, 0, n - 1)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Number of edges on the longest source-sink path.
    pub fn max_path_edges(&self) -> usize {
        self.max_path_edges
    }

    fn longest_path_edges(&self) -> Vec<Option<usize>> {
        let mut best: Vec<Option<usize>> = vec![None; self.n];
        best[self.source] = Some(0);
        for &u in &self.topo {
            let Some(du) = best[u] else { continue };
            for &e in &self.out_edges[u] {
                let v = self.edges[e][1];
                if best[v].map_or(true, |dv| du + 1 > dv) {
                    best[v] = Some(du + 1);
                }
            }
        }
        best
    }

    /// Edge indices of a minimum-cost source-sink path under edge costs `c`.
    pub fn shortest_path(&self, c: &[f64]) -> (Vec<usize>, f64) {
        let mut dist = vec![f64::INFINITY; self.n];
        let mut pred: Vec<Option<usize>> = vec![None; self.n];
        dist[self.source] = 0.0;
        for &u in &self.topo {
            if dist[u] == f64::INFINITY {
                continue;
            }
            for &e in &self.out_edges[u] {
                let v = self.edges[e][1];
                let cand = dist[u] + c[e];
                let better = match pred[v] {
                    None => true,
                    Some(pe) => cand < dist[v] || (cand == dist[v] && e < pe),
                };
                if better {
                    dist[v] = cand;
                    pred[v] = Some(e);
                }
            }
        }
        let mut path = Vec::new();
        let mut node = self.sink;
        while node != self.source {
            let e = pred[node].expect("sink reachable by construction");
            path.push(e);
            node = self.edges[e][0];
        }
        path.reverse();
        (path, dist[self.sink])
    }

    /// All source-sink paths as edge-index lists, or `None` past `limit`.
    pub fn enumerate_paths(&self, limit: usize) -> Option<Vec<Vec<usize>>> {
        fn walk(
            g: &DagGraph,
            node: usize,
            stack: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            limit: usize,
        ) -> bool {
            if node == g.sink {
                out.push(stack.clone());
                return out.len() <= limit;
            }
            for &e in &g.out_edges[node] {
                stack.push(e);
                let ok = walk(g, g.edges[e][1], stack, out, limit);
                stack.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        let mut out = Vec::new();
        walk(self, self.source, &mut Vec::new(), &mut out, limit).then_some(out)
    }

    /// Max flow-conservation violation of `x` (source +1 out, sink +1 in).
    pub fn conservation_residual(&self, x: &[f64]) -> f64 {
        let mut net = vec![0.0; self.n];
        for (e, &[u, v, _]) in self.edges.iter().enumerate() {
            net[u] += x[e];
            net[v] -= x[e];
        }
        net[self.source] -= 1.0;
        net[self.sink] += 1.0;
        net.iter().fold(0.0, |m, r| m.max(r.abs()))
    }
}
