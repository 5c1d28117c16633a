//! Geodesic distances, diameters and the exact distance powers `D_k(G)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::GraphError;
use crate::graph::{Graph, VertexSet};

/// Sentinel stored for pairs in different components.
pub const UNREACHABLE: u8 = u8::MAX;

/// All-pairs geodesic distances of a graph.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u8>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Raw entry; [`UNREACHABLE`] across components.
    #[inline]
    pub fn raw(&self, i: usize, j: usize) -> u8 {
        self.d[i * self.n + j]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        match self.raw(i, j) {
            UNREACHABLE => None,
            x => Some(x as usize),
        }
    }

    pub fn diameter(&self) -> ExtDiameter {
        let mut best = 0u32;
        for &x in &self.d {
            if x == UNREACHABLE {
                return ExtDiameter::Infinite;
            }
            best = best.max(x as u32);
        }
        ExtDiameter::Finite(best)
    }

    /// Vertices at distance exactly `k` from `v`.
    pub fn sphere(&self, v: usize, k: usize) -> VertexSet {
        let row = &self.d[v * self.n..(v + 1) * self.n];
        let mut s = VertexSet::EMPTY;
        for (u, &x) in row.iter().enumerate() {
            if x as usize == k && x != UNREACHABLE {
                s = s.with(u);
            }
        }
        s
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DistanceMatrix(n={})", self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                match self.get(i, j) {
                    Some(x) => write!(f, "{x:>3}")?,
                    None => write!(f, "  -")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Diameter extended with infinity for disconnected graphs.
///
/// The derived order puts every finite value below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtDiameter {
    Finite(u32),
    Infinite,
}

impl ExtDiameter {
    pub fn finite(self) -> Option<u32> {
        match self {
            ExtDiameter::Finite(d) => Some(d),
            ExtDiameter::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtDiameter::Finite(_))
    }
}

impl fmt::Display for ExtDiameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDiameter::Finite(d) => write!(f, "{d}"),
            ExtDiameter::Infinite => f.write_str("inf"),
        }
    }
}

/// Breadth-first layers from `src`, one word-parallel frontier per step.
fn bfs_row(g: &Graph, src: usize, out: &mut [u8]) {
    out.fill(UNREACHABLE);
    out[src] = 0;
    let mut seen = 1u64 << src;
    let mut frontier = seen;
    let mut depth = 0u8;
    while frontier != 0 {
        depth += 1;
        let mut next = 0u64;
        for v in VertexSet(frontier) {
            next |= g.neighbors(v).0;
        }
        frontier = next & !seen;
        seen |= frontier;
        for v in VertexSet(frontier) {
            out[v] = depth;
        }
    }
}

pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut d = vec![UNREACHABLE; n * n];
    for (src, row) in d.chunks_mut(n).enumerate() {
        bfs_row(g, src, row);
    }
    DistanceMatrix { n, d }
}

/// Eccentricity of `src`, or `None` if some vertex is unreachable.
pub fn eccentricity(g: &Graph, src: usize) -> Option<u32> {
    let all = g.vertices().0;
    let mut seen = 1u64 << src;
    let mut frontier = seen;
    let mut depth = 0u32;
    loop {
        let mut next = 0u64;
        for v in VertexSet(frontier) {
            next |= g.neighbors(v).0;
        }
        frontier = next & !seen;
        if frontier == 0 {
            return (seen == all).then_some(depth);
        }
        seen |= frontier;
        depth += 1;
    }
}

/// Largest geodesic distance; `Finite(0)` for a single vertex.
pub fn diameter(g: &Graph) -> ExtDiameter {
    let mut best = 0;
    for v in 0..g.n() {
        match eccentricity(g, v) {
            Some(e) => best = best.max(e),
            None => return ExtDiameter::Infinite,
        }
    }
    ExtDiameter::Finite(best)
}

/// The exact distance power: `{u, v}` is an edge iff `d_G(u, v) = k`.
pub fn k_distance(g: &Graph, k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::ZeroDistance);
    }
    if k == 1 {
        return Ok(g.clone());
    }
    let dm = all_pairs_distances(g);
    let mut rows = [0u64; crate::graph::MAX_VERTICES];
    for (v, row) in rows.iter_mut().enumerate().take(g.n()) {
        *row = dm.sphere(v, k).0;
    }
    Ok(Graph::from_rows(&rows[..g.n()]).expect("distance spheres are symmetric"))
}

/// `D_2(G)` computed locally: `v` is joined to vertices reachable by a
/// two-step walk that are neither `v` nor already adjacent to it.
pub fn two_distance(g: &Graph) -> Graph {
    let n = g.n();
    let mut rows = [0u64; crate::graph::MAX_VERTICES];
    for (v, row) in rows.iter_mut().enumerate().take(n) {
        let mut two = 0u64;
        for w in g.neighbors(v) {
            two |= g.neighbors(w).0;
        }
        *row = two & !g.closed_neighbors(v).0;
    }
    Graph::from_rows(&rows[..n]).expect("two-step reachability is symmetric")
}

/// Vertex classes of the connected components, ordered by least member.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    let mut rest = g.vertices();
    let mut out = Vec::new();
    while let Some(v) = rest.first() {
        let comp = g.reach(v);
        rest = rest.difference(comp);
        out.push(comp);
    }
    out
}

/// `⋂_{v ∈ s} N(v)`.
pub fn common_neighborhood(g: &Graph, s: VertexSet) -> Result<VertexSet, GraphError> {
    if s.is_empty() {
        return Err(GraphError::EmptyVertexSet);
    }
    if let Some(v) = s.difference(g.vertices()).first() {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    Ok(s.iter()
        .fold(g.vertices(), |acc, v| acc.intersection(g.neighbors(v))))
}
