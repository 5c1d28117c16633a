use alloc::vec::Vec;

use crate::distance::two_distance;
use crate::error::GraphError;
use crate::graph::{Graph, VertexSet};

/// A walk: consecutive vertices are adjacent in the host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    vertices: Vec<usize>,
}

impl Walk {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
        if let Some(i) = vertices.windows(2).position(|w| !g.has_edge(w[0], w[1])) {
            return Err(GraphError::NotAWalk(i));
        }
        Ok(Walk { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges traversed.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The subwalk between positions `i` and `j` inclusive.
    pub fn subwalk(&self, i: usize, j: usize) -> Walk {
        Walk {
            vertices: self.vertices[i..=j].to_vec(),
        }
    }
}

/// Keeps every other vertex of `w` (positions 0, 2, 4, ...), producing a
/// walk in `D_2(g)`.
///
/// Each window `w[i], w[i+1], w[i+2]` with even `i` must be an induced
/// path, i.e. `w[i] != w[i+2]` and the two are non-adjacent. A trailing
/// odd vertex is dropped.
pub fn halved_walk(g: &Graph, w: &Walk) -> Result<Walk, GraphError> {
    if w.len() < 2 {
        return Err(GraphError::WalkTooShort(w.len()));
    }
    let vs = w.vertices();
    for i in (0..vs.len() - 2).step_by(2) {
        let (a, c) = (vs[i], vs[i + 2]);
        if a == c || g.has_edge(a, c) {
            return Err(GraphError::WindowNotInduced(i));
        }
    }
    let halved: Vec<usize> = vs.iter().copied().step_by(2).collect();
    let g2 = two_distance(g);
    let out = Walk::new(&g2, halved).expect("induced windows give distance-2 pairs");
    Ok(out)
}

/// True iff `order` induces the complement of the path listed in that
/// order: consecutive entries non-adjacent, every other pair adjacent.
pub fn is_path_complement(g: &Graph, order: &[usize]) -> Result<bool, GraphError> {
    let mut seen = VertexSet::EMPTY;
    for &v in order {
        if v >= g.n() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
        if seen.contains(v) {
            return Err(GraphError::DuplicateVertex(v));
        }
        seen = seen.with(v);
    }
    for (a, &u) in order.iter().enumerate() {
        for (b, &v) in order.iter().enumerate().skip(a + 1) {
            let want = b != a + 1;
            if g.has_edge(u, v) != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::k_distance;
    use alloc::vec;

    #[test]
    fn halving_a_path() {
        let p8 = Graph::path(8).unwrap();
        let w = Walk::new(&p8, (0..8).collect()).unwrap();
        let h = halved_walk(&p8, &w).unwrap();
        assert_eq!(h.vertices(), &[0, 2, 4, 6]);
    }

    #[test]
    fn triangle_window_rejected() {
        let k3 = Graph::complete(3).unwrap();
        let w = Walk::new(&k3, vec![0, 1, 2]).unwrap();
        assert_eq!(halved_walk(&k3, &w), Err(GraphError::WindowNotInduced(0)));
    }

    #[test]
    fn halving_cycle_walk_matches_two_distance_oracle() {
        let c6 = Graph::cycle(6).unwrap();
        let w = Walk::new(&c6, vec![0, 1, 2, 3]).unwrap();
        let h = halved_walk(&c6, &w).unwrap();
        assert_eq!(h.vertices(), &[0, 2]);
        let d2 = k_distance(&c6, 2).unwrap();
        assert!(h.vertices().windows(2).all(|p| d2.has_edge(p[0], p[1])));
    }

    #[test]
    fn backtracking_window_rejected() {
        let p3 = Graph::path(3).unwrap();
        let w = Walk::new(&p3, vec![0, 1, 0]).unwrap();
        assert_eq!(halved_walk(&p3, &w), Err(GraphError::WindowNotInduced(0)));
    }

    #[test]
    fn short_walks_rejected() {
        let p3 = Graph::path(3).unwrap();
        let w = Walk::new(&p3, vec![0, 1]).unwrap();
        assert_eq!(halved_walk(&p3, &w), Err(GraphError::WalkTooShort(1)));
        let len2 = Walk::new(&p3, vec![0, 1, 2]).unwrap();
        assert_eq!(halved_walk(&p3, &len2).unwrap().vertices(), &[0, 2]);
    }

    #[test]
    fn walk_requires_edges() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(Walk::new(&p3, vec![0, 2]), Err(GraphError::NotAWalk(0)));
    }

    #[test]
    fn path_complement_natural_order() {
        let g = Graph::path(5).unwrap().complement();
        assert_eq!(is_path_complement(&g, &[0, 1, 2, 3, 4]), Ok(true));
        assert_eq!(is_path_complement(&g, &[0, 2, 1, 3, 4]), Ok(false));
        assert_eq!(
            is_path_complement(&g, &[0, 1, 1]),
            Err(GraphError::DuplicateVertex(1))
        );
    }
}
