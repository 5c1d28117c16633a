//! Canonical labeling by partition refinement and individualization.
//!
//! Every leaf of the search tree is a discrete ordered partition; the
//! canonical form is the lexicographically largest relabeled adjacency
//! matrix over all leaves. Leaves with equal certificates yield
//! automorphisms, which prune sibling subtrees in the same orbit.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, VertexSet};

/// A relabeling-invariant form: the canonically relabeled graph.
///
/// Two graphs have equal forms iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Graph);

impl CanonicalForm {
    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    /// Packed upper triangle, row by row, one bit per pair.
    pub fn to_bytes(&self) -> Vec<u8> {
        let g = &self.0;
        let n = g.n();
        let mut out = vec![n as u8];
        let mut acc = 0u8;
        let mut bits = 0;
        for i in 0..n {
            for j in i + 1..n {
                acc = acc << 1 | g.has_edge(i, j) as u8;
                bits += 1;
                if bits == 8 {
                    out.push(acc);
                    acc = 0;
                    bits = 0;
                }
            }
        }
        if bits > 0 {
            out.push(acc << (8 - bits));
        }
        out
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Returns the canonical form together with the labeling `perm`, where
/// `g.permuted(&perm)` equals the form's graph.
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.n();
    let mut search = Search {
        g,
        best: None,
        autos: Vec::new(),
    };
    let mut prefix = Vec::new();
    search.visit(vec![g.vertices().0], &mut prefix);
    let (cert, order) = search.best.expect("search visits at least one leaf");
    let mut perm = vec![0usize; n];
    for (p, &v) in order.iter().enumerate() {
        perm[v] = p;
    }
    let form = Graph::from_rows(&cert).expect("relabeled rows are a graph");
    (CanonicalForm(form), perm)
}

/// Refines an ordered partition to the coarsest equitable one.
///
/// Cells are split by neighbor counts into each splitter cell, with
/// subcells ordered by increasing count.
fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let n = g.n();
    let mut counts = [0u32; 64];
    loop {
        let before = cells.len();
        if before == n {
            return;
        }
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut next = Vec::with_capacity(cells.len() + 2);
            for &cell in cells.iter() {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut lo = u32::MAX;
                let mut hi = 0;
                for v in VertexSet(cell) {
                    let c = (g.neighbors(v).0 & splitter).count_ones();
                    counts[v] = c;
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
                if lo == hi {
                    next.push(cell);
                    continue;
                }
                let mut rest = cell;
                while rest != 0 {
                    let mut m = u32::MAX;
                    for v in VertexSet(rest) {
                        m = m.min(counts[v]);
                    }
                    let sub = VertexSet(rest)
                        .iter()
                        .filter(|&v| counts[v] == m)
                        .fold(0u64, |acc, v| acc | 1u64 << v);
                    next.push(sub);
                    rest &= !sub;
                }
            }
            *cells = next;
            s += 1;
        }
        if cells.len() == before {
            return;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<u8>>,
}

impl Search<'_> {
    fn visit(&mut self, mut cells: Vec<u64>, prefix: &mut Vec<usize>) {
        refine(self.g, &mut cells);
        let Some(t) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let target = cells[t];
        let mut tried: Vec<usize> = Vec::new();
        for v in VertexSet(target) {
            if !tried.is_empty() && self.equivalent_to_tried(v, &tried, prefix) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(1u64 << v);
            child.push(target & !(1u64 << v));
            child.extend_from_slice(&cells[t + 1..]);
            prefix.push(v);
            self.visit(child, prefix);
            prefix.pop();
            tried.push(v);
        }
    }

    fn leaf(&mut self, cells: &[u64]) {
        let g = self.g;
        let n = g.n();
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = [0usize; 64];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let cert: Vec<u64> = order
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .fold(0u64, |acc, w| acc | 1u64 << pos[w])
            })
            .collect();
        match &self.best {
            None => self.best = Some((cert, order)),
            Some((best, best_order)) => match cert.cmp(best) {
                core::cmp::Ordering::Greater => self.best = Some((cert, order)),
                core::cmp::Ordering::Equal => {
                    let mut gamma = vec![0u8; n];
                    for p in 0..n {
                        gamma[order[p]] = best_order[p] as u8;
                    }
                    if gamma.iter().enumerate().any(|(i, &x)| x as usize != i) {
                        self.autos.push(gamma);
                    }
                }
                core::cmp::Ordering::Less => {}
            },
        }
    }

    /// Whether `v` shares an orbit with an explored sibling under the
    /// known automorphisms that fix `prefix` pointwise.
    fn equivalent_to_tried(&self, v: usize, tried: &[usize], prefix: &[usize]) -> bool {
        let n = self.g.n();
        let mut parent: Vec<u8> = (0..n as u8).collect();
        fn find(p: &mut [u8], mut x: usize) -> usize {
            while p[x] as usize != x {
                p[x] = p[p[x] as usize];
                x = p[x] as usize;
            }
            x
        }
        let mut any = false;
        for gamma in &self.autos {
            if prefix.iter().any(|&u| gamma[u] as usize != u) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y as usize));
                if a != b {
                    parent[a.max(b)] = a.min(b) as u8;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&w| find(&mut parent, w) == rv)
    }
}
