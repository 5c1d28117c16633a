//! Isomorph-free generation of connected graphs by canonical augmentation.
//!
//! A child is built from a parent by adding one vertex adjacent to a
//! nonempty subset of the parent. The child is kept only if deleting its
//! canonical deletion vertex (a non-cut vertex chosen by an invariant and
//! then by canonical position) gives back a graph isomorphic to the
//! parent. Surviving children of one parent are deduplicated by form.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::{canonical_form, canonical_labeling, CanonicalForm};
use crate::error::EnumError;
use crate::graph::{Graph, VertexSet};

/// Largest order enumerated without an explicit override.
pub const ENUMERATION_CAP: usize = 11;
/// Largest order enumerated at all.
pub const HARD_LIMIT: usize = 12;

pub fn check_order(n: usize, force: bool) -> Result<(), EnumError> {
    if n == 0 {
        return Err(EnumError::ZeroVertices);
    }
    if n > HARD_LIMIT {
        return Err(EnumError::BeyondHardLimit(n));
    }
    if n > ENUMERATION_CAP && !force {
        return Err(EnumError::CapExceeded {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(())
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, each in canonical labeling, in a deterministic order.
pub fn enumerate_connected(n: usize, force: bool) -> Result<ConnectedGraphs, EnumError> {
    check_order(n, force)?;
    Ok(ConnectedGraphs::from_root(
        Graph::empty(1).expect("one vertex"),
        n,
    ))
}

struct Frame {
    parent: Graph,
    form: CanonicalForm,
    next_mask: u64,
    end_mask: u64,
    seen: BTreeSet<CanonicalForm>,
}

impl Frame {
    fn new(form: CanonicalForm) -> Self {
        let parent = form.graph().clone();
        let end_mask = 1u64 << parent.n();
        Frame {
            parent,
            form,
            next_mask: 1,
            end_mask,
            seen: BTreeSet::new(),
        }
    }
}

/// Depth-first generator; memory is one frame per level.
pub struct ConnectedGraphs {
    target: usize,
    stack: Vec<Frame>,
    pending: Option<Graph>,
}

impl ConnectedGraphs {
    /// Every target-order descendant of `root` in the generation tree.
    ///
    /// `root` must be connected; it is canonicalized first. If `root`
    /// already has `target` vertices it is the only item.
    pub fn from_root(root: Graph, target: usize) -> Self {
        let form = canonical_form(&root);
        if root.n() >= target {
            let pending = (root.n() == target).then(|| form.into_graph());
            return ConnectedGraphs {
                target,
                stack: Vec::new(),
                pending,
            };
        }
        ConnectedGraphs {
            target,
            stack: vec![Frame::new(form)],
            pending: None,
        }
    }
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if let Some(g) = self.pending.take() {
            return Some(g);
        }
        loop {
            let frame = self.stack.last_mut()?;
            if frame.next_mask == frame.end_mask {
                self.stack.pop();
                continue;
            }
            let mask = frame.next_mask;
            frame.next_mask += 1;
            let child = frame
                .parent
                .with_new_vertex(VertexSet(mask))
                .expect("mask lies inside the parent");
            let Some(form) = accept(&child, &frame.form) else {
                continue;
            };
            if frame.seen.contains(&form) {
                continue;
            }
            frame.seen.insert(form.clone());
            if child.n() == self.target {
                return Some(form.into_graph());
            }
            self.stack.push(Frame::new(form));
        }
    }
}

/// Vertices whose removal leaves `g` connected.
fn non_cut_vertices(g: &Graph) -> VertexSet {
    let all = g.vertices();
    let mut out = VertexSet::EMPTY;
    for v in all {
        let rest = all.without(v);
        let Some(start) = rest.first() else {
            out = out.with(v);
            continue;
        };
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for u in VertexSet(frontier) {
                next |= g.neighbors(u).0;
            }
            frontier = next & rest.0 & !seen;
            seen |= frontier;
        }
        if seen == rest.0 {
            out = out.with(v);
        }
    }
    out
}

fn deletion_key(g: &Graph, v: usize) -> (usize, usize) {
    let nbr_sum = g.neighbors(v).iter().map(|w| g.degree(w)).sum();
    (g.degree(v), nbr_sum)
}

/// Returns the child's canonical form if the newest vertex is its
/// canonical deletion vertex up to isomorphism of the remainder.
fn accept(child: &Graph, parent_form: &CanonicalForm) -> Option<CanonicalForm> {
    let v = child.n() - 1;
    let eligible = non_cut_vertices(child);
    debug_assert!(eligible.contains(v));
    let mut best = (0, 0);
    let mut ties = VertexSet::EMPTY;
    for u in eligible {
        let key = deletion_key(child, u);
        if key > best {
            best = key;
            ties = VertexSet::singleton(u);
        } else if key == best {
            ties = ties.with(u);
        }
    }
    if !ties.contains(v) {
        return None;
    }
    let (form, perm) = canonical_labeling(child);
    if ties.len() == 1 {
        return Some(form);
    }
    let m = ties.iter().max_by_key(|&u| perm[u]).expect("ties nonempty");
    if m == v || canonical_form(&child.without_vertex(m)) == *parent_form {
        Some(form)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::connected_components;

    #[test]
    fn small_orders() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_connected(n, false).unwrap().count())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn three_vertices_are_path_and_triangle() {
        let gs: Vec<Graph> = enumerate_connected(3, false).unwrap().collect();
        let forms: BTreeSet<_> = gs.iter().map(canonical_form).collect();
        let expected: BTreeSet<_> = [Graph::path(3).unwrap(), Graph::complete(3).unwrap()]
            .iter()
            .map(canonical_form)
            .collect();
        assert_eq!(forms, expected);
    }

    #[test]
    fn yields_connected_distinct_graphs() {
        let mut seen = BTreeSet::new();
        for g in enumerate_connected(6, false).unwrap() {
            assert_eq!(connected_components(&g).len(), 1);
            assert!(seen.insert(canonical_form(&g)));
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            enumerate_connected(12, false),
            Err(EnumError::CapExceeded { n: 12, cap: 11 })
        ));
        assert!(enumerate_connected(12, true).is_ok());
        assert_eq!(
            enumerate_connected(13, true).err(),
            Some(EnumError::BeyondHardLimit(13))
        );
        assert_eq!(
            enumerate_connected(0, false).err(),
            Some(EnumError::ZeroVertices)
        );
    }

    #[test]
    fn subtrees_partition_the_level() {
        let direct = enumerate_connected(6, false).unwrap().count();
        let split: usize = enumerate_connected(4, false)
            .unwrap()
            .map(|p| ConnectedGraphs::from_root(p, 6).count())
            .sum();
        assert_eq!(direct, split);
    }

    #[test]
    fn deterministic_order() {
        let a: Vec<Graph> = enumerate_connected(6, false).unwrap().collect();
        let b: Vec<Graph> = enumerate_connected(6, false).unwrap().collect();
        assert_eq!(a, b);
    }
}
