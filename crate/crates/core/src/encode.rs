//! CNF encoding of the search for graphs whose 2-distance graph contains
//! a prescribed long shortest path.
//!
//! Vertices `0..=p2_len` carry the fixed path `P_2` in `G_2`; the rest
//! are free. Fragments share one [`VarMap`] and each returns its clauses
//! as a standalone formula.

use alloc::vec;
use alloc::vec::Vec;

use crate::cnf::{CnfFormula, Lit, VarMap};
use crate::error::EncodeError;
use crate::graph::MAX_VERTICES;

/// Parameters of one search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchParams {
    pub n: usize,
    /// Edge count of the fixed path `0 - 1 - ... - p2_len` in `G_2`.
    pub p2_len: usize,
    /// Required lower bound on `diam(G_2)`.
    pub min_d2: u32,
    /// Optional upper bound on `diam(G)`, encoded and checked on
    /// candidates.
    pub max_d: Option<u32>,
    pub forbid_diam_le_2: bool,
    /// Require every free vertex to reach the path in `G_2`.
    pub g2_connected: bool,
    /// Longest shortcut (in `G_2` edges) forbidden by explicit clauses.
    pub shortcut_max_len: usize,
    pub symmetry_breaking: bool,
    /// Hard cap on the number of shortcut clauses.
    pub clause_cap: u64,
    /// Maximum number of solve calls before giving up.
    pub max_rounds: Option<u64>,
}

impl SearchParams {
    pub fn new(n: usize, p2_len: usize, min_d2: u32) -> Self {
        SearchParams {
            n,
            p2_len,
            min_d2,
            max_d: None,
            forbid_diam_le_2: true,
            g2_connected: true,
            shortcut_max_len: 3,
            symmetry_breaking: true,
            clause_cap: 20_000_000,
            max_rounds: None,
        }
    }

    pub fn validate(&self) -> Result<(), EncodeError> {
        if self.n < 2 || self.n > MAX_VERTICES {
            return Err(EncodeError::VertexCount(self.n));
        }
        if self.p2_len + 1 > self.n {
            return Err(EncodeError::PathTooLong {
                p2_len: self.p2_len,
                n: self.n,
            });
        }
        if self.shortcut_max_len == 0 {
            return Err(EncodeError::ShortcutLen);
        }
        if self.max_d == Some(0) {
            return Err(EncodeError::MaxDiameter);
        }
        Ok(())
    }

    /// Vertices outside the fixed path.
    pub fn free_vertices(&self) -> core::ops::Range<usize> {
        self.p2_len + 1..self.n
    }
}

/// `b_{i,k} <-> OR_j (a_{i,j} & a_{j,k} & !a_{i,k})`, with one auxiliary
/// per conjunct `(i, j, k)` carrying the full biconditional.
pub fn encode_b_definition(vm: &mut VarMap) -> CnfFormula {
    let n = vm.n();
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let pairs: Vec<(usize, usize)> = vm.pairs().collect();
    for (i, k) in pairs {
        let (a_ik, b_ik) = (vm.a(i, k), vm.b(i, k));
        let mut witnesses = Vec::with_capacity(n);
        for j in (0..n).filter(|&j| j != i && j != k) {
            let (a_ij, a_jk) = (vm.a(i, j), vm.a(j, k));
            let t = vm.new_aux(i, k);
            clauses.push([-t, a_ij].into());
            clauses.push([-t, a_jk].into());
            clauses.push([-t, -a_ik].into());
            clauses.push([t, -a_ij, -a_jk, a_ik].into());
            clauses.push([b_ik, -t].into());
            witnesses.push(t);
        }
        let mut def = Vec::with_capacity(witnesses.len() + 1);
        def.push(-b_ik);
        def.extend(witnesses);
        clauses.push(def);
    }
    collect(vm, clauses)
}

/// Unit clauses `b_{i,i+1}` along the fixed path.
pub fn encode_p2_fixing(vm: &VarMap, p: &SearchParams) -> Result<CnfFormula, EncodeError> {
    if p.p2_len + 1 > vm.n() {
        return Err(EncodeError::PathTooLong {
            p2_len: p.p2_len,
            n: vm.n(),
        });
    }
    let clauses = (0..p.p2_len).map(|i| [vm.b(i, i + 1)].into()).collect();
    Ok(collect(vm, clauses))
}

/// Number of clauses [`encode_shortcut_forbidding`] would emit.
pub fn shortcut_clause_count(p: &SearchParams) -> u128 {
    let free = p.n.saturating_sub(p.p2_len + 1) as u128;
    // arrangements[m] = free! / (free - m)!
    let mut arrangements = Vec::new();
    let mut acc = 1u128;
    for m in 0..=p.shortcut_max_len as u128 {
        arrangements.push(acc);
        acc = acc.saturating_mul(free.saturating_sub(m));
    }
    let mut total = 0u128;
    for dist in 2..=p.p2_len {
        let mut per_pair = 1u128;
        for len in 2..dist.min(p.shortcut_max_len + 1) {
            per_pair = per_pair.saturating_add(arrangements[len - 1]);
        }
        let pairs = (p.p2_len - dist + 1) as u128;
        total = total.saturating_add(per_pair.saturating_mul(pairs));
    }
    total
}

/// Forbids every `G_2` route between two path vertices that is shorter
/// than their separation along the path: chords (length 1) always, and
/// routes through free vertices up to `shortcut_max_len` edges.
pub fn encode_shortcut_forbidding(
    vm: &VarMap,
    p: &SearchParams,
) -> Result<CnfFormula, EncodeError> {
    if p.shortcut_max_len == 0 {
        return Err(EncodeError::ShortcutLen);
    }
    if p.p2_len + 1 > vm.n() {
        return Err(EncodeError::PathTooLong {
            p2_len: p.p2_len,
            n: vm.n(),
        });
    }
    let needed = shortcut_clause_count(p);
    if needed > p.clause_cap as u128 {
        return Err(EncodeError::ClauseCap {
            needed,
            cap: p.clause_cap,
        });
    }
    let free: Vec<usize> = p.free_vertices().collect();
    let mut clauses = Vec::new();
    let mut route = Vec::new();
    for a in 0..=p.p2_len {
        for b in a + 2..=p.p2_len {
            clauses.push([-vm.b(a, b)].into());
            let max_len = (b - a - 1).min(p.shortcut_max_len);
            for len in 2..=max_len {
                route.clear();
                route.push(a);
                extend_routes(vm, &free, len - 1, b, &mut route, &mut clauses);
            }
        }
    }
    Ok(collect(vm, clauses))
}

fn extend_routes(
    vm: &VarMap,
    free: &[usize],
    remaining: usize,
    end: usize,
    route: &mut Vec<usize>,
    out: &mut Vec<Vec<Lit>>,
) {
    if remaining == 0 {
        route.push(end);
        out.push(route.windows(2).map(|w| -vm.b(w[0], w[1])).collect());
        route.pop();
        return;
    }
    for &v in free {
        if route.contains(&v) {
            continue;
        }
        route.push(v);
        extend_routes(vm, free, remaining - 1, end, route, out);
        route.pop();
    }
}

/// Rules out graphs of diameter 1 or 2.
///
/// `r_{i,k}` holds iff `i` and `k` are adjacent or share a neighbor;
/// one clause demands some `r_{i,k}` be false.
pub fn encode_diam2_exclusion(vm: &mut VarMap) -> CnfFormula {
    let n = vm.n();
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut far = Vec::new();
    let pairs: Vec<(usize, usize)> = vm.pairs().collect();
    for (i, k) in pairs {
        let a_ik = vm.a(i, k);
        let r = vm.new_aux(i, k);
        let mut def = Vec::with_capacity(n);
        def.push(-r);
        def.push(a_ik);
        clauses.push([r, -a_ik].into());
        for j in (0..n).filter(|&j| j != i && j != k) {
            let (a_ij, a_jk) = (vm.a(i, j), vm.a(j, k));
            let c = vm.new_aux(i, k);
            clauses.push([-c, a_ij].into());
            clauses.push([-c, a_jk].into());
            clauses.push([c, -a_ij, -a_jk].into());
            clauses.push([r, -c].into());
            def.push(c);
        }
        clauses.push(def);
        far.push(-r);
    }
    if !far.is_empty() {
        clauses.push(far);
    }
    collect(vm, clauses)
}

/// `G_2` connectivity: every free vertex reaches the fixed path within
/// as many `G_2` steps as there are free vertices.
///
/// `R[t][v]` claims `v` is at most `t` steps from the path; each claim
/// must be justified by `R[t-1][v]` or by a `G_2` neighbor `u` with
/// `R[t-1][u]`. Only that direction is needed since every `R` at the
/// last layer is asserted.
pub fn encode_g2_connectivity(vm: &mut VarMap, p: &SearchParams) -> CnfFormula {
    let free: Vec<usize> = p.free_vertices().collect();
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut prev: Vec<Option<Lit>> = vec![None; vm.n()];
    let mut layer = prev.clone();
    for t in 1..=free.len() {
        for &v in &free {
            let r = vm.new_aux(v, v);
            let mut why = vec![-r];
            if t > 1 {
                why.push(prev[v].expect("free vertices carry a literal"));
            }
            for u in (0..vm.n()).filter(|&u| u != v) {
                let b = vm.b(u, v);
                match (u <= p.p2_len, prev[u]) {
                    (true, _) => why.push(b),
                    (false, Some(ru)) => {
                        let c = vm.new_aux(u, v);
                        clauses.push([-c, ru].into());
                        clauses.push([-c, b].into());
                        why.push(c);
                    }
                    _ => {}
                }
            }
            clauses.push(why);
            layer[v] = Some(r);
        }
        for &v in &free {
            prev[v] = layer[v];
        }
    }
    for &v in &free {
        clauses.push([prev[v].expect("at least one layer")].into());
    }
    collect(vm, clauses)
}

/// `diam(G) <= max_d`, by the same justified-reachability layering in
/// `G` from every source.
pub fn encode_max_diameter(vm: &mut VarMap, max_d: u32) -> CnfFormula {
    let n = vm.n();
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    for s in 0..n {
        // layer 1 is adjacency itself
        let mut prev: Vec<Option<Lit>> = (0..n).map(|v| (v != s).then(|| vm.a(s, v))).collect();
        for _ in 2..=max_d.min(n as u32 - 1) {
            let mut next = prev.clone();
            for v in (0..n).filter(|&v| v != s) {
                let r = vm.new_aux(s, v);
                let mut why = vec![-r, prev[v].expect("v != s")];
                for u in (0..n).filter(|&u| u != v && u != s) {
                    let c = vm.new_aux(s, v);
                    clauses.push([-c, prev[u].expect("u != s")].into());
                    clauses.push([-c, vm.a(u, v)].into());
                    why.push(c);
                }
                clauses.push(why);
                next[v] = Some(r);
            }
            prev = next;
        }
        for r in &prev[s + 1..] {
            clauses.push([r.expect("v != s")].into());
        }
    }
    collect(vm, clauses)
}

/// Lex-leader constraints for swapping consecutive free vertices `u` and
/// `u + 1`: the adjacency row of `u` (columns other than `u`, `u + 1`, in
/// increasing order) must not exceed that of `u + 1`.
pub fn encode_symmetry_breaking(vm: &mut VarMap, p: &SearchParams) -> CnfFormula {
    let n = vm.n();
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let free: Vec<usize> = p.free_vertices().collect();
    for pair in free.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        let cols: Vec<usize> = (0..n).filter(|&w| w != u && w != v).collect();
        let mut eq: Option<Lit> = None;
        for (t, &w) in cols.iter().enumerate() {
            let (x, y) = (vm.a(u, w), vm.a(v, w));
            let guard = |mut c: Vec<Lit>| {
                if let Some(e) = eq {
                    c.insert(0, -e);
                }
                c
            };
            clauses.push(guard([-x, y].into()));
            if t + 1 < cols.len() {
                let next = vm.new_aux(u, v);
                clauses.push(guard([-x, -y, next].into()));
                clauses.push(guard([x, y, next].into()));
                eq = Some(next);
            }
        }
    }
    collect(vm, clauses)
}

/// The full search formula.
pub fn build_formula(p: &SearchParams) -> Result<(VarMap, CnfFormula), EncodeError> {
    p.validate()?;
    let mut vm = VarMap::new(p.n);
    let mut f = encode_b_definition(&mut vm);
    f.append(encode_p2_fixing(&vm, p)?);
    f.append(encode_shortcut_forbidding(&vm, p)?);
    if p.forbid_diam_le_2 {
        f.append(encode_diam2_exclusion(&mut vm));
    }
    if p.g2_connected {
        f.append(encode_g2_connectivity(&mut vm, p));
    }
    if let Some(d) = p.max_d {
        f.append(encode_max_diameter(&mut vm, d));
    }
    if p.symmetry_breaking {
        f.append(encode_symmetry_breaking(&mut vm, p));
    }
    f.reserve_vars(vm.var_count());
    Ok((vm, f))
}

fn collect(vm: &VarMap, clauses: Vec<Vec<Lit>>) -> CnfFormula {
    let mut f = vm.formula();
    for c in clauses {
        f.add_clause(&c).expect("encoder emits well-formed clauses");
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Assignment;
    use crate::distance::{diameter, two_distance, ExtDiameter};
    use crate::graph::{Graph, VertexSet};

    /// Completes `a` from the graph; `b` and every auxiliary follow by
    /// unit propagation when the definitions are biconditional.
    fn propagate(f: &CnfFormula, mut a: Assignment) -> Option<Assignment> {
        loop {
            let mut changed = false;
            for c in f.clauses() {
                if c.iter().any(|&l| a.lit_value(l) == Some(true)) {
                    continue;
                }
                let open: Vec<Lit> = c
                    .iter()
                    .copied()
                    .filter(|&l| a.lit_value(l).is_none())
                    .collect();
                match open.len() {
                    0 => return None,
                    1 => {
                        a.set(open[0].unsigned_abs(), open[0] > 0);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Some(a);
            }
        }
    }

    fn graph_assignment(vm: &VarMap, g: &Graph) -> Assignment {
        let mut a = Assignment::new(vm.var_count());
        for (i, j) in vm.pairs() {
            a.set(vm.a(i, j) as u32, g.has_edge(i, j));
        }
        a
    }

    fn b_edges(vm: &VarMap, a: &Assignment) -> Vec<(usize, usize)> {
        vm.pairs()
            .filter(|&(i, j)| a.get(vm.b(i, j) as u32) == Some(true))
            .collect()
    }

    #[test]
    fn two_step_path_forces_b() {
        let mut vm = VarMap::new(3);
        let f = encode_b_definition(&mut vm);
        let g = Graph::path(3).unwrap();
        let a = propagate(&f, graph_assignment(&vm, &g)).unwrap();
        assert_eq!(a.get(vm.b(0, 2) as u32), Some(true));
        assert_eq!(a.get(vm.b(0, 1) as u32), Some(false));
    }

    #[test]
    fn triangle_forces_no_b() {
        let mut vm = VarMap::new(3);
        let f = encode_b_definition(&mut vm);
        let a = propagate(&f, graph_assignment(&vm, &Graph::complete(3).unwrap())).unwrap();
        assert!(b_edges(&vm, &a).is_empty());
    }

    #[test]
    fn path_on_four_matches_bfs() {
        let mut vm = VarMap::new(4);
        let f = encode_b_definition(&mut vm);
        let g = Graph::path(4).unwrap();
        let a = propagate(&f, graph_assignment(&vm, &g)).unwrap();
        assert_eq!(b_edges(&vm, &a), vec![(0, 2), (1, 3)]);
        assert_eq!(
            b_edges(&vm, &a),
            two_distance(&g).edges().collect::<Vec<_>>()
        );
        assert!(f.is_satisfied_by(&a));
    }

    #[test]
    fn p2_units() {
        let vm = VarMap::new(13);
        let p = SearchParams::new(13, 7, 7);
        let f = encode_p2_fixing(&vm, &p).unwrap();
        assert_eq!(f.len(), 7);
        assert!(f.clauses().iter().all(|c| c.len() == 1 && c[0] > 0));
        assert!(encode_p2_fixing(&vm, &SearchParams::new(13, 0, 0))
            .unwrap()
            .is_empty());
        assert!(matches!(
            encode_p2_fixing(&vm, &SearchParams::new(13, 13, 0)),
            Err(EncodeError::PathTooLong { .. })
        ));
    }

    #[test]
    fn chord_and_two_step_shortcuts() {
        let vm = VarMap::new(5);
        let mut p = SearchParams::new(5, 3, 3);
        p.shortcut_max_len = 1;
        let f = encode_shortcut_forbidding(&vm, &p).unwrap();
        assert!(f.clauses().contains(&vec![-vm.b(0, 2)]));
        assert_eq!(f.len(), 3);
        p.shortcut_max_len = 2;
        let f = encode_shortcut_forbidding(&vm, &p).unwrap();
        // free vertex 4; pair (0, 3) gains the route 0-4-3
        assert!(f.clauses().contains(&vec![-vm.b(0, 4), -vm.b(4, 3)]));
        assert_eq!(f.len() as u128, shortcut_clause_count(&p));
    }

    #[test]
    fn shortcut_counts_agree() {
        for (n, len, cap) in [(9, 6, 3), (13, 8, 3), (13, 8, 5), (10, 4, 9)] {
            let vm = VarMap::new(n);
            let mut p = SearchParams::new(n, len, 0);
            p.shortcut_max_len = cap;
            let f = encode_shortcut_forbidding(&vm, &p).unwrap();
            assert_eq!(
                f.len() as u128,
                shortcut_clause_count(&p),
                "n={n} len={len} cap={cap}"
            );
        }
    }

    #[test]
    fn clause_cap_guard() {
        let vm = VarMap::new(20);
        let mut p = SearchParams::new(20, 8, 8);
        p.shortcut_max_len = 8;
        p.clause_cap = 1000;
        assert!(matches!(
            encode_shortcut_forbidding(&vm, &p),
            Err(EncodeError::ClauseCap { cap: 1000, .. })
        ));
    }

    fn admitted(g: &Graph) -> bool {
        let mut vm = VarMap::new(g.n());
        let f = encode_diam2_exclusion(&mut vm);
        propagate(&f, graph_assignment(&vm, g)).is_some_and(|a| f.is_satisfied_by(&a))
    }

    #[test]
    fn diam2_exclusion_examples() {
        assert!(!admitted(&Graph::complete(4).unwrap()));
        assert!(!admitted(&Graph::cycle(5).unwrap()));
        assert!(admitted(&Graph::cycle(6).unwrap()));
    }

    #[test]
    fn diam2_exclusion_exhaustive() {
        for n in 1..=5 {
            let vm = VarMap::new(n);
            let pairs: Vec<_> = vm.pairs().collect();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(t, _)| mask >> t & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edge_list(n, &edges).unwrap();
                let d = diameter(&g);
                let expect = d != ExtDiameter::Finite(1) && d != ExtDiameter::Finite(2);
                assert_eq!(admitted(&g), expect, "{g:?}");
            }
        }
    }

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<_> = VarMap::new(n).pairs().collect();
        (0u32..1 << pairs.len()).map(move |mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(t, _)| mask >> t & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edge_list(n, &edges).unwrap()
        })
    }

    /// Whether `f` has a model extending the adjacency pattern of `g`.
    fn extends(vm: &VarMap, f: &CnfFormula, g: &Graph) -> bool {
        use crate::dpll::Dpll;
        use crate::search::{SolveResult, Solver};
        let mut h = f.clone();
        for (i, j) in vm.pairs() {
            let a = vm.a(i, j);
            h.add_clause(&[if g.has_edge(i, j) { a } else { -a }])
                .unwrap();
        }
        matches!(Dpll::new().solve(&h).unwrap(), SolveResult::Sat(_))
    }

    #[test]
    fn g2_connectivity_exhaustive() {
        for n in 3..=6 {
            for p2_len in 0..n - 1 {
                let p = SearchParams::new(n, p2_len, 0);
                let mut vm = VarMap::new(n);
                let mut f = encode_b_definition(&mut vm);
                f.append(encode_g2_connectivity(&mut vm, &p));
                f.reserve_vars(vm.var_count());
                for g in all_graphs(n).step_by(if n == 6 { 7 } else { 1 }) {
                    let g2 = two_distance(&g);
                    let mut near = VertexSet::from_vertices(0..=p2_len);
                    for _ in 0..n {
                        for v in near.iter() {
                            near = near.union(g2.neighbors(v));
                        }
                    }
                    let expect = near == g.vertices();
                    assert_eq!(extends(&vm, &f, &g), expect, "n={n} p2={p2_len} {g:?}");
                }
            }
        }
    }

    #[test]
    fn max_diameter_exhaustive() {
        for n in 2..=6 {
            for max_d in 1..=n as u32 {
                let mut vm = VarMap::new(n);
                let f = encode_max_diameter(&mut vm, max_d);
                let mut f2 = vm.formula();
                f2.append(f);
                for g in all_graphs(n).step_by(if n == 6 { 5 } else { 1 }) {
                    let expect = diameter(&g).finite().is_some_and(|d| d <= max_d);
                    assert_eq!(extends(&vm, &f2, &g), expect, "n={n} max_d={max_d} {g:?}");
                }
            }
        }
        assert_eq!(
            build_formula(&SearchParams {
                max_d: Some(0),
                ..SearchParams::new(4, 1, 1)
            }),
            Err(EncodeError::MaxDiameter)
        );
    }

    #[test]
    fn lex_constraint_orders_free_rows() {
        let mut p = SearchParams::new(5, 2, 2);
        p.symmetry_breaking = true;
        let mut vm = VarMap::new(5);
        let f = encode_symmetry_breaking(&mut vm, &p);
        // free vertices 3, 4; row of 3 over {0,1,2} must be <= row of 4
        let check = |g: &Graph| {
            let mut a = Assignment::new(vm.var_count());
            for (i, j) in vm.pairs() {
                a.set(vm.a(i, j) as u32, g.has_edge(i, j));
                a.set(vm.b(i, j) as u32, false);
            }
            propagate(&f, a).is_some_and(|mut a| {
                // prefix-equality auxiliaries left open may be set false
                for v in 1..=vm.var_count() {
                    if a.get(v).is_none() {
                        a.set(v, false);
                    }
                }
                f.is_satisfied_by(&a)
            })
        };
        let lower = Graph::from_edge_list(5, &[(4, 0)]).unwrap();
        let higher = Graph::from_edge_list(5, &[(3, 0)]).unwrap();
        assert!(check(&lower));
        assert!(!check(&higher));
        assert!(check(
            &Graph::from_edge_list(5, &[(3, 0), (4, 0), (3, 4)]).unwrap()
        ));
    }

    #[test]
    fn build_rejects_long_path() {
        assert!(matches!(
            build_formula(&SearchParams::new(5, 6, 6)),
            Err(EncodeError::PathTooLong { p2_len: 6, n: 5 })
        ));
    }
}
