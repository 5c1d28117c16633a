//! Solve, decode, verify, block: the refinement loop around the encoding.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::cnf::{Assignment, CnfFormula, Lit, VarMap};
use crate::distance::{all_pairs_distances, diameter, k_distance, ExtDiameter};
use crate::encode::{build_formula, SearchParams};
use crate::error::{SearchError, SolverError};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Sat(Assignment),
    Unsat,
    /// The solver stopped on a limit without an answer.
    Unknown,
}

/// Anything that can decide a CNF formula.
pub trait Solver {
    fn solve(&mut self, f: &CnfFormula) -> Result<SolveResult, SolverError>;

    fn name(&self) -> &str;
}

impl<S: Solver + ?Sized> Solver for &mut S {
    fn solve(&mut self, f: &CnfFormula) -> Result<SolveResult, SolverError> {
        (**self).solve(f)
    }

    fn name(&self) -> &str {
        (**self).name()
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Witness {
        graph: Graph,
        d: ExtDiameter,
        d2: ExtDiameter,
    },
    Unsat,
    BudgetExhausted {
        candidates_rejected: u64,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Solver invocations.
    pub rounds: u64,
    /// Decoded models that failed verification and were blocked.
    pub rejected: u64,
    pub rejected_by: RejectionCounts,
    pub var_count: u32,
    /// Clauses in the initial formula, before any blocking clause.
    pub base_clauses: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
}

/// Rejections broken down by [`Rejection`] kind.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RejectionCounts {
    pub disconnected2: u64,
    pub diameter_too_small: u64,
    pub diameter_too_large: u64,
    pub d2_too_small: u64,
    pub path_not_geodesic: u64,
}

impl RejectionCounts {
    pub fn record(&mut self, r: Rejection) {
        let slot = match r {
            Rejection::Disconnected2 => &mut self.disconnected2,
            Rejection::DiameterTooSmall(_) => &mut self.diameter_too_small,
            Rejection::DiameterTooLarge(_) => &mut self.diameter_too_large,
            Rejection::D2TooSmall(_) => &mut self.d2_too_small,
            Rejection::PathNotGeodesic => &mut self.path_not_geodesic,
        };
        *slot += 1;
    }
}

/// Why a decoded graph was not accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    /// `G_2` is disconnected.
    Disconnected2,
    DiameterTooSmall(ExtDiameter),
    DiameterTooLarge(ExtDiameter),
    D2TooSmall(ExtDiameter),
    /// `0 .. p2_len` is not a shortest path of `G_2`.
    PathNotGeodesic,
}

/// Checks a candidate against the search target using only BFS.
pub fn verify_witness(
    g: &Graph,
    p: &SearchParams,
) -> Result<(ExtDiameter, ExtDiameter), Rejection> {
    let d = diameter(g);
    let g2 = k_distance(g, 2).expect("k = 2");
    let d2 = diameter(&g2);
    let ExtDiameter::Finite(d2v) = d2 else {
        return Err(Rejection::Disconnected2);
    };
    let ExtDiameter::Finite(dv) = d else {
        return Err(Rejection::Disconnected2);
    };
    if p.forbid_diam_le_2 && dv <= 2 {
        return Err(Rejection::DiameterTooSmall(d));
    }
    if p.max_d.is_some_and(|m| dv > m) {
        return Err(Rejection::DiameterTooLarge(d));
    }
    if d2v < p.min_d2 {
        return Err(Rejection::D2TooSmall(d2));
    }
    let dm2 = all_pairs_distances(&g2);
    let on_path = (0..p.p2_len).all(|i| g2.has_edge(i, i + 1));
    if !on_path || dm2.get(0, p.p2_len) != Some(p.p2_len) {
        return Err(Rejection::PathNotGeodesic);
    }
    Ok((d, d2))
}

/// Reads the graph off the adjacency variables of a model.
pub fn decode_model(vm: &VarMap, model: &Assignment) -> Result<Graph, SearchError> {
    let mut g = Graph::empty(vm.n()).map_err(|_| SearchError::IncompleteAssignment(0))?;
    for (i, j) in vm.pairs() {
        let var = vm.a(i, j) as u32;
        match model.get(var) {
            Some(true) => g.add_edge(i, j),
            Some(false) => {}
            None => return Err(SearchError::IncompleteAssignment(var)),
        }
    }
    Ok(g)
}

/// Compares the model's `b` literals with the BFS 2-distance relation.
pub fn check_b_agreement(vm: &VarMap, model: &Assignment, g: &Graph) -> Result<(), SearchError> {
    let dm = all_pairs_distances(g);
    for (i, j) in vm.pairs() {
        let oracle = dm.get(i, j) == Some(2);
        if model.get(vm.b(i, j) as u32) != Some(oracle) {
            return Err(SearchError::EncoderMismatch(i, j));
        }
    }
    Ok(())
}

/// The clause excluding exactly this adjacency pattern.
pub fn blocking_clause(vm: &VarMap, g: &Graph) -> Vec<Lit> {
    vm.pairs()
        .map(|(i, j)| {
            if g.has_edge(i, j) {
                -vm.a(i, j)
            } else {
                vm.a(i, j)
            }
        })
        .collect()
}

/// Runs the loop until a verified witness, exhaustion, or a limit.
pub fn search<S: Solver>(p: &SearchParams, mut solver: S) -> Result<SearchReport, SearchError> {
    let (vm, mut formula) = build_formula(p)?;
    let mut stats = SearchStats {
        var_count: formula.var_count(),
        base_clauses: formula.len(),
        ..SearchStats::default()
    };
    let mut blocked: BTreeSet<Vec<u64>> = BTreeSet::new();
    loop {
        if p.max_rounds.is_some_and(|m| stats.rounds >= m) {
            return Ok(exhausted(stats));
        }
        stats.rounds += 1;
        let model = match solver.solve(&formula)? {
            SolveResult::Sat(m) => m,
            SolveResult::Unsat => {
                return Ok(SearchReport {
                    outcome: SearchOutcome::Unsat,
                    stats,
                })
            }
            SolveResult::Unknown => return Ok(exhausted(stats)),
        };
        let g = decode_model(&vm, &model)?;
        check_b_agreement(&vm, &model, &g)?;
        if !blocked.insert(g.rows().to_vec()) {
            return Err(SearchError::RepeatedModel);
        }
        match verify_witness(&g, p) {
            Ok((d, d2)) => {
                return Ok(SearchReport {
                    outcome: SearchOutcome::Witness { graph: g, d, d2 },
                    stats,
                })
            }
            Err(why) => {
                stats.rejected += 1;
                stats.rejected_by.record(why);
                formula
                    .add_clause(&blocking_clause(&vm, &g))
                    .expect("blocking clause is nonempty and in range");
            }
        }
    }
}

fn exhausted(stats: SearchStats) -> SearchReport {
    SearchReport {
        outcome: SearchOutcome::BudgetExhausted {
            candidates_rejected: stats.rejected,
        },
        stats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::family_graph;
    use crate::dpll::Dpll;

    #[test]
    fn decode_edgeless_and_family() {
        let vm = VarMap::new(9);
        let all_false = Assignment::from_literals(
            vm.var_count(),
            &(1..=vm.var_count() as i32).map(|v| -v).collect::<Vec<_>>(),
        );
        assert_eq!(
            decode_model(&vm, &all_false).unwrap(),
            Graph::empty(9).unwrap()
        );

        let g = family_graph(4).unwrap();
        let lits: Vec<i32> = vm
            .pairs()
            .map(|(i, j)| {
                if g.has_edge(i, j) {
                    vm.a(i, j)
                } else {
                    -vm.a(i, j)
                }
            })
            .collect();
        let model = Assignment::from_literals(vm.var_count(), &lits);
        assert_eq!(decode_model(&vm, &model).unwrap(), g);
    }

    #[test]
    fn incomplete_model_rejected() {
        let vm = VarMap::new(3);
        let model = Assignment::from_literals(vm.var_count(), &[1, -2]);
        assert_eq!(
            decode_model(&vm, &model),
            Err(SearchError::IncompleteAssignment(3))
        );
    }

    #[test]
    fn verify_rejections() {
        let p = SearchParams::new(6, 3, 3);
        assert_eq!(
            verify_witness(&Graph::cycle(6).unwrap(), &p),
            Err(Rejection::Disconnected2)
        );
        let mut p9 = SearchParams::new(9, 6, 6);
        let g = family_graph(4).unwrap();
        // the family graph does not put its diametral G_2 path on 0..=6
        assert_eq!(verify_witness(&g, &p9), Err(Rejection::PathNotGeodesic));
        p9.p2_len = 0;
        assert!(verify_witness(&g, &p9).is_ok());
        p9.max_d = Some(3);
        assert_eq!(
            verify_witness(&g, &p9),
            Err(Rejection::DiameterTooLarge(ExtDiameter::Finite(4)))
        );
    }

    #[test]
    fn small_unsat_instance() {
        let p = SearchParams::new(4, 3, 5);
        let report = search(&p, Dpll::new()).unwrap();
        assert_eq!(report.outcome, SearchOutcome::Unsat);
    }

    #[test]
    fn round_limit() {
        let mut p = SearchParams::new(4, 3, 5);
        p.max_rounds = Some(0);
        let report = search(&p, Dpll::new()).unwrap();
        assert_eq!(
            report.outcome,
            SearchOutcome::BudgetExhausted {
                candidates_rejected: 0
            }
        );
    }
}
