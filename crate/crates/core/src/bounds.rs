//! The diameter bound `ceil(k/2) <= diam(G_2) <= k + 2` for `diam(G) = k >= 3`
//! and the even-`k` family on which the upper bound is attained.

use core::fmt;

use crate::distance::{diameter, two_distance, ExtDiameter};
use crate::error::BoundsError;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// `G_2` is disconnected.
    HoldsVacuously,
    /// `diam(G) < 3` or `G` is disconnected.
    NotApplicable,
    Violation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "Holds",
            Verdict::HoldsVacuously => "HoldsVacuously",
            Verdict::NotApplicable => "NotApplicable",
            Verdict::Violation => "VIOLATION",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    pub d: ExtDiameter,
    pub d2: ExtDiameter,
    /// `ceil(d/2)`, present when `d` is finite and at least 3.
    pub lower: Option<u32>,
    /// `d + 2`, present when `d` is finite.
    pub upper: Option<u32>,
    pub verdict: Verdict,
}

pub fn check_bounds(g: &Graph) -> BoundReport {
    let d = diameter(g);
    let d2 = diameter(&two_distance(g));
    let upper = d.finite().map(|k| k + 2);
    let (lower, verdict) = match d {
        ExtDiameter::Finite(k) if k >= 3 => {
            let lo = k.div_ceil(2);
            let v = match d2 {
                ExtDiameter::Infinite => Verdict::HoldsVacuously,
                ExtDiameter::Finite(x) if x >= lo && x <= k + 2 => Verdict::Holds,
                ExtDiameter::Finite(_) => Verdict::Violation,
            };
            (Some(lo), v)
        }
        _ => (None, Verdict::NotApplicable),
    };
    BoundReport {
        d,
        d2,
        lower,
        upper,
        verdict,
    }
}

/// The cycle `C_{2k}` on `0..2k` plus an apex `2k` joined to `0` and `1`,
/// so the only triangle shares exactly one edge with the cycle.
pub fn family_graph(k: usize) -> Result<Graph, BoundsError> {
    if k < 4 || k % 2 == 1 || 2 * k + 1 > crate::graph::MAX_VERTICES {
        return Err(BoundsError::FamilyOrder(k));
    }
    let mut g = Graph::empty(2 * k + 1).expect("order checked");
    for i in 0..2 * k {
        g.add_edge(i, (i + 1) % (2 * k));
    }
    g.add_edge(2 * k, 0);
    g.add_edge(2 * k, 1);
    Ok(g)
}

/// True iff `diam(G_2)` equals the lower bound `ceil(diam(G)/2)`.
pub fn lower_bound_witness_check(g: &Graph) -> Result<bool, BoundsError> {
    let report = check_bounds(g);
    match (report.d, report.d2) {
        (ExtDiameter::Finite(k), ExtDiameter::Finite(x)) if k >= 3 => Ok(x == k.div_ceil(2)),
        _ => Err(BoundsError::LowerBoundPrecondition),
    }
}
