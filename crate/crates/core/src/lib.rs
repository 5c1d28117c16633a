//! Exact distance powers of small graphs and the machinery around them:
//! BFS distances, the k-distance operator, isomorph-free enumeration,
//! diameter-bound checks, and a CNF encoding with a refinement loop for
//! finding graphs whose 2-distance graph has a long diameter.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod canon;
pub mod cnf;
pub mod distance;
pub mod dpll;
pub mod encode;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod search;
pub mod survey;
pub mod walk;

pub use bounds::{check_bounds, family_graph, lower_bound_witness_check, BoundReport, Verdict};
pub use canon::{canonical_form, canonical_labeling, CanonicalForm};
pub use cnf::{Assignment, CnfFormula, Lit, VarInfo, VarKind, VarMap};
pub use distance::{
    all_pairs_distances, common_neighborhood, connected_components, diameter, k_distance,
    two_distance, DistanceMatrix, ExtDiameter, UNREACHABLE,
};
pub use dpll::Dpll;
pub use encode::{
    build_formula, encode_b_definition, encode_diam2_exclusion, encode_p2_fixing,
    encode_shortcut_forbidding, encode_symmetry_breaking, SearchParams,
};
pub use enumerate::{enumerate_connected, ConnectedGraphs, ENUMERATION_CAP};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use search::{
    decode_model, search, verify_witness, Rejection, RejectionCounts, SearchOutcome, SearchReport,
    SearchStats, SolveResult, Solver,
};
pub use survey::{survey, SurveyTable};
pub use walk::{halved_walk, is_path_complement, Walk};
