//! File formats, solver drivers and survey output for `distlab-core`.

pub mod dimacs;
pub mod edgelist;
pub mod graph6;
pub mod report;
pub mod solver;
