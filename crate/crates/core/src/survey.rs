use alloc::collections::BTreeMap;

use crate::distance::{diameter, two_distance, ExtDiameter};
use crate::enumerate::enumerate_connected;
use crate::error::EnumError;
use crate::graph::Graph;

/// Joint counts of `(diam G, diam G_2)` over the connected graphs of one
/// order. `d` is always finite; `d2` keeps `Infinite` as its own row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyTable {
    n: usize,
    cells: BTreeMap<(u32, ExtDiameter), u64>,
}

impl SurveyTable {
    pub fn new(n: usize) -> Self {
        SurveyTable {
            n,
            cells: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Records one connected graph.
    pub fn record(&mut self, g: &Graph) {
        let d = diameter(g).finite().expect("survey graphs are connected");
        let d2 = diameter(&two_distance(g));
        *self.cells.entry((d, d2)).or_insert(0) += 1;
    }

    pub fn add(&mut self, d: u32, d2: ExtDiameter, count: u64) {
        *self.cells.entry((d, d2)).or_insert(0) += count;
    }

    pub fn merge(&mut self, other: &SurveyTable) {
        assert_eq!(self.n, other.n);
        for (&(d, d2), &c) in &other.cells {
            self.add(d, d2, c);
        }
    }

    pub fn count(&self, d: u32, d2: ExtDiameter) -> u64 {
        self.cells.get(&(d, d2)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.cells.values().sum()
    }

    /// Nonzero cells ordered by `d`, then `d2` with infinity last.
    pub fn cells(&self) -> impl Iterator<Item = (u32, ExtDiameter, u64)> + '_ {
        self.cells.iter().map(|(&(d, d2), &c)| (d, d2, c))
    }

    /// Cells with `d >= 3` and finite `d2` outside `ceil(d/2)..=d+2`.
    pub fn bound_violations(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        self.cells().filter_map(|(d, d2, c)| match d2 {
            ExtDiameter::Finite(x) if d >= 3 && (x < d.div_ceil(2) || x > d + 2) => Some((d, x, c)),
            _ => None,
        })
    }
}

/// Single-threaded survey over every connected graph on `n` vertices.
pub fn survey(n: usize, force: bool) -> Result<SurveyTable, EnumError> {
    let mut table = SurveyTable::new(n);
    for g in enumerate_connected(n, force)? {
        table.record(&g);
    }
    Ok(table)
}
