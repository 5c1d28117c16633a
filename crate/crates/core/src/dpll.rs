//! Built-in DPLL solver: two watched literals, unit propagation and
//! chronological backtracking. No clause learning.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::cnf::{Assignment, CnfFormula};
use crate::error::SolverError;
use crate::search::{SolveResult, Solver};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DpllStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
}

/// Literal code: `2 * var` for positive, `2 * var + 1` for negative.
type Code = u32;

#[inline]
fn code(l: i32) -> Code {
    (l.unsigned_abs() << 1) | (l < 0) as u32
}

#[inline]
fn var_of(c: Code) -> usize {
    (c >> 1) as usize
}

#[derive(Default)]
pub struct Dpll {
    max_decisions: Option<u64>,
    interrupt: Option<Box<dyn Fn() -> bool + Send>>,
    stats: DpllStats,
}

impl Dpll {
    pub fn new() -> Self {
        Self::default()
    }

    /// Gives up with [`SolveResult::Unknown`] after this many decisions.
    pub fn with_max_decisions(mut self, limit: u64) -> Self {
        self.max_decisions = Some(limit);
        self
    }

    /// Polled periodically; returning true aborts with `Unknown`.
    pub fn with_interrupt(mut self, f: impl Fn() -> bool + Send + 'static) -> Self {
        self.interrupt = Some(Box::new(f));
        self
    }

    /// Totals over every call so far.
    pub fn stats(&self) -> DpllStats {
        self.stats
    }
}

impl Solver for Dpll {
    fn solve(&mut self, f: &CnfFormula) -> Result<SolveResult, SolverError> {
        let mut st = State::new(f);
        let result = st.run(self.max_decisions, self.interrupt.as_deref());
        self.stats.decisions += st.stats.decisions;
        self.stats.conflicts += st.stats.conflicts;
        self.stats.propagations += st.stats.propagations;
        Ok(result)
    }

    fn name(&self) -> &str {
        "builtin-dpll"
    }
}

struct Level {
    trail_start: usize,
    decision: Code,
    flipped: bool,
}

struct State {
    nvars: usize,
    clauses: Vec<Vec<Code>>,
    watches: Vec<Vec<usize>>,
    /// 0 unassigned, 1 true, 2 false, indexed by variable.
    value: Vec<u8>,
    trail: Vec<Code>,
    qhead: usize,
    levels: Vec<Level>,
    units: Vec<Code>,
    trivially_unsat: bool,
    stats: DpllStats,
}

impl State {
    fn new(f: &CnfFormula) -> Self {
        let nvars = f.var_count() as usize;
        let mut st = State {
            nvars,
            clauses: Vec::with_capacity(f.len()),
            watches: vec![Vec::new(); 2 * nvars + 2],
            value: vec![0; nvars + 1],
            trail: Vec::with_capacity(nvars),
            qhead: 0,
            levels: Vec::new(),
            units: Vec::new(),
            trivially_unsat: false,
            stats: DpllStats::default(),
        };
        for c in f.clauses() {
            match c.len() {
                0 => st.trivially_unsat = true,
                1 => st.units.push(code(c[0])),
                _ => {
                    let idx = st.clauses.len();
                    let cl: Vec<Code> = c.iter().map(|&l| code(l)).collect();
                    st.watches[cl[0] as usize].push(idx);
                    st.watches[cl[1] as usize].push(idx);
                    st.clauses.push(cl);
                }
            }
        }
        st
    }

    /// 1 true, 2 false, 0 unassigned.
    #[inline]
    fn lit_value(&self, c: Code) -> u8 {
        match self.value[var_of(c)] {
            0 => 0,
            v => {
                if (v == 1) == (c & 1 == 0) {
                    1
                } else {
                    2
                }
            }
        }
    }

    #[inline]
    fn assign(&mut self, c: Code) {
        self.value[var_of(c)] = if c & 1 == 0 { 1 } else { 2 };
        self.trail.push(c);
    }

    /// Returns false on conflict.
    fn enqueue(&mut self, c: Code) -> bool {
        match self.lit_value(c) {
            1 => true,
            2 => false,
            _ => {
                self.assign(c);
                true
            }
        }
    }

    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let falsified = p ^ 1;
            let mut ws = core::mem::take(&mut self.watches[falsified as usize]);
            let mut i = 0;
            let mut conflict = false;
            while i < ws.len() {
                let ci = ws[i];
                let clause = &mut self.clauses[ci];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                let first_val = match self.value[var_of(first)] {
                    0 => 0,
                    v if (v == 1) == (first & 1 == 0) => 1,
                    _ => 2,
                };
                if first_val == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..clause.len() {
                    let l = clause[k];
                    let lv = match self.value[var_of(l)] {
                        0 => 0,
                        v if (v == 1) == (l & 1 == 0) => 1,
                        _ => 2,
                    };
                    if lv != 2 {
                        clause.swap(1, k);
                        self.watches[clause[1] as usize].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    ws.swap_remove(i);
                    continue;
                }
                if first_val == 2 {
                    conflict = true;
                    break;
                }
                self.assign(first);
                i += 1;
            }
            self.watches[falsified as usize] = ws;
            if conflict {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, trail_len: usize) {
        for &c in &self.trail[trail_len..] {
            self.value[var_of(c)] = 0;
        }
        self.trail.truncate(trail_len);
        self.qhead = trail_len;
    }

    /// Flips the most recent unflipped decision; false if none remain.
    fn backtrack(&mut self) -> bool {
        while let Some(level) = self.levels.pop() {
            self.undo_to(level.trail_start);
            if !level.flipped {
                let flipped = level.decision ^ 1;
                self.levels.push(Level {
                    trail_start: level.trail_start,
                    decision: flipped,
                    flipped: true,
                });
                self.assign(flipped);
                return true;
            }
        }
        false
    }

    fn run(
        &mut self,
        max_decisions: Option<u64>,
        interrupt: Option<&(dyn Fn() -> bool + Send)>,
    ) -> SolveResult {
        if self.trivially_unsat {
            return SolveResult::Unsat;
        }
        let units = core::mem::take(&mut self.units);
        for u in units {
            if !self.enqueue(u) {
                return SolveResult::Unsat;
            }
        }
        let mut next_var = 1usize;
        loop {
            if !self.propagate() {
                self.stats.conflicts += 1;
                if !self.backtrack() {
                    return SolveResult::Unsat;
                }
                next_var = 1;
                continue;
            }
            while next_var <= self.nvars && self.value[next_var] != 0 {
                next_var += 1;
            }
            if next_var > self.nvars {
                let mut a = Assignment::new(self.nvars as u32);
                for v in 1..=self.nvars {
                    a.set(v as u32, self.value[v] == 1);
                }
                return SolveResult::Sat(a);
            }
            self.stats.decisions += 1;
            if max_decisions.is_some_and(|m| self.stats.decisions > m) {
                return SolveResult::Unknown;
            }
            if self.stats.decisions.is_multiple_of(4096) && interrupt.is_some_and(|f| f()) {
                return SolveResult::Unknown;
            }
            // negative phase first: sparse graphs are tried before dense ones
            let decision = ((next_var as u32) << 1) | 1;
            self.levels.push(Level {
                trail_start: self.trail.len(),
                decision,
                flipped: false,
            });
            self.assign(decision);
        }
    }
}
