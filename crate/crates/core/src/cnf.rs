//! CNF formulas, variable maps and assignments.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::EncodeError;

/// A DIMACS literal: `v` or `-v` for variable `v >= 1`.
pub type Lit = i32;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CnfFormula {
    var_count: u32,
    clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    pub fn new(var_count: u32) -> Self {
        CnfFormula {
            var_count,
            clauses: Vec::new(),
        }
    }

    pub fn var_count(&self) -> u32 {
        self.var_count
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Raises the variable count; never lowers it.
    pub fn reserve_vars(&mut self, var_count: u32) {
        self.var_count = self.var_count.max(var_count);
    }

    /// Adds a clause, dropping repeated literals. Tautologies are skipped
    /// and reported as `Ok(false)`.
    pub fn add_clause(&mut self, lits: &[Lit]) -> Result<bool, EncodeError> {
        if lits.is_empty() {
            return Err(EncodeError::EmptyClause);
        }
        let mut clause: Vec<Lit> = Vec::with_capacity(lits.len());
        for &l in lits {
            if l == 0 || l.unsigned_abs() > self.var_count {
                return Err(EncodeError::LiteralOutOfRange {
                    lit: l as i64,
                    var_count: self.var_count,
                });
            }
            if clause.contains(&-l) {
                return Ok(false);
            }
            if !clause.contains(&l) {
                clause.push(l);
            }
        }
        self.clauses.push(clause);
        Ok(true)
    }

    /// Appends every clause of `other`, widening the variable range.
    pub fn append(&mut self, other: CnfFormula) {
        self.reserve_vars(other.var_count);
        self.clauses.extend(other.clauses);
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.first_falsified(a).is_none()
    }

    /// Index of the first clause with no true literal under `a`.
    pub fn first_falsified(&self, a: &Assignment) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|&l| a.lit_value(l) == Some(true)))
    }
}

/// Partial truth assignment indexed by variable (slot 0 unused).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    pub fn new(var_count: u32) -> Self {
        Assignment {
            values: vec![None; var_count as usize + 1],
        }
    }

    /// Builds an assignment from signed literals, as in a `v` line.
    pub fn from_literals(var_count: u32, lits: &[Lit]) -> Self {
        let mut a = Assignment::new(var_count);
        for &l in lits {
            if l != 0 && l.unsigned_abs() <= var_count {
                a.set(l.unsigned_abs(), l > 0);
            }
        }
        a
    }

    pub fn var_count(&self) -> u32 {
        self.values.len() as u32 - 1
    }

    pub fn get(&self, var: u32) -> Option<bool> {
        self.values.get(var as usize).copied().flatten()
    }

    pub fn set(&mut self, var: u32, value: bool) {
        self.values[var as usize] = Some(value);
    }

    pub fn lit_value(&self, l: Lit) -> Option<bool> {
        self.get(l.unsigned_abs()).map(|v| v == (l > 0))
    }

    /// True literals of every assigned variable, in variable order.
    pub fn literals(&self) -> impl Iterator<Item = Lit> + '_ {
        self.values
            .iter()
            .enumerate()
            .skip(1)
            .filter_map(|(v, x)| x.map(|b| if b { v as Lit } else { -(v as Lit) }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    /// `a_{i,j}`: `{i, j}` is an edge of `G`.
    Adjacency,
    /// `b_{i,j}`: `{i, j}` is an edge of `G_2`.
    TwoDistance,
    /// Definitional variable attached to the pair `(i, j)`.
    Aux,
}

impl VarKind {
    pub fn tag(self) -> &'static str {
        match self {
            VarKind::Adjacency => "a",
            VarKind::TwoDistance => "b",
            VarKind::Aux => "aux",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarInfo {
    pub index: u32,
    pub kind: VarKind,
    pub i: usize,
    pub j: usize,
}

/// Variable numbering: `a` for every pair `i < j` in lexicographic
/// order, then `b` in the same order, then auxiliaries as allocated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    n: usize,
    pairs: u32,
    aux: Vec<(usize, usize)>,
}

impl VarMap {
    pub fn new(n: usize) -> Self {
        VarMap {
            n,
            pairs: (n * n.saturating_sub(1) / 2) as u32,
            aux: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pair_count(&self) -> u32 {
        self.pairs
    }

    pub fn var_count(&self) -> u32 {
        2 * self.pairs + self.aux.len() as u32
    }

    fn pair_index(&self, i: usize, j: usize) -> u32 {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        debug_assert!(i != j && j < self.n);
        (i * (2 * self.n - i - 1) / 2 + (j - i - 1)) as u32
    }

    /// `a_{i,j}`; order of `i` and `j` is irrelevant.
    pub fn a(&self, i: usize, j: usize) -> Lit {
        (1 + self.pair_index(i, j)) as Lit
    }

    pub fn b(&self, i: usize, j: usize) -> Lit {
        (1 + self.pairs + self.pair_index(i, j)) as Lit
    }

    pub fn new_aux(&mut self, i: usize, j: usize) -> Lit {
        self.aux.push((i, j));
        self.var_count() as Lit
    }

    /// An empty formula sized to the variables allocated so far.
    pub fn formula(&self) -> CnfFormula {
        CnfFormula::new(self.var_count())
    }

    /// Pairs `(i, j)`, `i < j`, in variable order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    pub fn describe(&self, var: u32) -> Option<VarInfo> {
        if var == 0 || var > self.var_count() {
            return None;
        }
        let (kind, (i, j)) = if var <= 2 * self.pairs {
            let kind = if var <= self.pairs {
                VarKind::Adjacency
            } else {
                VarKind::TwoDistance
            };
            let idx = (var - 1) % self.pairs.max(1);
            (
                kind,
                self.pairs().nth(idx as usize).expect("index in range"),
            )
        } else {
            (VarKind::Aux, self.aux[(var - 2 * self.pairs - 1) as usize])
        };
        Some(VarInfo {
            index: var,
            kind,
            i,
            j,
        })
    }

    /// Every variable in index order.
    pub fn entries(&self) -> impl Iterator<Item = VarInfo> + '_ {
        let ab = [VarKind::Adjacency, VarKind::TwoDistance]
            .into_iter()
            .flat_map(move |kind| self.pairs().map(move |p| (kind, p)));
        let aux = self.aux.iter().map(|&p| (VarKind::Aux, p));
        ab.chain(aux)
            .enumerate()
            .map(|(k, (kind, (i, j)))| VarInfo {
                index: k as u32 + 1,
                kind,
                i,
                j,
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbering_is_contiguous_and_disjoint() {
        let mut vm = VarMap::new(5);
        let mut seen = alloc::collections::BTreeSet::new();
        for (i, j) in vm.pairs().collect::<Vec<_>>() {
            assert!(seen.insert(vm.a(i, j)));
            assert!(seen.insert(vm.b(i, j)));
            assert_eq!(vm.a(i, j), vm.a(j, i));
        }
        let x = vm.new_aux(0, 1);
        assert!(seen.insert(x));
        assert_eq!(
            seen.into_iter().collect::<Vec<_>>(),
            (1..=21).collect::<Vec<_>>()
        );
        assert_eq!(vm.var_count(), 21);
    }

    #[test]
    fn describe_matches_entries() {
        let mut vm = VarMap::new(4);
        vm.new_aux(1, 3);
        for info in vm.entries() {
            assert_eq!(vm.describe(info.index), Some(info));
        }
        let b = vm.describe(vm.b(2, 3) as u32).unwrap();
        assert_eq!((b.kind, b.i, b.j), (VarKind::TwoDistance, 2, 3));
        assert_eq!(vm.describe(0), None);
        assert_eq!(vm.describe(14), None);
    }

    #[test]
    fn clause_normalization() {
        let mut f = CnfFormula::new(3);
        assert_eq!(f.add_clause(&[1, 2, 1]), Ok(true));
        assert_eq!(f.clauses()[0], vec![1, 2]);
        assert_eq!(f.add_clause(&[1, -1]), Ok(false));
        assert_eq!(f.add_clause(&[]), Err(EncodeError::EmptyClause));
        assert!(matches!(
            f.add_clause(&[4]),
            Err(EncodeError::LiteralOutOfRange { .. })
        ));
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn satisfaction() {
        let mut f = CnfFormula::new(2);
        f.add_clause(&[1, -2]).unwrap();
        f.add_clause(&[2]).unwrap();
        assert!(f.is_satisfied_by(&Assignment::from_literals(2, &[1, 2])));
        assert_eq!(
            f.first_falsified(&Assignment::from_literals(2, &[-1, 2])),
            Some(0)
        );
    }
}
