//! DIMACS CNF text, solver `s`/`v` output, and the variable map sidecar.

use std::fmt::Write as _;

use distlab_core::cnf::{Assignment, CnfFormula, Lit, VarMap};
use distlab_core::search::SolveResult;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {0}: missing or malformed `p cnf` header")]
    Header(usize),
    #[error("line {line}: bad literal `{token}`")]
    Token { line: usize, token: String },
    #[error("line {line}: literal {lit} exceeds declared variable count {vars}")]
    OutOfRange { line: usize, lit: i64, vars: u32 },
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("clause {0} contains a literal and its negation")]
    Tautology(usize),
    #[error("clause {0} repeats a literal")]
    Repeated(usize),
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
    #[error("unterminated final clause")]
    Unterminated,
}

pub fn emit(f: &CnfFormula) -> String {
    let mut out = String::with_capacity(16 + f.len() * 12);
    writeln!(out, "p cnf {} {}", f.var_count(), f.len()).unwrap();
    for c in f.clauses() {
        for l in c {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}

/// Parses DIMACS CNF. Comment lines (`c ...`) are ignored; clauses may
/// span lines. Clauses are kept exactly as written.
pub fn parse(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        let Some((vars, _)) = header else {
            header = Some(parse_header(t).ok_or(DimacsError::Header(lineno))?);
            continue;
        };
        for tok in t.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| DimacsError::Token {
                line: lineno,
                token: tok.to_string(),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if lit.unsigned_abs() > vars as u64 {
                return Err(DimacsError::OutOfRange {
                    line: lineno,
                    lit,
                    vars,
                });
            }
            current.push(lit as Lit);
        }
    }
    let (vars, declared) = header.ok_or(DimacsError::Header(0))?;
    if !current.is_empty() {
        return Err(DimacsError::Unterminated);
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCount {
            declared,
            found: clauses.len(),
        });
    }
    let mut f = CnfFormula::new(vars);
    for (k, c) in clauses.iter().enumerate() {
        if c.is_empty() {
            return Err(DimacsError::EmptyClause(k));
        }
        if c.iter().any(|l| c.contains(&-l)) {
            return Err(DimacsError::Tautology(k));
        }
        if c.iter().enumerate().any(|(x, l)| c[..x].contains(l)) {
            return Err(DimacsError::Repeated(k));
        }
        f.add_clause(c).expect("validated above");
    }
    Ok(f)
}

fn parse_header(t: &str) -> Option<(u32, usize)> {
    let mut it = t.split_whitespace();
    if it.next()? != "p" || it.next()? != "cnf" {
        return None;
    }
    let vars = it.next()?.parse().ok()?;
    let clauses = it.next()?.parse().ok()?;
    it.next().is_none().then_some((vars, clauses))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverOutputError {
    #[error("no `s` status line")]
    NoStatus,
    #[error("unrecognised status `{0}`")]
    Status(String),
    #[error("bad token `{0}` in `v` line")]
    Value(String),
    #[error("model leaves variable {0} unassigned")]
    Incomplete(u32),
}

/// Reads the competition output protocol. `UNKNOWN` maps to
/// [`SolveResult::Unknown`]. A satisfiable answer must assign every
/// variable of the formula.
pub fn parse_solver_output(text: &str, var_count: u32) -> Result<SolveResult, SolverOutputError> {
    let mut status: Option<&str> = None;
    let mut lits: Vec<Lit> = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix("s ") {
            status = Some(rest.trim());
        } else if let Some(rest) = t.strip_prefix('v') {
            for tok in rest.split_whitespace() {
                let l: Lit = tok
                    .parse()
                    .map_err(|_| SolverOutputError::Value(tok.to_string()))?;
                if l != 0 {
                    lits.push(l);
                }
            }
        }
    }
    match status.ok_or(SolverOutputError::NoStatus)? {
        "SATISFIABLE" => {
            let a = Assignment::from_literals(var_count, &lits);
            if let Some(v) = (1..=var_count).find(|&v| a.get(v).is_none()) {
                return Err(SolverOutputError::Incomplete(v));
            }
            Ok(SolveResult::Sat(a))
        }
        "UNSATISFIABLE" => Ok(SolveResult::Unsat),
        "UNKNOWN" => Ok(SolveResult::Unknown),
        other => Err(SolverOutputError::Status(other.to_string())),
    }
}

/// One line per variable: `<index> <a|b|aux> <i> <j>`. For auxiliaries
/// `(i, j)` is the pair the variable was introduced for.
pub fn emit_var_map(vm: &VarMap) -> String {
    let mut out = String::new();
    for e in vm.entries() {
        writeln!(out, "{} {} {} {}", e.index, e.kind.tag(), e.i, e.j).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emit_examples() {
        let mut f = CnfFormula::new(1);
        f.add_clause(&[1]).unwrap();
        assert_eq!(emit(&f), "p cnf 1 1\n1 0\n");
        assert_eq!(emit(&CnfFormula::new(7)), "p cnf 7 0\n");
    }

    #[test]
    fn parse_accepts_comments_and_split_clauses() {
        let f = parse("c hello\np cnf 3 2\n1 -2\n 3 0 -1 0\n").unwrap();
        assert_eq!(f.clauses(), &[vec![1, -2, 3], vec![-1]]);
        assert_eq!(emit(&f), "p cnf 3 2\n1 -2 3 0\n-1 0\n");
    }

    #[test]
    fn parse_rejects() {
        assert_eq!(parse("1 0\n"), Err(DimacsError::Header(1)));
        assert!(matches!(
            parse("p cnf 2 1\n3 0\n"),
            Err(DimacsError::OutOfRange { .. })
        ));
        assert_eq!(parse("p cnf 2 1\n0\n"), Err(DimacsError::EmptyClause(0)));
        assert_eq!(parse("p cnf 2 1\n1 -1 0\n"), Err(DimacsError::Tautology(0)));
        assert_eq!(parse("p cnf 2 1\n1 1 0\n"), Err(DimacsError::Repeated(0)));
        assert!(matches!(
            parse("p cnf 2 2\n1 0\n"),
            Err(DimacsError::ClauseCount { .. })
        ));
        assert_eq!(parse("p cnf 2 1\n1 2\n"), Err(DimacsError::Unterminated));
        assert!(matches!(
            parse("p cnf 2 1\nx 0\n"),
            Err(DimacsError::Token { .. })
        ));
    }

    #[test]
    fn solver_output() {
        let out = "c comment\ns SATISFIABLE\nv 1 -2\nv 3 0\n";
        match parse_solver_output(out, 3).unwrap() {
            SolveResult::Sat(a) => assert_eq!(a.literals().collect::<Vec<_>>(), vec![1, -2, 3]),
            r => panic!("{r:?}"),
        }
        assert_eq!(
            parse_solver_output("s UNSATISFIABLE\n", 3),
            Ok(SolveResult::Unsat)
        );
        assert_eq!(
            parse_solver_output("s UNKNOWN\n", 3),
            Ok(SolveResult::Unknown)
        );
        assert_eq!(parse_solver_output("", 3), Err(SolverOutputError::NoStatus));
        assert_eq!(
            parse_solver_output("s SATISFIABLE\nv 1 0\n", 2),
            Err(SolverOutputError::Incomplete(2))
        );
    }

    #[test]
    fn var_map_lines() {
        let mut vm = VarMap::new(3);
        vm.new_aux(0, 2);
        let text = emit_var_map(&vm);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], "1 a 0 1");
        assert_eq!(lines[5], "6 b 1 2");
        assert_eq!(lines[6], "7 aux 0 2");
    }
}
