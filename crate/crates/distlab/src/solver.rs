//! Solver backends: an external DIMACS binary, or the built-in DPLL,
//! both bounded by an optional wall-clock deadline.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use distlab_core::cnf::CnfFormula;
use distlab_core::dpll::Dpll;
use distlab_core::error::SolverError;
use distlab_core::search::{SolveResult, Solver};

use crate::dimacs;

/// Environment variable naming the default external solver.
pub const SOLVER_ENV: &str = "DISTLAB_SOLVER";

/// Largest order for which a missing external solver silently falls
/// back to the built-in one.
pub const FALLBACK_MAX_N: usize = 9;

/// Runs `<program> <file.cnf>` and reads the `s`/`v` protocol from its
/// standard output. Exit codes 10 and 20 are cross-checked against the
/// status line.
pub struct ExternalSolver {
    program: PathBuf,
    deadline: Option<Instant>,
    name: String,
}

impl ExternalSolver {
    pub fn new(program: impl Into<PathBuf>) -> Self {
        let program = program.into();
        let name = program.display().to_string();
        ExternalSolver {
            program,
            deadline: None,
            name,
        }
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }
}

impl Solver for ExternalSolver {
    fn solve(&mut self, f: &CnfFormula) -> Result<SolveResult, SolverError> {
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Ok(SolveResult::Unknown);
        }
        let mut file = tempfile::Builder::new()
            .suffix(".cnf")
            .tempfile()
            .map_err(|e| SolverError::Failed(format!("temporary CNF file: {e}")))?;
        file.write_all(dimacs::emit(f).as_bytes())
            .and_then(|_| file.flush())
            .map_err(|e| SolverError::Failed(format!("writing CNF: {e}")))?;

        let mut child = Command::new(&self.program)
            .arg(file.path())
            .stdin(Stdio::null())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| match e.kind() {
                std::io::ErrorKind::NotFound | std::io::ErrorKind::PermissionDenied => {
                    SolverError::Missing(format!("{}: {e}", self.program.display()))
                }
                _ => SolverError::Failed(format!("{}: {e}", self.program.display())),
            })?;
        let mut stdout = child.stdout.take().expect("piped");
        let reader = std::thread::spawn(move || {
            let mut s = String::new();
            stdout.read_to_string(&mut s).map(|_| s)
        });

        let status = loop {
            match child.try_wait() {
                Ok(Some(status)) => break status,
                Ok(None) => {}
                Err(e) => return Err(SolverError::Failed(e.to_string())),
            }
            if self.deadline.is_some_and(|d| Instant::now() >= d) {
                let _ = child.kill();
                let _ = child.wait();
                // a grandchild may still hold the pipe; leave the reader behind
                drop(reader);
                return Ok(SolveResult::Unknown);
            }
            std::thread::sleep(Duration::from_millis(5));
        };
        let text = reader
            .join()
            .map_err(|_| SolverError::Failed("output reader panicked".into()))?
            .map_err(|e| SolverError::Malformed(format!("reading solver output: {e}")))?;

        let result = dimacs::parse_solver_output(&text, f.var_count())
            .map_err(|e| SolverError::Malformed(format!("{}: {e}", self.program.display())))?;
        match (status.code(), &result) {
            (Some(10), SolveResult::Sat(_)) | (Some(20), SolveResult::Unsat) => Ok(result),
            (_, SolveResult::Unknown) => Ok(result),
            (Some(10 | 20), _) => Err(SolverError::Malformed(format!(
                "exit code {status} contradicts the status line"
            ))),
            // some solvers exit 0 even on a definite answer
            (Some(0), _) => Ok(result),
            _ => Err(SolverError::Failed(format!("solver exited with {status}"))),
        }
    }

    fn name(&self) -> &str {
        &self.name
    }
}

/// The built-in DPLL with an optional deadline.
pub fn builtin(deadline: Option<Instant>) -> Dpll {
    match deadline {
        Some(d) => Dpll::new().with_interrupt(move || Instant::now() >= d),
        None => Dpll::new(),
    }
}

/// Finds `program` as given or, for a bare name, on `PATH`.
pub fn locate(program: &Path) -> Option<PathBuf> {
    if program.components().count() > 1 {
        return program.is_file().then(|| program.to_path_buf());
    }
    let path = std::env::var_os("PATH")?;
    std::env::split_paths(&path)
        .map(|dir| dir.join(program))
        .find(|p| p.is_file())
}

/// Where the solver choice came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverChoice {
    External(PathBuf),
    /// No solver configured.
    Builtin,
    /// A solver was configured but not found; `n` is small enough to
    /// fall back.
    Fallback {
        missing: PathBuf,
    },
}

/// Resolves `--solver`, then the environment variable, then the
/// built-in solver. A configured but missing solver is an error for
/// `n > FALLBACK_MAX_N`.
pub fn choose(
    flag: Option<&Path>,
    env: Option<OsString>,
    n: usize,
) -> Result<SolverChoice, SolverError> {
    let configured = flag
        .map(Path::to_path_buf)
        .or_else(|| env.filter(|s| !s.is_empty()).map(PathBuf::from));
    let Some(path) = configured else {
        return Ok(SolverChoice::Builtin);
    };
    match locate(&path) {
        Some(found) => Ok(SolverChoice::External(found)),
        None if n <= FALLBACK_MAX_N => Ok(SolverChoice::Fallback { missing: path }),
        None => Err(SolverError::Missing(format!(
            "{} not found; the built-in fallback only covers n <= {FALLBACK_MAX_N}",
            path.display()
        ))),
    }
}
