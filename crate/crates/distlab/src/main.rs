use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use distlab::solver::{self, ExternalSolver, SolverChoice};
use distlab::{dimacs, edgelist, graph6, report};
use distlab_core::bounds::{check_bounds, family_graph, Verdict};
use distlab_core::distance::{diameter, k_distance};
use distlab_core::encode::{build_formula, SearchParams};
use distlab_core::graph::Graph;
use distlab_core::search::{search, SearchOutcome, SearchReport};

type Error = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(
    name = "distlab",
    version,
    about = "Exact distance powers of small graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Map each graph6 line to its exact k-distance graph.
    Transform {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        /// graph6 input; standard input when omitted.
        input: Option<PathBuf>,
    },
    /// Print `<index>,<diam G>,<diam G2>` for each graph6 line.
    Diam { input: Option<PathBuf> },
    /// Count connected graphs on n vertices by (diam G, diam G2).
    Survey {
        #[arg(long)]
        n: usize,
        /// CSV output; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG heatmap of the finite cells.
        #[arg(long)]
        heatmap: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Allow n = 12.
        #[arg(long)]
        force: bool,
    },
    /// Print the graph6 of the even-k member of the sharp upper-bound family.
    Family {
        #[arg(long)]
        k: usize,
    },
    /// Check the diameter bounds on each graph6 line:
    /// `<index>,<d>,<d2>,<verdict>`. Exits 1 if any line is a VIOLATION.
    Verify { input: Option<PathBuf> },
    /// Search for a graph whose G2 has a long fixed shortest path.
    SatSearch(SatArgs),
    /// Convert between graph6 and edge-list blocks.
    Convert {
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        from: Format,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        to: Format,
        input: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct SatArgs {
    #[arg(long)]
    n: usize,
    /// Edge count of the fixed path 0 - 1 - ... in G2.
    #[arg(long)]
    p2_len: usize,
    #[arg(long)]
    min_d2: u32,
    /// Reject candidates with diam G above this.
    #[arg(long)]
    max_d: Option<u32>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    shortcut_max_len: u64,
    /// External DIMACS solver; overrides DISTLAB_SOLVER.
    #[arg(long)]
    solver: Option<PathBuf>,
    /// Wall-clock limit for the whole search.
    #[arg(long)]
    budget_seconds: Option<f64>,
    /// Maximum number of solver calls.
    #[arg(long)]
    max_rounds: Option<u64>,
    /// Write the initial formula as DIMACS, plus a `.map` variable sidecar.
    #[arg(long)]
    emit_cnf: Option<PathBuf>,
    /// Stop after writing the formula.
    #[arg(long, requires = "emit_cnf")]
    emit_only: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

fn open_input(path: Option<&Path>) -> io::Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(File::open(p)?)),
        None => Box::new(BufReader::new(io::stdin())),
    })
}

fn for_each_graph6(
    input: Option<&Path>,
    mut f: impl FnMut(usize, Graph) -> io::Result<()>,
) -> Result<(), Error> {
    for (idx, g) in graph6::read_graphs(open_input(input)?).enumerate() {
        f(idx, g?)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("distlab: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, Error> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match cmd {
        Cmd::Transform { k, input } => {
            for_each_graph6(input.as_deref(), |_, g| {
                let h = k_distance(&g, k as usize).expect("k >= 1");
                writeln!(out, "{}", graph6::encode(&h))
            })?;
            ExitCode::SUCCESS
        }
        Cmd::Diam { input } => {
            for_each_graph6(input.as_deref(), |idx, g| {
                let d2 = diameter(&k_distance(&g, 2).expect("k = 2"));
                writeln!(out, "{idx},{},{d2}", diameter(&g))
            })?;
            ExitCode::SUCCESS
        }
        Cmd::Survey {
            n,
            out: csv_path,
            heatmap,
            threads,
            force,
        } => {
            let table = report::survey_parallel(n, force, threads)?;
            let csv = report::survey_csv(&table);
            match csv_path {
                Some(p) => report::write_atomic(&p, csv.as_bytes())?,
                None => out.write_all(csv.as_bytes())?,
            }
            if let Some(p) = heatmap {
                report::write_atomic(&p, report::survey_svg(&table).as_bytes())?;
            }
            ExitCode::SUCCESS
        }
        Cmd::Family { k } => {
            writeln!(out, "{}", graph6::encode(&family_graph(k)?))?;
            ExitCode::SUCCESS
        }
        Cmd::Verify { input } => {
            let mut violations = 0usize;
            for_each_graph6(input.as_deref(), |idx, g| {
                let r = check_bounds(&g);
                if r.verdict == Verdict::Violation {
                    violations += 1;
                }
                writeln!(out, "{idx},{},{},{}", r.d, r.d2, r.verdict)
            })?;
            if violations > 0 {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Cmd::SatSearch(args) => sat_search(args, &mut out)?,
        Cmd::Convert { from, to, input } => {
            let reader = open_input(input.as_deref())?;
            let graphs: Box<dyn Iterator<Item = Result<Graph, Error>>> = match from {
                Format::Graph6 => {
                    Box::new(graph6::read_graphs(reader).map(|r| r.map_err(Error::from)))
                }
                Format::Edgelist => {
                    Box::new(edgelist::read_graphs(reader).map(|r| r.map_err(Error::from)))
                }
            };
            for g in graphs {
                let g = g?;
                match to {
                    Format::Graph6 => writeln!(out, "{}", graph6::encode(&g))?,
                    Format::Edgelist => out.write_all(edgelist::emit(&g).as_bytes())?,
                }
            }
            ExitCode::SUCCESS
        }
    };
    out.flush()?;
    Ok(code)
}

const DIAM2_NOTE: &str = "diam2_exclusion=encoded as: some pair i<k is neither adjacent nor has a common neighbour (per-pair reachability-within-2 indicators); the conjunction form with an unbound middle index is not used";

fn sat_search(args: SatArgs, out: &mut impl Write) -> Result<ExitCode, Error> {
    let mut p = SearchParams::new(args.n, args.p2_len, args.min_d2);
    p.max_d = args.max_d;
    p.shortcut_max_len = args.shortcut_max_len as usize;
    p.max_rounds = args.max_rounds;
    p.validate()?;
    let deadline = match args.budget_seconds {
        Some(s) if s.is_finite() && s >= 0.0 => Some(Instant::now() + Duration::from_secs_f64(s)),
        Some(s) => {
            return Err(format!("--budget-seconds must be a nonnegative number, got {s}").into())
        }
        None => None,
    };
    let choice = solver::choose(
        args.solver.as_deref(),
        std::env::var_os(solver::SOLVER_ENV),
        args.n,
    )?;

    if let Some(path) = &args.emit_cnf {
        let (vm, f) = build_formula(&p)?;
        report::write_atomic(path, dimacs::emit(&f).as_bytes())?;
        let mut map = path.clone().into_os_string();
        map.push(".map");
        report::write_atomic(Path::new(&map), dimacs::emit_var_map(&vm).as_bytes())?;
        if args.emit_only {
            writeln!(out, "status=emitted")?;
            writeln!(out, "vars={}", f.var_count())?;
            writeln!(out, "clauses={}", f.len())?;
            return Ok(ExitCode::SUCCESS);
        }
    }

    let start = Instant::now();
    let (report, solver_lines): (SearchReport, Vec<String>) = match &choice {
        SolverChoice::External(path) => {
            let mut s = ExternalSolver::new(path);
            if let Some(d) = deadline {
                s = s.with_deadline(d);
            }
            let r = search(&p, &mut s)?;
            (r, vec![format!("solver={}", path.display())])
        }
        SolverChoice::Builtin | SolverChoice::Fallback { .. } => {
            let mut s = solver::builtin(deadline);
            let r = search(&p, &mut s)?;
            let st = s.stats();
            let mut lines = vec![
                "solver=builtin-dpll".to_string(),
                format!("solver_decisions={}", st.decisions),
                format!("solver_conflicts={}", st.conflicts),
                format!("solver_propagations={}", st.propagations),
            ];
            if let SolverChoice::Fallback { missing } = &choice {
                lines.push(format!("solver_fallback_from={}", missing.display()));
            }
            (r, lines)
        }
    };
    let elapsed = start.elapsed();

    let code = match &report.outcome {
        SearchOutcome::Witness { graph, d, d2 } => {
            writeln!(out, "status=witness")?;
            writeln!(out, "graph6={}", graph6::encode(graph))?;
            writeln!(out, "d={d}")?;
            writeln!(out, "d2={d2}")?;
            ExitCode::SUCCESS
        }
        SearchOutcome::Unsat => {
            writeln!(out, "status=unsat")?;
            ExitCode::from(1)
        }
        SearchOutcome::BudgetExhausted { .. } => {
            writeln!(out, "status=budget-exhausted")?;
            ExitCode::from(1)
        }
    };
    let by = report.stats.rejected_by;
    writeln!(out, "rejected={}", report.stats.rejected)?;
    writeln!(
        out,
        "rejected_by=g2_disconnected:{},diam_le_2:{},diam_above_max:{},d2_below_min:{},path_not_geodesic:{}",
        by.disconnected2, by.diameter_too_small, by.diameter_too_large, by.d2_too_small, by.path_not_geodesic
    )?;
    writeln!(out, "rounds={}", report.stats.rounds)?;
    writeln!(out, "vars={}", report.stats.var_count)?;
    writeln!(out, "base_clauses={}", report.stats.base_clauses)?;
    for l in solver_lines {
        writeln!(out, "{l}")?;
    }
    writeln!(out, "elapsed_ms={}", elapsed.as_millis())?;
    writeln!(out, "{DIAM2_NOTE}")?;
    Ok(code)
}
