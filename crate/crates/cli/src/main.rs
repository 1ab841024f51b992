//! `rotsym`: encode, solve, enumerate, realize, verify and plot symmetric
//! point configurations.

mod pipeline;
mod plot;
mod realize;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use rotsym::collinear::DeParams;
use rotsym::encoder::dimacs::{emit_dimacs, parse_dimacs, parse_map, write_map};
use rotsym::encoder::{encode, ProblemSpec};
use rotsym::io::{parse_assignment, parse_pointset, PointSet};
use rotsym::localizer::SearchParams;
use rotsym::sat::{decode_model, enumerate_clauses, solve_external, write_assignment_dir, EnumerateOptions, Status};
use rotsym::symmetry::ClassTable;
use rotsym::{OrientationAssignment, SFoldSymmetry};
use serde::Deserialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_IO: u8 = 2;
pub const EXIT_VERIFY_FAILED: u8 = 3;
pub const EXIT_UNSAT: u8 = 10;
pub const EXIT_BUDGET: u8 = 20;

#[derive(Parser)]
#[command(name = "rotsym", version, about = "Rotationally symmetric point configurations via SAT")]
struct Cli {
    /// Seed for every randomized stage.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Solver command (DIMACS in, competition output, exit 10/20).
    #[arg(long, global = true, env = "ROTSYM_SOLVER")]
    solver: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write `<stem>.cnf` and `<stem>.map` for a problem config.
    Encode {
        config: PathBuf,
        /// Output stem; defaults to the config path without extension.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// One solver call; with a map, the model is decoded to an assignment.
    Solve {
        cnf: PathBuf,
        #[arg(long)]
        map: Option<PathBuf>,
        /// Assignment output file.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// All assignments, one file each, plus an index.
    Enumerate {
        cnf: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        timeout: Option<f64>,
        /// One long-lived solver process adds the blocking clauses itself
        /// (the solver must understand `--enumerate N`).
        #[arg(long)]
        incremental: bool,
    },
    /// Realize an assignment as coordinates and certify them.
    Realize {
        assignment: PathBuf,
        /// Output stem.
        #[arg(short, long)]
        out: PathBuf,
        /// Rotational symmetry to impose (center chosen from n mod s).
        #[arg(long)]
        symmetry: Option<usize>,
        #[arg(long)]
        threads: Option<usize>,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        time: Option<f64>,
        /// Imbalance target for assignments with collinear triples.
        #[arg(long, default_value_t = 2)]
        target: usize,
        /// TOML file with `[localizer]` and `[collinear]` tables.
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Certify a pointset against an assignment (default: its own).
    Verify {
        pointset: PathBuf,
        #[arg(long)]
        assignment: Option<PathBuf>,
        /// Also write `key=value` lines here.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// k-gon counts, minimum imbalance, convex layers and symmetry.
    Stats {
        pointset: PathBuf,
        /// Check only this rotation order instead of 2..=6.
        #[arg(long)]
        symmetry: Option<usize>,
        /// Also write `key=value` lines here.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Render a pointset as SVG.
    Plot {
        pointset: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Draw the collinear lines of this assignment.
        #[arg(long)]
        assignment: Option<PathBuf>,
        /// Draw the pointset's own lines of three or more points.
        #[arg(long)]
        lines: bool,
        #[arg(long)]
        guides: Option<usize>,
        #[arg(long)]
        labels: bool,
    },
    /// Encode, solve or enumerate, realize, verify and plot in one run.
    Pipeline {
        config: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
}

/// Errors in the user's request rather than the environment.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_for(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    match e.downcast_ref::<rotsym::Error>() {
        Some(
            rotsym::Error::InvalidProblem(_)
            | rotsym::Error::InvalidSymmetry(_)
            | rotsym::Error::SymmetryBreakingUnsupported
            | rotsym::Error::AsymmetricAssignment
            | rotsym::Error::Parse(_),
        ) => EXIT_USAGE,
        _ => EXIT_IO,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_for(&e))
        }
    }
}

/// The sibling `dimacs-solve` binary, unless configured otherwise.
pub fn default_solver() -> String {
    std::env::current_exe()
        .ok()
        .and_then(|p| p.parent().map(|d| d.join(format!("dimacs-solve{}", std::env::consts::EXE_SUFFIX))))
        .filter(|p| p.exists())
        .map(|p| p.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dimacs-solve".to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(d) = path.parent() {
        if !d.as_os_str().is_empty() {
            fs::create_dir_all(d)?;
        }
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn parse_points(path: &Path) -> Result<PointSet> {
    parse_pointset(&read(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())).into())
}

fn parse_tau(path: &Path) -> Result<OrientationAssignment> {
    parse_assignment(&read(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())).into())
}

fn with_ext(stem: &Path, ext: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

/// Realization parameters as read from a `[localizer]`/`[collinear]` file.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RealizeParams {
    pub localizer: SearchParams,
    pub collinear: DeParams,
}

/// A problem config: either a bare problem table or a file with a
/// `[problem]` table (as used by `pipeline`).
pub fn load_problem(text: &str) -> Result<ProblemSpec> {
    let value: toml::Table = toml::from_str(text).map_err(|e| UsageError(format!("config: {e}")))?;
    let spec = match value.get("problem") {
        Some(p) => ProblemSpec::from_toml(&toml::to_string(p)?)?,
        None => ProblemSpec::from_toml(text)?,
    };
    Ok(spec)
}

fn run(cli: Cli) -> Result<u8> {
    let solver = cli.solver.clone().unwrap_or_else(default_solver);
    match cli.cmd {
        Cmd::Encode { config, out } => {
            let spec = load_problem(&read(&config)?)?;
            let f = encode(&spec)?;
            let stem = out.unwrap_or_else(|| config.with_extension(""));
            let mut cnf = Vec::new();
            emit_dimacs(&f, &mut cnf)?;
            write(&with_ext(&stem, ".cnf"), std::str::from_utf8(&cnf)?)?;
            let mut map = Vec::new();
            write_map(&f, &mut map)?;
            write(&with_ext(&stem, ".map"), std::str::from_utf8(&map)?)?;
            print!("{}", f.breakdown());
            Ok(EXIT_OK)
        }
        Cmd::Solve { cnf, map, out, timeout } => {
            let res = solve_external(&cnf, &solver, timeout.map(Duration::from_secs_f64))?;
            match res.status {
                Status::Unsat => {
                    println!("s UNSATISFIABLE");
                    Ok(EXIT_UNSAT)
                }
                Status::Unknown => {
                    println!("s UNKNOWN");
                    Ok(EXIT_IO)
                }
                Status::Sat => {
                    println!("s SATISFIABLE");
                    if let Some(map) = map {
                        let info = parse_map(&read(&map)?)?;
                        let table = ClassTable::build(&info.sym, info.mode);
                        let tau = decode_model(res.model.as_deref().unwrap_or_default(), &table)?;
                        let text = rotsym::io::format_assignment(&tau);
                        match out {
                            Some(p) => write(&p, &text)?,
                            None => print!("{text}"),
                        }
                    }
                    Ok(EXIT_OK)
                }
            }
        }
        Cmd::Enumerate { cnf, map, out, limit, timeout, incremental } => {
            let (nv, clauses) = parse_dimacs(&read(&cnf)?)?;
            let info = parse_map(&read(&map)?)?;
            let table = ClassTable::build(&info.sym, info.mode);
            let projection: Vec<i32> = (1..=info.orient_vars as i32).collect();
            let opts =
                EnumerateOptions { limit, timeout: timeout.map(Duration::from_secs_f64), incremental, ..Default::default() };
            let e = enumerate_clauses(nv, &clauses, &projection, Some(&table), &solver, &opts)?;
            write_assignment_dir(&out, &e.assignments)?;
            println!("solutions={} complete={} wall_s={:.3}", e.assignments.len(), e.complete, e.wall.as_secs_f64());
            Ok(if e.assignments.is_empty() && e.complete { EXIT_UNSAT } else { EXIT_OK })
        }
        Cmd::Realize { assignment, out, symmetry, threads, time, target, params } => {
            let tau = parse_tau(&assignment)?;
            let mut p: RealizeParams = match params {
                Some(f) => toml::from_str(&read(&f)?).map_err(|e| UsageError(format!("params: {e}")))?,
                None => RealizeParams::default(),
            };
            if let Some(s) = cli.seed {
                p.localizer.seed = s;
                p.collinear.seed = s;
            }
            if let Some(t) = threads {
                p.localizer.threads = t;
            }
            if let Some(t) = time {
                p.localizer.time_budget = Some(t);
                p.collinear.time_budget = Some(t);
            }
            let sym = symmetry.map(|s| SFoldSymmetry::auto(tau.n(), s)).transpose()?;
            let r = realize::realize_one(&tau, sym.as_ref(), &p.localizer, &p.collinear, target)?;
            realize::write_realized(&out, &r)?;
            println!("{}", r.detail());
            if let realize::Realized::Certified { exact, .. } = &r {
                let (rep, _) = report::verify_report(exact.clone(), tau.is_general_position().then_some(&tau))?;
                print!("{}", rep.human());
                write(&with_ext(&out, ".verify.txt"), &rep.key_values())?;
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_BUDGET)
            }
        }
        Cmd::Verify { pointset, assignment, summary } => {
            let ps = parse_points(&pointset)?;
            let tau = assignment.as_deref().map(parse_tau).transpose()?;
            let (rep, ok) = report::verify_report(ps, tau.as_ref())?;
            print!("{}", rep.human());
            if let Some(s) = summary {
                write(&s, &rep.key_values())?;
            }
            Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Cmd::Stats { pointset, symmetry, summary } => {
            let rep = report::stats_report(parse_points(&pointset)?, symmetry)?;
            print!("{}", rep.human());
            if let Some(s) = summary {
                write(&s, &rep.key_values())?;
            }
            Ok(EXIT_OK)
        }
        Cmd::Plot { pointset, out, assignment, lines, guides, labels } => {
            let ps = parse_points(&pointset)?;
            let mut drawn = Vec::new();
            if let Some(a) = assignment {
                drawn = realize::drawn_lines(&parse_tau(&a)?);
            } else if lines && ps.is_exact() {
                drawn = realize::drawn_lines(&ps.orientations());
            }
            let svg = plot::render_svg(&ps.to_f64(), &plot::PlotOptions { lines: drawn, guides, labels });
            write(&out, &svg)?;
            Ok(EXIT_OK)
        }
        Cmd::Pipeline { config, out } => pipeline::run(&config, &out, cli.seed, &solver),
    }
}
