//! Minimal DIMACS front end for CaDiCaL with competition-style output:
//! `s SATISFIABLE` / `s UNSATISFIABLE`, `v` lines, exit code 10 / 20.
//!
//! With `--enumerate N` the solver stays alive and prints one SAT block per
//! model, blocking each model's values on variables `1..=N`, until UNSAT
//! (exit 20) or `--limit` models (exit 10).

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

#[derive(Parser)]
#[command(name = "dimacs-solve")]
struct Args {
    cnf: String,
    /// Enumerate models, distinct on variables 1..=N.
    #[arg(long, value_name = "N")]
    enumerate: Option<usize>,
    #[arg(long, requires = "enumerate")]
    limit: Option<usize>,
}

fn write_model<W: Write>(out: &mut W, solver: &cadical::Solver, num_vars: usize) -> io::Result<()> {
    writeln!(out, "s SATISFIABLE")?;
    let mut line = String::from("v");
    for v in 1..=num_vars as i32 {
        let lit = if solver.value(v) == Some(false) { -v } else { v };
        line.push(' ');
        line.push_str(&lit.to_string());
        if line.len() > 72 {
            writeln!(out, "{line}")?;
            line = String::from("v");
        }
    }
    line.push_str(" 0");
    writeln!(out, "{line}")?;
    out.flush()
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let text = match std::fs::read_to_string(&args.cnf) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", args.cnf);
            return ExitCode::from(1);
        }
    };
    let (num_vars, clauses) = match rotsym::encoder::dimacs::parse_dimacs(&text) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("{}: {e}", args.cnf);
            return ExitCode::from(1);
        }
    };
    let mut solver: cadical::Solver = cadical::Solver::new();
    for c in &clauses {
        solver.add_clause(c.iter().copied());
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let Some(project) = args.enumerate else {
        return match solver.solve() {
            Some(true) => {
                let _ = write_model(&mut out, &solver, num_vars);
                ExitCode::from(10)
            }
            Some(false) => {
                let _ = writeln!(out, "s UNSATISFIABLE");
                let _ = out.flush();
                ExitCode::from(20)
            }
            None => {
                let _ = writeln!(out, "s UNKNOWN");
                let _ = out.flush();
                ExitCode::from(0)
            }
        };
    };
    let project = project.min(num_vars) as i32;
    let mut found = 0usize;
    loop {
        if args.limit.is_some_and(|l| found >= l) {
            return ExitCode::from(10);
        }
        match solver.solve() {
            Some(true) => {
                if write_model(&mut out, &solver, num_vars).is_err() {
                    return ExitCode::from(1);
                }
                found += 1;
                let block: Vec<i32> =
                    (1..=project).map(|v| if solver.value(v) == Some(false) { v } else { -v }).collect();
                if block.is_empty() {
                    let _ = writeln!(out, "s UNSATISFIABLE");
                    let _ = out.flush();
                    return ExitCode::from(20);
                }
                solver.add_clause(block);
            }
            Some(false) => {
                let _ = writeln!(out, "s UNSATISFIABLE");
                let _ = out.flush();
                return ExitCode::from(20);
            }
            None => {
                let _ = writeln!(out, "s UNKNOWN");
                let _ = out.flush();
                return ExitCode::from(0);
            }
        }
    }
}
