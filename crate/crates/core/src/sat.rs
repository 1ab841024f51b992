//! External SAT solver driver: DIMACS in, competition-format output back.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use crate::assignment::OrientationAssignment;
use crate::combin::triples;
use crate::encoder::dimacs::write_clauses;
use crate::encoder::CnfFormula;
use crate::error::{Error, Result};
use crate::symmetry::{ClassTable, Kind, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct SolverResult {
    pub status: Status,
    /// `model[v]` for variable `v`; index 0 unused. Present iff SAT.
    pub model: Option<Vec<bool>>,
    pub wall: Duration,
    pub exit_code: Option<i32>,
}

struct RawRun {
    stdout: String,
    stderr: String,
    exit_code: Option<i32>,
    timed_out: bool,
    wall: Duration,
}

fn run_solver(cnf_path: &Path, solver_cmd: &str, extra: &[String], timeout: Option<Duration>) -> Result<RawRun> {
    let mut parts = solver_cmd.split_whitespace();
    let prog = parts.next().ok_or_else(|| Error::InvalidProblem("empty solver command".into()))?;
    let start = Instant::now();
    let mut child = Command::new(prog)
        .args(parts)
        .args(extra)
        .arg(cnf_path)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()?;
    let mut out = child.stdout.take().expect("piped stdout");
    let mut err = child.stderr.take().expect("piped stderr");
    let out_reader = thread::spawn(move || {
        let mut s = String::new();
        out.read_to_string(&mut s).map(|_| s)
    });
    let err_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = err.read_to_string(&mut s);
        s
    });
    let mut timed_out = false;
    let status = loop {
        if let Some(st) = child.try_wait()? {
            break st;
        }
        if timeout.is_some_and(|t| start.elapsed() >= t) {
            let _ = child.kill();
            timed_out = true;
            break child.wait()?;
        }
        thread::sleep(Duration::from_millis(2));
    };
    let stdout = out_reader.join().expect("reader thread")?;
    let stderr = err_reader.join().expect("reader thread");
    Ok(RawRun { stdout, stderr, exit_code: status.code(), timed_out, wall: start.elapsed() })
}

/// Runs `<solver_cmd> <cnf_path>` and parses its status and `v` lines.
/// The process is killed once `timeout` elapses, yielding [`Status::Unknown`].
pub fn solve_external(cnf_path: &Path, solver_cmd: &str, timeout: Option<Duration>) -> Result<SolverResult> {
    let RawRun { stdout, stderr, exit_code, timed_out, wall } = run_solver(cnf_path, solver_cmd, &[], timeout)?;
    if timed_out {
        return Ok(SolverResult { status: Status::Unknown, model: None, wall, exit_code });
    }
    match parse_solver_output(&stdout) {
        Ok((st, model)) => {
            if st == Status::Unknown && !matches!(exit_code, Some(0)) {
                return Err(Error::SolverFailed { code: exit_code, stderr });
            }
            Ok(SolverResult { status: st, model, wall, exit_code })
        }
        Err(e) => match exit_code {
            Some(0) | Some(10) | Some(20) => Err(e),
            _ => Err(Error::SolverFailed { code: exit_code, stderr }),
        },
    }
}

/// Splits the output of an enumerating solver run into its models; the
/// flag says whether the run ended with `s UNSATISFIABLE` (exhausted).
/// A trailing incomplete block (from a killed process) is dropped.
pub fn parse_enumeration_output(text: &str) -> Result<(Vec<Vec<bool>>, bool)> {
    let mut blocks: Vec<String> = Vec::new();
    for line in text.lines() {
        if line.starts_with("s ") {
            blocks.push(String::new());
        }
        if let Some(b) = blocks.last_mut() {
            b.push_str(line);
            b.push('\n');
        }
    }
    let mut models = Vec::new();
    let mut exhausted = false;
    for b in &blocks {
        match parse_solver_output(b) {
            Ok((Status::Sat, Some(m))) => models.push(m),
            Ok((Status::Unsat, _)) => exhausted = true,
            Ok(_) => {}
            Err(_) if std::ptr::eq(b, blocks.last().expect("nonempty")) => {}
            Err(e) => return Err(e),
        }
    }
    Ok((models, exhausted))
}

/// Parses `s ...` and `v ...` lines.
pub fn parse_solver_output(text: &str) -> Result<(Status, Option<Vec<bool>>)> {
    let mut status = None;
    let mut lits: Vec<i32> = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix("s ") {
            status = Some(match rest.trim() {
                "SATISFIABLE" => Status::Sat,
                "UNSATISFIABLE" => Status::Unsat,
                "UNKNOWN" => Status::Unknown,
                other => return Err(Error::SolverOutput(format!("status `{other}`"))),
            });
        } else if let Some(rest) = t.strip_prefix('v') {
            for tok in rest.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| Error::SolverOutput(format!("literal `{tok}`")))?;
                if l != 0 {
                    lits.push(l);
                }
            }
        }
    }
    match status {
        None => Err(Error::SolverOutput("no status line".into())),
        Some(Status::Sat) => {
            let max = lits.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
            let mut model = vec![false; max + 1];
            for l in lits {
                model[l.unsigned_abs() as usize] = l > 0;
            }
            Ok((Status::Sat, Some(model)))
        }
        Some(s) => Ok((s, None)),
    }
}

/// Expands a model over class representatives to a full orientation
/// assignment.
pub fn decode_model(model: &[bool], table: &ClassTable) -> Result<OrientationAssignment> {
    let n = table.n();
    let value = |id: usize, pos: bool| -> bool { model.get(id + 1).copied().unwrap_or(false) == pos };
    let mut values = Vec::with_capacity(crate::combin::binomial(n, 3));
    for [i, j, k] in triples(n) {
        let v = match table.mode() {
            Mode::GeneralPosition => {
                let (id, pos) = table.lookup(Kind::A, i, j, k);
                if value(id, pos) {
                    1
                } else {
                    -1
                }
            }
            Mode::CollinearAllowed => {
                let a = {
                    let (id, pos) = table.lookup(Kind::A, i, j, k);
                    value(id, pos)
                };
                let b = {
                    let (id, pos) = table.lookup(Kind::B, i, j, k);
                    value(id, pos)
                };
                let c = {
                    let (id, pos) = table.lookup(Kind::C, i, j, k);
                    value(id, pos)
                };
                match (a, b, c) {
                    (true, false, false) => 1,
                    (false, true, false) => -1,
                    (false, false, true) => 0,
                    _ => {
                        return Err(Error::InconsistentModel(format!(
                            "triple ({}, {}, {}) has a={a} b={b} c={c}",
                            i + 1,
                            j + 1,
                            k + 1
                        )))
                    }
                }
            }
        };
        values.push(v);
    }
    Ok(OrientationAssignment::from_values(n, values))
}

/// Class table matching the formula's orientation variables.
pub fn class_table(formula: &CnfFormula) -> ClassTable {
    ClassTable::build(&formula.meta.sym, formula.meta.mode)
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub models: Vec<Vec<bool>>,
    pub assignments: Vec<OrientationAssignment>,
    /// False when a solver call timed out or the limit was hit.
    pub complete: bool,
    pub wall: Duration,
}

/// Options for [`enumerate_all`].
#[derive(Clone, Debug, Default)]
pub struct EnumerateOptions {
    /// Defaults to the orientation class variables.
    pub projection: Option<Vec<i32>>,
    pub limit: Option<usize>,
    pub timeout: Option<Duration>,
    /// Where the working CNF is written; a temporary file otherwise.
    pub work_file: Option<PathBuf>,
    /// Skip decoding (for formulas that are not orientation encodings).
    pub raw: bool,
    /// Let one solver process enumerate (`--enumerate <N> [--limit <L>]`,
    /// blocking on variables `1..=N`) instead of one call per model. The
    /// projection must then be exactly `1..=N`.
    pub incremental: bool,
}

/// Solves repeatedly, blocking each model's projection, until UNSAT, the
/// limit, or a timeout. Every model is re-checked against the formula.
pub fn enumerate_all(formula: &CnfFormula, solver_cmd: &str, opts: &EnumerateOptions) -> Result<Enumeration> {
    let projection = opts.projection.clone().unwrap_or_else(|| formula.orientation_vars());
    let table = (!opts.raw).then(|| class_table(formula));
    enumerate_clauses(formula.num_vars(), &formula.clauses, &projection, table.as_ref(), solver_cmd, opts)
}

/// [`enumerate_all`] on a bare clause list; models are decoded when a class
/// table is given. `opts.projection` and `opts.raw` are ignored.
pub fn enumerate_clauses(
    num_vars: usize,
    base: &[Vec<i32>],
    projection: &[i32],
    table: Option<&ClassTable>,
    solver_cmd: &str,
    opts: &EnumerateOptions,
) -> Result<Enumeration> {
    let start = Instant::now();
    let tmp;
    let path = match &opts.work_file {
        Some(p) => p.clone(),
        None => {
            tmp = tempfile::Builder::new().suffix(".cnf").tempfile()?;
            tmp.path().to_path_buf()
        }
    };
    let check = |model: &mut Vec<bool>| -> Result<()> {
        model.resize(num_vars + 1, false);
        match base.iter().position(|c| !c.iter().any(|&l| model[l.unsigned_abs() as usize] == (l > 0))) {
            Some(c) => Err(Error::InconsistentModel(format!("solver model violates clause {}", c + 1))),
            None => Ok(()),
        }
    };
    if opts.incremental {
        let prefix = projection.iter().enumerate().all(|(i, &v)| v == i as i32 + 1);
        if !prefix {
            return Err(Error::InvalidProblem("incremental enumeration needs the projection 1..=N".into()));
        }
        let mut buf = Vec::new();
        write_clauses(num_vars, base, &mut buf)?;
        fs::write(&path, &buf)?;
        let mut extra = vec!["--enumerate".to_string(), projection.len().to_string()];
        if let Some(l) = opts.limit {
            extra.extend(["--limit".to_string(), l.to_string()]);
        }
        let raw = run_solver(&path, solver_cmd, &extra, opts.timeout)?;
        if !raw.timed_out && !matches!(raw.exit_code, Some(0) | Some(10) | Some(20)) {
            return Err(Error::SolverFailed { code: raw.exit_code, stderr: raw.stderr });
        }
        let (mut models, exhausted) = parse_enumeration_output(&raw.stdout)?;
        let mut assignments = Vec::new();
        for m in &mut models {
            check(m)?;
            if let Some(t) = table {
                assignments.push(decode_model(m, t)?);
            }
        }
        return Ok(Enumeration { models, assignments, complete: exhausted, wall: start.elapsed() });
    }
    let mut clauses = base.to_vec();
    let mut models = Vec::new();
    let mut assignments = Vec::new();
    let mut complete = true;
    loop {
        if opts.limit.is_some_and(|l| models.len() >= l) {
            complete = false;
            break;
        }
        let mut buf = Vec::new();
        write_clauses(num_vars, &clauses, &mut buf)?;
        fs::write(&path, &buf)?;
        let res = solve_external(&path, solver_cmd, opts.timeout)?;
        match res.status {
            Status::Unsat => break,
            Status::Unknown => {
                complete = false;
                break;
            }
            Status::Sat => {
                let mut model = res.model.expect("sat model");
                check(&mut model)?;
                let block: Vec<i32> = projection.iter().map(|&v| if model[v as usize] { -v } else { v }).collect();
                if let Some(t) = table {
                    assignments.push(decode_model(&model, t)?);
                }
                models.push(model);
                if block.is_empty() {
                    break;
                }
                clauses.push(block);
            }
        }
    }
    Ok(Enumeration { models, assignments, complete, wall: start.elapsed() })
}

/// Single solve of an in-memory formula.
pub fn solve_formula(formula: &CnfFormula, solver_cmd: &str, timeout: Option<Duration>) -> Result<SolverResult> {
    let tmp = tempfile::Builder::new().suffix(".cnf").tempfile()?;
    let mut buf = Vec::new();
    write_clauses(formula.num_vars(), &formula.clauses, &mut buf)?;
    fs::write(tmp.path(), &buf)?;
    let mut res = solve_external(tmp.path(), solver_cmd, timeout)?;
    if let Some(m) = res.model.as_mut() {
        m.resize(formula.num_vars() + 1, false);
    }
    Ok(res)
}

/// Writes `sol_0001.txt`, ... and an `index.txt` listing them.
pub fn write_assignment_dir(dir: &Path, assignments: &[OrientationAssignment]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut index = String::new();
    let mut paths = Vec::new();
    for (i, a) in assignments.iter().enumerate() {
        let name = format!("sol_{:04}.txt", i + 1);
        let p = dir.join(&name);
        fs::write(&p, crate::io::format_assignment(a))?;
        index.push_str(&name);
        index.push('\n');
        paths.push(p);
    }
    fs::write(dir.join("index.txt"), index)?;
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::{encode, ProblemSpec};
    use crate::symmetry::SFoldSymmetry;

    #[test]
    fn parse_outputs() {
        let (s, m) = parse_solver_output("c hi\ns SATISFIABLE\nv 1 -2\nv 3 0\n").unwrap();
        assert_eq!(s, Status::Sat);
        assert_eq!(m.unwrap(), vec![false, true, false, true]);
        assert_eq!(parse_solver_output("s UNSATISFIABLE\n").unwrap().0, Status::Unsat);
        assert!(matches!(parse_solver_output("garbage"), Err(Error::SolverOutput(_))));
        assert!(matches!(parse_solver_output("s SATISFIABLE\nv x 0\n"), Err(Error::SolverOutput(_))));
    }

    #[test]
    fn decode_under_four_fold() {
        let sym = SFoldSymmetry::new(16, 4, false).unwrap();
        let table = ClassTable::build(&sym, Mode::GeneralPosition);
        let (id, pos) = table.lookup(Kind::A, 0, 5, 7);
        let mut model = vec![false; table.len() + 1];
        model[id + 1] = pos;
        let t = decode_model(&model, &table).unwrap();
        assert_eq!(t.get(0, 5, 7), 1);
        assert_eq!(t.get(1, 4, 6), -1);
        // symmetric under π for any model
        for ([i, j, k], v) in t.iter() {
            assert_eq!(t.get(sym.apply(i), sym.apply(j), sym.apply(k)), v);
        }
    }

    #[test]
    fn decode_identity_is_read_off() {
        let f = encode(&ProblemSpec::no_kgon(6, 5)).unwrap();
        let table = class_table(&f);
        let mut model = vec![false; f.num_vars() + 1];
        model[1] = true;
        model[3] = true;
        let t = decode_model(&model, &table).unwrap();
        assert_eq!(&t.values()[..4], &[1, -1, 1, -1]);
    }

    #[test]
    fn decode_rejects_double_truth() {
        let table = ClassTable::build(&SFoldSymmetry::identity(3), Mode::CollinearAllowed);
        let model = vec![false, true, true, false];
        assert!(matches!(decode_model(&model, &table), Err(Error::InconsistentModel(_))));
        let model = vec![false, false, false, true];
        assert_eq!(decode_model(&model, &table).unwrap().values(), &[0]);
    }
}
