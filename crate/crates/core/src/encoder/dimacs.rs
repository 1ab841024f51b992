//! DIMACS CNF output and the `.map` sidecar naming every variable.

use std::io::{self, Write};

use crate::error::{ParseError, Result};
use crate::symmetry::{Mode, SFoldSymmetry};

use super::CnfFormula;

/// Writes `p cnf <vars> <clauses>` followed by one zero-terminated clause
/// per line.
pub fn emit_dimacs<W: Write>(formula: &CnfFormula, sink: W) -> io::Result<()> {
    write_clauses(formula.num_vars(), &formula.clauses, sink)
}

pub fn write_clauses<W: Write>(num_vars: usize, clauses: &[Vec<i32>], sink: W) -> io::Result<()> {
    let mut w = io::BufWriter::new(sink);
    writeln!(w, "p cnf {} {}", num_vars, clauses.len())?;
    let mut line = String::new();
    for c in clauses {
        line.clear();
        for l in c {
            line.push_str(&l.to_string());
            line.push(' ');
        }
        line.push('0');
        writeln!(w, "{line}")?;
    }
    w.flush()
}

/// Parses DIMACS CNF. Comment lines are skipped; clauses may span lines.
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<i32>>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut cur = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let f: Vec<&str> = t.split_whitespace().collect();
            if f.len() != 4 || f[1] != "cnf" {
                return Err(ParseError::new(line_no, format!("bad header `{t}`")).into());
            }
            let v = f[2].parse().map_err(|_| ParseError::new(line_no, "bad variable count".into()))?;
            let c = f[3].parse().map_err(|_| ParseError::new(line_no, "bad clause count".into()))?;
            header = Some((v, c));
            continue;
        }
        let (nv, _) = header.ok_or_else(|| ParseError::new(line_no, "clause before header".into()))?;
        for tok in t.split_whitespace() {
            let l: i32 = tok.parse().map_err(|_| ParseError::new(line_no, format!("bad literal `{tok}`")))?;
            if l == 0 {
                clauses.push(std::mem::take(&mut cur));
            } else {
                if l.unsigned_abs() as usize > nv {
                    return Err(ParseError::new(line_no, format!("literal {l} exceeds variable count {nv}")).into());
                }
                cur.push(l);
            }
        }
    }
    if !cur.is_empty() {
        clauses.push(cur);
    }
    let (nv, nc) = header.ok_or_else(|| ParseError::new(0, "missing header".into()))?;
    if nc != clauses.len() {
        return Err(ParseError::new(0, format!("header promises {nc} clauses, found {}", clauses.len())).into());
    }
    Ok((nv, clauses))
}

/// Writes the sidecar: a few `c key value` lines describing the problem,
/// then `<id> <name>` per variable.
pub fn write_map<W: Write>(formula: &CnfFormula, sink: W) -> io::Result<()> {
    let mut w = io::BufWriter::new(sink);
    let m = &formula.meta;
    writeln!(w, "c n {}", m.n)?;
    writeln!(w, "c s {}", m.sym.s())?;
    writeln!(w, "c center {}", u8::from(m.sym.center().is_some()))?;
    let mode = match m.mode {
        Mode::GeneralPosition => "general_position",
        Mode::CollinearAllowed => "collinear_allowed",
    };
    writeln!(w, "c mode {mode}")?;
    writeln!(w, "c orient_vars {}", m.orient_vars)?;
    if !m.description.is_empty() {
        writeln!(w, "c problem {}", m.description)?;
    }
    for (id, name) in formula.vars.iter() {
        writeln!(w, "{id} {name}")?;
    }
    w.flush()
}

/// What a `.map` file says about its formula.
#[derive(Clone, Debug)]
pub struct MapInfo {
    pub sym: SFoldSymmetry,
    pub mode: Mode,
    pub orient_vars: usize,
    pub names: Vec<(i32, String)>,
}

pub fn parse_map(text: &str) -> Result<MapInfo> {
    let (mut n, mut s, mut center, mut mode, mut ov) = (None, 1, false, Mode::GeneralPosition, None);
    let mut names = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.is_empty() {
            continue;
        }
        let bad = |what: &str| ParseError::new(line_no, format!("bad {what}"));
        if f[0] == "c" {
            match (f.get(1).copied(), f.get(2).copied()) {
                (Some("n"), Some(v)) => n = Some(v.parse().map_err(|_| bad("n"))?),
                (Some("s"), Some(v)) => s = v.parse().map_err(|_| bad("s"))?,
                (Some("center"), Some(v)) => center = v == "1",
                (Some("mode"), Some("general_position")) => mode = Mode::GeneralPosition,
                (Some("mode"), Some("collinear_allowed")) => mode = Mode::CollinearAllowed,
                (Some("mode"), _) => return Err(bad("mode").into()),
                (Some("orient_vars"), Some(v)) => ov = Some(v.parse().map_err(|_| bad("orient_vars"))?),
                _ => {}
            }
            continue;
        }
        if f.len() != 2 {
            return Err(bad("variable line").into());
        }
        let id: i32 = f[0].parse().map_err(|_| bad("variable id"))?;
        names.push((id, f[1].to_string()));
    }
    let n = n.ok_or_else(|| ParseError::new(0, "map lacks `c n`".into()))?;
    let orient_vars = ov.ok_or_else(|| ParseError::new(0, "map lacks `c orient_vars`".into()))?;
    let sym = SFoldSymmetry::new(n, s, center)?;
    Ok(MapInfo { sym, mode, orient_vars, names })
}
