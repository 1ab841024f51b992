//! Routing an assignment to the right realizer and writing the results.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::Result;
use rotsym::collinear::{extract_lines, realize_collinear, DeParams};
use rotsym::io::{format_pointset, PointSet};
use rotsym::localizer::{realize, RealizeOutcome, SearchParams};
use rotsym::{OrientationAssignment, Point, SFoldSymmetry};

pub enum Realized {
    Certified { exact: PointSet, floats: Vec<Point<f64>>, detail: String },
    Exhausted { best: Vec<Point<f64>>, detail: String },
}

impl Realized {
    pub fn detail(&self) -> &str {
        match self {
            Realized::Certified { detail, .. } | Realized::Exhausted { detail, .. } => detail,
        }
    }
}

/// General-position assignments go to the local search, others to the
/// line-structured optimizer with imbalance target `target`.
pub fn realize_one(
    tau: &OrientationAssignment,
    sym: Option<&SFoldSymmetry>,
    lp: &SearchParams,
    dp: &DeParams,
    target: usize,
) -> Result<Realized> {
    if tau.n() < 3 {
        anyhow::bail!("need at least 3 points");
    }
    if tau.is_general_position() {
        let out = realize(tau, lp, sym)?;
        let st = out.stats().clone();
        let detail = format!(
            "realizer=localizer iterations={} restarts={} wall_s={:.3}",
            st.iterations,
            st.restarts,
            st.wall.as_secs_f64()
        );
        return Ok(match out {
            RealizeOutcome::Success { points, exact, .. } => {
                Realized::Certified { exact: PointSet::Rational(exact), floats: points, detail }
            }
            RealizeOutcome::Failure { best, unsat, .. } => {
                Realized::Exhausted { best, detail: format!("{detail} best_unsat={unsat}") }
            }
        });
    }
    let out = realize_collinear(tau, target, dp, sym)?;
    let mut detail = format!(
        "realizer=collinear mode={:?} generations={} wall_s={:.3} score={:.4}",
        out.mode,
        out.generations,
        out.wall.as_secs_f64(),
        out.score
    );
    if let Some(d) = out.delta {
        let _ = write!(detail, " exact_delta={d} lines_exact={}", out.lines_exact);
    }
    Ok(match (out.success, out.exact) {
        (true, Some(exact)) => Realized::Certified { exact, floats: out.floats, detail },
        (_, exact) => {
            if let Some(e) = exact {
                detail.push_str(&format!("\n# best exact candidate\n{}", format_pointset(&e)));
            }
            Realized::Exhausted { best: out.floats, detail }
        }
    })
}

/// `<stem>.float.txt`, `<stem>.exact.txt` and `<stem>.report.txt`, or
/// `<stem>.best.txt` on failure.
pub fn write_realized(stem: &Path, r: &Realized) -> Result<()> {
    let with = |ext: &str| {
        let mut s = stem.as_os_str().to_owned();
        s.push(ext);
        std::path::PathBuf::from(s)
    };
    if let Some(dir) = stem.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    match r {
        Realized::Certified { exact, floats, detail } => {
            fs::write(with(".float.txt"), format_pointset(&PointSet::Float(floats.clone())))?;
            fs::write(with(".exact.txt"), format_pointset(exact))?;
            fs::write(with(".report.txt"), format!("status: certified\n{detail}\n"))?;
        }
        Realized::Exhausted { best, detail } => {
            fs::write(with(".best.txt"), format_pointset(&PointSet::Float(best.clone())))?;
            fs::write(with(".report.txt"), format!("status: budget exhausted\n{detail}\n"))?;
        }
    }
    Ok(())
}

/// Lines with at least three points, for plotting.
pub fn drawn_lines(tau: &OrientationAssignment) -> Vec<Vec<usize>> {
    extract_lines(tau).map(|f| f.lines).unwrap_or_default()
}
