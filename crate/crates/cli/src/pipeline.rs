//! End-to-end runs driven by one config file, recorded in a `key=value`
//! manifest.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::Result;
use rotsym::collinear::{exact_rotation, DeParams};
use rotsym::encoder::dimacs::{emit_dimacs, write_map};
use rotsym::encoder::{encode, ProblemSpec};
use rotsym::localizer::SearchParams;
use rotsym::sat::{class_table, decode_model, enumerate_all, solve_formula, write_assignment_dir, EnumerateOptions, Status};
use serde::Deserialize;

use crate::realize::{drawn_lines, realize_one, write_realized, Realized};
use crate::report::{stats_report, verify_report};
use crate::{plot, UsageError, EXIT_BUDGET, EXIT_OK, EXIT_UNSAT};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    All,
    #[default]
    First,
    None,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub problem: ProblemSpec,
    pub solver: Option<String>,
    /// Enumerate all assignments rather than solving once.
    #[serde(default = "yes")]
    pub enumerate: bool,
    pub limit: Option<usize>,
    /// Enumerate inside one solver process.
    #[serde(default)]
    pub incremental: bool,
    pub solve_timeout: Option<f64>,
    #[serde(default)]
    pub realize: Which,
    /// Imbalance target for collinear realizations; defaults to the
    /// problem's own bound.
    pub target: Option<usize>,
    /// Realize with the problem's rotation imposed geometrically.
    #[serde(default = "yes")]
    pub symmetric: bool,
    pub seed: Option<u64>,
    #[serde(default)]
    pub localizer: SearchParams,
    #[serde(default)]
    pub collinear: DeParams,
}

struct Manifest(String);

impl Manifest {
    fn put(&mut self, k: &str, v: impl std::fmt::Display) {
        let _ = writeln!(self.0, "{k}={v}");
    }
}

pub fn run(config: &Path, out: &Path, seed: Option<u64>, default_solver: &str) -> Result<u8> {
    let start = Instant::now();
    let text = fs::read_to_string(config)?;
    let mut cfg: PipelineConfig = toml::from_str(&text).map_err(|e| UsageError(format!("config: {e}")))?;
    cfg.problem.validate()?;
    if let Some(s) = seed.or(cfg.seed) {
        cfg.localizer.seed = s;
        cfg.collinear.seed = s;
    }
    let solver = cfg.solver.clone().unwrap_or_else(|| default_solver.to_string());
    fs::create_dir_all(out)?;
    let mut m = Manifest(String::new());
    m.put("config", config.display());
    m.put("version", env!("CARGO_PKG_VERSION"));
    m.put("seed", cfg.localizer.seed);
    m.put("solver", &solver);
    m.put("n", cfg.problem.n);
    m.put("s", cfg.problem.s);
    m.put("threads", cfg.localizer.threads);
    m.put("thread_nondeterminism", cfg.localizer.threads > 1);
    let code = stages(&cfg, out, &solver, &mut m);
    let code = match code {
        Ok(c) => c,
        Err(e) => {
            m.put("error", format!("{e:#}").replace('\n', " "));
            m.put("total_s", format!("{:.3}", start.elapsed().as_secs_f64()));
            fs::write(out.join("manifest.txt"), &m.0)?;
            return Err(e);
        }
    };
    m.put("exit_code", code);
    m.put("total_s", format!("{:.3}", start.elapsed().as_secs_f64()));
    fs::write(out.join("manifest.txt"), &m.0)?;
    Ok(code)
}

fn stages(cfg: &PipelineConfig, out: &Path, solver: &str, m: &mut Manifest) -> Result<u8> {
    let t = Instant::now();
    let f = encode(&cfg.problem)?;
    let mut buf = Vec::new();
    emit_dimacs(&f, &mut buf)?;
    fs::write(out.join("formula.cnf"), &buf)?;
    buf.clear();
    write_map(&f, &mut buf)?;
    fs::write(out.join("formula.map"), &buf)?;
    m.put("vars", f.num_vars());
    m.put("clauses", f.num_clauses());
    m.put("encode_s", format!("{:.3}", t.elapsed().as_secs_f64()));

    let t = Instant::now();
    let timeout = cfg.solve_timeout.map(Duration::from_secs_f64);
    let assignments = if cfg.enumerate {
        let opts = EnumerateOptions { limit: cfg.limit, timeout, incremental: cfg.incremental, ..Default::default() };
        let e = enumerate_all(&f, solver, &opts)?;
        m.put("enumeration_complete", e.complete);
        e.assignments
    } else {
        let r = solve_formula(&f, solver, timeout)?;
        match (r.status, r.model) {
            (Status::Sat, Some(model)) => vec![decode_model(&model, &class_table(&f))?],
            (Status::Unknown, _) => anyhow::bail!("solver returned unknown"),
            _ => Vec::new(),
        }
    };
    m.put("solve_s", format!("{:.3}", t.elapsed().as_secs_f64()));
    m.put("solutions", assignments.len());
    write_assignment_dir(&out.join("solutions"), &assignments)?;
    if assignments.is_empty() {
        m.put("status", "unsat");
        return Ok(EXIT_UNSAT);
    }
    let chosen = match cfg.realize {
        Which::None => {
            m.put("status", "sat");
            return Ok(EXIT_OK);
        }
        Which::First => 1,
        Which::All => assignments.len(),
    };
    let sym = cfg.problem.symmetry()?;
    let target = cfg.target.or(cfg.problem.imbalance_at_least).unwrap_or(1);
    let mut certified = 0;
    for (i, tau) in assignments.iter().take(chosen).enumerate() {
        let key = format!("item.{:04}", i + 1);
        let stem = out.join("realized").join(format!("sol_{:04}", i + 1));
        let use_sym = cfg.symmetric
            && !sym.is_identity()
            && (tau.is_general_position() || exact_rotation(1, sym.s()).is_some());
        let t = Instant::now();
        let r = match realize_one(tau, use_sym.then_some(&sym), &cfg.localizer, &cfg.collinear, target) {
            Ok(r) => r,
            Err(e) => {
                m.put(&format!("{key}.status"), "error");
                m.put(&format!("{key}.error"), e);
                continue;
            }
        };
        write_realized(&stem, &r)?;
        m.put(&format!("{key}.realize_s"), format!("{:.3}", t.elapsed().as_secs_f64()));
        m.put(&format!("{key}.detail"), r.detail().lines().next().unwrap_or(""));
        let Realized::Certified { exact, floats, .. } = r else {
            m.put(&format!("{key}.status"), "exhausted");
            continue;
        };
        let (v, ok) = verify_report(exact.clone(), tau.is_general_position().then_some(tau))?;
        fs::write(stem.with_extension("verify.txt"), v.key_values())?;
        let st = stats_report(exact.clone(), Some(sym.s()).filter(|&s| s > 1))?;
        fs::write(stem.with_extension("stats.txt"), st.key_values())?;
        for k in ["4-gons", "5-gons", "6-gons", "delta_min", "symmetry"] {
            if let Some(v) = st.get(k) {
                m.put(&format!("{key}.{k}"), v);
            }
        }
        let lines = if tau.is_general_position() { Vec::new() } else { drawn_lines(&exact.orientations()) };
        let svg = plot::render_svg(
            &floats,
            &plot::PlotOptions { lines, guides: use_sym.then_some(sym.s()), labels: true },
        );
        fs::write(stem.with_extension("svg"), svg)?;
        m.put(&format!("{key}.status"), if ok { "certified" } else { "verify_failed" });
        if ok {
            certified += 1;
        }
    }
    m.put("realized", chosen);
    m.put("certified", certified);
    m.put("status", if certified > 0 { "certified" } else { "exhausted" });
    Ok(if certified > 0 { EXIT_OK } else { EXIT_BUDGET })
}
