//! Verification and statistics reports.

use anyhow::Result;
use rotsym::io::PointSet;
use rotsym::scalar::rational_from_f64;
use rotsym::verify::{certify_pointset, check_combinatorial_symmetry, convex_layers_tau, count_kgons_tau, min_imbalance};
use rotsym::{OrientationAssignment, Point, SFoldSymmetry};

/// Ordered `key: value` pairs.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub entries: Vec<(String, String)>,
}

impl Report {
    pub fn push(&mut self, k: impl Into<String>, v: impl ToString) {
        self.entries.push((k.into(), v.to_string()));
    }

    pub fn get(&self, k: &str) -> Option<&str> {
        self.entries.iter().find(|e| e.0 == k).map(|e| e.1.as_str())
    }

    pub fn human(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
    }

    /// Machine-readable form, spaces in keys replaced by underscores.
    pub fn key_values(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{}={}\n", k.replace(' ', "_"), v)).collect()
    }
}

/// Float inputs are read as the exact binary values they denote.
pub fn exact_of(ps: PointSet) -> Result<PointSet> {
    Ok(match ps {
        PointSet::Float(p) => PointSet::Rational(
            p.iter()
                .map(|q| Some(Point::new(rational_from_f64(q.x)?, rational_from_f64(q.y)?)))
                .collect::<Option<_>>()
                .ok_or_else(|| anyhow::anyhow!("non-finite coordinate"))?,
        ),
        other => other,
    })
}

fn regime(ps: &PointSet) -> &'static str {
    match ps {
        PointSet::Float(_) => "float",
        PointSet::Rational(_) => "rational",
        PointSet::Quad(_) => "quadratic",
    }
}

/// Certification against `tau` (or the set's own orientations).
pub fn verify_report(input: PointSet, tau: Option<&OrientationAssignment>) -> Result<(Report, bool)> {
    let mut r = Report::default();
    r.push("n", input.len());
    r.push("regime", regime(&input));
    let ps = exact_of(input)?;
    let own = ps.orientations();
    let tau = tau.unwrap_or(&own);
    if tau.n() != ps.len() {
        anyhow::bail!("assignment has {} points, pointset has {}", tau.n(), ps.len());
    }
    let cert = certify_pointset(&ps, tau)?;
    let ok = cert.is_ok();
    r.push("status", if ok { "ok" } else { "violations" });
    r.push("violations", cert.violations.len());
    for v in cert.violations.iter().take(20) {
        r.push("violation", format!("{:?}", v));
    }
    Ok((r, ok))
}

pub fn stats_report(input: PointSet, sym: Option<usize>) -> Result<Report> {
    let mut r = Report::default();
    r.push("n", input.len());
    r.push("regime", regime(&input));
    let ps = exact_of(input)?;
    let n = ps.len();
    let tau = ps.orientations();
    let gp = tau.is_general_position();
    r.push("general position", gp);
    if gp && n >= 3 {
        for k in 4..=7 {
            let c = count_kgons_tau(&tau, k)?;
            r.push(format!("{k}-gons"), c);
            if k == 6 {
                r.push("no 6-gon", c == 0);
            }
        }
        let layers = convex_layers_tau(&tau)?;
        r.push("layer sizes", layers.iter().map(|l| l.len().to_string()).collect::<Vec<_>>().join(","));
        r.push(
            "layers",
            layers
                .iter()
                .map(|l| format!("{{{}}}", l.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join(" "),
        );
    } else {
        r.push("k-gons", "n/a (not in general position)");
    }
    if n >= 2 {
        let quad = ps.to_quad().expect("exact");
        let (d, (i, j)) = min_imbalance(&quad)?;
        r.push("delta_min", d);
        r.push("delta witness", format!("{} {}", i + 1, j + 1));
    }
    let candidates: Vec<usize> = match sym {
        Some(s) => vec![s],
        None => (2..=6).collect(),
    };
    let held: Vec<String> = candidates
        .into_iter()
        .filter(|&s| SFoldSymmetry::auto(n, s).is_ok_and(|g| check_combinatorial_symmetry(&tau, &g)))
        .map(|s| s.to_string())
        .collect();
    r.push("symmetry", if held.is_empty() { "none".to_string() } else { held.join(",") });
    Ok(r)
}
