//! Realization of assignments that contain collinear triples, aiming for a
//! large minimum imbalance rather than fidelity to every orientation.
//!
//! The required lines are built into the parameterization: a point is
//! either free (two coordinates), constrained to an already determined line
//! (one parameter) or the intersection of two determined lines. Differential
//! evolution then maximizes the smallest imbalance, and the best candidates
//! are snapped to rationals and certified exactly.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::assignment::OrientationAssignment;
use crate::error::{Error, Result};
use crate::geom::{line_intersection, Point};
use crate::io::PointSet;
use crate::quad::QuadRational;
use crate::scalar::{convergent_snap, ratio, Scalar};
use crate::symmetry::SFoldSymmetry;
use crate::verify::min_imbalance;

/// Maximal collinear index sets of an assignment (only those with at least
/// three points; other pairs span ordinary two-point lines).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineFamily {
    pub n: usize,
    pub lines: Vec<Vec<usize>>,
}

impl LineFamily {
    fn lines_through(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for (l, line) in self.lines.iter().enumerate() {
            for &p in line {
                out[p].push(l);
            }
        }
        out
    }
}

/// Groups the zero triples of `tau` into maximal lines.
pub fn extract_lines(tau: &OrientationAssignment) -> Result<LineFamily> {
    let n = tau.n();
    let mut lines: Vec<Vec<usize>> = Vec::new();
    let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if covered.contains(&(i, j)) {
                continue;
            }
            let mut line = vec![i, j];
            line.extend((0..n).filter(|&k| k != i && k != j && tau.get(i, j, k) == 0));
            if line.len() < 3 {
                continue;
            }
            line.sort_unstable();
            for (x, &a) in line.iter().enumerate() {
                for (y, &b) in line.iter().enumerate().skip(x + 1) {
                    for &c in &line[y + 1..] {
                        if tau.get(a, b, c) != 0 {
                            return Err(Error::InconsistentCollinearity(format!(
                                "{} {} {} lie on a common line but are not collinear",
                                a + 1,
                                b + 1,
                                c + 1
                            )));
                        }
                    }
                    covered.insert((a, b));
                }
            }
            lines.push(line);
        }
    }
    Ok(LineFamily { n, lines })
}

/// How one orbit representative gets its position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Placement {
    /// Fixed at the origin.
    Center,
    /// Two free coordinates.
    Free,
    /// `a + t (b - a)` for one free parameter `t`.
    OnLine { a: usize, b: usize },
    /// Intersection of line `ab` with line `cd`.
    Meet { a: usize, b: usize, c: usize, d: usize },
}

#[derive(Clone, Debug)]
pub struct DependencyPlan {
    pub n: usize,
    /// `(representative, placement)` in resolution order.
    pub steps: Vec<(usize, Placement)>,
    pub sym: SFoldSymmetry,
    /// Number of free parameters.
    pub dims: usize,
    /// `(line, point)` pairs whose collinearity the construction does not
    /// guarantee; they are penalized during search.
    pub residual: Vec<(usize, usize)>,
    /// Two points defining each line.
    pub anchors: Vec<(usize, usize)>,
}

impl DependencyPlan {
    pub fn free_points(&self) -> usize {
        self.steps.iter().filter(|(_, p)| *p == Placement::Free).count()
    }

    pub fn dependent_points(&self) -> usize {
        self.steps.iter().filter(|(_, p)| matches!(p, Placement::Meet { .. })).count()
    }
}

/// Randomized orders tried after the greedy one.
const PLAN_TRIALS: usize = 400;

/// Orders the points so that as many as possible are intersections of
/// lines through earlier points. With a nontrivial symmetry only one
/// representative per orbit is planned; the others are its rotations.
///
/// The greedy order is refined by seeded randomized orders, keeping the
/// plan with the fewest residual incidences, then the fewest parameters.
pub fn plan_dependencies(lines: &LineFamily, sym: Option<&SFoldSymmetry>) -> Result<DependencyPlan> {
    let n = lines.n;
    let sym = sym.cloned().unwrap_or_else(|| SFoldSymmetry::identity(n));
    if sym.n() != n {
        return Err(Error::InvalidSymmetry("symmetry and assignment sizes differ".into()));
    }
    let mut best = plan_once(lines, &sym, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for trial in 0..PLAN_TRIALS {
        if best.residual.is_empty() && best.dims <= 4 {
            break;
        }
        let skip = [0.0, 0.1, 0.3][trial % 3];
        let p = plan_once(lines, &sym, Some((&mut rng, skip)))?;
        if (p.residual.len(), p.dims) < (best.residual.len(), best.dims) {
            best = p;
        }
    }
    Ok(best)
}

/// One planning pass. With `rng`, ties are broken at random and a point
/// that could be a meet is placed with free parameters with probability
/// `skip`.
fn plan_once(lines: &LineFamily, sym: &SFoldSymmetry, mut rng: Option<(&mut ChaCha8Rng, f64)>) -> Result<DependencyPlan> {
    let n = lines.n;
    let through = lines.lines_through();
    let index: HashMap<&[usize], usize> = lines.lines.iter().enumerate().map(|(i, l)| (l.as_slice(), i)).collect();
    let image = |l: usize, t: usize| -> Result<usize> {
        let mut img: Vec<usize> = lines.lines[l].iter().map(|&p| sym.apply_pow(p, t)).collect();
        img.sort_unstable();
        index
            .get(img.as_slice())
            .copied()
            .ok_or_else(|| Error::InvalidSymmetry("line family is not invariant under the symmetry".into()))
    };
    // points of each line in order of determination
    let mut order: Vec<Vec<usize>> = vec![Vec::new(); lines.lines.len()];
    let mut guaranteed: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut done = vec![false; n];
    let mut steps = Vec::new();
    let mut dims = 0;

    let mut place = |rep: usize, own: BTreeSet<usize>, done: &mut Vec<bool>, order: &mut Vec<Vec<usize>>| -> Result<()> {
        let s = if Some(rep) == sym.center() { 1 } else { sym.s() };
        for t in 0..s {
            let q = sym.apply_pow(rep, t);
            for &l in &own {
                guaranteed[q].insert(image(l, t)?);
            }
            done[q] = true;
            for &l in &through[q] {
                order[l].push(q);
            }
        }
        Ok(())
    };

    if let Some(c) = sym.center() {
        steps.push((c, Placement::Center));
        place(c, BTreeSet::new(), &mut done, &mut order)?;
    }
    let reps: Vec<usize> = sym.orbits().into_iter().map(|o| o[0]).filter(|&r| Some(r) != sym.center()).collect();
    loop {
        let mut open: Vec<usize> = reps.iter().copied().filter(|&r| !done[r]).collect();
        if open.is_empty() {
            break;
        }
        let mut skip_meet = false;
        if let Some((g, p)) = rng.as_mut() {
            open.shuffle(*g);
            skip_meet = g.gen_bool(*p);
        }
        // lines through r that already have two determined points
        let ready = |r: usize| -> Vec<usize> { through[r].iter().copied().filter(|&l| order[l].len() >= 2).collect() };
        let meet = open.iter().copied().find(|&r| ready(r).len() >= 2);
        if let Some(r) = meet.filter(|_| !skip_meet || open.len() == 1) {
            let mut ls = ready(r);
            if let Some((g, _)) = rng.as_mut() {
                ls.shuffle(*g);
            }
            let (a, b) = (order[ls[0]][0], order[ls[0]][1]);
            let (c, d) = (order[ls[1]][0], order[ls[1]][1]);
            steps.push((r, Placement::Meet { a, b, c, d }));
            place(r, [ls[0], ls[1]].into(), &mut done, &mut order)?;
            continue;
        }
        if let Some(&r) = open.iter().filter(|&&r| ready(r).is_empty()).min_by_key(|&&r| through[r].len()) {
            steps.push((r, Placement::Free));
            dims += 2;
            place(r, BTreeSet::new(), &mut done, &mut order)?;
            continue;
        }
        let r = *open.iter().find(|&&r| ready(r).len() == 1).unwrap_or(&open[0]);
        let l = ready(r)[0];
        steps.push((r, Placement::OnLine { a: order[l][0], b: order[l][1] }));
        dims += 1;
        place(r, [l].into(), &mut done, &mut order)?;
    }
    let mut residual = Vec::new();
    for (l, pts) in order.iter().enumerate() {
        for &q in pts.iter().skip(2) {
            if !guaranteed[q].contains(&l) {
                residual.push((l, q));
            }
        }
    }
    let anchors = order.iter().map(|o| (o[0], o[1])).collect();
    Ok(DependencyPlan { n, steps, sym: sym.clone(), dims, residual, anchors })
}

/// `(cos, sin)` of `2π t / s` in `Q(√3)`; defined when `s` divides 12.
pub fn exact_rotation(t: usize, s: usize) -> Option<(QuadRational, QuadRational)> {
    if s == 0 || 12 % s != 0 {
        return None;
    }
    let k = (12 / s * t) % 12;
    let half = || QuadRational::from_rational(ratio(1, 2));
    let root = || QuadRational::sqrt3_times(ratio(1, 2));
    let zero = QuadRational::zero;
    let one = || QuadRational::from_rational(ratio(1, 1));
    // cos of multiples of 30°
    let cos = |k: usize| -> QuadRational {
        match k % 12 {
            0 => one(),
            1 | 11 => root(),
            2 | 10 => half(),
            3 | 9 => zero(),
            4 | 8 => -half(),
            5 | 7 => -root(),
            _ => -one(),
        }
    };
    Some((cos(k), cos((k + 9) % 12)))
}

fn rotate_by<T: Scalar>(p: &Point<T>, (c, s): &(T, T)) -> Point<T> {
    Point::new(
        c.clone() * p.x.clone() - s.clone() * p.y.clone(),
        s.clone() * p.x.clone() + c.clone() * p.y.clone(),
    )
}

impl DependencyPlan {
    /// Positions from the free parameters; `None` when two defining lines
    /// are parallel. `rot[t]` is the rotation by `t` steps.
    pub fn resolve<T: Scalar>(&self, x: &[T], rot: &[(T, T)]) -> Option<Vec<Point<T>>> {
        assert_eq!(x.len(), self.dims, "parameter count");
        let mut pos: Vec<Option<Point<T>>> = vec![None; self.n];
        let mut xi = 0;
        for (rep, how) in &self.steps {
            let p = match how {
                Placement::Center => Point::new(T::zero(), T::zero()),
                Placement::Free => {
                    xi += 2;
                    Point::new(x[xi - 2].clone(), x[xi - 1].clone())
                }
                Placement::OnLine { a, b } => {
                    let (a, b) = (pos[*a].as_ref()?, pos[*b].as_ref()?);
                    let t = x[xi].clone();
                    xi += 1;
                    Point::new(
                        a.x.clone() + t.clone() * (b.x.clone() - a.x.clone()),
                        a.y.clone() + t * (b.y.clone() - a.y.clone()),
                    )
                }
                Placement::Meet { a, b, c, d } => {
                    line_intersection(pos[*a].as_ref()?, pos[*b].as_ref()?, pos[*c].as_ref()?, pos[*d].as_ref()?)?
                }
            };
            if *how == Placement::Center {
                pos[*rep] = Some(p);
                continue;
            }
            for (t, r) in rot.iter().enumerate().take(self.sym.s()) {
                pos[self.sym.apply_pow(*rep, t)] = Some(rotate_by(&p, r));
            }
        }
        pos.into_iter().collect()
    }

    fn float_rotations(&self) -> Vec<(f64, f64)> {
        let s = self.sym.s();
        (0..s)
            .map(|t| {
                let a = 2.0 * std::f64::consts::PI * t as f64 / s as f64;
                (a.cos(), a.sin())
            })
            .collect()
    }

    pub fn resolve_f64(&self, x: &[f64]) -> Option<Vec<Point<f64>>> {
        self.resolve(x, &self.float_rotations())
    }
}

/// Side counts of every line (family lines once, other pairs individually)
/// with points within `band` of a line counted as on it.
fn line_imbalances(p: &[Point<f64>], lines: &LineFamily, band: f64) -> Vec<usize> {
    let n = p.len();
    let mut in_family = vec![false; n * n];
    let mut out = Vec::new();
    let side = |i: usize, j: usize| -> usize {
        let (dx, dy) = (p[j].x - p[i].x, p[j].y - p[i].y);
        let len = (dx * dx + dy * dy).sqrt();
        let (mut l, mut r) = (0usize, 0usize);
        for (k, q) in p.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            let d = dx * (q.y - p[i].y) - dy * (q.x - p[i].x);
            if d > band * len {
                l += 1;
            } else if d < -band * len {
                r += 1;
            }
        }
        l.abs_diff(r)
    };
    for line in &lines.lines {
        for &a in line {
            for &b in line {
                in_family[a * n + b] = true;
            }
        }
        out.push(side(line[0], line[1]));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !in_family[i * n + j] {
                out.push(side(i, j));
            }
        }
    }
    out
}

/// Smoothed minimum imbalance of the configuration given by `x`: the
/// smallest line imbalance, plus up to 0.5 for having few lines at that
/// minimum, minus a penalty for unmet collinearities. `-∞` for degenerate
/// candidates.
pub fn imbalance_objective(x: &[f64], plan: &DependencyPlan, lines: &LineFamily) -> f64 {
    let Some(p) = plan.resolve_f64(x) else {
        return f64::NEG_INFINITY;
    };
    score_points(&p, plan, lines)
}

fn score_points(p: &[Point<f64>], plan: &DependencyPlan, lines: &LineFamily) -> f64 {
    if p.iter().any(|q| !q.is_finite()) {
        return f64::NEG_INFINITY;
    }
    let scale = p.iter().map(|q| q.x.abs().max(q.y.abs())).fold(1.0, f64::max);
    let band = 1e-9 * scale;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if (p[i].x - p[j].x).abs() <= band && (p[i].y - p[j].y).abs() <= band {
                return f64::NEG_INFINITY;
            }
        }
    }
    let v = line_imbalances(p, lines, band);
    let Some(&min) = v.iter().min() else {
        return 0.0;
    };
    let at_min = v.iter().filter(|&&d| d == min).count();
    let mut penalty = 0.0;
    for &(l, q) in &plan.residual {
        let (a, b) = plan.anchors[l];
        let (dx, dy) = (p[b].x - p[a].x, p[b].y - p[a].y);
        let len = (dx * dx + dy * dy).sqrt().max(f64::MIN_POSITIVE);
        penalty += (dx * (p[q].y - p[a].y) - dy * (p[q].x - p[a].x)).abs() / len / scale;
    }
    min as f64 + 0.5 * (1.0 - at_min as f64 / v.len() as f64) - 100.0 * penalty
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DeParams {
    pub population_factor: usize,
    pub f_min: f64,
    pub f_max: f64,
    pub crossover: f64,
    pub bound: f64,
    pub seed: u64,
    pub time_budget: Option<f64>,
    pub max_generations: Option<u64>,
    /// Snapping denominators tried in order.
    pub denominators: Vec<u64>,
}

impl Default for DeParams {
    fn default() -> Self {
        DeParams {
            population_factor: 15,
            f_min: 0.5,
            f_max: 1.0,
            crossover: 0.7,
            bound: 10.0,
            seed: 0,
            time_budget: Some(600.0),
            max_generations: None,
            denominators: vec![1_000_000, 10_000_000, 100_000_000, 1_000_000_000],
        }
    }
}

/// Which exact field the certified coordinates live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealizeMode {
    /// No geometric symmetry; rational coordinates.
    Combinatorial,
    /// Exact rotations in `Q(√3)` of rational representatives.
    Sqrt3Lattice,
}

#[derive(Clone, Debug)]
pub struct CollinearOutcome {
    /// Whether the exact imbalance reached the target.
    pub success: bool,
    pub floats: Vec<Point<f64>>,
    /// Best certified exact configuration, if any snapped candidate was
    /// non-degenerate.
    pub exact: Option<PointSet>,
    /// Exact minimum imbalance of `exact`.
    pub delta: Option<usize>,
    /// Whether every family line is exactly collinear in `exact`.
    pub lines_exact: bool,
    pub score: f64,
    pub generations: u64,
    pub wall: Duration,
    pub mode: RealizeMode,
}

/// Exact configuration from snapped parameters.
pub fn snap_to_exact(x: &[f64], plan: &DependencyPlan, max_den: u64) -> Result<PointSet> {
    let q: Vec<BigRational> = x.iter().map(|&v| convergent_snap(v, max_den)).collect();
    let s = plan.sym.s();
    if s == 1 {
        let rot = vec![(ratio(1, 1), ratio(0, 1))];
        let p = plan.resolve(&q, &rot).ok_or_else(|| Error::Degenerate("parallel defining lines after snapping".into()))?;
        return Ok(PointSet::Rational(p));
    }
    let rot: Vec<(QuadRational, QuadRational)> = (0..s)
        .map(|t| exact_rotation(t, s))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidSymmetry(format!("no exact rotation of order {s}")))?;
    let qq: Vec<QuadRational> = q.into_iter().map(QuadRational::from_rational).collect();
    let p = plan.resolve(&qq, &rot).ok_or_else(|| Error::Degenerate("parallel defining lines after snapping".into()))?;
    if p.iter().all(|v| v.x.is_rational() && v.y.is_rational()) {
        Ok(PointSet::Rational(p.into_iter().map(|v| Point::new(v.x.a, v.y.a)).collect()))
    } else {
        Ok(PointSet::Quad(p))
    }
}

/// Exact minimum imbalance and whether all family lines are exactly
/// collinear.
pub fn exact_delta(points: &PointSet, lines: &LineFamily) -> Result<(usize, bool)> {
    let quad = points.to_quad().ok_or(Error::Degenerate("float pointset".into()))?;
    let (d, _) = min_imbalance(&quad)?;
    let tau = points.orientations();
    let ok = lines.lines.iter().all(|l| l.windows(3).all(|w| tau.get(w[0], w[1], w[2]) == 0) && {
        l.iter().skip(2).all(|&c| tau.get(l[0], l[1], c) == 0)
    });
    Ok((d, ok))
}

/// Differential evolution (rand/1/bin, per-generation dither of the
/// mutation factor) for the smoothed imbalance, with exact certification of
/// each new best candidate that reaches `target`.
pub fn optimize_imbalance(plan: &DependencyPlan, lines: &LineFamily, target: usize, params: &DeParams) -> CollinearOutcome {
    let start = Instant::now();
    let mode = if plan.sym.is_identity() { RealizeMode::Combinatorial } else { RealizeMode::Sqrt3Lattice };
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let dims = plan.dims;
    let np = (params.population_factor * dims).max(8);
    let b = params.bound;
    let mut pop: Vec<Vec<f64>> = (0..np).map(|_| (0..dims).map(|_| rng.gen_range(-b..=b)).collect()).collect();
    let mut fit: Vec<f64> = pop.iter().map(|x| imbalance_objective(x, plan, lines)).collect();
    let mut best_exact: Option<(PointSet, usize, bool)> = None;
    let mut best_idx = argmax(&fit);
    let mut tried = f64::NEG_INFINITY;
    let mut generations = 0u64;
    let deadline = params.time_budget.map(|s| start + Duration::from_secs_f64(s));
    let mut trial = vec![0.0; dims];
    loop {
        if fit[best_idx] >= target as f64 && fit[best_idx] > tried {
            tried = fit[best_idx];
            for &den in &params.denominators {
                let Ok(ps) = snap_to_exact(&pop[best_idx], plan, den) else { continue };
                let Ok((d, lines_ok)) = exact_delta(&ps, lines) else { continue };
                if best_exact.as_ref().is_none_or(|e| d > e.1) {
                    best_exact = Some((ps, d, lines_ok));
                }
                if d >= target {
                    break;
                }
            }
        }
        if best_exact.as_ref().is_some_and(|e| e.1 >= target) {
            break;
        }
        if deadline.is_some_and(|d| Instant::now() >= d) || params.max_generations.is_some_and(|g| generations >= g) {
            break;
        }
        if dims == 0 {
            break;
        }
        generations += 1;
        let f = rng.gen_range(params.f_min..=params.f_max);
        for i in 0..np {
            let (r1, r2, r3) = distinct3(np, i, &mut rng);
            let jr = rng.gen_range(0..dims);
            for j in 0..dims {
                trial[j] = if j == jr || rng.gen::<f64>() < params.crossover {
                    (pop[r1][j] + f * (pop[r2][j] - pop[r3][j])).clamp(-b, b)
                } else {
                    pop[i][j]
                };
            }
            let ft = imbalance_objective(&trial, plan, lines);
            if ft >= fit[i] {
                pop[i].copy_from_slice(&trial);
                fit[i] = ft;
            }
        }
        best_idx = argmax(&fit);
    }
    let floats = plan.resolve_f64(&pop[best_idx]).unwrap_or_default();
    if best_exact.is_none() {
        for &den in &params.denominators {
            if let Ok(ps) = snap_to_exact(&pop[best_idx], plan, den) {
                if let Ok((d, ok)) = exact_delta(&ps, lines) {
                    best_exact = Some((ps, d, ok));
                    break;
                }
            }
        }
    }
    let (exact, delta, lines_exact) = match best_exact {
        Some((p, d, ok)) => (Some(p), Some(d), ok),
        None => (None, None, false),
    };
    CollinearOutcome {
        success: delta.is_some_and(|d| d >= target),
        floats,
        exact,
        delta,
        lines_exact,
        score: fit[best_idx],
        generations,
        wall: start.elapsed(),
        mode,
    }
}

fn argmax(v: &[f64]) -> usize {
    (0..v.len()).fold(0, |b, i| if v[i] > v[b] { i } else { b })
}

fn distinct3<R: Rng>(np: usize, i: usize, rng: &mut R) -> (usize, usize, usize) {
    let mut pick = |ex: &[usize]| loop {
        let r = rng.gen_range(0..np);
        if !ex.contains(&r) {
            return r;
        }
    };
    let r1 = pick(&[i]);
    let r2 = pick(&[i, r1]);
    let r3 = pick(&[i, r1, r2]);
    (r1, r2, r3)
}

/// Extracts lines, plans and optimizes. With `sym`, orbit-mates are exact
/// rotations of their representative.
pub fn realize_collinear(
    tau: &OrientationAssignment,
    target: usize,
    params: &DeParams,
    sym: Option<&SFoldSymmetry>,
) -> Result<CollinearOutcome> {
    let lines = extract_lines(tau)?;
    let plan = plan_dependencies(&lines, sym)?;
    if let Some(s) = sym {
        if exact_rotation(1, s.s()).is_none() {
            return Err(Error::InvalidSymmetry(format!("no exact rotation of order {}", s.s())));
        }
    }
    Ok(optimize_imbalance(&plan, &lines, target, params))
}
