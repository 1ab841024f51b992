//! Local-search realization of general-position orientation assignments.
//!
//! Each worker repeatedly picks a point (weighted by how many unsatisfied
//! triples it is in), tries a sequence of moves with shrinking radius, and
//! keeps any move that does not increase that point's unsatisfied count.
//! Workers share a top-K leaderboard and restart from it after stagnating.
//!
//! In symmetric mode the free variables are one representative per orbit;
//! the other members are its rotations by `2π/s` about the origin and the
//! center (if any) stays at the origin.
//!
//! RNG: ChaCha8, thread `t` seeded with `seed ^ t`.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::assignment::OrientationAssignment;
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::scalar::rational_from_f64;
use crate::symmetry::SFoldSymmetry;
use crate::verify::{certify, check_combinatorial_symmetry, snap_float_to_rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchParams {
    pub threads: usize,
    pub top_k: usize,
    pub pt_movements: usize,
    pub min_radius: f64,
    pub max_radius: f64,
    pub reset_radius: f64,
    pub restart_threshold: u64,
    pub seed: u64,
    /// Wall-clock budget in seconds.
    pub time_budget: Option<f64>,
    /// Outer iterations per thread.
    pub iteration_budget: Option<u64>,
    /// Recompute `(u, F)` from scratch after every outer iteration and
    /// assert it matches the incremental values.
    pub check_invariants: bool,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            threads: 8,
            top_k: 8,
            pt_movements: 24,
            min_radius: 1e-4,
            max_radius: 0.5,
            reset_radius: 0.05,
            restart_threshold: 2000,
            seed: 0,
            time_budget: Some(60.0),
            iteration_budget: None,
            check_invariants: false,
        }
    }
}

impl SearchParams {
    pub fn validate(&self) -> Result<()> {
        if self.threads == 0 || self.top_k == 0 {
            return Err(Error::InvalidProblem("threads and top_k must be positive".into()));
        }
        if !(self.min_radius > 0.0 && self.min_radius <= self.max_radius) {
            return Err(Error::InvalidProblem("need 0 < min_radius <= max_radius".into()));
        }
        Ok(())
    }
}

/// Samples index `i` with probability proportional to `weights[i] + 1`.
pub fn weighted_sample<R: Rng + ?Sized>(weights: &[u64], rng: &mut R) -> Result<usize> {
    if weights.is_empty() {
        return Err(Error::Empty);
    }
    let total: u64 = weights.iter().map(|w| w + 1).sum();
    let mut r = rng.gen_range(0..total);
    for (i, w) in weights.iter().enumerate() {
        if r <= *w {
            return Ok(i);
        }
        r -= w + 1;
    }
    unreachable!("sample within total weight")
}

/// Dense `n³` table of target signs as `±1.0`; `NaN` on repeated indices so
/// that a product with it never counts as unsatisfied.
#[derive(Clone, Debug)]
pub struct TargetTable {
    n: usize,
    t: Vec<f64>,
}

impl TargetTable {
    pub fn new(tau: &OrientationAssignment) -> Result<Self> {
        if !tau.is_general_position() {
            return Err(Error::CollinearTarget);
        }
        let n = tau.n();
        let mut t = vec![f64::NAN; n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a != b && b != c && a != c {
                        t[(a * n + b) * n + c] = f64::from(tau.get(a, b, c));
                    }
                }
            }
        }
        Ok(TargetTable { n, t })
    }

    #[inline]
    fn row(&self, a: usize, b: usize) -> &[f64] {
        &self.t[(a * self.n + b) * self.n..][..self.n]
    }
}

/// Coordinates relative to one anchor point, split by axis.
#[derive(Clone, Debug, Default)]
struct Rel {
    x: Vec<f64>,
    y: Vec<f64>,
    /// `1.0`, or `NaN` for indices to skip.
    mask: Vec<f64>,
}

impl Rel {
    fn load(&mut self, p: &[Point<f64>], a: usize) {
        self.x.clear();
        self.y.clear();
        self.x.extend(p.iter().map(|q| q.x - p[a].x));
        self.y.extend(p.iter().map(|q| q.y - p[a].y));
    }

    /// Unsatisfied triples `(a, b, c)` with `c > b`; a zero determinant
    /// counts as unsatisfied.
    #[inline]
    fn row_count(&self, tau: &TargetTable, a: usize, b: usize) -> u64 {
        let (bx, by) = (self.x[b], self.y[b]);
        let row = &tau.row(a, b)[b + 1..];
        let (xs, ys) = (&self.x[b + 1..], &self.y[b + 1..]);
        let mut cnt = 0;
        for ((t, x), y) in row.iter().zip(xs).zip(ys) {
            cnt += u64::from((bx * y - by * x) * t <= 0.0);
        }
        cnt
    }

    /// As [`Rel::row_count`], skipping masked `c` and adding a hit to `f[c]`.
    #[inline]
    fn row_attribute(&self, tau: &TargetTable, a: usize, b: usize, f: &mut [u64]) -> u64 {
        let (bx, by) = (self.x[b], self.y[b]);
        let row = &tau.row(a, b)[b + 1..];
        let (xs, ys, ms) = (&self.x[b + 1..], &self.y[b + 1..], &self.mask[b + 1..]);
        let mut cnt = 0;
        for ((((t, x), y), m), fc) in row.iter().zip(xs).zip(ys).zip(ms).zip(&mut f[b + 1..]) {
            let hit = u64::from((bx * y - by * x) * t * m <= 0.0);
            *fc += hit;
            cnt += hit;
        }
        cnt
    }
}

/// Total unsatisfied triples and per-point counts. A zero determinant is
/// always unsatisfied.
pub fn eval(p: &[Point<f64>], tau: &TargetTable) -> (u64, Vec<u64>) {
    let n = tau.n;
    let mut f = vec![0u64; n];
    let mut rel = Rel { mask: vec![1.0; n], ..Default::default() };
    let mut u = 0;
    for a in 0..n {
        rel.load(p, a);
        for b in a + 1..n {
            let hit = rel.row_attribute(tau, a, b, &mut f);
            f[a] += hit;
            f[b] += hit;
            u += hit;
        }
    }
    // row_attribute scans c > b only, so each triple a < b < c is seen once
    (u, f)
}

/// Unsatisfied triples touching point `i`, attributed to each member.
pub fn local_eval(p: &[Point<f64>], tau: &TargetTable, i: usize) -> Vec<u64> {
    let mut f = vec![0u64; tau.n];
    local_eval_set(p, tau, &[i], &mut f, &mut Rel::default());
    f
}

/// Unsatisfied triples meeting `set`, each counted once; `f` receives the
/// per-point attribution. Returns the number of such triples.
fn local_eval_set(p: &[Point<f64>], tau: &TargetTable, set: &[usize], f: &mut [u64], rel: &mut Rel) -> u64 {
    let n = tau.n;
    f.iter_mut().for_each(|v| *v = 0);
    rel.mask.clear();
    rel.mask.resize(n, 1.0);
    let mut u = 0;
    for (pos, &a) in set.iter().enumerate() {
        if pos > 0 {
            rel.mask[set[pos - 1]] = f64::NAN;
        }
        rel.load(p, a);
        for b in 0..n {
            if b == a || rel.mask[b].is_nan() {
                continue;
            }
            let hit = rel.row_attribute(tau, a, b, f);
            f[a] += hit;
            f[b] += hit;
            u += hit;
        }
    }
    u
}

/// Unsatisfied triples containing `i`, stopping once the count exceeds
/// `bound`.
fn count_at_point(p: &[Point<f64>], tau: &TargetTable, i: usize, bound: u64, rel: &mut Rel) -> u64 {
    rel.load(p, i);
    let mut u = 0;
    for b in 0..tau.n {
        if b == i {
            continue;
        }
        u += rel.row_count(tau, i, b);
        if u > bound {
            break;
        }
    }
    u
}

/// Concurrent top-K table of partial solutions.
#[derive(Debug)]
pub struct Leaderboard {
    k: usize,
    entries: Mutex<Vec<(Vec<Point<f64>>, u64)>>,
}

impl Leaderboard {
    pub fn new(k: usize) -> Self {
        Leaderboard { k, entries: Mutex::new(Vec::new()) }
    }

    /// Inserts if the table has room or `u` is no worse than its worst entry.
    pub fn broadcast(&self, p: &[Point<f64>], u: u64) {
        let mut e = self.entries.lock().expect("leaderboard lock");
        if e.len() < self.k || e.last().is_some_and(|w| u <= w.1) {
            let at = e.partition_point(|x| x.1 <= u);
            e.insert(at, (p.to_vec(), u));
            e.truncate(self.k);
        }
    }

    /// Entry sampled with weight `max_u - u` (plus one).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Vec<Point<f64>>> {
        let e = self.entries.lock().expect("leaderboard lock");
        let max = e.iter().map(|x| x.1).max()?;
        let w: Vec<u64> = e.iter().map(|x| max - x.1).collect();
        let i = weighted_sample(&w, rng).ok()?;
        Some(e[i].0.clone())
    }

    pub fn best(&self) -> Option<(Vec<Point<f64>>, u64)> {
        self.entries.lock().expect("leaderboard lock").first().cloned()
    }

    pub fn best_unsat(&self) -> Option<u64> {
        self.entries.lock().expect("leaderboard lock").first().map(|x| x.1)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    pub iterations: u64,
    pub restarts: u64,
    pub certification_failures: u64,
    pub wall: Duration,
}

#[derive(Clone, Debug)]
pub enum RealizeOutcome {
    /// Certified: `exact` has exactly the target orientations.
    Success { points: Vec<Point<f64>>, exact: Vec<Point<BigRational>>, stats: SearchStats },
    /// Budget exhausted; best float configuration and its unsatisfied count.
    Failure { best: Vec<Point<f64>>, unsat: u64, stats: SearchStats },
}

impl RealizeOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, RealizeOutcome::Success { .. })
    }

    pub fn stats(&self) -> &SearchStats {
        match self {
            RealizeOutcome::Success { stats, .. } | RealizeOutcome::Failure { stats, .. } => stats,
        }
    }
}

/// Snaps with denominators `1e6`, then `1e9`, then the exact binary value,
/// returning the first rational set that certifies.
pub fn certify_float(p: &[Point<f64>], tau: &OrientationAssignment) -> Option<Vec<Point<BigRational>>> {
    for den in [1_000_000u64, 1_000_000_000] {
        let q = snap_float_to_rational(p, den);
        if certify(&q, tau).is_ok() {
            return Some(q);
        }
    }
    let q: Vec<Point<BigRational>> =
        p.iter().map(|v| Some(Point::new(rational_from_f64(v.x)?, rational_from_f64(v.y)?))).collect::<Option<_>>()?;
    certify(&q, tau).is_ok().then_some(q)
}

/// Which points move together.
struct Layout {
    n: usize,
    /// Free representatives; each carries its orbit, member `t` being the
    /// rotation by `t` steps.
    orbits: Vec<Vec<usize>>,
    rot: Vec<(f64, f64)>,
    center: Option<usize>,
}

impl Layout {
    fn new(n: usize, sym: Option<&SFoldSymmetry>) -> Self {
        match sym {
            Some(s) if !s.is_identity() => {
                let orbits: Vec<Vec<usize>> = s.orbits().into_iter().filter(|o| Some(o[0]) != s.center()).collect();
                let rot = (0..s.s())
                    .map(|t| {
                        let a = 2.0 * std::f64::consts::PI * t as f64 / s.s() as f64;
                        (a.cos(), a.sin())
                    })
                    .collect();
                Layout { n, orbits, rot, center: s.center() }
            }
            _ => Layout { n, orbits: (0..n).map(|i| vec![i]).collect(), rot: vec![(1.0, 0.0)], center: None },
        }
    }

    /// Places orbit `o` with its representative at `q`.
    fn place(&self, p: &mut [Point<f64>], o: usize, q: Point<f64>) {
        for (t, &idx) in self.orbits[o].iter().enumerate() {
            let (c, s) = self.rot[t];
            p[idx] = Point::new(c * q.x - s * q.y, s * q.x + c * q.y);
        }
    }

    fn random<R: Rng>(&self, rng: &mut R) -> Vec<Point<f64>> {
        let mut p = vec![Point::new(0.0, 0.0); self.n];
        for o in 0..self.orbits.len() {
            let q = Point::new(rng.gen::<f64>(), rng.gen::<f64>());
            self.place(&mut p, o, q);
        }
        if let Some(c) = self.center {
            p[c] = Point::new(0.0, 0.0);
        }
        p
    }

    fn perturb<R: Rng>(&self, base: &[Point<f64>], radius: f64, rng: &mut R) -> Vec<Point<f64>> {
        let mut p = base.to_vec();
        for o in 0..self.orbits.len() {
            let q = sample_disk(base[self.orbits[o][0]], radius, rng);
            self.place(&mut p, o, q);
        }
        p
    }
}

/// Uniform point of the disk `B(c, r)` by rejection from its bounding square.
fn sample_disk<R: Rng>(c: Point<f64>, r: f64, rng: &mut R) -> Point<f64> {
    loop {
        let dx = rng.gen_range(-1.0..=1.0);
        let dy = rng.gen_range(-1.0..=1.0);
        if dx * dx + dy * dy <= 1.0 {
            return Point::new(c.x + r * dx, c.y + r * dy);
        }
    }
}

struct Shared<'a> {
    tau: &'a OrientationAssignment,
    table: TargetTable,
    layout: Layout,
    params: &'a SearchParams,
    board: Leaderboard,
    stop: AtomicBool,
    result: Mutex<Option<(Vec<Point<f64>>, Vec<Point<BigRational>>)>>,
    iterations: AtomicU64,
    restarts: AtomicU64,
    cert_failures: AtomicU64,
    deadline: Option<Instant>,
}

/// Searches for a float pointset realizing `tau`, certified exactly after
/// rational snapping.
pub fn realize(tau: &OrientationAssignment, params: &SearchParams, sym: Option<&SFoldSymmetry>) -> Result<RealizeOutcome> {
    params.validate()?;
    let table = TargetTable::new(tau)?;
    if let Some(s) = sym {
        if s.n() != tau.n() || !check_combinatorial_symmetry(tau, s) {
            return Err(Error::AsymmetricAssignment);
        }
    }
    let start = Instant::now();
    let shared = Shared {
        tau,
        table,
        layout: Layout::new(tau.n(), sym),
        params,
        board: Leaderboard::new(params.top_k),
        stop: AtomicBool::new(false),
        result: Mutex::new(None),
        iterations: AtomicU64::new(0),
        restarts: AtomicU64::new(0),
        cert_failures: AtomicU64::new(0),
        deadline: params.time_budget.map(|s| start + Duration::from_secs_f64(s)),
    };
    if params.threads == 1 {
        worker(&shared, 0);
    } else {
        std::thread::scope(|scope| {
            for t in 0..params.threads {
                let sh = &shared;
                scope.spawn(move || worker(sh, t as u64));
            }
        });
    }
    let stats = SearchStats {
        iterations: shared.iterations.load(Ordering::Relaxed),
        restarts: shared.restarts.load(Ordering::Relaxed),
        certification_failures: shared.cert_failures.load(Ordering::Relaxed),
        wall: start.elapsed(),
    };
    let found = shared.result.lock().expect("result lock").take();
    Ok(match found {
        Some((points, exact)) => RealizeOutcome::Success { points, exact, stats },
        None => {
            let (best, unsat) = shared.board.best().unwrap_or_default();
            RealizeOutcome::Failure { best, unsat, stats }
        }
    })
}

fn worker(sh: &Shared<'_>, t: u64) {
    let params = sh.params;
    let n = sh.table.n;
    let lay = &sh.layout;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ t);
    let mut p = lay.random(&mut rng);
    let (mut u, mut f) = eval(&p, &sh.table);
    sh.board.broadcast(&p, u);
    let mut its_since_check = 0u64;
    let mut its = 0u64;
    let mut fi = vec![0u64; n];
    let mut fi_new = vec![0u64; n];
    let mut q = p.clone();
    let mut rel = Rel::default();
    let orbit_weights = |f: &[u64]| -> Vec<u64> { lay.orbits.iter().map(|o| f[o[0]]).collect() };
    loop {
        if sh.stop.load(Ordering::Relaxed) {
            break;
        }
        if u == 0 {
            if let Some(exact) = certify_float(&p, sh.tau) {
                let mut slot = sh.result.lock().expect("result lock");
                if slot.is_none() {
                    *slot = Some((p.clone(), exact));
                }
                sh.stop.store(true, Ordering::Relaxed);
                break;
            }
            sh.cert_failures.fetch_add(1, Ordering::Relaxed);
            p = lay.perturb(&p, params.min_radius, &mut rng);
            (u, f) = eval(&p, &sh.table);
            continue;
        }
        if sh.deadline.is_some_and(|d| Instant::now() >= d) || params.iteration_budget.is_some_and(|b| its >= b) {
            break;
        }
        its += 1;
        sh.iterations.fetch_add(1, Ordering::Relaxed);
        let o = weighted_sample(&orbit_weights(&f), &mut rng).expect("at least one free orbit");
        let members = &lay.orbits[o];
        let rep = members[0];
        let mut centre = p[rep];
        let mut cur = local_eval_set(&p, &sh.table, members, &mut fi, &mut rel);
        for s in 0..=params.pt_movements {
            let r = params.min_radius.max(params.max_radius / 2f64.powi(s as i32));
            let cand = sample_disk(centre, r, &mut rng);
            q.copy_from_slice(&p);
            lay.place(&mut q, o, cand);
            if count_at_point(&q, &sh.table, rep, fi[rep], &mut rel) <= fi[rep] {
                let new = local_eval_set(&q, &sh.table, members, &mut fi_new, &mut rel);
                std::mem::swap(&mut p, &mut q);
                for j in 0..n {
                    f[j] = f[j] + fi_new[j] - fi[j];
                }
                let improved = fi_new[rep] < fi[rep];
                u = u + new - cur;
                cur = new;
                std::mem::swap(&mut fi, &mut fi_new);
                centre = cand;
                if improved {
                    sh.board.broadcast(&p, u);
                    its_since_check = 0;
                }
            }
            if u == 0 {
                break;
            }
        }
        its_since_check += 1;
        if params.check_invariants {
            let (u2, f2) = eval(&p, &sh.table);
            assert_eq!((u, &f), (u2, &f2), "incremental bookkeeping drifted");
        }
        if its_since_check > params.restart_threshold {
            if let Some(start) = sh.board.sample(&mut rng) {
                p = lay.perturb(&start, params.reset_radius, &mut rng);
                (u, f) = eval(&p, &sh.table);
                sh.restarts.fetch_add(1, Ordering::Relaxed);
            }
            its_since_check = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn random_tau(n: usize, seed: u64) -> (Vec<Point<f64>>, OrientationAssignment) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p: Vec<Point<f64>> = (0..n).map(|_| Point::new(rng.gen(), rng.gen())).collect();
        let tau = OrientationAssignment::from_points(&p);
        (p, tau)
    }

    /// Brute-force: every ordered triple, divided by the 6 orderings.
    fn oracle(p: &[Point<f64>], tau: &OrientationAssignment) -> (u64, Vec<u64>) {
        let n = p.len();
        let mut f = vec![0u64; n];
        let mut u6 = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let o = crate::geom::orient_f64(p[a], p[b], p[c]);
                    if o == 0 || o != tau.get(a, b, c) {
                        u6 += 1;
                        f[a] += 1;
                    }
                }
            }
        }
        (u6 / 6, f.into_iter().map(|v| v / 2).collect())
    }

    #[test]
    fn eval_examples() {
        let tau = OrientationAssignment::from_values(3, vec![1]);
        let t = TargetTable::new(&tau).unwrap();
        let cw = [Point::new(0.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 0.0)];
        assert_eq!(eval(&cw, &t), (1, vec![1, 1, 1]));
        let ccw = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)];
        assert_eq!(eval(&ccw, &t), (0, vec![0, 0, 0]));
        let col = OrientationAssignment::from_values(3, vec![0]);
        assert!(matches!(TargetTable::new(&col), Err(Error::CollinearTarget)));
    }

    #[test]
    fn eval_matches_oracle() {
        let (_, tau) = random_tau(8, 1);
        let t = TargetTable::new(&tau).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let p: Vec<Point<f64>> = (0..8).map(|_| Point::new(rng.gen(), rng.gen())).collect();
            let (u, f) = eval(&p, &t);
            assert_eq!((u, f.clone()), oracle(&p, &tau));
            assert_eq!(f.iter().sum::<u64>(), 3 * u);
            for i in 0..8 {
                let fi = local_eval(&p, &t, i);
                assert_eq!(fi[i], f[i]);
                let mut q = p.clone();
                q[i] = Point::new(rng.gen(), rng.gen());
                let fi2 = local_eval(&q, &t, i);
                let (u2, _) = eval(&q, &t);
                assert_eq!(u2 as i64 - u as i64, fi2[i] as i64 - fi[i] as i64);
            }
        }
    }

    #[test]
    fn weighted_sample_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(weighted_sample(&[], &mut rng).is_err());
        assert_eq!(weighted_sample(&[7], &mut rng).unwrap(), 0);
        let mut hits = [0usize; 2];
        for _ in 0..100_000 {
            hits[weighted_sample(&[0, 3], &mut rng).unwrap()] += 1;
        }
        let p = hits[1] as f64 / 100_000.0;
        assert!((p - 0.8).abs() < 0.01, "{p}");
        let mut hits = [0usize; 4];
        for _ in 0..100_000 {
            hits[weighted_sample(&[0, 0, 0, 0], &mut rng).unwrap()] += 1;
        }
        let chi: f64 = hits.iter().map(|&h| (h as f64 - 25_000.0).powi(2) / 25_000.0).sum();
        // 3 degrees of freedom, p = 0.001
        assert!(chi < 16.27, "{chi}");
    }

    #[test]
    fn leaderboard_keeps_best() {
        let b = Leaderboard::new(2);
        let p = vec![Point::new(0.0, 0.0)];
        b.broadcast(&p, 5);
        b.broadcast(&p, 3);
        b.broadcast(&p, 9);
        b.broadcast(&p, 4);
        assert_eq!(b.best_unsat(), Some(3));
        assert_eq!(b.entries.lock().unwrap().iter().map(|e| e.1).collect::<Vec<_>>(), vec![3, 4]);
    }

    #[test]
    fn realizes_random_instances() {
        for (n, seed) in [(3, 0), (8, 1), (15, 2)] {
            let (_, tau) = random_tau(n, seed + 100);
            let params = SearchParams { threads: 1, seed, check_invariants: true, ..Default::default() };
            match realize(&tau, &params, None).unwrap() {
                RealizeOutcome::Success { exact, .. } => assert!(certify(&exact, &tau).is_ok()),
                RealizeOutcome::Failure { unsat, .. } => panic!("n={n} failed with {unsat}"),
            }
        }
    }

    #[test]
    fn single_thread_is_deterministic() {
        let (_, tau) = random_tau(12, 5);
        let params =
            SearchParams { threads: 1, seed: 42, time_budget: None, iteration_budget: Some(300), ..Default::default() };
        let a = realize(&tau, &params, None).unwrap();
        let b = realize(&tau, &params, None).unwrap();
        let pts = |o: &RealizeOutcome| match o {
            RealizeOutcome::Success { points, .. } => points.clone(),
            RealizeOutcome::Failure { best, .. } => best.clone(),
        };
        assert_eq!(pts(&a), pts(&b));
    }

    #[test]
    fn symmetric_mode_keeps_orbits_rotated() {
        // 8 points with a 4-fold rotation
        let base = [(7, 2), (3, 4)];
        let mut pts = Vec::new();
        for &(x, y) in &base {
            let mut q = (x, y);
            for _ in 0..4 {
                pts.push(Point::new(rat(q.0), rat(q.1)));
                q = (-q.1, q.0);
            }
        }
        let tau = OrientationAssignment::from_points(&pts);
        assert!(tau.is_general_position());
        let sym = SFoldSymmetry::new(8, 4, false).unwrap();
        let params = SearchParams { threads: 1, seed: 3, check_invariants: true, ..Default::default() };
        match realize(&tau, &params, Some(&sym)).unwrap() {
            RealizeOutcome::Success { points, exact, .. } => {
                assert!(certify(&exact, &tau).is_ok());
                for o in sym.orbits() {
                    for (t, &i) in o.iter().enumerate() {
                        let a = 2.0 * std::f64::consts::PI * t as f64 / 4.0;
                        let r = crate::geom::rotate(&points[o[0]], a);
                        assert!((r.x - points[i].x).abs() < 1e-9 && (r.y - points[i].y).abs() < 1e-9);
                    }
                }
            }
            RealizeOutcome::Failure { unsat, .. } => panic!("failed with {unsat}"),
        }
        let asym = random_tau(8, 3).1;
        assert!(matches!(realize(&asym, &params, Some(&sym)), Err(Error::AsymmetricAssignment)));
    }
}
