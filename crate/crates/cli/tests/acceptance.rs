//! End-to-end acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout. A
//! failing criterion is reported, not fatal; set `ROTSYM_ACCEPTANCE_STRICT=1`
//! to turn any FAIL into a nonzero exit. `ROTSYM_ACCEPTANCE_ONLY=4,6` runs a
//! subset. Realization budgets are scaled to a single core by default; set
//! `ROTSYM_ACCEPTANCE_FULL=1` for 60 s per instance.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotsym::collinear::{extract_lines, realize_collinear, DeParams};
use rotsym::combin::for_each_subset;
use rotsym::encoder::prop2::build_proposition_two_formula;
use rotsym::encoder::{encode, Builder, ProblemSpec, SymmetryBreaking, VarName};
use rotsym::io::parse_pointset;
use rotsym::localizer::{eval, local_eval, realize, RealizeOutcome, SearchParams, TargetTable};
use rotsym::sat::{class_table, decode_model, enumerate_all, enumerate_clauses, solve_formula, EnumerateOptions, Status};
use rotsym::symmetry::{Kind, Mode};
use rotsym::verify::{
    certify, check_combinatorial_symmetry, convex_layers, count_kgons, count_kgons_tau, min_imbalance,
    snap_float_to_rational,
};
use rotsym::{orient, OrientationAssignment, Point, PointSet, SFoldSymmetry};

const SOLVER: &str = env!("CARGO_BIN_EXE_dimacs-solve");
const TABLE_4FOLD: &str = include_str!("data/table_4fold.txt");
const UNBALANCED_21: &str = include_str!("data/unbalanced_21.txt");

type Outcome = Result<String, String>;

fn full() -> bool {
    std::env::var("ROTSYM_ACCEPTANCE_FULL").is_ok_and(|v| v == "1")
}

fn threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get()).min(8)
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn solve(spec: &ProblemSpec) -> Result<(Status, Option<OrientationAssignment>), String> {
    let f = encode(spec).map_err(|e| e.to_string())?;
    let r = solve_formula(&f, SOLVER, None).map_err(|e| e.to_string())?;
    let tau = match &r.model {
        Some(m) => Some(decode_model(m, &class_table(&f)).map_err(|e| e.to_string())?),
        None => None,
    };
    Ok((r.status, tau))
}

fn enumerate(spec: &ProblemSpec, incremental: bool) -> Result<Vec<OrientationAssignment>, String> {
    let f = encode(spec).map_err(|e| e.to_string())?;
    let opts = EnumerateOptions { incremental, ..Default::default() };
    let e = enumerate_all(&f, SOLVER, &opts).map_err(|e| e.to_string())?;
    if !e.complete {
        return Err("enumeration incomplete".into());
    }
    Ok(e.assignments)
}

fn headline(s: usize) -> ProblemSpec {
    ProblemSpec::no_kgon(16, 6).with_symmetry(s, SymmetryBreaking::ConvexLayersAndQuadrant)
}

fn localize(tau: &OrientationAssignment, budget: f64, sym: Option<&SFoldSymmetry>) -> Result<Option<f64>, String> {
    let params = SearchParams { threads: threads(), time_budget: Some(budget), ..Default::default() };
    let t = Instant::now();
    match realize(tau, &params, sym).map_err(|e| e.to_string())? {
        RealizeOutcome::Success { exact, .. } => {
            if certify(&exact, tau).is_ok() {
                Ok(Some(t.elapsed().as_secs_f64()))
            } else {
                Err("success reported but exact certification failed".into())
            }
        }
        RealizeOutcome::Failure { .. } => Ok(None),
    }
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<Point<f64>> {
    loop {
        let p: Vec<Point<f64>> =
            (0..n).map(|_| Point::new(rng.gen_range(-range..=range) as f64, rng.gen_range(-range..=range) as f64)).collect();
        let xs: BTreeSet<i64> = p.iter().map(|q| q.x as i64).collect();
        if xs.len() == n && OrientationAssignment::from_points(&p).is_general_position() {
            return p;
        }
    }
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let f = build_proposition_two_formula();
    let r = solve_formula(&f, SOLVER, Some(Duration::from_secs(60))).map_err(|e| e.to_string())?;
    let wall = t.elapsed().as_secs_f64();
    check(r.status == Status::Unsat && wall < 5.0, format!("status {:?} in {wall:.2}s", r.status))
}

/// Truth value of every variable the axioms mention, read off the points.
fn geometric_model(b: &Builder, p: &[Point<f64>]) -> Result<Vec<bool>, String> {
    let f = b.formula();
    let mut model = vec![false; f.num_vars() + 1];
    let sign = |i: usize, j: usize, k: usize| orient(&p[i], &p[j], &p[k]).value();
    let parity = |q: &[usize; 4]| {
        let [i, j, k, l] = *q;
        [sign(i, j, k), sign(i, j, l), sign(i, k, l), sign(j, k, l)].iter().filter(|&&v| v > 0).count()
    };
    for (id, name) in f.vars.iter() {
        model[id as usize] = match name {
            VarName::Orient { kind: Kind::A, key } => sign(key.0[0], key.0[1], key.0[2]) > 0,
            VarName::Orient { .. } => false,
            VarName::Order(i, j) => p[*i].x < p[*j].x,
            VarName::Conv(q) => convex_position(&[p[q[0]], p[q[1]], p[q[2]], p[q[3]]]),
            VarName::Aux(a) => {
                let (tag, rest) = a.split_at(2);
                let q: Vec<usize> = rest.split('_').map(|x| x.parse::<usize>().unwrap() - 1).collect();
                let [i, j, k, l] = [q[0], q[1], q[2], q[3]];
                match tag {
                    "u_" => (sign(i, j, k) > 0) == (sign(i, j, l) > 0),
                    "v_" => (sign(i, k, l) > 0) == (sign(j, k, l) > 0),
                    _ => return Err(format!("unexpected auxiliary {a}")),
                }
            }
            other => return Err(format!("unexpected variable {other}")),
        };
        if let VarName::Conv(q) = name {
            if model[id as usize] != (parity(q) % 2 == 0) {
                return Err(format!("parity criterion disagrees with geometry on {q:?}"));
            }
        }
    }
    Ok(model)
}

/// Independent hull test: no point inside the triangle of the others.
fn convex_position(q: &[Point<f64>]) -> bool {
    hull_size(q) == q.len()
}

/// Monotone chain hull vertex count for points in general position.
fn hull_size(pts: &[Point<f64>]) -> usize {
    let mut p: Vec<(f64, f64)> = pts.iter().map(|q| (q.x, q.y)).collect();
    p.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut h: Vec<(f64, f64)> = Vec::new();
    for pass in 0..2 {
        let start = h.len();
        let it: Box<dyn Iterator<Item = &(f64, f64)>> = if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &q in it {
            while h.len() >= start + 2 && cross(h[h.len() - 2], h[h.len() - 1], q) <= 0.0 {
                h.pop();
            }
            h.push(q);
        }
        h.pop();
    }
    h.len()
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    for trial in 0..1000 {
        let n = 6 + trial % 3;
        let p = random_points(&mut rng, n, 1000);
        let mut b = Builder::new(SFoldSymmetry::identity(n), Mode::GeneralPosition);
        b.linear_order();
        b.dynamic_ordering();
        b.conv_definitions();
        let model = geometric_model(&b, &p)?;
        let f = b.finish();
        if let Some(c) = f.first_violated(&model) {
            return Err(format!("pointset {trial}: clause {} {:?} violated", c + 1, f.clauses[c]));
        }
        checked += f.num_clauses();
    }
    Ok(format!("1000 pointsets, {checked} clause checks, 0 violations"))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, k, sat) in [(5, 4, false), (4, 4, true), (9, 5, false), (8, 5, true)] {
        let mut spec = ProblemSpec::no_kgon(n, k);
        spec.symmetry_breaking = SymmetryBreaking::LeftToRight;
        let (status, tau) = solve(&spec)?;
        let expect = if sat { Status::Sat } else { Status::Unsat };
        let mut note = format!("n={n} no-{k}-gon {:?}", status);
        ok &= status == expect;
        if let Some(tau) = tau.filter(|_| sat) {
            let took = localize(&tau, 20.0, None)?;
            ok &= took.is_some();
            note.push_str(if took.is_some() { " realized" } else { " not realized" });
        }
        notes.push(note);
    }
    let wall = t.elapsed().as_secs_f64();
    check(ok && wall < 60.0, format!("{}; {wall:.1}s", notes.join(", ")))
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let three = enumerate(&headline(3), true)?.len();
    let four = enumerate(&headline(4), true)?.len();
    let four_again = enumerate(&headline(4), false)?.len();
    let five = enumerate(&headline(5), true)?.len();
    let detail = format!(
        "3-fold {three} (want 0), 4-fold {four} (want 66; re-invocation {four_again}), 5-fold {five} (want 948); {:.1}s",
        t.elapsed().as_secs_f64()
    );
    check(three == 0 && four == 66 && four_again == 66 && five == 948, detail)
}

fn kgon_range(taus: &[OrientationAssignment], k: usize) -> Result<(u64, u64), String> {
    let mut lo = u64::MAX;
    let mut hi = 0;
    for t in taus {
        let c = count_kgons_tau(t, k).map_err(|e| e.to_string())?;
        lo = lo.min(c);
        hi = hi.max(c);
    }
    Ok((lo, hi))
}

fn criterion_5() -> Outcome {
    let four = enumerate(&headline(4), true)?;
    let five = enumerate(&headline(5), true)?;
    let (a4, b4) = kgon_range(&four, 4)?;
    let (a5, b5) = kgon_range(&four, 5)?;
    let (c4, d4) = kgon_range(&five, 4)?;
    let (c5, d5) = kgon_range(&five, 5)?;
    let ok = !four.is_empty()
        && !five.is_empty()
        && (a4, b4) == (924, 924)
        && a5 >= 208
        && b5 <= 320
        && c4 >= 800
        && d4 <= 1185
        && c5 >= 263
        && d5 <= 1038;
    check(
        ok,
        format!(
            "4-fold ({}): 4-gons [{a4},{b4}], 5-gons [{a5},{b5}]; 5-fold ({}): 4-gons [{c4},{d4}], 5-gons [{c5},{d5}]",
            four.len(),
            five.len()
        ),
    )
}

fn yield_of(s: usize, budget: f64) -> Result<(usize, usize), String> {
    let taus = enumerate(&headline(s), true)?;
    let sym = headline(s).symmetry().map_err(|e| e.to_string())?;
    let mut hits = 0;
    for tau in &taus {
        hits += usize::from(localize(tau, budget, Some(&sym))?.is_some());
    }
    Ok((hits, taus.len()))
}

fn criterion_6() -> Outcome {
    let (b4, b5) = if full() { (60.0, 60.0) } else { (1.0, 0.4) };
    let t = Instant::now();
    let (h4, n4) = yield_of(4, b4)?;
    let (h5, n5) = yield_of(5, b5)?;
    check(
        h4 >= 18 && h5 >= 92,
        format!(
            "4-fold {h4}/{n4} certified (want >= 18), 5-fold {h5}/{n5} (want >= 92); budgets {b4}s/{b5}s, {} thread(s), {:.0}s",
            threads(),
            t.elapsed().as_secs_f64()
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, reps, limit) in [(20, 10, 0.5), (40, 4, 10.0), (60, 3, 120.0)] {
        let mut total = 0.0;
        for _ in 0..reps {
            let p: Vec<Point<f64>> = (0..n).map(|_| Point::new(rng.gen(), rng.gen())).collect();
            let tau = OrientationAssignment::from_points(&p);
            match localize(&tau, 2.0 * limit, None)? {
                Some(t) => total += t,
                None => {
                    ok = false;
                    total += 2.0 * limit;
                }
            }
        }
        let mean = total / reps as f64;
        ok &= mean < limit;
        notes.push(format!("n={n} mean {mean:.2}s (< {limit}s)"));
    }
    check(ok, format!("{}; {} thread(s), all successes certified exactly", notes.join(", "), threads()))
}

fn table_5fold() -> Vec<Point<f64>> {
    let rot = |p: (f64, f64), k: usize| {
        let a = 2.0 * std::f64::consts::PI * k as f64 / 5.0;
        Point::new(p.0 * a.cos() - p.1 * a.sin(), p.0 * a.sin() + p.1 * a.cos())
    };
    let mut pts = Vec::new();
    for k in [4, 0, 1, 2, 3] {
        pts.push(rot((-12.0, -17.0), k));
    }
    for base in [(-15.0, 2.0), (-13.0, 0.0)] {
        for k in 0..5 {
            pts.push(rot(base, k));
        }
    }
    pts.push(Point::new(0.0, 0.0));
    pts
}

fn layer_sizes<T: rotsym::Scalar>(p: &[Point<T>]) -> Result<Vec<usize>, String> {
    Ok(convex_layers(p).map_err(|e| e.to_string())?.iter().map(Vec::len).collect())
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let PointSet::Rational(t1) = parse_pointset(TABLE_4FOLD).map_err(|e| e.to_string())? else {
        return Err("4-fold table is not rational".into());
    };
    let tau1 = OrientationAssignment::from_points(&t1);
    let six1 = count_kgons(&t1, 6).map_err(|e| e.to_string())?;
    let layers1 = layer_sizes(&t1)?;
    let sym1 = check_combinatorial_symmetry(&tau1, &SFoldSymmetry::new(16, 4, false).unwrap());
    let ok1 = tau1.is_general_position() && six1 == 0 && layers1 == [4, 4, 4, 4] && sym1;

    // the 5-fold table is irrational; its order type is read off a rational
    // snap, which must agree with the float evaluation
    let f2 = table_5fold();
    let t2: Vec<Point<BigRational>> = snap_float_to_rational(&f2, 1_000_000_000);
    let tau2 = OrientationAssignment::from_points(&t2);
    let agrees = tau2 == OrientationAssignment::from_points(&f2);
    let six2 = count_kgons(&t2, 6).map_err(|e| e.to_string())?;
    let layers2 = layer_sizes(&t2)?;
    let sym2 = check_combinatorial_symmetry(&tau2, &SFoldSymmetry::new(16, 5, true).unwrap());
    let ok2 = agrees && tau2.is_general_position() && six2 == 0 && layers2 == [5, 5, 5, 1] && sym2;

    let PointSet::Quad(t3) = parse_pointset(UNBALANCED_21).map_err(|e| e.to_string())? else {
        return Err("21-point table is not in Q(sqrt3)".into());
    };
    let (delta, _) = min_imbalance(&t3).map_err(|e| e.to_string())?;
    let lines = extract_lines(&OrientationAssignment::from_points(&t3)).map_err(|e| e.to_string())?;
    let ok3 = t3.len() == 21 && delta == 2;
    check(
        ok1 && ok2 && ok3,
        format!(
            "4-fold: 6-gons {six1}, layers {layers1:?}, symmetric {sym1}; 5-fold: 6-gons {six2}, layers {layers2:?}, \
             symmetric {sym2}, snap agrees {agrees}; 21 points: delta {delta}, {} exact lines of >= 3 points; {:.2}s",
            lines.lines.len(),
            t.elapsed().as_secs_f64()
        ),
    )
}

fn unbalanced(n: usize) -> ProblemSpec {
    let mut spec = ProblemSpec::unbalanced(n, 2);
    spec.symmetry_breaking = SymmetryBreaking::LeftToRight;
    spec
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, want) in [(12, Status::Sat), (11, Status::Unsat), (10, Status::Unsat)] {
        let (status, _) = solve(&unbalanced(n))?;
        ok &= status == want;
        notes.push(format!("n={n} {status:?}"));
    }
    check(ok, format!("{}; {:.1}s", notes.join(", "), t.elapsed().as_secs_f64()))
}

fn criterion_10() -> Outcome {
    let t = Instant::now();
    let (_, tau) = solve(&unbalanced(12))?;
    let tau = tau.ok_or("12-point instance not satisfiable")?;
    let params = DeParams { time_budget: Some(600.0), ..Default::default() };
    let out = realize_collinear(&tau, 2, &params, None).map_err(|e| e.to_string())?;
    let exact = out.exact.ok_or("no exact candidate")?;
    let quad = exact.to_quad().ok_or("inexact output")?;
    let (delta, _) = min_imbalance(&quad).map_err(|e| e.to_string())?;
    let same = exact.orientations() == tau;
    check(
        out.success && delta >= 2,
        format!(
            "exact delta {delta}, lines exact {}, same order type as the model {same}; {:.1}s",
            out.lines_exact,
            t.elapsed().as_secs_f64()
        ),
    )
}

/// Sides of the line through `i, j`, counted directly.
fn brute_imbalance(p: &[Point<f64>]) -> usize {
    let mut best = usize::MAX;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let (mut l, mut r) = (0i64, 0i64);
            for (k, q) in p.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                let d = (p[j].x - p[i].x) * (q.y - p[i].y) - (p[j].y - p[i].y) * (q.x - p[i].x);
                if d > 0.0 {
                    l += 1;
                } else if d < 0.0 {
                    r += 1;
                }
            }
            best = best.min(l.abs_diff(r) as usize);
        }
    }
    best
}

fn brute_unsat(p: &[Point<f64>], tau: &OrientationAssignment) -> (u64, Vec<u64>) {
    let n = p.len();
    let mut per = vec![0; n];
    let mut total = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let d = (p[j].x - p[i].x) * (p[k].y - p[i].y) - (p[j].y - p[i].y) * (p[k].x - p[i].x);
                if d * f64::from(tau.get(i, j, k)) <= 0.0 {
                    total += 1;
                    per[i] += 1;
                    per[j] += 1;
                    per[k] += 1;
                }
            }
        }
    }
    (total, per)
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut mismatches = Vec::new();

    for state in 0..500 {
        let n = rng.gen_range(3..=14);
        let target: Vec<Point<f64>> = (0..n).map(|_| Point::new(rng.gen(), rng.gen())).collect();
        let tau = OrientationAssignment::from_points(&target);
        let table = TargetTable::new(&tau).map_err(|e| e.to_string())?;
        let p: Vec<Point<f64>> = (0..n).map(|_| Point::new(rng.gen(), rng.gen())).collect();
        let (u, per) = eval(&p, &table);
        let (bu, bper) = brute_unsat(&p, &tau);
        let i = rng.gen_range(0..n);
        if (u, &per) != (bu, &bper) || local_eval(&p, &table, i)[i] != bper[i] {
            mismatches.push(format!("eval state {state}"));
        }
    }

    for trial in 0..200 {
        let n = 4 + trial % 7;
        let p = random_points(&mut rng, n, 50);
        let tau = OrientationAssignment::from_points(&p);
        for k in 4..=n.min(7) {
            let mut brute = 0u64;
            for_each_subset(n, k, |s| {
                let q: Vec<Point<f64>> = s.iter().map(|&i| p[i]).collect();
                brute += u64::from(hull_size(&q) == k);
            });
            if count_kgons(&p, k).ok() != Some(brute) || count_kgons_tau(&tau, k).ok() != Some(brute) {
                mismatches.push(format!("k-gons n={n} k={k}"));
            }
        }
        // integer grid points, collinear triples allowed
        let g: Vec<Point<f64>> =
            (0..n).map(|_| Point::new(rng.gen_range(0..4) as f64, rng.gen_range(0..4) as f64)).collect();
        let distinct: BTreeSet<(i64, i64)> = g.iter().map(|q| (q.x as i64, q.y as i64)).collect();
        if distinct.len() == n && min_imbalance(&g).map(|x| x.0).ok() != Some(brute_imbalance(&g)) {
            mismatches.push(format!("imbalance n={n}"));
        }
    }

    let mut formulas = 0;
    for trial in 0..40 {
        let vars = rng.gen_range(3..=if trial < 30 { 12 } else { 20 });
        let clauses: Vec<Vec<i32>> = (0..rng.gen_range(1..=3 * vars))
            .map(|_| {
                (0..rng.gen_range(1..=3))
                    .map(|_| {
                        let v = rng.gen_range(1..=vars) as i32;
                        if rng.gen() {
                            v
                        } else {
                            -v
                        }
                    })
                    .collect()
            })
            .collect();
        let brute = (0u32..1 << vars)
            .filter(|m| clauses.iter().all(|c| c.iter().any(|&l| (m >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0))))
            .count();
        let projection: Vec<i32> = (1..=vars as i32).collect();
        for incremental in [true, false] {
            if !incremental && brute > 300 {
                continue;
            }
            let opts = EnumerateOptions { incremental, ..Default::default() };
            let e = enumerate_clauses(vars, &clauses, &projection, None, SOLVER, &opts).map_err(|e| e.to_string())?;
            let distinct: BTreeSet<Vec<bool>> = e.models.iter().map(|m| m[1..=vars].to_vec()).collect();
            if e.models.len() != brute || distinct.len() != brute || !e.complete {
                mismatches.push(format!("enumeration trial {trial} incremental={incremental}"));
            }
        }
        formulas += 1;
    }

    check(
        mismatches.is_empty(),
        format!(
            "500 eval states, 200 k-gon/imbalance sets, {formulas} random formulas; {} mismatches {:?}",
            mismatches.len(),
            mismatches.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn main() {
    let only: Option<BTreeSet<usize>> =
        std::env::var("ROTSYM_ACCEPTANCE_ONLY").ok().map(|v| v.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let strict = std::env::var("ROTSYM_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let criteria: [(usize, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut failed = 0;
    for (id, run) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(format!("panicked: {}", e.downcast_ref::<String>().cloned().unwrap_or_else(|| "?".into())))
        });
        match result {
            Ok(d) => println!("criterion {id}: PASS  {d}"),
            Err(d) => {
                failed += 1;
                println!("criterion {id}: FAIL  {d}");
            }
        }
    }
    if strict && failed > 0 {
        std::process::exit(1);
    }
}
