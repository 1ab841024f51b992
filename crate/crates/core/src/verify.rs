//! Exact certification and statistics of pointsets and assignments.

use num_rational::BigRational;

use crate::assignment::OrientationAssignment;
use crate::combin::{for_each_subset, triples};
use crate::error::{Error, Result};
use crate::geom::{orient, Point};
use crate::io::PointSet;
use crate::scalar::{convergent_snap, Scalar};
use crate::symmetry::SFoldSymmetry;

/// A triple whose orientation disagrees with the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub triple: [usize; 3],
    pub expected: i8,
    pub actual: i8,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub violations: Vec<Violation>,
}

impl Certificate {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares every sorted triple's orientation against `tau`.
pub fn certify<T: Scalar>(points: &[Point<T>], tau: &OrientationAssignment) -> Certificate {
    assert_eq!(points.len(), tau.n(), "pointset and assignment sizes differ");
    let violations = tau
        .iter()
        .filter_map(|([i, j, k], expected)| {
            let actual = orient(&points[i], &points[j], &points[k]).value();
            (actual != expected).then_some(Violation { triple: [i, j, k], expected, actual })
        })
        .collect();
    Certificate { violations }
}

/// [`certify`] on an exact pointset; float sets are refused.
pub fn certify_pointset(points: &PointSet, tau: &OrientationAssignment) -> Result<Certificate> {
    if points.len() != tau.n() {
        return Err(Error::Degenerate(format!("{} points but assignment over {}", points.len(), tau.n())));
    }
    match points {
        PointSet::Float(_) => Err(Error::Degenerate("certification needs exact coordinates".into())),
        PointSet::Rational(p) => Ok(certify(p, tau)),
        PointSet::Quad(p) => Ok(certify(p, tau)),
    }
}

/// Per-coordinate continued-fraction snapping.
pub fn snap_float_to_rational(points: &[Point<f64>], max_den: u64) -> Vec<Point<BigRational>> {
    points.iter().map(|p| Point::new(convergent_snap(p.x, max_den), convergent_snap(p.y, max_den))).collect()
}

/// Convexity of the sorted quadruple `i < j < k < l`: an even number of its
/// four sorted triples are counterclockwise.
#[inline]
pub fn quad_convex(tau: &OrientationAssignment, i: usize, j: usize, k: usize, l: usize) -> bool {
    let pos = [tau.get(i, j, k), tau.get(i, j, l), tau.get(i, k, l), tau.get(j, k, l)]
        .iter()
        .filter(|&&v| v > 0)
        .count();
    pos % 2 == 0
}

/// Number of `k`-subsets in convex position, read off an assignment.
pub fn count_kgons_tau(tau: &OrientationAssignment, k: usize) -> Result<u64> {
    if !tau.is_general_position() {
        return Err(Error::GeneralPositionRequired);
    }
    let n = tau.n();
    if k > n {
        return Ok(0);
    }
    if k <= 3 {
        return Ok(crate::combin::binomial(n, k) as u64);
    }
    let idx = |a: usize, b: usize, c: usize, d: usize| ((a * n + b) * n + c) * n + d;
    let mut conv = vec![false; n * n * n * n];
    for_each_subset(n, 4, |q| conv[idx(q[0], q[1], q[2], q[3])] = quad_convex(tau, q[0], q[1], q[2], q[3]));
    let mut count = 0u64;
    let mut set = Vec::with_capacity(k);
    extend(&conv, &idx, n, k, &mut set, &mut count);
    Ok(count)
}

fn extend(
    conv: &[bool],
    idx: &dyn Fn(usize, usize, usize, usize) -> usize,
    n: usize,
    k: usize,
    set: &mut Vec<usize>,
    count: &mut u64,
) {
    if set.len() == k {
        *count += 1;
        return;
    }
    let start = set.last().map_or(0, |&v| v + 1);
    // leave room for the remaining members
    for v in start..=n - (k - set.len()) {
        let ok = set.len() < 3 || {
            let m = set.len();
            let mut ok = true;
            'outer: for a in 0..m {
                for b in a + 1..m {
                    for c in b + 1..m {
                        if !conv[idx(set[a], set[b], set[c], v)] {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            ok
        };
        if ok {
            set.push(v);
            extend(conv, idx, n, k, set, count);
            set.pop();
        }
    }
}

/// [`count_kgons_tau`] on exact orientations of a pointset.
pub fn count_kgons<T: Scalar>(points: &[Point<T>], k: usize) -> Result<u64> {
    count_kgons_tau(&OrientationAssignment::from_points(points), k)
}

/// Smallest imbalance over the lines through two points, with an
/// attaining pair. Points on the line count for neither side.
pub fn min_imbalance_tau(tau: &OrientationAssignment) -> Result<(usize, (usize, usize))> {
    let n = tau.n();
    if n < 2 {
        return Err(Error::Empty);
    }
    let mut best: Option<(usize, (usize, usize))> = None;
    for i in 0..n {
        for j in i + 1..n {
            let (mut left, mut right) = (0usize, 0usize);
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                match tau.get(i, j, k) {
                    1 => left += 1,
                    -1 => right += 1,
                    _ => {}
                }
            }
            let d = left.abs_diff(right);
            if best.is_none_or(|(b, _)| d < b) {
                best = Some((d, (i, j)));
            }
        }
    }
    Ok(best.expect("n >= 2"))
}

pub fn min_imbalance<T: Scalar>(points: &[Point<T>]) -> Result<(usize, (usize, usize))> {
    check_distinct(points)?;
    min_imbalance_tau(&OrientationAssignment::from_points(points))
}

fn check_distinct<T: Scalar>(points: &[Point<T>]) -> Result<()> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(Error::DuplicatePoints(i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// Convex-hull peeling on an assignment. Layers are sorted index sets,
/// outermost first.
pub fn convex_layers_tau(tau: &OrientationAssignment) -> Result<Vec<Vec<usize>>> {
    if !tau.is_general_position() {
        return Err(Error::GeneralPositionRequired);
    }
    let mut rest: Vec<usize> = (0..tau.n()).collect();
    let mut layers = Vec::new();
    while !rest.is_empty() {
        if rest.len() <= 3 {
            layers.push(std::mem::take(&mut rest));
            break;
        }
        let mut on_hull = vec![false; tau.n()];
        for &i in &rest {
            for &j in &rest {
                if i != j && rest.iter().all(|&k| k == i || k == j || tau.get(i, j, k) > 0) {
                    on_hull[i] = true;
                    on_hull[j] = true;
                }
            }
        }
        let (layer, inner): (Vec<usize>, Vec<usize>) = rest.iter().partition(|&&i| on_hull[i]);
        layers.push(layer);
        rest = inner;
    }
    Ok(layers)
}

pub fn convex_layers<T: Scalar>(points: &[Point<T>]) -> Result<Vec<Vec<usize>>> {
    convex_layers_tau(&OrientationAssignment::from_points(points))
}

/// Whether `tau(i, j, k) = tau(π(i), π(j), π(k))` for every triple.
pub fn check_combinatorial_symmetry(tau: &OrientationAssignment, sym: &SFoldSymmetry) -> bool {
    tau.n() == sym.n()
        && triples(tau.n())
            .into_iter()
            .all(|[i, j, k]| tau.get(i, j, k) == tau.get(sym.apply(i), sym.apply(j), sym.apply(k)))
}
