//! Text formats for pointsets and orientation assignments.
//!
//! Pointset files hold one point per line as `x y`. A coordinate is an
//! integer, `INT/INT`, a decimal float, or `a+b*rt3` for `a + b√3`
//! (either summand may be omitted when zero). Lines starting with `#` are
//! comments.
//!
//! Assignment files hold one `i j k v` line per sorted triple, 1-based.

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use crate::assignment::OrientationAssignment;
use crate::combin::binomial;
use crate::error::ParseError;
use crate::geom::Point;
use crate::quad::QuadRational;

/// A pointset in one of the three numeric regimes.
#[derive(Clone, Debug, PartialEq)]
pub enum PointSet {
    Float(Vec<Point<f64>>),
    Rational(Vec<Point<BigRational>>),
    Quad(Vec<Point<QuadRational>>),
}

impl PointSet {
    pub fn len(&self) -> usize {
        match self {
            PointSet::Float(p) => p.len(),
            PointSet::Rational(p) => p.len(),
            PointSet::Quad(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, PointSet::Float(_))
    }

    pub fn to_f64(&self) -> Vec<Point<f64>> {
        match self {
            PointSet::Float(p) => p.clone(),
            PointSet::Rational(p) => p.iter().map(Point::to_f64).collect(),
            PointSet::Quad(p) => p.iter().map(Point::to_f64).collect(),
        }
    }

    /// Promotes to `Q(√3)` coordinates; `None` for float sets.
    pub fn to_quad(&self) -> Option<Vec<Point<QuadRational>>> {
        match self {
            PointSet::Float(_) => None,
            PointSet::Rational(p) => Some(
                p.iter()
                    .map(|q| {
                        Point::new(
                            QuadRational::from_rational(q.x.clone()),
                            QuadRational::from_rational(q.y.clone()),
                        )
                    })
                    .collect(),
            ),
            PointSet::Quad(p) => Some(p.clone()),
        }
    }

    pub fn orientations(&self) -> OrientationAssignment {
        match self {
            PointSet::Float(p) => OrientationAssignment::from_points(p),
            PointSet::Rational(p) => OrientationAssignment::from_points(p),
            PointSet::Quad(p) => OrientationAssignment::from_points(p),
        }
    }
}

enum Coord {
    Float(f64),
    Rational(BigRational),
    Quad(QuadRational),
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = num_bigint::BigInt::from_str(n).ok()?;
        let d = num_bigint::BigInt::from_str(d).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        Some(BigRational::from_integer(num_bigint::BigInt::from_str(s).ok()?))
    }
}

fn parse_quad(s: &str) -> Option<QuadRational> {
    let body = s.strip_suffix("rt3")?;
    let body = body.strip_suffix('*').unwrap_or(body);
    // split the rational part from the √3 coefficient at the last sign that
    // follows a digit
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1].is_ascii_digit() {
            split = Some(i);
            break;
        }
    }
    let (a_str, b_str) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let a = if a_str.is_empty() { BigRational::zero() } else { parse_rational(a_str)? };
    let b_str = b_str.strip_prefix('+').unwrap_or(b_str);
    let b = match b_str {
        "" => BigRational::from_integer(1.into()),
        "-" => BigRational::from_integer((-1).into()),
        other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
    };
    Some(QuadRational::new(a, b))
}

fn parse_coord(s: &str) -> Option<Coord> {
    if s.contains("rt3") {
        return parse_quad(s).map(Coord::Quad);
    }
    if s.contains(['.', 'e', 'E', 'n', 'N', 'i', 'I']) {
        let v: f64 = s.parse().ok()?;
        return v.is_finite().then_some(Coord::Float(v));
    }
    parse_rational(s).map(Coord::Rational)
}

pub fn parse_pointset(text: &str) -> Result<PointSet, ParseError> {
    let mut coords: Vec<(Coord, Coord)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(ParseError::new(lineno + 1, format!("expected 2 coordinates, found {}", fields.len())));
        }
        let x = parse_coord(fields[0])
            .ok_or_else(|| ParseError::new(lineno + 1, format!("bad coordinate `{}`", fields[0])))?;
        let y = parse_coord(fields[1])
            .ok_or_else(|| ParseError::new(lineno + 1, format!("bad coordinate `{}`", fields[1])))?;
        coords.push((x, y));
    }
    let any_float = coords.iter().any(|(x, y)| matches!(x, Coord::Float(_)) || matches!(y, Coord::Float(_)));
    let any_quad = coords.iter().any(|(x, y)| matches!(x, Coord::Quad(_)) || matches!(y, Coord::Quad(_)));
    if any_float && any_quad {
        return Err(ParseError::new(0, "cannot mix float and rt3 coordinates".into()));
    }
    if any_float {
        let to_f = |c: Coord| match c {
            Coord::Float(v) => v,
            Coord::Rational(r) => crate::scalar::Scalar::to_f64(&r),
            Coord::Quad(_) => unreachable!(),
        };
        return Ok(PointSet::Float(coords.into_iter().map(|(x, y)| Point::new(to_f(x), to_f(y))).collect()));
    }
    if any_quad {
        let to_q = |c: Coord| match c {
            Coord::Quad(q) => q,
            Coord::Rational(r) => QuadRational::from_rational(r),
            Coord::Float(_) => unreachable!(),
        };
        return Ok(PointSet::Quad(coords.into_iter().map(|(x, y)| Point::new(to_q(x), to_q(y))).collect()));
    }
    let to_r = |c: Coord| match c {
        Coord::Rational(r) => r,
        _ => unreachable!(),
    };
    Ok(PointSet::Rational(coords.into_iter().map(|(x, y)| Point::new(to_r(x), to_r(y))).collect()))
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

pub fn format_pointset(points: &PointSet) -> String {
    let mut out = String::new();
    match points {
        PointSet::Float(p) => {
            for q in p {
                let _ = writeln!(out, "{} {}", format_f64(q.x), format_f64(q.y));
            }
        }
        PointSet::Rational(p) => {
            for q in p {
                let _ = writeln!(out, "{} {}", q.x, q.y);
            }
        }
        PointSet::Quad(p) => {
            for q in p {
                let _ = writeln!(out, "{} {}", q.x, q.y);
            }
        }
    }
    out
}

pub fn format_assignment(tau: &OrientationAssignment) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# n {}", tau.n());
    for ([i, j, k], v) in tau.iter() {
        let _ = writeln!(out, "{} {} {} {}", i + 1, j + 1, k + 1, v);
    }
    out
}

/// Parses an assignment file. `n` comes from a `# n <n>` comment when present,
/// otherwise from the largest index; every triple must be listed.
pub fn parse_assignment(text: &str) -> Result<OrientationAssignment, ParseError> {
    let mut declared_n: Option<usize> = None;
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            let mut it = c.split_whitespace();
            if it.next() == Some("n") {
                if let Some(v) = it.next().and_then(|v| v.parse().ok()) {
                    declared_n = Some(v);
                }
            }
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(ParseError::new(lineno + 1, "expected `i j k v`".into()));
        }
        let parse_idx = |s: &str| -> Result<usize, ParseError> {
            match s.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(ParseError::new(lineno + 1, format!("bad index `{s}`"))),
            }
        };
        let (i, j, k) = (parse_idx(f[0])?, parse_idx(f[1])?, parse_idx(f[2])?);
        if i == j || j == k || i == k {
            return Err(ParseError::new(lineno + 1, "degenerate triple".into()));
        }
        let v: i8 = f[3]
            .parse()
            .ok()
            .filter(|v: &i8| (-1..=1).contains(v))
            .ok_or_else(|| ParseError::new(lineno + 1, format!("bad orientation `{}`", f[3])))?;
        entries.push((lineno + 1, i, j, k, v));
    }
    let max_idx = entries.iter().map(|e| e.1.max(e.2).max(e.3) + 1).max().unwrap_or(0);
    let n = declared_n.unwrap_or(max_idx);
    if max_idx > n {
        return Err(ParseError::new(0, format!("index {max_idx} exceeds declared n = {n}")));
    }
    let mut tau = OrientationAssignment::new(n);
    let mut seen = vec![false; binomial(n, 3)];
    for (line, i, j, k, v) in entries {
        let ([a, b, c], _) = crate::combin::sort3(i, j, k);
        let r = crate::combin::triple_rank(a, b, c);
        if seen[r] {
            return Err(ParseError::new(line, "duplicate triple".into()));
        }
        seen[r] = true;
        tau.set(i, j, k, v);
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        let t = crate::combin::triples(n)[missing];
        return Err(ParseError::new(
            0,
            format!("triple ({} {} {}) missing", t[0] + 1, t[1] + 1, t[2] + 1),
        ));
    }
    Ok(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn parses_all_coordinate_forms() {
        let text = "# comment\n-3*rt3 -1\n36/11*rt3 -20/11\n0 961/260\n1/2+-3/4*rt3 rt3\n2-rt3 -rt3\n";
        let ps = parse_pointset(text).unwrap();
        let PointSet::Quad(p) = ps else { panic!("expected quad set") };
        assert_eq!(p[0].x, QuadRational::sqrt3_times(rat(-3)));
        assert_eq!(p[1].x, QuadRational::sqrt3_times(ratio(36, 11)));
        assert_eq!(p[2].y, QuadRational::from_rational(ratio(961, 260)));
        assert_eq!(p[3].x, QuadRational::new(ratio(1, 2), ratio(-3, 4)));
        assert_eq!(p[3].y, QuadRational::sqrt3());
        assert_eq!(p[4].x, QuadRational::new(rat(2), rat(-1)));
        assert_eq!(p[4].y, QuadRational::sqrt3_times(rat(-1)));
        let again = parse_pointset(&format_pointset(&PointSet::Quad(p.clone()))).unwrap();
        assert_eq!(again, PointSet::Quad(p));
    }

    #[test]
    fn rational_and_float_sets() {
        let r = parse_pointset("-30 0\n-7/2 20\n").unwrap();
        assert_eq!(r, PointSet::Rational(vec![Point::new(rat(-30), rat(0)), Point::new(ratio(-7, 2), rat(20))]));
        let f = parse_pointset("0.5 1\n").unwrap();
        assert_eq!(f, PointSet::Float(vec![Point::new(0.5, 1.0)]));
        assert!(parse_pointset("1 2 3\n").is_err());
        assert!(parse_pointset("1 nan\n").is_err());
        assert!(parse_pointset("1/0 2\n").is_err());
        let e = parse_pointset("1 2\n3 x\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn assignment_round_trip_and_errors() {
        let mut t = OrientationAssignment::new(4);
        t.set(0, 1, 2, 1);
        t.set(0, 1, 3, -1);
        t.set(0, 2, 3, 0);
        t.set(1, 2, 3, 1);
        let text = format_assignment(&t);
        assert_eq!(parse_assignment(&text).unwrap(), t);
        assert!(parse_assignment("1 2 3 1\n").is_ok());
        assert!(parse_assignment("1 2 3 1\n1 2 4 1\n").is_err());
        assert!(parse_assignment("1 1 3 1\n").is_err());
        assert!(parse_assignment("1 2 3 2\n").is_err());
    }

    proptest! {
        #[test]
        fn float_format_round_trips(x in proptest::num::f64::NORMAL | proptest::num::f64::ZERO) {
            let s = format_f64(x);
            prop_assert_eq!(s.parse::<f64>().unwrap(), x);
            let ps = parse_pointset(&format!("{s} {s}\n")).unwrap();
            prop_assert_eq!(ps, PointSet::Float(vec![Point::new(x, x)]));
        }
    }
}
