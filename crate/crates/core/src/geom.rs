//! Points, triple orientations and plane rotations.

use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }
}

impl<T: Scalar> Point<T> {
    pub fn to_f64(&self) -> Point<f64> {
        Point::new(self.x.to_f64(), self.y.to_f64())
    }
}

impl Point<f64> {
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Sign of a triple: counterclockwise, collinear or clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(i8)]
pub enum Orientation {
    Clockwise = -1,
    Collinear = 0,
    CounterClockwise = 1,
}

impl Orientation {
    pub fn from_sign(s: i8) -> Self {
        match s.signum() {
            1 => Orientation::CounterClockwise,
            -1 => Orientation::Clockwise,
            _ => Orientation::Collinear,
        }
    }

    pub fn value(self) -> i8 {
        self as i8
    }
}

impl Neg for Orientation {
    type Output = Orientation;
    fn neg(self) -> Orientation {
        Orientation::from_sign(-self.value())
    }
}

/// Twice the signed area of `pqr`: `(q−p) × (r−p)`.
pub fn det<T: Scalar>(p: &Point<T>, q: &Point<T>, r: &Point<T>) -> T {
    let ux = q.x.clone() - p.x.clone();
    let uy = q.y.clone() - p.y.clone();
    let vx = r.x.clone() - p.x.clone();
    let vy = r.y.clone() - p.y.clone();
    ux * vy - uy * vx
}

/// Orientation of the ordered triple `(p, q, r)`.
pub fn orient<T: Scalar>(p: &Point<T>, q: &Point<T>, r: &Point<T>) -> Orientation {
    Orientation::from_sign(det(p, q, r).sign())
}

/// Float orientation without going through the generic path; used in hot loops.
#[inline]
pub fn orient_f64(p: Point<f64>, q: Point<f64>, r: Point<f64>) -> i8 {
    let d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    if d > 0.0 {
        1
    } else if d < 0.0 {
        -1
    } else {
        0
    }
}

impl Copy for Point<f64> {}

/// Rotation about the origin by `angle` radians.
pub fn rotate(p: &Point<f64>, angle: f64) -> Point<f64> {
    let (s, c) = angle.sin_cos();
    Point::new(p.x * c - p.y * s, p.x * s + p.y * c)
}

/// Intersection of line `ab` with line `cd`; `None` when parallel.
pub fn line_intersection<T: Scalar>(
    a: &Point<T>,
    b: &Point<T>,
    c: &Point<T>,
    d: &Point<T>,
) -> Option<Point<T>> {
    let rx = b.x.clone() - a.x.clone();
    let ry = b.y.clone() - a.y.clone();
    let sx = d.x.clone() - c.x.clone();
    let sy = d.y.clone() - c.y.clone();
    let denom = rx.clone() * sy.clone() - ry.clone() * sx.clone();
    if denom.sign() == 0 {
        return None;
    }
    let qpx = c.x.clone() - a.x.clone();
    let qpy = c.y.clone() - a.y.clone();
    let t = (qpx * sy - qpy * sx) / denom;
    Some(Point::new(a.x.clone() + t.clone() * rx, a.y.clone() + t * ry))
}
