//! Orientation assignments: the combinatorial abstraction of a pointset.

use crate::combin::{binomial, sort3, triple_rank, triples};
use crate::geom::{orient, Point};
use crate::scalar::Scalar;

/// Map from every sorted index triple to an orientation in `{-1, 0, +1}`.
///
/// Indices are 0-based; files and variable names use 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientationAssignment {
    n: usize,
    values: Vec<i8>,
}

impl OrientationAssignment {
    pub fn new(n: usize) -> Self {
        OrientationAssignment { n, values: vec![0; binomial(n, 3)] }
    }

    pub fn from_values(n: usize, values: Vec<i8>) -> Self {
        assert_eq!(values.len(), binomial(n, 3), "value count must be C(n,3)");
        OrientationAssignment { n, values }
    }

    /// Reads the assignment off a pointset.
    pub fn from_points<T: Scalar>(points: &[Point<T>]) -> Self {
        let n = points.len();
        let values = triples(n)
            .into_iter()
            .map(|[i, j, k]| orient(&points[i], &points[j], &points[k]).value())
            .collect();
        OrientationAssignment { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// Orientation of an arbitrary ordered triple of distinct indices.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> i8 {
        let ([a, b, c], odd) = sort3(i, j, k);
        let v = self.values[triple_rank(a, b, c)];
        if odd {
            -v
        } else {
            v
        }
    }

    /// Sets the orientation of an ordered triple (stored in sorted form).
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: i8) {
        let ([a, b, c], odd) = sort3(i, j, k);
        self.values[triple_rank(a, b, c)] = if odd { -v } else { v };
    }

    pub fn is_general_position(&self) -> bool {
        self.values.iter().all(|&v| v != 0)
    }

    /// Iterates `(i, j, k, value)` over sorted triples.
    pub fn iter(&self) -> impl Iterator<Item = ([usize; 3], i8)> + '_ {
        triples(self.n).into_iter().zip(self.values.iter().copied())
    }

    /// The assignment after relabeling point `i` as `perm[i]`:
    /// `result(perm[i], perm[j], perm[k]) = self(i, j, k)`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut out = OrientationAssignment::new(self.n);
        for ([i, j, k], v) in self.iter() {
            out.set(perm[i], perm[j], perm[k], v);
        }
        out
    }

    /// Mirror image (all orientations negated).
    pub fn mirrored(&self) -> Self {
        OrientationAssignment { n: self.n, values: self.values.iter().map(|v| -v).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn get_respects_parity() {
        let pts: Vec<_> = [(0, 0), (4, 0), (0, 4), (1, 1)]
            .iter()
            .map(|&(x, y)| Point::new(rat(x), rat(y)))
            .collect();
        let t = OrientationAssignment::from_points(&pts);
        assert_eq!(t.get(0, 1, 2), 1);
        assert_eq!(t.get(1, 0, 2), -1);
        assert_eq!(t.get(2, 0, 1), 1);
        assert!(t.is_general_position());
        let perm = [1, 0, 2, 3];
        let r = t.relabel(&perm);
        assert_eq!(r.get(1, 0, 2), t.get(0, 1, 2));
    }
}
