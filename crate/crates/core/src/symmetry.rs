//! s-fold rotational symmetry on point labels and the induced equivalence
//! classes of orientation literals.
//!
//! Labels are split into consecutive blocks of `s`; each block is one cycle
//! of the permutation `π`, e.g. for `s = 4` on 16 points
//! `π = (1 2 3 4)(5 6 7 8)(9 10 11 12)(13 14 15 16)`. When `s` does not divide
//! `n` the last label may be a fixed point (the rotation center).
//!
//! Indices are 0-based throughout.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combin::{binomial, sort3, triple_rank, triples};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFoldSymmetry {
    n: usize,
    s: usize,
    center: Option<usize>,
    perm: Vec<usize>,
}

impl SFoldSymmetry {
    /// `center` requests a fixed point at the last label; it is only valid
    /// when `n ≡ 1 (mod s)` and `s > 1`.
    pub fn new(n: usize, s: usize, center: bool) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidSymmetry("fold order must be positive".into()));
        }
        if n == 0 {
            return Err(Error::InvalidSymmetry("no points".into()));
        }
        if s == 1 {
            if center {
                return Err(Error::InvalidSymmetry("identity symmetry has no center".into()));
            }
            return Ok(Self::identity(n));
        }
        let body = if center {
            if n % s != 1 {
                return Err(Error::InvalidSymmetry(format!(
                    "a center needs n ≡ 1 (mod s), got n = {n}, s = {s}"
                )));
            }
            n - 1
        } else {
            if n % s != 0 {
                return Err(Error::InvalidSymmetry(format!(
                    "{s} does not divide {n}; only a single center point may be left over"
                )));
            }
            n
        };
        let mut perm: Vec<usize> = (0..n).collect();
        for (i, p) in perm.iter_mut().enumerate().take(body) {
            let block = i / s * s;
            *p = block + (i - block + 1) % s;
        }
        Ok(SFoldSymmetry { n, s, center: center.then_some(n - 1), perm })
    }

    /// Picks the center automatically: present iff `s ∤ n`.
    pub fn auto(n: usize, s: usize) -> Result<Self> {
        Self::new(n, s, s > 1 && n % s != 0)
    }

    pub fn identity(n: usize) -> Self {
        SFoldSymmetry { n, s: 1, center: None, perm: (0..n).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn center(&self) -> Option<usize> {
        self.center
    }

    pub fn is_identity(&self) -> bool {
        self.s == 1
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    /// `π^t(i)`.
    pub fn apply_pow(&self, mut i: usize, t: usize) -> usize {
        for _ in 0..t % self.s {
            i = self.perm[i];
        }
        i
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Cycles of `π`, the center (if any) as a singleton.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for i in 0..self.n {
            if seen[i] {
                continue;
            }
            let mut cyc = vec![i];
            seen[i] = true;
            let mut j = self.perm[i];
            while j != i {
                seen[j] = true;
                cyc.push(j);
                j = self.perm[j];
            }
            out.push(cyc);
        }
        out
    }

    /// Smallest label of the orbit containing `i`.
    pub fn orbit_rep(&self, i: usize) -> usize {
        if Some(i) == self.center {
            i
        } else {
            i / self.s * self.s
        }
    }

    /// Number of full `s`-cycles.
    pub fn layer_count(&self) -> usize {
        (self.n - usize::from(self.center.is_some())) / self.s
    }
}

impl fmt::Display for SFoldSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cyc in self.orbits() {
            let labels: Vec<String> = cyc.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", labels.join(" "))?;
        }
        Ok(())
    }
}

/// Orientation variable family: `A` counterclockwise, `B` clockwise, `C` collinear.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
    C,
}

impl Kind {
    pub fn letter(self) -> char {
        match self {
            Kind::A => 'a',
            Kind::B => 'b',
            Kind::C => 'c',
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// A sorted index triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripleKey(pub [usize; 3]);

impl TripleKey {
    pub fn rank(self) -> usize {
        triple_rank(self.0[0], self.0[1], self.0[2])
    }
}

/// An orientation literal over a sorted triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedLiteral {
    pub kind: Kind,
    pub key: TripleKey,
    pub positive: bool,
}

impl SignedLiteral {
    pub fn negated(self) -> Self {
        SignedLiteral { positive: !self.positive, ..self }
    }
}

/// Sorts `(i, j, k)`; `A`/`B` literals pick up the inversion parity as their
/// polarity, `C` literals stay positive.
pub fn canonicalize(i: usize, j: usize, k: usize, kind: Kind) -> Result<SignedLiteral> {
    if i == j || j == k || i == k {
        return Err(Error::DegenerateTriple(i + 1, j + 1, k + 1));
    }
    let (key, odd) = sort3(i, j, k);
    let positive = kind == Kind::C || !odd;
    Ok(SignedLiteral { kind, key: TripleKey(key), positive })
}

/// Maps a literal through `π`, re-canonicalizing. Polarity is multiplied by the
/// parity of the sort.
pub fn apply_permutation_to_literal(lit: SignedLiteral, sym: &SFoldSymmetry) -> SignedLiteral {
    let [i, j, k] = lit.key.0;
    let img = canonicalize(sym.apply(i), sym.apply(j), sym.apply(k), lit.kind).expect("π is a bijection");
    SignedLiteral { positive: img.positive == lit.positive, ..img }
}

/// Which literal semantics a class table uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Only `A` variables exist; an odd permutation negates.
    GeneralPosition,
    /// `A`, `B` and `C` variables exist; an odd permutation swaps `A` and `B`.
    CollinearAllowed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassStatus {
    Free,
    ForcedTrue,
    ForcedFalse,
    Contradictory,
}

/// Orbit of a literal under `π`, collapsed to one variable.
#[derive(Clone, Debug)]
pub struct LiteralClass {
    /// Members with their polarity relative to the representative.
    pub members: Vec<SignedLiteral>,
    pub representative: (Kind, TripleKey),
    pub status: ClassStatus,
}

/// Equivalence classes for every orientation literal of the requested mode.
#[derive(Clone, Debug)]
pub struct ClassTable {
    mode: Mode,
    n: usize,
    classes: Vec<LiteralClass>,
    /// Indexed by `kind * C(n,3) + rank`: (class id, positive relative to representative).
    lookup: Vec<(u32, bool)>,
}

impl ClassTable {
    pub fn build(sym: &SFoldSymmetry, mode: Mode) -> Self {
        let n = sym.n();
        let m = binomial(n, 3);
        let kinds: &[Kind] = match mode {
            Mode::GeneralPosition => &[Kind::A],
            Mode::CollinearAllowed => &[Kind::A, Kind::B, Kind::C],
        };
        let mut lookup = vec![(u32::MAX, true); kinds.len() * m];
        let mut classes: Vec<LiteralClass> = Vec::new();
        let step = |kind: Kind, key: TripleKey, positive: bool| -> SignedLiteral {
            let [i, j, k] = key.0;
            let (img, odd) = sort3(sym.apply(i), sym.apply(j), sym.apply(k));
            match (mode, kind) {
                (Mode::GeneralPosition, _) | (_, Kind::C) => SignedLiteral {
                    kind,
                    key: TripleKey(img),
                    positive: if kind == Kind::C { positive } else { positive != odd },
                },
                (Mode::CollinearAllowed, _) => {
                    let kind = if odd {
                        if kind == Kind::A {
                            Kind::B
                        } else {
                            Kind::A
                        }
                    } else {
                        kind
                    };
                    SignedLiteral { kind, key: TripleKey(img), positive }
                }
            }
        };
        let mut forced_c: Vec<TripleKey> = Vec::new();
        for &kind in kinds {
            for t in triples(n) {
                let key = TripleKey(t);
                if lookup[kind.index() * m + key.rank()].0 != u32::MAX {
                    continue;
                }
                let start = SignedLiteral { kind, key, positive: true };
                let mut members = vec![start];
                let mut cur = step(kind, key, true);
                while (cur.kind, cur.key) != (start.kind, start.key) {
                    members.push(cur);
                    cur = step(cur.kind, cur.key, cur.positive);
                }
                let self_negating = !cur.positive;
                members.sort();
                members.dedup();
                let rep = *members.iter().min_by_key(|l| (l.kind, l.key)).expect("nonempty");
                // express polarities relative to the representative
                let members: Vec<SignedLiteral> = members
                    .into_iter()
                    .filter(|l| !self_negating || l.positive)
                    .map(|l| SignedLiteral { positive: l.positive == rep.positive, ..l })
                    .collect();
                let mut status = ClassStatus::Free;
                if self_negating {
                    status = ClassStatus::Contradictory;
                }
                if mode == Mode::CollinearAllowed {
                    let has_both = members.iter().any(|l| {
                        l.kind == Kind::A && members.iter().any(|o| o.kind == Kind::B && o.key == l.key)
                    });
                    if has_both {
                        status = ClassStatus::ForcedFalse;
                        forced_c.extend(members.iter().map(|l| l.key));
                    }
                }
                let id = classes.len() as u32;
                for l in &members {
                    lookup[l.kind.index() * m + l.key.rank()] = (id, l.positive);
                }
                classes.push(LiteralClass { members, representative: (rep.kind, rep.key), status });
            }
        }
        for key in forced_c {
            let (id, _) = lookup[Kind::C.index() * m + key.rank()];
            classes[id as usize].status = ClassStatus::ForcedTrue;
        }
        ClassTable { mode, n, classes, lookup }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[LiteralClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_count(&self, kind: Kind) -> usize {
        self.classes.iter().filter(|c| c.representative.0 == kind).count()
    }

    pub fn has_contradiction(&self) -> bool {
        self.classes.iter().any(|c| c.status == ClassStatus::Contradictory)
    }

    /// Class and relative polarity of the orientation literal `kind(i, j, k)`
    /// for an arbitrary ordered triple of distinct indices.
    ///
    /// In general-position mode `B` is read as the negation of `A`; asking for
    /// `C` there is a logic error.
    pub fn lookup(&self, kind: Kind, i: usize, j: usize, k: usize) -> (usize, bool) {
        let (key, odd) = sort3(i, j, k);
        let rank = triple_rank(key[0], key[1], key[2]);
        let m = self.lookup.len() / if self.mode == Mode::GeneralPosition { 1 } else { 3 };
        match self.mode {
            Mode::GeneralPosition => {
                let flip = match kind {
                    Kind::A => odd,
                    Kind::B => !odd,
                    Kind::C => panic!("collinear literal requested in general-position mode"),
                };
                let (id, pos) = self.lookup[rank];
                (id as usize, pos != flip)
            }
            Mode::CollinearAllowed => {
                let kind = match (kind, odd) {
                    (Kind::A, true) => Kind::B,
                    (Kind::B, true) => Kind::A,
                    (k, _) => k,
                };
                let (id, pos) = self.lookup[kind.index() * m + rank];
                (id as usize, pos)
            }
        }
    }

    /// Class of a canonical literal, with polarity folded in.
    pub fn lookup_literal(&self, lit: SignedLiteral) -> (usize, bool) {
        let [i, j, k] = lit.key.0;
        let (id, pos) = self.lookup(lit.kind, i, j, k);
        (id, pos == lit.positive)
    }
}

/// `{π^t(S) : 0 ≤ t < s}` as sorted index sets, deduplicated.
pub fn orbit_of_index_set(set: &[usize], sym: &SFoldSymmetry) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(sym.s());
    let mut cur: Vec<usize> = set.to_vec();
    cur.sort_unstable();
    for _ in 0..sym.s() {
        if !out.contains(&cur) {
            out.push(cur.clone());
        }
        cur = cur.iter().map(|&i| sym.apply(i)).collect();
        cur.sort_unstable();
    }
    out
}

/// Whether `sorted(S)` is lexicographically smallest among its images.
pub fn is_lex_min_in_orbit(set: &[usize], sym: &SFoldSymmetry) -> bool {
    if sym.is_identity() {
        return true;
    }
    let mut base: Vec<usize> = set.to_vec();
    base.sort_unstable();
    let mut cur = base.clone();
    for _ in 1..sym.s() {
        for v in cur.iter_mut() {
            *v = sym.apply(*v);
        }
        let mut sorted = cur.clone();
        sorted.sort_unstable();
        if sorted < base {
            return false;
        }
    }
    true
}

/// Lexicographically smallest image of `S` under the group generated by `π`.
pub fn orbit_min(set: &[usize], sym: &SFoldSymmetry) -> Vec<usize> {
    orbit_of_index_set(set, sym).into_iter().min().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::for_each_subset;
    use std::collections::{BTreeSet, HashMap};

    fn lit(i: usize, j: usize, k: usize) -> SignedLiteral {
        canonicalize(i - 1, j - 1, k - 1, Kind::A).unwrap()
    }

    fn key(i: usize, j: usize, k: usize) -> TripleKey {
        TripleKey([i - 1, j - 1, k - 1])
    }

    fn set1(v: &[usize]) -> Vec<usize> {
        v.iter().map(|i| i - 1).collect()
    }

    #[test]
    fn permutation_matches_cycle_factoring() {
        let sym = SFoldSymmetry::new(16, 4, false).unwrap();
        assert_eq!(sym.to_string(), "(1 2 3 4)(5 6 7 8)(9 10 11 12)(13 14 15 16)");
        let five = SFoldSymmetry::auto(16, 5).unwrap();
        assert_eq!(five.center(), Some(15));
        assert_eq!(five.to_string(), "(1 2 3 4 5)(6 7 8 9 10)(11 12 13 14 15)(16)");
        for i in 0..16 {
            assert_eq!(sym.apply_pow(i, 4), i);
            assert_eq!(five.apply_pow(i, 5), i);
        }
        assert!(SFoldSymmetry::new(16, 3, false).is_err());
        assert!(SFoldSymmetry::new(16, 4, true).is_err());
        assert!(SFoldSymmetry::new(17, 4, true).is_ok());
        assert!(SFoldSymmetry::new(18, 4, true).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(lit(1, 6, 8), SignedLiteral { kind: Kind::A, key: key(1, 6, 8), positive: true });
        assert_eq!(lit(2, 7, 5), SignedLiteral { kind: Kind::A, key: key(2, 5, 7), positive: false });
        assert_eq!(lit(3, 1, 2), SignedLiteral { kind: Kind::A, key: key(1, 2, 3), positive: true });
        assert!(canonicalize(1, 1, 2, Kind::A).is_err());
        let c = canonicalize(6, 0, 4, Kind::C).unwrap();
        assert!(c.positive);
    }

    #[test]
    fn permutation_on_literals() {
        let sym = SFoldSymmetry::new(16, 4, false).unwrap();
        let l = lit(1, 6, 8);
        let img = apply_permutation_to_literal(l, &sym);
        assert_eq!(img, SignedLiteral { kind: Kind::A, key: key(2, 5, 7), positive: false });
        let mut cur = l;
        for _ in 0..4 {
            cur = apply_permutation_to_literal(cur, &sym);
        }
        assert_eq!(cur, l);
        let id = SFoldSymmetry::identity(16);
        assert_eq!(apply_permutation_to_literal(l, &id), l);
    }

    #[test]
    fn class_of_1_6_8() {
        let sym = SFoldSymmetry::new(16, 4, false).unwrap();
        let table = ClassTable::build(&sym, Mode::GeneralPosition);
        let (id, pos) = table.lookup(Kind::A, 0, 5, 7);
        assert!(pos);
        let class = &table.classes()[id];
        assert_eq!(class.representative, (Kind::A, key(1, 6, 8)));
        let members: BTreeSet<_> = class.members.iter().map(|l| (l.key, l.positive)).collect();
        let expected: BTreeSet<_> =
            [(key(1, 6, 8), true), (key(2, 5, 7), false), (key(3, 6, 8), false), (key(4, 5, 7), true)]
                .into_iter()
                .collect();
        assert_eq!(members, expected);
        assert_eq!(table.lookup(Kind::A, 1, 4, 6), (id, false));
        assert_eq!(table.lookup(Kind::A, 1, 6, 4), (id, true));
        assert_eq!(table.lookup(Kind::B, 1, 4, 6), (id, true));
    }

    /// Independent union-find over the literal graph `ℓ ~ π(ℓ)`.
    fn brute_force_class_count(n: usize, s: usize, center: bool) -> (usize, usize) {
        let sym = SFoldSymmetry::new(n, s, center).unwrap();
        let ts = triples(n);
        let index: HashMap<[usize; 3], usize> = ts.iter().enumerate().map(|(r, t)| (*t, r)).collect();
        // nodes: 2*r + polarity bit
        let mut parent: Vec<usize> = (0..2 * ts.len()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (r, t) in ts.iter().enumerate() {
            let img: Vec<usize> = t.iter().map(|&i| sym.apply(i)).collect();
            let mut sorted = img.clone();
            sorted.sort();
            let inversions = (0..3)
                .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
                .filter(|&(a, b)| img[a] > img[b])
                .count();
            let r2 = index[&[sorted[0], sorted[1], sorted[2]]];
            let flip = inversions % 2;
            for pol in 0..2 {
                let a = find(&mut parent, 2 * r + pol);
                let b = find(&mut parent, 2 * r2 + (pol ^ flip));
                parent[a] = b;
            }
        }
        let mut roots = BTreeSet::new();
        let mut contradictory = BTreeSet::new();
        for r in 0..ts.len() {
            let a = find(&mut parent, 2 * r);
            let b = find(&mut parent, 2 * r + 1);
            if a == b {
                contradictory.insert(a);
            }
            roots.insert(a.min(b));
        }
        let classes = roots.len();
        let contradictory_classes = contradictory.len();
        (classes, contradictory_classes)
    }

    #[test]
    fn class_counts_match_union_find() {
        for &(n, s, center) in &[(16, 4, false), (16, 5, true), (16, 3, true), (12, 3, false), (9, 2, true), (16, 1, false)] {
            let sym = SFoldSymmetry::new(n, s, center).unwrap();
            let table = ClassTable::build(&sym, Mode::GeneralPosition);
            let contradictory = table.classes().iter().filter(|c| c.status == ClassStatus::Contradictory).count();
            assert_eq!((table.class_count(Kind::A), contradictory), brute_force_class_count(n, s, center), "n={n} s={s}");
        }
        let t4 = ClassTable::build(&SFoldSymmetry::new(16, 4, false).unwrap(), Mode::GeneralPosition);
        assert_eq!(t4.class_count(Kind::A), 140);
        assert!(!t4.has_contradiction());
        let t5 = ClassTable::build(&SFoldSymmetry::auto(16, 5).unwrap(), Mode::GeneralPosition);
        assert_eq!(t5.class_count(Kind::A), 112);
        let t1 = ClassTable::build(&SFoldSymmetry::identity(16), Mode::GeneralPosition);
        assert_eq!(t1.class_count(Kind::A), 560);
        assert!(t1.classes().iter().all(|c| c.members.len() == 1));
    }

    #[test]
    fn partition_and_involution() {
        let sym = SFoldSymmetry::new(16, 4, false).unwrap();
        let table = ClassTable::build(&sym, Mode::GeneralPosition);
        let mut seen = BTreeSet::new();
        for c in table.classes() {
            for m in &c.members {
                assert!(seen.insert(m.key), "classes overlap");
                let (id, pos) = table.lookup_literal(*m);
                assert!(pos);
                let (nid, npos) = table.lookup_literal(m.negated());
                assert_eq!((nid, npos), (id, false));
            }
        }
        assert_eq!(seen.len(), 560);
    }

    #[test]
    fn three_fold_orbits_are_not_contradictory() {
        let sym = SFoldSymmetry::new(12, 3, false).unwrap();
        let table = ClassTable::build(&sym, Mode::GeneralPosition);
        let (id, pos) = table.lookup(Kind::A, 0, 1, 2);
        assert!(pos);
        assert_eq!(table.classes()[id].members.len(), 1);
        assert_eq!(table.classes()[id].status, ClassStatus::Free);
    }

    #[test]
    fn two_fold_center_triples() {
        // {i, π(i), center} is collinear under a half-turn
        let sym = SFoldSymmetry::new(5, 2, true).unwrap();
        let gp = ClassTable::build(&sym, Mode::GeneralPosition);
        let (id, _) = gp.lookup(Kind::A, 0, 1, 4);
        assert_eq!(gp.classes()[id].status, ClassStatus::Contradictory);
        let col = ClassTable::build(&sym, Mode::CollinearAllowed);
        let (ida, _) = col.lookup(Kind::A, 0, 1, 4);
        let (idb, _) = col.lookup(Kind::B, 0, 1, 4);
        let (idc, _) = col.lookup(Kind::C, 0, 1, 4);
        assert_eq!(ida, idb);
        assert_eq!(col.classes()[ida].status, ClassStatus::ForcedFalse);
        assert_eq!(col.classes()[idc].status, ClassStatus::ForcedTrue);
    }

    #[test]
    fn collinear_classes_swap_kinds() {
        let sym = SFoldSymmetry::new(16, 4, false).unwrap();
        let table = ClassTable::build(&sym, Mode::CollinearAllowed);
        let (a168, _) = table.lookup(Kind::A, 0, 5, 7);
        let (b257, pos) = table.lookup(Kind::B, 1, 4, 6);
        assert_eq!(a168, b257);
        assert!(pos);
        assert_eq!(table.class_count(Kind::A) + table.class_count(Kind::B), 280);
        assert_eq!(table.class_count(Kind::C), 140);
    }

    #[test]
    fn orbit_examples() {
        let sym = SFoldSymmetry::new(16, 4, false).unwrap();
        let orbit = orbit_of_index_set(&set1(&[1, 3, 6, 8, 10, 13]), &sym);
        assert!(orbit.contains(&set1(&[2, 4, 5, 7, 11, 14])));
        assert_eq!(orbit_of_index_set(&set1(&[1, 2, 3, 4]), &sym), vec![set1(&[1, 2, 3, 4])]);
        let id = SFoldSymmetry::identity(16);
        assert_eq!(orbit_of_index_set(&set1(&[1, 3, 6]), &id), vec![set1(&[1, 3, 6])]);
        assert!(is_lex_min_in_orbit(&set1(&[1, 3, 6, 8, 10, 13]), &sym));
        assert!(!is_lex_min_in_orbit(&set1(&[2, 4, 5, 7, 11, 14]), &sym));
        assert!(is_lex_min_in_orbit(&set1(&[2, 4, 5, 7, 11, 14]), &id));
    }

    #[test]
    fn exactly_one_lex_min_per_orbit() {
        let sym = SFoldSymmetry::new(16, 4, false).unwrap();
        let mut orbits: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut reps = 0;
        for_each_subset(16, 6, |s| {
            let m = orbit_of_index_set(s, &sym).into_iter().min().unwrap();
            *orbits.entry(m).or_default() += usize::from(is_lex_min_in_orbit(s, &sym));
            reps += usize::from(is_lex_min_in_orbit(s, &sym));
        });
        assert!(orbits.values().all(|&c| c == 1));
        assert_eq!(reps, orbits.len());
        // Burnside: (8008 + 0 + C(8,3) + 0) / 4
        assert_eq!(reps, 2016);
    }
}
