//! CNF encodings of order-type problems over orientation class variables.
//!
//! Variable layout: orientation class representatives occupy ids `1..=m`
//! (in [`ClassTable`] order), followed by one ordering variable per unordered
//! pair, then conv, counter and auxiliary variables as the families need them.

pub mod dimacs;
pub mod prop2;
mod vars;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combin::{binomial, for_each_subset, triples};
use crate::error::{Error, Result};
use crate::symmetry::{is_lex_min_in_orbit, orbit_min, ClassStatus, ClassTable, Kind, Mode, SFoldSymmetry};

pub use vars::{VarName, VarTable};

/// Clause family, used for the per-family breakdown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Contradiction,
    ForcedClass,
    LinearOrder,
    DynamicOrdering,
    ExactlyOne,
    Collinearity,
    ConvDefinition,
    NoKGon,
    ImbalanceCounter,
    ImbalanceForbid,
    ConvexLayers,
    Quadrant,
    LeftToRight,
    CcNegation,
    Blocking,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::Contradiction => "contradiction",
            Family::ForcedClass => "forced-class",
            Family::LinearOrder => "linear-order",
            Family::DynamicOrdering => "dynamic-ordering",
            Family::ExactlyOne => "exactly-one",
            Family::Collinearity => "collinearity",
            Family::ConvDefinition => "conv-definition",
            Family::NoKGon => "no-k-gon",
            Family::ImbalanceCounter => "imbalance-counter",
            Family::ImbalanceForbid => "imbalance-forbid",
            Family::ConvexLayers => "convex-layers",
            Family::Quadrant => "quadrant",
            Family::LeftToRight => "left-to-right",
            Family::CcNegation => "cc-negation",
            Family::Blocking => "blocking",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryBreaking {
    #[default]
    None,
    ConvexLayersAndQuadrant,
    /// Layer clauses only.
    ConvexLayers,
    /// Without an imposed rotation: points labeled left to right.
    LeftToRight,
    /// Without an imposed rotation: point 1 leftmost, the others sorted
    /// counterclockwise around it.
    Angular,
}

fn default_s() -> usize {
    1
}

fn default_mode() -> Mode {
    Mode::GeneralPosition
}

fn default_true() -> bool {
    true
}

/// A problem instance, as read from a config file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub n: usize,
    #[serde(default = "default_s")]
    pub s: usize,
    /// Fixed center point; `None` picks it from `n mod s`.
    #[serde(default)]
    pub center: Option<bool>,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default)]
    pub no_kgon: Option<usize>,
    #[serde(default)]
    pub imbalance_at_least: Option<usize>,
    #[serde(default)]
    pub symmetry_breaking: SymmetryBreaking,
    /// Add the center to the innermost layer clauses.
    #[serde(default = "default_true")]
    pub center_layer: bool,
    /// One conv variable per quadruple orbit instead of per quadruple.
    #[serde(default = "default_true")]
    pub conv_orbits: bool,
}

impl ProblemSpec {
    pub fn new(n: usize) -> Self {
        ProblemSpec {
            n,
            s: 1,
            center: None,
            mode: Mode::GeneralPosition,
            no_kgon: None,
            imbalance_at_least: None,
            symmetry_breaking: SymmetryBreaking::None,
            center_layer: true,
            conv_orbits: true,
        }
    }

    pub fn no_kgon(n: usize, k: usize) -> Self {
        ProblemSpec { no_kgon: Some(k), ..Self::new(n) }
    }

    pub fn unbalanced(n: usize, c: usize) -> Self {
        ProblemSpec { mode: Mode::CollinearAllowed, imbalance_at_least: Some(c), ..Self::new(n) }
    }

    pub fn with_symmetry(mut self, s: usize, breaking: SymmetryBreaking) -> Self {
        self.s = s;
        self.symmetry_breaking = breaking;
        self
    }

    pub fn symmetry(&self) -> Result<SFoldSymmetry> {
        match self.center {
            Some(c) => SFoldSymmetry::new(self.n, self.s, c),
            None => SFoldSymmetry::auto(self.n, self.s),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::InvalidProblem("need at least 3 points".into()));
        }
        if let Some(k) = self.no_kgon {
            if self.mode != Mode::GeneralPosition {
                return Err(Error::InvalidProblem("no_kgon requires general_position mode".into()));
            }
            if k < 4 {
                return Err(Error::InvalidProblem("no_kgon needs k >= 4".into()));
            }
        }
        if self.imbalance_at_least.is_some() && self.mode != Mode::CollinearAllowed {
            return Err(Error::InvalidProblem("imbalance_at_least requires collinear_allowed mode".into()));
        }
        self.symmetry()?;
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: ProblemSpec =
            toml::from_str(text).map_err(|e| Error::InvalidProblem(format!("config: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }
}

/// Problem and symmetry the formula was built for.
#[derive(Clone, Debug)]
pub struct FormulaMeta {
    pub n: usize,
    pub sym: SFoldSymmetry,
    pub mode: Mode,
    pub description: String,
    /// Number of orientation class variables (ids `1..=orient_vars`).
    pub orient_vars: usize,
}

#[derive(Clone, Debug)]
pub struct CnfFormula {
    pub vars: VarTable,
    pub clauses: Vec<Vec<i32>>,
    pub families: BTreeMap<Family, usize>,
    pub meta: FormulaMeta,
    /// Set when an empty clause was emitted on purpose.
    pub trivially_unsat: bool,
}

impl CnfFormula {
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn count(&self, family: Family) -> usize {
        self.families.get(&family).copied().unwrap_or(0)
    }

    pub fn add_clause(&mut self, family: Family, clause: Vec<i32>) {
        debug_assert!(clause.iter().all(|l| *l != 0 && l.unsigned_abs() as usize <= self.vars.len()));
        *self.families.entry(family).or_default() += 1;
        self.clauses.push(clause);
    }

    /// Ids of the orientation class variables.
    pub fn orientation_vars(&self) -> Vec<i32> {
        (1..=self.meta.orient_vars as i32).collect()
    }

    /// `model[id]` is the value of variable `id`; index 0 is ignored.
    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        self.first_violated(model).is_none()
    }

    pub fn first_violated(&self, model: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|c| !c.iter().any(|&l| model[l.unsigned_abs() as usize] == (l > 0)))
    }

    /// One line per family plus totals.
    pub fn breakdown(&self) -> String {
        let mut s = String::new();
        for (f, c) in &self.families {
            s.push_str(&format!("{:<18} {c}\n", f.label()));
        }
        s.push_str(&format!("{:<18} {}\n{:<18} {}\n", "variables", self.num_vars(), "clauses", self.num_clauses()));
        s
    }
}

/// A clause term that may already be decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Term {
    True,
    False,
    Lit(i32),
}

impl Term {
    fn neg(self) -> Term {
        match self {
            Term::True => Term::False,
            Term::False => Term::True,
            Term::Lit(l) => Term::Lit(-l),
        }
    }
}

/// Incremental formula construction for one problem.
pub struct Builder {
    n: usize,
    sym: SFoldSymmetry,
    table: ClassTable,
    formula: CnfFormula,
    order_base: i32,
    conv_ids: HashMap<[usize; 4], i32>,
    conv_orbits: bool,
    seen: HashSet<Vec<i32>>,
}

impl Builder {
    /// Allocates orientation and ordering variables and emits the clauses
    /// that class statuses force.
    pub fn new(sym: SFoldSymmetry, mode: Mode) -> Self {
        let n = sym.n();
        let table = ClassTable::build(&sym, mode);
        let mut vars = VarTable::new();
        for c in table.classes() {
            let (kind, key) = c.representative;
            vars.alloc(VarName::Orient { kind, key });
        }
        let orient_vars = vars.len();
        let order_base = vars.len() as i32 + 1;
        for j in 0..n {
            for i in 0..j {
                vars.alloc(VarName::Order(i, j));
            }
        }
        let meta = FormulaMeta { n, sym: sym.clone(), mode, description: String::new(), orient_vars };
        let formula =
            CnfFormula { vars, clauses: Vec::new(), families: BTreeMap::new(), meta, trivially_unsat: false };
        let mut b = Builder {
            n,
            sym,
            table,
            formula,
            order_base,
            conv_ids: HashMap::new(),
            conv_orbits: true,
            seen: HashSet::new(),
        };
        let statuses: Vec<ClassStatus> = b.table.classes().iter().map(|c| c.status).collect();
        for (id, st) in statuses.into_iter().enumerate() {
            let v = id as i32 + 1;
            match st {
                ClassStatus::Free => {}
                ClassStatus::ForcedTrue => b.formula.add_clause(Family::ForcedClass, vec![v]),
                ClassStatus::ForcedFalse => b.formula.add_clause(Family::ForcedClass, vec![-v]),
                ClassStatus::Contradictory => {
                    if !b.formula.trivially_unsat {
                        b.formula.add_clause(Family::Contradiction, Vec::new());
                        b.formula.trivially_unsat = true;
                    }
                }
            }
        }
        b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symmetry(&self) -> &SFoldSymmetry {
        &self.sym
    }

    /// The formula built so far.
    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn classes(&self) -> &ClassTable {
        &self.table
    }

    pub fn set_conv_orbits(&mut self, on: bool) {
        self.conv_orbits = on;
    }

    pub fn set_description(&mut self, d: impl Into<String>) {
        self.formula.meta.description = d.into();
    }

    /// Literal for `kind(i, j, k)` on an ordered triple.
    #[inline]
    pub fn orient(&self, kind: Kind, i: usize, j: usize, k: usize) -> i32 {
        let (id, pos) = self.table.lookup(kind, i, j, k);
        let v = id as i32 + 1;
        if pos {
            v
        } else {
            -v
        }
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize, k: usize) -> i32 {
        self.orient(Kind::A, i, j, k)
    }

    #[inline]
    fn b(&self, i: usize, j: usize, k: usize) -> i32 {
        self.orient(Kind::B, i, j, k)
    }

    #[inline]
    fn c(&self, i: usize, j: usize, k: usize) -> i32 {
        self.orient(Kind::C, i, j, k)
    }

    /// Literal for `≺_{i,j}`.
    #[inline]
    pub fn ord(&self, i: usize, j: usize) -> i32 {
        debug_assert_ne!(i, j);
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let v = self.order_base + (hi * (hi - 1) / 2 + lo) as i32;
        if i < j {
            v
        } else {
            -v
        }
    }

    /// Adds a clause after removing repeated literals; tautologies are
    /// dropped. Returns whether the clause was kept.
    pub fn push(&mut self, family: Family, lits: &[i32]) -> bool {
        let mut c = lits.to_vec();
        c.sort_unstable_by_key(|l| (l.abs(), *l));
        c.dedup();
        if c.windows(2).any(|w| w[0] == -w[1]) {
            return false;
        }
        self.formula.add_clause(family, c);
        true
    }

    /// Like [`push`](Self::push) but skips clauses already emitted through
    /// this method.
    fn push_unique(&mut self, family: Family, lits: &[i32]) -> bool {
        let mut c = lits.to_vec();
        c.sort_unstable_by_key(|l| (l.abs(), *l));
        c.dedup();
        if !self.seen.insert(c.clone()) {
            return false;
        }
        self.push(family, &c)
    }

    fn push_terms(&mut self, family: Family, terms: &[Term]) {
        if terms.contains(&Term::True) {
            return;
        }
        let lits: Vec<i32> = terms
            .iter()
            .filter_map(|t| match t {
                Term::Lit(l) => Some(*l),
                _ => None,
            })
            .collect();
        self.push(family, &lits);
    }

    fn push_equiv(&mut self, family: Family, guard: &[i32], x: i32, y: i32) {
        let mut c: Vec<i32> = guard.to_vec();
        c.extend([-x, y]);
        self.push(family, &c);
        let l = c.len();
        c[l - 2] = x;
        c[l - 1] = -y;
        self.push(family, &c);
    }

    /// `out ↔ (x ↔ y)` as four clauses.
    fn push_xnor(&mut self, family: Family, out: i32, x: i32, y: i32) {
        self.push(family, &[-out, -x, y]);
        self.push(family, &[-out, x, -y]);
        self.push(family, &[out, x, y]);
        self.push(family, &[out, -x, -y]);
    }

    fn aux(&mut self, name: String) -> i32 {
        self.formula.vars.alloc(VarName::Aux(name))
    }

    /// Transitivity of the strict order; totality and asymmetry hold by
    /// construction.
    pub fn linear_order(&mut self) -> usize {
        let before = self.formula.count(Family::LinearOrder);
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let c = [-self.ord(i, j), -self.ord(j, k), self.ord(i, k)];
                    self.push(Family::LinearOrder, &c);
                }
            }
        }
        self.formula.count(Family::LinearOrder) - before
    }

    /// Orientation axioms relative to the solver-chosen order `≺`.
    pub fn dynamic_ordering(&mut self) -> usize {
        let before = self.formula.count(Family::DynamicOrdering);
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                if j == i {
                    continue;
                }
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    for l in 0..n {
                        if l == i || l == j || l == k {
                            continue;
                        }
                        if j.max(k) < l {
                            let c = [
                                -self.ord(i, j),
                                -self.ord(i, k),
                                -self.ord(i, l),
                                self.a(i, j, k),
                                -self.a(i, j, l),
                                self.a(i, k, l),
                            ];
                            self.push(Family::DynamicOrdering, &c);
                        }
                        let c = [
                            -self.ord(i, k),
                            -self.ord(j, k),
                            -self.ord(k, l),
                            self.a(i, j, k),
                            -self.a(i, k, l),
                            self.a(j, k, l),
                        ];
                        self.push(Family::DynamicOrdering, &c);
                    }
                }
            }
        }
        self.formula.count(Family::DynamicOrdering) - before
    }

    /// Exactly one of `a`, `b`, `c` per triple class.
    pub fn exactly_one(&mut self) -> usize {
        let before = self.formula.count(Family::ExactlyOne);
        for [i, j, k] in triples(self.n) {
            let (a, b, c) = (self.a(i, j, k), self.b(i, j, k), self.c(i, j, k));
            self.push_unique(Family::ExactlyOne, &[a, b, c]);
            self.push_unique(Family::ExactlyOne, &[-a, -b]);
            self.push_unique(Family::ExactlyOne, &[-a, -c]);
            self.push_unique(Family::ExactlyOne, &[-b, -c]);
        }
        self.formula.count(Family::ExactlyOne) - before
    }

    /// Transitivity of collinearity and the orientation rules for a point
    /// off a line of three, in both directions of `≺`.
    pub fn collinearity(&mut self) -> usize {
        let before = self.formula.count(Family::Collinearity);
        let f = Family::Collinearity;
        for [i, j, k] in triples(self.n) {
            let cijk = self.c(i, j, k);
            for l in 0..self.n {
                if l == i || l == j || l == k {
                    continue;
                }
                let (cij, cik, cjk) = (self.c(i, j, l), self.c(i, k, l), self.c(j, k, l));
                self.push_equiv(f, &[-cijk], cij, cik);
                self.push_equiv(f, &[-cijk], cik, cjk);
                let (aij, aik, ajk) = (self.a(i, j, l), self.a(i, k, l), self.a(j, k, l));
                let (bik, bjk) = (self.b(i, k, l), self.b(j, k, l));
                for dir in [1, -1] {
                    let g = [-dir * self.ord(i, j), -dir * self.ord(j, k), -cijk];
                    self.push_equiv(f, &g, aij, aik);
                    self.push_equiv(f, &g, aik, ajk);
                    let g = [-dir * self.ord(i, k), -dir * self.ord(k, j), -cijk];
                    self.push_equiv(f, &g, aij, aik);
                    self.push_equiv(f, &g, aij, bjk);
                    let g = [-dir * self.ord(k, i), -dir * self.ord(i, j), -cijk];
                    self.push_equiv(f, &g, aij, bik);
                    self.push_equiv(f, &g, aij, bjk);
                }
            }
        }
        self.formula.count(Family::Collinearity) - before
    }

    /// Conv variable of a 4-subset (any order).
    pub fn conv(&self, quad: &[usize]) -> Option<i32> {
        let key = self.conv_key(quad);
        self.conv_ids.get(&key).copied()
    }

    fn conv_key(&self, quad: &[usize]) -> [usize; 4] {
        let q = if self.conv_orbits { orbit_min(quad, &self.sym) } else { quad.to_vec() };
        let mut key = [q[0], q[1], q[2], q[3]];
        key.sort_unstable();
        key
    }

    /// Defines `conv_{ijkl}` as the parity of the four sorted-triple
    /// orientations: convex iff an even number of them are positive.
    pub fn conv_definitions(&mut self) -> usize {
        let before = self.formula.count(Family::ConvDefinition);
        let mut quads = Vec::new();
        for_each_subset(self.n, 4, |q| {
            if !self.conv_orbits || is_lex_min_in_orbit(q, &self.sym) {
                quads.push([q[0], q[1], q[2], q[3]]);
            }
        });
        for [i, j, k, l] in quads {
            let conv = self.formula.vars.alloc(VarName::Conv([i, j, k, l]));
            self.conv_ids.insert([i, j, k, l], conv);
            let tag = format!("{}_{}_{}_{}", i + 1, j + 1, k + 1, l + 1);
            let u = self.aux(format!("u_{tag}"));
            let v = self.aux(format!("v_{tag}"));
            let (x1, x2, x3, x4) = (self.a(i, j, k), self.a(i, j, l), self.a(i, k, l), self.a(j, k, l));
            self.push_xnor(Family::ConvDefinition, u, x1, x2);
            self.push_xnor(Family::ConvDefinition, v, x3, x4);
            self.push_xnor(Family::ConvDefinition, conv, u, v);
        }
        self.formula.count(Family::ConvDefinition) - before
    }

    /// One clause per orbit of `k`-subsets: not all of its 4-subsets convex.
    pub fn no_kgon(&mut self, k: usize) -> usize {
        if self.conv_ids.is_empty() {
            self.conv_definitions();
        }
        let before = self.formula.count(Family::NoKGon);
        let mut sets = Vec::new();
        for_each_subset(self.n, k, |x| {
            if is_lex_min_in_orbit(x, &self.sym) {
                sets.push(x.to_vec());
            }
        });
        for x in sets {
            let mut clause = Vec::with_capacity(binomial(k, 4));
            for_each_subset(k, 4, |q| {
                let quad: Vec<usize> = q.iter().map(|&t| x[t]).collect();
                clause.push(-self.conv(&quad).expect("conv variable"));
            });
            self.push(Family::NoKGon, &clause);
        }
        self.formula.count(Family::NoKGon) - before
    }

    /// Exact-count indicators over `lits`, built from a sequential counter
    /// whose cells are fully defined (`R_{p,m}` iff at least `m` of the first
    /// `p` literals hold).
    fn exact_counts(&mut self, family: char, pair: (usize, usize), lits: &[i32]) -> Vec<i32> {
        let len = lits.len();
        let fam = Family::ImbalanceCounter;
        // row[m] = R_{p,m}
        let mut prev: Vec<Term> = vec![Term::True];
        for (p, &x) in lits.iter().enumerate() {
            let p = p + 1;
            let get = |row: &Vec<Term>, m: usize| -> Term {
                if m == 0 {
                    Term::True
                } else {
                    row.get(m).copied().unwrap_or(Term::False)
                }
            };
            let mut row = vec![Term::True];
            for m in 1..=p {
                let r = self.formula.vars.alloc(VarName::Ladder { family, pair, prefix: p, level: m });
                let rt = Term::Lit(r);
                let (same, below) = (get(&prev, m), get(&prev, m - 1));
                self.push_terms(fam, &[same.neg(), rt]);
                self.push_terms(fam, &[below.neg(), Term::Lit(-x), rt]);
                self.push_terms(fam, &[rt.neg(), same, below]);
                self.push_terms(fam, &[rt.neg(), same, Term::Lit(x)]);
                row.push(rt);
            }
            prev = row;
        }
        let at_least = |m: usize| -> Term {
            if m == 0 {
                Term::True
            } else {
                prev.get(m).copied().unwrap_or(Term::False)
            }
        };
        let mut out = Vec::with_capacity(len + 1);
        for m in 0..=len {
            let s = self.formula.vars.alloc(VarName::Exact { family, pair, level: m });
            let st = Term::Lit(s);
            let (ge, gt) = (at_least(m), at_least(m + 1));
            self.push_terms(fam, &[st.neg(), ge]);
            self.push_terms(fam, &[st.neg(), gt.neg()]);
            self.push_terms(fam, &[st, ge.neg(), gt]);
            out.push(s);
        }
        out
    }

    /// Every line through two points has at least `c` more points strictly
    /// on one side than on the other.
    pub fn imbalance_at_least(&mut self, c: usize) -> usize {
        let before = self.formula.count(Family::ImbalanceForbid) + self.formula.count(Family::ImbalanceCounter);
        if c == 0 {
            return 0;
        }
        for j in 0..self.n {
            for i in 0..j {
                if !is_lex_min_in_orbit(&[i, j], &self.sym) {
                    continue;
                }
                let others: Vec<usize> = (0..self.n).filter(|&k| k != i && k != j).collect();
                let left: Vec<i32> = others.iter().map(|&k| self.a(i, j, k)).collect();
                let right: Vec<i32> = others.iter().map(|&k| self.b(i, j, k)).collect();
                let s = self.exact_counts('s', (i, j), &left);
                let t = self.exact_counts('t', (i, j), &right);
                for (x, &sx) in s.iter().enumerate() {
                    for (y, &ty) in t.iter().enumerate() {
                        if x.abs_diff(y) < c {
                            self.push(Family::ImbalanceForbid, &[-sx, -ty]);
                        }
                    }
                }
            }
        }
        self.formula.count(Family::ImbalanceForbid) + self.formula.count(Family::ImbalanceCounter) - before
    }

    /// Convex-layer unit clauses and, with `quadrant`, sector unit clauses
    /// placing each layer's first point in the angular sector between
    /// points 1 and 2 (seen from the center). With a center point the sector
    /// is `a(c,1,i) ∧ a(c,i,2)`; without one (even `s`) it is bounded by the
    /// two diagonals through 1 and 2, which for `s = 4` is the bottom-left
    /// quadrant `¬a(1,3,i) ∧ a(2,4,i)`. Odd `s` without a center gets none.
    pub fn symmetry_breaking(&mut self, quadrant: bool, center_layer: bool) -> Result<usize> {
        let s = self.sym.s();
        if s < 3 {
            return Err(Error::SymmetryBreakingUnsupported);
        }
        let layers = self.sym.layer_count();
        let mut emitted = 0;
        for t in 0..layers.saturating_sub(1) {
            for i in t * s..(t + 1) * s {
                for j in (t + 1) * s..(t + 2) * s {
                    let lit = self.a(i, self.sym.apply(i), j);
                    emitted += usize::from(self.push_unique(Family::ConvexLayers, &[lit]));
                }
            }
        }
        if let (Some(c), true) = (self.sym.center(), center_layer) {
            for i in (layers - 1) * s..layers * s {
                let lit = self.a(i, self.sym.apply(i), c);
                emitted += usize::from(self.push_unique(Family::ConvexLayers, &[lit]));
            }
        }
        if quadrant {
            for i in (s..layers * s).step_by(s) {
                let pair = match self.sym.center() {
                    Some(c) => Some((self.a(c, 0, i), self.a(c, i, 1))),
                    None if s % 2 == 0 => Some((-self.a(0, s / 2, i), self.a(1, 1 + s / 2, i))),
                    None => None,
                };
                if let Some((l1, l2)) = pair {
                    emitted += usize::from(self.push_unique(Family::Quadrant, &[l1]));
                    emitted += usize::from(self.push_unique(Family::Quadrant, &[l2]));
                }
            }
        }
        Ok(emitted)
    }

    /// Labeling normalization for unsymmetric problems, where any relabeling
    /// of a solution is again a solution. With `angular`, point 1 is the
    /// leftmost point and the others are sorted by angle around it (ties, on
    /// a common line through point 1, in any order); otherwise all points
    /// are sorted by x-coordinate.
    pub fn left_to_right(&mut self, angular: bool) -> Result<usize> {
        if !self.sym.is_identity() {
            return Err(Error::SymmetryBreakingUnsupported);
        }
        let n = self.n;
        let mut emitted = 0;
        for j in 1..n {
            for i in 0..j {
                if angular && i > 0 {
                    continue;
                }
                emitted += usize::from(self.push(Family::LeftToRight, &[self.ord(i, j)]));
            }
        }
        if angular {
            for i in 1..n {
                for j in i + 1..n {
                    let lit = match self.table.mode() {
                        Mode::GeneralPosition => self.a(0, i, j),
                        Mode::CollinearAllowed => -self.b(0, i, j),
                    };
                    emitted += usize::from(self.push(Family::LeftToRight, &[lit]));
                }
            }
        }
        Ok(emitted)
    }

    pub fn finish(self) -> CnfFormula {
        self.formula
    }
}

/// Builds the full formula for a problem.
pub fn encode(spec: &ProblemSpec) -> Result<CnfFormula> {
    spec.validate()?;
    let sym = spec.symmetry()?;
    let mut b = Builder::new(sym.clone(), spec.mode);
    b.set_conv_orbits(spec.conv_orbits);
    b.set_description(describe(spec, &sym));
    b.linear_order();
    b.dynamic_ordering();
    if spec.mode == Mode::CollinearAllowed {
        b.exactly_one();
        b.collinearity();
    }
    if let Some(k) = spec.no_kgon {
        b.conv_definitions();
        b.no_kgon(k);
    }
    if let Some(c) = spec.imbalance_at_least {
        b.imbalance_at_least(c);
    }
    match spec.symmetry_breaking {
        SymmetryBreaking::None => {}
        SymmetryBreaking::ConvexLayers => {
            b.symmetry_breaking(false, spec.center_layer)?;
        }
        SymmetryBreaking::ConvexLayersAndQuadrant => {
            b.symmetry_breaking(true, spec.center_layer)?;
        }
        SymmetryBreaking::LeftToRight => {
            b.left_to_right(false)?;
        }
        SymmetryBreaking::Angular => {
            b.left_to_right(true)?;
        }
    }
    Ok(b.finish())
}

fn describe(spec: &ProblemSpec, sym: &SFoldSymmetry) -> String {
    let mut parts = vec![format!("n={}", spec.n), format!("s={}", sym.s())];
    if sym.center().is_some() {
        parts.push("center".into());
    }
    if let Some(k) = spec.no_kgon {
        parts.push(format!("no-{k}-gon"));
    }
    if let Some(c) = spec.imbalance_at_least {
        parts.push(format!("imbalance>={c}"));
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::binomial;

    fn plain(n: usize) -> Builder {
        Builder::new(SFoldSymmetry::identity(n), Mode::GeneralPosition)
    }

    /// Brute-force: the transitivity clauses exclude exactly the non-orders
    /// among assignments that are total and asymmetric by construction.
    #[test]
    fn linear_order_n3() {
        let mut b = plain(3);
        assert_eq!(b.linear_order(), 6);
        let f = b.finish();
        let mut sat = 0;
        for mask in 0..8u32 {
            let mut model = vec![false; f.num_vars() + 1];
            for t in 0..3 {
                model[f.meta.orient_vars + 1 + t] = mask >> t & 1 == 1;
            }
            sat += usize::from(f.is_satisfied_by(&model));
        }
        assert_eq!(sat, 6);
        let mut b2 = plain(2);
        assert_eq!(b2.linear_order(), 0);
        assert_eq!(b2.finish().num_vars(), 1);
        let mut b5 = plain(5);
        assert_eq!(b5.linear_order(), 60);
    }

    #[test]
    fn ordering_variables() {
        let b = plain(4);
        assert_eq!(b.ord(0, 1), -b.ord(1, 0));
        let f = b.finish();
        assert_eq!(f.num_vars(), 4 + 6);
        assert_eq!(f.vars.name(5).unwrap().to_string(), "ord_1_2");
    }

    #[test]
    fn dynamic_ordering_counts() {
        let mut b = plain(4);
        assert_eq!(b.dynamic_ordering(), 8 + 24);
        for n in [5, 8] {
            let mut b = plain(n);
            assert_eq!(b.dynamic_ordering(), 32 * binomial(n, 4));
        }
    }

    #[test]
    fn collinearity_counts() {
        let mut b = Builder::new(SFoldSymmetry::identity(5), Mode::CollinearAllowed);
        assert_eq!(b.exactly_one(), 40);
        assert_eq!(b.collinearity(), 112 * binomial(5, 4));
        let mut b = Builder::new(SFoldSymmetry::identity(12), Mode::CollinearAllowed);
        assert_eq!(b.collinearity(), 55_440);
    }

    #[test]
    fn conv_and_kgon_counts() {
        let mut spec = ProblemSpec::no_kgon(16, 6);
        spec.conv_orbits = false;
        let f = encode(&spec).unwrap();
        assert_eq!(f.count(Family::ConvDefinition), 21_840);
        assert_eq!(f.count(Family::NoKGon), 8008);
        assert!(f.clauses.iter().filter(|c| c.len() == 15).count() >= 8008);
        let f4 = encode(&ProblemSpec::no_kgon(16, 6).with_symmetry(4, SymmetryBreaking::None)).unwrap();
        assert_eq!(f4.count(Family::NoKGon), 2016);
    }

    #[test]
    fn symmetric_clauses_use_representatives() {
        let f = encode(&ProblemSpec::no_kgon(16, 6).with_symmetry(4, SymmetryBreaking::ConvexLayersAndQuadrant))
            .unwrap();
        assert_eq!(f.meta.orient_vars, 140);
        for c in &f.clauses {
            for &l in c {
                match f.vars.name(l.abs()).unwrap() {
                    VarName::Orient { .. } => assert!(l.unsigned_abs() as usize <= 140),
                    VarName::Conv(q) => assert!(is_lex_min_in_orbit(q, &f.meta.sym)),
                    _ => {}
                }
            }
        }
        assert!(!f.trivially_unsat);
    }

    #[test]
    fn layer_clause_shape() {
        let mut b = Builder::new(SFoldSymmetry::new(16, 4, false).unwrap(), Mode::GeneralPosition);
        let before = b.symmetry_breaking(false, true).unwrap();
        assert!(before > 0);
        let f = b.finish();
        // 3 layer boundaries of 16 units each, folded into classes
        assert!(f.count(Family::ConvexLayers) <= 48);
        assert!(f.count(Family::ConvexLayers) >= 12);
        let mut b = Builder::new(SFoldSymmetry::identity(16), Mode::GeneralPosition);
        assert!(matches!(b.symmetry_breaking(true, true), Err(Error::SymmetryBreakingUnsupported)));
    }

    #[test]
    fn left_to_right_units() {
        let mut b = plain(6);
        assert_eq!(b.left_to_right(false).unwrap(), 15);
        let mut b = Builder::new(SFoldSymmetry::identity(6), Mode::CollinearAllowed);
        assert_eq!(b.left_to_right(true).unwrap(), 5 + 10);
        let f = b.finish();
        assert!(f.clauses.iter().all(|c| c.len() == 1));
        let mut b = Builder::new(SFoldSymmetry::new(8, 4, false).unwrap(), Mode::GeneralPosition);
        assert!(b.left_to_right(false).is_err());
    }

    #[test]
    fn imbalance_forbid_count() {
        let mut b = Builder::new(SFoldSymmetry::identity(12), Mode::CollinearAllowed);
        b.imbalance_at_least(2);
        let f = b.finish();
        assert_eq!(f.count(Family::ImbalanceForbid), 31 * 66);
        let mut b = Builder::new(SFoldSymmetry::identity(12), Mode::CollinearAllowed);
        assert_eq!(b.imbalance_at_least(0), 0);
    }

    #[test]
    fn spec_validation() {
        let mut s = ProblemSpec::no_kgon(8, 5);
        s.mode = Mode::CollinearAllowed;
        assert!(s.validate().is_err());
        let mut s = ProblemSpec::unbalanced(12, 2);
        s.mode = Mode::GeneralPosition;
        assert!(s.validate().is_err());
        let s = ProblemSpec::from_toml("n = 16\ns = 4\nno_kgon = 6\nsymmetry_breaking = \"convex_layers_and_quadrant\"\n")
            .unwrap();
        assert_eq!(s.no_kgon, Some(6));
        assert_eq!(s.symmetry_breaking, SymmetryBreaking::ConvexLayersAndQuadrant);
        assert!(ProblemSpec::from_toml("n = 16\ns = 3\ncenter = false\n").is_err());
    }
}
