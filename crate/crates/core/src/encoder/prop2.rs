//! The five-point formula showing that the dynamic-ordering axioms imply
//! Knuth's interiority and transitivity axioms.

use crate::symmetry::{Mode, SFoldSymmetry};

use super::{Builder, CnfFormula, Family, VarName};

/// Interiority (Axiom 4) and transitivity (Axiom 5) clauses over all
/// distinct index tuples of `b.n()` points, in terms of `b`'s literals.
pub fn cc_axiom_clauses(b: &Builder) -> Vec<Vec<i32>> {
    let n = b.n();
    let mut out = Vec::new();
    let distinct = |t: &[usize]| (0..t.len()).all(|x| (x + 1..t.len()).all(|y| t[x] != t[y]));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if !distinct(&[i, j, k, l]) {
                        continue;
                    }
                    out.push(vec![b.a(i, j, k), b.a(i, k, l), b.a(k, j, l), b.a(j, i, l)]);
                    for m in 0..n {
                        if !distinct(&[i, j, k, l, m]) {
                            continue;
                        }
                        out.push(vec![
                            b.a(l, i, m),
                            b.a(l, j, m),
                            b.a(l, k, m),
                            b.a(l, j, i),
                            b.a(l, k, j),
                            b.a(l, i, k),
                        ]);
                    }
                }
            }
        }
    }
    out
}

/// `DOA(5)` plus the Tseitin negation of `CCA(5)`: a fresh `y_C` per CC clause
/// with `¬ℓ ∨ ¬y_C` for each of its literals and the disjunction of all `y_C`.
pub fn build_proposition_two_formula() -> CnfFormula {
    build_with(true)
}

/// Same, optionally without the final disjunction (then trivially SAT).
pub fn build_with(disjunction: bool) -> CnfFormula {
    let mut b = Builder::new(SFoldSymmetry::identity(5), Mode::GeneralPosition);
    b.set_description("dynamic-ordering axioms and negated CC axioms on 5 points");
    b.linear_order();
    b.dynamic_ordering();
    let cc = cc_axiom_clauses(&b);
    let mut f = b.finish();
    let mut ys = Vec::with_capacity(cc.len());
    for (idx, c) in cc.iter().enumerate() {
        let y = f.vars.alloc(VarName::Aux(format!("y_{}", idx + 1)));
        ys.push(y);
        for &l in c {
            f.add_clause(Family::CcNegation, vec![-l, -y]);
        }
    }
    if disjunction {
        f.add_clause(Family::CcNegation, ys);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape() {
        let f = build_proposition_two_formula();
        assert_eq!(f.count(Family::LinearOrder), 60);
        assert_eq!(f.count(Family::DynamicOrdering), 32 * 5);
        // 120 four-literal and 120 six-literal CC clauses
        assert_eq!(f.count(Family::CcNegation), 120 * 4 + 120 * 6 + 1);
        assert_eq!(f.num_vars(), 10 + 10 + 240);
    }
}
