use std::collections::HashMap;
use std::fmt;

use crate::symmetry::{Kind, TripleKey};

/// Semantic name of a DIMACS variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarName {
    /// Representative of an orientation literal class.
    Orient { kind: Kind, key: TripleKey },
    /// `≺_{i,j}` for `i < j`; the reverse direction is its negation.
    Order(usize, usize),
    /// Convex position of a 4-subset (orbit representative in symmetric mode).
    Conv([usize; 4]),
    /// Sequential counter cell: at least `level` of the first `prefix` literals.
    Ladder { family: char, pair: (usize, usize), prefix: usize, level: usize },
    /// Exactly `level` of the literals of one family on the line through `pair`.
    Exact { family: char, pair: (usize, usize), level: usize },
    /// Tseitin auxiliary.
    Aux(String),
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarName::Orient { kind, key } => {
                let [i, j, k] = key.0;
                write!(f, "{}_{}_{}_{}", kind.letter(), i + 1, j + 1, k + 1)
            }
            VarName::Order(i, j) => write!(f, "ord_{}_{}", i + 1, j + 1),
            VarName::Conv(q) => write!(f, "conv_{}_{}_{}_{}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1),
            VarName::Ladder { family, pair, prefix, level } => {
                write!(f, "{family}cnt_{}_{}_p{prefix}_ge{level}", pair.0 + 1, pair.1 + 1)
            }
            VarName::Exact { family, pair, level } => {
                write!(f, "{family}_{}_{}_eq{level}", pair.0 + 1, pair.1 + 1)
            }
            VarName::Aux(s) => write!(f, "aux_{s}"),
        }
    }
}

/// Bijection between variable ids (contiguous from 1) and semantic names.
#[derive(Clone, Debug, Default)]
pub struct VarTable {
    names: Vec<VarName>,
    ids: HashMap<VarName, i32>,
}

impl VarTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Allocates a fresh id. Panics if the name is already taken.
    pub fn alloc(&mut self, name: VarName) -> i32 {
        let id = self.names.len() as i32 + 1;
        let prev = self.ids.insert(name.clone(), id);
        assert!(prev.is_none(), "variable {name} allocated twice");
        self.names.push(name);
        id
    }

    pub fn get_or_alloc(&mut self, name: VarName) -> i32 {
        match self.ids.get(&name) {
            Some(&id) => id,
            None => self.alloc(name),
        }
    }

    pub fn id(&self, name: &VarName) -> Option<i32> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: i32) -> Option<&VarName> {
        usize::try_from(id).ok().and_then(|i| i.checked_sub(1)).and_then(|i| self.names.get(i))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &VarName)> {
        self.names.iter().enumerate().map(|(i, n)| (i as i32 + 1, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_ids() {
        let mut t = VarTable::new();
        let a = t.alloc(VarName::Orient { kind: Kind::A, key: TripleKey([0, 5, 7]) });
        let o = t.alloc(VarName::Order(0, 1));
        assert_eq!((a, o), (1, 2));
        assert_eq!(t.name(1).unwrap().to_string(), "a_1_6_8");
        assert_eq!(t.name(2).unwrap().to_string(), "ord_1_2");
        assert_eq!(t.get_or_alloc(VarName::Order(0, 1)), 2);
        assert_eq!(t.name(0), None);
        assert_eq!(t.name(3), None);
        let e = VarName::Exact { family: 's', pair: (0, 1), level: 3 };
        assert_eq!(e.to_string(), "s_1_2_eq3");
    }
}
