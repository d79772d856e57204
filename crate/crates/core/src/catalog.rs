//! Built-in example algebras and pairs, with the invariant values claimed
//! for them in the literature.

use crate::algebra::{Convention, LeibnizAlgebra, StructureTensor};
use crate::error::Result;
use crate::exactla::{Field, Subspace};
use crate::pairs::Pair;

/// A claimed value attached to a catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claimed {
    /// Span of the named basis vectors.
    Span(&'static [&'static str]),
    Holds(bool),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Claim {
    pub key: &'static str,
    pub value: Claimed,
    /// The built-in oracle disagrees with the claimed value.
    pub disputed: bool,
    /// What the oracle computes, when disputed.
    pub computed: Option<Claimed>,
}

/// One `(i, j, [(coeff, k)])` relation, 1-based.
type Relation = (usize, usize, &'static [(i64, usize)]);

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub dim: usize,
    pub basis: &'static [&'static str],
    pub relations: &'static [Relation],
    pub convention: Convention,
    /// Basis names spanning the distinguished ideal; `None` means `m = q`.
    pub ideal: Option<&'static [&'static str]>,
    pub claims: &'static [Claim],
}

const fn claim(key: &'static str, value: Claimed) -> Claim {
    Claim {
        key,
        value,
        disputed: false,
        computed: None,
    }
}

const fn disputed(key: &'static str, value: Claimed, computed: Claimed) -> Claim {
    Claim {
        key,
        value,
        disputed: true,
        computed: Some(computed),
    }
}

use Claimed::{Holds, Span};

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "3a",
        description: "class 3 a): [a1,a3]=a1, [a2,a3]=a2, with m = span{a1}",
        dim: 3,
        basis: &["a1", "a2", "a3"],
        relations: &[(1, 3, &[(1, 1)]), (2, 3, &[(1, 2)])],
        convention: Convention::Right,
        ideal: Some(&["a1"]),
        claims: &[
            claim("lie_center", Span(&[])),
            claim("lie_commutator", Span(&["a1"])),
            claim("stem", Holds(true)),
        ],
    },
    CatalogEntry {
        name: "2d",
        description: "class 2 (d): [a1,a3]=a1",
        dim: 3,
        basis: &["a1", "a2", "a3"],
        relations: &[(1, 3, &[(1, 1)])],
        convention: Convention::Right,
        ideal: None,
        claims: &[
            claim("lie_center", Span(&["a2"])),
            claim("lie_commutator", Span(&["a1"])),
        ],
    },
    CatalogEntry {
        name: "2e",
        description: "class 2 (e) with parameter 1: [g1,g3]=g1, [g2,g3]=g2, [g3,g2]=-g2",
        dim: 3,
        basis: &["g1", "g2", "g3"],
        relations: &[(1, 3, &[(1, 1)]), (2, 3, &[(1, 2)]), (3, 2, &[(-1, 2)])],
        convention: Convention::Right,
        ideal: None,
        claims: &[
            claim("lie_center", Span(&["g2"])),
            claim("lie_commutator", Span(&["g1"])),
        ],
    },
    CatalogEntry {
        name: "A1",
        description: "five-dimensional: [a1,a1]=a3, [a2,a1]=a4, [a1,a3]=a5",
        dim: 5,
        basis: &["a1", "a2", "a3", "a4", "a5"],
        relations: &[(1, 1, &[(1, 3)]), (2, 1, &[(1, 4)]), (1, 3, &[(1, 5)])],
        convention: Convention::Left,
        ideal: None,
        claims: &[
            claim("lie_center", Span(&["a4", "a5"])),
            claim("lie_commutator", Span(&["a3", "a4", "a5"])),
            claim("stem", Holds(true)),
        ],
    },
    CatalogEntry {
        name: "A7",
        description: "five-dimensional: [g1,g1]=g3, [g1,g2]=g4, [g2,g1]=g5, [g1,g3]=g5",
        dim: 5,
        basis: &["g1", "g2", "g3", "g4", "g5"],
        relations: &[
            (1, 1, &[(1, 3)]),
            (1, 2, &[(1, 4)]),
            (2, 1, &[(1, 5)]),
            (1, 3, &[(1, 5)]),
        ],
        convention: Convention::Left,
        ideal: None,
        claims: &[
            claim("lie_center", Span(&["g4", "g5"])),
            claim("lie_commutator", Span(&["g3", "g4", "g5"])),
            claim("stem", Holds(true)),
        ],
    },
    CatalogEntry {
        name: "L26",
        description: "class L26 with mu2 = 1: [e1,e4]=e1, [e2,e4]=e2, [e4,e4]=e3, with m = span{e1,e2,e3}",
        dim: 4,
        basis: &["e1", "e2", "e3", "e4"],
        relations: &[(1, 4, &[(1, 1)]), (2, 4, &[(1, 2)]), (4, 4, &[(1, 3)])],
        convention: Convention::Right,
        ideal: Some(&["e1", "e2", "e3"]),
        claims: &[
            claim("lie_center", Span(&["e3"])),
            disputed(
                "lie_commutator",
                Span(&["e1", "e2", "e3"]),
                Span(&["e1", "e2"]),
            ),
            disputed("stem", Holds(true), Holds(false)),
        ],
    },
    CatalogEntry {
        name: "L40",
        description: "class L40: [a1,a4]=a2, [a3,a4]=a3, [a4,a4]=a1, with m = span{a1,a2,a3}",
        dim: 4,
        basis: &["a1", "a2", "a3", "a4"],
        relations: &[(1, 4, &[(1, 2)]), (3, 4, &[(1, 3)]), (4, 4, &[(1, 1)])],
        convention: Convention::Right,
        ideal: Some(&["a1", "a2", "a3"]),
        claims: &[
            claim("lie_center", Span(&["a2"])),
            disputed(
                "lie_commutator",
                Span(&["a1", "a2", "a3"]),
                Span(&["a2", "a3"]),
            ),
            claim("stem", Holds(true)),
        ],
    },
    CatalogEntry {
        name: "lambda2",
        description: "two-dimensional: [a2,a2]=2*a1 over Q",
        dim: 2,
        basis: &["a1", "a2"],
        relations: &[(2, 2, &[(2, 1)])],
        convention: Convention::Right,
        ideal: None,
        claims: &[claim("epsilon_uniform", Holds(true))],
    },
    CatalogEntry {
        name: "L16",
        description: "class L16: [a1,a1]=a3, [a2,a4]=a2, [a4,a2]=-a2, [a4,a4]=-2*a2",
        dim: 4,
        basis: &["a1", "a2", "a3", "a4"],
        relations: &[
            (1, 1, &[(1, 3)]),
            (2, 4, &[(1, 2)]),
            (4, 2, &[(-1, 2)]),
            (4, 4, &[(-2, 2)]),
        ],
        convention: Convention::Right,
        ideal: None,
        claims: &[
            disputed("leibniz", Holds(true), Holds(false)),
            claim("epsilon_basis_pairs", Holds(true)),
        ],
    },
    CatalogEntry {
        name: "abelian3",
        description: "three-dimensional abelian reference algebra",
        dim: 3,
        basis: &["e1", "e2", "e3"],
        relations: &[],
        convention: Convention::Right,
        ideal: None,
        claims: &[],
    },
];

impl CatalogEntry {
    /// The structure constants over the rationals, unvalidated.
    pub fn tensor(&self) -> StructureTensor {
        self.tensor_over(Field::Rationals)
    }

    /// The same integer structure constants read in another field.
    pub fn tensor_over(&self, field: Field) -> StructureTensor {
        StructureTensor::from_relations(field, self.dim, self.relations)
            .with_convention(self.convention)
            .with_basis_names(self.basis.iter().map(|s| s.to_string()).collect())
            .expect("names match the dimension")
    }

    pub fn algebra(&self) -> Result<LeibnizAlgebra> {
        LeibnizAlgebra::new(self.tensor())
    }

    pub fn algebra_over(&self, field: Field) -> Result<LeibnizAlgebra> {
        LeibnizAlgebra::new(self.tensor_over(field))
    }

    /// Span of named basis vectors in the given field.
    pub fn span_of(&self, field: Field, names: &[&str]) -> Subspace {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.basis.iter().position(|b| b == n).expect("known basis name"))
            .collect();
        Subspace::coordinate(field, self.dim, &idx)
    }

    pub fn pair(&self) -> Result<Pair> {
        self.pair_over(Field::Rationals)
    }

    pub fn pair_over(&self, field: Field) -> Result<Pair> {
        let alg = self.algebra_over(field)?;
        match self.ideal {
            None => Ok(Pair::full(alg)),
            Some(names) => Pair::new(alg, self.span_of(field, names)),
        }
    }

    pub fn claim(&self, key: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.key == key)
    }
}

pub fn catalog() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        assert_eq!(catalog().len(), 10);
        let mut names: Vec<_> = catalog().iter().map(|e| e.name.to_lowercase()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), catalog().len());
    }

    #[test]
    fn lookup_ignores_case() {
        assert_eq!(lookup("a1").unwrap().name, "A1");
        assert!(lookup("A99").is_none());
    }

    #[test]
    fn relations_fit_the_dimension() {
        for e in catalog() {
            assert_eq!(e.basis.len(), e.dim);
            for &(i, j, terms) in e.relations {
                assert!(i <= e.dim && j <= e.dim);
                assert!(terms.iter().all(|&(_, k)| k >= 1 && k <= e.dim));
            }
        }
    }

    #[test]
    fn pairs_over_small_fields() {
        let a1 = lookup("A1").unwrap();
        let p = a1.pair_over(Field::Prime(2)).unwrap();
        assert_eq!(p.lie_center().dim(), 2);
    }
}
