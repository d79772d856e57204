//! Pairs `(m, q)`: an algebra with a distinguished two-sided ideal, and the
//! invariants built from symmetrized brackets.

mod epsilon;
mod stem;

use std::sync::OnceLock;

use crate::algebra::{
    closure_unchecked, common_kernel, quotient, symmetric_mult, IdealHandle, LeibnizAlgebra, Quotient,
};
use crate::error::Result;
use crate::exactla::{Subspace, Vector};

pub use epsilon::{epsilon_condition, EpsilonMode, EpsilonReport, EpsilonWitness};
pub use stem::{admissible_ideals, stem_reduce, StemReduction};

#[derive(Debug)]
struct Invariants {
    center: Subspace,
    commutator: IdealHandle,
    central_quotient: Quotient,
    /// `m / Z` as a subspace of the coordinates of `q / Z`.
    ideal_image: Subspace,
}

/// An algebra `q` with a two-sided ideal `m`. Invariants are computed on
/// first use and cached.
#[derive(Debug)]
pub struct Pair {
    algebra: LeibnizAlgebra,
    ideal: IdealHandle,
    cache: OnceLock<Invariants>,
}

impl Clone for Pair {
    fn clone(&self) -> Self {
        Pair {
            algebra: self.algebra.clone(),
            ideal: self.ideal.clone(),
            cache: OnceLock::new(),
        }
    }
}

impl PartialEq for Pair {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.ideal == other.ideal
    }
}

impl Eq for Pair {}

impl Pair {
    /// Validates that `ideal` is a two-sided ideal of `algebra`.
    pub fn new(algebra: LeibnizAlgebra, ideal: Subspace) -> Result<Self> {
        let ideal = IdealHandle::new(&algebra, ideal)?;
        Ok(Pair {
            algebra,
            ideal,
            cache: OnceLock::new(),
        })
    }

    /// The pair `(q, q)`.
    pub fn full(algebra: LeibnizAlgebra) -> Self {
        let ideal = IdealHandle::full(&algebra);
        Pair {
            algebra,
            ideal,
            cache: OnceLock::new(),
        }
    }

    pub fn algebra(&self) -> &LeibnizAlgebra {
        &self.algebra
    }

    pub fn ideal(&self) -> &IdealHandle {
        &self.ideal
    }

    pub fn ideal_space(&self) -> &Subspace {
        self.ideal.space()
    }

    pub fn is_full(&self) -> bool {
        self.ideal.space().is_full()
    }

    fn invariants(&self) -> &Invariants {
        self.cache.get_or_init(|| {
            let alg = &self.algebra;
            let maps: Vec<_> = (0..alg.dim()).map(|j| symmetric_mult(alg, j)).collect();
            let center = common_kernel(self.ideal.space(), &maps);
            let commutator = IdealHandle::new(alg, closure_unchecked(alg, &self.commutator_generators()))
                .expect("closure is an ideal");
            let center_ideal =
                IdealHandle::new(alg, center.clone()).expect("the Lie-center of a pair is a two-sided ideal");
            let central_quotient = quotient(alg, &center_ideal).expect("validated ideal");
            let ideal_image = self
                .ideal
                .space()
                .image(central_quotient.projection.matrix())
                .expect("shapes agree");
            Invariants {
                center,
                commutator,
                central_quotient,
                ideal_image,
            }
        })
    }

    /// `span{[x, e_j] + [e_j, x] : x in a basis of m}`
    pub fn commutator_generators(&self) -> Subspace {
        let alg = &self.algebra;
        let n = alg.dim();
        let mut gens = Vec::new();
        for x in self.ideal.space().basis_vectors() {
            for j in 0..n {
                gens.push(alg.symmetric_bracket(&x, &Vector::unit(alg.field(), n, j)));
            }
        }
        Subspace::span(alg.field(), n, &gens).expect("shapes agree")
    }

    /// `Z_Lie(m, q) = {z ∈ m : [z, x] + [x, z] = 0 for all x ∈ q}`
    pub fn lie_center(&self) -> &Subspace {
        &self.invariants().center
    }

    /// `[m, q]_Lie`, the ideal generated by the symmetrized brackets.
    pub fn lie_commutator(&self) -> &IdealHandle {
        &self.invariants().commutator
    }

    /// `Z_Lie(m, q) ⊆ [m, q]_Lie`
    pub fn is_stem(&self) -> bool {
        self.lie_commutator().space().contains_subspace(self.lie_center())
    }

    /// `q / Z_Lie(m, q)` with its projection and section.
    pub fn central_quotient(&self) -> &Quotient {
        &self.invariants().central_quotient
    }

    /// `m / Z_Lie(m, q)` inside the coordinates of `q / Z_Lie(m, q)`.
    pub fn ideal_image(&self) -> &Subspace {
        &self.invariants().ideal_image
    }
}

/// Free-function form of [`Pair::lie_center`].
pub fn lie_center(p: &Pair) -> Subspace {
    p.lie_center().clone()
}

/// Free-function form of [`Pair::lie_commutator`].
pub fn lie_commutator(p: &Pair) -> IdealHandle {
    p.lie_commutator().clone()
}

/// Free-function form of [`Pair::is_stem`].
pub fn is_stem(p: &Pair) -> bool {
    p.is_stem()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;

    #[test]
    fn abelian_pair_is_all_center() {
        let f = Field::Prime(3);
        let p = Pair::full(LeibnizAlgebra::abelian(f, 3));
        assert!(p.lie_center().is_full());
        assert!(p.lie_commutator().space().is_zero());
        assert!(!p.is_stem());
        assert_eq!(p.central_quotient().algebra.dim(), 0);
    }

    #[test]
    fn zero_ideal_pair() {
        let f = Field::Rationals;
        let alg = LeibnizAlgebra::new(crate::algebra::StructureTensor::from_relations(f, 2, &[(2, 2, &[(1, 1)])])).unwrap();
        let p = Pair::new(alg, Subspace::zero(f, 2)).unwrap();
        assert!(p.lie_center().is_zero());
        assert!(p.is_stem());
        assert!(!p.is_full());
    }

    #[test]
    fn symmetrized_brackets_generate_the_commutator() {
        // [a2,a2] = a1 and [a1,a2] = -[a2,a1] = a1: only a1 survives
        let f = Field::Rationals;
        let t = crate::algebra::StructureTensor::from_relations(f, 2, &[(2, 2, &[(1, 1)])]);
        let p = Pair::full(LeibnizAlgebra::new(t).unwrap());
        assert_eq!(p.commutator_generators(), Subspace::coordinate(f, 2, &[0]));
        assert_eq!(lie_center(&p), Subspace::coordinate(f, 2, &[0]));
        assert!(is_stem(&p));
    }

    #[test]
    fn clones_agree() {
        let f = Field::Prime(2);
        let p = Pair::full(LeibnizAlgebra::abelian(f, 2));
        let _ = p.lie_center();
        assert_eq!(p.clone(), p);
    }
}
