use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Vector};

use super::tensor::StructureTensor;

/// The role a linear map plays in a construction. Purely descriptive; it
/// shows up in reports and error messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapRole {
    /// Isomorphism of central quotients in an isoclinism.
    QuotientIso,
    /// Isomorphism of Lie-commutators in an isoclinism.
    CommutatorIso,
    Projection,
    Section,
    Splitting,
    Inclusion,
    /// `(m, x) -> m + splitting(x)` and friends.
    Reconstruction,
    /// Induced map on kernels (`eta_2`, `tau_2`, `kappa`).
    KernelMap,
    /// Induced map on quotients (`eta_1`, `omega_1`).
    QuotientMap,
    /// The correction term `d` of a map between extensions.
    Correction,
    /// An algebra isomorphism produced by a construction.
    Isomorphism,
    Other,
}

impl fmt::Display for MapRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MapRole::QuotientIso => "alpha",
            MapRole::CommutatorIso => "beta",
            MapRole::Projection => "projection",
            MapRole::Section => "section",
            MapRole::Splitting => "splitting",
            MapRole::Inclusion => "inclusion",
            MapRole::Reconstruction => "reconstruction",
            MapRole::KernelMap => "kernel map",
            MapRole::QuotientMap => "quotient map",
            MapRole::Correction => "correction",
            MapRole::Isomorphism => "isomorphism",
            MapRole::Other => "map",
        };
        f.write_str(s)
    }
}

/// A matrix acting on column vectors, tagged with its role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    role: MapRole,
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(role: MapRole, matrix: Matrix) -> Self {
        LinearMap { role, matrix }
    }

    pub fn identity(role: MapRole, field: crate::exactla::Field, n: usize) -> Self {
        LinearMap::new(role, Matrix::identity(field, n))
    }

    pub fn role(&self) -> MapRole {
        self.role
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &LinearMap, role: MapRole) -> Result<LinearMap> {
        Ok(LinearMap::new(role, self.matrix.mul(&inner.matrix)?))
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        Ok(LinearMap::new(self.role, self.matrix.inverse().ok_or(Error::Singular)?))
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn with_role(mut self, role: MapRole) -> Self {
        self.role = role;
        self
    }
}

/// Result of comparing `phi([e_i, e_j])` with `[phi e_i, phi e_j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomCheck {
    Ok,
    /// First failing basis pair, 0-based.
    Violation(usize, usize),
}

impl HomCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, HomCheck::Ok)
    }
}

fn check_shapes(phi: &Matrix, a: &StructureTensor, b: &StructureTensor) -> Result<()> {
    if phi.field() != a.field() {
        return Err(Error::FieldMismatch(phi.field(), a.field()));
    }
    if phi.field() != b.field() {
        return Err(Error::FieldMismatch(phi.field(), b.field()));
    }
    if phi.cols() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: phi.cols(),
        });
    }
    if phi.rows() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            found: phi.rows(),
        });
    }
    Ok(())
}

/// All basis pairs `(i, j)` on which `phi` fails to respect the bracket,
/// in lexicographic order.
pub fn hom_violations(phi: &Matrix, a: &StructureTensor, b: &StructureTensor) -> Result<Vec<(usize, usize)>> {
    check_shapes(phi, a, b)?;
    let images = phi.columns();
    let mut out = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = phi.mul_vec(a.product(i, j))?;
            let rhs = b.bracket_unchecked(&images[i], &images[j]);
            if lhs != rhs {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// Checks that `phi: a -> b` respects the bracket on all basis pairs.
pub fn hom_check(phi: &Matrix, a: &StructureTensor, b: &StructureTensor) -> Result<HomCheck> {
    check_shapes(phi, a, b)?;
    let images = phi.columns();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = phi.mul_vec(a.product(i, j))?;
            let rhs = b.bracket_unchecked(&images[i], &images[j]);
            if lhs != rhs {
                return Ok(HomCheck::Violation(i, j));
            }
        }
    }
    Ok(HomCheck::Ok)
}

/// `hom_check` plus invertibility.
pub fn is_isomorphism(phi: &Matrix, a: &StructureTensor, b: &StructureTensor) -> Result<bool> {
    Ok(phi.is_invertible() && hom_check(phi, a, b)?.is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn identity_is_an_automorphism() {
        let t = StructureTensor::from_relations(q(), 2, &[(2, 2, &[(2, 1)])]);
        let id = LinearMap::identity(MapRole::Other, q(), 2);
        assert!(is_isomorphism(id.matrix(), &t, &t).unwrap());
    }

    #[test]
    fn scaling_needs_the_square() {
        // [a2,a2] = 2 a1: a2 -> c a2 forces a1 -> c^2 a1
        let t = StructureTensor::from_relations(q(), 2, &[(2, 2, &[(2, 1)])]);
        let good = Matrix::from_ints(q(), &[&[9, 0], &[0, 3]]);
        let bad = Matrix::from_ints(q(), &[&[3, 0], &[0, 3]]);
        assert!(hom_check(&good, &t, &t).unwrap().is_ok());
        assert_eq!(hom_check(&bad, &t, &t).unwrap(), HomCheck::Violation(1, 1));
        assert_eq!(hom_violations(&bad, &t, &t).unwrap(), vec![(1, 1)]);
    }

    #[test]
    fn shapes_are_checked() {
        let t = StructureTensor::zero(q(), 2);
        let s = StructureTensor::zero(q(), 3);
        assert!(hom_check(&Matrix::identity(q(), 2), &t, &s).is_err());
        let g = StructureTensor::zero(Field::Prime(3), 2);
        assert!(hom_check(&Matrix::identity(q(), 2), &t, &g).is_err());
    }

    #[test]
    fn compose_and_invert() {
        let a = LinearMap::new(MapRole::Other, Matrix::from_ints(q(), &[&[1, 1], &[0, 1]]));
        let b = a.inverse().unwrap();
        let id = a.compose(&b, MapRole::Other).unwrap();
        assert_eq!(id.matrix(), &Matrix::identity(q(), 2));
        assert_eq!(id.role(), MapRole::Other);
        let v = Vector::from_ints(q(), &[1, 2]);
        assert_eq!(a.apply(&v).unwrap(), Vector::from_ints(q(), &[3, 2]));
        let singular = LinearMap::new(MapRole::Other, Matrix::zeros(q(), 2, 2));
        assert!(!singular.is_invertible());
        assert!(singular.inverse().is_err());
    }
}
