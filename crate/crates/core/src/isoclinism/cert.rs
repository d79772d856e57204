use std::fmt;

use crate::algebra::{hom_violations, LinearMap, MapRole};
use crate::error::{Error, Result};
use crate::exactla::{complement_basis, Matrix, Subspace, Vector};
use crate::pairs::Pair;

/// Whether `alpha` must respect brackets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// `alpha` is an algebra isomorphism of the central quotients.
    #[default]
    Strict,
    /// `alpha` is only a linear bijection making the diagram commute.
    Linear,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Strict => write!(f, "strict"),
            Mode::Linear => write!(f, "linear"),
        }
    }
}

/// A pair `(alpha, beta)` witnessing Lie-isoclinism of two pairs.
///
/// `alpha` acts on the coordinates of `q1/Z1 -> q2/Z2` (the deterministic
/// complement bases of the central quotients); `beta` acts on the
/// coordinates of the RREF bases of the Lie-commutators `K1 -> K2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoclinismCertificate {
    pub alpha: LinearMap,
    pub beta: LinearMap,
    pub mode: Mode,
}

impl IsoclinismCertificate {
    pub fn new(alpha: Matrix, beta: Matrix, mode: Mode) -> Self {
        IsoclinismCertificate {
            alpha: LinearMap::new(MapRole::QuotientIso, alpha),
            beta: LinearMap::new(MapRole::CommutatorIso, beta),
            mode,
        }
    }

    pub fn identity(p: &Pair) -> Self {
        let f = p.algebra().field();
        IsoclinismCertificate::new(
            Matrix::identity(f, p.central_quotient().algebra.dim()),
            Matrix::identity(f, p.lie_commutator().dim()),
            Mode::Strict,
        )
    }

    /// `(alpha^-1, beta^-1)`, a certificate in the other direction.
    pub fn inverse(&self) -> Result<Self> {
        Ok(IsoclinismCertificate {
            alpha: self.alpha.inverse()?,
            beta: self.beta.inverse()?,
            mode: self.mode,
        })
    }

    /// `next ∘ self`; the mode is the weaker of the two.
    pub fn then(&self, next: &IsoclinismCertificate) -> Result<Self> {
        let mode = if self.mode == Mode::Strict && next.mode == Mode::Strict {
            Mode::Strict
        } else {
            Mode::Linear
        };
        Ok(IsoclinismCertificate {
            alpha: next.alpha.compose(&self.alpha, MapRole::QuotientIso)?,
            beta: next.beta.compose(&self.beta, MapRole::CommutatorIso)?,
            mode,
        })
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }
}

/// What went wrong when a certificate fails to verify. Indices are 0-based
/// into the relevant bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    AlphaSingular,
    /// `alpha([x_i, x_j]) != [alpha x_i, alpha x_j]` on the quotient basis.
    AlphaNotHomomorphism(usize, usize),
    /// `alpha(m1/Z1) != m2/Z2`.
    IdealNotPreserved,
    BetaSingular,
    /// `beta(C1(u_i, x_j)) != C2(alpha u_i, alpha x_j)` where `u_i` runs
    /// over the basis of `m1/Z1` and `x_j` over the basis of `q1/Z1`.
    DiagramFails(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AlphaSingular => write!(f, "alpha is not invertible"),
            Violation::AlphaNotHomomorphism(i, j) => {
                write!(f, "alpha-not-homomorphism at ({}, {})", i + 1, j + 1)
            }
            Violation::IdealNotPreserved => write!(f, "alpha does not map m1/Z1 onto m2/Z2"),
            Violation::BetaSingular => write!(f, "beta is not invertible"),
            Violation::DiagramFails(i, j) => write!(f, "diagram fails at ({}, {})", i + 1, j + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertCheck {
    Ok,
    Violation(Violation),
}

impl CertCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, CertCheck::Ok)
    }
}

/// `C(m̄, q̄) = [m, q] + [q, m]` for any lifts; both arguments are in the
/// coordinates of `q/Z`, and `m̄` must lie in `m/Z`.
pub fn commutator_map(p: &Pair, m_bar: &Vector, q_bar: &Vector) -> Result<Vector> {
    if !p.ideal_image().contains(m_bar) {
        return Err(Error::NotContained);
    }
    let section = p.central_quotient().section.matrix();
    let x = section.mul_vec(m_bar)?;
    let y = section.mul_vec(q_bar)?;
    Ok(p.algebra().symmetric_bracket(&x, &y))
}

fn expect_shape(m: &Matrix, rows: usize, cols: usize) -> Result<()> {
    if m.rows() != rows {
        return Err(Error::DimensionMismatch {
            expected: rows,
            found: m.rows(),
        });
    }
    if m.cols() != cols {
        return Err(Error::DimensionMismatch {
            expected: cols,
            found: m.cols(),
        });
    }
    Ok(())
}

fn check_fields(p1: &Pair, p2: &Pair) -> Result<()> {
    let (f1, f2) = (p1.algebra().field(), p2.algebra().field());
    if f1 != f2 {
        return Err(Error::FieldMismatch(f1, f2));
    }
    Ok(())
}

/// Basis pairs of the central quotients on which `alpha` fails to respect
/// the bracket.
pub fn alpha_hom_violations(p1: &Pair, p2: &Pair, alpha: &Matrix) -> Result<Vec<(usize, usize)>> {
    hom_violations(alpha, &p1.central_quotient().algebra, &p2.central_quotient().algebra)
}

/// Checks a certificate: `alpha` invertible (and a homomorphism in strict
/// mode), `alpha(m1/Z1) = m2/Z2`, `beta` invertible, and the square
/// `beta ∘ C1 = C2 ∘ (alpha × alpha)` on basis pairs.
pub fn verify_certificate(p1: &Pair, p2: &Pair, cert: &IsoclinismCertificate) -> Result<CertCheck> {
    check_fields(p1, p2)?;
    let r1 = p1.central_quotient().algebra.dim();
    let r2 = p2.central_quotient().algebra.dim();
    let (k1, k2) = (p1.lie_commutator().space(), p2.lie_commutator().space());
    let alpha = cert.alpha.matrix();
    let beta = cert.beta.matrix();
    expect_shape(alpha, r2, r1)?;
    expect_shape(beta, k2.dim(), k1.dim())?;
    if !alpha.is_invertible() {
        return Ok(CertCheck::Violation(Violation::AlphaSingular));
    }
    if cert.mode == Mode::Strict {
        if let Some(&(i, j)) = alpha_hom_violations(p1, p2, alpha)?.first() {
            return Ok(CertCheck::Violation(Violation::AlphaNotHomomorphism(i, j)));
        }
    }
    if p1.ideal_image().image(alpha)? != *p2.ideal_image() {
        return Ok(CertCheck::Violation(Violation::IdealNotPreserved));
    }
    if !beta.is_invertible() {
        return Ok(CertCheck::Violation(Violation::BetaSingular));
    }
    let f = p1.algebra().field();
    for (i, u) in p1.ideal_image().basis_vectors().iter().enumerate() {
        let au = alpha.mul_vec(u)?;
        for j in 0..r1 {
            let x = Vector::unit(f, r1, j);
            let c1 = commutator_map(p1, u, &x)?;
            let c2 = commutator_map(p2, &au, &alpha.mul_vec(&x)?)?;
            let lhs = beta.mul_vec(&k1.coordinates(&c1).expect("C values lie in K"))?;
            let rhs = k2.coordinates(&c2).expect("C values lie in K");
            if lhs != rhs {
                return Ok(CertCheck::Violation(Violation::DiagramFails(i, j)));
            }
        }
    }
    Ok(CertCheck::Ok)
}

/// Why no `beta` is compatible with a given `alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BetaFailure {
    /// `alpha` has the wrong shape, is singular, or misses `m2/Z2`.
    BadAlpha,
    /// The forced values contradict each other at generator `(i, j)`:
    /// `u_i` from the basis of `m1/Z1`, `x_j` from the basis of `q1/Z1`.
    Inconsistent(usize, usize),
    /// The Lie-commutators have different dimensions.
    DimensionMismatch,
    /// The forced values give a singular map.
    NotInvertible,
}

impl fmt::Display for BetaFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaFailure::BadAlpha => write!(f, "alpha is not admissible"),
            BetaFailure::Inconsistent(i, j) => {
                write!(f, "forced values inconsistent at generator ({}, {})", i + 1, j + 1)
            }
            BetaFailure::DimensionMismatch => write!(f, "Lie-commutators differ in dimension"),
            BetaFailure::NotInvertible => write!(f, "forced beta is singular"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InducedBeta {
    Beta(LinearMap),
    Inconsistent(BetaFailure),
}

/// The `beta` forced by `alpha` through `beta(C1(u, x)) = C2(alpha u, alpha x)`.
///
/// The values are forced on the span of the `C1` values. When that span is
/// smaller than the Lie-commutator (its ideal closure adds more), the
/// remaining directions are sent to the deterministic complement of the
/// span of the `C2` values, which keeps `beta` invertible and leaves the
/// diagram untouched.
pub fn induced_beta(p1: &Pair, p2: &Pair, alpha: &Matrix) -> Result<InducedBeta> {
    check_fields(p1, p2)?;
    let f = p1.algebra().field();
    let r1 = p1.central_quotient().algebra.dim();
    let r2 = p2.central_quotient().algebra.dim();
    if alpha.rows() != r2 || alpha.cols() != r1 || !alpha.is_invertible() {
        return Ok(InducedBeta::Inconsistent(BetaFailure::BadAlpha));
    }
    if p1.ideal_image().image(alpha)? != *p2.ideal_image() {
        return Ok(InducedBeta::Inconsistent(BetaFailure::BadAlpha));
    }
    let (k1, k2) = (p1.lie_commutator().space(), p2.lie_commutator().space());
    if k1.dim() != k2.dim() {
        return Ok(InducedBeta::Inconsistent(BetaFailure::DimensionMismatch));
    }
    let kd = k1.dim();
    let mut generators: Vec<((usize, usize), Vector, Vector)> = Vec::new();
    for (i, u) in p1.ideal_image().basis_vectors().iter().enumerate() {
        let au = alpha.mul_vec(u)?;
        for j in 0..r1 {
            let x = Vector::unit(f, r1, j);
            let c1 = commutator_map(p1, u, &x)?;
            let c2 = commutator_map(p2, &au, &alpha.mul_vec(&x)?)?;
            generators.push((
                (i, j),
                k1.coordinates(&c1).expect("C values lie in K"),
                k2.coordinates(&c2).expect("C values lie in K"),
            ));
        }
    }
    // Pick generators whose C1 values are independent, in order.
    let mut src: Vec<Vector> = Vec::new();
    let mut dst: Vec<Vector> = Vec::new();
    for (_, c1, c2) in &generators {
        let mut trial = src.clone();
        trial.push(c1.clone());
        if Subspace::span(f, kd, &trial)?.dim() == trial.len() {
            src = trial;
            dst.push(c2.clone());
        }
    }
    let src_span = Subspace::span(f, kd, &src)?;
    let dst_span = Subspace::span(f, kd, &dst)?;
    let full = Subspace::full(f, kd);
    let (_, src_extra) = complement_basis(&src_span, &full)?;
    let dst_extra = if dst_span.dim() == src_span.dim() {
        complement_basis(&dst_span, &full)?.1
    } else {
        // dst values are dependent; beta will be singular either way
        vec![Vector::zeros(f, kd); src_extra.len()]
    };
    src.extend(src_extra);
    dst.extend(dst_extra);
    let s = Matrix::from_columns(f, kd, &src)?;
    let d = Matrix::from_columns(f, kd, &dst)?;
    let beta = d.mul(&s.inverse().expect("basis of K1 coordinates"))?;
    for ((i, j), c1, c2) in &generators {
        if beta.mul_vec(c1)? != *c2 {
            return Ok(InducedBeta::Inconsistent(BetaFailure::Inconsistent(*i, *j)));
        }
    }
    if !beta.is_invertible() {
        return Ok(InducedBeta::Inconsistent(BetaFailure::NotInvertible));
    }
    Ok(InducedBeta::Beta(LinearMap::new(MapRole::CommutatorIso, beta)))
}

/// The certificate induced by an isomorphism of pairs `phi: q1 -> q2`.
pub fn certificate_from_isomorphism(p1: &Pair, p2: &Pair, phi: &Matrix) -> Result<IsoclinismCertificate> {
    check_fields(p1, p2)?;
    let q1 = p1.central_quotient();
    let q2 = p2.central_quotient();
    let alpha = q2
        .projection
        .matrix()
        .mul(phi)?
        .mul(q1.section.matrix())?;
    let (k1, k2) = (p1.lie_commutator().space(), p2.lie_commutator().space());
    let mut cols = Vec::new();
    for v in k1.basis_vectors() {
        let w = phi.mul_vec(&v)?;
        cols.push(
            k2.coordinates(&w)
                .ok_or_else(|| Error::CertificateInvalid("map does not carry K1 into K2".into()))?,
        );
    }
    let beta = Matrix::from_columns(p1.algebra().field(), k2.dim(), &cols)?;
    Ok(IsoclinismCertificate::new(alpha, beta, Mode::Strict))
}
