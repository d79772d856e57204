use crate::algebra::{quotient, IdealHandle, LinearMap, MapRole};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};
use crate::pairs::Pair;

use super::cert::{verify_certificate, CertCheck, IsoclinismCertificate, Mode};

/// The pairs `(m/n, q/n)` and `(m/t, q/t)` with `t = n ∩ [m,q]_Lie`,
/// and a strict certificate from the second to the first.
#[derive(Debug, Clone)]
pub struct QuotientIsoclinism {
    pub reduced: Pair,
    pub intermediate: Pair,
    /// Certificate `intermediate -> reduced`.
    pub certificate: IsoclinismCertificate,
    /// `q -> q/n`
    pub projection: Matrix,
}

/// Builds `(m/n, q/n) ~ (m/t, q/t)` for an ideal `n ⊆ m`, from the map
/// `q/t -> q/n` induced by the identity of `q`. The certificate is
/// verified before it is returned.
pub fn quotient_isoclinism(p: &Pair, n: &Subspace) -> Result<QuotientIsoclinism> {
    let q = p.algebra();
    let n = IdealHandle::new(q, n.clone())?;
    if !p.ideal_space().contains_subspace(n.space()) {
        return Err(Error::NotContained);
    }
    let t = n.space().intersect(p.lie_commutator().space())?;
    let t = IdealHandle::new(q, t)?;
    let bar = quotient(q, &n)?;
    let tilde = quotient(q, &t)?;
    let image = |proj: &Matrix| p.ideal_space().image(proj);
    let reduced = Pair::new(bar.algebra.clone(), image(bar.projection.matrix())?)?;
    let intermediate = Pair::new(tilde.algebra.clone(), image(tilde.projection.matrix())?)?;
    // gamma: q/t -> q/n
    let gamma = bar.projection.matrix().mul(tilde.section.matrix())?;
    let alpha = reduced
        .central_quotient()
        .projection
        .matrix()
        .mul(&gamma)?
        .mul(intermediate.central_quotient().section.matrix())?;
    let (k_tilde, k_bar) = (intermediate.lie_commutator().space(), reduced.lie_commutator().space());
    let mut cols = Vec::new();
    for v in k_tilde.basis_vectors() {
        let w = gamma.mul_vec(&v)?;
        cols.push(
            k_bar
                .coordinates(&w)
                .ok_or_else(|| Error::CertificateInvalid("induced map misses the Lie-commutator".into()))?,
        );
    }
    let beta = Matrix::from_columns(q.field(), k_bar.dim(), &cols)?;
    let certificate = IsoclinismCertificate::new(alpha, beta, Mode::Strict);
    match verify_certificate(&intermediate, &reduced, &certificate)? {
        CertCheck::Ok => {}
        CertCheck::Violation(v) => return Err(Error::CertificateInvalid(v.to_string())),
    }
    Ok(QuotientIsoclinism {
        reduced,
        intermediate,
        certificate,
        projection: bar.projection.matrix().clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Corollary2 {
    /// `beta` restricted to the Lie-centers, on their RREF coordinates.
    Ok(LinearMap),
    /// `beta(Z1) != Z2`.
    Violation,
}

/// For stem pairs, `beta` restricts to an isomorphism `Z1 -> Z2`.
pub fn corollary2_check(p1: &Pair, p2: &Pair, cert: &IsoclinismCertificate) -> Result<Corollary2> {
    if !p1.is_stem() || !p2.is_stem() {
        return Err(Error::NotStem);
    }
    if let CertCheck::Violation(v) = verify_certificate(p1, p2, cert)? {
        return Err(Error::CertificateInvalid(v.to_string()));
    }
    let (z1, z2) = (p1.lie_center(), p2.lie_center());
    let (k1, k2) = (p1.lie_commutator().space(), p2.lie_commutator().space());
    let mut cols = Vec::new();
    for z in z1.basis_vectors() {
        let c = k1.coordinates(&z).expect("stem: Z1 ⊆ K1");
        let image = k2.from_coordinates(&cert.beta.apply(&c)?);
        match z2.coordinates(&image) {
            Some(c) => cols.push(c),
            None => return Ok(Corollary2::Violation),
        }
    }
    let m = Matrix::from_columns(p1.algebra().field(), z2.dim(), &cols)?;
    if z1.dim() != z2.dim() || !m.is_invertible() {
        return Ok(Corollary2::Violation);
    }
    Ok(Corollary2::Ok(LinearMap::new(MapRole::KernelMap, m)))
}
