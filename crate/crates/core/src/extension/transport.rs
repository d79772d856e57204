use crate::algebra::{hom_check, HomCheck, LeibnizAlgebra, LinearMap, MapRole, StructureTensor};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Vector};
use crate::isoclinism::{corollary2_check, Corollary2, IsoclinismCertificate};
use crate::pairs::Pair;

use super::{build_extension, stem_factor_algebra, ExtensionAlgebra, FactorSetData, StemFactor};

/// The factor set pulled back from the second pair, and the map
/// `θ(z, m̄) = (β z, α m̄)` between the extensions.
#[derive(Debug, Clone)]
pub struct Transport {
    pub data: FactorSetData,
    /// `Z1 ×_f m1/Z1`
    pub extension: ExtensionAlgebra,
    /// The stem factor algebra of the second pair.
    pub target: StemFactor,
    /// The stem factor algebra of the first pair.
    pub source: StemFactor,
    pub theta: LinearMap,
    pub theta_check: HomCheck,
}

/// `m̄`-coordinates of `m_f`'s quotient part, mapped by `alpha` to the other
/// side.
fn quotient_map(s1: &StemFactor, s2: &StemFactor, alpha: &Matrix) -> Result<Matrix> {
    let back = s2.quotient_into_central.left_inverse().ok_or(Error::Singular)?;
    let image = alpha.mul(&s1.quotient_into_central)?;
    let omega = back.mul(&image)?;
    if s2.quotient_into_central.mul(&omega)? != image {
        return Err(Error::CertificateInvalid("alpha does not map m1/Z1 into m2/Z2".into()));
    }
    Ok(omega)
}

/// `Z1 -> Z2` in kernel coordinates of the two stem factor algebras.
fn kernel_map(s1: &StemFactor, s2: &StemFactor, restricted: &Matrix) -> Result<Matrix> {
    let back = s2.kernel_to_center.inverse().ok_or(Error::Singular)?;
    back.mul(restricted)?.mul(&s1.kernel_to_center)
}

/// Pulls the factor set of the second stem pair back along the certificate:
/// `f(m̄1, m̄2) = β⁻¹ g(α m̄1, α m̄2)`, with bracket and actions on `Z1`
/// transported from `Z2` through `β`.
pub fn transport_factor_set(p1: &Pair, p2: &Pair, cert: &IsoclinismCertificate) -> Result<Transport> {
    let restricted = match corollary2_check(p1, p2, cert)? {
        Corollary2::Ok(b) => b.into_matrix(),
        Corollary2::Violation => {
            return Err(Error::CertificateInvalid("beta does not restrict to the Lie-centers".into()))
        }
    };
    let s1 = stem_factor_algebra(p1)?;
    let s2 = stem_factor_algebra(p2)?;
    let b = kernel_map(&s1, &s2, &restricted)?;
    let b_inv = b.inverse().ok_or(Error::Singular)?;
    let omega = quotient_map(&s1, &s2, cert.alpha.matrix())?;
    let g = &s2.extension.data;
    let field = g.field();
    let (k, r) = (g.kernel_dim(), s1.extension.quotient_dim());
    let pull = |v: &Vector| b_inv.mul_vec(v).expect("shapes agree");

    let mut base = StructureTensor::zero(field, k).with_convention(g.base.convention());
    let bcols = b.columns();
    for i in 0..k {
        for j in 0..k {
            base.set_product(i, j, pull(&g.base.bracket_unchecked(&bcols[i], &bcols[j])))?;
        }
    }
    if let Some(names) = s1.extension.data.base.basis_names() {
        base = base.with_basis_names(names.to_vec())?;
    }
    let base = LeibnizAlgebra::new(base)?;

    let ocols = omega.columns();
    let mut f = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            f.push(pull(&g.eval_f(&ocols[i], &ocols[j])));
        }
    }
    let conj = |mats: &[Matrix], x: &Vector| -> Result<Matrix> {
        let mut acc = Matrix::zeros(field, k, k);
        for (c, m) in x.iter().zip(mats) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c))?;
            }
        }
        b_inv.mul(&acc)?.mul(&b)
    };
    let left = ocols.iter().map(|x| conj(&g.left, x)).collect::<Result<Vec<_>>>()?;
    let right = ocols.iter().map(|x| conj(&g.right, x)).collect::<Result<Vec<_>>>()?;
    let data = FactorSetData::new(base, s1.extension.data.quotient.clone(), f, left, right)?;
    let extension = build_extension(&data)?;

    let zero_kr = Matrix::zeros(field, k, r);
    let theta = Matrix::from_blocks(&b, &zero_kr, &zero_kr.transpose(), &omega)?;
    let theta_check = if theta.is_invertible() {
        hom_check(&theta, &extension.algebra, &s2.extension.algebra)?
    } else {
        return Err(Error::Singular);
    };
    Ok(Transport {
        data,
        extension,
        target: s2,
        source: s1,
        theta: LinearMap::new(MapRole::Isomorphism, theta),
        theta_check,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prop4Check {
    Ok,
    /// First basis pair of the source extension where the kernel component
    /// of `η[u, v] = [η u, η v]` fails, 0-based.
    Violation(usize, usize),
}

impl Prop4Check {
    pub fn is_ok(&self) -> bool {
        matches!(self, Prop4Check::Ok)
    }
}

/// The pieces of an isomorphism `η: Z ×_f m̄ -> Z' ×_g m̄'` that preserves
/// the kernel: `η(z, 0) = (η₂ z, 0)` and `η(0, m̄) = (d η₁ m̄, η₁ m̄)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMaps {
    pub eta1: LinearMap,
    pub eta2: LinearMap,
    pub d: LinearMap,
    pub check: Prop4Check,
}

/// Splits `eta` into `η₁`, `η₂` and `d`, then evaluates on every basis pair
/// `η₂([z1,z2] + R_{m̄1} z2 + L_{m̄2} z1 + f(m̄1,m̄2)) + d(η₁[m̄1,m̄2])
///  = [a1,a2] + L'_{η₁m̄2} a1 + R'_{η₁m̄1} a2 + g(η₁m̄1, η₁m̄2)`
/// where `a_i = η₂ z_i + d η₁ m̄_i`.
pub fn induced_maps_and_d(eta: &Matrix, e1: &ExtensionAlgebra, e2: &ExtensionAlgebra) -> Result<InducedMaps> {
    let (k1, r1) = (e1.kernel_dim(), e1.quotient_dim());
    let (k2, r2) = (e2.kernel_dim(), e2.quotient_dim());
    let n1 = k1 + r1;
    let n2 = k2 + r2;
    if eta.rows() != n2 || eta.cols() != n1 {
        return Err(Error::DimensionMismatch {
            expected: n2 * n1,
            found: eta.rows() * eta.cols(),
        });
    }
    if k1 != k2 || !eta.block(k2..n2, 0..k1).is_zero() {
        return Err(Error::CenterNotPreserved);
    }
    if !eta.is_invertible() {
        return Err(Error::Singular);
    }
    let eta2 = eta.block(0..k2, 0..k1);
    let eta1 = eta.block(k2..n2, k1..n1);
    let eta1_inv = eta1.inverse().ok_or(Error::Singular)?;
    let d = eta.block(0..k2, k1..n1).mul(&eta1_inv)?;
    let (f, g) = (&e1.data, &e2.data);
    let field = f.field();
    let apply = |m: &Matrix, v: &Vector| m.mul_vec(v).expect("shapes agree");

    let basis: Vec<Vector> = (0..n1).map(|i| Vector::unit(field, n1, i)).collect();
    let mut check = Prop4Check::Ok;
    'outer: for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            let (z1, m1) = (u.slice(0..k1), u.slice(k1..n1));
            let (z2, m2) = (v.slice(0..k1), v.slice(k1..n1));
            let inner = f
                .base
                .bracket_unchecked(&z1, &z2)
                .add(&f.right_action(&m1, &z2))
                .add(&f.left_action(&m2, &z1))
                .add(&f.eval_f(&m1, &m2));
            let mbar = f.quotient.bracket_unchecked(&m1, &m2);
            let lhs = apply(&eta2, &inner).add(&apply(&d, &apply(&eta1, &mbar)));
            let (w1, w2) = (apply(&eta1, &m1), apply(&eta1, &m2));
            let a1 = apply(&eta2, &z1).add(&apply(&d, &w1));
            let a2 = apply(&eta2, &z2).add(&apply(&d, &w2));
            let rhs = g
                .base
                .bracket_unchecked(&a1, &a2)
                .add(&g.left_action(&w2, &a1))
                .add(&g.right_action(&w1, &a2))
                .add(&g.eval_f(&w1, &w2));
            let quotient_ok = apply(&eta1, &mbar) == g.quotient.bracket_unchecked(&w1, &w2);
            if lhs != rhs || !quotient_ok {
                check = Prop4Check::Violation(i, j);
                break 'outer;
            }
        }
    }
    Ok(InducedMaps {
        eta1: LinearMap::new(MapRole::QuotientMap, eta1),
        eta2: LinearMap::new(MapRole::KernelMap, eta2),
        d: LinearMap::new(MapRole::Correction, d),
        check,
    })
}
