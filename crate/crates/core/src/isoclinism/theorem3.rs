use crate::algebra::{hom_check, subalgebra, HomCheck, LinearMap, MapRole};
use crate::error::{Error, Result};
use crate::exactla::{solve, Matrix, Solution, Vector};
use crate::extension::{stem_factor_algebra, StemFactor};
use crate::pairs::{epsilon_condition, EpsilonMode, EpsilonReport, Pair};

use super::cert::{verify_certificate, CertCheck, IsoclinismCertificate};
use super::lemma::{corollary2_check, Corollary2};

/// Which hypothesis of the stem-isomorphism construction failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// One of the ideals is not a stem algebra on its own.
    A,
    /// The ideal of the first pair is not ε-commutative.
    B,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Condition::A => write!(f, "a"),
            Condition::B => write!(f, "b"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Theorem3Outcome {
    Iso {
        /// `m_f -> n_g` on the stem factor coordinates.
        lambda: LinearMap,
        /// `m -> n` on the RREF coordinates of both ideals.
        iso: LinearMap,
        epsilon: EpsilonReport,
    },
    ConditionFailed(Condition, Option<EpsilonReport>),
    /// A map was built but it is not an isomorphism.
    VerificationFailed(String),
}

/// `d` with `d w_ij = rhs_ij` for all pairs, solved row by row; zero on
/// directions not spanned by the `w_ij`.
fn solve_correction(ws: &[Vector], rhs: &[Vector], rows: usize, cols: usize) -> Option<Matrix> {
    let field = ws.first().map(|w| w.field())?;
    let system = Matrix::from_row_vectors(field, cols, ws).ok()?;
    let mut d_rows = Vec::with_capacity(rows);
    for t in 0..rows {
        let b = Vector::new(field, rhs.iter().map(|v| v.iter().nth(t).expect("row in range").clone()).collect()).ok()?;
        match solve(&system, &b).ok()? {
            Solution::NoSolution => return None,
            Solution::Affine { particular, .. } => d_rows.push(particular),
        }
    }
    Matrix::from_row_vectors(field, cols, &d_rows).ok()
}

/// Builds an isomorphism `m ≅ n` between the ideals of two Lie-isoclinic
/// pairs whose ideals are stem algebras and whose first ideal is
/// ε-commutative. The map `λ(z, m̄) = (τ₂ z + d ω₁ m̄, ω₁ m̄)` is always
/// checked against the brackets before it is returned.
pub fn theorem3_construct(
    p1: &Pair,
    p2: &Pair,
    cert: &IsoclinismCertificate,
    mode: EpsilonMode,
) -> Result<Theorem3Outcome> {
    if let CertCheck::Violation(v) = verify_certificate(p1, p2, cert)? {
        return Err(Error::CertificateInvalid(v.to_string()));
    }
    for p in [p1, p2] {
        let m = subalgebra(p.algebra(), p.ideal_space())?;
        if !Pair::full(m).is_stem() {
            return Ok(Theorem3Outcome::ConditionFailed(Condition::A, None));
        }
    }
    let epsilon = epsilon_condition(p1.algebra(), p1.ideal_space(), mode);
    if !epsilon.pass {
        return Ok(Theorem3Outcome::ConditionFailed(Condition::B, Some(epsilon)));
    }
    // a) for the ideals forces both pairs to be stem
    let tau = match corollary2_check(p1, p2, cert)? {
        Corollary2::Ok(b) => b.into_matrix(),
        Corollary2::Violation => {
            return Ok(Theorem3Outcome::VerificationFailed(
                "beta does not restrict to the Lie-centers".into(),
            ))
        }
    };
    let s1 = stem_factor_algebra(p1)?;
    let s2 = stem_factor_algebra(p2)?;
    let tau2 = s2.kernel_to_center.inverse().ok_or(Error::Singular)?.mul(&tau)?.mul(&s1.kernel_to_center)?;
    let omega1 = match omega(&s1, &s2, cert.alpha.matrix())? {
        Some(w) => w,
        None => {
            return Ok(Theorem3Outcome::VerificationFailed(
                "alpha does not map m1/Z1 onto m2/Z2".into(),
            ))
        }
    };
    let (f, g) = (&s1.extension.data, &s2.extension.data);
    let (k, r) = (g.kernel_dim(), g.quotient_dim());
    let field = f.field();
    let ocols = omega1.columns();
    let mut ws = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..r {
        for j in 0..r {
            let bracket = f.quotient.product(i, j);
            ws.push(omega1.mul_vec(bracket)?);
            let target = g.eval_f(&ocols[i], &ocols[j]);
            rhs.push(target.sub(&tau2.mul_vec(&f.f[i * r + j])?));
        }
    }
    let d = if r == 0 {
        Matrix::zeros(field, k, 0)
    } else {
        match solve_correction(&ws, &rhs, k, r) {
            Some(d) => d,
            None => {
                return Ok(Theorem3Outcome::VerificationFailed(
                    "no linear map d satisfies the correction equation".into(),
                ))
            }
        }
    };
    let lambda = Matrix::from_blocks(&tau2, &d.mul(&omega1)?, &Matrix::zeros(field, r, k), &omega1)?;
    if !lambda.is_invertible() {
        return Ok(Theorem3Outcome::VerificationFailed("lambda is singular".into()));
    }
    if let HomCheck::Violation(i, j) = hom_check(&lambda, &s1.extension.algebra, &s2.extension.algebra)? {
        return Ok(Theorem3Outcome::VerificationFailed(format!(
            "lambda fails to respect the bracket at ({}, {})",
            i + 1,
            j + 1
        )));
    }
    let back = s1.iso.inverse()?;
    let iso = s2.iso.matrix().mul(&lambda)?.mul(back.matrix())?;
    if let HomCheck::Violation(i, j) = hom_check(&iso, &s1.ideal_algebra, &s2.ideal_algebra)? {
        return Ok(Theorem3Outcome::VerificationFailed(format!(
            "m1 -> m2 fails to respect the bracket at ({}, {})",
            i + 1,
            j + 1
        )));
    }
    Ok(Theorem3Outcome::Iso {
        lambda: LinearMap::new(MapRole::Isomorphism, lambda),
        iso: LinearMap::new(MapRole::Isomorphism, iso),
        epsilon,
    })
}

/// `α` restricted to `m1/Z1 -> m2/Z2` in quotient coordinates of the stem
/// factor algebras; `None` when the image leaves `m2/Z2`.
fn omega(s1: &StemFactor, s2: &StemFactor, alpha: &Matrix) -> Result<Option<Matrix>> {
    let back = s2.quotient_into_central.left_inverse().ok_or(Error::Singular)?;
    let image = alpha.mul(&s1.quotient_into_central)?;
    let w = back.mul(&image)?;
    if s2.quotient_into_central.mul(&w)? != image || !w.is_invertible() {
        return Ok(None);
    }
    Ok(Some(w))
}
