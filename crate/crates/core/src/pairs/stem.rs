use crate::algebra::{center_within, closure_unchecked, is_ideal};
use crate::error::{Error, Result};
use crate::exactla::{all_subspaces, complement, Field, Matrix, Subspace, Vector};
use crate::isoclinism::{quotient_isoclinism, IsoclinismCertificate};

use super::Pair;

/// Largest Lie-center dimension for which finite-field reduction enumerates
/// every candidate ideal.
const EXHAUSTIVE_CENTER_DIM: usize = 6;

/// A stem pair isoclinic to the input.
#[derive(Debug, Clone)]
pub struct StemReduction {
    /// `(m/s, q/s)`
    pub pair: Pair,
    /// The ideal `s` that was factored out.
    pub removed: Subspace,
    /// Certificate from the input pair to `pair`.
    pub certificate: IsoclinismCertificate,
    /// `q -> q/s`
    pub projection: Matrix,
}

fn admissible(p: &Pair, s: &Subspace) -> bool {
    is_ideal(p.algebra(), s)
        && s.intersect(p.lie_commutator().space())
            .map(|t| t.is_zero())
            .unwrap_or(false)
}

/// Every ideal `s ⊆ m` of `q` with `s ∩ [m,q]_Lie = 0`, by enumerating all
/// subspaces of `m`. Finite fields only.
pub fn admissible_ideals(p: &Pair) -> Option<Vec<Subspace>> {
    let m = p.ideal_space();
    let f = m.field();
    let mut out = Vec::new();
    for d in 0..=m.dim() {
        for s in all_subspaces(f, m.dim(), d)? {
            let vs: Vec<Vector> = s.basis_vectors().iter().map(|c| m.from_coordinates(c)).collect();
            let s = Subspace::span(f, m.ambient_dim(), &vs).expect("shapes agree");
            if admissible(p, &s) {
                out.push(s);
            }
        }
    }
    Some(out)
}

/// Maximal admissible ideal inside the Lie-center, least RREF basis first.
fn exhaustive_choice(p: &Pair) -> Option<Subspace> {
    let z = p.lie_center();
    let f = z.field();
    for d in (0..=z.dim()).rev() {
        let mut best: Option<Subspace> = None;
        for c in all_subspaces(f, z.dim(), d)? {
            let vs: Vec<Vector> = c.basis_vectors().iter().map(|v| z.from_coordinates(v)).collect();
            let s = Subspace::span(f, z.ambient_dim(), &vs).expect("shapes agree");
            if !admissible(p, &s) {
                continue;
            }
            if best.as_ref().map_or(true, |b| s.lex_cmp(b).is_lt()) {
                best = Some(s);
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

/// Start from the two-sided central part of the Lie-center minus the
/// commutator, then add basis vectors of the Lie-center and their pairwise
/// sums whenever the generated ideal still avoids the commutator.
fn greedy_choice(p: &Pair) -> Result<Subspace> {
    let q = p.algebra();
    let z = p.lie_center();
    let k = p.lie_commutator().space();
    let z0 = center_within(q, z);
    let mut s = complement(&z0.intersect(k)?, &z0)?;
    let basis = z.basis_vectors();
    let mut candidates = basis.clone();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            candidates.push(basis[i].add(&basis[j]));
        }
    }
    for v in candidates {
        if s.contains(&v) {
            continue;
        }
        let mut gens = s.basis_vectors();
        gens.push(v);
        let t = closure_unchecked(q, &Subspace::span(q.field(), q.dim(), &gens)?);
        if t.intersect(k)?.is_zero() {
            s = t;
        }
    }
    Ok(s)
}

/// Factors out an ideal `s ⊆ Z_Lie(m,q)` with `s ∩ [m,q]_Lie = 0`, chosen
/// maximal, to reach a stem pair.
///
/// Over `GF(p)` with a Lie-center of dimension at most 6 every candidate is
/// enumerated. Otherwise a greedy heuristic is used, and
/// [`Error::StemReductionIncomplete`] reports when it does not reach a
/// stem pair. That also happens with the exhaustive search: a Lie-central
/// vector outside the commutator may still generate an ideal that meets it,
/// and then no quotient of this kind is stem.
pub fn stem_reduce(p: &Pair) -> Result<StemReduction> {
    let exhaustive = matches!(p.algebra().field(), Field::Prime(_)) && p.lie_center().dim() <= EXHAUSTIVE_CENTER_DIM;
    let s = if exhaustive {
        exhaustive_choice(p).expect("the zero ideal is admissible")
    } else {
        greedy_choice(p)?
    };
    let lemma = quotient_isoclinism(p, &s)?;
    if !lemma.reduced.is_stem() {
        return Err(Error::StemReductionIncomplete);
    }
    Ok(StemReduction {
        pair: lemma.reduced,
        removed: s,
        certificate: lemma.certificate,
        projection: lemma.projection,
    })
}
