use std::fmt;

use crate::algebra::{
    center, derived_series, left_annihilator, leib_ideal, lower_central_series, right_annihilator,
    StructureTensor,
};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace, Vector};
use crate::pairs::Pair;

use super::cert::{induced_beta, verify_certificate, InducedBeta, IsoclinismCertificate, Mode};

/// Dimensions of subspaces that any isomorphism of pairs preserves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub dim: usize,
    pub ideal: usize,
    pub lie_center: usize,
    pub lie_commutator: usize,
    pub leib: usize,
    pub center: usize,
    pub lower_central: Vec<usize>,
    pub derived: Vec<usize>,
    pub left_annihilator: usize,
    pub right_annihilator: usize,
}

pub fn fingerprint(p: &Pair) -> Fingerprint {
    let q = p.algebra().tensor();
    let dims = |v: Vec<Subspace>| v.iter().map(Subspace::dim).collect();
    Fingerprint {
        dim: q.dim(),
        ideal: p.ideal_space().dim(),
        lie_center: p.lie_center().dim(),
        lie_commutator: p.lie_commutator().dim(),
        leib: leib_ideal(q).dim(),
        center: center(q).dim(),
        lower_central: dims(lower_central_series(q, 4)),
        derived: dims(derived_series(q, 4)),
        left_annihilator: left_annihilator(q).dim(),
        right_annihilator: right_annihilator(q).dim(),
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "dim q: {}", self.dim)?;
        writeln!(f, "dim m: {}", self.ideal)?;
        writeln!(f, "dim Z_Lie: {}", self.lie_center)?;
        writeln!(f, "dim [m,q]_Lie: {}", self.lie_commutator)?;
        writeln!(f, "dim Leib: {}", self.leib)?;
        writeln!(f, "dim center: {}", self.center)?;
        writeln!(f, "lower central: {}", join(&self.lower_central))?;
        writeln!(f, "derived: {}", join(&self.derived))?;
        writeln!(f, "dim left annihilator: {}", self.left_annihilator)?;
        write!(f, "dim right annihilator: {}", self.right_annihilator)
    }
}

/// Candidate images of one basis vector: every nonzero vector over
/// `GF(p)`, every nonzero vector with entries in `{0, ±1, ±2, ±1/2}` over
/// the rationals. Sparse vectors come first, so that maps close to a
/// coordinate permutation are tried early.
pub fn candidate_vectors(field: Field, dim: usize) -> Vec<Vector> {
    let mut out = dense_order(field, dim);
    let weight = |v: &Vector| v.iter().filter(|c| !c.is_zero()).count();
    let lead = |v: &Vector| v.iter().position(|c| !c.is_zero());
    out.sort_by_key(|v| (weight(v), lead(v)));
    out
}

fn dense_order(field: Field, dim: usize) -> Vec<Vector> {
    let coeffs = match field.elements() {
        Some(all) => all,
        None => {
            let q = Field::Rationals;
            let half = q.ratio(1, 2).expect("nonzero");
            vec![q.zero(), q.one(), -q.one(), q.from_i64(2), q.from_i64(-2), half.clone(), -half]
        }
    };
    let mut out = Vec::new();
    let mut digits = vec![0usize; dim];
    loop {
        // big-endian order so that low indices vary slowest
        let v = Vector::new(field, digits.iter().map(|&d| coeffs[d].clone()).collect()).expect("one field");
        if !v.is_zero() {
            out.push(v);
        }
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < coeffs.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Outcome of the backtracking engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum EngineResult {
    Found(Matrix),
    Exhausted,
    BudgetExceeded,
}

struct Engine<'a> {
    src: &'a StructureTensor,
    dst: &'a StructureTensor,
    strict: bool,
    candidates: Vec<Vector>,
    budget: u64,
    used: u64,
}

impl Engine<'_> {
    fn assign(&mut self, images: &mut [Option<Vector>], k: usize, v: Vector) -> bool {
        if self.used >= self.budget {
            return false;
        }
        self.used += 1;
        images[k] = Some(v);
        true
    }

    fn independent(&self, images: &[Option<Vector>]) -> bool {
        let assigned: Vec<Vector> = images.iter().flatten().cloned().collect();
        Subspace::span(self.dst.field(), self.dst.dim(), &assigned)
            .map(|s| s.dim() == assigned.len())
            .unwrap_or(false)
    }

    /// Applies forced assignments and checks every determinable bracket.
    /// Returns `None` on contradiction, `Some(false)` if the budget ran out.
    fn propagate(&mut self, images: &mut [Option<Vector>]) -> Option<bool> {
        if !self.strict {
            return Some(true);
        }
        let n = self.src.dim();
        loop {
            let mut progress = false;
            for i in 0..n {
                for j in 0..n {
                    let (Some(xi), Some(xj)) = (&images[i], &images[j]) else {
                        continue;
                    };
                    let target = self.dst.bracket_unchecked(xi, xj);
                    let rel = self.src.product(i, j);
                    let open: Vec<usize> = (0..n)
                        .filter(|&k| !rel[k].is_zero() && images[k].is_none())
                        .collect();
                    let mut known = Vector::zeros(self.dst.field(), self.dst.dim());
                    for k in 0..n {
                        if let Some(img) = &images[k] {
                            if !rel[k].is_zero() {
                                known.add_scaled(&rel[k], img);
                            }
                        }
                    }
                    match open.as_slice() {
                        [] => {
                            if known != target {
                                return None;
                            }
                        }
                        [k] => {
                            let c = rel[*k].inv().expect("nonzero");
                            let forced = target.sub(&known).scale(&c);
                            if forced.is_zero() {
                                return None;
                            }
                            if !self.assign(images, *k, forced) {
                                return Some(false);
                            }
                            if !self.independent(images) {
                                return None;
                            }
                            progress = true;
                        }
                        _ => {}
                    }
                }
            }
            if !progress {
                return Some(true);
            }
        }
    }

    fn run(
        &mut self,
        images: &mut Vec<Option<Vector>>,
        accept: &mut dyn FnMut(&Matrix) -> bool,
    ) -> EngineResult {
        let Some(k) = images.iter().position(Option::is_none) else {
            let cols: Vec<Vector> = images.iter().map(|v| v.clone().expect("complete")).collect();
            let m = Matrix::from_columns(self.dst.field(), self.dst.dim(), &cols).expect("shapes agree");
            return if accept(&m) {
                EngineResult::Found(m)
            } else {
                EngineResult::Exhausted
            };
        };
        let candidates = self.candidates.clone();
        for v in candidates {
            let mut next = images.clone();
            if !self.assign(&mut next, k, v) {
                return EngineResult::BudgetExceeded;
            }
            if !self.independent(&next) {
                continue;
            }
            match self.propagate(&mut next) {
                None => continue,
                Some(false) => return EngineResult::BudgetExceeded,
                Some(true) => {}
            }
            match self.run(&mut next, accept) {
                EngineResult::Exhausted => {}
                other => return other,
            }
        }
        EngineResult::Exhausted
    }
}

/// Depth-first search for bijective linear maps `src -> dst` (bracket
/// preserving when `strict`), assigning basis images in basis order.
/// The first map accepted by `accept` is returned. `budget` bounds the
/// number of image assignments.
pub(crate) fn search_maps(
    src: &StructureTensor,
    dst: &StructureTensor,
    strict: bool,
    budget: u64,
    accept: &mut dyn FnMut(&Matrix) -> bool,
) -> (EngineResult, u64) {
    if src.dim() != dst.dim() {
        return (EngineResult::Exhausted, 0);
    }
    let mut engine = Engine {
        src,
        dst,
        strict,
        candidates: candidate_vectors(dst.field(), dst.dim()),
        budget,
        used: 0,
    };
    let mut images = vec![None; src.dim()];
    let result = match engine.propagate(&mut images) {
        None => EngineResult::Exhausted,
        Some(false) => EngineResult::BudgetExceeded,
        Some(true) => engine.run(&mut images, accept),
    };
    (result, engine.used)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(IsoclinismCertificate),
    NotIsoclinic(String),
    Inconclusive(String),
}

pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Searches for an isoclinism certificate, assigning `alpha` by
/// backtracking and inducing `beta` from it.
pub fn search_isoclinism(p1: &Pair, p2: &Pair, budget: u64, mode: Mode) -> Result<SearchOutcome> {
    let field = p1.algebra().field();
    if field != p2.algebra().field() {
        return Err(Error::FieldMismatch(field, p2.algebra().field()));
    }
    let (c1, c2) = (p1.central_quotient(), p2.central_quotient());
    let dims1 = (c1.algebra.dim(), p1.ideal_image().dim(), p1.lie_commutator().dim());
    let dims2 = (c2.algebra.dim(), p2.ideal_image().dim(), p2.lie_commutator().dim());
    if dims1 != dims2 {
        return Ok(SearchOutcome::NotIsoclinic(format!(
            "invariant dimensions differ: (q/Z, m/Z, K) = {dims1:?} vs {dims2:?}"
        )));
    }
    let mut found = None;
    let mut accept = |alpha: &Matrix| {
        if p1.ideal_image().image(alpha).ok().as_ref() != Some(p2.ideal_image()) {
            return false;
        }
        let Ok(InducedBeta::Beta(beta)) = induced_beta(p1, p2, alpha) else {
            return false;
        };
        let cert = IsoclinismCertificate::new(alpha.clone(), beta.into_matrix(), mode);
        if verify_certificate(p1, p2, &cert).map(|c| c.is_ok()).unwrap_or(false) {
            found = Some(cert);
            true
        } else {
            false
        }
    };
    let (result, used) = search_maps(&c1.algebra, &c2.algebra, mode == Mode::Strict, budget, &mut accept);
    Ok(match result {
        EngineResult::Found(_) => SearchOutcome::Found(found.expect("accepted certificate")),
        EngineResult::Exhausted => match field {
            Field::Prime(p) => SearchOutcome::NotIsoclinic(format!(
                "exhaustive {mode} search over GF({p}) found no certificate ({used} assignments)"
            )),
            Field::Rationals => SearchOutcome::Inconclusive(format!(
                "no certificate with coefficients in {{0, ±1, ±2, ±1/2}} ({used} assignments)"
            )),
        },
        EngineResult::BudgetExceeded => SearchOutcome::Inconclusive(format!("budget of {budget} assignments exhausted")),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsomorphismOutcome {
    /// An isomorphism `q1 -> q2` carrying `m1` onto `m2`.
    Found(Matrix),
    /// Exhaustive search over a finite field found nothing.
    NoIsomorphism { field: Field, assignments: u64 },
    /// Invariants differ; no search was needed.
    FingerprintMismatch,
    Inconclusive(String),
}

/// Searches for an isomorphism of pairs. With `use_fingerprint` false the
/// search runs even when invariants already tell the answer.
pub fn search_pair_isomorphism(p1: &Pair, p2: &Pair, budget: u64, use_fingerprint: bool) -> Result<IsomorphismOutcome> {
    let field = p1.algebra().field();
    if field != p2.algebra().field() {
        return Err(Error::FieldMismatch(field, p2.algebra().field()));
    }
    if p1.algebra().dim() != p2.algebra().dim() || p1.ideal_space().dim() != p2.ideal_space().dim() {
        return Ok(IsomorphismOutcome::FingerprintMismatch);
    }
    if use_fingerprint && fingerprint(p1) != fingerprint(p2) {
        return Ok(IsomorphismOutcome::FingerprintMismatch);
    }
    let mut accept = |phi: &Matrix| p1.ideal_space().image(phi).ok().as_ref() == Some(p2.ideal_space());
    let (result, used) = search_maps(p1.algebra(), p2.algebra(), true, budget, &mut accept);
    Ok(match result {
        EngineResult::Found(m) => IsomorphismOutcome::Found(m),
        EngineResult::Exhausted => match field {
            Field::Prime(_) => IsomorphismOutcome::NoIsomorphism {
                field,
                assignments: used,
            },
            Field::Rationals => IsomorphismOutcome::Inconclusive("bounded coefficient search exhausted".into()),
        },
        EngineResult::BudgetExceeded => IsomorphismOutcome::Inconclusive(format!("budget of {budget} assignments exhausted")),
    })
}
