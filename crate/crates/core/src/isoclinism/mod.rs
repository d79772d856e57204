//! Lie-isoclinism of pairs: certificates, their verification, search, and
//! the constructions that produce certificates from quotients, and the
//! isomorphism builder for stem ideals.

mod cert;
mod lemma;
mod search;
mod theorem3;

pub use cert::{
    alpha_hom_violations, certificate_from_isomorphism, commutator_map, induced_beta, verify_certificate,
    BetaFailure, CertCheck, InducedBeta, IsoclinismCertificate, Mode, Violation,
};
pub use lemma::{corollary2_check, quotient_isoclinism, Corollary2, QuotientIsoclinism};
pub use search::{
    candidate_vectors, fingerprint, search_isoclinism, search_pair_isomorphism, Fingerprint, IsomorphismOutcome,
    SearchOutcome, DEFAULT_BUDGET,
};
pub use theorem3::{theorem3_construct, Condition, Theorem3Outcome};
