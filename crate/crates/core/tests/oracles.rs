//! Hand-computed values for the catalog algebras.

use leibniz_core::algebra::{
    center, hom_check, IdealHandle, LeibnizAlgebra, LeibnizCheck, StructureTensor,
};
use leibniz_core::catalog::{catalog, lookup, Claimed};
use leibniz_core::exactla::{Field, Matrix, Subspace, Vector};
use leibniz_core::extension::{
    build_extension, check_factor_identity, factor_set_from_pair, induced_maps_and_d, lemma2_reconstruct,
    stem_factor_algebra, transport_factor_set, FactorCheck, Prop4Check,
};
use leibniz_core::isoclinism::{
    alpha_hom_violations, corollary2_check, CertCheck, theorem3_construct, verify_certificate, Condition, Corollary2,
    IsoclinismCertificate, Mode, Theorem3Outcome, Violation,
};
use leibniz_core::pairs::{epsilon_condition, stem_reduce, EpsilonMode, EpsilonWitness, Pair};
use leibniz_core::Error;

const Q: Field = Field::Rationals;

fn pair(name: &str) -> Pair {
    lookup(name).unwrap().pair().unwrap()
}

fn span(name: &str, names: &[&str]) -> Subspace {
    lookup(name).unwrap().span_of(Q, names)
}

fn cert(alpha: &[&[i64]], beta: &[&[i64]], mode: Mode) -> IsoclinismCertificate {
    IsoclinismCertificate::new(Matrix::from_ints(Q, alpha), Matrix::from_ints(Q, beta), mode)
}

fn a1_to_a7() -> IsoclinismCertificate {
    cert(
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
        &[&[1, 0, 0], &[0, 1, 0], &[0, 1, 1]],
        Mode::Strict,
    )
}

fn l26_to_l40(mode: Mode) -> IsoclinismCertificate {
    cert(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[1, 0], &[0, 1]], mode)
}

#[test]
fn catalog_is_leibniz_except_l16() {
    for entry in catalog() {
        let check = entry.tensor().check_leibniz();
        if entry.name == "L16" {
            assert!(matches!(check, LeibnizCheck::Counterexample { i: 3, j: 3, k: 3, .. }));
            assert!(entry.claim("leibniz").unwrap().disputed);
        } else {
            assert!(check.is_ok(), "{}", entry.name);
        }
    }
}

#[test]
fn mutated_a1_counterexample() {
    let mut t = lookup("A1").unwrap().tensor();
    let mut v = t.product(2, 0).clone();
    v[0] = Q.one();
    t.set_product(2, 0, v).unwrap();
    assert!(matches!(t.check_leibniz(), LeibnizCheck::Counterexample { i: 0, j: 0, k: 0, .. }));
    assert!(t.leibniz_failures().contains(&(0, 2, 0)));
    assert_eq!(LeibnizAlgebra::new(t).unwrap_err(), Error::NotLeibniz(0, 0, 0));
}

#[test]
fn claimed_spans_match_or_are_flagged() {
    for entry in catalog() {
        let Ok(p) = entry.pair() else { continue };
        for (key, computed) in [("lie_center", p.lie_center().clone()), ("lie_commutator", p.lie_commutator().space().clone())] {
            let Some(claim) = entry.claim(key) else { continue };
            let Claimed::Span(names) = claim.value else { panic!("span claim") };
            let claimed = entry.span_of(Q, names);
            assert_eq!(claim.disputed, claimed != computed, "{} {key}", entry.name);
            if let Some(Claimed::Span(c)) = claim.computed {
                assert_eq!(entry.span_of(Q, c), computed, "{} {key}", entry.name);
            }
        }
    }
}

#[test]
fn published_invariants() {
    let cases: &[(&str, &[&str], &[&str])] = &[
        ("2d", &["a2"], &["a1"]),
        ("2e", &["g2"], &["g1"]),
        ("A1", &["a4", "a5"], &["a3", "a4", "a5"]),
        ("A7", &["g4", "g5"], &["g3", "g4", "g5"]),
        ("3a", &[], &["a1"]),
        ("L26", &["e3"], &["e1", "e2"]),
        ("L40", &["a2"], &["a2", "a3"]),
    ];
    for &(name, z, k) in cases {
        let p = pair(name);
        assert_eq!(p.lie_center(), &span(name, z), "{name}");
        assert_eq!(p.lie_commutator().space(), &span(name, k), "{name}");
    }
    assert!(!pair("L26").is_stem());
    assert!(pair("L40").is_stem());
}

#[test]
fn center_of_a1_is_its_lie_center() {
    let a1 = lookup("A1").unwrap().algebra().unwrap();
    assert_eq!(center(&a1), span("A1", &["a4", "a5"]));
}

#[test]
fn small_certificates_verify() {
    let c = cert(&[&[1, 0], &[0, 1]], &[&[1]], Mode::Strict);
    assert!(verify_certificate(&pair("2d"), &pair("2e"), &c).unwrap().is_ok());
    assert!(verify_certificate(&pair("A1"), &pair("A7"), &a1_to_a7()).unwrap().is_ok());
}

#[test]
fn l26_l40_is_only_linear() {
    let (p1, p2) = (pair("L26"), pair("L40"));
    assert!(verify_certificate(&p1, &p2, &l26_to_l40(Mode::Linear)).unwrap().is_ok());
    let strict = verify_certificate(&p1, &p2, &l26_to_l40(Mode::Strict)).unwrap();
    assert_eq!(strict, CertCheck::Violation(Violation::AlphaNotHomomorphism(0, 2)));
    // q/Z coordinates are e1, e2, e4
    let alpha = Matrix::identity(Q, 3);
    assert_eq!(alpha_hom_violations(&p1, &p2, &alpha).unwrap(), vec![(0, 2), (2, 2)]);
}

#[test]
fn corollary2_on_a1_a7() {
    let (p1, p2) = (pair("A1"), pair("A7"));
    let Corollary2::Ok(map) = corollary2_check(&p1, &p2, &a1_to_a7()).unwrap() else {
        panic!("restriction should exist");
    };
    // Z-coordinates on both sides
    let (z1, z2) = (p1.lie_center(), p2.lie_center());
    let images: Vec<Vector> = (0..z1.dim())
        .map(|i| z2.from_coordinates(&map.matrix().col(i)))
        .collect();
    assert_eq!(z1, &span("A1", &["a4", "a5"]));
    assert_eq!(Subspace::span(Q, 5, &images).unwrap(), span("A7", &["g4", "g5"]));
}

#[test]
fn stem_reduction_of_2d() {
    let r = stem_reduce(&pair("2d")).unwrap();
    assert_eq!(r.removed, span("2d", &["a2"]));
    let reduced = r.pair.algebra().tensor();
    assert_eq!(reduced.dim(), 2);
    let expected = StructureTensor::from_relations(Q, 2, &[(1, 2, &[(1, 1)])]);
    assert!(hom_check(&Matrix::identity(Q, 2), reduced, &expected).unwrap().is_ok());
    assert!(verify_certificate(&pair("2d"), &r.pair, &r.certificate).unwrap().is_ok());
}

#[test]
fn epsilon_values() {
    let lambda = lookup("lambda2").unwrap().tensor();
    let r = epsilon_condition(&lambda, &Subspace::full(Q, 2), EpsilonMode::AllElements);
    assert!(r.pass);
    assert_eq!(r.uniform, Some(Q.one()));

    let l16 = lookup("L16").unwrap().tensor();
    let full = Subspace::full(Q, 4);
    let basis = epsilon_condition(&l16, &full, EpsilonMode::BasisPairs);
    assert!(basis.pass);
    let eps: Vec<_> = basis.epsilons.iter().map(|(i, j, e)| (*i, *j, e.clone())).collect();
    assert_eq!(
        eps,
        vec![(0, 0, Q.one()), (1, 3, Q.from_i64(-1)), (3, 3, Q.one())]
    );
    let all = epsilon_condition(&l16, &full, EpsilonMode::AllElements);
    assert!(!all.pass);
    assert_eq!(
        all.witness,
        Some(EpsilonWitness::Elements {
            x: Vector::from_ints(Q, &[1, 0, 0, 1]),
            y: Vector::from_ints(Q, &[1, 1, 0, 0]),
        })
    );
}

#[test]
fn a1_factor_set() {
    let q = lookup("A1").unwrap().algebra().unwrap();
    let m = IdealHandle::new(&q, span("A1", &["a4", "a5"])).unwrap();
    let data = factor_set_from_pair(&q, &m).unwrap();
    assert_eq!(check_factor_identity(&data), FactorCheck::Ok);
    let unit = |i| Vector::unit(Q, 3, i);
    // quotient basis ā1, ā2, ā3; kernel basis a4, a5
    assert_eq!(data.eval_f(&unit(0), &unit(2)), Vector::from_ints(Q, &[0, 1]));
    assert_eq!(data.eval_f(&unit(1), &unit(0)), Vector::from_ints(Q, &[1, 0]));
    assert_eq!(data.eval_f(&unit(0), &unit(1)), Vector::zeros(Q, 2));
    let (ext, iso) = lemma2_reconstruct(&q, &m).unwrap();
    assert!(hom_check(iso.matrix(), ext.algebra.tensor(), q.tensor()).unwrap().is_ok());
}

#[test]
fn perturbed_factor_set_fails() {
    let q = lookup("A1").unwrap().algebra().unwrap();
    let m = IdealHandle::new(&q, span("A1", &["a4", "a5"])).unwrap();
    let mut data = factor_set_from_pair(&q, &m).unwrap();
    // f(ā3, ā1) += a4
    data.f[2 * 3] = data.f[2 * 3].add(&Vector::from_ints(Q, &[1, 0]));
    assert_eq!(check_factor_identity(&data), FactorCheck::Violation(0, 0, 0));
    assert_eq!(build_extension(&data).unwrap_err(), Error::FactorIdentityViolated(0, 0, 0));
}

#[test]
fn every_catalog_pair_reconstructs() {
    for entry in catalog() {
        let Ok(p) = entry.pair() else { continue };
        let q = p.algebra();
        let data = factor_set_from_pair(q, p.ideal()).unwrap();
        assert!(check_factor_identity(&data).is_ok(), "{}", entry.name);
        assert!(build_extension(&data).unwrap().algebra.tensor().check_leibniz().is_ok());
        let (ext, iso) = lemma2_reconstruct(q, p.ideal()).unwrap();
        assert!(iso.is_invertible());
        assert!(hom_check(iso.matrix(), ext.algebra.tensor(), q.tensor()).unwrap().is_ok(), "{}", entry.name);
    }
}

#[test]
fn factor_set_vanishes_exactly_for_homomorphic_splittings() {
    let mut zero = 0;
    for entry in catalog() {
        let Ok(p) = entry.pair() else { continue };
        let data = factor_set_from_pair(p.algebra(), p.ideal()).unwrap();
        let rho = data.splitting.as_ref().unwrap();
        let hom = hom_check(rho.matrix(), data.quotient.tensor(), p.algebra().tensor()).unwrap().is_ok();
        assert_eq!(data.is_zero(), hom, "{}", entry.name);
        zero += usize::from(hom);
    }
    // abelian3, and the full pairs whose quotient is trivial
    assert!(zero >= 1);
}

#[test]
fn transport_a1_to_a7_and_back() {
    let (p1, p2) = (pair("A1"), pair("A7"));
    let t = transport_factor_set(&p1, &p2, &a1_to_a7()).unwrap();
    assert!(t.theta_check.is_ok());
    assert!(check_factor_identity(&t.data).is_ok());
    let unit = |i| Vector::unit(Q, 3, i);
    assert_eq!(t.data.eval_f(&unit(0), &unit(1)), Vector::from_ints(Q, &[1, -1]));
    assert_eq!(t.data.eval_f(&unit(0), &unit(2)), Vector::from_ints(Q, &[0, 1]));
    assert_eq!(t.data.eval_f(&unit(1), &unit(0)), Vector::from_ints(Q, &[0, 1]));

    let back = transport_factor_set(&p2, &p1, &a1_to_a7().inverse().unwrap()).unwrap();
    assert!(back.theta_check.is_ok());
}

#[test]
fn transport_along_identity_is_trivial() {
    let p = pair("A7");
    let t = transport_factor_set(&p, &p, &IsoclinismCertificate::identity(&p)).unwrap();
    assert!(t.theta_check.is_ok());
    assert_eq!(t.theta.matrix(), &Matrix::identity(Q, 5));
    let own = stem_factor_algebra(&p).unwrap();
    assert_eq!(t.data.f, own.extension.data.f);
}

#[test]
fn induced_maps_of_theta() {
    let (p1, p2) = (pair("A1"), pair("A7"));
    let t = transport_factor_set(&p1, &p2, &a1_to_a7()).unwrap();
    let e1 = &t.extension;
    let e2 = &t.target.extension;
    let maps = induced_maps_and_d(t.theta.matrix(), e1, e2).unwrap();
    assert_eq!(maps.check, Prop4Check::Ok);
    assert!(maps.d.matrix().is_zero());

    let id = Matrix::identity(Q, 5);
    let own = induced_maps_and_d(&id, e2, e2).unwrap();
    assert_eq!(own.check, Prop4Check::Ok);
    assert_eq!(own.eta1.matrix(), &Matrix::identity(Q, 3));

    let mut swap = Matrix::identity(Q, 5);
    for (i, j) in [(0, 0), (2, 2)] {
        swap.set(i, j, Q.zero());
    }
    swap.set(0, 2, Q.one());
    swap.set(2, 0, Q.one());
    assert_eq!(induced_maps_and_d(&swap, e2, e2).unwrap_err(), Error::CenterNotPreserved);
}

#[test]
fn theorem3_outcomes() {
    let (p1, p2) = (pair("A1"), pair("A7"));
    match theorem3_construct(&p1, &p2, &a1_to_a7(), EpsilonMode::AllElements).unwrap() {
        Theorem3Outcome::ConditionFailed(Condition::B, Some(report)) => assert!(!report.pass),
        other => panic!("unexpected {other:?}"),
    }

    let lambda = pair("lambda2");
    // basis a1 -> 3 a1, a2 -> a2 + a1
    let change = Matrix::from_ints(Q, &[&[3, 1], &[0, 1]]);
    let copy = Pair::full(lambda.algebra().change_basis(&change).unwrap());
    let c = IsoclinismCertificate::new(
        Matrix::identity(Q, 1),
        Matrix::from_rows(Q, vec![vec![Q.ratio(1, 3).unwrap()]]).unwrap(),
        Mode::Strict,
    );
    assert!(verify_certificate(&lambda, &copy, &c).unwrap().is_ok());
    match theorem3_construct(&lambda, &copy, &c, EpsilonMode::AllElements).unwrap() {
        Theorem3Outcome::Iso { iso, epsilon, .. } => {
            assert_eq!(epsilon.uniform, Some(Q.one()));
            assert!(hom_check(iso.matrix(), lambda.algebra().tensor(), copy.algebra().tensor()).unwrap().is_ok());
            assert!(iso.is_invertible());
        }
        other => panic!("unexpected {other:?}"),
    }

    let bad = IsoclinismCertificate::new(Matrix::identity(Q, 1), Matrix::zeros(Q, 1, 1), Mode::Strict);
    assert!(matches!(
        theorem3_construct(&lambda, &copy, &bad, EpsilonMode::AllElements),
        Err(Error::CertificateInvalid(_))
    ));
}
