//! The acceptance criteria, one test each. Every test writes a single
//! `criterion N ... PASS|FAIL` line straight to stderr so that the summary
//! shows up even when the harness captures output. All comparisons are
//! exact: the arithmetic is over Q or GF(p), so the tolerance is zero.

mod common;

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use leibniz_cli::format::AlgebraFile;
use leibniz_core::algebra::{
    enumerate_leibniz, hom_check, is_ideal, Convention, LeibnizAlgebra, LeibnizCheck, StructureTensor,
};
use leibniz_core::catalog::{catalog, lookup, Claimed};
use leibniz_core::exactla::{all_subspaces, Field, Matrix, Scalar, Subspace, Vector};
use leibniz_core::extension::{build_extension, check_factor_identity, lemma2_reconstruct, factor_set_from_pair};
use leibniz_core::isoclinism::{
    alpha_hom_violations, certificate_from_isomorphism, corollary2_check, search_isoclinism,
    search_pair_isomorphism, theorem3_construct, verify_certificate, Condition, Corollary2,
    IsoclinismCertificate, IsomorphismOutcome, Mode, SearchOutcome, Theorem3Outcome, DEFAULT_BUDGET,
};
use leibniz_core::Error;
use leibniz_core::pairs::{admissible_ideals, epsilon_condition, stem_reduce, EpsilonMode, EpsilonWitness, Pair};

type Verdict = Result<String, String>;

const Q: Field = Field::Rationals;

fn report(n: u32, title: &str, verdict: Verdict) {
    let line = match &verdict {
        Ok(detail) => format!("criterion {n} ({title}): PASS  {detail}\n"),
        Err(detail) => format!("criterion {n} ({title}): FAIL  {detail}\n"),
    };
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    if let Err(detail) = verdict {
        panic!("criterion {n}: {detail}");
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn pair(name: &str) -> Pair {
    lookup(name).unwrap().pair().unwrap()
}

fn span(name: &str, names: &[&str]) -> Subspace {
    lookup(name).unwrap().span_of(Q, names)
}

fn cert(alpha: &[&[i64]], beta: &[&[i64]], mode: Mode) -> IsoclinismCertificate {
    IsoclinismCertificate::new(Matrix::from_ints(Q, alpha), Matrix::from_ints(Q, beta), mode)
}

fn a1_to_a7(field: Field) -> IsoclinismCertificate {
    IsoclinismCertificate::new(
        Matrix::identity(field, 3),
        Matrix::from_ints(field, &[&[1, 0, 0], &[0, 1, 0], &[0, 1, 1]]),
        Mode::Strict,
    )
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

#[test]
fn criterion_1_leibniz_validation() {
    let check = || -> Verdict {
        let mut failing = Vec::new();
        let mut passing = 0;
        for entry in catalog() {
            let t = entry.tensor();
            match t.check_leibniz() {
                LeibnizCheck::Ok => passing += 1,
                LeibnizCheck::Counterexample { i, j, k, .. } => {
                    // the other convention is tried too, so a convention
                    // mix-up cannot be the reason
                    let other = match t.convention() {
                        Convention::Left => Convention::Right,
                        Convention::Right => Convention::Left,
                    };
                    let flipped = t.clone().with_convention(other).check_leibniz().is_ok();
                    failing.push(format!(
                        "{} fails at ({}, {}, {}){}",
                        entry.name,
                        t.name(i),
                        t.name(j),
                        t.name(k),
                        if flipped { " but holds in the other convention" } else { " in both conventions" }
                    ));
                }
            }
        }
        let mut mutated = lookup("A1").unwrap().tensor();
        let mut v = mutated.product(2, 0).clone();
        v[0] = Q.one();
        mutated.set_product(2, 0, v).map_err(err)?;
        let control = match mutated.check_leibniz() {
            LeibnizCheck::Counterexample { i, j, k, .. } => (i, j, k),
            LeibnizCheck::Ok => return Err("mutated A1 passes the identity".into()),
        };
        ensure(control == (0, 0, 0), format!("mutated A1 first fails at {control:?}"))?;
        ensure(
            mutated.leibniz_failures().contains(&(0, 2, 0)),
            "mutated A1 does not fail at (a1, a3, a1)",
        )?;
        let summary = format!(
            "{passing}/{} catalog algebras pass; mutated A1 fails first at (a1, a1, a1) and also at (a1, a3, a1)",
            catalog().len()
        );
        if failing.is_empty() {
            Ok(summary)
        } else {
            Err(format!("{summary}; {}", failing.join("; ")))
        }
    };
    report(1, "Leibniz validation", check());
}

#[test]
fn criterion_2_invariants() {
    let check = || -> Verdict {
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
            ensure(p.lie_center() == &span(name, z), format!("{name}: Lie-center differs"))?;
            ensure(
                p.lie_commutator().space() == &span(name, k),
                format!("{name}: Lie-commutator differs"),
            )?;
        }
        for (name, printed) in [("L26", &["e1", "e2", "e3"][..]), ("L40", &["a1", "a2", "a3"][..])] {
            let claim = lookup(name).unwrap().claim("lie_commutator").unwrap();
            ensure(claim.disputed, format!("{name}: commutator claim not flagged"))?;
            ensure(claim.value == Claimed::Span(printed), format!("{name}: printed value changed"))?;
            ensure(span(name, printed) != *pair(name).lie_commutator().space(), format!("{name}: no dispute"))?;
        }
        Ok(format!("{} pairs match exactly; L26/L40 commutators flagged as disputed", cases.len()))
    };
    report(2, "published invariants", check());
}

#[test]
fn criterion_3_certificates() {
    let check = || -> Verdict {
        let small = cert(&[&[1, 0], &[0, 1]], &[&[1]], Mode::Strict);
        ensure(verify_certificate(&pair("2d"), &pair("2e"), &small).map_err(err)?.is_ok(), "2d ~ 2e fails")?;
        ensure(
            verify_certificate(&pair("A1"), &pair("A7"), &a1_to_a7(Q)).map_err(err)?.is_ok(),
            "A1 ~ A7 fails",
        )?;
        let (l26, l40) = (pair("L26"), pair("L40"));
        let linear = cert(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[1, 0], &[0, 1]], Mode::Linear);
        ensure(verify_certificate(&l26, &l40, &linear).map_err(err)?.is_ok(), "L26 ~ L40 fails in linear mode")?;
        let strict = linear.clone().with_mode(Mode::Strict);
        ensure(!verify_certificate(&l26, &l40, &strict).map_err(err)?.is_ok(), "L26 ~ L40 passes strict mode")?;
        // quotient coordinates e1, e2, e4: (4,4) is index (2,2)
        let bad = alpha_hom_violations(&l26, &l40, linear.alpha.matrix()).map_err(err)?;
        ensure(bad.contains(&(2, 2)), format!("strict violations {bad:?} miss (e4, e4)"))?;
        let Corollary2::Ok(map) = corollary2_check(&pair("A1"), &pair("A7"), &a1_to_a7(Q)).map_err(err)? else {
            return Err("Corollary 2 restriction fails".into());
        };
        let z2 = pair("A7").lie_center().clone();
        let images: Vec<Vector> = (0..2).map(|i| z2.from_coordinates(&map.matrix().col(i))).collect();
        ensure(
            Subspace::span(Q, 5, &images).map_err(err)? == span("A7", &["g4", "g5"]) && map.is_invertible(),
            "restriction does not map onto span{g4, g5}",
        )?;
        Ok("2d~2e and A1~A7 strict; L26~L40 linear only, strict fails at (e1,e4) and (e4,e4); span{a4,a5} -> span{g4,g5}".into())
    };
    report(3, "certificates", check());
}

#[test]
fn criterion_4_isoclinic_not_isomorphic() {
    let check = || -> Verdict {
        let mut notes = Vec::new();
        for field in [Field::Prime(2), Field::Prime(3), Q] {
            let p1 = lookup("A1").unwrap().pair_over(field).map_err(err)?;
            let p2 = lookup("A7").unwrap().pair_over(field).map_err(err)?;
            match search_isoclinism(&p1, &p2, DEFAULT_BUDGET, Mode::Strict).map_err(err)? {
                SearchOutcome::Found(c) => {
                    ensure(verify_certificate(&p1, &p2, &c).map_err(err)?.is_ok(), "found certificate fails")?
                }
                other => return Err(format!("isoclinism search over {field}: {other:?}")),
            }
            if let Field::Prime(_) = field {
                match search_pair_isomorphism(&p1, &p2, u64::MAX, false).map_err(err)? {
                    IsomorphismOutcome::NoIsomorphism { assignments, .. } => {
                        notes.push(format!("no isomorphism over {field} ({assignments} assignments)"))
                    }
                    other => return Err(format!("isomorphism search over {field}: {other:?}")),
                }
            }
        }
        Ok(format!(
            "certificates found over GF(2), GF(3), Q; {}; non-isomorphism over Q is cited from the published classification, not proven here",
            notes.join(", ")
        ))
    };
    report(4, "isoclinism without isomorphism", check());
}

#[test]
fn criterion_5_factor_sets() {
    let check = || -> Verdict {
        let mut count = 0;
        let mut skipped = Vec::new();
        for entry in catalog() {
            let Ok(p) = entry.pair() else {
                skipped.push(entry.name);
                continue;
            };
            let q = p.algebra();
            let data = factor_set_from_pair(q, p.ideal()).map_err(err)?;
            ensure(check_factor_identity(&data).is_ok(), format!("{}: factor identity", entry.name))?;
            let ext = build_extension(&data).map_err(err)?;
            ensure(ext.algebra.tensor().check_leibniz().is_ok(), format!("{}: extension", entry.name))?;
            let (ext, iso) = lemma2_reconstruct(q, p.ideal()).map_err(err)?;
            ensure(
                iso.is_invertible() && hom_check(iso.matrix(), ext.algebra.tensor(), q.tensor()).map_err(err)?.is_ok(),
                format!("{}: reconstruction", entry.name),
            )?;
            count += 1;
        }
        Ok(format!(
            "{count}/{count} valid catalog pairs (skipped, not Leibniz: {})",
            skipped.join(", ")
        ))
    };
    report(5, "factor-set laws", check());
}

/// Every validated pair `(q, m)` with `dim q = n` over `GF(p)`.
/// Sweeps every pair over GF(p)^n, returning how many reduce correctly and
/// a description of each one that does not.
fn stem_sweep(p: u32, n: usize) -> Result<(usize, Vec<String>), String> {
    let f = Field::Prime(p);
    let mut good = 0;
    let mut bad = Vec::new();
    for t in enumerate_leibniz(f, n, Convention::Right).unwrap() {
        let alg = LeibnizAlgebra::new(t).map_err(err)?;
        for d in 0..=n {
            for m in all_subspaces(f, n, d).unwrap() {
                if !is_ideal(&alg, &m) {
                    continue;
                }
                let pr = Pair::new(alg.clone(), m).map_err(err)?;
                let ok = match stem_reduce(&pr) {
                    Ok(r) => {
                        let cert = r.certificate.clone().with_mode(Mode::Strict);
                        let best = admissible_ideals(&pr).unwrap().iter().map(Subspace::dim).max().unwrap();
                        r.pair.is_stem()
                            && verify_certificate(&pr, &r.pair, &cert).map_err(err)?.is_ok()
                            && r.pair.algebra().dim() == n - best
                    }
                    Err(Error::StemReductionIncomplete) => false,
                    Err(e) => return Err(err(e)),
                };
                if ok {
                    good += 1;
                } else {
                    let rels: Vec<String> =
                        alg.tensor().relations().iter().map(|(i, j, v)| format!("[{},{}]={v}", i + 1, j + 1)).collect();
                    bad.push(format!("{} with m = {}", rels.join(" "), pr.ideal_space()));
                }
            }
        }
    }
    Ok((good, bad))
}

/// [a2,a3] = a1, [a3,a2] = -a1, [a3,a3] = a1 with m = q. The vector a2 is
/// Lie-central but its ideal closure contains a1, which spans the Lie
/// commutator, so only s = 0 is admissible and no quotient is stem.
fn no_stem_quotient(f: Field) -> Pair {
    let t = StructureTensor::from_relations(f, 3, &[(2, 3, &[(1, 1)]), (3, 2, &[(-1, 1)]), (3, 3, &[(1, 1)])]);
    Pair::full(LeibnizAlgebra::new(t).unwrap())
}

#[test]
fn criterion_6_stem_reduction() {
    let check = || -> Verdict {
        let mut total = 0;
        let mut parts = Vec::new();
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
            let (k, bad) = stem_sweep(p, n)?;
            ensure(bad.is_empty(), format!("GF({p}) dim {n}: {}", bad.join("; ")))?;
            parts.push(format!("GF({p}) dim {n}: {k}"));
            total += k;
        }
        let r = stem_reduce(&pair("2d")).map_err(err)?;
        let expected = StructureTensor::from_relations(Q, 2, &[(1, 2, &[(1, 1)])]);
        ensure(
            hom_check(&Matrix::identity(Q, 2), r.pair.algebra().tensor(), &expected).map_err(err)?.is_ok(),
            "2d over Q does not reduce to [a1,a3]=a1",
        )?;
        // GF(3) dim 3 is swept in full by the ignored test; one of its
        // failing pairs is checked here directly
        let witness = no_stem_quotient(Field::Prime(3));
        let admissible = admissible_ideals(&witness).unwrap();
        match stem_reduce(&witness) {
            Ok(r) if r.pair.is_stem() => {}
            outcome => {
                return Err(format!(
                    "{total} pairs pass ({}), 2d over Q -> [a1,a3]=a1; but over GF(3) the full pair \
                     [a2,a3]=a1, [a3,a2]=-a1, [a3,a3]=a1 is not stem and its only admissible ideal is {} \
                     (stem_reduce: {}); the ignored GF(3) dim 3 sweep counts all such pairs",
                    parts.join(", "),
                    if admissible.len() == 1 && admissible[0].is_zero() { "0" } else { "nonzero" },
                    match outcome {
                        Ok(_) => "not stem".to_string(),
                        Err(e) => e.to_string(),
                    }
                ))
            }
        }
        Ok(format!("{total} pairs ({}); 2d over Q -> [a1,a3]=a1", parts.join(", ")))
    };
    report(6, "stem reduction", check());
}

/// The 15861 Leibniz structures on GF(3)^3 take minutes to sweep in a
/// debug build. Run with `cargo test --release -- --ignored`.
#[test]
#[ignore]
fn criterion_6_stem_reduction_gf3_dim3() {
    let verdict = stem_sweep(3, 3).and_then(|(good, bad)| match bad.first() {
        None => Ok(format!("{good} pairs")),
        Some(first) => Err(format!("{} of {} pairs have no stem quotient, first: {first}", bad.len(), good + bad.len())),
    });
    report(6, "stem reduction, GF(3) dim 3", verdict);
}

#[test]
fn criterion_7_theorem3() {
    let check = || -> Verdict {
        let lambda = pair("lambda2");
        let change = Matrix::from_ints(Q, &[&[3, 1], &[0, 1]]);
        let copy = Pair::full(lambda.algebra().change_basis(&change).map_err(err)?);
        let c = IsoclinismCertificate::new(
            Matrix::identity(Q, 1),
            Matrix::from_rows(Q, vec![vec![Q.ratio(1, 3).map_err(err)?]]).map_err(err)?,
            Mode::Strict,
        );
        match theorem3_construct(&lambda, &copy, &c, EpsilonMode::AllElements).map_err(err)? {
            Theorem3Outcome::Iso { iso, .. } => ensure(
                hom_check(iso.matrix(), lambda.algebra().tensor(), copy.algebra().tensor()).map_err(err)?.is_ok()
                    && iso.is_invertible(),
                "lambda map is not an isomorphism",
            )?,
            other => return Err(format!("lambda2: {other:?}")),
        }
        match theorem3_construct(&pair("A1"), &pair("A7"), &a1_to_a7(Q), EpsilonMode::AllElements).map_err(err)? {
            Theorem3Outcome::ConditionFailed(Condition::B, _) => {}
            other => return Err(format!("A1/A7: {other:?}")),
        }
        let lam = epsilon_condition(lambda.algebra().tensor(), &Subspace::full(Q, 2), EpsilonMode::AllElements);
        ensure(lam.pass && lam.uniform == Some(Q.one()), "lambda2 epsilon is not 1")?;
        let l16 = lookup("L16").unwrap().tensor();
        let full = Subspace::full(Q, 4);
        let basis = epsilon_condition(&l16, &full, EpsilonMode::BasisPairs);
        let eps: Vec<Scalar> = basis.epsilons.iter().map(|(_, _, e)| e.clone()).collect();
        ensure(
            basis.pass && eps == vec![Q.one(), Q.from_i64(-1), Q.one()],
            format!("L16 basis epsilons {eps:?}"),
        )?;
        let all = epsilon_condition(&l16, &full, EpsilonMode::AllElements);
        let witness = Some(EpsilonWitness::Elements {
            x: Vector::from_ints(Q, &[1, 0, 0, 1]),
            y: Vector::from_ints(Q, &[1, 1, 0, 0]),
        });
        ensure(!all.pass && all.witness == witness, format!("L16 all-elements witness {:?}", all.witness))?;
        Ok("lambda2 copy isomorphic; A1/A7 fail condition (b); epsilon 1 and (1, -1, 1); witness x=a1+a4, y=a1+a2".into())
    };
    report(7, "isomorphism from a certificate", check());
}

fn random_invertible(rng: &mut ChaCha8Rng, f: Field, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vector> = (0..n)
            .map(|_| Vector::from_ints(f, &(0..n).map(|_| rng.gen_range(0..5)).collect::<Vec<_>>()))
            .collect();
        let m = Matrix::from_row_vectors(f, n, &rows).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

/// A random member of the isoclinism class of `p`: a change of basis of
/// `p` or of its stem reduction, with a certificate from `p`.
fn random_member(rng: &mut ChaCha8Rng, p: &Pair) -> Result<(Pair, IsoclinismCertificate), String> {
    let (base, to_base) = if rng.gen_bool(0.5) {
        let r = stem_reduce(p).map_err(err)?;
        (r.pair, r.certificate)
    } else {
        (p.clone(), IsoclinismCertificate::identity(p))
    };
    let f = base.algebra().field();
    let n = base.algebra().dim();
    let change = random_invertible(rng, f, n);
    let alg = base.algebra().change_basis(&change).map_err(err)?;
    let phi = change.inverse().unwrap();
    let member = Pair::new(alg, base.ideal_space().image(&phi).map_err(err)?).map_err(err)?;
    let iso = certificate_from_isomorphism(&base, &member, &phi).map_err(err)?;
    Ok((member, to_base.then(&iso).map_err(err)?))
}

#[test]
fn criterion_8_equivalence_relation() {
    let check = || -> Verdict {
        let f = Field::Prime(5);
        let bases: Vec<Pair> = catalog().iter().filter_map(|e| e.pair_over(f).ok()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0x1eb2);
        for trial in 0..100 {
            let p = &bases[rng.gen_range(0..bases.len())];
            let (p1, c1) = random_member(&mut rng, p)?;
            let (p2, c2) = random_member(&mut rng, p)?;
            let (p3, c3) = random_member(&mut rng, p)?;
            let c12 = c1.inverse().map_err(err)?.then(&c2).map_err(err)?;
            let c23 = c2.inverse().map_err(err)?.then(&c3).map_err(err)?;
            let ok = |a: &Pair, b: &Pair, c: &IsoclinismCertificate| verify_certificate(a, b, c).map(|r| r.is_ok());
            ensure(ok(&p1, &p2, &c12).map_err(err)? && ok(&p2, &p3, &c23).map_err(err)?, format!("trial {trial}: setup"))?;
            ensure(ok(&p2, &p1, &c12.inverse().map_err(err)?).map_err(err)?, format!("trial {trial}: symmetry"))?;
            ensure(ok(&p1, &p3, &c12.then(&c23).map_err(err)?).map_err(err)?, format!("trial {trial}: composition"))?;
        }
        Ok("100/100 random GF(5) triples: inverses and composites verify".into())
    };
    report(8, "equivalence relation", check());
}

fn random_file(rng: &mut ChaCha8Rng) -> AlgebraFile {
    let fields = [Q, Field::Prime(2), Field::Prime(3), Field::Prime(5), Field::Prime(7)];
    let f = fields[rng.gen_range(0..fields.len())];
    let n = rng.gen_range(1..=4);
    let scalar = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.6) {
            f.zero()
        } else if f == Q {
            f.ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)).unwrap()
        } else {
            f.from_i64(rng.gen_range(-9..=9))
        }
    };
    let convention = if rng.gen_bool(0.5) { Convention::Left } else { Convention::Right };
    let mut t = StructureTensor::zero(f, n).with_convention(convention);
    for i in 0..n {
        for j in 0..n {
            let v = Vector::new(f, (0..n).map(|_| scalar(rng)).collect()).unwrap();
            t.set_product(i, j, v).unwrap();
        }
    }
    if rng.gen_bool(0.5) {
        t = t.with_basis_names((1..=n).map(|i| format!("b{i}")).collect()).unwrap();
    }
    let mut file = AlgebraFile::new(t);
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(0..=n);
        let gens = (0..k).map(|_| Vector::new(f, (0..n).map(|_| scalar(rng)).collect()).unwrap()).collect();
        file = file.with_ideal(gens);
    }
    file
}

#[test]
fn criterion_9_cli() {
    let check = || -> Verdict {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for i in 0..500 {
            let file = random_file(&mut rng);
            let text = file.serialize();
            let back = AlgebraFile::parse(&text).map_err(|e| format!("file {i}: {e}"))?;
            ensure(back == file && back.serialize() == text, format!("file {i} changed:\n{text}"))?;
        }
        let contract = common::contract();
        for (name, args, expected) in &contract {
            let args: Vec<&str> = args.iter().map(String::as_str).collect();
            let (a, b) = (common::leibniz(&args), common::leibniz(&args));
            ensure(a.status.code() == Some(*expected), format!("{name}: exit {:?}, want {expected}", a.status.code()))?;
            ensure(a.stdout == b.stdout && a.stderr == b.stderr, format!("{name}: output differs between runs"))?;
        }
        Ok(format!("500/500 files round-trip; {} invocations byte-identical with expected exit codes", contract.len()))
    };
    report(9, "CLI", check());
}
