//! Helpers shared by the binary-level test targets.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn data(rel: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(rel);
    p.to_string_lossy().into_owned()
}

pub fn leibniz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leibniz")).args(args).output().expect("binary runs")
}

pub fn code(args: &[&str]) -> i32 {
    leibniz(args).status.code().expect("exit code")
}

pub fn stdout(args: &[&str]) -> String {
    String::from_utf8(leibniz(args).stdout).unwrap()
}

/// One positive and one negative invocation per subcommand.
pub fn contract() -> Vec<(&'static str, Vec<String>, i32)> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        ("validate", s(&["validate", "A1"]), 0),
        ("validate", s(&["validate", "L16"]), 1),
        ("invariants", s(&["invariants", "L26"]), 0),
        ("invariants", s(&["invariants", "A1", "--ideal", "a1"]), 2),
        ("stem", s(&["stem", "A1"]), 0),
        ("stem", s(&["stem", "2d"]), 1),
        ("isoclinic verify", s(&["isoclinic", "verify", "A1", "A7", "--cert", &data("certs/a1_a7.cert")]), 0),
        (
            "isoclinic verify",
            s(&["isoclinic", "verify", "L26", "L40", "--cert", &data("certs/l26_l40.cert"), "--mode", "strict"]),
            1,
        ),
        ("isoclinic search", s(&["--field", "GF2", "isoclinic", "search", "A1", "A7"]), 0),
        ("isoclinic search", s(&["isoclinic", "search", "2d", "A1"]), 1),
        ("isoclinic search --isomorphism", s(&["isoclinic", "search", "2d", "2d", "--isomorphism"]), 0),
        (
            "isoclinic search --isomorphism",
            s(&["--field", "GF2", "isoclinic", "search", "A1", "A7", "--isomorphism"]),
            1,
        ),
        ("factorset", s(&["factorset", &data("algebras/a1_center.alg")]), 0),
        ("factorset", s(&["factorset", "no-such-algebra"]), 2),
        ("extend", s(&["extend", &data("factorsets/a1_transported.fs")]), 0),
        ("extend", s(&["extend", &data("factorsets/a1_perturbed.fs")]), 1),
        ("lemma2", s(&["lemma2", "L40"]), 0),
        ("lemma2", s(&["lemma2", &data("algebras/a1_mutated.alg")]), 2),
        (
            "prop4",
            s(&[
                "prop4",
                &data("factorsets/a1_transported.fs"),
                &data("factorsets/a7_stem.fs"),
                "--eta",
                &data("certs/theta_a1_a7.eta"),
            ]),
            0,
        ),
        (
            "prop4",
            s(&[
                "prop4",
                &data("factorsets/a7_stem.fs"),
                &data("factorsets/a7_stem.fs"),
                "--eta",
                &data("certs/moves_center.eta"),
            ]),
            1,
        ),
        (
            "theorem3",
            s(&["theorem3", "lambda2", &data("algebras/lambda2_copy.alg"), "--cert", &data("certs/lambda2_copy.cert")]),
            0,
        ),
        ("theorem3", s(&["theorem3", "A1", "A7", "--cert", &data("certs/a1_a7.cert")]), 1),
        ("epsilon", s(&["epsilon", "L16", "--mode", "basis"]), 0),
        ("epsilon", s(&["epsilon", "L16"]), 1),
        ("catalog", s(&["catalog", "A7"]), 0),
        ("catalog", s(&["catalog", "A99"]), 1),
    ]
}
