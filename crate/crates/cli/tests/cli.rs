//! Exit codes and output of the `leibniz` binary.

mod common;

use common::{code, contract, data, leibniz, stdout};

#[test]
fn exit_code_contract() {
    for (name, args, expected) in contract() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = leibniz(&args);
        assert_eq!(
            out.status.code(),
            Some(expected),
            "{name}: {args:?}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for (_, args, _) in contract() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (leibniz(&args), leibniz(&args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stderr, b.stderr, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["--field", "GF4", "validate", "A1"]), 2);
}

#[test]
fn validate_reports_the_counterexample() {
    let out = stdout(&["validate", &data("algebras/a1_mutated.alg")]);
    assert!(out.contains("FAIL Leibniz identity at (a1, a1, a1)"), "{out}");
    assert!(stdout(&["validate", "L16"]).contains("(a4, a4, a4)"));
}

#[test]
fn linear_only_certificate() {
    let out = stdout(&["isoclinic", "verify", "L26", "L40", "--cert", &data("certs/l26_l40.cert")]);
    assert!(out.starts_with("OK (linear)"), "{out}");
    assert!(out.contains("(e1, e4), (e4, e4)"), "{out}");
}

#[test]
fn epsilon_witness_is_printed() {
    let out = stdout(&["epsilon", "L16"]);
    assert!(out.contains("FAIL witness x=a1+a4 y=a1+a2"), "{out}");
    let out = stdout(&["epsilon", "L16", "--mode", "basis"]);
    assert!(out.contains("epsilon(a1,a1) = 1, epsilon(a2,a4) = -1, epsilon(a4,a4) = 1"), "{out}");
}

#[test]
fn found_certificates_verify_through_the_cli() {
    let out = stdout(&["--field", "GF3", "isoclinic", "search", "A1", "A7"]);
    let cert = out.strip_prefix("FOUND (strict)\n").expect("found");
    let dir = std::env::temp_dir().join(format!("leibniz-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("found.cert");
    std::fs::write(&path, cert).unwrap();
    // a catalog listing is itself a valid algebra file
    for name in ["A1", "A7"] {
        let text = stdout(&["--field", "GF3", "catalog", name]);
        std::fs::write(dir.join(format!("{name}.alg")), text).unwrap();
    }
    let a1 = dir.join("A1.alg");
    let a7 = dir.join("A7.alg");
    let args = [
        "isoclinic",
        "verify",
        a1.to_str().unwrap(),
        a7.to_str().unwrap(),
        "--cert",
        path.to_str().unwrap(),
    ];
    assert_eq!(code(&args), 0, "{}", stdout(&args));
    std::fs::remove_dir_all(&dir).unwrap();
}
