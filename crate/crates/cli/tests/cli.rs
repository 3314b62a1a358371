//! End-to-end tests of the `anosov` binary: every file produced by construct
//! must verify in a separate process, exit codes follow the documented
//! contract, and reports are deterministic.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_anosov"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("anosov-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const FAMILIES: &[(&str, &[&str])] = &[
    ("type-pq", &["--f", "x^2-3x+1", "--g", "x^3+x^2-2x-1"]),
    ("bipartite", &["--f", "x^2-3x+1", "--g", "x^3+x^2-2x-1"]),
    (
        "three-unit-2step",
        &["--f", "x^2-3x+1", "--g", "x^2-x-1", "--h", "x^2-2x-1"],
    ),
    (
        "three-unit-3step",
        &["--f", "x^2-3x+1", "--g", "x^2-x-1", "--h", "x^2-2x-1"],
    ),
    ("p2-family", &["--f", "x^2-3x+1", "--g", "x^2-x-1"]),
    ("dim13", &["--f", "x^2-3x+1", "--g", "x^3+x^2-2x-1"]),
    ("dim16", &["--f", "x^2-3x+1", "--g", "x^3+x^2-2x-1"]),
];

fn construct(family: &str, extra: &[&str], out: &Path) -> Output {
    let mut args = vec!["construct", "--family", family];
    args.extend_from_slice(extra);
    args.push("-o");
    args.push(out.to_str().unwrap());
    run(&args)
}

#[test]
fn every_family_constructs_and_verifies_in_separate_process() {
    for (family, extra) in FAMILIES {
        let path = tmp(&format!("{family}.cert"));
        let built = construct(family, extra, &path);
        assert_eq!(
            built.status.code(),
            Some(0),
            "{family}: {}",
            String::from_utf8_lossy(&built.stderr)
        );
        let verified = run(&["verify", path.to_str().unwrap()]);
        assert_eq!(verified.status.code(), Some(0), "{family} verify failed");
        assert!(stdout(&verified).contains("verdict: PASS"));
    }
}

#[test]
fn construct_reports_paper_values() {
    let path = tmp("report-typepq.cert");
    let out = construct(
        "type-pq",
        &["--f", "x^2-3x+1", "--g", "x^3+x^2-2x-1"],
        &path,
    );
    assert!(stdout(&out).contains("dim 11, type (9,2)"));
    let path = tmp("report-dim13.cert");
    let out = construct("dim13", &["--f", "x^2-3x+1", "--g", "x^3+x^2-2x-1"], &path);
    assert!(stdout(&out).contains("dim 13, type (9,4)"));
}

#[test]
fn invalid_inputs_use_documented_exit_codes() {
    let path = tmp("never-written.cert");
    // Cyclotomic first unit: construction failure (not hyperbolic).
    let out = construct("type-pq", &["--f", "x^2-x+1", "--g", "x^3+x^2-2x-1"], &path);
    assert_eq!(out.status.code(), Some(3));
    // Non-unit second polynomial: invalid input.
    let out = construct("type-pq", &["--f", "x^2-3x+1", "--g", "x-2"], &path);
    assert_eq!(out.status.code(), Some(2));
    // Unparseable polynomial.
    let out = construct("type-pq", &["--f", "x^^2", "--g", "x^2-x-1"], &path);
    assert_eq!(out.status.code(), Some(2));
    // Unknown family.
    let out = construct("type-xyz", &["--f", "x^2-3x+1", "--g", "x^2-x-1"], &path);
    assert_eq!(out.status.code(), Some(2));
    // Missing file for verify.
    let out = run(&["verify", "/nonexistent/path.cert"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tampered_certificates_fail_verification() {
    let path = tmp("tamper.cert");
    construct(
        "type-pq",
        &["--f", "x^2-3x+1", "--g", "x^3+x^2-2x-1"],
        &path,
    );
    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();

    // Perturb one bracket numerator.
    let mut tampered = v.clone();
    tampered["brackets"][0][3] = serde_json::Value::String("4".into());
    let bad = tmp("tamper-bracket.cert");
    std::fs::write(&bad, serde_json::to_string_pretty(&tampered).unwrap()).unwrap();
    let out = run(&["verify", bad.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));

    // Break the determinant through a diagonal automorphism entry.
    let dim = v["dim"].as_u64().unwrap() as usize;
    let entry = &mut v["automorphism"][0];
    let old: i64 = entry.as_str().unwrap().parse().unwrap();
    *entry = serde_json::Value::String((old + 3).to_string());
    let _ = dim;
    let bad = tmp("tamper-matrix.cert");
    std::fs::write(&bad, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let out = run(&["verify", bad.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn search_units_lists_and_caps() {
    let out = run(&["search-units", "--degree", "2", "--bound", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("x^2-3x+1"));
    assert!(text.contains("8 unit(s)"));

    let out = run(&["search-units", "--degree", "1", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 unit(s)"));

    let out = run(&["search-units", "--degree", "7", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "search-units",
        "--degree",
        "3",
        "--bound",
        "2",
        "--pair-with",
        "x^2-3x+1",
        "--words",
        "1,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("x^3+x^2-2x-1"));
}

#[test]
fn info_and_quotient_flow() {
    let three = tmp("flow-3step.cert");
    construct(
        "three-unit-3step",
        &["--f", "x^2-3x+1", "--g", "x^2-x-1", "--h", "x^2-2x-1"],
        &three,
    );
    let out = run(&["info", three.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("step: 3"));

    let quo = tmp("flow-quotient.cert");
    let out = run(&["quotient", three.to_str().unwrap(), quo.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["info", quo.to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains("type: (12,8)"), "got: {text}");
    assert!(text.contains("family: quotient:three-unit-3step"));
    // The quotient still verifies (algebra + restricted automorphism).
    let out = run(&["verify", quo.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn info_reports_decomposition_of_direct_sums() {
    use anosov_core::cert::{
        write_certificate_file, AnosovCertificate, Family, IntegerAutomorphism, Margins,
    };
    use anosov_core::families::FamilyParams;
    use anosov_core::lie::{direct_sum, NilpotentLieAlgebra};
    use anosov_core::matrix::IntMatrix;
    use anosov_core::poly::IntPolynomial;

    let h3 = NilpotentLieAlgebra::heisenberg3();
    let hh = direct_sum(&h3, &h3);
    let identity = IntMatrix::identity(6);
    let xm1 = IntPolynomial::from_i64(&[-1, 1]);
    let factors = vec![xm1; 6];
    let cert = AnosovCertificate {
        family: Family::Adhoc,
        params: FamilyParams {
            p: 0,
            q: 0,
            r: None,
        },
        unit_polys: vec![],
        algebra: hh,
        automorphism: IntegerAutomorphism::new(identity, factors).unwrap(),
        system: None,
        margins: Margins::default(),
    };
    let path = tmp("h3h3.cert");
    write_certificate_file(&cert, &path).unwrap();
    let out = run(&["info", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("decomposes: {0,1,2} + {3,4,5}"),
        "got: {text}"
    );
}

#[test]
fn info_scope_exceeded_exit_code() {
    use anosov_core::cert::{
        write_certificate_file, AnosovCertificate, Family, IntegerAutomorphism, Margins,
    };
    use anosov_core::families::FamilyParams;
    use anosov_core::lie::NilpotentLieAlgebra;
    use anosov_core::matrix::IntMatrix;
    use anosov_core::poly::IntPolynomial;

    // 25-dimensional abelian algebra: decomposition search is out of scope.
    let dim = 25;
    let cert = AnosovCertificate {
        family: Family::Adhoc,
        params: FamilyParams {
            p: 0,
            q: 0,
            r: None,
        },
        unit_polys: vec![],
        algebra: NilpotentLieAlgebra::abelian(dim),
        automorphism: IntegerAutomorphism::new(
            IntMatrix::identity(dim),
            vec![IntPolynomial::from_i64(&[-1, 1]); dim],
        )
        .unwrap(),
        system: None,
        margins: Margins::default(),
    };
    let path = tmp("big-abelian.cert");
    write_certificate_file(&cert, &path).unwrap();
    let out = run(&["info", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("scope"));
}

#[test]
fn reports_are_deterministic_and_machine_readable() {
    let a = tmp("det-a.cert");
    let b = tmp("det-b.cert");
    let out_a = construct("p2-family", &["--f", "x^2-3x+1", "--g", "x^2-x-1"], &a);
    let out_b = construct("p2-family", &["--f", "x^2-3x+1", "--g", "x^2-x-1"], &b);
    assert_eq!(
        stdout(&out_a).replace("det-a", ""),
        stdout(&out_b).replace("det-b", "")
    );
    assert_eq!(
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        "certificate files are byte-identical across runs"
    );

    let out = bin()
        .args(["verify", a.to_str().unwrap(), "--format", "machine"])
        .output()
        .unwrap();
    let text = stdout(&out);
    assert!(text.contains("check.jacobi=pass"));
    assert!(text.contains("verdict=pass"));

    let out = bin()
        .args([
            "construct",
            "--family",
            "bipartite",
            "--f",
            "x^2-3x+1",
            "--g",
            "x^2-x-1",
            "-o",
            tmp("machine.cert").to_str().unwrap(),
            "--format",
            "machine",
        ])
        .output()
        .unwrap();
    let text = stdout(&out);
    assert!(text.contains("dim=8"));
    assert!(text.contains("type=(4,4)"));
}

#[test]
fn precision_env_override_accepted() {
    let path = tmp("env-precision.cert");
    let out = bin()
        .env("ANOSOV_PRECISION", "1e-10")
        .args([
            "construct",
            "--family",
            "type-pq",
            "--f",
            "x^2-3x+1",
            "--g",
            "x^2-x-1",
            "-o",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
