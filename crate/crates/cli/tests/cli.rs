use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use specfact::factorizer::orthogonal_relator;
use specfact::RatFun;
use specfact_cli::error::CliError;
use specfact_cli::io::{read_matrix, to_json, MatrixFile, RegionFile};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_specfact"))
}

fn here(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn path(rel: &str) -> String {
    here(rel).display().to_string()
}

#[test]
fn golden_files_roundtrip_byte_identically() {
    let mut checked = 0;
    for dir in ["examples", "tests/fixtures"] {
        for entry in fs::read_dir(here(dir)).unwrap() {
            let p = entry.unwrap().path();
            let text = fs::read_to_string(&p).unwrap();
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            if name.starts_with("regions") {
                let r: RegionFile = serde_json::from_str(&text).unwrap();
                assert_eq!(to_json(&r), text, "{name}");
                assert_eq!(RegionFile::from_pair(&r.to_pair().unwrap()), r, "{name}");
                checked += 1;
            } else if let Ok(m) = serde_json::from_str::<MatrixFile>(&text) {
                let Ok(g) = m.to_matrix() else { continue };
                assert_eq!(to_json(&m), text, "{name}");
                assert_eq!(to_json(&MatrixFile::from_matrix(&g)), text, "{name}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 10, "only {checked} files checked");
}

#[test]
fn factorize_matches_golden_output() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let trace = dir.path().join("trace.json");
    let out = run(&[
        "factorize",
        "--input",
        &path("examples/phi_youla_example.json"),
        "--regions",
        &path("examples/regions_causal.json"),
        "--output",
        w.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(fs::read(&w).unwrap(), fs::read(here("examples/w_causal.json")).unwrap());
    assert_eq!(
        fs::read(&trace).unwrap(),
        fs::read(here("examples/trace_causal.json")).unwrap()
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("exact identity: true"));

    let ours = read_matrix(&w).unwrap();
    let published = read_matrix(&here("examples/w_example.json")).unwrap();
    assert!(orthogonal_relator(&ours, &published, 1e-12).is_some());
}

#[test]
fn factorize_identity_gives_orthogonal_constant() {
    let out = run(&["factorize", "--input", &path("tests/fixtures/identity.json")]);
    assert_eq!(code(&out), 0);
    let m: MatrixFile = serde_json::from_slice(&out.stdout).unwrap();
    let t = m.to_matrix().unwrap().to_const().unwrap();
    assert!((&t.transpose() * &t).is_identity());
}

#[test]
fn factorize_is_deterministic() {
    let args = ["factorize", "--input", &path("tests/fixtures/scalar_ma.json")];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let fixture = |name: &str| path(&format!("tests/fixtures/{name}"));
    assert_eq!(code(&run(&["factorize", "--input", &fixture("nonspectrum.json")])), 3);
    assert_eq!(code(&run(&["factorize", "--input", &fixture("negative.json")])), 3);
    assert_eq!(code(&run(&["factorize", "--input", &fixture("malformed.json")])), 2);
    assert_eq!(code(&run(&["factorize", "--input", &fixture("not_json.json")])), 2);
    assert_eq!(code(&run(&["factorize", "--input", &fixture("missing.json")])), 2);
    assert_eq!(code(&run(&["factorize"])), 2);
    assert_eq!(code(&run(&["degree", "--input", &fixture("malformed.json")])), 2);
    let tight = run(&["factorize", "--input", &fixture("irrational.json"), "--tol", "1e-30"]);
    assert_eq!(code(&tight), 4, "{}", String::from_utf8_lossy(&tight.stderr));
    assert_eq!(code(&run(&["factorize", "--input", &fixture("irrational.json")])), 0);

    let dir = tempfile::tempdir().unwrap();
    let bad_region = dir.path().join("bad.json");
    fs::write(
        &bad_region,
        r#"{"poles":{"default":"outside","flips":[["-2","1"]]},"zeros":{"default":"inside"}}"#,
    )
    .unwrap();
    let out = run(&[
        "factorize",
        "--input",
        &fixture("identity.json"),
        "--regions",
        bad_region.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn exit_code_mapping() {
    use specfact::Error as E;
    assert_eq!(CliError::VerifyFailed.exit_code(), 1);
    assert_eq!(CliError::from(E::Dimension("x".into())).exit_code(), 2);
    assert_eq!(CliError::from(E::RankZero).exit_code(), 3);
    assert_eq!(CliError::from(E::OnCircleForbidden("zero")).exit_code(), 3);
    assert_eq!(
        CliError::from(E::NumericFallbackExceededTolerance {
            residual: 1.0,
            tol: 0.0
        })
        .exit_code(),
        4
    );
    assert_eq!(CliError::from(E::Internal("x".into())).exit_code(), 5);
    assert_eq!(CliError::from(E::DegreeNotReduced("x".into())).exit_code(), 5);
}

#[test]
fn verify_command() {
    let phi = path("examples/phi_youla_example.json");
    let regions = path("examples/regions_causal.json");
    let ok = run(&[
        "verify",
        "--phi",
        &phi,
        "--w",
        &path("examples/w_example.json"),
        "--regions",
        &regions,
    ]);
    assert_eq!(code(&ok), 0);
    let text = String::from_utf8(ok.stdout).unwrap();
    assert!(text.contains("δ_M(Φ)=4, δ_M(W)=2"), "{text}");

    // extra factor (z - 3) in entry (1, 1)
    let dir = tempfile::tempdir().unwrap();
    let mut w = read_matrix(&here("examples/w_example.json")).unwrap();
    w[(0, 0)] = &w[(0, 0)] * &RatFun::from_poly(specfact::Poly::from_ints(&[-3, 1]));
    let corrupted = dir.path().join("w_bad.json");
    fs::write(&corrupted, to_json(&MatrixFile::from_matrix(&w))).unwrap();
    let bad = run(&[
        "verify",
        "--phi",
        &phi,
        "--w",
        corrupted.to_str().unwrap(),
        "--regions",
        &regions,
    ]);
    assert_eq!(code(&bad), 1);
    let text = String::from_utf8(bad.stdout).unwrap();
    assert!(text.contains("status: fail") && text.contains("residual"), "{text}");
}

#[test]
fn degree_command() {
    let out = run(&["degree", "--input", &path("tests/fixtures/identity.json")]);
    assert_eq!(
        (code(&out), String::from_utf8(out.stdout).unwrap()),
        (0, "0\n".to_string())
    );
    let out = run(&["degree", "--input", &path("examples/phi_youla_example.json")]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4\n");
}

#[test]
fn smith_mcmillan_command() {
    let diag = |rel: &str| {
        let out = run(&["smith-mcmillan", "--input", &path(rel)]);
        assert_eq!(code(&out), 0);
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let d: MatrixFile = serde_json::from_value(v["d"].clone()).unwrap();
        d.to_matrix().unwrap()
    };
    let d = diag("examples/phi_youla_example.json");
    // 1/(z(z-2)(z-1/2)) and z(z-1)^2
    let d1 = RatFun::new(
        specfact::Poly::from_ints(&[1]),
        specfact::Poly::new(vec![
            specfact::scalar::rat::int(0),
            specfact::scalar::rat::int(1),
            specfact::scalar::rat::rat(-5, 2),
            specfact::scalar::rat::int(1),
        ]),
    );
    let d2 = RatFun::from_poly(specfact::Poly::from_ints(&[0, 1, -2, 1]));
    assert_eq!(d.diag(), vec![d1, d2]);
    assert!(d.is_diagonal());

    assert!(diag("tests/fixtures/identity.json").is_identity());
    let single = diag("tests/fixtures/pole_only.json");
    assert_eq!(single, read_matrix(&here("tests/fixtures/pole_only.json")).unwrap());
}
