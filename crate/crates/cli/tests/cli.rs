use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use mcg_core::cohomology::{build_phi_c, principal_cocycle};
use mcg_core::samples;
use mcg_core::symplectic::tilde;
use mcg_core::{CrossedHomData, GeneratorId, Matrix, Scalar, SurfaceSig};
use serde_json::{json, Value};
use tempfile::TempDir;

fn mcgrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcgrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn mcgrep_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mcgrep"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

fn sample_cocycle(g: u32) -> CrossedHomData {
    let sig = SurfaceSig::closed(g).unwrap();
    let w0: Vec<Scalar> = (0..2 * g as i64).map(|k| Scalar::frac(k - 1, 2)).collect();
    principal_cocycle(&sig, &w0).unwrap()
}

#[test]
fn gen_genus_two() {
    let out = mcgrep(&["gen", "--genus", "2"]);
    assert_eq!(code(&out), 0);
    let bundle = stdout_json(&out);
    let keys: Vec<&str> = bundle
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(keys, ["a1", "b1", "a2", "b2", "c1", "G", "J"]);
    for k in &keys[..5] {
        assert_eq!(bundle[k]["rows"], 4);
        assert_eq!(bundle[k]["cols"], 4);
    }
    assert_eq!(bundle["c1"]["entries"][0], json!(["1", "1", "0", "-1"]));
}

#[test]
fn gen_rejects_genus_one() {
    let out = mcgrep(&["gen", "-g", "1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("genus"));
}

#[test]
fn gen_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        assert_eq!(
            code(&mcgrep(&[
                "gen",
                "-g",
                "3",
                "-r",
                "1",
                "-p",
                "1",
                "-o",
                p.to_str().unwrap()
            ])),
            0
        );
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let bundle: Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert!(bundle.get("e1").is_some() && bundle.get("f1").is_some());
}

#[test]
fn relcheck_default_and_perturbed() {
    let out = mcgrep(&["relcheck", "--genus", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["verdict"], "pass");

    let dir = TempDir::new().unwrap();
    let rep = build_phi_c(&sample_cocycle(2)).unwrap();
    let mut m = rep.image(GeneratorId::b(2)).unwrap().clone();
    m[(0, 4)] = &m[(0, 4)] + &Scalar::one();
    let bad = rep.with_image(GeneratorId::b(2), m).unwrap();
    let path = write(&dir, "bad.json", &bad.to_json().unwrap());
    let out = mcgrep(&["relcheck", "-i", &path]);
    assert_eq!(code(&out), 1);
    let failures = stdout_json(&out)["reports"][0]["failures"].clone();
    let names: Vec<String> = serde_json::from_value(failures).unwrap();
    assert!(
        !names.is_empty() && names.iter().all(|n| n.contains("b2")),
        "{names:?}"
    );
}

#[test]
fn build_rep_then_analyze_zero_cocycle() {
    let dir = TempDir::new().unwrap();
    let zero = CrossedHomData::zero(SurfaceSig::closed(2).unwrap()).unwrap();
    let c = write(&dir, "zero.json", &zero.to_json().unwrap());
    let rep = dir.path().join("rep.json");
    assert_eq!(
        code(&mcgrep(&[
            "build-rep",
            "-i",
            &c,
            "-o",
            rep.to_str().unwrap()
        ])),
        0
    );
    let out = mcgrep(&["analyze", "-i", rep.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["verdict"], "pass");
    assert_eq!(report["generators"][0]["report"]["eigenspace_dim_one"], 4);
}

#[test]
fn build_rep_refuses_non_cocycles() {
    let dir = TempDir::new().unwrap();
    let c = sample_cocycle(2).map_values(|g, v| {
        if g == GeneratorId::a(1) {
            ints(&[0, 1, 0, 0])
        } else {
            v.clone()
        }
    });
    let path = write(&dir, "bad.json", &c.to_json().unwrap());
    let out = mcgrep(&["build-rep", "-i", &path]);
    assert_eq!(code(&out), 1);
    assert!(!stdout_json(&out)["violations"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn classify_dual_is_type_b() {
    let dir = TempDir::new().unwrap();
    let c = sample_cocycle(3);
    let dual = build_phi_c(&c).unwrap().dual().unwrap();
    let path = write(&dir, "dual.json", &dual.to_json().unwrap());
    let out = mcgrep(&["classify", "-i", &path]);
    assert_eq!(code(&out), 0);
    let result = stdout_json(&out);
    assert_eq!(result["verdict"], "TypeB");
    let extracted: CrossedHomData = serde_json::from_value(result["extracted"].clone()).unwrap();
    assert_eq!(extracted, c);
}

#[test]
fn equiv_certifies_scaled_pair() {
    let dir = TempDir::new().unwrap();
    let sig = SurfaceSig::closed(2).unwrap();
    // Leaves im(A_1 - I) at a1, so the pair pins mu = 3.
    let c = sample_cocycle(2).map_values(|g, v| {
        let mut v = v.clone();
        if g == GeneratorId::a(1) {
            v[1] = &v[1] + &Scalar::one();
        }
        v
    });
    let c3 = c
        .scale(&Scalar::from_int(3))
        .add(&principal_cocycle(&sig, &ints(&[1, -2, 0, 5])).unwrap())
        .unwrap();
    let p1 = write(&dir, "c3.json", &c3.to_json().unwrap());
    let p2 = write(&dir, "c.json", &c.to_json().unwrap());
    let out = mcgrep(&["equiv", "-i", &p1, "-i", &p2]);
    assert_eq!(code(&out), 0);
    let cert = stdout_json(&out);
    assert_eq!(cert["verdict"], "feasible");
    assert_eq!(cert["mu"], "3");

    let other = c.map_values(|g, v| {
        let mut v = v.clone();
        if g == GeneratorId::b(1) {
            v[0] = &v[0] + &Scalar::one();
        }
        v
    });
    let p3 = write(&dir, "other.json", &other.to_json().unwrap());
    let out = mcgrep(&["equiv", "-i", &p3, "-i", &p2]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["verdict"], "infeasible");
    assert_eq!(code(&mcgrep(&["equiv", "-i", &p3])), 2);
}

fn matrices_json(xs: &[Matrix]) -> String {
    serde_json::to_string(xs).unwrap()
}

#[test]
fn normalize_chain_from_stdin() {
    let (xs, expected) = samples::chain_instance(&mut samples::rng(7, &[]), 3);
    let out = mcgrep_stdin(&["normalize", "-i", "-"], &matrices_json(&xs));
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["verdict"], "pass");
    assert_eq!(
        report["result"]["conjugator"],
        serde_json::to_value(&expected.conjugator).unwrap()
    );
}

#[test]
fn normalize_reports_failing_stage() {
    let dir = TempDir::new().unwrap();
    let g = 3;
    let bad = tilde(&mcg_core::symplectic::a_matrix(g, 1), 1);
    let input = json!({ "solver": "key-lemma", "genus": g, "matrices": [bad] });
    let path = write(&dir, "x.json", &input.to_string());
    let out = mcgrep(&["normalize", "-i", &path]);
    assert_eq!(code(&out), 1);
    let report = stdout_json(&out);
    assert_eq!(report["verdict"], "fail");
    assert_eq!(report["stage"], "iv");
    assert!(report["witness"]["lhs"]["entries"].is_array());
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let junk = write(&dir, "junk.json", "{ not json");
    for cmd in ["relcheck", "build-rep", "analyze", "classify", "normalize"] {
        let out = mcgrep(&[cmd, "-i", &junk]);
        assert_eq!(code(&out), 2, "{cmd}");
        assert!(
            !String::from_utf8_lossy(&out.stderr).contains("panicked"),
            "{cmd}"
        );
    }
    let wrong_shape = write(
        &dir,
        "shape.json",
        r#"{"sig": {"g": 2}, "values": {"a1": ["1"]}}"#,
    );
    assert_eq!(code(&mcgrep(&["build-rep", "-i", &wrong_shape])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(
        code(&mcgrep(&["analyze", "-i", missing.to_str().unwrap()])),
        2
    );
    assert_eq!(code(&mcgrep(&["gen"])), 2);
    assert_eq!(
        code(&mcgrep(&["normalize", "-i", &write(&dir, "e.json", "[]")])),
        2
    );
}

#[test]
fn selftest_subset() {
    let dir = TempDir::new().unwrap();
    let json_out = dir.path().join("st.json");
    let out = mcgrep(&[
        "selftest",
        "--only",
        "3",
        "--only",
        "9",
        "-o",
        json_out.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let table = String::from_utf8_lossy(&out.stdout);
    assert!(
        table.lines().next().unwrap().starts_with("PASS [3]"),
        "{table}"
    );
    let v: Value = serde_json::from_slice(&std::fs::read(Path::new(&json_out)).unwrap()).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
    assert_eq!(code(&mcgrep(&["selftest", "--only", "12"])), 2);
}
