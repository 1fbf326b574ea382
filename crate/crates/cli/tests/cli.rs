use std::process::{Command, Output};

use serde_json::Value;

fn qwz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwz"))
        .args(args)
        .output()
        .expect("qwz runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = qwz(&a);
    (
        out.status.code().unwrap(),
        serde_json::from_slice(&out.stdout).expect("json output"),
    )
}

#[test]
fn grid_check_counts_cells() {
    let (code, v) = json(&[
        "wz", "check", "--pair", "guo", "--nmax", "10", "--kmax", "10",
    ]);
    assert_eq!(code, 0);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["status"], "pass");
    assert!(checks[0]["witness"]
        .as_str()
        .unwrap()
        .starts_with("121 cells, 0 failures"));
    assert_eq!(v["schema"], 1);
}

#[test]
fn transform_check() {
    let (code, v) = json(&[
        "wz",
        "transform",
        "--pair",
        "pair7-q-a",
        "--a",
        "-2,1",
        "--transform",
        "p1,p2p3",
        "--nmax",
        "3",
        "--kmax",
        "3",
    ]);
    assert_eq!(code, 0);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 4);
    assert_eq!(checks[0]["params"]["a"], "q^-2");
    assert_eq!(checks[1]["params"]["transform"], "p2p3");
}

#[test]
fn corrupted_pair_fails() {
    let (code, v) = json(&[
        "wz",
        "check",
        "--pair",
        "guo",
        "--nmax",
        "2",
        "--kmax",
        "2",
        "--corrupt",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["checks"][0]["status"], "fail");
}

#[test]
fn identity_at_zero_is_exact() {
    let (code, v) = json(&[
        "identity", "verify", "--id", "rama1-q", "--q", "0", "--terms", "1",
    ]);
    assert_eq!(code, 0);
    assert!(v["checks"][0]["witness"]
        .as_str()
        .unwrap()
        .starts_with("residual 0.000e0"));
}

#[test]
fn identity_commands() {
    let (code, v) = json(&[
        "identity",
        "verify",
        "--id",
        "level1-q-a,rama-level4",
        "--q",
        "1/2,-1/3",
        "--a",
        "0,1",
    ]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        ["identity.numeric"; 4]
            .iter()
            .copied()
            .chain(["identity.classical"])
            .collect::<Vec<_>>()
    );
    let (code, v) = json(&["identity", "limit", "--id", "28n3-q", "--nmax", "5"]);
    assert_eq!(code, 0);
    assert!(v["checks"][0]["witness"].as_str().unwrap().contains("3/8"));
    let (code, v) = json(&["identity", "classical"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
    let (code, _) = json(&["identity", "verify", "--id", "28n3-q", "--perturb"]);
    assert_eq!(code, 1);
}

#[test]
fn congruence_commands() {
    let (code, v) = json(&["congruence", "asub", "--id", "28n3-q-a", "--m", "5,7"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 8);
    let (code, v) = json(&["congruence", "cyclo", "--m", "3,5,7"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 6);
    let (code, _) = json(&["congruence", "cyclo", "--m", "7", "--upper", "0"]);
    assert_eq!(code, 1);
    let (code, v) = json(&["congruence", "super", "--which", "2", "--p", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][1]["witness"], "21 mod 49");
    let (code, v) = json(&["congruence", "qtheorem", "--which", "1", "--m", "3,5,7"]);
    assert_eq!(code, 1);
    assert_eq!(v["checks"].as_array().unwrap().len(), 6);
}

#[test]
fn stronger_modulus_is_not_counted() {
    let (_, v) = json(&[
        "congruence",
        "qtheorem",
        "--which",
        "2",
        "--m",
        "5",
        "--stronger",
    ]);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 4);
    assert_eq!(checks[3]["exploratory"], true);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["bogus"][..],
        &["identity", "verify", "--q", "1"],
        &["identity", "verify", "--q", "x"],
        &["wz", "check", "--pair", "nope"],
        &["congruence", "super", "--which", "3"],
        &["report"],
        &["report", "--suite", "nope"],
    ] {
        assert_eq!(qwz(args).status.code(), Some(64), "{args:?}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_qwz"))
        .args(["identity", "classical"])
        .env("QWZ_PRECISION", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
    assert_eq!(qwz(&["--help"]).status.code(), Some(0));
}

#[test]
fn errors_exit_2() {
    let (code, v) = json(&["congruence", "super", "--which", "2", "--p", "3"]);
    assert_eq!(code, 2);
    assert_eq!(v["checks"][0]["status"], "error");
    assert_eq!(v["checks"][0]["cause"], "invalid-argument");
    assert_eq!(
        qwz(&[
            "wz",
            "check",
            "--nmax",
            "1",
            "--kmax",
            "1",
            "-o",
            "/nonexistent/dir/r.json"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qwz"))
        .args(["identity", "verify", "--id", "rama1-q", "--format", "json"])
        .env("QWZ_PRECISION", "40")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["precision"], 40);
    assert!(v["checks"][0]["witness"]
        .as_str()
        .unwrap()
        .contains("1e-30"));
}

#[test]
fn output_file_and_text_format() {
    let dir = std::env::temp_dir().join(format!("qwz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = qwz(&[
        "congruence",
        "asub",
        "--id",
        "level1-q-a",
        "--m",
        "3",
        "--format",
        "json",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
    std::fs::remove_dir_all(&dir).unwrap();

    let text =
        String::from_utf8(qwz(&["congruence", "asub", "--id", "level1-q-a", "--m", "3"]).stdout)
            .unwrap();
    assert!(text.starts_with("qwz "));
    assert!(text.contains("4 checks: 4 pass, 0 fail, 0 error"));
}

#[test]
fn json_runs_are_identical_up_to_timing() {
    let run = || {
        let (_, mut v) = json(&["congruence", "cyclo", "--m", "5,9"]);
        v.as_object_mut().unwrap().remove("timestamp");
        for c in v["checks"].as_array_mut().unwrap() {
            c.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    assert_eq!(run(), run());
}
