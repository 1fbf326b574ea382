//! One line per acceptance criterion. Criteria listed in KNOWN_FAILURES are
//! reported as FAIL without failing the target; any other failure does.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qwz::congruence::Status;
use qwz::exact::rat;
use qwz::identity::identity_by_id;
use qwz::report::{run, CheckKind, CheckRecord, RunConfig, Transform};

const KNOWN_FAILURES: [u32; 3] = [8, 9, 10];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn config(checks: &[CheckKind]) -> RunConfig {
    RunConfig {
        checks: checks.to_vec(),
        a_exps: vec![0],
        ..RunConfig::default()
    }
}

fn records(c: RunConfig) -> Vec<CheckRecord> {
    run(c).expect("valid config").checks
}

fn failing(recs: &[CheckRecord]) -> Vec<&CheckRecord> {
    recs.iter()
        .filter(|r| !r.exploratory && r.status != Status::Pass)
        .collect()
}

fn summarize(recs: &[CheckRecord]) -> Outcome {
    let bad = failing(recs);
    let mut detail = format!("{}/{} checks pass", recs.len() - bad.len(), recs.len());
    if let Some(r) = bad.first() {
        let w: String = r.witness.chars().take(60).collect();
        detail.push_str(&format!("; first failure {} {}: {}", r.name, r.params, w));
    }
    Outcome {
        ok: bad.is_empty(),
        detail,
    }
}

fn timed(limit: Duration, recs: Vec<CheckRecord>, start: Instant) -> Outcome {
    let mut o = summarize(&recs);
    let t = start.elapsed();
    o.detail.push_str(&format!(
        " in {:.1}s (limit {}s)",
        t.as_secs_f64(),
        limit.as_secs()
    ));
    o.ok &= t < limit;
    o
}

fn c1() -> Outcome {
    let start = Instant::now();
    let c = RunConfig {
        transforms: vec![
            Transform::None,
            Transform::P1,
            Transform::P3,
            Transform::P2P3,
        ],
        ..config(&[CheckKind::WzGrid])
    };
    timed(Duration::from_secs(120), records(c), start)
}

fn c2() -> Outcome {
    summarize(&records(config(&[
        CheckKind::WzVanishing,
        CheckKind::WzDecay,
    ])))
}

fn c3() -> Outcome {
    summarize(&records(config(&[CheckKind::WzDerived])))
}

fn c4() -> Outcome {
    let ids = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let mut recs = records(RunConfig {
        identities: ids(&[
            "rama1-q",
            "new-level1-q",
            "guo-zud-8n1-q",
            "28n3-q",
            "level1-q-a",
        ]),
        a_exps: vec![0, 1, 3],
        ..config(&[CheckKind::IdentityNumeric])
    });
    recs.extend(records(RunConfig {
        identities: ids(&["28n3-q-a"]),
        a_exps: vec![0, 1],
        ..config(&[CheckKind::IdentityNumeric])
    }));
    summarize(&recs)
}

fn c5() -> Outcome {
    let expected = [
        ("rama1-q", rat(1, 1)),
        ("new-level1-q", rat(1, 16)),
        ("28n3-q", rat(3, 8)),
        ("guo-zud-8n1-q", rat(1, 1)),
    ];
    let scales_ok = expected
        .iter()
        .all(|(id, s)| identity_by_id(id).is_ok_and(|x| &x.limit_scale == s));
    let mut o = summarize(&records(RunConfig {
        identities: expected.iter().map(|(id, _)| id.to_string()).collect(),
        ..config(&[CheckKind::IdentityLimit])
    }));
    o.ok &= scales_ok;
    if !scales_ok {
        o.detail.push_str("; registered limit_scale differs");
    }
    o
}

fn c6() -> Outcome {
    summarize(&records(config(&[CheckKind::IdentityClassical])))
}

fn c7() -> Outcome {
    summarize(&records(config(&[CheckKind::Terminating])))
}

fn c8() -> Outcome {
    let start = Instant::now();
    timed(
        Duration::from_secs(300),
        records(config(&[CheckKind::Theorem1])),
        start,
    )
}

fn c9() -> Outcome {
    summarize(&records(config(&[CheckKind::Theorem2])))
}

fn c10() -> Outcome {
    summarize(&records(config(&[CheckKind::Super1, CheckKind::Super2])))
}

fn c11() -> Outcome {
    summarize(&records(config(&[CheckKind::IdentityForms])))
}

fn qwz(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qwz"))
        .args(args)
        .output()
        .expect("qwz runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn c12() -> Outcome {
    let cases: [(&[&str], i32, Option<&str>); 5] = [
        (
            &["wz", "check", "--pair", "guo", "--nmax", "3", "--kmax", "3"],
            0,
            None,
        ),
        (
            &[
                "wz",
                "check",
                "--pair",
                "guo",
                "--nmax",
                "3",
                "--kmax",
                "3",
                "--corrupt",
                "--format",
                "json",
            ],
            1,
            Some("\"fail\""),
        ),
        (
            &[
                "identity",
                "verify",
                "--id",
                "rama1-q",
                "--perturb",
                "--format",
                "json",
            ],
            1,
            Some("\"fail\""),
        ),
        (
            &["congruence", "super", "--which", "2", "--p", "3"],
            2,
            None,
        ),
        (&["wz", "check", "--nmax", "-1"], 64, None),
    ];
    let mut seen = Vec::new();
    let mut ok = true;
    for (args, want, needle) in cases {
        let (code, out) = qwz(args);
        ok &= code == want && needle.is_none_or(|n| out.contains(n));
        seen.push(code.to_string());
    }
    Outcome {
        ok,
        detail: format!("exit codes {} (expected 0,1,1,2,64)", seen.join(",")),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "WZ residuals on 0..12 for all pairs and transforms", c1),
        (2, "F(0,k) vanishing and decay at n = 50", c2),
        (3, "derived summands equal the registered series", c3),
        (4, "numeric identity residuals below 1e-20", c4),
        (5, "exact q -> 1 term limits", c5),
        (6, "classical 1/pi values", c6),
        (7, "terminating evaluations", c7),
        (8, "first q-congruence theorem mod [m] Phi_m^2", c8),
        (9, "second q-congruence theorem mod Phi_m^2", c9),
        (10, "supercongruences mod p^3 and p^2", c10),
        (11, "summand form equivalences", c11),
        (12, "negative controls and exit codes", c12),
    ];
    let mut unexpected = Vec::new();
    for (n, title, check) in criteria {
        let o = check();
        let tag = match (o.ok, KNOWN_FAILURES.contains(&n)) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => {
                unexpected.push(n);
                "FAIL"
            }
        };
        println!("criterion {n:>2}  {tag:<12}  {title}: {}", o.detail);
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
