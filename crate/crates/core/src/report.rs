//! Orchestration of the suites into one ordered, serializable report.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use regex::Regex;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::congruence::{
    cyclotomic_congruence_check, terminating_evaluation_check, theorem1_check,
    theorem1_supercongruence, theorem2_check, theorem2_supercongruence, CongruenceResult, Status,
};
use crate::error::{Error, Result};
use crate::exact::{rat, Rational};
use crate::identity::{
    classical_value, identity_by_id, summand_form_equivalence, verify_limit_terms, verify_numeric,
    IdentitySpec,
};
use crate::qseries::Monomial;
use crate::real::Real;
use crate::wz::{
    check_grid, pair_by_id, summand_of_derived_identity, transform_p1, transform_p2, transform_p3,
    WZPair, PAIR_IDS,
};

pub const SCHEMA: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Degree above which text output elides polynomial terms.
pub const TEXT_MAX_DEGREE: i64 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    WzGrid,
    WzVanishing,
    WzDecay,
    WzDerived,
    IdentityNumeric,
    IdentityLimit,
    IdentityClassical,
    IdentityForms,
    Terminating,
    Cyclotomic,
    Theorem1,
    Theorem2,
    Super1,
    Super2,
}

impl CheckKind {
    pub const ALL: [CheckKind; 14] = [
        CheckKind::WzGrid,
        CheckKind::WzVanishing,
        CheckKind::WzDecay,
        CheckKind::WzDerived,
        CheckKind::IdentityNumeric,
        CheckKind::IdentityLimit,
        CheckKind::IdentityClassical,
        CheckKind::IdentityForms,
        CheckKind::Terminating,
        CheckKind::Cyclotomic,
        CheckKind::Theorem1,
        CheckKind::Theorem2,
        CheckKind::Super1,
        CheckKind::Super2,
    ];

    pub fn suite(self) -> &'static str {
        use CheckKind::*;
        match self {
            WzGrid | WzVanishing | WzDecay | WzDerived => "wz",
            IdentityNumeric | IdentityLimit | IdentityClassical | IdentityForms => "identity",
            _ => "congruence",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transform {
    None,
    P1,
    P3,
    #[serde(rename = "p2p3")]
    P2P3,
}

impl Transform {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Transform::None),
            "p1" => Ok(Transform::P1),
            "p3" => Ok(Transform::P3),
            "p2p3" => Ok(Transform::P2P3),
            _ => Err(Error::InvalidArgument(format!("unknown transform {s}"))),
        }
    }

    fn apply(self, pair: &WZPair) -> WZPair {
        match self {
            Transform::None => pair.clone(),
            Transform::P1 => transform_p1(pair),
            Transform::P3 => transform_p3(pair),
            Transform::P2P3 => transform_p2(&transform_p3(pair)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

fn rationals_as_strings<S: Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub checks: Vec<CheckKind>,
    pub pairs: Vec<String>,
    pub transforms: Vec<Transform>,
    pub n_max: i64,
    pub k_max: i64,
    /// Exponents e of the substitutions a = q^e for parameterized pairs and series.
    pub a_exps: Vec<i64>,
    pub corrupt: bool,
    pub identities: Vec<String>,
    #[serde(serialize_with = "rationals_as_strings")]
    pub q_samples: Vec<Rational>,
    pub n_terms: i64,
    /// Overrides the per-series default of 60 or 80 terms.
    pub classical_terms: Option<i64>,
    pub limit_n_max: i64,
    pub perturb: bool,
    pub precision: u32,
    pub terminating_level1_m: Vec<i64>,
    pub terminating_level2_m: Vec<i64>,
    pub cyclotomic_m: Vec<i64>,
    /// Overrides the truncations (m-1)/2 and m-1.
    pub cyclotomic_upper: Option<i64>,
    pub theorem1_m: Vec<i64>,
    pub theorem2_m: Vec<i64>,
    pub stronger: bool,
    pub super1_p: Vec<u64>,
    pub super2_p: Vec<u64>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            checks: CheckKind::ALL.to_vec(),
            pairs: PAIR_IDS.iter().map(|s| s.to_string()).collect(),
            transforms: vec![
                Transform::None,
                Transform::P1,
                Transform::P3,
                Transform::P2P3,
            ],
            n_max: 12,
            k_max: 12,
            a_exps: vec![0, 1, 3],
            corrupt: false,
            identities: [
                "rama1-q",
                "new-level1-q",
                "level1-q-a",
                "gz-thm44-input",
                "guo-zud-8n1-q",
                "28n3-q",
                "28n3-q-a",
                "rama-level4",
                "rama-level1",
                "rama-level2-8n1",
                "rama-level2-28n3",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
            q_samples: vec![rat(1, 2)],
            n_terms: 40,
            classical_terms: None,
            limit_n_max: 15,
            perturb: false,
            precision: 30,
            terminating_level1_m: vec![1, 3, 5, 7, 9],
            terminating_level2_m: vec![1, 5, 7, 11],
            cyclotomic_m: vec![3, 5, 7, 9, 15],
            cyclotomic_upper: None,
            theorem1_m: vec![3, 5, 7, 9, 15],
            theorem2_m: vec![5, 7, 11, 13],
            stronger: false,
            super1_p: vec![3, 5, 7, 11, 13],
            super2_p: vec![5, 7, 11, 13],
            output: None,
            format: Format::Text,
        }
    }
}

impl RunConfig {
    /// A config with no checks selected and default parameters.
    pub fn empty() -> Self {
        Self {
            checks: Vec::new(),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision < 10 {
            return Err(Error::InvalidArgument(
                "precision must be at least 10".into(),
            ));
        }
        if let Some(q) = self
            .q_samples
            .iter()
            .find(|q| q.abs() >= Rational::from_integer(1.into()))
        {
            return Err(Error::InvalidArgument(format!(
                "q sample {q} must satisfy |q| < 1"
            )));
        }
        if self.n_max < 0 || self.k_max < 0 || self.n_terms < 0 || self.limit_n_max < 0 {
            return Err(Error::InvalidArgument("bounds must be nonnegative".into()));
        }
        for p in &self.pairs {
            if !PAIR_IDS.contains(&p.as_str()) {
                return Err(Error::UnknownId(p.clone()));
            }
        }
        for id in &self.identities {
            identity_by_id(id)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub params: Value,
    pub status: Status,
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cause: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub exploratory: bool,
    pub elapsed_ms: u64,
}

impl CheckRecord {
    fn new(name: &str, params: Value, ok: bool, witness: String) -> Self {
        Self {
            name: name.to_string(),
            params,
            status: if ok { Status::Pass } else { Status::Fail },
            witness,
            cause: None,
            exploratory: false,
            elapsed_ms: 0,
        }
    }

    fn error(name: &str, params: Value, e: &Error) -> Self {
        Self {
            name: name.to_string(),
            params,
            status: Status::Error,
            witness: e.to_string(),
            cause: Some(e.kind().to_string()),
            exploratory: false,
            elapsed_ms: 0,
        }
    }

    fn from_congruence(name: &str, r: CongruenceResult) -> Self {
        let mut params = r.params;
        if let Value::Object(m) = &mut params {
            m.insert("modulus".into(), Value::String(r.modulus));
        }
        Self {
            name: name.to_string(),
            params,
            status: r.status,
            witness: r.witness,
            cause: r.cause,
            exploratory: r.exploratory,
            elapsed_ms: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub version: String,
    pub timestamp: String,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(config: RunConfig, checks: Vec<CheckRecord>) -> Self {
        Self {
            schema: SCHEMA,
            version: VERSION.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            config,
            checks,
        }
    }

    /// 0 when every asserted check passes, 2 on any error, otherwise 1.
    /// Exploratory checks never affect the code.
    pub fn exit_code(&self) -> i32 {
        let asserted = || self.checks.iter().filter(|c| !c.exploratory);
        if asserted().any(|c| c.status == Status::Error) {
            2
        } else if asserted().any(|c| c.status == Status::Fail) {
            1
        } else {
            0
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

#[derive(Clone, Debug)]
enum Job {
    Grid {
        pair: String,
        a: i64,
        transform: Transform,
    },
    Vanishing {
        pair: String,
    },
    Decay {
        pair: String,
    },
    Derived {
        pair: &'static str,
        series: &'static str,
        a: i64,
    },
    Numeric {
        id: String,
        a: i64,
        q: Rational,
    },
    Limit {
        id: String,
    },
    Classical {
        id: String,
        terms: i64,
    },
    Forms {
        id: &'static str,
    },
    Terminating {
        id: &'static str,
        m: i64,
    },
    Cyclotomic {
        m: i64,
        upper: i64,
    },
    Theorem1 {
        m: i64,
    },
    Theorem2 {
        m: i64,
    },
    Super1 {
        p: u64,
    },
    Super2 {
        p: u64,
    },
}

const Q_PAIRS: [&str; 4] = ["guo", "guo-a", "pair7-q", "pair7-q-a"];

fn has_a(pair: &str) -> bool {
    pair.ends_with("-a")
}

fn jobs(config: &RunConfig) -> Vec<Job> {
    let mut out = Vec::new();
    for kind in &config.checks {
        match kind {
            CheckKind::WzGrid => {
                for pair in &config.pairs {
                    let exps = if has_a(pair) {
                        config.a_exps.clone()
                    } else {
                        vec![0]
                    };
                    for a in exps {
                        for &transform in &config.transforms {
                            out.push(Job::Grid {
                                pair: pair.clone(),
                                a,
                                transform,
                            });
                        }
                    }
                }
            }
            CheckKind::WzVanishing => out.extend(
                config
                    .pairs
                    .iter()
                    .map(|p| Job::Vanishing { pair: p.clone() }),
            ),
            CheckKind::WzDecay => out.extend(
                config
                    .pairs
                    .iter()
                    .filter(|p| Q_PAIRS.contains(&p.as_str()))
                    .map(|p| Job::Decay { pair: p.clone() }),
            ),
            CheckKind::WzDerived => {
                out.push(Job::Derived {
                    pair: "guo",
                    series: "new-level1-q",
                    a: 0,
                });
                out.push(Job::Derived {
                    pair: "pair7-q",
                    series: "28n3-q",
                    a: 0,
                });
                for &a in config.a_exps.iter().filter(|&&a| a != 0) {
                    out.push(Job::Derived {
                        pair: "guo-a",
                        series: "level1-q-a",
                        a,
                    });
                    out.push(Job::Derived {
                        pair: "pair7-q-a",
                        series: "28n3-q-a",
                        a,
                    });
                }
            }
            CheckKind::IdentityNumeric => {
                for id in &config.identities {
                    let spec = match identity_by_id(id) {
                        Ok(s) if !s.is_classical() => s,
                        _ => continue,
                    };
                    let exps = if spec.has_parameter {
                        config.a_exps.clone()
                    } else {
                        vec![0]
                    };
                    for a in exps {
                        for q in &config.q_samples {
                            out.push(Job::Numeric {
                                id: id.clone(),
                                a,
                                q: q.clone(),
                            });
                        }
                    }
                }
            }
            CheckKind::IdentityLimit => out.extend(
                config
                    .identities
                    .iter()
                    .filter(|id| identity_by_id(id).is_ok_and(|s| s.classical_companion.is_some()))
                    .map(|id| Job::Limit { id: id.clone() }),
            ),
            CheckKind::IdentityClassical => {
                for id in &config.identities {
                    if identity_by_id(id).is_ok_and(|s| s.is_classical()) {
                        let terms = config
                            .classical_terms
                            .unwrap_or(default_classical_terms(id));
                        out.push(Job::Classical {
                            id: id.clone(),
                            terms,
                        });
                    }
                }
            }
            CheckKind::IdentityForms => {
                out.push(Job::Forms { id: "new-level1-q" });
                out.push(Job::Forms { id: "28n3-q" });
            }
            CheckKind::Terminating => {
                out.extend(
                    config
                        .terminating_level1_m
                        .iter()
                        .map(|&m| Job::Terminating {
                            id: "level1-q-a",
                            m,
                        }),
                );
                out.extend(
                    config
                        .terminating_level2_m
                        .iter()
                        .map(|&m| Job::Terminating { id: "28n3-q-a", m }),
                );
            }
            CheckKind::Cyclotomic => {
                for &m in &config.cyclotomic_m {
                    match config.cyclotomic_upper {
                        Some(upper) => out.push(Job::Cyclotomic { m, upper }),
                        None => {
                            out.push(Job::Cyclotomic {
                                m,
                                upper: (m - 1) / 2,
                            });
                            out.push(Job::Cyclotomic { m, upper: m - 1 });
                        }
                    }
                }
            }
            CheckKind::Theorem1 => {
                out.extend(config.theorem1_m.iter().map(|&m| Job::Theorem1 { m }))
            }
            CheckKind::Theorem2 => {
                out.extend(config.theorem2_m.iter().map(|&m| Job::Theorem2 { m }))
            }
            CheckKind::Super1 => out.extend(config.super1_p.iter().map(|&p| Job::Super1 { p })),
            CheckKind::Super2 => out.extend(config.super2_p.iter().map(|&p| Job::Super2 { p })),
        }
    }
    out
}

fn default_classical_terms(id: &str) -> i64 {
    if id.starts_with("rama-level2") {
        80
    } else {
        60
    }
}

fn sci(x: &Real) -> String {
    format!("{:.3e}", x.to_f64())
}

/// Order of magnitude of a rational, exact enough for a witness.
fn magnitude(x: &Rational) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let bits = x.numer().bits() as f64 - x.denom().bits() as f64;
    format!("~1e{}", (bits * std::f64::consts::LOG10_2).round() as i64)
}

fn below(x: &Real, digits: u32) -> bool {
    x < &Real::ten_pow_neg(digits, x.bits())
}

fn spec_for(id: &str, perturb: bool) -> Result<IdentitySpec> {
    let s = identity_by_id(id)?;
    Ok(if perturb { s.perturbed() } else { s })
}

fn pair_for(id: &str, a: i64, corrupt: bool) -> Result<WZPair> {
    let p = pair_by_id(id, Monomial::q_pow(a))?;
    Ok(if corrupt { p.corrupted() } else { p })
}

fn settle(name: &str, params: Value, r: Result<(bool, String)>) -> Vec<CheckRecord> {
    vec![match r {
        Ok((ok, w)) => CheckRecord::new(name, params, ok, w),
        Err(e) => CheckRecord::error(name, params, &e),
    }]
}

fn congruences(name: &str, params: Value, r: Result<Vec<CongruenceResult>>) -> Vec<CheckRecord> {
    match r {
        Ok(rs) => rs
            .into_iter()
            .map(|c| CheckRecord::from_congruence(name, c))
            .collect(),
        Err(e) => vec![CheckRecord::error(name, params, &e)],
    }
}

fn execute(job: &Job, config: &RunConfig) -> Vec<CheckRecord> {
    let precision = config.precision;
    match job {
        Job::Grid { pair, a, transform } => {
            let params = json!({
                "pair": pair, "a": Monomial::q_pow(*a).to_string(), "transform": transform,
                "n_max": config.n_max, "k_max": config.k_max, "corrupt": config.corrupt,
            });
            let r = pair_for(pair, *a, config.corrupt).and_then(|p| {
                let g = check_grid(&transform.apply(&p), config.n_max, config.k_max)?;
                let mut w = format!("{} cells, {} failures", g.cells, g.failures.len());
                if let Some(f) = g.failures.first() {
                    let _ = write!(w, "; first at (n,k)=({},{}): {}", f.n, f.k, f.residual);
                }
                Ok((g.passed(), w))
            });
            settle("wz.grid", params, r)
        }
        Job::Vanishing { pair } => {
            let params = json!({"pair": pair, "a": "1", "k_max": config.k_max});
            let r = pair_for(pair, 0, config.corrupt).and_then(|p| {
                let mut bad = Vec::new();
                for k in 0..=config.k_max {
                    if !p.f.eval(0, k)?.is_zero() {
                        bad.push(k);
                    }
                }
                let w = if bad.is_empty() {
                    "F(0,k) = 0".to_string()
                } else {
                    format!("F(0,k) != 0 at k = {bad:?}")
                };
                Ok((bad.is_empty(), w))
            });
            settle("wz.vanishing", params, r)
        }
        Job::Decay { pair } => {
            let (big_n, k_max) = (50, 4);
            let params = json!({"pair": pair, "q": "1/2", "n": big_n, "k_max": k_max});
            let r = pair_for(pair, 0, config.corrupt).and_then(|p| {
                let bound = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(10));
                let mut worst = Rational::zero();
                for k in 0..=k_max {
                    let v = p.f.eval(big_n, k)?;
                    if v.is_zero() {
                        continue;
                    }
                    let x = v.finite()?.eval_rational(&rat(1, 2))?.abs();
                    if x > worst {
                        worst = x;
                    }
                }
                let w = format!("max |F({big_n},k)| = {}", magnitude(&worst));
                Ok((worst < bound, w))
            });
            settle("wz.decay", params, r)
        }
        Job::Derived { pair, series, a } => {
            let am = Monomial::q_pow(*a);
            let params = json!({"pair": pair, "series": series, "a": am.to_string(), "n_max": 10});
            let r = (|| {
                let spec = identity_by_id(series)?;
                let mut bad = Vec::new();
                for n in 0..=10 {
                    if summand_of_derived_identity(pair, am, n)? != spec.term(n, am)? {
                        bad.push(n);
                    }
                }
                let w = if bad.is_empty() {
                    "11 summands equal".to_string()
                } else {
                    format!("differ at n = {bad:?}")
                };
                Ok((bad.is_empty(), w))
            })();
            settle("wz.derived", params, r)
        }
        Job::Numeric { id, a, q } => {
            let am = Monomial::q_pow(*a);
            let params = json!({
                "id": id, "a": am.to_string(), "q": q.to_string(), "terms": config.n_terms,
                "precision": precision, "perturbed": config.perturb,
            });
            let tol = precision - 10;
            let r = spec_for(id, config.perturb).and_then(|s| {
                let c = verify_numeric(&s, am, q, config.n_terms, precision)?;
                Ok((
                    below(&c.residual, tol),
                    format!("residual {} (tolerance 1e-{tol})", sci(&c.residual)),
                ))
            });
            settle("identity.numeric", params, r)
        }
        Job::Limit { id } => {
            let params =
                json!({"id": id, "n_max": config.limit_n_max, "perturbed": config.perturb});
            let r = spec_for(id, config.perturb).and_then(|s| {
                let checks = verify_limit_terms(&s, config.limit_n_max)?;
                let w = match checks.iter().find(|c| !c.ok) {
                    None => format!(
                        "{} limits equal {} x classical term",
                        checks.len(),
                        s.limit_scale
                    ),
                    Some(c) => format!(
                        "n = {}: limit {} vs {}",
                        c.n,
                        c.q_limit.as_deref().unwrap_or("pole"),
                        c.expected
                    ),
                };
                Ok((checks.iter().all(|c| c.ok), w))
            });
            settle("identity.limit", params, r)
        }
        Job::Classical { id, terms } => {
            let tol = precision - 15;
            let params = json!({"id": id, "terms": terms, "precision": precision, "perturbed": config.perturb});
            let r = spec_for(id, config.perturb).and_then(|s| {
                let d = classical_value(&s, *terms, precision)?.abs();
                Ok((
                    below(&d, tol),
                    format!("|sum - constant| = {} (tolerance 1e-{tol})", sci(&d)),
                ))
            });
            settle("identity.classical", params, r)
        }
        Job::Forms { id } => {
            let params = json!({"id": id, "n_max": 10});
            let r = summand_form_equivalence(id, 10).map(|v| {
                let bad: Vec<i64> = v.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
                let w = if bad.is_empty() {
                    "11 summands equal".to_string()
                } else {
                    format!("differ at n = {bad:?}")
                };
                (bad.is_empty(), w)
            });
            settle("identity.forms", params, r)
        }
        Job::Terminating { id, m } => congruences(
            "congruence.terminating",
            json!({"id": id, "m": m}),
            terminating_evaluation_check(id, *m),
        ),
        Job::Cyclotomic { m, upper } => congruences(
            "congruence.cyclotomic",
            json!({"m": m, "upper": upper}),
            cyclotomic_congruence_check("new-level1-q", *m, *upper).map(|r| vec![r]),
        ),
        Job::Theorem1 { m } => {
            congruences("congruence.theorem1", json!({"m": m}), theorem1_check(*m))
        }
        Job::Theorem2 { m } => congruences(
            "congruence.theorem2",
            json!({"m": m}),
            theorem2_check(*m, config.stronger),
        ),
        Job::Super1 { p } => congruences(
            "congruence.super1",
            json!({"p": p}),
            theorem1_supercongruence(*p),
        ),
        Job::Super2 { p } => congruences(
            "congruence.super2",
            json!({"p": p}),
            theorem2_supercongruence(*p),
        ),
    }
}

/// Runs every selected check; the record order depends only on the config.
pub fn run(config: RunConfig) -> Result<Report> {
    config.validate()?;
    let jobs = jobs(&config);
    let records: Vec<Vec<CheckRecord>> = jobs
        .par_iter()
        .map(|job| {
            let start = Instant::now();
            let mut recs = execute(job, &config);
            let ms = start.elapsed().as_millis() as u64;
            for r in &mut recs {
                r.elapsed_ms = ms;
            }
            recs
        })
        .collect();
    Ok(Report::new(config, records.into_iter().flatten().collect()))
}

/// Replaces polynomial terms of degree above `max_degree` by a single "...".
pub fn truncate_polynomials(s: &str, max_degree: i64) -> String {
    let term = Regex::new(r"-?\d+(?:/\d+)?\*q\^(-?\d+)").expect("valid pattern");
    let mut out = String::with_capacity(s.len());
    let mut last = 0;
    let mut skipping = false;
    for cap in term.captures_iter(s) {
        let whole = cap.get(0).expect("match");
        let gap = &s[last..whole.start()];
        let degree: i64 = cap[1].parse().unwrap_or(i64::MAX);
        if skipping && gap == " + " {
            // inside a run of elided terms
        } else {
            out.push_str(gap);
            skipping = false;
        }
        if degree > max_degree {
            if !skipping {
                out.push_str("...");
                skipping = true;
            }
        } else {
            if skipping {
                out.push_str(" + ");
                skipping = false;
            }
            out.push_str(whole.as_str());
        }
        last = whole.end();
    }
    out.push_str(&s[last..]);
    out
}

fn params_text(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                v => format!("{k}={v}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        v => v.to_string(),
    }
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => emit_text(report),
    }
}

fn emit_text(report: &Report) -> String {
    let rows: Vec<(String, &str, String, String)> = report
        .checks
        .iter()
        .map(|c| {
            let status = if c.exploratory {
                format!("{}*", c.status)
            } else {
                c.status.to_string()
            };
            (
                status,
                c.name.as_str(),
                params_text(&c.params),
                truncate_polynomials(&c.witness, TEXT_MAX_DEGREE),
            )
        })
        .collect();
    let w_status = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let w_name = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
    let w_params = rows.iter().map(|r| r.2.len()).max().unwrap_or(0);
    let mut out = format!("qwz {} ({})\n", report.version, report.timestamp);
    for (status, name, params, witness) in &rows {
        let _ = writeln!(
            out,
            "{status:<w_status$}  {name:<w_name$}  {params:<w_params$}  {witness}"
        );
    }
    let exploratory = report.checks.iter().filter(|c| c.exploratory).count();
    let _ = writeln!(
        out,
        "{} checks: {} pass, {} fail, {} error",
        report.checks.len(),
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Error)
    );
    if exploratory > 0 {
        let _ = writeln!(
            out,
            "* exploratory, {exploratory} not counted in the exit status"
        );
    }
    out
}
