//! Registry of q-series identities and their classical limits, with numeric
//! two-sided checks and exact term-by-term q -> 1 checks.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, Rational};
use crate::qpoly::RatFuncQ;
use crate::qseries::{qpoch_infinite, ExtTerm, Monomial, PochSpec};
use crate::real::{bits_for_digits, Real};
use crate::wz::{bracket_ext, CTerm, QTerm};

pub const IDENTITY_IDS: [&str; 11] = [
    "rama1-q",
    "rama-level4",
    "new-level1-q",
    "rama-level1",
    "level1-q-a",
    "gz-thm44-input",
    "guo-zud-8n1-q",
    "rama-level2-8n1",
    "28n3-q",
    "rama-level2-28n3",
    "28n3-q-a",
];

pub type SummandFn = Arc<dyn Fn(i64, Monomial) -> Result<ExtTerm> + Send + Sync>;

/// Ratio of infinite q-Pochhammer products, each factor taken at the identity's `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteProductSpec {
    pub numerator: Vec<PochSpec>,
    pub denominator: Vec<PochSpec>,
}

impl InfiniteProductSpec {
    pub fn eval(&self, a: Monomial, q0: &Rational, precision: u32) -> Result<Real> {
        let mut acc = Real::one(bits_for_digits(precision));
        for s in &self.numerator {
            acc = &acc * &qpoch_infinite(s, a, q0, precision)?;
        }
        for s in &self.denominator {
            let d = qpoch_infinite(s, a, q0, precision)?;
            acc = &acc / &d;
        }
        Ok(acc)
    }
}

/// coeff * sqrt(radicand) / pi
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedConstant {
    pub coeff: Rational,
    pub radicand: u32,
}

impl ClosedConstant {
    pub fn eval(&self, precision: u32) -> Real {
        let bits = bits_for_digits(precision);
        let root = Real::from_int(self.radicand as i64, bits).sqrt();
        &(&Real::from_rational(&self.coeff, bits) * &root) / &Real::pi(bits)
    }
}

impl fmt::Display for ClosedConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*sqrt({})/pi", self.coeff, self.radicand)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rhs {
    Product(InfiniteProductSpec),
    Constant(ClosedConstant),
}

#[derive(Clone)]
pub struct IdentitySpec {
    pub id: String,
    summand: SummandFn,
    pub rhs: Rhs,
    pub classical_companion: Option<&'static str>,
    pub limit_scale: Rational,
    pub has_parameter: bool,
}

impl fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentitySpec")
            .field("id", &self.id)
            .field("rhs", &self.rhs)
            .field("classical_companion", &self.classical_companion)
            .field("limit_scale", &self.limit_scale)
            .finish()
    }
}

impl IdentitySpec {
    pub fn is_classical(&self) -> bool {
        matches!(self.rhs, Rhs::Constant(_))
    }

    pub fn summand(&self, n: i64, a: Monomial) -> Result<ExtTerm> {
        if n < 0 {
            return Err(Error::InvalidArgument(
                "summand index must be nonnegative".into(),
            ));
        }
        (self.summand)(n, a).map_err(|e| match e {
            Error::Pole => Error::PoleInTerm(n),
            e => e,
        })
    }

    /// The n-th term as a finite rational function.
    pub fn term(&self, n: i64, a: Monomial) -> Result<RatFuncQ> {
        self.summand(n, a)?
            .finite()
            .map_err(|_| Error::PoleInTerm(n))
    }

    /// The same series with the n = 1 term multiplied by q (or by 2 for classical series).
    pub fn perturbed(&self) -> Self {
        let inner = self.summand.clone();
        let factor = if self.is_classical() {
            RatFuncQ::constant(rat_int(2))
        } else {
            RatFuncQ::monomial(Rational::one(), 1)
        };
        let mut out = self.clone();
        out.id = format!("{}-perturbed", self.id);
        out.summand = Arc::new(move |n, a| {
            let t = inner(n, a)?;
            Ok(if n == 1 { t.mul_value(&factor) } else { t })
        });
        out
    }
}

fn spec(
    id: &str,
    summand: fn(i64, Monomial) -> Result<ExtTerm>,
    rhs: Rhs,
    classical_companion: Option<&'static str>,
    limit_scale: Rational,
    has_parameter: bool,
) -> IdentitySpec {
    IdentitySpec {
        id: id.to_string(),
        summand: Arc::new(summand),
        rhs,
        classical_companion,
        limit_scale,
        has_parameter,
    }
}

fn product(numerator: &[PochSpec], denominator: &[PochSpec]) -> Rhs {
    Rhs::Product(InfiniteProductSpec {
        numerator: numerator.to_vec(),
        denominator: denominator.to_vec(),
    })
}

fn constant(coeff: Rational, radicand: u32) -> Rhs {
    Rhs::Constant(ClosedConstant { coeff, radicand })
}

const P: fn(i64, u32) -> PochSpec = PochSpec::plain;

pub fn identity_by_id(id: &str) -> Result<IdentitySpec> {
    let one = Rational::one();
    let level4_rhs = || product(&[P(3, 4), P(5, 4)], &[P(4, 4), P(4, 4)]);
    let level4_a_rhs = || {
        product(
            &[P(3, 4), P(5, 4)],
            &[PochSpec::times_a(4, 4), PochSpec::over_a(4, 4)],
        )
    };
    let level2_rhs = || product(&[P(3, 2), P(3, 6)], &[P(2, 2), P(6, 6)]);
    let s = match id {
        "rama1-q" => spec(id, rama1_q, level4_rhs(), Some("rama-level4"), one, false),
        "rama-level4" => spec(id, rama_level4, constant(rat_int(2), 2), None, one, false),
        "new-level1-q" => spec(
            id,
            new_level1_q,
            level4_rhs(),
            Some("rama-level1"),
            rat(1, 16),
            false,
        ),
        "rama-level1" => spec(id, rama_level1, constant(rat_int(32), 2), None, one, false),
        "level1-q-a" => spec(
            id,
            level1_q_a,
            level4_a_rhs(),
            Some("rama-level1"),
            rat(1, 16),
            true,
        ),
        "gz-thm44-input" => spec(
            id,
            gz_thm44_input,
            level4_a_rhs(),
            Some("rama-level4"),
            one,
            true,
        ),
        "guo-zud-8n1-q" => spec(
            id,
            guo_zud_8n1_q,
            level2_rhs(),
            Some("rama-level2-8n1"),
            one,
            false,
        ),
        "rama-level2-8n1" => spec(
            id,
            rama_level2_8n1,
            constant(rat_int(2), 3),
            None,
            one,
            false,
        ),
        "28n3-q" => spec(
            id,
            q28n3,
            level2_rhs(),
            Some("rama-level2-28n3"),
            rat(3, 8),
            false,
        ),
        "rama-level2-28n3" => spec(
            id,
            rama_level2_28n3,
            constant(rat(16, 3), 3),
            None,
            one,
            false,
        ),
        "28n3-q-a" => spec(
            id,
            q28n3_a,
            product(
                &[
                    P(5, 6),
                    P(7, 6),
                    PochSpec::times_a(3, 6),
                    PochSpec::over_a(3, 6),
                ],
                &[
                    P(2, 6),
                    P(4, 6),
                    PochSpec::times_a(6, 6),
                    PochSpec::over_a(6, 6),
                ],
            ),
            Some("rama-level2-28n3"),
            rat(3, 8),
            true,
        ),
        _ => return Err(Error::UnknownId(id.to_string())),
    };
    Ok(s)
}

fn q_pow(e: i64) -> RatFuncQ {
    RatFuncQ::monomial(Rational::one(), e)
}

fn br(n: i64) -> RatFuncQ {
    RatFuncQ::qbracket(n)
}

/// (1 - a q^e) as a one-factor Pochhammer symbol.
fn times_a(e: i64) -> PochSpec {
    PochSpec::times_a(e, 1)
}

fn over_a(e: i64) -> PochSpec {
    PochSpec::over_a(e, 1)
}

fn rama1_q(n: i64, _a: Monomial) -> Result<ExtTerm> {
    gz_thm44_input(n, Monomial::ONE)
}

fn gz_thm44_input(n: i64, a: Monomial) -> Result<ExtTerm> {
    Ok(QTerm::new(a)
        .sign(n)
        .q_pow(3 * n * n)
        .poch(P(1, 2), n, 1)
        .poch(PochSpec::times_a(1, 2), n, 1)
        .poch(PochSpec::over_a(1, 2), n, 1)
        .poch(P(4, 4), n, -1)
        .poch(PochSpec::times_a(4, 4), n, -1)
        .poch(PochSpec::over_a(4, 4), n, -1)
        .bracket(6 * n + 1)
        .build())
}

/// [6n+3] q^{14n+7} - [10n+7] q^{10n+3}
fn level1_difference(n: i64) -> RatFuncQ {
    &(&br(6 * n + 3) * &q_pow(14 * n + 7)) - &(&br(10 * n + 7) * &q_pow(10 * n + 3))
}

fn level1_prefix(n: i64, a: Monomial) -> ExtTerm {
    QTerm::new(a)
        .sign(n)
        .q_pow(7 * n * n)
        .poch(P(1, 2), 3 * n, 1)
        .poch(PochSpec::times_a(1, 2), n, 1)
        .poch(PochSpec::over_a(1, 2), n, 1)
        .poch(P(4, 4), n, -1)
        .poch(PochSpec::times_a(4, 4), 2 * n, -1)
        .poch(PochSpec::over_a(4, 4), 2 * n, -1)
        .build()
}

/// Summand with the correction term divided by (1+q^{2n+1})^2 (1+q^{4n+2})^2.
fn new_level1_q(n: i64, _a: Monomial) -> Result<ExtTerm> {
    let corr = bracket_ext(6 * n + 1)
        .mul(&bracket_ext(4 * n + 4).recip()?)
        .mul_value(&level1_difference(n));
    let corr = QTerm::new(Monomial::ONE)
        .binomial(-1, 2 * n + 1, -2)
        .binomial(-1, 4 * n + 2, -2)
        .build()
        .mul(&corr);
    let inner = corr.add(&bracket_ext(10 * n + 1))?;
    Ok(level1_prefix(n, Monomial::ONE).mul(&inner))
}

/// Summand with the correction term carrying [2n+1]^2 / [8n+4]^2.
pub fn new_level1_q_alt(n: i64) -> Result<ExtTerm> {
    let corr = bracket_ext(2 * n + 1)
        .mul(&bracket_ext(2 * n + 1))
        .mul(&bracket_ext(6 * n + 1))
        .mul(&bracket_ext(4 * n + 4).recip()?)
        .mul(&bracket_ext(8 * n + 4).recip()?)
        .mul(&bracket_ext(8 * n + 4).recip()?)
        .mul_value(&level1_difference(n));
    let inner = corr.add(&bracket_ext(10 * n + 1))?;
    Ok(level1_prefix(n, Monomial::ONE).mul(&inner))
}

fn level1_q_a(n: i64, a: Monomial) -> Result<ExtTerm> {
    let corr = QTerm::new(a)
        .poch(times_a(2 * n + 1), 1, 1)
        .poch(over_a(2 * n + 1), 1, 1)
        .poch(times_a(8 * n + 4), 1, -1)
        .poch(over_a(8 * n + 4), 1, -1)
        .bracket(6 * n + 1)
        .build()
        .mul(&bracket_ext(4 * n + 4).recip()?)
        .mul_value(&level1_difference(n));
    let inner = corr.add(&bracket_ext(10 * n + 1))?;
    Ok(level1_prefix(n, a).mul(&inner))
}

fn guo_zud_8n1_q(n: i64, _a: Monomial) -> Result<ExtTerm> {
    Ok(QTerm::new(Monomial::ONE)
        .q_pow(2 * n * n)
        .poch(P(1, 2), n, 2)
        .poch(P(1, 2), 2 * n, 1)
        .poch(P(6, 6), n, -2)
        .poch(P(2, 2), 2 * n, -1)
        .bracket(8 * n + 1)
        .build())
}

fn q28n3_prefix(n: i64, a: Monomial) -> ExtTerm {
    QTerm::new(a)
        .sign(n)
        .q_pow(5 * n * n)
        .poch(PochSpec::times_a(1, 2), 2 * n, 1)
        .poch(PochSpec::over_a(1, 2), 2 * n, 1)
        .poch(P(1, 2), n, 1)
        .poch(P(3, 6), n, 1)
        .poch(PochSpec::times_a(6, 6), n, -1)
        .poch(PochSpec::over_a(6, 6), n, -1)
        .poch(P(2, 2), 4 * n, -1)
        .build()
}

/// Summand with correction q^{8n+2}[4n+1] / ((1+q^{2n+1})(1+q^{4n+1})(1+q^{4n+2})).
fn q28n3(n: i64, _a: Monomial) -> Result<ExtTerm> {
    let corr = QTerm::new(Monomial::ONE)
        .q_pow(8 * n + 2)
        .bracket(4 * n + 1)
        .binomial(-1, 2 * n + 1, -1)
        .binomial(-1, 4 * n + 1, -1)
        .binomial(-1, 4 * n + 2, -1)
        .build();
    let inner = corr.add(&bracket_ext(10 * n + 1))?;
    Ok(q28n3_prefix(n, Monomial::ONE).mul(&inner))
}

/// Summand with correction [4n+1]^2 q^{8n+2} / ((1+q^{2n+1})(1+q^{4n+2})[8n+2]).
pub fn q28n3_alt(n: i64) -> Result<ExtTerm> {
    let corr = QTerm::new(Monomial::ONE)
        .q_pow(8 * n + 2)
        .bracket(4 * n + 1)
        .bracket(4 * n + 1)
        .binomial(-1, 2 * n + 1, -1)
        .binomial(-1, 4 * n + 2, -1)
        .build()
        .mul(&bracket_ext(8 * n + 2).recip()?);
    let inner = corr.add(&bracket_ext(10 * n + 1))?;
    Ok(q28n3_prefix(n, Monomial::ONE).mul(&inner))
}

fn q28n3_a(n: i64, a: Monomial) -> Result<ExtTerm> {
    let corr = QTerm::new(a)
        .poch(times_a(4 * n + 1), 1, 1)
        .poch(over_a(4 * n + 1), 1, 1)
        .binomial(1, 1, -2)
        .q_pow(8 * n + 2)
        .binomial(-1, 2 * n + 1, -1)
        .binomial(-1, 4 * n + 2, -1)
        .build()
        .mul(&bracket_ext(8 * n + 2).recip()?);
    let inner = corr.add(&bracket_ext(10 * n + 1))?;
    Ok(q28n3_prefix(n, a).mul(&inner))
}

fn classical_half_quarters(n: i64) -> CTerm {
    CTerm::new()
        .poch(rat(1, 2), n, 1)
        .poch(rat(1, 4), n, 1)
        .poch(rat(3, 4), n, 1)
        .poch(rat_int(1), n, -3)
}

fn rama_level4(n: i64, _a: Monomial) -> Result<ExtTerm> {
    Ok(CTerm::new()
        .poch(rat(1, 2), n, 3)
        .poch(rat_int(1), n, -3)
        .factor(6 * n + 1, 1)
        .sign(n)
        .power(2, -3 * n)
        .build_q())
}

fn rama_level1(n: i64, _a: Monomial) -> Result<ExtTerm> {
    Ok(CTerm::new()
        .poch(rat(1, 2), n, 1)
        .poch(rat(1, 6), n, 1)
        .poch(rat(5, 6), n, 1)
        .poch(rat_int(1), n, -3)
        .factor(154 * n + 15, 1)
        .sign(n)
        .power(3, 3 * n)
        .power(8, -3 * n)
        .build_q())
}

fn rama_level2_8n1(n: i64, _a: Monomial) -> Result<ExtTerm> {
    Ok(classical_half_quarters(n)
        .factor(8 * n + 1, 1)
        .power(9, -n)
        .build_q())
}

fn rama_level2_28n3(n: i64, _a: Monomial) -> Result<ExtTerm> {
    Ok(classical_half_quarters(n)
        .factor(28 * n + 3, 1)
        .sign(n)
        .power(48, -n)
        .build_q())
}

/// Both sides of a numeric check and their difference.
#[derive(Clone, Debug)]
pub struct NumericCheck {
    pub lhs: Real,
    pub rhs: Real,
    pub residual: Real,
}

/// |sum_{n<N} summand(n)(q0) - RHS(q0)|, the partial sum computed exactly.
/// Classical series ignore `q0` and `a`.
pub fn verify_numeric(
    spec: &IdentitySpec,
    a: Monomial,
    q0: &Rational,
    n_terms: i64,
    precision: u32,
) -> Result<NumericCheck> {
    let work = precision + 10;
    let bits = bits_for_digits(work);
    let rhs = match &spec.rhs {
        Rhs::Product(p) => p.eval(a, q0, work)?,
        Rhs::Constant(c) => c.eval(work),
    };
    let terms: Vec<Result<Rational>> = (0..n_terms)
        .into_par_iter()
        .map(|n| {
            let t = spec.term(n, a)?;
            if spec.is_classical() {
                t.limit_q1()
            } else {
                t.eval_rational(q0)
            }
        })
        .collect();
    let mut sum = Rational::zero();
    for t in terms {
        sum += t?;
    }
    let lhs = Real::from_rational(&sum, bits);
    let residual = (&lhs - &rhs).abs();
    Ok(NumericCheck { lhs, rhs, residual })
}

/// Partial sum of a classical series minus its closed constant.
pub fn classical_value(spec: &IdentitySpec, n_terms: i64, precision: u32) -> Result<Real> {
    if !spec.is_classical() {
        return Err(Error::InvalidArgument(format!(
            "{} is not a classical series",
            spec.id
        )));
    }
    let c = verify_numeric(spec, Monomial::ONE, &Rational::zero(), n_terms, precision)?;
    Ok(&c.lhs - &c.rhs)
}

/// The n-th term of a classical series.
pub fn classical_term(spec: &IdentitySpec, n: i64) -> Result<Rational> {
    spec.term(n, Monomial::ONE)?.limit_q1()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitCheck {
    pub n: i64,
    pub q_limit: Option<String>,
    pub expected: String,
    pub ok: bool,
}

/// limit_{q->1} summand(n) == limit_scale * classical(n) for 0 <= n <= n_max, at a = 1.
pub fn verify_limit_terms(spec: &IdentitySpec, n_max: i64) -> Result<Vec<LimitCheck>> {
    let companion = spec
        .classical_companion
        .ok_or_else(|| Error::InvalidArgument(format!("{} has no classical companion", spec.id)))?;
    let classical = identity_by_id(companion)?;
    (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let expected = &spec.limit_scale * classical_term(&classical, n)?;
            let lim = spec.term(n, Monomial::ONE)?.limit_q1();
            let (q_limit, ok) = match lim {
                Ok(v) => (Some(v.to_string()), v == expected),
                Err(Error::PoleAtOne) => (None, false),
                Err(e) => return Err(e),
            };
            Ok(LimitCheck {
                n,
                q_limit,
                expected: expected.to_string(),
                ok,
            })
        })
        .collect()
}

/// The two written forms of a summand, paired for comparison.
pub fn summand_forms(id: &str, n: i64) -> Result<(RatFuncQ, RatFuncQ)> {
    let s = identity_by_id(id)?;
    let alt = match id {
        "new-level1-q" => new_level1_q_alt(n)?,
        "28n3-q" => q28n3_alt(n)?,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "{id} has a single written form"
            )))
        }
    };
    let alt = alt.finite().map_err(|_| Error::PoleInTerm(n))?;
    Ok((s.term(n, Monomial::ONE)?, alt))
}

/// Exact equality of the two summand forms for 0 <= n <= n_max.
pub fn summand_form_equivalence(id: &str, n_max: i64) -> Result<Vec<(i64, bool)>> {
    (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let (x, y) = summand_forms(id, n)?;
            Ok((n, x == y))
        })
        .collect()
}
