use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::exact::Rational;
use crate::qpoly::RatFuncQ;
use crate::qseries::{pochhammer, qpochhammer, Ext, ExtTerm, Monomial, PochSpec};

pub type Evaluator = Arc<dyn Fn(i64, i64) -> Result<ExtTerm> + Send + Sync>;

/// A total map (n, k) -> ExtTerm.
#[derive(Clone)]
pub struct TermFunction {
    eval: Evaluator,
    description: String,
    a_subst: Monomial,
}

impl TermFunction {
    pub fn new(
        description: impl Into<String>,
        a_subst: Monomial,
        eval: impl Fn(i64, i64) -> Result<ExtTerm> + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(eval),
            description: description.into(),
            a_subst,
        }
    }

    pub fn eval(&self, n: i64, k: i64) -> Result<ExtTerm> {
        (self.eval)(n, k)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn a_subst(&self) -> Monomial {
        self.a_subst
    }
}

impl fmt::Debug for TermFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TermFunction({}, a = {})",
            self.description, self.a_subst
        )
    }
}

/// Product builder for q-hypergeometric terms.
pub(crate) struct QTerm {
    acc: ExtTerm,
    a: Monomial,
}

impl QTerm {
    pub fn new(a: Monomial) -> Self {
        Self { acc: Ext::one(), a }
    }

    /// Multiplies by (spec)_len^power.
    pub fn poch(mut self, spec: PochSpec, len: i64, power: i32) -> Self {
        let p = qpochhammer(&spec, self.a, len);
        let p = if power < 0 {
            p.recip().expect("cyclotomic products are invertible")
        } else {
            p
        };
        for _ in 0..power.unsigned_abs() {
            self.acc = self.acc.mul(&p);
        }
        self
    }

    /// (-1)^e
    pub fn sign(mut self, e: i64) -> Self {
        if e.rem_euclid(2) == 1 {
            self.acc = self.acc.neg();
        }
        self
    }

    pub fn q_pow(mut self, e: i64) -> Self {
        self.acc = self.acc.mul_value(&RatFuncQ::monomial(Rational::one(), e));
        self
    }

    /// [x] for any integer x; [0] counts as a literal zero factor.
    pub fn bracket(mut self, x: i64) -> Self {
        self.acc = self.acc.mul(&bracket_ext(x));
        self
    }

    /// Multiplies by (1 - sign q^e)^power, counting literal zeros.
    pub fn binomial(mut self, sign: i8, e: i64, power: i32) -> Self {
        match RatFuncQ::one_minus_monomial(sign, e) {
            None => {
                self.acc = self.acc.mul(&Ext::with_order(power, RatFuncQ::one()));
            }
            Some(f) => {
                let f = f.powi(power as i64).expect("nonzero factor");
                self.acc = self.acc.mul_value(&f);
            }
        }
        self
    }

    pub fn build(self) -> ExtTerm {
        self.acc
    }
}

pub(crate) fn bracket_ext(x: i64) -> ExtTerm {
    if x == 0 {
        Ext::with_order(1, RatFuncQ::one())
    } else {
        Ext::new(RatFuncQ::qbracket(x))
    }
}

/// Product builder for classical hypergeometric terms over the rationals.
pub(crate) struct CTerm {
    acc: Ext<Rational>,
}

impl CTerm {
    pub fn new() -> Self {
        Self { acc: Ext::one() }
    }

    /// Multiplies by (x)_len^power.
    pub fn poch(mut self, x: Rational, len: i64, power: i32) -> Self {
        let p = pochhammer(&x, len);
        let p = if power < 0 {
            p.recip().expect("nonzero part is invertible")
        } else {
            p
        };
        for _ in 0..power.unsigned_abs() {
            self.acc = self.acc.mul(&p);
        }
        self
    }

    /// Multiplies by an integer linear factor, counting a literal zero.
    pub fn factor(mut self, v: i64, power: i32) -> Self {
        if v == 0 {
            self.acc = self.acc.mul(&Ext::with_order(power, Rational::one()));
        } else {
            let r = Rational::from_integer(v.into());
            let r = if power < 0 { r.recip() } else { r };
            for _ in 0..power.unsigned_abs() {
                self.acc = self.acc.mul_value(&r);
            }
        }
        self
    }

    pub fn rational(mut self, r: &Rational) -> Self {
        assert!(!r.is_zero());
        self.acc = self.acc.mul_value(r);
        self
    }

    /// base^e for an integer base and any integer e.
    pub fn power(self, base: i64, e: i64) -> Self {
        let b = Rational::from_integer(BigInt::from(base));
        let v = num_traits::pow::Pow::pow(&b, e.unsigned_abs() as u32);
        let v = if e < 0 { v.recip() } else { v };
        self.rational(&v)
    }

    pub fn sign(self, e: i64) -> Self {
        if e.rem_euclid(2) == 1 {
            self.rational(&-Rational::one())
        } else {
            self
        }
    }

    /// As a constant rational function.
    pub fn build_q(self) -> ExtTerm {
        lift(&self.acc)
    }
}

fn lift(e: &Ext<Rational>) -> ExtTerm {
    Ext::with_order(e.zero_order(), RatFuncQ::constant(e.raw_value().clone()))
}
