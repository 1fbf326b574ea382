use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::QPoly;
use crate::exact::Rational;

/// `q^shift * body`, where `body` has a nonzero constant term (or is zero).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentQ {
    shift: i64,
    body: QPoly,
}

impl LaurentQ {
    pub fn new(shift: i64, body: QPoly) -> Self {
        match body.valuation() {
            None => Self::zero(),
            Some(v) => Self {
                shift: shift + v as i64,
                body: body.div_q_pow(v),
            },
        }
    }

    pub fn zero() -> Self {
        Self {
            shift: 0,
            body: QPoly::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from(QPoly::one())
    }

    /// c * q^e for any integer e.
    pub fn monomial(c: &Rational, e: i64) -> Self {
        Self::new(e, QPoly::constant(c))
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn body(&self) -> &QPoly {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn is_monomial(&self) -> bool {
        self.body.degree() == Some(0)
    }

    pub fn mul_q_pow(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            shift: self.shift + e,
            body: self.body.clone(),
        }
    }

    /// Ordinary polynomial when the minimal exponent is nonnegative.
    pub fn to_poly(&self) -> Option<QPoly> {
        (self.shift >= 0 || self.is_zero()).then(|| self.body.mul_q_pow(self.shift.max(0) as usize))
    }
}

impl From<QPoly> for LaurentQ {
    fn from(p: QPoly) -> Self {
        Self::new(0, p)
    }
}

impl Add for &LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: &LaurentQ) -> LaurentQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(rhs.shift);
        let a = self.body.mul_q_pow((self.shift - s) as usize);
        let b = rhs.body.mul_q_pow((rhs.shift - s) as usize);
        LaurentQ::new(s, &a + &b)
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        LaurentQ {
            shift: self.shift,
            body: -&self.body,
        }
    }
}

impl Sub for &LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: &LaurentQ) -> LaurentQ {
        self + &(-rhs)
    }
}

impl Mul for &LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        LaurentQ::new(self.shift + rhs.shift, &self.body * &rhs.body)
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.body.coefficients().iter().enumerate() {
            if c == &Rational::from_integer(0.into()) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}*q^{}", c, self.shift + i as i64)?;
        }
        Ok(())
    }
}
