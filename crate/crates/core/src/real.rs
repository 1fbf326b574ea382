//! Fixed-point binary reals for the numeric identity checks.
//!
//! A `Real` is `mantissa / 2^bits`. All operands of a binary operation must
//! share the same `bits`; results are rounded toward negative infinity.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::Rational;

/// Guard bits added on top of the requested decimal precision.
const GUARD_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    mantissa: BigInt,
    bits: u32,
}

/// Working precision in bits for `digits` decimal digits, plus guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
}

impl Real {
    pub fn zero(bits: u32) -> Self {
        Self {
            mantissa: BigInt::zero(),
            bits,
        }
    }

    pub fn one(bits: u32) -> Self {
        Self {
            mantissa: BigInt::one() << bits,
            bits,
        }
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        Self {
            mantissa: BigInt::from(n) << bits,
            bits,
        }
    }

    pub fn from_rational(r: &Rational, bits: u32) -> Self {
        let mantissa = (r.numer() << bits).div_floor(r.denom());
        Self { mantissa, bits }
    }

    /// 10^(-digits) at the given working precision.
    pub fn ten_pow_neg(digits: u32, bits: u32) -> Self {
        let r = Rational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
        Self::from_rational(&r, bits)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn abs(&self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            bits: self.bits,
        }
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let r = Rational::new(self.mantissa.clone(), BigInt::one() << self.bits);
        r.to_f64().unwrap_or(f64::NAN)
    }

    pub fn powi(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.bits);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| &Self::one(self.bits) / self)
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.signum() >= 0, "sqrt of a negative real");
        let mantissa = (&self.mantissa << self.bits).sqrt();
        Self {
            mantissa,
            bits: self.bits,
        }
    }

    /// pi via Machin's formula 16 atan(1/5) - 4 atan(1/239).
    pub fn pi(bits: u32) -> Self {
        let work = bits + 32;
        let pi = atan_inv(5, work) * 16 - atan_inv(239, work) * 4;
        Self {
            mantissa: pi >> 32u32,
            bits,
        }
    }

    /// Decimal rendering with `digits` digits after the point (truncated).
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = (self.mantissa.abs() * &scale) >> self.bits;
        let (int, frac) = scaled.div_rem(&scale);
        let sign = if self.signum() < 0 { "-" } else { "" };
        format!("{sign}{int}.{frac:0>width$}", width = digits)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.bits, other.bits, "mixed-precision real arithmetic");
    }
}

/// atan(1/x) scaled by 2^bits, via the alternating Taylor series.
fn atan_inv(x: u64, bits: u32) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << bits) / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.check(other);
        Some(self.mantissa.cmp(&other.mantissa))
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        self.check(rhs);
        Real {
            mantissa: &self.mantissa + &rhs.mantissa,
            bits: self.bits,
        }
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        self.check(rhs);
        Real {
            mantissa: &self.mantissa - &rhs.mantissa,
            bits: self.bits,
        }
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        self.check(rhs);
        let prod = &self.mantissa * &rhs.mantissa;
        Real {
            mantissa: prod >> self.bits,
            bits: self.bits,
        }
    }
}

impl Div for &Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        self.check(rhs);
        assert!(!rhs.is_zero(), "real division by zero");
        let num = &self.mantissa << self.bits;
        Real {
            mantissa: num.div_floor(&rhs.mantissa),
            bits: self.bits,
        }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            mantissa: -&self.mantissa,
            bits: self.bits,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.bits.saturating_sub(GUARD_BITS)) as f64 / std::f64::consts::LOG2_10)
            .floor() as usize;
        f.write_str(&self.to_decimal(digits.max(1)))
    }
}
