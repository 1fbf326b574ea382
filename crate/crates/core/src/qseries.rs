//! q-Pochhammer and classical Pochhammer symbols with exact zero/pole
//! bookkeeping, and truncated infinite products.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{abs_lt_one, Rational};
use crate::qpoly::{add_exps, binomial_exps, CycloExps, RatFuncQ};
use crate::real::{bits_for_digits, Real};

/// Values `Ext` can carry: exact fields with structural zero tests.
pub trait ExactValue: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn recip(&self) -> Result<Self>;
}

impl ExactValue for RatFuncQ {
    fn zero() -> Self {
        RatFuncQ::zero()
    }
    fn one() -> Self {
        RatFuncQ::one()
    }
    fn is_zero(&self) -> bool {
        RatFuncQ::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn recip(&self) -> Result<Self> {
        RatFuncQ::recip(self)
    }
}

impl ExactValue for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn recip(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational::recip(self))
    }
}

/// A value with an exact count of literal zero factors.
///
/// `zero_order > 0`: the quantity is 0. `zero_order == 0`: it is `value`.
/// `zero_order < 0`: it is a pole. `value` always holds the product of the
/// nonzero factors, so a pole times a zero of equal order is finite.
#[derive(Clone, Debug, PartialEq)]
pub struct Ext<T> {
    zero_order: i32,
    value: T,
}

pub type ExtTerm = Ext<RatFuncQ>;

impl<T: ExactValue> Ext<T> {
    pub fn new(value: T) -> Self {
        Self {
            zero_order: 0,
            value,
        }
    }

    pub fn with_order(zero_order: i32, value: T) -> Self {
        Self { zero_order, value }
    }

    pub fn zero() -> Self {
        Self::new(T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one())
    }

    pub fn zero_order(&self) -> i32 {
        self.zero_order
    }

    /// The product of the nonzero factors, regardless of `zero_order`.
    pub fn raw_value(&self) -> &T {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.zero_order > 0 || (self.zero_order == 0 && self.value.is_zero())
    }

    pub fn is_pole(&self) -> bool {
        self.zero_order < 0
    }

    /// The represented quantity; an error for poles.
    pub fn finite(&self) -> Result<T> {
        match self.zero_order {
            o if o > 0 => Ok(T::zero()),
            0 => Ok(self.value.clone()),
            _ => Err(Error::Pole),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            zero_order: self.zero_order + other.zero_order,
            value: self.value.mul(&other.value),
        }
    }

    pub fn mul_value(&self, v: &T) -> Self {
        Self {
            zero_order: self.zero_order,
            value: self.value.mul(v),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Ok(Self {
            zero_order: -self.zero_order,
            value: self.value.recip()?,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            zero_order: self.zero_order,
            value: self.value.neg(),
        }
    }

    /// Sum of two finite quantities; adding a pole is an error.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_pole() || other.is_pole() {
            return Err(Error::Pole);
        }
        Ok(Self::new(self.finite()?.add(&other.finite()?)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }
}

impl<T: ExactValue + fmt::Display> fmt::Display for Ext<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.zero_order {
            o if o > 0 => f.write_str("0"),
            0 => write!(f, "{}", self.value),
            o => write!(f, "pole of order {}", -o),
        }
    }
}

/// A substitution a = sign * q^exp for the extra parameter (a = 1 is `+q^0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub sign: i8,
    pub exp: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { sign: 1, exp: 0 };

    pub fn q_pow(exp: i64) -> Self {
        Self { sign: 1, exp }
    }

    pub fn to_ratfunc(self) -> RatFuncQ {
        RatFuncQ::monomial(Rational::from_integer(self.sign.into()), self.exp)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.sign < 0 { "-" } else { "" };
        match self.exp {
            0 => write!(f, "{sign}1"),
            1 => write!(f, "{sign}q"),
            e => write!(f, "{sign}q^{e}"),
        }
    }
}

/// (A; q^base)_n with A = prefactor_sign * q^offset * a^a_power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PochSpec {
    pub prefactor_sign: i8,
    pub offset: i64,
    pub a_power: i8,
    pub base: u32,
}

impl PochSpec {
    /// (q^offset; q^base)
    pub const fn plain(offset: i64, base: u32) -> Self {
        Self {
            prefactor_sign: 1,
            offset,
            a_power: 0,
            base,
        }
    }

    /// (a q^offset; q^base)
    pub const fn times_a(offset: i64, base: u32) -> Self {
        Self {
            prefactor_sign: 1,
            offset,
            a_power: 1,
            base,
        }
    }

    /// (q^offset / a; q^base)
    pub const fn over_a(offset: i64, base: u32) -> Self {
        Self {
            prefactor_sign: 1,
            offset,
            a_power: -1,
            base,
        }
    }

    /// Sign and q-exponent of the argument after substituting `a`.
    pub fn argument(&self, a: Monomial) -> (i8, i64) {
        let sign = if self.a_power != 0 && a.sign < 0 {
            -self.prefactor_sign
        } else {
            self.prefactor_sign
        };
        (sign, self.offset + self.a_power as i64 * a.exp)
    }
}

impl fmt::Display for PochSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.prefactor_sign < 0 { "-" } else { "" };
        let a = match self.a_power {
            1 => "a",
            -1 => "1/a",
            _ => "",
        };
        write!(f, "({sign}{a}q^{}; q^{})", self.offset, self.base)
    }
}

/// Running product of factors (1 - s q^e), kept in cyclotomic form.
struct FactorProduct {
    zero_order: i32,
    unit: Rational,
    shift: i64,
    exps: CycloExps,
}

impl FactorProduct {
    fn new() -> Self {
        Self {
            zero_order: 0,
            unit: <Rational as One>::one(),
            shift: 0,
            exps: CycloExps::new(),
        }
    }

    /// Multiplies by (1 - sign q^e)^power.
    fn push(&mut self, sign: i8, e: i64, power: i64) {
        let f = e.unsigned_abs();
        if e == 0 {
            if sign > 0 {
                self.zero_order += power as i32;
            } else {
                let two = Rational::from_integer(2.into());
                self.unit *= num_traits::pow::Pow::pow(&two, power as i32);
            }
            return;
        }
        if e < 0 {
            self.shift += e * power;
        }
        if sign > 0 {
            // 1 - q^e = -(q^e - 1), 1 - q^-f = q^-f (q^f - 1)
            if e > 0 && power % 2 != 0 {
                self.unit = -&self.unit;
            }
            add_exps(&mut self.exps, &binomial_exps(f), power);
        } else {
            add_exps(&mut self.exps, &binomial_exps(2 * f), power);
            add_exps(&mut self.exps, &binomial_exps(f), -power);
        }
    }

    fn finish(self) -> ExtTerm {
        Ext::with_order(
            self.zero_order,
            RatFuncQ::from_cyclo(self.unit, self.shift, self.exps),
        )
    }
}

/// (A; q^b)_n for any integer n, with (A; q^b)_{-n} = 1 / prod_{j=1}^{n} (1 - A q^{-bj}).
pub fn qpochhammer(spec: &PochSpec, a: Monomial, n: i64) -> ExtTerm {
    let (sign, u) = spec.argument(a);
    let b = spec.base as i64;
    let mut acc = FactorProduct::new();
    if n >= 0 {
        for j in 0..n {
            acc.push(sign, u + b * j, 1);
        }
    } else {
        for j in 1..=-n {
            acc.push(sign, u - b * j, -1);
        }
    }
    acc.finish()
}

/// Rising factorial (x)_n, extended by (x)_{-n} = 1 / ((x-1)(x-2)...(x-n)).
pub fn pochhammer(x: &Rational, n: i64) -> Ext<Rational> {
    let mut zero_order = 0;
    let mut value = <Rational as One>::one();
    let steps: Box<dyn Iterator<Item = (i64, i32)>> = if n >= 0 {
        Box::new((0..n).map(|j| (j, 1)))
    } else {
        Box::new((1..=-n).map(|j| (-j, -1)))
    };
    for (shift, power) in steps {
        let f = x + Rational::from_integer(shift.into());
        if Zero::is_zero(&f) {
            zero_order += power;
        } else if power > 0 {
            value *= f;
        } else {
            value /= f;
        }
    }
    Ext::with_order(zero_order, value)
}

/// (A; q^b)_infinity at a rational |q0| < 1, correct to `precision` digits.
///
/// The product is truncated after J factors, J chosen so that the tail bound
/// exp(sum_{j>=J} |A q0^{bj}|) - 1 <= 2 * |q0|^(u+bJ) / (1 - |q0|^b) stays
/// below 10^-(precision + 5).
pub fn qpoch_infinite(spec: &PochSpec, a: Monomial, q0: &Rational, precision: u32) -> Result<Real> {
    if !abs_lt_one(q0) {
        return Err(Error::Divergent(format!("|q| = |{q0}| is not below 1")));
    }
    let (sign, u) = spec.argument(a);
    let b = spec.base as i64;
    let bits = bits_for_digits(precision);
    let one = Real::one(bits);
    let qr = Real::from_rational(q0, bits);
    let factor = |e: i64| -> Result<Real> {
        // 1 - sign * q0^e
        let p = if e >= 0 {
            qr.powi(e as u64)
        } else {
            qr.recip()
                .ok_or_else(|| Error::Divergent(format!("negative power q^{e} at q = 0")))?
                .powi(e.unsigned_abs())
        };
        Ok(if sign > 0 { &one - &p } else { &one + &p })
    };
    let mut acc = one.clone();
    if Zero::is_zero(q0) {
        let mut j = 0;
        while u + b * j <= 0 {
            acc = &acc * &factor(u + b * j)?;
            j += 1;
        }
        return Ok(acc);
    }
    let abs_q = q0.abs();
    let qb = num_traits::pow::Pow::pow(&abs_q, b as u32);
    let threshold = Rational::new(1.into(), num_bigint::BigInt::from(10u32).pow(precision + 5));
    let mut j = 0i64;
    loop {
        let e = u + b * j;
        if e > 0 {
            let tail =
                num_traits::pow::Pow::pow(&abs_q, e as u32) / (<Rational as One>::one() - &qb);
            if tail <= Rational::new(1.into(), 2.into())
                && tail * Rational::from_integer(2.into()) < threshold
            {
                break;
            }
        }
        acc = &acc * &factor(e)?;
        j += 1;
    }
    Ok(acc)
}
