use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::Rational;
use crate::real::Real;

/// Dense univariate polynomial in q with rational coefficients.
///
/// Stored as `coeffs / den` with integer `coeffs`, `den > 0` and
/// `gcd(content(coeffs), den) = 1`, so equal polynomials have equal fields.
/// `coeffs[i]` multiplies `q^i`; the highest stored coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl QPoly {
    pub fn zero() -> Self {
        Self {
            coeffs: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int_coeffs(vec![BigInt::one()])
    }

    pub fn from_int_coeffs(coeffs: Vec<BigInt>) -> Self {
        Self::from_parts(coeffs, BigInt::one())
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_int_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(ints, den)
    }

    pub(crate) fn from_parts(coeffs: Vec<BigInt>, den: BigInt) -> Self {
        let mut p = Self { coeffs, den };
        p.normalize();
        p
    }

    pub fn constant(c: &Rational) -> Self {
        Self::from_parts(vec![c.numer().clone()], c.denom().clone())
    }

    /// c * q^e
    pub fn monomial(c: &Rational, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c.numer().clone();
        Self::from_parts(coeffs, c.denom().clone())
    }

    /// q^e - 1
    pub fn q_pow_minus_one(e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[0] = -BigInt::one();
        coeffs[e] += BigInt::one();
        Self::from_int_coeffs(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.coeffs {
                *c = -&*c;
            }
        }
        if self.coeffs.is_empty() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.coeffs {
            if g.is_one() {
                return;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in &mut self.coeffs {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one() && self.den.is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, i: usize) -> Rational {
        match self.coeffs.get(i) {
            Some(c) => Rational::new(c.clone(), self.den.clone()),
            None => Rational::zero(),
        }
    }

    pub fn coefficients(&self) -> Vec<Rational> {
        (0..self.coeffs.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.degree().map_or_else(Rational::zero, |d| self.coeff(d))
    }

    pub(crate) fn int_coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let coeffs = self.coeffs.iter().map(|x| x * c.numer()).collect();
        Self::from_parts(coeffs, &self.den * c.denom())
    }

    /// Splits into `content * primitive` where the primitive part has
    /// coprime integer coefficients and a positive leading coefficient.
    pub fn content_and_primitive(&self) -> (Rational, QPoly) {
        if self.is_zero() {
            return (Rational::zero(), Self::zero());
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.coeffs.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = Self {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
            den: BigInt::one(),
        };
        (Rational::new(g, self.den.clone()), prim)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    /// Multiplies by q^e.
    pub fn mul_q_pow(&self, e: usize) -> Self {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        Self {
            coeffs,
            den: self.den.clone(),
        }
    }

    /// Divides by q^e; requires q^e to divide exactly.
    pub fn div_q_pow(&self, e: usize) -> Self {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        assert!(
            self.valuation().unwrap() >= e,
            "q^{e} does not divide the polynomial"
        );
        Self {
            coeffs: self.coeffs[e..].to_vec(),
            den: self.den.clone(),
        }
    }

    /// Multiplies by (q^e - 1) in linear time.
    pub fn mul_q_pow_minus_one(&self, e: usize) -> Self {
        assert!(e > 0);
        if self.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len();
        let mut out = vec![BigInt::zero(); n + e];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + e] += c;
            out[i] -= c;
        }
        Self {
            coeffs: out,
            den: self.den.clone(),
        }
        .normalized()
    }

    /// Exact division by (q^e - 1) in linear time.
    pub fn div_q_pow_minus_one(&self, e: usize) -> Option<Self> {
        assert!(e > 0);
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        if n <= e {
            return None;
        }
        // self = quot * (q^e - 1)  =>  quot[i] = quot[i - e] - self[i]
        let m = n - e;
        let mut quot: Vec<BigInt> = Vec::with_capacity(m);
        for i in 0..m {
            let prev = if i >= e {
                quot[i - e].clone()
            } else {
                BigInt::zero()
            };
            quot.push(prev - &self.coeffs[i]);
        }
        // remaining coefficients must match the quotient's top part
        for i in m..n {
            let expect = if i >= e && i - e < m {
                quot[i - e].clone()
            } else {
                BigInt::zero()
            };
            let lower = if i < m { -&quot[i] } else { BigInt::zero() };
            if expect + lower != self.coeffs[i] {
                return None;
            }
        }
        Some(
            Self {
                coeffs: quot,
                den: self.den.clone(),
            }
            .normalized(),
        )
    }

    fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// Quotient and remainder over Q.
    pub fn divrem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        if self.degree().is_none_or(|d| d < dd) {
            return (Self::zero(), self.clone());
        }
        let lc = divisor.coeffs.last().unwrap();
        if divisor.den.is_one() && lc.abs().is_one() {
            let (q, r) = int_divrem_unit(&self.coeffs, &divisor.coeffs);
            return (
                Self::from_parts(q, self.den.clone()),
                Self::from_parts(r, self.den.clone()),
            );
        }
        let mut rem: Vec<Rational> = self.coefficients();
        let div: Vec<Rational> = divisor.coefficients();
        let lc_inv = div[dd].recip();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] * &lc_inv;
            for (j, dj) in div.iter().enumerate() {
                if !dj.is_zero() {
                    rem[i - dd + j] -= &c * dj;
                }
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Self::from_rationals(&quot), Self::from_rationals(&rem))
    }

    /// `Some(self / divisor)` when the division is exact.
    pub fn div_exact(&self, divisor: &QPoly) -> Option<QPoly> {
        let (q, r) = self.divrem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn is_divisible_by(&self, divisor: &QPoly) -> bool {
        self.divrem(divisor).1.is_zero()
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (_, mut a) = self.content_and_primitive();
        let (_, mut b) = other.content_and_primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Self::one();
            }
            let r = pseudo_rem(&a.coeffs, &b.coeffs);
            a = b;
            b = Self::from_int_coeffs(r).content_and_primitive().1;
        }
        a.monic()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let Some(deg) = self.degree() else {
            return Rational::zero();
        };
        // sum c_i a^i b^(deg-i) over b^deg
        let (a, b) = (x.numer(), x.denom());
        let mut acc = self.coeffs[deg].clone();
        let mut bpow = BigInt::one();
        for i in (0..deg).rev() {
            bpow *= b;
            acc *= a;
            if !self.coeffs[i].is_zero() {
                acc += &self.coeffs[i] * &bpow;
            }
        }
        Rational::new(acc, bpow * &self.den)
    }

    pub fn eval_real(&self, x: &Real) -> Real {
        let bits = x.bits();
        let mut acc = Real::zero(bits);
        for c in self.coeffs.iter().rev() {
            acc = &acc * x;
            if !c.is_zero() {
                acc = &acc + &Real::from_rational(&Rational::from_integer(c.clone()), bits);
            }
        }
        &acc / &Real::from_rational(&Rational::from_integer(self.den.clone()), bits)
    }

    pub fn eval_at_one(&self) -> Rational {
        let s: BigInt = self.coeffs.iter().sum();
        Rational::new(s, self.den.clone())
    }
}

/// Long division by an integer polynomial with unit leading coefficient.
fn int_divrem_unit(num: &[BigInt], div: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = div.len() - 1;
    let negate = div[dd].is_negative();
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    let nonzero: Vec<(usize, &BigInt)> = div[..dd]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    for i in (dd..num.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = if negate {
            -&rem[i]
        } else {
            std::mem::take(&mut rem[i])
        };
        for &(j, dj) in &nonzero {
            rem[i - dd + j] -= &c * dj;
        }
        rem[i] = BigInt::zero();
        quot[i - dd] = c;
    }
    rem.truncate(dd);
    (quot, rem)
}

/// Pseudo-remainder of integer polynomials: lc(b)^k a mod b.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let off = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[off + j] -= &lr * bj;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, b) = if a.len() < b.len() { (b, a) } else { (a, b) };
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (j, bj) in b.iter().enumerate() {
        if bj.is_zero() {
            continue;
        }
        for (i, ai) in a.iter().enumerate() {
            if !ai.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn add_scaled(a: &[BigInt], sa: &BigInt, b: &[BigInt], sb: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).map_or_else(BigInt::zero, |c| c * sa);
            let y = b.get(i).map_or_else(BigInt::zero, |c| c * sb);
            x + y
        })
        .collect()
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        if self.den == rhs.den {
            let one = BigInt::one();
            return QPoly::from_parts(
                add_scaled(&self.coeffs, &one, &rhs.coeffs, &one),
                self.den.clone(),
            );
        }
        let l = self.den.lcm(&rhs.den);
        let sa = &l / &self.den;
        let sb = &l / &rhs.den;
        QPoly::from_parts(add_scaled(&self.coeffs, &sa, &rhs.coeffs, &sb), l)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        QPoly::from_parts(mul_int(&self.coeffs, &rhs.coeffs), &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// Sparse ascending "c*q^e" terms joined by " + ", coefficients as num/den.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}*q^{}", Rational::new(c.clone(), self.den.clone()), e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}
