//! Exact integer and rational arithmetic: residues modulo prime powers,
//! Jacobi symbols and the small number-theoretic helpers used throughout.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"num/den"` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// An element of Z/p^kZ, stored as its least nonnegative representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    value: BigInt,
    modulus: BigInt,
}

impl ResidueClass {
    pub fn new(value: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Self {
        let modulus = modulus.into();
        assert!(modulus > BigInt::one(), "modulus must exceed 1");
        let value = value.into().mod_floor(&modulus);
        Self { value, modulus }
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    fn check_modulus(&self, other: &Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "residue arithmetic with mismatched moduli"
        );
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Add for &ResidueClass {
    type Output = ResidueClass;
    fn add(self, rhs: &ResidueClass) -> ResidueClass {
        self.check_modulus(rhs);
        ResidueClass::new(&self.value + &rhs.value, self.modulus.clone())
    }
}

impl Sub for &ResidueClass {
    type Output = ResidueClass;
    fn sub(self, rhs: &ResidueClass) -> ResidueClass {
        self.check_modulus(rhs);
        ResidueClass::new(&self.value - &rhs.value, self.modulus.clone())
    }
}

impl Mul for &ResidueClass {
    type Output = ResidueClass;
    fn mul(self, rhs: &ResidueClass) -> ResidueClass {
        self.check_modulus(rhs);
        ResidueClass::new(&self.value * &rhs.value, self.modulus.clone())
    }
}

impl Neg for &ResidueClass {
    type Output = ResidueClass;
    fn neg(self) -> ResidueClass {
        ResidueClass::new(-&self.value, self.modulus.clone())
    }
}

/// Jacobi symbol (a/m) for odd positive m.
pub fn jacobi(a: i64, m: i64) -> Result<i32> {
    if m <= 0 || m % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "jacobi symbol needs an odd positive modulus, got {m}"
        )));
    }
    let mut a = a.rem_euclid(m);
    let mut m = m;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = m % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            t = -t;
        }
        a %= m;
    }
    Ok(if m == 1 { t } else { 0 })
}

/// Reduces `r` into Z/p^kZ. Fails when p divides the denominator.
pub fn mod_reduce(r: &Rational, p: u64, k: u32) -> Result<ResidueClass> {
    if p < 2 || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "modulus must be a prime power p^k with p >= 2, k >= 1 (got p={p}, k={k})"
        )));
    }
    let modulus = BigInt::from(p).pow(k);
    let den = r.denom();
    if (den % BigInt::from(p)).is_zero() {
        return Err(Error::NonInvertibleDenominator(format!(
            "{p} divides the denominator of {r}"
        )));
    }
    let inv = mod_inverse(den, &modulus).expect("coprime to p, hence invertible");
    Ok(ResidueClass::new(r.numer() * inv, modulus))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// (m-1)(m-3)/8 for odd m; (-1) to this power equals (-2/m).
pub fn sign_power_exponent(m: i64) -> Result<i64> {
    if m <= 0 || m % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "sign exponent defined for odd positive m, got {m}"
        )));
    }
    Ok((m - 1) * (m - 3) / 8)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every u64.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Divisors of n in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `Some(p)` when n = p^k for a prime p and k >= 1.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match prime_factors(n).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

pub(crate) fn abs_lt_one(r: &Rational) -> bool {
    r.numer().abs() < r.denom().abs()
}
