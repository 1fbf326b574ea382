//! Reduced rational functions in q over the rationals.
//!
//! Every term in the q-series of this crate is a product of cyclotomic
//! polynomials, a power of q and a rational constant, corrected by a few
//! sums. `RatFuncQ` keeps the cyclotomic part factored:
//!
//! ```text
//!   unit * q^shift * prod Phi_d^{e_d} * num / den
//! ```
//!
//! with `num` a primitive integer polynomial and `den` monic, both with
//! nonzero constant term. The representation is always fully reduced: the
//! expanded numerator and denominator share no factor. Different internal
//! splittings of the same function compare equal; `numerator()` and
//! `denominator()` return the unique canonical pair (monic denominator).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::cyclo::{
    add_exps, binomial_exps, bracket_exps, cyclotomic_shared, eval_cyclo_product,
    eval_cyclo_product_real, expand_cyclo_product, may_divide, phi_at_one, to_binomial_exps,
    CycloExps,
};
use super::{LaurentQ, QPoly};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::real::Real;

#[derive(Clone)]
pub struct RatFuncQ {
    unit: Rational,
    shift: i64,
    cyclo: CycloExps,
    num: QPoly,
    den: QPoly,
}

impl RatFuncQ {
    pub fn zero() -> Self {
        Self {
            unit: Rational::zero(),
            shift: 0,
            cyclo: BTreeMap::new(),
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_cyclo(c, 0, CycloExps::new())
    }

    /// c * q^e
    pub fn monomial(c: Rational, e: i64) -> Self {
        Self::from_cyclo(c, e, CycloExps::new())
    }

    /// unit * q^shift * prod Phi_d^{e_d}; already reduced by construction.
    pub fn from_cyclo(unit: Rational, shift: i64, mut exps: CycloExps) -> Self {
        if unit.is_zero() {
            return Self::zero();
        }
        exps.retain(|_, e| *e != 0);
        Self {
            unit,
            shift,
            cyclo: exps,
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn from_poly(p: &QPoly) -> Self {
        Self::build(
            Rational::one(),
            0,
            CycloExps::new(),
            p.clone(),
            QPoly::one(),
            false,
        )
    }

    pub fn from_laurent(l: &LaurentQ) -> Self {
        Self::from_poly(l.body()).mul_q_pow(l.shift())
    }

    /// numerator / denominator for arbitrary polynomials.
    pub fn from_fraction(numerator: &QPoly, denominator: &QPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::build(
            Rational::one(),
            0,
            CycloExps::new(),
            numerator.clone(),
            denominator.clone(),
            true,
        ))
    }

    /// The q-integer [n] = (1 - q^n)/(1 - q) for any integer n; [-n] = -q^(-n) [n].
    pub fn qbracket(n: i64) -> Self {
        match n {
            0 => Self::zero(),
            n if n > 0 => Self::from_cyclo(Rational::one(), 0, bracket_exps(n as u64)),
            n => Self::from_cyclo(-Rational::one(), n, bracket_exps(n.unsigned_abs())),
        }
    }

    /// The factor 1 - sign*q^e, or `None` when it is literally zero.
    pub fn one_minus_monomial(sign: i8, e: i64) -> Option<Self> {
        let f = e.unsigned_abs();
        let shift = e.min(0);
        match (sign > 0, e == 0) {
            (true, true) => None,
            (false, true) => Some(Self::constant(Rational::from_integer(2.into()))),
            // 1 - q^e = -(q^e - 1);  1 - q^-f = q^-f (q^f - 1)
            (true, false) => {
                let unit = if e > 0 {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                Some(Self::from_cyclo(unit, shift, binomial_exps(f)))
            }
            // 1 + q^f = (q^2f - 1)/(q^f - 1);  1 + q^-f = q^-f (1 + q^f)
            (false, false) => {
                let mut exps = binomial_exps(2 * f);
                add_exps(&mut exps, &binomial_exps(f), -1);
                Some(Self::from_cyclo(Rational::one(), shift, exps))
            }
        }
    }

    fn build(
        mut unit: Rational,
        mut shift: i64,
        mut cyclo: CycloExps,
        num: QPoly,
        den: QPoly,
        reduce: bool,
    ) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if unit.is_zero() || num.is_zero() {
            return Self::zero();
        }
        cyclo.retain(|_, e| *e != 0);
        let (c, num) = num.content_and_primitive();
        unit *= c;
        let v = num.valuation().unwrap();
        shift += v as i64;
        let num = num.div_q_pow(v);
        let lc = den.leading_coeff();
        unit /= &lc;
        let den = den.monic();
        let v = den.valuation().unwrap();
        shift -= v as i64;
        let den = den.div_q_pow(v);
        let mut f = Self {
            unit,
            shift,
            cyclo,
            num,
            den,
        };
        if reduce {
            f.reduce();
        }
        f
    }

    fn renormalize_num(&mut self) {
        let (c, prim) = self.num.content_and_primitive();
        self.unit *= c;
        self.num = prim;
    }

    fn reduce(&mut self) {
        if !self.den.is_one() {
            let g = self.num.gcd(&self.den);
            if !g.is_one() {
                self.num = self.num.div_exact(&g).expect("gcd divides");
                self.den = self.den.div_exact(&g).expect("gcd divides");
                self.renormalize_num();
            }
        }
        if self.num.degree().unwrap_or(0) > 0 {
            let negative: Vec<u64> = self
                .cyclo
                .iter()
                .filter(|(_, &e)| e < 0)
                .map(|(&d, _)| d)
                .collect();
            for d in negative {
                let phi = cyclotomic_shared(d);
                let e = self.cyclo.get_mut(&d).unwrap();
                while *e < 0 && may_divide(&self.num, d) {
                    match self.num.div_exact(&phi) {
                        Some(q) => {
                            self.num = q;
                            *e += 1;
                        }
                        None => break,
                    }
                }
            }
            self.renormalize_num();
        }
        if !self.den.is_one() {
            let positive: Vec<u64> = self
                .cyclo
                .iter()
                .filter(|(_, &e)| e > 0)
                .map(|(&d, _)| d)
                .collect();
            for d in positive {
                let phi = cyclotomic_shared(d);
                let e = self.cyclo.get_mut(&d).unwrap();
                while *e > 0 && may_divide(&self.den, d) {
                    match self.den.div_exact(&phi) {
                        Some(q) => {
                            self.den = q;
                            *e -= 1;
                        }
                        None => break,
                    }
                }
            }
        }
        self.cyclo.retain(|_, e| *e != 0);
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.unit.is_one()
            && self.shift == 0
            && self.cyclo.is_empty()
            && self.num.is_one()
            && self.den.is_one()
    }

    /// True when the function is c * q^e * prod Phi_d^{e_d} with no other factor.
    pub fn is_cyclotomic_product(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn cyclotomic_exponents(&self) -> &CycloExps {
        &self.cyclo
    }

    pub fn mul_q_pow(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.shift += e;
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.unit *= c;
        out
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut cyclo = self.cyclo.clone();
        cyclo.values_mut().for_each(|e| *e = -*e);
        Ok(Self::build(
            self.unit.recip(),
            -self.shift,
            cyclo,
            self.den.clone(),
            self.num.clone(),
            false,
        ))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Canonical numerator: the full numerator over a monic denominator.
    pub fn numerator(&self) -> LaurentQ {
        if self.is_zero() {
            return LaurentQ::zero();
        }
        let pos: CycloExps = self
            .cyclo
            .iter()
            .filter(|(_, &e)| e > 0)
            .map(|(&d, &e)| (d, e))
            .collect();
        let body = apply_cyclo_product(&self.num, &pos).scale(&self.unit);
        LaurentQ::new(self.shift, body)
    }

    /// Canonical monic denominator with nonzero constant term.
    pub fn denominator(&self) -> QPoly {
        apply_cyclo_product(&self.den, &self.negative_exps())
    }

    fn negative_exps(&self) -> CycloExps {
        self.cyclo
            .iter()
            .filter(|(_, &e)| e < 0)
            .map(|(&d, &e)| (d, -e))
            .collect()
    }

    /// Exact value at q = 1 of the reduced function.
    pub fn limit_q1(&self) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        let den1 = self.den.eval_at_one();
        if den1.is_zero() || self.cyclo.get(&1).is_some_and(|&e| e < 0) {
            return Err(Error::PoleAtOne);
        }
        if self.cyclo.get(&1).is_some_and(|&e| e > 0) {
            return Ok(Rational::zero());
        }
        let mut v = &self.unit * self.num.eval_at_one() / den1;
        for (&d, &e) in &self.cyclo {
            let p = Rational::from_integer(phi_at_one(d).into());
            v *= num_traits::pow::Pow::pow(&p, e as i32);
        }
        Ok(v)
    }

    pub fn eval_rational(&self, x: &Rational) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        let qpow = if self.shift < 0 {
            if x.is_zero() {
                return Err(Error::DivisionByZero);
            }
            num_traits::pow::Pow::pow(&x.recip(), self.shift.unsigned_abs() as u32)
        } else {
            num_traits::pow::Pow::pow(x, self.shift as u32)
        };
        let cyc = eval_cyclo_product(&self.cyclo, x).ok_or(Error::DivisionByZero)?;
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.unit * qpow * cyc * self.num.eval_rational(x) / d)
    }

    pub fn eval_real(&self, x: &Real) -> Result<Real> {
        let bits = x.bits();
        if self.is_zero() {
            return Ok(Real::zero(bits));
        }
        let base = if self.shift < 0 {
            x.recip().ok_or(Error::DivisionByZero)?
        } else {
            x.clone()
        };
        let qpow = base.powi(self.shift.unsigned_abs());
        let cyc = eval_cyclo_product_real(&self.cyclo, x).ok_or(Error::DivisionByZero)?;
        let d = self.den.eval_real(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let unit = Real::from_rational(&self.unit, bits);
        Ok(&(&(&(&unit * &qpow) * &cyc) * &self.num.eval_real(x)) / &d)
    }

    /// Remainder of the numerator body modulo `modulus`, after checking that the
    /// denominator is coprime to it.
    pub fn numerator_rem(&self, modulus: &QPoly) -> Result<QPoly> {
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        for d in self.negative_exps().keys() {
            if modulus.is_divisible_by(&cyclotomic_shared(*d)) {
                return Err(Error::NonInvertibleDenominator(format!(
                    "Phi_{d} divides both the denominator and the modulus"
                )));
            }
        }
        if !self.den.gcd(modulus).is_one() {
            return Err(Error::NonInvertibleDenominator(
                "denominator shares a factor with the modulus".into(),
            ));
        }
        if self.is_zero() {
            return Ok(QPoly::zero());
        }
        let mut r = self.num.divrem(modulus).1;
        for (&d, &e) in &self.cyclo {
            if e > 0 {
                let phi = cyclotomic_shared(d);
                for _ in 0..e {
                    if r.is_zero() {
                        return Ok(r);
                    }
                    r = (&r * &phi).divrem(modulus).1;
                }
            }
        }
        Ok(r)
    }
}

/// p * prod Phi_d^{k_d} for k_d >= 0, applied as binomial multiplications and divisions.
fn apply_cyclo_product(p: &QPoly, exps: &CycloExps) -> QPoly {
    if exps.is_empty() {
        return p.clone();
    }
    if p.is_one() {
        return expand_cyclo_product(exps);
    }
    let bin = to_binomial_exps(exps);
    let mut out = p.clone();
    for (&e, &k) in &bin {
        for _ in 0..k.max(0) {
            out = out.mul_q_pow_minus_one(e as usize);
        }
    }
    for (&e, &k) in &bin {
        for _ in 0..(-k).max(0) {
            out = out
                .div_q_pow_minus_one(e as usize)
                .expect("exact cyclotomic product");
        }
    }
    out
}

/// `modulus` divides the numerator of `f` (q-powers ignored as units).
pub fn divides(modulus: &QPoly, f: &RatFuncQ) -> Result<bool> {
    Ok(f.numerator_rem(modulus)?.is_zero())
}

impl Mul for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncQ::zero();
        }
        let mut cyclo = self.cyclo.clone();
        add_exps(&mut cyclo, &rhs.cyclo, 1);
        let unit = &self.unit * &rhs.unit;
        let shift = self.shift + rhs.shift;
        if self.is_cyclotomic_product() && rhs.is_cyclotomic_product() {
            return RatFuncQ::from_cyclo(unit, shift, cyclo);
        }
        RatFuncQ::build(
            unit,
            shift,
            cyclo,
            &self.num * &rhs.num,
            &self.den * &rhs.den,
            true,
        )
    }
}

impl Add for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // pull out the common cyclotomic part and the lower q-power
        let mut common = CycloExps::new();
        for d in self.cyclo.keys().chain(rhs.cyclo.keys()) {
            let a = self.cyclo.get(d).copied().unwrap_or(0);
            let b = rhs.cyclo.get(d).copied().unwrap_or(0);
            common.insert(*d, a.min(b));
        }
        let shift = self.shift.min(rhs.shift);
        let part = |f: &RatFuncQ| {
            let mut rest = f.cyclo.clone();
            add_exps(&mut rest, &common, -1);
            apply_cyclo_product(&f.num, &rest)
                .mul_q_pow((f.shift - shift) as usize)
                .scale(&f.unit)
        };
        let (pa, pb) = (part(self), part(rhs));
        let (num, den) = if self.den == rhs.den {
            (&pa + &pb, self.den.clone())
        } else {
            let g = self.den.gcd(&rhs.den);
            let ca = rhs.den.div_exact(&g).unwrap();
            let cb = self.den.div_exact(&g).unwrap();
            (&(&pa * &ca) + &(&pb * &cb), &self.den * &ca)
        };
        RatFuncQ::build(Rational::one(), shift, common, num, den, true)
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        let mut out = self.clone();
        out.unit = -out.unit;
        out
    }
}

impl Sub for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: &RatFuncQ) -> RatFuncQ {
        self + &(-rhs)
    }
}

/// Panics on division by the zero function; see [`RatFuncQ::checked_div`].
impl Div for &RatFuncQ {
    type Output = RatFuncQ;
    fn div(self, rhs: &RatFuncQ) -> RatFuncQ {
        self.checked_div(rhs)
            .expect("division by the zero function")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFuncQ {
            type Output = RatFuncQ;
            fn $m(self, rhs: RatFuncQ) -> RatFuncQ { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl PartialEq for RatFuncQ {
    fn eq(&self, other: &Self) -> bool {
        if self.unit == other.unit
            && self.shift == other.shift
            && self.cyclo == other.cyclo
            && self.num == other.num
            && self.den == other.den
        {
            return true;
        }
        (self - other).is_zero()
    }
}

impl Eq for RatFuncQ {}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.denominator();
        if den.is_one() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "({}) / ({})", self.numerator(), den)
        }
    }
}

impl fmt::Debug for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RatFuncQ {{ unit: {}, shift: {}, cyclo: {:?}, num: {}, den: {} }}",
            self.unit, self.shift, self.cyclo, self.num, self.den
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::qpoly::{cyclotomic, qbracket};

    fn poly(c: &[i64]) -> RatFuncQ {
        RatFuncQ::from_poly(&QPoly::from_i64(c))
    }

    fn one_minus_q(e: i64) -> RatFuncQ {
        RatFuncQ::one_minus_monomial(1, e).unwrap()
    }

    #[test]
    fn bracket_quotient_expands() {
        // (1 - q^4)/(1 - q) = 1 + q + q^2 + q^3
        let f = &one_minus_q(4) / &one_minus_q(1);
        assert_eq!(f, poly(&[1, 1, 1, 1]));
        assert_eq!(f.numerator().to_poly().unwrap(), qbracket(4));
        assert!(f.denominator().is_one());
    }

    #[test]
    fn bracket_factorization_identity() {
        // [8n+4] = [2n+1](1+q^{2n+1})(1+q^{4n+2}) at n = 1
        let lhs = RatFuncQ::qbracket(12);
        let rhs = &(&RatFuncQ::qbracket(3) * &RatFuncQ::one_minus_monomial(-1, 3).unwrap())
            * &RatFuncQ::one_minus_monomial(-1, 6).unwrap();
        assert_eq!(lhs, rhs);
        let naive = &(&qbracket(3) * &QPoly::from_i64(&[1, 0, 0, 1]))
            * &QPoly::from_i64(&[1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(lhs.numerator().to_poly().unwrap(), naive);
    }

    #[test]
    fn negative_brackets() {
        // [-3] = (1 - q^-3)/(1 - q) = -q^-3 [3]
        let f = RatFuncQ::qbracket(-3);
        let direct = &one_minus_q(-3) / &one_minus_q(1);
        assert_eq!(f, direct);
        assert_eq!(f.numerator().shift(), -3);
        assert!(RatFuncQ::qbracket(0).is_zero());
    }

    #[test]
    fn addition_reduces() {
        // 1/(1-q) - q/(1-q) = 1
        let a = one_minus_q(1).recip().unwrap();
        let b = &RatFuncQ::monomial(rat_int(1), 1) * &a;
        assert!((&a - &b).is_one());
        // 1/(1-q) + 1/(1+q) = 2/(1-q^2)
        let c = RatFuncQ::one_minus_monomial(-1, 1)
            .unwrap()
            .recip()
            .unwrap();
        let s = &a + &c;
        assert_eq!(
            s,
            RatFuncQ::constant(rat_int(2))
                .checked_div(&one_minus_q(2))
                .unwrap()
        );
        assert_eq!(s.denominator(), QPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(s.numerator(), LaurentQ::from(QPoly::from_i64(&[-2])));
    }

    #[test]
    fn general_fractions() {
        let n = QPoly::from_i64(&[1, 2, 3]);
        let d = QPoly::from_i64(&[5, 0, 1, 1]);
        let f = RatFuncQ::from_fraction(&n, &d).unwrap();
        let g = RatFuncQ::from_fraction(
            &(&n * &QPoly::from_i64(&[2, 7])),
            &(&d * &QPoly::from_i64(&[2, 7])),
        )
        .unwrap();
        assert_eq!(f, g);
        assert_eq!(g.denominator(), d);
        assert!((&f / &f).is_one());
        let h = &(&f + &poly(&[0, 1])) - &poly(&[0, 1]);
        assert_eq!(h, f);
        let mixed = &f * &one_minus_q(3).recip().unwrap();
        assert_eq!(&mixed * &one_minus_q(3), f);
        assert!(RatFuncQ::from_fraction(&n, &QPoly::zero()).is_err());
        assert_eq!(f.recip().unwrap().recip().unwrap(), f);
    }

    #[test]
    fn limits_at_one() {
        assert_eq!(RatFuncQ::qbracket(6).limit_q1().unwrap(), rat_int(6));
        // (q;q^2)_1 / (1-q) = 1
        assert_eq!(
            (&one_minus_q(1) / &one_minus_q(1)).limit_q1().unwrap(),
            rat_int(1)
        );
        assert_eq!(
            one_minus_q(1).recip().unwrap().limit_q1(),
            Err(Error::PoleAtOne)
        );
        let f = RatFuncQ::from_fraction(&QPoly::from_i64(&[3, 1]), &QPoly::from_i64(&[1, 0, 1]))
            .unwrap();
        assert_eq!(f.limit_q1().unwrap(), rat(2, 1));
        for n in 0..=50 {
            assert_eq!(RatFuncQ::qbracket(n).limit_q1().unwrap(), rat_int(n));
        }
    }

    #[test]
    fn evaluation() {
        let half = rat(1, 2);
        assert_eq!(
            RatFuncQ::qbracket(3).eval_rational(&half).unwrap(),
            rat(7, 4)
        );
        let phi3 = RatFuncQ::from_poly(&cyclotomic(3).unwrap());
        assert_eq!(phi3.eval_rational(&half).unwrap(), rat(7, 4));
        let f = RatFuncQ::qbracket(2).mul_q_pow(-1);
        assert_eq!(f.eval_rational(&half).unwrap(), rat_int(3));
        let b = crate::real::bits_for_digits(25);
        let v = f.eval_real(&Real::from_rational(&half, b)).unwrap();
        assert_eq!(v.to_decimal(10), "3.0000000000");
        assert_eq!(
            one_minus_q(1).recip().unwrap().eval_rational(&rat_int(1)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn divisibility() {
        let phi3 = cyclotomic(3).unwrap();
        let f = RatFuncQ::from_poly(&(&phi3 * &QPoly::from_i64(&[2, 1])));
        assert!(divides(&phi3, &f).unwrap());
        assert!(!divides(&phi3, &RatFuncQ::monomial(rat_int(1), 1)).unwrap());
        let g = one_minus_q(3).recip().unwrap();
        assert!(matches!(
            divides(&phi3, &g),
            Err(Error::NonInvertibleDenominator(_))
        ));
        // q-powers are units
        assert!(divides(&phi3, &f.mul_q_pow(-7)).unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly() -> impl Strategy<Value = QPoly> {
            prop::collection::vec(-4i64..5, 1..6).prop_map(|c| QPoly::from_i64(&c))
        }

        fn factor() -> impl Strategy<Value = RatFuncQ> {
            (any::<bool>(), -6i64..7).prop_map(|(s, e)| {
                RatFuncQ::one_minus_monomial(if s { 1 } else { -1 }, e)
                    .unwrap_or_else(RatFuncQ::one)
            })
        }

        fn ratfunc() -> impl Strategy<Value = RatFuncQ> {
            (small_poly(), factor(), factor(), -3i64..4)
                .prop_map(|(p, a, b, s)| (&(&RatFuncQ::from_poly(&p) * &a) / &b).mul_q_pow(s))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn field_axioms(f in ratfunc(), g in ratfunc(), h in ratfunc()) {
                prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
                prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
                prop_assert!((&f - &f).is_zero());
                if !f.is_zero() {
                    prop_assert!((&f / &f).is_one());
                }
            }

            #[test]
            fn canonical_form_is_route_independent(f in ratfunc(), g in ratfunc()) {
                let route1 = &(&f + &g) * &g;
                let route2 = &(&f * &g) + &(&g * &g);
                prop_assert_eq!(route1.numerator(), route2.numerator());
                prop_assert_eq!(route1.denominator(), route2.denominator());
            }

            #[test]
            fn reduced_pair_is_coprime(f in ratfunc(), g in ratfunc()) {
                let s = &f + &g;
                if !s.is_zero() {
                    let num = s.numerator().body().clone();
                    prop_assert!(num.gcd(&s.denominator()).is_one());
                    prop_assert_eq!(s.denominator().leading_coeff(), rat_int(1));
                }
            }

            #[test]
            fn evaluation_is_a_homomorphism(f in ratfunc(), g in ratfunc()) {
                let x = rat(2, 5);
                let lhs = (&f * &g).eval_rational(&x).unwrap();
                prop_assert_eq!(lhs, f.eval_rational(&x).unwrap() * g.eval_rational(&x).unwrap());
                let lhs = (&f + &g).eval_rational(&x).unwrap();
                prop_assert_eq!(lhs, f.eval_rational(&x).unwrap() + g.eval_rational(&x).unwrap());
            }
        }
    }
}
