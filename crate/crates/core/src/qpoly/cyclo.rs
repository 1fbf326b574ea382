//! Cyclotomic polynomials and products of them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::QPoly;
use crate::error::{Error, Result};
use crate::exact::{divisors, mobius, pow_mod, prime_factors, prime_power_base, Rational};
use crate::real::Real;

/// Exponent map d -> e for the product of Phi_d^e.
pub type CycloExps = BTreeMap<u64, i64>;

fn cache() -> &'static Mutex<HashMap<u64, Arc<QPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<QPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The d-th cyclotomic polynomial: (q^d - 1) divided by Phi_e for every proper divisor e.
pub fn cyclotomic(d: u64) -> Result<QPoly> {
    if d == 0 {
        return Err(Error::InvalidArgument(
            "cyclotomic index must be positive".into(),
        ));
    }
    Ok((*cyclotomic_shared(d)).clone())
}

pub(crate) fn cyclotomic_shared(d: u64) -> Arc<QPoly> {
    if let Some(p) = cache().lock().unwrap().get(&d) {
        return Arc::clone(p);
    }
    let mut p = QPoly::q_pow_minus_one(d as usize);
    for e in divisors(d) {
        if e < d {
            p = p
                .div_exact(&cyclotomic_shared(e))
                .expect("proper cyclotomic factors divide q^d - 1");
        }
    }
    let p = Arc::new(p);
    cache().lock().unwrap().insert(d, Arc::clone(&p));
    p
}

/// [n] = 1 + q + ... + q^(n-1); [0] = 0.
pub fn qbracket(n: u64) -> QPoly {
    QPoly::from_int_coeffs(vec![BigInt::one(); n as usize])
}

/// Cyclotomic factorization of q^e - 1 (every divisor once).
pub fn binomial_exps(e: u64) -> CycloExps {
    divisors(e).into_iter().map(|d| (d, 1)).collect()
}

/// Cyclotomic factorization of [n] for n >= 1.
pub fn bracket_exps(n: u64) -> CycloExps {
    divisors(n)
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| (d, 1))
        .collect()
}

pub fn add_exps(into: &mut CycloExps, from: &CycloExps, times: i64) {
    for (&d, &e) in from {
        let slot = into.entry(d).or_insert(0);
        *slot += e * times;
        if *slot == 0 {
            into.remove(&d);
        }
    }
}

/// Rewrites prod Phi_d^{k_d} as prod (q^e - 1)^{E_e} via Moebius inversion.
pub(crate) fn to_binomial_exps(exps: &CycloExps) -> BTreeMap<u64, i64> {
    let mut out: BTreeMap<u64, i64> = BTreeMap::new();
    for (&d, &k) in exps {
        for e in divisors(d) {
            let mu = mobius(d / e);
            if mu != 0 {
                *out.entry(e).or_insert(0) += mu * k;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Expands prod Phi_d^{k_d} for nonnegative exponents.
pub fn expand_cyclo_product(exps: &CycloExps) -> QPoly {
    assert!(
        exps.values().all(|&k| k >= 0),
        "negative exponent in polynomial expansion"
    );
    let bin = to_binomial_exps(exps);
    let mut p = QPoly::one();
    for (&e, &k) in &bin {
        for _ in 0..k.max(0) {
            p = p.mul_q_pow_minus_one(e as usize);
        }
    }
    for (&e, &k) in &bin {
        for _ in 0..(-k).max(0) {
            p = p
                .div_q_pow_minus_one(e as usize)
                .expect("cyclotomic product expansion is exact");
        }
    }
    p
}

/// Phi_d(1): 0 for d = 1, p for d a power of the prime p, else 1.
pub fn phi_at_one(d: u64) -> u64 {
    match d {
        1 => 0,
        _ => prime_power_base(d).unwrap_or(1),
    }
}

/// Exact prod Phi_d(x)^{k_d}; `None` when a factor vanishes with negative exponent.
pub fn eval_cyclo_product(exps: &CycloExps, x: &Rational) -> Option<Rational> {
    let (a, b) = (x.numer(), x.denom());
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (e, k) in to_binomial_exps(exps) {
        // x^e - 1 = (a^e - b^e) / b^e
        let e32 = u32::try_from(e).expect("exponent fits u32");
        let top = a.pow(e32) - b.pow(e32);
        let bot = b.pow(e32);
        let (t, s) = if k > 0 {
            (&mut num, &mut den)
        } else {
            (&mut den, &mut num)
        };
        for _ in 0..k.unsigned_abs() {
            *t *= &top;
            *s *= &bot;
        }
    }
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn eval_cyclo_product_real(exps: &CycloExps, x: &Real) -> Option<Real> {
    let bits = x.bits();
    let mut acc = Real::one(bits);
    let one = Real::one(bits);
    for (e, k) in to_binomial_exps(exps) {
        let f = &x.powi(e) - &one;
        let f = if k > 0 { f } else { f.recip()? };
        acc = &acc * &f.powi(k.unsigned_abs());
    }
    Some(acc)
}

/// Prime p = 1 (mod d) close to 2^62 and a primitive d-th root of unity mod p.
fn root_of_unity_field(d: u64) -> (u64, u64) {
    static CACHE: OnceLock<Mutex<HashMap<u64, (u64, u64)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&v) = cache.lock().unwrap().get(&d) {
        return v;
    }
    let mut t = (1u64 << 62) / d;
    let p = loop {
        let p = t * d + 1;
        if crate::exact::is_prime(p) {
            break p;
        }
        t -= 1;
    };
    let factors = prime_factors(d);
    let zeta = (2u64..)
        .map(|g| pow_mod(g, (p - 1) / d, p))
        .find(|&z| z != 0 && factors.iter().all(|&r| pow_mod(z, d / r, p) != 1))
        .expect("a primitive root exists");
    cache.lock().unwrap().insert(d, (p, zeta));
    (p, zeta)
}

/// Cheap necessary test for Phi_d | p: false means Phi_d certainly does not divide.
pub(crate) fn may_divide(p: &QPoly, d: u64) -> bool {
    if p.is_zero() {
        return true;
    }
    if (p.degree().unwrap() as u64) < phi_degree(d) {
        return false;
    }
    let (m, zeta) = root_of_unity_field(d);
    let mb = BigInt::from(m);
    let mut acc: u128 = 0;
    for c in p.int_coeffs().iter().rev() {
        let r = c % &mb;
        let r: u64 = if r < BigInt::zero() {
            u64::try_from(r + &mb).unwrap()
        } else {
            u64::try_from(r).unwrap()
        };
        acc = (acc * zeta as u128 + r as u128) % m as u128;
    }
    acc == 0
}

/// Euler totient = deg Phi_d.
pub fn phi_degree(d: u64) -> u64 {
    prime_factors(d).iter().fold(d, |acc, p| acc / p * (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), QPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(3).unwrap(), QPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(6).unwrap(), QPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(105).unwrap().coeff(7), rat(-2, 1));
        assert!(matches!(cyclotomic(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn brackets() {
        assert_eq!(qbracket(0), QPoly::zero());
        assert_eq!(qbracket(1), QPoly::one());
        assert_eq!(qbracket(3), cyclotomic(3).unwrap());
    }

    #[test]
    fn divisor_products() {
        for m in 1..=30u64 {
            let prod = divisors(m)
                .into_iter()
                .fold(QPoly::one(), |acc, d| &acc * &cyclotomic(d).unwrap());
            assert_eq!(prod, QPoly::q_pow_minus_one(m as usize), "m = {m}");
            let brk = divisors(m)
                .into_iter()
                .filter(|&d| d > 1)
                .fold(QPoly::one(), |acc, d| &acc * &cyclotomic(d).unwrap());
            assert_eq!(brk, qbracket(m), "m = {m}");
            assert_eq!(
                cyclotomic(m).unwrap().degree(),
                Some(phi_degree(m) as usize)
            );
        }
    }

    #[test]
    fn product_expansion_matches_naive() {
        let exps: CycloExps = [(1, 2), (2, 1), (6, 3), (15, 1), (12, 2)]
            .into_iter()
            .collect();
        let naive = exps.iter().fold(QPoly::one(), |acc, (&d, &k)| {
            &acc * &cyclotomic(d).unwrap().pow(k as u32)
        });
        assert_eq!(expand_cyclo_product(&exps), naive);
        let x = rat(2, 7);
        assert_eq!(
            eval_cyclo_product(&exps, &x).unwrap(),
            naive.eval_rational(&x)
        );
    }

    #[test]
    fn values_at_one() {
        for d in 1..60u64 {
            assert_eq!(
                Rational::from_integer(phi_at_one(d).into()),
                cyclotomic(d).unwrap().eval_at_one(),
                "d = {d}"
            );
        }
    }

    #[test]
    fn modular_rejection_is_sound() {
        for d in 1..40u64 {
            let phi = cyclotomic(d).unwrap();
            let multiple = &phi * &QPoly::from_i64(&[3, 0, -2, 7]);
            assert!(may_divide(&multiple, d));
            for e in 1..40u64 {
                if e != d {
                    assert!(
                        !may_divide(&cyclotomic(e).unwrap(), d),
                        "Phi_{d} | Phi_{e}?"
                    );
                }
            }
        }
    }
}
