use num_traits::{One, Zero};
use qwz::exact::{rat, rat_int, Rational};
use qwz::identity::*;
use qwz::qpoly::{QPoly, RatFuncQ};
use qwz::qseries::Monomial;
use qwz::real::{bits_for_digits, Real};
use qwz::wz::{guo, summand_of_derived_identity};
use qwz::Error;

fn id(s: &str) -> IdentitySpec {
    identity_by_id(s).unwrap()
}

fn below(x: &Real, digits: u32) -> bool {
    x < &Real::ten_pow_neg(digits, x.bits())
}

fn one_minus_q_pow(e: usize) -> QPoly {
    let mut c = vec![0i64; e + 1];
    c[0] = 1;
    c[e] -= 1;
    QPoly::from_i64(&c)
}

#[test]
fn registry_is_complete() {
    for s in IDENTITY_IDS {
        let spec = id(s);
        assert_eq!(spec.id, s);
        assert!(!spec.limit_scale.is_zero());
        if let Some(c) = spec.classical_companion {
            assert!(id(c).is_classical());
        }
    }
    assert!(matches!(identity_by_id("nope"), Err(Error::UnknownId(_))));
}

#[test]
fn rama1_q_second_term_by_hand() {
    // -q^3 [7] (1-q)^3 / (1-q^4)^3
    let num = &(&(&one_minus_q_pow(1) * &one_minus_q_pow(1)) * &one_minus_q_pow(1))
        * &QPoly::from_i64(&[1; 7]);
    let den = &(&one_minus_q_pow(4) * &one_minus_q_pow(4)) * &one_minus_q_pow(4);
    let expect = RatFuncQ::from_fraction(&num, &den)
        .unwrap()
        .mul_q_pow(3)
        .scale(&rat(-1, 1));
    assert_eq!(id("rama1-q").term(1, Monomial::ONE).unwrap(), expect);
}

#[test]
fn numeric_at_zero_is_exact() {
    let c = verify_numeric(&id("rama1-q"), Monomial::ONE, &Rational::zero(), 1, 30).unwrap();
    assert!(c.residual.is_zero());
}

#[test]
fn numeric_residuals() {
    let half = rat(1, 2);
    let cases: Vec<(&str, Monomial)> = vec![
        ("rama1-q", Monomial::ONE),
        ("new-level1-q", Monomial::ONE),
        ("guo-zud-8n1-q", Monomial::ONE),
        ("28n3-q", Monomial::ONE),
        ("level1-q-a", Monomial::ONE),
        ("level1-q-a", Monomial::q_pow(1)),
        ("level1-q-a", Monomial::q_pow(3)),
        ("28n3-q-a", Monomial::ONE),
        ("28n3-q-a", Monomial::q_pow(1)),
        ("gz-thm44-input", Monomial::q_pow(3)),
    ];
    for (s, a) in cases {
        let c = verify_numeric(&id(s), a, &half, 40, 30).unwrap();
        assert!(below(&c.residual, 20), "{s} a={a}: {}", c.residual);
    }
}

#[test]
fn numeric_residual_needs_a_converging_q() {
    let r = verify_numeric(&id("rama1-q"), Monomial::ONE, &rat(1, 1), 5, 20);
    assert!(matches!(r, Err(Error::Divergent(_))));
}

#[test]
fn residuals_shrink_with_more_terms() {
    for s in ["rama1-q", "new-level1-q", "guo-zud-8n1-q", "28n3-q"] {
        for q0 in [rat(1, 2), rat(1, 3), rat(-1, 2)] {
            let r: Vec<Real> = [10, 20, 40]
                .iter()
                .map(|&n| {
                    verify_numeric(&id(s), Monomial::ONE, &q0, n, 30)
                        .unwrap()
                        .residual
                })
                .collect();
            let tol = Real::ten_pow_neg(35, r[0].bits());
            assert!(r[1] <= &r[0] + &tol && r[2] <= &r[1] + &tol, "{s} q0={q0}");
        }
    }
}

#[test]
fn perturbed_summand_breaks_identity() {
    let p = id("rama1-q").perturbed();
    let c = verify_numeric(&p, Monomial::ONE, &rat(1, 2), 40, 30).unwrap();
    assert!(!below(&c.residual, 5));
    let p = id("rama-level4").perturbed();
    assert!(!below(&classical_value(&p, 60, 30).unwrap().abs(), 5));
}

#[test]
fn limit_terms() {
    let checks = verify_limit_terms(&id("rama1-q"), 1).unwrap();
    assert_eq!(checks[1].q_limit.as_deref(), Some("-7/64"));
    assert_eq!(checks[1].expected, "-7/64");
    for (s, scale) in [
        ("rama1-q", rat(1, 1)),
        ("new-level1-q", rat(1, 16)),
        ("28n3-q", rat(3, 8)),
        ("guo-zud-8n1-q", rat(1, 1)),
        ("level1-q-a", rat(1, 16)),
        ("gz-thm44-input", rat(1, 1)),
        ("28n3-q-a", rat(3, 8)),
    ] {
        assert_eq!(id(s).limit_scale, scale);
        let checks = verify_limit_terms(&id(s), 15).unwrap();
        assert_eq!(checks.len(), 16);
        assert!(checks.iter().all(|c| c.ok), "{s}: {checks:?}");
    }
}

#[test]
fn limit_scale_oracles() {
    // The bracket of the level-1 series tends to (6n+1)/(4n+4) * (-(4n+4))/16 + 10n+1.
    for n in 0..10i64 {
        let bracket = rat_int(6 * n + 1) / rat_int(4 * n + 4) * rat_int(-(4 * n + 4)) / rat_int(16)
            + rat_int(10 * n + 1);
        assert_eq!(bracket, rat_int(154 * n + 15) / rat_int(16));
        let b28 = rat_int(4 * n + 1) / rat_int(8) + rat_int(10 * n + 1);
        assert_eq!(b28, rat_int(3 * (28 * n + 3)) / rat_int(8));
    }
}

#[test]
fn wrong_scale_is_detected() {
    let mut s = id("new-level1-q");
    s.limit_scale = rat(1, 8);
    let checks = verify_limit_terms(&s, 3).unwrap();
    assert!(checks.iter().any(|c| !c.ok));
}

#[test]
fn classical_values() {
    let s = id("rama-level4");
    let c = ClosedConstant {
        coeff: rat_int(2),
        radicand: 2,
    };
    assert!(c.eval(30).to_decimal(13).starts_with("0.9003163161571"));
    for (name, n) in [
        ("rama-level4", 60),
        ("rama-level1", 60),
        ("rama-level2-8n1", 80),
        ("rama-level2-28n3", 80),
    ] {
        let d = classical_value(&id(name), n, 30).unwrap();
        assert!(below(&d.abs(), 15), "{name}: {d}");
    }
    assert!(classical_value(&id("rama1-q"), 10, 30).is_err());
    assert_eq!(classical_term(&s, 1).unwrap(), rat(-7, 64));
}

#[test]
fn written_forms_agree() {
    for s in ["new-level1-q", "28n3-q"] {
        let r = summand_form_equivalence(s, 10).unwrap();
        assert_eq!(r.len(), 11);
        assert!(r.iter().all(|&(_, ok)| ok), "{s}");
    }
    assert!(summand_form_equivalence("rama1-q", 2).is_err());
}

#[test]
fn a_versions_reduce_at_a_one() {
    for (plain, with_a) in [
        ("new-level1-q", "level1-q-a"),
        ("28n3-q", "28n3-q-a"),
        ("rama1-q", "gz-thm44-input"),
    ] {
        for n in 0..=10 {
            assert_eq!(
                id(plain).term(n, Monomial::ONE).unwrap(),
                id(with_a).term(n, Monomial::ONE).unwrap(),
                "{with_a} n={n}"
            );
        }
    }
}

#[test]
fn derived_summands_match_registered_series() {
    let level1 = id("new-level1-q");
    let s28 = id("28n3-q");
    for n in 0..=10 {
        assert_eq!(
            summand_of_derived_identity("guo", Monomial::ONE, n).unwrap(),
            level1.term(n, Monomial::ONE).unwrap(),
            "guo n={n}"
        );
        assert_eq!(
            summand_of_derived_identity("pair7-q", Monomial::ONE, n).unwrap(),
            s28.term(n, Monomial::ONE).unwrap(),
            "pair7-q n={n}"
        );
    }
}

#[test]
fn derived_summands_match_a_series() {
    for a in [Monomial::q_pow(1), Monomial::q_pow(3), Monomial::q_pow(-2)] {
        for n in 0..=4 {
            assert_eq!(
                summand_of_derived_identity("guo-a", a, n).unwrap(),
                id("level1-q-a").term(n, a).unwrap(),
                "guo-a a={a} n={n}"
            );
            assert_eq!(
                summand_of_derived_identity("pair7-q-a", a, n).unwrap(),
                id("28n3-q-a").term(n, a).unwrap(),
                "pair7-q-a a={a} n={n}"
            );
        }
    }
}

#[test]
fn transformed_sum_equals_original_sum() {
    let q0 = rat(1, 2);
    let g = guo();
    let level1 = id("new-level1-q");
    let (mut s1, mut s2) = (Rational::zero(), Rational::zero());
    for n in 0..40 {
        s1 += level1
            .term(n, Monomial::ONE)
            .unwrap()
            .eval_rational(&q0)
            .unwrap();
        s2 +=
            g.g.eval(n, 0)
                .unwrap()
                .finite()
                .unwrap()
                .eval_rational(&q0)
                .unwrap();
    }
    let bits = bits_for_digits(30);
    let d = (&Real::from_rational(&s1, bits) - &Real::from_rational(&s2, bits)).abs();
    assert!(below(&d, 15));
    assert!(!s1.is_one());
}
