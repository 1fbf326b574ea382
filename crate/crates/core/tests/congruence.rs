use num_traits::Zero;
use qwz::congruence::*;
use qwz::exact::{jacobi, rat, Rational};
use qwz::identity::identity_by_id;
use qwz::qpoly::RatFuncQ;
use qwz::qseries::Monomial;
use qwz::Error;

fn all_pass(results: &[CongruenceResult]) -> bool {
    results.iter().all(|r| r.passed())
}

#[test]
fn partial_sum_examples() {
    let s = partial_sum("level1-q-a", Monomial::q_pow(1), 0).unwrap();
    assert_eq!(s.value, RatFuncQ::one());
    let spec = identity_by_id("new-level1-q").unwrap();
    let s = partial_sum("new-level1-q", Monomial::ONE, 0).unwrap();
    assert_eq!(s.value, spec.term(0, Monomial::ONE).unwrap());
    let s = partial_sum("28n3-q-a", Monomial::q_pow(5), 2).unwrap();
    let expect = RatFuncQ::qbracket(5)
        .mul_q_pow(-2)
        .scale(&rat(jacobi(-3, 5).unwrap() as i64, 1));
    assert_eq!(s.value, expect);
    assert!(matches!(
        partial_sum("rama1-q", Monomial::ONE, -1),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn aggregation_order_is_irrelevant() {
    let spec = identity_by_id("28n3-q").unwrap();
    let forward = partial_sum("28n3-q", Monomial::ONE, 6).unwrap().value;
    let mut backward = RatFuncQ::zero();
    for n in (0..=6).rev() {
        backward = &backward + &spec.term(n, Monomial::ONE).unwrap();
    }
    assert_eq!(forward, backward);
    assert_eq!(forward.numerator(), backward.numerator());
    assert_eq!(forward.denominator(), backward.denominator());
}

#[test]
fn terminating_level1() {
    for m in [1, 3, 5, 7, 9] {
        let r = terminating_evaluation_check("level1-q-a", m).unwrap();
        assert_eq!(r.len(), 4);
        assert!(all_pass(&r), "m={m}: {r:?}");
    }
    // m = 5: (-q)[5]
    let s = partial_sum("level1-q-a", Monomial::q_pow(-5), 2).unwrap();
    assert_eq!(
        s.value,
        RatFuncQ::qbracket(5).mul_q_pow(1).scale(&rat(-1, 1))
    );
}

#[test]
fn terminating_level2() {
    for m in [1, 5, 7, 11] {
        let r = terminating_evaluation_check("28n3-q-a", m).unwrap();
        assert!(all_pass(&r), "m={m}: {r:?}");
    }
    let s = partial_sum("28n3-q-a", Monomial::q_pow(7), 6).unwrap();
    assert_eq!(s.value, RatFuncQ::qbracket(7).mul_q_pow(-3));
}

#[test]
fn substitution_symmetry() {
    for m in [3, 5, 7] {
        let u = (m - 1) / 2;
        let p = partial_sum("level1-q-a", Monomial::q_pow(m), u)
            .unwrap()
            .value;
        let n = partial_sum("level1-q-a", Monomial::q_pow(-m), u)
            .unwrap()
            .value;
        assert_eq!(p, n);
    }
}

#[test]
fn terminating_preconditions() {
    assert!(terminating_evaluation_check("level1-q-a", 4).is_err());
    assert!(terminating_evaluation_check("28n3-q-a", 9).is_err());
    assert!(terminating_evaluation_check("rama1-q", 3).is_err());
}

#[test]
fn cyclotomic_congruences() {
    for (m, u) in [(3, 1), (5, 4), (9, 4), (7, 3), (7, 6)] {
        let r = cyclotomic_congruence_check("new-level1-q", m, u).unwrap();
        assert!(r.passed(), "m={m} u={u}: {r:?}");
    }
    assert!(cyclotomic_congruence_check("28n3-q", 5, 2).is_err());
}

#[test]
fn cyclotomic_congruence_detects_wrong_truncation() {
    let r = cyclotomic_congruence_check("new-level1-q", 7, 0).unwrap();
    assert_eq!(r.status, Status::Fail);
}

fn phi_valuation_of(r: &CongruenceResult) -> Option<u32> {
    r.witness
        .strip_prefix(&format!("Phi_{} valuation ", r.params["m"]))?
        .split(';')
        .next()?
        .parse()
        .ok()
}

// The partial sums agree with the closed form modulo Phi_m but not modulo Phi_m^2.
#[test]
fn theorem1_small() {
    for m in [3, 5, 7, 9] {
        let r = theorem1_check(m).unwrap();
        assert_eq!(r.len(), 2);
        for c in &r {
            assert_eq!(c.status, Status::Fail, "m={m}: {c:?}");
            assert_eq!(phi_valuation_of(c), Some(1), "m={m}: {}", c.witness);
        }
        let c = cyclotomic_congruence_check("new-level1-q", m, (m - 1) / 2).unwrap();
        assert!(c.passed());
    }
    assert!(theorem1_check(4).is_err());
}

#[test]
fn theorem1_control_series_reaches_phi_cubed() {
    // Same method on the [6n+1] series: sum at a = 1 minus its terminating value at a = q^m.
    for m in [3, 5, 7] {
        let u = (m - 1) / 2;
        let s = partial_sum("gz-thm44-input", Monomial::ONE, u)
            .unwrap()
            .value;
        let rhs = partial_sum("gz-thm44-input", Monomial::q_pow(m), u)
            .unwrap()
            .value;
        let d = &s - &rhs;
        assert!(phi_valuation(&d, m, 4).unwrap() >= 3, "m={m}");
    }
}

#[test]
fn theorem2() {
    for m in [5, 7, 11, 13] {
        let r = theorem2_check(m, false).unwrap();
        assert_eq!(r.len(), 2);
        for c in &r {
            assert_eq!(c.status, Status::Fail, "m={m}: {c:?}");
            assert_eq!(phi_valuation_of(c), Some(1), "m={m}: {}", c.witness);
        }
    }
    assert!(theorem2_check(9, false).is_err());
}

#[test]
fn theorem2_exploratory_flag_adds_results() {
    let r = theorem2_check(5, true).unwrap();
    assert_eq!(r.len(), 4);
    assert!(r[2].exploratory && r[3].exploratory);
    assert!(!r[0].exploratory);
}

#[test]
fn supercongruences() {
    for p in [3, 5, 7, 11, 13] {
        let r = theorem1_supercongruence(p).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[1].passed(), "p={p}: {r:?}");
        assert_eq!(r[0].passed(), p == 3, "p={p}: {r:?}");
    }
    let r = theorem1_supercongruence(5).unwrap();
    assert_eq!(r[1].witness, "50 mod 125");
    assert_eq!(r[0].witness, "0 mod 125");
    let r = theorem1_supercongruence(3).unwrap();
    assert_eq!(r[0].witness, "18 mod 27");
    for p in [5, 7, 11, 13] {
        let r = theorem2_supercongruence(p).unwrap();
        assert!(all_pass(&r), "p={p}: {r:?}");
    }
    let r = theorem2_supercongruence(7).unwrap();
    assert_eq!(r[1].witness, "21 mod 49");
    assert!(theorem2_supercongruence(3).is_err());
    assert!(theorem1_supercongruence(9).is_err());
}

#[test]
fn supercongruence_with_wrong_rhs_fails() {
    let r = supercongruence_check("rama-level1", 5, 3, |_| {
        Ok(qwz::exact::ResidueClass::new(49, 125))
    })
    .unwrap();
    assert!(r.iter().all(|c| c.status == Status::Fail));
}

#[test]
fn supercongruence_sum_oracle() {
    // Sum_{n<=2} of the level-1 terms, by hand: 15 - 169*15/512 * (1/2)(1/6)(5/6)... checked via the spec.
    let spec = identity_by_id("rama-level1").unwrap();
    let t1 = spec.term(1, Monomial::ONE).unwrap().limit_q1().unwrap();
    // (1/2)(1/6)(5/6) * 169 * (-27/512)
    let expect = rat(1, 2) * rat(1, 6) * rat(5, 6) * rat(169, 1) * rat(-27, 512);
    assert_eq!(t1, expect);
    assert!(!Rational::is_zero(&t1));
}
