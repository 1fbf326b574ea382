//! The registered WZ pairs.

use crate::error::{Error, Result};
use crate::exact::{rat, rat_int};
use crate::qseries::{Monomial, PochSpec};

use super::term::{CTerm, QTerm, TermFunction};
use super::WZPair;

pub const PAIR_IDS: [&str; 6] = ["guo", "guo-a", "pair3.2", "pair7", "pair7-q", "pair7-q-a"];

const Q_Q2: PochSpec = PochSpec::plain(1, 2);
const Q4_Q4: PochSpec = PochSpec::plain(4, 4);
const Q2_Q2: PochSpec = PochSpec::plain(2, 2);
const Q3_Q6: PochSpec = PochSpec::plain(3, 6);
const AQ_Q2: PochSpec = PochSpec::times_a(1, 2);
const QA_Q2: PochSpec = PochSpec::over_a(1, 2);
const AQ4_Q4: PochSpec = PochSpec::times_a(4, 4);
const Q4A_Q4: PochSpec = PochSpec::over_a(4, 4);
const AQ6_Q6: PochSpec = PochSpec::times_a(6, 6);
const Q6A_Q6: PochSpec = PochSpec::over_a(6, 6);

/// Looks up a pair by its stable id. `a` is ignored by pairs without a parameter.
pub fn pair_by_id(id: &str, a: Monomial) -> Result<WZPair> {
    match id {
        "guo" => Ok(guo()),
        "guo-a" => Ok(guo_a(a)),
        "pair3.2" => Ok(pair32_classical()),
        "pair7" => Ok(pair7_classical()),
        "pair7-q" => Ok(pair7_q()),
        "pair7-q-a" => Ok(pair7_q_a(a)),
        _ => Err(Error::UnknownId(id.to_string())),
    }
}

pub fn guo() -> WZPair {
    let mut p = guo_a(Monomial::ONE);
    p.id = "guo".into();
    p
}

pub fn guo_a(a: Monomial) -> WZPair {
    let f = TermFunction::new("guo F", a, move |n, k| {
        Ok(QTerm::new(a)
            .sign(n + k)
            .q_pow((n + k) * (3 * n - k))
            .poch(Q_Q2, n - k - 1, 1)
            .poch(AQ_Q2, n + k, 1)
            .poch(QA_Q2, n + k, 1)
            .poch(Q4_Q4, n + k, -1)
            .poch(AQ4_Q4, n - 1, -1)
            .poch(Q4A_Q4, n - 1, -1)
            .binomial(1, 1, -1)
            .build())
    });
    let g = TermFunction::new("guo G", a, move |n, k| {
        Ok(QTerm::new(a)
            .sign(n + k)
            .q_pow((n + k) * (3 * n - k))
            .poch(Q_Q2, n - k, 1)
            .poch(AQ_Q2, n + k, 1)
            .poch(QA_Q2, n + k, 1)
            .poch(Q4_Q4, n + k, -1)
            .poch(AQ4_Q4, n, -1)
            .poch(Q4A_Q4, n, -1)
            .bracket(6 * n + 2 * k + 1)
            .build())
    });
    WZPair::new("guo-a", f, g)
}

pub fn pair32_classical() -> WZPair {
    let half = rat(1, 2);
    let common = move |n: i64, k: i64| {
        CTerm::new()
            .sign(n)
            .power(2, -(3 * n + k))
            .poch(half.clone() - rat_int(k), n, 1)
            .poch(half.clone() + rat_int(k), n, 2)
            .poch(rat_int(1), n, -2)
            .poch(rat_int(1 + k), n, -1)
            .poch(half.clone(), k, 1)
            .poch(rat_int(1), k, -1)
    };
    let common_g = common.clone();
    let f = TermFunction::new("pair3.2 F", Monomial::ONE, move |n, k| {
        Ok(common(n, k)
            .factor(16, 1)
            .factor(n, 2)
            .factor(2 * n - 2 * k - 1, -1)
            .build_q())
    });
    let g = TermFunction::new("pair3.2 G", Monomial::ONE, move |n, k| {
        Ok(common_g(n, k).factor(6 * n + 2 * k + 1, 1).build_q())
    });
    WZPair::new("pair3.2", f, g)
}

pub fn pair7_classical() -> WZPair {
    let half = rat(1, 2);
    let half_g = half.clone();
    let f = TermFunction::new("pair7 F", Monomial::ONE, move |n, k| {
        Ok(CTerm::new()
            .factor(18, 1)
            .sign(k)
            .poch(half.clone(), n + k, 2)
            .poch(half.clone(), 2 * n - k - 1, 1)
            .poch(half.clone(), k, 1)
            .poch(rat_int(1), n - 1, -2)
            .poch(rat_int(1), 2 * n + 2 * k, -1)
            .power(3, k)
            .power(9, -n)
            .build_q())
    });
    let half = half_g;
    let g = TermFunction::new("pair7 G", Monomial::ONE, move |n, k| {
        Ok(CTerm::new()
            .sign(k)
            .poch(half.clone(), n + k, 2)
            .poch(half.clone(), 2 * n - k, 1)
            .poch(half.clone(), k, 1)
            .poch(rat_int(1), n, -2)
            .poch(rat_int(1), 2 * n + 2 * k, -1)
            .power(3, k)
            .power(9, -n)
            .factor(8 * n + 2 * k + 1, 1)
            .build_q())
    });
    WZPair::new("pair7", f, g)
}

pub fn pair7_q() -> WZPair {
    let mut p = pair7_q_a(Monomial::ONE);
    p.id = "pair7-q".into();
    p
}

pub fn pair7_q_a(a: Monomial) -> WZPair {
    let f = TermFunction::new("pair7-q F", a, move |n, k| {
        Ok(QTerm::new(a)
            .sign(k)
            .binomial(1, 1, -1)
            .q_pow(2 * n * n + 4 * n * k - k * k)
            .poch(AQ_Q2, n + k, 1)
            .poch(QA_Q2, n + k, 1)
            .poch(Q_Q2, 2 * n - k - 1, 1)
            .poch(AQ6_Q6, n - 1, -1)
            .poch(Q6A_Q6, n - 1, -1)
            .poch(Q2_Q2, 2 * n + 2 * k, -1)
            .poch(Q3_Q6, k, 1)
            .build())
    });
    let g = TermFunction::new("pair7-q G", a, move |n, k| {
        Ok(QTerm::new(a)
            .sign(k)
            .q_pow(2 * n * n + 4 * n * k - k * k)
            .poch(AQ_Q2, n + k, 1)
            .poch(QA_Q2, n + k, 1)
            .poch(Q_Q2, 2 * n - k, 1)
            .poch(AQ6_Q6, n, -1)
            .poch(Q6A_Q6, n, -1)
            .poch(Q2_Q2, 2 * n + 2 * k, -1)
            .poch(Q3_Q6, k, 1)
            .bracket(8 * n + 2 * k + 1)
            .build())
    });
    WZPair::new("pair7-q-a", f, g)
}
