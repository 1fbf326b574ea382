//! WZ pairs as exact term functions, the relation checks, and the
//! index transformations that produce new pairs from old ones.

mod pairs;
mod term;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qpoly::RatFuncQ;
use crate::qseries::{Ext, ExtTerm, Monomial};

pub use pairs::{
    guo, guo_a, pair32_classical, pair7_classical, pair7_q, pair7_q_a, pair_by_id, PAIR_IDS,
};
pub(crate) use term::{bracket_ext, CTerm, QTerm};
pub use term::{Evaluator, TermFunction};

/// Terms F, G with F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k).
#[derive(Clone, Debug)]
pub struct WZPair {
    pub id: String,
    pub f: TermFunction,
    pub g: TermFunction,
}

impl WZPair {
    pub fn new(id: impl Into<String>, f: TermFunction, g: TermFunction) -> Self {
        Self {
            id: id.into(),
            f,
            g,
        }
    }

    /// The same pair with G multiplied by q. Fails the relation; used as a negative control.
    pub fn corrupted(&self) -> Self {
        let g = self.g.clone();
        let scaled = TermFunction::new(
            format!("q * {}", g.description()),
            g.a_subst(),
            move |n, k| Ok(g.eval(n, k)?.mul_value(&Monomial::q_pow(1).to_ratfunc())),
        );
        Self::new(format!("{}-corrupted", self.id), self.f.clone(), scaled)
    }
}

fn relation_sum(terms: &[(i32, &ExtTerm)], n: i64, k: i64) -> Result<ExtTerm> {
    let mut acc = Ext::zero();
    for &(sign, t) in terms {
        let t = if sign < 0 { t.neg() } else { t.clone() };
        acc = acc.add(&t).map_err(|_| Error::PoleInRelation { n, k })?;
    }
    Ok(acc)
}

fn located<T>(r: Result<T>, n: i64, k: i64) -> Result<T> {
    r.map_err(|e| match e {
        Error::Pole => Error::PoleInRelation { n, k },
        e => e,
    })
}

/// F(n+1,k) - F(n,k) - G(n,k+1) + G(n,k).
pub fn wz_residual(pair: &WZPair, n: i64, k: i64) -> Result<ExtTerm> {
    let f1 = located(pair.f.eval(n + 1, k), n, k)?;
    let f0 = located(pair.f.eval(n, k), n, k)?;
    let g1 = located(pair.g.eval(n, k + 1), n, k)?;
    let g0 = located(pair.g.eval(n, k), n, k)?;
    relation_sum(&[(1, &f1), (-1, &f0), (-1, &g1), (1, &g0)], n, k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridFailure {
    pub n: i64,
    pub k: i64,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridReport {
    pub pair: String,
    pub n_max: i64,
    pub k_max: i64,
    pub cells: usize,
    pub failures: Vec<GridFailure>,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for GridReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} cells on [0,{}]x[0,{}], {} failures",
            self.pair,
            self.cells,
            self.n_max,
            self.k_max,
            self.failures.len()
        )
    }
}

/// Checks the relation on 0 <= n <= n_max, 0 <= k <= k_max in parallel.
/// Failures are listed in row-major order; the first pole aborts the check.
pub fn check_grid(pair: &WZPair, n_max: i64, k_max: i64) -> Result<GridReport> {
    if n_max < 0 || k_max < 0 {
        return Err(Error::InvalidArgument(
            "grid bounds must be nonnegative".into(),
        ));
    }
    let cells: Vec<(i64, i64)> = (0..=n_max)
        .flat_map(|n| (0..=k_max).map(move |k| (n, k)))
        .collect();
    let results: Vec<Result<Option<GridFailure>>> = cells
        .par_iter()
        .map(|&(n, k)| {
            let r = wz_residual(pair, n, k)?;
            Ok((!r.is_zero()).then(|| GridFailure {
                n,
                k,
                residual: r.to_string(),
            }))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok(GridReport {
        pair: pair.id.clone(),
        n_max,
        k_max,
        cells: cells.len(),
        failures,
    })
}

/// Sum_{n<N} (G(n,k+1) - G(n,k)) - (F(N,k) - F(0,k)).
pub fn telescope_check(pair: &WZPair, big_n: i64, k: i64) -> Result<ExtTerm> {
    if big_n < 0 {
        return Err(Error::InvalidArgument("N must be nonnegative".into()));
    }
    let mut acc = Ext::zero();
    for n in 0..big_n {
        let g1 = located(pair.g.eval(n, k + 1), n, k)?;
        let g0 = located(pair.g.eval(n, k), n, k)?;
        let step = relation_sum(&[(1, &g1), (-1, &g0)], n, k)?;
        acc = relation_sum(&[(1, &acc), (1, &step)], n, k)?;
    }
    let fa = located(pair.f.eval(big_n, k), big_n, k)?;
    let fb = located(pair.f.eval(0, k), 0, k)?;
    relation_sum(&[(1, &acc), (-1, &fa), (1, &fb)], big_n, k)
}

fn combine(terms: Vec<(i32, Result<ExtTerm>)>, n: i64, k: i64) -> Result<ExtTerm> {
    let mut vals = Vec::with_capacity(terms.len());
    for (s, t) in terms {
        vals.push((s, located(t, n, k)?));
    }
    let refs: Vec<(i32, &ExtTerm)> = vals.iter().map(|(s, t)| (*s, t)).collect();
    relation_sum(&refs, n, k)
}

/// F2(n,k) = F1(n,k+n), G2(n,k) = F1(n+1,k+n) + G1(n,k+n).
pub fn transform_p1(pair: &WZPair) -> WZPair {
    let (f1, g1) = (pair.f.clone(), pair.g.clone());
    let a = f1.a_subst();
    let ff = f1.clone();
    let f = TermFunction::new(format!("p1 F[{}]", pair.id), a, move |n, k| {
        ff.eval(n, k + n)
    });
    let g = TermFunction::new(format!("p1 G[{}]", pair.id), a, move |n, k| {
        combine(
            vec![(1, f1.eval(n + 1, k + n)), (1, g1.eval(n, k + n))],
            n,
            k,
        )
    });
    WZPair::new(format!("p1({})", pair.id), f, g)
}

/// F2(n,k) = F1(n,k-n), G2(n,k) = -F1(n+1,k-n-1) + G1(n,k-n).
pub fn transform_p2(pair: &WZPair) -> WZPair {
    let (f1, g1) = (pair.f.clone(), pair.g.clone());
    let a = f1.a_subst();
    let ff = f1.clone();
    let f = TermFunction::new(format!("p2 F[{}]", pair.id), a, move |n, k| {
        ff.eval(n, k - n)
    });
    let g = TermFunction::new(format!("p2 G[{}]", pair.id), a, move |n, k| {
        combine(
            vec![(-1, f1.eval(n + 1, k - n - 1)), (1, g1.eval(n, k - n))],
            n,
            k,
        )
    });
    WZPair::new(format!("p2({})", pair.id), f, g)
}

/// F2(n,k) = F1(2n,k), G2(n,k) = G1(2n,k) + G1(2n+1,k).
pub fn transform_p3(pair: &WZPair) -> WZPair {
    let (f1, g1) = (pair.f.clone(), pair.g.clone());
    let a = f1.a_subst();
    let f = TermFunction::new(format!("p3 F[{}]", pair.id), a, move |n, k| {
        f1.eval(2 * n, k)
    });
    let g = TermFunction::new(format!("p3 G[{}]", pair.id), a, move |n, k| {
        combine(
            vec![(1, g1.eval(2 * n, k)), (1, g1.eval(2 * n + 1, k))],
            n,
            k,
        )
    });
    WZPair::new(format!("p3({})", pair.id), f, g)
}

/// The transformed pair whose boundary sum yields a new series:
/// p2 after p3 for the guo family, p1 for the pair7-q family.
pub fn derived_pair(pair_id: &str, a: Monomial) -> Result<WZPair> {
    let base = pair_by_id(pair_id, a)?;
    match pair_id {
        "guo" | "guo-a" => Ok(transform_p2(&transform_p3(&base))),
        "pair7-q" | "pair7-q-a" => Ok(transform_p1(&base)),
        _ => Err(Error::InvalidArgument(format!(
            "no derived series registered for {pair_id}"
        ))),
    }
}

/// G2(n,0) of the derived pair as a finite rational function.
pub fn summand_of_derived_identity(pair_id: &str, a: Monomial, n: i64) -> Result<RatFuncQ> {
    if n < 0 {
        return Err(Error::InvalidArgument("n must be nonnegative".into()));
    }
    let pair = derived_pair(pair_id, a)?;
    pair.g
        .eval(n, 0)?
        .finite()
        .map_err(|_| Error::PoleInRelation { n, k: 0 })
}
