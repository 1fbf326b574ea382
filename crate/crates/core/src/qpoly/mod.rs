//! Exact polynomial, Laurent-polynomial and rational-function arithmetic in q.

mod cyclo;
mod laurent;
mod poly;
mod ratfunc;

pub use cyclo::{
    add_exps, binomial_exps, bracket_exps, cyclotomic, expand_cyclo_product, phi_at_one,
    phi_degree, qbracket, CycloExps,
};
pub use laurent::LaurentQ;
pub use poly::QPoly;
pub use ratfunc::{divides, RatFuncQ};

use crate::error::Result;
use crate::exact::Rational;
use crate::real::Real;

/// Value at q = 1 of the reduced function.
pub fn limit_q1(f: &RatFuncQ) -> Result<Rational> {
    f.limit_q1()
}

/// High-precision value of `f` at `q0`.
pub fn eval_float(f: &RatFuncQ, q0: &Real) -> Result<Real> {
    f.eval_real(q0)
}
