//! Exact verification toolkit for q-WZ pairs, q-analogues of Ramanujan-type
//! series for 1/pi, and the congruences they imply.

pub mod congruence;
pub mod error;
pub mod exact;
pub mod identity;
pub mod qpoly;
pub mod qseries;
pub mod real;
pub mod report;
pub mod wz;

pub use error::{Error, Result};
