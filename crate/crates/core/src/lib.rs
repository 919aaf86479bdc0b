//! Exact-arithmetic engine for hypergeometric mirror maps.
//!
//! The crate builds the Frobenius solutions of the operators
//! `δ^(s-1) - s z (sδ+1)⋯(sδ+s-1)`, the mirror map `z(q)`, the Yukawa
//! coupling and instanton numbers for `s = 5`, and checks the differential
//! identities they satisfy coefficient by coefficient over ℚ.

pub mod format;
pub mod golden;
pub mod hypergeom;
pub mod mirror;
pub mod ode;
pub mod par;
pub mod series;
pub mod yukawa;

pub use par::Exec;
pub use series::{HJet, LogSeries, PowerSeries, Rational, SeriesError, Var};
