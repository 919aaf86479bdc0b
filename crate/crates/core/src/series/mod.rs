//! Exact series arithmetic: rationals, truncated Laurent series, log-series
//! and H-jets.

pub mod hjet;
pub mod log;
pub mod power;
pub mod rational;

pub use hjet::HJet;
pub use log::LogSeries;
pub use power::{PowerSeries, SeriesError, Var};
pub use rational::Rational;
