//! Polynomials in `t = log q` with `q`-series coefficients.
//!
//! `d/dt` acts on `t^k p(q)` as `k t^(k-1) p + t^k δ_q p`.

use crate::series::rational::{int, Rational};
use crate::series::{PowerSeries, SeriesError, Var};
use num_traits::One;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct TPolyQSeries {
    terms: Vec<PowerSeries>,
}

impl TPolyQSeries {
    /// `terms[k]` is the coefficient of `t^k`; all are truncated to their
    /// common order and trailing zeros are dropped.
    pub fn new(terms: Vec<PowerSeries>) -> Self {
        assert!(!terms.is_empty(), "empty t-polynomial");
        let order = terms
            .iter()
            .map(PowerSeries::order)
            .min()
            .expect("nonempty");
        let mut terms: Vec<PowerSeries> = terms.into_iter().map(|p| p.truncate(order)).collect();
        while terms.len() > 1 && terms.last().is_some_and(PowerSeries::is_zero) {
            terms.pop();
        }
        TPolyQSeries { terms }
    }

    pub fn from_series(p: PowerSeries) -> Self {
        Self::new(vec![p])
    }

    pub fn constant(c: Rational, order: i64) -> Self {
        Self::from_series(PowerSeries::constant(Var::Q, c, order))
    }

    /// `c t^k`.
    pub fn t_power(k: usize, c: Rational, order: i64) -> Self {
        let mut terms = vec![PowerSeries::zero(Var::Q, order); k + 1];
        terms[k] = PowerSeries::constant(Var::Q, c, order);
        Self::new(terms)
    }

    pub fn order(&self) -> i64 {
        self.terms[0].order()
    }

    pub fn degree(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[PowerSeries] {
        &self.terms
    }

    pub fn term(&self, k: usize) -> PowerSeries {
        self.terms
            .get(k)
            .cloned()
            .unwrap_or_else(|| PowerSeries::zero(Var::Q, self.order()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(PowerSeries::is_zero)
    }

    pub fn truncate(&self, order: i64) -> Self {
        Self::new(self.terms.iter().map(|p| p.truncate(order)).collect())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.terms.len().max(other.terms.len());
        Ok(Self::new(
            (0..n)
                .map(|k| self.term(k).try_add(&other.term(k)))
                .collect::<Result<_, _>>()?,
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.terms.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_series(&self, s: &PowerSeries) -> Result<Self, SeriesError> {
        Ok(Self::new(
            self.terms
                .iter()
                .map(|p| p.try_mul(s))
                .collect::<Result<_, _>>()?,
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let order = self.order().min(other.order());
        let mut out =
            vec![PowerSeries::zero(Var::Q, order); self.terms.len() + other.terms.len() - 1];
        for (i, a) in self.terms.iter().enumerate() {
            for (j, b) in other.terms.iter().enumerate() {
                out[i + j] = out[i + j].try_add(&a.try_mul(b)?)?;
            }
        }
        Ok(Self::new(out))
    }

    /// `d/dt`.
    pub fn derive(&self) -> Self {
        let n = self.terms.len();
        let terms = (0..n)
            .map(|k| {
                let d = self.terms[k].euler_derive(1);
                match self.terms.get(k + 1) {
                    Some(next) => &d + &next.scale(&int(k as i64 + 1)),
                    None => d,
                }
            })
            .collect();
        Self::new(terms)
    }

    pub fn derive_n(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.derive())
    }
}

impl fmt::Debug for TPolyQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{p}]·t^{k}")?;
        }
        Ok(())
    }
}
