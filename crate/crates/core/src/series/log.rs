//! Polynomials in `log x` with power-series coefficients.
//!
//! Part `j` is the coefficient of `log^j(x) / j!`, so the Euler derivation
//! acts by `δ(p L^j/j!) = (δp) L^j/j! + p L^(j-1)/(j-1)!`.

use super::power::{PowerSeries, SeriesError, Var};
use super::rational::{big, binomial, Rational};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct LogSeries {
    parts: Vec<PowerSeries>,
}

impl LogSeries {
    /// Builds from parts, truncating all to their common order and dropping
    /// trailing parts that vanish to that order.
    pub fn new(parts: Vec<PowerSeries>) -> Self {
        assert!(!parts.is_empty(), "log-series needs at least one part");
        let var = parts[0].var();
        assert!(
            parts.iter().all(|p| p.var() == var),
            "log-series parts disagree on the variable"
        );
        let order = parts
            .iter()
            .map(PowerSeries::order)
            .min()
            .expect("nonempty");
        let mut parts: Vec<PowerSeries> = parts.into_iter().map(|p| p.truncate(order)).collect();
        while parts.len() > 1 && parts.last().is_some_and(PowerSeries::is_zero) {
            parts.pop();
        }
        LogSeries { parts }
    }

    pub fn zero(var: Var, order: i64) -> Self {
        LogSeries {
            parts: vec![PowerSeries::zero(var, order)],
        }
    }

    /// `log x` to the given order.
    pub fn log(var: Var, order: i64) -> Self {
        LogSeries::new(vec![
            PowerSeries::zero(var, order),
            PowerSeries::one(var, order),
        ])
    }

    pub fn var(&self) -> Var {
        self.parts[0].var()
    }

    pub fn order(&self) -> i64 {
        self.parts[0].order()
    }

    /// Highest power of `log` present.
    pub fn log_degree(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn parts(&self) -> &[PowerSeries] {
        &self.parts
    }

    /// Part `j` (coefficient of `log^j / j!`), zero beyond the degree.
    pub fn part(&self, j: usize) -> PowerSeries {
        self.parts
            .get(j)
            .cloned()
            .unwrap_or_else(|| PowerSeries::zero(self.var(), self.order()))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(PowerSeries::is_zero)
    }

    /// The log-free part, if every log part vanishes to order.
    pub fn as_series(&self) -> Option<&PowerSeries> {
        if self.parts[1..].iter().all(PowerSeries::is_zero) {
            Some(&self.parts[0])
        } else {
            None
        }
    }

    pub fn truncate(&self, order: i64) -> Self {
        LogSeries::new(self.parts.iter().map(|p| p.truncate(order)).collect())
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&PowerSeries, &PowerSeries) -> Result<PowerSeries, SeriesError>,
    ) -> Result<Self, SeriesError> {
        let n = self.parts.len().max(other.parts.len());
        let parts = (0..n)
            .map(|j| f(&self.part(j), &other.part(j)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LogSeries::new(parts))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.zip_with(other, PowerSeries::try_add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.zip_with(other, PowerSeries::try_sub)
    }

    pub fn neg(&self) -> Self {
        LogSeries {
            parts: self.parts.iter().map(|p| -p).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        LogSeries::new(self.parts.iter().map(|p| p.scale(k)).collect())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let (da, db) = (self.parts.len(), other.parts.len());
        let mut out: Vec<Option<PowerSeries>> = vec![None; da + db - 1];
        for (i, a) in self.parts.iter().enumerate() {
            for (k, b) in other.parts.iter().enumerate() {
                let mut term = a.try_mul(b)?;
                let c = binomial((i + k) as u64, i as u64);
                if c != 1.into() {
                    term = term.scale(&big(c));
                }
                out[i + k] = Some(match out[i + k].take() {
                    None => term,
                    Some(acc) => acc.try_add(&term)?,
                });
            }
        }
        Ok(LogSeries::new(
            out.into_iter().map(|p| p.expect("filled")).collect(),
        ))
    }

    /// Multiplies every part by a plain series.
    pub fn mul_series(&self, s: &PowerSeries) -> Result<Self, SeriesError> {
        let parts = self
            .parts
            .iter()
            .map(|p| p.try_mul(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LogSeries::new(parts))
    }

    pub fn div_series(&self, s: &PowerSeries) -> Result<Self, SeriesError> {
        self.mul_series(&s.inverse()?)
    }

    /// Division; the divisor must be log-free to its order.
    pub fn try_div(&self, other: &Self) -> Result<Self, SeriesError> {
        let d = other.as_series().ok_or(SeriesError::LogDivisor)?;
        self.div_series(d)
    }

    pub fn pow(&self, n: u32) -> Result<Self, SeriesError> {
        if n == 0 {
            return Ok(LogSeries::from(PowerSeries::one(
                self.var(),
                self.order().max(0),
            )));
        }
        let mut r = self.clone();
        for _ in 1..n {
            r = r.try_mul(self)?;
        }
        Ok(r)
    }

    /// Euler derivation `x d/dx`.
    pub fn euler_derive(&self) -> Self {
        let n = self.parts.len();
        let parts = (0..n)
            .map(|j| {
                let d = self.parts[j].euler_derive(1);
                match self.parts.get(j + 1) {
                    Some(next) => &d + next,
                    None => d,
                }
            })
            .collect();
        LogSeries::new(parts)
    }

    /// `d/dx`, Laurent parts allowed.
    pub fn plain_derive(&self) -> Self {
        self.euler_derive().shift(-1)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LogSeries::new(self.parts.iter().map(|p| p.shift(k)).collect())
    }

    /// Substitutes `log x ↦ ℓ` where `ℓ` is a plain series, collapsing to a
    /// series: `Σ p_j ℓ^j / j!`.
    pub fn substitute_log(&self, ell: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        let mut acc = PowerSeries::zero(self.var(), self.order());
        let mut pow = PowerSeries::one(self.var(), self.order());
        let mut fact = Rational::from_integer(1.into());
        for (j, p) in self.parts.iter().enumerate() {
            if j > 0 {
                pow = pow.try_mul(ell)?;
                fact *= Rational::from_integer((j as i64).into());
            }
            acc = acc.try_add(&p.try_mul(&pow)?.scale(&fact.recip()))?;
        }
        Ok(acc)
    }
}

impl From<PowerSeries> for LogSeries {
    fn from(p: PowerSeries) -> Self {
        LogSeries { parts: vec![p] }
    }
}

impl fmt::Debug for LogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, p) in self.parts.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{p}]")?;
            if j > 0 {
                write!(f, "·log^{j}/{j}!")?;
            }
        }
        Ok(())
    }
}
