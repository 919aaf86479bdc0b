//! Truncated Laurent series with exact rational coefficients.

use super::rational::{clear_denominators, format_rational, int, Rational};
use crate::par::{self, Exec};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Variable tag of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    Z,
    Q,
    /// Auxiliary local parameter (random jets in relation searches).
    T,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::Z => "z",
            Var::Q => "q",
            Var::T => "t",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(Var, Var),
    #[error("division by a series that is zero to order {0}")]
    DivisionByZero(i64),
    #[error("inner series must have positive valuation, got {0}")]
    InnerValuation(i64),
    #[error("exp needs a series without constant term (valuation {0})")]
    ExpPrecondition(i64),
    #[error("log needs constant term 1")]
    LogPrecondition,
    #[error("reversion needs valuation exactly 1, got {0:?}")]
    RevertValuation(Option<i64>),
    #[error("division by a log-series whose log parts do not vanish")]
    LogDivisor,
    #[error("coefficient of exponent {exponent} is beyond the truncation order {order}")]
    Unknown { exponent: i64, order: i64 },
}

/// `Σ c_n x^n + O(x^order)` with Laurent support.
///
/// Stored from the true valuation: `coeffs[0]` is nonzero unless the series
/// is zero to its order, in which case `start == order` and `coeffs` is
/// empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    var: Var,
    start: i64,
    coeffs: Vec<Rational>,
    order: i64,
}

impl PowerSeries {
    /// Builds `Σ coeffs[i] x^(valuation+i) + O(x^order)`. Entries at or past
    /// `order` are dropped; missing entries are zero.
    pub fn new(var: Var, valuation: i64, mut coeffs: Vec<Rational>, order: i64) -> Self {
        let len = (order - valuation).max(0) as usize;
        coeffs.truncate(len);
        coeffs.resize(len, Rational::zero());
        let mut s = PowerSeries {
            var,
            start: valuation.min(order),
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    pub fn from_i64(var: Var, valuation: i64, coeffs: &[i64], order: i64) -> Self {
        Self::new(
            var,
            valuation,
            coeffs.iter().map(|&c| int(c)).collect(),
            order,
        )
    }

    pub fn zero(var: Var, order: i64) -> Self {
        PowerSeries {
            var,
            start: order,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn constant(var: Var, c: Rational, order: i64) -> Self {
        Self::new(var, 0, vec![c], order)
    }

    pub fn one(var: Var, order: i64) -> Self {
        Self::constant(var, Rational::one(), order)
    }

    pub fn monomial(var: Var, exponent: i64, c: Rational, order: i64) -> Self {
        Self::new(var, exponent, vec![c], order)
    }

    /// The variable itself, `x + O(x^order)`.
    pub fn identity(var: Var, order: i64) -> Self {
        Self::monomial(var, 1, Rational::one(), order)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.start += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.start = self.order;
            }
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Exponents `>= order` are unknown.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Exponent of the first nonzero coefficient, `None` if zero to order.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.start)
        }
    }

    /// Lower bound on the valuation: the true one, or `order` for a series
    /// that is zero to its order.
    pub fn min_exponent(&self) -> i64 {
        self.start
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<(i64, &Rational)> {
        self.coeffs.first().map(|c| (self.start, c))
    }

    /// Coefficient of `x^n`. Panics when `n >= order`; see [`Self::try_coeff`].
    pub fn coeff(&self, n: i64) -> Rational {
        self.try_coeff(n).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_coeff(&self, n: i64) -> Result<Rational, SeriesError> {
        if n >= self.order {
            return Err(SeriesError::Unknown {
                exponent: n,
                order: self.order,
            });
        }
        if n < self.start {
            return Ok(Rational::zero());
        }
        Ok(self.coeffs[(n - self.start) as usize].clone())
    }

    fn c(&self, n: i64) -> Option<&Rational> {
        if n < self.start || n >= self.order {
            None
        } else {
            Some(&self.coeffs[(n - self.start) as usize])
        }
    }

    /// Coefficients for exponents `from..to` (clamped to the order).
    pub fn coeff_range(&self, from: i64, to: i64) -> Vec<Rational> {
        (from..to.min(self.order))
            .map(|n| self.c(n).cloned().unwrap_or_else(Rational::zero))
            .collect()
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        let s = self.start;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (s + i as i64, c))
    }

    /// Stored coefficients starting at [`Self::min_exponent`].
    pub fn raw_coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    /// Drops everything at or past `order` (no-op if already lower).
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        c.truncate((order - self.start).max(0) as usize);
        let mut s = PowerSeries {
            var: self.var,
            start: self.start.min(order),
            coeffs: c,
            order,
        };
        s.normalize();
        s
    }

    /// Declares the unknown tail up to `order` to be zero. Only sound when
    /// the caller knows the higher coefficients are irrelevant (for example
    /// while seeding an iteration).
    pub fn extend_order(&self, order: i64) -> Self {
        if order <= self.order {
            return self.truncate(order);
        }
        let mut c = self.coeffs.clone();
        if c.is_empty() {
            return Self::zero(self.var, order);
        }
        c.resize((order - self.start) as usize, Rational::zero());
        PowerSeries {
            var: self.var,
            start: self.start,
            coeffs: c,
            order,
        }
    }

    fn check_var(&self, other: &Self) -> Result<(), SeriesError> {
        if self.var != other.var {
            Err(SeriesError::VariableMismatch(self.var, other.var))
        } else {
            Ok(())
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.var, self.order);
        }
        PowerSeries {
            var: self.var,
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
            order: self.order,
        }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&int(k))
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        PowerSeries {
            var: self.var,
            start: self.start + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        let start = self.start.min(other.start).min(order);
        let coeffs = (start..order)
            .map(|n| match (self.c(n), other.c(n)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => Rational::zero(),
            })
            .collect();
        let mut s = PowerSeries {
            var: self.var,
            start,
            coeffs,
            order,
        };
        s.normalize();
        Ok(s)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.mul_with(other, Exec::default())
    }

    /// Product with an explicit execution policy for the convolution.
    pub fn mul_with(&self, other: &Self, exec: Exec) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        let order = (self.order + other.start).min(other.order + self.start);
        let start = (self.start + other.start).min(order);
        let len = (order - start).max(0) as usize;
        if self.is_zero() || other.is_zero() || len == 0 {
            return Ok(Self::zero(self.var, order));
        }
        let coeffs = convolve(&self.coeffs, &other.coeffs, len, exec);
        let mut s = PowerSeries {
            var: self.var,
            start,
            coeffs,
            order,
        };
        s.normalize();
        Ok(s)
    }

    /// Multiplicative inverse; the valuation flips sign.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let Some((v, _)) = self.leading() else {
            return Err(SeriesError::DivisionByZero(self.order));
        };
        let prec = (self.order - v) as usize;
        let (b, _den) = clear_denominators(&self.coeffs);
        // 1/(B/D) = D/B; with B integral, 1/B has coefficients N_n / B0^(n+1).
        let b0 = &b[0];
        let mut numer: Vec<BigInt> = Vec::with_capacity(prec);
        numer.push(BigInt::one());
        let mut b0_pows = vec![BigInt::one()];
        for n in 1..prec {
            b0_pows.push(&b0_pows[n - 1] * b0);
            let mut acc = BigInt::zero();
            for k in 1..=n.min(b.len() - 1) {
                if b[k].is_zero() {
                    continue;
                }
                acc += &b[k] * &numer[n - k] * &b0_pows[k - 1];
            }
            numer.push(-acc);
        }
        let d = Rational::from_integer(_den);
        let mut denom_pow = b0.clone();
        let mut coeffs = Vec::with_capacity(prec);
        for n in numer {
            coeffs.push(Rational::new(n, denom_pow.clone()) * &d);
            denom_pow *= b0;
        }
        Ok(PowerSeries::new(self.var, -v, coeffs, self.order - 2 * v))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        self.try_mul(&other.inverse()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self, SeriesError> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        if n == 0 {
            return Ok(Self::one(self.var, self.order.max(0)));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.try_mul(&base)?,
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result.expect("n > 0"))
    }

    /// Euler derivation `x d/dx` applied `repeat` times.
    pub fn euler_derive(&self, repeat: u32) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let n = int(self.start + i as i64);
                let mut f = Rational::one();
                for _ in 0..repeat {
                    f *= &n;
                }
                c * f
            })
            .collect();
        PowerSeries::new(self.var, self.start, coeffs, self.order)
    }

    /// `d/dx`; both valuation and order drop by one.
    pub fn plain_derive(&self) -> Self {
        self.euler_derive(1).shift(-1)
    }

    /// Formal antiderivative with zero constant term. Fails on an `x^-1` term.
    pub fn integrate(&self) -> Option<Self> {
        if self.c(-1).is_some_and(|c| !c.is_zero()) {
            return None;
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let n = self.start + i as i64 + 1;
                if n == 0 {
                    Rational::zero()
                } else {
                    c / int(n)
                }
            })
            .collect();
        Some(PowerSeries::new(
            self.var,
            self.start + 1,
            coeffs,
            self.order + 1,
        ))
    }

    /// `self(inner)`; `inner` must have positive valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        let vg = inner.min_exponent();
        if vg < 1 {
            return Err(SeriesError::InnerValuation(vg));
        }
        let var = inner.var;
        let sf = self.start;
        // self = x^sf * F(x), F known to relative precision pf.
        let pf = self.order - sf;
        let has_linear = self.coeffs.iter().skip(1).any(|c| !c.is_zero());
        let mut target = pf.saturating_mul(vg);
        if has_linear {
            target = target.min(inner.order);
        }
        let n_terms = (pf.min((target + vg - 1) / vg)).max(0) as usize;
        let n_terms = n_terms.min(self.coeffs.len());
        let len = target.max(0) as usize;
        let dense = inner.coeff_range(0, target);
        let coeffs = horner(&self.coeffs[..n_terms], &dense, len, Exec::default());
        let mut acc = Self::new(var, 0, coeffs, target);
        if sf != 0 {
            acc = acc.try_mul(&inner.pow(sf)?)?;
        }
        Ok(acc)
    }

    /// Series reversion by Newton iteration; `self` must have valuation 1.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        let a = self.check_revertible()?;
        let var = self.var;
        let target = self.order;
        let x = |o| Self::identity(var, o);
        let mut prec = 2.min(target);
        let mut g = Self::monomial(var, 1, a.recip(), prec);
        let deriv = self.plain_derive();
        while prec < target {
            prec = (2 * prec).min(target);
            let gx = g.extend_order(prec);
            let f_t = self.truncate(prec);
            let err = f_t.compose(&gx)?.try_sub(&x(prec))?;
            let slope = deriv.truncate(prec).compose(&gx)?;
            let corr = err.try_div(&slope)?;
            g = gx.try_sub(&corr)?.truncate(prec);
        }
        Ok(g.truncate(target))
    }

    /// Reversion by fixed-point substitution, one coefficient per pass.
    /// Quadratic cost in passes; kept as an independent cross-check.
    pub fn revert_naive(&self) -> Result<Self, SeriesError> {
        let a = self.check_revertible()?;
        let var = self.var;
        let target = self.order;
        let ainv = a.recip();
        // self(g) = x  <=>  g = (x - (self(g) - a g)) / a
        let nonlinear = self.try_sub(&Self::monomial(var, 1, a.clone(), target))?;
        let mut g = Self::monomial(var, 1, ainv.clone(), target);
        for _ in 1..target {
            let h = if nonlinear.is_zero() {
                Self::zero(var, target)
            } else {
                nonlinear.compose(&g)?
            };
            g = Self::identity(var, target).try_sub(&h)?.scale(&ainv);
        }
        Ok(g)
    }

    fn check_revertible(&self) -> Result<Rational, SeriesError> {
        match self.leading() {
            Some((1, a)) => Ok(a.clone()),
            other => Err(SeriesError::RevertValuation(other.map(|(v, _)| v))),
        }
    }

    /// `exp(self)`; needs valuation >= 1.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if self.start < 1 {
            return Err(SeriesError::ExpPrecondition(self.start));
        }
        let order = self.order;
        let n_max = order.max(0) as usize;
        // n h_n = sum_{k=1..n} k f_k h_{n-k}
        let f: Vec<Rational> = (0..n_max as i64)
            .map(|n| self.c(n).cloned().unwrap_or_else(Rational::zero))
            .collect();
        let mut h: Vec<Rational> = Vec::with_capacity(n_max);
        if n_max > 0 {
            h.push(Rational::one());
        }
        for n in 1..n_max {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if f[k].is_zero() {
                    continue;
                }
                acc += &f[k] * int(k as i64) * &h[n - k];
            }
            h.push(acc / int(n as i64));
        }
        Ok(PowerSeries::new(self.var, 0, h, order))
    }

    /// `log(self)`; needs constant term 1 (and no negative powers).
    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.start != 0 || !self.coeffs[0].is_one() {
            return Err(SeriesError::LogPrecondition);
        }
        let q = self.euler_derive(1).try_div(self)?;
        let coeffs = (1..q.order)
            .map(|n| q.c(n).cloned().unwrap_or_else(Rational::zero) / int(n))
            .collect();
        Ok(PowerSeries::new(self.var, 1, coeffs, q.order))
    }

    /// True if `self - other` vanishes on their common order.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.try_sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Exponent of the first coefficient (below `through`) whose denominator is not 1.
    pub fn first_non_integral(&self, through: i64) -> Option<i64> {
        self.terms()
            .take_while(|(n, _)| *n <= through)
            .find(|(_, c)| !c.denom().is_one())
            .map(|(n, _)| n)
    }

    /// Largest absolute coefficient exponent stored (for reports).
    pub fn max_abs_coeff(&self) -> Rational {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Truncated product of two coefficient runs via a common-denominator
/// integer convolution.
fn convolve(a: &[Rational], b: &[Rational], len: usize, exec: Exec) -> Vec<Rational> {
    let (ai, da) = clear_denominators(&a[..a.len().min(len)]);
    let (bi, db) = clear_denominators(&b[..b.len().min(len)]);
    let den = da * db;
    convolve_int(&ai, &bi, len, exec)
        .into_iter()
        .map(|n| Rational::new(n, den.clone()))
        .collect()
}

fn convolve_int(ai: &[BigInt], bi: &[BigInt], len: usize, exec: Exec) -> Vec<BigInt> {
    if ai.is_empty() || bi.is_empty() {
        return vec![BigInt::zero(); len];
    }
    par::map_range(exec, 0..len, |n| {
        let lo = n.saturating_sub(bi.len() - 1);
        let hi = n.min(ai.len() - 1);
        let mut acc = BigInt::zero();
        if lo <= hi {
            for i in lo..=hi {
                let (x, y) = (&ai[i], &bi[n - i]);
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
        }
        acc
    })
}

/// `Σ c_k g^k` truncated to `len` terms, for `g` given densely from `x^0`
/// with `g_0 = 0`. Runs over ℤ: with `g = G/D` and `c_k = C_k/E` the
/// Horner accumulator after step `k` is `A_k / (E D^(n-1-k))`, so only the
/// final coefficients are reduced.
fn horner(c: &[Rational], g: &[Rational], len: usize, exec: Exec) -> Vec<Rational> {
    let n = c.len();
    if n == 0 || len == 0 {
        return vec![Rational::zero(); len];
    }
    let (gi, d) = clear_denominators(g);
    let (ci, e) = clear_denominators(c);
    let mut acc = vec![BigInt::zero(); len];
    let mut d_pow = BigInt::one();
    for k in (0..n).rev() {
        if k + 1 < n {
            acc = convolve_int(&acc, &gi, len, exec);
            d_pow *= &d;
        }
        acc[0] += &ci[k] * &d_pow;
    }
    let den = e * d_pow;
    acc.into_iter()
        .map(|a| Rational::new(a, den.clone()))
        .collect()
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "{}*{}", format_rational(c), self.var)?,
                _ => write!(f, "{}*{}^{}", format_rational(c), self.var, n)?,
            }
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O({}^{})", self.var, self.order)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            var: self.var,
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }
}

impl Neg for PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&PowerSeries> for &PowerSeries {
            type Output = PowerSeries;
            /// Panics on a variable mismatch; use the `try_` form to handle it.
            fn $m(self, rhs: &PowerSeries) -> PowerSeries {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<PowerSeries> for PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: PowerSeries) -> PowerSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PowerSeries> for PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: &PowerSeries) -> PowerSeries {
                (&self).$m(rhs)
            }
        }
        impl $tr<PowerSeries> for &PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: PowerSeries) -> PowerSeries {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    fn z(c: &[i64], order: i64) -> PowerSeries {
        PowerSeries::from_i64(Var::Z, 0, c, order)
    }

    #[test]
    fn difference_of_squares() {
        let a = z(&[1, 1], 10);
        let b = z(&[1, -1], 10);
        assert_eq!(&a * &b, z(&[1, 0, -1], 10));
    }

    #[test]
    fn multiplicative_identity() {
        let a = z(&[1, 6, 90], 3);
        assert_eq!(&a * &PowerSeries::one(Var::Z, 3), a);
    }

    #[test]
    fn laurent_product() {
        let a = PowerSeries::from_i64(Var::Q, 1, &[1, -15], 3);
        let b = PowerSeries::from_i64(Var::Q, -1, &[1], 10);
        let p = &a * &b;
        assert_eq!(p.valuation(), Some(0));
        assert_eq!(p, PowerSeries::from_i64(Var::Q, 0, &[1, -15], 2));
    }

    #[test]
    fn mismatched_variables() {
        let a = z(&[1], 4);
        let b = PowerSeries::one(Var::Q, 4);
        assert_eq!(
            a.try_add(&b),
            Err(SeriesError::VariableMismatch(Var::Z, Var::Q))
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn division() {
        let one = z(&[1], 8);
        let geo = one.try_div(&z(&[1, -1], 8)).unwrap();
        assert_eq!(geo, z(&[1; 8], 8));
        assert_eq!(
            one.try_div(&PowerSeries::zero(Var::Z, 8)),
            Err(SeriesError::DivisionByZero(8))
        );
        // 1/(2z + z^2) = 1/(2z) - 1/4 + z/8 ...
        let inv = PowerSeries::from_i64(Var::Z, 1, &[2, 1], 6)
            .inverse()
            .unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.coeff(-1), rat(1, 2));
        assert_eq!(inv.coeff(0), rat(-1, 4));
        assert_eq!(inv.coeff(1), rat(1, 8));
        assert_eq!(inv.order(), 4);
    }

    #[test]
    fn composition_examples() {
        let f = z(&[1, 6, 90, 1680], 4);
        assert_eq!(f.compose(&PowerSeries::identity(Var::Z, 4)).unwrap(), f);
        let geo = z(&[1; 10], 10);
        let inner = PowerSeries::from_i64(Var::Q, 1, &[1, 1], 4);
        // 1/(1 - q - q^2): Fibonacci numbers
        let c = geo.compose(&inner).unwrap();
        assert_eq!(c, PowerSeries::from_i64(Var::Q, 0, &[1, 1, 2, 3], 4));
        assert_eq!(
            f.compose(&z(&[1, 1], 4)),
            Err(SeriesError::InnerValuation(0))
        );
    }

    #[test]
    fn reversion_examples() {
        let id = PowerSeries::identity(Var::Z, 12);
        assert_eq!(id.revert().unwrap(), id);
        let f = PowerSeries::from_i64(Var::Z, 1, &[1, 1], 5);
        assert_eq!(
            f.revert().unwrap(),
            PowerSeries::from_i64(Var::Z, 1, &[1, -1, 2, -5], 5)
        );
        assert_eq!(f.revert_naive().unwrap(), f.revert().unwrap());
        assert!(z(&[0, 0, 1], 5).revert().is_err());
        assert!(z(&[1, 1], 5).revert().is_err());
    }

    #[test]
    fn exp_log_examples() {
        assert_eq!(
            PowerSeries::zero(Var::Q, 6).exp().unwrap(),
            PowerSeries::one(Var::Q, 6)
        );
        let f = PowerSeries::from_i64(Var::Q, 1, &[1, 3], 9);
        assert_eq!(f.exp().unwrap().log().unwrap(), f);
        assert!(z(&[1, 1], 5).exp().is_err());
        assert!(z(&[2, 1], 5).log().is_err());
    }

    #[test]
    fn derivations() {
        let q = PowerSeries::identity(Var::Q, 5);
        assert_eq!(q.euler_derive(1), q);
        assert!(PowerSeries::one(Var::Q, 5).euler_derive(1).is_zero());
        let f = PowerSeries::from_i64(Var::Q, 1, &[1, -770], 5);
        assert_eq!(
            f.euler_derive(1),
            PowerSeries::from_i64(Var::Q, 1, &[1, -1540], 5)
        );
        assert_eq!(
            z(&[0, 0, 1], 5).plain_derive(),
            PowerSeries::from_i64(Var::Z, 1, &[2], 4)
        );
        assert!(z(&[7], 5).plain_derive().is_zero());
        assert_eq!(z(&[1, 6, 90], 3).plain_derive(), z(&[6, 180], 2));
    }

    #[test]
    fn unknown_tail_is_never_read() {
        let f = z(&[1, 2], 2);
        assert!(f.try_coeff(2).is_err());
        assert_eq!(f.coeff(-3), Rational::zero());
    }

    #[test]
    fn order_propagation() {
        // (1 + O(z^5)) * z^2 is known to z^7.
        let a = z(&[1], 5);
        let b = PowerSeries::monomial(Var::Z, 2, int(1), 100);
        assert_eq!((&a * &b).order(), 7);
        assert_eq!((&a + &b).order(), 5);
    }
}
