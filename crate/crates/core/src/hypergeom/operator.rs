//! Linear differential operators in δ-form and d/dz-form.

use super::poly::{Poly, RationalFunction};
use super::HypergeomError;
use crate::series::rational::{big, int, Rational};
#[cfg(test)]
use crate::series::Var;
use crate::series::{LogSeries, PowerSeries, SeriesError};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `Σ_k c_k(z) δ^k` with polynomial coefficients, `δ = z d/dz`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaOperator {
    coeffs: Vec<Poly>,
}

/// Named operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// `δ^(s-1) - s z (sδ+1)(sδ+2)⋯(sδ+s-1)`.
    Mirror(u32),
    /// `s = 3`.
    S3,
    /// `s = 4`.
    S4,
    /// `s = 5`, the quintic operator.
    Quintic,
    /// `δ² - 4z(8δ+1)(8δ+3)`, whose symmetric square is the `s = 4` operator.
    Eighth,
}

impl DeltaOperator {
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        DeltaOperator { coeffs }
    }

    pub fn build(kind: OperatorKind) -> Result<Self, HypergeomError> {
        match kind {
            OperatorKind::Mirror(s) => Self::mirror(s),
            OperatorKind::S3 => Self::mirror(3),
            OperatorKind::S4 => Self::mirror(4),
            OperatorKind::Quintic => Self::mirror(5),
            OperatorKind::Eighth => Ok(Self::delta_power_minus(2, &int(4), &[(8, 1), (8, 3)])),
        }
    }

    pub fn mirror(s: u32) -> Result<Self, HypergeomError> {
        if s < 3 {
            return Err(HypergeomError::SmallS(s));
        }
        let s = s as i64;
        let factors: Vec<(i64, i64)> = (1..s).map(|k| (s, k)).collect();
        Ok(Self::delta_power_minus((s - 1) as usize, &int(s), &factors))
    }

    /// `δ^m - c z Π (a δ + b)`.
    fn delta_power_minus(m: usize, c: &Rational, factors: &[(i64, i64)]) -> Self {
        // product as a polynomial in δ
        let mut prod = vec![Rational::one()];
        for &(a, b) in factors {
            let mut next = vec![Rational::zero(); prod.len() + 1];
            for (k, p) in prod.iter().enumerate() {
                next[k] += p * int(b);
                next[k + 1] += p * int(a);
            }
            prod = next;
        }
        let n = m.max(prod.len() - 1) + 1;
        let mut coeffs = vec![Poly::zero(); n];
        coeffs[m] = Poly::one();
        for (k, p) in prod.iter().enumerate() {
            let term = Poly::monomial(1, -(p * c));
            coeffs[k] = &coeffs[k] + &term;
        }
        Self::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Applies the operator to a log-series (in `z`).
    pub fn apply(&self, f: &LogSeries) -> Result<LogSeries, SeriesError> {
        let mut acc: Option<LogSeries> = None;
        let mut d = f.clone();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                d = d.euler_derive();
            }
            if c.is_zero() {
                continue;
            }
            let cs = c.to_series(f.var(), f.order() + c.degree().unwrap_or(0) as i64 + 1);
            let term = d.mul_series(&cs)?;
            acc = Some(match acc {
                None => term,
                Some(a) => a.try_add(&term)?,
            });
        }
        Ok(acc.unwrap_or_else(|| LogSeries::zero(f.var(), f.order())))
    }

    /// Converts to `Σ_j b_j(z) (d/dz)^j` via `δ^k = Σ_j S(k,j) z^j D^j`.
    pub fn to_dz(&self) -> DzOperator {
        let m = self.order();
        let stirling = stirling2(m);
        let coeffs = (0..=m)
            .map(|j| {
                let mut acc = Poly::zero();
                for (k, c) in self.coeffs.iter().enumerate() {
                    let s = &stirling[k][j];
                    if !s.is_zero() {
                        acc = &acc + &c.scale(&big(s.clone()));
                    }
                }
                acc.shift(j)
            })
            .collect();
        DzOperator::new(coeffs)
    }
}

/// `Σ_j b_j(z) D^j` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DzOperator {
    coeffs: Vec<Poly>,
}

impl DzOperator {
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        DzOperator { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Back to δ-form using `z^k D^k = δ(δ-1)⋯(δ-k+1)`; `None` if some
    /// `b_k` is not divisible by `z^k`.
    pub fn to_delta(&self) -> Option<DeltaOperator> {
        let m = self.order();
        let stirling = stirling1(m);
        let mut coeffs = vec![Poly::zero(); m + 1];
        for (k, b) in self.coeffs.iter().enumerate() {
            let reduced = b.unshift(k)?;
            for (i, s) in stirling[k].iter().enumerate() {
                if !s.is_zero() {
                    coeffs[i] = &coeffs[i] + &reduced.scale(&big(s.clone()));
                }
            }
        }
        Some(DeltaOperator::new(coeffs))
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> MonicOperator {
        let lead = self.coeffs.last().expect("nonempty").clone();
        MonicOperator::new(
            self.coeffs
                .iter()
                .map(|c| RationalFunction::new(c.clone(), lead.clone()))
                .collect(),
        )
    }
}

/// `Σ_j a_j(z) D^j` with rational-function coefficients; `a_m = 1` when built
/// by [`DzOperator::monic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicOperator {
    coeffs: Vec<RationalFunction>,
}

impl MonicOperator {
    pub fn new(coeffs: Vec<RationalFunction>) -> Self {
        MonicOperator { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &RationalFunction {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    /// Applies to a log-series in `z`, expanding coefficients as Laurent series.
    pub fn apply(&self, f: &LogSeries) -> Result<LogSeries, SeriesError> {
        let mut acc: Option<LogSeries> = None;
        let mut d = f.clone();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                d = d.plain_derive();
            }
            if c.is_zero() {
                continue;
            }
            let low = d
                .parts()
                .iter()
                .map(PowerSeries::min_exponent)
                .min()
                .unwrap_or(0);
            let cs = c.to_series(
                f.var(),
                f.order() + 2 * self.order() as i64 + 4 + (-low).max(0),
            )?;
            let term = d.mul_series(&cs)?;
            acc = Some(match acc {
                None => term,
                Some(a) => a.try_add(&term)?,
            });
        }
        Ok(acc.unwrap_or_else(|| LogSeries::zero(f.var(), f.order())))
    }

    /// Applies to `z^β · h` and returns the cofactor of `z^β`, i.e. the
    /// operator is run with `D` replaced by `D + β/z`.
    pub fn apply_twisted(&self, beta: &Rational, h: &LogSeries) -> Result<LogSeries, SeriesError> {
        let mut acc: Option<LogSeries> = None;
        let mut d = h.clone();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                d = d.plain_derive().try_add(&d.shift(-1).scale(beta))?;
            }
            if c.is_zero() {
                continue;
            }
            let low = d
                .parts()
                .iter()
                .map(PowerSeries::min_exponent)
                .min()
                .unwrap_or(0);
            let cs = c.to_series(
                h.var(),
                h.order() + 2 * self.order() as i64 + 4 + (-low).max(0),
            )?;
            let term = d.mul_series(&cs)?;
            acc = Some(match acc {
                None => term,
                Some(a) => a.try_add(&term)?,
            });
        }
        Ok(acc.unwrap_or_else(|| LogSeries::zero(h.var(), h.order())))
    }

    /// Conjugation by a gauge factor `w` with `w'/w = λ`: returns the
    /// operator `v ↦ L[w v] / w`.
    pub fn conjugate(&self, lambda: &RationalFunction) -> MonicOperator {
        let m = self.order();
        // ω_n = w^(n) / w, with ω_{n+1} = ω_n' + λ ω_n
        let mut omega = vec![RationalFunction::constant(Rational::one())];
        for n in 0..m {
            let next = &omega[n].derive() + &(lambda * &omega[n]);
            omega.push(next);
        }
        let coeffs = (0..=m)
            .map(|i| {
                let mut acc = RationalFunction::zero();
                for k in i..=m {
                    let c = big(crate::series::rational::binomial(k as u64, i as u64));
                    let term = &self.coeffs[k] * &omega[k - i].scale(&c);
                    acc = &acc + &term;
                }
                acc
            })
            .collect();
        MonicOperator::new(coeffs)
    }
}

/// Stirling numbers of the second kind `S(k, j)` for `k, j <= m`.
fn stirling2(m: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); m + 1]; m + 1];
    s[0][0] = BigInt::one();
    for k in 1..=m {
        for j in 1..=k {
            s[k][j] = &s[k - 1][j - 1] + BigInt::from(j) * &s[k - 1][j];
        }
    }
    s
}

/// Signed Stirling numbers of the first kind: `x(x-1)⋯(x-k+1) = Σ s(k,i) x^i`.
fn stirling1(m: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); m + 1]; m + 1];
    s[0][0] = BigInt::one();
    for k in 1..=m {
        for i in 1..=k {
            s[k][i] = &s[k - 1][i - 1] - BigInt::from(k - 1) * &s[k - 1][i];
        }
    }
    s
}

impl DeltaOperator {
    /// Applies to a plain series.
    pub fn apply_series(&self, f: &PowerSeries) -> Result<LogSeries, SeriesError> {
        self.apply(&LogSeries::from(f.clone()))
    }
}
