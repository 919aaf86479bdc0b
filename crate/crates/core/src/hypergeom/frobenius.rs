//! Frobenius solutions at the point of maximal unipotent monodromy.
//!
//! The deformed solution is `z^H Σ_l a_l(H) z^l mod H^(s-1)` with
//! `a_l(H) = Π_{k=1}^{sl}(sH+k) / Π_{k=1}^{l}(H+k)^s`. Each `a_l` is built
//! from `a_{l-1}` by one jet product, so cost is linear in the order.

use super::{operator::DeltaOperator, HypergeomError};
use crate::series::rational::{format_rational, int, Rational};
use crate::series::{HJet, LogSeries, PowerSeries, Var};
use num_traits::{One, Signed, Zero};

/// The analytic pieces `g_0..g_{s-2}`; `f_j = Σ_{i<=j} g_i log^(j-i) z/(j-i)!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusBasis {
    pub s: u32,
    pub g: Vec<PowerSeries>,
}

impl FrobeniusBasis {
    pub fn order(&self) -> i64 {
        self.g[0].order()
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    /// `f_j` as a log-series.
    pub fn f(&self, j: usize) -> LogSeries {
        LogSeries::new((0..=j).map(|k| self.g[j - k].clone()).collect())
    }

    pub fn solutions(&self) -> Vec<LogSeries> {
        (0..self.g.len()).map(|j| self.f(j)).collect()
    }

    /// The operator the basis solves.
    pub fn operator(&self) -> DeltaOperator {
        DeltaOperator::mirror(self.s).expect("s >= 3 by construction")
    }
}

/// `f_0..f_{s-2}` to `O(z^order)`.
pub fn frobenius_basis(s: u32, order: usize) -> Result<FrobeniusBasis, HypergeomError> {
    if s < 3 {
        return Err(HypergeomError::SmallS(s));
    }
    let len = (s - 1) as usize;
    let si = s as i64;
    let mut g: Vec<Vec<Rational>> = vec![Vec::with_capacity(order); len];
    let mut a = HJet::one(len);
    for l in 0..order {
        if l > 0 {
            let li = l as i64;
            for k in (si * (li - 1) + 1)..=(si * li) {
                a = &a * &HJet::affine(si, k, len);
            }
            let inv = HJet::recip_shift(&int(li), len).pow(s);
            a = &a * &inv;
        }
        for (i, gi) in g.iter_mut().enumerate() {
            gi.push(a.coeff(i).clone());
        }
    }
    let g = g
        .into_iter()
        .map(|c| PowerSeries::new(Var::Z, 0, c, order as i64))
        .collect();
    Ok(FrobeniusBasis { s, g })
}

/// `pFq(upper; lower; scale·z)` to `O(z^order)`.
pub fn pfq_series(
    upper: &[Rational],
    lower: &[Rational],
    scale: &Rational,
    order: usize,
) -> Result<PowerSeries, HypergeomError> {
    for b in lower {
        if b.is_integer() && !b.is_positive() {
            return Err(HypergeomError::InvalidLowerParameter(format_rational(b)));
        }
    }
    let mut coeffs = Vec::with_capacity(order);
    let mut term = Rational::one();
    for l in 0..order {
        if l > 0 {
            let lm1 = int(l as i64 - 1);
            let mut ratio = scale / int(l as i64);
            for a in upper {
                ratio *= a + &lm1;
            }
            for b in lower {
                ratio /= b + &lm1;
            }
            term *= ratio;
        }
        coeffs.push(term.clone());
        if term.is_zero() {
            break;
        }
    }
    Ok(PowerSeries::new(Var::Z, 0, coeffs, order as i64))
}

/// `f_0^(s=4) - ₂F₁(a, b; 1; 256 z)²`.
pub fn symmetric_square_residual(
    a: &Rational,
    b: &Rational,
    order: usize,
) -> Result<PowerSeries, HypergeomError> {
    let f0 = frobenius_basis(4, order)?.g[0].clone();
    let h = pfq_series(
        &[a.clone(), b.clone()],
        &[Rational::one()],
        &int(256),
        order,
    )?;
    Ok(f0.try_sub(&h.try_mul(&h)?)?)
}

/// Residual of the identity `f_0 = ₂F₁(1/8, 3/8; 1; 4⁴z)²` for `s = 4`.
pub fn symmetric_square_check(order: usize) -> Result<PowerSeries, HypergeomError> {
    use crate::series::rational::rat;
    symmetric_square_residual(&rat(1, 8), &rat(3, 8), order)
}
