//! Normal forms of second- and fourth-order operators.

use super::frobenius::FrobeniusBasis;
use super::operator::{DeltaOperator, MonicOperator};
use super::poly::RationalFunction;
use super::HypergeomError;
use crate::series::rational::{int, Rational};
use crate::series::{LogSeries, PowerSeries, SeriesError, Var};

/// For `y'' + p y' + r y = 0`, the potential `Q = r - p²/4 - p'/2`. The ratio
/// `t` of two solutions then satisfies `{t, z} = 2Q`.
pub fn second_order_normal_form(op: &DeltaOperator) -> Result<RationalFunction, HypergeomError> {
    if op.order() != 2 {
        return Err(HypergeomError::WrongOrder {
            expected: 2,
            got: op.order(),
        });
    }
    let m = op.to_dz().monic();
    Ok(potential(m.coeff(1), m.coeff(0)))
}

fn potential(p: &RationalFunction, r: &RationalFunction) -> RationalFunction {
    let quarter = Rational::new(1.into(), 4.into());
    let half = Rational::new(1.into(), 2.into());
    &(r - &(p * p).scale(&quarter)) - &p.derive().scale(&half)
}

/// Result of gauging away the third-derivative term of a fourth-order operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourthOrderNormalForm {
    /// Coefficient of `y''`.
    pub q2: RationalFunction,
    /// Coefficient of `y'`; equals `dQ₂/dz` for operators producing mirror maps.
    pub q1: RationalFunction,
    /// Coefficient of `y`.
    pub q0: RationalFunction,
    /// Logarithmic derivative `w'/w` of the gauge factor, `y = w v`.
    pub gauge: RationalFunction,
    pub reduced: MonicOperator,
}

impl FourthOrderNormalForm {
    /// Whether the reduced form is `y'''' + Q₂ y'' + Q₂' y' + Q₀ y`.
    pub fn is_self_adjoint_type(&self) -> bool {
        self.q1 == self.q2.derive()
    }

    /// Splits the gauge as `w = z^α · u(z)` with `u(0) = 1`, returning `α` and `u`
    /// to `O(z^order)`.
    pub fn gauge_factor(&self, order: i64) -> Result<(Rational, PowerSeries), SeriesError> {
        let lam = self.gauge.to_series(Var::Z, order)?;
        let alpha = lam.coeff(-1);
        let regular = lam.try_sub(&PowerSeries::monomial(Var::Z, -1, alpha.clone(), order))?;
        let u = regular.integrate().expect("no residue left").exp()?;
        Ok((alpha, u))
    }

    /// Runs the reduced operator on `f_j / w` for every basis element. The
    /// factor `z^-α` is carried symbolically, so each residual is the cofactor
    /// of `z^-α` and vanishes iff the reduction is correct.
    pub fn residuals(&self, basis: &FrobeniusBasis) -> Result<Vec<LogSeries>, SeriesError> {
        let order = basis.order();
        let (alpha, u) = self.gauge_factor(order + 8)?;
        basis
            .solutions()
            .iter()
            .map(|f| {
                let h = f.div_series(&u)?;
                self.reduced.apply_twisted(&-alpha.clone(), &h)
            })
            .collect()
    }
}

/// Substitutes `y = w v` with `w'/w = -a₃/4`, killing the `v'''` term.
pub fn fourth_order_normal_form(
    op: &DeltaOperator,
) -> Result<FourthOrderNormalForm, HypergeomError> {
    if op.order() != 4 {
        return Err(HypergeomError::WrongOrder {
            expected: 4,
            got: op.order(),
        });
    }
    let m = op.to_dz().monic();
    let gauge = m.coeff(3).scale(&-Rational::new(1.into(), 4.into()));
    let reduced = m.conjugate(&gauge);
    debug_assert!(reduced.coeff(3).is_zero());
    debug_assert_eq!(reduced.coeff(4), &RationalFunction::constant(int(1)));
    Ok(FourthOrderNormalForm {
        q2: reduced.coeff(2).clone(),
        q1: reduced.coeff(1).clone(),
        q0: reduced.coeff(0).clone(),
        gauge,
        reduced,
    })
}
