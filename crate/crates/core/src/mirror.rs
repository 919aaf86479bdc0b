//! Mirror maps `q(z) = z exp(g₁/g₀)` and their inverses.

use crate::hypergeom::{frobenius_basis, FrobeniusBasis, HypergeomError};
use crate::series::rational::{int, Rational};
use crate::series::{PowerSeries, SeriesError, Var};
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MirrorError {
    #[error(transparent)]
    Hypergeom(#[from] HypergeomError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("identity is only available for s in {{3, 4}}, got {0}")]
    UnsupportedS(u32),
    #[error("requested exponent {through} but the series is only known below {order}")]
    RangeExceedsOrder { through: i64, order: i64 },
}

/// Everything the mirror pipeline produces for one `s`, all to `O(·^order)`.
#[derive(Debug, Clone)]
pub struct MirrorData {
    pub s: u32,
    pub order: i64,
    pub basis: FrobeniusBasis,
    /// `q(z)`, valuation 1 in `z`.
    pub q_of_z: PowerSeries,
    /// `z(q)`, valuation 1 in `q`, leading coefficient 1.
    pub z_of_q: PowerSeries,
    /// `f₀(z(q))`.
    pub f0_tilde: PowerSeries,
}

impl MirrorData {
    /// The unit series `q(z)/z = exp(g₁/g₀)`.
    pub fn q_mantissa(&self) -> PowerSeries {
        self.q_of_z.shift(-1)
    }

    /// `δ_q z / z`.
    pub fn log_derivative(&self) -> Result<PowerSeries, SeriesError> {
        self.z_of_q.euler_derive(1).try_div(&self.z_of_q)
    }

    /// `1 / (1 - s^s z(q))`, by composing the geometric series.
    pub fn conifold_factor(&self) -> Result<PowerSeries, SeriesError> {
        let ss = int(self.s as i64).pow(self.s as i32);
        let geo = PowerSeries::new(
            Var::Z,
            0,
            vec![Rational::one(); self.order as usize],
            self.order,
        );
        geo.compose(&self.z_of_q.scale(&ss))
    }

    /// A `z`-series pulled back along the mirror map.
    pub fn pull_back(&self, f: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        f.compose(&self.z_of_q)
    }
}

/// Builds `q(z)`, `z(q)` and `f̃₀` to `O(·^order)`.
pub fn mirror_pipeline(s: u32, order: usize) -> Result<MirrorData, MirrorError> {
    let basis = frobenius_basis(s, order)?;
    let ratio = basis.g[1].try_div(&basis.g[0])?;
    let q_of_z = ratio.exp()?.shift(1).truncate(order as i64);
    let z_of_q = q_of_z.revert()?.with_var(Var::Q);
    let f0_tilde = basis.g[0].compose(&z_of_q)?;
    Ok(MirrorData {
        s,
        order: order as i64,
        basis,
        q_of_z,
        z_of_q,
        f0_tilde,
    })
}

/// Outcome of an integrality scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Integrality {
    Pass,
    FirstFailure { exponent: i64 },
}

/// Checks that every coefficient with exponent `<= through` is an integer.
pub fn integrality_report(f: &PowerSeries, through: i64) -> Result<Integrality, MirrorError> {
    if through >= f.order() {
        return Err(MirrorError::RangeExceedsOrder {
            through,
            order: f.order(),
        });
    }
    Ok(match f.first_non_integral(through) {
        None => Integrality::Pass,
        Some(exponent) => Integrality::FirstFailure { exponent },
    })
}

/// `f̃₀² - (δ_q z / z)^exponent / (1 - s^s z(q))`.
pub fn hodge_residual(data: &MirrorData, exponent: i64) -> Result<PowerSeries, MirrorError> {
    let lhs = data.f0_tilde.try_mul(&data.f0_tilde)?;
    let rhs = data
        .log_derivative()?
        .pow(exponent)?
        .try_mul(&data.conifold_factor()?)?;
    Ok(lhs.try_sub(&rhs)?)
}

/// Residual of `f̃₀² = (δ_q z/z)^(s-2) / (1 - s^s z(q))` for `s = 3, 4`.
pub fn verify_hodge_identity(s: u32, order: usize) -> Result<PowerSeries, MirrorError> {
    if !(3..=4).contains(&s) {
        return Err(MirrorError::UnsupportedS(s));
    }
    let data = mirror_pipeline(s, order)?;
    hodge_residual(&data, s as i64 - 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    #[test]
    fn quartic_q_of_z() {
        let d = mirror_pipeline(4, 5).unwrap();
        assert_eq!(
            d.q_of_z,
            PowerSeries::from_i64(Var::Z, 1, &[1, 104, 15188, 2585184], 5)
        );
    }

    #[test]
    fn quintic_mirror_map_and_f0() {
        let d = mirror_pipeline(5, 6).unwrap();
        assert_eq!(
            d.z_of_q,
            PowerSeries::from_i64(Var::Q, 1, &[1, -770, 171525, -81623000, -35423171250], 6)
        );
        assert_eq!(
            d.f0_tilde.truncate(5),
            PowerSeries::from_i64(Var::Q, 0, &[1, 120, 21000, 14115000, 13414125000], 5)
        );
    }

    #[test]
    fn integrality_examples() {
        let d = mirror_pipeline(3, 8).unwrap();
        assert_eq!(integrality_report(&d.z_of_q, 7).unwrap(), Integrality::Pass);
        let f = PowerSeries::new(Var::Q, 0, vec![int(1), rat(1, 2)], 3);
        assert_eq!(
            integrality_report(&f, 2).unwrap(),
            Integrality::FirstFailure { exponent: 1 }
        );
        let g1 = frobenius_basis(5, 6).unwrap().g[1].clone();
        assert_eq!(
            integrality_report(&g1, 5).unwrap(),
            Integrality::FirstFailure { exponent: 3 }
        );
        assert!(integrality_report(&g1, 6).is_err());
    }

    #[test]
    fn hodge_identities() {
        assert!(verify_hodge_identity(3, 20).unwrap().is_zero());
        assert!(verify_hodge_identity(4, 20).unwrap().is_zero());
        assert_eq!(
            verify_hodge_identity(5, 8),
            Err(MirrorError::UnsupportedS(5))
        );
        let d = mirror_pipeline(3, 10).unwrap();
        assert_eq!(hodge_residual(&d, 2).unwrap().valuation(), Some(1));
    }

    #[test]
    fn reversion_round_trip() {
        for s in 3..=5 {
            let d = mirror_pipeline(s, 16).unwrap();
            let id = d.q_of_z.compose(&d.z_of_q).unwrap();
            assert_eq!(id, PowerSeries::identity(Var::Q, 16));
        }
    }
}
