//! Schwarzian derivatives and the nonlinear equations satisfied by the
//! mirror map and the Yukawa coupling.

use super::OdeError;
use crate::hypergeom::{
    second_order_normal_form, DeltaOperator, OperatorKind, Poly, RationalFunction,
};
use crate::mirror::{mirror_pipeline, MirrorData};
use crate::series::rational::{int, rat, Rational};
use crate::series::{PowerSeries, SeriesError};
use crate::yukawa::yukawa_from_mirror;

/// Extra pipeline terms so that divisions by `z'` and the double poles of
/// the rational functions still leave the requested order.
const SLACK: usize = 8;

/// `{z, t} = z'''/z' - (3/2)(z''/z')²` with `' = δ_q`.
pub fn schwarzian(z: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    let z1 = z.euler_derive(1);
    let z2 = z.euler_derive(2);
    let z3 = z.euler_derive(3);
    let a = z3.try_div(&z1)?;
    let b = z2.try_div(&z1)?;
    a.try_sub(&b.try_mul(&b)?.scale(&rat(3, 2)))
}

/// `2 Q(z) z'² + {z, t}`.
pub fn schwarzian_residual(
    z: &PowerSeries,
    q: &RationalFunction,
) -> Result<PowerSeries, SeriesError> {
    let z1 = z.euler_derive(1);
    let lhs = q.eval_series(z)?.try_mul(&z1.try_mul(&z1)?)?.scale(&int(2));
    lhs.try_add(&schwarzian(z)?)
}

/// The second-order operator whose ratio of solutions is `t` (up to scale).
/// For `s = 4` this is the eighth-order-parameter operator whose symmetric
/// square is the `s = 4` equation.
pub fn schwarzian_operator(s: u32) -> Result<DeltaOperator, OdeError> {
    let kind = match s {
        3 => OperatorKind::S3,
        4 => OperatorKind::Eighth,
        _ => return Err(OdeError::UnsupportedS(s)),
    };
    Ok(DeltaOperator::build(kind)?)
}

fn checked(res: PowerSeries, order: usize) -> Result<PowerSeries, OdeError> {
    if res.order() < order as i64 {
        return Err(OdeError::InsufficientOrder {
            needed: order as i64,
            got: res.order(),
        });
    }
    Ok(res.truncate(order as i64))
}

/// Residual of `2Q(z)(dz/dt)² + {z,t} = 0` for the `s = 3, 4` mirror maps.
pub fn verify_schwarzian_equation(s: u32, order: usize) -> Result<PowerSeries, OdeError> {
    let q = second_order_normal_form(&schwarzian_operator(s)?)?;
    let data = mirror_pipeline(s, order + SLACK)?;
    checked(schwarzian_residual(&data.z_of_q, &q)?, order)
}

/// `Q(z) = (5⁸/4)(25 - 34x + 24x²) / (x²(1-x)²)` with `x = 5⁵ z`.
pub fn quintic_q() -> RationalFunction {
    let x = Poly::from_i64(&[0, 3125]);
    let one_minus = &Poly::one() - &x;
    let num =
        Poly::new(vec![int(25), int(-34 * 3125), int(24 * 3125 * 3125)]).scale(&rat(390625, 4));
    let den = &(&(&x * &x) * &one_minus) * &one_minus;
    RationalFunction::new(num, den)
}

/// `Q̃(z) = -(5750z + 63671875z² + 19531250000z³)/(1 - 3125z)⁴`.
pub fn quintic_q_tilde() -> RationalFunction {
    let num = Poly::from_i64(&[0, -5750, -63671875, -19531250000]);
    let base = Poly::from_i64(&[1, -3125]);
    let den = (0..4).fold(Poly::one(), |acc, _| &acc * &base);
    RationalFunction::new(num, den)
}

/// `u', u'', …, u^(n)` for `u = log K`, `' = δ_q`, without forming `log K`.
pub fn log_derivatives(k: &PowerSeries, n: usize) -> Result<Vec<PowerSeries>, SeriesError> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return Ok(out);
    }
    out.push(k.euler_derive(1).try_div(k)?);
    for i in 1..n {
        let next = out[i - 1].euler_derive(1);
        out.push(next);
    }
    Ok(out)
}

/// `2Q(z)z'² + {z,t} - (2/5)(log K)'' + (1/10)((log K)')²`.
pub fn z_equation_residual(
    data: &MirrorData,
    k: &PowerSeries,
    q: &RationalFunction,
) -> Result<PowerSeries, SeriesError> {
    let u = log_derivatives(k, 2)?;
    let rhs = u[1]
        .scale(&rat(2, 5))
        .try_sub(&u[0].try_mul(&u[0])?.scale(&rat(1, 10)))?;
    schwarzian_residual(&data.z_of_q, q)?.try_sub(&rhs)
}

pub fn verify_z_equation(order: usize) -> Result<PowerSeries, OdeError> {
    let data = mirror_pipeline(5, order + SLACK)?;
    let k = yukawa_from_mirror(&data)?;
    checked(z_equation_residual(&data, &k, &quintic_q())?, order)
}

/// Coefficients of the right-hand side of the `Q̃` equation, in the order
/// `K'⁴, K K'² K'', K² K''², K² K' K''', K³ K''''`.
pub const Q_TILDE_COEFFS: [i64; 5] = [175, -280, 49, 70, -10];

/// `Q̃(z)(z'/z)⁴ - (Σ c_i · monomial_i)/K⁴` with the given coefficients.
pub fn q_tilde_residual_with(
    data: &MirrorData,
    k: &PowerSeries,
    q_tilde: &RationalFunction,
    coeffs: &[i64; 5],
) -> Result<PowerSeries, SeriesError> {
    let d: Vec<PowerSeries> = (1..=4).map(|n| k.euler_derive(n)).collect();
    let k2 = k.try_mul(k)?;
    let k3 = k2.try_mul(k)?;
    let d1sq = d[0].try_mul(&d[0])?;
    let monomials = [
        d1sq.try_mul(&d1sq)?,
        k.try_mul(&d1sq)?.try_mul(&d[1])?,
        k2.try_mul(&d[1])?.try_mul(&d[1])?,
        k2.try_mul(&d[0])?.try_mul(&d[2])?,
        k3.try_mul(&d[3])?,
    ];
    let mut num = PowerSeries::zero(k.var(), k.order());
    for (m, &c) in monomials.iter().zip(coeffs) {
        num = num.try_add(&m.scale_i64(c))?;
    }
    let rhs = num.try_div(&k2.try_mul(&k2)?)?;
    let zz = data.log_derivative()?;
    let lhs = q_tilde.eval_series(&data.z_of_q)?.try_mul(&zz.pow(4)?)?;
    lhs.try_sub(&rhs)
}

pub fn q_tilde_residual(data: &MirrorData, k: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    q_tilde_residual_with(data, k, &quintic_q_tilde(), &Q_TILDE_COEFFS)
}

pub fn verify_q_tilde_equation(order: usize) -> Result<PowerSeries, OdeError> {
    let data = mirror_pipeline(5, order + SLACK)?;
    let k = yukawa_from_mirror(&data)?;
    checked(q_tilde_residual(&data, &k)?, order)
}

/// Applies `t ↦ (a t + b)/(c t + d)` to a series (Möbius map on values).
pub fn mobius(z: &PowerSeries, m: [&Rational; 4]) -> Result<PowerSeries, SeriesError> {
    let [a, b, c, d] = m;
    let one = PowerSeries::one(z.var(), z.order());
    let num = z.scale(a).try_add(&one.scale(b))?;
    let den = z.scale(c).try_add(&one.scale(d))?;
    num.try_div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::fourth_order_normal_form;
    use crate::series::Var;

    #[test]
    fn schwarzian_of_q_is_minus_half() {
        let q = PowerSeries::identity(Var::Q, 10);
        let s = schwarzian(&q).unwrap();
        assert_eq!(s, PowerSeries::constant(Var::Q, rat(-1, 2), s.order()));
        assert!(s.order() >= 9);
    }

    #[test]
    fn schwarzian_mobius_invariance() {
        let z = PowerSeries::from_i64(Var::Q, 1, &[1, -15, 171, -1679, 15054], 12);
        let w = mobius(&z, [&int(2), &int(0), &int(1), &int(1)]).unwrap();
        let a = schwarzian(&z).unwrap();
        let b = schwarzian(&w).unwrap();
        let n = a.order().min(b.order());
        assert_eq!(a.truncate(n), b.truncate(n));
    }

    #[test]
    fn schwarzian_equation_for_s3_and_s4() {
        assert!(verify_schwarzian_equation(3, 20).unwrap().is_zero());
        assert!(verify_schwarzian_equation(4, 20).unwrap().is_zero());
        assert!(verify_schwarzian_equation(5, 10).is_err());
    }

    #[test]
    fn quintic_q_matches_normal_form() {
        let nf = fourth_order_normal_form(&DeltaOperator::build(OperatorKind::Quintic).unwrap())
            .unwrap();
        assert_eq!(nf.q2, quintic_q().scale(&int(10)));
    }

    #[test]
    fn z_and_q_tilde_equations() {
        assert!(verify_z_equation(16).unwrap().is_zero());
        assert!(verify_q_tilde_equation(12).unwrap().is_zero());
    }

    #[test]
    fn mutations_break_identities() {
        let data = mirror_pipeline(5, 16).unwrap();
        let k = yukawa_from_mirror(&data).unwrap();
        assert!(!z_equation_residual(&data, &k, &RationalFunction::zero())
            .unwrap()
            .is_zero());
        let mut c = Q_TILDE_COEFFS;
        c[2] = 48;
        assert!(!q_tilde_residual_with(&data, &k, &quintic_q_tilde(), &c)
            .unwrap()
            .is_zero());
    }
}
