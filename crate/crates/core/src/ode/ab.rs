//! The quantities `A₂, A₄` of a mirror map and `B₂, B₄` of `u = log K`.

use super::identities::{log_derivatives, quintic_q};
use super::OdeError;
use crate::hypergeom::{fourth_order_normal_form, DeltaOperator, OperatorKind, RationalFunction};
use crate::mirror::mirror_pipeline;
use crate::series::rational::{int, rat};
use crate::series::{PowerSeries, SeriesError};
use crate::yukawa::yukawa_from_mirror;

/// Which derivation the primes stand for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivation {
    /// `δ = x d/dx`, used on `q`-series where `d/dt = δ_q`.
    Euler,
    /// `d/dx`, used on jets in an auxiliary local parameter.
    Plain,
}

impl Derivation {
    pub fn apply(self, f: &PowerSeries) -> PowerSeries {
        match self {
            Derivation::Euler => f.euler_derive(1),
            Derivation::Plain => f.plain_derive(),
        }
    }

    /// `[f, f', …, f^(n)]`.
    pub fn jet(self, f: &PowerSeries, n: usize) -> Vec<PowerSeries> {
        let mut out = vec![f.clone()];
        for i in 0..n {
            let next = self.apply(&out[i]);
            out.push(next);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ABQuantities {
    pub a2: PowerSeries,
    pub a4: PowerSeries,
    pub b2: PowerSeries,
    pub b4: PowerSeries,
}

/// `A₂ = Q₂ z'² + 5{z;t}` and `A₄`, primes taken with `der`.
///
/// These are the coefficients of `Y''` and `Y` in the normal form
/// `Y'''' + A₂Y'' + A₂'Y' + A₄Y` of `y'''' + Q₂y'' + Q₂'y' + Q₀y = 0` after
/// `z = z(t)` and `y = z'^(3/2) Y`. The `(z''/z')⁴` term has coefficient
/// `-135/16`.
pub fn a_quantities(
    z: &PowerSeries,
    q0: &RationalFunction,
    q2: &RationalFunction,
    der: Derivation,
) -> Result<(PowerSeries, PowerSeries), SeriesError> {
    let j = der.jet(z, 5);
    let (z1, z2, z3, z4, z5) = (&j[1], &j[2], &j[3], &j[4], &j[5]);
    let q0z = q0.eval_series(z)?;
    let q2z = q2.eval_series(z)?;
    let dq2z = q2.derive().eval_series(z)?;

    let r2 = z2.try_div(z1)?;
    let r3 = z3.try_div(z1)?;
    let r4 = z4.try_div(z1)?;
    let r5 = z5.try_div(z1)?;
    let z1sq = z1.try_mul(z1)?;
    let schw = r3.try_sub(&r2.try_mul(&r2)?.scale(&rat(3, 2)))?;
    let a2 = q2z.try_mul(&z1sq)?.try_add(&schw.scale(&int(5)))?;

    let r2sq = r2.try_mul(&r2)?;
    let terms = [
        q0z.try_mul(&z1sq.try_mul(&z1sq)?)?,
        dq2z.try_mul(&z1sq)?.try_mul(z2)?.scale(&rat(3, 2)),
        q2z.try_mul(&z2.try_mul(z2)?)?.scale(&rat(-3, 4)),
        q2z.try_mul(z1)?.try_mul(z3)?.scale(&rat(3, 2)),
        r2sq.try_mul(&r2sq)?.scale(&rat(-135, 16)),
        r2sq.try_mul(&r3)?.scale(&rat(75, 4)),
        r3.try_mul(&r3)?.scale(&rat(-15, 4)),
        r2.try_mul(&r4)?.scale(&rat(-15, 2)),
        r5.scale(&rat(3, 2)),
    ];
    let mut a4 = terms[0].clone();
    for t in &terms[1..] {
        a4 = a4.try_add(t)?;
    }
    Ok((a2, a4))
}

/// `B₂ = 2u'' - u'²/2` and `B₄ = u''''/2 + u''²/4 - u''u'²/2 + u'⁴/16` from
/// `[u', u'', u''', u'''']`.
pub fn b_quantities(u: &[PowerSeries]) -> Result<(PowerSeries, PowerSeries), SeriesError> {
    assert!(u.len() >= 4, "need u' through u''''");
    let u1sq = u[0].try_mul(&u[0])?;
    let b2 = u[1].scale(&int(2)).try_sub(&u1sq.scale(&rat(1, 2)))?;
    let b4 = u[3]
        .scale(&rat(1, 2))
        .try_add(&u[1].try_mul(&u[1])?.scale(&rat(1, 4)))?
        .try_sub(&u[1].try_mul(&u1sq)?.scale(&rat(1, 2)))?
        .try_add(&u1sq.try_mul(&u1sq)?.scale(&rat(1, 16)))?;
    Ok((b2, b4))
}

/// `(Q₀, Q₂)` of the quintic operator in reduced form.
pub fn quintic_q0_q2() -> Result<(RationalFunction, RationalFunction), OdeError> {
    let nf = fourth_order_normal_form(&DeltaOperator::build(OperatorKind::Quintic)?)?;
    Ok((nf.q0, nf.q2))
}

/// `A₂, A₄` of the quintic mirror map and `B₂, B₄` of `log K`, all as
/// `q`-series truncated to `order`.
pub fn ab_quantities(
    q0: &RationalFunction,
    q2: &RationalFunction,
    order: usize,
) -> Result<ABQuantities, OdeError> {
    let data = mirror_pipeline(5, order + 10)?;
    let k = yukawa_from_mirror(&data)?;
    let (a2, a4) = a_quantities(&data.z_of_q, q0, q2, Derivation::Euler)?;
    let (b2, b4) = b_quantities(&log_derivatives(&k, 4)?)?;
    let all = [a2, a4, b2, b4];
    let min = all
        .iter()
        .map(PowerSeries::order)
        .min()
        .expect("four series");
    if min < order as i64 {
        return Err(OdeError::InsufficientOrder {
            needed: order as i64,
            got: min,
        });
    }
    let [a2, a4, b2, b4] = all.map(|s| s.truncate(order as i64));
    Ok(ABQuantities { a2, a4, b2, b4 })
}

/// The quintic quantities with `Q₂ = 10 Q`.
pub fn quintic_ab(order: usize) -> Result<ABQuantities, OdeError> {
    let (q0, q2) = quintic_q0_q2()?;
    debug_assert_eq!(q2, quintic_q().scale(&int(10)));
    ab_quantities(&q0, &q2, order)
}
