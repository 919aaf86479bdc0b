//! Yukawa coupling of the quintic mirror map, instanton numbers, the
//! prepotential and its `t`-functions, and the Eisenstein-series analogue.

pub mod tpoly;

pub use tpoly::TPolyQSeries;

use crate::mirror::{mirror_pipeline, MirrorData, MirrorError};
use crate::series::rational::{big, format_rational, int, rat, Rational};
use crate::series::{LogSeries, PowerSeries, SeriesError, Var};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum YukawaError {
    #[error(transparent)]
    Mirror(#[from] MirrorError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("the Yukawa coupling is defined here for s = 5 only, got s = {0}")]
    NotQuintic(u32),
    #[error("K must start with constant term 5, found {0}")]
    ConstantTerm(String),
    #[error("instanton number n_{index} = {value} is not an integer; K is corrupted")]
    NonIntegral { index: usize, value: String },
    #[error("need K through q^{needed}, but it is only known below q^{order}")]
    InsufficientOrder { needed: i64, order: i64 },
    #[error("q = exp(t) = {0} is not inside the unit disc")]
    Divergent(f64),
}

/// `K(q) = 5 (δ_q z/z)³ / ((1 - 5⁵ z(q)) f̃₀²)`.
pub fn yukawa_from_mirror(data: &MirrorData) -> Result<PowerSeries, YukawaError> {
    if data.s != 5 {
        return Err(YukawaError::NotQuintic(data.s));
    }
    let num = data.log_derivative()?.pow(3)?.scale(&int(5));
    let den = data.f0_tilde.try_mul(&data.f0_tilde)?;
    Ok(num.try_mul(&data.conifold_factor()?)?.try_div(&den)?)
}

/// `K(q)` to `O(q^order)` straight from the mirror pipeline. The quotient
/// `δ_q z/z` loses one order, so the pipeline is run one step further.
pub fn yukawa_from_definition(order: usize) -> Result<PowerSeries, YukawaError> {
    Ok(yukawa_from_mirror(&mirror_pipeline(5, order + 1)?)?.truncate(order as i64))
}

/// Residual of `f̃₀² = (δ_q z/z)³ · 1/(1 - 5⁵z) · 5/K`.
pub fn yukawa_definition_residual(
    data: &MirrorData,
    k: &PowerSeries,
) -> Result<PowerSeries, YukawaError> {
    let lhs = data.f0_tilde.try_mul(&data.f0_tilde)?;
    let rhs = data
        .log_derivative()?
        .pow(3)?
        .try_mul(&data.conifold_factor()?)?
        .scale(&int(5))
        .try_div(k)?;
    Ok(lhs.try_sub(&rhs)?)
}

/// Instanton numbers `n_l` and the prepotential coefficients
/// `N_m = Σ_{lk=m} n_l/k³`, both indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstantonTable {
    #[serde(serialize_with = "ser_ints")]
    pub n: Vec<BigInt>,
    #[serde(rename = "N", serialize_with = "ser_rats")]
    pub big_n: Vec<Rational>,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_rats<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

impl InstantonTable {
    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    /// `n_l`, 1-based.
    pub fn n(&self, l: usize) -> &BigInt {
        &self.n[l - 1]
    }

    /// `c + Σ_l n_l l³ q^l/(1-q^l)` to `O(q^order)`, with `c` the constant term.
    pub fn lambert(&self, constant: &Rational, order: i64) -> PowerSeries {
        let mut c = vec![Rational::zero(); order.max(0) as usize];
        if !c.is_empty() {
            c[0] = constant.clone();
        }
        for (i, nl) in self.n.iter().enumerate() {
            let l = i + 1;
            let w = nl * BigInt::from(l).pow(3);
            let mut m = l;
            while m < c.len() {
                c[m] += big(w.clone());
                m += l;
            }
        }
        PowerSeries::new(Var::Q, 0, c, order)
    }

    /// `Σ_m N_m q^m` to `O(q^order)`; needs `order <= len + 1`.
    pub fn n_series(&self, order: i64) -> PowerSeries {
        let mut c = vec![Rational::zero(); order.max(0) as usize];
        for (i, v) in self.big_n.iter().enumerate() {
            if i + 1 < c.len() {
                c[i + 1] = v.clone();
            }
        }
        PowerSeries::new(Var::Q, 0, c, order.min(self.big_n.len() as i64 + 1))
    }
}

/// Inverts the Lambert expansion of `K` by divisor recursion:
/// `n_m = (c_m - Σ_{l|m, l<m} n_l l³) / m³` with `c_m = [q^m] K`.
pub fn instanton_numbers(k: &PowerSeries, count: usize) -> Result<InstantonTable, YukawaError> {
    lambert_inverse(k, &int(5), count)
}

/// Divisor-recursion inversion of `c + Σ n_l l³ q^l/(1-q^l)` for a given
/// constant term `c`.
pub fn lambert_inverse(
    k: &PowerSeries,
    constant: &Rational,
    count: usize,
) -> Result<InstantonTable, YukawaError> {
    let k0 = k.try_coeff(0)?;
    if &k0 != constant {
        return Err(YukawaError::ConstantTerm(format_rational(&k0)));
    }
    if count as i64 >= k.order() {
        return Err(YukawaError::InsufficientOrder {
            needed: count as i64,
            order: k.order(),
        });
    }
    let mut n: Vec<BigInt> = Vec::with_capacity(count);
    for m in 1..=count {
        let mut rest = k.coeff(m as i64);
        for l in 1..m {
            if m % l == 0 {
                rest -= big(&n[l - 1] * BigInt::from(l).pow(3));
            }
        }
        let v = rest / big(BigInt::from(m).pow(3));
        if !v.is_integer() {
            return Err(YukawaError::NonIntegral {
                index: m,
                value: format_rational(&v),
            });
        }
        n.push(v.to_integer());
    }
    let big_n = (1..=count)
        .map(|m| {
            (1..=m)
                .filter(|k| m % k == 0)
                .map(|k| big(n[m / k - 1].clone()) / big(BigInt::from(k).pow(3)))
                .sum()
        })
        .collect();
    Ok(InstantonTable { n, big_n })
}

/// `F(t) = (5/6) t³ + Σ N_m q^m` to `O(q^order)`.
pub fn prepotential(table: &InstantonTable, order: i64) -> TPolyQSeries {
    let order = order.min(table.len() as i64 + 1);
    TPolyQSeries::t_power(3, rat(5, 6), order)
        .try_add(&TPolyQSeries::from_series(table.n_series(order)))
        .expect("q-series")
}

/// The quintic data bundled for the `t`-function checks.
#[derive(Debug, Clone)]
pub struct QuinticData {
    pub mirror: MirrorData,
    pub k: PowerSeries,
    pub instantons: InstantonTable,
    pub prepotential: TPolyQSeries,
}

impl QuinticData {
    pub fn new(order: usize) -> Result<Self, YukawaError> {
        let mirror = mirror_pipeline(5, order + 1)?;
        let k = yukawa_from_mirror(&mirror)?.truncate(order as i64);
        let instantons = instanton_numbers(&k, order - 1)?;
        let prepotential = prepotential(&instantons, order as i64);
        Ok(QuinticData {
            mirror,
            k,
            instantons,
            prepotential,
        })
    }

    pub fn order(&self) -> i64 {
        self.k.order()
    }
}

/// `t₀ = 1, t₁ = t, t₂ = F'/5, t₃ = (t F' - 2F)/5`.
pub fn t_functions(f: &TPolyQSeries) -> Result<Vec<TPolyQSeries>, YukawaError> {
    let order = f.order();
    let fifth = rat(1, 5);
    let fp = f.derive();
    let t = TPolyQSeries::t_power(1, int(1), order);
    let t2 = fp.scale(&fifth);
    let t3 = t.try_mul(&fp)?.try_sub(&f.scale(&int(2)))?.scale(&fifth);
    Ok(vec![TPolyQSeries::constant(int(1), order), t, t2, t3])
}

/// `f_j/f₀` pulled back along the mirror map with `log z = t - (g₁/g₀)(z(q))`:
/// `t_j = Σ_i G_i (t - G₁)^(j-i)/(j-i)!` with `G_i = (g_i/g₀)(z(q))`.
pub fn t_functions_from_basis(data: &MirrorData) -> Result<Vec<TPolyQSeries>, YukawaError> {
    let order = data.order;
    let g0 = &data.basis.g[0];
    let pulled: Vec<PowerSeries> = data
        .basis
        .g
        .iter()
        .map(|g| data.pull_back(&g.try_div(g0)?))
        .collect::<Result<_, SeriesError>>()?;
    // log z = t - G₁
    let log_z = TPolyQSeries::t_power(1, int(1), order)
        .try_sub(&TPolyQSeries::from_series(pulled[1].clone()))?;
    let mut powers = vec![TPolyQSeries::constant(int(1), order)];
    for k in 1..pulled.len() {
        let next = powers[k - 1].try_mul(&log_z)?.scale(&rat(1, k as i64));
        powers.push(next);
    }
    (0..pulled.len())
        .map(|j| {
            let mut acc = TPolyQSeries::constant(Rational::zero(), order);
            for i in 0..=j {
                acc = acc.try_add(&powers[j - i].mul_series(&pulled[i])?)?;
            }
            Ok(acc)
        })
        .collect()
}

/// `F(f₁/f₀) - (5/2)(f₁f₂ - f₀f₃)/f₀²` as a log-series in `z`.
pub fn prepotential_log_residual(data: &QuinticData) -> Result<LogSeries, YukawaError> {
    let m = &data.mirror;
    let f: Vec<LogSeries> = m.basis.solutions();
    let g0 = &m.basis.g[0];
    let t = f[1].div_series(g0)?;
    let cubic = t.pow(3)?.scale(&rat(5, 6));
    let inst = data.instantons.n_series(data.order()).compose(&m.q_of_z)?;
    let lhs = cubic.try_add(&LogSeries::from(inst))?;
    let rhs = f[1]
        .try_mul(&f[2])?
        .try_sub(&f[0].try_mul(&f[3])?)?
        .div_series(&g0.try_mul(g0)?)?
        .scale(&rat(5, 2));
    Ok(lhs.try_sub(&rhs)?)
}

/// `d²/dt² ( (1/K) d²/dt² t_j )` for each `t_j`.
pub fn pandharipande_residuals(
    ts: &[TPolyQSeries],
    k: &PowerSeries,
) -> Result<Vec<TPolyQSeries>, YukawaError> {
    let kinv = k.inverse()?;
    ts.iter()
        .map(|t| Ok(t.derive_n(2).mul_series(&kinv)?.derive_n(2)))
        .collect()
}

/// `d³F/dt³ - K`.
pub fn third_derivative_residual(
    f: &TPolyQSeries,
    k: &PowerSeries,
) -> Result<TPolyQSeries, YukawaError> {
    Ok(f.derive_n(3)
        .try_sub(&TPolyQSeries::from_series(k.clone()))?)
}

/// `K₀ = 1 + 240 Σ σ₃(n) q^n` and `F₀ = t³/6 + Σ_m (Σ_{lk=m} 240/k³) q^m`.
pub fn eisenstein_analog(order: usize) -> (PowerSeries, TPolyQSeries) {
    let table = InstantonTable {
        n: vec![BigInt::from(240); order.saturating_sub(1)],
        big_n: (1..order).map(f0_coefficient).collect(),
    };
    let k0 = table.lambert(&int(1), order as i64);
    let f0 = TPolyQSeries::t_power(3, rat(1, 6), order as i64)
        .try_add(&TPolyQSeries::from_series(table.n_series(order as i64)))
        .expect("q-series");
    (k0, f0)
}

fn f0_coefficient(m: usize) -> Rational {
    (1..=m)
        .filter(|&k| m.is_multiple_of(k))
        .map(|k| rat(240, (k * k * k) as i64))
        .sum()
}

/// Floating evaluation of the truncated `F₀` at a real `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct F0Evaluation {
    pub value: f64,
    /// Bound on the dropped tail `Σ_{m >= order} c_m q^m`.
    pub tail_bound: f64,
}

/// Evaluates `t³/6 + Σ_{m<order} c_m e^{mt}`. The coefficients satisfy
/// `c_m < 240 ζ(3) < 289`, so the tail is below `289 q^order / (1 - q)`.
pub fn evaluate_f0_at(t: f64, order: usize) -> Result<F0Evaluation, YukawaError> {
    let q = t.exp();
    if q.is_nan() || q.abs() >= 1.0 {
        return Err(YukawaError::Divergent(q));
    }
    // Horner from the top keeps the rounding error at a few ulps.
    let mut acc = 0.0f64;
    for m in (1..order).rev() {
        let c = f0_coefficient(m).to_f64().expect("finite");
        acc = (acc + c) * q;
    }
    let value = t * t * t / 6.0 + acc;
    let tail_bound = 289.0 * q.powi(order as i32) / (1.0 - q);
    Ok(F0Evaluation { value, tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yukawa_leading_terms() {
        let k = yukawa_from_definition(5).unwrap();
        assert_eq!(
            k,
            PowerSeries::from_i64(
                Var::Q,
                0,
                &[5, 2875, 4876875, 8564575000, 15517926796875],
                5
            )
        );
    }

    #[test]
    fn instantons_small() {
        let k = yukawa_from_definition(6).unwrap();
        let t = instanton_numbers(&k, 3).unwrap();
        assert_eq!(
            t.n,
            vec![
                BigInt::from(2875),
                BigInt::from(609250),
                BigInt::from(317206375)
            ]
        );
        assert_eq!(t.big_n[1], rat(4876875, 8));
    }

    #[test]
    fn corrupted_k_is_reported() {
        let k = PowerSeries::from_i64(Var::Q, 0, &[5, 2875, 4876876], 3);
        assert!(matches!(
            instanton_numbers(&k, 2),
            Err(YukawaError::NonIntegral { index: 2, .. })
        ));
        let k = PowerSeries::from_i64(Var::Q, 0, &[4, 2875], 3);
        assert!(matches!(
            instanton_numbers(&k, 1),
            Err(YukawaError::ConstantTerm(_))
        ));
    }

    #[test]
    fn t_function_cubic_parts() {
        let d = QuinticData::new(8).unwrap();
        let ts = t_functions(&d.prepotential).unwrap();
        assert_eq!(
            ts[2].term(2),
            PowerSeries::constant(Var::Q, rat(1, 2), ts[2].order())
        );
        assert_eq!(
            ts[3].term(3),
            PowerSeries::constant(Var::Q, rat(1, 6), ts[3].order())
        );
        assert!(ts[3].term(2).is_zero());
    }

    #[test]
    fn eisenstein_coefficients() {
        let (k0, f0) = eisenstein_analog(8);
        assert_eq!(k0.coeff(1), int(240));
        assert_eq!(k0.coeff(2), int(2160));
        assert!(third_derivative_generic(&f0, &k0).is_zero());
    }

    fn third_derivative_generic(f: &TPolyQSeries, k: &PowerSeries) -> TPolyQSeries {
        f.derive_n(3)
            .try_sub(&TPolyQSeries::from_series(k.clone()))
            .unwrap()
    }

    #[test]
    fn f0_limits() {
        let far = evaluate_f0_at(-40.0, 12).unwrap();
        assert!((far.value - (-40.0f64).powi(3) / 6.0).abs() < 1e-9);
        let a = evaluate_f0_at(-2.0 * std::f64::consts::PI, 12).unwrap();
        let b = evaluate_f0_at(-4.0 * std::f64::consts::PI, 12).unwrap();
        let qa = a.value - (-2.0 * std::f64::consts::PI).powi(3) / 6.0;
        let qb = b.value - (-4.0 * std::f64::consts::PI).powi(3) / 6.0;
        assert!(qb < qa && qb > 0.0);
        assert!(evaluate_f0_at(0.5, 12).is_err());
    }

    #[test]
    fn quintic_identities() {
        let d = QuinticData::new(14).unwrap();
        assert!(yukawa_definition_residual(&d.mirror, &d.k)
            .unwrap()
            .truncate(14)
            .is_zero());
        assert!(third_derivative_residual(&d.prepotential, &d.k)
            .unwrap()
            .is_zero());
        let ts = t_functions(&d.prepotential).unwrap();
        for r in pandharipande_residuals(&ts, &d.k).unwrap() {
            assert!(r.is_zero(), "{r:?}");
        }
        let from_basis = t_functions_from_basis(&d.mirror).unwrap();
        for (a, b) in ts.iter().zip(&from_basis) {
            let n = a.order().min(b.order());
            assert_eq!(a.truncate(n), b.truncate(n));
        }
        let res = prepotential_log_residual(&d).unwrap();
        assert!(res.is_zero() && res.order() >= 12, "{res:?}");
    }

    #[test]
    fn lambert_round_trip() {
        let k = yukawa_from_definition(20).unwrap();
        let t = instanton_numbers(&k, 19).unwrap();
        assert_eq!(t.lambert(&int(5), 20), k);
    }
}
