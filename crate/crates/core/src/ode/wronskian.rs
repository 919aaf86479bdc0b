//! Wronskians and the differential operator `R[t]`.
//!
//! For a fundamental system `f₀…f_{m-1}` of an order-`m` equation, any ratio
//! `t = f_j/f₀` makes `t·f_j` lie in the span, so the `2m × 2m` Wronskian of
//! `f₀…f_{m-1}, t f₀…t f_{m-1}` vanishes. Subtracting `t` times the plain
//! columns leaves entries `Σ_{l≥1} C(k,l) t^(l) f_j^(k-l)`, and expanding the
//! determinant gives `R[t]`, a polynomial in `t'…t^(2m-1)`.

use super::diffpoly::{determinant, DiffPolynomial, Symbol};
use super::OdeError;
use crate::series::rational::{big, binomial};
use crate::series::{LogSeries, PowerSeries, SeriesError};

/// `M[k][j] = d^k f_j / dx^k` for `k < rows`.
pub fn derivative_matrix(fs: &[LogSeries], rows: usize) -> Vec<Vec<LogSeries>> {
    let mut m = Vec::with_capacity(rows);
    let mut cur: Vec<LogSeries> = fs.to_vec();
    for _ in 0..rows {
        let next = cur.iter().map(LogSeries::plain_derive).collect();
        m.push(std::mem::replace(&mut cur, next));
    }
    m
}

fn check_inputs(fs: &[LogSeries]) -> Result<(), OdeError> {
    if fs.is_empty() {
        return Err(OdeError::EmptyInput);
    }
    let v = fs[0].var();
    if let Some(f) = fs.iter().find(|f| f.var() != v) {
        return Err(SeriesError::VariableMismatch(v, f.var()).into());
    }
    Ok(())
}

/// `W(f₀,…,f_{m-1}) = det(d^k f_j/dx^k)`.
///
/// A determinant that vanishes to the working order is reported as
/// [`OdeError::Indeterminate`] rather than as zero.
pub fn wronskian(fs: &[LogSeries]) -> Result<LogSeries, OdeError> {
    check_inputs(fs)?;
    let m = derivative_matrix(fs, fs.len());
    let order = m
        .iter()
        .flatten()
        .map(LogSeries::order)
        .min()
        .expect("nonempty");
    match determinant(&m)? {
        Some(w) => Ok(w),
        None => Err(OdeError::Indeterminate { order }),
    }
}

/// Wronskian of plain series.
pub fn wronskian_series(fs: &[PowerSeries]) -> Result<PowerSeries, OdeError> {
    let logs: Vec<LogSeries> = fs.iter().cloned().map(LogSeries::from).collect();
    let w = wronskian(&logs)?;
    w.as_series()
        .cloned()
        .ok_or(OdeError::Series(SeriesError::LogDivisor))
}

/// The expanded operator `R[t]`, normalized so that `t^(2m-1) t'^(m-1)` has
/// coefficient 1. Symbol `i` is `t^(i+1)`, of weight `i+1`.
#[derive(Debug, Clone)]
pub struct ROperator {
    pub m: usize,
    pub poly: DiffPolynomial<PowerSeries>,
}

fn t_symbols(m: usize) -> Vec<Symbol> {
    (1..2 * m)
        .map(|l| Symbol::new(format!("t^({l})"), l as i64))
        .collect()
}

impl ROperator {
    /// Highest derivative of `t` that occurs.
    pub fn differential_order(&self) -> usize {
        self.poly.highest_symbol().map_or(0, |i| i + 1)
    }

    /// Exponent vector of the normalizing monomial `t^(2m-1) t'^(m-1)`.
    pub fn leading_monomial(&self) -> Vec<u32> {
        leading_monomial(self.m)
    }

    /// `R[t]` evaluated at a concrete (log-)series `t`.
    pub fn apply(&self, t: &LogSeries) -> Result<LogSeries, SeriesError> {
        let n = 2 * self.m - 1;
        let derivs = derivative_matrix(std::slice::from_ref(t), n + 1);
        let values: Vec<LogSeries> = derivs[1..].iter().map(|r| r[0].clone()).collect();
        let order = values.iter().map(LogSeries::order).min().expect("nonempty");
        let one = LogSeries::from(PowerSeries::one(t.var(), order));
        self.poly
            .evaluate(&values, &one, |c| Ok(LogSeries::from(c.clone())))
    }
}

fn leading_monomial(m: usize) -> Vec<u32> {
    let mut e = vec![0; 2 * m - 1];
    e[2 * m - 2] += 1;
    e[0] += (m - 1) as u32;
    e
}

/// Builds `R[t]` from a fundamental system by generalized Laplace expansion
/// along the `m` symbol-free columns, then divides by `W²` and normalizes.
pub fn r_operator(basis: &[LogSeries]) -> Result<ROperator, OdeError> {
    check_inputs(basis)?;
    let m = basis.len();
    let n = 2 * m;
    let w = wronskian(basis)?;
    let f = derivative_matrix(basis, n);
    let symbols = t_symbols(m);
    let var = basis[0].var();

    // Symbolic columns: T[k][j] = Σ_{l=1..k} C(k,l) t^(l) f_j^(k-l).
    let t_cols: Vec<Vec<DiffPolynomial<LogSeries>>> = (0..n)
        .map(|k| {
            (0..m)
                .map(|j| {
                    let mut acc = DiffPolynomial::zero(symbols.clone());
                    for l in 1..=k {
                        let c = f[k - l][j].scale(&big(binomial(k as u64, l as u64)));
                        acc = acc.try_add(&DiffPolynomial::variable(symbols.clone(), l - 1, c))?;
                    }
                    Ok(acc)
                })
                .collect::<Result<_, SeriesError>>()
        })
        .collect::<Result<_, SeriesError>>()?;

    let mut total: DiffPolynomial<LogSeries> = DiffPolynomial::zero(symbols.clone());
    for rows in subsets(n, m) {
        let rest: Vec<usize> = (0..n).filter(|i| !rows.contains(i)).collect();
        let plain: Vec<Vec<LogSeries>> = rows.iter().map(|&i| f[i].clone()).collect();
        let Some(a) = determinant(&plain)? else {
            continue;
        };
        let sym: Vec<Vec<DiffPolynomial<LogSeries>>> =
            rest.iter().map(|&i| t_cols[i].clone()).collect();
        let Some(b) = determinant(&sym)? else {
            continue;
        };
        let mut term = b.scale_by(&a)?;
        // (-1)^(Σ rows + Σ cols), cols being 0..m
        let parity = rows.iter().sum::<usize>() + m * (m - 1) / 2;
        if parity % 2 == 1 {
            term = term.neg();
        }
        total = total.try_add(&term)?;
    }

    let w2 = w.try_mul(&w)?;
    let lead = leading_monomial(m);
    let norm = total
        .coefficient(&lead)
        .cloned()
        .ok_or(OdeError::DegenerateBasis)?
        .try_div(&w2)?;
    let norm = norm.as_series().cloned().ok_or(OdeError::DegenerateBasis)?;
    let divisor = w2
        .as_series()
        .ok_or(SeriesError::LogDivisor)?
        .try_mul(&norm)?;
    let inv = divisor.inverse()?;
    let poly = total.try_map(|c| -> Result<PowerSeries, OdeError> {
        let q = c.mul_series(&inv)?;
        q.as_series().cloned().ok_or(OdeError::LogCoefficient)
    })?;
    let poly = fix_leading(poly, &lead, var)?;
    Ok(ROperator { m, poly })
}

/// Checks that normalization left exactly 1 on the leading monomial.
fn fix_leading(
    poly: DiffPolynomial<PowerSeries>,
    lead: &[u32],
    var: crate::series::Var,
) -> Result<DiffPolynomial<PowerSeries>, OdeError> {
    let c = poly
        .coefficient(lead)
        .cloned()
        .ok_or(OdeError::DegenerateBasis)?;
    let one = PowerSeries::one(var, c.order());
    if c != one {
        return Err(OdeError::DegenerateBasis);
    }
    Ok(poly)
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `g^m W(f)` against `W(g f)`; returns the difference.
pub fn lemma3_residual(g: &PowerSeries, fs: &[LogSeries]) -> Result<LogSeries, OdeError> {
    let scaled: Vec<LogSeries> = fs
        .iter()
        .map(|f| f.mul_series(g))
        .collect::<Result<_, _>>()?;
    let lhs = wronskian(&scaled)?;
    let rhs = wronskian(fs)?.mul_series(&g.pow(fs.len() as i64)?)?;
    Ok(lhs.try_sub(&rhs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::{
        frobenius_basis, second_order_normal_form, DeltaOperator, OperatorKind,
    };
    use crate::series::rational::{int, rat};
    use crate::series::Var;

    #[test]
    fn single_and_pair() {
        let f = LogSeries::from(PowerSeries::from_i64(Var::Z, 0, &[1, 6, 90], 3));
        assert_eq!(wronskian(std::slice::from_ref(&f)).unwrap(), f);
        let one = LogSeries::from(PowerSeries::one(Var::Z, 10));
        let w = wronskian(&[one, LogSeries::log(Var::Z, 10)]).unwrap();
        assert_eq!(
            w,
            LogSeries::from(PowerSeries::monomial(Var::Z, -1, int(1), 9))
        );
    }

    #[test]
    fn lemma3_example() {
        let z = PowerSeries::identity(Var::Z, 12);
        let one = PowerSeries::one(Var::Z, 12);
        let w = wronskian_series(&[z.clone(), z.try_mul(&z).unwrap()]).unwrap();
        let w1 = wronskian_series(&[one, z.clone()]).unwrap();
        assert_eq!(w, w1.try_mul(&z.pow(2).unwrap()).unwrap());
        assert_eq!(w.leading(), Some((2, &int(1))));
    }

    #[test]
    fn dependent_inputs_are_indeterminate() {
        let a = PowerSeries::from_i64(Var::Z, 0, &[1, 2, 3], 6);
        let err = wronskian_series(&[a.clone(), a.scale(&rat(3, 2))]).unwrap_err();
        assert!(matches!(err, OdeError::Indeterminate { .. }));
    }

    #[test]
    fn r_operator_m2_is_schwarzian() {
        let basis = frobenius_basis(3, 24).unwrap();
        let r = r_operator(&basis.solutions()).unwrap();
        assert_eq!(r.differential_order(), 3);
        let q = second_order_normal_form(&DeltaOperator::build(OperatorKind::S3).unwrap()).unwrap();
        let order = r.poly.coefficient(&[2, 0, 0]).unwrap().order();
        let want_q = q.to_series(Var::Z, order).unwrap().scale(&int(-2));
        assert_eq!(
            r.poly.coefficient(&[2, 0, 0]).unwrap().truncate(order),
            want_q
        );
        assert_eq!(
            r.poly.coefficient(&[0, 2, 0]).unwrap().truncate(order),
            PowerSeries::constant(Var::Z, rat(-3, 2), order)
        );
        assert_eq!(r.poly.len(), 3);
        let t = basis.f(1).div_series(&basis.g[0]).unwrap();
        let res = r.apply(&t).unwrap();
        assert!(res.is_zero() && res.order() >= 10, "{res:?}");
    }
}
