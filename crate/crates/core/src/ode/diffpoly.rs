//! Polynomials in indexed derivative symbols with quasi-weights.

use crate::series::rational::Rational;
use crate::series::{LogSeries, PowerSeries, SeriesError};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Coefficient rings the differential-polynomial and determinant code runs over.
pub trait Coefficient: Clone + fmt::Debug + Send + Sync {
    fn add(&self, other: &Self) -> Result<Self, SeriesError>;
    fn mul(&self, other: &Self) -> Result<Self, SeriesError>;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }
}

impl Coefficient for Rational {
    fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self + other)
    }
    fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self * other)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Coefficient for PowerSeries {
    fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_add(other)
    }
    fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_mul(other)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        PowerSeries::is_zero(self)
    }
}

impl Coefficient for LogSeries {
    fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_add(other)
    }
    fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_mul(other)
    }
    fn neg(&self) -> Self {
        LogSeries::neg(self)
    }
    fn is_zero(&self) -> bool {
        LogSeries::is_zero(self)
    }
}

/// A named symbol such as `t'''` or `B₂⁽³⁾` with its quasi-weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub weight: i64,
}

impl Symbol {
    pub fn new(name: impl Into<String>, weight: i64) -> Self {
        Symbol {
            name: name.into(),
            weight,
        }
    }
}

/// Exponent vector over the symbol list.
pub type Monomial = Vec<u32>;

/// `Σ c_α x^α` over a fixed symbol list. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct DiffPolynomial<C> {
    symbols: Vec<Symbol>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> DiffPolynomial<C> {
    pub fn zero(symbols: Vec<Symbol>) -> Self {
        DiffPolynomial {
            symbols,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(symbols: Vec<Symbol>, c: C) -> Self {
        let n = symbols.len();
        Self::from_terms(symbols, [(vec![0; n], c)])
    }

    /// `c · x_i`.
    pub fn variable(symbols: Vec<Symbol>, i: usize, c: C) -> Self {
        let mut e = vec![0; symbols.len()];
        e[i] = 1;
        Self::from_terms(symbols, [(e, c)])
    }

    pub fn from_terms(
        symbols: Vec<Symbol>,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Self {
        let mut p = Self::zero(symbols);
        for (e, c) in terms {
            assert_eq!(e.len(), p.symbols.len(), "exponent vector length");
            p.add_term(e, c).expect("same coefficient ring");
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: C) -> Result<(), SeriesError> {
        if c.is_zero() {
            return Ok(());
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old.add(&c)?,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
        Ok(())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> Option<&C> {
        self.terms.get(e)
    }

    pub fn weight_of(&self, e: &[u32]) -> i64 {
        e.iter()
            .zip(&self.symbols)
            .map(|(&k, s)| k as i64 * s.weight)
            .sum()
    }

    pub fn degree_of(e: &[u32]) -> u32 {
        e.iter().sum()
    }

    /// Largest monomial degree.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| Self::degree_of(e))
            .max()
            .unwrap_or(0)
    }

    /// The common weight of all monomials, if there is one.
    pub fn quasi_weight(&self) -> Option<i64> {
        let mut w = self.terms.keys().map(|e| self.weight_of(e));
        let first = w.next()?;
        w.all(|x| x == first).then_some(first)
    }

    /// Highest symbol index occurring with a nonzero exponent.
    pub fn highest_symbol(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|e| e.iter().rposition(|&k| k > 0))
            .max()
    }

    fn check_symbols(&self, other: &Self) {
        assert_eq!(self.symbols, other.symbols, "symbol lists differ");
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_symbols(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        DiffPolynomial {
            symbols: self.symbols.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_symbols(other);
        let mut out = Self::zero(self.symbols.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul(cb)?)?;
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale_by(&self, c: &C) -> Result<Self, SeriesError> {
        let mut out = Self::zero(self.symbols.clone());
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.mul(c)?)?;
        }
        Ok(out)
    }

    pub fn try_map<D: Coefficient, E>(
        &self,
        mut f: impl FnMut(&C) -> Result<D, E>,
    ) -> Result<DiffPolynomial<D>, E>
    where
        E: From<SeriesError>,
    {
        let mut out = DiffPolynomial::zero(self.symbols.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?)?;
        }
        Ok(out)
    }

    /// `Σ lift(c_α) Π values_i^α_i`; `one` is the unit of the value ring.
    pub fn evaluate<V: Coefficient>(
        &self,
        values: &[V],
        one: &V,
        lift: impl Fn(&C) -> Result<V, SeriesError>,
    ) -> Result<V, SeriesError> {
        assert_eq!(values.len(), self.symbols.len(), "one value per symbol");
        let mut powers: Vec<Vec<V>> = values
            .iter()
            .map(|v| vec![one.clone(), v.clone()])
            .collect();
        let mut acc: Option<V> = None;
        for (e, c) in &self.terms {
            let mut term = lift(c)?;
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().expect("nonempty").mul(&values[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize])?;
            }
            acc = Some(match acc {
                Some(a) => a.add(&term)?,
                None => term,
            });
        }
        Ok(acc.unwrap_or_else(|| one.sub(one).expect("same ring")))
    }
}

impl DiffPolynomial<Rational> {
    /// Divides by the content so the integer coefficients are coprime and
    /// the first nonzero one is positive.
    pub fn primitive(&self) -> Self {
        use crate::series::rational::common_denominator;
        use num_integer::Integer;
        if self.terms.is_empty() {
            return self.clone();
        }
        let coeffs: Vec<Rational> = self.terms.values().cloned().collect();
        let d = common_denominator(&coeffs);
        let ints: Vec<_> = coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(d.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(num_bigint::BigInt::zero(), |g, x| g.gcd(x));
        let sign = if ints[0] < num_bigint::BigInt::zero() {
            -Rational::one()
        } else {
            Rational::one()
        };
        let k = Rational::new(d, g) * sign;
        DiffPolynomial {
            symbols: self.symbols.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * &k))
                .collect(),
        }
    }
}

impl<C: Coefficient> Coefficient for DiffPolynomial<C> {
    fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_add(other)
    }
    fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_mul(other)
    }
    fn neg(&self) -> Self {
        DiffPolynomial::neg(self)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coefficient> fmt::Debug for DiffPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c:?})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*{}", self.symbols[i].name)?,
                    _ => write!(f, "*{}^{k}", self.symbols[i].name)?,
                }
            }
        }
        Ok(())
    }
}

/// Determinant by row-by-row expansion with the partial minors memoized on
/// the set of used columns. Sign of a placement is the number of used
/// columns to the right.
pub fn determinant<C: Coefficient>(m: &[Vec<C>]) -> Result<Option<C>, SeriesError> {
    let n = m.len();
    assert!(
        n < 20 && m.iter().all(|r| r.len() == n),
        "square matrix of modest size"
    );
    if n == 0 {
        return Ok(None);
    }
    let mut layer: BTreeMap<u32, C> = BTreeMap::new();
    for (j, c) in m[0].iter().enumerate() {
        if !c.is_zero() {
            layer.insert(1 << j, c.clone());
        }
    }
    for row in &m[1..] {
        let mut next: BTreeMap<u32, C> = BTreeMap::new();
        for (&mask, minor) in &layer {
            for (j, c) in row.iter().enumerate() {
                if mask & (1 << j) != 0 || c.is_zero() {
                    continue;
                }
                let right = (mask >> (j + 1)).count_ones();
                let mut term = minor.mul(c)?;
                if right % 2 == 1 {
                    term = term.neg();
                }
                let key = mask | (1 << j);
                let v = match next.remove(&key) {
                    Some(old) => old.add(&term)?,
                    None => term,
                };
                next.insert(key, v);
            }
        }
        layer = next;
    }
    Ok(layer.remove(&((1u32 << n) - 1)).filter(|c| !c.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::{int, rat};

    fn syms() -> Vec<Symbol> {
        vec![Symbol::new("x", 2), Symbol::new("y", 3)]
    }

    #[test]
    fn arithmetic_and_weights() {
        let x = DiffPolynomial::variable(syms(), 0, int(1));
        let y = DiffPolynomial::variable(syms(), 1, int(1));
        let p = x
            .try_mul(&x)
            .unwrap()
            .try_mul(&x)
            .unwrap()
            .try_sub(&y.try_mul(&y).unwrap())
            .unwrap();
        assert_eq!(p.quasi_weight(), Some(6));
        assert_eq!(p.degree(), 3);
        assert_eq!(p.highest_symbol(), Some(1));
        let q = p.try_add(&x).unwrap();
        assert_eq!(q.quasi_weight(), None);
        assert!(p.try_sub(&p).unwrap().is_empty());
        let v = p
            .evaluate(&[int(2), int(3)], &int(1), |c| Ok(c.clone()))
            .unwrap();
        assert_eq!(v, int(-1));
    }

    #[test]
    fn primitive_normalizes_content() {
        let p =
            DiffPolynomial::from_terms(syms(), [(vec![1, 0], rat(-2, 3)), (vec![0, 1], rat(4, 9))]);
        let q = p.primitive();
        assert_eq!(q.coefficient(&[1, 0]), Some(&int(-3)));
        assert_eq!(q.coefficient(&[0, 1]), Some(&int(2)));
    }

    #[test]
    fn small_determinants() {
        let m = vec![vec![int(2), int(1)], vec![int(7), int(4)]];
        assert_eq!(determinant(&m).unwrap(), Some(int(1)));
        let m = vec![
            vec![int(1), int(2), int(3)],
            vec![int(4), int(5), int(6)],
            vec![int(7), int(8), int(10)],
        ];
        assert_eq!(determinant(&m).unwrap(), Some(int(-3)));
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant(&m).unwrap(), None);
    }
}
