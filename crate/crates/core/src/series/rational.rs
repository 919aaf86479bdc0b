//! Exact rational scalars.
//!
//! `BigRational` keeps itself in lowest terms with a positive denominator, so
//! integrality is a plain `denom == 1` test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal {:?}", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"n"` or `"p/q"` (optional leading sign on the numerator).
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(big(s.parse().map_err(|_| err())?)),
    }
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if is_integral(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    let mut l = BigInt::one();
    for x in xs {
        if !x.denom().is_one() {
            l = l.lcm(x.denom());
        }
    }
    l
}

/// Scales `xs` by their common denominator, returning integer numerators
/// and that denominator.
pub fn clear_denominators(xs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let d = common_denominator(xs);
    let v = xs
        .iter()
        .map(|x| {
            if x.denom().is_one() {
                x.numer() * &d
            } else {
                x.numer() * (&d / x.denom())
            }
        })
        .collect();
    (v, d)
}

/// `log10 |x|`-ish size, for reports. Counts digits of the larger of
/// numerator and denominator.
pub fn height_digits(x: &Rational) -> usize {
    let n = x.numer().abs().to_string().len();
    let d = x.denom().to_string().len();
    n.max(d)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
