//! Truncated polynomials in a nilpotent parameter `H`, modulo `H^len`.

use super::rational::{int, Rational};
use num_traits::{One, Zero};
use std::ops::{Add, Mul};

/// `Σ c_k H^k mod H^len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HJet {
    coeffs: Vec<Rational>,
}

impl HJet {
    pub fn zero(len: usize) -> Self {
        HJet {
            coeffs: vec![Rational::zero(); len],
        }
    }

    pub fn constant(c: Rational, len: usize) -> Self {
        let mut j = Self::zero(len);
        if len > 0 {
            j.coeffs[0] = c;
        }
        j
    }

    pub fn one(len: usize) -> Self {
        Self::constant(Rational::one(), len)
    }

    /// `a H + b`.
    pub fn linear(a: Rational, b: Rational, len: usize) -> Self {
        let mut j = Self::constant(b, len);
        if len > 1 {
            j.coeffs[1] = a;
        }
        j
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>, len: usize) -> Self {
        coeffs.resize(len, Rational::zero());
        HJet { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Inverse of a jet with invertible constant term.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeffs.first()?;
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let n = self.len();
        let mut out = vec![Rational::zero(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -acc * &inv0;
        }
        Some(HJet { coeffs: out })
    }

    /// `1 / (H + a)` for nonzero `a`, expanded as `Σ (-1)^k H^k / a^(k+1)`.
    pub fn recip_shift(a: &Rational, len: usize) -> Self {
        let inv = a.recip();
        let mut coeffs = Vec::with_capacity(len);
        let mut p = inv.clone();
        for _ in 0..len {
            coeffs.push(p.clone());
            p = -(p * &inv);
        }
        HJet { coeffs }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one(self.len());
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    pub fn scale(&self, k: &Rational) -> Self {
        HJet {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Evaluates the jet of `H ↦ Π (aH + b)` over the given factors.
    pub fn product_of_linear(
        factors: impl IntoIterator<Item = (Rational, Rational)>,
        len: usize,
    ) -> Self {
        factors.into_iter().fold(Self::one(len), |acc, (a, b)| {
            &acc * &Self::linear(a, b, len)
        })
    }

    /// Shorthand for the `(s H + k)` factors used by hypergeometric ratios.
    pub fn affine(s: i64, k: i64, len: usize) -> Self {
        Self::linear(int(s), int(k), len)
    }
}

impl Add for &HJet {
    type Output = HJet;
    fn add(self, rhs: &HJet) -> HJet {
        assert_eq!(self.len(), rhs.len(), "jet length mismatch");
        HJet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul for &HJet {
    type Output = HJet;
    fn mul(self, rhs: &HJet) -> HJet {
        assert_eq!(self.len(), rhs.len(), "jet length mismatch");
        let n = self.len();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HJet { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    #[test]
    fn truncation_kills_top_power() {
        // s = 5: jets mod H^4; H^3 * H = 0.
        let h = HJet::linear(int(1), int(0), 4);
        let h3 = h.pow(3);
        assert_eq!(h3.coeff(3), &int(1));
        assert!((&h3 * &h).is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let j = HJet::from_coeffs(vec![int(2), rat(1, 3), int(-5)], 3);
        let p = &j * &j.inverse().unwrap();
        assert_eq!(p, HJet::one(3));
        assert!(HJet::zero(3).inverse().is_none());
    }

    #[test]
    fn recip_shift_matches_inverse() {
        let a = int(7);
        let direct = HJet::linear(int(1), a.clone(), 4).inverse().unwrap();
        assert_eq!(HJet::recip_shift(&a, 4), direct);
    }
}
