//! Exact nullspaces by fraction-free (Bareiss) elimination.

use crate::series::rational::{big, clear_denominators, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row echelon form over ℤ. Every entry stays a minor of the input, so the
/// Bareiss divisions are exact.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot.
    pub pivots: Vec<(usize, usize)>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn echelon(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..ncols {
                let v = &pivot_row[c] * &row[j] - &f * &pivot_row[j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    a.truncate(r);
    Echelon {
        rows: a,
        pivots,
        ncols,
    }
}

/// Basis of `{x : A x = 0}` as primitive integer vectors, one per free
/// column, in column order.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<BigInt>> {
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| clear_denominators(r).0)
        .collect();
    nullspace_int(ints, ncols)
}

pub fn nullspace_int(rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let e = echelon(rows, ncols);
    let pivot_cols: Vec<usize> = e.pivots.iter().map(|&(_, c)| c).collect();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![Rational::zero(); ncols];
            x[fc] = Rational::one();
            for &(r, c) in e.pivots.iter().rev() {
                let mut s = Rational::zero();
                for (a, xj) in e.rows[r][c + 1..].iter().zip(&x[c + 1..]) {
                    if !a.is_zero() && !xj.is_zero() {
                        s += big(a.clone()) * xj;
                    }
                }
                x[c] = -s / big(e.rows[r][c].clone());
            }
            primitive(&x)
        })
        .collect()
}

/// Scales a rational vector to coprime integers with a positive first entry.
pub fn primitive(x: &[Rational]) -> Vec<BigInt> {
    let (v, _) = clear_denominators(x);
    let g = v.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    if g.is_zero() {
        return v;
    }
    let sign = v
        .iter()
        .find(|a| !a.is_zero())
        .is_some_and(|a| a.is_negative());
    v.into_iter()
        .map(|a| if sign { -(a / &g) } else { a / &g })
        .collect()
}
