//! Exact row reduction over the rationals.
//!
//! Elimination runs fraction-free (Bareiss) on an integer copy of the matrix;
//! only the final back-substitution touches rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Clears denominators row by row.
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free row echelon form; returns the pivot columns.
fn bareiss(a: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&p| !a[p][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form (nonzero rows only) and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let ncols = m.first().map_or(0, Vec::len);
    let mut a = integer_rows(m);
    let pivots = bareiss(&mut a, ncols);
    let mut rows: Matrix = a
        .into_iter()
        .take(pivots.len())
        .map(|row| row.into_iter().map(Scalar::from_integer).collect())
        .collect();
    for (r, &c) in pivots.iter().enumerate().rev() {
        let lead = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x /= &lead;
        }
        for above in 0..r {
            let f = rows[above][c].clone();
            if f.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(r);
            for (a, b) in head[above][c..ncols].iter_mut().zip(&tail[0][c..ncols]) {
                *a -= &f * b;
            }
        }
    }
    (rows, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let mut a = integer_rows(m);
    bareiss(&mut a, ncols).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column, scaled to integers
/// with positive leading entry.
pub fn nullspace(m: &Matrix, ncols: usize) -> Matrix {
    if m.is_empty() {
        return (0..ncols)
            .map(|f| {
                (0..ncols)
                    .map(|j| Scalar::from_integer(BigInt::from((j == f) as i32)))
                    .collect()
            })
            .collect();
    }
    let (rows, pivots) = rref(m);
    let mut out = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); ncols];
        v[f] = Scalar::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -rows[r][f].clone();
        }
        out.push(primitive(v));
    }
    out
}

/// Scales a rational vector to a primitive integer vector with positive
/// leading entry.
pub fn primitive(v: Vec<Scalar>) -> Vec<Scalar> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    if ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        g = -g;
    }
    ints.into_iter()
        .map(|x| Scalar::from_integer(x / &g))
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}
