//! Smith normal form over the integers: elementary divisors and rank.
//!
//! Elimination runs on `i64` with checked arithmetic. On overflow it either
//! restarts on arbitrary-precision integers or reports the overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Arithmetic {
    /// Checked `i64`, restarting on `BigInt` if an entry overflows.
    #[default]
    Adaptive,
    /// Checked `i64` only.
    FixedWidth,
    BigInt,
}

/// Elementary divisors `d₁ | d₂ | …` (units included) and the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub divisors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Divisors greater than one, as torsion coefficients.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

trait Entry: Clone + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    /// `q` with `|self − q·d| < |d|`.
    fn quotient(&self, d: &Self) -> Option<Self>;
    /// `self − q·b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl Entry for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quotient(&self, d: &Self) -> Option<Self> {
        self.checked_div_euclid(*d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Entry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn quotient(&self, d: &Self) -> Option<Self> {
        Some(self.div_floor(d))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

struct Overflow;

/// Diagonalizes in place and returns the nonzero diagonal.
fn diagonalize<T: Entry>(mut a: Vec<Vec<T>>, cols: usize) -> std::result::Result<Vec<T>, Overflow> {
    let rows = a.len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs_lt(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            // clear column t below the pivot
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].quotient(&a[t][t]).ok_or(Overflow)?;
                let (head, tail) = a.split_at_mut(i);
                let (pivot_row, row) = (&head[t], &mut tail[0]);
                for j in t..cols {
                    if !pivot_row[j].is_zero() {
                        row[j] = row[j].sub_mul(&q, &pivot_row[j]).ok_or(Overflow)?;
                    }
                }
                if !row[t].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                move_min_of_column(&mut a, t);
                continue;
            }
            // column t is clear below, so column operations only touch row t
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].quotient(&a[t][t]).ok_or(Overflow)?;
                a[t][j] = a[t][j].sub_mul(&q, &a[t][t]).ok_or(Overflow)?;
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            let mut best = t;
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs_lt(&a[t][best]) {
                    best = j;
                }
            }
            swap_cols(&mut a, t, best);
        }
        diag.push(std::mem::replace(&mut a[t][t], T::zero()));
    }
    Ok(diag)
}

fn swap_cols<T>(a: &mut [Vec<T>], j: usize, k: usize) {
    if j != k {
        for row in a.iter_mut() {
            row.swap(j, k);
        }
    }
}

fn move_min_of_column<T: Entry>(a: &mut [Vec<T>], t: usize) {
    let mut best = t;
    for i in t + 1..a.len() {
        if !a[i][t].is_zero() && (a[best][t].is_zero() || a[i][t].abs_lt(&a[best][t])) {
            best = i;
        }
    }
    a.swap(t, best);
}

/// Turns a diagonal into a divisibility chain by repeated `(gcd, lcm)`.
fn normalize(diag: Vec<BigInt>) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = diag.into_iter().map(|x| x.abs()).collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Smith normal form of a dense row-major matrix with `cols` columns.
pub fn smith_normal_form(matrix: &[Vec<i64>], cols: usize, mode: Arithmetic) -> Result<SmithForm> {
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(Error::ShapeMismatch("ragged matrix".into()));
    }
    let diag: Vec<BigInt> = match mode {
        Arithmetic::BigInt => big(matrix, cols),
        Arithmetic::FixedWidth | Arithmetic::Adaptive => match diagonalize(matrix.to_vec(), cols) {
            Ok(d) => d.into_iter().map(Entry::into_big).collect(),
            Err(Overflow) if mode == Arithmetic::Adaptive => big(matrix, cols),
            Err(Overflow) => return Err(Error::OverflowDetected),
        },
    };
    let divisors = normalize(diag);
    Ok(SmithForm {
        rank: divisors.len(),
        divisors,
    })
}

fn big(matrix: &[Vec<i64>], cols: usize) -> Vec<BigInt> {
    let a = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    match diagonalize::<BigInt>(a, cols) {
        Ok(d) => d,
        Err(Overflow) => unreachable!("bigint arithmetic does not overflow"),
    }
}
