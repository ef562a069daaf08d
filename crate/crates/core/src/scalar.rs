//! Coefficient types.
//!
//! All series and polynomial code is generic over [`Scalar`]. The exact
//! instantiation is [`Rat`](crate::Rat); `f64`/`f32` work for quick numeric
//! experiments but carry no exactness guarantees.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

/// A field element usable as a series or polynomial coefficient.
///
/// The two bulk kernels have naive default implementations; exact rationals
/// override them to work over a common denominator, which replaces one gcd
/// per product by one gcd per output coefficient.
pub trait Scalar:
    Num + std::ops::Neg<Output = Self> + Clone + Debug + Send + Sync + 'static
{
    fn from_i64(n: i64) -> Self;

    /// Truncated Cauchy product: `c[k] = sum a[i] * b[k - i]` for `k < len`.
    fn convolve(a: &[Self], b: &[Self], len: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        out
    }

    /// `out[k] = sum_i weights[i] * rows[i][k]` for `k < len`; short rows are
    /// padded with zeros.
    fn combine(weights: &[Self], rows: &[&[Self]], len: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(); len];
        for (w, row) in weights.iter().zip(rows) {
            if w.is_zero() {
                continue;
            }
            for (k, c) in row.iter().enumerate().take(len) {
                out[k] = out[k].clone() + w.clone() * c.clone();
            }
        }
        out
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Scalar for f32 {
    fn from_i64(n: i64) -> Self {
        n as f32
    }
}

/// Scales a run of rationals to integers over their least common denominator.
fn integerize(xs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = xs
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums = xs
        .iter()
        .map(|x| {
            if x.denom() == &den {
                x.numer().clone()
            } else {
                x.numer() * (&den / x.denom())
            }
        })
        .collect();
    (nums, den)
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn convolve(a: &[Self], b: &[Self], len: usize) -> Vec<Self> {
        let a = &a[..a.len().min(len)];
        let b = &b[..b.len().min(len)];
        let (an, ad) = integerize(a);
        let (bn, bd) = integerize(b);
        let mut acc = vec![BigInt::zero(); len];
        for (i, x) in an.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bn.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let den = ad * bd;
        acc.into_iter()
            .map(|n| BigRational::new(n, den.clone()))
            .collect()
    }

    fn combine(weights: &[Self], rows: &[&[Self]], len: usize) -> Vec<Self> {
        let scaled: Vec<(BigInt, BigInt, Vec<BigInt>)> = weights
            .iter()
            .zip(rows)
            .filter(|(w, _)| !w.is_zero())
            .map(|(w, row)| {
                let (nums, den) = integerize(&row[..row.len().min(len)]);
                (w.numer().clone(), w.denom() * den, nums)
            })
            .collect();
        let common = scaled
            .iter()
            .fold(BigInt::one(), |acc, (_, d, _)| acc.lcm(d));
        let mut acc = vec![BigInt::zero(); len];
        for (num, den, nums) in &scaled {
            let factor = num * (&common / den);
            for (k, c) in nums.iter().enumerate() {
                if !c.is_zero() {
                    acc[k] += &factor * c;
                }
            }
        }
        acc.into_iter()
            .map(|n| BigRational::new(n, common.clone()))
            .collect()
    }
}

/// Exact `m`-th root of an integer, if one exists. Negative inputs have a
/// root only for odd `m`.
pub fn exact_int_root(n: &BigInt, m: u32) -> Option<BigInt> {
    if m == 0 {
        return None;
    }
    if n.is_negative() {
        if m % 2 == 0 {
            return None;
        }
        return exact_int_root(&-n, m).map(|r| -r);
    }
    let r = n.nth_root(m);
    if num_traits::pow(r.clone(), m as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact `m`-th root of a rational, if it is a rational `m`-th power.
pub fn exact_rat_root(r: &BigRational, m: u32) -> Option<BigRational> {
    let num = exact_int_root(r.numer(), m)?;
    let den = exact_int_root(r.denom(), m)?;
    Some(BigRational::new(num, den))
}

/// Whether a rational is the square of a rational.
pub fn is_rational_square(r: &BigRational) -> bool {
    !r.is_negative() && exact_rat_root(r, 2).is_some()
}

/// Parses `"a"` or `"a/b"` into a normalized rational.
pub fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str_radix(n.trim(), 10).ok()?;
            let d = BigInt::from_str_radix(d.trim(), 10).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => BigInt::from_str_radix(s, 10)
            .ok()
            .map(BigRational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_convolution_matches_naive() {
        let a = vec![q(1, 3), q(-2, 5), q(7, 9), q(0, 1)];
        let b = vec![q(3, 4), q(1, 1), q(-1, 6)];
        let fast = BigRational::convolve(&a, &b, 5);
        let mut slow = vec![BigRational::zero(); 5];
        for i in 0..a.len() {
            for j in 0..b.len() {
                if i + j < 5 {
                    slow[i + j] += &a[i] * &b[j];
                }
            }
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn rational_combine_matches_naive() {
        let r1 = vec![q(1, 2), q(1, 3)];
        let r2 = vec![q(-5, 7), q(2, 9), q(4, 1)];
        let w = vec![q(3, 2), q(-1, 4)];
        let got = BigRational::combine(&w, &[&r1, &r2], 3);
        let want = vec![
            q(3, 2) * q(1, 2) + q(-1, 4) * q(-5, 7),
            q(3, 2) * q(1, 3) + q(-1, 4) * q(2, 9),
            q(-1, 4) * q(4, 1),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn exact_roots() {
        assert_eq!(exact_rat_root(&q(-1, 27), 3), Some(q(-1, 3)));
        assert_eq!(exact_rat_root(&q(-1, 27), 9), None);
        assert_eq!(exact_rat_root(&q(16, 81), 4), Some(q(2, 3)));
        assert_eq!(exact_rat_root(&q(-4, 1), 2), None);
        assert!(is_rational_square(&q(9, 4)));
        assert!(!is_rational_square(&q(-3, 1)));
    }

    #[test]
    fn parse_canonicalizes() {
        assert_eq!(parse_rat("6/-4"), Some(q(-3, 2)));
        assert_eq!(parse_rat("-12"), Some(q(-12, 1)));
        assert_eq!(parse_rat("1/0"), None);
    }
}
