//! Dense univariate polynomials over a field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{exact_rat_root, Scalar};
use crate::Rat;

/// Coefficients stored low degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `x - r`.
    pub fn linear_root(r: T) -> Self {
        Self::new(vec![-r, T::one()])
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let len = self.coeffs.len() + o.coeffs.len() - 1;
        Self::new(T::convolve(&self.coeffs, &o.coeffs, len))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.lead().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&(T::one() / l.clone())),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Yun's square-free decomposition: monic, pairwise coprime factors
    /// `g_i` with `self = lead * prod g_i^i`. Only factors of positive degree
    /// are listed.
    pub fn square_free_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let c = f.gcd(&df);
        let mut w = f.exact_div(&c);
        let mut y = df.exact_div(&c);
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let z = y.sub(&w.derivative());
            let g = w.gcd(&z);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            w = w.exact_div(&g);
            y = z.exact_div(&g);
            i += 1;
        }
        out
    }
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    const LIMIT: u64 = 1_000_000;
    let n: u64 = n.abs().try_into().ok()?;
    if n == 0 {
        return None;
    }
    let mut m = n;
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if p > LIMIT {
            return None;
        }
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = 1;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        divs = next;
    }
    Some(divs.into_iter().map(BigInt::from).collect())
}

impl Polynomial<Rat> {
    /// Scales to a primitive integer polynomial with positive leading term.
    pub fn primitive_part(&self) -> Vec<BigInt> {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// All rational roots, each listed once. Linear and quadratic factors are
    /// solved directly; higher degrees use the rational root test when the
    /// extreme coefficients are small enough to factor, and otherwise report
    /// only the roots found among the linear and quadratic cases.
    pub fn rational_roots(&self) -> Vec<Rat> {
        let mut roots = Vec::new();
        let Some(deg) = self.degree() else {
            return roots;
        };
        if deg == 0 {
            return roots;
        }
        let mut f = self.clone();
        if f.coeff(0).is_zero() {
            roots.push(Rat::zero());
            while f.coeff(0).is_zero() {
                f = Polynomial::new(f.coeffs[1..].to_vec());
            }
        }
        match f.degree() {
            Some(1) => roots.push(-f.coeff(0) / f.coeff(1)),
            Some(2) => {
                let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
                let disc = &b * &b - Rat::from_integer(4.into()) * &a * &c;
                if let Some(s) = exact_rat_root(&disc, 2) {
                    let two_a = Rat::from_integer(2.into()) * &a;
                    let r1 = (-&b + &s) / &two_a;
                    let r2 = (-&b - &s) / &two_a;
                    roots.push(r1.clone());
                    if r2 != r1 {
                        roots.push(r2);
                    }
                }
            }
            Some(d) if d >= 3 => {
                let ints = f.primitive_part();
                if let (Some(ps), Some(qs)) = (
                    small_divisors(&ints[0]),
                    small_divisors(ints.last().expect("nonzero")),
                ) {
                    for p in &ps {
                        for q in &qs {
                            for sign in [1, -1] {
                                let r = Rat::new(p * sign, q.clone());
                                if f.eval(&r).is_zero() && !roots.contains(&r) {
                                    roots.push(r);
                                }
                            }
                        }
                    }
                }
            }
            _ => {}
        }
        roots.sort();
        roots
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}
