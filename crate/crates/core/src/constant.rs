//! Real algebraic constants of the form `base^(p/q)` with rational base.
//!
//! Only the bookkeeping needed for roots of rational constants is provided:
//! products and powers are reduced to a canonical `base^(1/n)` with `n`
//! minimal, and collapse to an exact rational whenever the base is a perfect
//! power. Roots are taken on the real branch with the exponent first reduced
//! to lowest terms, so negative bases are only meaningful for odd indices.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SeriesError};
use crate::scalar::exact_rat_root;
use crate::Rat;

/// `base^(1/root_index)` where no exact simplification exists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolicConstantRoot {
    base: Rat,
    root_index: u32,
}

impl SymbolicConstantRoot {
    pub fn base(&self) -> &Rat {
        &self.base
    }

    pub fn root_index(&self) -> u32 {
        self.root_index
    }

    /// `self^root_index`, which is the base.
    pub fn reconstruct(&self) -> Rat {
        self.base.clone()
    }
}

/// Either an exact rational or an irreducible symbolic root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConstantRoot {
    Rational(Rat),
    Symbolic(SymbolicConstantRoot),
}

fn rat_pow(base: &Rat, e: i64) -> Rat {
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// `base^(num/den)` in canonical form.
pub fn rational_power(base: &Rat, num: i64, den: u32) -> Result<ConstantRoot> {
    if den == 0 {
        return Err(SeriesError::InvalidArgument("zero root index".into()));
    }
    if base.is_zero() {
        return if num > 0 {
            Ok(ConstantRoot::Rational(Rat::zero()))
        } else {
            Err(SeriesError::InvalidArgument("non-positive power of zero".into()))
        };
    }
    let g = (num.unsigned_abs()).gcd(&(den as u64)).max(1);
    let num = num / g as i64;
    let den = (den as u64 / g) as u32;
    let base = rat_pow(base, num);
    // largest divisor k of den for which base has an exact k-th root
    let mut best = (base.clone(), den);
    for k in (2..=den).rev() {
        if den % k != 0 {
            continue;
        }
        if let Some(r) = exact_rat_root(&base, k) {
            best = (r, den / k);
            break;
        }
    }
    let (base, n) = best;
    Ok(if n == 1 {
        ConstantRoot::Rational(base)
    } else {
        ConstantRoot::Symbolic(SymbolicConstantRoot {
            base,
            root_index: n,
        })
    })
}

impl ConstantRoot {
    pub fn one() -> Self {
        ConstantRoot::Rational(Rat::one())
    }

    /// `c^(1/m)`, rational when `c` is a perfect `m`-th power.
    pub fn root_of(c: &Rat, m: u32) -> Result<Self> {
        rational_power(c, 1, m)
    }

    fn parts(&self) -> (&Rat, u32) {
        match self {
            ConstantRoot::Rational(r) => (r, 1),
            ConstantRoot::Symbolic(s) => (&s.base, s.root_index),
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            ConstantRoot::Rational(r) => Some(r),
            ConstantRoot::Symbolic(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// `self^(k/d)`.
    pub fn pow_ratio(&self, k: i64, d: u32) -> Result<Self> {
        let (base, n) = self.parts();
        rational_power(base, k, n * d)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        self.pow_ratio(k, 1)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, m) = self.parts();
        let (b, n) = other.parts();
        let l = m.lcm(&n);
        let base = rat_pow(a, (l / m) as i64) * rat_pow(b, (l / n) as i64);
        rational_power(&base, 1, l)
    }

    pub fn mul_rat(&self, r: &Rat) -> Result<Self> {
        self.mul(&ConstantRoot::Rational(r.clone()))
    }

    pub fn is_negative_rational(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_negative())
    }
}

impl fmt::Display for ConstantRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantRoot::Rational(r) => write!(f, "{r}"),
            ConstantRoot::Symbolic(s) => write!(f, "({})^(1/{})", s.base, s.root_index),
        }
    }
}
