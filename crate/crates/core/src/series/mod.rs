//! Truncated Laurent series with absolute precision.
//!
//! A [`LaurentSeries`] stores a dense run of coefficients from its valuation
//! up to (but excluding) its precision `P`; the value is known modulo `x^P`.
//! The zero series has no stored coefficients and valuation equal to `P`.
//! Every operation derives the output precision from the inputs and never
//! reports coefficients it cannot prove.

mod arith;
mod compose;
mod root;

use std::fmt;

use crate::error::{Result, SeriesError};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries<T> {
    var: String,
    valuation: i64,
    coeffs: Vec<T>,
    precision: i64,
}

impl<T: Scalar> LaurentSeries<T> {
    /// Builds a series whose coefficient of `x^(start + i)` is `coeffs[i]`.
    ///
    /// Exponents in `start..precision` not covered by `coeffs` are known
    /// zeros; entries at or beyond `precision` are dropped.
    pub fn from_coeffs(var: impl Into<String>, start: i64, coeffs: Vec<T>, precision: i64) -> Self {
        Self::normalized(var.into(), start, coeffs, precision)
    }

    pub(crate) fn normalized(var: String, start: i64, mut coeffs: Vec<T>, precision: i64) -> Self {
        let span = (precision - start).max(0) as usize;
        coeffs.truncate(span);
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Self::zero(var, precision),
            Some(i) => {
                coeffs.drain(..i);
                let valuation = start + i as i64;
                coeffs.resize((precision - valuation) as usize, T::zero());
                LaurentSeries {
                    var,
                    valuation,
                    coeffs,
                    precision,
                }
            }
        }
    }

    /// `sum c * x^k` over the given terms, known modulo `x^precision`.
    pub fn from_terms(var: impl Into<String>, terms: &[(i64, T)], precision: i64) -> Self {
        let Some(lo) = terms.iter().map(|(k, _)| *k).min() else {
            return Self::zero(var, precision);
        };
        let mut coeffs = vec![T::zero(); (precision - lo).max(0) as usize];
        for (k, c) in terms {
            if *k < precision {
                let slot = &mut coeffs[(k - lo) as usize];
                *slot = slot.clone() + c.clone();
            }
        }
        Self::normalized(var.into(), lo, coeffs, precision)
    }

    pub fn zero(var: impl Into<String>, precision: i64) -> Self {
        LaurentSeries {
            var: var.into(),
            valuation: precision,
            coeffs: Vec::new(),
            precision,
        }
    }

    pub fn constant(var: impl Into<String>, c: T, precision: i64) -> Self {
        Self::from_terms(var, &[(0, c)], precision)
    }

    pub fn one(var: impl Into<String>, precision: i64) -> Self {
        Self::constant(var, T::one(), precision)
    }

    /// `c * x^k` known modulo `x^precision`.
    pub fn monomial(var: impl Into<String>, k: i64, c: T, precision: i64) -> Self {
        Self::from_terms(var, &[(k, c)], precision)
    }

    /// The variable itself, `x + O(x^precision)`.
    pub fn variable(var: impl Into<String>, precision: i64) -> Self {
        Self::monomial(var, 1, T::one(), precision)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored coefficients, for exponents `valuation..precision`.
    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Option<&T> {
        self.coeffs.first()
    }

    /// Coefficient of `x^k`. Asking at or beyond the precision is an error.
    pub fn coeff(&self, k: i64) -> Result<T> {
        if k >= self.precision {
            return Err(SeriesError::PrecisionExceeded {
                index: k,
                precision: self.precision,
            });
        }
        if k < self.valuation {
            return Ok(T::zero());
        }
        Ok(self.coeffs[(k - self.valuation) as usize].clone())
    }

    /// `(exponent, coefficient)` pairs for every stored coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    /// Dense coefficients for exponents `from..precision` (zeros below the valuation).
    pub fn dense_from(&self, from: i64) -> Vec<T> {
        (from..self.precision)
            .map(|k| self.coeff(k).expect("index below precision"))
            .collect()
    }

    /// Same coefficients, read in a different variable name.
    pub fn with_var(mut self, var: impl Into<String>) -> Self {
        self.var = var.into();
        self
    }

    /// Forgets everything at or beyond `x^precision`. Never raises the precision.
    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        Self::normalized(self.var.clone(), self.valuation, self.coeffs.clone(), precision)
    }

    /// Whether both series agree on every exponent known to both.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_disagreement(other).is_none()
    }

    /// The lowest exponent below `min(P_self, P_other)` where the coefficients
    /// differ, with both values.
    pub fn first_disagreement(&self, other: &Self) -> Option<(i64, T, T)> {
        let hi = self.precision.min(other.precision);
        let lo = self.valuation.min(other.valuation);
        (lo..hi).find_map(|k| {
            let a = self.coeff(k).ok()?;
            let b = other.coeff(k).ok()?;
            (a != b).then_some((k, a, b))
        })
    }

    pub(crate) fn check_var(&self, other: &Self) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(SeriesError::VariableMismatch {
                left: self.var.clone(),
                right: other.var.clone(),
            })
        }
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for LaurentSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{k}", self.var)?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O({}^{})", self.var, self.precision)
    }
}
