use crate::error::{Result, SeriesError};
use crate::scalar::Scalar;

use super::LaurentSeries;

impl<T: Scalar> LaurentSeries<T> {
    /// Coefficientwise sum, known to `min(P_a, P_b)`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let precision = self.precision.min(other.precision);
        let start = self.valuation.min(other.valuation).min(precision);
        let mut coeffs = vec![T::zero(); (precision - start) as usize];
        for s in [self, other] {
            for (k, c) in s.terms().take_while(|(k, _)| *k < precision) {
                let slot = &mut coeffs[(k - start) as usize];
                *slot = slot.clone() + c.clone();
            }
        }
        Ok(Self::normalized(self.var.clone(), start, coeffs, precision))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            var: self.var.clone(),
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            precision: self.precision,
        }
    }

    /// Multiplies every coefficient by `c`; precision is unchanged.
    pub fn scale(&self, c: &T) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.clone() * c.clone()).collect();
        Self::normalized(self.var.clone(), self.valuation, coeffs, self.precision)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&T::from_i64(n))
    }

    /// Adds the constant `c`. Requires `precision > 0`, otherwise the
    /// constant term is not representable and the series is returned as is.
    pub fn add_constant(&self, c: &T) -> Self {
        if self.precision <= 0 {
            return self.clone();
        }
        let k = LaurentSeries::constant(self.var.clone(), c.clone(), self.precision);
        self.add(&k).expect("same variable")
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            var: self.var.clone(),
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            precision: self.precision + k,
        }
    }

    /// The substitution `x -> x^k` for `k >= 1`.
    pub fn stretch(&self, k: i64) -> Self {
        assert!(k >= 1, "stretch factor must be positive");
        if self.is_zero() {
            return Self::zero(self.var.clone(), self.precision * k);
        }
        let precision = self.valuation * k + (self.precision - self.valuation) * k;
        let mut coeffs = vec![T::zero(); ((self.precision - self.valuation) * k) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        Self::normalized(self.var.clone(), self.valuation * k, coeffs, precision)
    }

    /// Cauchy product with valuation `v_a + v_b`, known to
    /// `min(P_a + v_b, P_b + v_a)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        Ok(self.mul_capped(other, i64::MAX))
    }

    /// Product whose precision is additionally capped at `cap`.
    pub(crate) fn mul_capped(&self, other: &Self, cap: i64) -> Self {
        let precision = (self.precision + other.valuation)
            .min(other.precision + self.valuation)
            .min(cap);
        let valuation = self.valuation + other.valuation;
        if self.is_zero() || other.is_zero() || valuation >= precision {
            return Self::zero(self.var.clone(), precision);
        }
        let len = (precision - valuation) as usize;
        let coeffs = T::convolve(&self.coeffs, &other.coeffs, len);
        Self::normalized(self.var.clone(), valuation, coeffs, precision)
    }

    /// Multiplicative inverse, valuation `-v`, relative precision preserved.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        let rel = (self.precision - self.valuation) as usize;
        let coeffs = invert_unit(&self.coeffs, rel);
        Ok(Self::normalized(
            self.var.clone(),
            -self.valuation,
            coeffs,
            -self.valuation + rel as i64,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        self.mul(&other.invert()?)
    }

    /// `s^k` by repeated squaring; negative `k` goes through [`invert`](Self::invert).
    ///
    /// `s^0` is `1` known to the relative precision of `s`.
    pub fn pow_int(&self, k: i64) -> Result<Self> {
        if k == 0 {
            let rel = if self.is_zero() {
                self.precision.max(1)
            } else {
                self.precision - self.valuation
            };
            return Ok(Self::one(self.var.clone(), rel));
        }
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut sq = base;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul_capped(&sq, i64::MAX),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = sq.mul_capped(&sq, i64::MAX);
        }
        Ok(acc.expect("k != 0"))
    }

    /// Formal derivative `d/dx`, known to `P - 1`.
    pub fn derivative(&self) -> Self {
        let precision = self.precision - 1;
        if self.is_zero() {
            return Self::zero(self.var.clone(), precision);
        }
        let start = self.valuation - 1;
        let coeffs = self
            .terms()
            .map(|(k, c)| c.clone() * T::from_i64(k))
            .collect();
        Self::normalized(self.var.clone(), start, coeffs, precision)
    }
}

/// Inverse of a power series with nonzero constant term, to `len` terms,
/// by Newton iteration `t <- t * (2 - c * t)`.
pub(crate) fn invert_unit<T: Scalar>(c: &[T], len: usize) -> Vec<T> {
    let mut t = vec![T::one() / c[0].clone()];
    let two = T::from_i64(2);
    let mut have = 1;
    while have < len {
        let next = (2 * have).min(len);
        let mut e = T::convolve(&c[..c.len().min(next)], &t, next);
        for x in e.iter_mut() {
            *x = -x.clone();
        }
        e[0] = e[0].clone() + two.clone();
        t = T::convolve(&t, &e, next);
        have = next;
    }
    t.truncate(len);
    t
}
