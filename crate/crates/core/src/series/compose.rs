use crate::error::{Result, SeriesError};
use crate::scalar::Scalar;

use super::LaurentSeries;

impl<T: Scalar> LaurentSeries<T> {
    /// `outer(inner)`, in the variable of `inner`.
    ///
    /// `inner` must have positive valuation `w`. A truncation `O(y^P)` of the
    /// outer series becomes `O(x^(P*w))`, and the error in `inner` enters the
    /// term `a_k y^k` at `x^(P_inner + (k-1)*w)`; the result is known to the
    /// smallest of these over the nonzero terms with `k != 0`. Negative powers
    /// of `y` go through the inverse of `inner`.
    ///
    /// The nonnegative part is evaluated by baby-step giant-step (Paterson and
    /// Stockmeyer), so a composition costs about `2*sqrt(P)` full products.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let w = inner.valuation;
        if w < 1 {
            return Err(SeriesError::InnerValuation(w));
        }
        let var = inner.var.clone();
        let mut precision = self.precision.saturating_mul(w);
        for (k, c) in self.terms() {
            if k != 0 && !c.is_zero() {
                precision = precision.min(inner.precision + (k - 1) * w);
            }
        }
        let negative = self.valuation < 0 && !self.is_zero();
        if negative && inner.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }

        let mut result = LaurentSeries::zero(var.clone(), precision);
        if precision > 0 {
            let dense = self.power_part(inner, precision as usize);
            result = LaurentSeries::normalized(var.clone(), 0, dense, precision);
        }
        if negative {
            let neg = self.negative_part(inner, precision)?;
            result = result.add(&neg)?;
        }
        Ok(result.truncate(precision))
    }

    /// `sum_{k >= 0} a_k inner^k` as a dense vector of length `len`.
    fn power_part(&self, inner: &Self, len: usize) -> Vec<T> {
        let w = inner.valuation as usize;
        let last = ((len - 1) / w) as i64;
        let kmax = last.min(self.precision - 1);
        if kmax < 0 || kmax < self.valuation.max(0) {
            return vec![T::zero(); len];
        }
        let a: Vec<T> = (0..=kmax)
            .map(|k| self.coeff(k).expect("below precision"))
            .collect();
        let g = inner.dense_from(0);
        let g = &g[..g.len().min(len)];

        let n = a.len();
        let m = (n as f64).sqrt().ceil().max(1.0) as usize;
        let mut powers: Vec<Vec<T>> = Vec::with_capacity(m + 1);
        let mut one = vec![T::zero(); len];
        one[0] = T::one();
        powers.push(one);
        for i in 1..=m {
            let next = T::convolve(&powers[i - 1], g, len);
            powers.push(next);
        }
        let baby: Vec<&[T]> = powers[..m].iter().map(|p| p.as_slice()).collect();
        let giant = &powers[m];

        let blocks: Vec<&[T]> = a.chunks(m).collect();
        let mut acc = T::combine(blocks[blocks.len() - 1], &baby, len);
        for block in blocks[..blocks.len() - 1].iter().rev() {
            let mut next = T::convolve(&acc, giant, len);
            let b = T::combine(block, &baby, len);
            for (x, y) in next.iter_mut().zip(b) {
                *x = x.clone() + y;
            }
            acc = next;
        }
        acc
    }

    /// `sum_{k < 0} a_k inner^k` by Horner's rule in `1/inner`.
    fn negative_part(&self, inner: &Self, precision: i64) -> Result<Self> {
        let h = inner.invert()?;
        let depth = -self.valuation;
        let slack = precision + (depth + 1) * inner.valuation;
        // terms at or past the outer precision land beyond `precision`
        let constant = |k: i64| -> Result<Self> {
            let c = if k < self.precision { self.coeff(k)? } else { T::zero() };
            Ok(LaurentSeries::constant(inner.var.clone(), c, slack))
        };
        let mut acc = constant(self.valuation)?;
        for k in (self.valuation + 1)..0 {
            acc = acc.mul_capped(&h, slack).add(&constant(k)?)?;
        }
        Ok(acc.mul_capped(&h, slack))
    }

    /// Compositional inverse of a series `x + O(x^2)`: the `t` with
    /// `self(t) = x` to the precision of `self`.
    ///
    /// Newton iteration `t <- t - (s(t) - x) / s'(t)`, doubling the number
    /// of correct terms each round.
    pub fn revert(&self) -> Result<Self> {
        if self.valuation != 1 || self.coeffs.first() != Some(&T::one()) {
            return Err(SeriesError::NotRevertible);
        }
        let target = self.precision;
        let x = LaurentSeries::variable(self.var.clone(), target);
        let ds = self.derivative();
        let mut t = LaurentSeries::variable(self.var.clone(), 2.min(target));
        let mut have = 2;
        while have < target {
            let next = (2 * have).min(target);
            let guess = LaurentSeries::normalized(self.var.clone(), 1, t.coeffs.clone(), next);
            let value = self.truncate(next).compose(&guess)?;
            let slope = ds.compose(&guess)?;
            let step = value.sub(&x)?.mul(&slope.invert()?)?;
            t = guess.sub(&step)?.truncate(next);
            have = next;
        }
        Ok(t)
    }
}
