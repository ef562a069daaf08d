use crate::error::{Result, SeriesError};
use crate::scalar::Scalar;

use super::LaurentSeries;

impl<T: Scalar> LaurentSeries<T> {
    /// The `m`-th root `t = 1 + O(x)` of a series `s = 1 + O(x)`, with
    /// `t^m = s` to the precision of `s`.
    ///
    /// Computes `r = s^(-1/m)` by the Newton step `r <- r + r (1 - s r^m) / m`,
    /// then `t = s r^(m-1)`. Only divisions by `m` occur, so rational input
    /// gives rational output.
    pub fn unit_root(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(SeriesError::InvalidArgument("root index must be positive".into()));
        }
        if self.valuation != 0 || self.coeffs.first() != Some(&T::one()) {
            return Err(SeriesError::NotUnit);
        }
        if m == 1 {
            return Ok(self.clone());
        }
        let target = self.precision;
        let inv_m = T::one() / T::from_i64(m as i64);
        let mut r = LaurentSeries::one(self.var.clone(), 1);
        let mut have = 1;
        while have < target {
            let next = (2 * have).min(target);
            let guess = LaurentSeries::normalized(self.var.clone(), 0, r.coeffs.clone(), next);
            let sr = self.truncate(next).mul(&guess.pow_int(m as i64)?)?;
            let defect = sr.neg().add_constant(&T::one());
            r = guess.add(&guess.mul(&defect)?.scale(&inv_m))?.truncate(next);
            have = next;
        }
        self.mul(&r.pow_int(m as i64 - 1)?)
    }
}

#[cfg(test)]
mod tests {
    use crate::{QSeries, Rat};

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn root_of_one() {
        let one = QSeries::one("p", 10);
        assert_eq!(one.unit_root(3).unwrap(), one);
    }

    #[test]
    fn cube_root_of_one_minus_pi() {
        let s = QSeries::from_coeffs("p", 0, vec![q(1, 1), q(-1, 1)], 12);
        let t = s.unit_root(3).unwrap();
        assert_eq!(t.precision(), 12);
        assert_eq!(t.coeff(1).unwrap(), q(-1, 3));
        assert_eq!(t.coeff(2).unwrap(), q(-1, 9));
        assert_eq!(t.coeff(3).unwrap(), q(-5, 81));
        assert_eq!(t.pow_int(3).unwrap(), s);
    }

    #[test]
    fn rejects_non_units() {
        let s = QSeries::from_coeffs("p", 0, vec![q(2, 1), q(1, 1)], 5);
        assert!(s.unit_root(3).is_err());
        let s = QSeries::from_coeffs("p", 1, vec![q(1, 1)], 5);
        assert!(s.unit_root(3).is_err());
        assert!(QSeries::one("p", 4).unit_root(0).is_err());
    }
}
