//! Puiseux series: Laurent series in a fractional power `x^(1/d)`.
//!
//! A [`PuiseuxSeries`] pairs a ramification index `d` with a body series in
//! `y = x^(1/d)`; the represented exponents are `k/d` for `k` in the support
//! of the body. Mixed arithmetic rescales both sides to `lcm(d_a, d_b)`.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::constant::ConstantRoot;
use crate::error::{Result, SeriesError};
use crate::scalar::Scalar;
use crate::series::LaurentSeries;
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxSeries<T> {
    ramification: u32,
    body: LaurentSeries<T>,
}

fn ratio(k: i64, d: u32) -> Rat {
    Rat::new(k.into(), (d as i64).into())
}

impl<T: Scalar> PuiseuxSeries<T> {
    pub fn new(ramification: u32, body: LaurentSeries<T>) -> Result<Self> {
        if ramification == 0 {
            return Err(SeriesError::ZeroRamification);
        }
        Ok(PuiseuxSeries { ramification, body })
    }

    /// Reads the variable of `s` as `x^(1/d)`.
    pub fn lift(s: &LaurentSeries<T>, d: u32) -> Result<Self> {
        Self::new(d, s.clone())
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    pub fn body(&self) -> &LaurentSeries<T> {
        &self.body
    }

    pub fn into_body(self) -> LaurentSeries<T> {
        self.body
    }

    pub fn var(&self) -> &str {
        self.body.var()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn valuation(&self) -> Rat {
        ratio(self.body.valuation(), self.ramification)
    }

    pub fn precision(&self) -> Rat {
        ratio(self.body.precision(), self.ramification)
    }

    /// Coefficient of `x^e`; exponents off the lattice `(1/d)Z` are zero.
    pub fn coeff(&self, e: &Rat) -> Result<T> {
        let scaled = e * Rat::from_integer((self.ramification as i64).into());
        if scaled >= Rat::from_integer(self.body.precision().into()) {
            return Err(SeriesError::PrecisionExceeded {
                index: scaled.floor().to_integer().try_into().unwrap_or(i64::MAX),
                precision: self.body.precision(),
            });
        }
        if !scaled.is_integer() {
            return Ok(T::zero());
        }
        let k: i64 = scaled.to_integer().try_into().map_err(|_| {
            SeriesError::InvalidArgument("exponent out of range".into())
        })?;
        self.body.coeff(k)
    }

    /// `(exponent, coefficient)` for every stored body coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (Rat, &T)> + '_ {
        let d = self.ramification;
        self.body.terms().map(move |(k, c)| (ratio(k, d), c))
    }

    /// The same series over ramification `d * k`.
    pub fn rescale(&self, k: u32) -> Self {
        assert!(k >= 1);
        PuiseuxSeries {
            ramification: self.ramification * k,
            body: self.body.stretch(k as i64),
        }
    }

    /// Divides out the gcd of `d` and the exponent support. Unknown tail
    /// positions that fall between lattice points are dropped, so the
    /// precision rounds down.
    pub fn normalize(&self) -> Self {
        let mut g = self.ramification as i64;
        for (k, c) in self.body.terms() {
            if !c.is_zero() {
                g = g.gcd(&k);
            }
        }
        let g = g.max(1);
        if g == 1 {
            return self.clone();
        }
        let precision = Integer::div_floor(&self.body.precision(), &g);
        if self.body.is_zero() {
            return PuiseuxSeries {
                ramification: self.ramification / g as u32,
                body: LaurentSeries::zero(self.body.var(), precision),
            };
        }
        let coeffs: Vec<T> = self
            .body
            .coefficients()
            .iter()
            .step_by(g as usize)
            .cloned()
            .collect();
        PuiseuxSeries {
            ramification: self.ramification / g as u32,
            body: LaurentSeries::from_coeffs(
                self.body.var(),
                self.body.valuation() / g,
                coeffs,
                precision,
            ),
        }
    }

    fn common(&self, other: &Self) -> (LaurentSeries<T>, LaurentSeries<T>, u32) {
        let d = self.ramification.lcm(&other.ramification);
        let a = self.rescale(d / self.ramification).body;
        let b = other.rescale(d / other.ramification).body;
        (a, b, d)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b, d) = self.common(other);
        Self::new(d, a.add(&b)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let (a, b, d) = self.common(other);
        Self::new(d, a.sub(&b)?)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b, d) = self.common(other);
        Self::new(d, a.mul(&b)?)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        let (a, b, d) = self.common(other);
        Self::new(d, a.div(&b)?)
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries {
            ramification: self.ramification,
            body: self.body.neg(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        PuiseuxSeries {
            ramification: self.ramification,
            body: self.body.scale(c),
        }
    }

    pub fn pow_int(&self, k: i64) -> Result<Self> {
        Self::new(self.ramification, self.body.pow_int(k)?)
    }

    /// Multiplication by `x^e` for `e` on the lattice `(1/d)Z`, rescaling if needed.
    pub fn shift(&self, e: &Rat) -> Self {
        let den: u32 = e.denom().try_into().expect("small exponent denominator");
        let base = if (self.ramification % den) == 0 {
            self.clone()
        } else {
            self.rescale(den / (den.gcd(&self.ramification)))
        };
        let k = e * Rat::from_integer((base.ramification as i64).into());
        let k: i64 = k.to_integer().try_into().expect("small exponent");
        PuiseuxSeries {
            ramification: base.ramification,
            body: base.body.shift(k),
        }
    }

    /// Equality on every exponent known to both sides.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let (a, b, _) = self.common(other);
        a.agrees_with(&b)
    }
}

/// `constant * x^exponent * unit` with `unit` of constant term 1.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDecomposition {
    pub constant: ConstantRoot,
    pub exponent: Rat,
    pub unit: PuiseuxSeries<Rat>,
}

impl RootDecomposition {
    /// `(constant, exponent, unit)` raised to the `k`-th power.
    pub fn pow(&self, k: i64) -> Result<Self> {
        Ok(RootDecomposition {
            constant: self.constant.pow(k)?,
            exponent: &self.exponent * Rat::from_integer(k.into()),
            unit: self.unit.pow_int(k)?,
        })
    }

    /// The represented series, when the constant is rational.
    pub fn reassemble(&self) -> Option<PuiseuxSeries<Rat>> {
        let c = self.constant.as_rational()?;
        Some(self.unit.scale(c).shift(&self.exponent))
    }
}

/// A Puiseux series with coefficients in `Q`, times one algebraic constant.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledSeries {
    pub constant: ConstantRoot,
    pub series: PuiseuxSeries<Rat>,
}

impl PuiseuxSeries<Rat> {
    /// Splits `p = c x^e u` and returns `(c^(1/m), e/m, u^(1/m))`.
    ///
    /// The root of the unit part always has rational coefficients; it is
    /// returned at ramification `d*m`, alongside the exponent `e/m`.
    pub fn frac_root(&self, m: u32) -> Result<RootDecomposition> {
        if m == 0 {
            return Err(SeriesError::InvalidArgument("root index must be positive".into()));
        }
        let lead = self.body.leading_coefficient().ok_or(SeriesError::ZeroSeries)?.clone();
        let v = self.body.valuation();
        let unit = self.body.shift(-v).scale(&lead.recip());
        let root = unit.unit_root(m)?;
        Ok(RootDecomposition {
            constant: ConstantRoot::root_of(&lead, m)?,
            exponent: ratio(v, self.ramification * m),
            unit: PuiseuxSeries::new(self.ramification, root)?.rescale(m),
        })
    }

    /// Substitutes `x -> scale * t^e` (`e > 0`) into the series, writing the
    /// result in variable `var`.
    ///
    /// The body term `y^k` becomes `scale^(k/d) t^(k e/d)`. The constant of the
    /// lowest term is factored out; every other term must differ from it by a
    /// rational factor.
    pub fn substitute_monomial(
        &self,
        scale: &ConstantRoot,
        exponent: &Rat,
        var: &str,
    ) -> Result<ScaledSeries> {
        if *exponent <= Rat::zero() {
            return Err(SeriesError::NotRepresentable(
                "target exponent must be positive".into(),
            ));
        }
        if scale.as_rational().is_some_and(|r| r.is_zero()) {
            return Err(SeriesError::NotRepresentable("zero scale collapses the series".into()));
        }
        let a: i64 = exponent.numer().try_into().map_err(|_| {
            SeriesError::NotRepresentable("exponent numerator too large".into())
        })?;
        let b: u32 = exponent.denom().try_into().map_err(|_| {
            SeriesError::NotRepresentable("exponent denominator too large".into())
        })?;
        let d = self.ramification;
        let new_ram = d * b;
        let precision = self.body.precision() * a;
        if self.body.is_zero() {
            return Ok(ScaledSeries {
                constant: ConstantRoot::one(),
                series: PuiseuxSeries::new(new_ram, LaurentSeries::zero(var, precision))?,
            });
        }
        let k0 = self.body.valuation();
        let constant = scale.pow_ratio(k0, d)?;
        let mut terms = Vec::new();
        for (k, c) in self.body.terms() {
            if c.is_zero() {
                continue;
            }
            let factor = match scale.pow_ratio(k - k0, d)? {
                ConstantRoot::Rational(r) => r,
                ConstantRoot::Symbolic(s) => {
                    return Err(SeriesError::NotRepresentable(format!(
                        "term x^({k}/{d}) carries the irrational factor ({})^(1/{}) relative to the leading term",
                        s.base(),
                        s.root_index()
                    )))
                }
            };
            terms.push((k * a, c * factor));
        }
        Ok(ScaledSeries {
            constant,
            series: PuiseuxSeries::new(new_ram, LaurentSeries::from_terms(var, &terms, precision))?,
        })
    }

    pub fn one(var: &str, precision: i64) -> Self {
        PuiseuxSeries {
            ramification: 1,
            body: LaurentSeries::one(var, precision),
        }
    }

    /// Whether the series is `1 + (higher terms)`.
    pub fn is_unit_normalized(&self) -> bool {
        self.body.valuation() == 0 && self.body.leading_coefficient() == Some(&Rat::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QSeries;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn mono(e_num: i64, d: u32, p: i64) -> PuiseuxSeries<Rat> {
        PuiseuxSeries::new(d, QSeries::monomial("x", e_num, q(1, 1), p)).unwrap()
    }

    #[test]
    fn lift_reads_fractional_variable() {
        let s = QSeries::from_coeffs("x", 0, vec![q(1, 1), q(1, 1)], 5);
        let p = PuiseuxSeries::lift(&s, 3).unwrap();
        assert_eq!(p.coeff(&q(1, 3)).unwrap(), q(1, 1));
        assert_eq!(p.coeff(&q(1, 2)).unwrap(), q(0, 1));
        assert_eq!(p.precision(), q(5, 3));
        assert!(PuiseuxSeries::lift(&s, 0).is_err());
    }

    #[test]
    fn mixed_ramification_product() {
        let p = mono(1, 2, 10).mul(&mono(1, 3, 10)).unwrap();
        assert_eq!(p.ramification(), 6);
        assert_eq!(p.valuation(), q(5, 6));
        let s = mono(1, 3, 10).add(&mono(1, 3, 10)).unwrap();
        assert_eq!(s.coeff(&q(1, 3)).unwrap(), q(2, 1));
    }

    #[test]
    fn normalize_drops_unused_ramification() {
        let p = mono(2, 6, 12).normalize();
        assert_eq!(p.ramification(), 3);
        assert_eq!(p.valuation(), q(1, 3));
        assert_eq!(p.precision(), q(6, 3));
        assert_eq!(p.normalize(), p);
    }

    #[test]
    fn frac_root_of_monomial() {
        let x = PuiseuxSeries::lift(&QSeries::variable("x", 10), 1).unwrap();
        let dec = x.frac_root(3).unwrap();
        assert_eq!(dec.constant, ConstantRoot::Rational(q(1, 1)));
        assert_eq!(dec.exponent, q(1, 3));
        assert!(dec.unit.agrees_with(&PuiseuxSeries::one("x", 9)));
    }

    #[test]
    fn frac_root_reassembles() {
        let s = QSeries::from_coeffs("x", 1, vec![q(-1, 27), q(-4, 243), q(5, 7)], 8);
        let p = PuiseuxSeries::lift(&s, 1).unwrap();
        let dec = p.frac_root(3).unwrap();
        assert_eq!(dec.constant, ConstantRoot::Rational(q(-1, 3)));
        assert_eq!(dec.unit.coeff(&q(1, 1)).unwrap(), q(4, 27));
        let back = dec.pow(3).unwrap().reassemble().unwrap();
        assert!(back.agrees_with(&p));
        assert_eq!(back.precision(), p.precision());
    }

    #[test]
    fn divide_out_the_uniformizer() {
        let s = QSeries::from_coeffs("p", 1, vec![q(-1, 27), q(-4, 243)], 6);
        let p = PuiseuxSeries::lift(&s, 1).unwrap();
        let pi = PuiseuxSeries::lift(&QSeries::variable("p", 10), 1).unwrap();
        let quotient = p.div(&pi).unwrap();
        assert_eq!(quotient.valuation(), q(0, 1));
        assert_eq!(quotient.coeff(&q(0, 1)).unwrap(), q(-1, 27));
        assert_eq!(quotient.coeff(&q(1, 1)).unwrap(), q(-4, 243));
        assert!(p.div(&PuiseuxSeries::new(1, QSeries::zero("p", 3)).unwrap()).is_err());
    }

    #[test]
    fn substitute_identity_and_scaling() {
        let s = QSeries::from_coeffs("w", 1, vec![q(1, 1), q(-12, 1), q(198, 1)], 4);
        let p = PuiseuxSeries::lift(&s, 1).unwrap();
        let same = p
            .substitute_monomial(&ConstantRoot::one(), &q(1, 1), "w")
            .unwrap();
        assert_eq!(same.constant, ConstantRoot::one());
        assert_eq!(same.series, p);

        let sub = p
            .substitute_monomial(&ConstantRoot::Rational(q(-1, 27)), &q(1, 1), "p")
            .unwrap();
        assert_eq!(sub.constant, ConstantRoot::Rational(q(-1, 27)));
        assert_eq!(sub.series.coeff(&q(2, 1)).unwrap(), q(12, 27));
        assert!(p
            .substitute_monomial(&ConstantRoot::one(), &q(-1, 1), "p")
            .is_err());
    }

    #[test]
    fn substitute_fractional_power_factors_the_symbolic_constant() {
        // y = x^(1/3); x -> -27 t gives y -> -3 t^(1/3)
        let s = QSeries::from_coeffs("y", 1, vec![q(1, 1), q(0, 1), q(0, 1), q(-4, 1)], 6);
        let p = PuiseuxSeries::lift(&s, 3).unwrap();
        let sub = p
            .substitute_monomial(&ConstantRoot::Rational(q(-27, 1)), &q(1, 1), "t")
            .unwrap();
        assert_eq!(sub.constant, ConstantRoot::Rational(q(-3, 1)));
        assert_eq!(sub.series.coeff(&q(4, 3)).unwrap(), q(-4 * -27, 1));

        // x -> 2 t: y^1 and y^2 differ by 2^(1/3), not rational
        let s = QSeries::from_coeffs("y", 1, vec![q(1, 1), q(1, 1)], 6);
        let p = PuiseuxSeries::lift(&s, 3).unwrap();
        assert!(p
            .substitute_monomial(&ConstantRoot::Rational(q(2, 1)), &q(1, 1), "t")
            .is_err());
    }
}
