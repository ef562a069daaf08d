//! Weierstrass models `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over
//! any exact coefficient ring, and their standard invariants.

use crate::covers::RationalFunction;
use crate::error::{Result, SeriesError};
use crate::scalar::Scalar;
use crate::series::LaurentSeries;

/// Ring operations needed by the invariant formulas. Integer constants only
/// ever enter as multipliers, so series need no ambient precision for them.
pub trait CurveRing: Clone {
    fn add(&self, o: &Self) -> Result<Self>;
    fn sub(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn div(&self, o: &Self) -> Result<Self>;
    fn scale_int(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Equality on the part known to both sides.
    fn agrees(&self, o: &Self) -> bool;
}

impl<T: Scalar> CurveRing for T {
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self.clone() + o.clone())
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        Ok(self.clone() - o.clone())
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self.clone() * o.clone())
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        Ok(self.clone() / o.clone())
    }
    fn scale_int(&self, n: i64) -> Self {
        self.clone() * T::from_i64(n)
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn agrees(&self, o: &Self) -> bool {
        self == o
    }
}

impl<T: Scalar> CurveRing for LaurentSeries<T> {
    fn add(&self, o: &Self) -> Result<Self> {
        LaurentSeries::add(self, o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        LaurentSeries::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        LaurentSeries::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        LaurentSeries::div(self, o)
    }
    fn scale_int(&self, n: i64) -> Self {
        LaurentSeries::scale_int(self, n)
    }
    fn is_zero(&self) -> bool {
        LaurentSeries::is_zero(self)
    }
    fn agrees(&self, o: &Self) -> bool {
        self.agrees_with(o)
    }
}

impl<T: Scalar> CurveRing for RationalFunction<T> {
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(RationalFunction::add(self, o))
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        Ok(RationalFunction::sub(self, o))
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(RationalFunction::mul(self, o))
    }
    fn div(&self, o: &Self) -> Result<Self> {
        RationalFunction::div(self, o)
    }
    fn scale_int(&self, n: i64) -> Self {
        self.scale(&T::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn agrees(&self, o: &Self) -> bool {
        self == o
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve<R> {
    pub a1: R,
    pub a2: R,
    pub a3: R,
    pub a4: R,
    pub a6: R,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveInvariants<R> {
    pub b2: R,
    pub b4: R,
    pub b6: R,
    pub b8: R,
    pub c4: R,
    pub c6: R,
    pub disc: R,
    pub j: R,
}

/// Everything but `j`, which needs a nonzero discriminant.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct BInvariants<R> {
    pub b2: R,
    pub b4: R,
    pub b6: R,
    pub b8: R,
    pub c4: R,
    pub c6: R,
    pub disc: R,
}

impl<R: CurveRing> WeierstrassCurve<R> {
    pub fn new(a1: R, a2: R, a3: R, a4: R, a6: R) -> Self {
        WeierstrassCurve { a1, a2, a3, a4, a6 }
    }

    pub(crate) fn b_invariants(&self) -> Result<BInvariants<R>> {
        let WeierstrassCurve { a1, a2, a3, a4, a6 } = self;
        let a1sq = a1.mul(a1)?;
        let b2 = a1sq.add(&a2.scale_int(4))?;
        let b4 = a4.scale_int(2).add(&a1.mul(a3)?)?;
        let b6 = a3.mul(a3)?.add(&a6.scale_int(4))?;
        // b8 = a1^2 a6 + 4 a2 a6 - a1 a3 a4 + a2 a3^2 - a4^2
        let b8 = a1sq
            .mul(a6)?
            .add(&a2.mul(a6)?.scale_int(4))?
            .sub(&a1.mul(a3)?.mul(a4)?)?
            .add(&a2.mul(&a3.mul(a3)?)?)?
            .sub(&a4.mul(a4)?)?;
        let b2sq = b2.mul(&b2)?;
        let c4 = b2sq.sub(&b4.scale_int(24))?;
        let c6 = b2sq
            .mul(&b2)?
            .scale_int(-1)
            .add(&b2.mul(&b4)?.scale_int(36))?
            .sub(&b6.scale_int(216))?;
        let disc = b2sq
            .mul(&b8)?
            .scale_int(-1)
            .sub(&b4.mul(&b4)?.mul(&b4)?.scale_int(8))?
            .sub(&b6.mul(&b6)?.scale_int(27))?
            .add(&b2.mul(&b4)?.mul(&b6)?.scale_int(9))?;
        Ok(BInvariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
        })
    }

    /// `b2..b8, c4, c6`, the discriminant and `j = c4^3 / disc`.
    pub fn invariants(&self) -> Result<CurveInvariants<R>> {
        let b = self.b_invariants()?;
        if b.disc.is_zero() {
            return Err(SeriesError::SingularCurve);
        }
        let j = b.c4.mul(&b.c4)?.mul(&b.c4)?.div(&b.disc)?;
        Ok(CurveInvariants {
            b2: b.b2,
            b4: b.b4,
            b6: b.b6,
            b8: b.b8,
            c4: b.c4,
            c6: b.c6,
            disc: b.disc,
            j,
        })
    }
}

impl<R: CurveRing> CurveInvariants<R> {
    /// `4 b8 = b2 b6 - b4^2`, `1728 disc = c4^3 - c6^2`, `j disc = c4^3`.
    pub fn identities_hold(&self) -> Result<bool> {
        let c4cube = self.c4.mul(&self.c4)?.mul(&self.c4)?;
        let first = self
            .b8
            .scale_int(4)
            .agrees(&self.b2.mul(&self.b6)?.sub(&self.b4.mul(&self.b4)?)?);
        let second = self
            .disc
            .scale_int(1728)
            .agrees(&c4cube.sub(&self.c6.mul(&self.c6)?)?);
        let third = self.j.mul(&self.disc)?.agrees(&c4cube);
        Ok(first && second && third)
    }
}
