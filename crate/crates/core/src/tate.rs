//! The Deuring-form curve `y^2 + a xy + y = x^3`, `a = 3 (1 - pi)^(1/3)`,
//! over `Q((pi))`: its `j`-invariant, reduction at `pi`, Tate parameter
//! `q(pi)`, and the rationality of the unit parts of `q^(b/3^n)`. Also the
//! Legendre curve `y^2 = x(x-1)(x-lambda)` with `lambda = (1 + sqrt(1-t^4))/2`.

use std::sync::Arc;

use num_traits::Zero;

use crate::constant::ConstantRoot;
use crate::covers::{branch_map, RationalFunction};
use crate::curve::{CurveInvariants, WeierstrassCurve};
use crate::error::{Result, SeriesError};
use crate::modforms::{q_in_hinv, q_in_jinv, SeriesCache};
use crate::poly::Polynomial;
use crate::puiseux::{PuiseuxSeries, RootDecomposition};
use crate::report::VerificationReport;
use crate::scalar::is_rational_square;
use crate::{QSeries, Rat};

pub use crate::constant::SymbolicConstantRoot;

/// Variable name of the uniformizer `pi = 1/t`.
pub const PI: &str = "pi";
/// Variable name for the Legendre family parameter.
pub const T: &str = "t";

fn q(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn frac(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// `3 (1 - pi)^(1/3) mod pi^precision`.
pub fn deuring_alpha(precision: i64) -> Result<QSeries> {
    if precision < 2 {
        return Err(SeriesError::InvalidArgument("alpha needs precision >= 2".into()));
    }
    let base = QSeries::from_coeffs(PI, 0, vec![q(1), q(-1)], precision);
    Ok(base.unit_root(3)?.scale_int(3))
}

pub fn deuring_curve(precision: i64) -> Result<WeierstrassCurve<QSeries>> {
    let alpha = deuring_alpha(precision)?;
    let zero = QSeries::zero(PI, precision);
    Ok(WeierstrassCurve::new(
        alpha,
        zero.clone(),
        QSeries::one(PI, precision),
        zero.clone(),
        zero,
    ))
}

/// `-27 (1 - pi)(1 - 9 pi)^3 / pi`, i.e. `-27 (t-1)(t-9)^3 / t^3` at `t = 1/pi`.
pub fn deuring_j_closed_form(precision: i64) -> QSeries {
    let p = Polynomial::<Rat>::from_i64s(&[1, -1])
        .mul(&Polynomial::from_i64s(&[1, -9]).pow(3))
        .scale(&q(-27));
    QSeries::from_coeffs(PI, -1, p.coefficients().to_vec(), precision)
}

/// `-27 (t-1)(t-9)^3 / t^3` as a rational function of `t`.
pub fn deuring_j_rational() -> RationalFunction<Rat> {
    let num = Polynomial::linear_root(q(1))
        .mul(&Polynomial::linear_root(q(9)).pow(3))
        .scale(&q(-27));
    RationalFunction::new(num, Polynomial::x().pow(3)).expect("nonzero denominator")
}

/// `A (A - 24)^3 / (A - 27)` with `A = alpha^3 = 27 (t - 1) / t`.
pub fn deuring_j_from_alpha_cube() -> Result<RationalFunction<Rat>> {
    let a = RationalFunction::new(
        Polynomial::from_i64s(&[-27, 27]),
        Polynomial::x(),
    )?;
    let c = |n: i64| RationalFunction::constant(q(n));
    a.mul(&a.sub(&c(24)).pow(3)).div(&a.sub(&c(27)))
}

/// The branch map evaluated at `-27 t`.
pub fn branch_map_at_cover_point() -> Result<RationalFunction<Rat>> {
    branch_map().substitute(&RationalFunction::from_poly(Polynomial::from_i64s(&[0, -27])))
}

/// `j` of the Deuring curve from its Weierstrass invariants, against the
/// closed form, through `pi^(precision - 3)`.
pub fn verify_deuring_j(precision: i64) -> VerificationReport {
    const CHECK: &str = "deuring-j";
    const WHERE: &str = "j(E) = -27(t-1)(t-9)^3/t^3 for the Deuring curve";
    let requested = precision - 3;
    let j = deuring_curve(precision).and_then(|e| e.invariants());
    match j {
        Ok(inv) => VerificationReport::compare_series(
            CHECK,
            WHERE,
            &deuring_j_closed_form(precision),
            &inv.j,
            requested,
        ),
        Err(e) => VerificationReport::error(CHECK, WHERE, requested, e),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionType {
    pub classification: Reduction,
    pub disc_valuation: i64,
    pub c4_valuation: i64,
    /// The singular point of the reduced curve, when it is bad.
    pub singular_point: Option<(Rat, Rat)>,
    /// Discriminant of the tangent-cone quadratic at the node.
    pub tangent_cone_discriminant: Option<Rat>,
    /// The supplied square class that contains the tangent-cone discriminant.
    pub residue_witness: Option<Rat>,
}

fn valuation_of(s: &QSeries, what: &str) -> Result<i64> {
    if s.is_zero() {
        return Err(SeriesError::InsufficientPrecision(format!(
            "{what} vanishes to the working precision {}",
            s.precision()
        )));
    }
    Ok(s.valuation())
}

/// Classifies the reduction of `E` at `pi` by `(v(disc), v(c4))`.
///
/// For bad reduction the node of the reduced curve is found as the double
/// root of `4x^3 + b2 x^2 + 2 b4 x + b6`; the tangent cone there has
/// discriminant `b2 + 12 x0`. The node is split when that discriminant times
/// some class in `square_classes` is a nonzero rational square, i.e. when
/// its square root lies in the residue field described by those classes.
pub fn reduction_type(
    e: &WeierstrassCurve<QSeries>,
    square_classes: &[Rat],
) -> Result<ReductionType> {
    let coeffs = [&e.a1, &e.a2, &e.a3, &e.a4, &e.a6];
    if coeffs.iter().any(|a| !a.is_zero() && a.valuation() < 0) {
        return Err(SeriesError::NonIntegralModel);
    }
    let b = e.b_invariants()?;
    let vd = valuation_of(&b.disc, "discriminant")?;
    let vc4 = valuation_of(&b.c4, "c4").unwrap_or(b.c4.precision());
    if vd == 0 {
        return Ok(ReductionType {
            classification: Reduction::Good,
            disc_valuation: vd,
            c4_valuation: vc4,
            singular_point: None,
            tangent_cone_discriminant: None,
            residue_witness: None,
        });
    }
    let r = |s: &QSeries| s.coeff(0);
    let (a1, a2, a3) = (r(&e.a1)?, r(&e.a2)?, r(&e.a3)?);
    let (b2, b4, b6) = (r(&b.b2)?, r(&b.b4)?, r(&b.b6)?);
    let cubic = Polynomial::new(vec![b6, b4 * q(2), b2.clone(), q(4)]);
    let g = cubic.gcd(&cubic.derivative());
    let x0 = match g.degree() {
        Some(1) => -g.coeff(0),
        Some(2) => -g.coeff(1) / q(2),
        _ => return Err(SeriesError::NoSingularPoint),
    };
    let y0 = -(a1.clone() * x0.clone() + a3.clone()) / q(2);
    let (a4, a6) = (r(&e.a4)?, r(&e.a6)?);
    let f = |x: &Rat, y: &Rat| {
        y * y + &a1 * x * y + &a3 * y - x * x * x - &a2 * x * x - &a4 * x - &a6
    };
    let fx = &a1 * &y0 - q(3) * &x0 * &x0 - q(2) * &a2 * &x0 - &a4;
    if !f(&x0, &y0).is_zero() || !fx.is_zero() {
        return Err(SeriesError::NoSingularPoint);
    }
    let cone = b2 + q(12) * &x0;
    let multiplicative = vc4 == 0;
    let witness = if multiplicative {
        square_classes
            .iter()
            .find(|d| !d.is_zero() && !cone.is_zero() && is_rational_square(&(&cone * *d)))
            .cloned()
    } else {
        None
    };
    let classification = match (multiplicative, &witness) {
        (false, _) => Reduction::Additive,
        (true, Some(_)) => Reduction::SplitMultiplicative,
        (true, None) => Reduction::NonsplitMultiplicative,
    };
    Ok(ReductionType {
        classification,
        disc_valuation: vd,
        c4_valuation: vc4,
        singular_point: Some((x0, y0)),
        tangent_cone_discriminant: multiplicative.then_some(cone),
        residue_witness: witness,
    })
}

/// The square classes of a residue field containing `Q(sqrt(-3))`.
pub fn eisenstein_square_classes() -> Vec<Rat> {
    vec![q(1), q(-3)]
}

/// The `q` of positive valuation with `j(q) = j_series`, known modulo
/// `pi^precision` (or less if `j_series` does not support it).
///
/// `1/j(q)` is reverted to give `q` as a series in `w = 1/j`, which is then
/// composed with `1/j_series`.
pub fn tate_parameter(j_series: &QSeries, precision: i64) -> Result<QSeries> {
    if j_series.is_zero() || j_series.valuation() >= 0 {
        return Err(SeriesError::InvalidArgument(
            "Tate parameter needs j with a pole".into(),
        ));
    }
    let k = -j_series.valuation();
    let w = j_series.invert()?;
    let target = precision.min(w.precision());
    let need = ((target + k - 1) / k).max(2);
    let q_of_w = q_in_jinv(need)?;
    Ok(q_of_w.compose(&w.truncate(target))?.truncate(target))
}

/// The Tate parameter of the Deuring curve, known modulo `pi^precision`.
pub fn deuring_tate_parameter(precision: i64) -> Result<QSeries> {
    static CACHE: SeriesCache = SeriesCache::new();
    CACHE.get(precision, |p| {
        let inv = deuring_curve(p.max(4))?.invariants()?;
        tate_parameter(&inv.j, p)
    })
}

/// `q(1/h)` evaluated at `h = -27 t`, i.e. `w = -pi/27`.
pub fn tate_parameter_from_cover(precision: i64) -> Result<QSeries> {
    let qw = q_in_hinv(precision)?;
    let sub = PuiseuxSeries::lift(&qw, 1)?.substitute_monomial(
        &ConstantRoot::Rational(frac(-1, 27)),
        &q(1),
        PI,
    )?;
    let c = sub
        .constant
        .as_rational()
        .ok_or_else(|| SeriesError::NotRepresentable("irrational constant".into()))?
        .clone();
    Ok(sub.series.scale(&c).into_body())
}

/// `q = c * pi^v * u` with `u = 1 + O(pi)`.
pub fn unit_decomposition(q_series: &QSeries) -> Result<RootDecomposition> {
    if q_series.is_zero() {
        return Err(SeriesError::ZeroSeries);
    }
    PuiseuxSeries::lift(q_series, 1)?.frac_root(1)
}

/// A point `eta^a q^(b/3^n)` of the Tate curve, with the `q`-power split
/// into constant, monomial and unit.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionParameter {
    /// Exponent of a fixed primitive `3^n`-th root of unity; a tag only.
    pub zeta_exponent: u64,
    pub q_exponent: u64,
    pub level: u32,
    pub constant: ConstantRoot,
    pub monomial_exponent: Rat,
    pub unit: Arc<PuiseuxSeries<Rat>>,
}

/// All `(a, b)` in `(Z/3^n)^2`, sharing one unit series per `b`.
pub fn torsion_parameters(n: u32, precision: i64) -> Result<Vec<TorsionParameter>> {
    if n == 0 {
        return Err(SeriesError::InvalidArgument("level n must be positive".into()));
    }
    let m = 3u64.pow(n);
    let qs = deuring_tate_parameter(precision)?;
    let root = PuiseuxSeries::lift(&qs, 1)?.frac_root(m as u32)?;
    let r = root.unit.normalize();
    let mut units = Vec::with_capacity(m as usize);
    let mut acc = PuiseuxSeries::new(r.ramification(), crate::QSeries::one(PI, r.body().precision()))?;
    for _ in 0..m {
        units.push(Arc::new(acc.clone()));
        acc = acc.mul(&r)?;
    }
    let mut out = Vec::with_capacity((m * m) as usize);
    for b in 0..m {
        let constant = root.constant.pow(b as i64)?;
        let exponent = &root.exponent * Rat::from_integer(b.into());
        for a in 0..m {
            out.push(TorsionParameter {
                zeta_exponent: a,
                q_exponent: b,
                level: n,
                constant: constant.clone(),
                monomial_exponent: exponent.clone(),
                unit: Arc::clone(&units[b as usize]),
            });
        }
    }
    Ok(out)
}

/// Evidence that `q^(1/3^n)` has a rational unit part.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionCertificate {
    pub level: u32,
    pub decomposition: RootDecomposition,
    /// Number of unit coefficients checked.
    pub terms: i64,
    pub unit_starts_with_one: bool,
    /// `unit^(3^n)` equals the unit of `q` on every known coefficient.
    pub power_back: bool,
    /// `constant^(3^n)` is the leading coefficient of `q`.
    pub constant_power_back: bool,
    /// Unit exponents lie in `(1/3^n) Z`.
    pub exponents_in_lattice: bool,
}

impl TorsionCertificate {
    pub fn holds(&self) -> bool {
        self.unit_starts_with_one
            && self.power_back
            && self.constant_power_back
            && self.exponents_in_lattice
    }
}

pub fn torsion_certificate(n: u32, precision: i64) -> Result<TorsionCertificate> {
    if n == 0 {
        return Err(SeriesError::InvalidArgument("level n must be positive".into()));
    }
    let m = 3u32.pow(n);
    let qs = deuring_tate_parameter(precision)?;
    let full = unit_decomposition(&qs)?;
    let dec = PuiseuxSeries::lift(&qs, 1)?.frac_root(m)?;
    let unit = dec.unit.normalize();
    let back = unit.pow_int(m as i64)?;
    let lead = ConstantRoot::Rational(
        full.constant.as_rational().cloned().unwrap_or_else(Rat::zero),
    );
    Ok(TorsionCertificate {
        level: n,
        terms: unit.body().precision(),
        unit_starts_with_one: unit.is_unit_normalized(),
        power_back: back.agrees_with(&full.unit) && back.precision() == full.unit.precision(),
        constant_power_back: dec.constant.pow(m as i64)? == lead,
        exponents_in_lattice: m % unit.ramification() == 0,
        decomposition: dec,
    })
}

/// `lambda = (1 + sqrt(1 - t^4)) / 2 mod t^precision`.
pub fn legendre_lambda(precision: i64) -> Result<QSeries> {
    let s = QSeries::from_terms(T, &[(0, q(1)), (4, q(-1))], precision);
    Ok(s.unit_root(2)?.add_constant(&q(1)).scale(&frac(1, 2)))
}

/// `y^2 = x(x-1)(x-lambda)` and its invariants; `j` is known modulo
/// `t^(precision - 16)`.
pub fn legendre_curve(
    precision: i64,
) -> Result<(WeierstrassCurve<QSeries>, CurveInvariants<QSeries>)> {
    if precision < 9 {
        return Err(SeriesError::InvalidArgument("Legendre curve needs precision >= 9".into()));
    }
    let lambda = legendre_lambda(precision)?;
    let zero = QSeries::zero(T, precision);
    let a2 = lambda.add_constant(&q(1)).neg();
    let e = WeierstrassCurve::new(zero.clone(), a2, zero.clone(), lambda, zero);
    let inv = e.invariants()?;
    Ok((e, inv))
}

/// `64 (4 - t^4)^3 / t^8`.
pub fn legendre_j_closed_form(precision: i64) -> QSeries {
    let p = Polynomial::<Rat>::from_terms_sparse(&[(0, 4), (4, -1)]).pow(3).scale(&q(64));
    QSeries::from_coeffs(T, -8, p.coefficients().to_vec(), precision)
}

/// `256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)`.
pub fn legendre_j_from_lambda(lambda: &QSeries) -> Result<QSeries> {
    let l2 = lambda.mul(lambda)?;
    let num = l2.sub(lambda)?.add_constant(&q(1)).pow_int(3)?.scale_int(256);
    let lm1 = lambda.add_constant(&q(-1));
    let den = l2.mul(&lm1.mul(&lm1)?)?;
    num.div(&den)
}

impl Polynomial<Rat> {
    fn from_terms_sparse(terms: &[(usize, i64)]) -> Self {
        let deg = terms.iter().map(|(k, _)| *k).max().unwrap_or(0);
        let mut c = vec![Rat::zero(); deg + 1];
        for (k, v) in terms {
            c[*k] += q(*v);
        }
        Polynomial::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_leading_terms_and_cube() {
        let a = deuring_alpha(12).unwrap();
        assert_eq!(a.coeff(0).unwrap(), q(3));
        assert_eq!(a.coeff(1).unwrap(), q(-1));
        assert_eq!(a.coeff(2).unwrap(), frac(-1, 3));
        assert_eq!(a.coeff(3).unwrap(), frac(-5, 27));
        let cube = a.scale(&frac(1, 3)).pow_int(3).unwrap();
        assert_eq!(cube, QSeries::from_coeffs(PI, 0, vec![q(1), q(-1)], 12));
    }

    #[test]
    fn deuring_j_matches_closed_form() {
        let c = deuring_j_closed_form(10);
        assert_eq!(
            c.coefficients(),
            &[q(-27), q(756), q(-7290), q(26244), q(-19683), q(0), q(0), q(0), q(0), q(0), q(0)]
        );
        assert!(verify_deuring_j(4).passed());
        assert!(verify_deuring_j(40).passed());
    }

    #[test]
    fn closed_forms_agree_as_rational_functions() {
        assert_eq!(deuring_j_from_alpha_cube().unwrap(), deuring_j_rational());
        assert_eq!(branch_map_at_cover_point().unwrap(), deuring_j_rational());
    }

    #[test]
    fn deuring_reduction_is_split_multiplicative() {
        for p in [6, 20] {
            let e = deuring_curve(p).unwrap();
            let rt = reduction_type(&e, &eisenstein_square_classes()).unwrap();
            assert_eq!(rt.classification, Reduction::SplitMultiplicative);
            assert_eq!((rt.disc_valuation, rt.c4_valuation), (1, 0));
            assert_eq!(rt.singular_point, Some((q(-1), q(1))));
            assert_eq!(rt.tangent_cone_discriminant, Some(q(-3)));
            assert_eq!(rt.residue_witness, Some(q(-3)));
        }
        let e = deuring_curve(6).unwrap();
        let rt = reduction_type(&e, &[q(1)]).unwrap();
        assert_eq!(rt.classification, Reduction::NonsplitMultiplicative);
    }

    #[test]
    fn good_and_additive_reduction() {
        let one = QSeries::one(PI, 6);
        let zero = QSeries::zero(PI, 6);
        // y^2 + y = x^3 has discriminant -27, a unit
        let good = WeierstrassCurve::new(zero.clone(), zero.clone(), one.clone(), zero.clone(), zero.clone());
        assert_eq!(reduction_type(&good, &[q(1)]).unwrap().classification, Reduction::Good);
        // y^2 = x^3 + pi: cusp at the origin
        let pi = QSeries::variable(PI, 6);
        let add = WeierstrassCurve::new(zero.clone(), zero.clone(), zero.clone(), zero.clone(), pi);
        let rt = reduction_type(&add, &[q(1)]).unwrap();
        assert_eq!(rt.classification, Reduction::Additive);
        assert_eq!(rt.singular_point, Some((q(0), q(0))));
        // a1 = 1/pi is not integral
        let bad = WeierstrassCurve::new(QSeries::monomial(PI, -1, q(1), 6), zero.clone(), one, zero.clone(), zero);
        assert_eq!(reduction_type(&bad, &[q(1)]).unwrap_err(), SeriesError::NonIntegralModel);
    }

    #[test]
    fn tate_parameter_leading_terms() {
        let qs = deuring_tate_parameter(8).unwrap();
        assert_eq!(qs.valuation(), 1);
        assert_eq!(qs.precision(), 8);
        assert_eq!(qs.coeff(1).unwrap(), frac(-1, 27));
        assert_eq!(qs.coeff(2).unwrap(), frac(-4, 243));
        assert_eq!(qs, tate_parameter_from_cover(8).unwrap());
        assert!(tate_parameter(&QSeries::one(PI, 5), 5).is_err());
    }

    #[test]
    fn unit_part_of_tate_parameter() {
        let qs = deuring_tate_parameter(10).unwrap();
        let dec = unit_decomposition(&qs).unwrap();
        assert_eq!(dec.constant, ConstantRoot::Rational(frac(-1, 27)));
        assert_eq!(dec.exponent, q(1));
        assert_eq!(dec.unit.coeff(&q(1)).unwrap(), frac(4, 9));
        assert!(dec.reassemble().unwrap().agrees_with(&PuiseuxSeries::lift(&qs, 1).unwrap()));
        assert!(unit_decomposition(&QSeries::zero(PI, 3)).is_err());
    }

    #[test]
    fn torsion_level_one_and_two() {
        let params = torsion_parameters(1, 12).unwrap();
        assert_eq!(params.len(), 9);
        let p = params.iter().find(|p| p.q_exponent == 1 && p.zeta_exponent == 0).unwrap();
        assert_eq!(p.constant, ConstantRoot::Rational(frac(-1, 3)));
        assert_eq!(p.monomial_exponent, frac(1, 3));
        assert_eq!(p.unit.coeff(&q(1)).unwrap(), frac(4, 27));
        let p0 = params.iter().find(|p| p.q_exponent == 0).unwrap();
        assert!(p0.unit.agrees_with(&PuiseuxSeries::one(PI, 11)));
        assert_eq!(p0.constant, ConstantRoot::one());

        let params = torsion_parameters(2, 12).unwrap();
        let p = params.iter().find(|p| p.q_exponent == 1).unwrap();
        match &p.constant {
            ConstantRoot::Symbolic(s) => assert_eq!(s.root_index(), 3),
            other => panic!("expected symbolic constant, got {other}"),
        }
        assert!(torsion_certificate(2, 12).unwrap().holds());
        assert!(torsion_parameters(0, 12).is_err());
    }

    #[test]
    fn legendre_identities() {
        let l = legendre_lambda(20).unwrap();
        assert_eq!(l.coeff(0).unwrap(), q(1));
        assert_eq!(l.coeff(4).unwrap(), frac(-1, 4));
        assert_eq!(l.coeff(8).unwrap(), frac(-1, 16));
        let two_l_minus_1 = l.scale_int(2).add_constant(&q(-1));
        let sq = two_l_minus_1.mul(&two_l_minus_1).unwrap();
        assert_eq!(sq, QSeries::from_terms(T, &[(0, q(1)), (4, q(-1))], 20));
        let prod = l.mul(&l.add_constant(&q(-1))).unwrap();
        assert_eq!(prod, QSeries::monomial(T, 4, frac(-1, 4), 20));

        let (_, inv) = legendre_curve(30).unwrap();
        assert_eq!(inv.j.precision(), 14);
        assert!(inv.j.agrees_with(&legendre_j_closed_form(30)));
        assert!(legendre_j_from_lambda(&l).unwrap().agrees_with(&legendre_j_closed_form(30)));
        assert!(inv.identities_hold().unwrap());
        assert!(legendre_curve(8).is_err());
    }
}
