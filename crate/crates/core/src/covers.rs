//! The degree-4 cover `X_0(3) -> X(1)` as exact rational-function data,
//! its ramification, and index/cusp/genus invariants of congruence subgroups.

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Result, SeriesError};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::Rat;

/// `num / den` in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: Scalar> RationalFunction<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(Polynomial::zero()));
        }
        let g = num.gcd(&den);
        let (num, den) = (num.exact_div(&g), den.exact_div(&g));
        let lead = den.lead().expect("nonzero").clone();
        let inv = T::one() / lead;
        Ok(RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Polynomial::x())
    }

    pub fn numerator(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<T> {
        &self.den
    }

    pub fn num_degree(&self) -> usize {
        self.num.degree().unwrap_or(0)
    }

    pub fn den_degree(&self) -> usize {
        self.den.degree().unwrap_or(0)
    }

    /// Degree of the map, `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num_degree().max(self.den_degree())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::new(num, self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(T::one()), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    /// Value at a finite point; `None` at a pole.
    pub fn eval(&self, x: &T) -> Option<T> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// `self(g)`, by Horner's rule on numerator and denominator.
    pub fn substitute(&self, g: &Self) -> Result<Self> {
        let horner = |p: &Polynomial<T>| {
            p.coefficients()
                .iter()
                .rev()
                .fold(Self::from_poly(Polynomial::zero()), |acc, c| {
                    acc.mul(g).add(&Self::constant(c.clone()))
                })
        };
        horner(&self.num).div(&horner(&self.den))
    }

    /// `N'D - ND'`, whose roots are the finite critical points away from poles
    /// (and whose root orders are `e - 1` everywhere, poles included).
    pub fn wronskian(&self) -> Polynomial<T> {
        self.num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()))
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// A point of the projective line over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjectivePoint {
    Finite(Rat),
    Infinity,
}

impl ProjectivePoint {
    pub fn int(n: i64) -> Self {
        ProjectivePoint::Finite(Rat::from_integer(n.into()))
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(r) => write!(f, "{r}"),
            ProjectivePoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A point, or a Galois orbit of points, in a fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberPoint {
    Rational(Rat),
    Infinity,
    /// All roots of a monic factor with no rational roots; each root
    /// carries the listed multiplicity.
    Conjugates(Polynomial<Rat>),
}

impl FiberPoint {
    /// Number of geometric points described.
    pub fn count(&self) -> usize {
        match self {
            FiberPoint::Conjugates(p) => p.degree().unwrap_or(0),
            _ => 1,
        }
    }
}

impl fmt::Display for FiberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberPoint::Rational(r) => write!(f, "{r}"),
            FiberPoint::Infinity => write!(f, "inf"),
            FiberPoint::Conjugates(p) => write!(f, "roots of {p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    pub fiber: ProjectivePoint,
    pub points: Vec<(FiberPoint, u32)>,
}

impl RamificationProfile {
    /// Multiplicities of the individual geometric points, sorted.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m: Vec<u32> = self
            .points
            .iter()
            .flat_map(|(p, e)| std::iter::repeat(*e).take(p.count()))
            .collect();
        m.sort_unstable();
        m
    }

    pub fn total(&self) -> u32 {
        self.multiplicities().iter().sum()
    }

    /// `sum (e - 1)` over the fiber.
    pub fn ramification(&self) -> u32 {
        self.multiplicities().iter().map(|e| e - 1).sum()
    }
}

/// `f(x) = (x + 27)(x + 243)^3 / x^3`, the map on Hauptmodul values that
/// gives `j`.
pub fn branch_map() -> RationalFunction<Rat> {
    let q = |n: i64| Rat::from_integer(n.into());
    let num = Polynomial::linear_root(q(-27)).mul(&Polynomial::linear_root(q(-243)).pow(3));
    let den = Polynomial::x().pow(3);
    RationalFunction::new(num, den).expect("nonzero denominator")
}

fn factor_points(p: &Polynomial<Rat>) -> Vec<(FiberPoint, u32)> {
    let mut out = Vec::new();
    for (factor, e) in p.square_free_decomposition() {
        let roots = factor.rational_roots();
        let mut rest = factor.clone();
        for r in &roots {
            out.push((FiberPoint::Rational(r.clone()), e));
            rest = rest.exact_div(&Polynomial::linear_root(r.clone()));
        }
        if rest.degree().unwrap_or(0) > 0 {
            out.push((FiberPoint::Conjugates(rest.monic()), e));
        }
    }
    out
}

/// The fiber of `f` over `y0` with multiplicities, including the point at
/// infinity whenever it maps to `y0`.
pub fn ramification_profile(
    f: &RationalFunction<Rat>,
    y0: &ProjectivePoint,
) -> Result<RamificationProfile> {
    let d = f.degree();
    if d == 0 {
        return Err(SeriesError::ConstantMap);
    }
    let dd = f.den_degree();
    let mut points;
    let finite_degree;
    match y0 {
        ProjectivePoint::Finite(y) => {
            let g = f.numerator().sub(&f.denominator().scale(y));
            points = factor_points(&g);
            finite_degree = g.degree().unwrap_or(0);
        }
        ProjectivePoint::Infinity => {
            points = factor_points(f.denominator());
            finite_degree = dd;
        }
    }
    if finite_degree < d {
        points.push((FiberPoint::Infinity, (d - finite_degree) as u32));
    }
    Ok(RamificationProfile {
        fiber: y0.clone(),
        points,
    })
}

/// `x -> -x/27`, which sends `-27, 0, inf` to `1, 0, inf`.
pub fn scaling_map(x: &ProjectivePoint) -> ProjectivePoint {
    match x {
        ProjectivePoint::Finite(r) => {
            ProjectivePoint::Finite(-r / Rat::from_integer(27.into()))
        }
        ProjectivePoint::Infinity => ProjectivePoint::Infinity,
    }
}

/// Result of a Riemann-Hurwitz count for a rational function `P^1 -> P^1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannHurwitz {
    pub degree: usize,
    pub profiles: Vec<RamificationProfile>,
    pub total_ramification: u32,
    /// `2g - 2 = -2 deg + total_ramification`.
    pub genus: i64,
}

/// Sum of `e - 1` over all points of the source, from the Wronskian and the
/// behaviour at infinity.
fn total_ramification(f: &RationalFunction<Rat>) -> u32 {
    let d = f.degree();
    let w = f.wronskian();
    let finite = w.degree().unwrap_or(0) as u32;
    let (dn, dd) = (f.num_degree(), f.den_degree());
    let e_inf = if dn != dd {
        dn.abs_diff(dd)
    } else {
        let c = f.numerator().lead().expect("nonzero").clone()
            / f.denominator().lead().expect("nonzero").clone();
        let g = f.numerator().sub(&f.denominator().scale(&c));
        d - g.degree().unwrap_or(0)
    };
    finite + e_inf as u32 - 1
}

/// Checks `2g - 2 = deg * (-2) + sum (e - 1)` over the listed branch points,
/// after confirming they account for every critical value.
pub fn riemann_hurwitz_check(
    f: &RationalFunction<Rat>,
    branch_points: &[ProjectivePoint],
) -> Result<RiemannHurwitz> {
    let d = f.degree();
    if d == 0 {
        return Err(SeriesError::ConstantMap);
    }
    let profiles = branch_points
        .iter()
        .map(|y| ramification_profile(f, y))
        .collect::<Result<Vec<_>>>()?;
    let listed: u32 = profiles.iter().map(|p| p.ramification()).sum();
    let total = total_ramification(f);
    if listed < total {
        let w = f.wronskian();
        let missing = w
            .rational_roots()
            .into_iter()
            .map(|c| match f.eval(&c) {
                Some(v) => ProjectivePoint::Finite(v),
                None => ProjectivePoint::Infinity,
            })
            .find(|v| !branch_points.contains(v));
        let what = match missing {
            Some(v) => format!("critical value {v}"),
            None => format!("listed ramification {listed} of {total}"),
        };
        return Err(SeriesError::MissingBranchPoint(what));
    }
    let twice_g_minus_2 = -2 * d as i64 + listed as i64;
    Ok(RiemannHurwitz {
        degree: d,
        profiles,
        total_ramification: listed,
        genus: (twice_g_minus_2 + 2) / 2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupKind {
    Full,
    Gamma0,
    Gamma1,
}

impl SubgroupKind {
    pub fn name(&self) -> &'static str {
        match self {
            SubgroupKind::Full => "full",
            SubgroupKind::Gamma0 => "gamma0",
            SubgroupKind::Gamma1 => "gamma1",
        }
    }
}

/// Invariants of `Gamma(N)`, `Gamma_0(N)` or `Gamma_1(N)`; the index is taken
/// in `PSL_2(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceInvariants {
    pub kind: SubgroupKind,
    pub level: u64,
    pub index: u64,
    pub cusps: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub genus: i64,
}

impl CongruenceInvariants {
    /// `1 + index/12 - nu2/4 - nu3/3 - cusps/2` as an exact rational.
    pub fn genus_formula(&self) -> Rat {
        let r = |n: u64, d: i64| Rat::new((n as i64).into(), d.into());
        Rat::one() + r(self.index, 12) - r(self.nu2, 4) - r(self.nu3, 3) - r(self.cusps, 2)
    }

    /// The formula value is a non-negative integer equal to `genus`.
    pub fn genus_identity_holds(&self) -> bool {
        let g = self.genus_formula();
        g.is_integer() && !g.is_negative() && g == Rat::from_integer(self.genus.into())
    }
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Kronecker symbol `(-1/p)` for a prime `p`.
fn chi_minus_one(p: u64) -> i64 {
    match p % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// Kronecker symbol `(-3/p)` for a prime `p`.
fn chi_minus_three(p: u64) -> i64 {
    match p % 3 {
        1 => 1,
        2 => -1,
        _ => 0,
    }
}

/// `[PSL_2(Z) : Gamma(N)]`.
fn full_index(n: u64) -> u64 {
    match n {
        1 => 1,
        2 => 6,
        _ => {
            let mut num = n * n * n;
            let mut den = 2;
            for (p, _) in prime_factors(n) {
                num = num / p * (p - 1);
                num *= p + 1;
                den *= p;
            }
            num / den
        }
    }
}

/// Closed-form invariants from the standard index, cusp and elliptic-point
/// formulas (no coset enumeration).
pub fn congruence_invariants(kind: SubgroupKind, level: u64) -> Result<CongruenceInvariants> {
    if level == 0 {
        return Err(SeriesError::InvalidArgument("level must be positive".into()));
    }
    let n = level;
    let primes = prime_factors(n);
    let gamma0 = || {
        let index = primes.iter().fold(n, |acc, &(p, _)| acc / p * (p + 1));
        let nu2 = if n % 4 == 0 {
            0
        } else {
            primes.iter().map(|&(p, _)| 1 + chi_minus_one(p)).product::<i64>() as u64
        };
        let nu3 = if n % 9 == 0 {
            0
        } else {
            primes.iter().map(|&(p, _)| 1 + chi_minus_three(p)).product::<i64>() as u64
        };
        let cusps = divisors(n)
            .into_iter()
            .map(|d| euler_phi(gcd(d, n / d)))
            .sum();
        (index, cusps, nu2, nu3)
    };
    let (index, cusps, nu2, nu3) = match kind {
        SubgroupKind::Full => match n {
            1 => (1, 1, 1, 1),
            2 => (6, 3, 0, 0),
            _ => {
                let index = full_index(n);
                (index, index / n, 0, 0)
            }
        },
        SubgroupKind::Gamma0 => gamma0(),
        SubgroupKind::Gamma1 => match n {
            1 | 2 => gamma0(),
            _ => {
                let index = full_index(n) / n;
                let cusps = match n {
                    3 => 2,
                    4 => 3,
                    _ => {
                        divisors(n)
                            .into_iter()
                            .map(|d| euler_phi(d) * euler_phi(n / d))
                            .sum::<u64>()
                            / 2
                    }
                };
                let nu3 = if n == 3 { 1 } else { 0 };
                (index, cusps, 0, nu3)
            }
        },
    };
    let mut inv = CongruenceInvariants {
        kind,
        level,
        index,
        cusps,
        nu2,
        nu3,
        genus: 0,
    };
    let g = inv.genus_formula();
    inv.genus = g.to_integer().try_into().expect("small genus");
    Ok(inv)
}

/// Degree of `X(3^n) -> X_0(3) -> P^1`, as `[PSL_2(Z) : Gamma(3^n)] / [PSL_2(Z) : Gamma_0(3)]`.
pub fn cover_degree(n: u32) -> Result<u64> {
    if n == 0 {
        return Err(SeriesError::InvalidArgument("n must be positive".into()));
    }
    let top = congruence_invariants(SubgroupKind::Full, 3u64.pow(n))?.index;
    let base = congruence_invariants(SubgroupKind::Gamma0, 3)?.index;
    Ok(top / base)
}

/// Whether `n` is a power of 3 (including `3^0 = 1`).
pub fn is_power_of_three(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % 3 == 0 {
        n /= 3;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn branch_map_expanded_numerator() {
        let f = branch_map();
        assert_eq!(
            f.numerator(),
            &Polynomial::from_i64s(&[387420489, 19131876, 196830, 756, 1])
        );
        assert_eq!(f.denominator(), &Polynomial::from_i64s(&[0, 0, 0, 1]));
        assert_eq!(f.eval(&q(-27)), Some(q(0)));
        assert_eq!(f.eval(&q(-243)), Some(q(0)));
        assert_eq!(f.eval(&q(1)), Some(q(406749952)));
        assert_eq!(f.eval(&q(0)), None);
    }

    #[test]
    fn profiles_of_the_branch_map() {
        let f = branch_map();
        let over0 = ramification_profile(&f, &ProjectivePoint::int(0)).unwrap();
        assert_eq!(
            over0.points,
            vec![
                (FiberPoint::Rational(q(-27)), 1),
                (FiberPoint::Rational(q(-243)), 3)
            ]
        );
        let over1728 = ramification_profile(&f, &ProjectivePoint::int(1728)).unwrap();
        assert_eq!(
            over1728.points,
            vec![(
                FiberPoint::Conjugates(Polynomial::from_i64s(&[-19683, -486, 1])),
                2
            )]
        );
        assert_eq!(over1728.multiplicities(), vec![2, 2]);
        let over_inf = ramification_profile(&f, &ProjectivePoint::Infinity).unwrap();
        assert_eq!(
            over_inf.points,
            vec![(FiberPoint::Rational(q(0)), 3), (FiberPoint::Infinity, 1)]
        );
        let generic = ramification_profile(&f, &ProjectivePoint::int(5)).unwrap();
        assert_eq!(generic.total(), 4);
    }

    #[test]
    fn perfect_square_over_1728() {
        let f = branch_map();
        let g = f.numerator().sub(&f.denominator().scale(&q(1728)));
        assert_eq!(g, Polynomial::from_i64s(&[-19683, -486, 1]).pow(2));
    }

    #[test]
    fn constant_map_has_no_profile() {
        let c = RationalFunction::constant(q(3));
        assert!(ramification_profile(&c, &ProjectivePoint::int(3)).is_err());
    }

    #[test]
    fn scaling_sends_special_points_to_zero_one_infinity() {
        assert_eq!(scaling_map(&ProjectivePoint::int(-27)), ProjectivePoint::int(1));
        assert_eq!(scaling_map(&ProjectivePoint::int(0)), ProjectivePoint::int(0));
        assert_eq!(scaling_map(&ProjectivePoint::Infinity), ProjectivePoint::Infinity);
    }

    #[test]
    fn riemann_hurwitz_cases() {
        let pts = [ProjectivePoint::int(0), ProjectivePoint::int(1728), ProjectivePoint::Infinity];
        let rh = riemann_hurwitz_check(&branch_map(), &pts).unwrap();
        assert_eq!(rh.total_ramification, 6);
        assert_eq!(rh.genus, 0);

        let id = RationalFunction::<Rat>::x();
        let rh = riemann_hurwitz_check(&id, &[]).unwrap();
        assert_eq!((rh.total_ramification, rh.genus), (0, 0));

        let sq = RationalFunction::from_poly(Polynomial::from_i64s(&[0, 0, 1]));
        let rh = riemann_hurwitz_check(&sq, &[ProjectivePoint::int(0), ProjectivePoint::Infinity]).unwrap();
        assert_eq!((rh.total_ramification, rh.genus), (2, 0));

        let err = riemann_hurwitz_check(&branch_map(), &pts[..2]).unwrap_err();
        assert!(matches!(err, SeriesError::MissingBranchPoint(_)));
    }

    #[test]
    fn named_congruence_values() {
        let g3 = congruence_invariants(SubgroupKind::Full, 3).unwrap();
        assert_eq!((g3.index, g3.cusps, g3.genus), (12, 4, 0));
        let g03 = congruence_invariants(SubgroupKind::Gamma0, 3).unwrap();
        assert_eq!((g03.index, g03.cusps, g03.nu2, g03.nu3, g03.genus), (4, 2, 0, 1, 0));
        let g9 = congruence_invariants(SubgroupKind::Full, 9).unwrap();
        assert_eq!((g9.index, g9.genus), (324, 10));
        let g01 = congruence_invariants(SubgroupKind::Gamma0, 1).unwrap();
        assert_eq!((g01.index, g01.genus), (1, 0));
        assert!(congruence_invariants(SubgroupKind::Gamma1, 0).is_err());
    }

    #[test]
    fn known_genera() {
        // genus of X_0(N) for N = 1..=30
        let table = [
            0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 1, 0, 1, 1, 1, 2, 2, 1, 0, 2, 1, 2,
            2, 3,
        ];
        for (i, &g) in table.iter().enumerate() {
            let inv = congruence_invariants(SubgroupKind::Gamma0, i as u64 + 1).unwrap();
            assert_eq!(inv.genus, g, "X_0({})", i + 1);
        }
        // X_1(N) for N = 1..=16
        let table1 = [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2, 1, 1, 2];
        for (i, &g) in table1.iter().enumerate() {
            let inv = congruence_invariants(SubgroupKind::Gamma1, i as u64 + 1).unwrap();
            assert_eq!(inv.genus, g, "X_1({})", i + 1);
        }
        // X(N) via g = 1 + mu (N - 6) / (12 N)
        for n in 3..40u64 {
            let inv = congruence_invariants(SubgroupKind::Full, n).unwrap();
            let expected = Rat::one()
                + Rat::new(((inv.index * n) as i64 - 6 * inv.index as i64).into(), ((12 * n) as i64).into());
            assert_eq!(Rat::from_integer(inv.genus.into()), expected, "X({n})");
        }
    }

    #[test]
    fn cover_degrees() {
        assert_eq!(cover_degree(1).unwrap(), 3);
        assert_eq!(cover_degree(2).unwrap(), 81);
        assert_eq!(cover_degree(3).unwrap(), 2187);
        for n in 1..=6 {
            let d = cover_degree(n).unwrap();
            assert_eq!(d, 3u64.pow(3 * n - 2));
            assert!(is_power_of_three(d));
        }
    }
}
