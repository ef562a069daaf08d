//! q-expansions: the Euler product, eta quotients, the level-3 Hauptmodul
//! `h = (eta(z)/eta(3z))^12`, Klein's `j`, and the inverse relation `q(1/h)`.
//!
//! Eta quotients are expanded through the kernel `prod (1 - q^n)`; the
//! `q^(m r / 24)` prefactors are tracked separately so that every series here
//! has integer exponents.

use std::sync::Mutex;

use crate::error::{Result, SeriesError};
use crate::puiseux::{PuiseuxSeries, RootDecomposition};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::series::LaurentSeries;
use crate::{QSeries, Rat};

/// `prod_{n >= 1} (1 - q^n) mod q^precision`, by the pentagonal number
/// theorem: `sum_k (-1)^k q^(k(3k-1)/2)` over all integers `k`.
pub fn euler_kernel<T: Scalar>(precision: i64) -> LaurentSeries<T> {
    let len = precision.max(0) as usize;
    let mut coeffs = vec![T::zero(); len];
    if len > 0 {
        coeffs[0] = T::one();
    }
    let mut k: i64 = 1;
    loop {
        let lo = k * (3 * k - 1) / 2;
        if lo >= precision {
            break;
        }
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        coeffs[lo as usize] = sign.clone();
        let hi = k * (3 * k + 1) / 2;
        if hi < precision {
            coeffs[hi as usize] = sign;
        }
        k += 1;
    }
    LaurentSeries::from_coeffs("q", 0, coeffs, precision)
}

/// `prod_i eta(m_i z)^(r_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    pub factors: Vec<(u32, i64)>,
}

impl EtaQuotient {
    pub fn new(factors: Vec<(u32, i64)>) -> Self {
        EtaQuotient { factors }
    }

    /// The Hauptmodul of level 3.
    pub fn level3_hauptmodul() -> Self {
        Self::new(vec![(1, 12), (3, -12)])
    }

    /// `sum m r / 24`, the exponent of the leading power of `q`.
    pub fn net_q_exponent(&self) -> Rat {
        let s: i64 = self.factors.iter().map(|&(m, r)| m as i64 * r).sum();
        Rat::new(s.into(), 24.into())
    }

    /// Expansion modulo `q^precision`. Requires an integral `net_q_exponent`.
    pub fn expansion<T: Scalar>(&self, precision: i64) -> Result<LaurentSeries<T>> {
        let net = self.net_q_exponent();
        if !net.is_integer() {
            return Err(SeriesError::NotRepresentable(format!(
                "eta quotient has fractional leading exponent {net}"
            )));
        }
        let net: i64 = net.to_integer().try_into().expect("small exponent");
        let inner = precision - net;
        let mut acc = LaurentSeries::one("q", inner.max(1));
        for &(m, r) in &self.factors {
            let m = m as i64;
            let kernel = euler_kernel::<T>((inner + m - 1) / m).stretch(m).truncate(inner);
            acc = acc.mul(&kernel.pow_int(r)?)?;
        }
        Ok(acc.truncate(inner).shift(net))
    }
}

/// `h = q^-1 prod ((1 - q^n)/(1 - q^(3n)))^12 mod q^precision`.
pub fn hauptmodul_h<T: Scalar>(precision: i64) -> LaurentSeries<T> {
    EtaQuotient::level3_hauptmodul()
        .expansion(precision)
        .expect("integral eta quotient")
}

/// `sigma_3(n)` for `n < len`.
fn sigma3_table(len: usize) -> Vec<i64> {
    let mut s = vec![0i64; len];
    for d in 1..len {
        let cube = (d as i64).pow(3);
        for n in (d..len).step_by(d) {
            s[n] += cube;
        }
    }
    s
}

/// `E_4 = 1 + 240 sum sigma_3(n) q^n mod q^precision`.
pub fn eisenstein_e4<T: Scalar>(precision: i64) -> LaurentSeries<T> {
    let len = precision.max(0) as usize;
    let sig = sigma3_table(len);
    let coeffs = (0..len)
        .map(|n| {
            if n == 0 {
                T::one()
            } else {
                T::from_i64(240 * sig[n])
            }
        })
        .collect();
    LaurentSeries::from_coeffs("q", 0, coeffs, precision)
}

/// `Delta = q prod (1 - q^n)^24 mod q^precision`.
pub fn discriminant_delta<T: Scalar>(precision: i64) -> LaurentSeries<T> {
    EtaQuotient::new(vec![(1, 24)])
        .expansion(precision)
        .expect("integral eta quotient")
}

/// `j = E_4^3 / Delta mod q^precision`, independent of the Hauptmodul.
pub fn j_expansion<T: Scalar>(precision: i64) -> LaurentSeries<T> {
    let e4 = eisenstein_e4::<T>(precision + 1);
    let delta = discriminant_delta::<T>(precision + 2);
    let num = e4.pow_int(3).expect("positive power");
    num.div(&delta).expect("Delta is nonzero").truncate(precision)
}

/// Keeps the most precise value of an expensive series and serves lower
/// precisions by truncation.
pub(crate) struct SeriesCache(Mutex<Option<QSeries>>);

impl SeriesCache {
    pub(crate) const fn new() -> Self {
        SeriesCache(Mutex::new(None))
    }

    pub(crate) fn get(
        &self,
        precision: i64,
        compute: impl FnOnce(i64) -> Result<QSeries>,
    ) -> Result<QSeries> {
        if let Some(s) = self.0.lock().expect("cache poisoned").as_ref() {
            if s.precision() >= precision {
                return Ok(s.truncate(precision));
            }
        }
        let s = compute(precision)?;
        let mut slot = self.0.lock().expect("cache poisoned");
        if slot.as_ref().map_or(true, |old| old.precision() < s.precision()) {
            *slot = Some(s.clone());
        }
        Ok(s)
    }
}

static Q_IN_JINV: SeriesCache = SeriesCache::new();

/// `q` as a series in `v = 1/j`, known modulo `v^precision`.
pub fn q_in_jinv(precision: i64) -> Result<QSeries> {
    if precision < 2 {
        return Err(SeriesError::InvalidArgument("q_in_jinv needs precision >= 2".into()));
    }
    Q_IN_JINV.get(precision, |p| {
        Ok(j_expansion::<Rat>(p - 2).invert()?.revert()?.with_var("v"))
    })
}

/// Whether every known coefficient is an integer.
pub fn is_integral(s: &QSeries) -> bool {
    s.coefficients().iter().all(|c| c.is_integer())
}

/// `(h + 27)(h + 243)^3 / h^3` for a given `h`-series.
pub fn j_from_hauptmodul(h: &QSeries) -> Result<QSeries> {
    let a = h.add_constant(&Rat::from_integer(27.into()));
    let b = h.add_constant(&Rat::from_integer(243.into()));
    let hinv = h.invert()?;
    a.mul(&b.pow_int(3)?)?.mul(&hinv.pow_int(3)?)
}

/// Checks `j = (h+27)(h+243)^3 / h^3` with `h` and `j` expanded
/// independently, through `q^(terms - 1)`.
pub fn verify_j_h_identity(terms: i64) -> VerificationReport {
    verify_j_h_identity_with(&hauptmodul_h(terms), terms)
}

/// The same check against a caller-supplied `h`, so perturbed inputs can be
/// tested.
pub fn verify_j_h_identity_with(h: &QSeries, terms: i64) -> VerificationReport {
    const CHECK: &str = "j-h-identity";
    const WHERE: &str = "j = (h+27)(h+243)^3/h^3 for the level-3 Hauptmodul";
    match j_from_hauptmodul(h) {
        Ok(lhs) => {
            let j = j_expansion::<Rat>(lhs.precision());
            VerificationReport::compare_series(CHECK, WHERE, &j, &lhs, terms - 1)
        }
        Err(e) => VerificationReport::error(CHECK, WHERE, terms - 1, e),
    }
}

/// `q` as a series in `w = 1/h`, known modulo `w^precision`.
pub fn q_in_hinv(precision: i64) -> Result<QSeries> {
    if precision < 2 {
        return Err(SeriesError::InvalidArgument("q_in_hinv needs precision >= 2".into()));
    }
    let h: QSeries = hauptmodul_h(precision - 2);
    Ok(h.invert()?.revert()?.with_var("w"))
}

/// `q^(1/3^m) = w^(1/3^m) * (sum b_{i,m} w^i)` split into constant, exponent
/// and unit; the `b_{i,m}` are the unit's coefficients at `w^i`.
pub fn q_root_in_hinv(m: u32, precision: i64) -> Result<RootDecomposition> {
    let q = q_in_hinv(precision)?;
    PuiseuxSeries::lift(&q, 1)?.frac_root(3u32.pow(m))
}

/// `q^(1/3^m)` as a Puiseux series in `w = 1/h`.
pub fn q_frac_power_in_h(m: u32, precision: i64) -> Result<PuiseuxSeries<Rat>> {
    let dec = q_root_in_hinv(m, precision)?;
    dec.reassemble()
        .ok_or_else(|| SeriesError::NotRepresentable("irrational leading constant".into()))
}

/// The coefficients `b_{0,m}, b_{1,m}, ...` of `q^(1/3^m) / w^(1/3^m)`.
pub fn q_root_coefficients(m: u32, precision: i64) -> Result<Vec<Rat>> {
    let dec = q_root_in_hinv(m, precision)?;
    let unit = dec.unit.body();
    let step = dec.unit.ramification() as i64;
    Ok((0..unit.precision())
        .step_by(step as usize)
        .map(|k| unit.coeff(k).expect("below precision"))
        .collect())
}

/// Leading-order sanity for `q_in_hinv`: `h(q(w)) = 1/w`.
pub fn hauptmodul_at_q_of_w(precision: i64) -> Result<QSeries> {
    let q = q_in_hinv(precision)?;
    let h: QSeries = hauptmodul_h(precision - 2);
    h.compose(&q)
}
