//! The JSON shape used for series on standard output.

use modseries_core::scalar::parse_rat;
use modseries_core::{LaurentSeries, PuiseuxSeries, QPuiseux, QSeries, Rat};
use serde::{Deserialize, Serialize};

/// A series as exact strings. `valuation` and `precision` count in units of
/// `1/ramification`; `coefficients` pairs each exponent with its coefficient
/// densely from the valuation up to (excluding) the precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub variable: String,
    pub ramification: u32,
    pub valuation: i64,
    pub precision: i64,
    pub coefficients: Vec<(String, String)>,
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational {0:?}")]
    Rational(String),
    #[error("exponent {found} where {expected} was expected")]
    Exponent { expected: String, found: String },
    #[error("ramification must be positive")]
    Ramification,
}

impl SeriesDocument {
    pub fn from_puiseux(s: &QPuiseux) -> Self {
        let d = s.ramification();
        let body = s.body();
        let coefficients = (body.valuation()..body.precision())
            .map(|k| {
                let c = body.coeff(k).expect("below precision");
                (exponent(k, d).to_string(), c.to_string())
            })
            .collect();
        SeriesDocument {
            variable: body.var().to_string(),
            ramification: d,
            valuation: body.valuation(),
            precision: body.precision(),
            coefficients,
        }
    }

    pub fn from_series(s: &QSeries) -> Self {
        Self::from_puiseux(&PuiseuxSeries::lift(s, 1).expect("ramification 1"))
    }

    /// Rebuilds the series, checking that the exponents are the expected
    /// consecutive multiples of `1/ramification`.
    pub fn to_puiseux(&self) -> Result<QPuiseux, DocumentError> {
        if self.ramification == 0 {
            return Err(DocumentError::Ramification);
        }
        let mut coeffs = Vec::with_capacity(self.coefficients.len());
        for (i, (e, c)) in self.coefficients.iter().enumerate() {
            let want = exponent(self.valuation + i as i64, self.ramification);
            let got = parse_rat(e).ok_or_else(|| DocumentError::Rational(e.clone()))?;
            if got != want {
                return Err(DocumentError::Exponent {
                    expected: want.to_string(),
                    found: e.clone(),
                });
            }
            coeffs.push(parse_rat(c).ok_or_else(|| DocumentError::Rational(c.clone()))?);
        }
        let body = LaurentSeries::from_coeffs(
            self.variable.clone(),
            self.valuation,
            coeffs,
            self.precision,
        );
        PuiseuxSeries::new(self.ramification, body).map_err(|_| DocumentError::Ramification)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(s)?)
    }
}

fn exponent(k: i64, d: u32) -> Rat {
    Rat::new(k.into(), i64::from(d).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_field_order() {
        let s = QSeries::from_coeffs("q", -1, vec![1.into(), (-12).into()].into_iter().map(Rat::from_integer).collect(), 1);
        assert_eq!(
            SeriesDocument::from_series(&s).to_json(),
            r#"{"variable":"q","ramification":1,"valuation":-1,"precision":1,"coefficients":[["-1","1"],["0","-12"]]}"#
        );
    }

    #[test]
    fn puiseux_exponents_are_reduced() {
        let body = QSeries::from_coeffs("pi", 1, vec![Rat::new(1.into(), 3.into()); 3], 4);
        let p = PuiseuxSeries::new(3, body).unwrap();
        let doc = SeriesDocument::from_puiseux(&p);
        let e: Vec<&str> = doc.coefficients.iter().map(|(e, _)| e.as_str()).collect();
        assert_eq!(e, ["1/3", "2/3", "1"]);
        assert_eq!(doc.to_puiseux().unwrap(), p);
    }

    #[test]
    fn rejects_gaps() {
        let mut doc = SeriesDocument::from_series(&QSeries::one("q", 3));
        doc.coefficients[1].0 = "5".into();
        assert!(doc.to_puiseux().is_err());
    }
}
