//! Pass/fail records produced by the verification routines.

use std::fmt::Display;

use crate::series::LaurentSeries;
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub order: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one named check.
///
/// `compared_through` is the highest order actually compared; `requested`
/// is what the caller asked for. A pass always has
/// `compared_through >= requested`, and a fail always carries a mismatch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub check: String,
    pub location: String,
    pub status: Status,
    pub requested: i64,
    pub compared_through: i64,
    pub mismatch: Option<Mismatch>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Compares two series on their common known range, which must reach
    /// `requested`.
    pub fn compare_series(
        check: &str,
        location: &str,
        expected: &LaurentSeries<Rat>,
        actual: &LaurentSeries<Rat>,
        requested: i64,
    ) -> Self {
        let through = expected.precision().min(actual.precision()) - 1;
        let mismatch = if expected.var() != actual.var() {
            Some(Mismatch {
                order: "variable".into(),
                expected: expected.var().into(),
                actual: actual.var().into(),
            })
        } else if let Some((k, e, a)) = expected.first_disagreement(actual) {
            Some(Mismatch {
                order: k.to_string(),
                expected: e.to_string(),
                actual: a.to_string(),
            })
        } else if through < requested {
            Some(Mismatch {
                order: "precision".into(),
                expected: format!("known through {requested}"),
                actual: format!("known through {through}"),
            })
        } else {
            None
        };
        Self::from_mismatch(check, location, requested, through, mismatch)
    }

    /// Compares two displayable values for equality.
    pub fn compare_values<V: PartialEq + Display>(
        check: &str,
        location: &str,
        order: &str,
        expected: &V,
        actual: &V,
    ) -> Self {
        let mismatch = (expected != actual).then(|| Mismatch {
            order: order.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
        Self::from_mismatch(check, location, 0, 0, mismatch)
    }

    /// Collects several value comparisons into one report; the first
    /// failing comparison is recorded.
    pub fn all_of(
        check: &str,
        location: &str,
        requested: i64,
        compared_through: i64,
        items: Vec<(String, String, String)>,
    ) -> Self {
        let mismatch = items
            .into_iter()
            .find(|(_, e, a)| e != a)
            .map(|(order, expected, actual)| Mismatch {
                order,
                expected,
                actual,
            });
        Self::from_mismatch(check, location, requested, compared_through, mismatch)
    }

    /// A report for a failure that is not a value comparison, such as an
    /// arithmetic error while building the inputs.
    pub fn error(check: &str, location: &str, requested: i64, message: impl Display) -> Self {
        Self::from_mismatch(
            check,
            location,
            requested,
            i64::MIN,
            Some(Mismatch {
                order: "error".into(),
                expected: "computation succeeds".into(),
                actual: message.to_string(),
            }),
        )
    }

    fn from_mismatch(
        check: &str,
        location: &str,
        requested: i64,
        compared_through: i64,
        mismatch: Option<Mismatch>,
    ) -> Self {
        VerificationReport {
            check: check.into(),
            location: location.into(),
            status: if mismatch.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            requested,
            compared_through,
            mismatch,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
