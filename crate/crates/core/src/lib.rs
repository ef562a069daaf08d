//! Exact formal-series toolkit for level-3 modular functions.
//!
//! The series and polynomial layers are generic over a [`Scalar`]
//! coefficient; the aliases below fix the exact rational instantiation used
//! by the modular, covering, and elliptic-curve computations.

pub mod constant;
pub mod covers;
pub mod curve;
pub mod error;
pub mod scalar;
pub mod modforms;
pub mod poly;
pub mod puiseux;
pub mod report;
pub mod series;
pub mod tate;

pub use error::{Result, SeriesError};
pub use scalar::Scalar;
pub use constant::{ConstantRoot, SymbolicConstantRoot};
pub use puiseux::{PuiseuxSeries, RootDecomposition, ScaledSeries};
pub use report::{Mismatch, Status, VerificationReport};
pub use series::LaurentSeries;

/// Exact rational numbers.
pub type Rat = num_rational::BigRational;

/// Laurent series over the rationals.
pub type QSeries = LaurentSeries<Rat>;

/// Laurent series over `f64`, for numeric sanity checks only.
pub type F64Series = LaurentSeries<f64>;

/// Puiseux series over the rationals.
pub type QPuiseux = PuiseuxSeries<Rat>;
