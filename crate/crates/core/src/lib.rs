//! Exact truncated q-series arithmetic for divisor-generating identities,
//! with the combinatorial tables and stochastic models that go with them.

pub mod combinatorics;
pub mod cyclotomic;
pub mod error;
pub mod identities;
pub mod partitions;
pub mod scalar;
pub mod series;
pub mod stochastic;

pub use cyclotomic::ExactScalar;
pub use error::{ScalarError, SeriesError};
pub use scalar::{Rational, Scalar};
pub use series::{Comparison, Series, VarSpec};

/// Series with rational coefficients.
pub type QSeries = Series<Rational>;
/// Series with coefficients in a cyclotomic field.
pub type ExactSeries = Series<ExactScalar>;
