//! Self-similarly corrected Padé approximants.
//!
//! A function known through a small-variable series and a large-variable
//! asymptote is approximated as the product of a nested root approximant,
//! which carries the irrational behaviour, and a Padé approximant fitted to
//! the remaining correcting function.

pub mod corrected;
pub mod error;
pub mod exponents;
pub mod linalg;
pub mod pade;
pub mod problems;
pub mod rootapprox;
pub mod roots;
pub mod scalar;
pub mod series;

pub use corrected::{correcting_series, verify_asymptotics, AsymptoticsReport, CorrectedApproximant};
pub use error::{Error, Result};
pub use exponents::{large_variable_exponent, ExponentEstimate};
pub use pade::{FitConditions, PadeApproximant};
pub use rootapprox::{canonical_powers, match_parameters, Level, LevelTemplate, NestedRootApproximant, RootMixture, WeightedRoot};
pub use scalar::{Jet, Real};
pub use series::{AsymptoticForm, GeneralizedSeries, GridSeries};
