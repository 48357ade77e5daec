//! Exact-rational sparse multivariate power series in the variables `x_i`,
//! `s_ij`, ħ and the vertex-weight symbols `a_{g,N}`.
//!
//! [`Poly`] is an exact finite polynomial (Laurent in ħ). [`Series`] pairs a
//! polynomial with the [`TruncationSpec`] box in which it is known exactly;
//! operations either stay exact in that box or report a smaller one.

pub mod json;
pub mod matrix;
pub mod monomial;
pub mod par;
pub mod poly;
pub mod rational;
pub mod series;
pub mod symbol;
pub mod trunc;

pub use matrix::{mat_vec, SeriesMatrix, SeriesVector};
pub use monomial::Monomial;
pub use poly::Poly;
pub use rational::Rational;
pub use series::Series;
pub use symbol::{MultiIndex, Symbol};
pub use trunc::TruncationSpec;

#[derive(Debug, thiserror::Error)]
pub enum SeriesError {
    #[error("truncation mismatch: {0} vs {1}")]
    TruncMismatch(TruncationSpec, TruncationSpec),
    #[error("ħ-exponent underflow at {0}")]
    HbarUnderflow(String),
    #[error("{op} does not terminate: offending monomial {monomial}")]
    NonTerminating { op: String, monomial: String },
    #[error("{0}: argument has a nonzero constant term")]
    ConstantTerm(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("cannot differentiate by {0}")]
    BadVariable(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
}
