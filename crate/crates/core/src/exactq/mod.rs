//! Exact coefficient arithmetic: rationals, sparse multivariate polynomials,
//! and exact linear elimination.

mod linalg;
mod poly;
mod rational;

use std::fmt;

pub use linalg::{is_consistent, solve, LinearSolution, ReducedSystem, SparseRow};
pub use poly::{default_root_candidates, rational_root_scan, Monomial, MultiPoly, Symbol};
pub use rational::{q, RatOp, Rational};

use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational literal `{0}`")]
    Parse(String),
    #[error("no value assigned to symbol `{0}`")]
    MissingSymbol(String),
    #[error("expected a polynomial in one symbol, found {0:?}")]
    NotUnivariate(Vec<String>),
}

/// Coefficient type of algebra elements: exact rationals, or polynomials when
/// some structure parameters are kept symbolic.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + From<Rational> + Send + Sync + 'static
{
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, k: &Rational) -> Self;
    fn to_json(&self) -> serde_json::Value;

    fn neg_ref(&self) -> Self {
        self.scale(&Rational::from(-1))
    }
}

impl Scalar for Rational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, k: &Rational) -> Self {
        self * k
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Scalar for MultiPoly {
    fn add_ref(&self, other: &Self) -> Self {
        MultiPoly::add_ref(self, other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        MultiPoly::mul_ref(self, other)
    }
    fn scale(&self, k: &Rational) -> Self {
        MultiPoly::scale(self, k)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomials always serialize")
    }
}
