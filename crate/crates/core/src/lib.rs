//! Exact computations for Z×Z-graded Lie algebras of generalized Virasoro
//! and Block type: structure constants, identity checks, modules over
//! `Vir(α)`, and the coefficient systems behind their classification.

pub mod algebras;
pub mod classify;
pub mod exactq;
pub mod verify;
pub mod virmodules;

pub use algebras::{
    structure_table, AlgebraError, AlgebraSpec, BasisElement, CentralParams, Element, Family,
    GradedIndex, LieBracket,
};
pub use exactq::{ArithError, MultiPoly, Rational, Scalar, Symbol};
