//! Z×Z-graded Lie algebra families given by explicit structure constants.

mod element;
mod index;
mod spec;

pub use element::{BasisElement, Element};
pub use index::{GradedIndex, IndexParseError};
pub use spec::{c_coefficient, factorial_ratio, AlgebraSpec, CTargetReading, CentralParams, Family};

use serde_json::{json, Value};

use crate::exactq::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("index {0} is not in the basis")]
    OutOfDomain(GradedIndex),
    #[error("central generator {0} does not exist for these parameters")]
    CentralAbsent(BasisElement),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

/// A Lie algebra with basis `{L_idx : in_domain(idx)}` plus optional central
/// generators.
pub trait LieBracket<S: Scalar = Rational>: Sync {
    fn in_domain(&self, idx: GradedIndex) -> bool;

    fn basis_bracket(&self, a: GradedIndex, b: GradedIndex) -> Result<Element<S>, AlgebraError>;

    /// Degree of a central generator, `None` when it is absent.
    fn central_degree(&self, _which: BasisElement) -> Option<GradedIndex> {
        None
    }

    /// Degree of any basis vector, `None` for absent generators.
    fn degree(&self, b: BasisElement) -> Option<GradedIndex> {
        match b {
            BasisElement::L(idx) => self.in_domain(idx).then_some(idx),
            c => self.central_degree(c),
        }
    }

    /// Bilinear extension; central generators bracket to zero.
    fn bracket(&self, x: &Element<S>, y: &Element<S>) -> Result<Element<S>, AlgebraError> {
        for (b, _) in x.terms().chain(y.terms()) {
            if b.is_central() && self.central_degree(*b).is_none() {
                return Err(AlgebraError::CentralAbsent(*b));
            }
        }
        let mut out = Element::zero();
        for (bx, cx) in x.terms() {
            let BasisElement::L(a) = bx else { continue };
            for (by, cy) in y.terms() {
                let BasisElement::L(b) = by else { continue };
                let e = self.basis_bracket(*a, *b)?;
                out.add_assign_ref(&e.scale_by(&cx.mul_ref(cy)));
            }
        }
        Ok(out)
    }
}

impl<S: Scalar, T: LieBracket<S> + ?Sized> LieBracket<S> for &T {
    fn in_domain(&self, idx: GradedIndex) -> bool {
        (**self).in_domain(idx)
    }
    fn basis_bracket(&self, a: GradedIndex, b: GradedIndex) -> Result<Element<S>, AlgebraError> {
        (**self).basis_bracket(a, b)
    }
    fn central_degree(&self, which: BasisElement) -> Option<GradedIndex> {
        (**self).central_degree(which)
    }
}

/// Quotient of an algebra by the span of `L_{i,j}` with `j < min_j`, valid when
/// that span is an ideal.
#[derive(Clone, Debug)]
pub struct TruncatedQuotient<A> {
    pub inner: A,
    pub min_j: i64,
}

impl<S: Scalar, A: LieBracket<S>> LieBracket<S> for TruncatedQuotient<A> {
    fn in_domain(&self, idx: GradedIndex) -> bool {
        idx.j >= self.min_j && self.inner.in_domain(idx)
    }

    fn basis_bracket(&self, a: GradedIndex, b: GradedIndex) -> Result<Element<S>, AlgebraError> {
        for x in [a, b] {
            if !self.in_domain(x) {
                return Err(AlgebraError::OutOfDomain(x));
            }
        }
        let e = self.inner.basis_bracket(a, b)?;
        Ok(e.filter(|basis| match basis {
            BasisElement::L(idx) => idx.j >= self.min_j,
            _ => true,
        }))
    }

    fn central_degree(&self, which: BasisElement) -> Option<GradedIndex> {
        self.inner.central_degree(which)
    }
}

/// One row of a structure table.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow<S: Scalar = Rational> {
    pub left: GradedIndex,
    pub right: GradedIndex,
    pub result: Element<S>,
}

/// `[L_a, L_b]` for all in-domain `a, b` with `|i|, |j| <= w`, ordered
/// lexicographically by `(a, b)`.
pub fn structure_table<S: Scalar, A: LieBracket<S> + ?Sized>(
    alg: &A,
    w: i64,
) -> Result<Vec<TableRow<S>>, AlgebraError> {
    let idx: Vec<GradedIndex> = GradedIndex::window(w).filter(|x| alg.in_domain(*x)).collect();
    let mut rows = Vec::with_capacity(idx.len() * idx.len());
    for &left in &idx {
        for &right in &idx {
            rows.push(TableRow {
                left,
                right,
                result: alg.basis_bracket(left, right)?,
            });
        }
    }
    Ok(rows)
}

pub fn table_to_json<S: Scalar>(rows: &[TableRow<S>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "left": {"i": r.left.i, "j": r.left.j},
                    "right": {"i": r.right.i, "j": r.right.j},
                    "result": r.result.to_json(),
                })
            })
            .collect(),
    )
}
