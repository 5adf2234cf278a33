//! Exact identity checks over finite windows, symbolic Jacobi proofs, and
//! diagonal isomorphism search.

mod iso;
mod symbolic;

pub use iso::{find_diagonal_isomorphism, quotient_index_map, IsoOutcome};
pub use symbolic::{
    block_coefficient_poly, d_coefficient_poly, symbolic_jacobi, symbolic_jacobi_block,
    symbolic_jacobi_d, symbolic_jacobi_vir, SymIndex,
};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::algebras::{BasisElement, Element, GradedIndex, LieBracket};
use crate::exactq::Scalar;

/// One failing index tuple and what went wrong there.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    /// Index tuple, as a JSON list of `{i, j}` for algebra checks.
    pub indices: Value,
    pub residual: Value,
}

impl Witness {
    pub fn at(indices: &[GradedIndex], residual: Value) -> Self {
        Witness {
            indices: serde_json::to_value(indices).expect("indices always serialize"),
            residual,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViolationReport {
    pub check: String,
    pub checked_count: usize,
    pub witnesses: Vec<Witness>,
}

impl ViolationReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports always serialize")
    }

    pub(crate) fn merge(check: &str, parts: Vec<(usize, Vec<Witness>)>) -> Self {
        let mut out = ViolationReport {
            check: check.to_string(),
            checked_count: 0,
            witnesses: Vec::new(),
        };
        for (n, w) in parts {
            out.checked_count += n;
            out.witnesses.extend(w);
        }
        out
    }
}

fn domain_window<S: Scalar, A: LieBracket<S> + ?Sized>(alg: &A, w: i64) -> Vec<GradedIndex> {
    GradedIndex::window(w).filter(|x| alg.in_domain(*x)).collect()
}

fn error_witness(indices: Vec<GradedIndex>, e: impl std::fmt::Display) -> Witness {
    Witness::at(&indices, Value::String(format!("error: {e}")))
}

/// Witnesses every ordered pair with `[a,b] + [b,a] ≠ 0`.
pub fn check_antisymmetry<S: Scalar, A: LieBracket<S> + ?Sized>(alg: &A, w: i64) -> ViolationReport {
    let idx = domain_window(alg, w);
    let parts = idx
        .par_iter()
        .map(|&a| {
            let mut wit = Vec::new();
            for &b in &idx {
                match (alg.basis_bracket(a, b), alg.basis_bracket(b, a)) {
                    (Ok(x), Ok(y)) => {
                        let r = x.add_ref(&y);
                        if !r.is_zero() {
                            wit.push(Witness::at(&[a, b], r.to_json()));
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => wit.push(error_witness(vec![a, b], e)),
                }
            }
            (idx.len(), wit)
        })
        .collect();
    ViolationReport::merge("antisymmetry", parts)
}

/// Cyclic sum `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]`.
pub fn jacobi_sum<S: Scalar, A: LieBracket<S> + ?Sized>(
    alg: &A,
    a: GradedIndex,
    b: GradedIndex,
    c: GradedIndex,
) -> Result<Element<S>, crate::algebras::AlgebraError> {
    let mut sum = Element::zero();
    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
        let inner = alg.basis_bracket(y, z)?;
        for (basis, coeff) in inner.terms() {
            let BasisElement::L(t) = basis else { continue };
            sum.add_assign_ref(&alg.basis_bracket(x, *t)?.scale_by(coeff));
        }
    }
    Ok(sum)
}

/// Sweeps window triples up to cyclic rotation (the cyclic sum is invariant
/// under rotation, so every ordered triple is covered).
pub fn check_jacobi<S: Scalar, A: LieBracket<S> + ?Sized>(alg: &A, w: i64) -> ViolationReport {
    let idx = domain_window(alg, w);
    let parts = idx
        .par_iter()
        .map(|&a| {
            let mut n = 0;
            let mut wit = Vec::new();
            for &b in idx.iter().filter(|b| **b >= a) {
                for &c in idx.iter().filter(|c| **c >= a) {
                    n += 1;
                    match jacobi_sum(alg, a, b, c) {
                        Ok(r) if r.is_zero() => {}
                        Ok(r) => wit.push(Witness::at(&[a, b, c], r.to_json())),
                        Err(e) => wit.push(error_witness(vec![a, b, c], e)),
                    }
                }
            }
            (n, wit)
        })
        .collect();
    ViolationReport::merge("jacobi", parts)
}

/// Every `L` term of `[L_a, L_b]` must sit at `a+b` inside the domain, and
/// central terms only at their own degree.
pub fn check_grading<S: Scalar, A: LieBracket<S> + ?Sized>(alg: &A, w: i64) -> ViolationReport {
    let idx = domain_window(alg, w);
    let parts = idx
        .par_iter()
        .map(|&a| {
            let mut wit = Vec::new();
            for &b in &idx {
                let target = a + b;
                let e = match alg.basis_bracket(a, b) {
                    Ok(e) => e,
                    Err(err) => {
                        wit.push(error_witness(vec![a, b], err));
                        continue;
                    }
                };
                let bad = e.filter(|basis| match basis {
                    BasisElement::L(t) => *t != target || !alg.in_domain(*t),
                    c => alg.central_degree(*c) != Some(target),
                });
                if !bad.is_zero() {
                    wit.push(Witness::at(&[a, b], bad.to_json()));
                }
            }
            (idx.len(), wit)
        })
        .collect();
    ViolationReport::merge("grading", parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{AlgebraError, AlgebraSpec, CTargetReading, CentralParams};
    use crate::exactq::{q, MultiPoly, Rational};

    /// Negates one structure constant.
    struct Corrupt<'a> {
        inner: &'a AlgebraSpec,
        at: (GradedIndex, GradedIndex),
    }

    impl LieBracket for Corrupt<'_> {
        fn in_domain(&self, idx: GradedIndex) -> bool {
            self.inner.in_domain(idx)
        }
        fn basis_bracket(&self, a: GradedIndex, b: GradedIndex) -> Result<Element, AlgebraError> {
            let e = self.inner.basis_bracket(a, b)?;
            Ok(if (a, b) == self.at { e.neg() } else { e })
        }
    }

    #[test]
    fn clean_sweeps() {
        let v = AlgebraSpec::<Rational>::vir(q(1, 2)).unwrap();
        assert!(check_antisymmetry(&v, 3).passed());
        assert!(check_jacobi(&v, 2).passed());
        assert!(check_grading(&v, 3).passed());
        let c = AlgebraSpec::<Rational>::c(q(2, 3)).unwrap();
        assert!(check_antisymmetry(&c, 3).passed());
        assert!(check_jacobi(&c, 2).passed());
    }

    #[test]
    fn corrupted_pair_gives_two_witnesses() {
        let c = AlgebraSpec::<Rational>::c(q(2, 3)).unwrap();
        let bad = Corrupt {
            inner: &c,
            at: (GradedIndex::new(1, 0), GradedIndex::new(0, 1)),
        };
        let r = check_antisymmetry(&bad, 2);
        assert_eq!(r.witnesses.len(), 2);
        assert!(!check_jacobi(&bad, 2).passed());
    }

    #[test]
    fn symbolic_block_cocycle() {
        let sym = CentralParams {
            a1: MultiPoly::var("a1"),
            a2: MultiPoly::var("a2"),
            a2p: MultiPoly::var("a2p"),
        };
        let b = AlgebraSpec::block(q(1, 1), q(2, 1), sym).unwrap();
        assert!(check_jacobi(&b, 2).passed());
        assert!(check_grading(&b, 2).passed());
    }

    #[test]
    fn block_central_terms_only_at_their_degree() {
        let central = CentralParams {
            a1: q(1, 1),
            a2: q(1, 1),
            a2p: q(1, 1),
        };
        let b = AlgebraSpec::block(q(1, 1), q(2, 1), central).unwrap();
        assert!(check_grading(&b, 3).passed());
        for a in GradedIndex::window(3).filter(|x| b.in_domain(*x)) {
            for c in GradedIndex::window(3).filter(|x| b.in_domain(*x)) {
                let e = b.basis_bracket(a, c).unwrap();
                if e.coeff(&BasisElement::C1).is_some() {
                    assert_eq!(a + c, GradedIndex::new(-1, 2));
                }
            }
        }
    }

    #[test]
    fn literal_c_reading_breaks_grading() {
        let c = AlgebraSpec::<Rational>::c(q(2, 3)).unwrap().with_c_reading(CTargetReading::Literal);
        assert!(!check_grading(&c, 3).passed());
    }

    #[test]
    fn report_json_shape() {
        let v = AlgebraSpec::<Rational>::vir(q(1, 1)).unwrap();
        let r = check_grading(&v, 1);
        assert_eq!(r.checked_count, 81);
        assert_eq!(
            r.to_json().to_string(),
            r#"{"check":"grading","checked_count":81,"witnesses":[]}"#
        );
    }
}
