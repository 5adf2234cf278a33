//! The homogeneous system `d′_{i,j}(4α−7i−7j−k) = d′_{0,i+j}(4α+9i−7j−k)`,
//! whose only solution is zero.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::exactq::{solve, LinearSolution, MultiPoly, Rational, SparseRow};

/// Unknowns `d′_{i,j}` for `|i|, |j|, |i+j| <= w` and one equation per
/// `(i, j, k)` with `|k| <= w` over those unknowns.
pub fn dprime_system(alpha: &Rational, w: i64) -> (Vec<(i64, i64)>, Vec<SparseRow>) {
    let unknowns: Vec<(i64, i64)> = (-w..=w)
        .flat_map(|i| (-w..=w).map(move |j| (i, j)))
        .filter(|(i, j)| (i + j).abs() <= w)
        .collect();
    let col: BTreeMap<(i64, i64), usize> = unknowns.iter().enumerate().map(|(n, x)| (*x, n)).collect();
    let four_a = &Rational::from(4) * alpha;
    let mut rows = Vec::new();
    for &(i, j) in &unknowns {
        for k in -w..=w {
            let left = &four_a + &Rational::from(-7 * i - 7 * j - k);
            let right = &four_a + &Rational::from(9 * i - 7 * j - k);
            rows.push(SparseRow::new(
                [(col[&(i, j)], left), (col[&(0, i + j)], -right)],
                Rational::zero(),
            ));
        }
    }
    (unknowns, rows)
}

#[derive(Clone, Debug, PartialEq)]
pub enum DPrimeOutcome {
    /// Full column rank: every `d′_{i,j}` in the window is zero.
    OnlyZero { unknowns: usize, equations: usize, rank: usize },
    /// A nonzero kernel vector.
    Counterexample(BTreeMap<(i64, i64), Rational>),
}

impl DPrimeOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, DPrimeOutcome::OnlyZero { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            DPrimeOutcome::OnlyZero { unknowns, equations, rank } => json!({
                "status": "only_zero_solution",
                "unknowns": unknowns,
                "equations": equations,
                "rank": rank,
            }),
            DPrimeOutcome::Counterexample(v) => json!({
                "status": "nonzero_solution",
                "solution": v.iter().map(|((i, j), x)| json!({"i": i, "j": j, "value": x.to_string()})).collect::<Vec<_>>(),
            }),
        }
    }
}

pub fn check_dprime_impossibility(alpha: &Rational, w: i64) -> DPrimeOutcome {
    let (unknowns, rows) = dprime_system(alpha, w);
    let LinearSolution::Consistent(sol) = solve(&rows, unknowns.len()) else {
        unreachable!("homogeneous systems are consistent")
    };
    match sol.nullspace().into_iter().next() {
        None => DPrimeOutcome::OnlyZero {
            unknowns: unknowns.len(),
            equations: rows.len(),
            rank: sol.rank(),
        },
        Some(v) => DPrimeOutcome::Counterexample(
            unknowns.into_iter().zip(v).filter(|(_, x)| !x.is_zero()).collect(),
        ),
    }
}

/// The equation at `(i, j)` with `k` and the two unknowns kept symbolic;
/// its `k`-coefficient is `d′_{0,i+j} − d′_{i,j}`.
pub fn dprime_equation_poly(alpha: &Rational, i: i64, j: i64) -> MultiPoly {
    let k = MultiPoly::var("k");
    let dij = MultiPoly::var(&format!("d({i},{j})"));
    let d0 = MultiPoly::var(&format!("d(0,{})", i + j));
    let four_a = MultiPoly::constant(&Rational::from(4) * alpha);
    let left = &(&four_a + &MultiPoly::from(-7 * i - 7 * j)) - &k;
    let right = &(&four_a + &MultiPoly::from(9 * i - 7 * j)) - &k;
    &(&dij * &left) - &(&d0 * &right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{q, Symbol};

    #[test]
    fn only_zero_solution() {
        assert!(check_dprime_impossibility(&q(1, 1), 3).is_certified());
        assert!(check_dprime_impossibility(&q(2, 5), 3).is_certified());
    }

    #[test]
    fn k_coefficient_equates_unknowns() {
        let p = dprime_equation_poly(&q(1, 1), 2, -1);
        let ck = p.coefficient_of(&Symbol::new("k"), 1);
        let expect = &MultiPoly::var("d(0,1)") - &MultiPoly::var("d(2,-1)");
        assert_eq!(ck, expect);
    }

    #[test]
    fn every_unknown_is_referenced() {
        let (unknowns, rows) = dprime_system(&q(1, 1), 2);
        for n in 0..unknowns.len() {
            assert!(rows.iter().any(|r| r.coeffs.contains_key(&n)));
        }
    }
}
