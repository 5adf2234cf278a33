//! The determinant `d_k`, the polynomial identity it must satisfy, and the
//! resulting case split on `(β₁, β₋₁)`.

use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::exactq::{default_root_candidates, rational_root_scan, MultiPoly, Rational, Symbol};

fn var(s: &str) -> MultiPoly {
    MultiPoly::var(s)
}

fn c(n: i64) -> MultiPoly {
    MultiPoly::from(n)
}

/// `d_k = det [[(−α+β₋₁k)(−α+(1+β₋₁)k), −(α+β₁k)(α+(1+β₁)k)], [−α+2β₋₁k, α+2β₁k]]`
/// in the symbols `alpha`, `beta1`, `betam1`.
pub fn determinant_poly(k: &MultiPoly) -> MultiPoly {
    let (a, b1, bm) = (var("alpha"), var("beta1"), var("betam1"));
    let one = c(1);
    let m00 = &(&(&bm * k) - &a) * &(&(&(&one + &bm) * k) - &a);
    let m01 = -(&(&a + &(&b1 * k)) * &(&a + &(&(&one + &b1) * k)));
    let m10 = &(&(&c(2) * &bm) * k) - &a;
    let m11 = &a + &(&(&c(2) * &b1) * k);
    &(&m00 * &m11) - &(&m01 * &m10)
}

/// Left side of the identity obtained by eliminating `c_{0,±2i}`, as a
/// polynomial in `i`, `alpha`, `beta1`, `betam1`.
pub fn constraint_lhs() -> MultiPoly {
    let (a, b1, bm, i) = (var("alpha"), var("beta1"), var("betam1"), var("i"));
    let one = c(1);
    let d_pos = determinant_poly(&i);
    let d_neg = determinant_poly(&-i.clone());
    let bmi = &bm * &i;
    let b1i2 = &(&c(2) * &b1) * &i;
    let wide = &(&one + &bm) * &i;
    let t1 = &(&(&(&c(2) * &(&bmi - &a)) * &(&wide - &a)) * &(&a + &b1i2)) * &d_neg;
    let t2 = &(&(&(&c(2) * &(&a + &bmi)) * &(&a + &wide)) * &(&a - &b1i2)) * &d_pos;
    let mix = &(&(&bm - &b1) * &(&(&bm + &b1) - &one)) - &c(2);
    let t3 = &(&mix * &d_pos) * &d_neg;
    &(&t1 + &t2) + &t3
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintPolys {
    /// `i⁴` coefficient at `β₋₁ = 0`.
    pub p4: MultiPoly,
    /// `i⁶` coefficient.
    pub p6: MultiPoly,
}

pub fn derive_constraint_polys() -> ConstraintPolys {
    let lhs = constraint_lhs();
    let i = Symbol::new("i");
    let p6 = lhs.coefficient_of(&i, 6);
    let p4 = lhs
        .substitute_value(&Symbol::new("betam1"), &Rational::zero())
        .coefficient_of(&i, 4);
    ConstraintPolys { p4, p6 }
}

/// Product of linear factors times a constant.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: MultiPoly,
    pub factors: Vec<(MultiPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> MultiPoly {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, (f, m)| &acc * &f.pow(*m))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "unit": self.unit.to_string(),
            "factors": self.factors.iter().map(|(f, m)| json!({"factor": f.to_string(), "multiplicity": m})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit)?;
        for (p, m) in &self.factors {
            write!(f, "*({p})")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Linear factors tried by [`factor_linear`]: each symbol, `β − r`, and
/// `β₁ ± β₋₁ − r` for half-integers `|r| <= 3`.
pub fn candidate_factors() -> Vec<MultiPoly> {
    let (a, b1, bm) = (var("alpha"), var("beta1"), var("betam1"));
    let mut out = vec![a, b1.clone(), bm.clone()];
    for r in default_root_candidates(3) {
        if r.is_zero() {
            continue;
        }
        let r = MultiPoly::constant(r);
        out.push(&b1 - &r);
        out.push(&bm - &r);
    }
    for r in default_root_candidates(3) {
        let r = MultiPoly::constant(r);
        out.push(&(&b1 - &bm) - &r);
        out.push(&(&b1 + &bm) - &r);
    }
    out
}

/// Repeated exact division by the candidates; whatever is left is the unit.
pub fn factor_linear(p: &MultiPoly, candidates: &[MultiPoly]) -> Factorization {
    let mut rest = p.clone();
    let mut factors = Vec::new();
    if !rest.is_zero() {
        for f in candidates {
            let mut m = 0;
            while let Some(q) = rest.div_exact(f) {
                rest = q;
                m += 1;
            }
            if m > 0 {
                factors.push((f.clone(), m));
            }
        }
    }
    Factorization { unit: rest, factors }
}

/// One branch of the case split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseRelation {
    /// `β₁ = sign·β₋₁ + offset`
    Linear { sign: i64, offset: Rational },
    /// `(β₁, β₋₁)` fixed.
    Pair { beta1: Rational, betam1: Rational },
}

impl CaseRelation {
    pub fn holds(&self, beta1: &Rational, betam1: &Rational) -> bool {
        match self {
            CaseRelation::Linear { sign, offset } => beta1 == &(&(&Rational::from(*sign) * betam1) + offset),
            CaseRelation::Pair { beta1: b, betam1: m } => b == beta1 && m == betam1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CaseRelation::Linear { sign, offset } => {
                json!({"kind": "linear", "sign": sign, "offset": offset.to_string(), "text": self.to_string()})
            }
            CaseRelation::Pair { beta1, betam1 } => {
                json!({"kind": "pair", "beta1": beta1.to_string(), "betam1": betam1.to_string(), "text": self.to_string()})
            }
        }
    }
}

impl fmt::Display for CaseRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseRelation::Linear { sign, offset } => {
                let s = if *sign < 0 { "-betam1" } else { "betam1" };
                if offset.is_zero() {
                    write!(f, "beta1 = {s}")
                } else {
                    write!(f, "beta1 = {s} + ({offset})")
                }
            }
            CaseRelation::Pair { beta1, betam1 } => write!(f, "(beta1, betam1) = ({beta1}, {betam1})"),
        }
    }
}

/// Relations `β₁ = ±β₋₁ + b` that annihilate `p6`, followed by the roots of
/// `p4/α²` not already covered at `β₋₁ = 0`, paired with `β₋₁ = 0` and
/// mirrored.
pub fn enumerate_case_split(polys: &ConstraintPolys) -> Vec<CaseRelation> {
    let b1 = Symbol::new("beta1");
    let bm = MultiPoly::var("betam1");
    let candidates = default_root_candidates(4);
    let mut out = Vec::new();
    let mut offsets: Vec<&Rational> = candidates.iter().collect();
    offsets.sort_by(|a, b| b.cmp(a));
    for offset in offsets {
        for sign in [1, -1] {
            let sub = &(&bm * &MultiPoly::from(sign)) + &MultiPoly::constant(offset.clone());
            if polys.p6.substitute(&b1, &sub).is_zero() {
                out.push(CaseRelation::Linear {
                    sign,
                    offset: offset.clone(),
                });
            }
        }
    }
    let alpha2 = MultiPoly::var("alpha").pow(2);
    let reduced = polys.p4.div_exact(&alpha2).unwrap_or_else(|| polys.p4.clone());
    let roots = rational_root_scan(&reduced, &candidates).unwrap_or_default();
    let zero = Rational::zero();
    let mut pairs = Vec::new();
    for r in roots.iter().rev() {
        if out.iter().any(|rel| rel.holds(r, &zero)) {
            continue;
        }
        pairs.push(r.clone());
    }
    for r in &pairs {
        out.push(CaseRelation::Pair {
            beta1: r.clone(),
            betam1: zero.clone(),
        });
    }
    for r in &pairs {
        out.push(CaseRelation::Pair {
            beta1: zero.clone(),
            betam1: r.clone(),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::q;

    fn product(fs: &[MultiPoly]) -> MultiPoly {
        fs.iter().fold(MultiPoly::from(1), |a, f| &a * f)
    }

    fn reference_p4() -> MultiPoly {
        let (a, b) = (var("alpha"), var("beta1"));
        product(&[
            b.clone(),
            b.clone(),
            &b + &c(1),
            &b + &c(2),
            &b - &c(1),
            &b + &c(3),
            a.clone(),
            a,
        ])
    }

    fn reference_p6() -> MultiPoly {
        let (b, m) = (var("beta1"), var("betam1"));
        product(&[
            c(-4),
            &b - &m,
            &b + &m,
            &(&b + &m) + &c(1),
            &(&b + &m) + &c(2),
            b.clone(),
            b,
            m.clone(),
            m,
        ])
    }

    #[test]
    fn polys_match_reference_up_to_scale() {
        let polys = derive_constraint_polys();
        let s4 = polys.p4.div_exact(&reference_p4()).and_then(|x| x.as_constant()).unwrap();
        let s6 = polys.p6.div_exact(&reference_p6()).and_then(|x| x.as_constant()).unwrap();
        assert!(!s4.is_zero() && !s6.is_zero());
    }

    #[test]
    fn p6_vanishes_on_opposite_betas() {
        let polys = derive_constraint_polys();
        let sub = -var("betam1");
        assert!(polys.p6.substitute(&Symbol::new("beta1"), &sub).is_zero());
    }

    #[test]
    fn determinant_leading_coefficient_at_zero_betam1() {
        // degree 2 in k with leading coefficient −αβ₁(β₁+3)
        let d = determinant_poly(&var("k")).substitute_value(&Symbol::new("betam1"), &q(0, 1));
        let lead = d.coefficient_of(&Symbol::new("k"), 2);
        let expect = -(&(&var("alpha") * &var("beta1")) * &(&var("beta1") + &c(3)));
        assert_eq!(lead, expect);
        assert!(d.coefficient_of(&Symbol::new("k"), 3).is_zero());
    }

    #[test]
    fn case_split_is_exact() {
        let rels = enumerate_case_split(&derive_constraint_polys());
        let lin = |s: i64, b: i64| CaseRelation::Linear {
            sign: s,
            offset: q(b, 1),
        };
        let pair = |x: i64, y: i64| CaseRelation::Pair {
            beta1: q(x, 1),
            betam1: q(y, 1),
        };
        assert_eq!(
            rels,
            vec![
                lin(1, 0),
                lin(-1, 0),
                lin(-1, -1),
                lin(-1, -2),
                pair(1, 0),
                pair(-3, 0),
                pair(0, 1),
                pair(0, -3),
            ]
        );
    }

    #[test]
    fn factorization_round_trips() {
        let polys = derive_constraint_polys();
        let f = factor_linear(&polys.p6, &candidate_factors());
        assert!(f.unit.as_constant().is_some());
        assert_eq!(f.expand(), polys.p6);
        let f = factor_linear(&polys.p4, &candidate_factors());
        assert!(f.unit.as_constant().is_some());
        assert_eq!(f.expand(), polys.p4);
    }
}
