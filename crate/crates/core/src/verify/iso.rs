//! Diagonal isomorphisms `L_x ↦ λ_x·e_{φ(x)}` between graded algebras.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebras::{BasisElement, Element, GradedIndex, LieBracket};
use crate::exactq::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum IsoOutcome {
    /// Nonzero scalars satisfying every window equation.
    Found(BTreeMap<GradedIndex, Rational>),
    /// The window equations have no nonzero solution.
    Absent { reason: String, indices: Vec<GradedIndex> },
    /// A contradiction appeared only after fixing a free scalar arbitrarily.
    Inconclusive { reason: String },
}

impl IsoOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoOutcome::Found(_))
    }

    pub fn to_json(&self) -> Value {
        match self {
            IsoOutcome::Found(m) => json!({
                "status": "found",
                "scaling": m.iter().map(|(k, v)| json!({"i": k.i, "j": k.j, "lambda": v.to_string()})).collect::<Vec<_>>(),
            }),
            IsoOutcome::Absent { reason, indices } => json!({
                "status": "absent",
                "reason": reason,
                "indices": indices,
            }),
            IsoOutcome::Inconclusive { reason } => json!({"status": "inconclusive", "reason": reason}),
        }
    }
}

/// `ca·λ_t = cb·λ_a·λ_b`
#[derive(Clone, Debug)]
struct Eq {
    a: GradedIndex,
    b: GradedIndex,
    t: GradedIndex,
    ca: Rational,
    cb: Rational,
}

impl Eq {
    fn holds(&self, lam: &BTreeMap<GradedIndex, Rational>) -> Option<bool> {
        let (la, lb, lt) = (lam.get(&self.a)?, lam.get(&self.b)?, lam.get(&self.t)?);
        Some(&self.ca * lt == &(&self.cb * la) * lb)
    }
}

fn image_bracket<B: LieBracket>(b: &B, x: BasisElement, y: BasisElement) -> Result<Element, String> {
    match (x, y) {
        (BasisElement::L(p), BasisElement::L(r)) => b.basis_bracket(p, r).map_err(|e| e.to_string()),
        _ => Ok(Element::zero()),
    }
}

/// Index map for `C(α)/C⁻ → B⁺(−α, −1; 1, 0, 0)`: the class of `L_{α,−1}`
/// goes to `c₁`, everything else keeps its degree.
pub fn quotient_index_map(alpha: i64) -> impl Fn(GradedIndex) -> BasisElement {
    move |x| {
        if x == GradedIndex::new(alpha, -1) {
            BasisElement::C1
        } else {
            BasisElement::L(x)
        }
    }
}

/// Searches for nonzero `λ` with `φ([L_a, L_b]) = [φ L_a, φ L_b]` on every
/// window pair whose bracket stays inside the window.
///
/// The equations are multiplicative, so they are solved by propagation:
/// after fixing `λ_{1,0} = λ_{0,1} = 1` (a grading character, so no loss of
/// generality), every other value is forced by some equation with two known
/// factors. Remaining unknowns, if any, are set to 1 and flagged.
pub fn find_diagonal_isomorphism<A: LieBracket, B: LieBracket>(
    a_alg: &A,
    b_alg: &B,
    index_map: impl Fn(GradedIndex) -> BasisElement,
    w: i64,
) -> IsoOutcome {
    let window: Vec<GradedIndex> = GradedIndex::window(w).filter(|x| a_alg.in_domain(*x)).collect();
    let in_window: BTreeSet<GradedIndex> = window.iter().copied().collect();
    let mut image = BTreeMap::new();
    let mut preimage = BTreeMap::new();
    for &x in &window {
        let e = index_map(x);
        if b_alg.degree(e).is_none() {
            return IsoOutcome::Absent {
                reason: format!("{e} is not a basis vector of the target"),
                indices: vec![x],
            };
        }
        if let Some(prev) = preimage.insert(e, x) {
            return IsoOutcome::Absent {
                reason: format!("index map is not injective at {e}"),
                indices: vec![prev, x],
            };
        }
        image.insert(x, e);
    }

    let mut eqs = Vec::new();
    for &a in &window {
        for &b in &window {
            let ea = match a_alg.basis_bracket(a, b) {
                Ok(e) => e,
                Err(e) => return IsoOutcome::Absent { reason: e.to_string(), indices: vec![a, b] },
            };
            let eb = match image_bracket(b_alg, image[&a], image[&b]) {
                Ok(e) => e,
                Err(e) => return IsoOutcome::Absent { reason: e, indices: vec![a, b] },
            };
            let outside = ea.terms().any(|(basis, _)| match basis {
                BasisElement::L(t) => !in_window.contains(t),
                _ => true,
            }) || eb.terms().any(|(basis, _)| !preimage.contains_key(basis));
            if outside {
                continue;
            }
            let mut targets: BTreeSet<GradedIndex> = BTreeSet::new();
            targets.extend(ea.terms().filter_map(|(basis, _)| basis.index()));
            targets.extend(eb.terms().map(|(basis, _)| preimage[basis]));
            for t in targets {
                let ca = ea.coeff(&BasisElement::L(t)).cloned().unwrap_or_else(Rational::zero);
                let cb = eb.coeff(&image[&t]).cloned().unwrap_or_else(Rational::zero);
                match (ca.is_zero(), cb.is_zero()) {
                    (true, true) => {}
                    (false, false) => eqs.push(Eq { a, b, t, ca, cb }),
                    _ => {
                        return IsoOutcome::Absent {
                            reason: format!("bracket [{a}, {b}] vanishes on one side only (coefficients {ca} and {cb})"),
                            indices: vec![a, b, t],
                        }
                    }
                }
            }
        }
    }

    let mut lam: BTreeMap<GradedIndex, Rational> = BTreeMap::new();
    for g in [GradedIndex::new(1, 0), GradedIndex::new(0, 1)] {
        if in_window.contains(&g) {
            lam.insert(g, Rational::one());
        }
    }
    let mut free_choice = false;
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            for e in &eqs {
                let (la, lb, lt) = (lam.get(&e.a).cloned(), lam.get(&e.b).cloned(), lam.get(&e.t).cloned());
                let derived = match (la, lb, lt) {
                    (Some(la), Some(lb), None) => Some((e.t, &(&(&e.cb * &la) * &lb) / &e.ca)),
                    (Some(la), None, Some(lt)) => Some((e.b, &(&e.ca * &lt) / &(&e.cb * &la))),
                    (None, Some(lb), Some(lt)) => Some((e.a, &(&e.ca * &lt) / &(&e.cb * &lb))),
                    _ => None,
                };
                if let Some((k, v)) = derived {
                    lam.insert(k, v);
                    changed = true;
                }
                if e.holds(&lam) == Some(false) {
                    let reason = format!("equation at [{}, {}] cannot be satisfied", e.a, e.b);
                    return if free_choice {
                        IsoOutcome::Inconclusive { reason }
                    } else {
                        IsoOutcome::Absent { reason, indices: vec![e.a, e.b, e.t] }
                    };
                }
            }
        }
        match window.iter().find(|x| !lam.contains_key(x)) {
            Some(x) => {
                lam.insert(*x, Rational::one());
                free_choice = true;
            }
            None => break,
        }
    }
    debug_assert!(eqs.iter().all(|e| e.holds(&lam) == Some(true)));
    IsoOutcome::Found(lam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{AlgebraSpec, CentralParams, TruncatedQuotient};
    use crate::exactq::q;

    #[test]
    fn identity_on_vir() {
        let v = AlgebraSpec::<Rational>::vir(q(1, 1)).unwrap();
        let IsoOutcome::Found(lam) = find_diagonal_isomorphism(&v, &v, BasisElement::L, 3) else {
            panic!("identity must be found")
        };
        assert!(lam.values().all(|x| x == &q(1, 1)));
    }

    #[test]
    fn vir_parameters_differ() {
        let v1 = AlgebraSpec::<Rational>::vir(q(1, 1)).unwrap();
        let v2 = AlgebraSpec::<Rational>::vir(q(2, 1)).unwrap();
        let out = find_diagonal_isomorphism(&v1, &v2, BasisElement::L, 3);
        assert!(matches!(out, IsoOutcome::Absent { .. }), "{out:?}");
    }

    #[test]
    fn c_quotient_matches_bplus() {
        let c = AlgebraSpec::<Rational>::c(q(1, 1)).unwrap();
        let quo = TruncatedQuotient { inner: c, min_j: -1 };
        let central = CentralParams {
            a1: q(1, 1),
            a2: q(0, 1),
            a2p: q(0, 1),
        };
        let bp = AlgebraSpec::bplus_minus1(q(-1, 1), central).unwrap();
        let out = find_diagonal_isomorphism(&quo, &bp, quotient_index_map(1), 3);
        assert!(out.is_found(), "{out:?}");
    }
}
