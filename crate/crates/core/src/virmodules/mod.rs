//! Intermediate-series modules over the centerless Virasoro algebra
//! `[L_i, L_j] = (j − i)L_{i+j}`, with basis `{v_k}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::exactq::{solve, LinearSolution, Rational, SparseRow};
use crate::verify::{ViolationReport, Witness};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModuleFamily {
    /// `A_{α,β}`: `L_i v_k = (α + k + βi) v_{i+k}`.
    AlphaBeta,
    /// `A(α)`: `L_i v_k = (i + k) v_{i+k}`, `L_i v_0 = i(i + α) v_i`.
    A,
    /// `B(α)`: `L_i v_k = k v_{i+k}`, `L_i v_{−i} = −i(i + α) v_0`.
    B,
}

impl fmt::Display for ModuleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleFamily::AlphaBeta => "A_ab",
            ModuleFamily::A => "A",
            ModuleFamily::B => "B",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("subquotients are defined for A_ab modules only, got {0}")]
    NotAlphaBeta(ModuleFamily),
    #[error("v_{0} is not a basis vector of this module")]
    NotInBasis(i64),
}

/// A module together with an optional removed basis index (a subquotient
/// whose action drops the `v_{k₀}` component).
#[derive(Clone, PartialEq, Debug)]
pub struct ModuleSpec {
    pub family: ModuleFamily,
    pub alpha: Rational,
    pub beta: Rational,
    pub removed: Option<i64>,
}

impl ModuleSpec {
    pub fn alpha_beta(alpha: Rational, beta: Rational) -> Self {
        ModuleSpec {
            family: ModuleFamily::AlphaBeta,
            alpha,
            beta,
            removed: None,
        }
    }

    pub fn a(alpha: Rational) -> Self {
        ModuleSpec {
            family: ModuleFamily::A,
            alpha,
            beta: Rational::zero(),
            removed: None,
        }
    }

    pub fn b(alpha: Rational) -> Self {
        ModuleSpec {
            family: ModuleFamily::B,
            alpha,
            beta: Rational::zero(),
            removed: None,
        }
    }

    pub fn has_basis(&self, k: i64) -> bool {
        self.removed != Some(k)
    }

    /// The scalar `c` in `L_i v_k = c·v_{i+k}` (before removal).
    pub fn coefficient(&self, i: i64, k: i64) -> Rational {
        let (ri, rk) = (Rational::from(i), Rational::from(k));
        match self.family {
            ModuleFamily::AlphaBeta => &(&self.alpha + &rk) + &(&self.beta * &ri),
            ModuleFamily::A if k == 0 => &ri * &(&ri + &self.alpha),
            ModuleFamily::A => Rational::from(i + k),
            ModuleFamily::B if k == -i => -&(&ri * &(&ri + &self.alpha)),
            ModuleFamily::B => rk,
        }
    }

    pub fn act_basis(&self, i: i64, k: i64) -> ModVector {
        let mut out = ModVector::zero();
        if self.has_basis(k) && self.has_basis(i + k) {
            out.add_term(i + k, self.coefficient(i, k));
        }
        out
    }

    /// `L_i · x`
    pub fn act(&self, i: i64, x: &ModVector) -> ModVector {
        let mut out = ModVector::zero();
        for (k, c) in x.terms() {
            out.add_assign(&self.act_basis(i, *k).scale(c));
        }
        out
    }
}

/// Finite combination of the `v_k`, zero coefficients never stored.
#[derive(Clone, PartialEq, Default)]
pub struct ModVector {
    terms: BTreeMap<i64, Rational>,
}

impl ModVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: i64) -> Self {
        let mut v = Self::zero();
        v.add_term(k, Rational::one());
        v
    }

    pub fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_assign(&mut self, o: &ModVector) {
        for (k, c) in &o.terms {
            self.add_term(*k, c.clone());
        }
    }

    pub fn sub(&self, o: &ModVector) -> ModVector {
        let mut out = self.clone();
        out.add_assign(&o.scale(&Rational::from(-1)));
        out
    }

    pub fn scale(&self, f: &Rational) -> ModVector {
        let mut out = ModVector::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c * f);
        }
        out
    }

    pub fn coeff(&self, k: i64) -> Option<&Rational> {
        self.terms.get(&k)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `{"k": "p/q"}`
    pub fn to_json(&self) -> Value {
        Value::Object(
            self.terms
                .iter()
                .map(|(k, c)| (k.to_string(), Value::String(c.to_string())))
                .collect(),
        )
    }
}

impl fmt::Debug for ModVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("({c})*v{k}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `L_i L_j v_k − L_j L_i v_k = (j − i) L_{i+j} v_k` for `|i|, |j|, |k| <= w`.
pub fn check_module_axiom(m: &ModuleSpec, w: i64) -> ViolationReport {
    check_action_axiom(|i, k| m.act_basis(i, k), |k| m.has_basis(k), w)
}

/// The axiom sweep for any action given on basis vectors.
pub fn check_action_axiom(
    act: impl Fn(i64, i64) -> ModVector + Sync,
    has_basis: impl Fn(i64) -> bool + Sync,
    w: i64,
) -> ViolationReport {
    let apply = |i: i64, x: &ModVector| {
        let mut out = ModVector::zero();
        for (k, c) in x.terms() {
            out.add_assign(&act(i, *k).scale(c));
        }
        out
    };
    let parts = (-w..=w)
        .into_par_iter()
        .map(|i| {
            let mut n = 0;
            let mut wit = Vec::new();
            for j in -w..=w {
                for k in (-w..=w).filter(|k| has_basis(*k)) {
                    n += 1;
                    let v = ModVector::basis(k);
                    let lhs = apply(i, &apply(j, &v)).sub(&apply(j, &apply(i, &v)));
                    let rhs = apply(i + j, &v).scale(&Rational::from(j - i));
                    let r = lhs.sub(&rhs);
                    if !r.is_zero() {
                        wit.push(Witness {
                            indices: json!({"i": i, "j": j, "k": k}),
                            residual: r.to_json(),
                        });
                    }
                }
            }
            (n, wit)
        })
        .collect();
    ViolationReport::merge("module_axiom", parts)
}

/// How a reducible `A_{α,β}` splits at `k₀ = −α`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Degeneracy {
    /// `L_i v_{k₀} = 0` for all `i`: `v_{k₀}` spans a trivial submodule.
    TrivialSubmodule,
    /// Nothing maps onto `v_{k₀}`: the other `v_k` span a submodule.
    NoIncoming,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Subquotient {
    /// `None` when the module is already irreducible.
    pub degeneracy: Option<(i64, Degeneracy)>,
    pub module: ModuleSpec,
}

/// Finds the irreducible subquotient `A′_{α,β}` by looking for vanishing
/// patterns of the coefficient `α + k + βi` at `k₀ = −α`, checked for
/// `|i| <= w`.
pub fn irreducible_subquotient(m: &ModuleSpec, w: i64) -> Result<Subquotient, ModuleError> {
    if m.family != ModuleFamily::AlphaBeta {
        return Err(ModuleError::NotAlphaBeta(m.family));
    }
    let irreducible = Subquotient {
        degeneracy: None,
        module: m.clone(),
    };
    let Some(k0) = (-&m.alpha).to_i64() else {
        return Ok(irreducible);
    };
    let nonzero_i = || (-w..=w).filter(|i| *i != 0);
    let kind = if nonzero_i().all(|i| m.coefficient(i, k0).is_zero()) {
        Degeneracy::TrivialSubmodule
    } else if nonzero_i().all(|i| m.coefficient(i, k0 - i).is_zero()) {
        Degeneracy::NoIncoming
    } else {
        return Ok(irreducible);
    };
    let mut module = m.clone();
    module.removed = Some(k0);
    Ok(Subquotient {
        degeneracy: Some((k0, kind)),
        module,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum IntertwinerOutcome {
    /// Nonzero `c_k` with `T v_k = c_k v_k`, scaled so the entry at the
    /// smallest `|k|` (ties to the negative side) is 1.
    Found(BTreeMap<i64, Rational>),
    Absent { reason: String, nullity: usize },
}

impl IntertwinerOutcome {
    pub fn to_json(&self) -> Value {
        match self {
            IntertwinerOutcome::Found(c) => json!({
                "status": "found",
                "scaling": c.iter().map(|(k, v)| (k.to_string(), Value::String(v.to_string()))).collect::<serde_json::Map<_, _>>(),
            }),
            IntertwinerOutcome::Absent { reason, nullity } => {
                json!({"status": "absent", "reason": reason, "nullity": nullity})
            }
        }
    }
}

/// Solves `coef₁(i, k)·c_{i+k} = c_k·coef₂(i, k)` for `|i|, |k|, |i+k| <= w`
/// and looks for a solution with every `c_k` nonzero.
pub fn find_intertwiner(m1: &ModuleSpec, m2: &ModuleSpec, w: i64) -> IntertwinerOutcome {
    let ks: Vec<i64> = (-w..=w).filter(|k| m1.has_basis(*k) && m2.has_basis(*k)).collect();
    if ks.len() != (-w..=w).filter(|k| m1.has_basis(*k) || m2.has_basis(*k)).count() {
        return IntertwinerOutcome::Absent {
            reason: "modules have different weight supports".into(),
            nullity: 0,
        };
    }
    let col: BTreeMap<i64, usize> = ks.iter().enumerate().map(|(n, k)| (*k, n)).collect();
    let mut rows = Vec::new();
    for i in -w..=w {
        for &k in &ks {
            let Some(&t) = col.get(&(i + k)) else { continue };
            let a = m1.act_basis(i, k).coeff(i + k).cloned().unwrap_or_else(Rational::zero);
            let b = m2.act_basis(i, k).coeff(i + k).cloned().unwrap_or_else(Rational::zero);
            rows.push(SparseRow::new([(t, a), (col[&k], -b)], Rational::zero()));
        }
    }
    let LinearSolution::Consistent(sol) = solve(&rows, ks.len()) else {
        unreachable!("homogeneous systems are consistent")
    };
    let basis = sol.nullspace();
    let nullity = basis.len();
    // a generic combination of the kernel basis avoids accidental zeros
    for shift in 0..=nullity {
        let mut v = vec![Rational::zero(); ks.len()];
        for (n, b) in basis.iter().enumerate() {
            let wgt = Rational::from((n + 1 + shift * n * n) as i64);
            for (x, y) in v.iter_mut().zip(b) {
                *x = &*x + &(&wgt * y);
            }
        }
        if v.iter().all(|x| !x.is_zero()) {
            let pivot = ks.iter().position(|k| *k == 0).unwrap_or_else(|| {
                (0..ks.len()).min_by_key(|n| (ks[*n].abs(), ks[*n])).expect("nonempty window")
            });
            let norm = v[pivot].recip().expect("entries are nonzero");
            return IntertwinerOutcome::Found(ks.iter().zip(&v).map(|(k, x)| (*k, x * &norm)).collect());
        }
    }
    let reason = if nullity == 0 {
        "only the zero map intertwines".to_string()
    } else {
        let forced: Vec<i64> = (0..ks.len())
            .filter(|n| basis.iter().all(|b| b[*n].is_zero()))
            .map(|n| ks[n])
            .collect();
        format!("every intertwiner vanishes at k in {forced:?}")
    };
    IntertwinerOutcome::Absent { reason, nullity }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::q;

    #[test]
    fn action_examples() {
        let m = ModuleSpec::alpha_beta(q(1, 2), q(0, 1));
        assert_eq!(m.act(1, &ModVector::basis(0)), ModVector::basis(1).scale(&q(1, 2)));
        let a = ModuleSpec::a(q(1, 1));
        assert_eq!(a.act(2, &ModVector::basis(0)), ModVector::basis(2).scale(&q(6, 1)));
        let b = ModuleSpec::b(q(7, 3));
        for i in [-3, -1, 1, 4] {
            assert!(b.act(i, &ModVector::basis(0)).is_zero());
        }
    }

    #[test]
    fn axiom_sweeps() {
        for m in [
            ModuleSpec::alpha_beta(q(1, 2), q(0, 1)),
            ModuleSpec::a(q(1, 1)),
            ModuleSpec::b(q(-2, 1)),
        ] {
            assert!(check_module_axiom(&m, 3).passed(), "{m:?}");
        }
    }

    #[test]
    fn mutated_exceptional_row_fails() {
        let m = ModuleSpec::a(q(1, 1));
        let act = |i: i64, k: i64| {
            let mut v = m.act_basis(i, k);
            if k == 0 {
                v.add_term(i, q(1, 1));
            }
            v
        };
        assert!(!check_action_axiom(act, |_| true, 3).passed());
    }

    #[test]
    fn subquotients() {
        let s = irreducible_subquotient(&ModuleSpec::alpha_beta(q(0, 1), q(0, 1)), 5).unwrap();
        assert_eq!(s.degeneracy, Some((0, Degeneracy::TrivialSubmodule)));
        let s = irreducible_subquotient(&ModuleSpec::alpha_beta(q(0, 1), q(1, 1)), 5).unwrap();
        assert_eq!(s.degeneracy, Some((0, Degeneracy::NoIncoming)));
        let s = irreducible_subquotient(&ModuleSpec::alpha_beta(q(1, 2), q(0, 1)), 5).unwrap();
        assert_eq!(s.degeneracy, None);
        let s = irreducible_subquotient(&ModuleSpec::alpha_beta(q(2, 1), q(1, 3)), 5).unwrap();
        assert_eq!(s.degeneracy, None);
        assert!(irreducible_subquotient(&ModuleSpec::a(q(1, 1)), 5).is_err());
    }

    #[test]
    fn intertwiners() {
        let m1 = ModuleSpec::alpha_beta(q(1, 2), q(0, 1));
        let m2 = ModuleSpec::alpha_beta(q(1, 2), q(1, 1));
        let IntertwinerOutcome::Found(c) = find_intertwiner(&m1, &m2, 6) else {
            panic!()
        };
        for (k, v) in &c {
            assert_eq!(v, &(&q(2, 1) * &(&q(1, 2) + &Rational::from(*k))));
        }

        let m = ModuleSpec::alpha_beta(q(1, 3), q(2, 1));
        let IntertwinerOutcome::Found(c) = find_intertwiner(&m, &m, 4) else {
            panic!()
        };
        assert!(c.values().all(|x| x == &q(1, 1)));

        let full = find_intertwiner(
            &ModuleSpec::alpha_beta(q(0, 1), q(0, 1)),
            &ModuleSpec::alpha_beta(q(0, 1), q(1, 1)),
            6,
        );
        assert!(matches!(full, IntertwinerOutcome::Absent { .. }));
    }
}
