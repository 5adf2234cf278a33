//! The coefficient system for `[L_{i,−1}, L_{j,1}] = c_{i,j}L_{i+j,0}` in a
//! graded algebra whose degree-0 part is `Vir(α)`, plus the polynomial
//! constraints and the case split that follow from it.

mod constraints;
mod dprime;

pub use constraints::{
    candidate_factors, constraint_lhs, derive_constraint_polys, determinant_poly,
    enumerate_case_split, factor_linear, CaseRelation, ConstraintPolys, Factorization,
};
pub use dprime::{check_dprime_impossibility, dprime_equation_poly, dprime_system, DPrimeOutcome};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebras::{AlgebraSpec, BasisElement, GradedIndex, LieBracket};
use crate::exactq::{solve, LinearSolution, MultiPoly, Rational, SparseRow, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("parameter `{0}` must be numeric here")]
    NotNumeric(&'static str),
    #[error("window must be at least {min}, got {got}")]
    WindowTooSmall { min: i64, got: i64 },
}

/// A structure parameter, exact or kept as a symbol.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Num(Rational),
    Sym(Symbol),
}

impl Param {
    pub fn to_poly(&self) -> MultiPoly {
        match self {
            Param::Num(r) => MultiPoly::constant(r.clone()),
            Param::Sym(s) => MultiPoly::symbol(s.clone()),
        }
    }

    pub fn as_num(&self) -> Option<&Rational> {
        match self {
            Param::Num(r) => Some(r),
            Param::Sym(_) => None,
        }
    }

    fn in_zero_one(&self) -> bool {
        self.as_num().is_some_and(|r| r.is_zero() || r.is_one())
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Num(r) => write!(f, "{r}"),
            Param::Sym(s) => f.write_str(s.name()),
        }
    }
}

/// `α` and the weights `β₁, β₋₁` of `L_{0,±1}` acting on `L_{i,±1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationParams {
    pub alpha: Param,
    pub beta1: Param,
    pub betam1: Param,
}

impl ClassificationParams {
    pub fn numeric(alpha: Rational, beta1: Rational, betam1: Rational) -> Result<Self, ClassifyError> {
        if alpha.is_zero() {
            return Err(ClassifyError::ZeroAlpha);
        }
        Ok(ClassificationParams {
            alpha: Param::Num(alpha),
            beta1: Param::Num(beta1),
            betam1: Param::Num(betam1),
        })
    }

    pub fn symbolic() -> Self {
        ClassificationParams {
            alpha: Param::Sym(Symbol::new("alpha")),
            beta1: Param::Sym(Symbol::new("beta1")),
            betam1: Param::Sym(Symbol::new("betam1")),
        }
    }

    fn numbers(&self) -> Result<(Rational, Rational, Rational), ClassifyError> {
        Ok((
            self.alpha.as_num().ok_or(ClassifyError::NotNumeric("alpha"))?.clone(),
            self.beta1.as_num().ok_or(ClassifyError::NotNumeric("beta1"))?.clone(),
            self.betam1.as_num().ok_or(ClassifyError::NotNumeric("betam1"))?.clone(),
        ))
    }
}

/// How the admissibility condition on `(i, j, k)` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GuardReading {
    /// Skip when `(i−α)(i+k−α) = 0` with `β₋₁ ∈ {0,1}`, or
    /// `(j+α)(j+k+α) = 0` with `β₁ ∈ {0,1}`.
    #[default]
    Literal,
    /// Skip whenever either product vanishes.
    Conservative,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Recurrence {
    /// `Σ coeff·c_{i,j} = 0`; an empty map is the trivial relation.
    Relation(BTreeMap<(i64, i64), MultiPoly>),
    Skipped { reason: String },
}

/// `(−α+i+β₋₁k)c_{i+k,j} + (α+j+β₁k)c_{i,j+k} − (i+j−k)c_{i,j} = 0`
pub fn recurrence_equation(p: &ClassificationParams, i: i64, j: i64, k: i64, guard: GuardReading) -> Recurrence {
    let (a, b1, bm) = (p.alpha.to_poly(), p.beta1.to_poly(), p.betam1.to_poly());
    let n = MultiPoly::from;
    let left_vanishes = (&(&n(i) - &a) * &(&n(i + k) - &a)).is_zero();
    let right_vanishes = (&(&n(j) + &a) * &(&n(j + k) + &a)).is_zero();
    let skip = match guard {
        GuardReading::Literal => {
            (left_vanishes && p.betam1.in_zero_one()) || (right_vanishes && p.beta1.in_zero_one())
        }
        GuardReading::Conservative => left_vanishes || right_vanishes,
    };
    if skip {
        return Recurrence::Skipped {
            reason: format!("admissibility fails at (i,j,k) = ({i},{j},{k})"),
        };
    }
    let mut terms: BTreeMap<(i64, i64), MultiPoly> = BTreeMap::new();
    let mut add = |key: (i64, i64), c: MultiPoly| {
        let e = terms.entry(key).or_insert_with(MultiPoly::zero);
        *e = &*e + &c;
    };
    add((i + k, j), &(&n(i) - &a) + &(&bm * &n(k)));
    add((i, j + k), &(&n(j) + &a) + &(&b1 * &n(k)));
    add((i, j), n(-(i + j - k)));
    terms.retain(|_, c| !c.is_zero());
    Recurrence::Relation(terms)
}

/// Which instances of the recurrence enter a window solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EquationSet {
    /// Every `(i, j, k)` in the window.
    #[default]
    Full,
    /// Only `(0,m,m)`, `(m,0,m)` and `(0,0,m)`, the instances that determine
    /// `c_{0,2k}` and `c_{2k,0}` on their own.
    Diagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SolveOptions {
    pub equations: EquationSet,
    pub guard: GuardReading,
}

/// Provenance of one row in a window system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EquationLabel {
    Recurrence { i: i64, j: i64, k: i64 },
    /// `c_{0,0} = 2α`
    Normalization,
}

impl EquationLabel {
    pub fn to_json(&self) -> Value {
        match self {
            EquationLabel::Recurrence { i, j, k } => json!({"i": i, "j": j, "k": k}),
            EquationLabel::Normalization => json!("c(0,0) = 2*alpha"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CSolveOutcome {
    Solved {
        /// Unknowns pinned by the system.
        values: BTreeMap<(i64, i64), Rational>,
        /// Unknowns left free.
        undetermined: Vec<(i64, i64)>,
    },
    /// A minimal inconsistent subset of the rows.
    Infeasible { core: Vec<EquationLabel> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CSolveReport {
    pub window: i64,
    pub equations: usize,
    pub skipped: usize,
    pub outcome: CSolveOutcome,
    /// Set when `α ∈ Z` and a weight is 0 or 1, where one column may stay
    /// undetermined.
    pub proviso: Option<String>,
}

impl CSolveReport {
    pub fn value(&self, i: i64, j: i64) -> Option<&Rational> {
        match &self.outcome {
            CSolveOutcome::Solved { values, .. } => values.get(&(i, j)),
            CSolveOutcome::Infeasible { .. } => None,
        }
    }

    pub fn is_unique(&self) -> bool {
        matches!(&self.outcome, CSolveOutcome::Solved { undetermined, .. } if undetermined.is_empty())
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self.outcome, CSolveOutcome::Infeasible { .. })
    }

    pub fn to_json(&self) -> Value {
        let outcome = match &self.outcome {
            CSolveOutcome::Solved { values, undetermined } => json!({
                "status": "solved",
                "unique": undetermined.is_empty(),
                "values": values.iter().map(|((i, j), v)| json!({"i": i, "j": j, "value": v.to_string()})).collect::<Vec<_>>(),
                "undetermined": undetermined.iter().map(|(i, j)| json!({"i": i, "j": j})).collect::<Vec<_>>(),
            }),
            CSolveOutcome::Infeasible { core } => json!({
                "status": "infeasible",
                "core": core.iter().map(EquationLabel::to_json).collect::<Vec<_>>(),
            }),
        };
        json!({
            "window": self.window,
            "equations": self.equations,
            "skipped": self.skipped,
            "proviso": self.proviso,
            "outcome": outcome,
        })
    }
}

fn instances(w: i64, set: EquationSet) -> Vec<(i64, i64, i64)> {
    match set {
        EquationSet::Full => (-w..=w)
            .flat_map(|i| (-w..=w).flat_map(move |j| (-w..=w).map(move |k| (i, j, k))))
            .collect(),
        EquationSet::Diagonal => (-w..=w)
            .flat_map(|m| [(0, m, m), (m, 0, m), (0, 0, m)])
            .collect(),
    }
}

/// Builds the window system for `c_{i,j}` (`|i|, |j| <= w`), admitting only
/// instances whose unknowns all lie in the window, and solves it exactly.
pub fn solve_c_window(p: &ClassificationParams, w: i64, opts: SolveOptions) -> Result<CSolveReport, ClassifyError> {
    if w < 1 {
        return Err(ClassifyError::WindowTooSmall { min: 1, got: w });
    }
    let (alpha, beta1, betam1) = p.numbers()?;
    let unknowns: Vec<(i64, i64)> = GradedIndex::window(w).map(|g| (g.i, g.j)).collect();
    let col: BTreeMap<(i64, i64), usize> = unknowns.iter().enumerate().map(|(n, x)| (*x, n)).collect();
    let inside = |i: i64, j: i64| i.abs() <= w && j.abs() <= w;

    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut skipped = 0;
    for (i, j, k) in instances(w, opts.equations) {
        if !(inside(i, j) && inside(i + k, j) && inside(i, j + k)) {
            continue;
        }
        match recurrence_equation(p, i, j, k, opts.guard) {
            Recurrence::Skipped { .. } => skipped += 1,
            Recurrence::Relation(terms) if terms.is_empty() => {}
            Recurrence::Relation(terms) => {
                let coeffs = terms.into_iter().map(|(key, c)| {
                    (col[&key], c.as_constant().expect("numeric parameters give numeric coefficients"))
                });
                rows.push(SparseRow::new(coeffs, Rational::zero()));
                labels.push(EquationLabel::Recurrence { i, j, k });
            }
        }
    }
    rows.push(SparseRow::new([(col[&(0, 0)], Rational::one())], &Rational::from(2) * &alpha));
    labels.push(EquationLabel::Normalization);

    let outcome = match solve(&rows, unknowns.len()) {
        LinearSolution::Consistent(sol) => {
            let mut values = BTreeMap::new();
            let mut undetermined = Vec::new();
            for (n, key) in unknowns.iter().enumerate() {
                match sol.value(n) {
                    Some(v) => {
                        values.insert(*key, v);
                    }
                    None => undetermined.push(*key),
                }
            }
            CSolveOutcome::Solved { values, undetermined }
        }
        LinearSolution::Inconsistent { core } => CSolveOutcome::Infeasible {
            core: core.into_iter().map(|n| labels[n]).collect(),
        },
    };
    let weight_01 = |b: &Rational| b.is_zero() || b.is_one();
    let proviso = (alpha.is_integer() && (weight_01(&beta1) || weight_01(&betam1))).then(|| {
        format!("alpha = {alpha} is integral and a weight lies in {{0, 1}}: one column of c may be undetermined")
    });
    Ok(CSolveReport {
        window: w,
        equations: rows.len(),
        skipped,
        outcome,
        proviso,
    })
}

/// `2α + (β−1)i + (β+1)j` with `β = β₁ + 1`, the solution when `β₁ = −2 − β₋₁`.
pub fn linear_case_value(alpha: &Rational, beta1: &Rational, i: i64, j: i64) -> Rational {
    let beta = beta1 + &Rational::one();
    let two = Rational::from(2);
    &(&(&two * alpha) + &(&(&beta - &Rational::one()) * &Rational::from(i)))
        + &(&(&beta + &Rational::one()) * &Rational::from(j))
}

/// `(c_{0,2k}, c_{2k,0})` when `β₁ = β₋₁`; `None` where the denominator
/// `α² − 2β₁²(1+β₁)k²` vanishes.
pub fn equal_betas_values(alpha: &Rational, beta1: &Rational, k: i64) -> Option<(Rational, Rational)> {
    let k = Rational::from(k);
    let one = Rational::one();
    let two = Rational::from(2);
    let den = &(alpha * alpha) - &(&(&(&two * &(beta1 * beta1)) * &(&one + beta1)) * &(&k * &k));
    if den.is_zero() {
        return None;
    }
    let num = |s: &Rational| {
        let a = s * alpha;
        &(&(&two * alpha) * &(&a + &(beta1 * &k))) * &(&a + &(&(&one + beta1) * &k))
    };
    // c_{0,2k} carries −α, c_{2k,0} carries +α (times an overall sign)
    let minus = -&one;
    let c02 = &num(&minus) / &den;
    let c20 = &num(&one) / &den;
    Some((c02, c20))
}

/// `(c_{0,2k}, c_{2k,0}, c_{2k,2k})` when `β₁ = −β₋₁`; `None` at a pole.
pub fn opposite_betas_values(alpha: &Rational, beta1: &Rational, k: i64) -> Option<(Rational, Rational, Rational)> {
    let k = Rational::from(k);
    let one = Rational::one();
    let two = Rational::from(2);
    let four = Rational::from(4);
    let d1 = alpha + &(&(&two * beta1) * &k);
    let d2 = alpha + &(&(&four * beta1) * &k);
    if d1.is_zero() || d2.is_zero() {
        return None;
    }
    let ta = &two * alpha;
    let c02 = &(&ta * &(alpha + &(&(beta1 - &one) * &k))) / &d1;
    let c20 = &(&ta * &(alpha + &(&(beta1 + &one) * &k))) / &d1;
    let n1 = alpha + &(&(&two * &(beta1 - &one)) * &k);
    let n2 = alpha + &(&(&two * &(beta1 + &one)) * &k);
    let c22 = &(&(&ta * &n1) * &n2) / &(&d1 * &d2);
    Some((c02, c20, c22))
}

/// `[L_{i,−1}, L_{j,1}]` in `D(α, β)` as coefficients of `L_{i+j,0}`.
pub fn d_algebra_pairing(alpha: &Rational, beta: &Rational, w: i64) -> BTreeMap<(i64, i64), Rational> {
    let d = AlgebraSpec::<Rational>::d(alpha.clone(), beta.clone()).expect("alpha is nonzero");
    let mut out = BTreeMap::new();
    for i in -w..=w {
        for j in -w..=w {
            let e = d
                .basis_bracket(GradedIndex::new(i, -1), GradedIndex::new(j, 1))
                .expect("D has the full lattice");
            let c = e
                .coeff(&BasisElement::L(GradedIndex::new(i + j, 0)))
                .cloned()
                .unwrap_or_else(Rational::zero);
            out.insert((i, j), c);
        }
    }
    out
}
