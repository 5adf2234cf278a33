use serde_json::{json, Value};
use zzlie_core::algebras::{
    structure_table, table_to_json, AlgebraSpec, CTargetReading, CentralParams, Element, Family, GradedIndex,
    LieBracket, TruncatedQuotient,
};
use zzlie_core::classify::{
    check_dprime_impossibility, derive_constraint_polys, enumerate_case_split, factor_linear, candidate_factors,
    recurrence_equation, solve_c_window, ClassificationParams, EquationSet, GuardReading, Param, Recurrence,
    SolveOptions,
};
use zzlie_core::exactq::{MultiPoly, Rational, Scalar, Symbol};
use zzlie_core::verify::{
    check_antisymmetry, check_grading, check_jacobi, find_diagonal_isomorphism, quotient_index_map,
    symbolic_jacobi_block, symbolic_jacobi_d, symbolic_jacobi_vir, ViolationReport,
};
use zzlie_core::virmodules::{
    check_module_axiom, find_intertwiner, irreducible_subquotient, IntertwinerOutcome, ModVector, ModuleSpec,
};

use crate::args::{
    AlgebraArgs, ClassifyAction, ClassifyArgs, Equations, Guard, ModuleAction, ModuleArgs, VerifyCheck,
};
use crate::render::{Report, Table};

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(e: impl std::fmt::Display) -> UsageError {
    UsageError(e.to_string())
}

pub fn rational(flag: &str, s: &str) -> Result<Rational, UsageError> {
    s.parse().map_err(|e| UsageError(format!("--{flag}: {e}")))
}

fn index(flag: &str, s: &str) -> Result<GradedIndex, UsageError> {
    s.parse().map_err(|e| UsageError(format!("--{flag}: {e}")))
}

fn window(w: i64) -> Result<i64, UsageError> {
    if w < 1 {
        return Err(UsageError(format!("--window must be at least 1, got {w}")));
    }
    Ok(w)
}

fn is_sym(s: &str) -> bool {
    s == "sym"
}

/// The parsed algebra, exact or with symbolic central parameters.
enum AnySpec {
    Exact(AlgebraSpec<Rational>),
    Symbolic(AlgebraSpec<MultiPoly>),
}

fn build_spec(a: &AlgebraArgs) -> Result<AnySpec, UsageError> {
    let family: Family = a.family.parse().map_err(usage)?;
    let alpha = rational("alpha", &a.alpha)?;
    let beta = rational("beta", &a.beta)?;
    let reading = if a.literal_c_index {
        CTargetReading::Literal
    } else {
        CTargetReading::Graded
    };
    let raw = [("a1", &a.a1), ("a2", &a.a2), ("a2p", &a.a2p)];
    if raw.iter().any(|(_, v)| is_sym(v)) {
        let mut vals = Vec::new();
        for (name, v) in raw {
            vals.push(if is_sym(v) {
                MultiPoly::var(name)
            } else {
                MultiPoly::constant(rational(name, v)?)
            });
        }
        let [a1, a2, a2p]: [MultiPoly; 3] = vals.try_into().expect("three central parameters");
        let spec = AlgebraSpec::new(family, alpha, beta, CentralParams { a1, a2, a2p }).map_err(usage)?;
        Ok(AnySpec::Symbolic(spec.with_c_reading(reading)))
    } else {
        let central = CentralParams {
            a1: rational("a1", &a.a1)?,
            a2: rational("a2", &a.a2)?,
            a2p: rational("a2p", &a.a2p)?,
        };
        let spec = AlgebraSpec::new(family, alpha, beta, central).map_err(usage)?;
        Ok(AnySpec::Exact(spec.with_c_reading(reading)))
    }
}

fn element_table<S: Scalar>(e: &Element<S>) -> Table {
    Table {
        headers: vec!["basis", "coeff"],
        rows: e.terms().map(|(b, c)| vec![b.to_string(), c.to_string()]).collect(),
    }
}

pub fn bracket(a: &AlgebraArgs, left: &str, right: &str) -> Result<Report, UsageError> {
    let (l, r) = (index("left", left)?, index("right", right)?);
    fn go<S: Scalar>(spec: &AlgebraSpec<S>, l: GradedIndex, r: GradedIndex) -> Result<Report, UsageError> {
        let e = spec.basis_bracket(l, r).map_err(usage)?;
        Ok(Report::new(e.to_json(), true).with_table(element_table(&e)))
    }
    match build_spec(a)? {
        AnySpec::Exact(s) => go(&s, l, r),
        AnySpec::Symbolic(s) => go(&s, l, r),
    }
}

pub fn table(a: &AlgebraArgs, w: i64) -> Result<Report, UsageError> {
    let w = window(w)?;
    fn go<S: Scalar>(spec: &AlgebraSpec<S>, w: i64) -> Result<Report, UsageError> {
        let rows = structure_table(spec, w).map_err(usage)?;
        let mut flat = Vec::new();
        for r in &rows {
            let head = [r.left.i, r.left.j, r.right.i, r.right.j].map(|x| x.to_string());
            if r.result.is_zero() {
                flat.push(head.iter().cloned().chain([String::new(), String::new()]).collect());
            }
            for (b, c) in r.result.terms() {
                flat.push(head.iter().cloned().chain([b.to_string(), c.to_string()]).collect());
            }
        }
        let t = Table {
            headers: vec!["left_i", "left_j", "right_i", "right_j", "basis", "coeff"],
            rows: flat,
        };
        Ok(Report::new(table_to_json(&rows), true).with_table(t))
    }
    match build_spec(a)? {
        AnySpec::Exact(s) => go(&s, w),
        AnySpec::Symbolic(s) => go(&s, w),
    }
}

fn reports(rs: Vec<ViolationReport>) -> Report {
    let ok = rs.iter().all(ViolationReport::passed);
    let json = if rs.len() == 1 {
        rs[0].to_json()
    } else {
        json!({"reports": rs.iter().map(ViolationReport::to_json).collect::<Vec<_>>()})
    };
    Report::new(json, ok)
}

fn sweeps<S: Scalar, A: LieBracket<S>>(alg: &A, check: VerifyCheck, w: i64) -> Vec<ViolationReport> {
    match check {
        VerifyCheck::Antisymmetry => vec![check_antisymmetry(alg, w)],
        VerifyCheck::Jacobi => vec![check_jacobi(alg, w)],
        VerifyCheck::Grading => vec![check_grading(alg, w)],
        _ => vec![check_antisymmetry(alg, w), check_jacobi(alg, w), check_grading(alg, w)],
    }
}

pub fn verify(check: VerifyCheck, a: &AlgebraArgs, w: i64) -> Result<Report, UsageError> {
    let w = window(w)?;
    match check {
        VerifyCheck::Symbolic => {
            let family: Family = a.family.parse().map_err(usage)?;
            let zero = match family {
                Family::D => symbolic_jacobi_d(),
                Family::Vir => symbolic_jacobi_vir(),
                Family::BlockExt => symbolic_jacobi_block(),
                other => return Err(UsageError(format!("no symbolic proof for family {other}"))),
            };
            Ok(Report::new(
                json!({"check": "symbolic_jacobi", "family": family.name(), "zero_polynomial": zero}),
                zero,
            ))
        }
        VerifyCheck::Quotient => quotient(&rational("alpha", &a.alpha)?, w),
        _ => Ok(reports(match build_spec(a)? {
            AnySpec::Exact(s) => sweeps(&s, check, w),
            AnySpec::Symbolic(s) => sweeps(&s, check, w),
        })),
    }
}

/// `C(α)/C⁻` against `B⁺(−α, −1; 1, 0, 0)`. For integral `α` the class of
/// `L_{α,−1}` is sent to `c₁`; otherwise every degree maps to itself.
fn quotient(alpha: &Rational, w: i64) -> Result<Report, UsageError> {
    let quotient = TruncatedQuotient {
        inner: AlgebraSpec::<Rational>::c(alpha.clone()).map_err(usage)?,
        min_j: -1,
    };
    let central = CentralParams {
        a1: Rational::from(1),
        a2: Rational::from(0),
        a2p: Rational::from(0),
    };
    let target = AlgebraSpec::bplus_minus1(-alpha, central).map_err(usage)?;
    let outcome = match alpha.to_i64() {
        Some(n) => find_diagonal_isomorphism(&quotient, &target, quotient_index_map(n), w),
        None => find_diagonal_isomorphism(&quotient, &target, zzlie_core::algebras::BasisElement::L, w),
    };
    let mut json = outcome.to_json();
    json["check"] = json!("quotient_isomorphism");
    json["central_line"] = json!(alpha.to_i64().map(|n| json!({"i": n, "j": -1})));
    Ok(Report::new(json, outcome.is_found()))
}

fn module_spec(kind: &str, alpha: Rational, beta: Rational) -> Result<ModuleSpec, UsageError> {
    Ok(match kind {
        "ab" => ModuleSpec::alpha_beta(alpha, beta),
        "a" => ModuleSpec::a(alpha),
        "b" => ModuleSpec::b(alpha),
        other => return Err(UsageError(format!("unknown module `{other}` (expected ab, a or b)"))),
    })
}

fn maybe_subquotient(m: ModuleSpec, on: bool, w: i64) -> Result<ModuleSpec, UsageError> {
    if on {
        Ok(irreducible_subquotient(&m, w).map_err(usage)?.module)
    } else {
        Ok(m)
    }
}

fn module_json(m: &ModuleSpec) -> Value {
    json!({
        "family": m.family.to_string(),
        "alpha": m.alpha.to_string(),
        "beta": m.beta.to_string(),
        "removed": m.removed,
    })
}

fn vector_table(v: &ModVector) -> Table {
    Table {
        headers: vec!["k", "coeff"],
        rows: v.terms().map(|(k, c)| vec![k.to_string(), c.to_string()]).collect(),
    }
}

pub fn module(action: ModuleAction, a: &ModuleArgs) -> Result<Report, UsageError> {
    let w = window(a.window)?;
    let (alpha, beta) = (rational("alpha", &a.alpha)?, rational("beta", &a.beta)?);
    let base = module_spec(&a.module, alpha.clone(), beta.clone())?;
    match action {
        ModuleAction::Act => {
            let m = maybe_subquotient(base, a.subquotient, w)?;
            let i = a.left.ok_or_else(|| UsageError("act needs --left i".into()))?;
            let k = a.right.ok_or_else(|| UsageError("act needs --right k".into()))?;
            if !m.has_basis(k) {
                return Err(UsageError(format!("v_{k} is not a basis vector of this module")));
            }
            let v = m.act_basis(i, k);
            Ok(Report::new(v.to_json(), true).with_table(vector_table(&v)))
        }
        ModuleAction::Axiom => {
            let m = maybe_subquotient(base, a.subquotient, w)?;
            Ok(reports(vec![check_module_axiom(&m, w)]))
        }
        ModuleAction::Subquotient => {
            let sq = irreducible_subquotient(&base, w).map_err(usage)?;
            let degeneracy = sq.degeneracy.map(|(k, d)| json!({"k0": k, "kind": format!("{d:?}")}));
            Ok(Report::new(
                json!({"module": module_json(&sq.module), "degeneracy": degeneracy}),
                true,
            ))
        }
        ModuleAction::Intertwine => {
            let alpha2 = a.alpha2.as_deref().map_or(Ok(alpha), |s| rational("alpha2", s))?;
            let beta2 = a.beta2.as_deref().map_or(Ok(beta), |s| rational("beta2", s))?;
            let m1 = maybe_subquotient(base, a.subquotient, w)?;
            let m2 = maybe_subquotient(module_spec(&a.module, alpha2, beta2)?, a.subquotient, w)?;
            let outcome = find_intertwiner(&m1, &m2, w);
            let mut json = outcome.to_json();
            json["source"] = module_json(&m1);
            json["target"] = module_json(&m2);
            Ok(Report::new(json, matches!(outcome, IntertwinerOutcome::Found(_))))
        }
    }
}

fn param(flag: &str, s: &str) -> Result<Param, UsageError> {
    if is_sym(s) {
        Ok(Param::Sym(Symbol::new(flag)))
    } else {
        Ok(Param::Num(rational(flag, s)?))
    }
}

fn guard(g: Guard) -> GuardReading {
    match g {
        Guard::Literal => GuardReading::Literal,
        Guard::Conservative => GuardReading::Conservative,
    }
}

pub fn classify(action: ClassifyAction, a: &ClassifyArgs) -> Result<Report, UsageError> {
    match action {
        ClassifyAction::Solve => {
            let p = ClassificationParams::numeric(
                rational("alpha", &a.alpha)?,
                rational("beta1", &a.beta1)?,
                rational("betam1", &a.betam1)?,
            )
            .map_err(usage)?;
            let opts = SolveOptions {
                equations: match a.equations {
                    Equations::Full => EquationSet::Full,
                    Equations::Diagonal => EquationSet::Diagonal,
                },
                guard: guard(a.guard),
            };
            let r = solve_c_window(&p, window(a.window)?, opts).map_err(usage)?;
            Ok(Report::new(r.to_json(), !r.is_infeasible()))
        }
        ClassifyAction::Constraints => {
            let polys = derive_constraint_polys();
            let cands = candidate_factors();
            let cases = enumerate_case_split(&polys);
            Ok(Report::new(
                json!({
                    "p4": factor_linear(&polys.p4, &cands).to_json(),
                    "p6": factor_linear(&polys.p6, &cands).to_json(),
                    "relations": cases.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                }),
                true,
            ))
        }
        ClassifyAction::Cases => {
            let cases = enumerate_case_split(&derive_constraint_polys());
            Ok(Report::new(
                json!({"relations": cases.iter().map(|c| c.to_json()).collect::<Vec<_>>()}),
                true,
            ))
        }
        ClassifyAction::Impossibility => {
            let alpha = rational("alpha", &a.alpha)?;
            if alpha == Rational::from(0) {
                return Err(UsageError("--alpha must be nonzero".into()));
            }
            let o = check_dprime_impossibility(&alpha, window(a.window)?);
            Ok(Report::new(o.to_json(), o.is_certified()))
        }
        ClassifyAction::Recurrence => {
            let at = index("left", a.left.as_deref().ok_or_else(|| UsageError("recurrence needs --left i,j".into()))?)?;
            let k = a.k.ok_or_else(|| UsageError("recurrence needs --k".into()))?;
            let alpha = param("alpha", &a.alpha)?;
            if alpha == Param::Num(Rational::from(0)) {
                return Err(UsageError("--alpha must be nonzero".into()));
            }
            let p = ClassificationParams {
                alpha,
                beta1: param("beta1", &a.beta1)?,
                betam1: param("betam1", &a.betam1)?,
            };
            let json = match recurrence_equation(&p, at.i, at.j, k, guard(a.guard)) {
                Recurrence::Relation(terms) => json!({
                    "status": "relation",
                    "terms": terms
                        .iter()
                        .map(|((i, j), c)| json!({"i": i, "j": j, "coeff": c.to_string()}))
                        .collect::<Vec<_>>(),
                }),
                Recurrence::Skipped { reason } => json!({"status": "skipped", "reason": reason}),
            };
            Ok(Report::new(json, true))
        }
    }
}
