//! Fixtures shared by the criterion benchmarks in `benches/`.

use zzlie_core::algebras::{AlgebraSpec, CentralParams};
use zzlie_core::classify::ClassificationParams;
use zzlie_core::exactq::{q, MultiPoly, Rational};

pub fn c_two_thirds() -> AlgebraSpec {
    AlgebraSpec::c(q(2, 3)).expect("alpha is nonzero")
}

pub fn d_one_three() -> AlgebraSpec {
    AlgebraSpec::d(q(1, 1), q(3, 1)).expect("alpha is nonzero")
}

/// `B(1, 2)` with all three cocycle parameters symbolic.
pub fn symbolic_block() -> AlgebraSpec<MultiPoly> {
    let central = CentralParams {
        a1: MultiPoly::var("a1"),
        a2: MultiPoly::var("a2"),
        a2p: MultiPoly::var("a2p"),
    };
    AlgebraSpec::block(q(1, 1), q(2, 1), central).expect("alpha*beta is nonzero")
}

/// The linear case `(α, β₁, β₋₁) = (1, 2, −4)`.
pub fn linear_case() -> ClassificationParams {
    let n = |x: i64| Rational::from(x);
    ClassificationParams::numeric(n(1), n(2), n(-4)).expect("alpha is nonzero")
}
