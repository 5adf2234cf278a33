use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AlgebraError, BasisElement, Element, GradedIndex, LieBracket};
use crate::exactq::{Rational, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    /// Generalized centerless Virasoro `Vir(α)`.
    Vir,
    /// Uniform family `D(α, β)`; `D(α, 0) = Vir(α)`.
    D,
    /// Block algebra `B(α, β)` with its central extension by `c₁, c₂`.
    BlockExt,
    /// `B⁺(α, -1; a₁, a₂, a₂′)`, supported on `j >= -1`.
    BPlusMinus1,
    /// `B⁺(α, 1; a₁, a₂, a₂′)`, supported on `j <= 1`.
    BPlusPlus1,
    C,
    /// Dual of `C(α)`: degree `(i, j)` carries what `C(α)` has at `(i, -j)`.
    CBar,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Vir,
        Family::D,
        Family::BlockExt,
        Family::BPlusMinus1,
        Family::BPlusPlus1,
        Family::C,
        Family::CBar,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Vir => "vir",
            Family::D => "d",
            Family::BlockExt => "block",
            Family::BPlusMinus1 => "bplus-",
            Family::BPlusPlus1 => "bplus+",
            Family::C => "c",
            Family::CBar => "cbar",
        }
    }

    pub fn is_block_type(&self) -> bool {
        matches!(
            self,
            Family::BlockExt | Family::BPlusMinus1 | Family::BPlusPlus1
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| AlgebraError::UnknownFamily(s.to_string()))
    }
}

/// Which target degree the `C(α)` bracket uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum CTargetReading {
    /// `[L_{i,j}, L_{k,ℓ}] ∈ F·L_{i+k, j+ℓ}`.
    #[default]
    Graded,
    /// The index as printed, `L_{i+ℓ, k+j}`; kept for regression checks only.
    Literal,
}

/// Central-extension parameters `a₁, a₂, a₂′`.
#[derive(Clone, PartialEq, Debug)]
pub struct CentralParams<S> {
    pub a1: S,
    pub a2: S,
    pub a2p: S,
}

impl<S: Scalar> CentralParams<S> {
    pub fn zero() -> Self {
        CentralParams {
            a1: S::zero(),
            a2: S::zero(),
            a2p: S::zero(),
        }
    }
}

/// A family tag with its parameters. `S` is the coefficient type of the
/// central cocycle, so `a₁, a₂, a₂′` may be carried symbolically.
#[derive(Clone, PartialEq, Debug)]
pub struct AlgebraSpec<S = Rational> {
    family: Family,
    alpha: Rational,
    beta: Rational,
    central: CentralParams<S>,
    c_reading: CTargetReading,
}

impl<S: Scalar> AlgebraSpec<S> {
    /// Validates the parameter constraints of `family`. `beta` is ignored for
    /// `Vir`, `C` and `CBar` and overridden for the two `B⁺` families;
    /// `central` is ignored outside the Block families.
    pub fn new(
        family: Family,
        alpha: Rational,
        beta: Rational,
        central: CentralParams<S>,
    ) -> Result<Self, AlgebraError> {
        if alpha.is_zero() {
            return Err(AlgebraError::InvalidParameters(format!(
                "{family} requires alpha != 0"
            )));
        }
        let beta = match family {
            Family::Vir | Family::C | Family::CBar => Rational::zero(),
            Family::BPlusMinus1 => Rational::from(-1),
            Family::BPlusPlus1 => Rational::one(),
            Family::D => beta,
            Family::BlockExt => {
                if beta.is_zero() {
                    return Err(AlgebraError::InvalidParameters(
                        "block requires alpha*beta != 0".into(),
                    ));
                }
                beta
            }
        };
        let central = if family.is_block_type() {
            central
        } else {
            CentralParams::zero()
        };
        Ok(AlgebraSpec {
            family,
            alpha,
            beta,
            central,
            c_reading: CTargetReading::Graded,
        })
    }

    pub fn vir(alpha: Rational) -> Result<Self, AlgebraError> {
        Self::new(Family::Vir, alpha, Rational::zero(), CentralParams::zero())
    }

    pub fn d(alpha: Rational, beta: Rational) -> Result<Self, AlgebraError> {
        Self::new(Family::D, alpha, beta, CentralParams::zero())
    }

    pub fn block(alpha: Rational, beta: Rational, central: CentralParams<S>) -> Result<Self, AlgebraError> {
        Self::new(Family::BlockExt, alpha, beta, central)
    }

    pub fn bplus_minus1(alpha: Rational, central: CentralParams<S>) -> Result<Self, AlgebraError> {
        Self::new(Family::BPlusMinus1, alpha, Rational::from(-1), central)
    }

    pub fn bplus_plus1(alpha: Rational, central: CentralParams<S>) -> Result<Self, AlgebraError> {
        Self::new(Family::BPlusPlus1, alpha, Rational::one(), central)
    }

    pub fn c(alpha: Rational) -> Result<Self, AlgebraError> {
        Self::new(Family::C, alpha, Rational::zero(), CentralParams::zero())
    }

    pub fn cbar(alpha: Rational) -> Result<Self, AlgebraError> {
        Self::new(Family::CBar, alpha, Rational::zero(), CentralParams::zero())
    }

    /// Switches `C`/`CBar` to the printed target index `L_{i+ℓ, k+j}`.
    pub fn with_c_reading(mut self, reading: CTargetReading) -> Self {
        self.c_reading = reading;
        self
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn central(&self) -> &CentralParams<S> {
        &self.central
    }

    pub fn c_reading(&self) -> CTargetReading {
        self.c_reading
    }

    /// `(-α, β)` and `(-2α, 2β)` when integral.
    fn punctures(&self) -> [Option<GradedIndex>; 2] {
        let at = |m: i64| {
            let i = (-&self.alpha * &Rational::from(m)).to_i64()?;
            let j = (&self.beta * &Rational::from(m)).to_i64()?;
            Some(GradedIndex::new(i, j))
        };
        [at(1), at(2)]
    }

    fn block_coefficient(&self, a: GradedIndex, b: GradedIndex) -> Rational {
        // | i+α  j-β |
        // | k+α  ℓ-β |
        let (al, be) = (&self.alpha, &self.beta);
        let r = |n: i64| Rational::from(n);
        let x = (&r(a.i) + al) * (&r(b.j) - be);
        let y = (&r(a.j) - be) * (&r(b.i) + al);
        x - y
    }

    fn block_bracket(&self, a: GradedIndex, b: GradedIndex) -> Element<S> {
        let t = a + b;
        let mut out = Element::zero();
        if self.in_domain(t) {
            out.add_term(BasisElement::L(t), S::from(self.block_coefficient(a, b)));
        }
        let [e1, e2] = self.punctures();
        // α·j + β·i for the left factor
        let weight = &(&self.alpha * &Rational::from(a.j)) + &(&self.beta * &Rational::from(a.i));
        if Some(t) == e1 {
            out.add_term(BasisElement::C1, self.central.a1.scale(&weight));
        }
        if Some(t) == e2 {
            let shift = &self.alpha + &Rational::from(a.i);
            let c = self
                .central
                .a2
                .scale(&weight)
                .add_ref(&self.central.a2p.scale(&shift));
            out.add_term(BasisElement::C2, c);
        }
        out
    }

    fn c_bracket(&self, a: GradedIndex, b: GradedIndex) -> Element<S> {
        let coeff = c_coefficient(&self.alpha, a, b);
        let target = match self.c_reading {
            CTargetReading::Graded => a + b,
            CTargetReading::Literal => GradedIndex::new(a.i + b.j, b.i + a.j),
        };
        Element::term(BasisElement::L(target), S::from(coeff))
    }

    fn checked(&self, idx: GradedIndex) -> Result<(), AlgebraError> {
        if self.in_domain(idx) {
            Ok(())
        } else {
            Err(AlgebraError::OutOfDomain(idx))
        }
    }
}

impl<S: Scalar> LieBracket<S> for AlgebraSpec<S> {
    fn in_domain(&self, idx: GradedIndex) -> bool {
        match self.family {
            Family::Vir | Family::D | Family::C | Family::CBar => true,
            Family::BlockExt | Family::BPlusMinus1 | Family::BPlusPlus1 => {
                let [e1, e2] = self.punctures();
                if Some(idx) == e1 || Some(idx) == e2 {
                    return false;
                }
                match self.family {
                    Family::BPlusMinus1 => idx.j >= -1,
                    Family::BPlusPlus1 => idx.j <= 1,
                    _ => true,
                }
            }
        }
    }

    fn central_degree(&self, which: BasisElement) -> Option<GradedIndex> {
        if !self.family.is_block_type() {
            return None;
        }
        let [e1, e2] = self.punctures();
        match which {
            BasisElement::C1 => e1,
            BasisElement::C2 => e2,
            BasisElement::L(_) => None,
        }
    }

    fn basis_bracket(&self, a: GradedIndex, b: GradedIndex) -> Result<Element<S>, AlgebraError> {
        self.checked(a)?;
        self.checked(b)?;
        let r = |n: i64| Rational::from(n);
        Ok(match self.family {
            Family::Vir | Family::D => {
                // β(iℓ - jk) + (k - i) + (ℓ - j)α
                let cross = r(a.i * b.j - a.j * b.i);
                let c = &(&self.beta * &cross) + &r(b.i - a.i);
                let c = &c + &(&self.alpha * &r(b.j - a.j));
                Element::term(BasisElement::L(a + b), S::from(c))
            }
            Family::BlockExt | Family::BPlusMinus1 | Family::BPlusPlus1 => self.block_bracket(a, b),
            Family::C => self.c_bracket(a, b),
            Family::CBar => {
                let e = self.c_bracket(a.flip_j(), b.flip_j());
                let mut out = Element::zero();
                for (basis, c) in e.terms() {
                    let idx = basis.index().expect("C has no central terms");
                    out.add_term(BasisElement::L(idx.flip_j()), c.clone());
                }
                out
            }
        })
    }
}

/// `[i over j] = i!/j!` for `0 <= j <= i`, zero otherwise.
pub fn factorial_ratio(i: i64, j: i64) -> Rational {
    if !(0 <= j && j <= i) {
        return Rational::zero();
    }
    let p: BigInt = (j + 1..=i).map(BigInt::from).product();
    Rational::from(p)
}

/// The rows of the `C(α)` case table that apply to the ordered pair, if any.
fn c_listed(alpha: &Rational, a: GradedIndex, b: GradedIndex) -> Option<Rational> {
    let (i, j, k, l) = (a.i, a.j, b.i, b.j);
    let base = || {
        let n = Rational::from(k * (j + 1) - (l + 1) * i);
        &n + &(alpha * &Rational::from(l - j))
    };
    if j >= -1 && l >= -1 && j + l >= -1 {
        Some(base())
    } else if j == -1 && l == -1 {
        Some(Rational::from(k - i))
    } else if j >= 0 && l <= -2 {
        Some(factorial_ratio(-l - 2, -l - j - 2) * base())
    } else if j == -1 && l <= -2 {
        Some(&Rational::from(i) - alpha)
    } else if j <= -2 && l <= -2 {
        Some(Rational::zero())
    } else {
        None
    }
}

/// Structure constant of `C(α)` for `[L_a, L_b]`; unlisted orders come from
/// antisymmetry.
pub fn c_coefficient(alpha: &Rational, a: GradedIndex, b: GradedIndex) -> Rational {
    match (c_listed(alpha, a, b), c_listed(alpha, b, a)) {
        (Some(x), Some(y)) => {
            assert_eq!(x, -y, "C case table disagrees with antisymmetry at {a}, {b}");
            x
        }
        (Some(x), None) => x,
        (None, Some(y)) => -y,
        (None, None) => unreachable!("C case table covers every pair up to order"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{q, MultiPoly};

    fn g(i: i64, j: i64) -> GradedIndex {
        GradedIndex::new(i, j)
    }

    fn num(a1: i64, a2: i64, a2p: i64) -> CentralParams<Rational> {
        CentralParams {
            a1: a1.into(),
            a2: a2.into(),
            a2p: a2p.into(),
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(AlgebraSpec::<Rational>::vir(q(0, 1)).is_err());
        assert!(AlgebraSpec::<Rational>::c(q(0, 1)).is_err());
        assert!(AlgebraSpec::block(q(1, 1), q(0, 1), num(0, 0, 0)).is_err());
        let bp = AlgebraSpec::bplus_plus1(q(1, 1), num(0, 0, 0)).unwrap();
        assert_eq!(bp.beta(), &q(1, 1));
        assert!(AlgebraSpec::<Rational>::d(q(1, 1), q(0, 1)).is_ok());
    }

    #[test]
    fn domain_examples() {
        let b = AlgebraSpec::block(q(1, 1), q(2, 1), num(0, 0, 0)).unwrap();
        assert!(!b.in_domain(g(-1, 2)));
        assert!(!b.in_domain(g(-2, 4)));
        assert!(b.in_domain(g(0, 0)));

        let b = AlgebraSpec::block(q(1, 2), q(2, 1), num(0, 0, 0)).unwrap();
        assert!(!b.in_domain(g(-1, 4)));
        assert!(b.in_domain(g(0, 0)));
        assert_eq!(b.central_degree(BasisElement::C1), None);
        assert_eq!(b.central_degree(BasisElement::C2), Some(g(-1, 4)));

        let bp = AlgebraSpec::bplus_minus1(q(1, 1), num(0, 0, 0)).unwrap();
        assert!(!bp.in_domain(g(0, -2)));
        assert!(bp.in_domain(g(0, -1)));
        let bp = AlgebraSpec::bplus_plus1(q(1, 1), num(0, 0, 0)).unwrap();
        assert!(!bp.in_domain(g(0, 2)));

        let v = AlgebraSpec::<Rational>::vir(q(1, 1)).unwrap();
        assert!(v.in_domain(g(-7, 9)));
    }

    #[test]
    fn bracket_examples() {
        let v = AlgebraSpec::<Rational>::vir(q(1, 1)).unwrap();
        assert!(v.basis_bracket(g(1, 0), g(0, 1)).unwrap().is_zero());

        let b = AlgebraSpec::block(q(1, 1), q(2, 1), num(1, 0, 0)).unwrap();
        let e = b.basis_bracket(g(0, 1), g(-1, 1)).unwrap();
        assert_eq!(e, Element::basis(BasisElement::C1));

        let c = AlgebraSpec::<Rational>::c(q(5, 7)).unwrap();
        assert_eq!(c.basis_bracket(g(0, -1), g(1, -1)).unwrap(), Element::l(1, -2));

        let c = AlgebraSpec::<Rational>::c(q(1, 1)).unwrap();
        for m in -4..=4 {
            let e = c.basis_bracket(g(0, 1), g(m, -4)).unwrap();
            assert_eq!(e, Element::l(m, -3).scale(&Rational::from(2 * (2 * m - 5))));
        }
    }

    #[test]
    fn bilinear_bracket_examples() {
        let v = AlgebraSpec::<Rational>::vir(q(2, 1)).unwrap();
        let x = Element::l(1, 0).add_ref(&Element::l(0, 1));
        let y = Element::l(2, 0);
        assert_eq!(v.bracket(&x, &y).unwrap(), Element::l(3, 0));
        assert!(v.bracket(&Element::zero(), &y).unwrap().is_zero());
        assert!(v.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn out_of_domain_is_an_error() {
        let b = AlgebraSpec::block(q(1, 1), q(2, 1), num(0, 0, 0)).unwrap();
        assert_eq!(
            b.basis_bracket(g(-1, 2), g(0, 0)),
            Err(AlgebraError::OutOfDomain(g(-1, 2)))
        );
        let v = AlgebraSpec::<Rational>::vir(q(1, 1)).unwrap();
        assert!(matches!(
            v.bracket(&Element::basis(BasisElement::C1), &Element::l(0, 0)),
            Err(AlgebraError::CentralAbsent(_))
        ));
    }

    #[test]
    fn factorial_ratio_examples() {
        assert_eq!(factorial_ratio(3, 1), q(6, 1));
        assert_eq!(factorial_ratio(0, 0), q(1, 1));
        assert_eq!(factorial_ratio(2, 5), q(0, 1));
        assert_eq!(factorial_ratio(4, -1), q(0, 1));
    }

    #[test]
    fn c_table_overlaps_agree() {
        // c_coefficient asserts agreement whenever both orders are listed
        let alpha = q(2, 3);
        for a in GradedIndex::window(5) {
            for b in GradedIndex::window(5) {
                let x = c_coefficient(&alpha, a, b);
                assert_eq!(x, -c_coefficient(&alpha, b, a));
            }
        }
    }

    #[test]
    fn cbar_mirrors_c() {
        let c = AlgebraSpec::<Rational>::c(q(2, 3)).unwrap();
        let cb = AlgebraSpec::<Rational>::cbar(q(2, 3)).unwrap();
        for a in GradedIndex::window(3) {
            for b in GradedIndex::window(3) {
                let lhs = cb.basis_bracket(a, b).unwrap();
                let rhs = c.basis_bracket(a.flip_j(), b.flip_j()).unwrap();
                let mut mirrored = Element::zero();
                for (basis, coeff) in rhs.terms() {
                    mirrored.add_term(BasisElement::L(basis.index().unwrap().flip_j()), coeff.clone());
                }
                assert_eq!(lhs, mirrored);
            }
        }
    }

    #[test]
    fn symbolic_cocycle_coefficients() {
        let sym = CentralParams {
            a1: MultiPoly::var("a1"),
            a2: MultiPoly::var("a2"),
            a2p: MultiPoly::var("a2p"),
        };
        let b = AlgebraSpec::block(q(1, 1), q(2, 1), sym).unwrap();
        // lands on (-2, 4): a2·(α j + β i) + a2p·(α + i) with (i,j) = (0,1)
        let e = b.basis_bracket(g(0, 1), g(-2, 3)).unwrap();
        let expect = MultiPoly::var("a2").add_ref(&MultiPoly::var("a2p"));
        assert_eq!(e.coeff(&BasisElement::C2), Some(&expect));
        assert!(e.coeff(&BasisElement::L(g(-2, 4))).is_none());
    }
}
