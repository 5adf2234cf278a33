//! Jacobi identities as polynomial identities in the index components and
//! the structure parameters.

use num_traits::Zero;

use crate::exactq::MultiPoly;

/// A degree whose components are polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct SymIndex {
    pub i: MultiPoly,
    pub j: MultiPoly,
}

impl SymIndex {
    pub fn named(i: &str, j: &str) -> Self {
        SymIndex {
            i: MultiPoly::var(i),
            j: MultiPoly::var(j),
        }
    }

    pub fn add(&self, o: &SymIndex) -> SymIndex {
        SymIndex {
            i: &self.i + &o.i,
            j: &self.j + &o.j,
        }
    }
}

/// Expanded cyclic Jacobi sum for an algebra with one-term brackets
/// `[L_a, L_b] = coeff(a, b)·L_{a+b}`.
pub fn symbolic_jacobi(coeff: impl Fn(&SymIndex, &SymIndex) -> MultiPoly) -> MultiPoly {
    let a = SymIndex::named("i1", "j1");
    let b = SymIndex::named("i2", "j2");
    let c = SymIndex::named("i3", "j3");
    let mut sum = MultiPoly::from(0);
    for (x, y, z) in [(&a, &b, &c), (&b, &c, &a), (&c, &a, &b)] {
        sum = &sum + &(&coeff(y, z) * &coeff(x, &y.add(z)));
    }
    sum
}

/// `β(iℓ − jk) + (k − i) + (ℓ − j)α`
pub fn d_coefficient_poly(a: &SymIndex, b: &SymIndex) -> MultiPoly {
    let alpha = MultiPoly::var("alpha");
    let beta = MultiPoly::var("beta");
    let cross = &(&a.i * &b.j) - &(&a.j * &b.i);
    &(&(&beta * &cross) + &(&b.i - &a.i)) + &(&(&b.j - &a.j) * &alpha)
}

/// `(i+α)(ℓ−β) − (j−β)(k+α)`
pub fn block_coefficient_poly(a: &SymIndex, b: &SymIndex) -> MultiPoly {
    let alpha = MultiPoly::var("alpha");
    let beta = MultiPoly::var("beta");
    &(&(&a.i + &alpha) * &(&b.j - &beta)) - &(&(&a.j - &beta) * &(&b.i + &alpha))
}

pub fn symbolic_jacobi_d() -> bool {
    symbolic_jacobi(d_coefficient_poly).is_zero()
}

pub fn symbolic_jacobi_vir() -> bool {
    let beta = crate::exactq::Symbol::new("beta");
    symbolic_jacobi(|a, b| d_coefficient_poly(a, b).substitute_value(&beta, &crate::exactq::Rational::from(0))).is_zero()
}

pub fn symbolic_jacobi_block() -> bool {
    symbolic_jacobi(block_coefficient_poly).is_zero()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    #[test]
    fn families_are_lie() {
        assert!(symbolic_jacobi_d());
        assert!(symbolic_jacobi_vir());
        assert!(symbolic_jacobi_block());
    }

    #[test]
    fn d_uses_eight_symbols() {
        let p = d_coefficient_poly(&SymIndex::named("i1", "j1"), &SymIndex::named("i2", "j2"));
        let q = d_coefficient_poly(&SymIndex::named("i3", "j3"), &SymIndex::named("i1", "j1"));
        let names: BTreeSet<String> = p
            .add_ref(&q)
            .symbols()
            .iter()
            .map(|s| s.name().to_string())
            .collect();
        assert_eq!(names.len(), 8);
    }

    #[test]
    fn mutation_is_detected() {
        // (k − i) replaced by (k + i)
        let mutated = symbolic_jacobi(|a, b| {
            let good = d_coefficient_poly(a, b);
            &good + &(&a.i * &MultiPoly::from(2))
        });
        assert!(!mutated.is_zero());
    }

    #[test]
    fn whole_term_sign_flip_is_a_reflection() {
        // −(k − i) is D(α, −β) reindexed by i ↦ −i, so the identity survives
        let flipped = symbolic_jacobi(|a, b| {
            let good = d_coefficient_poly(a, b);
            &good - &(&(&b.i - &a.i) * &MultiPoly::from(2))
        });
        assert!(flipped.is_zero());
    }
}
