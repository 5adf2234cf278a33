use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::GradedIndex;
use crate::exactq::{Rational, Scalar};

/// A basis vector: `L` at a degree, or one of the central generators.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BasisElement {
    L(GradedIndex),
    C1,
    C2,
}

impl BasisElement {
    pub fn index(&self) -> Option<GradedIndex> {
        match self {
            BasisElement::L(idx) => Some(*idx),
            _ => None,
        }
    }

    pub fn is_central(&self) -> bool {
        !matches!(self, BasisElement::L(_))
    }

    pub fn to_json(&self) -> Value {
        match self {
            BasisElement::L(idx) => json!({"kind": "L", "i": idx.i, "j": idx.j}),
            BasisElement::C1 => json!({"kind": "C1"}),
            BasisElement::C2 => json!({"kind": "C2"}),
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::L(idx) => write!(f, "L{idx}"),
            BasisElement::C1 => f.write_str("c1"),
            BasisElement::C2 => f.write_str("c2"),
        }
    }
}

/// Finite linear combination of basis vectors with no stored zero coefficients.
#[derive(Clone, PartialEq)]
pub struct Element<S = Rational> {
    terms: BTreeMap<BasisElement, S>,
}

impl<S: Scalar> Default for Element<S> {
    fn default() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> Element<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: BasisElement) -> Self {
        Self::term(b, S::from(Rational::from(1)))
    }

    pub fn l(i: i64, j: i64) -> Self {
        Self::basis(BasisElement::L(GradedIndex::new(i, j)))
    }

    pub fn term(b: BasisElement, c: S) -> Self {
        let mut e = Self::zero();
        e.add_term(b, c);
        e
    }

    pub fn add_term(&mut self, b: BasisElement, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add_ref(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &BasisElement) -> Option<&S> {
        self.terms.get(b)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (b, c) in &other.terms {
            self.add_term(*b, c.clone());
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Element {
            terms: self.terms.iter().map(|(b, c)| (*b, c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.scale_by(&S::from(k.clone()))
    }

    pub fn scale_by(&self, k: &S) -> Self {
        let mut out = Self::zero();
        for (b, c) in &self.terms {
            out.add_term(*b, c.mul_ref(k));
        }
        out
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&BasisElement) -> bool) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(b))
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    /// `{"terms":[{"basis":…,"coeff":…}]}` in basis order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(b, c)| json!({"basis": b.to_json(), "coeff": c.to_json()}))
            .collect();
        json!({ "terms": terms })
    }
}

impl<S: Scalar> fmt::Display for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (b, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{b}")?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::q;

    #[test]
    fn zero_coefficients_are_pruned() {
        let mut e: Element = Element::l(1, 0);
        e.add_term(BasisElement::L(GradedIndex::new(1, 0)), q(-1, 1));
        assert!(e.is_zero());
        assert!(Element::<Rational>::l(2, 2).scale(&q(0, 1)).is_zero());
    }

    #[test]
    fn json_schema() {
        let mut e: Element = Element::l(1, -2).scale(&q(3, 2));
        e.add_term(BasisElement::C1, q(-1, 1));
        assert_eq!(
            e.to_json().to_string(),
            r#"{"terms":[{"basis":{"i":1,"j":-2,"kind":"L"},"coeff":"3/2"},{"basis":{"kind":"C1"},"coeff":"-1/1"}]}"#
        );
    }
}
