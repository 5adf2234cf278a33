//! Sparse multivariate polynomials over [`Rational`] in named symbols.
//!
//! Every polynomial lives in the free commutative ring over all symbol
//! names, so operands never need an explicit ring handle: two symbols with
//! the same name are the same variable.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::{ArithError, Rational};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

/// Power product of symbols, sorted by symbol with strictly positive exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(s, exp)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, s: &Symbol) -> u32 {
        self.0
            .binary_search_by(|(t, _)| t.cmp(s))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((sa, ea)), Some((sb, eb))) => match sa.cmp(sb) {
                    Ordering::Less => {
                        out.push((sa.clone(), *ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((sb.clone(), *eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((sa.clone(), ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(x), None) => {
                    out.push((*x).clone());
                    a.next();
                }
                (None, Some(y)) => {
                    out.push((*y).clone());
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    /// `self / other` when every exponent of `other` fits.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut rest = other.0.iter().peekable();
        for (s, e) in &self.0 {
            let take = match rest.peek() {
                Some((t, f)) if t == s => {
                    rest.next();
                    *f
                }
                Some((t, _)) if t < s => return None,
                _ => 0,
            };
            if take > *e {
                return None;
            }
            if *e > take {
                out.push((s.clone(), e - take));
            }
        }
        if rest.next().is_some() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Removes `s` from the product, returning its exponent and the cofactor.
    fn split(&self, s: &Symbol) -> (u32, Monomial) {
        let mut exp = 0;
        let rest = self
            .0
            .iter()
            .filter(|(t, e)| {
                if t == s {
                    exp = *e;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (exp, Monomial(rest))
    }

    /// Lexicographic order with earlier symbol names dominating.
    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((sa, ea)), Some((sb, eb))) => match sa.cmp(sb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, (s, e)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(name: &str) -> Self {
        Self::symbol(Symbol::new(name))
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::monomial(Monomial::var(s, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value when the polynomial has no symbols.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_ref(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul_ref(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..exp {
            out = out.mul_ref(self);
        }
        out
    }

    /// The polynomial in the remaining symbols that multiplies `v^degree`.
    pub fn coefficient_of(&self, v: &Symbol, degree: u32) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            if e == degree {
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Replaces `v` by the polynomial `value` everywhere.
    pub fn substitute(&self, v: &Symbol, value: &MultiPoly) -> MultiPoly {
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one()];
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap().mul_ref(value);
                powers.push(next);
            }
            let term = MultiPoly::monomial(rest, c.clone()).mul_ref(&powers[e as usize]);
            out = out.add_ref(&term);
        }
        out
    }

    pub fn substitute_value(&self, v: &Symbol, value: &Rational) -> MultiPoly {
        self.substitute(v, &MultiPoly::constant(value.clone()))
    }

    /// Exact evaluation; every occurring symbol must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<Symbol, Rational>) -> Result<Rational, ArithError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in &m.0 {
                let v = assignment
                    .get(s)
                    .ok_or_else(|| ArithError::MissingSymbol(s.name().to_string()))?;
                t = t * v.pow(*e);
            }
            total = total + t;
        }
        Ok(total)
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    /// `self / divisor` if the division leaves no remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = divisor.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(&dm)?;
            let c = rc / &dc;
            let step = MultiPoly::monomial(m, c);
            rem = rem.sub_ref(&step.mul_ref(divisor));
            quot = quot.add_ref(&step);
        }
        Some(quot)
    }

    /// Dense coefficient list (index = degree) of a polynomial in at most one symbol.
    pub fn univariate(&self) -> Result<(Option<Symbol>, Vec<Rational>), ArithError> {
        let syms = self.symbols();
        if syms.len() > 1 {
            return Err(ArithError::NotUnivariate(
                syms.iter().map(|s| s.name().to_string()).collect(),
            ));
        }
        let sym = syms.into_iter().next();
        let deg = sym.as_ref().map(|s| self.degree_in(s)).unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); deg as usize + 1];
        for (m, c) in &self.terms {
            let e = sym.as_ref().map(|s| m.exponent(s)).unwrap_or(0);
            coeffs[e as usize] = c.clone();
        }
        Ok((sym, coeffs))
    }
}

/// `rational_root_scan`: the candidates at which a univariate polynomial vanishes.
pub fn rational_root_scan(
    p: &MultiPoly,
    candidates: &[Rational],
) -> Result<BTreeSet<Rational>, ArithError> {
    let (_, coeffs) = p.univariate()?;
    Ok(candidates
        .iter()
        .filter(|x| {
            // Horner
            let v = coeffs
                .iter()
                .rev()
                .fold(Rational::zero(), |acc, c| acc * *x + c);
            v.is_zero()
        })
        .cloned()
        .collect())
}

/// Integers and half-integers in `[-bound, bound]`.
pub fn default_root_candidates(bound: i64) -> Vec<Rational> {
    (-2 * bound..=2 * bound)
        .map(|n| Rational::new(n, 2).expect("nonzero"))
        .collect()
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }
}

impl From<Rational> for MultiPoly {
    fn from(r: Rational) -> Self {
        MultiPoly::constant(r)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::constant(Rational::from(n))
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        self.add_ref(&rhs)
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self.sub_ref(&rhs)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        self.mul_ref(&rhs)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.sub_ref(rhs)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Rational::from(-1))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize)]
struct TermRecord<'a> {
    exponents: BTreeMap<&'a str, u32>,
    coeff: &'a Rational,
}

impl Serialize for MultiPoly {
    /// Sorted list of `{exponents, coeff}` records.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&TermRecord {
                exponents: m.0.iter().map(|(s, e)| (s.name(), *e)).collect(),
                coeff: c,
            })?;
        }
        seq.end()
    }
}
