use std::fmt;
use std::ops::{Add, Neg};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A degree `(i, j)` in Z×Z.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct GradedIndex {
    pub i: i64,
    pub j: i64,
}

impl GradedIndex {
    pub const fn new(i: i64, j: i64) -> Self {
        GradedIndex { i, j }
    }

    /// Reflection `(i, j) ↦ (i, -j)` relating an algebra to its dual.
    pub fn flip_j(self) -> Self {
        GradedIndex::new(self.i, -self.j)
    }

    /// All indices with `|i|, |j| <= w`, in lexicographic order.
    pub fn window(w: i64) -> impl Iterator<Item = GradedIndex> {
        (-w..=w).flat_map(move |i| (-w..=w).map(move |j| GradedIndex::new(i, j)))
    }
}

impl Add for GradedIndex {
    type Output = GradedIndex;
    fn add(self, o: GradedIndex) -> GradedIndex {
        GradedIndex::new(self.i + o.i, self.j + o.j)
    }
}

impl Neg for GradedIndex {
    type Output = GradedIndex;
    fn neg(self) -> GradedIndex {
        GradedIndex::new(-self.i, -self.j)
    }
}

impl From<(i64, i64)> for GradedIndex {
    fn from((i, j): (i64, i64)) -> Self {
        GradedIndex::new(i, j)
    }
}

impl fmt::Display for GradedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected an index literal `i,j`, got `{0}`")]
pub struct IndexParseError(pub String);

impl FromStr for GradedIndex {
    type Err = IndexParseError;

    /// Parses `i,j`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || IndexParseError(s.to_string());
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t.split_once(',').ok_or_else(bad)?;
        Ok(GradedIndex::new(
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_add() {
        let a: GradedIndex = "1,-2".parse().unwrap();
        let b: GradedIndex = "(3, 4)".parse().unwrap();
        assert_eq!(a + b, GradedIndex::new(4, 2));
        assert!("1;2".parse::<GradedIndex>().is_err());
        assert!("1,x".parse::<GradedIndex>().is_err());
    }

    #[test]
    fn window_is_lexicographic() {
        let w: Vec<_> = GradedIndex::window(1).collect();
        assert_eq!(w.len(), 9);
        assert_eq!(w[0], GradedIndex::new(-1, -1));
        assert_eq!(w[1], GradedIndex::new(-1, 0));
        assert!(w.windows(2).all(|p| p[0] < p[1]));
    }
}
