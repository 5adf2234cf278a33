//! Exact sparse Gauss-Jordan elimination over the rationals.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::Rational;

/// One equation `Σ coeffs[c]·x_c = rhs`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseRow {
    pub coeffs: BTreeMap<usize, Rational>,
    pub rhs: Rational,
}

impl SparseRow {
    pub fn new(coeffs: impl IntoIterator<Item = (usize, Rational)>, rhs: Rational) -> Self {
        let mut row = SparseRow {
            coeffs: BTreeMap::new(),
            rhs,
        };
        for (c, v) in coeffs {
            row.add(c, &v);
        }
        row
    }

    fn add(&mut self, col: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let e = self.coeffs.entry(col).or_insert_with(Rational::zero);
        *e = &*e + v;
        if e.is_zero() {
            self.coeffs.remove(&col);
        }
    }

    /// `self -= f · other`
    fn axpy(&mut self, f: &Rational, other: &SparseRow) {
        for (c, v) in &other.coeffs {
            self.add(*c, &-(f * v));
        }
        self.rhs = &self.rhs - &(f * &other.rhs);
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.is_empty() && self.rhs.is_zero()
    }
}

#[derive(Clone, Debug)]
struct Pivot {
    row: SparseRow,
    provenance: BTreeSet<usize>,
}

/// Result of eliminating a system.
#[derive(Clone, Debug)]
pub enum LinearSolution {
    Consistent(ReducedSystem),
    /// Indices of an irreducible inconsistent subset of the input rows.
    Inconsistent { core: Vec<usize> },
}

/// Reduced row echelon form of a consistent system.
#[derive(Clone, Debug)]
pub struct ReducedSystem {
    ncols: usize,
    /// pivot column → normalized row (pivot coefficient 1, other pivots eliminated)
    pivots: BTreeMap<usize, SparseRow>,
}

impl ReducedSystem {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// The value of `col` when the system pins it independently of free columns.
    pub fn value(&self, col: usize) -> Option<Rational> {
        let row = self.pivots.get(&col)?;
        if row.coeffs.len() == 1 {
            Some(row.rhs.clone())
        } else {
            None
        }
    }

    /// The solution with every free column set to zero.
    pub fn particular(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.ncols];
        for (c, row) in &self.pivots {
            x[*c] = row.rhs.clone();
        }
        x
    }

    /// Basis of the homogeneous solution space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (p, row) in &self.pivots {
                    if let Some(a) = row.coeffs.get(&f) {
                        v[*p] = -a;
                    }
                }
                v
            })
            .collect()
    }
}

/// Incremental elimination. With `track` set, each pivot remembers which input
/// rows were combined into it.
fn eliminate(
    rows: &[SparseRow],
    ncols: usize,
    track: bool,
) -> Result<BTreeMap<usize, Pivot>, BTreeSet<usize>> {
    let mut pivots: BTreeMap<usize, Pivot> = BTreeMap::new();
    for (n, input) in rows.iter().enumerate() {
        let mut row = input.clone();
        let mut prov = BTreeSet::new();
        if track {
            prov.insert(n);
        }
        loop {
            let hit = row.coeffs.keys().find(|c| pivots.contains_key(c)).copied();
            let Some(c) = hit else { break };
            let f = row.coeffs[&c].clone();
            let p = &pivots[&c];
            row.axpy(&f, &p.row);
            if track {
                prov.extend(p.provenance.iter().copied());
            }
        }
        let Some((&lead, lead_v)) = row.coeffs.iter().next() else {
            if !row.rhs.is_zero() {
                return Err(prov);
            }
            continue;
        };
        debug_assert!(lead < ncols);
        let inv = lead_v.recip().expect("stored coefficients are nonzero");
        let row = SparseRow {
            coeffs: row.coeffs.iter().map(|(c, v)| (*c, v * &inv)).collect(),
            rhs: &row.rhs * &inv,
        };
        for p in pivots.values_mut() {
            if let Some(g) = p.row.coeffs.get(&lead).cloned() {
                p.row.axpy(&g, &row);
                if track {
                    p.provenance.extend(prov.iter().copied());
                }
            }
        }
        pivots.insert(
            lead,
            Pivot {
                row,
                provenance: prov,
            },
        );
    }
    Ok(pivots)
}

pub fn is_consistent(rows: &[SparseRow], ncols: usize) -> bool {
    eliminate(rows, ncols, false).is_ok()
}

/// Solves exactly; inconsistent systems come back with a minimal core.
pub fn solve(rows: &[SparseRow], ncols: usize) -> LinearSolution {
    match eliminate(rows, ncols, false) {
        Ok(p) => LinearSolution::Consistent(ReducedSystem {
            ncols,
            pivots: p.into_iter().map(|(c, p)| (c, p.row)).collect(),
        }),
        Err(_) => {
            let prov = match eliminate(rows, ncols, true) {
                Err(p) => p,
                Ok(_) => unreachable!("tracking does not change consistency"),
            };
            LinearSolution::Inconsistent {
                core: minimize_core(rows, ncols, prov.into_iter().collect()),
            }
        }
    }
}

/// Deletion filter: drop every row whose removal keeps the subset inconsistent.
fn minimize_core(rows: &[SparseRow], ncols: usize, mut core: Vec<usize>) -> Vec<usize> {
    let mut n = 0;
    while n < core.len() {
        let trial: Vec<SparseRow> = core
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != n)
            .map(|(_, &r)| rows[r].clone())
            .collect();
        if is_consistent(&trial, ncols) {
            n += 1;
        } else {
            core.remove(n);
        }
    }
    core
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::q;

    fn row(c: &[(usize, i64)], rhs: i64) -> SparseRow {
        SparseRow::new(c.iter().map(|(k, v)| (*k, Rational::from(*v))), Rational::from(rhs))
    }

    #[test]
    fn unique_solution() {
        // x + y = 3, x - y = 1
        let rows = [row(&[(0, 1), (1, 1)], 3), row(&[(0, 1), (1, -1)], 1)];
        let LinearSolution::Consistent(s) = solve(&rows, 2) else {
            panic!("expected solution")
        };
        assert_eq!(s.value(0), Some(q(2, 1)));
        assert_eq!(s.value(1), Some(q(1, 1)));
        assert!(s.free_columns().is_empty());
    }

    #[test]
    fn free_column_and_nullspace() {
        // x + 2y - z = 0 over three unknowns
        let rows = [row(&[(0, 1), (1, 2), (2, -1)], 0)];
        let LinearSolution::Consistent(s) = solve(&rows, 3) else {
            panic!()
        };
        assert_eq!(s.rank(), 1);
        assert_eq!(s.free_columns(), vec![1, 2]);
        for v in s.nullspace() {
            let lhs = &v[0] + &(&q(2, 1) * &v[1]) - v[2].clone();
            assert!(lhs.is_zero());
        }
    }

    #[test]
    fn minimal_core_drops_bystanders() {
        // rows 1, 3, 4 contradict; rows 0 and 2 are unrelated
        let rows = [
            row(&[(3, 1)], 5),
            row(&[(0, 1), (1, 1)], 1),
            row(&[(2, 1)], 7),
            row(&[(0, 1)], 0),
            row(&[(1, 1)], 2),
        ];
        let LinearSolution::Inconsistent { core } = solve(&rows, 4) else {
            panic!("expected inconsistency")
        };
        assert_eq!(core, vec![1, 3, 4]);
    }
}
