//! Exact row echelon forms over the integers.
//!
//! Rows are sparse and kept primitive (content 1); elimination is
//! fraction-free, `v ← (p/g)·v − (c/g)·b` with `g = gcd(p, c)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Incrementally built echelon basis: every stored row has a distinct
/// leading column.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivots: HashMap<usize, usize>,
}

fn content(row: &SparseRow) -> BigInt {
    let mut g = BigInt::zero();
    for (_, v) in row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides by the content and makes the leading entry positive.
pub(crate) fn normalize(row: &mut SparseRow) {
    let Some((_, lead)) = row.first() else { return };
    let mut g = content(row);
    if lead.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `x·v − y·w`, merging two sorted sparse rows.
fn combine(x: &BigInt, v: &SparseRow, y: &BigInt, w: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut k) = (0, 0);
    while i < v.len() || k < w.len() {
        let take_v = k == w.len() || (i < v.len() && v[i].0 < w[k].0);
        let take_w = i == v.len() || (k < w.len() && w[k].0 < v[i].0);
        if take_v {
            out.push((v[i].0, x * &v[i].1));
            i += 1;
        } else if take_w {
            out.push((w[k].0, -(y * &w[k].1)));
            k += 1;
        } else {
            let value = x * &v[i].1 - y * &w[k].1;
            if !value.is_zero() {
                out.push((v[i].0, value));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

/// Eliminates the entry of `row` at the leading column of `basis_row`.
fn eliminate(row: &SparseRow, basis_row: &SparseRow, column: usize) -> SparseRow {
    let pivot = &basis_row[0].1;
    let entry = &row
        .iter()
        .find(|(c, _)| *c == column)
        .expect("column present in row")
        .1;
    let g = pivot.gcd(entry);
    let mut out = combine(&(pivot / &g), row, &(entry / &g), basis_row);
    normalize(&mut out);
    out
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Reduces `row` against the basis until its leading column is not a
    /// pivot. The result is zero iff `row` lies in the span.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|(c, _)| *c);
        normalize(&mut row);
        while let Some(&(lead, _)) = row.first() {
            match self.pivots.get(&lead) {
                Some(&idx) => row = eliminate(&row, &self.rows[idx], lead),
                None => break,
            }
        }
        row
    }

    /// Adds `row` to the basis if it is independent; returns whether it was.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let reduced = self.reduce(row);
        match reduced.first() {
            None => false,
            Some(&(lead, _)) => {
                self.pivots.insert(lead, self.rows.len());
                self.rows.push(reduced);
                true
            }
        }
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Canonical reduced echelon form: rows sorted by pivot column, zero in
    /// every other pivot column, primitive, with positive pivot entries.
    pub fn into_reduced(self) -> Vec<SparseRow> {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        for k in (0..rows.len()).rev() {
            for later in k + 1..rows.len() {
                let column = rows[later][0].0;
                if rows[k].iter().any(|(c, _)| *c == column) {
                    let updated = eliminate(&rows[k], &rows[later], column);
                    rows[k] = updated;
                }
            }
        }
        rows
    }
}

/// Rank of the matrix with the given rows.
pub fn rank_of(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, BigInt::from(v))).collect()
    }

    #[allow(clippy::needless_range_loop)]
    fn dense_rank_rational(mut m: Vec<Vec<f64>>) -> usize {
        // small well-conditioned test matrices only
        let mut rank = 0;
        let cols = m.first().map_or(0, |r| r.len());
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][c].abs() > 1e-9) else { continue };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank {
                    let f = m[r][c] / m[rank][c];
                    for k in 0..cols {
                        m[r][k] -= f * m[rank][k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(row(&[(0, 2), (1, 4)])));
        assert!(e.insert(row(&[(1, 3), (2, 1)])));
        assert!(!e.insert(row(&[(0, 1), (1, 5), (2, 1)])));
        assert!(e.contains(row(&[(0, -4), (1, -8)])));
        assert!(!e.contains(row(&[(2, 1)])));
        assert_eq!(e.rank(), 2);
        assert!(!e.insert(Vec::new()));
    }

    #[test]
    fn reduced_form_is_canonical() {
        let a = vec![row(&[(0, 2), (1, 4), (2, 6)]), row(&[(1, 1), (2, -1)])];
        let b = vec![row(&[(0, 1), (1, 3), (2, 2)]), row(&[(0, 3), (1, 5), (2, 10)])];
        let reduce = |rows: Vec<SparseRow>| {
            let mut e = Echelon::new();
            for r in rows {
                e.insert(r);
            }
            e.into_reduced()
        };
        let ra = reduce(a);
        assert_eq!(ra, reduce(b));
        assert_eq!(ra, vec![row(&[(0, 1), (2, 5)]), row(&[(1, 1), (2, -1)])]);
    }

    #[test]
    fn matches_floating_rank_on_small_integer_matrices() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 5) as i64 - 2
        };
        for _ in 0..200 {
            let dense: Vec<Vec<i64>> = (0..5).map(|_| (0..6).map(|_| next()).collect()).collect();
            let sparse = dense
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(c, v)| (c, BigInt::from(*v))).collect())
                .collect::<Vec<SparseRow>>();
            let float: Vec<Vec<f64>> = dense.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect();
            assert_eq!(rank_of(sparse), dense_rank_rational(float));
        }
    }
}
