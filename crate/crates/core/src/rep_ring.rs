//! Formal elements of the representation ring of `GL_m × GL_n` with two
//! grading variables, Schur module dimensions, Kostka numbers, and numeric
//! Betti tables.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::{partitions_in_box, IntPolynomial, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepRingError {
    #[error("multiplying by a polynomial with negative coefficient {coefficient} at w^{exponent}")]
    NegativeMultiplier { exponent: usize, coefficient: i64 },
}

/// Label of the irreducible `S_row C^m ⊗ S_col C^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchurLabel {
    pub row: Partition,
    pub col: Partition,
}

impl SchurLabel {
    pub fn new(row: Partition, col: Partition) -> Self {
        SchurLabel { row, col }
    }

    /// Swaps the two factors, matching the transpose `m × n ↔ n × m`.
    pub fn transposed(&self) -> Self {
        SchurLabel { row: self.col.clone(), col: self.row.clone() }
    }

    pub fn dim(&self, m: usize, n: usize) -> u64 {
        schur_dim(&self.row, m) * schur_dim(&self.col, n)
    }
}

impl std::fmt::Display for SchurLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}⊗{}", self.row, self.col)
    }
}

/// Index of one term: the label together with its `z` (internal) and `w`
/// (homological) degrees. Ordered by `w`, then `z`, then label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermKey {
    pub wdeg: usize,
    pub zdeg: usize,
    pub label: SchurLabel,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    row: Partition,
    col: Partition,
    z: usize,
    w: usize,
    mult: u64,
}

/// Element of `Rep_GL[z, w]` with nonnegative coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<TermRecord>", into = "Vec<TermRecord>")]
pub struct EquivariantPolynomial {
    terms: BTreeMap<TermKey, u64>,
}

impl From<Vec<TermRecord>> for EquivariantPolynomial {
    fn from(records: Vec<TermRecord>) -> Self {
        let mut p = EquivariantPolynomial::new();
        for r in records {
            p.add_term(SchurLabel::new(r.row, r.col), r.z, r.w, r.mult);
        }
        p
    }
}

impl From<EquivariantPolynomial> for Vec<TermRecord> {
    fn from(p: EquivariantPolynomial) -> Self {
        p.terms
            .into_iter()
            .map(|(k, mult)| TermRecord {
                row: k.label.row,
                col: k.label.col,
                z: k.zdeg,
                w: k.wdeg,
                mult,
            })
            .collect()
    }
}

impl EquivariantPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, label: SchurLabel, zdeg: usize, wdeg: usize, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.terms.entry(TermKey { wdeg, zdeg, label }).or_insert(0) += mult;
    }

    pub fn multiplicity(&self, label: &SchurLabel, zdeg: usize, wdeg: usize) -> u64 {
        let key = TermKey { wdeg, zdeg, label: label.clone() };
        self.terms.get(&key).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, u64)> + '_ {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds every term of `other` into `self`.
    pub fn merge(&mut self, other: &EquivariantPolynomial) {
        for (k, mult) in other.terms() {
            self.add_term(k.label.clone(), k.zdeg, k.wdeg, mult);
        }
    }

    /// Distinct labels occurring in any term.
    pub fn labels(&self) -> std::collections::BTreeSet<SchurLabel> {
        self.terms.keys().map(|k| k.label.clone()).collect()
    }

    /// Product with a polynomial in `w` alone.
    pub fn times_w_poly(&self, factor: &IntPolynomial) -> Result<Self, RepRingError> {
        let mut out = Self::new();
        for (exponent, coefficient) in factor.terms() {
            if coefficient < 0 {
                return Err(RepRingError::NegativeMultiplier { exponent, coefficient });
            }
            for (k, mult) in self.terms() {
                out.add_term(k.label.clone(), k.zdeg, k.wdeg + exponent, mult * coefficient as u64);
            }
        }
        Ok(out)
    }

    /// All labels transposed; used when the matrix orientation is swapped.
    pub fn transposed(&self) -> Self {
        let mut out = Self::new();
        for (k, mult) in self.terms() {
            out.add_term(k.label.transposed(), k.zdeg, k.wdeg, mult);
        }
        out
    }

    /// Terms with the given homological degree.
    pub fn wdeg_slice(&self, wdeg: usize) -> Vec<(SchurLabel, usize, u64)> {
        self.terms()
            .filter(|(k, _)| k.wdeg == wdeg)
            .map(|(k, mult)| (k.label.clone(), k.zdeg, mult))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct BettiRecord {
    i: usize,
    j: usize,
    value: u64,
}

/// Betti numbers `B_{i,j}`, `i` homological and `j` internal degree. Zero
/// entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<BettiRecord>", into = "Vec<BettiRecord>")]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
}

impl From<Vec<BettiRecord>> for BettiTable {
    fn from(records: Vec<BettiRecord>) -> Self {
        let mut t = BettiTable::new();
        for r in records {
            t.add(r.i, r.j, r.value);
        }
        t
    }
}

impl From<BettiTable> for Vec<BettiRecord> {
    fn from(t: BettiTable) -> Self {
        t.entries.into_iter().map(|((i, j), value)| BettiRecord { i, j, value }).collect()
    }
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, usize), u64)>) -> Self {
        let mut t = Self::new();
        for ((i, j), v) in entries {
            t.add(i, j, v);
        }
        t
    }

    pub fn add(&mut self, i: usize, j: usize, value: u64) {
        if value > 0 {
            *self.entries.entry((i, j)).or_insert(0) += value;
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries with `i <= max_i` and `j <= max_j`.
    pub fn restricted(&self, max_i: usize, max_j: usize) -> BettiTable {
        Self::from_entries(self.entries().filter(|&((i, j), _)| i <= max_i && j <= max_j))
    }

    /// Largest homological degree with a nonzero entry.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Largest `j - i` over nonzero entries.
    pub fn regularity(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, j)| j.saturating_sub(i)).max()
    }
}

/// Dimension of `S_λ C^n`, by the hook-content formula.
pub fn schur_dim(lambda: &Partition, n: usize) -> u64 {
    if lambda.len() > n {
        return 0;
    }
    let conj = lambda.conjugate();
    let mut numerator = BigUint::one();
    let mut denominator = BigUint::one();
    for (i, j) in lambda.cells() {
        // n + j - i >= 1 because i < l(λ) <= n
        numerator *= (n + j - i) as u64;
        let hook = (lambda.part(i) - j) + (conj.part(j) - i) - 1;
        denominator *= hook as u64;
    }
    let (quotient, remainder) = (&numerator / &denominator, &numerator % &denominator);
    debug_assert!(remainder == BigUint::ZERO);
    quotient.to_u64().expect("Schur module dimension exceeds u64")
}

/// Number of semistandard tableaux of shape `lambda` and the given content,
/// by enumerating chains of horizontal strips.
pub fn kostka(lambda: &Partition, content: &[usize]) -> u64 {
    if content.iter().sum::<usize>() != lambda.size() {
        return 0;
    }
    let target = lambda.parts().to_vec();
    let rows = target.len();

    fn fill_strip(
        target: &[usize],
        prev: &[usize],
        next: &mut Vec<usize>,
        row: usize,
        remaining: usize,
        on_complete: &mut dyn FnMut(&[usize]),
    ) {
        if row == target.len() {
            if remaining == 0 {
                on_complete(next);
            }
            return;
        }
        let lo = prev[row];
        let hi = if row == 0 { target[0] } else { target[row].min(prev[row - 1]) };
        for value in lo..=hi {
            let added = value - lo;
            if added > remaining {
                break;
            }
            next[row] = value;
            fill_strip(target, prev, next, row + 1, remaining - added, on_complete);
        }
        next[row] = prev[row];
    }

    fn count(target: &[usize], shape: &[usize], content: &[usize]) -> u64 {
        match content.split_first() {
            None => u64::from(shape == target),
            Some((&letter_count, rest)) => {
                let mut total = 0;
                let mut next = shape.to_vec();
                fill_strip(target, shape, &mut next, 0, letter_count, &mut |grown| {
                    total += count(target, grown, rest);
                });
                total
            }
        }
    }

    count(&target, &vec![0; rows], content)
}

/// Irreducible summands `S_λ C^m ⊗ S_λ C^n` of the degree-`d` part of the
/// polynomial ring on `m × n` matrices.
pub fn cauchy_degree(m: usize, n: usize, d: usize) -> Vec<SchurLabel> {
    partitions_in_box(d, m.min(n), d)
        .into_iter()
        .map(|lambda| SchurLabel::new(lambda.clone(), lambda))
        .collect()
}

/// Numeric Betti table obtained by replacing every label with its dimension.
pub fn evaluate_dimensions(p: &EquivariantPolynomial, m: usize, n: usize) -> BettiTable {
    let mut table = BettiTable::new();
    for (k, mult) in p.terms() {
        table.add(k.wdeg, k.zdeg, mult * k.label.dim(m, n));
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_of;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn label(row: &[usize], col: &[usize]) -> SchurLabel {
        SchurLabel::new(p(row), p(col))
    }

    fn compositions(total: usize, len: usize) -> Vec<Vec<usize>> {
        if len == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        (0..=total)
            .flat_map(|first| {
                compositions(total - first, len - 1).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn schur_dims_in_rank_two() {
        for r in 0..6 {
            assert_eq!(schur_dim(&p(&[r]), 2), r as u64 + 1);
        }
        for r in 1..6 {
            assert_eq!(schur_dim(&p(&[r, 1]), 2), r as u64);
        }
        assert_eq!(schur_dim(&p(&[3, 3]), 2), 1);
        assert_eq!(schur_dim(&p(&[1, 1, 1]), 2), 0);
        assert_eq!(schur_dim(&Partition::empty(), 0), 1);
    }

    #[test]
    fn determinant_powers_are_one_dimensional() {
        for b in 1..=4 {
            for n in 1..=4 {
                assert_eq!(schur_dim(&Partition::rectangle(n, b), n), 1);
            }
        }
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&p(&[2]), &[1, 1]), 1);
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1, 1]), 2);
        assert_eq!(kostka(&p(&[2, 1]), &[1, 2]), 1);
        assert_eq!(kostka(&p(&[2, 2]), &[3, 1]), 0);
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1]), 0);
        for size in 0..=7 {
            for lambda in partitions_of(size) {
                assert_eq!(kostka(&lambda, lambda.parts()), 1, "{lambda}");
            }
        }
    }

    #[test]
    fn kostka_sum_equals_hook_content() {
        for size in 0..=6 {
            for lambda in partitions_of(size) {
                for n in 0..=4 {
                    let total: u64 = compositions(size, n).iter().map(|c| kostka(&lambda, c)).sum();
                    assert_eq!(total, schur_dim(&lambda, n), "{lambda} n={n}");
                }
            }
        }
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(cauchy_degree(2, 2, 2), vec![label(&[2], &[2]), label(&[1, 1], &[1, 1])]);
        assert_eq!(cauchy_degree(3, 1, 0), vec![label(&[], &[])]);
        for d in 0..=6 {
            for m in 1..=3 {
                for n in 1..=3 {
                    let total: u64 = cauchy_degree(m, n, d).iter().map(|l| l.dim(m, n)).sum();
                    assert_eq!(total, binomial((m * n + d - 1) as u64, d as u64));
                }
            }
        }
    }

    #[test]
    fn evaluation_is_additive() {
        let mut a = EquivariantPolynomial::new();
        a.add_term(label(&[2], &[2]), 2, 0, 1);
        let mut b = EquivariantPolynomial::new();
        b.add_term(label(&[3], &[2, 1]), 3, 1, 1);
        b.add_term(label(&[2], &[2]), 2, 0, 2);
        let mut sum = a.clone();
        sum.merge(&b);
        let mut expected = evaluate_dimensions(&a, 2, 2);
        for ((i, j), v) in evaluate_dimensions(&b, 2, 2).entries() {
            expected.add(i, j, v);
        }
        assert_eq!(evaluate_dimensions(&sum, 2, 2), expected);
        assert_eq!(evaluate_dimensions(&sum, 2, 2).get(0, 2), 27);
        assert!(evaluate_dimensions(&EquivariantPolynomial::new(), 2, 2).is_empty());
    }

    #[test]
    fn zero_dimensional_terms_vanish() {
        let mut q = EquivariantPolynomial::new();
        q.add_term(label(&[1, 1, 1], &[3]), 3, 1, 5);
        assert!(evaluate_dimensions(&q, 2, 2).is_empty());
    }

    #[test]
    fn w_polynomial_product() {
        let mut q = EquivariantPolynomial::new();
        q.add_term(label(&[3, 3], &[3, 3]), 6, 0, 1);
        let shifted = q.times_w_poly(&IntPolynomial::from_coefficients([(3, 1), (5, 2)])).unwrap();
        assert_eq!(shifted.multiplicity(&label(&[3, 3], &[3, 3]), 6, 3), 1);
        assert_eq!(shifted.multiplicity(&label(&[3, 3], &[3, 3]), 6, 5), 2);
        assert!(q.times_w_poly(&IntPolynomial::monomial(1, -1)).is_err());
    }

    #[test]
    fn json_forms() {
        let mut q = EquivariantPolynomial::new();
        q.add_term(label(&[3], &[2, 1]), 3, 1, 1);
        let text = serde_json::to_string(&q).unwrap();
        assert_eq!(text, r#"[{"row":[3],"col":[2,1],"z":3,"w":1,"mult":1}]"#);
        assert_eq!(serde_json::from_str::<EquivariantPolynomial>(&text).unwrap(), q);

        let t = BettiTable::from_entries([((0, 2), 9), ((3, 6), 1)]);
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(text, r#"[{"i":0,"j":2,"value":9},{"i":3,"j":6,"value":1}]"#);
        assert_eq!(serde_json::from_str::<BettiTable>(&text).unwrap(), t);
    }
}
