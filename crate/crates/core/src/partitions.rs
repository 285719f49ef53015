//! Integer partitions, rectangle-bounded enumeration and Gauss polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts {0:?} are not weakly decreasing")]
    NotDecreasing(Vec<usize>),
    #[error("partition {alpha} has {len} parts, more than the {rows} rows it must fit in")]
    TooManyParts { alpha: Partition, len: usize, rows: usize },
    #[error("partition {beta} has first part {part}, wider than the {cols} columns it must fit in")]
    PartTooLarge { beta: Partition, part: usize, cols: usize },
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
}

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// stripped at construction, so `()` is the only representation of the
/// zero partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The `rows × cols` rectangle `(cols, …, cols)`.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        Partition { parts: vec![cols; rows] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The `i`-th part (0-based), reading missing parts as zero.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts, l(λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Total number of boxes, |λ|.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// True iff `other` fits inside `self`, i.e. `other_i <= self_i` for every `i`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    /// Cells `(row, col)` of the Young diagram, 0-based, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Accepts `3,3`, `(3,3)`, `[3,3]`, and the empty forms `()`, `[]`, `""`.
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']'])
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

/// All partitions of `size` with at most `max_len` parts, each at most
/// `max_part`, in decreasing lexicographic order.
pub fn partitions_in_box(size: usize, max_len: usize, max_part: usize) -> Vec<Partition> {
    fn recurse(
        remaining: usize,
        slots: usize,
        cap: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        if slots == 0 || cap == 0 || remaining > slots * cap {
            return;
        }
        for first in (1..=cap.min(remaining)).rev() {
            prefix.push(first);
            recurse(remaining - first, slots - 1, first, prefix, out);
            prefix.pop();
        }
    }

    let mut out = Vec::new();
    recurse(size, max_len, max_part, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `size`.
pub fn partitions_of(size: usize) -> Vec<Partition> {
    partitions_in_box(size, size, size)
}

/// Every partition fitting in the `rows × cols` rectangle, ordered by size
/// and then in decreasing lexicographic order.
pub fn enumerate_in_rectangle(rows: usize, cols: usize) -> Vec<Partition> {
    (0..=rows * cols)
        .flat_map(|size| partitions_in_box(size, rows, cols))
        .collect()
}

/// Number of partitions of `size` fitting in the `rows × cols` rectangle.
pub fn count_in_rectangle(rows: usize, cols: usize, size: usize) -> u64 {
    gauss_polynomial(rows, cols).coeff(size).max(0) as u64
}

/// Generating function, by size, of the partitions inside the `rows × cols`
/// rectangle.
pub fn gauss_polynomial(rows: usize, cols: usize) -> IntPolynomial {
    // G(r, s) = G(r-1, s) + w^r G(r, s-1): split on whether the first column is full.
    let mut table: Vec<Vec<IntPolynomial>> = Vec::with_capacity(rows + 1);
    for r in 0..=rows {
        let mut row = Vec::with_capacity(cols + 1);
        for s in 0..=cols {
            let g = if r == 0 || s == 0 {
                IntPolynomial::one()
            } else {
                let without_full_column = &table[r - 1][s];
                let with_full_column: &IntPolynomial = &row[s - 1];
                without_full_column.add(&with_full_column.shift(r))
            };
            row.push(g);
        }
        table.push(row);
    }
    table.swap_remove(rows).swap_remove(cols)
}

/// The partition obtained by attaching `alpha` to the right of the
/// `rows × cols` rectangle and `beta` below it:
/// `(cols + alpha_1, …, cols + alpha_rows, beta_1, beta_2, …)`.
pub fn lambda_rect(
    rows: usize,
    cols: usize,
    alpha: &Partition,
    beta: &Partition,
) -> Result<Partition, PartitionError> {
    if alpha.len() > rows {
        return Err(PartitionError::TooManyParts { alpha: alpha.clone(), len: alpha.len(), rows });
    }
    if beta.part(0) > cols {
        return Err(PartitionError::PartTooLarge { beta: beta.clone(), part: beta.part(0), cols });
    }
    let mut parts: Vec<usize> = (0..rows).map(|i| cols + alpha.part(i)).collect();
    parts.extend_from_slice(beta.parts());
    Partition::new(parts)
}

/// Polynomial in one variable `w` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coefficients: BTreeMap<usize, i64>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exponent: usize, coefficient: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coefficient);
        p
    }

    pub fn from_coefficients(coefficients: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in coefficients {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: usize, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        let entry = self.coefficients.entry(exponent).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.coefficients.remove(&exponent);
        }
    }

    pub fn coeff(&self, exponent: usize) -> i64 {
        self.coefficients.get(&exponent).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coefficients.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.keys().next_back().copied()
    }

    pub fn eval(&self, w: i64) -> i64 {
        self.terms().map(|(e, c)| c * w.pow(e as u32)).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Multiplication by `w^k`.
    pub fn shift(&self, k: usize) -> Self {
        Self::from_coefficients(self.terms().map(|(e, c)| (e + k, c)))
    }

    /// Substitution `w ↦ w²`.
    pub fn in_square(&self) -> Self {
        Self::from_coefficients(self.terms().map(|(e, c)| (2 * e, c)))
    }

    /// True iff `coeff(i) == coeff(deg - i)` for every `i`.
    pub fn is_palindromic(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => (0..=d).all(|i| self.coeff(i) == self.coeff(d - i)),
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let magnitude = c.unsigned_abs();
            match (k, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match e {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if magnitude != 1 {
                        write!(f, "{magnitude}")?;
                    }
                    if e == 1 {
                        write!(f, "w")?;
                    } else {
                        write!(f, "w^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn construction_normalizes_trailing_zeros() {
        assert_eq!(p(&[3, 1, 0, 0]).parts(), &[3, 1]);
        assert_eq!(p(&[0, 0]), Partition::empty());
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[5, 2, 1]).conjugate(), p(&[3, 2, 1, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[4, 2, 1]).conjugate().conjugate(), p(&[4, 2, 1]));
    }

    #[test]
    fn conjugate_is_an_involution_up_to_twelve() {
        for size in 0..=12 {
            for lambda in partitions_of(size) {
                assert_eq!(lambda.conjugate().conjugate(), lambda);
                assert_eq!(lambda.conjugate().size(), size);
            }
        }
    }

    #[test]
    fn containment() {
        assert!(p(&[3, 2]).contains(&p(&[2, 2])));
        assert!(!p(&[3, 2]).contains(&p(&[1, 1, 1])));
        assert!(p(&[3, 2]).contains(&Partition::empty()));
        for a in enumerate_in_rectangle(3, 3) {
            for b in enumerate_in_rectangle(3, 3) {
                assert_eq!(a.contains(&b) && b.contains(&a), a == b);
            }
        }
    }

    #[test]
    fn rectangle_enumeration() {
        assert_eq!(enumerate_in_rectangle(1, 1), vec![p(&[]), p(&[1])]);
        assert_eq!(
            enumerate_in_rectangle(2, 2),
            vec![p(&[]), p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1]), p(&[2, 2])]
        );
        for r in 0..=5 {
            for s in 0..=5 {
                let all = enumerate_in_rectangle(r, s);
                assert_eq!(all.len() as u64, binomial((r + s) as u64, r as u64));
                let mut dedup = all.clone();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), all.len());
            }
        }
    }

    #[test]
    fn rectangle_counts() {
        assert_eq!(count_in_rectangle(0, 3, 0), 1);
        assert_eq!(count_in_rectangle(0, 3, 2), 0);
        assert_eq!(count_in_rectangle(2, 2, 2), 2);
        assert_eq!(count_in_rectangle(2, 2, 5), 0);
    }

    #[test]
    fn gauss_polynomial_examples() {
        assert_eq!(gauss_polynomial(1, 1).to_string(), "1 + w");
        assert_eq!(gauss_polynomial(2, 2).to_string(), "1 + w + 2w^2 + w^3 + w^4");
        assert_eq!(gauss_polynomial(4, 0), IntPolynomial::one());
    }

    #[test]
    fn gauss_polynomial_matches_enumeration() {
        for r in 0..=5 {
            for s in 0..=5 {
                let g = gauss_polynomial(r, s);
                let mut by_size = IntPolynomial::zero();
                for lambda in enumerate_in_rectangle(r, s) {
                    by_size.add_term(lambda.size(), 1);
                }
                assert_eq!(g, by_size, "r={r} s={s}");
                assert_eq!(g.degree(), Some(r * s));
            }
        }
    }

    #[test]
    fn lambda_rect_examples() {
        let lam = lambda_rect(4, 5, &p(&[4, 2, 1]), &p(&[3, 2])).unwrap();
        assert_eq!(lam, p(&[9, 7, 6, 5, 3, 2]));
        assert_eq!(lambda_rect(3, 2, &p(&[]), &p(&[])).unwrap(), p(&[2, 2, 2]));
        assert_eq!(lambda_rect(1, 2, &p(&[1]), &p(&[1])).unwrap(), p(&[3, 1]));
        assert!(lambda_rect(1, 2, &p(&[1, 1]), &p(&[])).is_err());
        assert!(lambda_rect(1, 2, &p(&[]), &p(&[3])).is_err());
    }

    #[test]
    fn lambda_rect_conjugation_symmetry() {
        for r in 1..=3 {
            for s in 1..=3 {
                for total in 0..=6 {
                    for k in 0..=total {
                        for alpha in partitions_in_box(k, r, total) {
                            for beta in partitions_in_box(total - k, total, s) {
                                let lam = lambda_rect(r, s, &alpha, &beta).unwrap();
                                assert_eq!(lam.size(), r * s + alpha.size() + beta.size());
                                let mirrored =
                                    lambda_rect(s, r, &beta.conjugate(), &alpha.conjugate())
                                        .unwrap();
                                assert_eq!(lam.conjugate(), mirrored);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_json() {
        assert_eq!("3,3".parse::<Partition>().unwrap(), p(&[3, 3]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("2,x".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&p(&[9, 7, 6, 5, 3, 2])).unwrap(), "[9,7,6,5,3,2]");
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    #[test]
    fn polynomial_display_and_arithmetic() {
        let g = IntPolynomial::from_coefficients([(0, 1), (1, 1)]);
        assert_eq!(g.in_square().shift(3).to_string(), "w^3 + w^5");
        assert_eq!(g.mul(&g).to_string(), "1 + 2w + w^2");
        assert_eq!(IntPolynomial::from_coefficients([(2, -3), (0, 1)]).to_string(), "1 - 3w^2");
        assert_eq!(g.eval(1), 2);
    }
}
