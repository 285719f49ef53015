//! Polynomials in the entries `z_{ij}` of a generic `m × n` matrix.
//!
//! Variables are indexed row-major: `z_{ij}` (0-based) is variable
//! `i * n + j`. Coefficients are integers; every element the oracle builds
//! (minors, their powers, images under the `gl_m × gl_n` operators) has
//! integer coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Matrix shape; owns the variable indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Layout {
    pub m: usize,
    pub n: usize,
}

impl Layout {
    pub fn new(m: usize, n: usize) -> Self {
        Layout { m, n }
    }

    pub fn num_vars(&self) -> usize {
        self.m * self.n
    }

    pub fn var(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    /// `(row, col)` of variable `v`.
    pub fn position(&self, v: usize) -> (usize, usize) {
        (v / self.n, v % self.n)
    }
}

/// Exponent vector over the `m·n` variables.
///
/// Ordered by degree, then lexicographically with `z_{11} > z_{12} > … `,
/// largest first: in a sorted list `z_{11}^d` comes before every other
/// monomial of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, v: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[v] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u16>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, v: usize) -> u16 {
        self.0[v]
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn times_var(&self, v: usize) -> Self {
        let mut e = self.0.clone();
        e[v] += 1;
        Monomial(e)
    }

    pub fn mul(&self, other: &Monomial) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / z_v`, if `z_v` divides it.
    pub fn div_var(&self, v: usize) -> Option<Self> {
        if self.0[v] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[v] -= 1;
        Some(Monomial(e))
    }

    pub fn weight(&self, layout: Layout) -> WeightVector {
        let mut w = WeightVector::zero(layout.m, layout.n);
        for (v, &e) in self.0.iter().enumerate() {
            let (i, j) = layout.position(v);
            w.row[i] += e as i64;
            w.col[j] += e as i64;
        }
        w
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Torus weight: row sums and column sums of an exponent matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightVector {
    pub row: Vec<i64>,
    pub col: Vec<i64>,
}

impl WeightVector {
    pub fn new(row: Vec<i64>, col: Vec<i64>) -> Self {
        WeightVector { row, col }
    }

    pub fn zero(m: usize, n: usize) -> Self {
        WeightVector { row: vec![0; m], col: vec![0; n] }
    }

    pub fn of_var(layout: Layout, v: usize) -> Self {
        let (i, j) = layout.position(v);
        let mut w = Self::zero(layout.m, layout.n);
        w.row[i] = 1;
        w.col[j] = 1;
        w
    }

    pub fn degree(&self) -> i64 {
        self.row.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.row.iter().chain(&self.col).all(|&x| x >= 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        WeightVector {
            row: self.row.iter().zip(&other.row).map(|(a, b)| a + b).collect(),
            col: self.col.iter().zip(&other.col).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        WeightVector {
            row: self.row.iter().zip(&other.row).map(|(a, b)| a - b).collect(),
            col: self.col.iter().zip(&other.col).map(|(a, b)| a - b).collect(),
        }
    }

    /// Both halves weakly decreasing.
    pub fn is_dominant(&self) -> bool {
        self.row.windows(2).all(|w| w[0] >= w[1]) && self.col.windows(2).all(|w| w[0] >= w[1])
    }

    /// The dominant weight in the orbit under row and column permutations.
    pub fn dominant(&self) -> Self {
        let mut row = self.row.clone();
        let mut col = self.col.clone();
        row.sort_unstable_by(|a, b| b.cmp(a));
        col.sort_unstable_by(|a, b| b.cmp(a));
        WeightVector { row, col }
    }

    /// Size of the orbit under permutations of rows and of columns.
    pub fn orbit_size(&self) -> u64 {
        distinct_permutations(&self.row) * distinct_permutations(&self.col)
    }
}

fn distinct_permutations(values: &[i64]) -> u64 {
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for &v in values {
        *counts.entry(v).or_insert(0) += 1;
    }
    let factorial = |k: u64| (1..=k).product::<u64>();
    counts.values().fold(factorial(values.len() as u64), |acc, &c| acc / factorial(c))
}

/// All nonnegative integer vectors of the given length and sum.
pub fn compositions(total: usize, len: usize) -> Vec<Vec<i64>> {
    fn recurse(total: usize, len: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if len == 1 {
            prefix.push(total as i64);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first as i64);
            recurse(total - first, len - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    recurse(total, len, &mut Vec::new(), &mut out);
    out
}

/// Weakly decreasing nonnegative vectors of the given length and sum.
pub fn dominant_vectors(total: usize, len: usize) -> Vec<Vec<i64>> {
    compositions(total, len)
        .into_iter()
        .filter(|v| v.windows(2).all(|w| w[0] >= w[1]))
        .collect()
}

/// Every weight of degree `d`: pairs of compositions of `d`.
pub fn all_weights(layout: Layout, d: usize) -> Vec<WeightVector> {
    let cols = compositions(d, layout.n);
    compositions(d, layout.m)
        .into_iter()
        .flat_map(|row| cols.iter().map(move |col| WeightVector::new(row.clone(), col.clone())))
        .collect()
}

/// Dominant weights of degree `d`.
pub fn dominant_weights(layout: Layout, d: usize) -> Vec<WeightVector> {
    let cols = dominant_vectors(d, layout.n);
    dominant_vectors(d, layout.m)
        .into_iter()
        .flat_map(|row| cols.iter().map(move |col| WeightVector::new(row.clone(), col.clone())))
        .collect()
}

/// Memoized number of monomials of a given weight, i.e. of nonnegative
/// integer matrices with prescribed row and column sums.
#[derive(Debug, Default)]
pub struct MonomialCounter {
    memo: HashMap<(Vec<i64>, Vec<i64>), u64>,
}

impl MonomialCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&mut self, weight: &WeightVector) -> u64 {
        if !weight.is_nonnegative() {
            return 0;
        }
        let w = weight.dominant();
        self.count_sorted(w.row, w.col)
    }

    fn count_sorted(&mut self, mut rows: Vec<i64>, mut cols: Vec<i64>) -> u64 {
        rows.retain(|&x| x > 0);
        cols.retain(|&x| x > 0);
        if rows.iter().sum::<i64>() != cols.iter().sum::<i64>() {
            return 0;
        }
        if rows.is_empty() {
            return 1;
        }
        rows.sort_unstable_by(|a, b| b.cmp(a));
        cols.sort_unstable_by(|a, b| b.cmp(a));
        let key = (rows.clone(), cols.clone());
        if let Some(&c) = self.memo.get(&key) {
            return c;
        }
        let first = rows[0];
        let rest_rows = rows[1..].to_vec();
        let mut total = 0;
        let mut fill = vec![0; cols.len()];
        self.distribute(first, 0, &cols, &mut fill, &rest_rows, &mut total);
        self.memo.insert(key, total);
        total
    }

    fn distribute(
        &mut self,
        remaining: i64,
        idx: usize,
        cols: &[i64],
        fill: &mut Vec<i64>,
        rest_rows: &[i64],
        total: &mut u64,
    ) {
        if idx == cols.len() {
            if remaining == 0 {
                let left: Vec<i64> = cols.iter().zip(fill.iter()).map(|(c, f)| c - f).collect();
                *total += self.count_sorted(rest_rows.to_vec(), left);
            }
            return;
        }
        for take in 0..=remaining.min(cols[idx]) {
            fill[idx] = take;
            self.distribute(remaining - take, idx + 1, cols, fill, rest_rows, total);
        }
        fill[idx] = 0;
    }
}

/// All monomials of a given weight, in increasing [`Monomial`] order.
pub fn monomials_of_weight(layout: Layout, weight: &WeightVector) -> Vec<Monomial> {
    fn recurse(
        layout: Layout,
        cell: usize,
        rows_left: &mut Vec<i64>,
        cols_left: &mut Vec<i64>,
        exps: &mut Vec<u16>,
        out: &mut Vec<Monomial>,
    ) {
        if cell == layout.num_vars() {
            if rows_left.iter().all(|&r| r == 0) && cols_left.iter().all(|&c| c == 0) {
                out.push(Monomial(exps.clone()));
            }
            return;
        }
        let (i, j) = layout.position(cell);
        let cap = rows_left[i].min(cols_left[j]);
        // the last cell of a row must absorb the remainder of that row
        let lo = if j == layout.n - 1 { rows_left[i] } else { 0 };
        if lo > cap {
            return;
        }
        for e in (lo..=cap).rev() {
            rows_left[i] -= e;
            cols_left[j] -= e;
            exps[cell] = e as u16;
            recurse(layout, cell + 1, rows_left, cols_left, exps, out);
            rows_left[i] += e;
            cols_left[j] += e;
        }
        exps[cell] = 0;
    }
    let mut out = Vec::new();
    if !weight.is_nonnegative() || weight.row.iter().sum::<i64>() != weight.col.iter().sum::<i64>() {
        return out;
    }
    let mut exps = vec![0; layout.num_vars()];
    recurse(layout, 0, &mut weight.row.clone(), &mut weight.col.clone(), &mut exps, &mut out);
    out.sort();
    out
}

/// Polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    layout: Layout,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(layout: Layout) -> Self {
        Poly { layout, terms: BTreeMap::new() }
    }

    pub fn constant(layout: Layout, c: i64) -> Self {
        let mut p = Self::zero(layout);
        p.add_term(Monomial::one(layout.num_vars()), BigInt::from(c));
        p
    }

    /// The variable `z_{ij}` (0-based indices).
    pub fn variable(layout: Layout, i: usize, j: usize) -> Self {
        let mut p = Self::zero(layout);
        p.add_term(Monomial::var(layout.num_vars(), layout.var(i, j)), BigInt::one());
        p
    }

    pub fn from_terms(layout: Layout, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero(layout);
        for (mono, c) in terms {
            p.add_term(mono, c);
        }
        p
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn add_term(&mut self, mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    /// Terms with the leading monomial first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms, `None` if zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Common weight of all terms, `None` if zero or not a weight vector.
    pub fn weight(&self) -> Option<WeightVector> {
        let mut weights = self.terms.keys().map(|m| m.weight(self.layout));
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (mono, c) in other.terms() {
            out.add_term(mono.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (mono, c) in other.terms() {
            out.add_term(mono.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.layout);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, exponent: usize) -> Poly {
        (0..exponent).fold(Poly::constant(self.layout, 1), |acc, _| acc.mul(self))
    }

    pub fn times_var(&self, v: usize) -> Poly {
        Poly {
            layout: self.layout,
            terms: self.terms.iter().map(|(m, c)| (m.times_var(v), c.clone())).collect(),
        }
    }

    /// `Σ_k z_{target_k} · ∂/∂z_{source_k}` applied to `self`.
    fn polarize(&self, pairs: impl Iterator<Item = (usize, usize)> + Clone) -> Poly {
        let mut out = Poly::zero(self.layout);
        for (mono, c) in self.terms() {
            for (target, source) in pairs.clone() {
                if let Some(quotient) = mono.div_var(source) {
                    let e = mono.exponent(source);
                    out.add_term(quotient.times_var(target), c * BigInt::from(e));
                }
            }
        }
        out
    }

    /// Row operator `E_{p,q}: g ↦ Σ_j z_{pj} ∂g/∂z_{qj}`.
    pub fn row_operator(&self, p: usize, q: usize) -> Poly {
        let l = self.layout;
        self.polarize((0..l.n).map(move |j| (l.var(p, j), l.var(q, j))))
    }

    /// Column operator `E_{p,q}: g ↦ Σ_i z_{ip} ∂g/∂z_{iq}`.
    pub fn col_operator(&self, p: usize, q: usize) -> Poly {
        let l = self.layout;
        self.polarize((0..l.m).map(move |i| (l.var(i, p), l.var(i, q))))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let wide = self.layout.m > 9 || self.layout.n > 9;
        for (k, (mono, c)) in self.terms().enumerate() {
            let negative = c < &BigInt::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            for (v, &e) in mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (i, j) = self.layout.position(v);
                let name = if wide {
                    format!("z_{}_{}", i + 1, j + 1)
                } else {
                    format!("z{}{}", i + 1, j + 1)
                };
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            if factors.is_empty() || !magnitude.is_one() {
                factors.insert(0, magnitude.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn monomial_order_puts_z11_first() {
        let l = Layout::new(2, 2);
        let mut monos = monomials_of_weight(l, &WeightVector::new(vec![1, 1], vec![1, 1]));
        monos.sort();
        let shown: Vec<String> = monos
            .iter()
            .map(|m| Poly::from_terms(l, [(m.clone(), BigInt::one())]).to_string())
            .collect();
        assert_eq!(shown, ["z11*z22", "z12*z21"]);
    }

    #[test]
    fn monomial_counts_agree_with_enumeration() {
        let l = Layout::new(3, 3);
        let mut counter = MonomialCounter::new();
        for d in 0..=5 {
            let mut total = 0;
            for w in all_weights(l, d) {
                let listed = monomials_of_weight(l, &w);
                assert_eq!(listed.len() as u64, counter.count(&w));
                assert!(listed.iter().all(|m| m.weight(l) == w && m.degree() == d));
                total += listed.len() as u64;
            }
            assert_eq!(total, binomial(9 + d as u64 - 1, d as u64));
        }
    }

    #[test]
    fn orbit_sizes_partition_all_weights() {
        let l = Layout::new(3, 2);
        for d in 0..=4 {
            let via_orbits: u64 = dominant_weights(l, d).iter().map(|w| w.orbit_size()).sum();
            assert_eq!(via_orbits as usize, all_weights(l, d).len());
        }
    }

    #[test]
    fn operators_act_as_derivations() {
        let l = Layout::new(2, 2);
        let z11 = Poly::variable(l, 0, 0);
        let sq = z11.pow(2);
        // E^row_{1,0}: moves row 0 to row 1
        let lowered = sq.row_operator(1, 0);
        assert_eq!(lowered.to_string(), "2*z11*z21");
        let det = z11.mul(&Poly::variable(l, 1, 1)).sub(&Poly::variable(l, 0, 1).mul(&Poly::variable(l, 1, 0)));
        assert!(det.row_operator(1, 0).is_zero());
        assert!(det.col_operator(0, 1).is_zero());
        assert_eq!(det.homogeneous_degree(), Some(2));
        assert_eq!(det.weight(), Some(WeightVector::new(vec![1, 1], vec![1, 1])));
    }
}
