//! Graded Euler-characteristic checks.

use std::collections::BTreeMap;

use super::ideal::IdealPieces;
use super::koszul::{binomial, KoszulComplex};
use super::OracleError;
use crate::betti_formula::{x_homology, x_terms};
use crate::exec::Execution;
use crate::rep_ring::BettiTable;

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) { 1 } else { -1 }
}

/// `dim S_d` for the polynomial ring in `nvars` variables.
fn ring_dim(nvars: usize, d: i64) -> i64 {
    if d < 0 {
        return 0;
    }
    let d = d as u64;
    binomial(nvars as u64 + d - 1, d) as i64
}

/// Both sides, degree by degree, of the Euler-characteristic identity for
/// the linear complex on the `r × s` rectangle:
/// `Σ_i (-1)^i dim X_i,d` against `Σ_k (-1)^k dim H_k,d`, where the terms
/// come from [`x_terms`] and the homology from [`x_homology`] with every
/// summand ideal built explicitly.
pub fn euler_sides(
    r: usize,
    s: usize,
    m: usize,
    n: usize,
    dmax: usize,
) -> Result<Vec<(i64, i64)>, OracleError> {
    let nvars = m * n;
    let k = r.min(s);
    let complex_length = if r <= m.min(n) { k * (m + n - 2 * r) } else { 0 };
    let homology_length = 2 * k * m.min(n).saturating_sub(r);
    let top = complex_length.max(homology_length);

    let generator_dims: Vec<i64> = (0..=top)
        .map(|i| x_terms(r, s, m, n, i).iter().map(|l| l.dim(m, n) as i64).sum())
        .collect();

    let mut ideals: BTreeMap<(usize, usize), IdealPieces> = BTreeMap::new();
    let mut homology = Vec::new();
    for deg in 0..=top {
        for summand in x_homology(r, s, m, n, deg) {
            let key = (summand.rect_r, summand.rect_s);
            if let std::collections::btree_map::Entry::Vacant(slot) = ideals.entry(key) {
                slot.insert(IdealPieces::build(key.0, key.1, m, n, dmax, Execution::default())?);
            }
            homology.push((deg, key, summand.multiplicity as i64));
        }
    }

    Ok((0..=dmax)
        .map(|d| {
            let lhs: i64 = generator_dims
                .iter()
                .enumerate()
                .map(|(i, &g)| sign(i) * g * ring_dim(nvars, d as i64 - (r * s + i) as i64))
                .sum();
            let rhs: i64 = homology
                .iter()
                .map(|(deg, key, mult)| sign(*deg) * mult * ideals[key].hilbert(d) as i64)
                .sum();
            (lhs, rhs)
        })
        .collect())
}

/// True iff the Euler-characteristic identity holds in every degree `<= dmax`.
pub fn euler_check(r: usize, s: usize, m: usize, n: usize, dmax: usize) -> Result<bool, OracleError> {
    Ok(euler_sides(r, s, m, n, dmax)?.iter().all(|(l, r)| l == r))
}

/// One degree of the resolution-independent identity
/// `Σ_i (-1)^i B_{i,j} = Σ_k (-1)^k C(mn, k) dim I_{j-k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlternatingSum {
    pub j: usize,
    pub betti_side: i64,
    pub hilbert_side: i64,
}

impl AlternatingSum {
    pub fn holds(&self) -> bool {
        self.betti_side == self.hilbert_side
    }
}

/// Evaluates both sides of the identity for `j <= max_j`. `table` must hold
/// every homological degree up to `m·n`.
pub fn alternating_sums(
    a: usize,
    b: usize,
    m: usize,
    n: usize,
    table: &BettiTable,
    max_j: usize,
) -> Result<Vec<AlternatingSum>, OracleError> {
    let pieces = IdealPieces::build(a, b, m, n, max_j, Execution::default())?;
    let complex = KoszulComplex::new(&pieces);
    Ok((0..=max_j)
        .map(|j| {
            let betti_side = (0..=m * n).map(|i| sign(i) * table.get(i, j) as i64).sum();
            AlternatingSum { j, betti_side, hilbert_side: complex.euler_characteristic(j) }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_oracle::koszul::{koszul_table, OracleOptions};

    #[test]
    fn euler_identity_for_small_rectangles() {
        assert!(euler_check(1, 1, 2, 2, 5).unwrap());
        assert!(euler_check(1, 2, 2, 2, 6).unwrap());
        // a = n: the complex is one free module and the homology is I_{n×s}
        assert!(euler_check(2, 3, 2, 2, 8).unwrap());
        assert!(euler_check(2, 1, 3, 2, 5).unwrap());
    }

    #[test]
    fn euler_sides_are_nontrivial() {
        let sides = euler_sides(1, 1, 2, 2, 5).unwrap();
        assert_eq!(sides[0], (0, 0));
        assert_eq!(sides[1], (4, 4));
        // degree 4: 4·20 − 6·10 + 4·4 = 36 = dim m_4 + dim (det²)_4 = 35 + 1
        assert_eq!(sides[4], (36, 36));
    }

    #[test]
    fn alternating_identity_on_the_golden_case() {
        let t = koszul_table(1, 2, 2, 2, 4, 8, &OracleOptions::default()).unwrap();
        let sums = alternating_sums(1, 2, 2, 2, &t, 8).unwrap();
        assert!(sums.iter().all(AlternatingSum::holds));
        assert_eq!(sums[3].betti_side, -16);
        // a corrupted table breaks it
        let mut bad = t.clone();
        bad.add(1, 3, 1);
        assert!(!alternating_sums(1, 2, 2, 2, &bad, 8).unwrap().iter().all(AlternatingSum::holds));
    }
}
