//! `Tor_i(I, C)_j` as the homology of the Koszul complex
//! `Λ^{i+1}V ⊗ I_{j-i-1} → Λ^i V ⊗ I_{j-i} → Λ^{i-1}V ⊗ I_{j-i+1}`.
//!
//! The differential preserves the torus weight, so the complex splits into
//! one small complex per weight. Row and column permutations are ring
//! automorphisms preserving `I`, so blocks whose weights differ by such a
//! permutation have equal homology; with symmetry reduction only dominant
//! weights are computed and weighted by their orbit sizes.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::budget::estimate_max_cells;
use super::ideal::IdealPieces;
use super::linalg::Echelon;
use super::poly::{all_weights, dominant_weights, Layout, Monomial, WeightVector};
use super::OracleError;
use crate::exec::Execution;
use crate::rep_ring::BettiTable;

/// Knobs for table computations.
#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    pub exec: Execution,
    /// Compute dominant weights only and multiply by orbit sizes.
    pub symmetry_reduction: bool,
    /// Refuse jobs whose largest matrix has more cells than this.
    pub cell_budget: Option<u64>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            exec: Execution::default(),
            symmetry_reduction: true,
            cell_budget: Some(super::budget::DEFAULT_CELL_BUDGET),
        }
    }
}

/// Subsets of `{0, …, n-1}` of size `k` as bitmasks, in lexicographic
/// order of their increasing element tuples.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<u64> {
    fn recurse(start: usize, n: usize, k: usize, mask: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(mask);
            return;
        }
        for v in start..=n - k {
            recurse(v + 1, n, k - 1, mask | (1 << v), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        recurse(0, n, k, 0, &mut out);
    }
    out
}

fn subset_weight(layout: Layout, mask: u64) -> WeightVector {
    let mut w = WeightVector::zero(layout.m, layout.n);
    for v in 0..layout.num_vars() {
        if mask & (1 << v) != 0 {
            let (i, j) = layout.position(v);
            w.row[i] += 1;
            w.col[j] += 1;
        }
    }
    w
}

/// The Koszul complex of a built [`IdealPieces`].
pub struct KoszulComplex<'a> {
    pieces: &'a IdealPieces,
    layout: Layout,
}

impl<'a> KoszulComplex<'a> {
    pub fn new(pieces: &'a IdealPieces) -> Self {
        KoszulComplex { pieces, layout: pieces.layout() }
    }

    /// Nonzero summands `e_T ⊗ I_{j-i, w - wt(T)}` of the weight-`w` part of
    /// `Λ^i V ⊗ I_{j-i}`.
    fn summands(&self, i: usize, j: usize, w: &WeightVector) -> Vec<(u64, &'a super::ideal::Block)> {
        if i > j {
            return Vec::new();
        }
        let d = j - i;
        subsets(self.layout.num_vars(), i)
            .into_iter()
            .filter_map(|mask| {
                let rest = w.sub(&subset_weight(self.layout, mask));
                if !rest.is_nonnegative() {
                    return None;
                }
                self.pieces.block(d, &rest).map(|b| (mask, b))
            })
            .collect()
    }

    fn chain_dim(&self, i: usize, j: usize, w: &WeightVector) -> u64 {
        self.summands(i, j, w).iter().map(|(_, b)| b.dim() as u64).sum()
    }

    /// Rank of `Λ^i V ⊗ I_{j-i} → Λ^{i-1} V ⊗ I_{j-i+1}` on weight `w`,
    /// computed in monomial coordinates of `Λ^{i-1} V ⊗ S`.
    fn differential_rank(&self, i: usize, j: usize, w: &WeightVector) -> u64 {
        if i == 0 {
            return 0;
        }
        let summands = self.summands(i, j, w);
        let bound: u64 = summands.iter().map(|(_, b)| b.dim() as u64).sum();
        let mut columns: HashMap<(u64, Monomial), usize> = HashMap::new();
        let mut echelon = Echelon::new();
        for (mask, block) in summands {
            let members: Vec<usize> =
                (0..self.layout.num_vars()).filter(|v| mask & (1 << v) != 0).collect();
            for terms in block.basis_terms() {
                let mut row: Vec<(usize, BigInt)> = Vec::new();
                for (position, &v) in members.iter().enumerate() {
                    // deleting the (position+1)-th factor carries sign (-1)^position
                    let face = mask & !(1 << v);
                    for (mono, c) in &terms {
                        let key = (face, mono.times_var(v));
                        let next = columns.len();
                        let col = *columns.entry(key).or_insert(next);
                        let value = if position % 2 == 0 { (*c).clone() } else { -(*c).clone() };
                        row.push((col, value));
                    }
                }
                echelon.insert(row);
                if echelon.rank() as u64 == bound {
                    return bound;
                }
            }
        }
        echelon.rank() as u64
    }

    /// `dim H_i` of the weight-`w` complex in internal degree `j`, for
    /// `i = 0..=max_i`.
    pub fn homology_block(&self, j: usize, w: &WeightVector, max_i: usize) -> Vec<u64> {
        let ab = self.pieces.generator_degree();
        let top = j.saturating_sub(ab).min(self.layout.num_vars());
        if j < ab {
            return vec![0; max_i + 1];
        }
        let dims: Vec<u64> = (0..=max_i).map(|i| if i <= top { self.chain_dim(i, j, w) } else { 0 }).collect();
        let ranks: Vec<u64> = (0..=max_i + 1)
            .map(|i| if i <= top { self.differential_rank(i, j, w) } else { 0 })
            .collect();
        (0..=max_i).map(|i| dims[i] - ranks[i] - ranks[i + 1]).collect()
    }

    /// `Σ_i (-1)^i dim(Λ^i V ⊗ I_{j-i})`, summed over all weights.
    pub fn euler_characteristic(&self, j: usize) -> i64 {
        let nvars = self.layout.num_vars();
        (0..=nvars.min(j))
            .map(|k| {
                let term = binomial(nvars as u64, k as u64) as i64 * self.pieces.hilbert(j - k) as i64;
                if k % 2 == 0 { term } else { -term }
            })
            .sum()
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub(crate) fn validate(a: usize, b: usize, m: usize, n: usize) -> Result<(), OracleError> {
    if a == 0 || b == 0 || m == 0 || n == 0 {
        return Err(OracleError::InvalidParameters(format!(
            "a, b, m, n must be positive (got a={a}, b={b}, m={m}, n={n})"
        )));
    }
    Ok(())
}

/// Betti numbers `B_{i,j}` for `i <= max_i`, `j <= max_j`.
pub fn koszul_table(
    a: usize,
    b: usize,
    m: usize,
    n: usize,
    max_i: usize,
    max_j: usize,
    options: &OracleOptions,
) -> Result<BettiTable, OracleError> {
    validate(a, b, m, n)?;
    if let Some(budget) = options.cell_budget {
        let cells = estimate_max_cells(a, b, m, n, max_i, max_j);
        if cells > budget {
            return Err(OracleError::BudgetExceeded { cells, budget });
        }
    }
    let pieces = IdealPieces::build(a, b, m, n, max_j, options.exec)?;
    Ok(table_from_pieces(&pieces, max_i, max_j, options))
}

/// Betti table of already built pieces; `max_j` must not exceed the
/// pieces' maximal degree.
pub fn table_from_pieces(
    pieces: &IdealPieces,
    max_i: usize,
    max_j: usize,
    options: &OracleOptions,
) -> BettiTable {
    let layout = pieces.layout();
    let complex = KoszulComplex::new(pieces);
    let ab = pieces.generator_degree();
    let mut jobs = Vec::new();
    for j in ab..=max_j {
        let weights = if options.symmetry_reduction {
            dominant_weights(layout, j)
        } else {
            all_weights(layout, j)
        };
        jobs.extend(weights.into_iter().map(|w| (j, w)));
    }
    let blocks = options.exec.map(jobs, |(j, w)| {
        let homology = complex.homology_block(j, &w, max_i);
        (j, w, homology)
    });
    let mut table = BettiTable::new();
    for (j, w, homology) in blocks {
        let multiplier = if options.symmetry_reduction { w.orbit_size() } else { 1 };
        for (i, h) in homology.into_iter().enumerate() {
            table.add(i, j, h * multiplier);
        }
    }
    table
}

/// `dim Tor_i(I_{a×b}, C)_j`.
pub fn koszul_betti(a: usize, b: usize, m: usize, n: usize, i: usize, j: usize) -> Result<u64, OracleError> {
    let options = OracleOptions { cell_budget: None, ..OracleOptions::default() };
    Ok(koszul_table(a, b, m, n, i, j, &options)?
        .restricted(i, j)
        .get(i, j))
}

/// Weight-`weight` component of `Tor_i(I_{a×b}, C)_j`.
pub fn weight_refined_betti(
    a: usize,
    b: usize,
    m: usize,
    n: usize,
    i: usize,
    j: usize,
    weight: &WeightVector,
) -> Result<u64, OracleError> {
    validate(a, b, m, n)?;
    if weight.row.len() != m || weight.col.len() != n {
        return Err(OracleError::InvalidParameters(format!(
            "weight has shape {}x{}, expected {m}x{n}",
            weight.row.len(),
            weight.col.len()
        )));
    }
    let total = j as i64;
    if weight.row.iter().sum::<i64>() != total || weight.col.iter().sum::<i64>() != total {
        return Err(OracleError::InvalidParameters(format!("weight does not sum to j={j}")));
    }
    if !weight.is_nonnegative() {
        return Ok(0);
    }
    let pieces = IdealPieces::build(a, b, m, n, j, Execution::default())?;
    Ok(KoszulComplex::new(&pieces).homology_block(j, weight, i)[i])
}
