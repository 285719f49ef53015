//! A priori bounds on the size of the matrices an oracle job will eliminate.

use super::koszul::subsets;
use super::poly::{dominant_weights, Layout, MonomialCounter, WeightVector};

pub const DEFAULT_CELL_BUDGET: u64 = 50_000_000;

/// Upper bound on `rows × columns` of the largest matrix reduced by
/// `koszul_table(a, b, m, n, max_i, max_j)`, using monomial counts in place
/// of the (smaller) ideal dimensions. Weight blocks related by a row or
/// column permutation have equal sizes, so only dominant weights are
/// inspected.
pub fn estimate_max_cells(a: usize, b: usize, m: usize, n: usize, max_i: usize, max_j: usize) -> u64 {
    let layout = Layout::new(m, n);
    let nvars = layout.num_vars();
    let ab = a * b;
    if a > m.min(n) {
        return 0;
    }
    let mut counter = MonomialCounter::new();
    let var_weights: Vec<WeightVector> = (0..nvars).map(|v| WeightVector::of_var(layout, v)).collect();
    let weight_of = |mask: u64| {
        (0..nvars)
            .filter(|v| mask & (1 << v) != 0)
            .fold(WeightVector::zero(m, n), |acc, v| acc.add(&var_weights[v]))
    };
    let top_i = (max_i + 1).min(nvars);
    let masks: Vec<Vec<(u64, WeightVector)>> = (0..=top_i)
        .map(|k| subsets(nvars, k).into_iter().map(|mk| (mk, weight_of(mk))).collect())
        .collect();

    let mut worst = 0u64;
    for j in ab..=max_j {
        for w in dominant_weights(layout, j) {
            // building I_{j,w} from z_v · I_{j-1}
            if j > ab {
                let rows: u64 = var_weights.iter().map(|vw| counter.count(&w.sub(vw))).sum();
                worst = worst.max(rows.saturating_mul(counter.count(&w)));
            }
            let mut sizes = Vec::with_capacity(top_i + 1);
            for (i, level) in masks.iter().enumerate() {
                if i > j {
                    sizes.push(0u64);
                    continue;
                }
                let d_weight_total: u64 = level.iter().map(|(_, tw)| counter.count(&w.sub(tw))).sum();
                sizes.push(d_weight_total);
            }
            // d_i: rows from Λ^i ⊗ S_{j-i}, columns in Λ^{i-1} ⊗ S_{j-i+1}
            for i in 1..sizes.len() {
                if j < i + ab {
                    break;
                }
                worst = worst.max(sizes[i].saturating_mul(sizes[i - 1]));
            }
        }
    }
    worst
}
