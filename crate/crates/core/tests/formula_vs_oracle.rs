use betti_core::betti_formula::{betti_polynomial, proj_dim_and_reg};
use betti_core::exact_oracle::{
    alternating_sums, highest_weight_generator, koszul_table, lowering_closure, OracleOptions,
};
use betti_core::partitions::Partition;
use betti_core::rep_ring::{evaluate_dimensions, schur_dim};
use betti_core::Execution;

/// `(a, b, m, n)` with `m >= n`, `m, n <= 3`, `a <= n`, `b <= 2`.
fn envelope() -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for m in 1..=3 {
        for n in 1..=m {
            for a in 1..=n {
                for b in 1..=2 {
                    out.push((a, b, m, n));
                }
            }
        }
    }
    out
}

#[test]
fn formula_matches_oracle_on_the_envelope() {
    for (a, b, m, n) in envelope() {
        let max_i = m * n;
        let max_j = a * b + 6;
        let oracle = koszul_table(a, b, m, n, max_i, max_j, &OracleOptions::default()).unwrap();
        let formula = evaluate_dimensions(&betti_polynomial(a, b, m, n).unwrap(), m, n);
        assert_eq!(oracle, formula.restricted(max_i, max_j), "a={a} b={b} m={m} n={n}");

        let sums = alternating_sums(a, b, m, n, &oracle, max_j).unwrap();
        assert!(sums.iter().all(|s| s.holds()), "a={a} b={b} m={m} n={n}: {sums:?}");

        // nothing below the generator degree or past the projective dimension
        let (pd, _) = proj_dim_and_reg(a, b, m, n).unwrap();
        for ((i, j), _) in oracle.entries() {
            assert!(j >= i + a * b && i <= pd, "a={a} b={b} m={m} n={n}: ({i},{j})");
        }
    }
}

#[test]
fn oracle_is_symmetric_in_m_and_n() {
    for (a, b, m, n) in [(1, 1, 3, 2), (1, 2, 3, 2), (2, 1, 3, 2)] {
        let options = OracleOptions::default();
        let wide = koszul_table(a, b, m, n, 6, a * b + 4, &options).unwrap();
        let tall = koszul_table(a, b, n, m, 6, a * b + 4, &options).unwrap();
        assert_eq!(wide, tall);
    }
}

#[test]
fn sequential_oracle_without_symmetry_reduction_agrees() {
    let plain = OracleOptions { exec: Execution::Sequential, symmetry_reduction: false, cell_budget: None };
    for (a, b, m, n) in [(1, 2, 2, 2), (1, 1, 3, 2), (2, 2, 2, 2)] {
        let reduced = koszul_table(a, b, m, n, m * n, a * b + 4, &OracleOptions::default()).unwrap();
        let full = koszul_table(a, b, m, n, m * n, a * b + 4, &plain).unwrap();
        assert_eq!(reduced, full, "a={a} b={b} m={m} n={n}");
    }
}

#[test]
fn closure_dimension_is_a_product_of_schur_dimensions() {
    for m in 1..=3 {
        for n in 1..=3 {
            for a in 1..=m.min(n) {
                for b in 1..=3 {
                    let f = highest_weight_generator(a, b, m, n).unwrap();
                    let rect = Partition::rectangle(a, b);
                    let want = schur_dim(&rect, m) * schur_dim(&rect, n);
                    assert_eq!(lowering_closure(&f).dim() as u64, want, "a={a} b={b} m={m} n={n}");
                }
            }
        }
    }
}
