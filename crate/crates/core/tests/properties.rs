use betti_core::betti_formula::{betti_polynomial, h_rect};
use betti_core::partitions::{count_in_rectangle, enumerate_in_rectangle, gauss_polynomial, lambda_rect, Partition};
use betti_core::rep_ring::{cauchy_degree, evaluate_dimensions, schur_dim};
use proptest::prelude::*;

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn partition(max_len: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn in_rectangle(rows: usize, cols: usize) -> impl Strategy<Value = Partition> {
    let all = enumerate_in_rectangle(rows, cols);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #[test]
    fn gauss_polynomial_is_palindromic_and_counts_paths(r in 0usize..=6, s in 0usize..=6) {
        let g = gauss_polynomial(r, s);
        prop_assert!(g.is_palindromic());
        prop_assert_eq!(g.eval(1) as u64, binomial((r + s) as u64, r as u64));
        prop_assert_eq!(g.degree(), Some(r * s));
    }

    #[test]
    fn rectangle_counts_match_gauss_coefficients(r in 0usize..=5, s in 0usize..=5, k in 0usize..=25) {
        prop_assert_eq!(count_in_rectangle(r, s, k) as i64, gauss_polynomial(r, s).coeff(k));
    }

    #[test]
    fn conjugation_is_an_involution(lambda in partition(8, 8)) {
        let c = lambda.conjugate();
        prop_assert_eq!(c.size(), lambda.size());
        prop_assert_eq!(c.len(), lambda.part(0));
        prop_assert_eq!(c.conjugate(), lambda);
    }

    #[test]
    fn lambda_rect_has_the_expected_size(
        (r, s, alpha, beta) in (1usize..=3, 1usize..=3).prop_flat_map(|(r, s)| {
            let k = r.min(s);
            (Just(r), Just(s), in_rectangle(k, 3), in_rectangle(3, k))
        })
    ) {
        let lambda = lambda_rect(r, s, &alpha, &beta).unwrap();
        prop_assert_eq!(lambda.size(), r * s + alpha.size() + beta.size());
        prop_assert!(lambda.contains(&Partition::rectangle(r, s)));
        let swapped = lambda_rect(s, r, &beta.conjugate(), &alpha.conjugate()).unwrap();
        prop_assert_eq!(swapped, lambda.conjugate());
    }

    #[test]
    fn cauchy_decomposition_has_the_right_dimension(m in 1usize..=3, n in 1usize..=3, d in 0usize..=6) {
        let total: u64 = cauchy_degree(m, n, d).iter().map(|l| l.dim(m, n)).sum();
        prop_assert_eq!(total, binomial((m * n + d - 1) as u64, d as u64));
    }

    #[test]
    fn schur_dim_vanishes_exactly_past_the_rank(lambda in partition(5, 4), n in 0usize..=5) {
        prop_assert_eq!(schur_dim(&lambda, n) == 0, lambda.len() > n);
    }

    #[test]
    fn h_rect_transposes_with_the_matrix(r in 1usize..=3, s in 1usize..=3, m in 1usize..=4, n in 1usize..=4) {
        prop_assert_eq!(h_rect(r, s, m, n).transposed(), h_rect(r, s, n, m));
    }

    #[test]
    fn betti_numbers_start_with_the_generators(a in 1usize..=3, b in 1usize..=3, m in 1usize..=4, n in 1usize..=4) {
        prop_assume!(m >= n && a <= n);
        let table = evaluate_dimensions(&betti_polynomial(a, b, m, n).unwrap(), m, n);
        let rect = Partition::rectangle(a, b);
        prop_assert_eq!(table.get(0, a * b), schur_dim(&rect, m) * schur_dim(&rect, n));
        for ((i, j), _) in table.entries() {
            prop_assert!(j >= i + a * b);
            prop_assert!(i == 0 || j > a * b);
        }
    }
}
