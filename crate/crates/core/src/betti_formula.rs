//! Closed-form equivariant Betti polynomials of the ideals `I_{a×b}`.
//!
//! The resolution of `I_{a×b}` is assembled from linear strands, one per
//! `q = 0..=n-a`. Strand `q` contributes the terms of the linear complex on
//! the `(a+q) × (b+q)` rectangle ([`h_rect`]), shifted and repeated according
//! to [`multiplicity_poly`].

use thiserror::Error;

use crate::exec::Execution;
use crate::partitions::{
    count_in_rectangle, enumerate_in_rectangle, gauss_polynomial, lambda_rect, partitions_in_box,
    IntPolynomial, Partition,
};
use crate::rep_ring::{evaluate_dimensions, EquivariantPolynomial, SchurLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("a, b, m, n must be positive (got a={a}, b={b}, m={m}, n={n})")]
    NonPositive { a: usize, b: usize, m: usize, n: usize },
    #[error("a={a} exceeds n={n}: the ideal is zero")]
    RankTooLarge { a: usize, n: usize },
    #[error("expected m >= n, got m={m}, n={n}")]
    WrongOrientation { m: usize, n: usize },
}

/// One summand `I_{rect_r × rect_s}^{⊕ multiplicity}` of a homology module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologySummand {
    pub rect_r: usize,
    pub rect_s: usize,
    pub multiplicity: u64,
}

fn rect_term(r: usize, s: usize, alpha: &Partition, beta: &Partition) -> SchurLabel {
    let row = lambda_rect(r, s, alpha, beta).expect("alpha and beta fit the rectangle");
    let col = lambda_rect(r, s, &beta.conjugate(), &alpha.conjugate())
        .expect("conjugates fit the rectangle");
    SchurLabel::new(row, col)
}

/// Terms of the linear complex on the `r × s` rectangle, as an equivariant
/// polynomial: `α` ranges over the `min(r,s) × (n-r)` rectangle and `β`
/// over the `(m-r) × min(r,s)` rectangle. Zero when `r > n` or `r > m`.
pub fn h_rect(r: usize, s: usize, m: usize, n: usize) -> EquivariantPolynomial {
    let mut out = EquivariantPolynomial::new();
    if r > n || r > m {
        return out;
    }
    let k = r.min(s);
    let betas = enumerate_in_rectangle(m - r, k);
    for alpha in enumerate_in_rectangle(k, n - r) {
        for beta in &betas {
            let extra = alpha.size() + beta.size();
            out.add_term(rect_term(r, s, &alpha, beta), r * s + extra, extra, 1);
        }
    }
    out
}

/// Labels of the generators of the `i`-th term of the linear complex on the
/// `r × s` rectangle, for `GL_m × GL_n`.
pub fn x_terms(r: usize, s: usize, m: usize, n: usize, i: usize) -> Vec<SchurLabel> {
    let mut out = Vec::new();
    if r > n || r > m {
        return out;
    }
    let k = r.min(s);
    for alpha_size in 0..=i {
        // α'_1 = l(α) <= k, α_1 <= n - r;  β_1 <= k, l(β) <= m - r
        for alpha in partitions_in_box(alpha_size, k, n - r) {
            for beta in partitions_in_box(i - alpha_size, m - r, k) {
                out.push(rect_term(r, s, &alpha, &beta));
            }
        }
    }
    out.sort();
    out
}

/// Homology of the linear complex on the `r × s` rectangle in homological
/// degree `k`: zero in odd degrees, and in degree `2j` the ideals
/// `I_{(r+q)×(s+q)}` with multiplicity `P(q, min(r,s)-1; j-q)`. Summands
/// with `r + q > min(m, n)` are the zero ideal and are dropped.
pub fn x_homology(r: usize, s: usize, m: usize, n: usize, k: usize) -> Vec<HomologySummand> {
    if k % 2 == 1 || r == 0 || s == 0 {
        return Vec::new();
    }
    let j = k / 2;
    let width = r.min(s) - 1;
    (0..=j)
        .filter(|q| r + q <= m.min(n))
        .map(|q| HomologySummand {
            rect_r: r + q,
            rect_s: s + q,
            multiplicity: count_in_rectangle(q, width, j - q),
        })
        .filter(|h| h.multiplicity > 0)
        .collect()
}

/// `w^{q²+2q}` times the Gauss polynomial of the `q × (min(a,b)-1)`
/// rectangle evaluated at `w²`.
pub fn multiplicity_poly(a: usize, b: usize, q: usize) -> IntPolynomial {
    let width = a.min(b).saturating_sub(1);
    gauss_polynomial(q, width).in_square().shift(q * q + 2 * q)
}

fn check_params(a: usize, b: usize, m: usize, n: usize) -> Result<(), FormulaError> {
    if a == 0 || b == 0 || m == 0 || n == 0 {
        return Err(FormulaError::NonPositive { a, b, m, n });
    }
    if n > m {
        return Err(FormulaError::WrongOrientation { m, n });
    }
    if a > n {
        return Err(FormulaError::RankTooLarge { a, n });
    }
    Ok(())
}

/// Equivariant Betti polynomial of `I_{a×b}` on `m × n` matrices, `m >= n`.
pub fn betti_polynomial(
    a: usize,
    b: usize,
    m: usize,
    n: usize,
) -> Result<EquivariantPolynomial, FormulaError> {
    betti_polynomial_with(a, b, m, n, Execution::default())
}

/// [`betti_polynomial`] with an explicit execution mode for the strand map.
pub fn betti_polynomial_with(
    a: usize,
    b: usize,
    m: usize,
    n: usize,
    exec: Execution,
) -> Result<EquivariantPolynomial, FormulaError> {
    check_params(a, b, m, n)?;
    let strands = exec.map((0..=n - a).collect(), |q| {
        h_rect(a + q, b + q, m, n)
            .times_w_poly(&multiplicity_poly(a, b, q))
            .expect("multiplicity polynomials have nonnegative coefficients")
    });
    let mut total = EquivariantPolynomial::new();
    let mut seen = std::collections::BTreeSet::new();
    for strand in &strands {
        let labels = strand.labels();
        assert!(
            seen.is_disjoint(&labels),
            "strands of I_{a}x{b} share an irreducible label"
        );
        seen.extend(labels);
        total.merge(strand);
    }
    Ok(total)
}

/// Like [`betti_polynomial`] but accepts `m < n` by computing the transposed
/// problem and transposing every label back. The flag reports whether a
/// swap took place.
pub fn betti_polynomial_any_orientation(
    a: usize,
    b: usize,
    m: usize,
    n: usize,
    exec: Execution,
) -> Result<(EquivariantPolynomial, bool), FormulaError> {
    if m >= n {
        Ok((betti_polynomial_with(a, b, m, n, exec)?, false))
    } else {
        Ok((betti_polynomial_with(a, b, n, m, exec)?.transposed(), true))
    }
}

/// Projective dimension and regularity read off the numeric Betti table.
pub fn proj_dim_and_reg(
    a: usize,
    b: usize,
    m: usize,
    n: usize,
) -> Result<(usize, usize), FormulaError> {
    let table = evaluate_dimensions(&betti_polynomial(a, b, m, n)?, m, n);
    Ok((
        table.projective_dimension().unwrap_or(0),
        table.regularity().unwrap_or(0),
    ))
}
