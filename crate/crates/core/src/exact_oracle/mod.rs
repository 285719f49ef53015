//! Ground truth for the Betti tables: `I_{a×b}` is built explicitly inside
//! the polynomial ring on a generic `m × n` matrix and `Tor` is computed as
//! Koszul homology with exact integer linear algebra.

pub mod budget;
pub mod cache;
pub mod euler;
pub mod ideal;
pub mod koszul;
pub mod linalg;
pub mod poly;

use thiserror::Error;

pub use budget::{estimate_max_cells, DEFAULT_CELL_BUDGET};
pub use cache::{cached_hilbert, cached_koszul_table, ResultCache};
pub use euler::{alternating_sums, euler_check, euler_sides, AlternatingSum};
pub use ideal::{
    hilbert_function, highest_weight_generator, ideal_graded_piece, lowering_closure, GradedSubspace,
    IdealPieces,
};
pub use koszul::{koszul_betti, koszul_table, weight_refined_betti, KoszulComplex, OracleOptions};
pub use poly::{Layout, Monomial, Poly, WeightVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("job needs a {cells}-cell matrix, over the budget of {budget}")]
    BudgetExceeded { cells: u64, budget: u64 },
}
