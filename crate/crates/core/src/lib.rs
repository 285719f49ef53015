//! Betti tables of the ideals `I_{a×b}` generated by the `b`-th powers of
//! the `a × a` minors of a generic matrix, computed twice: from the closed
//! equivariant formula ([`betti_formula`]) and by exact Koszul homology
//! ([`exact_oracle`]).

pub mod betti_formula;
pub mod cli;
pub mod exact_oracle;
pub mod exec;
pub mod partitions;
pub mod rep_ring;

pub use exec::Execution;
