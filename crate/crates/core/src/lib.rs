//! Exact computation of the combinatorial invariants that control the
//! irregularity of GKZ hypergeometric systems: umbrellas (the face complexes
//! of weighted column configurations), slopes along coordinate subspaces,
//! characteristic-cycle multiplicities, and a binomial Gröbner engine used to
//! cross-validate the polyhedral results.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals);
//! nothing in this crate ever rounds.

// The elimination kernels mutate several index-parallel structures (matrix,
// transform, basis bookkeeping) in lockstep; explicit indices keep those
// pivoting loops symmetric where iterator forms would obscure them.
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod exactmath;
pub mod multiplicity;
pub mod polyhedral;
pub mod projective;
pub mod slopes;
pub mod toric;
pub mod umbrella;
