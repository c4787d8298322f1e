//! Minimal proposition systems for singling out one of `2^n` orthogonal pure
//! states of `n` two-state particles.
//!
//! A proposition is a projector with eigenvalues 0/1. `n` commuting
//! projectors, each splitting the basis 50:50 and halving every block of the
//! others, separate all `2^n` basis states through a binary-search cascade.
//!
//! - [`matrix`]: dense complex arithmetic, tensor products, certification predicates
//! - [`system`]: the standard sieve, its `N!` column rearrangements, minimality
//! - [`partition`]: eigenvalue partitions of a basis and their meet
//! - [`pauli`]: Pauli embeddings and `½(1 + σ⊗σ⊗σ)` propositions
//! - [`basis`]: standard, GHZ, W and equal-weight bases; conjugated systems
//! - [`sieve`]: detector routing, exact and sampled distributions, question counts

pub mod basis;
pub mod error;
pub mod matrix;
pub mod partition;
pub mod pauli;
pub mod sieve;
pub mod system;

/// Largest particle count accepted by constructors.
pub const MAX_N: usize = 10;

/// Largest `n` for question-count statistics, which need no `2^n × 2^n` matrices.
pub const MAX_STATS_N: usize = 20;

/// Largest `n` for which the full `2^n!` enumeration runs without a limit or force.
pub const MAX_FULL_ENUMERATION_N: usize = 3;

pub use basis::{
    catalog, equal_weight_basis, ghz_basis, standard_basis, transformed_system, w_basis, Basis, BasisKey, NamedUnitary,
    UnitaryName,
};
pub use error::{Result, SieveError};
pub use matrix::{
    commutator_norm, conjugate, gram_schmidt, is_projector, is_unitary, tensor, ComplexMatrix, ComplexScalar,
    StateVector, Tolerance,
};
pub use partition::{is_atomic, meet, partition_from_projector, Partition};
pub use pauli::{cereceda_system, embed, pauli, sigma_product_proposition, AxisAssignment, PauliAxis};
pub use sieve::{
    measure_state, naive_search, question_count_stats, route_basis_state, DetectorOutcome, MeasurementDistribution,
    QuestionCountRecord, StatsSummary, Strategy,
};
pub use system::{
    column_codes, enumerate_systems, minimality_certificate, permute_system, separates, standard_system,
    verify_requirements, ColumnCode, MinimalityReport, PropositionSystem, RequirementReport, SystemPermutation,
};
