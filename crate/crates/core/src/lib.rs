//! Exact combinatorics of periodic orbits of the circle maps
//! `m_k(x) = kx (mod 1)`.
//!
//! Given a q-cycle σ, the library computes its descent number, symmetry
//! order, signature and transition matrix; solves the associated stationary
//! eigenproblem over the rationals; constructs every period-q orbit of `m_k`
//! realizing σ in exact arithmetic; evaluates the closed-form realization
//! counts; and cross-checks all of it against a brute-force enumeration of
//! the periodic orbits of `m_k`.
//!
//! No floating point is used anywhere: scalars are arbitrary-precision
//! rationals and matrix entries are arbitrary-precision integers, so every
//! result is bit-exact and reproducible.

pub mod cycles;
pub mod diagram;
pub mod error;
pub mod oracle;
pub mod realization;
pub mod spectral;
pub mod transition;

pub use cycles::{all_cycles, enumerate_types, CombinatorialType, Cycle, DEFAULT_TYPE_BOUND};
pub use error::{AdmissibilityClause, Error, Result};
pub use oracle::{
    classify, enumerate_orbits, verify_counts, CatalogRecord, OrbitCatalog, VerifyReport,
    DEFAULT_ORBIT_BUDGET,
};
pub use realization::{
    count_cycle_realizations, count_type_realizations, dep_to_fix, enumerate_admissible,
    fix_to_dep, realize_from_dep, realize_general, realize_minimal, rotated_type_realizations,
    DepVector, FixVector, Orbit, OrbitRecord,
};
pub use spectral::{stationary_by_iteration, stationary_vector, verify_eigen, Rational, RationalVector};
pub use transition::{pair_matrix, regularity_index, Signature, TransitionMatrix, WindingVector};
