//! Brute-force reference calculations in a truncated Fock space.
//!
//! The oscillator is represented by density matrices on the first `N` number
//! states of a reference frequency. Propagation, fidelities and relative
//! entropies are computed with dense linear algebra, independently of the
//! Gaussian closed forms used elsewhere in the crate, and every reported
//! value carries dimension- and step-doubling error estimates.

mod eigen;
mod measures;
mod operators;
mod oracle;
mod propagate;
mod states;

pub use measures::{matrix_fidelity, relative_entropy, SUPPORT_FLOOR};
pub use operators::{build_operators, hamiltonian, momentum_squared, position_squared, FockBasis};
pub use oracle::{oracle_entropy_identity, oracle_fidelity, oracle_qstar, OracleOptions, OracleReport};
pub use propagate::{default_steps, propagate, propagated_energy, qstar_from_energy, SplitOperator, WEIGHT_FLOOR};
pub use states::{
    fock_state, gaussian_density, geometric_tail, required_dim, thermal_density, thermal_density_in, thermal_tail,
    TruncatedDensityMatrix, HERMITICITY_TOL, POSITIVITY_TOL, TAIL_LIMIT, TRACE_TOL,
};
