//! Quantum Fisher information for Gaussian states at the covariance-matrix
//! level, and the correlation measure built on it.
//!
//! All covariance matrices use quadrature ordering `r = (x_1, .., x_N, p_1, .., p_N)`
//! and the half-scale convention in which the vacuum is `I/2`, so the smallest
//! admissible symplectic eigenvalue is [`NU_MIN`] `= 1/2`.
//!
//! Module map:
//!
//! - [`symplectic`]: symplectic form, mode permutation, invariants, symplectic
//!   eigenvalues, partial transposition and the superoperator solve for `Φ`.
//! - [`states`]: symmetric two-mode states, squeezed thermal states, purity,
//!   negativity and the local channels used by the property tests.
//! - [`qfi`]: local quadratic generators and the two QFI evaluators.
//! - [`correlation`]: `Q²_A`, `P²_A` in closed and numerical form.
//! - [`metrology`]: interference term, total QFI and Cramér–Rao intervals.

#![forbid(unsafe_code)]

pub mod correlation;
pub mod error;
pub mod metrology;
pub mod qfi;
pub mod search;
pub mod states;
pub mod symplectic;

pub use correlation::{
    correlation_report, correlation_report_with, p2_closed, p2_numeric, p2_numeric_with, q2_closed,
    q2_numeric, q2_numeric_with, q2_sts, CorrelationReport, Extremum, MeasureOptions, KAPPA,
};
pub use error::{Error, Result};
pub use metrology::{
    interference_closed, interference_term, qcr_interval, ratio_profile, schwarz_check, total_qfi,
    MetrologyPoint,
};
pub use qfi::{
    build_generator, gamma_dot, lqfi, qfi, qfi_general, qfi_isotropic, Direction, Generator,
    GeneratorSpec,
};
pub use states::{
    apply_local_symplectic, apply_pure_loss, is_entangled, log_negativity, make_sts,
    make_two_mode_symmetric, pt_min_symplectic_eigenvalue, purity, EntanglementThreshold,
    GaussianState, Side, StsParams, SymmetricCmParams,
};
pub use symplectic::{
    mode_permutation, partial_transpose, solve_phi, symplectic_eigenvalues, symplectic_form,
    symplectic_invariants, CovMatrix, SymplecticInvariants, SymplecticSpectrum, NU_MIN,
};
