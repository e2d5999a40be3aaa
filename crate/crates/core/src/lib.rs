//! Numerical kernels for the phase function κ(t) of the Riemann zeta
//! function on the critical line and the zeros it controls.

// Reference values keep every digit of the computation that produced them.
#![allow(clippy::excessive_precision)]

pub mod error;
pub mod kappa;
pub mod phase_es;
pub mod quad;
pub mod specfun;
pub mod theta;
pub mod zeta;
pub mod zeros;
pub mod zeta_prime;

pub use error::{Error, Result};
pub use specfun::{constants, digamma, log_gamma, trigamma, ComplexValue, NamedConstants};
pub use theta::{find_a_theta, theta_asymptotic, theta_series, AbscissaATheta, ThetaTriple};
pub use zeta::{line_jet, z_triple, zeta, zeta_jet, LineJet, ZTriple, ZetaJet};
pub use kappa::{
    kappa_d1, kappa_d1_detail, kappa_d1_of_xi, Anchor, AnchorKind, D1Route, KappaCheckpointTable, KappaD1,
    KappaEngine, KappaRoute, KappaSample, MonotonicityReport,
};
pub use zeros::{
    count_n00, find_a_kappa_gamma, find_eta, find_xi, find_xis, multiplicity_of, scan_sign_changes, CriticalZero,
    EtaPoint, SpecialAbscissae, MAX_XI_INDEX,
};
pub use zeta_prime::{
    count_in_rectangle, count_prime_splits, count_split_residual, expansion_residual, f_of, find_complex_zeros,
    find_trivial_zeros, gy_distance_check, kappa_d1_reconstructed, kappa_phase_diagnostic, ml_constant_a, phi_angle,
    phi_angle_arg, ExpansionResidual, FValue, GyCheck, MLConstants, PhaseDiagnostic, PrimeSplits, Reconstruction,
    ZeroKind, ZetaPrimeCatalog, ZetaPrimeZero, A_CONST, MAX_SEARCH_HEIGHT, MAX_TRIVIAL,
};
pub use phase_es::{e_d1, e_of, n_of, phase_report, s_of, sawtooth_series, EDerivative, PhaseReport};
