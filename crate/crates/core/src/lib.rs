//! Simulation library for nonreciprocal electron transport in quantum-dot
//! circuits.
//!
//! The crate assembles linear Heisenberg-Langevin drift models from a
//! declarative circuit description, computes input-output scattering
//! matrices S = I - i sqrt(2/pi) K (-i w I - M)^{-1} C, solves the
//! directionality and impedance-matching conditions that make a pair of
//! primary dots behave as an isolator, and evaluates steady-state charge
//! currents (closed-form, Landauer-Buttiker, and polaron-dressed
//! electron-phonon regimes) by adaptive quadrature.
//!
//! Units: hbar = e = k_B = 1, Fermi energy at zero, every energy in units of
//! the primary lead damping. All types are immutable values after
//! construction and safe to share across threads.

pub mod circuit;
pub mod error;
pub mod phonon;
pub(crate) mod quadrature;
pub mod scattering;
pub mod transport;

pub use circuit::{
    adiabatic_reduce, assemble_drift, validate_circuit, CircuitSpec, Coupling, DotRole, DotSpec,
    DriftModel, FourDotParams, ReducedCircuit, ThreeDotParams, ValidationReport, Violation,
};
pub use error::ModelError;
pub use phonon::{
    correlation_b, correlation_exponent, generalized_transmission, polaron_currents,
    polaron_currents_with_grid, polaron_grid, polaron_reflection, reorganization_shift,
    CorrelationGrid, OhmicBath, PolaronParams, TransmissionTable,
};
pub use scattering::{
    four_dot_closed_form, four_dot_directionality, four_dot_matching, four_dot_reduced,
    isolation_report, scattering_matrix, solve_matching_numerically, three_dot_closed_form,
    three_dot_directionality, three_dot_matching, DirectionalCoupling, FourDotReduced,
    IsolationReport, LoopPhase, MatchResult, ScatteringMatrix,
};
pub use transport::{
    current_four_dot, current_three_dot, fermi_dirac, integrate, lb_current, lb_transmissions,
    CurrentResult, CurrentTerm, FourDotLeads, IntegralResult, LbCurrents, LbSystem, LeadCurrent,
    LeadState, QuadratureConfig, ThreeDotLeads,
};
