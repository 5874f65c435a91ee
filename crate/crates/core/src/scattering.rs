//! Frequency-domain scattering: the generic resolvent path, the closed-form
//! three- and four-dot expressions, the directionality and impedance-matching
//! solvers, and isolation metrics.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::circuit::{DriftModel, FourDotParams, ThreeDotParams};
use crate::error::ModelError;

/// Port-to-port scattering amplitudes at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringMatrix {
    pub omega: f64,
    pub entries: DMatrix<Complex64>,
    pub port_labels: Vec<String>,
    /// Lead damping of each port, kept for flux normalization.
    pub dampings: Vec<f64>,
}

impl ScatteringMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.entries[(j, k)]
    }

    /// |S[j][k]|^2.
    pub fn transmission(&self, j: usize, k: usize) -> f64 {
        self.entries[(j, k)].norm_sqr()
    }

    /// Flux-normalized matrix K^{-1/2} S K^{1/2}; unitary for any Hermitian
    /// circuit at real frequency, so every loss channel shows up as a port.
    pub fn flux_normalized(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut out = self.entries.clone();
        for j in 0..n {
            for k in 0..n {
                out[(j, k)] *= (self.dampings[k] / self.dampings[j]).sqrt();
            }
        }
        out
    }

    /// Largest entry of |S_hat^dagger S_hat - I| in the flux-normalized basis.
    pub fn unitarity_defect(&self) -> f64 {
        let s = self.flux_normalized();
        let product = s.adjoint() * &s;
        let n = self.dim();
        let mut defect: f64 = 0.0;
        for j in 0..n {
            for k in 0..n {
                let expect = if j == k {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                defect = defect.max((product[(j, k)] - expect).norm());
            }
        }
        defect
    }

    /// |det S|; equals one at real frequency by similarity to a unitary.
    pub fn determinant_modulus(&self) -> f64 {
        self.entries.clone().lu().determinant().norm()
    }
}

/// Scattering matrix of a drift model at real frequency omega:
/// S = I - i sqrt(2/pi) K (-i omega I - M)^{-1} C, evaluated by a dense LU
/// solve. With C = -i sqrt(2 pi) I this reduces to I - 2K (-i omega - M)^{-1}.
pub fn scattering_matrix(drift: &DriftModel, omega: f64) -> Result<ScatteringMatrix, ModelError> {
    let n = drift.dim();
    let m = drift.m();
    let mut a = DMatrix::<Complex64>::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            a[(j, k)] = -m[(j, k)];
        }
        a[(j, j)] -= Complex64::i() * omega;
    }
    let norm_a = one_norm(&a);
    let mut rhs = DMatrix::<Complex64>::zeros(n, n);
    for j in 0..n {
        rhs[(j, j)] = drift.c()[j];
    }
    let solved = a.clone().lu().solve(&rhs);
    let x = match solved {
        Some(x) if x.iter().all(|v| v.re.is_finite() && v.im.is_finite()) => x,
        _ => {
            return Err(ModelError::SingularResolvent {
                omega,
                condition: f64::INFINITY,
            })
        }
    };
    // A^{-1} = X diag(1/c); the C entries are a common constant, so the
    // condition estimate comes for free.
    let inv_scale = 1.0 / drift.c()[0].norm();
    let condition = norm_a * one_norm(&x) * inv_scale;
    if condition > 1e14 {
        return Err(ModelError::SingularResolvent { omega, condition });
    }
    let coeff = Complex64::i() * (2.0 / PI).sqrt();
    let mut s = DMatrix::<Complex64>::identity(n, n);
    for j in 0..n {
        for k in 0..n {
            s[(j, k)] -= coeff * drift.k()[j] * x[(j, k)];
        }
    }
    Ok(ScatteringMatrix {
        omega,
        entries: s,
        port_labels: drift.port_labels().to_vec(),
        dampings: drift.k().iter().cloned().collect(),
    })
}

fn one_norm(a: &DMatrix<Complex64>) -> f64 {
    let mut best: f64 = 0.0;
    for k in 0..a.ncols() {
        let col: f64 = (0..a.nrows()).map(|j| a[(j, k)].norm()).sum();
        best = best.max(col);
    }
    best
}

fn primary_pair(omega: f64, gamma: f64, entries: [Complex64; 4]) -> ScatteringMatrix {
    ScatteringMatrix {
        omega,
        entries: DMatrix::from_row_slice(2, 2, &entries),
        port_labels: vec!["d1".to_string(), "d2".to_string()],
        dampings: vec![gamma, gamma],
    }
}

/// Closed-form primary-block scattering matrix of the three-dot model with a
/// direct coupling g, valid to leading order in 1/kappa:
///
///   S11 = S22 = ([i(eps_d - w) + v]^2 - Gamma^2 - (v + ig)(v + ig*)) / Dnm
///   S12 = 2 Gamma (v + ig) / Dnm,  S21 = 2 Gamma (v + ig*) / Dnm
///
/// with v = lambda^2/kappa and Dnm = [i(eps_d - w) + v + Gamma]^2 -
/// (v + ig)(v + ig*). Setting g = i v makes S12 vanish identically.
pub fn three_dot_closed_form(
    params: &ThreeDotParams,
    g: Complex64,
    omega: f64,
) -> ScatteringMatrix {
    let nu = Complex64::new(params.dissipative_rate(), 0.0);
    let gamma = Complex64::new(params.gamma, 0.0);
    let detuning = Complex64::i() * (params.eps_d - omega);
    let forward = nu + Complex64::i() * g;
    let backward = nu + Complex64::i() * g.conj();
    let denom = (detuning + nu + gamma).powi(2) - forward * backward;
    let s11 = ((detuning + nu).powi(2) - gamma * gamma - forward * backward) / denom;
    let s12 = 2.0 * gamma * forward / denom;
    let s21 = 2.0 * gamma * backward / denom;
    primary_pair(omega, params.gamma, [s11, s12, s21, s11])
}

/// The reduced quantities entering the four-dot closed form.
#[derive(Debug, Clone, Copy)]
pub struct FourDotReduced {
    /// Shifted resonance Delta.
    pub resonance: f64,
    /// Total effective damping Sigma; Sigma = 2 Gamma is impedance matched.
    pub sigma: f64,
    /// Effective coupling acting on d1 (vanishes at directionality).
    pub phi_coupling: Complex64,
    /// Effective coupling acting on d2.
    pub psi_coupling: Complex64,
}

/// Delta, Sigma, Phi, Psi of the four-dot model at loop phase phi.
pub fn four_dot_reduced(params: &FourDotParams, phi: f64) -> FourDotReduced {
    let d1 = params.kappa * params.kappa + params.delta1 * params.delta1;
    let d2 = params.kappa * params.kappa + params.delta2 * params.delta2;
    let l1 = params.lambda1 * params.lambda1;
    let l2 = params.lambda2 * params.lambda2;
    let resonance = params.eps_d - l1 * params.delta1 / d1 - l2 * params.delta2 / d2;
    let sigma = params.gamma + l1 * params.kappa / d1 + l2 * params.kappa / d2;
    let pole1 = Complex64::new(params.kappa, params.delta1);
    let pole2 = Complex64::new(params.kappa, params.delta2);
    let phase = Complex64::from_polar(1.0, phi);
    let phi_coupling = l1 * phase / pole1 + l2 / pole2;
    let psi_coupling = l1 * phase.conj() / pole1 + l2 / pole2;
    FourDotReduced {
        resonance,
        sigma,
        phi_coupling,
        psi_coupling,
    }
}

/// Closed-form primary-block scattering matrix of the four-dot model:
///
///   S11 = S22 = ([i(Delta - w) + Sigma][i(Delta - w) + Sigma - 2 Gamma]
///                - Phi Psi) / Dnm
///   S12 = 2 Gamma Phi / Dnm,  S21 = 2 Gamma Psi / Dnm
///
/// with Dnm = [i(Delta - w) + Sigma]^2 - Phi Psi.
pub fn four_dot_closed_form(params: &FourDotParams, phi: f64, omega: f64) -> ScatteringMatrix {
    let red = four_dot_reduced(params, phi);
    let x = Complex64::i() * (red.resonance - omega) + red.sigma;
    let pp = red.phi_coupling * red.psi_coupling;
    let denom = x * x - pp;
    let s11 = (x * (x - 2.0 * params.gamma) - pp) / denom;
    let s12 = 2.0 * params.gamma * red.phi_coupling / denom;
    let s21 = 2.0 * params.gamma * red.psi_coupling / denom;
    primary_pair(omega, params.gamma, [s11, s12, s21, s11])
}

/// Direct coupling solving the three-dot directionality condition, plus the
/// reversed-isolation solution reached at the opposite loop phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionalCoupling {
    /// g = i lambda^2 / kappa: dot 2 driven by dot 1, not vice versa.
    pub g: Complex64,
    /// g = -i lambda^2 / kappa reverses the isolation direction.
    pub reversed: Complex64,
}

/// Three-dot directionality condition g = i lambda^2 / kappa.
pub fn three_dot_directionality(lambda: f64, kappa: f64) -> DirectionalCoupling {
    let nu = lambda * lambda / kappa;
    DirectionalCoupling {
        g: Complex64::new(0.0, nu),
        reversed: Complex64::new(0.0, -nu),
    }
}

/// Loop phase solving the four-dot directionality condition, with the
/// reversed-direction solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopPhase {
    pub phi: f64,
    pub reversed: f64,
}

/// Normalize an angle to (-pi, pi].
pub fn normalize_phase(phi: f64) -> f64 {
    let mut p = phi.rem_euclid(TAU);
    if p > PI {
        p -= TAU;
    }
    p
}

/// Four-dot directionality: the loop phase must satisfy
/// e^{i phi} = -(kappa + i delta1) lambda2^2 / ((kappa + i delta2) lambda1^2),
/// which only has a solution when the right-hand side has unit modulus.
pub fn four_dot_directionality(
    lambda1: f64,
    lambda2: f64,
    delta1: f64,
    delta2: f64,
    kappa: f64,
) -> Result<LoopPhase, ModelError> {
    if !(lambda1 > 0.0) || !(lambda2 > 0.0) || !(kappa > 0.0) {
        return Err(ModelError::param(
            "four_dot_directionality",
            "lambda1, lambda2 and kappa must be positive",
        ));
    }
    let required = -Complex64::new(kappa, delta1) * (lambda2 * lambda2)
        / (Complex64::new(kappa, delta2) * (lambda1 * lambda1));
    let modulus = required.norm();
    if (modulus - 1.0).abs() > 1e-12 {
        return Err(ModelError::NoPurePhaseSolution {
            required_modulus: modulus,
        });
    }
    let phi = normalize_phase(required.arg());
    Ok(LoopPhase {
        phi,
        reversed: normalize_phase(-phi),
    })
}

/// Impedance-matched primary damping of the three-dot model: Gamma =
/// lambda^2 / kappa.
pub fn three_dot_matching(lambda: f64, kappa: f64) -> f64 {
    lambda * lambda / kappa
}

/// Impedance-matched primary damping of the four-dot model: Gamma =
/// lambda1^2 kappa/(kappa^2 + delta1^2) + lambda2^2 kappa/(kappa^2 + delta2^2).
pub fn four_dot_matching(lambda1: f64, lambda2: f64, delta1: f64, delta2: f64, kappa: f64) -> f64 {
    lambda1 * lambda1 * kappa / (kappa * kappa + delta1 * delta1)
        + lambda2 * lambda2 * kappa / (kappa * kappa + delta2 * delta2)
}

/// Result of the numerical impedance-matching search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchResult {
    /// Damping minimizing the on-resonance reflection magnitude.
    pub gamma: f64,
    /// Reflection magnitude at the minimizer.
    pub objective: f64,
    /// Set when no interior minimum was found (flat or edge-hugging
    /// objective), in which case `gamma` reports the best boundary value.
    pub boundary: bool,
}

/// Bracket used by [`solve_matching_numerically`], in Gamma units.
pub const MATCHING_BRACKET: (f64, f64) = (1e-6, 1e2);

/// Golden-section search for the damping that minimizes an on-resonance
/// reflection magnitude |S_pp(resonance)| supplied as a function of Gamma.
/// Searches the fixed bracket [1e-6, 1e2] to an abscissa tolerance of 1e-10.
pub fn solve_matching_numerically<F: Fn(f64) -> f64>(reflection: F) -> MatchResult {
    let (a0, b0) = MATCHING_BRACKET;
    let tol = 1e-10;
    let invphi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (a0, b0);
    let mut x1 = b - invphi * (b - a);
    let mut x2 = a + invphi * (b - a);
    let mut f1 = reflection(x1);
    let mut f2 = reflection(x2);
    while (b - a) > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = reflection(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = reflection(x2);
        }
    }
    let gamma = 0.5 * (a + b);
    let value = reflection(gamma);
    let f_lo = reflection(a0);
    let f_hi = reflection(b0);
    let slack = 1e-12 * f_lo.abs().max(f_hi.abs()).max(1.0);
    let boundary = gamma - a0 < 10.0 * tol
        || b0 - gamma < 10.0 * tol
        || f_lo <= value + slack
        || f_hi <= value + slack;
    MatchResult {
        gamma,
        objective: value,
        boundary,
    }
}

/// Forward/reverse transmission and reflection summary between two ports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolationReport {
    /// |S[j][k]|^2.
    pub forward_t: f64,
    /// |S[k][j]|^2.
    pub reverse_t: f64,
    /// (|S[j][j]|^2, |S[k][k]|^2).
    pub reflections: (f64, f64),
    /// forward_t / reverse_t, +infinity once reverse_t drops below 1e-30.
    pub isolation_ratio: f64,
}

/// Floor under the reverse transmission before the ratio is formed.
pub const REVERSE_FLOOR: f64 = 1e-30;

pub fn isolation_report(s: &ScatteringMatrix, j: usize, k: usize) -> IsolationReport {
    assert!(j != k && j < s.dim() && k < s.dim(), "ports must be distinct");
    let forward_t = s.transmission(j, k);
    let reverse_t = s.transmission(k, j);
    let isolation_ratio = if reverse_t < REVERSE_FLOOR {
        f64::INFINITY
    } else {
        forward_t / reverse_t
    };
    IsolationReport {
        forward_t,
        reverse_t,
        reflections: (s.transmission(j, j), s.transmission(k, k)),
        isolation_ratio,
    }
}
