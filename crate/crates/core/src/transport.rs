//! Steady-state charge currents.
//!
//! Two routes are provided and cross-checked in the tests: closed-form
//! integral expressions for the optimal three- and four-dot configurations
//! (exact in the large auxiliary-damping limit), and generic multiterminal
//! Landauer-Buttiker currents built from retarded Green's functions. Both
//! share one adaptive quadrature engine.
//!
//! Sign convention: positive current flows out of a lead into the dots.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::circuit::{CircuitSpec, FourDotParams, ThreeDotParams};
use crate::error::ModelError;
use crate::quadrature;

/// Chemical potential and temperature of one reservoir.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadState {
    pub label: String,
    pub mu: f64,
    pub temperature: f64,
}

impl LeadState {
    pub fn new(label: impl Into<String>, mu: f64, temperature: f64) -> Result<Self, ModelError> {
        if !(temperature > 0.0) || !temperature.is_finite() {
            return Err(ModelError::param(
                "temperature",
                format!("must be strictly positive, got {temperature}"),
            ));
        }
        if !mu.is_finite() {
            return Err(ModelError::param("mu", "must be finite"));
        }
        Ok(LeadState {
            label: label.into(),
            mu,
            temperature,
        })
    }
}

/// Fermi-Dirac occupation 1/(exp((e - mu)/T) + 1), overflow-safe.
pub fn fermi_dirac(energy: f64, lead: &LeadState) -> f64 {
    let x = ((energy - lead.mu) / lead.temperature).clamp(-700.0, 700.0);
    1.0 / (x.exp() + 1.0)
}

/// Tolerances and window padding for the quadrature engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Fermi-window padding, in units of each lead temperature.
    pub window_pad_t: f64,
    /// Resonance-window padding, in units of each kernel width.
    pub window_pad_g: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            window_pad_t: 50.0,
            window_pad_g: 50.0,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(ModelError::param("tolerances", "must be positive"));
        }
        if self.window_pad_t < 10.0 || self.window_pad_g < 10.0 {
            return Err(ModelError::param("window pads", "must be at least 10"));
        }
        Ok(())
    }
}

/// Value and error estimate of one window integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub abs_error: f64,
    pub converged: bool,
    pub subdivisions: usize,
}

/// Integration window: the hull of the padded Fermi windows of every lead
/// and the padded resonance windows (center, width) of the kernel, with the
/// natural breakpoints (chemical potentials, centers, center +- width) kept
/// as initial subdivision edges.
pub(crate) fn window_and_breakpoints(
    leads: &[LeadState],
    centers: &[f64],
    widths: &[f64],
    cfg: &QuadratureConfig,
) -> (f64, f64, Vec<f64>) {
    assert_eq!(
        centers.len(),
        widths.len(),
        "one width per resonance center"
    );
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut breaks = Vec::new();
    for lead in leads {
        lo = lo.min(lead.mu - cfg.window_pad_t * lead.temperature);
        hi = hi.max(lead.mu + cfg.window_pad_t * lead.temperature);
        breaks.push(lead.mu);
    }
    for (&c, &w) in centers.iter().zip(widths.iter()) {
        lo = lo.min(c - cfg.window_pad_g * w);
        hi = hi.max(c + cfg.window_pad_g * w);
        breaks.push(c);
        breaks.push(c - w);
        breaks.push(c + w);
        breaks.push(c - 5.0 * w);
        breaks.push(c + 5.0 * w);
    }
    if !lo.is_finite() || !hi.is_finite() {
        (0.0, 0.0, breaks)
    } else {
        (lo, hi, breaks)
    }
}

/// Integrate `kernel` over the union window determined by the leads and the
/// resonance centers/widths. Non-convergence is flagged, never fatal; the
/// partial value is still returned.
pub fn integrate<F: Fn(f64) -> f64>(
    kernel: F,
    leads: &[LeadState],
    centers: &[f64],
    widths: &[f64],
    cfg: &QuadratureConfig,
) -> IntegralResult {
    let (lo, hi, breaks) = window_and_breakpoints(leads, centers, widths, cfg);
    let raw = quadrature::adaptive(
        &kernel,
        lo,
        hi,
        &breaks,
        cfg.rel_tol,
        cfg.abs_tol,
        cfg.max_subdivisions,
    );
    IntegralResult {
        value: raw.value,
        abs_error: raw.abs_error,
        converged: raw.converged,
        subdivisions: raw.subdivisions,
    }
}

/// One named integral contribution to a current.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentTerm {
    pub label: String,
    pub value: f64,
    pub abs_error: f64,
    pub converged: bool,
}

/// Steady-state charge currents of a two-primary-lead configuration, with the
/// per-integral breakdown of the defining expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentResult {
    /// Current out of the left lead.
    pub j_left: f64,
    /// Current out of the right lead.
    pub j_right: f64,
    /// Current out of the auxiliary reservoir(s), from charge conservation.
    pub j_aux: f64,
    pub terms: Vec<CurrentTerm>,
    pub quadrature_error: f64,
    pub converged: bool,
}

impl CurrentResult {
    pub(crate) fn from_terms(left: Vec<CurrentTerm>, right: Vec<CurrentTerm>) -> Self {
        let j_left = left.iter().map(|t| t.value).sum();
        let j_right = right.iter().map(|t| t.value).sum();
        let mut terms = left;
        terms.extend(right);
        let quadrature_error = terms.iter().map(|t| t.abs_error).sum();
        let converged = terms.iter().all(|t| t.converged);
        CurrentResult {
            j_left,
            j_right,
            j_aux: -j_left - j_right,
            terms,
            quadrature_error,
            converged,
        }
    }
}

/// Reservoirs of the three-dot model.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeDotLeads {
    pub left: LeadState,
    pub right: LeadState,
    pub aux: LeadState,
}

/// Steady-state currents of the three-dot model under the directionality
/// condition g = i lambda^2/kappa, for arbitrary alpha = lambda^2/(kappa
/// Gamma):
///
///   J_L = int de/2pi 4 Gamma^2 alpha / (Gamma^2 (1+alpha)^2 + (eps_d - e)^2)
///         [nL - nA]
///   J_R = (same kernel) [nR - nA]
///         - int de/2pi 16 Gamma^4 alpha^2 / (...)^2 [nL - nA]
///
/// At alpha = 1 the kernels reduce to the matched single-dot transmission
/// 4 Gamma^2/(4 Gamma^2 + (eps_d - e)^2) and its square.
pub fn current_three_dot(
    params: &ThreeDotParams,
    leads: &ThreeDotLeads,
    cfg: &QuadratureConfig,
) -> Result<CurrentResult, ModelError> {
    cfg.validate()?;
    if !(params.lambda > 0.0) || !(params.kappa > 0.0) || !(params.gamma > 0.0) {
        return Err(ModelError::param(
            "three_dot",
            "lambda, kappa, gamma must be positive",
        ));
    }
    let alpha = params.alpha();
    let gamma = params.gamma;
    let eps_d = params.eps_d;
    let half_width = gamma * (1.0 + alpha);
    let lorentz = move |e: f64| {
        let x = eps_d - e;
        4.0 * gamma * gamma * alpha / (half_width * half_width + x * x)
    };
    let lorentz_sq = move |e: f64| {
        let l = lorentz(e);
        l * l
    };
    let centers = [eps_d];
    let widths = [half_width];

    let pair_term = |label: &str,
                     kernel: &dyn Fn(f64) -> f64,
                     sign: f64,
                     hot: &LeadState,
                     cold: &LeadState| {
        let window_leads = [hot.clone(), cold.clone()];
        let r = integrate(
            |e| sign * kernel(e) * (fermi_dirac(e, hot) - fermi_dirac(e, cold)) / TAU,
            &window_leads,
            &centers,
            &widths,
            cfg,
        );
        CurrentTerm {
            label: label.to_string(),
            value: r.value,
            abs_error: r.abs_error,
            converged: r.converged,
        }
    };

    let left = vec![pair_term("JL: T(e)[nL-nA]", &lorentz, 1.0, &leads.left, &leads.aux)];
    let right = vec![
        pair_term("JR: T(e)[nR-nA]", &lorentz, 1.0, &leads.right, &leads.aux),
        pair_term("JR: -T^2(e)[nL-nA]", &lorentz_sq, -1.0, &leads.left, &leads.aux),
    ];
    Ok(CurrentResult::from_terms(left, right))
}

/// Reservoirs of the four-dot model.
#[derive(Debug, Clone, PartialEq)]
pub struct FourDotLeads {
    pub left: LeadState,
    pub right: LeadState,
    pub up: LeadState,
    pub down: LeadState,
}

/// Steady-state currents of the symmetric four-dot model (lambda1 = lambda2,
/// delta1 = -delta2 = delta) with directionality and impedance matching
/// Gamma = 2 lambda^2 kappa/(kappa^2 + delta^2) imposed. The breakdown keeps
/// every term of the defining expressions, including the nU - nD cross term.
pub fn current_four_dot(
    params: &FourDotParams,
    leads: &FourDotLeads,
    cfg: &QuadratureConfig,
) -> Result<CurrentResult, ModelError> {
    cfg.validate()?;
    if (params.lambda1 - params.lambda2).abs() > 1e-12 * params.lambda1.abs()
        || (params.delta1 + params.delta2).abs() > 1e-12 * params.delta1.abs().max(1.0)
    {
        return Err(ModelError::param(
            "four_dot",
            "closed-form currents require lambda1 = lambda2 and delta1 = -delta2",
        ));
    }
    let (lambda, delta, kappa, gamma) = (
        params.lambda1,
        params.delta1,
        params.kappa,
        params.gamma,
    );
    let matched = 2.0 * lambda * lambda * kappa / (kappa * kappa + delta * delta);
    if (gamma - matched).abs() > 1e-9 * matched {
        return Err(ModelError::param(
            "four_dot",
            format!("gamma = {gamma} violates the matching condition gamma = {matched}"),
        ));
    }
    let eps_d = params.eps_d;
    let q = delta * delta / (kappa * kappa + delta * delta);
    let lorentz = move |e: f64| {
        let x = eps_d - e;
        2.0 * gamma * gamma / (4.0 * gamma * gamma + x * x)
    };
    let lorentz_sq = move |e: f64| {
        let x = eps_d - e;
        let d = 4.0 * gamma * gamma + x * x;
        4.0 * gamma.powi(4) / (d * d)
    };
    let odd = move |e: f64| {
        let x = eps_d - e;
        let d = 4.0 * gamma * gamma + x * x;
        x / (d * d)
    };
    let odd_scale = 4.0 * gamma.powi(3) * delta * kappa / (kappa * kappa + delta * delta);
    let centers = [eps_d];
    let widths = [2.0 * gamma];

    let pair_term = |label: &str,
                     kernel: &dyn Fn(f64) -> f64,
                     scale: f64,
                     hot: &LeadState,
                     cold: &LeadState| {
        let window_leads = [hot.clone(), cold.clone()];
        let r = integrate(
            |e| scale * kernel(e) * (fermi_dirac(e, hot) - fermi_dirac(e, cold)) / TAU,
            &window_leads,
            &centers,
            &widths,
            cfg,
        );
        CurrentTerm {
            label: label.to_string(),
            value: r.value,
            abs_error: r.abs_error,
            converged: r.converged,
        }
    };

    let left = vec![
        pair_term("JL: T(e)[nL-nU]", &lorentz, 1.0, &leads.left, &leads.up),
        pair_term("JL: T(e)[nL-nD]", &lorentz, 1.0, &leads.left, &leads.down),
    ];
    let right = vec![
        pair_term("JR: T(e)[nR-nU]", &lorentz, 1.0, &leads.right, &leads.up),
        pair_term("JR: T(e)[nR-nD]", &lorentz, 1.0, &leads.right, &leads.down),
        pair_term("JR: -q T^2(e)[nL-nU]", &lorentz_sq, -q, &leads.left, &leads.up),
        pair_term("JR: -q T^2(e)[nL-nD]", &lorentz_sq, -q, &leads.left, &leads.down),
        pair_term("JR: cross (nU-nD)", &odd, -odd_scale, &leads.up, &leads.down),
    ];
    Ok(CurrentResult::from_terms(left, right))
}

/// Landauer-Buttiker view of a circuit: coherent Hamiltonian plus per-dot
/// lead broadenings.
///
/// Transmissions are `T[p][q] = Tr[Gam_p G^r Gam_q G^a]` with the retarded
/// Green's function `(G^r)^{-1} = e I - H + i sum_v K_v` built from the
/// Heisenberg-Langevin damping rates K_v and the broadening matrices
/// `Gam_v = 2 K_v` (the wide-band level width is twice the amplitude damping
/// rate). `T[p][q]` is the transmission probability from lead q into lead p,
/// normalized so a matched two-dot chain peaks at one.
#[derive(Debug, Clone, PartialEq)]
pub struct LbSystem {
    hamiltonian: DMatrix<Complex64>,
    dampings: Vec<f64>,
    labels: Vec<String>,
}

impl LbSystem {
    pub fn from_spec(spec: &CircuitSpec) -> Result<Self, ModelError> {
        let report = crate::circuit::validate_circuit(spec);
        if !report.is_ok() {
            return Err(ModelError::InvalidCircuit(report));
        }
        Ok(LbSystem {
            hamiltonian: spec.coherent_hamiltonian(),
            dampings: spec.dampings(),
            labels: spec.port_labels(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dampings.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Retarded Green's function at real energy, by dense LU solve.
    fn green(&self, energy: f64) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut a = self.hamiltonian.map(|v| -v);
        for j in 0..n {
            a[(j, j)] += Complex64::new(energy, self.dampings[j]);
        }
        a.lu()
            .solve(&DMatrix::<Complex64>::identity(n, n))
            .expect("G^r is nonsingular at real energy for positive dampings")
    }

    /// All pairwise transmissions at one energy; entry (p, q) is the
    /// transmission from lead q into lead p.
    pub fn transmissions(&self, energy: f64) -> DMatrix<f64> {
        let g = self.green(energy);
        let n = self.dim();
        let mut t = DMatrix::<f64>::zeros(n, n);
        for p in 0..n {
            for q in 0..n {
                t[(p, q)] = 4.0 * self.dampings[p] * self.dampings[q] * g[(p, q)].norm_sqr();
            }
        }
        t
    }

    /// Transmission from lead q into lead p at one energy.
    pub fn transmission(&self, energy: f64, p: usize, q: usize) -> f64 {
        let n = self.dim();
        let mut a = self.hamiltonian.map(|v| -v);
        for j in 0..n {
            a[(j, j)] += Complex64::new(energy, self.dampings[j]);
        }
        let mut rhs = DMatrix::<Complex64>::zeros(n, 1);
        rhs[(q, 0)] = Complex64::new(1.0, 0.0);
        let col = a.lu().solve(&rhs).expect("G^r is nonsingular");
        4.0 * self.dampings[p] * self.dampings[q] * col[(p, 0)].norm_sqr()
    }
}

/// All pairwise Landauer-Buttiker transmissions of a circuit at one energy.
pub fn lb_transmissions(spec: &CircuitSpec, energy: f64) -> Result<DMatrix<f64>, ModelError> {
    Ok(LbSystem::from_spec(spec)?.transmissions(energy))
}

/// Current out of one lead, with its per-pair breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadCurrent {
    pub label: String,
    pub value: f64,
    pub terms: Vec<CurrentTerm>,
}

/// Multiterminal Landauer-Buttiker currents.
#[derive(Debug, Clone, PartialEq)]
pub struct LbCurrents {
    pub leads: Vec<LeadCurrent>,
    pub quadrature_error: f64,
    pub converged: bool,
}

impl LbCurrents {
    pub fn current(&self, label: &str) -> Option<f64> {
        self.leads
            .iter()
            .find(|l| l.label == label)
            .map(|l| l.value)
    }

    /// Sum of all lead currents; zero within quadrature tolerance.
    pub fn total(&self) -> f64 {
        self.leads.iter().map(|l| l.value).sum()
    }
}

/// Multiterminal currents J_v = sum_{v' != v} int de/2pi T[v][v'](e)
/// (n_v - n_v'), one reservoir per dot, given in port order.
pub fn lb_current(
    spec: &CircuitSpec,
    leads: &[LeadState],
    cfg: &QuadratureConfig,
) -> Result<LbCurrents, ModelError> {
    cfg.validate()?;
    let system = LbSystem::from_spec(spec)?;
    let n = system.dim();
    if leads.len() != n {
        return Err(ModelError::param(
            "leads",
            format!("expected one lead per dot ({n}), got {}", leads.len()),
        ));
    }
    // Resonance windows come from the primary-scale structure; the huge
    // auxiliary broadenings are smooth background, and their reservoirs are
    // covered through their Fermi windows.
    let min_damping = system
        .dampings
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let centers: Vec<f64> = (0..n).map(|j| system.hamiltonian[(j, j)].re).collect();
    let widths: Vec<f64> = system
        .dampings
        .iter()
        .map(|&k| k.min(10.0 * min_damping))
        .collect();

    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        let mut terms = Vec::with_capacity(n - 1);
        for vp in 0..n {
            if vp == v {
                continue;
            }
            let window_leads = [leads[v].clone(), leads[vp].clone()];
            let r = integrate(
                |e| {
                    system.transmission(e, v, vp)
                        * (fermi_dirac(e, &leads[v]) - fermi_dirac(e, &leads[vp]))
                        / TAU
                },
                &window_leads,
                &centers,
                &widths,
                cfg,
            );
            terms.push(CurrentTerm {
                label: format!("{}<-{}", leads[v].label, leads[vp].label),
                value: r.value,
                abs_error: r.abs_error,
                converged: r.converged,
            });
        }
        out.push(LeadCurrent {
            label: leads[v].label.clone(),
            value: terms.iter().map(|t| t.value).sum(),
            terms,
        });
    }
    let quadrature_error = out
        .iter()
        .flat_map(|l| l.terms.iter())
        .map(|t| t.abs_error)
        .sum();
    let converged = out
        .iter()
        .flat_map(|l| l.terms.iter())
        .all(|t| t.converged);
    Ok(LbCurrents {
        leads: out,
        quadrature_error,
        converged,
    })
}
