//! Electron-phonon extension of the three-dot model in the polaron frame:
//! Ohmic bath, phonon correlation function B(tau), the generalized
//! transmission it induces, polaron-dressed currents, and the surviving
//! reflection element.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::ModelError;
use crate::quadrature::{self, GL8_W, GL8_X};
use crate::transport::{
    fermi_dirac, integrate, window_and_breakpoints, CurrentResult, CurrentTerm, LeadState,
    QuadratureConfig, ThreeDotLeads,
};

/// Ohmic phonon bath with exponential cutoff: I(w) = pi nu w e^{-w/w_c}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OhmicBath {
    pub nu: f64,
    pub omega_c: f64,
    pub temperature: f64,
}

impl OhmicBath {
    pub fn new(nu: f64, omega_c: f64, temperature: f64) -> Result<Self, ModelError> {
        if !(nu >= 0.0) || !nu.is_finite() {
            return Err(ModelError::param("nu", "must be finite and >= 0"));
        }
        if !(omega_c > 0.0) || !omega_c.is_finite() {
            return Err(ModelError::param("omega_c", "must be positive"));
        }
        if !(temperature > 0.0) || !temperature.is_finite() {
            return Err(ModelError::param("temperature", "must be positive"));
        }
        Ok(OhmicBath {
            nu,
            omega_c,
            temperature,
        })
    }

    /// Spectral density I(w) = pi nu w e^{-w/w_c} for w >= 0.
    pub fn spectral_density(&self, omega: f64) -> f64 {
        std::f64::consts::PI * self.nu * omega * (-omega / self.omega_c).exp()
    }
}

/// Reorganization shift Delta = int dw I(w)/(pi w) = nu w_c for the Ohmic
/// spectrum (closed form of the defining integral).
pub fn reorganization_shift(bath: &OhmicBath) -> f64 {
    bath.nu * bath.omega_c
}

/// Three-dot parameters in the polaron frame: the on-site energy is
/// renormalized to eps_d - Delta while lambda, kappa, Gamma are untouched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolaronParams {
    /// Renormalized on-site energy (eps-tilde).
    pub renorm_onsite: f64,
    /// Reorganization shift Delta = nu w_c.
    pub shift: f64,
    pub lambda: f64,
    pub kappa: f64,
    pub gamma: f64,
}

impl PolaronParams {
    /// From the bare on-site energy: eps-tilde = eps_d - Delta.
    pub fn from_bare(eps_d: f64, bath: &OhmicBath, lambda: f64, kappa: f64, gamma: f64) -> Self {
        let shift = reorganization_shift(bath);
        PolaronParams {
            renorm_onsite: eps_d - shift,
            shift,
            lambda,
            kappa,
            gamma,
        }
    }

    /// Pin the renormalized energy directly (figure captions quote
    /// eps-tilde, not the bare value).
    pub fn with_renormalized(
        eps_tilde: f64,
        bath: &OhmicBath,
        lambda: f64,
        kappa: f64,
        gamma: f64,
    ) -> Self {
        PolaronParams {
            renorm_onsite: eps_tilde,
            shift: reorganization_shift(bath),
            lambda,
            kappa,
            gamma,
        }
    }

    pub fn dissipative_rate(&self) -> f64 {
        self.lambda * self.lambda / self.kappa
    }

    /// Diagnostics for the approximations baked into the polaron treatment.
    pub fn approximation_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        if self.shift > self.kappa / 10.0 {
            warnings.push(format!(
                "reorganization shift {} exceeds kappa/10 = {}; dropping it from the \
                 auxiliary damping is no longer safe",
                self.shift,
                self.kappa / 10.0
            ));
        }
        warnings
    }
}

/// Exponent phi(tau) of the phonon correlation function B(tau) = e^{-phi}:
///
///   phi(tau) = int dw I(w)/(pi w^2) [coth(w/2T)(1 - cos w tau) + i sin w tau]
///
/// The zero-temperature piece and the imaginary part have closed forms for
/// the Ohmic spectrum (log and arctangent); only the thermal remainder is
/// integrated, after rewriting it with its finite w -> 0 limit nu T tau^2.
pub fn correlation_exponent(bath: &OhmicBath, tau: f64) -> Complex64 {
    assert!(tau >= 0.0, "tau must be nonnegative");
    if bath.nu == 0.0 || tau == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let wc_tau = bath.omega_c * tau;
    let zero_t = 0.5 * (1.0 + wc_tau * wc_tau).ln();
    let imag = wc_tau.atan();
    let thermal = thermal_exponent(bath, tau);
    Complex64::new(bath.nu * (zero_t + thermal), bath.nu * imag)
}

/// Thermal part of Re phi / nu:
/// int_0^inf dw e^{-w/w_c} 2 n_B(w) (1 - cos w tau)/w, with the integrand
/// evaluated as 4 e^{-w/w_c} sin^2(w tau/2) / (w expm1(w/T)).
fn thermal_exponent(bath: &OhmicBath, tau: f64) -> f64 {
    let t = bath.temperature;
    let w_hi = 45.0 * t;
    let floor = 1e-8 * t;
    let f = move |w: f64| {
        if w < floor {
            t * tau * tau
        } else {
            let s = (0.5 * w * tau).sin();
            (-w / bath.omega_c).exp() * 4.0 * s * s / (w * (w / t).exp_m1())
        }
    };
    // Seed the subdivision at the oscillation scale 2 pi/tau.
    let cycles = (w_hi * tau / TAU).ceil() as usize;
    let n0 = cycles.clamp(8, 2048);
    let breaks: Vec<f64> = (1..n0).map(|k| w_hi * k as f64 / n0 as f64).collect();
    let raw = quadrature::adaptive(&f, 0.0, w_hi, &breaks, 1e-12, 1e-14, 4000);
    raw.value
}

/// Tabulated phonon correlation function on a composite Gauss-Legendre grid
/// over [0, tau_max]; immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationGrid {
    pub tau_nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub phi_values: Vec<Complex64>,
    pub b_values: Vec<Complex64>,
    pub tau_max: f64,
}

impl CorrelationGrid {
    pub fn len(&self) -> usize {
        self.tau_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau_nodes.is_empty()
    }
}

/// Tabulate B(tau) = e^{-phi(tau)} on at least `n_nodes` panel Gauss points
/// over [0, tau_max]. Panel edges are geometric near zero and uniform beyond,
/// so the short-time structure of B is resolved without starving the tail.
pub fn correlation_b(
    bath: &OhmicBath,
    tau_max: f64,
    n_nodes: usize,
) -> Result<CorrelationGrid, ModelError> {
    if !(tau_max > 0.0) || !tau_max.is_finite() {
        return Err(ModelError::param("tau_max", "must be positive"));
    }
    if n_nodes < 64 {
        return Err(ModelError::param("n_nodes", "need at least 64 nodes"));
    }
    let uniform_panels = (n_nodes.div_ceil(8)).max(9) - 8;
    let h = tau_max / uniform_panels as f64;
    let mut edges = Vec::with_capacity(uniform_panels + 9);
    edges.push(0.0);
    for k in (0..8).rev() {
        edges.push(h / (1 << k) as f64 * 0.5);
    }
    for k in 1..=uniform_panels {
        edges.push(h * k as f64);
    }

    let count = (edges.len() - 1) * 8;
    let mut tau_nodes = Vec::with_capacity(count);
    let mut weights = Vec::with_capacity(count);
    for w in edges.windows(2) {
        let center = 0.5 * (w[0] + w[1]);
        let half = 0.5 * (w[1] - w[0]);
        for i in (0..4).rev() {
            tau_nodes.push(center - half * GL8_X[i]);
            weights.push(half * GL8_W[i]);
        }
        for i in 0..4 {
            tau_nodes.push(center + half * GL8_X[i]);
            weights.push(half * GL8_W[i]);
        }
    }
    let phi_values: Vec<Complex64> = tau_nodes
        .iter()
        .map(|&tau| correlation_exponent(bath, tau))
        .collect();
    let b_values: Vec<Complex64> = phi_values.iter().map(|phi| (-phi).exp()).collect();
    Ok(CorrelationGrid {
        tau_nodes,
        weights,
        phi_values,
        b_values,
        tau_max,
    })
}

/// Generalized transmission
/// G(e) = Re int_0^inf dtau e^{-(2 Gamma + i(eps-tilde - e)) tau} B(tau),
/// evaluated by composite Gauss quadrature on the tabulated grid. The
/// truncation error is bounded by e^{-2 Gamma tau_max}/(2 Gamma).
pub fn generalized_transmission(
    params: &PolaronParams,
    grid: &CorrelationGrid,
    energy: f64,
) -> f64 {
    TransmissionTable::new(params, grid).evaluate(energy)
}

/// Per-(grid, params) coefficients of the G(e) quadrature, so a frequency
/// sweep costs one sin/cos pair per node: with c_i = w_i e^{-2 Gamma tau_i}
/// e^{-i eps-tilde tau_i} B_i,
///   G(e) = Re sum_i c_i e^{+i e tau_i}.
pub struct TransmissionTable {
    tau: Vec<f64>,
    coeff_re: Vec<f64>,
    coeff_im: Vec<f64>,
}

impl TransmissionTable {
    pub fn new(params: &PolaronParams, grid: &CorrelationGrid) -> Self {
        let two_gamma = 2.0 * params.gamma;
        let n = grid.len();
        let mut coeff_re = Vec::with_capacity(n);
        let mut coeff_im = Vec::with_capacity(n);
        for ((&tau, &w), b) in grid
            .tau_nodes
            .iter()
            .zip(grid.weights.iter())
            .zip(grid.b_values.iter())
        {
            let c = w
                * (-two_gamma * tau).exp()
                * Complex64::from_polar(1.0, -params.renorm_onsite * tau)
                * b;
            coeff_re.push(c.re);
            coeff_im.push(c.im);
        }
        TransmissionTable {
            tau: grid.tau_nodes.clone(),
            coeff_re,
            coeff_im,
        }
    }

    pub fn evaluate(&self, energy: f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.tau.len() {
            let (s, c) = (energy * self.tau[i]).sin_cos();
            // Re[(cr + i ci)(cos + i sin)] = cr cos - ci sin
            acc += self.coeff_re[i] * c - self.coeff_im[i] * s;
        }
        acc
    }
}

/// Node budget resolving oscillations up to |e - eps-tilde| = x_max over
/// [0, tau_max]: at most three radians of phase per 8-point panel.
pub(crate) fn grid_nodes_for(tau_max: f64, x_max: f64) -> usize {
    (8 * ((tau_max * x_max / 3.0).ceil() as usize + 1)).max(512)
}

/// Polaron-dressed steady-state currents of the matched, directional
/// three-dot model:
///
///   J_L = 2 Gamma int de/2pi G(e) [nL - nA]
///   J_R = 2 Gamma int de/2pi G(e) [nR - nA]
///         - 4 Gamma^2 int de/2pi G(e)^2 [nL - nA]
///
/// With nu = 0 (B = 1) these reduce to the noninteracting matched
/// expressions; that path is exercised through the very same quadrature.
pub fn polaron_currents(
    params: &PolaronParams,
    bath: &OhmicBath,
    leads: &ThreeDotLeads,
    cfg: &QuadratureConfig,
) -> Result<CurrentResult, ModelError> {
    let grid = polaron_grid(params, bath, leads, cfg)?;
    polaron_currents_with_grid(params, &grid, leads, cfg)
}

/// Correlation grid sized for the integration window of a given lead
/// configuration; reuse it across a bias sweep through
/// [`polaron_currents_with_grid`].
pub fn polaron_grid(
    params: &PolaronParams,
    bath: &OhmicBath,
    leads: &ThreeDotLeads,
    cfg: &QuadratureConfig,
) -> Result<CorrelationGrid, ModelError> {
    let all_leads = [leads.left.clone(), leads.right.clone(), leads.aux.clone()];
    let centers = [params.renorm_onsite];
    let widths = [2.0 * params.gamma];
    let (lo, hi, _) = window_and_breakpoints(&all_leads, &centers, &widths, cfg);
    let x_max = (lo - params.renorm_onsite)
        .abs()
        .max((hi - params.renorm_onsite).abs())
        .max(1.0);
    let tau_max = 30.0 / (2.0 * params.gamma);
    correlation_b(bath, tau_max, grid_nodes_for(tau_max, x_max))
}

/// [`polaron_currents`] with a caller-provided correlation grid. The grid
/// must span [0, 30/(2 Gamma)] and resolve the oscillations of the intended
/// integration window.
pub fn polaron_currents_with_grid(
    params: &PolaronParams,
    grid: &CorrelationGrid,
    leads: &ThreeDotLeads,
    cfg: &QuadratureConfig,
) -> Result<CurrentResult, ModelError> {
    cfg.validate()?;
    let matched = params.dissipative_rate();
    if (params.gamma - matched).abs() > 1e-9 * matched.max(1e-300) {
        return Err(ModelError::param(
            "gamma",
            format!(
                "polaron currents assume impedance matching; gamma = {} but lambda^2/kappa = {}",
                params.gamma, matched
            ),
        ));
    }
    let gamma = params.gamma;
    let centers = [params.renorm_onsite];
    let widths = [2.0 * gamma];
    let table = TransmissionTable::new(params, grid);

    let g_of = |e: f64| table.evaluate(e);
    let pair_term = |label: &str, squared: bool, sign: f64, hot: &LeadState, cold: &LeadState| {
        let window_leads = [hot.clone(), cold.clone()];
        let r = integrate(
            |e| {
                let g = g_of(e);
                let kernel = if squared {
                    4.0 * gamma * gamma * g * g
                } else {
                    2.0 * gamma * g
                };
                sign * kernel * (fermi_dirac(e, hot) - fermi_dirac(e, cold)) / TAU
            },
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

    let left = vec![pair_term("JL: 2G g(e)[nL-nA]", false, 1.0, &leads.left, &leads.aux)];
    let right = vec![
        pair_term("JR: 2G g(e)[nR-nA]", false, 1.0, &leads.right, &leads.aux),
        pair_term("JR: -4G^2 g^2(e)[nL-nA]", true, -1.0, &leads.left, &leads.aux),
    ];
    Ok(CurrentResult::from_terms(left, right))
}

/// Polaron-frame reflection element, identical on both primary ports:
///
///   S11 = (i(eps-tilde - w) + lambda^2/kappa - Gamma) /
///         (i(eps-tilde - w) + lambda^2/kappa + Gamma)
///
/// Its zero stays pinned at w = eps-tilde whenever Gamma = lambda^2/kappa,
/// independent of the coupling strength nu.
pub fn polaron_reflection(params: &PolaronParams, omega: f64) -> Complex64 {
    let detune = Complex64::i() * (params.renorm_onsite - omega);
    let nu_rate = params.dissipative_rate();
    (detune + nu_rate - params.gamma) / (detune + nu_rate + params.gamma)
}
