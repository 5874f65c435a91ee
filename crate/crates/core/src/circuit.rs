//! Declarative dot-network description and assembly of the linear
//! Heisenberg-Langevin drift model.
//!
//! Conventions (used throughout the crate): hbar = e = k_B = 1, the Fermi
//! energy sits at zero, and every energy is quoted in units of the primary
//! lead damping. A circuit is a set of single-level dots, each tunnel-coupled
//! to exactly one lead in the wide-band limit, plus a Hermitian coherent
//! coupling map. The port basis is fixed as (primary dots in declaration
//! order, then auxiliary dots in declaration order).

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::ModelError;

const SQRT_2PI: f64 = 2.506628274631000502415765284811;

/// Whether a dot carries a transport lead (primary) or an engineered-loss
/// reservoir (auxiliary).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotRole {
    Primary,
    Auxiliary,
}

/// One single-level dot: label, role, on-site energy, and the damping induced
/// by its attached lead (Gamma for primary dots, kappa for auxiliary dots).
#[derive(Debug, Clone, PartialEq)]
pub struct DotSpec {
    pub label: String,
    pub role: DotRole,
    pub onsite: f64,
    pub lead_damping: f64,
}

impl DotSpec {
    pub fn primary(label: impl Into<String>, onsite: f64, lead_damping: f64) -> Self {
        DotSpec {
            label: label.into(),
            role: DotRole::Primary,
            onsite,
            lead_damping,
        }
    }

    pub fn auxiliary(label: impl Into<String>, onsite: f64, lead_damping: f64) -> Self {
        DotSpec {
            label: label.into(),
            role: DotRole::Auxiliary,
            onsite,
            lead_damping,
        }
    }
}

/// A coherent tunneling amplitude between two dots.
///
/// The stored value is the Hamiltonian matrix element H[from, to]; the
/// conjugate is implied at H[to, from], so the coupling map is Hermitian by
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Coupling {
    pub from: String,
    pub to: String,
    pub value: Complex64,
}

/// Declarative dot network. Plain data: build it freely, then validate.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CircuitSpec {
    pub dots: Vec<DotSpec>,
    pub couplings: Vec<Coupling>,
}

impl CircuitSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_dot(&mut self, dot: DotSpec) -> &mut Self {
        self.dots.push(dot);
        self
    }

    /// Record H[from, to] = value (and implicitly H[to, from] = conj(value)).
    pub fn add_coupling(
        &mut self,
        from: impl Into<String>,
        to: impl Into<String>,
        value: Complex64,
    ) -> &mut Self {
        self.couplings.push(Coupling {
            from: from.into(),
            to: to.into(),
            value,
        });
        self
    }

    /// Port basis: primary dots in declaration order, then auxiliary dots in
    /// declaration order.
    pub fn port_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = Vec::with_capacity(self.dots.len());
        order.extend(
            self.dots
                .iter()
                .enumerate()
                .filter(|(_, d)| d.role == DotRole::Primary)
                .map(|(i, _)| i),
        );
        order.extend(
            self.dots
                .iter()
                .enumerate()
                .filter(|(_, d)| d.role == DotRole::Auxiliary)
                .map(|(i, _)| i),
        );
        order
    }

    pub fn port_labels(&self) -> Vec<String> {
        self.port_order()
            .iter()
            .map(|&i| self.dots[i].label.clone())
            .collect()
    }

    pub fn primary_count(&self) -> usize {
        self.dots
            .iter()
            .filter(|d| d.role == DotRole::Primary)
            .count()
    }

    pub fn auxiliary_count(&self) -> usize {
        self.dots.len() - self.primary_count()
    }

    /// Coherent Hamiltonian in the port basis.
    pub fn coherent_hamiltonian(&self) -> DMatrix<Complex64> {
        let order = self.port_order();
        let n = order.len();
        let index_of = |label: &str| -> Option<usize> {
            order
                .iter()
                .position(|&i| self.dots[i].label == label)
        };
        let mut h = DMatrix::<Complex64>::zeros(n, n);
        for (p, &i) in order.iter().enumerate() {
            h[(p, p)] = Complex64::new(self.dots[i].onsite, 0.0);
        }
        for c in &self.couplings {
            if let (Some(j), Some(k)) = (index_of(&c.from), index_of(&c.to)) {
                h[(j, k)] = c.value;
                h[(k, j)] = c.value.conj();
            }
        }
        h
    }

    /// Lead dampings in the port basis.
    pub fn dampings(&self) -> Vec<f64> {
        self.port_order()
            .iter()
            .map(|&i| self.dots[i].lead_damping)
            .collect()
    }

    /// Canonical three-dot circuit: primary dots d1, d2 with direct coupling
    /// g, both coupled by a real lambda to one strongly damped auxiliary dot.
    pub fn three_dot(params: &ThreeDotParams, g: Complex64) -> Self {
        let mut spec = CircuitSpec::new();
        spec.add_dot(DotSpec::primary("d1", params.eps_d, params.gamma))
            .add_dot(DotSpec::primary("d2", params.eps_d, params.gamma))
            .add_dot(DotSpec::auxiliary("a", params.aux_onsite, params.kappa))
            .add_coupling("d1", "d2", g)
            .add_coupling("d1", "a", Complex64::new(params.lambda, 0.0))
            .add_coupling("d2", "a", Complex64::new(params.lambda, 0.0));
        spec
    }

    /// Canonical four-dot circuit: primary dots d1, d2 coupled only through
    /// two detuned auxiliary dots a1, a2. The loop phase phi rides on the
    /// d2-a1 link (hopping amplitude lambda1 e^{i phi} from d2 into a1), so
    /// the stored Hamiltonian element H[d2, a1] is its conjugate.
    pub fn four_dot(params: &FourDotParams, phi: f64) -> Self {
        let mut spec = CircuitSpec::new();
        spec.add_dot(DotSpec::primary("d1", params.eps_d, params.gamma))
            .add_dot(DotSpec::primary("d2", params.eps_d, params.gamma))
            .add_dot(DotSpec::auxiliary("a1", params.delta1, params.kappa))
            .add_dot(DotSpec::auxiliary("a2", params.delta2, params.kappa))
            .add_coupling("d1", "a1", Complex64::new(params.lambda1, 0.0))
            .add_coupling("d1", "a2", Complex64::new(params.lambda2, 0.0))
            .add_coupling("d2", "a1", Complex64::from_polar(params.lambda1, -phi))
            .add_coupling("d2", "a2", Complex64::new(params.lambda2, 0.0));
        spec
    }
}

/// Parameters of the canonical three-dot model (all in primary-Gamma units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeDotParams {
    pub eps_d: f64,
    pub lambda: f64,
    pub kappa: f64,
    pub gamma: f64,
    /// On-site energy of the auxiliary dot; zero in the canonical model.
    pub aux_onsite: f64,
}

impl ThreeDotParams {
    pub fn new(eps_d: f64, lambda: f64, kappa: f64, gamma: f64) -> Self {
        ThreeDotParams {
            eps_d,
            lambda,
            kappa,
            gamma,
            aux_onsite: 0.0,
        }
    }

    /// Engineered dissipative rate lambda^2 / kappa.
    pub fn dissipative_rate(&self) -> f64 {
        self.lambda * self.lambda / self.kappa
    }

    /// alpha = lambda^2 / (kappa Gamma); alpha = 1 is impedance matched.
    pub fn alpha(&self) -> f64 {
        self.dissipative_rate() / self.gamma
    }
}

/// Parameters of the canonical four-dot model (all in primary-Gamma units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourDotParams {
    pub eps_d: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub kappa: f64,
    pub gamma: f64,
}

impl FourDotParams {
    /// The symmetric configuration lambda1 = lambda2 = lambda,
    /// delta1 = -delta2 = delta used throughout the closed-form current
    /// expressions.
    pub fn symmetric(eps_d: f64, lambda: f64, delta: f64, kappa: f64, gamma: f64) -> Self {
        FourDotParams {
            eps_d,
            delta1: delta,
            delta2: -delta,
            lambda1: lambda,
            lambda2: lambda,
            kappa,
            gamma,
        }
    }
}

/// A single validation violation, with the offending labels spelled out.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    DuplicateLabel { label: String },
    NonpositiveDamping { label: String, value: f64 },
    NonFiniteOnsite { label: String },
    DanglingEndpoint { from: String, to: String },
    SelfCoupling { label: String },
    DuplicateCoupling { from: String, to: String },
    NonFiniteCoupling { from: String, to: String },
    EmptyCircuit,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateLabel { label } => write!(f, "duplicate dot label '{label}'"),
            Violation::NonpositiveDamping { label, value } => {
                write!(f, "nonpositive damping {value} on dot '{label}'")
            }
            Violation::NonFiniteOnsite { label } => {
                write!(f, "non-finite on-site energy on dot '{label}'")
            }
            Violation::DanglingEndpoint { from, to } => {
                write!(f, "dangling endpoint in coupling '{from}'-'{to}'")
            }
            Violation::SelfCoupling { label } => write!(f, "self-coupling on dot '{label}'"),
            Violation::DuplicateCoupling { from, to } => {
                write!(f, "coupling '{from}'-'{to}' given more than once")
            }
            Violation::NonFiniteCoupling { from, to } => {
                write!(f, "non-finite coupling '{from}'-'{to}'")
            }
            Violation::EmptyCircuit => write!(f, "circuit has no dots"),
        }
    }
}

/// Outcome of validating a [`CircuitSpec`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "ok")
        } else {
            let items: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", items.join("; "))
        }
    }
}

/// Check a circuit description for structural problems. Report-style: never
/// fails, lists every violation found.
pub fn validate_circuit(spec: &CircuitSpec) -> ValidationReport {
    let mut violations = Vec::new();
    if spec.dots.is_empty() {
        violations.push(Violation::EmptyCircuit);
    }
    for (i, dot) in spec.dots.iter().enumerate() {
        if spec.dots[..i].iter().any(|d| d.label == dot.label) {
            violations.push(Violation::DuplicateLabel {
                label: dot.label.clone(),
            });
        }
        if !(dot.lead_damping > 0.0) || !dot.lead_damping.is_finite() {
            violations.push(Violation::NonpositiveDamping {
                label: dot.label.clone(),
                value: dot.lead_damping,
            });
        }
        if !dot.onsite.is_finite() {
            violations.push(Violation::NonFiniteOnsite {
                label: dot.label.clone(),
            });
        }
    }
    let has_dot = |label: &str| spec.dots.iter().any(|d| d.label == label);
    for (i, c) in spec.couplings.iter().enumerate() {
        if !has_dot(&c.from) || !has_dot(&c.to) {
            violations.push(Violation::DanglingEndpoint {
                from: c.from.clone(),
                to: c.to.clone(),
            });
            continue;
        }
        if c.from == c.to {
            violations.push(Violation::SelfCoupling {
                label: c.from.clone(),
            });
        }
        if spec.couplings[..i]
            .iter()
            .any(|p| (p.from == c.from && p.to == c.to) || (p.from == c.to && p.to == c.from))
        {
            violations.push(Violation::DuplicateCoupling {
                from: c.from.clone(),
                to: c.to.clone(),
            });
        }
        if !c.value.re.is_finite() || !c.value.im.is_finite() {
            violations.push(Violation::NonFiniteCoupling {
                from: c.from.clone(),
                to: c.to.clone(),
            });
        }
    }
    ValidationReport { violations }
}

/// Linear Heisenberg-Langevin drift model dO/dt = M O + C F_in, with the
/// input-output relation F_out = F_in - i sqrt(2/pi) K O.
///
/// M = -i H_coh - K, C = -i sqrt(2 pi) I, K = diag(dampings), all in the
/// fixed port basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftModel {
    m: DMatrix<Complex64>,
    c: DVector<Complex64>,
    k: DVector<f64>,
    port_labels: Vec<String>,
}

impl DriftModel {
    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    /// Drift matrix M.
    pub fn m(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    /// Diagonal of the input coefficient matrix C (constant -i sqrt(2 pi)).
    pub fn c(&self) -> &DVector<Complex64> {
        &self.c
    }

    /// Diagonal of the damping matrix K.
    pub fn k(&self) -> &DVector<f64> {
        &self.k
    }

    pub fn port_labels(&self) -> &[String] {
        &self.port_labels
    }

    pub fn port_index(&self, label: &str) -> Option<usize> {
        self.port_labels.iter().position(|l| l == label)
    }
}

/// Assemble the drift model of a validated circuit.
///
/// M[j][j] = -i onsite_j - damping_j and M[j][k] = -i H_coh[j][k] for j != k.
pub fn assemble_drift(spec: &CircuitSpec) -> Result<DriftModel, ModelError> {
    let report = validate_circuit(spec);
    if !report.is_ok() {
        return Err(ModelError::InvalidCircuit(report));
    }
    let h = spec.coherent_hamiltonian();
    let dampings = spec.dampings();
    let n = dampings.len();
    let mut m = h.map(|v| -Complex64::i() * v);
    for j in 0..n {
        m[(j, j)] -= Complex64::new(dampings[j], 0.0);
    }
    Ok(DriftModel {
        m,
        c: DVector::from_element(n, -Complex64::i() * SQRT_2PI),
        k: DVector::from_vec(dampings),
        port_labels: spec.port_labels(),
    })
}

/// Effective primary-dot dynamics after eliminating the strongly damped
/// auxiliary dots:
///
///   d x_p / dt = -Z_p x_p - sum_{p' != p} Phi[p][p'] x_{p'}
///                - i sqrt(2 pi) f_{p,in} + sum_m R[p][m] f_{m,in}
///
/// For two primary dots, Phi = Phi[0][1] is the influence of d2 on d1 and
/// Psi = Phi[1][0] the influence of d1 on d2; directionality means Phi = 0
/// with Psi kept finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedCircuit {
    /// Z_p per primary dot: i eps_p + Gamma_p + induced complex self-energy.
    pub self_terms: Vec<Complex64>,
    /// Off-diagonal directional couplings Phi[p][p'] (diagonal entries zero).
    pub couplings: DMatrix<Complex64>,
    /// Routing coefficients of the auxiliary input fields into each primary
    /// equation (primary x auxiliary).
    pub input_routing: DMatrix<Complex64>,
    pub primary_labels: Vec<String>,
    pub auxiliary_labels: Vec<String>,
    pub warnings: Vec<String>,
}

impl ReducedCircuit {
    /// Influence of the second primary dot on the first (the coefficient of
    /// d2 in the d1 equation is -phi).
    pub fn phi(&self) -> Complex64 {
        self.couplings[(0, 1)]
    }

    /// Influence of the first primary dot on the second.
    pub fn psi(&self) -> Complex64 {
        self.couplings[(1, 0)]
    }

    /// Scattering matrix of the reduced primary block at frequency omega.
    pub fn scattering(&self, gammas: &[f64], omega: f64) -> DMatrix<Complex64> {
        let p = self.self_terms.len();
        assert_eq!(gammas.len(), p, "one damping per primary dot");
        // -i omega I - M_eff with M_eff[p][p] = -Z_p, M_eff[p][p'] = -Phi[p][p']
        let mut a = DMatrix::<Complex64>::zeros(p, p);
        for j in 0..p {
            for k in 0..p {
                a[(j, k)] = if j == k {
                    self.self_terms[j] - Complex64::i() * omega
                } else {
                    self.couplings[(j, k)]
                };
            }
        }
        let lu = a.lu();
        let inv = lu
            .solve(&DMatrix::<Complex64>::identity(p, p))
            .expect("reduced resolvent is nonsingular for positive dampings");
        let mut s = DMatrix::<Complex64>::identity(p, p);
        for j in 0..p {
            for k in 0..p {
                s[(j, k)] -= 2.0 * gammas[j] * inv[(j, k)];
            }
        }
        s
    }
}

/// Adiabatically eliminate every auxiliary dot, keeping terms to first order
/// in the inverse auxiliary damping.
///
/// The quasi-static auxiliary solution is a = A^{-1} (-i H_ap x - i sqrt(2pi)
/// f_in) with A = diag(kappa_m) + i H_aa, which substituted into the primary
/// equations yields the self-terms, directional couplings and input routing
/// of [`ReducedCircuit`].
pub fn adiabatic_reduce(spec: &CircuitSpec) -> Result<ReducedCircuit, ModelError> {
    let report = validate_circuit(spec);
    if !report.is_ok() {
        return Err(ModelError::InvalidCircuit(report));
    }
    let n_aux = spec.auxiliary_count();
    if n_aux == 0 {
        return Err(ModelError::NothingToEliminate);
    }
    let n_p = spec.primary_count();
    let h = spec.coherent_hamiltonian();
    let dampings = spec.dampings();
    let labels = spec.port_labels();

    let mut warnings = Vec::new();
    let kappa_min = dampings[n_p..]
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let mut other_scale: f64 = 0.0;
    for j in 0..n_p + n_aux {
        other_scale = other_scale.max(h[(j, j)].norm());
    }
    for j in 0..n_p {
        other_scale = other_scale.max(dampings[j]);
    }
    for c in &spec.couplings {
        other_scale = other_scale.max(c.value.norm());
    }
    if kappa_min < 10.0 * other_scale {
        warnings.push(format!(
            "auxiliary damping {kappa_min} is below 10x the largest other energy scale \
             {other_scale}; the adiabatic elimination may be inaccurate"
        ));
    }

    // A = diag(kappa) + i H_aa over the auxiliary block.
    let mut a = DMatrix::<Complex64>::zeros(n_aux, n_aux);
    for m in 0..n_aux {
        for m2 in 0..n_aux {
            a[(m, m2)] = Complex64::i() * h[(n_p + m, n_p + m2)];
        }
        a[(m, m)] += Complex64::new(dampings[n_p + m], 0.0);
    }
    let h_pa = h.view((0, n_p), (n_p, n_aux)).into_owned();
    let h_ap = h.view((n_p, 0), (n_aux, n_p)).into_owned();
    let lu = a.lu();
    let a_inv_h_ap = lu.solve(&h_ap).expect("auxiliary block is invertible");
    let a_inv = lu
        .solve(&DMatrix::<Complex64>::identity(n_aux, n_aux))
        .expect("auxiliary block is invertible");

    // Induced primary-primary term: H_pa A^{-1} H_ap.
    let induced = &h_pa * &a_inv_h_ap;

    let mut self_terms = Vec::with_capacity(n_p);
    let mut couplings = DMatrix::<Complex64>::zeros(n_p, n_p);
    for p in 0..n_p {
        self_terms.push(
            Complex64::i() * h[(p, p)] + Complex64::new(dampings[p], 0.0) + induced[(p, p)],
        );
        for p2 in 0..n_p {
            if p2 != p {
                couplings[(p, p2)] = Complex64::i() * h[(p, p2)] + induced[(p, p2)];
            }
        }
    }
    let input_routing = (&h_pa * &a_inv).map(|v| -v * SQRT_2PI);

    Ok(ReducedCircuit {
        self_terms,
        couplings,
        input_routing,
        primary_labels: labels[..n_p].to_vec(),
        auxiliary_labels: labels[n_p..].to_vec(),
        warnings,
    })
}
