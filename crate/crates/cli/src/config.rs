//! Flat INI-style run configuration: `[section]` headers and `key = value`
//! lines, `#`/`;` comments. Every parse error carries the key path and line;
//! unknown keys are rejected so a config cannot silently misspell anything.

use std::collections::BTreeMap;
use std::fmt;

use dotiso_core::{
    four_dot_directionality, four_dot_matching, three_dot_directionality, three_dot_matching,
    CircuitSpec, DotSpec, FourDotParams, LeadState, QuadratureConfig, ThreeDotParams,
};
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct ConfigError {
    pub line: usize,
    pub path: String,
    pub message: String,
}

impl ConfigError {
    fn new(line: usize, path: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            line,
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "config error at line {} ({}): {}",
            self.line, self.path, self.message
        )
    }
}

impl std::error::Error for ConfigError {}

/// Raw parsed document: (section, key) -> (value, line).
struct RawConfig {
    entries: BTreeMap<(String, String), (String, usize)>,
}

fn parse_raw(text: &str) -> Result<RawConfig, ConfigError> {
    let mut entries = BTreeMap::new();
    let mut section = String::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        if line.starts_with('[') {
            if !line.ends_with(']') {
                return Err(ConfigError::new(line_no, line, "unterminated section header"));
            }
            section = line[1..line.len() - 1].trim().to_string();
            if section.is_empty() {
                return Err(ConfigError::new(line_no, line, "empty section name"));
            }
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::new(
                line_no,
                format!("{section}.{line}"),
                "expected 'key = value'",
            ));
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() {
            return Err(ConfigError::new(line_no, &section, "empty key"));
        }
        let path = format!("{section}.{key}");
        if entries
            .insert((section.clone(), key), (value, line_no))
            .is_some()
        {
            return Err(ConfigError::new(line_no, path, "key given twice"));
        }
    }
    Ok(RawConfig { entries })
}

/// Consuming reader over the raw entries; whatever is left at the end is an
/// unknown key.
struct Reader {
    entries: BTreeMap<(String, String), (String, usize)>,
}

impl Reader {
    fn take(&mut self, section: &str, key: &str) -> Option<(String, usize)> {
        self.entries
            .remove(&(section.to_string(), key.to_string()))
    }

    fn take_f64(&mut self, section: &str, key: &str) -> Result<Option<(f64, usize)>, ConfigError> {
        match self.take(section, key) {
            None => Ok(None),
            Some((value, line)) => value
                .parse::<f64>()
                .map(|v| Some((v, line)))
                .map_err(|_| {
                    ConfigError::new(
                        line,
                        format!("{section}.{key}"),
                        format!("expected a number, got '{value}'"),
                    )
                }),
        }
    }

    fn take_f64_or(&mut self, section: &str, key: &str, default: f64) -> Result<f64, ConfigError> {
        Ok(self.take_f64(section, key)?.map(|(v, _)| v).unwrap_or(default))
    }

    fn require_f64(&mut self, section: &str, key: &str) -> Result<f64, ConfigError> {
        self.take_f64(section, key)?
            .map(|(v, _)| v)
            .ok_or_else(|| {
                ConfigError::new(0, format!("{section}.{key}"), "missing required key")
            })
    }

    fn take_usize_or(
        &mut self,
        section: &str,
        key: &str,
        default: usize,
    ) -> Result<usize, ConfigError> {
        match self.take(section, key) {
            None => Ok(default),
            Some((value, line)) => value.parse::<usize>().map_err(|_| {
                ConfigError::new(
                    line,
                    format!("{section}.{key}"),
                    format!("expected an integer, got '{value}'"),
                )
            }),
        }
    }

    fn section_keys(&self, section: &str) -> Vec<String> {
        self.entries
            .keys()
            .filter(|(s, _)| s == section)
            .map(|(_, k)| k.clone())
            .collect()
    }

    fn finish(self) -> Result<(), ConfigError> {
        if let Some(((section, key), (_, line))) = self.entries.into_iter().next() {
            return Err(ConfigError::new(
                line,
                format!("{section}.{key}"),
                "unknown key",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    Omega,
    Voltage,
    Nu,
    GAbs,
}

impl SweepKind {
    pub fn name(&self) -> &'static str {
        match self {
            SweepKind::Omega => "omega",
            SweepKind::Voltage => "voltage",
            SweepKind::Nu => "nu",
            SweepKind::GAbs => "g_abs",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub kind: SweepKind,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    /// Bias held fixed during a nu sweep.
    pub fixed_v: f64,
    /// Frequency held fixed during a g_abs sweep.
    pub fixed_omega: Option<f64>,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        (0..self.points)
            .map(|i| {
                self.start + (self.stop - self.start) * i as f64 / (self.points - 1) as f64
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Giom,
    Lb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScatterPath {
    Closed,
    Generic,
}

#[derive(Debug, Clone)]
pub enum Model {
    ThreeDot { params: ThreeDotParams, g: Complex64 },
    FourDot { params: FourDotParams, phi: f64 },
    Custom { spec: CircuitSpec },
}

impl Model {
    pub fn spec(&self) -> CircuitSpec {
        match self {
            Model::ThreeDot { params, g } => CircuitSpec::three_dot(params, *g),
            Model::FourDot { params, phi } => CircuitSpec::four_dot(params, *phi),
            Model::Custom { spec } => spec.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PhononConfig {
    pub nu: f64,
    pub omega_c: f64,
    pub temperature: f64,
    /// When set, model.eps_d is already the renormalized level.
    pub renormalized: bool,
}

/// Fully resolved run configuration; `header` carries every input and every
/// auto-resolved value, so a run is reproducible from its own output header.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: Model,
    /// One lead per dot, in port order.
    pub leads: Vec<LeadState>,
    pub phonon: Option<PhononConfig>,
    pub sweep: Sweep,
    pub quadrature: QuadratureConfig,
    pub method: Method,
    pub path: ScatterPath,
    pub output: Option<String>,
    pub header: Vec<(String, String)>,
}

impl RunConfig {
    pub fn lead(&self, label: &str) -> Option<&LeadState> {
        self.leads.iter().find(|l| l.label == label)
    }
}

fn parse_lead(
    reader: &mut Reader,
    label: &str,
    default_mu: f64,
    default_t: f64,
) -> Result<LeadState, ConfigError> {
    let mu = reader.take_f64_or("leads", &format!("{label}.mu"), default_mu)?;
    let temp = reader.take_f64_or("leads", &format!("{label}.temp"), default_t)?;
    LeadState::new(label, mu, temp)
        .map_err(|e| ConfigError::new(0, format!("leads.{label}"), e.to_string()))
}

fn parse_custom_dots(reader: &mut Reader) -> Result<CircuitSpec, ConfigError> {
    let mut spec = CircuitSpec::new();
    let mut dots: Vec<(String, String, usize)> = Vec::new();
    for key in reader.section_keys("dots") {
        let (value, line) = reader.take("dots", &key).unwrap();
        dots.push((key, value, line));
    }
    if dots.is_empty() {
        return Err(ConfigError::new(0, "dots", "custom model needs a [dots] section"));
    }
    for (label, value, line) in dots {
        let parts: Vec<&str> = value.split(',').map(str::trim).collect();
        let path = format!("dots.{label}");
        if parts.len() != 3 {
            return Err(ConfigError::new(
                line,
                path,
                "expected 'role, onsite, damping'",
            ));
        }
        let onsite: f64 = parts[1]
            .parse()
            .map_err(|_| ConfigError::new(line, &path, "onsite must be a number"))?;
        let damping: f64 = parts[2]
            .parse()
            .map_err(|_| ConfigError::new(line, &path, "damping must be a number"))?;
        match parts[0] {
            "primary" => spec.add_dot(DotSpec::primary(&label, onsite, damping)),
            "auxiliary" => spec.add_dot(DotSpec::auxiliary(&label, onsite, damping)),
            other => {
                return Err(ConfigError::new(
                    line,
                    path,
                    format!("role must be primary or auxiliary, got '{other}'"),
                ))
            }
        };
    }
    for key in reader.section_keys("couplings") {
        let (value, line) = reader.take("couplings", &key).unwrap();
        let path = format!("couplings.{key}");
        let Some((from, to)) = key.split_once(':') else {
            return Err(ConfigError::new(line, path, "key must be 'from:to'"));
        };
        let parts: Vec<&str> = value.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(ConfigError::new(line, path, "expected 're, im'"));
        }
        let re: f64 = parts[0]
            .parse()
            .map_err(|_| ConfigError::new(line, &path, "re must be a number"))?;
        let im: f64 = parts[1]
            .parse()
            .map_err(|_| ConfigError::new(line, &path, "im must be a number"))?;
        spec.add_coupling(from.trim(), to.trim(), Complex64::new(re, im));
    }
    let report = dotiso_core::validate_circuit(&spec);
    if !report.is_ok() {
        return Err(ConfigError::new(0, "dots", report.to_string()));
    }
    Ok(spec)
}

/// Parse and resolve a config document. Auto modes (directional coupling,
/// impedance matching) are solved here and their values recorded in the
/// header.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw = parse_raw(text)?;
    let mut reader = Reader {
        entries: raw.entries,
    };
    let mut header: Vec<(String, String)> = Vec::new();
    let mut note = |k: &str, v: String| header.push((k.to_string(), v));

    let (kind, kind_line) = reader
        .take("model", "kind")
        .ok_or_else(|| ConfigError::new(0, "model.kind", "missing required key"))?;
    note("model.kind", kind.clone());

    let gamma_mode = reader
        .take("model", "gamma_mode")
        .map(|(v, l)| (v, l))
        .unwrap_or_else(|| ("auto".to_string(), 0));
    let model = match kind.as_str() {
        "three_dot" => {
            let eps_d = reader.require_f64("model", "eps_d")?;
            let lambda_in = reader.require_f64("model", "lambda")?;
            let kappa = reader.require_f64("model", "kappa")?;
            let (lambda, gamma) = match gamma_mode.0.as_str() {
                "auto" => {
                    let raw_gamma = three_dot_matching(lambda_in, kappa);
                    note("resolved.gamma_raw", format!("{raw_gamma}"));
                    let lambda = kappa.sqrt();
                    note(
                        "resolved.lambda_rescaled",
                        format!("{lambda_in} -> {lambda} (gamma pinned to the unit)"),
                    );
                    (lambda, 1.0)
                }
                "explicit" => {
                    let gamma = reader.require_f64("model", "gamma")?;
                    (lambda_in, gamma)
                }
                other => {
                    return Err(ConfigError::new(
                        gamma_mode.1,
                        "model.gamma_mode",
                        format!("must be auto or explicit, got '{other}'"),
                    ))
                }
            };
            let params = ThreeDotParams::new(eps_d, lambda, kappa, gamma);
            let g_mode = reader
                .take("model", "g_mode")
                .unwrap_or_else(|| ("auto".to_string(), 0));
            let g = match g_mode.0.as_str() {
                "auto" => {
                    let d = three_dot_directionality(lambda, kappa);
                    note("resolved.g", format!("{}+{}i", d.g.re, d.g.im));
                    note(
                        "resolved.g_reversed",
                        format!("{}+{}i", d.reversed.re, d.reversed.im),
                    );
                    d.g
                }
                "explicit" => {
                    let g_abs = reader.require_f64("model", "g_abs")?;
                    let g_phase = reader.require_f64("model", "g_phase")?;
                    Complex64::from_polar(g_abs, g_phase)
                }
                other => {
                    return Err(ConfigError::new(
                        g_mode.1,
                        "model.g_mode",
                        format!("must be auto or explicit, got '{other}'"),
                    ))
                }
            };
            note("resolved.eps_d", format!("{eps_d}"));
            note("resolved.lambda", format!("{lambda}"));
            note("resolved.kappa", format!("{kappa}"));
            note("resolved.gamma", format!("{gamma}"));
            note("resolved.alpha", format!("{}", params.alpha()));
            note("resolved.g_final", format!("{}+{}i", g.re, g.im));
            Model::ThreeDot { params, g }
        }
        "four_dot" => {
            let eps_d = reader.require_f64("model", "eps_d")?;
            let lambda1_in = reader.require_f64("model", "lambda1")?;
            let lambda2_in = reader.require_f64("model", "lambda2")?;
            let kappa = reader.require_f64("model", "kappa")?;
            let delta = reader.require_f64("model", "delta")?;
            let (lambda1, lambda2, gamma) = match gamma_mode.0.as_str() {
                "auto" => {
                    let raw_gamma = four_dot_matching(lambda1_in, lambda2_in, delta, -delta, kappa);
                    if raw_gamma <= 0.0 {
                        return Err(ConfigError::new(
                            0,
                            "model.gamma_mode",
                            "matched gamma is not positive; check lambdas",
                        ));
                    }
                    note("resolved.gamma_raw", format!("{raw_gamma}"));
                    let s = raw_gamma.sqrt();
                    (lambda1_in / s, lambda2_in / s, 1.0)
                }
                "explicit" => {
                    let gamma = reader.require_f64("model", "gamma")?;
                    (lambda1_in, lambda2_in, gamma)
                }
                other => {
                    return Err(ConfigError::new(
                        gamma_mode.1,
                        "model.gamma_mode",
                        format!("must be auto or explicit, got '{other}'"),
                    ))
                }
            };
            let params = FourDotParams {
                eps_d,
                delta1: delta,
                delta2: -delta,
                lambda1,
                lambda2,
                kappa,
                gamma,
            };
            let phi_mode = reader
                .take("model", "phi_mode")
                .unwrap_or_else(|| ("auto".to_string(), 0));
            let phi = match phi_mode.0.as_str() {
                "auto" => {
                    let phase = four_dot_directionality(lambda1, lambda2, delta, -delta, kappa)
                        .map_err(|e| ConfigError::new(0, "model.phi_mode", e.to_string()))?;
                    note("resolved.phi", format!("{}", phase.phi));
                    note("resolved.phi_reversed", format!("{}", phase.reversed));
                    phase.phi
                }
                "explicit" => reader.require_f64("model", "phi")?,
                other => {
                    return Err(ConfigError::new(
                        phi_mode.1,
                        "model.phi_mode",
                        format!("must be auto or explicit, got '{other}'"),
                    ))
                }
            };
            note("resolved.eps_d", format!("{eps_d}"));
            note("resolved.lambda1", format!("{lambda1}"));
            note("resolved.lambda2", format!("{lambda2}"));
            note("resolved.kappa", format!("{kappa}"));
            note("resolved.delta", format!("{delta}"));
            note("resolved.gamma", format!("{gamma}"));
            note("resolved.phi_final", format!("{phi}"));
            Model::FourDot { params, phi }
        }
        "custom" => Model::Custom {
            spec: parse_custom_dots(&mut reader)?,
        },
        other => {
            return Err(ConfigError::new(
                kind_line,
                "model.kind",
                format!("must be three_dot, four_dot or custom, got '{other}'"),
            ))
        }
    };

    // Leads, with figure-caption defaults per canonical model.
    let leads = match &model {
        Model::ThreeDot { .. } => vec![
            parse_lead(&mut reader, "L", 0.0, 0.5)?,
            parse_lead(&mut reader, "R", 0.0, 0.5)?,
            parse_lead(&mut reader, "a", -50.0, 0.5)?,
        ],
        Model::FourDot { .. } => vec![
            parse_lead(&mut reader, "L", 0.0, 1.0)?,
            parse_lead(&mut reader, "R", 0.0, 1.0)?,
            parse_lead(&mut reader, "u", -60.0, 1.0)?,
            parse_lead(&mut reader, "d", -60.0, 1.0)?,
        ],
        Model::Custom { spec } => {
            let mut leads = Vec::new();
            for label in spec.port_labels() {
                let mu = reader
                    .take_f64("leads", &format!("{label}.mu"))?
                    .ok_or_else(|| {
                        ConfigError::new(
                            0,
                            format!("leads.{label}.mu"),
                            "custom models need explicit leads for every dot",
                        )
                    })?
                    .0;
                let temp = reader
                    .take_f64("leads", &format!("{label}.temp"))?
                    .ok_or_else(|| {
                        ConfigError::new(0, format!("leads.{label}.temp"), "missing temperature")
                    })?
                    .0;
                leads.push(
                    LeadState::new(&label, mu, temp)
                        .map_err(|e| ConfigError::new(0, format!("leads.{label}"), e.to_string()))?,
                );
            }
            leads
        }
    };
    for lead in &leads {
        note(
            &format!("leads.{}", lead.label),
            format!("mu = {}, temp = {}", lead.mu, lead.temperature),
        );
    }

    // Optional phonon block.
    let phonon = match reader.take_f64("phonon", "nu")? {
        None => None,
        Some((nu, _)) => {
            let omega_c = reader.require_f64("phonon", "omega_c")?;
            let temperature =
                reader.take_f64_or("phonon", "temp", leads[0].temperature)?;
            let renormalized = match reader.take("phonon", "renormalized") {
                None => true,
                Some((v, line)) => v.parse::<bool>().map_err(|_| {
                    ConfigError::new(line, "phonon.renormalized", "expected true or false")
                })?,
            };
            note("phonon.nu", format!("{nu}"));
            note("phonon.omega_c", format!("{omega_c}"));
            note("phonon.temp", format!("{temperature}"));
            note("phonon.renormalized", format!("{renormalized}"));
            Some(PhononConfig {
                nu,
                omega_c,
                temperature,
                renormalized,
            })
        }
    };

    // Sweep.
    let (sweep_kind, sweep_line) = reader
        .take("sweep", "kind")
        .ok_or_else(|| ConfigError::new(0, "sweep.kind", "missing required key"))?;
    let kind = match sweep_kind.as_str() {
        "omega" => SweepKind::Omega,
        "voltage" => SweepKind::Voltage,
        "nu" => SweepKind::Nu,
        "g_abs" => SweepKind::GAbs,
        other => {
            return Err(ConfigError::new(
                sweep_line,
                "sweep.kind",
                format!("must be omega, voltage, nu or g_abs, got '{other}'"),
            ))
        }
    };
    let start = reader.require_f64("sweep", "start")?;
    let stop = reader.require_f64("sweep", "stop")?;
    let points = reader.take_usize_or("sweep", "points", 201)?;
    if points < 2 {
        return Err(ConfigError::new(0, "sweep.points", "need at least 2 points"));
    }
    if !(start < stop) {
        return Err(ConfigError::new(
            0,
            "sweep.start",
            format!("start ({start}) must be below stop ({stop})"),
        ));
    }
    let fixed_v = reader.take_f64_or("sweep", "fixed_v", 20.0)?;
    let fixed_omega = reader.take_f64("sweep", "fixed_omega")?.map(|(v, _)| v);
    let sweep = Sweep {
        kind,
        start,
        stop,
        points,
        fixed_v,
        fixed_omega,
    };
    note("sweep.kind", kind.name().to_string());
    note("sweep.start", format!("{start}"));
    note("sweep.stop", format!("{stop}"));
    note("sweep.points", format!("{points}"));
    if kind == SweepKind::Nu {
        note("sweep.fixed_v", format!("{fixed_v}"));
    }

    // Transport method and scattering path.
    let method = match reader.take("transport", "method") {
        None => Method::Giom,
        Some((v, line)) => match v.as_str() {
            "giom" => Method::Giom,
            "lb" => Method::Lb,
            other => {
                return Err(ConfigError::new(
                    line,
                    "transport.method",
                    format!("must be giom or lb, got '{other}'"),
                ))
            }
        },
    };
    let path = match reader.take("model", "path") {
        None => {
            if matches!(model, Model::Custom { .. }) {
                ScatterPath::Generic
            } else {
                ScatterPath::Closed
            }
        }
        Some((v, line)) => match v.as_str() {
            "closed" => ScatterPath::Closed,
            "generic" => ScatterPath::Generic,
            other => {
                return Err(ConfigError::new(
                    line,
                    "model.path",
                    format!("must be closed or generic, got '{other}'"),
                ))
            }
        },
    };
    note(
        "transport.method",
        match method {
            Method::Giom => "giom".to_string(),
            Method::Lb => "lb".to_string(),
        },
    );
    note(
        "model.path",
        match path {
            ScatterPath::Closed => "closed".to_string(),
            ScatterPath::Generic => "generic".to_string(),
        },
    );

    // Quadrature overrides.
    let defaults = QuadratureConfig::default();
    let quadrature = QuadratureConfig {
        rel_tol: reader.take_f64_or("quadrature", "rel_tol", defaults.rel_tol)?,
        abs_tol: reader.take_f64_or("quadrature", "abs_tol", defaults.abs_tol)?,
        window_pad_t: reader.take_f64_or("quadrature", "window_pad_t", defaults.window_pad_t)?,
        window_pad_g: reader.take_f64_or("quadrature", "window_pad_g", defaults.window_pad_g)?,
        max_subdivisions: reader.take_usize_or(
            "quadrature",
            "max_subdivisions",
            defaults.max_subdivisions,
        )?,
    };
    quadrature
        .validate()
        .map_err(|e| ConfigError::new(0, "quadrature", e.to_string()))?;
    note("quadrature.rel_tol", format!("{}", quadrature.rel_tol));
    note("quadrature.abs_tol", format!("{}", quadrature.abs_tol));
    note(
        "quadrature.window_pad_t",
        format!("{}", quadrature.window_pad_t),
    );
    note(
        "quadrature.window_pad_g",
        format!("{}", quadrature.window_pad_g),
    );
    note(
        "quadrature.max_subdivisions",
        format!("{}", quadrature.max_subdivisions),
    );

    let output = reader.take("output", "path").map(|(v, _)| v);
    reader.finish()?;

    Ok(RunConfig {
        model,
        leads,
        phonon,
        sweep,
        quadrature,
        method,
        path,
        output,
        header,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
[model]
kind = three_dot
eps_d = 1
lambda = 1
kappa = 100
[sweep]
kind = omega
start = -4
stop = 6
points = 11
";

    #[test]
    fn minimal_three_dot_resolves_auto_modes() {
        let cfg = parse_config(MINIMAL).unwrap();
        let Model::ThreeDot { params, g } = &cfg.model else {
            panic!("expected three-dot model");
        };
        // gamma pinned at the unit, lambda rescaled so lambda^2/kappa = 1.
        assert_eq!(params.gamma, 1.0);
        assert_eq!(params.lambda, 10.0);
        assert_eq!(params.kappa, 100.0);
        assert_eq!(*g, Complex64::new(0.0, 1.0));
        // The raw matched values are recorded for reproducibility.
        let raw = cfg
            .header
            .iter()
            .find(|(k, _)| k == "resolved.gamma_raw")
            .unwrap();
        assert_eq!(raw.1, "0.01");
        // Caption defaults for the aux lead.
        assert_eq!(cfg.lead("a").unwrap().mu, -50.0);
    }

    #[test]
    fn raw_directional_coupling_before_rescale() {
        // g = i lambda^2/kappa = 0.01i for the raw inputs.
        let d = three_dot_directionality(1.0, 100.0);
        assert_eq!(d.g, Complex64::new(0.0, 0.01));
    }

    #[test]
    fn sweep_order_is_validated() {
        let bad = MINIMAL.replace("start = -4", "start = 7");
        let err = parse_config(&bad).unwrap_err();
        assert!(err.path.contains("sweep.start"), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected_with_location() {
        let bad = format!("{MINIMAL}\n[model]\ntypo_key = 3\n");
        let err = parse_config(&bad).unwrap_err();
        assert!(err.path.contains("model.typo_key"), "{err}");
        assert!(err.line > 0);
    }

    #[test]
    fn four_dot_phase_error_propagates() {
        let text = "\
[model]
kind = four_dot
eps_d = 1
lambda1 = 1
lambda2 = 2
kappa = 10
delta = 5
gamma_mode = explicit
gamma = 1
[sweep]
kind = omega
start = -4
stop = 6
";
        let err = parse_config(text).unwrap_err();
        assert!(err.message.contains("no pure-phase solution"), "{err}");
    }

    #[test]
    fn custom_model_round_trip() {
        let text = "\
[model]
kind = custom
[dots]
d1 = primary, 1.0, 1.0
d2 = primary, 1.0, 1.0
a = auxiliary, 0.0, 100.0
[couplings]
d1:d2 = 0.0, 1.0
d1:a = 10.0, 0.0
d2:a = 10.0, 0.0
[leads]
d1.mu = 5
d1.temp = 0.5
d2.mu = -5
d2.temp = 0.5
a.mu = -50
a.temp = 0.5
[sweep]
kind = omega
start = -4
stop = 6
[transport]
method = lb
";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.leads.len(), 3);
        assert_eq!(cfg.path, ScatterPath::Generic);
        assert_eq!(cfg.method, Method::Lb);
    }
}
