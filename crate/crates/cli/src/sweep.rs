//! Sweep execution and CSV rendering.
//!
//! Output format: '#'-prefixed header lines carrying every resolved
//! parameter, one column-name row, then data rows. Values are printed with
//! 12 significant digits and '\n' line endings, so identical configs render
//! byte-identical files. Rows are computed in parallel and emitted in sweep
//! order.

use dotiso_core::{
    assemble_drift, current_four_dot, current_three_dot, four_dot_closed_form, lb_current,
    polaron_currents_with_grid, polaron_grid, scattering_matrix, three_dot_closed_form,
    CurrentResult, FourDotLeads, LeadState, OhmicBath, PolaronParams, ScatteringMatrix,
    ThreeDotLeads,
};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::{Method, Model, RunConfig, ScatterPath, SweepKind};

/// A rendered dataset: header metadata, column names, numeric rows.
#[derive(Debug, Clone)]
pub struct CsvDoc {
    pub header: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub all_converged: bool,
}

pub fn format_value(x: f64) -> String {
    format!("{x:.11e}")
}

impl CsvDoc {
    pub fn render(&self, command: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("# dotiso {command}\n"));
        for (k, v) in &self.header {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_value(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Command-level error; maps to exit code 2 (configuration misuse).
#[derive(Debug)]
pub struct RunError(pub String);

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn primary_block(s: &ScatteringMatrix) -> [f64; 4] {
    [
        s.transmission(0, 0),
        s.transmission(0, 1),
        s.transmission(1, 0),
        s.transmission(1, 1),
    ]
}

/// Frequency (or coupling-magnitude) sweep of the primary-block scattering
/// probabilities. Singular resolvent rows are emitted as NaN and flagged.
pub fn run_scatter(cfg: &RunConfig) -> Result<CsvDoc, RunError> {
    let values = cfg.sweep.values();
    let rows: Vec<(Vec<f64>, bool)> = match cfg.sweep.kind {
        SweepKind::Omega => match (&cfg.model, cfg.path) {
            (Model::ThreeDot { params, g }, ScatterPath::Closed) => values
                .par_iter()
                .map(|&w| {
                    let s = three_dot_closed_form(params, *g, w);
                    let b = primary_block(&s);
                    (vec![w, b[0], b[1], b[2], b[3]], true)
                })
                .collect(),
            (Model::FourDot { params, phi }, ScatterPath::Closed) => values
                .par_iter()
                .map(|&w| {
                    let s = four_dot_closed_form(params, *phi, w);
                    let b = primary_block(&s);
                    (vec![w, b[0], b[1], b[2], b[3]], true)
                })
                .collect(),
            (model, _) => {
                let spec = model.spec();
                if spec.primary_count() != 2 {
                    return Err(RunError(
                        "scatter output is the primary 2x2 block; the circuit must have exactly \
                         two primary dots"
                            .into(),
                    ));
                }
                let drift = assemble_drift(&spec)
                    .map_err(|e| RunError(format!("cannot assemble circuit: {e}")))?;
                values
                    .par_iter()
                    .map(|&w| match scattering_matrix(&drift, w) {
                        Ok(s) => {
                            let b = primary_block(&s);
                            (vec![w, b[0], b[1], b[2], b[3]], true)
                        }
                        Err(_) => (
                            vec![w, f64::NAN, f64::NAN, f64::NAN, f64::NAN],
                            false,
                        ),
                    })
                    .collect()
            }
        },
        SweepKind::GAbs => {
            let Model::ThreeDot { params, .. } = &cfg.model else {
                return Err(RunError(
                    "a g-magnitude sweep is defined for the three-dot model only".into(),
                ));
            };
            // Magnitude sweep at fixed quarter-turn phase: g = i |g|.
            let omega = cfg.sweep.fixed_omega.unwrap_or(params.eps_d);
            values
                .par_iter()
                .map(|&g_abs| {
                    let s = three_dot_closed_form(params, Complex64::new(0.0, g_abs), omega);
                    let b = primary_block(&s);
                    (vec![g_abs, b[0], b[1], b[2], b[3]], true)
                })
                .collect()
        }
        other => {
            return Err(RunError(format!(
                "scatter expects an omega or g_abs sweep, got {}",
                other.name()
            )))
        }
    };

    let all_converged = rows.iter().all(|(_, ok)| *ok);
    Ok(CsvDoc {
        header: cfg.header.clone(),
        columns: vec![
            cfg.sweep.kind.name().to_string(),
            "s11_sq".into(),
            "s12_sq".into(),
            "s21_sq".into(),
            "s22_sq".into(),
        ],
        rows: rows.into_iter().map(|(r, _)| r).collect(),
        all_converged,
    })
}

fn three_dot_leads(cfg: &RunConfig, v: f64) -> ThreeDotLeads {
    let aux = cfg.lead("a").expect("three-dot aux lead").clone();
    let t_l = cfg.lead("L").unwrap().temperature;
    let t_r = cfg.lead("R").unwrap().temperature;
    ThreeDotLeads {
        left: LeadState::new("L", v / 2.0, t_l).unwrap(),
        right: LeadState::new("R", -v / 2.0, t_r).unwrap(),
        aux,
    }
}

fn four_dot_leads(cfg: &RunConfig, v: f64) -> FourDotLeads {
    FourDotLeads {
        left: LeadState::new("L", v / 2.0, cfg.lead("L").unwrap().temperature).unwrap(),
        right: LeadState::new("R", -v / 2.0, cfg.lead("R").unwrap().temperature).unwrap(),
        up: cfg.lead("u").unwrap().clone(),
        down: cfg.lead("d").unwrap().clone(),
    }
}

/// Lead set for a Landauer-Buttiker run at bias v: the first two primary
/// leads take +-v/2, every other reservoir keeps its configured potential.
fn lb_leads(cfg: &RunConfig, v: f64) -> Vec<LeadState> {
    let mut leads = cfg.leads.clone();
    leads[0] = LeadState::new(leads[0].label.clone(), v / 2.0, leads[0].temperature).unwrap();
    leads[1] = LeadState::new(leads[1].label.clone(), -v / 2.0, leads[1].temperature).unwrap();
    leads
}

fn current_row(v: f64, r: &CurrentResult) -> (Vec<f64>, bool) {
    (
        vec![
            v,
            r.j_left,
            r.j_right,
            r.j_aux,
            r.quadrature_error,
            if r.converged { 1.0 } else { 0.0 },
        ],
        r.converged,
    )
}

/// Voltage (or electron-phonon coupling) sweep of the steady-state currents.
pub fn run_current(cfg: &RunConfig) -> Result<CsvDoc, RunError> {
    let values = cfg.sweep.values();
    let quad = cfg.quadrature;
    let rows: Vec<(Vec<f64>, bool)> = match cfg.sweep.kind {
        SweepKind::Voltage => {
            if let Some(ph) = &cfg.phonon {
                let Model::ThreeDot { params, .. } = &cfg.model else {
                    return Err(RunError(
                        "polaron currents are defined for the three-dot model".into(),
                    ));
                };
                let bath = OhmicBath::new(ph.nu, ph.omega_c, ph.temperature)
                    .map_err(|e| RunError(e.to_string()))?;
                let polaron = if ph.renormalized {
                    PolaronParams::with_renormalized(
                        params.eps_d,
                        &bath,
                        params.lambda,
                        params.kappa,
                        params.gamma,
                    )
                } else {
                    PolaronParams::from_bare(
                        params.eps_d,
                        &bath,
                        params.lambda,
                        params.kappa,
                        params.gamma,
                    )
                };
                // One correlation grid serves the whole sweep: size it for
                // the widest bias.
                let v_extreme = cfg.sweep.start.abs().max(cfg.sweep.stop.abs());
                let grid = polaron_grid(&polaron, &bath, &three_dot_leads(cfg, v_extreme), &quad)
                    .map_err(|e| RunError(e.to_string()))?;
                values
                    .par_iter()
                    .map(|&v| {
                        let leads = three_dot_leads(cfg, v);
                        match polaron_currents_with_grid(&polaron, &grid, &leads, &quad) {
                            Ok(r) => current_row(v, &r),
                            Err(_) => (vec![v, f64::NAN, f64::NAN, f64::NAN, f64::NAN, 0.0], false),
                        }
                    })
                    .collect()
            } else {
                match (cfg.method, &cfg.model) {
                    (Method::Lb, model) => {
                        let spec = model.spec();
                        values
                            .par_iter()
                            .map(|&v| {
                                match lb_current(&spec, &lb_leads(cfg, v), &quad) {
                                    Ok(r) => {
                                        let j_l = r.leads[0].value;
                                        let j_r = r.leads[1].value;
                                        let j_aux: f64 =
                                            r.leads[2..].iter().map(|l| l.value).sum();
                                        (
                                            vec![
                                                v,
                                                j_l,
                                                j_r,
                                                j_aux,
                                                r.quadrature_error,
                                                if r.converged { 1.0 } else { 0.0 },
                                            ],
                                            r.converged,
                                        )
                                    }
                                    Err(_) => (
                                        vec![v, f64::NAN, f64::NAN, f64::NAN, f64::NAN, 0.0],
                                        false,
                                    ),
                                }
                            })
                            .collect()
                    }
                    (Method::Giom, Model::ThreeDot { params, .. }) => values
                        .par_iter()
                        .map(|&v| {
                            match current_three_dot(params, &three_dot_leads(cfg, v), &quad) {
                                Ok(r) => current_row(v, &r),
                                Err(_) => (
                                    vec![v, f64::NAN, f64::NAN, f64::NAN, f64::NAN, 0.0],
                                    false,
                                ),
                            }
                        })
                        .collect(),
                    (Method::Giom, Model::FourDot { params, .. }) => values
                        .par_iter()
                        .map(|&v| {
                            match current_four_dot(params, &four_dot_leads(cfg, v), &quad) {
                                Ok(r) => current_row(v, &r),
                                Err(e) => {
                                    // Matching violations are configuration
                                    // problems, not per-row numerics.
                                    let _ = e;
                                    (vec![v, f64::NAN, f64::NAN, f64::NAN, f64::NAN, 0.0], false)
                                }
                            }
                        })
                        .collect(),
                    (Method::Giom, Model::Custom { .. }) => {
                        return Err(RunError(
                            "custom circuits support transport.method = lb only".into(),
                        ))
                    }
                }
            }
        }
        SweepKind::Nu => {
            let Some(ph) = &cfg.phonon else {
                return Err(RunError(
                    "a nu sweep needs a [phonon] section for omega_c and temperature".into(),
                ));
            };
            let Model::ThreeDot { params, .. } = &cfg.model else {
                return Err(RunError(
                    "polaron currents are defined for the three-dot model".into(),
                ));
            };
            let v = cfg.sweep.fixed_v;
            let leads = three_dot_leads(cfg, v);
            values
                .par_iter()
                .map(|&nu| {
                    let run = OhmicBath::new(nu, ph.omega_c, ph.temperature).and_then(|bath| {
                        let polaron = if ph.renormalized {
                            PolaronParams::with_renormalized(
                                params.eps_d,
                                &bath,
                                params.lambda,
                                params.kappa,
                                params.gamma,
                            )
                        } else {
                            PolaronParams::from_bare(
                                params.eps_d,
                                &bath,
                                params.lambda,
                                params.kappa,
                                params.gamma,
                            )
                        };
                        dotiso_core::polaron_currents(&polaron, &bath, &leads, &quad)
                    });
                    match run {
                        Ok(r) => current_row(nu, &r),
                        Err(_) => (vec![nu, f64::NAN, f64::NAN, f64::NAN, f64::NAN, 0.0], false),
                    }
                })
                .collect()
        }
        other => {
            return Err(RunError(format!(
                "current expects a voltage or nu sweep, got {}",
                other.name()
            )))
        }
    };

    let all_converged = rows.iter().all(|(_, ok)| *ok);
    Ok(CsvDoc {
        header: cfg.header.clone(),
        columns: vec![
            cfg.sweep.kind.name().to_string(),
            "j_l".into(),
            "j_r".into(),
            "j_aux".into(),
            "quad_error".into(),
            "converged".into(),
        ],
        rows: rows.into_iter().map(|(r, _)| r).collect(),
        all_converged,
    })
}

/// Text report of the resolved design point: directional coupling or loop
/// phase, matched damping, on-resonance forward transmission, and the
/// reverse-direction solution.
pub fn run_design(cfg: &RunConfig) -> Result<String, RunError> {
    let mut out = String::new();
    match &cfg.model {
        Model::ThreeDot { params, g } => {
            let d = dotiso_core::three_dot_directionality(params.lambda, params.kappa);
            let matched = dotiso_core::three_dot_matching(params.lambda, params.kappa);
            let s = three_dot_closed_form(params, d.g, params.eps_d);
            out.push_str("three-dot design point\n");
            out.push_str(&format!(
                "  directional coupling g  = {:+.6e} {:+.6e}i\n",
                d.g.re, d.g.im
            ));
            out.push_str(&format!(
                "  reversed solution       = {:+.6e} {:+.6e}i (swaps the S12/S21 roles)\n",
                d.reversed.re, d.reversed.im
            ));
            out.push_str(&format!("  matched gamma           = {matched:.6e}\n"));
            out.push_str(&format!(
                "  configured g            = {:+.6e} {:+.6e}i, gamma = {:.6e}, alpha = {:.6e}\n",
                g.re,
                g.im,
                params.gamma,
                params.alpha()
            ));
            out.push_str(&format!(
                "  on-resonance |S21|^2    = {:.6e} at the directional coupling\n",
                s.transmission(1, 0)
            ));
        }
        Model::FourDot { params, phi } => {
            let phase = dotiso_core::four_dot_directionality(
                params.lambda1,
                params.lambda2,
                params.delta1,
                params.delta2,
                params.kappa,
            )
            .map_err(|e| RunError(e.to_string()))?;
            let matched = dotiso_core::four_dot_matching(
                params.lambda1,
                params.lambda2,
                params.delta1,
                params.delta2,
                params.kappa,
            );
            let red = dotiso_core::four_dot_reduced(params, phase.phi);
            let s = four_dot_closed_form(params, phase.phi, red.resonance);
            out.push_str("four-dot design point\n");
            out.push_str(&format!("  loop phase phi          = {:+.6e}\n", phase.phi));
            out.push_str(&format!(
                "  reversed solution       = {:+.6e} (swaps the S12/S21 roles)\n",
                phase.reversed
            ));
            out.push_str(&format!("  matched gamma           = {matched:.6e}\n"));
            out.push_str(&format!(
                "  configured phi          = {:+.6e}, gamma = {:.6e}\n",
                phi, params.gamma
            ));
            out.push_str(&format!(
                "  resonance Delta         = {:.6e}, effective width Sigma = {:.6e}\n",
                red.resonance, red.sigma
            ));
            out.push_str(&format!(
                "  on-resonance |S21|^2    = {:.6e} (limit delta^2/(kappa^2+delta^2))\n",
                s.transmission(1, 0)
            ));
        }
        Model::Custom { .. } => {
            return Err(RunError(
                "design reports are defined for the canonical models only".into(),
            ))
        }
    }
    Ok(out)
}
