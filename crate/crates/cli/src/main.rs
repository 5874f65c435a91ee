//! dotiso: scattering and steady-state transport sweeps for
//! dissipation-engineered quantum-dot circuits.
//!
//! Exit codes: 0 on success, 2 on configuration errors, 3 when any sweep row
//! failed to converge (the rows are still emitted).

mod config;
mod figures;
mod sweep;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{parse_config, RunConfig};
use sweep::{run_current, run_design, run_scatter, CsvDoc};

#[derive(Parser)]
#[command(
    name = "dotiso",
    about = "Nonreciprocal quantum-dot circuit simulator: scattering sweeps, \
             current-voltage sweeps, design solving, and figure datasets"
)]
struct Cli {
    /// Worker threads for sweep rows (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Override the quadrature relative tolerance.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Run configuration file (INI-style sections).
    #[arg(long)]
    config: PathBuf,
    /// Output file (defaults to [output] path in the config, else stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Scattering-probability sweep over frequency or coupling magnitude.
    Scatter(ConfigArgs),
    /// Steady-state current sweep over voltage or electron-phonon coupling.
    Current(ConfigArgs),
    /// Report the directionality and impedance-matching design point.
    Design {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the dataset of a named figure with its parameters baked in.
    Figure {
        /// One of: fig3a, fig3b, fig5a, fig5b, fig6a, fig6b, fig7, fig8,
        /// fig9a, fig9b, fig10, fig11.
        id: String,
        /// Output file; fig11 derives two files from this name.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_config(path: &Path, rel_tol: Option<f64>) -> Result<RunConfig, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut cfg = parse_config(&text).map_err(|e| e.to_string())?;
    if let Some(rel) = rel_tol {
        cfg.quadrature.rel_tol = rel;
        cfg.header
            .push(("quadrature.rel_tol_override".into(), format!("{rel}")));
    }
    Ok(cfg)
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn emit_doc(doc: &CsvDoc, command: &str, out: Option<&Path>) -> Result<bool, String> {
    write_output(out, &doc.render(command))?;
    Ok(doc.all_converged)
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ext = path
        .extension()
        .map(|e| format!(".{}", e.to_string_lossy()))
        .unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}{ext}"))
}

fn run() -> Result<bool, (u8, String)> {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| (2, format!("cannot configure {n} threads: {e}")))?;
    }

    match &cli.command {
        Command::Scatter(args) => {
            let cfg = load_config(&args.config, cli.rel_tol).map_err(|e| (2, e))?;
            let doc = run_scatter(&cfg).map_err(|e| (2, e.0))?;
            let out = args
                .out
                .clone()
                .or_else(|| cfg.output.as_ref().map(PathBuf::from));
            emit_doc(&doc, "scatter", out.as_deref()).map_err(|e| (1, e))
        }
        Command::Current(args) => {
            let cfg = load_config(&args.config, cli.rel_tol).map_err(|e| (2, e))?;
            let doc = run_current(&cfg).map_err(|e| (2, e.0))?;
            let out = args
                .out
                .clone()
                .or_else(|| cfg.output.as_ref().map(PathBuf::from));
            emit_doc(&doc, "current", out.as_deref()).map_err(|e| (1, e))
        }
        Command::Design { config, out } => {
            let cfg = load_config(config, cli.rel_tol).map_err(|e| (2, e))?;
            let report = run_design(&cfg).map_err(|e| (2, e.0))?;
            write_output(out.as_deref(), &report).map_err(|e| (1, e))?;
            Ok(true)
        }
        Command::Figure { id, out } => {
            let docs = figures::run_figure(id).map_err(|e| (2, e.0))?;
            let base = out
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("{id}.csv")));
            let mut all_ok = true;
            for fig in &docs {
                let path = match fig.suffix {
                    Some(suffix) => with_suffix(&base, suffix),
                    None => base.clone(),
                };
                all_ok &=
                    emit_doc(&fig.doc, &format!("figure {id}"), Some(&path)).map_err(|e| (1, e))?;
                eprintln!("wrote {}", path.display());
            }
            Ok(all_ok)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::from(0),
        Ok(false) => {
            eprintln!("warning: at least one row did not converge (rows were still emitted)");
            ExitCode::from(3)
        }
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
