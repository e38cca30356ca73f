//! Command-line front end for `dirac-coulomb`: spectra, radial functions with
//! node reports, and spin/pseudospin symmetry sweeps as CSV, JSON or
//! whitespace-separated plot data.
//!
//! Exit status: 0 on success, 1 on a configuration or validation error,
//! 2 when a valid request has an empty spectrum.

pub mod config;
pub mod report;
pub mod state;

use std::path::Path;

use thiserror::Error;

use dirac_coulomb::model::{validate_bound_state, QuantumNumbers, Rejection, Verdict};
use dirac_coulomb::radial::{count_nodes, solution_for_level, RadialGrid, RadialSolution};
use dirac_coulomb::spectrum::{energy, spectrum_table, SpectrumError};
use dirac_coulomb::symmetry::{
    perturbativity_probe, pspin_coefficients, pspin_expansion, spin_coefficients, spin_expansion, SymmetryKind,
};

pub use config::{Cli, CommandConfig, OutputFormat, OutputTarget, RunConfig};
use config::{GridOptions, SweepOptions};
use report::{
    to_json, DoubletLabels, ProbeDocument, SpectrumDocument, StateEvaluation, StateProfile, SweepDocument,
    SweepPoint, WavefunctionDocument, PROBE_SCHEMA, SWEEP_SCHEMA,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Invalid(String),
    #[error("empty-spectrum: {0}")]
    EmptySpectrum(Rejection),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::EmptySpectrum(_) => 2,
            _ => 1,
        }
    }
}

/// A rendered output with the file name it gets inside an output directory.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

fn render<D>(doc: &D, format: OutputFormat, csv: fn(&D) -> String, plot: fn(&D) -> String) -> Result<String, CliError>
where
    D: serde::Serialize,
{
    match format {
        OutputFormat::Csv => Ok(csv(doc)),
        OutputFormat::Json => to_json(doc),
        OutputFormat::Plotdata => Ok(plot(doc)),
    }
}

pub fn cmd_spectrum(cfg: &RunConfig, n_max: u32) -> Result<Vec<Artifact>, CliError> {
    let table = match spectrum_table(cfg.couplings, n_max, cfg.branch) {
        Ok(t) => t,
        Err(SpectrumError::EmptySpectrum { reason }) => return Err(CliError::EmptySpectrum(reason)),
        Err(e) => return Err(CliError::Invalid(e.to_string())),
    };
    let doc = SpectrumDocument::new(table, cfg.units, cfg.physical_units);
    Ok(vec![Artifact {
        name: format!("spectrum_{}.{}", cfg.branch, cfg.format.extension()),
        contents: render(&doc, cfg.format, SpectrumDocument::to_csv, SpectrumDocument::to_plotdata)?,
    }])
}

fn solve_state(cfg: &RunConfig, qn: QuantumNumbers, grid: &GridOptions) -> Result<RadialSolution, CliError> {
    let invalid = |e: &dyn std::fmt::Display| CliError::Invalid(format!("{qn} ({}, {}): {e}", qn.n_r, qn.kappa));
    let level = energy(cfg.couplings, qn, cfg.branch).map_err(|e| invalid(&e))?;
    let default = RadialGrid::default_for(&level);
    let radial_grid = if grid.custom {
        let r_max = grid.r_max.unwrap_or(default.r_max());
        RadialGrid::with_scheme(grid.scheme, grid.r_min, r_max, grid.points).map_err(|e| invalid(&e))?
    } else {
        default
    };
    let solution = solution_for_level(level, radial_grid).map_err(|e| invalid(&e))?;
    count_nodes(&solution).map_err(|e| invalid(&e))?;
    Ok(solution)
}

pub fn cmd_wavefunction(cfg: &RunConfig, states: &[QuantumNumbers], grid: &GridOptions) -> Result<Vec<Artifact>, CliError> {
    let profiles = states
        .iter()
        .map(|&qn| solve_state(cfg, qn, grid).map(|s| StateProfile::from_solution(&s)))
        .collect::<Result<Vec<_>, _>>()?;
    let doc_for = |profiles: Vec<StateProfile>| WavefunctionDocument::new(cfg.couplings, cfg.branch, cfg.units, profiles);
    let draw = |doc: &WavefunctionDocument| {
        render(doc, cfg.format, WavefunctionDocument::to_csv, WavefunctionDocument::to_plotdata)
    };
    match cfg.output {
        // one file per state in an output directory
        OutputTarget::Dir(_) => states
            .iter()
            .zip(profiles)
            .map(|(qn, p)| {
                Ok(Artifact {
                    name: format!(
                        "wavefunction_{}_{}.{}",
                        state::file_stem(qn),
                        cfg.branch,
                        cfg.format.extension()
                    ),
                    contents: draw(&doc_for(vec![p]))?,
                })
            })
            .collect(),
        _ => Ok(vec![Artifact {
            name: format!("wavefunction_{}.{}", cfg.branch, cfg.format.extension()),
            contents: draw(&doc_for(profiles))?,
        }]),
    }
}

fn top_order(kind: SymmetryKind, fixed: f64, qn: QuantumNumbers, cfg: &RunConfig) -> u32 {
    let len = match kind {
        SymmetryKind::Spin => spin_coefficients(fixed, qn.n(), qn.kappa.get(), cfg.branch).len(),
        SymmetryKind::Pseudospin => pspin_coefficients(fixed, qn.n(), qn.kappa.get(), cfg.branch).len(),
    };
    len as u32 - 1
}

fn sweep(cfg: &RunConfig, opts: &SweepOptions) -> Result<SweepDocument, CliError> {
    let states: Vec<QuantumNumbers> = opts.doublets.iter().flat_map(|d| [d.first, d.second]).collect();
    let orders = states
        .iter()
        .map(|&qn| {
            let top = top_order(opts.kind, opts.fixed, qn, cfg);
            match opts.order {
                Some(o) if o > top => Err(CliError::Config(format!(
                    "order {o} above the highest printed term {top} for {qn}"
                ))),
                Some(o) => Ok(o),
                None => Ok(top),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let point = |value: f64| -> Result<SweepPoint, CliError> {
        let couplings = match opts.kind {
            SymmetryKind::Spin => dirac_coulomb::CoulombCouplings::new(opts.fixed, value),
            SymmetryKind::Pseudospin => dirac_coulomb::CoulombCouplings::new(value, opts.fixed),
        };
        let evaluations = states
            .iter()
            .zip(&orders)
            .map(|(&qn, &order)| {
                let expansion = match opts.kind {
                    SymmetryKind::Spin => spin_expansion(couplings, qn, cfg.branch, order),
                    SymmetryKind::Pseudospin => pspin_expansion(couplings, qn, cfg.branch, order),
                }
                .map_err(|e| CliError::Invalid(e.to_string()))?;
                let (exact, rejection) = match validate_bound_state(couplings, qn, cfg.branch) {
                    Verdict::Accepted { .. } => match energy(couplings, qn, cfg.branch) {
                        Ok(level) => (Some(level.energy), None),
                        Err(SpectrumError::Rejected(r)) => (None, Some(r)),
                        Err(e) => return Err(CliError::Invalid(e.to_string())),
                    },
                    Verdict::Rejected(r) => (None, Some(r)),
                };
                Ok(StateEvaluation {
                    label: qn.label(),
                    exact,
                    rejection,
                    series: expansion.truncated_value,
                    realizable: expansion.realizable,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let splittings = evaluations
            .chunks(2)
            .map(|pair| match (pair[0].exact, pair[1].exact) {
                (Some(a), Some(b)) => Some(b - a),
                _ => None,
            })
            .collect();
        Ok(SweepPoint {
            value,
            states: evaluations,
            splittings,
        })
    };
    let (fixed_coupling, swept_coupling) = match opts.kind {
        SymmetryKind::Spin => ("alpha_sigma", "alpha_delta"),
        SymmetryKind::Pseudospin => ("alpha_delta", "alpha_sigma"),
    };
    Ok(SweepDocument {
        schema: SWEEP_SCHEMA.to_string(),
        kind: opts.kind,
        branch: cfg.branch,
        fixed_coupling: fixed_coupling.to_string(),
        fixed_value: opts.fixed,
        swept_coupling: swept_coupling.to_string(),
        doublets: opts
            .doublets
            .iter()
            .map(|d| DoubletLabels {
                first: d.first.label(),
                second: d.second.label(),
            })
            .collect(),
        points: opts.values().into_iter().map(point).collect::<Result<_, _>>()?,
    })
}

fn probe(cfg: &RunConfig, opts: &SweepOptions, step: f64) -> Result<ProbeDocument, CliError> {
    let probes = opts
        .doublets
        .iter()
        .flat_map(|d| [d.first, d.second])
        .map(|qn| {
            perturbativity_probe(cfg.couplings, qn, cfg.branch, opts.kind, step)
                .map_err(|e| CliError::Invalid(format!("{qn}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ProbeDocument {
        schema: PROBE_SCHEMA.to_string(),
        base: cfg.couplings,
        probes,
    })
}

pub fn cmd_symmetry(cfg: &RunConfig, opts: &SweepOptions) -> Result<Vec<Artifact>, CliError> {
    let ext = cfg.format.extension();
    let artifact = match opts.probe_step {
        Some(step) => Artifact {
            name: format!("probe_{}_{}.{ext}", opts.kind, cfg.branch),
            contents: render(&probe(cfg, opts, step)?, cfg.format, ProbeDocument::to_csv, ProbeDocument::to_plotdata)?,
        },
        None => Artifact {
            name: format!("sweep_{}_{}.{ext}", opts.kind, cfg.branch),
            contents: render(&sweep(cfg, opts)?, cfg.format, SweepDocument::to_csv, SweepDocument::to_plotdata)?,
        },
    };
    Ok(vec![artifact])
}

/// Computes the artifacts of a validated configuration.
pub fn run(cfg: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    match &cfg.command {
        CommandConfig::Spectrum { n_max } => cmd_spectrum(cfg, *n_max),
        CommandConfig::Wavefunction { states, grid } => cmd_wavefunction(cfg, states, grid),
        CommandConfig::Symmetry(opts) => cmd_symmetry(cfg, opts),
    }
}

/// Writes artifacts to standard output, a single file, or a directory.
pub fn emit(artifacts: &[Artifact], target: &OutputTarget, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    match target {
        OutputTarget::Stdout => {
            for a in artifacts {
                out.write_all(a.contents.as_bytes())?;
            }
        }
        OutputTarget::File(path) => {
            let all: String = artifacts.iter().map(|a| a.contents.as_str()).collect();
            write_file(path, &all)?;
        }
        OutputTarget::Dir(dir) => {
            std::fs::create_dir_all(dir)?;
            for a in artifacts {
                write_file(&dir.join(&a.name), &a.contents)?;
            }
        }
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, contents)?;
    Ok(())
}

/// Parses, runs and emits; returns the process exit status.
pub fn main_with(cli: &Cli, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> u8 {
    let result = RunConfig::from_cli(cli).and_then(|cfg| {
        let artifacts = run(&cfg)?;
        emit(&artifacts, &cfg.output, out)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
