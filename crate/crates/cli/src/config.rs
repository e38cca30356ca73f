//! Command-line arguments and their resolution into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dirac_coulomb::model::{Branch, CoulombCouplings, QuantumNumbers, UnitSystem};
use dirac_coulomb::radial::{GridScheme, DEFAULT_GRID_POINTS, DEFAULT_R_MIN};
use dirac_coulomb::symmetry::{DoubletSpec, SymmetryKind};

use crate::state::parse_state;
use crate::CliError;

pub const OUT_DIR_ENV: &str = "DIRAC_COULOMB_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "dirac-coulomb",
    version,
    about = "Bound states of the Dirac equation with vector and scalar Coulomb potentials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound-state energies up to a principal quantum number, with degeneracy groups.
    Spectrum(SpectrumArgs),
    /// Normalized radial functions g/r and f/r with node report.
    Wavefunction(WavefunctionArgs),
    /// Symmetry sweeps: exact vs truncated-series energies, doublet splittings, probes.
    Symmetry(SymmetryArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Plotdata,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Plotdata => "dat",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CouplingArgs {
    /// α_Σ = α_V + α_S (Σ = V + S = α_Σ/r)
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_sigma: Option<f64>,
    /// α_Δ = α_V − α_S (Δ = V − S = α_Δ/r)
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_delta: Option<f64>,
    /// Vector coupling (V = α_V/r)
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_v: Option<f64>,
    /// Scalar coupling (S = α_S/r)
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_s: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Rest energy mc² in MeV; adds a physical energy column
    #[arg(long)]
    pub mass_energy: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Output file (default: standard output, or a file in the output directory)
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Directory for default-named output files
    #[arg(long, env = OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub couplings: CouplingArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value = "plus")]
    pub branch: Branch,
    /// Largest principal quantum number n = n_r + |κ|
    #[arg(long, default_value_t = 3)]
    pub n_max: u32,
    /// Refuse couplings outside α_Σ < 0 < α_Δ < −α_Σ (attractive α_V < 0)
    #[arg(long)]
    pub physical_only: bool,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub couplings: CouplingArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value = "plus")]
    pub branch: Branch,
    /// State as `2p3/2` or `n_r,kappa`; repeatable
    #[arg(long = "state", required = true)]
    pub states: Vec<String>,
    /// Outer grid radius in Compton wavelengths (default: adapted to the state)
    #[arg(long)]
    pub r_max: Option<f64>,
    /// Innermost radius of a geometric grid
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub grid: Option<GridScheme>,
    /// Refuse couplings outside α_Σ < 0 < α_Δ < −α_Σ (attractive α_V < 0)
    #[arg(long)]
    pub physical_only: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SymmetryArgs {
    /// The fixed coupling: --alpha-sigma for spin, --alpha-delta for pseudospin
    #[command(flatten)]
    pub couplings: CouplingArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub kind: SymmetryKind,
    #[arg(long, default_value = "plus")]
    pub branch: Branch,
    /// Doublet members in pairs: `--state 2p1/2 --state 2p3/2`
    #[arg(long = "state")]
    pub states: Vec<String>,
    /// Start of the breaking-coupling sweep (α_Δ for spin, α_Σ for pseudospin)
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub sweep_from: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub sweep_to: f64,
    #[arg(long, default_value_t = 11)]
    pub sweep_points: usize,
    /// Highest series power kept (default: every printed term)
    #[arg(long)]
    pub order: Option<u32>,
    /// Report finite-difference vs analytic linear coefficients at the symmetry point instead of a sweep
    #[arg(long)]
    pub probe: bool,
    #[arg(long, default_value_t = 1e-4)]
    pub probe_step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OutputTarget {
    Stdout,
    File(PathBuf),
    Dir(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridOptions {
    pub scheme: GridScheme,
    pub r_min: f64,
    /// `None` keeps the per-state default radius.
    pub r_max: Option<f64>,
    pub points: usize,
    /// True when any grid flag was given.
    pub custom: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub kind: SymmetryKind,
    /// α_Σ for spin, α_Δ for pseudospin.
    pub fixed: f64,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub doublets: Vec<DoubletSpec>,
    pub order: Option<u32>,
    pub probe_step: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CommandConfig {
    Spectrum { n_max: u32 },
    Wavefunction { states: Vec<QuantumNumbers>, grid: GridOptions },
    Symmetry(SweepOptions),
}

/// A fully validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// For symmetry runs, the symmetry point (breaking coupling zero).
    pub couplings: CoulombCouplings,
    pub units: UnitSystem,
    /// Whether the user gave a rest energy.
    pub physical_units: bool,
    pub branch: Branch,
    pub format: OutputFormat,
    pub output: OutputTarget,
    pub command: CommandConfig,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn finite(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(config_err(format!("{name} must be finite, got {x}")))
    }
}

impl CouplingArgs {
    /// Exactly one of the pairs (α_Σ, α_Δ) or (α_V, α_S).
    pub fn resolve(&self) -> Result<CoulombCouplings, CliError> {
        match (self.alpha_sigma, self.alpha_delta, self.alpha_v, self.alpha_s) {
            (Some(s), Some(d), None, None) => Ok(CoulombCouplings::new(
                finite("alpha-sigma", s)?,
                finite("alpha-delta", d)?,
            )),
            (None, None, Some(v), Some(sc)) => Ok(CoulombCouplings::from_vector_scalar(
                finite("alpha-v", v)?,
                finite("alpha-s", sc)?,
            )),
            _ => Err(config_err(
                "give exactly one coupling pair: --alpha-sigma with --alpha-delta, or --alpha-v with --alpha-s",
            )),
        }
    }

    /// The single fixed coupling of a symmetry run.
    fn resolve_fixed(&self, kind: SymmetryKind) -> Result<f64, CliError> {
        if self.alpha_v.is_some() || self.alpha_s.is_some() {
            return Err(config_err(
                "symmetry runs take the fixed coupling as --alpha-sigma (spin) or --alpha-delta (pseudospin)",
            ));
        }
        match (kind, self.alpha_sigma, self.alpha_delta) {
            (SymmetryKind::Spin, Some(s), None) => finite("alpha-sigma", s),
            (SymmetryKind::Pseudospin, None, Some(d)) => finite("alpha-delta", d),
            (SymmetryKind::Spin, _, _) => Err(config_err(
                "spin runs need --alpha-sigma only; alpha_Delta is the swept coupling",
            )),
            (SymmetryKind::Pseudospin, _, _) => Err(config_err(
                "pseudospin runs need --alpha-delta only; alpha_Sigma is the swept coupling",
            )),
        }
    }
}

impl CommonArgs {
    fn units(&self) -> Result<UnitSystem, CliError> {
        let mass = self.mass_energy.unwrap_or(1.0);
        UnitSystem::new(mass, 1.0).map_err(|e| config_err(format!("mass-energy: {e}")))
    }

    fn target(&self) -> OutputTarget {
        match (&self.output, &self.out_dir) {
            (Some(path), _) => OutputTarget::File(path.clone()),
            (None, Some(dir)) => OutputTarget::Dir(dir.clone()),
            (None, None) => OutputTarget::Stdout,
        }
    }
}

fn physical(c: CoulombCouplings, only: bool) -> Result<CoulombCouplings, CliError> {
    let (s, d) = (c.alpha_sigma, c.alpha_delta);
    if only && !(s < 0.0 && d > 0.0 && -s > d) {
        return Err(config_err(format!(
            "non-physical-couplings: --physical-only needs alpha_Sigma < 0 < alpha_Delta < -alpha_Sigma, got ({s}, {d})"
        )));
    }
    Ok(c)
}

fn parse_states(raw: &[String]) -> Result<Vec<QuantumNumbers>, CliError> {
    raw.iter().map(|s| parse_state(s).map_err(CliError::Config)).collect()
}

fn default_doublet(kind: SymmetryKind) -> DoubletSpec {
    match kind {
        SymmetryKind::Spin => DoubletSpec::spin(1, 1),
        SymmetryKind::Pseudospin => DoubletSpec::pseudospin(1, -1),
    }
    .expect("default doublet is valid")
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        match &cli.command {
            Command::Spectrum(a) => {
                if a.n_max == 0 {
                    return Err(config_err("n-max must be at least 1"));
                }
                Ok(Self {
                    couplings: physical(a.couplings.resolve()?, a.physical_only)?,
                    units: a.common.units()?,
                    physical_units: a.common.mass_energy.is_some(),
                    branch: a.branch,
                    format: a.common.format,
                    output: a.common.target(),
                    command: CommandConfig::Spectrum { n_max: a.n_max },
                })
            }
            Command::Wavefunction(a) => {
                let custom = a.r_max.is_some() || a.r_min.is_some() || a.points.is_some() || a.grid.is_some();
                let grid = GridOptions {
                    scheme: a.grid.unwrap_or(GridScheme::Geometric),
                    r_min: a.r_min.unwrap_or(DEFAULT_R_MIN),
                    r_max: a.r_max,
                    points: a.points.unwrap_or(DEFAULT_GRID_POINTS),
                    custom,
                };
                Ok(Self {
                    couplings: physical(a.couplings.resolve()?, a.physical_only)?,
                    units: a.common.units()?,
                    physical_units: a.common.mass_energy.is_some(),
                    branch: a.branch,
                    format: a.common.format,
                    output: a.common.target(),
                    command: CommandConfig::Wavefunction {
                        states: parse_states(&a.states)?,
                        grid,
                    },
                })
            }
            Command::Symmetry(a) => {
                let fixed = a.couplings.resolve_fixed(a.kind)?;
                let couplings = match a.kind {
                    SymmetryKind::Spin => CoulombCouplings::new(fixed, 0.0),
                    SymmetryKind::Pseudospin => CoulombCouplings::new(0.0, fixed),
                };
                let states = parse_states(&a.states)?;
                if states.len() % 2 != 0 {
                    return Err(config_err("--state values must come in doublet pairs"));
                }
                let doublets = if states.is_empty() {
                    vec![default_doublet(a.kind)]
                } else {
                    states
                        .chunks(2)
                        .map(|p| DoubletSpec::new(a.kind, p[0], p[1]).map_err(|e| config_err(e.to_string())))
                        .collect::<Result<Vec<_>, _>>()?
                };
                if !a.probe {
                    finite("sweep-from", a.sweep_from)?;
                    finite("sweep-to", a.sweep_to)?;
                    if a.sweep_points == 0 {
                        return Err(config_err("sweep-points must be at least 1"));
                    }
                    if a.sweep_points == 1 && a.sweep_from != a.sweep_to {
                        return Err(config_err("a sweep over a range needs at least 2 points"));
                    }
                } else if !(a.probe_step > 0.0 && a.probe_step.is_finite()) {
                    return Err(config_err(format!("probe-step must be positive, got {}", a.probe_step)));
                }
                Ok(Self {
                    couplings,
                    units: a.common.units()?,
                    physical_units: a.common.mass_energy.is_some(),
                    branch: a.branch,
                    format: a.common.format,
                    output: a.common.target(),
                    command: CommandConfig::Symmetry(SweepOptions {
                        kind: a.kind,
                        fixed,
                        from: a.sweep_from,
                        to: a.sweep_to,
                        points: a.sweep_points,
                        doublets,
                        order: a.order,
                        probe_step: a.probe.then_some(a.probe_step),
                    }),
                })
            }
        }
    }
}

impl SweepOptions {
    /// Evenly spaced breaking-coupling values with exact endpoints.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.from];
        }
        let last = self.points - 1;
        (0..self.points)
            .map(|i| {
                if i == last {
                    self.to
                } else {
                    self.from + (self.to - self.from) * i as f64 / last as f64
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("dirac-coulomb").chain(args.iter().copied()))
            .map_err(|e| CliError::Config(e.to_string()))?;
        RunConfig::from_cli(&cli)
    }

    #[test]
    fn exactly_one_parameterization() {
        assert!(parse(&["spectrum", "--alpha-sigma", "-0.8", "--alpha-delta", "0.5"]).is_ok());
        assert!(parse(&["spectrum", "--alpha-v", "-0.5", "--alpha-s", "0"]).is_ok());
        assert!(parse(&["spectrum", "--alpha-sigma", "-0.8"]).is_err());
        assert!(parse(&["spectrum", "--alpha-sigma", "-0.8", "--alpha-delta", "0.5", "--alpha-v", "0.1"]).is_err());
        assert!(parse(&["spectrum"]).is_err());
    }

    #[test]
    fn vector_scalar_maps_to_sigma_delta() {
        let a = parse(&["spectrum", "--alpha-v", "-0.5", "--alpha-s", "0"]).unwrap();
        let b = parse(&["spectrum", "--alpha-sigma", "-0.5", "--alpha-delta", "-0.5"]).unwrap();
        assert_eq!(a.couplings, b.couplings);
    }

    #[test]
    fn physical_only_filter() {
        assert!(parse(&["spectrum", "--alpha-sigma", "-0.8", "--alpha-delta", "0.5", "--physical-only"]).is_ok());
        assert!(parse(&["spectrum", "--alpha-sigma", "-0.4", "--alpha-delta", "0.5", "--physical-only"]).is_err());
        assert!(parse(&["spectrum", "--alpha-v", "-0.5", "--alpha-s", "0", "--physical-only"]).is_err());
        assert!(parse(&["spectrum", "--alpha-v", "-0.5", "--alpha-s", "0"]).is_ok());
    }

    #[test]
    fn unknown_format_is_rejected() {
        assert!(parse(&["spectrum", "--alpha-sigma", "-0.8", "--alpha-delta", "0.5", "--format", "xml"]).is_err());
    }

    #[test]
    fn symmetry_needs_the_fixed_coupling_only() {
        assert!(parse(&["symmetry", "--kind", "spin", "--alpha-sigma", "-0.8"]).is_ok());
        assert!(parse(&["symmetry", "--kind", "spin", "--alpha-delta", "0.5"]).is_err());
        assert!(parse(&["symmetry", "--kind", "pseudospin", "--alpha-delta", "0.5"]).is_ok());
        assert!(parse(&["symmetry", "--kind", "pseudospin", "--alpha-sigma", "-0.8", "--alpha-delta", "0.5"]).is_err());
    }

    #[test]
    fn doublets_come_in_pairs() {
        let ok = parse(&["symmetry", "--kind", "spin", "--alpha-sigma", "-0.8", "--state", "2p1/2", "--state", "2p3/2"]);
        assert!(ok.is_ok());
        let odd = parse(&["symmetry", "--kind", "spin", "--alpha-sigma", "-0.8", "--state", "2p1/2"]);
        assert!(odd.is_err());
        let wrong = parse(&["symmetry", "--kind", "spin", "--alpha-sigma", "-0.8", "--state", "2s1/2", "--state", "2p3/2"]);
        assert!(wrong.is_err());
    }

    #[test]
    fn sweep_values_hit_endpoints() {
        let cfg = parse(&[
            "symmetry", "--kind", "spin", "--alpha-sigma", "-0.8", "--sweep-from", "0", "--sweep-to", "0.5",
            "--sweep-points", "6",
        ])
        .unwrap();
        let CommandConfig::Symmetry(sweep) = cfg.command else {
            panic!("not a symmetry config")
        };
        let v = sweep.values();
        assert_eq!(v.len(), 6);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[5], 0.5);
    }

    #[test]
    fn output_precedence() {
        let cfg = parse(&[
            "spectrum", "--alpha-sigma", "-0.8", "--alpha-delta", "0.5", "--output", "a.csv", "--out-dir", "d",
        ])
        .unwrap();
        assert_eq!(cfg.output, OutputTarget::File("a.csv".into()));
    }
}
