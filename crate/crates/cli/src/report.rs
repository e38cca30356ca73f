//! Versioned JSON documents, their reader, and the CSV/plotdata writers.
//!
//! Numbers are written in shortest round-trip scientific form (`{:e}`), so
//! every text format reproduces the computed doubles exactly.

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use dirac_coulomb::model::{Branch, CoulombCouplings, Rejection, UnitSystem};
use dirac_coulomb::radial::RadialSolution;
use dirac_coulomb::spectrum::SpectrumTable;
use dirac_coulomb::symmetry::{ProbeReport, SymmetryKind};

use crate::CliError;

pub const SPECTRUM_SCHEMA: &str = "dirac-coulomb/spectrum/v1";
pub const WAVEFUNCTION_SCHEMA: &str = "dirac-coulomb/wavefunction/v1";
pub const SWEEP_SCHEMA: &str = "dirac-coulomb/symmetry-sweep/v1";
pub const PROBE_SCHEMA: &str = "dirac-coulomb/symmetry-probe/v1";

pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:e}")
    } else {
        "nan".to_string()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "nan".to_string(), num)
}

/// One row of the spectrum table as printed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub label: String,
    pub n_r: u32,
    pub kappa: i32,
    pub n: u32,
    pub branch: Branch,
    /// `E/mc²`.
    pub energy: f64,
    /// `E` in MeV when a rest energy was given.
    pub energy_mev: Option<f64>,
    pub group: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub schema: String,
    pub units: UnitSystem,
    pub rows: Vec<SpectrumRow>,
    pub table: SpectrumTable,
}

impl SpectrumDocument {
    pub fn new(table: SpectrumTable, units: UnitSystem, physical: bool) -> Self {
        let rows = table
            .levels
            .iter()
            .enumerate()
            .map(|(i, level)| {
                let q = level.quantum_numbers;
                SpectrumRow {
                    label: q.label(),
                    n_r: q.n_r,
                    kappa: q.kappa.get(),
                    n: q.n(),
                    branch: level.branch,
                    energy: level.energy,
                    energy_mev: physical.then(|| units.energy(level.energy)),
                    group: table.group_of(i).expect("every level belongs to a group"),
                }
            })
            .collect();
        Self {
            schema: SPECTRUM_SCHEMA.to_string(),
            units,
            rows,
            table,
        }
    }

    pub fn to_csv(&self) -> String {
        let physical = self.rows.iter().any(|r| r.energy_mev.is_some());
        let mut out = String::from("label,n_r,kappa,n,branch,E [mc^2]");
        if physical {
            out.push_str(",E [MeV]");
        }
        out.push_str(",group\n");
        for r in &self.rows {
            let _ = write!(out, "{},{},{},{},{},{}", r.label, r.n_r, r.kappa, r.n, r.branch, num(r.energy));
            if physical {
                let _ = write!(out, ",{}", opt(r.energy_mev));
            }
            let _ = writeln!(out, ",{}", r.group);
        }
        out
    }

    pub fn to_plotdata(&self) -> String {
        let c = self.table.couplings;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# spectrum alpha_sigma {} alpha_delta {} branch {} n_max {}",
            num(c.alpha_sigma),
            num(c.alpha_delta),
            self.table.branch,
            self.table.n_max
        );
        let _ = writeln!(out, "# n n_r kappa E[mc^2] group label");
        for r in &self.rows {
            let _ = writeln!(out, "{} {} {} {} {} {}", r.n, r.n_r, r.kappa, num(r.energy), r.group, r.label);
        }
        out
    }
}

/// Sampled radial functions of one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateProfile {
    pub label: String,
    pub n_r: u32,
    pub kappa: i32,
    pub energy: f64,
    pub normalization_constant: f64,
    /// Node counts on `[0, ∞)`, the origin counted as one node.
    pub node_count_g: usize,
    pub node_count_f: usize,
    /// Interior zeros in Compton wavelengths.
    pub zeros_g: Vec<f64>,
    pub zeros_f: Vec<f64>,
    pub r: Vec<f64>,
    pub g_over_r: Vec<f64>,
    pub f_over_r: Vec<f64>,
}

impl StateProfile {
    pub fn from_solution(s: &RadialSolution) -> Self {
        let q = s.level.quantum_numbers;
        let r = s.grid.points().to_vec();
        Self {
            label: q.label(),
            n_r: q.n_r,
            kappa: q.kappa.get(),
            energy: s.level.energy,
            normalization_constant: s.normalization_constant,
            node_count_g: s.node_count_g,
            node_count_f: s.node_count_f,
            zeros_g: s.zeros_g.clone(),
            zeros_f: s.zeros_f.clone(),
            g_over_r: s.g_samples.iter().zip(&r).map(|(g, r)| g / r).collect(),
            f_over_r: s.f_samples.iter().zip(&r).map(|(f, r)| f / r).collect(),
            r,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionDocument {
    pub schema: String,
    pub units: UnitSystem,
    pub couplings: CoulombCouplings,
    pub branch: Branch,
    pub states: Vec<StateProfile>,
}

impl WavefunctionDocument {
    pub fn new(couplings: CoulombCouplings, branch: Branch, units: UnitSystem, states: Vec<StateProfile>) -> Self {
        Self {
            schema: WAVEFUNCTION_SCHEMA.to_string(),
            units,
            couplings,
            branch,
            states,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("state,r [L_C],g/r [L_C^-3/2],f/r [L_C^-3/2]\n");
        for s in &self.states {
            for i in 0..s.r.len() {
                let _ = writeln!(out, "{},{},{},{}", s.label, num(s.r[i]), num(s.g_over_r[i]), num(s.f_over_r[i]));
            }
        }
        out
    }

    /// One whitespace-separated block per state, blocks separated by two
    /// blank lines.
    pub fn to_plotdata(&self) -> String {
        let blocks: Vec<String> = self.states.iter().map(|s| self.block(s)).collect();
        blocks.join("\n\n")
    }

    fn block(&self, s: &StateProfile) -> String {
        let join = |v: &[f64]| v.iter().map(|&x| num(x)).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# state {} n_r {} kappa {} branch {}",
            s.label, s.n_r, s.kappa, self.branch
        );
        let _ = writeln!(
            out,
            "# alpha_sigma {} alpha_delta {}",
            num(self.couplings.alpha_sigma),
            num(self.couplings.alpha_delta)
        );
        let _ = writeln!(out, "# E[mc^2] {} A {}", num(s.energy), num(s.normalization_constant));
        let _ = writeln!(out, "# nodes (origin counted) g {} f {}", s.node_count_g, s.node_count_f);
        let _ = writeln!(out, "# zeros_g {}", join(&s.zeros_g));
        let _ = writeln!(out, "# zeros_f {}", join(&s.zeros_f));
        let _ = writeln!(out, "# r[L_C] g/r f/r");
        for i in 0..s.r.len() {
            let _ = writeln!(out, "{} {} {}", num(s.r[i]), num(s.g_over_r[i]), num(s.f_over_r[i]));
        }
        out
    }
}

/// A state evaluated at one sweep point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateEvaluation {
    pub label: String,
    /// Exact energy, absent when the state is not bound here.
    pub exact: Option<f64>,
    pub rejection: Option<Rejection>,
    /// Truncated expansion around the symmetry point.
    pub series: f64,
    pub realizable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    /// The breaking coupling.
    pub value: f64,
    pub states: Vec<StateEvaluation>,
    /// `E(second) − E(first)` per doublet, exact energies.
    pub splittings: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoubletLabels {
    pub first: String,
    pub second: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDocument {
    pub schema: String,
    pub kind: SymmetryKind,
    pub branch: Branch,
    pub fixed_coupling: String,
    pub fixed_value: f64,
    pub swept_coupling: String,
    pub doublets: Vec<DoubletLabels>,
    pub points: Vec<SweepPoint>,
}

impl SweepDocument {
    fn state_labels(&self) -> Vec<String> {
        self.doublets
            .iter()
            .flat_map(|d| [d.first.clone(), d.second.clone()])
            .collect()
    }

    fn columns(&self) -> Vec<String> {
        let labels = self.state_labels();
        let mut cols = vec![self.swept_coupling.clone()];
        cols.extend(labels.iter().map(|l| format!("E({l}) [mc^2]")));
        cols.extend(labels.iter().map(|l| format!("series({l}) [mc^2]")));
        cols.extend(
            self.doublets
                .iter()
                .map(|d| format!("split({}-{}) [mc^2]", d.second, d.first)),
        );
        cols
    }

    fn row(p: &SweepPoint) -> Vec<String> {
        let mut row = vec![num(p.value)];
        row.extend(p.states.iter().map(|s| opt(s.exact)));
        row.extend(p.states.iter().map(|s| num(s.series)));
        row.extend(p.splittings.iter().map(|&s| opt(s)));
        row
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns().join(",");
        out.push('\n');
        for p in &self.points {
            out.push_str(&Self::row(p).join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_plotdata(&self) -> String {
        let mut out = format!(
            "# {} sweep {} {} branch {}\n",
            self.kind,
            self.fixed_coupling,
            num(self.fixed_value),
            self.branch
        );
        let cols: Vec<String> = self.columns().iter().map(|c| c.replace(' ', "")).collect();
        let _ = writeln!(out, "# {}", cols.join(" "));
        for p in &self.points {
            out.push_str(&Self::row(p).join(" "));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeDocument {
    pub schema: String,
    pub base: CoulombCouplings,
    pub probes: Vec<ProbeReport>,
}

impl ProbeDocument {
    const HEADER: [&'static str; 9] = [
        "kind",
        "branch",
        "state",
        "step",
        "zeroth_order [mc^2]",
        "realizable",
        "numeric_slope",
        "analytic_slope",
        "mismatch",
    ];

    fn row(p: &ProbeReport) -> Vec<String> {
        vec![
            p.kind.to_string(),
            p.branch.to_string(),
            p.quantum_numbers.label(),
            num(p.step),
            num(p.zeroth_order),
            p.realizable.to_string(),
            opt(p.numeric_slope),
            opt(p.analytic_slope),
            opt(p.mismatch),
        ]
    }

    pub fn to_csv(&self) -> String {
        let mut out = Self::HEADER.join(",");
        out.push('\n');
        for p in &self.probes {
            out.push_str(&Self::row(p).join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_plotdata(&self) -> String {
        let header: Vec<String> = Self::HEADER.iter().map(|h| h.replace(' ', "")).collect();
        let mut out = format!(
            "# probe at alpha_sigma {} alpha_delta {}\n# {}\n",
            num(self.base.alpha_sigma),
            num(self.base.alpha_delta),
            header.join(" ")
        );
        for p in &self.probes {
            out.push_str(&Self::row(p).join(" "));
            out.push('\n');
        }
        out
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

#[derive(Deserialize)]
struct SchemaTag {
    schema: String,
}

/// Reads a document written by this tool, checking its schema tag.
pub fn read_document<T: DeserializeOwned>(text: &str, schema: &str) -> Result<T, CliError> {
    let tag: SchemaTag = serde_json::from_str(text)?;
    if tag.schema != schema {
        return Err(CliError::Config(format!(
            "schema mismatch: expected {schema}, found {}",
            tag.schema
        )));
    }
    Ok(serde_json::from_str(text)?)
}
