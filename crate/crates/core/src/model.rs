//! Couplings, quantum numbers, derived level parameters and bound-state
//! validation.
//!
//! Internally `mc² = 1` and `ħc = 1`; [`UnitSystem`] only matters at I/O.

use std::fmt;
use std::num::NonZeroI32;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spectrum::closed_form_energy;

/// Relative tolerance for the level invariants.
pub const INVARIANT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("energy-out-of-gap: |E| = {0} >= mc^2")]
    EnergyOutOfGap(f64),
    #[error("gamma-imaginary: alpha_Sigma*alpha_Delta = {product} >= kappa^2 = {kappa_sq}")]
    GammaImaginary { product: f64, kappa_sq: f64 },
    #[error("kappa must be a nonzero integer")]
    ZeroKappa,
    #[error("unit system values must be positive and finite")]
    InvalidUnits,
    #[error("level invariant violated: {0}")]
    InvariantViolated(String),
}

/// Energy and length units: `mc²` and the Compton wavelength `ħ/(mc)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    mass_energy: f64,
    compton_length: f64,
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self {
            mass_energy: 1.0,
            compton_length: 1.0,
        }
    }
}

impl UnitSystem {
    pub fn new(mass_energy: f64, compton_length: f64) -> Result<Self, ModelError> {
        let ok = |x: f64| x > 0.0 && x.is_finite();
        if !ok(mass_energy) || !ok(compton_length) {
            return Err(ModelError::InvalidUnits);
        }
        Ok(Self {
            mass_energy,
            compton_length,
        })
    }

    pub fn mass_energy(&self) -> f64 {
        self.mass_energy
    }

    pub fn compton_length(&self) -> f64 {
        self.compton_length
    }

    /// Converts an energy in units of `mc²` to this system.
    pub fn energy(&self, e_mc2: f64) -> f64 {
        e_mc2 * self.mass_energy
    }

    /// Converts a length in Compton wavelengths to this system.
    pub fn length(&self, r_compton: f64) -> f64 {
        r_compton * self.compton_length
    }
}

/// Dimensionless strengths of `Σ = α_Σ ħc/r` and `Δ = α_Δ ħc/r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoulombCouplings {
    pub alpha_sigma: f64,
    pub alpha_delta: f64,
}

impl CoulombCouplings {
    pub fn new(alpha_sigma: f64, alpha_delta: f64) -> Self {
        Self {
            alpha_sigma,
            alpha_delta,
        }
    }

    /// From vector and scalar strengths: `α_Σ = α_V + α_S`, `α_Δ = α_V − α_S`.
    pub fn from_vector_scalar(alpha_v: f64, alpha_s: f64) -> Self {
        Self {
            alpha_sigma: alpha_v + alpha_s,
            alpha_delta: alpha_v - alpha_s,
        }
    }

    pub fn alpha_v(&self) -> f64 {
        0.5 * (self.alpha_sigma + self.alpha_delta)
    }

    pub fn alpha_s(&self) -> f64 {
        0.5 * (self.alpha_sigma - self.alpha_delta)
    }

    pub fn product(&self) -> f64 {
        self.alpha_sigma * self.alpha_delta
    }
}

/// The Dirac `κ`, never zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub struct Kappa(NonZeroI32);

impl Kappa {
    pub fn new(k: i32) -> Result<Self, ModelError> {
        NonZeroI32::new(k).map(Kappa).ok_or(ModelError::ZeroKappa)
    }

    pub fn get(self) -> i32 {
        self.0.get()
    }

    pub fn abs(self) -> u32 {
        self.0.get().unsigned_abs()
    }

    pub fn as_f64(self) -> f64 {
        self.0.get() as f64
    }

    pub fn is_negative(self) -> bool {
        self.0.get() < 0
    }
}

impl TryFrom<i32> for Kappa {
    type Error = ModelError;
    fn try_from(k: i32) -> Result<Self, Self::Error> {
        Kappa::new(k)
    }
}

impl From<Kappa> for i32 {
    fn from(k: Kappa) -> i32 {
        k.get()
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.get())
    }
}

const ORBITAL_LETTERS: &[u8] = b"spdfghiklmnoqrtuvwxyz";

/// Spectroscopic letter for an orbital angular momentum.
pub fn orbital_letter(l: u32) -> Option<char> {
    ORBITAL_LETTERS.get(l as usize).map(|&b| b as char)
}

/// Inverse of [`orbital_letter`].
pub fn orbital_from_letter(c: char) -> Option<u32> {
    ORBITAL_LETTERS
        .iter()
        .position(|&b| b as char == c.to_ascii_lowercase())
        .map(|p| p as u32)
}

/// Radial quantum number and `κ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n_r: u32,
    pub kappa: Kappa,
}

impl QuantumNumbers {
    pub fn new(n_r: u32, kappa: i32) -> Result<Self, ModelError> {
        Ok(Self {
            n_r,
            kappa: Kappa::new(kappa)?,
        })
    }

    /// From spectroscopic data `n`, `ℓ` and `2j`, upper-component convention.
    pub fn from_spectroscopic(n: u32, l: u32, two_j: u32) -> Option<Self> {
        let kappa = if two_j == 2 * l + 1 {
            -(l as i32 + 1)
        } else if l > 0 && two_j == 2 * l - 1 {
            l as i32
        } else {
            return None;
        };
        let n_r = n.checked_sub(kappa.unsigned_abs())?;
        Self::new(n_r, kappa).ok()
    }

    /// Principal quantum number `n = n_r + |κ|`.
    pub fn n(&self) -> u32 {
        self.n_r + self.kappa.abs()
    }

    /// Orbital angular momentum of the upper component.
    pub fn l(&self) -> u32 {
        let k = self.kappa.get();
        if k < 0 {
            (-k - 1) as u32
        } else {
            k as u32
        }
    }

    /// Orbital angular momentum of the lower component (`κ̃ = −κ`).
    pub fn l_tilde(&self) -> u32 {
        let k = -self.kappa.get();
        if k < 0 {
            (-k - 1) as u32
        } else {
            k as u32
        }
    }

    /// `2j = 2|κ| − 1`.
    pub fn two_j(&self) -> u32 {
        2 * self.kappa.abs() - 1
    }

    pub fn j(&self) -> f64 {
        self.kappa.abs() as f64 - 0.5
    }

    /// Spectroscopic label `nℓ_j`, e.g. `2p3/2`.
    pub fn label(&self) -> String {
        let letter = orbital_letter(self.l()).unwrap_or('?');
        format!("{}{}{}/2", self.n(), letter, self.two_j())
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Which root of the closed-form eigenvalue formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Branch {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plus" | "+" => Ok(Branch::Plus),
            "minus" | "-" => Ok(Branch::Minus),
            other => Err(format!("unknown branch '{other}' (expected plus or minus)")),
        }
    }
}

/// Why a candidate `(couplings, qn, branch)` is not a bound state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Error)]
#[serde(rename_all = "kebab-case")]
pub enum Rejection {
    /// `α_Σ > 0, α_Δ < 0`, or no potential at all.
    #[error("no-bound-state")]
    NoBoundState,
    /// `α_Σ α_Δ ≥ κ²`.
    #[error("gamma-imaginary")]
    GammaImaginary,
    /// `n_r = 0` needs `κ < 0` on the plus branch and `κ > 0` on the minus branch.
    #[error("n_r0-sign-rule")]
    #[serde(rename = "n_r0-sign-rule")]
    NrZeroSignRule,
    /// `|E| ≥ mc²`.
    #[error("energy-out-of-gap")]
    EnergyOutOfGap,
    /// Root of the squared quantization condition with `η₁ = +ξ`.
    #[error("spurious-root")]
    SpuriousRoot,
}

/// Accept/reject decision for a candidate bound state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    Accepted { energy: f64 },
    Rejected(Rejection),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted { .. })
    }
}

/// A bound level with every derived parameter of the radial solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundLevel {
    pub couplings: CoulombCouplings,
    pub quantum_numbers: QuantumNumbers,
    pub branch: Branch,
    /// Energy in units of `mc²`.
    pub energy: f64,
    /// `√(m²c⁴ − E²)/(ħc)`, in inverse Compton wavelengths.
    pub lambda: f64,
    /// `√(κ² − α_Δ α_Σ)`.
    pub gamma: f64,
    /// `n_r + γ`.
    pub xi: f64,
    pub eta1: f64,
    pub eta2: f64,
}

impl BoundLevel {
    /// `|η₁ + ξ|`, zero for a true eigenvalue.
    pub fn quantization_residual(&self) -> f64 {
        (self.eta1 + self.xi).abs()
    }

    /// `|η₂² − η₁² − α_Δ α_Σ|` relative to `max(η₂², 1)`.
    pub fn eta_relation_residual(&self) -> f64 {
        let lhs = self.eta2 * self.eta2 - self.eta1 * self.eta1;
        (lhs - self.couplings.product()).abs() / (self.eta2 * self.eta2).max(1.0)
    }

    /// Checks `|E| < 1`, `η₁ = −ξ`, `η₂² − η₁² = α_Δα_Σ` and `λ = √(1 − E²)`.
    pub fn check_invariants(&self) -> Result<(), ModelError> {
        if self.energy.abs() >= 1.0 {
            return Err(ModelError::EnergyOutOfGap(self.energy.abs()));
        }
        let q = self.quantization_residual() / self.xi.max(1.0);
        if q > INVARIANT_TOL {
            return Err(ModelError::InvariantViolated(format!(
                "eta1 + xi = {} (relative {q:e})",
                self.eta1 + self.xi
            )));
        }
        let r = self.eta_relation_residual();
        if r > INVARIANT_TOL {
            return Err(ModelError::InvariantViolated(format!(
                "eta2^2 - eta1^2 - alpha_Delta*alpha_Sigma relative residual {r:e}"
            )));
        }
        // 1 - E^2 from the rounded energy carries an absolute error of ~eps
        let lam = ((1.0 - self.energy) * (1.0 + self.energy)).sqrt();
        if (lam - self.lambda).abs() > INVARIANT_TOL * lam + 4.0 * f64::EPSILON / lam {
            return Err(ModelError::InvariantViolated("lambda".into()));
        }
        Ok(())
    }

    /// `κ + η₂`, the coefficient of `L_{n_r}` in the radial functions.
    pub fn kappa_plus_eta2(&self) -> f64 {
        self.quantum_numbers.kappa.as_f64() + self.eta2
    }
}

/// `γ = √(κ² − α_Δ α_Σ)`.
pub fn gamma_of(couplings: &CoulombCouplings, kappa: Kappa) -> Result<f64, ModelError> {
    let kappa_sq = kappa.as_f64() * kappa.as_f64();
    let product = couplings.product();
    if product >= kappa_sq {
        return Err(ModelError::GammaImaginary { product, kappa_sq });
    }
    Ok((kappa_sq - product).sqrt())
}

/// Derived parameters of a level at a given energy. The quantization
/// condition is evaluated, not assumed: see [`BoundLevel::quantization_residual`].
pub fn derive_params(
    couplings: CoulombCouplings,
    qn: QuantumNumbers,
    branch: Branch,
    energy: f64,
) -> Result<BoundLevel, ModelError> {
    derive_with_gap(couplings, qn, branch, energy, 1.0 - energy, 1.0 + energy)
}

/// As [`derive_params`], with `1 − E` and `1 + E` supplied by the caller so
/// that levels near the gap edges keep their relative accuracy.
pub(crate) fn derive_with_gap(
    couplings: CoulombCouplings,
    qn: QuantumNumbers,
    branch: Branch,
    energy: f64,
    one_minus_e: f64,
    one_plus_e: f64,
) -> Result<BoundLevel, ModelError> {
    if !(energy.abs() < 1.0 && one_minus_e > 0.0 && one_plus_e > 0.0) {
        return Err(ModelError::EnergyOutOfGap(energy.abs()));
    }
    let gamma = gamma_of(&couplings, qn.kappa)?;
    let lambda = (one_minus_e * one_plus_e).sqrt();
    let s = couplings.alpha_sigma * one_plus_e;
    let d = couplings.alpha_delta * one_minus_e;
    Ok(BoundLevel {
        couplings,
        quantum_numbers: qn,
        branch,
        energy,
        lambda,
        gamma,
        xi: qn.n_r as f64 + gamma,
        eta1: (s - d) / (2.0 * lambda),
        eta2: (s + d) / (2.0 * lambda),
    })
}

/// Applies the existence constraints and, if they pass, evaluates the
/// closed-form root and checks it against `α_Σ(E+1) + α_Δ(E−1) < 0`.
pub fn validate_bound_state(couplings: CoulombCouplings, qn: QuantumNumbers, branch: Branch) -> Verdict {
    let (s, d) = (couplings.alpha_sigma, couplings.alpha_delta);
    if (s > 0.0 && d < 0.0) || (s == 0.0 && d == 0.0) {
        return Verdict::Rejected(Rejection::NoBoundState);
    }
    let kappa = qn.kappa.as_f64();
    if s * d >= kappa * kappa {
        return Verdict::Rejected(Rejection::GammaImaginary);
    }
    if qn.n_r == 0 {
        let allowed = match branch {
            Branch::Plus => qn.kappa.is_negative(),
            Branch::Minus => !qn.kappa.is_negative(),
        };
        if !allowed {
            return Verdict::Rejected(Rejection::NrZeroSignRule);
        }
    }
    let energy = closed_form_energy(s, d, qn.n_r, qn.kappa.get(), branch);
    if !(energy.abs() < 1.0) {
        return Verdict::Rejected(Rejection::EnergyOutOfGap);
    }
    if !(s * (energy + 1.0) + d * (energy - 1.0) < 0.0) {
        return Verdict::Rejected(Rejection::SpuriousRoot);
    }
    Verdict::Accepted { energy }
}
