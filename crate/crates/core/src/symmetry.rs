//! Spin and pseudospin symmetry: weak-breaking expansions, exact-symmetry
//! energies, the hydrogenic reduction, doublet splittings and the
//! finite-difference perturbativity probe.
//!
//! Spin symmetry is `α_Δ = 0`, pseudospin symmetry is `α_Σ = 0`. The
//! expansions are power series in the breaking coupling with coefficients
//! depending on the other coupling, `n` and `κ`.

use num_traits::Float;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{validate_bound_state, Branch, CoulombCouplings, QuantumNumbers, Rejection};
use crate::spectrum::{energy, SpectrumError};

/// CODATA 2018 fine-structure constant.
pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;

const FIXED_POINT_TOL: f64 = 1e-13;
const FIXED_POINT_MAX_STEPS: usize = 10_000;
const FIXED_POINT_DAMPING: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymmetryError {
    #[error("order {order} above the highest printed term {max}")]
    OrderTooHigh { order: u32, max: u32 },
    #[error("wrong-sign-coupling: {kind} symmetry needs {expected}, got {coupling}")]
    WrongSignCoupling {
        kind: SymmetryKind,
        expected: &'static str,
        coupling: f64,
    },
    #[error("invalid-n: {0}")]
    InvalidN(u32),
    #[error("no-convergence after {steps} fixed-point steps")]
    NoConvergence { steps: usize },
    #[error("partner-invalid: {state} rejected ({reason})")]
    PartnerInvalid { state: String, reason: Rejection },
    #[error("invalid doublet: {0}")]
    InvalidDoublet(String),
    #[error("probe base must have alpha_{coupling} = 0, got {value}")]
    NonZeroBase { coupling: &'static str, value: f64 },
    #[error("step-too-large: Richardson ratio {ratio} does not show O(h^2) convergence")]
    StepTooLarge { ratio: f64 },
    #[error("invalid probe step {0}")]
    InvalidStep(f64),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryKind {
    Spin,
    Pseudospin,
}

impl std::fmt::Display for SymmetryKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SymmetryKind::Spin => "spin",
            SymmetryKind::Pseudospin => "pseudospin",
        })
    }
}

impl std::str::FromStr for SymmetryKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spin" => Ok(SymmetryKind::Spin),
            "pseudospin" | "pspin" => Ok(SymmetryKind::Pseudospin),
            other => Err(format!("unknown symmetry kind '{other}' (expected spin or pseudospin)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionParameter {
    AlphaDelta,
    AlphaSigma,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionResult {
    pub parameter: ExpansionParameter,
    /// `(power, coefficient)` for powers `0..=order`.
    pub terms: Vec<(u32, f64)>,
    /// The truncated series evaluated at the breaking coupling.
    pub truncated_value: f64,
    /// False when the symmetry limit has no bound state (zeroth order `±mc²`).
    pub realizable: bool,
}

fn cast<T: Float>(x: f64) -> T {
    T::from(x).expect("f64 is representable")
}

/// Coefficients of `E^±` in powers of `α_Δ` at fixed `α_Σ`.
/// Plus: orders 0 to 2; minus: orders 0 to 3 with no linear term.
pub fn spin_coefficients<T: Float>(alpha_sigma: T, n: u32, kappa: i32, branch: Branch) -> Vec<T> {
    let s = alpha_sigma;
    let n: T = cast(n as f64);
    let k: T = cast(kappa as f64);
    let ka: T = k.abs();
    let k2 = k * k;
    let one = T::one();
    let two: T = cast(2.0);
    let four: T = cast(4.0);
    let split = k2 - two * n * ka;
    match branch {
        Branch::Plus => {
            let q = s * s + four * n * n;
            let c0 = one - two * s * s / q;
            let c1 = four * s * s * s * split / (k2 * q * q);
            let brace = four * n * n * n * ka * (s * s + four * (n * n - four * k2))
                + k2 * (s * s * (k2 - four * n * n)
                    + cast::<T>(20.0) * k2 * n * n
                    + cast::<T>(48.0) * n * n * n * n);
            let c2 = -(s * s * s * s) * brace / (two * k2 * k2 * n * n * q * q * q);
            vec![c0, c1, c2]
        }
        Branch::Minus => {
            let c2 = one / (two * n * n);
            let c3 = -s * split / (four * k2 * n * n * n * n);
            vec![-one, T::zero(), c2, c3]
        }
    }
}

/// Coefficients of `E^±` in powers of `α_Σ` at fixed `α_Δ`.
/// Plus: orders 0 to 3 with no linear term; minus: orders 0 to 2.
pub fn pspin_coefficients<T: Float>(alpha_delta: T, n: u32, kappa: i32, branch: Branch) -> Vec<T> {
    let d = alpha_delta;
    let n: T = cast(n as f64);
    let k: T = cast(kappa as f64);
    let ka: T = k.abs();
    let k2 = k * k;
    let one = T::one();
    let two: T = cast(2.0);
    let four: T = cast(4.0);
    let split = k2 - two * n * ka;
    match branch {
        Branch::Plus => {
            let c2 = -one / (two * n * n);
            let c3 = d * split / (four * k2 * n * n * n * n);
            vec![one, T::zero(), c2, c3]
        }
        Branch::Minus => {
            let q = d * d + four * n * n;
            let c0 = -one + two * d * d / q;
            let c1 = -four * d * d * d * split / (k2 * q * q);
            let brace = four * n * n * n * ka * (d * d + four * (n * n - four * k2))
                + k2 * (d * d * (k2 - four * n * n)
                    + cast::<T>(20.0) * k2 * n * n
                    + cast::<T>(48.0) * n * n * n * n);
            let c2 = d * d * d * d * brace / (two * k2 * k2 * n * n * q * q * q);
            vec![c0, c1, c2]
        }
    }
}

/// Horner evaluation of `Σ c_k x^k`.
pub fn evaluate_series<T: Float>(coefficients: &[T], x: T) -> T {
    coefficients
        .iter()
        .rev()
        .fold(T::zero(), |acc, &c| acc * x + c)
}

fn truncate(
    coefficients: Vec<f64>,
    order: u32,
    x: f64,
    parameter: ExpansionParameter,
    realizable: bool,
) -> Result<ExpansionResult, SymmetryError> {
    let max = coefficients.len() as u32 - 1;
    if order > max {
        return Err(SymmetryError::OrderTooHigh { order, max });
    }
    let kept = &coefficients[..=order as usize];
    Ok(ExpansionResult {
        parameter,
        terms: kept.iter().enumerate().map(|(p, &c)| (p as u32, c)).collect(),
        truncated_value: evaluate_series(kept, x),
        realizable,
    })
}

fn symmetry_point(couplings: CoulombCouplings, kind: SymmetryKind) -> CoulombCouplings {
    match kind {
        SymmetryKind::Spin => CoulombCouplings::new(couplings.alpha_sigma, 0.0),
        SymmetryKind::Pseudospin => CoulombCouplings::new(0.0, couplings.alpha_delta),
    }
}

fn realizable(couplings: CoulombCouplings, qn: QuantumNumbers, branch: Branch, kind: SymmetryKind) -> bool {
    validate_bound_state(symmetry_point(couplings, kind), qn, branch).is_accepted()
}

/// Expansion of `E^±` in `α_Δ` around exact spin symmetry, truncated at
/// `order` and evaluated at `couplings.alpha_delta`.
pub fn spin_expansion(
    couplings: CoulombCouplings,
    qn: QuantumNumbers,
    branch: Branch,
    order: u32,
) -> Result<ExpansionResult, SymmetryError> {
    let coefficients = spin_coefficients(couplings.alpha_sigma, qn.n(), qn.kappa.get(), branch);
    truncate(
        coefficients,
        order,
        couplings.alpha_delta,
        ExpansionParameter::AlphaDelta,
        realizable(couplings, qn, branch, SymmetryKind::Spin),
    )
}

/// Expansion of `E^±` in `α_Σ` around exact pseudospin symmetry, truncated
/// at `order` and evaluated at `couplings.alpha_sigma`.
pub fn pspin_expansion(
    couplings: CoulombCouplings,
    qn: QuantumNumbers,
    branch: Branch,
    order: u32,
) -> Result<ExpansionResult, SymmetryError> {
    let coefficients = pspin_coefficients(couplings.alpha_delta, qn.n(), qn.kappa.get(), branch);
    truncate(
        coefficients,
        order,
        couplings.alpha_sigma,
        ExpansionParameter::AlphaSigma,
        realizable(couplings, qn, branch, SymmetryKind::Pseudospin),
    )
}

fn check_sign(kind: SymmetryKind, coupling: f64, n: u32) -> Result<(), SymmetryError> {
    if n == 0 {
        return Err(SymmetryError::InvalidN(n));
    }
    let (ok, expected) = match kind {
        SymmetryKind::Spin => (coupling < 0.0, "alpha_Sigma < 0"),
        SymmetryKind::Pseudospin => (coupling > 0.0, "alpha_Delta > 0"),
    };
    if !ok {
        return Err(SymmetryError::WrongSignCoupling {
            kind,
            expected,
            coupling,
        });
    }
    Ok(())
}

/// Level energy under exact symmetry, which depends on `n` only:
/// spin `1 − 2α_Σ²/(α_Σ² + 4n²)`, pseudospin `−1 + 2α_Δ²/(α_Δ² + 4n²)`.
pub fn exact_symmetry_energy(kind: SymmetryKind, coupling: f64, n: u32) -> Result<f64, SymmetryError> {
    check_sign(kind, coupling, n)?;
    let c2 = coupling * coupling;
    let q = c2 + 4.0 * (n as f64).powi(2);
    Ok(match kind {
        SymmetryKind::Spin => 1.0 - 2.0 * c2 / q,
        SymmetryKind::Pseudospin => -1.0 + 2.0 * c2 / q,
    })
}

/// Self-consistent hydrogenic problem equivalent to an exact-symmetry level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReduction {
    pub kind: SymmetryKind,
    /// `𝓔`: `E − mc²` for spin, `−E − mc²` for pseudospin.
    pub effective_energy: f64,
    /// `𝓔′ = (𝓔/(2mc²) + 1)𝓔`, the hydrogenic eigenvalue.
    pub primed_energy: f64,
    /// Strength `Z′α` of the effective Coulomb attraction.
    pub primed_coupling: f64,
    /// `Z′ = Z′α / α`.
    pub effective_atomic_number: f64,
    pub fine_structure_constant: f64,
    /// The Dirac energy recovered from `𝓔`.
    pub energy: f64,
    pub iterations: usize,
}

/// Solves `𝓔′ = −(Z′α)²/(2n²)` with `Z′α = (𝓔/2 + 1)|coupling|` and
/// `𝓔′ = (𝓔/2 + 1)𝓔` by damped fixed-point iteration.
pub fn hydrogenic_reduction_oracle(
    kind: SymmetryKind,
    coupling: f64,
    n: u32,
) -> Result<SymmetryReduction, SymmetryError> {
    check_sign(kind, coupling, n)?;
    let strength = coupling.abs();
    let n2 = (n as f64).powi(2);
    let step = |e: f64| -> Option<f64> {
        let z_alpha = (0.5 * e + 1.0) * strength;
        let primed = -z_alpha * z_alpha / (2.0 * n2);
        let disc = 1.0 + 2.0 * primed;
        (disc >= 0.0).then(|| -1.0 + disc.sqrt())
    };
    let mut e = 0.0;
    for iterations in 1..=FIXED_POINT_MAX_STEPS {
        let Some(target) = step(e) else {
            return Err(SymmetryError::NoConvergence { steps: iterations });
        };
        let next = (1.0 - FIXED_POINT_DAMPING) * e + FIXED_POINT_DAMPING * target;
        let done = (next - e).abs() <= FIXED_POINT_TOL;
        e = next;
        if done {
            let z_alpha = (0.5 * e + 1.0) * strength;
            return Ok(SymmetryReduction {
                kind,
                effective_energy: e,
                primed_energy: (0.5 * e + 1.0) * e,
                primed_coupling: z_alpha,
                effective_atomic_number: z_alpha / FINE_STRUCTURE,
                fine_structure_constant: FINE_STRUCTURE,
                energy: match kind {
                    SymmetryKind::Spin => 1.0 + e,
                    SymmetryKind::Pseudospin => -1.0 - e,
                },
                iterations,
            });
        }
    }
    Err(SymmetryError::NoConvergence {
        steps: FIXED_POINT_MAX_STEPS,
    })
}

/// Two states that become degenerate under a symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoubletSpec {
    pub kind: SymmetryKind,
    pub first: QuantumNumbers,
    pub second: QuantumNumbers,
}

impl DoubletSpec {
    /// Spin doublet sharing `ℓ ≥ 1` and `n`: `(n_r, κ = ℓ)` with `(n_r − 1, κ = −ℓ − 1)`.
    pub fn spin(n_r: u32, l: u32) -> Result<Self, SymmetryError> {
        if n_r == 0 || l == 0 {
            return Err(SymmetryError::InvalidDoublet(
                "spin doublet needs n_r >= 1 and l >= 1".into(),
            ));
        }
        let first = QuantumNumbers::new(n_r, l as i32).expect("l >= 1");
        let second = QuantumNumbers::new(n_r - 1, -(l as i32) - 1).expect("nonzero");
        Self::new(SymmetryKind::Spin, first, second)
    }

    /// Pseudospin doublet sharing `ℓ̃` and `n`: `(n_r, κ < 0)` with `(n_r − 1, 1 − κ)`.
    pub fn pseudospin(n_r: u32, kappa: i32) -> Result<Self, SymmetryError> {
        if n_r == 0 || kappa >= 0 {
            return Err(SymmetryError::InvalidDoublet(
                "pseudospin doublet needs n_r >= 1 and kappa < 0".into(),
            ));
        }
        let first = QuantumNumbers::new(n_r, kappa).expect("kappa < 0");
        let second = QuantumNumbers::new(n_r - 1, 1 - kappa).expect("positive");
        Self::new(SymmetryKind::Pseudospin, first, second)
    }

    /// Checks that the pair shares `n` and `ℓ` (spin) or `ℓ̃` (pseudospin)
    /// and differs in `j`.
    pub fn new(kind: SymmetryKind, first: QuantumNumbers, second: QuantumNumbers) -> Result<Self, SymmetryError> {
        let shares = match kind {
            SymmetryKind::Spin => first.l() == second.l(),
            SymmetryKind::Pseudospin => first.l_tilde() == second.l_tilde(),
        };
        if !shares || first.n() != second.n() || first.two_j() == second.two_j() {
            return Err(SymmetryError::InvalidDoublet(format!(
                "{first} and {second} are not {kind} partners"
            )));
        }
        Ok(Self { kind, first, second })
    }
}

/// `E(second) − E(first)` on one branch.
pub fn doublet_splitting(
    couplings: CoulombCouplings,
    doublet: DoubletSpec,
    branch: Branch,
) -> Result<f64, SymmetryError> {
    let level = |qn: QuantumNumbers| match energy(couplings, qn, branch) {
        Ok(level) => Ok(level.energy),
        Err(SpectrumError::Rejected(reason)) => Err(SymmetryError::PartnerInvalid {
            state: qn.label(),
            reason,
        }),
        Err(e) => Err(e.into()),
    };
    let e1 = level(doublet.first)?;
    let e2 = level(doublet.second)?;
    Ok(e2 - e1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub kind: SymmetryKind,
    pub branch: Branch,
    pub quantum_numbers: QuantumNumbers,
    pub step: f64,
    /// Zeroth-order energy of the printed series.
    pub zeroth_order: f64,
    /// False when the symmetry limit has no bound state; slopes are then absent.
    pub realizable: bool,
    pub numeric_slope: Option<f64>,
    pub analytic_slope: Option<f64>,
    /// `|numeric − analytic| / max(|analytic|, 1)`.
    pub mismatch: Option<f64>,
}

/// Compares a central difference of the exact energy in the breaking coupling
/// with the printed linear coefficient, at a point of exact symmetry.
pub fn perturbativity_probe(
    base: CoulombCouplings,
    qn: QuantumNumbers,
    branch: Branch,
    kind: SymmetryKind,
    step: f64,
) -> Result<ProbeReport, SymmetryError> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(SymmetryError::InvalidStep(step));
    }
    let (coefficients, base_value) = match kind {
        SymmetryKind::Spin => (
            spin_coefficients(base.alpha_sigma, qn.n(), qn.kappa.get(), branch),
            ("Delta", base.alpha_delta),
        ),
        SymmetryKind::Pseudospin => (
            pspin_coefficients(base.alpha_delta, qn.n(), qn.kappa.get(), branch),
            ("Sigma", base.alpha_sigma),
        ),
    };
    if base_value.1 != 0.0 {
        return Err(SymmetryError::NonZeroBase {
            coupling: base_value.0,
            value: base_value.1,
        });
    }
    let mut report = ProbeReport {
        kind,
        branch,
        quantum_numbers: qn,
        step,
        zeroth_order: coefficients[0],
        realizable: realizable(base, qn, branch, kind),
        numeric_slope: None,
        analytic_slope: None,
        mismatch: None,
    };
    if !report.realizable {
        return Ok(report);
    }
    let shifted = |x: f64| match kind {
        SymmetryKind::Spin => CoulombCouplings::new(base.alpha_sigma, x),
        SymmetryKind::Pseudospin => CoulombCouplings::new(x, base.alpha_delta),
    };
    let central = |h: f64| -> Result<f64, SymmetryError> {
        let up = energy(shifted(h), qn, branch)?.energy;
        let down = energy(shifted(-h), qn, branch)?.energy;
        Ok((up - down) / (2.0 * h))
    };
    let d1 = central(step)?;
    let d2 = central(0.5 * step)?;
    let d4 = central(0.25 * step)?;
    // successive differences shrink by 4 for an O(h^2) error
    let (diff_a, diff_b) = (d1 - d2, d2 - d4);
    let noise = 64.0 * f64::EPSILON / (0.25 * step);
    if diff_a.abs() > noise || diff_b.abs() > noise {
        let ratio = diff_a / diff_b;
        if !(ratio > 2.0 && ratio < 8.0) {
            return Err(SymmetryError::StepTooLarge { ratio });
        }
    }
    let analytic = coefficients[1];
    report.numeric_slope = Some(d1);
    report.analytic_slope = Some(analytic);
    report.mismatch = Some((d1 - analytic).abs() / analytic.abs().max(1.0));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn qn(n_r: u32, k: i32) -> QuantumNumbers {
        QuantumNumbers::new(n_r, k).unwrap()
    }

    #[test]
    fn spin_plus_leading_term() {
        let r = spin_expansion(CoulombCouplings::new(-0.8, 0.0), qn(0, -1), Branch::Plus, 2).unwrap();
        assert_relative_eq!(r.terms[0].1, 1.0 - 1.28 / 4.64, max_relative = 1e-15);
        assert_relative_eq!(r.terms[0].1, 0.724_137_931_034_482_8, max_relative = 1e-15);
        assert_eq!(r.terms.iter().map(|t| t.0).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(r.realizable);
        assert_eq!(r.parameter, ExpansionParameter::AlphaDelta);
    }

    #[test]
    fn no_linear_terms() {
        for s in [-0.9, -0.3, 0.2] {
            let c: Vec<f64> = spin_coefficients(s, 3, 2, Branch::Minus);
            assert_eq!(c[1], 0.0);
            let c: Vec<f64> = pspin_coefficients(-s, 3, 2, Branch::Plus);
            assert_eq!(c[1], 0.0);
        }
    }

    #[test]
    fn linear_coefficient_matches_finite_difference() {
        // kappa = -1 = -n, so kappa^2 - 2n|kappa| = -1
        let q = qn(0, -1);
        let c: Vec<f64> = spin_coefficients(-0.8, 1, -1, Branch::Plus);
        let h = 1e-4;
        let up = energy(CoulombCouplings::new(-0.8, h), q, Branch::Plus).unwrap().energy;
        let down = energy(CoulombCouplings::new(-0.8, -h), q, Branch::Plus).unwrap().energy;
        assert_relative_eq!((up - down) / (2.0 * h), c[1], max_relative = 1e-6);
        assert_relative_eq!(c[1], 4.0 * -0.512 * -1.0 / (4.64 * 4.64), max_relative = 1e-14);
    }

    #[test]
    fn pspin_minus_mirrors_spin_plus() {
        let minus: Vec<f64> = pspin_coefficients(0.5, 1, 1, Branch::Minus);
        let plus: Vec<f64> = spin_coefficients(-0.5, 1, 1, Branch::Plus);
        // E^-(s, d) = -E^+(-d, -s): linear coefficient picks up two sign flips
        assert_relative_eq!(minus[1], plus[1], max_relative = 1e-15);
        assert_relative_eq!(minus[0], -plus[0], max_relative = 1e-15);
        assert_relative_eq!(minus[2], -plus[2], max_relative = 1e-15);
    }

    #[test]
    fn pspin_minus_leading_term() {
        let r = pspin_expansion(CoulombCouplings::new(0.0, 0.5), qn(0, -2), Branch::Minus, 0).unwrap();
        assert_relative_eq!(r.truncated_value, -1.0 + 0.5 / 16.25, max_relative = 1e-15);
        assert_relative_eq!(r.truncated_value, -0.969_230_769_230_769_2, max_relative = 1e-15);
    }

    #[test]
    fn order_limits() {
        let c = CoulombCouplings::new(-0.8, 0.1);
        assert!(matches!(
            spin_expansion(c, qn(1, -1), Branch::Plus, 3),
            Err(SymmetryError::OrderTooHigh { order: 3, max: 2 })
        ));
        assert!(spin_expansion(c, qn(1, -1), Branch::Minus, 3).is_ok());
        let r = spin_expansion(c, qn(1, -1), Branch::Minus, 3).unwrap();
        assert!(!r.realizable);
        assert_eq!(r.terms[0].1, -1.0);
    }

    #[test]
    fn truncated_value_is_the_polynomial() {
        let c = CoulombCouplings::new(-0.6, 0.03);
        let r = spin_expansion(c, qn(1, 2), Branch::Plus, 2).unwrap();
        let manual: f64 = r.terms.iter().map(|&(p, k)| k * 0.03_f64.powi(p as i32)).sum();
        assert_relative_eq!(r.truncated_value, manual, max_relative = 1e-14);
    }

    #[test]
    fn exact_energies() {
        let e = exact_symmetry_energy(SymmetryKind::Spin, -0.8, 2).unwrap();
        assert_relative_eq!(e, 0.923_076_923_076_923_1, max_relative = 1e-15);
        let p = exact_symmetry_energy(SymmetryKind::Pseudospin, 0.8, 2).unwrap();
        assert_eq!(p, -e);
        assert!(matches!(
            exact_symmetry_energy(SymmetryKind::Spin, 0.3, 1),
            Err(SymmetryError::WrongSignCoupling { .. })
        ));
        assert!(matches!(
            exact_symmetry_energy(SymmetryKind::Pseudospin, -0.3, 1),
            Err(SymmetryError::WrongSignCoupling { .. })
        ));
        let mut prev = 0.0;
        for n in 1..=50 {
            let e = exact_symmetry_energy(SymmetryKind::Spin, -0.8, n).unwrap();
            assert!(e > prev && e < 1.0);
            prev = e;
        }
        assert!(1.0 - prev < 2e-4);
    }

    #[test]
    fn oracle_matches_closed_form() {
        let r = hydrogenic_reduction_oracle(SymmetryKind::Spin, -0.8, 2).unwrap();
        assert_relative_eq!(r.energy, 0.923_076_923_076_923_1, max_relative = 1e-12);
        assert_relative_eq!(r.primed_energy, (0.5 * r.effective_energy + 1.0) * r.effective_energy);
        let p = hydrogenic_reduction_oracle(SymmetryKind::Pseudospin, 0.5, 1).unwrap();
        let s = exact_symmetry_energy(SymmetryKind::Spin, -0.5, 1).unwrap();
        assert_relative_eq!(p.energy, -s, max_relative = 1e-12);
    }

    #[test]
    fn oracle_weak_coupling_limit() {
        let r = hydrogenic_reduction_oracle(SymmetryKind::Spin, -1e-6, 3).unwrap();
        assert!(r.effective_energy.abs() < 1e-12);
        assert_relative_eq!(r.effective_atomic_number, 1e-6 / FINE_STRUCTURE, max_relative = 1e-10);
    }

    #[test]
    fn doublets() {
        let spin = DoubletSpec::spin(1, 1).unwrap();
        assert_eq!(spin.first.label(), "2p1/2");
        assert_eq!(spin.second.label(), "2p3/2");
        let split = doublet_splitting(CoulombCouplings::new(-0.8, 0.0), spin, Branch::Plus).unwrap();
        assert!(split.abs() < 1e-14);
        let split = doublet_splitting(CoulombCouplings::new(-0.8, 0.5), spin, Branch::Plus).unwrap();
        assert!(split.abs() > 1e-4);

        let ps = DoubletSpec::pseudospin(1, -1).unwrap();
        assert_eq!(ps.second, qn(0, 2));
        let split = doublet_splitting(CoulombCouplings::new(0.0, 0.5), ps, Branch::Minus).unwrap();
        assert!(split.abs() < 1e-14);

        // the n_r = 0, kappa = 2 partner is forbidden on the plus branch
        assert!(matches!(
            doublet_splitting(CoulombCouplings::new(-0.8, 0.5), ps, Branch::Plus),
            Err(SymmetryError::PartnerInvalid { .. })
        ));
        assert!(DoubletSpec::pseudospin(0, -1).is_err());
        assert!(DoubletSpec::new(SymmetryKind::Spin, qn(1, 1), qn(1, -2)).is_err());
    }

    #[test]
    fn probes() {
        let r = perturbativity_probe(
            CoulombCouplings::new(-0.8, 0.0),
            qn(1, -1),
            Branch::Plus,
            SymmetryKind::Spin,
            1e-4,
        )
        .unwrap();
        assert!(r.realizable);
        assert!(r.mismatch.unwrap() < 1e-6, "{r:?}");

        let r = perturbativity_probe(
            CoulombCouplings::new(0.0, 0.5),
            qn(1, 1),
            Branch::Minus,
            SymmetryKind::Pseudospin,
            1e-4,
        )
        .unwrap();
        assert!(r.mismatch.unwrap() < 1e-6, "{r:?}");

        let r = perturbativity_probe(
            CoulombCouplings::new(0.0, 0.5),
            qn(0, -1),
            Branch::Plus,
            SymmetryKind::Pseudospin,
            1e-4,
        )
        .unwrap();
        assert!(!r.realizable);
        assert_eq!(r.zeroth_order, 1.0);
        assert!(r.numeric_slope.is_none());

        assert!(matches!(
            perturbativity_probe(
                CoulombCouplings::new(-0.8, 0.1),
                qn(1, -1),
                Branch::Plus,
                SymmetryKind::Spin,
                1e-4
            ),
            Err(SymmetryError::NonZeroBase { .. })
        ));
    }

    #[test]
    fn probe_rejects_huge_step() {
        // alpha_Delta = -1.5 makes gamma imaginary for |kappa| = 1
        let r = perturbativity_probe(
            CoulombCouplings::new(-0.8, 0.0),
            qn(1, -1),
            Branch::Plus,
            SymmetryKind::Spin,
            1.5,
        );
        assert!(r.is_err(), "{r:?}");
    }
}
