//! Closed-form eigenvalues, spectrum tables, charge conjugation and the
//! non-relativistic limit.

use num_traits::Float;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    derive_with_gap, validate_bound_state, Branch, BoundLevel, CoulombCouplings, ModelError,
    QuantumNumbers, Rejection, Verdict,
};

/// Two levels closer than this (in `mc²`) share a degeneracy group.
pub const GROUPING_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("{0}")]
    Rejected(Rejection),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("empty-spectrum: {reason}")]
    EmptySpectrum { reason: Rejection },
    #[error("invalid-n: {0} (must be >= 1)")]
    InvalidN(u32),
}

fn cast<T: Float>(x: f64) -> T {
    T::from(x).expect("f64 is representable")
}

fn pieces<T: Float>(alpha_sigma: T, alpha_delta: T, n_r: u32, kappa: i32) -> (T, T, T, T) {
    let (s, d) = (alpha_sigma, alpha_delta);
    let k: T = cast(kappa as f64);
    let gamma = (k * k - d * s).sqrt();
    let xi = cast::<T>(n_r as f64) + gamma;
    let root = (xi * xi + d * s).sqrt();
    let den = (d + s) * (d + s) + cast::<T>(4.0) * xi * xi;
    (xi, root, den, d * s)
}

/// `E^±` in units of `mc²`:
/// `(α_Δ² − α_Σ² ± 4ξ√(ξ² + α_Δα_Σ)) / ((α_Δ + α_Σ)² + 4ξ²)` with
/// `ξ = n_r + √(κ² − α_Δα_Σ)`. NaN when `γ` is imaginary.
pub fn closed_form_energy<T: Float>(
    alpha_sigma: T,
    alpha_delta: T,
    n_r: u32,
    kappa: i32,
    branch: Branch,
) -> T {
    let (s, d) = (alpha_sigma, alpha_delta);
    let (xi, root, den, _) = pieces(s, d, n_r, kappa);
    let four: T = cast(4.0);
    let num = match branch {
        Branch::Plus => d * d - s * s + four * xi * root,
        Branch::Minus => d * d - s * s - four * xi * root,
    };
    num / den
}

/// `(1 − E, 1 + E)` for the closed-form root, each evaluated without the
/// cancellation that `1 ∓ E` suffers near the gap edges.
pub fn gap_distances<T: Float>(
    alpha_sigma: T,
    alpha_delta: T,
    n_r: u32,
    kappa: i32,
    branch: Branch,
) -> (T, T) {
    let (s, d) = (alpha_sigma, alpha_delta);
    let (xi, root, den, ds) = pieces(s, d, n_r, kappa);
    let two: T = cast(2.0);
    let four: T = cast(4.0);
    // xi - root without cancellation
    let small = -ds / (xi + root);
    let large = xi + root;
    let (w_minus, w_plus) = match branch {
        Branch::Plus => (small, large),
        Branch::Minus => (large, small),
    };
    let e_minus_1 = (-two * s * (d + s) - four * xi * w_minus) / den;
    let e_plus_1 = (two * d * (d + s) + four * xi * w_plus) / den;
    (-e_minus_1, e_plus_1)
}

/// Validated level for `(couplings, qn, branch)`.
pub fn energy(
    couplings: CoulombCouplings,
    qn: QuantumNumbers,
    branch: Branch,
) -> Result<BoundLevel, SpectrumError> {
    let energy = match validate_bound_state(couplings, qn, branch) {
        Verdict::Accepted { energy } => energy,
        Verdict::Rejected(reason) => return Err(SpectrumError::Rejected(reason)),
    };
    let (one_minus_e, one_plus_e) = gap_distances(
        couplings.alpha_sigma,
        couplings.alpha_delta,
        qn.n_r,
        qn.kappa.get(),
        branch,
    );
    let level = derive_with_gap(couplings, qn, branch, energy, one_minus_e, one_plus_e)?;
    level.check_invariants()?;
    Ok(level)
}

/// `(α_Δ, α_Σ, ±) → (−α_Σ, −α_Δ, ∓)`.
pub fn charge_conjugate(couplings: CoulombCouplings, branch: Branch) -> (CoulombCouplings, Branch) {
    (
        CoulombCouplings::new(-couplings.alpha_delta, -couplings.alpha_sigma),
        branch.opposite(),
    )
}

/// Binding energy `E − mc² = −mc² α_V² / (2n²)` of the hydrogenic limit, in `mc²`.
pub fn nonrel_limit_energy(alpha_v: f64, n: u32) -> Result<f64, SpectrumError> {
    if n == 0 {
        return Err(SpectrumError::InvalidN(n));
    }
    let n = n as f64;
    Ok(-alpha_v * alpha_v / (2.0 * n * n))
}

/// Levels whose energies agree within [`GROUPING_TOL`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyGroup {
    pub id: usize,
    pub energy: f64,
    /// Indices into [`SpectrumTable::levels`].
    pub members: Vec<usize>,
    /// Quantum numbers common to all members, e.g. `["n=2", "j=1/2"]`.
    pub shared: Vec<String>,
    /// Member labels joined by `/`.
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub couplings: CoulombCouplings,
    pub branch: Branch,
    pub n_max: u32,
    /// Sorted by energy, then `κ`.
    pub levels: Vec<BoundLevel>,
    pub groups: Vec<DegeneracyGroup>,
}

impl SpectrumTable {
    /// Group id of `levels[index]`.
    pub fn group_of(&self, index: usize) -> Option<usize> {
        self.groups
            .iter()
            .find(|g| g.members.contains(&index))
            .map(|g| g.id)
    }
}

fn shared_numbers(levels: &[&BoundLevel]) -> Vec<String> {
    let qns: Vec<QuantumNumbers> = levels.iter().map(|l| l.quantum_numbers).collect();
    let all_same = |f: &dyn Fn(&QuantumNumbers) -> u32| qns.iter().all(|q| f(q) == f(&qns[0]));
    let mut shared = Vec::new();
    if all_same(&|q| q.n()) {
        shared.push(format!("n={}", qns[0].n()));
    }
    if all_same(&|q| q.l()) {
        shared.push(format!("l={}", qns[0].l()));
    }
    if all_same(&|q| q.l_tilde()) {
        shared.push(format!("l~={}", qns[0].l_tilde()));
    }
    if all_same(&|q| q.two_j()) {
        shared.push(format!("j={}/2", qns[0].two_j()));
    }
    shared
}

/// All accepted levels with `n = n_r + |κ| ≤ n_max` on one branch.
pub fn spectrum_table(
    couplings: CoulombCouplings,
    n_max: u32,
    branch: Branch,
) -> Result<SpectrumTable, SpectrumError> {
    if n_max == 0 {
        return Err(SpectrumError::InvalidN(n_max));
    }
    let mut levels = Vec::new();
    let mut rejections: Vec<(Rejection, usize)> = Vec::new();
    for n in 1..=n_max as i32 {
        for k in (-n..=n).filter(|&k| k != 0) {
            let qn = QuantumNumbers::new((n - k.abs()) as u32, k)?;
            match energy(couplings, qn, branch) {
                Ok(level) => levels.push(level),
                Err(SpectrumError::Rejected(reason)) => {
                    match rejections.iter_mut().find(|(r, _)| *r == reason) {
                        Some((_, count)) => *count += 1,
                        None => rejections.push((reason, 1)),
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
    if levels.is_empty() {
        // most frequent reason, first seen wins ties
        let reason = rejections
            .iter()
            .rev()
            .max_by_key(|(_, count)| *count)
            .map(|(r, _)| *r)
            .unwrap_or(Rejection::NoBoundState);
        return Err(SpectrumError::EmptySpectrum { reason });
    }
    levels.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then(a.quantum_numbers.kappa.cmp(&b.quantum_numbers.kappa))
    });

    let mut groups: Vec<DegeneracyGroup> = Vec::new();
    let mut start = 0;
    while start < levels.len() {
        let e0 = levels[start].energy;
        let mut end = start + 1;
        while end < levels.len() && levels[end].energy - e0 < GROUPING_TOL {
            end += 1;
        }
        let members: Vec<usize> = (start..end).collect();
        let refs: Vec<&BoundLevel> = members.iter().map(|&i| &levels[i]).collect();
        let label = refs
            .iter()
            .map(|l| l.quantum_numbers.label())
            .collect::<Vec<_>>()
            .join("/");
        groups.push(DegeneracyGroup {
            id: groups.len(),
            energy: e0,
            shared: shared_numbers(&refs),
            members,
            label,
        });
        start = end;
    }
    Ok(SpectrumTable {
        couplings,
        branch,
        n_max,
        levels,
        groups,
    })
}
