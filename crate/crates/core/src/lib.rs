//! Bound states of the Dirac equation with scalar and vector Coulomb potentials.
//!
//! The potentials enter through the sum and difference couplings
//! `Σ = α_Σ ħc/r` and `Δ = α_Δ ħc/r`. Everything inside the crate works in
//! natural units (`mc² = 1`, `ħc = 1`, lengths in Compton wavelengths);
//! [`model::UnitSystem`] converts at the boundary.
//!
//! Modules, bottom-up:
//!
//! - [`polynomials`]: generalized Laguerre and terminating Kummer polynomials,
//!   zero counting of two-term Laguerre combinations.
//! - [`quadrature`]: half-line adaptive Gauss–Kronrod integration.
//! - [`model`]: couplings, quantum numbers, derived level parameters and
//!   bound-state validation.
//! - [`spectrum`]: closed-form eigenvalues, tables, charge conjugation.
//! - [`symmetry`]: spin/pseudospin expansions, exact-symmetry energies,
//!   doublet splittings and perturbativity probes.
//! - [`radial`]: normalized radial functions, node counting, second-order
//!   ODE residuals and spin-orbit integrand profiles.

pub mod model;
pub mod polynomials;
pub mod quadrature;
pub mod radial;
pub mod spectrum;
pub mod symmetry;

pub use model::{Branch, BoundLevel, CoulombCouplings, Kappa, QuantumNumbers, Rejection, UnitSystem};

