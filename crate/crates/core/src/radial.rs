//! Radial functions `g_κ(r)` and `f_κ(r)` of a bound level.
//!
//! With `ρ = 2λr` and `L_m = L_m^{2γ}(ρ)` (zero for `m < 0`):
//!
//! ```text
//! g = −A √(1+E) [(κ+η₂) L_{n_r} + (2γ+n_r) L_{n_r−1}] ρ^γ e^{−ρ/2}
//! f =  A √(1−E) [(κ+η₂) L_{n_r} − (2γ+n_r) L_{n_r−1}] ρ^γ e^{−ρ/2}
//! ```
//!
//! `A > 0` normalizes `∫(g² + f²) dr = 1`. For `n_r = 0` only the first term
//! survives and `f/g = −√((1−E)/(1+E))` everywhere.
//!
//! Node counts follow the convention that the origin is a node of both
//! functions, so an `n_r = 0` level has one node each. Much of the
//! literature counts interior zeros only; subtract one to compare.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Branch, BoundLevel, CoulombCouplings, QuantumNumbers};
use crate::polynomials::{combo_zero_count, laguerre, scan_zeros, LaguerreCombination, PolynomialError};
use crate::quadrature::{integrate_halfline, QuadratureError};
use crate::spectrum::{energy, SpectrumError};

pub const MIN_GRID_POINTS: usize = 64;
pub const DEFAULT_GRID_POINTS: usize = 2048;
pub const DEFAULT_R_MIN: f64 = 1e-4;
/// Default `r_max` in units of `1/λ`.
pub const DEFAULT_R_MAX_LAMBDA: f64 = 40.0;
/// Tolerance of the normalization re-check.
pub const NORM_TOL: f64 = 1e-8;
/// Points closer than this many local spacings to a pole are skipped by
/// [`ode_residual`].
pub const POLE_EXCLUSION_SPACINGS: f64 = 5.0;

const NORM_QUADRATURE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RadialError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid-level: {0}")]
    InvalidLevel(#[from] SpectrumError),
    #[error("normalization-failure: {0}")]
    NormalizationFailure(#[from] QuadratureError),
    #[error("normalization-failure: re-integrated norm {0}")]
    NormalizationMismatch(f64),
    #[error("grid-too-coarse: {function} has {found} interior zeros on the grid, expected {expected}")]
    GridTooCoarse {
        function: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("node theorem violated: n_g = {n_g}, n_f = {n_f}, expected {expected}")]
    NodeTheoremViolated { n_g: usize, n_f: usize, expected: usize },
    #[error("singularity-on-grid: grid point r = {0} is a pole")]
    SingularityOnGrid(f64),
    #[error(transparent)]
    Polynomial(#[from] PolynomialError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridScheme {
    Uniform,
    Geometric,
}

impl std::str::FromStr for GridScheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(GridScheme::Uniform),
            "geometric" => Ok(GridScheme::Geometric),
            other => Err(format!("unknown grid scheme '{other}'")),
        }
    }
}

/// Strictly increasing sample radii in `(0, r_max]`, in Compton wavelengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    points: Vec<f64>,
    scheme: GridScheme,
    r_max: f64,
}

impl RadialGrid {
    /// `r_i = i·r_max/count` for `i = 1..=count`.
    pub fn uniform(r_max: f64, count: usize) -> Result<Self, RadialError> {
        Self::check(DEFAULT_R_MIN.min(r_max / 2.0), r_max, count)?;
        let points = (1..=count).map(|i| r_max * i as f64 / count as f64).collect();
        Ok(Self {
            points,
            scheme: GridScheme::Uniform,
            r_max,
        })
    }

    /// `count` points in geometric progression from `r_min` to `r_max`.
    pub fn geometric(r_min: f64, r_max: f64, count: usize) -> Result<Self, RadialError> {
        Self::check(r_min, r_max, count)?;
        let ratio = (r_max / r_min).ln() / (count - 1) as f64;
        let mut points: Vec<f64> = (0..count).map(|i| r_min * (ratio * i as f64).exp()).collect();
        points[count - 1] = r_max;
        Ok(Self {
            points,
            scheme: GridScheme::Geometric,
            r_max,
        })
    }

    /// Scheme-dispatching constructor; `r_min` is ignored for uniform grids.
    pub fn with_scheme(scheme: GridScheme, r_min: f64, r_max: f64, count: usize) -> Result<Self, RadialError> {
        match scheme {
            GridScheme::Uniform => Self::uniform(r_max, count),
            GridScheme::Geometric => Self::geometric(r_min, r_max, count),
        }
    }

    fn check(r_min: f64, r_max: f64, count: usize) -> Result<(), RadialError> {
        if count < MIN_GRID_POINTS {
            return Err(RadialError::InvalidGrid(format!(
                "{count} points, at least {MIN_GRID_POINTS} required"
            )));
        }
        if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
            return Err(RadialError::InvalidGrid(format!(
                "need 0 < r_min < r_max, got r_min = {r_min}, r_max = {r_max}"
            )));
        }
        Ok(())
    }

    /// Geometric, 2048 points on `(1e-4, 40/λ]`, stretched when a node of
    /// the level lies further out.
    pub fn default_for(level: &BoundLevel) -> Self {
        let form = RadialForm::unnormalized(level);
        let node_reach = [form.combination_g(), form.combination_f()]
            .into_iter()
            .flatten()
            .map(|c| 1.1 * c.root_bound() / (2.0 * level.lambda))
            .fold(0.0, f64::max);
        let r_max = (DEFAULT_R_MAX_LAMBDA / level.lambda).max(node_reach);
        Self::geometric(DEFAULT_R_MIN.min(r_max / 10.0), r_max, DEFAULT_GRID_POINTS)
            .expect("default grid parameters are valid")
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Distance to the nearer neighbour of point `i`.
    fn spacing(&self, i: usize) -> f64 {
        let p = &self.points;
        let left = if i > 0 { p[i] - p[i - 1] } else { p[0] };
        let right = if i + 1 < p.len() { p[i + 1] - p[i] } else { left };
        left.min(right)
    }
}

/// Closed-form radial functions of a level with a given amplitude `A`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialForm {
    pub level: BoundLevel,
    pub amplitude: f64,
}

impl RadialForm {
    fn unnormalized(level: &BoundLevel) -> Self {
        Self {
            level: *level,
            amplitude: 1.0,
        }
    }

    fn order(&self) -> f64 {
        2.0 * self.level.gamma
    }

    fn n_r(&self) -> i64 {
        self.level.quantum_numbers.n_r as i64
    }

    fn coeffs(&self) -> (f64, f64) {
        (
            self.level.kappa_plus_eta2(),
            2.0 * self.level.gamma + self.level.quantum_numbers.n_r as f64,
        )
    }

    pub fn rho(&self, r: f64) -> f64 {
        2.0 * self.level.lambda * r
    }

    /// Polynomial part of `g`, up to the constant `−A√(1+E)`.
    pub fn poly_g(&self, rho: f64) -> f64 {
        let (a, b) = self.coeffs();
        let n = self.n_r();
        a * laguerre(n, self.order(), rho) + b * laguerre(n - 1, self.order(), rho)
    }

    /// Polynomial part of `f`, up to the constant `A√(1−E)`.
    pub fn poly_f(&self, rho: f64) -> f64 {
        let (a, b) = self.coeffs();
        let n = self.n_r();
        a * laguerre(n, self.order(), rho) - b * laguerre(n - 1, self.order(), rho)
    }

    /// First and second `ρ`-derivatives of the polynomial parts, using
    /// `d/dρ L_m^a = −L_{m−1}^{a+1}`.
    fn poly_derivatives(&self, rho: f64, sign_b: f64) -> (f64, f64, f64) {
        let (a, b) = self.coeffs();
        let b = sign_b * b;
        let n = self.n_r();
        let o = self.order();
        let p = a * laguerre(n, o, rho) + b * laguerre(n - 1, o, rho);
        let dp = -(a * laguerre(n - 1, o + 1.0, rho) + b * laguerre(n - 2, o + 1.0, rho));
        let ddp = a * laguerre(n - 2, o + 2.0, rho) + b * laguerre(n - 3, o + 2.0, rho);
        (p, dp, ddp)
    }

    fn envelope(&self, rho: f64) -> f64 {
        if rho == 0.0 {
            return 0.0;
        }
        (self.level.gamma * rho.ln() - 0.5 * rho).exp()
    }

    fn scale_g(&self) -> f64 {
        let (one_plus_e, _) = self.gaps();
        -self.amplitude * one_plus_e.sqrt()
    }

    fn scale_f(&self) -> f64 {
        let (_, one_minus_e) = self.gaps();
        self.amplitude * one_minus_e.sqrt()
    }

    fn gaps(&self) -> (f64, f64) {
        // λ² = (1−E)(1+E); keep whichever factor is small accurate
        let e = self.level.energy;
        let lam2 = self.level.lambda * self.level.lambda;
        if e >= 0.0 {
            (1.0 + e, lam2 / (1.0 + e))
        } else {
            (lam2 / (1.0 - e), 1.0 - e)
        }
    }

    pub fn g_at(&self, r: f64) -> f64 {
        let rho = self.rho(r);
        self.scale_g() * self.poly_g(rho) * self.envelope(rho)
    }

    pub fn f_at(&self, r: f64) -> f64 {
        let rho = self.rho(r);
        self.scale_f() * self.poly_f(rho) * self.envelope(rho)
    }

    /// `A·L_{n_r} + B·L_{n_r−1}` behind `g`, absent for `n_r = 0` or a
    /// vanishing coefficient.
    pub fn combination_g(&self) -> Option<LaguerreCombination> {
        let (a, b) = self.coeffs();
        LaguerreCombination::new(a, b, self.level.quantum_numbers.n_r, self.order()).ok()
    }

    pub fn combination_f(&self) -> Option<LaguerreCombination> {
        let (a, b) = self.coeffs();
        LaguerreCombination::new(a, -b, self.level.quantum_numbers.n_r, self.order()).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSolution {
    pub level: BoundLevel,
    /// `A > 0` in the formulas above (the `n_r = 0` amplitude is the same constant).
    pub normalization_constant: f64,
    pub grid: RadialGrid,
    pub g_samples: Vec<f64>,
    pub f_samples: Vec<f64>,
    /// Nodes of `g` on `[0, ∞)`, the origin included.
    pub node_count_g: usize,
    pub node_count_f: usize,
    /// Interior zeros of `g` located by bisection on the closed form.
    pub zeros_g: Vec<f64>,
    pub zeros_f: Vec<f64>,
}

impl RadialSolution {
    pub fn form(&self) -> RadialForm {
        RadialForm {
            level: self.level,
            amplitude: self.normalization_constant,
        }
    }

    /// `∫(g² + f²) dr` by quadrature of the closed form.
    pub fn norm(&self) -> Result<f64, RadialError> {
        let form = self.form();
        Ok(norm_integral(&form)?)
    }
}

fn norm_integral(form: &RadialForm) -> Result<f64, QuadratureError> {
    let integrand = |r: f64| {
        let g = form.g_at(r);
        let f = form.f_at(r);
        g * g + f * f
    };
    // mapping at half the decay rate e^{-2λr} makes the mapped integrand vanish at u = 0
    integrate_halfline(integrand, form.level.lambda, NORM_QUADRATURE_TOL).map(|q| q.value)
}

/// Samples and normalizes the radial functions of a validated level on `grid`.
pub fn wavefunctions(
    couplings: CoulombCouplings,
    qn: QuantumNumbers,
    branch: Branch,
    grid: RadialGrid,
) -> Result<RadialSolution, RadialError> {
    let level = energy(couplings, qn, branch)?;
    solution_for_level(level, grid)
}

/// As [`wavefunctions`] on the default grid of the level.
pub fn wavefunctions_default(
    couplings: CoulombCouplings,
    qn: QuantumNumbers,
    branch: Branch,
) -> Result<RadialSolution, RadialError> {
    let level = energy(couplings, qn, branch)?;
    solution_for_level(level, RadialGrid::default_for(&level))
}

/// Normalizes and samples an already validated level.
pub fn solution_for_level(level: BoundLevel, grid: RadialGrid) -> Result<RadialSolution, RadialError> {
    let raw = norm_integral(&RadialForm::unnormalized(&level))?;
    let form = RadialForm {
        level,
        amplitude: 1.0 / raw.sqrt(),
    };
    let check = norm_integral(&form)?;
    if !((check - 1.0).abs() <= NORM_TOL) {
        return Err(RadialError::NormalizationMismatch(check));
    }
    let g_samples: Vec<f64> = grid.points().iter().map(|&r| form.g_at(r)).collect();
    let f_samples: Vec<f64> = grid.points().iter().map(|&r| form.f_at(r)).collect();
    if g_samples.iter().chain(&f_samples).any(|v| !v.is_finite()) {
        return Err(RadialError::NormalizationMismatch(f64::NAN));
    }
    let mut solution = RadialSolution {
        level,
        normalization_constant: form.amplitude,
        grid,
        g_samples,
        f_samples,
        node_count_g: 0,
        node_count_f: 0,
        zeros_g: Vec::new(),
        zeros_f: Vec::new(),
    };
    let nodes = locate_nodes(&solution)?;
    solution.node_count_g = nodes.zeros_g.len() + 1;
    solution.node_count_f = nodes.zeros_f.len() + 1;
    solution.zeros_g = nodes.zeros_g;
    solution.zeros_f = nodes.zeros_f;
    Ok(solution)
}

struct Nodes {
    zeros_g: Vec<f64>,
    zeros_f: Vec<f64>,
}

/// Interior zeros expected from the zero-counting rule of the Laguerre
/// combination (a zero at the origin is not interior).
fn expected_interior(combination: Option<LaguerreCombination>) -> Result<usize, RadialError> {
    match combination {
        None => Ok(0),
        Some(c) => {
            let count = combo_zero_count(c.coeff_a, c.coeff_b, c.degree, c.order)?;
            Ok(count - usize::from(c.vanishes_at_origin()))
        }
    }
}

fn locate_nodes(solution: &RadialSolution) -> Result<Nodes, RadialError> {
    let form = solution.form();
    let rho_grid: Vec<f64> = solution.grid.points().iter().map(|&r| form.rho(r)).collect();
    let scan = |poly: &dyn Fn(f64) -> f64, at_origin_zero: bool| -> Vec<f64> {
        // a polynomial vanishing at the origin has no interior zero in [0, r_0]
        scan_zeros(poly, &rho_grid, !at_origin_zero)
            .into_iter()
            .filter(|&rho| rho > 0.0)
            .map(|rho| rho / (2.0 * form.level.lambda))
            .collect()
    };
    let cg = form.combination_g();
    let cf = form.combination_f();
    let zeros_g = scan(&|x| form.poly_g(x), cg.is_some_and(|c| c.vanishes_at_origin()));
    let zeros_f = scan(&|x| form.poly_f(x), cf.is_some_and(|c| c.vanishes_at_origin()));
    for (name, zeros, combination) in [("g", &zeros_g, cg), ("f", &zeros_f, cf)] {
        let expected = expected_interior(combination)?;
        if zeros.len() != expected {
            return Err(RadialError::GridTooCoarse {
                function: name,
                found: zeros.len(),
                expected,
            });
        }
    }
    Ok(Nodes { zeros_g, zeros_f })
}

/// `(n_g, n_f)` counted on `[0, ∞)` with the origin as one node. Interior
/// zeros are bracketed on the solution grid and refined on the closed form;
/// the count is checked against the Laguerre zero-counting rule, and for
/// opposite-sign couplings against `n_g = n_f = n_r + 1`.
pub fn count_nodes(solution: &RadialSolution) -> Result<(usize, usize), RadialError> {
    let nodes = locate_nodes(solution)?;
    let n_g = nodes.zeros_g.len() + 1;
    let n_f = nodes.zeros_f.len() + 1;
    if solution.level.couplings.product() < 0.0 {
        let expected = solution.level.quantum_numbers.n_r as usize + 1;
        if n_g != expected || n_f != expected {
            return Err(RadialError::NodeTheoremViolated { n_g, n_f, expected });
        }
    }
    Ok((n_g, n_f))
}

/// Radii in `(0, ∞)` where `E + 1 − Δ(r)` vanishes.
fn delta_pole(level: &BoundLevel) -> Option<f64> {
    let r = level.couplings.alpha_delta / (1.0 + level.energy);
    (r > 0.0).then_some(r)
}

/// Radii in `(0, ∞)` where `E − 1 − Σ(r)` vanishes.
fn sigma_pole(level: &BoundLevel) -> Option<f64> {
    let r = level.couplings.alpha_sigma / (level.energy - 1.0);
    (r > 0.0).then_some(r)
}

/// Relative residual of one second-order equation at one radius:
/// `|LHS − RHS| / Σ|terms|`. `p`, `dp`, `ddp` are the polynomial part and its
/// `ρ`-derivatives, `sign` selects `+1` for `g` and `−1` for `f`.
fn residual_at(level: &BoundLevel, r: f64, p: f64, dp: f64, ddp: f64, sign: f64) -> Option<f64> {
    let lam = level.lambda;
    let rho = 2.0 * lam * r;
    let gm1 = level.gamma - 1.0;
    // u ∝ w(ρ) = P(ρ) q(ρ), q = ρ^{γ−1} e^{−ρ/2}; the common factor q is dropped
    let a = gm1 / rho - 0.5;
    let w = p;
    let w1 = dp + p * a;
    let w2 = ddp + 2.0 * dp * a + p * (a * a - gm1 / (rho * rho));
    let u = w;
    let du = 2.0 * lam * w1;
    let ddu = 4.0 * lam * lam * w2;

    let k = level.quantum_numbers.kappa.as_f64();
    let (s, d) = (level.couplings.alpha_sigma, level.couplings.alpha_delta);
    let e = level.energy;
    let sigma = s / r;
    let delta = d / r;
    let (centrifugal, coupling_term) = if sign > 0.0 {
        // Δ'/(E+1−Δ) (d/dr + (1+κ)/r)
        let ratio = (-d / (r * r)) / (e + 1.0 - delta);
        (k * (k + 1.0), [ratio * du, ratio * (1.0 + k) * u / r])
    } else {
        // Σ'/(E−1−Σ) (d/dr + (1−κ)/r)
        let ratio = (-s / (r * r)) / (e - 1.0 - sigma);
        (k * (k - 1.0), [ratio * du, ratio * (1.0 - k) * u / r])
    };
    let terms = [
        ddu,
        2.0 * du / r,
        -centrifugal * u / (r * r),
        coupling_term[0],
        coupling_term[1],
        (e - 1.0 - sigma) * (e + 1.0 - delta) * u,
    ];
    let total: f64 = terms.iter().sum();
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    (scale > 0.0 && scale.is_finite()).then(|| total.abs() / scale)
}

/// Maximum relative residuals `(res_g, res_f)` of the closed-form `g/r`,
/// `f/r` in their second-order radial equations, using analytic derivatives.
/// Grid points within five local spacings of a pole are skipped.
pub fn ode_residual(solution: &RadialSolution, couplings: CoulombCouplings) -> Result<(f64, f64), RadialError> {
    let mut level = solution.level;
    level.couplings = couplings;
    let form = RadialForm {
        level,
        amplitude: solution.normalization_constant,
    };
    let poles_g: Vec<f64> = delta_pole(&level).into_iter().collect();
    let poles_f: Vec<f64> = sigma_pole(&level).into_iter().collect();
    for &pole in poles_g.iter().chain(&poles_f) {
        if solution
            .grid
            .points()
            .iter()
            .any(|&r| (r - pole).abs() <= 1e-12 * pole)
        {
            return Err(RadialError::SingularityOnGrid(pole));
        }
    }
    let mut res = (0.0_f64, 0.0_f64);
    for (i, &r) in solution.grid.points().iter().enumerate() {
        let reach = POLE_EXCLUSION_SPACINGS * solution.grid.spacing(i);
        let near = |poles: &[f64]| poles.iter().any(|&p| (r - p).abs() <= reach);
        let rho = form.rho(r);
        if !near(&poles_g) {
            let (p, dp, ddp) = form.poly_derivatives(rho, 1.0);
            if let Some(v) = residual_at(&level, r, p, dp, ddp, 1.0) {
                res.0 = res.0.max(v);
            }
        }
        if !near(&poles_f) {
            let (p, dp, ddp) = form.poly_derivatives(rho, -1.0);
            if let Some(v) = residual_at(&level, r, p, dp, ddp, -1.0) {
                res.1 = res.1.max(v);
            }
        }
    }
    Ok(res)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitKind {
    SpinOrbit,
    PseudospinOrbit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SOProfile {
    pub kind: OrbitKind,
    /// Integrand of the spin-orbit (pseudospin-orbit) energy on the grid,
    /// already divided by `∫g²` (`∫f²`).
    pub integrand_samples: Vec<f64>,
    /// Positive radii where a denominator vanishes, from the Coulomb forms.
    pub pole_radii: Vec<f64>,
    /// The integral, present only when no pole lies on `(0, ∞)`.
    pub expectation: Option<f64>,
}

/// Spin-orbit `−Δ'/(E+1−Δ)² (1+κ)/r g² / ∫g²` or pseudospin-orbit
/// `−Σ'/((E−1−Σ)(E+1−Δ)) (1−κ)/r f² / ∫f²` on the grid of `solution`.
pub fn so_pso_profile(
    solution: &RadialSolution,
    couplings: CoulombCouplings,
    kind: OrbitKind,
) -> Result<SOProfile, RadialError> {
    let mut level = solution.level;
    level.couplings = couplings;
    let form = RadialForm {
        level,
        amplitude: solution.normalization_constant,
    };
    let (s, d) = (couplings.alpha_sigma, couplings.alpha_delta);
    let e = level.energy;
    let k = level.quantum_numbers.kappa.as_f64();
    let decay = level.lambda;
    let (pole_radii, weight): (Vec<f64>, Box<dyn Fn(f64) -> f64>) = match kind {
        OrbitKind::SpinOrbit => {
            let w = move |r: f64| {
                let den = e + 1.0 - d / r;
                (d / (r * r)) / (den * den) * (1.0 + k) / r
            };
            (delta_pole(&level).into_iter().collect(), Box::new(w))
        }
        OrbitKind::PseudospinOrbit => {
            let w = move |r: f64| {
                (s / (r * r)) / ((e - 1.0 - s / r) * (e + 1.0 - d / r)) * (1.0 - k) / r
            };
            let mut poles: Vec<f64> = sigma_pole(&level).into_iter().chain(delta_pole(&level)).collect();
            poles.sort_by(f64::total_cmp);
            poles.dedup();
            (poles, Box::new(w))
        }
    };
    let component = |r: f64| match kind {
        OrbitKind::SpinOrbit => form.g_at(r),
        OrbitKind::PseudospinOrbit => form.f_at(r),
    };
    let factor = match kind {
        OrbitKind::SpinOrbit => 1.0 + k,
        OrbitKind::PseudospinOrbit => 1.0 - k,
    };
    let weight_sq = integrate_halfline(
        |r| {
            let c = component(r);
            c * c
        },
        decay,
        NORM_QUADRATURE_TOL,
    )?
    .value;
    let integrand = |r: f64| {
        if factor == 0.0 {
            return 0.0;
        }
        let c = component(r);
        weight(r) * c * c / weight_sq
    };
    let integrand_samples = solution.grid.points().iter().map(|&r| integrand(r)).collect();
    let expectation = if pole_radii.is_empty() {
        if factor == 0.0 {
            Some(0.0)
        } else {
            Some(integrate_halfline(integrand, decay, 1e-10)?.value)
        }
    } else {
        None
    };
    Ok(SOProfile {
        kind,
        integrand_samples,
        pole_radii,
        expectation,
    })
}
