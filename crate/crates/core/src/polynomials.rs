//! Generalized Laguerre polynomials, terminating Kummer functions and
//! zero counting for two-term Laguerre combinations.
//!
//! The radial functions of the Coulomb problem are `ρ^γ e^{-ρ/2}` times a
//! combination `A·L_{n_r}^{2γ}(ρ) + B·L_{n_r-1}^{2γ}(ρ)`, so the number of
//! radial nodes reduces to counting positive zeros of that combination.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolynomialError {
    #[error("invalid-degree: {0} (must be non-negative)")]
    InvalidDegree(i64),
    #[error("invalid-order: {0} (must be > -1)")]
    InvalidOrder(f64),
    #[error("invalid-argument: {0} (must be >= 0)")]
    InvalidArgument(f64),
    #[error("invalid-b: {0} (must be > 0)")]
    InvalidB(f64),
    #[error("degenerate-combination: A={a}, B={b}")]
    DegenerateCombination { a: f64, b: f64 },
    #[error("zero scan found {scanned} zeros but the closed rule gives {rule}")]
    ScanRuleMismatch { scanned: usize, rule: usize },
}

/// Points per unit of `ρ` in the zero-scanning grid.
const SCAN_POINTS_PER_UNIT: f64 = 64.0;
/// Smallest positive abscissa of the geometric scanning grid.
const SCAN_RHO_MIN: f64 = 1e-10;
/// Absolute bisection tolerance for located zeros.
const BISECTION_TOL: f64 = 1e-12;

/// Arguments of a generalized Laguerre polynomial `L_degree^order(argument)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreParams {
    degree: u32,
    order: f64,
    argument: f64,
}

impl LaguerreParams {
    pub fn new(degree: u32, order: f64, argument: f64) -> Result<Self, PolynomialError> {
        if !(order > 0.0) {
            return Err(PolynomialError::InvalidOrder(order));
        }
        if !(argument >= 0.0) {
            return Err(PolynomialError::InvalidArgument(argument));
        }
        Ok(Self {
            degree,
            order,
            argument,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn argument(&self) -> f64 {
        self.argument
    }

    pub fn eval(&self) -> f64 {
        laguerre(self.degree as i64, self.order, self.argument)
    }

    /// The equivalent terminating Kummer function `₁F₁(-degree, order+1, argument)`.
    pub fn kummer(&self) -> f64 {
        kummer_terminating(self.degree, self.order + 1.0, self.argument)
    }
}

/// `L_degree^order(x)` by the three-term recurrence in the degree.
pub fn laguerre_eval(degree: i64, order: f64, x: f64) -> Result<f64, PolynomialError> {
    if degree < 0 {
        return Err(PolynomialError::InvalidDegree(degree));
    }
    if !(order > -1.0) {
        return Err(PolynomialError::InvalidOrder(order));
    }
    Ok(laguerre(degree, order, x))
}

/// Unchecked recurrence; negative degrees evaluate to zero so derivative
/// formulas like `d/dx L_n^a = -L_{n-1}^{a+1}` need no special cases.
pub(crate) fn laguerre(degree: i64, order: f64, x: f64) -> f64 {
    if degree < 0 {
        return 0.0;
    }
    let mut prev = 1.0;
    if degree == 0 {
        return prev;
    }
    let mut cur = 1.0 + order - x;
    for k in 1..degree {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + order - x) * cur - (k + order) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `₁F₁(-neg_degree, b, x)` by its terminating series.
pub fn kummer_poly_eval(neg_degree: i64, b: f64, x: f64) -> Result<f64, PolynomialError> {
    if neg_degree < 0 {
        return Err(PolynomialError::InvalidDegree(neg_degree));
    }
    if !(b > 0.0) {
        return Err(PolynomialError::InvalidB(b));
    }
    Ok(kummer_terminating(neg_degree as u32, b, x))
}

fn kummer_terminating(m: u32, b: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..m {
        let k = k as f64;
        term *= (k - m as f64) / (b + k) * x / (k + 1.0);
        sum += term;
    }
    sum
}

/// `L_n^a(0) = binomial(n + a, n)`.
pub fn laguerre_at_origin(degree: u32, order: f64) -> f64 {
    (1..=degree).fold(1.0, |acc, k| acc * (order + k as f64) / k as f64)
}

/// Power-series coefficients `c_0..=c_n` of `L_n^a(x)`.
pub fn laguerre_coefficients(degree: u32, order: f64) -> Vec<f64> {
    let n = degree as usize;
    let mut c = vec![0.0; n + 1];
    let mut top = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    for k in 1..=n {
        top /= k as f64;
    }
    c[n] = top;
    // c_{k-1} = -c_k k (a + k) / (n - k + 1)
    for k in (1..=n).rev() {
        let kf = k as f64;
        c[k - 1] = -c[k] * kf * (order + kf) / ((n - k + 1) as f64);
    }
    c
}

/// `A·L_n^a(x) + B·L_{n-1}^a(x)` with `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreCombination {
    pub coeff_a: f64,
    pub coeff_b: f64,
    pub degree: u32,
    pub order: f64,
}

impl LaguerreCombination {
    pub fn new(coeff_a: f64, coeff_b: f64, degree: u32, order: f64) -> Result<Self, PolynomialError> {
        if degree == 0 {
            return Err(PolynomialError::InvalidDegree(0));
        }
        if !(order > -1.0) {
            return Err(PolynomialError::InvalidOrder(order));
        }
        if coeff_a == 0.0 || coeff_b == 0.0 || !coeff_a.is_finite() || !coeff_b.is_finite() {
            return Err(PolynomialError::DegenerateCombination {
                a: coeff_a,
                b: coeff_b,
            });
        }
        Ok(Self {
            coeff_a,
            coeff_b,
            degree,
            order,
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.degree as i64;
        self.coeff_a * laguerre(n, self.order, x) + self.coeff_b * laguerre(n - 1, self.order, x)
    }

    /// `|A|·L_n(0) + |B|·L_{n-1}(0)`, the scale against which a value at the
    /// origin is judged to vanish.
    fn origin_scale(&self) -> f64 {
        self.coeff_a.abs() * laguerre_at_origin(self.degree, self.order)
            + self.coeff_b.abs() * laguerre_at_origin(self.degree - 1, self.order)
    }

    /// True when the combination vanishes at the origin to rounding.
    pub fn vanishes_at_origin(&self) -> bool {
        self.eval(0.0).abs() <= 1e-12 * self.origin_scale()
    }

    /// Fujiwara bound on the moduli of all roots.
    pub fn root_bound(&self) -> f64 {
        let ca = laguerre_coefficients(self.degree, self.order);
        let cb = laguerre_coefficients(self.degree - 1, self.order);
        let n = self.degree as usize;
        let lead = self.coeff_a * ca[n];
        let max_term = (1..=n)
            .map(|k| {
                let c = self.coeff_a * ca[n - k] + self.coeff_b * cb[n - k];
                let mut ratio = (c / lead).abs();
                if k == n {
                    ratio *= 0.5;
                }
                ratio.powf(1.0 / k as f64)
            })
            .fold(0.0, f64::max);
        2.0 * max_term
    }

    /// Scanning range `2(2n + order + 2)` from the zero-counting design.
    pub fn scan_base(&self) -> f64 {
        2.0 * (2.0 * self.degree as f64 + self.order + 2.0)
    }

    /// Strictly positive zeros located by grid scan plus bisection.
    pub fn positive_zeros(&self) -> Vec<f64> {
        let grid = scan_grid(self.scan_base(), self.root_bound());
        let skip_origin = self.vanishes_at_origin();
        scan_zeros(|x| self.eval(x), &grid, !skip_origin)
    }

    /// `-L_n(0)/L_{n-1}(0) = -(n + order)/n`.
    pub fn ratio_threshold(&self) -> f64 {
        -(self.degree as f64 + self.order) / self.degree as f64
    }
}

/// Geometric grid on `[ρ_min, rho_max]` with `64·rho_max` points, continued
/// at the same ratio until it passes `extend_to` (a root bound).
pub fn scan_grid(rho_max: f64, extend_to: f64) -> Vec<f64> {
    let n = ((SCAN_POINTS_PER_UNIT * rho_max).ceil() as usize).max(256);
    let mut grid = geometric_points(SCAN_RHO_MIN, rho_max, n);
    let ratio = grid[n - 1] / grid[n - 2];
    let mut x = rho_max;
    while x < extend_to {
        x *= ratio;
        grid.push(x);
    }
    grid
}

pub(crate) fn geometric_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let ratio = (hi / lo).ln() / (n - 1) as f64;
    let mut pts: Vec<f64> = (0..n).map(|i| lo * (ratio * i as f64).exp()).collect();
    pts[n - 1] = hi;
    pts
}

/// Locates sign changes of `f` between consecutive `grid` points and refines
/// them by bisection. When `include_origin` is set the interval `[0, grid[0]]`
/// is scanned as well.
pub fn scan_zeros<F: Fn(f64) -> f64>(f: F, grid: &[f64], include_origin: bool) -> Vec<f64> {
    let mut zeros = Vec::new();
    let mut points = grid.iter().copied();
    let (mut x_prev, mut f_prev) = if include_origin {
        (0.0, f(0.0))
    } else {
        match points.next() {
            Some(x) => (x, f(x)),
            None => return zeros,
        }
    };
    for x in points {
        let fx = f(x);
        if fx == 0.0 {
            zeros.push(x);
            // restart the bracket just past the exact zero
            x_prev = x;
            f_prev = 0.0;
            continue;
        }
        if f_prev != 0.0 && f_prev.signum() != fx.signum() {
            zeros.push(bisect(&f, x_prev, x, f_prev));
        }
        x_prev = x;
        f_prev = fx;
    }
    zeros
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let s_lo = f_lo.signum();
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Closed rule: `n - 1` zeros when `B/A < -(n + order)/n`, otherwise `n`
/// (equality puts one zero at the origin, which is counted).
pub fn combo_zero_count_rule(coeff_a: f64, coeff_b: f64, degree: u32, order: f64) -> usize {
    let n = degree as f64;
    let threshold = -(n + order) / n;
    let ratio = coeff_b / coeff_a;
    let at_threshold = (ratio - threshold).abs() <= 1e-12 * threshold.abs();
    if ratio < threshold && !at_threshold {
        degree as usize - 1
    } else {
        degree as usize
    }
}

/// Number of zeros of `A·L_n^order + B·L_{n-1}^order` on `ρ > 0`, plus one
/// for a zero sitting exactly at the origin. Found by scanning and then
/// checked against [`combo_zero_count_rule`].
pub fn combo_zero_count(
    coeff_a: f64,
    coeff_b: f64,
    degree: u32,
    order: f64,
) -> Result<usize, PolynomialError> {
    let combo = LaguerreCombination::new(coeff_a, coeff_b, degree, order)?;
    let scanned = combo.positive_zeros().len() + usize::from(combo.vanishes_at_origin());
    let rule = combo_zero_count_rule(coeff_a, coeff_b, degree, order);
    if scanned != rule {
        return Err(PolynomialError::ScanRuleMismatch { scanned, rule });
    }
    Ok(scanned)
}

/// Positive zeros of `L_n^a` in increasing order.
pub fn laguerre_zeros(degree: u32, order: f64) -> Vec<f64> {
    if degree == 0 {
        return Vec::new();
    }
    let rho_max = 2.0 * (2.0 * degree as f64 + order + 2.0);
    let grid = scan_grid(rho_max, rho_max);
    scan_zeros(|x| laguerre(degree as i64, order, x), &grid, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn laguerre_low_degrees() {
        assert_eq!(laguerre_eval(0, 2.3, 5.0).unwrap(), 1.0);
        assert_eq!(laguerre_eval(1, 2.0, 0.5).unwrap(), 2.5);
    }

    #[test]
    fn laguerre_rejects_bad_input() {
        assert_eq!(
            laguerre_eval(-1, 1.0, 1.0),
            Err(PolynomialError::InvalidDegree(-1))
        );
        assert_eq!(
            laguerre_eval(2, -1.0, 1.0),
            Err(PolynomialError::InvalidOrder(-1.0))
        );
    }

    #[test]
    fn laguerre_at_zero_is_binomial() {
        // binomial(3 + a, 3) written out as a product
        let gamma = 1.1832_f64;
        let a = 2.0 * gamma;
        let expected = (a + 1.0) * (a + 2.0) * (a + 3.0) / 6.0;
        assert_relative_eq!(
            laguerre_eval(3, a, 0.0).unwrap(),
            expected,
            max_relative = 1e-14
        );
    }

    #[test]
    fn laguerre_explicit_degree_two() {
        // L_2^a(x) = (a+1)(a+2)/2 - (a+2)x + x^2/2
        let (a, x) = (0.7, 1.9);
        let expected = (a + 1.0) * (a + 2.0) / 2.0 - (a + 2.0) * x + x * x / 2.0;
        assert_relative_eq!(laguerre_eval(2, a, x).unwrap(), expected, max_relative = 1e-14);
    }

    #[test]
    fn coefficients_reproduce_recurrence() {
        for n in 0..8 {
            let a = 1.37;
            let c = laguerre_coefficients(n, a);
            for &x in &[0.0, 0.4, 2.2, 7.5] {
                let horner = c.iter().rev().fold(0.0, |acc, ck| acc * x + ck);
                assert_relative_eq!(horner, laguerre(n as i64, a, x), epsilon = 1e-10, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn kummer_low_degrees() {
        assert_eq!(kummer_poly_eval(0, 3.0, 7.0).unwrap(), 1.0);
        assert_eq!(kummer_poly_eval(1, 4.0, 2.0).unwrap(), 0.5);
        assert!(matches!(
            kummer_poly_eval(2, 0.0, 1.0),
            Err(PolynomialError::InvalidB(_))
        ));
    }

    #[test]
    fn kummer_matches_laguerre_identity() {
        // 1F1(-n, a+1, x) = n! / ((a+1)_n) L_n^a(x)
        let b = 3.3664;
        let lag = laguerre_eval(2, b - 1.0, 1.0).unwrap();
        let expected = lag * 2.0 / (b * (b + 1.0));
        assert_relative_eq!(
            kummer_poly_eval(2, b, 1.0).unwrap(),
            expected,
            max_relative = 1e-14
        );
    }

    #[test]
    fn params_wrapper() {
        let p = LaguerreParams::new(3, 2.4, 1.3).unwrap();
        let scale = laguerre_at_origin(3, 2.4);
        assert_relative_eq!(p.kummer() * scale, p.eval(), max_relative = 1e-13);
        assert!(LaguerreParams::new(1, 0.0, 1.0).is_err());
    }

    #[test]
    fn combo_examples() {
        assert_eq!(combo_zero_count(1.0, 0.01, 2, 2.4).unwrap(), 2);
        assert_eq!(combo_zero_count(1.0, -10.0, 2, 2.4).unwrap(), 1);
        let threshold = -(3.0 + 2.0) / 3.0;
        assert_eq!(combo_zero_count(1.0, threshold, 3, 2.0).unwrap(), 3);
    }

    #[test]
    fn combo_far_outer_zero() {
        // large positive B/A pushes one zero far beyond 2(2n + a + 2)
        let combo = LaguerreCombination::new(1.0, 200.0, 2, 1.0).unwrap();
        let zeros = combo.positive_zeros();
        assert_eq!(zeros.len(), 2);
        assert!(*zeros.last().unwrap() > combo.scan_base());
        assert!(*zeros.last().unwrap() < combo.root_bound());
        assert_eq!(combo_zero_count(1.0, 200.0, 2, 1.0).unwrap(), 2);
    }

    #[test]
    fn combo_degenerate() {
        assert!(matches!(
            combo_zero_count(0.0, 1.0, 2, 1.0),
            Err(PolynomialError::DegenerateCombination { .. })
        ));
        assert!(matches!(
            combo_zero_count(1.0, 1.0, 0, 1.0),
            Err(PolynomialError::InvalidDegree(0))
        ));
    }

    #[test]
    fn laguerre_has_n_positive_zeros() {
        for n in 1..=8 {
            assert_eq!(laguerre_zeros(n, 2.5).len(), n as usize);
        }
    }
}
