//! Half-line quadrature for integrands with exponential decay.
//!
//! `∫_0^∞ f(r) dr` is mapped onto `(0, 1)` with `r = -ln(u)/c`, where `c` is
//! the decay rate of the integrand, and the mapped integrand is integrated by
//! globally adaptive 21-point Gauss–Kronrod subdivision. For a polynomial
//! times `r^a e^{-cr}` the mapped integrand is `(-ln u)^a` times a polynomial
//! in `ln u`, whose endpoint behaviour bisection handles without
//! special-casing.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

/// Maximum number of integrand evaluations per call.
pub const EVALUATION_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("relative tolerance {0} outside [1e-14, 1e-4]")]
    InvalidTolerance(f64),
    #[error("decay rate must be positive and finite, got {0}")]
    InvalidDecayRate(f64),
    #[error("non-finite integrand value at r = {0}")]
    NonFiniteIntegrand(f64),
    #[error("no-convergence: value {value}, error estimate {error_estimate} after {evaluations} evaluations")]
    NoConvergence {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Estimate claimed by the rule, not a guaranteed bound.
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<(f64, f64), f64> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    if !fc.is_finite() {
        return Err(center);
    }
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        if !f1.is_finite() {
            return Err(center - dx);
        }
        if !f2.is_finite() {
            return Err(center + dx);
        }
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    Ok((kronrod, (kronrod - gauss).abs()))
}

/// Integrates `integrand` over `(0, ∞)`, mapping with `r = -ln(u)/decay_rate`.
/// A rate below the true decay rate of the integrand makes the mapped
/// integrand vanish at `u = 0`.
pub fn integrate_halfline<F>(
    integrand: F,
    decay_rate: f64,
    rel_tol: f64,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    if !(1e-14..=1e-4).contains(&rel_tol) {
        return Err(QuadratureError::InvalidTolerance(rel_tol));
    }
    if !(decay_rate > 0.0 && decay_rate.is_finite()) {
        return Err(QuadratureError::InvalidDecayRate(decay_rate));
    }
    let mapped = |u: f64| {
        // nodes rounded onto an endpoint carry no weight worth a singularity
        if u <= 0.0 || u >= 1.0 {
            return 0.0;
        }
        let r = -u.ln() / decay_rate;
        let fr = integrand(r);
        if fr == 0.0 {
            0.0
        } else {
            fr / (decay_rate * u)
        }
    };
    let to_r = |u: f64| -u.ln() / decay_rate;

    let (value, error) = gauss_kronrod(&mapped, 0.0, 1.0)
        .map_err(|u| QuadratureError::NonFiniteIntegrand(to_r(u)))?;
    let mut evaluations = 21;
    let mut heap = BinaryHeap::new();
    let mut stalled: Vec<Segment> = Vec::new();
    heap.push(Segment {
        lo: 0.0,
        hi: 1.0,
        value,
        error,
    });
    let mut total_value = value;
    let mut total_error = error;

    let resum = |heap: &BinaryHeap<Segment>, stalled: &[Segment]| {
        // fixed order, free of the drift of the running totals
        let mut segments: Vec<Segment> = heap.iter().chain(stalled).copied().collect();
        segments.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        (value, error)
    };

    loop {
        if total_error <= rel_tol * total_value.abs() {
            (total_value, total_error) = resum(&heap, &stalled);
            if total_error <= rel_tol * total_value.abs() {
                break;
            }
        }
        if evaluations + 42 > EVALUATION_BUDGET {
            return Err(QuadratureError::NoConvergence {
                value: total_value,
                error_estimate: total_error,
                evaluations,
            });
        }
        let Some(worst) = heap.pop() else {
            (total_value, total_error) = resum(&heap, &stalled);
            if total_error <= rel_tol * total_value.abs() {
                break;
            }
            return Err(QuadratureError::NoConvergence {
                value: total_value,
                error_estimate: total_error,
                evaluations,
            });
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            stalled.push(worst);
            continue;
        }
        let (v1, e1) = gauss_kronrod(&mapped, worst.lo, mid)
            .map_err(|u| QuadratureError::NonFiniteIntegrand(to_r(u)))?;
        let (v2, e2) = gauss_kronrod(&mapped, mid, worst.hi)
            .map_err(|u| QuadratureError::NonFiniteIntegrand(to_r(u)))?;
        evaluations += 42;
        total_value += v1 + v2 - worst.value;
        total_error += e1 + e2 - worst.error;
        heap.push(Segment {
            lo: worst.lo,
            hi: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            lo: mid,
            hi: worst.hi,
            value: v2,
            error: e2,
        });
    }

    let (value, error_estimate) = (total_value, total_error);
    Ok(QuadratureResult {
        value,
        error_estimate,
        evaluations,
    })
}
