//! Adaptive Gauss–Kronrod quadrature and the composed force integrals.

mod composed;

pub use composed::{omega_integral, q_integral, ComposedResult, FrequencyDomain, Weighting};

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Tolerances and budgets shared by every integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Relative size below which a tail segment is considered negligible.
    pub tail_epsilon: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
            tail_epsilon: 1e-12,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(invalid(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(invalid(format!("abs_tol must be non-negative, got {}", self.abs_tol)));
        }
        if self.max_subdivisions < 1 {
            return Err(invalid("max_subdivisions must be at least 1"));
        }
        if !(self.tail_epsilon > 0.0 && self.tail_epsilon < 1.0) {
            return Err(invalid(format!("tail_epsilon must lie in (0, 1), got {}", self.tail_epsilon)));
        }
        Ok(())
    }

    /// Tighter spec for integrals nested inside another integral.
    pub(crate) fn inner(&self) -> Self {
        Self {
            rel_tol: self.rel_tol * 0.1,
            abs_tol: self.abs_tol * 0.1,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrationResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl IntegrationResult {
    pub const ZERO: IntegrationResult = IntegrationResult {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 0,
        converged: true,
    };

    /// Sum of two integrals over adjacent ranges.
    pub fn combine(self, other: IntegrationResult) -> IntegrationResult {
        IntegrationResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    pub fn scaled(self, factor: f64) -> IntegrationResult {
        IntegrationResult {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            ..self
        }
    }
}

// 15-point Kronrod abscissae (positive half) with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Largest error first; ties broken by position so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.abs() * WGK[7];
    let mut values = [0.0f64; 14];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        values[2 * j] = f1;
        values[2 * j + 1] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    if !kronrod.is_finite() || !abs_sum.is_finite() {
        return Err(Error::Quadrature(format!("non-finite integrand on [{a}, {b}]")));
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((values[2 * j] - mean).abs() + (values[2 * j + 1] - mean).abs());
    }
    let abs_half = half.abs();
    let value = kronrod * half;
    let abs_value = abs_sum * abs_half;
    let asc = asc * abs_half;
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    Ok(Panel {
        a,
        b,
        value,
        error,
        abs_value,
    })
}

// Error that cannot be reduced further in double precision.
fn roundoff_floor(abs_value: f64) -> f64 {
    100.0 * f64::EPSILON * abs_value
}

/// Adaptive integration of `f` over `[a, b]`.
///
/// Bisects the panel with the largest Kronrod–Gauss error until the total
/// error drops below max(abs_tol, rel_tol·|value|), or below the roundoff
/// floor of the integral of |f|. Runs out of budget with `converged = false`.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(invalid(format!("integration bounds must satisfy a < b, got [{a}, {b}]")));
    }
    integrate_with_breaks(f, &[a, b], spec)
}

/// Adaptive integration over `[breaks[0], breaks[last]]` with the interior
/// break points as initial panel boundaries. Break points must be sorted;
/// duplicates are dropped.
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(
    f: F,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    adaptive_core(f, breaks, spec).map(|(r, _)| r)
}

/// Returns the result together with the integral of |f|.
fn adaptive_core<F: FnMut(f64) -> f64>(
    mut f: F,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<(IntegrationResult, f64)> {
    spec.validate()?;
    let mut edges: Vec<f64> = Vec::with_capacity(breaks.len());
    for &x in breaks {
        if !x.is_finite() {
            return Err(invalid("break points must be finite"));
        }
        match edges.last() {
            Some(&last) if x < last => return Err(invalid("break points must be sorted")),
            Some(&last) if x == last => {}
            _ => edges.push(x),
        }
    }
    if edges.len() < 2 {
        return Err(invalid("integration range is empty"));
    }

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in edges.windows(2) {
        heap.push(gauss_kronrod(&mut f, w[0], w[1])?);
        evaluations += 15;
    }
    let budget = spec.max_subdivisions.max(edges.len() - 1);

    let totals = |heap: &BinaryHeap<Panel>| {
        heap.iter().fold((0.0, 0.0, 0.0), |(v, e, s), p| {
            (v + p.value, e + p.error, s + p.abs_value)
        })
    };
    let tolerance = |value: f64, abs_value: f64| {
        spec.abs_tol
            .max(spec.rel_tol * value.abs())
            .max(roundoff_floor(abs_value))
    };

    let (mut value, mut error, mut abs_value) = totals(&heap);
    let mut converged = error <= tolerance(value, abs_value);
    while !converged && heap.len() < budget {
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Panel collapsed to adjacent floats; nothing left to refine.
            heap.push(worst);
            break;
        }
        let left = gauss_kronrod(&mut f, worst.a, mid)?;
        let right = gauss_kronrod(&mut f, mid, worst.b)?;
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_value += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        // Refresh running sums now and then so cancellation cannot drift.
        if heap.len() % 64 == 0 {
            (value, error, abs_value) = totals(&heap);
        }
        converged = error <= tolerance(value, abs_value);
    }

    // Sum in panel order so the result does not depend on heap layout.
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let error: f64 = panels.iter().map(|p| p.error).sum();
    let abs_value: f64 = panels.iter().map(|p| p.abs_value).sum();
    let result = IntegrationResult {
        value,
        error_estimate: error,
        evaluations,
        converged: error <= tolerance(value, abs_value),
    };
    Ok((result, abs_value))
}

// Segments without two consecutive negligible contributions before giving up.
const MAX_TAIL_SEGMENTS: usize = 400;

/// Integral of an eventually decaying `f` over `[a, ∞)`.
///
/// Walks segments of length `decay_scale` and stops once two consecutive
/// segments contribute less than `tail_epsilon` of the accumulated ∫|f|.
/// If segments stop shrinking the result is flagged as not converged.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    spec: &QuadratureSpec,
    decay_scale: f64,
) -> Result<IntegrationResult> {
    spec.validate()?;
    if !(decay_scale > 0.0 && decay_scale.is_finite()) || !a.is_finite() {
        return Err(invalid(format!("invalid tail parameters a = {a}, scale = {decay_scale}")));
    }
    let mut total = IntegrationResult::ZERO;
    let mut accumulated_abs = 0.0;
    let mut quiet = 0;
    let mut lo = a;
    for _ in 0..MAX_TAIL_SEGMENTS {
        let hi = lo + decay_scale;
        let seg_spec = QuadratureSpec {
            abs_tol: spec.abs_tol.max(0.1 * spec.rel_tol * accumulated_abs),
            ..*spec
        };
        let (seg, seg_abs) = adaptive_core(&mut f, &[lo, hi], &seg_spec)?;
        total = total.combine(seg);
        accumulated_abs += seg_abs;
        if seg_abs <= spec.tail_epsilon * accumulated_abs {
            quiet += 1;
            if quiet >= 2 {
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
        lo = hi;
    }
    total.converged = false;
    Ok(total)
}
