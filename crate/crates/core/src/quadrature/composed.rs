//! Wavevector integral at fixed frequency, and the frequency integral over
//! such slices, with break points at the known knees of the kernels.

use std::cell::RefCell;

use super::{integrate_semi_infinite, integrate_with_breaks, IntegrationResult, QuadratureSpec};
use crate::error::{require_positive, Error, Result};
use crate::kernels::{
    quantum_kernel_imag, quantum_kernel_real, thermal_kernel, total_kernel, ConductivityPart,
};
use crate::medium::{bose, Axis, MaterialModel, ModelKind};

/// Occupation weight and frequency axis of a slice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weighting {
    Thermal { theta: f64, part: ConductivityPart },
    Total { theta: f64 },
    QuantumReal,
    QuantumImaginary,
}

impl Weighting {
    fn axis(&self) -> Axis {
        match self {
            Weighting::QuantumImaginary => Axis::Imaginary,
            _ => Axis::Real,
        }
    }
}

/// ∫ p dp of the chosen kernel at fixed frequency.
///
/// Real axis: the range is split at the light cone p = x, at the medium knee
/// p = |ε x²|^{1/2}, at the surface plasmon and at the plasma branch point;
/// it ends where |e^{2iqζ/Ω̂}| has fallen below `tail_epsilon`. Lossless
/// models contribute nothing below the light cone, so only [0, x] is integrated.
/// Imaginary axis: [0, κ̂(0)] followed by an exponential tail.
pub fn q_integral(
    model: &MaterialModel,
    weighting: Weighting,
    freq: f64,
    zeta: f64,
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    require_positive("frequency", freq)?;
    require_positive("depth zeta", zeta)?;
    let decay = model.omega_p_tau / (2.0 * zeta);
    match weighting.axis() {
        Axis::Real => real_axis_slice(model, weighting, freq, zeta, decay, spec),
        Axis::Imaginary => {
            let eps = model.permittivity(freq, Axis::Imaginary)?.re;
            let knee = eps.sqrt() * freq;
            if knee / decay > 745.0 {
                return Ok(IntegrationResult::ZERO);
            }
            let kernel = |p: f64| quantum_kernel_imag(model, freq, p, zeta);
            let head = guarded(kernel, |f| integrate_with_breaks(f, &[0.0, knee], spec))?;
            let tail = guarded(kernel, |f| integrate_semi_infinite(f, knee, spec, decay))?;
            Ok(head.combine(tail))
        }
    }
}

fn real_axis_slice(
    model: &MaterialModel,
    weighting: Weighting,
    x: f64,
    zeta: f64,
    decay: f64,
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    if let Weighting::Thermal { theta, .. } = weighting {
        if bose(x, theta)? == 0.0 {
            return Ok(IntegrationResult::ZERO);
        }
    }
    let kernel = |p: f64| match weighting {
        Weighting::Thermal { theta, part } => thermal_kernel(model, part, x, p, zeta, theta),
        Weighting::Total { theta } => total_kernel(model, x, p, zeta, theta),
        _ => quantum_kernel_real(model, x, p, zeta),
    };
    if model.kind != ModelKind::Drude {
        let mut breaks = vec![0.0];
        let branch = x * x - model.omega_p_tau * model.omega_p_tau;
        if branch > 0.0 {
            breaks.push(branch.sqrt());
        }
        breaks.push(x);
        return guarded(kernel, |f| integrate_with_breaks(f, &breaks, spec));
    }

    let eps = model.permittivity(x, Axis::Real)?;
    let k2 = eps * (x * x);
    let mut knees = vec![x, k2.norm().sqrt()];
    if k2.re > 0.0 {
        knees.push(k2.re.sqrt());
    }
    if eps.re < -1.0 {
        // Surface plasmon: εv + q = 0 where p² = x² ε/(ε + 1).
        let sp = (x * x * eps / (eps + 1.0)).re;
        if sp > 0.0 {
            knees.push(sp.sqrt());
        }
    }
    let outer = knees.iter().cloned().fold(0.0, f64::max);
    // Im q ≥ √(p² − outer²) ≥ p − outer past the last knee.
    let p_max = 1.5 * (outer + decay * (1.0 / spec.tail_epsilon).ln());
    let mut breaks = vec![0.0];
    breaks.extend(knees);
    breaks.push(p_max);
    breaks.sort_by(f64::total_cmp);
    guarded(kernel, |f| integrate_with_breaks(f, &breaks, spec))
}

/// Runs an integrator over a fallible integrand, surfacing the first error.
fn guarded<K, I>(kernel: K, integrate: I) -> Result<IntegrationResult>
where
    K: Fn(f64) -> Result<f64>,
    I: FnOnce(&mut dyn FnMut(f64) -> f64) -> Result<IntegrationResult>,
{
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let mut f = |t: f64| match kernel(t) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let result = integrate(&mut f);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    result
}

/// Where the outer frequency integral runs.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyDomain {
    /// Sorted panel boundaries; the first is the lower limit.
    pub breaks: Vec<f64>,
    /// Decay scale of a semi-infinite tail after the last break, if any.
    pub tail_scale: Option<f64>,
}

impl FrequencyDomain {
    fn with_breaks(mut breaks: Vec<f64>, upper: f64, tail_scale: Option<f64>) -> Self {
        breaks.retain(|&b| b < upper);
        breaks.push(upper);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        Self { breaks, tail_scale }
    }

    /// Thermal path: [0, θ ln(1/ε_tail)] split at x = 1, x = θ and the plasma features.
    pub fn thermal(model: &MaterialModel, theta: f64, spec: &QuadratureSpec) -> Self {
        let upper = theta * (1.0 / spec.tail_epsilon).ln();
        let w = model.omega_p_tau;
        Self::with_breaks(vec![0.0, 1.0, theta, w / 2f64.sqrt(), w], upper, None)
    }

    /// Rotated zero-point path, keyed to 1/ζ², 1, Ω̂ and Ω̂/ζ, with an exponential tail.
    pub fn quantum_imaginary(model: &MaterialModel, zeta: f64) -> Self {
        let w = model.omega_p_tau;
        let decay = w / (2.0 * zeta);
        let top = w * (1.0f64).max(1.0 / zeta);
        Self::with_breaks(vec![0.0, 1.0 / (zeta * zeta), 1.0, w], top, Some(decay))
    }

    /// Real axis with a regulating weight of decay length 1/η.
    pub fn regulated_real(model: &MaterialModel, eta: f64) -> Self {
        let w = model.omega_p_tau;
        Self::with_breaks(vec![0.0, 1.0, w / 2f64.sqrt()], w, Some(1.0 / eta))
    }
}

/// Outer integral together with the frequencies whose slices did not converge.
#[derive(Debug, Clone, PartialEq)]
pub struct ComposedResult {
    pub result: IntegrationResult,
    pub failed_slices: Vec<f64>,
}

/// Integrates slice values g(freq) over the domain.
///
/// Any non-converged slice marks the whole result as not converged and is
/// listed in `failed_slices`, sorted by frequency.
pub fn omega_integral<G>(g: G, domain: &FrequencyDomain, spec: &QuadratureSpec) -> Result<ComposedResult>
where
    G: Fn(f64) -> Result<IntegrationResult>,
{
    let failed = RefCell::new(Vec::new());
    let slice = |x: f64| {
        g(x).map(|r| {
            if !r.converged {
                failed.borrow_mut().push(x);
            }
            r.value
        })
    };
    let head = guarded(slice, |f| integrate_with_breaks(f, &domain.breaks, spec))?;
    let result = match domain.tail_scale {
        Some(scale) => {
            let start = *domain.breaks.last().expect("domain has breaks");
            head.combine(guarded(slice, |f| integrate_semi_infinite(f, start, spec, scale))?)
        }
        None => head,
    };
    let mut failed_slices = failed.into_inner();
    failed_slices.sort_by(f64::total_cmp);
    let converged = result.converged && failed_slices.is_empty();
    Ok(ComposedResult {
        result: IntegrationResult { converged, ..result },
        failed_slices,
    })
}
