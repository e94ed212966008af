//! Force densities assembled from the kernels, the ideal-conductor and
//! short-distance closed forms, and depth/temperature sweeps.
//!
//! Reduced force densities are in units of ħ/(c⁴τ⁵). The normalised value
//! f_norm = −f z² ƛ_p²/(k_B T) reads −f_red ζ²/(Ω̂⁴θ) in reduced variables.

mod estimates;

pub use estimates::{surface_charge, work_function_shift, EstimateInputs, SurfaceCharge, WorkFunctionShift};

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, require_positive, Error, Result};
use crate::kernels::{ideal_kernel, ConductivityPart};
use crate::medium::{bose, MaterialModel, ModelKind};
use crate::quadrature::{
    integrate_semi_infinite, integrate_with_breaks, omega_integral, q_integral, ComposedResult,
    FrequencyDomain, IntegrationResult, QuadratureSpec, Weighting,
};
use crate::specfun::digamma;

/// Smallest depth accepted by the local-response quadrature paths.
pub const MIN_LOCAL_DEPTH: f64 = 0.05;

/// Lower end of the crossing search.
pub const CROSSING_BRACKET: (f64, f64) = (1.0, 8.0);

/// A force density together with its quadrature diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForceValue {
    pub reduced: f64,
    pub f_norm: f64,
    pub error_estimate: f64,
    pub converged: bool,
    /// Frequencies whose wavevector integral did not converge.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failed_slices: Vec<f64>,
}

impl ForceValue {
    fn from_integral(composed: ComposedResult, zeta: f64, theta: f64, omega_p_tau: f64) -> Self {
        let reduced = -composed.result.value / (2.0 * PI);
        Self {
            reduced,
            f_norm: normalize(reduced, zeta, theta, omega_p_tau),
            error_estimate: composed.result.error_estimate / (2.0 * PI),
            converged: composed.result.converged,
            failed_slices: composed.failed_slices,
        }
    }
}

/// f_norm = −f_red ζ²/(Ω̂⁴θ).
pub fn normalize(reduced: f64, zeta: f64, theta: f64, omega_p_tau: f64) -> f64 {
    -reduced * zeta * zeta / (omega_p_tau.powi(4) * theta)
}

fn check_local_depth(model: &MaterialModel, zeta: f64) -> Result<()> {
    require_positive("depth zeta", zeta)?;
    if model.kind != ModelKind::Ideal && zeta < MIN_LOCAL_DEPTH {
        return Err(invalid(format!(
            "depth zeta = {zeta} is below {MIN_LOCAL_DEPTH}, outside the local {} model",
            model.kind
        )));
    }
    Ok(())
}

/// Thermal force density (zero-point part subtracted), current and field fluctuations together.
pub fn force_thermal(model: &MaterialModel, zeta: f64, theta: f64, spec: &QuadratureSpec) -> Result<ForceValue> {
    force_thermal_part(model, ConductivityPart::Full, zeta, theta, spec)
}

/// Thermal force density with only the selected part of σ̂ in the prefactor.
///
/// The ideal conductor ignores `part` and uses its closed form.
pub fn force_thermal_part(
    model: &MaterialModel,
    part: ConductivityPart,
    zeta: f64,
    theta: f64,
    spec: &QuadratureSpec,
) -> Result<ForceValue> {
    spec.validate()?;
    require_positive("theta", theta)?;
    if model.kind == ModelKind::Ideal {
        return force_ideal(zeta, theta, model.omega_p_tau, spec);
    }
    check_local_depth(model, zeta)?;
    let inner = spec.inner();
    let slice = |x: f64| q_integral(model, Weighting::Thermal { theta, part }, x, zeta, &inner);
    let composed = omega_integral(slice, &FrequencyDomain::thermal(model, theta, spec), spec)?;
    Ok(ForceValue::from_integral(composed, zeta, theta, model.omega_p_tau))
}

/// Zero-point force density, integrated along the imaginary frequency axis.
///
/// `f_norm` is reported at θ = 1.
pub fn force_quantum(model: &MaterialModel, zeta: f64, spec: &QuadratureSpec) -> Result<ForceValue> {
    spec.validate()?;
    check_local_depth(model, zeta)?;
    let inner = spec.inner();
    let slice = |xi: f64| q_integral(model, Weighting::QuantumImaginary, xi, zeta, &inner);
    let composed = omega_integral(slice, &FrequencyDomain::quantum_imaginary(model, zeta), spec)?;
    Ok(ForceValue::from_integral(composed, zeta, 1.0, model.omega_p_tau))
}

/// Zero-point force density computed on the real frequency axis.
///
/// The frequency integral only converges in the Abel sense, so it is damped by
/// e^{−ηx} and extrapolated to η → 0. The damped integral is even in η, and three
/// Richardson steps in η² remove the leading corrections. Slow; meant as an
/// independent check of [`force_quantum`].
pub fn force_quantum_real_axis(model: &MaterialModel, zeta: f64, spec: &QuadratureSpec) -> Result<ForceValue> {
    spec.validate()?;
    check_local_depth(model, zeta)?;
    let inner = spec.inner();
    let alpha = 2.0 * zeta / model.omega_p_tau;
    let mut levels = Vec::with_capacity(3);
    let mut failed_slices = Vec::new();
    let mut error_estimate = 0.0;
    let mut converged = true;
    for eta in [alpha / 2.0, alpha / 4.0, alpha / 8.0] {
        let slice = |x: f64| {
            let r = q_integral(model, Weighting::QuantumReal, x, zeta, &inner)?;
            Ok(r.scaled((-eta * x).exp()))
        };
        let composed = omega_integral(slice, &FrequencyDomain::regulated_real(model, eta), spec)?;
        error_estimate += composed.result.error_estimate;
        converged &= composed.result.converged;
        failed_slices.extend(composed.failed_slices);
        levels.push(composed.result.value);
    }
    let first = [
        (4.0 * levels[1] - levels[0]) / 3.0,
        (4.0 * levels[2] - levels[1]) / 3.0,
    ];
    let extrapolated = (16.0 * first[1] - first[0]) / 15.0;
    // The last Richardson correction bounds the remaining extrapolation error.
    error_estimate += (extrapolated - first[1]).abs();
    let reduced = -extrapolated / (2.0 * PI);
    Ok(ForceValue {
        reduced,
        f_norm: normalize(reduced, zeta, 1.0, model.omega_p_tau),
        error_estimate: error_estimate / (2.0 * PI),
        converged,
        failed_slices,
    })
}

/// Thermal, zero-point and total force at one depth and temperature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForceBreakdown {
    pub thermal: ForceValue,
    pub quantum: ForceValue,
    pub total: f64,
}

pub fn force_total(model: &MaterialModel, zeta: f64, theta: f64, spec: &QuadratureSpec) -> Result<ForceBreakdown> {
    let thermal = force_thermal(model, zeta, theta, spec)?;
    let quantum = if model.kind == ModelKind::Ideal {
        force_quantum(&MaterialModel::plasma(model.omega_p_tau)?, zeta, spec)?
    } else {
        force_quantum(model, zeta, spec)?
    };
    Ok(ForceBreakdown {
        total: thermal.reduced + quantum.reduced,
        thermal,
        quantum,
    })
}

/// Thermal force of an ideal conductor from its singular DC conductivity.
///
/// f_norm = ζ² ∫ e^{−2Q̂ζ} Q̂κ̂/(κ̂ + Q̂) dQ̂, with Q̂ = Qƛ_p; exponentially small terms are dropped.
pub fn force_ideal(zeta: f64, theta: f64, omega_p_tau: f64, spec: &QuadratureSpec) -> Result<ForceValue> {
    spec.validate()?;
    require_positive("depth zeta", zeta)?;
    require_positive("theta", theta)?;
    require_positive("omega_p_tau", omega_p_tau)?;
    let f = |q: f64| ideal_kernel(q, zeta);
    let knee = 1.0f64.min(1.0 / zeta);
    let head = integrate_with_breaks(f, &[0.0, knee], spec)?;
    let tail = integrate_semi_infinite(f, knee, spec, 1.0 / (2.0 * zeta))?;
    let k = head.combine(tail);
    let scale = theta * omega_p_tau.powi(4);
    Ok(ForceValue {
        reduced: -scale * k.value,
        f_norm: zeta * zeta * k.value,
        error_estimate: scale * k.error_estimate,
        converged: k.converged,
        failed_slices: Vec::new(),
    })
}

/// Short-distance amplitude c(T) with f ≈ −c/z².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prefactor {
    /// c ƛ_p²/(k_B T), dimensionless.
    pub normalized: f64,
    /// c in units of ħ/(c⁴τ⁵) ƛ_p²; equals normalized·Ω̂⁴θ.
    pub reduced: f64,
}

impl Prefactor {
    fn from_normalized(normalized: f64, theta: f64, omega_p_tau: f64) -> Self {
        Self {
            normalized,
            reduced: normalized * omega_p_tau.powi(4) * theta,
        }
    }
}

/// Closed form (1/8π)(β ln(β/2π) − π − β ψ(β/2π)), β = 1/θ, for the normalised amplitude.
pub fn prefactor_c(theta: f64, omega_p_tau: f64) -> Result<Prefactor> {
    require_positive("theta", theta)?;
    require_positive("omega_p_tau", omega_p_tau)?;
    let beta = 1.0 / theta;
    let u = beta / (2.0 * PI);
    let normalized = (beta * u.ln() - PI - beta * digamma(u)?) / (8.0 * PI);
    Ok(Prefactor::from_normalized(normalized, theta, omega_p_tau))
}

/// The same amplitude as (1/4πθ) ∫ x n̄(x)/(1 + x²) dx, by quadrature.
pub fn prefactor_c_numeric(theta: f64, omega_p_tau: f64, spec: &QuadratureSpec) -> Result<(Prefactor, IntegrationResult)> {
    spec.validate()?;
    require_positive("theta", theta)?;
    require_positive("omega_p_tau", omega_p_tau)?;
    let f = |x: f64| {
        if x == 0.0 {
            theta
        } else {
            x * bose(x, theta).unwrap_or(0.0) / (1.0 + x * x)
        }
    };
    let (a, b) = (theta.min(1.0), theta.max(1.0));
    let head = integrate_with_breaks(f, &[0.0, a, b], spec)?;
    let tail = integrate_semi_infinite(f, b, spec, theta)?;
    let j = head.combine(tail);
    let normalized = j.value / (4.0 * PI * theta);
    Ok((Prefactor::from_normalized(normalized, theta, omega_p_tau), j.scaled(1.0 / (4.0 * PI * theta))))
}

/// Depth in [1, 8] where the normalised thermal profiles at two temperatures cross.
///
/// Bisection to 1e-3 in ζ. A bracket without sign change is reported as
/// [`Error::NoCrossing`].
pub fn crossing_depth(model: &MaterialModel, thetas: (f64, f64), spec: &QuadratureSpec) -> Result<f64> {
    crossing_depth_part(model, ConductivityPart::Full, thetas, spec)
}

pub fn crossing_depth_part(
    model: &MaterialModel,
    part: ConductivityPart,
    thetas: (f64, f64),
    spec: &QuadratureSpec,
) -> Result<f64> {
    let (t1, t2) = thetas;
    require_positive("theta", t1)?;
    require_positive("theta", t2)?;
    if t1 == t2 {
        return Err(invalid("crossing needs two distinct temperatures"));
    }
    let gap = |zeta: f64| -> Result<f64> {
        let a = force_thermal_part(model, part, zeta, t1, spec)?.f_norm;
        let b = force_thermal_part(model, part, zeta, t2, spec)?.f_norm;
        Ok(a - b)
    };
    let (mut lo, mut hi) = CROSSING_BRACKET;
    let (mut g_lo, g_hi) = (gap(lo)?, gap(hi)?);
    // Coinciding profiles (the ideal conductor) have no isolated crossing.
    if g_lo == 0.0 && g_hi == 0.0 {
        return Err(Error::NoCrossing { lo, hi });
    }
    if g_lo == 0.0 {
        return Ok(lo);
    }
    if g_hi == 0.0 {
        return Ok(hi);
    }
    if g_lo.signum() == g_hi.signum() {
        return Err(Error::NoCrossing { lo, hi });
    }
    while hi - lo > 1e-3 {
        let mid = 0.5 * (lo + hi);
        let g = gap(mid)?;
        if g == 0.0 {
            return Ok(mid);
        }
        if g.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// One row of a depth/temperature sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForcePoint {
    pub model: ModelKind,
    pub theta: f64,
    pub zeta: f64,
    pub f_thermal: f64,
    pub f_quantum: Option<f64>,
    pub f_total: Option<f64>,
    pub f_norm: f64,
    pub error_estimate: f64,
    pub converged: bool,
    /// Set when this point could not be computed; the numeric fields are then NaN.
    pub error: Option<String>,
}

impl ForcePoint {
    fn failed(model: ModelKind, theta: f64, zeta: f64, err: Error) -> Self {
        Self {
            model,
            theta,
            zeta,
            f_thermal: f64::NAN,
            f_quantum: None,
            f_total: None,
            f_norm: f64::NAN,
            error_estimate: f64::NAN,
            converged: false,
            error: Some(err.to_string()),
        }
    }
}

/// Evaluates the thermal force (and optionally the zero-point force) on every
/// (θ, ζ) pair. Points run in parallel; rows come back sorted by θ, then ζ.
/// A failing point is recorded in its row and does not stop the sweep.
pub fn force_profile(
    model: &MaterialModel,
    zetas: &[f64],
    thetas: &[f64],
    with_quantum: bool,
    spec: &QuadratureSpec,
) -> Result<Vec<ForcePoint>> {
    spec.validate()?;
    if zetas.is_empty() || thetas.is_empty() {
        return Err(invalid("depth grid and temperature list must be non-empty"));
    }
    for &z in zetas.iter().chain(thetas) {
        if !(z > 0.0) || !z.is_finite() {
            return Err(invalid(format!("grid values must be positive and finite, got {z}")));
        }
    }
    let mut pairs: Vec<(f64, f64)> = thetas
        .iter()
        .flat_map(|&t| zetas.iter().map(move |&z| (t, z)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pairs.dedup();
    let rows = pairs
        .par_iter()
        .map(|&(theta, zeta)| {
            let point = || -> Result<ForcePoint> {
                let thermal = force_thermal(model, zeta, theta, spec)?;
                let quantum = if with_quantum && model.kind != ModelKind::Ideal {
                    Some(force_quantum(model, zeta, spec)?)
                } else {
                    None
                };
                let f_quantum = quantum.as_ref().map(|q| q.reduced);
                Ok(ForcePoint {
                    model: model.kind,
                    theta,
                    zeta,
                    f_thermal: thermal.reduced,
                    f_quantum,
                    f_total: f_quantum.map(|q| q + thermal.reduced),
                    f_norm: thermal.f_norm,
                    error_estimate: thermal.error_estimate
                        + quantum.as_ref().map_or(0.0, |q| q.error_estimate),
                    converged: thermal.converged && quantum.as_ref().is_none_or(|q| q.converged),
                    error: None,
                })
            };
            point().unwrap_or_else(|e| ForcePoint::failed(model.kind, theta, zeta, e))
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default().with_rel_tol(1e-6)
    }

    #[test]
    fn prefactor_at_unit_temperature() {
        let c = prefactor_c(1.0, 210.0).unwrap();
        let (n, _) = prefactor_c_numeric(1.0, 210.0, &QuadratureSpec::default()).unwrap();
        assert!((c.normalized - 0.0656).abs() < 5e-4, "{}", c.normalized);
        assert!((c.normalized - n.normalized).abs() < 1e-8 * n.normalized);
        assert!((c.reduced - c.normalized * 210f64.powi(4)).abs() < 1e-6 * c.reduced);
    }

    #[test]
    fn prefactor_limits() {
        let hot = prefactor_c(1e4, 210.0).unwrap().normalized;
        assert!((hot - 0.125).abs() < 1e-3);
        let theta = 1e-3;
        let cold = prefactor_c(theta, 210.0).unwrap().normalized;
        assert!((cold / (PI * theta / 24.0) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn prefactor_rejects_nonpositive_temperature() {
        assert!(prefactor_c(0.0, 210.0).is_err());
        assert!(prefactor_c_numeric(-1.0, 210.0, &spec()).is_err());
    }

    #[test]
    fn ideal_force_is_linear_in_temperature() {
        let a = force_ideal(0.7, 1.25, 210.0, &spec()).unwrap();
        let b = force_ideal(0.7, 2.5, 210.0, &spec()).unwrap();
        assert_eq!((2.0 * a.reduced).to_bits(), b.reduced.to_bits());
        assert_eq!(a.f_norm.to_bits(), b.f_norm.to_bits());
    }

    #[test]
    fn ideal_force_independent_of_tau() {
        // Only Ω̂⁴ enters the reduced value; f_norm does not see the material at all.
        let a = force_ideal(2.0, 1.0, 210.0, &spec()).unwrap();
        let b = force_ideal(2.0, 1.0, 100.0, &spec()).unwrap();
        assert_eq!(a.f_norm, b.f_norm);
    }

    #[test]
    fn ideal_model_dispatches_to_closed_form() {
        let m = MaterialModel::ideal(210.0).unwrap();
        let a = force_thermal(&m, 1.0, 1.25, &spec()).unwrap();
        let b = force_ideal(1.0, 1.25, 210.0, &spec()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn normalisation_round_trip() {
        let f = -3.2e7;
        let n = normalize(f, 0.5, 1.25, 210.0);
        assert!((n - 3.2e7 * 0.25 / (210f64.powi(4) * 1.25)).abs() < 1e-15);
    }

    #[test]
    fn shallow_depth_rejected_for_local_models() {
        let m = MaterialModel::drude(210.0).unwrap();
        assert!(force_thermal(&m, 0.01, 1.25, &spec()).is_err());
        assert!(force_quantum(&m, 0.0, &spec()).is_err());
        assert!(force_ideal(0.01, 1.25, 210.0, &spec()).is_ok());
    }

    #[test]
    fn crossing_rejects_equal_temperatures() {
        let m = MaterialModel::drude(210.0).unwrap();
        assert!(crossing_depth(&m, (1.0, 1.0), &spec()).is_err());
    }

    #[test]
    fn ideal_profiles_never_cross() {
        let m = MaterialModel::ideal(210.0).unwrap();
        assert!(matches!(
            crossing_depth(&m, (0.6, 2.5), &spec()),
            Err(Error::NoCrossing { .. })
        ));
    }

    #[test]
    fn drude_thermal_force_points_to_surface() {
        let m = MaterialModel::drude(210.0).unwrap();
        for (zeta, theta) in [(0.3, 0.5), (1.5, 1.25), (4.0, 3.0)] {
            let f = force_thermal(&m, zeta, theta, &spec()).unwrap();
            assert!(f.converged);
            assert!(f.reduced < 0.0 && f.f_norm > 0.0, "ζ={zeta} θ={theta}: {f:?}");
        }
    }

    #[test]
    fn profile_rows_ordered_and_failures_recorded() {
        let m = MaterialModel::ideal(210.0).unwrap();
        let rows = force_profile(&m, &[2.0, 0.5, 1.0], &[2.5, 1.25], false, &spec()).unwrap();
        let keys: Vec<_> = rows.iter().map(|r| (r.theta, r.zeta)).collect();
        assert_eq!(
            keys,
            vec![(1.25, 0.5), (1.25, 1.0), (1.25, 2.0), (2.5, 0.5), (2.5, 1.0), (2.5, 2.0)]
        );
        let d = MaterialModel::drude(210.0).unwrap();
        let rows = force_profile(&d, &[0.01], &[1.25], false, &spec()).unwrap();
        assert!(rows[0].error.is_some() && !rows[0].converged);
        assert!(force_profile(&d, &[], &[1.25], false, &spec()).is_err());
    }
}
