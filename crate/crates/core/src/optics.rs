//! Normal wavevectors and inner-side Fresnel reflection of a flat metal–vacuum
//! interface, in reduced units (wavevectors measured in 1/(cτ)).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::medium::{Axis, MaterialModel};

/// A point in the (frequency, in-plane wavevector) plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub freq: f64,
    pub p: f64,
    pub axis: Axis,
}

impl SpectralPoint {
    pub fn new(freq: f64, p: f64, axis: Axis) -> Result<Self> {
        if !(freq > 0.0 && freq.is_finite()) {
            return Err(invalid(format!("frequency must be positive, got {freq}")));
        }
        if !(p >= 0.0 && p.is_finite()) {
            return Err(invalid(format!("wavevector must be non-negative, got {p}")));
        }
        Ok(Self { freq, p, axis })
    }

    pub fn real(x: f64, p: f64) -> Result<Self> {
        Self::new(x, p, Axis::Real)
    }

    pub fn imaginary(xi: f64, p: f64) -> Result<Self> {
        Self::new(xi, p, Axis::Imaginary)
    }
}

/// Normal wavevectors and reflection amplitudes at one spectral point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerResponse {
    pub eps: Complex64,
    pub q: Complex64,
    pub v: Complex64,
    pub r_p: Complex64,
    pub r_s: Complex64,
}

impl LayerResponse {
    pub fn at(model: &MaterialModel, point: &SpectralPoint) -> Result<Self> {
        let eps = model.permittivity(point.freq, point.axis)?;
        let (q, v) = normal_wavevectors(eps, point);
        let (r_p, r_s) = fresnel_inner(eps, q, v)?;
        Ok(Self { eps, q, v, r_p, r_s })
    }
}

/// How the square-root branch of a normal wavevector is selected.
///
/// `Flipped` exists only so the self-test can prove it detects a broken
/// branch rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchRule {
    #[default]
    Decaying,
    Flipped,
}

/// Square root with Re ≥ 0 and Im ≥ 0 on the closed upper half plane.
pub fn decaying_sqrt(w: Complex64) -> Complex64 {
    let r = w.sqrt();
    // A negative real argument with Im = −0.0 lands on −i√|w|.
    if r.im < 0.0 {
        -r
    } else {
        r
    }
}

/// Medium and vacuum normal wavevectors (q, v).
///
/// Real axis: q² = ε x² − p², v² = x² − p², both with Re, Im ≥ 0.
/// Imaginary axis: q = i√(ε x̂² + p²), v = i√(x̂² + p²).
pub fn normal_wavevectors(eps: Complex64, point: &SpectralPoint) -> (Complex64, Complex64) {
    normal_wavevectors_with(eps, point, BranchRule::Decaying)
}

pub fn normal_wavevectors_with(
    eps: Complex64,
    point: &SpectralPoint,
    rule: BranchRule,
) -> (Complex64, Complex64) {
    let f2 = point.freq * point.freq;
    let p2 = point.p * point.p;
    let (q, v) = match point.axis {
        Axis::Real => (
            decaying_sqrt(eps * f2 - p2),
            decaying_sqrt(Complex64::new(f2 - p2, 0.0)),
        ),
        Axis::Imaginary => (
            Complex64::i() * (eps * f2 + p2).sqrt(),
            Complex64::new(0.0, (f2 + p2).sqrt()),
        ),
    };
    match rule {
        BranchRule::Decaying => (q, v),
        BranchRule::Flipped => (-q, v),
    }
}

/// Inner-side reflection amplitudes (r_p, r_s) with relative permittivity.
pub fn fresnel_inner(eps: Complex64, q: Complex64, v: Complex64) -> Result<(Complex64, Complex64)> {
    let dp = eps * v + q;
    let ds = q + v;
    check_pole(dp, ds)?;
    Ok(((eps * v - q) / dp, (q - v) / ds))
}

/// r_p + r_s written as 2vq(ε − 1)/((εv + q)(q + v)), which does not cancel at large p.
pub fn fresnel_sum(eps: Complex64, q: Complex64, v: Complex64) -> Result<Complex64> {
    let dp = eps * v + q;
    let ds = q + v;
    check_pole(dp, ds)?;
    Ok(2.0 * v * q * (eps - 1.0) / (dp * ds))
}

fn check_pole(dp: Complex64, ds: Complex64) -> Result<()> {
    if dp == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole("εv + q = 0 (p polarisation)".into()));
    }
    if ds == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole("q + v = 0 (s polarisation)".into()));
    }
    Ok(())
}

/// Medium wavenumber squared k² = ε ω² on either axis (ω² = −x̂² on the imaginary axis).
fn medium_k2(eps: Complex64, point: &SpectralPoint) -> Complex64 {
    let f2 = point.freq * point.freq;
    match point.axis {
        Axis::Real => eps * f2,
        Axis::Imaginary => -eps * f2,
    }
}

/// Trace of the reflection tensor R·T̄: r_s + r_p (q² − p²)/k².
pub fn reflection_tensor_trace(
    eps: Complex64,
    q: Complex64,
    v: Complex64,
    point: &SpectralPoint,
) -> Result<Complex64> {
    let (r_p, r_s) = fresnel_inner(eps, q, v)?;
    let p2 = point.p * point.p;
    Ok(r_s + r_p * (q * q - p2) / medium_k2(eps, point))
}

/// z-component of the angle-averaged tr(R·T̄) q − R·T̄·q.
///
/// Built from the two in-plane averages; equals q (r_p + r_s) identically.
pub fn angular_average_vector(
    eps: Complex64,
    q: Complex64,
    v: Complex64,
    point: &SpectralPoint,
) -> Result<Complex64> {
    let (r_p, _) = fresnel_inner(eps, q, v)?;
    let trace = reflection_tensor_trace(eps, q, v, point)?;
    Ok(trace * q + 2.0 * q * r_p * point.p * point.p / medium_k2(eps, point))
}

/// Frequency x = p²/Ω̂² of magnetic diffusion at wavevector p.
pub fn diffusion_frequency(p: f64, omega_p_tau: f64) -> f64 {
    p * p / (omega_p_tau * omega_p_tau)
}
