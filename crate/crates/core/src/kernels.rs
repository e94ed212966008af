//! Pointwise integrands of the force integrals.
//!
//! Real-axis kernels share one form, Re[x σ̂ w(x) p e^{2iqζ/Ω̂} (r_p + r_s)],
//! differing only in the occupation weight w. The force density in units of
//! ħ/(c⁴τ⁵) is −1/(2π) times the double integral over x and p.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, require_positive, Result};
use crate::medium::{bose, coth_half, Axis, MaterialModel};
use crate::optics::{fresnel_sum, normal_wavevectors, SpectralPoint};
use crate::quadrature::{q_integral, IntegrationResult, QuadratureSpec, Weighting};

/// Which part of σ̂ multiplies the reflection integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConductivityPart {
    /// Current and field fluctuations together.
    #[default]
    Full,
    /// Re σ̂ only: the current-fluctuation term alone.
    RealOnly,
    /// i Im σ̂ only, as in a lossless conductor.
    ImagOnly,
}

impl ConductivityPart {
    fn select(self, sigma: Complex64) -> Complex64 {
        match self {
            ConductivityPart::Full => sigma,
            ConductivityPart::RealOnly => Complex64::new(sigma.re, 0.0),
            ConductivityPart::ImagOnly => Complex64::new(0.0, sigma.im),
        }
    }
}

impl std::str::FromStr for ConductivityPart {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(ConductivityPart::Full),
            "real" | "real_only" => Ok(ConductivityPart::RealOnly),
            "imag" | "imag_only" => Ok(ConductivityPart::ImagOnly),
            other => Err(invalid(format!("unknown conductivity part '{other}'"))),
        }
    }
}

/// One evaluated kernel value, for tabulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSample {
    pub freq: f64,
    pub p: f64,
    pub zeta: f64,
    pub value: f64,
}

fn check_depth(zeta: f64) -> Result<()> {
    require_positive("depth zeta", zeta)
}

fn real_axis_kernel(
    model: &MaterialModel,
    part: ConductivityPart,
    x: f64,
    p: f64,
    zeta: f64,
    weight: f64,
) -> Result<f64> {
    check_depth(zeta)?;
    let point = SpectralPoint::real(x, p)?;
    if weight == 0.0 || p == 0.0 {
        return Ok(0.0);
    }
    let sigma = model.conductivity(x)?;
    let eps = Complex64::new(1.0, 0.0) + Complex64::i() * sigma / x;
    let (q, v) = normal_wavevectors(eps, &point);
    let damping = (Complex64::i() * q * (2.0 * zeta / model.omega_p_tau)).exp();
    if damping == Complex64::new(0.0, 0.0) {
        return Ok(0.0);
    }
    let sum = fresnel_sum(eps, q, v)?;
    Ok((part.select(sigma) * sum * damping).re * x * weight * p)
}

/// Thermal integrand (occupation 2n̄) at real frequency x.
pub fn thermal_kernel(
    model: &MaterialModel,
    part: ConductivityPart,
    x: f64,
    p: f64,
    zeta: f64,
    theta: f64,
) -> Result<f64> {
    require_positive("theta", theta)?;
    let weight = 2.0 * bose(x, theta)?;
    real_axis_kernel(model, part, x, p, zeta, weight)
}

/// Full integrand with occupation coth(x/2θ) = 1 + 2n̄.
pub fn total_kernel(model: &MaterialModel, x: f64, p: f64, zeta: f64, theta: f64) -> Result<f64> {
    let weight = coth_half(x, theta)?;
    real_axis_kernel(model, ConductivityPart::Full, x, p, zeta, weight)
}

/// Zero-point integrand on the real axis (occupation 1).
pub fn quantum_kernel_real(model: &MaterialModel, x: f64, p: f64, zeta: f64) -> Result<f64> {
    real_axis_kernel(model, ConductivityPart::Full, x, p, zeta, 1.0)
}

/// Zero-point integrand after rotating the frequency contour to ω = iξ.
///
/// Equals −x̂ σ̂(ix̂) p e^{−2κ̂ζ/Ω̂} (r_p + r_s), with κ̂ = √(ε x̂² + p²).
/// The sign makes the force −1/(2π) ∬ kernel, the same prefactor as on the real axis.
pub fn quantum_kernel_imag(model: &MaterialModel, xi: f64, p: f64, zeta: f64) -> Result<f64> {
    check_depth(zeta)?;
    let point = SpectralPoint::imaginary(xi, p)?;
    if p == 0.0 {
        return Ok(0.0);
    }
    let sigma = model.conductivity_imaginary_axis(xi)?;
    let eps = model.permittivity(xi, Axis::Imaginary)?;
    let (q, v) = normal_wavevectors(eps, &point);
    let damping = (-2.0 * q.im * zeta / model.omega_p_tau).exp();
    if damping == 0.0 {
        return Ok(0.0);
    }
    let sum = fresnel_sum(eps, q, v)?.re;
    Ok(-xi * sigma * p * damping * sum)
}

/// Integrand of the ideal-conductor force, e^{−2Q̂ζ} Q̂ κ̂/(κ̂ + Q̂) with κ̂ = √(1 + Q̂²).
///
/// Wavevector and depth are both scaled by ƛ_p here.
pub fn ideal_kernel(qhat: f64, zeta: f64) -> f64 {
    let kappa = (1.0 + qhat * qhat).sqrt();
    (-2.0 * qhat * zeta).exp() * qhat * kappa / (kappa + qhat)
}

/// Wavevector-integrated thermal kernel: the frequency spectrum of the force at depth ζ.
pub fn spectral_density(
    model: &MaterialModel,
    x: f64,
    zeta: f64,
    theta: f64,
    quad: &QuadratureSpec,
) -> Result<IntegrationResult> {
    q_integral(
        model,
        Weighting::Thermal {
            theta,
            part: ConductivityPart::Full,
        },
        x,
        zeta,
        quad,
    )
}
