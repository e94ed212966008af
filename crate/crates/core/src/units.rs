//! Reduced unit system and its SI anchors.
//!
//! All kernels work with dimensionless combinations: frequency x = ωτ,
//! in-plane wavevector p = cQτ, depth ζ = z/ƛ_p with ƛ_p = c/Ω_p, and
//! temperature θ = k_B T τ/ħ. Force densities are measured in units of
//! ħ/(c⁴τ⁵). SI values only appear where results leave the library.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, require_positive, Result};

/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant (J/K).
pub const K_B: f64 = 1.380_649e-23;
/// Speed of light (m/s).
pub const C: f64 = 299_792_458.0;
/// Elementary charge (C).
pub const E_CHARGE: f64 = 1.602_176_634e-19;
/// Vacuum permittivity (F/m).
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
/// Electron mass (kg).
pub const M_E: f64 = 9.109_383_701_5e-31;

/// Temperature in reduced form, optionally tied to a physical scattering time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedUnits {
    pub theta: f64,
    pub tau_seconds: Option<f64>,
}

impl ReducedUnits {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta >= 0.0 && theta.is_finite()) {
            return Err(invalid(format!("theta must be non-negative, got {theta}")));
        }
        Ok(Self { theta, tau_seconds: None })
    }

    pub fn with_tau(mut self, tau_seconds: f64) -> Result<Self> {
        require_positive("tau", tau_seconds)?;
        self.tau_seconds = Some(tau_seconds);
        Ok(self)
    }

    /// Temperature in kelvin, if an SI anchor is set.
    pub fn kelvin(&self) -> Option<f64> {
        self.tau_seconds.map(|tau| self.theta * HBAR / (K_B * tau))
    }
}

/// Conversion factors between reduced and SI quantities for one material.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SiScales {
    pub tau: f64,
    pub omega_p: f64,
    /// ƛ_p = c/Ω_p in metres.
    pub lambda_p: f64,
    /// ħ/(k_B τ) in kelvin: the temperature at θ = 1.
    pub temperature: f64,
    /// ħ/(c⁴τ⁵) in N/m³: the unit of reduced force density.
    pub force_density: f64,
}

impl SiScales {
    pub fn new(tau_seconds: f64, omega_p_tau: f64) -> Result<Self> {
        require_positive("tau", tau_seconds)?;
        require_positive("omega_p_tau", omega_p_tau)?;
        let omega_p = omega_p_tau / tau_seconds;
        Ok(Self {
            tau: tau_seconds,
            omega_p,
            lambda_p: C / omega_p,
            temperature: HBAR / (K_B * tau_seconds),
            force_density: HBAR / (C.powi(4) * tau_seconds.powi(5)),
        })
    }

    /// Gold-like anchors: ħ/τ ≈ 400 K with Ω_pτ = 210.
    pub fn gold_like() -> Self {
        Self::new(HBAR / (K_B * 400.0), 210.0).expect("constant anchors are valid")
    }

    pub fn theta_from_kelvin(&self, kelvin: f64) -> f64 {
        kelvin / self.temperature
    }

    pub fn kelvin_from_theta(&self, theta: f64) -> f64 {
        theta * self.temperature
    }

    pub fn depth_metres(&self, zeta: f64) -> f64 {
        zeta * self.lambda_p
    }

    pub fn force_si(&self, reduced: f64) -> f64 {
        reduced * self.force_density
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gold_like_scales() {
        let s = SiScales::gold_like();
        assert!((s.temperature - 400.0).abs() < 1e-9);
        // τ ≈ 1.909e-14 s, so ƛ_p = cτ/210 ≈ 27 nm; the same order as the ~20 nm of gold.
        assert!((s.tau - 1.909e-14).abs() < 1e-17);
        assert!(s.lambda_p > 15e-9 && s.lambda_p < 30e-9, "{}", s.lambda_p);
        assert!((s.theta_from_kelvin(500.0) - 1.25).abs() < 1e-12);
    }

    #[test]
    fn hand_computed_lambda_p() {
        // Ω_p = 1.3674e16 rad/s (ħΩ_p = 9.0 eV) gives ƛ_p = 21.92 nm.
        let tau = 210.0 / 1.3674e16;
        let s = SiScales::new(tau, 210.0).unwrap();
        assert!((s.lambda_p - 21.924e-9).abs() < 0.01e-9, "{}", s.lambda_p);
    }

    #[test]
    fn force_unit_matches_normalisation() {
        // −f z² ƛ_p² / (k_B T) computed in SI equals −f_red ζ²/(Ω̂⁴ θ).
        let s = SiScales::gold_like();
        let (f_red, zeta, theta) = (-3.0e8, 0.7, 1.25);
        let f = s.force_si(f_red);
        let z = s.depth_metres(zeta);
        let t = s.kelvin_from_theta(theta);
        let si = -f * z * z * s.lambda_p * s.lambda_p / (K_B * t);
        let reduced = -f_red * zeta * zeta / (210f64.powi(4) * theta);
        assert!(((si - reduced) / reduced).abs() < 1e-12);
    }

    #[test]
    fn reduced_units_validation() {
        assert!(ReducedUnits::new(-1.0).is_err());
        let u = ReducedUnits::new(1.0).unwrap().with_tau(1e-14).unwrap();
        assert!((u.kelvin().unwrap() - HBAR / (K_B * 1e-14)).abs() < 1e-9);
    }
}
