//! Conductor response models and thermal occupation factors.
//!
//! Conductivities are reduced as σ̂ = στ/ε₀, so the Drude form reads
//! Ω̂²/(1 − ix) with Ω̂ = Ω_pτ and x = ωτ.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, require_positive, Error, Result};

/// Plasma frequency Ω_pτ typical for gold.
pub const DEFAULT_OMEGA_P_TAU: f64 = 210.0;

// Below this value of x/θ the Bose factor uses its Laurent series.
const BOSE_SERIES_THRESHOLD: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Drude,
    Plasma,
    /// Plasma response plus the singular DC weight πΩ̂²δ(x); its force has a closed form.
    Ideal,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Drude => "drude",
            ModelKind::Plasma => "plasma",
            ModelKind::Ideal => "ideal",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "drude" => Ok(ModelKind::Drude),
            "plasma" => Ok(ModelKind::Plasma),
            "ideal" => Ok(ModelKind::Ideal),
            other => Err(invalid(format!("unknown model '{other}'"))),
        }
    }
}

/// Which frequency axis a reduced frequency lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// x = ωτ
    Real,
    /// x̂ = ξτ with ω = iξ
    Imaginary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialModel {
    pub kind: ModelKind,
    pub omega_p_tau: f64,
}

impl MaterialModel {
    pub fn new(kind: ModelKind, omega_p_tau: f64) -> Result<Self> {
        require_positive("omega_p_tau", omega_p_tau)?;
        Ok(Self { kind, omega_p_tau })
    }

    pub fn drude(omega_p_tau: f64) -> Result<Self> {
        Self::new(ModelKind::Drude, omega_p_tau)
    }

    pub fn plasma(omega_p_tau: f64) -> Result<Self> {
        Self::new(ModelKind::Plasma, omega_p_tau)
    }

    pub fn ideal(omega_p_tau: f64) -> Result<Self> {
        Self::new(ModelKind::Ideal, omega_p_tau)
    }

    fn omega_p_sq(&self) -> f64 {
        self.omega_p_tau * self.omega_p_tau
    }

    /// Reduced conductivity σ̂(x) at a real frequency x > 0.
    ///
    /// The ideal conductor shares the plasma AC response here; its zero
    /// frequency weight only enters through the closed-form force.
    pub fn conductivity(&self, x: f64) -> Result<Complex64> {
        require_positive("frequency", x)?;
        let w2 = self.omega_p_sq();
        Ok(match self.kind {
            ModelKind::Drude => Complex64::new(w2, 0.0) / Complex64::new(1.0, -x),
            ModelKind::Plasma | ModelKind::Ideal => Complex64::new(0.0, w2 / x),
        })
    }

    /// Reduced conductivity at ω = iξ, which is real and positive.
    pub fn conductivity_imaginary_axis(&self, xi: f64) -> Result<f64> {
        require_positive("imaginary frequency", xi)?;
        let w2 = self.omega_p_sq();
        Ok(match self.kind {
            ModelKind::Drude => w2 / (1.0 + xi),
            ModelKind::Plasma | ModelKind::Ideal => w2 / xi,
        })
    }

    /// Relative permittivity ε_r = 1 + iσ̂/x continued to the chosen axis.
    ///
    /// On the imaginary axis this is 1 + σ̂(iξ)/ξ, real and larger than one.
    pub fn permittivity(&self, freq: f64, axis: Axis) -> Result<Complex64> {
        match axis {
            Axis::Real => {
                let sigma = self.conductivity(freq)?;
                Ok(Complex64::new(1.0, 0.0) + Complex64::i() * sigma / freq)
            }
            Axis::Imaginary => {
                let sigma = self.conductivity_imaginary_axis(freq)?;
                Ok(Complex64::new(1.0 + sigma / freq, 0.0))
            }
        }
    }

    /// Reduced current noise spectrum 2x Re σ̂ coth(x/2θ).
    pub fn current_spectrum(&self, x: f64, theta: f64) -> Result<f64> {
        let sigma = self.conductivity(x)?;
        Ok(2.0 * x * sigma.re * coth_half(x, theta)?)
    }
}

/// Bose–Einstein occupation 1/(exp(x/θ) − 1).
///
/// θ = 0 is the quantum limit and returns 0.
pub fn bose(x: f64, theta: f64) -> Result<f64> {
    require_positive("frequency", x)?;
    if !(theta >= 0.0 && theta.is_finite()) {
        return Err(invalid(format!("theta must be non-negative, got {theta}")));
    }
    if theta == 0.0 {
        return Ok(0.0);
    }
    let u = x / theta;
    if u < BOSE_SERIES_THRESHOLD {
        Ok(1.0 / u - 0.5 + u / 12.0)
    } else {
        Ok(1.0 / u.exp_m1())
    }
}

/// coth(x/2θ) = 1 + 2n̄.
pub fn coth_half(x: f64, theta: f64) -> Result<f64> {
    Ok(1.0 + 2.0 * bose(x, theta)?)
}
