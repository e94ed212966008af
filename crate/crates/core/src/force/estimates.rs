//! Order-of-magnitude consequences for a real metal: the work-function shift
//! and the screening charge that balances the thermal force.

use serde::{Deserialize, Serialize};

use super::prefactor_c;
use crate::error::{require_positive, Result};
use crate::units::{C, EPSILON_0, E_CHARGE, HBAR, K_B, M_E};

/// Rounded short-distance amplitude used by the hand estimate.
pub const ROUNDED_AMPLITUDE: f64 = 0.06;

/// Electron-gas parameters in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateInputs {
    /// Carrier density n₀ in 1/m³.
    pub n0: f64,
    /// Fermi velocity in m/s.
    pub v_f: f64,
    /// Effective mass in kg.
    pub mass: f64,
    /// Scattering time τ in s.
    pub tau: f64,
    /// Plasma frequency Ω_p in rad/s.
    pub omega_p: f64,
}

impl EstimateInputs {
    /// Gold: ħΩ_p = 9.0 eV, v_F = 1.39e6 m/s, free-electron mass, ħ/τ = 400 K.
    /// The density follows from Ω_p² = n₀e²/(ε₀m).
    pub fn gold() -> Self {
        let omega_p = 9.0 * E_CHARGE / HBAR;
        Self {
            n0: EPSILON_0 * M_E * omega_p * omega_p / (E_CHARGE * E_CHARGE),
            v_f: 1.39e6,
            mass: M_E,
            tau: HBAR / (K_B * 400.0),
            omega_p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("n0", self.n0)?;
        require_positive("v_F", self.v_f)?;
        require_positive("mass", self.mass)?;
        require_positive("tau", self.tau)?;
        require_positive("omega_p", self.omega_p)
    }

    /// ƛ_p = c/Ω_p.
    pub fn lambda_p(&self) -> f64 {
        C / self.omega_p
    }

    /// Screening length ℓ_D = v_F/Ω_p.
    pub fn debye_length(&self) -> f64 {
        self.v_f / self.omega_p
    }

    pub fn omega_p_tau(&self) -> f64 {
        self.omega_p * self.tau
    }

    pub fn kelvin(&self, theta: f64) -> f64 {
        theta * HBAR / (K_B * self.tau)
    }

    /// Amplitude c(T) in N/m, with f ≈ −c/z² near the surface.
    fn amplitude(&self, theta: f64) -> Result<f64> {
        let c = prefactor_c(theta, self.omega_p_tau())?;
        let lp = self.lambda_p();
        Ok(c.normalized * K_B * self.kelvin(theta) / (lp * lp))
    }

    /// e²/(ε₀ħc) = 4πα.
    pub fn coupling_fraction(&self) -> f64 {
        E_CHARGE * E_CHARGE / (EPSILON_0 * HBAR * C)
    }

    /// (ħ/ƛ_p)/(m v_F): plasmon momentum over Fermi momentum.
    pub fn momentum_fraction(&self) -> f64 {
        HBAR / self.lambda_p() / (self.mass * self.v_f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorkFunctionShift {
    pub kelvin: f64,
    /// −c(T)/(n₀ ℓ_D), in J.
    pub direct_joules: f64,
    /// −0.06 k_BT (e²/ε₀ħc)(ħ/ƛ_p)/(m v_F), in J.
    pub factored_joules: f64,
    pub coupling_fraction: f64,
    pub momentum_fraction: f64,
}

impl WorkFunctionShift {
    pub fn direct_ev(&self) -> f64 {
        self.direct_joules / E_CHARGE
    }

    pub fn factored_ev(&self) -> f64 {
        self.factored_joules / E_CHARGE
    }
}

/// Work done by the thermal force on an electron pulled out from the screening depth.
pub fn work_function_shift(inputs: &EstimateInputs, theta: f64) -> Result<WorkFunctionShift> {
    inputs.validate()?;
    let c = inputs.amplitude(theta)?;
    let kelvin = inputs.kelvin(theta);
    let coupling = inputs.coupling_fraction();
    let momentum = inputs.momentum_fraction();
    Ok(WorkFunctionShift {
        kelvin,
        direct_joules: -c / (inputs.n0 * inputs.debye_length()),
        factored_joules: -ROUNDED_AMPLITUDE * K_B * kelvin * coupling * momentum,
        coupling_fraction: coupling,
        momentum_fraction: momentum,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCharge {
    pub kelvin: f64,
    /// (ε₀/(e n₀)) f at the cutoff depth, in C/m².
    pub direct: f64,
    /// −0.06 (e/ƛ_p²)(k_BT/(m v_F²)), in C/m².
    pub factored: f64,
}

impl SurfaceCharge {
    /// Elementary charges per square micron.
    pub fn per_square_micron(value: f64) -> f64 {
        value / E_CHARGE * 1e-12
    }
}

/// Charge per area whose field balances the thermal force at depth `zeta_cutoff` ƛ_p.
///
/// The force there is taken from its short-distance form −c/z².
pub fn surface_charge(inputs: &EstimateInputs, theta: f64, zeta_cutoff: f64) -> Result<SurfaceCharge> {
    inputs.validate()?;
    require_positive("zeta_cutoff", zeta_cutoff)?;
    let z = zeta_cutoff * inputs.lambda_p();
    let force = -inputs.amplitude(theta)? / (z * z);
    let kelvin = inputs.kelvin(theta);
    let lp = inputs.lambda_p();
    Ok(SurfaceCharge {
        kelvin,
        direct: EPSILON_0 * force / (E_CHARGE * inputs.n0),
        factored: -ROUNDED_AMPLITUDE * E_CHARGE / (lp * lp) * K_B * kelvin
            / (inputs.mass * inputs.v_f * inputs.v_f),
    })
}
