//! Tabulated integrands and frequency spectra, with the guide curves that
//! locate their features.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Result};
use crate::kernels::{quantum_kernel_imag, spectral_density, thermal_kernel, ConductivityPart};
use crate::medium::MaterialModel;
use crate::optics::diffusion_frequency;
use crate::quadrature::QuadratureSpec;

/// Guide curves at one in-plane wavevector p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Guides {
    /// Light cone x = p.
    pub light_cone_x: f64,
    /// Magnetic diffusion x = p²/Ω̂².
    pub diffusion_x: f64,
    /// Wavevector Q = 1/z, i.e. p = Ω̂/ζ.
    pub depth_p: f64,
}

impl Guides {
    pub fn at(model: &MaterialModel, p: f64, zeta: f64) -> Self {
        Self {
            light_cone_x: p,
            diffusion_x: diffusion_frequency(p, model.omega_p_tau),
            depth_p: model.omega_p_tau / zeta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapCell {
    pub x: f64,
    pub p: f64,
    pub value: f64,
    pub guides: Guides,
}

fn cells<F>(xs: &[f64], ps: &[f64], f: F) -> Result<Vec<MapCell>>
where
    F: Fn(f64, f64) -> Result<MapCell> + Sync,
{
    let pairs: Vec<(f64, f64)> = xs.iter().flat_map(|&x| ps.iter().map(move |&p| (x, p))).collect();
    pairs.par_iter().map(|&(x, p)| f(x, p)).collect()
}

/// Rotated zero-point integrand on an (x̂, p) grid, multiplied by ζ³.
pub fn quantum_map(model: &MaterialModel, xs: &[f64], ps: &[f64], zeta: f64) -> Result<Vec<MapCell>> {
    require_positive("depth zeta", zeta)?;
    cells(xs, ps, |x, p| {
        Ok(MapCell {
            x,
            p,
            value: quantum_kernel_imag(model, x, p, zeta)? * zeta.powi(3),
            guides: Guides::at(model, p, zeta),
        })
    })
}

/// Thermal integrand on an (x, p) grid.
pub fn thermal_map(
    model: &MaterialModel,
    part: ConductivityPart,
    xs: &[f64],
    ps: &[f64],
    zeta: f64,
    theta: f64,
) -> Result<Vec<MapCell>> {
    require_positive("depth zeta", zeta)?;
    require_positive("theta", theta)?;
    cells(xs, ps, |x, p| {
        Ok(MapCell {
            x,
            p,
            value: thermal_kernel(model, part, x, p, zeta, theta)?,
            guides: Guides::at(model, p, zeta),
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub x: f64,
    pub zeta: f64,
    /// Force per unit reduced frequency, multiplied by ζ².
    pub value: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

/// Thermal force spectrum f(x, ζ)ζ²; its integral over x is the force times ζ².
pub fn thermal_spectrum(
    model: &MaterialModel,
    xs: &[f64],
    zetas: &[f64],
    theta: f64,
    spec: &QuadratureSpec,
) -> Result<Vec<SpectrumPoint>> {
    require_positive("theta", theta)?;
    let pairs: Vec<(f64, f64)> = xs.iter().flat_map(|&x| zetas.iter().map(move |&z| (x, z))).collect();
    pairs
        .par_iter()
        .map(|&(x, zeta)| {
            let r = spectral_density(model, x, zeta, theta, spec)?;
            let scale = -zeta * zeta / (2.0 * PI);
            Ok(SpectrumPoint {
                x,
                zeta,
                value: r.value * scale,
                error_estimate: r.error_estimate * scale.abs(),
                converged: r.converged,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::force::force_thermal;
    use crate::quadrature::{integrate_with_breaks, QuadratureSpec};

    #[test]
    fn guides() {
        let m = MaterialModel::drude(210.0).unwrap();
        let g = Guides::at(&m, 420.0, 1.5);
        assert_eq!(g.light_cone_x, 420.0);
        assert!((g.diffusion_x - 4.0).abs() < 1e-12);
        assert!((g.depth_p - 140.0).abs() < 1e-12);
    }

    #[test]
    fn maps_are_row_major_in_x() {
        let m = MaterialModel::drude(210.0).unwrap();
        let cells = quantum_map(&m, &[1.0, 2.0], &[10.0, 20.0, 30.0], 0.3).unwrap();
        let keys: Vec<_> = cells.iter().map(|c| (c.x, c.p)).collect();
        assert_eq!(keys[1], (1.0, 20.0));
        assert_eq!(keys[3], (2.0, 10.0));
        let direct = quantum_kernel_imag(&m, 2.0, 30.0, 0.3).unwrap() * 0.027;
        assert!((cells[5].value - direct).abs() <= 1e-12 * direct.abs());
    }

    #[test]
    fn spectrum_integrates_to_force() {
        let m = MaterialModel::drude(210.0).unwrap();
        let spec = QuadratureSpec::default().with_rel_tol(1e-7);
        let (zeta, theta) = (1.5, 1.25);
        let f = |x: f64| {
            if x == 0.0 {
                return 0.0;
            }
            thermal_spectrum(&m, &[x], &[zeta], theta, &spec).unwrap()[0].value
        };
        let upper = theta * 1e12f64.ln();
        let r = integrate_with_breaks(f, &[0.0, 1.0, theta, upper], &spec).unwrap();
        let force = force_thermal(&m, zeta, theta, &spec).unwrap();
        let target = force.reduced * zeta * zeta;
        assert!((r.value - target).abs() < 1e-5 * target.abs(), "{} vs {}", r.value, target);
    }
}
