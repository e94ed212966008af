//! Oracle suites runnable from the command line.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::force::{prefactor_c, prefactor_c_numeric};
use crate::medium::{Axis, MaterialModel};
use crate::optics::{
    angular_average_vector, fresnel_inner, fresnel_sum, normal_wavevectors_with, BranchRule, SpectralPoint,
};
use crate::quadrature::{integrate_adaptive, integrate_semi_infinite, QuadratureSpec};
use crate::specfun::{digamma, EULER_GAMMA};
use crate::medium::bose;

#[derive(Debug, Clone, Copy)]
pub struct SelftestOptions {
    pub branch: BranchRule,
    pub quadrature: QuadratureSpec,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        Self {
            branch: BranchRule::Decaying,
            quadrature: QuadratureSpec::default().with_rel_tol(1e-12),
            samples: 1000,
            seed: 20_240_601,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Worst residual found, relative unless the name says otherwise.
    pub worst: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: &'static str, worst: f64, tolerance: f64) -> Self {
        Self { name, passed: worst <= tolerance, worst, tolerance }
    }
}

// A random lossy Drude point: x in [1e-3, 1e3], p/x in [1e-3, 10^1.5], Ω̂ in [0.1, 2100].
fn lossy_point(rng: &mut StdRng) -> (MaterialModel, f64, f64) {
    let x = 10f64.powf(rng.gen_range(-3.0..3.0));
    let p = x * 10f64.powf(rng.gen_range(-3.0..1.5));
    let w = 10f64.powf(rng.gen_range(-1.0..3.32));
    (MaterialModel::drude(w).expect("positive"), x, p)
}

fn algebraic_identities(opts: &SelftestOptions) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let (mut sum_worst, mut avg_worst) = (0.0f64, 0.0f64);
    for _ in 0..opts.samples {
        let (m, x, p) = lossy_point(&mut rng);
        for axis in [Axis::Real, Axis::Imaginary] {
            let pt = SpectralPoint::new(x, p, axis).expect("positive");
            let eps = m.permittivity(x, axis).expect("positive");
            let (q, v) = normal_wavevectors_with(eps, &pt, opts.branch);
            let (Ok((rp, rs)), Ok(s), Ok(avg)) =
                (fresnel_inner(eps, q, v), fresnel_sum(eps, q, v), angular_average_vector(eps, q, v, &pt))
            else {
                sum_worst = f64::INFINITY;
                continue;
            };
            let scale = 1.0 + rp.norm() + rs.norm();
            sum_worst = sum_worst.max((s - (rp + rs)).norm() / scale);
            let target = q * (rp + rs);
            avg_worst = avg_worst.max((avg - target).norm() / (1.0 + target.norm()));
        }
    }
    vec![
        Check::new("fresnel sum identity", sum_worst, 1e-11),
        Check::new("angular average identity", avg_worst, 1e-11),
    ]
}

// Fields inside the conductor must decay: Im q ≥ 0 everywhere, and q → (1 + i)/δ̂
// with δ̂² = 2/(Ω̂² x) in the diffusive regime.
fn branch_choice(opts: &SelftestOptions) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(opts.seed ^ 0x5eed);
    let mut growing = 0usize;
    for _ in 0..opts.samples {
        let (m, x, p) = lossy_point(&mut rng);
        let pt = SpectralPoint::real(x, p).expect("positive");
        let (q, _) = normal_wavevectors_with(m.permittivity(x, Axis::Real).expect("positive"), &pt, opts.branch);
        if q.im < 0.0 || q.re < 0.0 {
            growing += 1;
        }
    }
    let m = MaterialModel::drude(210.0).expect("positive");
    let x = 1e-4;
    let pt = SpectralPoint::real(x, 1e-6).expect("positive");
    let (q, _) = normal_wavevectors_with(m.permittivity(x, Axis::Real).expect("positive"), &pt, opts.branch);
    let skin = (2.0 / (210.0 * 210.0 * x)).sqrt();
    let diffusive = Complex64::new(1.0, 1.0) / skin;
    vec![
        Check::new("decaying branch (count of growing samples)", growing as f64, 0.0),
        Check::new("diffusive wavevector", (q - diffusive).norm() / diffusive.norm(), 1e-3),
    ]
}

fn quadrature_oracles(opts: &SelftestOptions) -> Vec<Check> {
    let spec = &opts.quadrature;
    let rel = |value: f64, exact: f64| ((value - exact) / exact).abs();
    let poly = integrate_adaptive(|x| x * x, 0.0, 1.0, spec).map_or(f64::INFINITY, |r| rel(r.value, 1.0 / 3.0));
    let z = 0.7;
    let expo = integrate_semi_infinite(|q| q * (-2.0 * q * z).exp(), 0.0, spec, 1.0 / (2.0 * z))
        .map_or(f64::INFINITY, |r| rel(r.value, 1.0 / (4.0 * z * z)));
    let theta = 1.25;
    let moment = integrate_semi_infinite(|x| if x == 0.0 { theta } else { x * bose(x, theta).unwrap_or(0.0) }, 0.0, spec, theta)
        .map_or(f64::INFINITY, |r| rel(r.value, PI * PI * theta * theta / 6.0));
    vec![
        Check::new("quadrature: polynomial", poly, 1e-10),
        Check::new("quadrature: exponential moment", expo, 1e-10),
        Check::new("quadrature: Bose moment", moment, 1e-10),
    ]
}

fn digamma_values() -> Check {
    let known = [
        (1.0, -EULER_GAMMA),
        (0.5, -EULER_GAMMA - 2.0 * 2f64.ln()),
        (2.0, 1.0 - EULER_GAMMA),
        (0.25, -EULER_GAMMA - PI / 2.0 - 3.0 * 2f64.ln()),
    ];
    let worst = known
        .iter()
        .map(|&(u, exact)| digamma(u).map_or(f64::INFINITY, |v| (v - exact).abs()))
        .fold(0.0, f64::max);
    Check::new("digamma known values (absolute)", worst, 1e-10)
}

fn prefactor_routes(opts: &SelftestOptions) -> Check {
    let n = 30;
    let worst = (0..n)
        .map(|i| {
            let theta = 0.03 * 1000f64.powf(i as f64 / (n - 1) as f64);
            match (prefactor_c(theta, 210.0), prefactor_c_numeric(theta, 210.0, &opts.quadrature)) {
                (Ok(c), Ok((num, _))) => ((c.normalized - num.normalized) / num.normalized).abs(),
                _ => f64::INFINITY,
            }
        })
        .fold(0.0, f64::max);
    Check::new("prefactor closed form vs quadrature", worst, 1e-6)
}

/// Runs every suite; the test passes when all checks pass.
pub fn run_selftest(opts: &SelftestOptions) -> Vec<Check> {
    let mut checks = algebraic_identities(opts);
    checks.extend(branch_choice(opts));
    checks.extend(quadrature_oracles(opts));
    checks.push(digamma_values());
    checks.push(prefactor_routes(opts));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_run_passes() {
        let checks = run_selftest(&SelftestOptions::default());
        for c in &checks {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn flipped_branch_is_caught() {
        let opts = SelftestOptions { branch: BranchRule::Flipped, samples: 50, ..Default::default() };
        let failed: Vec<_> = run_selftest(&opts).into_iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert!(failed.contains(&"diffusive wavevector"), "{failed:?}");
    }
}
