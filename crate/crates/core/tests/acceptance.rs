//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rectified_lorentz::force::{
    crossing_depth, force_ideal, force_quantum, force_quantum_real_axis, force_thermal, prefactor_c,
    prefactor_c_numeric, surface_charge, EstimateInputs, SurfaceCharge,
};
use rectified_lorentz::grid::Grid;
use rectified_lorentz::kernels::{thermal_kernel, ConductivityPart};
use rectified_lorentz::medium::MaterialModel;
use rectified_lorentz::quadrature::QuadratureSpec;
use rectified_lorentz::selftest::{run_selftest, SelftestOptions};
use rectified_lorentz::units::{HBAR, K_B};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn drude() -> MaterialModel {
    MaterialModel::drude(210.0).unwrap()
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn within_budget(v: Verdict, elapsed: Duration, budget: Duration) -> Verdict {
    let ok = elapsed <= budget;
    verdict(
        v.passed && ok,
        format!("{}; runtime {:.2?} (limit {:?})", v.detail, elapsed, budget),
    )
}

fn timed(budget: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = f();
    within_budget(v, start.elapsed(), budget)
}

fn ideal_asymptotes() -> Verdict {
    timed(Duration::from_secs(1), || {
        let near = force_ideal(0.01, 1.0, 210.0, &spec()).unwrap().f_norm;
        let far = force_ideal(50.0, 1.0, 210.0, &spec()).unwrap().f_norm;
        let (e1, e2) = (rel(near, 0.125), rel(far, 0.25));
        verdict(
            e1 <= 0.01 && e2 <= 0.01,
            format!("f_norm(0.01) = {near:.6} ({:.2}% off 1/8), f_norm(50) = {far:.6} ({:.2}% off 1/4)", e1 * 100.0, e2 * 100.0),
        )
    })
}

fn prefactor_routes() -> Verdict {
    timed(Duration::from_secs(10), || {
        let worst = Grid::log(0.03, 30.0, 30)
            .points()
            .unwrap()
            .into_iter()
            .map(|t| {
                let c = prefactor_c(t, 210.0).unwrap().normalized;
                let (n, _) = prefactor_c_numeric(t, 210.0, &spec()).unwrap();
                rel(c, n.normalized)
            })
            .fold(0.0, f64::max);
        let hot = prefactor_c(30.0, 210.0).unwrap().normalized;
        let cold = prefactor_c(0.03, 210.0).unwrap().normalized;
        let (e_hot, e_cold) = (rel(hot, 0.125), rel(cold, PI * 0.03 / 24.0));
        verdict(
            worst < 1e-6 && e_hot <= 0.005 && e_cold <= 0.005,
            format!(
                "max closed/numeric diff {worst:.1e}; c(30) = {hot:.5} ({:.2}% off 1/8); c(0.03) = {cold:.6} ({:.2}% off pi*theta/24)",
                e_hot * 100.0,
                e_cold * 100.0
            ),
        )
    })
}

fn short_distance() -> Verdict {
    timed(Duration::from_secs(30), || {
        let f = force_thermal(&drude(), 0.2, 1.25, &spec()).unwrap();
        let c = prefactor_c(1.25, 210.0).unwrap().normalized;
        let e = rel(f.f_norm, c);
        verdict(
            f.converged && e < 0.05,
            format!("f_norm(0.2, 1.25) = {:.6}, c = {c:.6}, diff {:.2}%", f.f_norm, e * 100.0),
        )
    })
}

fn crossing() -> Verdict {
    timed(Duration::from_secs(120), || match crossing_depth(&drude(), (0.6, 2.5), &spec()) {
        Ok(z) => verdict((3.0..=4.0).contains(&z), format!("crossing at zeta* = {z:.3}, expected [3, 4]")),
        Err(e) => verdict(false, format!("no crossing: {e}")),
    })
}

fn linear_in_temperature() -> Verdict {
    let per_theta: Vec<f64> = [0.6, 1.25, 2.5]
        .iter()
        .map(|&t| force_thermal(&drude(), 8.0, t, &spec()).unwrap().reduced / t)
        .collect();
    let lo = per_theta.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = per_theta.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let spread = (hi - lo).abs() / lo.abs().min(hi.abs());
    verdict(
        spread <= 0.01,
        format!(
            "f/theta at zeta = 8: {}, spread {:.1}%",
            per_theta.iter().map(|v| format!("{v:.4e}")).collect::<Vec<_>>().join(", "),
            spread * 100.0
        ),
    )
}

fn plasma_suppression() -> Verdict {
    let p = force_thermal(&MaterialModel::plasma(210.0).unwrap(), 1.5, 1.25, &spec()).unwrap().reduced;
    let d = force_thermal(&drude(), 1.5, 1.25, &spec()).unwrap().reduced;
    let ratio = p.abs() / d.abs();
    verdict(ratio < 1e-3, format!("|plasma| / |drude| = {ratio:.2e}"))
}

fn quantum_dual_axis() -> Verdict {
    let m = drude();
    let mut worst: f64 = 0.0;
    for zeta in [0.5, 1.0, 2.0] {
        let a = force_quantum(&m, zeta, &spec()).unwrap().reduced;
        let b = force_quantum_real_axis(&m, zeta, &spec()).unwrap().reduced;
        worst = worst.max(rel(a, b));
    }
    // Least-squares slope of ln|f| against ln ζ on a log grid.
    let zetas = Grid::log(0.5, 5.0, 10).points().unwrap();
    let pts: Vec<(f64, f64)> = zetas
        .iter()
        .map(|&z| (z.ln(), force_quantum(&m, z, &spec()).unwrap().reduced.abs().ln()))
        .collect();
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), p| (a + (p.0 - mx) * (p.1 - my), b + (p.0 - mx).powi(2)));
    let slope = num / den;
    verdict(
        worst < 0.005 && (-3.6..=-2.4).contains(&slope),
        format!("rotated vs real axis max diff {:.3}%; log-log slope {slope:.3}, expected [-3.6, -2.4]", worst * 100.0),
    )
}

fn algebraic_suites() -> Verdict {
    let checks = run_selftest(&SelftestOptions::default());
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    verdict(
        failed.is_empty(),
        format!("{} checks over 1000 random lossy points; failed: {failed:?}", checks.len()),
    )
}

fn estimate_constants() -> Verdict {
    let gold = EstimateInputs::gold();
    let three_sig = |v: f64, target: f64| (v - target).abs() <= 0.5 * 10f64.powi(target.log10().floor() as i32 - 2);
    let a = gold.coupling_fraction();
    let b = gold.momentum_fraction();
    let theta = 300.0 * K_B * gold.tau / HBAR;
    let q = surface_charge(&gold, theta, gold.debye_length() / gold.lambda_p()).unwrap();
    let per_um2 = SurfaceCharge::per_square_micron(q.direct).abs();
    verdict(
        three_sig(a, 0.0917) && three_sig(b, 0.00380) && (0.1..10.0).contains(&per_um2),
        format!("e^2/(eps0 hbar c) = {a:.5}, (hbar/lambda_p)/(m v_F) = {b:.6}, |dQ/A| = {per_um2:.3} e/um^2 at 300 K"),
    )
}

fn sign_structure() -> Verdict {
    let m = drude();
    let xs = Grid::log(0.01, 10.0, 11).points().unwrap();
    let (mut below, mut flipped) = (0, 0);
    for &x in &xs {
        for &p in &Grid::log(1.0, 1000.0, 11).points().unwrap() {
            if p <= x {
                continue;
            }
            below += 1;
            let full = thermal_kernel(&m, ConductivityPart::Full, x, p, 1.5, 1.25).unwrap();
            let imag = thermal_kernel(&m, ConductivityPart::ImagOnly, x, p, 1.5, 1.25).unwrap();
            if full * imag < 0.0 {
                flipped += 1;
            }
        }
    }
    verdict(flipped > 0, format!("{flipped} of {below} sampled points below the light cone change sign"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("ideal-conductor asymptotes", ideal_asymptotes),
        ("prefactor dual route and limits", prefactor_routes),
        ("short-distance consistency", short_distance),
        ("curve crossing depth", crossing),
        ("linear temperature scaling at depth", linear_in_temperature),
        ("plasma suppression", plasma_suppression),
        ("quantum dual axis and scaling", quantum_dual_axis),
        ("algebraic suites", algebraic_suites),
        ("estimate constants", estimate_constants),
        ("sign structure", sign_structure),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.passed {
            failures += 1;
        }
        println!("{} criterion {}: {name}: {}", if v.passed { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
