//! Zero-point force on the imaginary frequency axis, checked against the
//! regulated real-axis integral.

use rectified_lorentz::force::{force_quantum, force_quantum_real_axis};
use rectified_lorentz::medium::MaterialModel;
use rectified_lorentz::quadrature::QuadratureSpec;

fn main() -> rectified_lorentz::Result<()> {
    let model = MaterialModel::drude(210.0)?;
    let spec = QuadratureSpec::default();
    println!("{:>6} {:>14} {:>14} {:>10}", "zeta", "rotated", "real axis", "rel diff");
    for zeta in [0.5, 1.0, 2.0] {
        let rotated = force_quantum(&model, zeta, &spec)?.reduced;
        let real = force_quantum_real_axis(&model, zeta, &spec)?.reduced;
        println!("{zeta:>6} {rotated:>14.6e} {real:>14.6e} {:>10.1e}", (rotated - real).abs() / real.abs());
    }
    let (a, b) = (0.5f64, 5.0f64);
    let fa = force_quantum(&model, a, &spec)?.reduced;
    let fb = force_quantum(&model, b, &spec)?.reduced;
    println!("secant slope d ln f / d ln zeta over [{a}, {b}]: {:.3}", (fb / fa).ln() / (b / a).ln());
    Ok(())
}
