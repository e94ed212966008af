//! A lossless plasma barely produces a thermal force compared with a Drude metal.

use rectified_lorentz::force::{force_thermal, force_total};
use rectified_lorentz::medium::MaterialModel;
use rectified_lorentz::quadrature::QuadratureSpec;

fn main() -> rectified_lorentz::Result<()> {
    let spec = QuadratureSpec::default();
    let (zeta, theta) = (1.5, 1.25);
    for model in [MaterialModel::drude(210.0)?, MaterialModel::plasma(210.0)?] {
        let f = force_thermal(&model, zeta, theta, &spec)?;
        println!("{:>7}: thermal {:>13.5e}  f_norm {:>11.4e}", model.kind.to_string(), f.reduced, f.f_norm);
    }
    let b = force_total(&MaterialModel::drude(210.0)?, zeta, theta, &spec)?;
    println!("drude zero-point {:.5e}, total {:.5e}", b.quantum.reduced, b.total);
    Ok(())
}
