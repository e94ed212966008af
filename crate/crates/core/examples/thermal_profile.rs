//! Drude thermal force against depth at three temperatures, and where the
//! normalised curves cross.

use rectified_lorentz::force::{crossing_depth, force_profile, prefactor_c};
use rectified_lorentz::grid::Grid;
use rectified_lorentz::medium::MaterialModel;
use rectified_lorentz::quadrature::QuadratureSpec;

fn main() -> rectified_lorentz::Result<()> {
    let model = MaterialModel::drude(210.0)?;
    let spec = QuadratureSpec::default();
    let thetas = [0.6, 1.25, 2.5];
    let zetas = Grid::log(0.2, 8.0, 12).points()?;
    let rows = force_profile(&model, &zetas, &thetas, false, &spec)?;

    print!("{:>8}", "zeta");
    for t in thetas {
        print!(" {:>12}", format!("theta={t}"));
    }
    println!();
    for (i, zeta) in zetas.iter().enumerate() {
        print!("{zeta:>8.3}");
        for j in 0..thetas.len() {
            print!(" {:>12.5e}", rows[j * zetas.len() + i].f_norm);
        }
        println!();
    }
    for t in thetas {
        println!("c(theta={t}) normalised: {:.5}", prefactor_c(t, 210.0)?.normalized);
    }
    match crossing_depth(&model, (0.6, 2.5), &spec) {
        Ok(z) => println!("profiles at theta 0.6 and 2.5 cross at zeta = {z:.3}"),
        Err(e) => println!("no crossing: {e}"),
    }
    Ok(())
}
