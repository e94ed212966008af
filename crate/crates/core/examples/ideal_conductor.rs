//! Normalised ideal-conductor force across depth, between its two power laws.

use rectified_lorentz::force::force_ideal;
use rectified_lorentz::grid::Grid;
use rectified_lorentz::quadrature::QuadratureSpec;

fn main() -> rectified_lorentz::Result<()> {
    let spec = QuadratureSpec::default();
    println!("{:>10} {:>12}", "zeta", "f_norm");
    for zeta in Grid::log(0.01, 100.0, 13).points()? {
        let f = force_ideal(zeta, 1.0, 210.0, &spec)?;
        println!("{zeta:>10.4} {:>12.6}", f.f_norm);
    }
    println!("short-distance limit 1/8, long-distance limit 1/4");
    Ok(())
}
