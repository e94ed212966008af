//! Short-distance amplitude c(T) from the digamma closed form and by quadrature.

use rectified_lorentz::force::{prefactor_c, prefactor_c_numeric};
use rectified_lorentz::grid::Grid;
use rectified_lorentz::quadrature::QuadratureSpec;

fn main() -> rectified_lorentz::Result<()> {
    let spec = QuadratureSpec::default();
    println!("{:>10} {:>14} {:>14} {:>10}", "theta", "closed", "numeric", "rel diff");
    for theta in Grid::log(0.03, 30.0, 10).points()? {
        let c = prefactor_c(theta, 210.0)?.normalized;
        let (n, _) = prefactor_c_numeric(theta, 210.0, &spec)?;
        let diff = (c - n.normalized).abs() / n.normalized;
        println!("{theta:>10.4} {c:>14.10} {:>14.10} {diff:>10.1e}", n.normalized);
    }
    println!("limits: pi*theta/24 when cold, 1/8 when hot");
    Ok(())
}
