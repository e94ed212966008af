//! Normal wavevectors and inner reflection amplitudes of a Drude metal.

use rectified_lorentz::medium::MaterialModel;
use rectified_lorentz::optics::{diffusion_frequency, LayerResponse, SpectralPoint};

fn main() -> rectified_lorentz::Result<()> {
    let model = MaterialModel::drude(210.0)?;
    println!("diffusion line at p = 210: x = {}", diffusion_frequency(210.0, 210.0));
    let points = [
        SpectralPoint::real(1.0, 0.5)?,
        SpectralPoint::real(1.0, 210.0)?,
        SpectralPoint::real(300.0, 100.0)?,
        SpectralPoint::imaginary(1.0, 210.0)?,
    ];
    for pt in points {
        let r = LayerResponse::at(&model, &pt)?;
        println!("{pt:?}");
        println!("  eps = {:.4}  q = {:.4}  v = {:.4}", r.eps, r.q, r.v);
        println!("  r_p = {:.5}  r_s = {:.5}", r.r_p, r.r_s);
    }
    Ok(())
}
