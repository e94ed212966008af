//! Sign of the thermal integrand with the full conductivity and with its
//! imaginary part alone, on a coarse (x, p) grid at ζ = 1.5.

use rectified_lorentz::grid::Grid;
use rectified_lorentz::kernels::ConductivityPart;
use rectified_lorentz::maps::thermal_map;
use rectified_lorentz::medium::MaterialModel;

fn sign(v: f64) -> char {
    match v {
        v if v > 0.0 => '+',
        v if v < 0.0 => '-',
        _ => '.',
    }
}

fn main() -> rectified_lorentz::Result<()> {
    let model = MaterialModel::drude(210.0)?;
    let xs = Grid::log(0.01, 10.0, 10).points()?;
    let ps = Grid::log(0.1, 1000.0, 24).points()?;
    let full = thermal_map(&model, ConductivityPart::Full, &xs, &ps, 1.5, 1.25)?;
    let imag = thermal_map(&model, ConductivityPart::ImagOnly, &xs, &ps, 1.5, 1.25)?;
    println!("rows: x from 0.01 to 10; columns: p from 0.1 to 1000");
    println!("{:>8}  {:<24}  {:<24}", "x", "full", "imag only");
    for (i, x) in xs.iter().enumerate() {
        let row = |cells: &[rectified_lorentz::maps::MapCell]| -> String {
            cells[i * ps.len()..(i + 1) * ps.len()].iter().map(|c| sign(c.value)).collect()
        };
        println!("{x:>8.3}  {}  {}", row(&full), row(&imag));
    }
    let flips = full.iter().zip(&imag).filter(|(a, b)| a.value * b.value < 0.0).count();
    println!("{flips} of {} cells change sign", full.len());
    Ok(())
}
