//! Work-function shift and screening charge for gold at room temperature.

use rectified_lorentz::force::{surface_charge, work_function_shift, EstimateInputs, SurfaceCharge};
use rectified_lorentz::units::{HBAR, K_B};

fn main() -> rectified_lorentz::Result<()> {
    let gold = EstimateInputs::gold();
    let theta = 300.0 * K_B * gold.tau / HBAR;
    println!("n0 = {:.3e} m^-3, l_D = {:.3e} m, lambda_p = {:.3e} m", gold.n0, gold.debye_length(), gold.lambda_p());
    let w = work_function_shift(&gold, theta)?;
    println!("e^2/(eps0 hbar c) = {:.4}", w.coupling_fraction);
    println!("(hbar/lambda_p)/(m v_F) = {:.5}", w.momentum_fraction);
    println!("work function shift: {:.3e} eV (direct), {:.3e} eV (factored)", w.direct_ev(), w.factored_ev());
    let q = surface_charge(&gold, theta, gold.debye_length() / gold.lambda_p())?;
    println!(
        "screening charge: {:.3} e/um^2 (direct), {:.3} e/um^2 (factored)",
        SurfaceCharge::per_square_micron(q.direct),
        SurfaceCharge::per_square_micron(q.factored)
    );
    Ok(())
}
