// The dressed atom-resonator ladder and how it splits the waveguide damping
// between the two conversion channels.

use gascatter::{channel_rates, DressedLevel, SystemParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut params = SystemParams::resonant_symmetric(1000.0, 5.0, 0.1, 0.5, 1);
    params.omega_c = 3.0;

    println!("   n      nu_minus       nu_plus     theta/pi   Gamma_-    Gamma_+");
    for n in [0, 1, 2, 4, 9, 16, 25] {
        let level = DressedLevel::for_photon_number(&params, n)?;
        let rates = channel_rates(&params, &level);
        println!(
            "{n:4} {:13.6} {:13.6} {:12.6} {:10.6} {:10.6}",
            level.nu_minus,
            level.nu_plus,
            level.theta / std::f64::consts::PI,
            rates.gamma_e_minus,
            rates.gamma_e_plus,
        );
        // nu_+ + nu_- = omega_fc and nu_+ nu_- = -n g^2.
        let sum = level.nu_plus + level.nu_minus - params.omega_fc();
        let product = level.nu_plus * level.nu_minus + n as f64 * params.g * params.g;
        if sum.abs() > 1e-12 || product.abs() > 1e-9 {
            return Err(format!("dressed roots off at n = {n}").into());
        }
        if (rates.gamma_e_plus + rates.gamma_e_minus - rates.gamma_total).abs() > 1e-14 {
            return Err(format!("channel rates do not add up at n = {n}").into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
