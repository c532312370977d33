// Scan photon number and coupling phase for unity-efficiency nonreciprocal
// frequency conversion with retardation.

use std::f64::consts::{FRAC_PI_2, PI};

use gascatter::analysis::{find_unity_conversion, PhaseChoice, UnitySearch};
use gascatter::{Regime, SystemParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let search = UnitySearch {
        params: SystemParams::resonant_symmetric(995.5, 5.5, PI, 0.0, 1),
        phases: PhaseChoice::Physical,
        regime: Regime::Exact,
        photon_numbers: (1..=20).collect(),
        phi_j_values: vec![FRAC_PI_2, 0.25 * PI, 0.75 * PI],
        delta_min: -3.0,
        delta_max: 3.0,
        threshold: 0.99,
    };
    let found = find_unity_conversion(&search)?;
    for p in &found {
        println!(
            "n = {:2}  phi_J = {:.2} pi  delta = {:+.4}  I2 = {:+.6}",
            p.n,
            p.phi_j / PI,
            p.delta,
            p.i2
        );
    }
    let has = |n: u32, sign: f64| found.iter().any(|p| p.n == n && p.i2 * sign > 0.999);
    if !has(4, 1.0) || !has(16, -1.0) {
        return Err("unity conversion at n = 4 and 16 not found".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
