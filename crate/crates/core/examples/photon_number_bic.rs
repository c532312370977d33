// Bound states in the continuum selected by the resonator photon number:
// perfect transmission at n = 1 and 25, perfect reflection at n = 9.

use std::f64::consts::PI;

use gascatter::scattering::linspace;
use gascatter::{Direction, Regime, Subspace, SystemParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let base = SystemParams::resonant_symmetric(1015.0, 15.0, 0.1 * PI, 0.0, 1);
    println!("  n   min T_minus   max R_minus   max T_c      Lamb shift");
    for n in [1, 4, 9, 17, 25] {
        let sub = Subspace::physical(&base.with_n(n))?;
        let (mut t_min, mut r_max, mut c_max) = (f64::INFINITY, 0.0f64, 0.0f64);
        for d in linspace(-10.0, 10.0, 401) {
            let r = sub.scatter(d, Direction::Left, Regime::Markov)?;
            t_min = t_min.min(r.transmittance());
            r_max = r_max.max(r.reflectance());
            c_max = c_max.max(r.conversion());
        }
        let shift = sub.lamb_shift(0.0, Regime::Markov);
        println!("{n:3} {t_min:13.6} {r_max:13.6} {c_max:12.3e} {shift:12.6}");
    }

    let nine = Subspace::physical(&base.with_n(9))?;
    let at_shift = nine.scatter(nine.lamb_shift(0.0, Regime::Markov), Direction::Left, Regime::Markov)?;
    println!("n = 9 at delta = Lamb shift: R_minus = {:.9}", at_shift.reflectance());
    if (at_shift.reflectance() - 1.0).abs() > 1e-6 {
        return Err("perfect reflection at n = 9 not reproduced".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
