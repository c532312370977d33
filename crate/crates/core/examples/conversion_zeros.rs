// Conversion zeros with retardation: static zeros pinned to the n- channel
// phase and moving zeros that follow the n+ channel phase and φ_J.

use std::f64::consts::PI;

use gascatter::analysis::{find_conversion_zeros, PhaseChoice, SweepSpec, ZeroKind};
use gascatter::{Direction, Regime, SystemParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (phi_plus, phi_j) in [(PI, 0.0), (PI, PI), (PI / 2.0, 0.0), (PI / 2.0, PI / 2.0)] {
        let params = SystemParams::resonant_symmetric(1000.0, 5.0, PI, phi_j, 1);
        let phases = PhaseChoice::Explicit {
            phi_plus,
            phi_minus: 0.0,
            phi_n: None,
        };
        let mut spec = SweepSpec::delta_line(params, phases, Regime::Exact, -3.5, 3.5, 2);
        spec.directions = vec![Direction::Left];
        let zeros = find_conversion_zeros(&spec)?;
        println!("phi_plus = {:.2} pi, phi_J = {:.2} pi:", phi_plus / PI, phi_j / PI);
        for z in &zeros {
            let tag = match z.kind {
                ZeroKind::StaticZero => "static",
                ZeroKind::MovingZero => "moving",
                ZeroKind::MarkovChannelSuppression => "whole line",
            };
            let turns = z.location.unwrap_or(f64::NAN) * params.tau / PI;
            println!("  {tag:>7} zero at delta tau = {turns:+.6} pi  (T_c = {:.1e})", z.residual);
            if z.residual >= 1e-10 {
                return Err("reported zero is not a zero".into());
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
