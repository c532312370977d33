// Cross-check the closed-form amplitudes against a direct boundary-matching
// solve of the stationary scattering problem.

use gascatter::oracle::plus_channel_gauge;
use gascatter::{solve_boundary_matching, Direction, Regime, Subspace, SystemParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = SystemParams {
        omega_e: 12.0,
        omega_f: 1.5,
        omega_c: -0.5,
        g: 2.0,
        j1_mag: 0.8,
        j2_mag: 0.6,
        phi1: 0.3,
        phi2: 2.1,
        v: 1.0,
        tau: 1.7,
        n: 3,
    };
    let sub = Subspace::physical(&params)?;
    let p = sub.phases;
    let mut worst: f64 = 0.0;
    for direction in [Direction::Left, Direction::Right] {
        for delta in [-2.0, -0.5, 0.0, 0.4, 1.9] {
            let closed = sub.scatter(delta, direction, Regime::Exact)?;
            let oracle = solve_boundary_matching(&params, params.n, delta, direction)?;
            let gauge = plus_channel_gauge(direction, p.phi_plus, p.phi_minus, p.phi_n);
            let errors = [
                (closed.t_minus - oracle.t_minus).norm(),
                (closed.r_minus - oracle.r_minus).norm(),
                (closed.t_plus * gauge - oracle.t_plus).norm(),
                (closed.r_plus * gauge - oracle.r_plus).norm(),
            ];
            let e = errors.iter().fold(0.0f64, |a, &b| a.max(b));
            worst = worst.max(e);
            println!(
                "{direction:?} delta = {delta:+.2}: T = {:.6} R = {:.6} T_c = {:.6}  |amplitude error| = {e:.1e}",
                closed.transmittance(),
                closed.reflectance(),
                closed.conversion()
            );
        }
    }
    if worst > 1e-10 {
        return Err(format!("closed form and oracle disagree by {worst:e}").into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
