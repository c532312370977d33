// Acceptance suite. Prints one line per criterion and exits non-zero if any
// of them fails. Runs without the libtest harness so the lines always show.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};

use gascatter::analysis::{
    find_contrast_extrema, find_conversion_zeros, find_extrema, AxisGrid, ExtremumKind, Observable,
    PhaseChoice, SweepAxis, SweepSpec, ZERO_LOCATION_TOLERANCE,
};
use gascatter::cli::{main_with, presets::PRESETS};
use gascatter::scattering::linspace;
use gascatter::verify::{self, Draw, VerifyConfig};
use gascatter::{solve_with_phases, Direction, PhaseSet, Regime, Subspace, SystemParams};

const SEED: u64 = 20_240_601;
const BOTH: [Direction; 2] = [Direction::Left, Direction::Right];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Collects failures; the first one is reported, all later checks still run.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, summary: String) -> Outcome {
        match self.failures.len() {
            0 => Ok(summary),
            n => Err(format!("{} ({} failed checks; {summary})", self.failures[0], n)),
        }
    }
}

fn explicit(phi_plus: f64, phi_minus: f64) -> PhaseChoice {
    PhaseChoice::Explicit {
        phi_plus,
        phi_minus,
        phi_n: None,
    }
}

fn grid() -> VerifyConfig {
    VerifyConfig {
        seed: SEED,
        samples: 1000,
        detunings: 100,
    }
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn flux() -> Outcome {
    let start = Instant::now();
    let (err, skipped) = verify::flux_conservation(&grid(), Draw::Generic);
    let elapsed = start.elapsed();
    let mut c = Checks::default();
    c.check(err < 1e-10, || format!("max |T + R + T_c - 1| = {err:.2e}"));
    c.check(elapsed < Duration::from_secs(10), || format!("took {:.1} s", secs(elapsed)));
    c.finish(format!(
        "max defect {err:.2e} over 1000 x 100 x 2 regimes x 2 directions, {skipped} poles, {:.2} s",
        secs(elapsed)
    ))
}

fn oracle() -> Outcome {
    let start = Instant::now();
    let (err, skipped) = verify::oracle_equivalence(&grid(), Draw::Generic);
    let elapsed = start.elapsed();
    let mut c = Checks::default();
    c.check(err < 1e-9, || format!("max probability error {err:.2e}"));
    c.check(elapsed < Duration::from_secs(30), || format!("took {:.1} s", secs(elapsed)));
    c.finish(format!("max probability error {err:.2e}, {skipped} skipped, {:.2} s", secs(elapsed)))
}

fn reciprocity() -> Outcome {
    let cfg = grid();
    let ((reflect, _), (sum, _)) = verify::reciprocity(&cfg);
    let (phase, _) = verify::reciprocal_phase_contrast(&cfg);
    let mut c = Checks::default();
    c.check(reflect < 1e-12, || format!("|R - R~| = {reflect:.2e}"));
    c.check(sum < 1e-10, || format!("|I1 + I2| = {sum:.2e}"));
    c.check(phase < 1e-12, || format!("|I2| at phi_J = m pi is {phase:.2e}"));
    c.finish(format!("|R - R~| {reflect:.2e}, |I1 + I2| {sum:.2e}, |I2(m pi)| {phase:.2e}"))
}

/// Least-squares fit of 1/T_c to a quadratic in Δ; largest misfit of T_c.
fn lorentzian_misfit(deltas: &[f64], tc: &[f64]) -> f64 {
    let a = DMatrix::from_fn(deltas.len(), 3, |i, j| deltas[i].powi(j as i32));
    let y = DVector::from_iterator(tc.len(), tc.iter().map(|t| 1.0 / t));
    let coef = a.svd(true, true).solve(&y, 1e-14).expect("fit");
    deltas
        .iter()
        .zip(tc)
        .map(|(&d, &t)| (1.0 / (coef[0] + coef[1] * d + coef[2] * d * d) - t).abs())
        .fold(0.0, f64::max)
}

fn fig2() -> Outcome {
    let params = SystemParams::resonant_symmetric(1000.0, 5.0, 0.0, 0.0, 1);
    let mut c = Checks::default();

    // Largest conversion over the (Δ, φ₋) plane at φ₊ = π/3.
    let plane = SweepSpec::delta_line(params, explicit(FRAC_PI_3, 0.0), Regime::Markov, -4.0, 4.0, 2)
        .with_axis2(AxisGrid::linspace(SweepAxis::PhiMinus, -PI, PI, 361));
    let mut best = (0.0f64, 0.0f64);
    for (phi_minus, slice) in plane.slices() {
        for direction in BOTH {
            for e in find_extrema(&slice, Observable::Conversion(direction)).map_err(|e| e.to_string())? {
                if e.kind == ExtremumKind::Max && e.value > best.0 {
                    best = (e.value, phi_minus.unwrap());
                }
            }
        }
    }
    c.check((best.0 - 0.5).abs() < 1e-6, || format!("max T_c = {:.9}", best.0));

    let deltas = linspace(-10.0, 10.0, 401);
    let mut misfit: f64 = 0.0;
    for phi_minus in [best.1, 0.0, 0.4, -2.0] {
        let sub = Subspace::explicit(&params, PhaseSet::explicit(FRAC_PI_3, phi_minus)).unwrap();
        let tc: Vec<f64> = deltas
            .iter()
            .map(|&d| sub.scatter(d, Direction::Left, Regime::Markov).unwrap().conversion())
            .collect();
        misfit = misfit.max(lorentzian_misfit(&deltas, &tc));
    }
    c.check(misfit < 1e-8, || format!("Lorentzian residual {misfit:.2e}"));

    let mut transmit: f64 = 0.0;
    let mut dark: f64 = 0.0;
    // φ₊ = φ₋ = π decouples the atom entirely; Δ = 0 is then a pole.
    let mut poles = 0;
    for other in linspace(-PI, PI, 13) {
        let open = Subspace::explicit(&params, PhaseSet::explicit(other, PI)).unwrap();
        let shut = Subspace::explicit(&params, PhaseSet::explicit(PI, other)).unwrap();
        for d in linspace(-20.0, 20.0, 801) {
            for direction in BOTH {
                match (open.scatter(d, direction, Regime::Markov), shut.scatter(d, direction, Regime::Markov)) {
                    (Ok(o), Ok(s)) => {
                        transmit = transmit.max((o.transmittance() - 1.0).abs());
                        dark = dark.max(s.conversion());
                    }
                    _ => poles += 1,
                }
            }
        }
    }
    c.check(transmit < 1e-10, || format!("|T - 1| at phi_minus = pi is {transmit:.2e}"));
    c.check(dark < 1e-12, || format!("T_c at phi_plus = pi is {dark:.2e}"));
    c.finish(format!(
        "max T_c {:.9} at phi_minus {:.4}, fit residual {misfit:.2e}, |T - 1| {transmit:.2e}, T_c {dark:.2e}, {poles} poles skipped",
        best.0, best.1
    ))
}

fn fig3() -> Outcome {
    let base = SystemParams::resonant_symmetric(1015.0, 15.0, 0.1 * PI, 0.0, 1);
    let mut c = Checks::default();
    let mut transmit: f64 = 0.0;
    let mut conversion: f64 = 0.0;
    for n in [1, 9, 25] {
        let sub = Subspace::physical(&base.with_n(n)).unwrap();
        for d in linspace(-10.0, 10.0, 2001) {
            for direction in BOTH {
                let r = sub.scatter(d, direction, Regime::Markov).unwrap();
                conversion = conversion.max(r.conversion());
                if n != 9 {
                    transmit = transmit.max((r.transmittance() - 1.0).abs());
                }
            }
        }
    }
    let nine = Subspace::physical(&base.with_n(9)).unwrap();
    let shift = nine.lamb_shift(0.0, Regime::Markov);
    let mut reflect: f64 = 0.0;
    for direction in BOTH {
        let r = nine.scatter(shift, direction, Regime::Markov).unwrap();
        reflect = reflect.max((r.reflectance() - 1.0).abs());
    }
    c.check(transmit < 1e-6, || format!("|T - 1| at n = 1, 25 is {transmit:.2e}"));
    c.check(reflect < 1e-6, || format!("|R(shift) - 1| at n = 9 is {reflect:.2e}"));
    c.check(conversion < 1e-10, || format!("T_c = {conversion:.2e}"));
    c.finish(format!(
        "|T - 1| {transmit:.2e}, |R - 1| {reflect:.2e} at delta = {shift:.6}, T_c {conversion:.2e}"
    ))
}

fn fig4() -> Outcome {
    let base = SystemParams::resonant_symmetric(1015.0, 5.0, 0.1 * PI, FRAC_PI_2, 1);
    let i2 = |n: u32, d: f64| {
        Subspace::physical(&base.with_n(n))
            .unwrap()
            .contrast(d, Regime::Markov)
            .unwrap()
            .i2
    };
    let four = i2(4, 0.0);
    let sixteen = i2(16, 0.0);
    let mut flat: f64 = 0.0;
    for n in [1, 9] {
        for d in linspace(-10.0, 10.0, 2001) {
            flat = flat.max(i2(n, d).abs());
        }
    }
    let mut c = Checks::default();
    c.check((four - 1.0).abs() < 1e-6, || format!("I2(4, 0) = {four:.9}"));
    c.check((sixteen + 1.0).abs() < 1e-6, || format!("I2(16, 0) = {sixteen:.9}"));
    c.check(flat < 1e-10, || format!("|I2| at n = 1, 9 is {flat:.2e}"));
    c.finish(format!("I2(4, 0) {four:.9}, I2(16, 0) {sixteen:.9}, |I2| at n = 1, 9 {flat:.2e}"))
}

fn fig5() -> Outcome {
    let tau = PI;
    let phi_minus = 0.0;
    let mut c = Checks::default();
    let mut zeros_checked = 0;
    let mut worst: f64 = 0.0;
    for (phi_j, odd) in [(0.0, false), (2.0 * PI, false), (-2.0 * PI, false), (PI, true), (-PI, true), (3.0 * PI, true)] {
        for phi_plus in [PI, FRAC_PI_2] {
            let params = SystemParams::resonant_symmetric(1000.0, 5.0, tau, phi_j, 1);
            let spec = SweepSpec::delta_line(params, explicit(phi_plus, phi_minus), Regime::Exact, -3.5, 3.5, 2);
            let found = find_conversion_zeros(&spec).map_err(|e| e.to_string())?;
            let sub = Subspace::explicit(&params, PhaseSet::explicit(phi_plus, phi_minus)).unwrap();
            // Predicted static zeros: Δτ + φ₋ = (2m+1)π for even φ_J/π, 2mπ for odd.
            for m in -4i32..=4 {
                let k = 2 * m + if odd { 0 } else { 1 };
                let at = (k as f64 * PI - phi_minus) / tau;
                if at.abs() > 3.5 {
                    continue;
                }
                for direction in BOTH {
                    let hit = found.iter().any(|z| {
                        z.direction == direction
                            && z.location.is_some_and(|x| (x - at).abs() < 10.0 * ZERO_LOCATION_TOLERANCE)
                    });
                    c.check(hit, || format!("no zero found at delta tau = {k} pi, phi_J = {phi_j:.3}"));
                    let closed = sub.scatter(at, direction, Regime::Exact).unwrap().conversion();
                    let oracle = solve_with_phases(&params, 1, phi_plus, phi_minus, at, direction)
                        .unwrap()
                        .conversion();
                    worst = worst.max(closed).max(oracle);
                    zeros_checked += 1;
                }
            }
            for z in &found {
                let Some(at) = z.location else { continue };
                let oracle = solve_with_phases(&params, 1, phi_plus, phi_minus, at, z.direction)
                    .unwrap()
                    .conversion();
                worst = worst.max(z.residual).max(oracle);
            }
        }
    }
    c.check(worst < 1e-10, || format!("T_c at a zero is {worst:.2e}"));

    let mut contrast: f64 = 0.0;
    for phi_plus in [PI, FRAC_PI_2] {
        for phi_j in linspace(-PI, PI, 201) {
            let params = SystemParams::resonant_symmetric(1000.0, 5.0, tau, phi_j, 1);
            let sub = Subspace::explicit(&params, PhaseSet::explicit(phi_plus, phi_minus)).unwrap();
            for m in -3..=3 {
                let d = (m as f64 * PI - phi_minus) / tau;
                contrast = contrast.max(sub.contrast(d, Regime::Exact).unwrap().i2.abs());
            }
        }
    }
    c.check(contrast < 1e-10, || format!("|I2| on delta tau = m pi is {contrast:.2e}"));
    c.finish(format!(
        "{zeros_checked} predicted zeros found, max T_c there {worst:.2e}, |I2| on static lines {contrast:.2e}"
    ))
}

fn fig6() -> Outcome {
    let base = SystemParams::resonant_symmetric(995.5, 5.5, PI, FRAC_PI_2, 1);
    let top = |n: u32| {
        let spec = SweepSpec::delta_line(base.with_n(n), PhaseChoice::Physical, Regime::Exact, -3.0, 3.0, 601);
        find_contrast_extrema(&spec)
            .unwrap()
            .into_iter()
            .max_by(|a, b| a.value.abs().total_cmp(&b.value.abs()))
            .unwrap()
    };
    let four = top(4);
    let sixteen = top(16);
    let twelve = top(12);
    let one = Subspace::physical(&base.with_n(1)).unwrap();
    let nine = Subspace::physical(&base.with_n(9)).unwrap();
    let mut mirror: f64 = 0.0;
    for d in linspace(-3.0, 3.0, 1201) {
        let a = one.contrast(-d, Regime::Exact).unwrap().i2;
        let b = nine.contrast(d, Regime::Exact).unwrap().i2;
        mirror = mirror.max((a - b).abs());
    }
    let mut c = Checks::default();
    c.check((four.value - 1.0).abs() < 1e-3 && four.delta.abs() < 0.1, || {
        format!("n = 4 peak {:.6} at {:.4}", four.value, four.delta)
    });
    c.check((sixteen.value + 1.0).abs() < 1e-3 && sixteen.delta.abs() < 0.1, || {
        format!("n = 16 dip {:.6} at {:.4}", sixteen.value, sixteen.delta)
    });
    c.check(mirror < 1e-9, || format!("mirror mismatch {mirror:.2e}"));
    c.check((twelve.value.abs() - 1.0).abs() < 0.02, || format!("n = 12 |I2| {:.6}", twelve.value.abs()));
    c.finish(format!(
        "n = 4 max {:.6}, n = 16 min {:.6}, mirror {mirror:.2e}, n = 12 |I2| {:.5}",
        four.value,
        sixteen.value,
        twelve.value.abs()
    ))
}

fn run_cli(args: &[String]) -> (i32, Vec<u8>) {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let code = main_with(
        std::iter::once("gascatter".to_string()).chain(args.iter().cloned()),
        &mut std::io::empty(),
        &mut stdout,
        &mut stderr,
    );
    (code, stderr)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut c = Checks::default();
    let mut files = 0;
    for preset in PRESETS {
        for command in ["spectrum", "sweep", "contrast", "find-zeros"] {
            for format in ["csv", "json"] {
                let mut outputs = Vec::new();
                for (run, threads) in [(0, "1"), (1, "2")] {
                    let path = dir.path().join(format!("{preset}-{command}-{run}.{format}"));
                    let args: Vec<String> = [
                        command,
                        "--preset",
                        preset,
                        "--format",
                        format,
                        "--threads",
                        threads,
                        "--out",
                        path.to_str().unwrap(),
                    ]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                    let (code, stderr) = run_cli(&args);
                    outputs.push((code, stderr, std::fs::read(&path).ok()));
                }
                let (a, b) = (&outputs[0], &outputs[1]);
                c.check(a == b, || format!("{command} --preset {preset} --format {format} differs"));
                if command == "sweep" {
                    c.check(a.0 == 0 && a.2.is_some(), || format!("sweep --preset {preset} failed"));
                }
                if a.2.is_some() {
                    files += 1;
                }
            }
        }
    }
    c.finish(format!("{files} output files reproduced byte for byte"))
}

fn main() {
    // `cargo test -- --list` and friends expect no output from a custom harness.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [Criterion; 9] = [
        ("flux conservation", flux),
        ("oracle equivalence", oracle),
        ("reciprocity identities", reciprocity),
        ("Markov single-subspace spectra", fig2),
        ("photon-number selected transmission", fig3),
        ("Markov conversion contrast", fig4),
        ("retarded conversion zeros", fig5),
        ("retarded unity contrast", fig6),
        ("preset determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        match criterion() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
