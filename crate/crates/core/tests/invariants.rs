// Property tests for the scattering invariants.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

use gascatter::model::wrap_phase;
use gascatter::scattering::linspace;
use gascatter::{Direction, PhaseSet, Regime, Subspace, SystemParams};

fn params() -> impl Strategy<Value = SystemParams> {
    (
        (0.2f64..1.5, 0.0f64..2.0, -PI..PI, -PI..PI, 0.5f64..2.0),
        (-50.0f64..1050.0, 0.1f64..5.0, -5.0f64..5.0, -5.0f64..5.0, 0.0f64..3.0 * PI),
        0u32..=30,
    )
        .prop_map(|((j1, ratio, phi1, phi_j, v), (we, g, wc, fc, tau), n)| {
            let j2 = j1 * ratio;
            let gamma = (j1 * j1 + j2 * j2) / v;
            SystemParams {
                omega_e: we * gamma,
                omega_f: (wc + fc * g) * gamma,
                omega_c: wc * gamma,
                g: g * gamma,
                j1_mag: j1,
                j2_mag: j2,
                phi1,
                phi2: phi1 + phi_j,
                v,
                tau: tau / gamma,
                n,
            }
        })
}

const BOTH: [Direction; 2] = [Direction::Left, Direction::Right];
const REGIMES: [Regime; 2] = [Regime::Exact, Regime::Markov];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn flux_is_conserved(p in params(), d in -20.0f64..20.0) {
        let sub = Subspace::physical(&p).unwrap();
        for regime in REGIMES {
            for direction in BOTH {
                let r = sub.scatter(d * p.gamma(), direction, regime).unwrap();
                prop_assert!(r.flux_defect().abs() < 1e-10);
            }
        }
    }

    #[test]
    fn reflectance_is_reciprocal(p in params(), d in -20.0f64..20.0) {
        let sub = Subspace::physical(&p).unwrap();
        for regime in REGIMES {
            let (l, r) = sub.scatter_both(d * p.gamma(), regime).unwrap();
            prop_assert!((l.reflectance() - r.reflectance()).abs() < 1e-12);
            let c = sub.contrast(d * p.gamma(), regime).unwrap();
            prop_assert!((c.i1 + c.i2).abs() < 1e-10);
        }
    }

    #[test]
    fn reciprocal_at_integer_phi_j(p in params(), m in -3i32..=3, d in -20.0f64..20.0) {
        let p = p.with_phi_j(m as f64 * PI);
        let sub = Subspace::physical(&p).unwrap();
        for regime in REGIMES {
            let (l, r) = sub.scatter_both(d * p.gamma(), regime).unwrap();
            prop_assert!((l.transmittance() - r.transmittance()).abs() < 1e-12);
            prop_assert!((l.conversion() - r.conversion()).abs() < 1e-12);
        }
    }

    #[test]
    fn phi_n_is_a_pure_gauge(p in params(), a in -20.0f64..20.0, b in -20.0f64..20.0, n1 in -50.0f64..50.0, n2 in -50.0f64..50.0, d in -5.0f64..5.0) {
        let x = Subspace::explicit(&p, PhaseSet::explicit(a, b).with_phi_n(n1)).unwrap();
        let y = Subspace::explicit(&p, PhaseSet::explicit(a, b).with_phi_n(n2)).unwrap();
        for regime in REGIMES {
            for direction in BOTH {
                let u = x.scatter(d, direction, regime).unwrap();
                let v = y.scatter(d, direction, regime).unwrap();
                prop_assert_eq!(u.t_minus, v.t_minus);
                prop_assert_eq!(u.r_minus, v.r_minus);
                prop_assert!((u.conversion() - v.conversion()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn reduced_phases_change_nothing(p in params(), d in -5.0f64..5.0) {
        let sub = Subspace::physical(&p).unwrap();
        let reduced = Subspace { phases: sub.phases.reduced(), ..sub };
        prop_assert!(reduced.phases.phi_plus.abs() <= PI && reduced.phases.phi_minus.abs() <= PI);
        for direction in BOTH {
            let u = sub.scatter(d, direction, Regime::Markov).unwrap();
            let v = reduced.scatter(d, direction, Regime::Markov).unwrap();
            prop_assert!((u.transmittance() - v.transmittance()).abs() < 1e-9);
            prop_assert!((u.conversion() - v.conversion()).abs() < 1e-9);
        }
    }

    #[test]
    fn markov_is_the_short_delay_limit(p in params(), a in -PI..PI, b in -PI..PI, d in -5.0f64..5.0) {
        let p = p.with_tau(1e-6 / p.gamma());
        let sub = Subspace::explicit(&p, PhaseSet::explicit(a, b)).unwrap();
        for direction in BOTH {
            let (Ok(e), Ok(m)) = (
                sub.scatter(d * p.gamma(), direction, Regime::Exact),
                sub.scatter(d * p.gamma(), direction, Regime::Markov),
            ) else {
                continue;
            };
            // Sharp resonances amplify the O(Δτ) difference by 1/Γ̃.
            let decay = sub.effective_decay(d * p.gamma(), Regime::Markov) / p.gamma();
            prop_assume!(decay > 1e-2);
            for (x, y) in [(e.t_minus, m.t_minus), (e.r_minus, m.r_minus), (e.t_plus, m.t_plus), (e.r_plus, m.r_plus)] {
                prop_assert!((x - y).norm() < 1e-5);
            }
        }
    }

    #[test]
    fn wrap_phase_lands_in_half_open_interval(x in -1e6f64..1e6) {
        let w = wrap_phase(x);
        prop_assert!(w > -PI && w <= PI);
        let turns = (x - w) / (2.0 * PI);
        prop_assert!((turns - turns.round()).abs() < 1e-9);
    }
}

/// Fit 1/T_c = c0 + c1 Δ + c2 Δ² by least squares and return the largest
/// relative misfit of the implied Lorentzian.
fn lorentzian_misfit(deltas: &[f64], tc: &[f64]) -> (f64, f64, f64) {
    let a = DMatrix::from_fn(deltas.len(), 3, |i, j| deltas[i].powi(j as i32));
    let y = DVector::from_iterator(tc.len(), tc.iter().map(|t| 1.0 / t));
    let coef = a.clone().svd(true, true).solve(&y, 1e-14).unwrap();
    let misfit = deltas
        .iter()
        .zip(tc)
        .map(|(&d, &t)| (1.0 / (coef[0] + coef[1] * d + coef[2] * d * d) - t).abs())
        .fold(0.0, f64::max);
    let center = -coef[1] / (2.0 * coef[2]);
    let half_width = (coef[0] / coef[2] - center * center).sqrt();
    (misfit, center, half_width)
}

#[test]
fn markov_conversion_is_lorentzian() {
    let params = SystemParams::resonant_symmetric(1000.0, 5.0, 0.0, 0.0, 1);
    let deltas = linspace(-10.0, 10.0, 401);
    for (a, b) in [(0.0, 0.0), (PI / 3.0, 0.4), (-1.0, 2.0), (2.5, -0.3)] {
        let sub = Subspace::explicit(&params, PhaseSet::explicit(a, b)).unwrap();
        let tc: Vec<f64> = deltas
            .iter()
            .map(|&d| sub.scatter(d, Direction::Left, Regime::Markov).unwrap().conversion())
            .collect();
        let (misfit, center, half_width) = lorentzian_misfit(&deltas, &tc);
        assert!(misfit < 1e-8, "{misfit:e}");
        assert!((center - sub.lamb_shift(0.0, Regime::Markov)).abs() < 1e-8);
        let decay = sub.effective_decay(0.0, Regime::Markov);
        assert!((half_width - decay).abs() < 1e-8, "{half_width} vs {decay}");
    }
}

#[test]
fn markov_whole_line_suppression() {
    for m in -2..=2 {
        let phi_j = m as f64 * PI;
        let params = SystemParams::resonant_symmetric(1000.0, 5.0, 0.0, phi_j, 1);
        let dark = (m as f64 + 1.0) * PI;
        for set in [PhaseSet::explicit(0.7, dark), PhaseSet::explicit(dark, 0.7)] {
            let sub = Subspace::explicit(&params, set).unwrap();
            for d in linspace(-10.0, 10.0, 201) {
                for direction in BOTH {
                    let r = sub.scatter(d, direction, Regime::Markov).unwrap();
                    assert!(r.conversion() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn exact_regime_static_and_contrast_zeros() {
    let tau = PI;
    for phi_j in [0.0, PI, 2.0 * PI, 0.3, -1.1] {
        for phi_minus in [0.0, 0.4, -2.0] {
            let params = SystemParams::resonant_symmetric(1000.0, 5.0, tau, phi_j, 1);
            let sub = Subspace::explicit(&params, PhaseSet::explicit(0.9, phi_minus)).unwrap();
            for m in -3..=3 {
                // Static zero for left incidence: Δτ + φ₋ − φ_J = (2m+1)π.
                let d = ((2 * m + 1) as f64 * PI + phi_j - phi_minus) / tau;
                let r = sub.scatter(d, Direction::Left, Regime::Exact).unwrap();
                assert!(r.conversion() < 1e-10, "phi_J {phi_j} m {m}: {}", r.conversion());
                // Contrast vanishes where Δτ + φ₋ ∈ πℤ.
                let d = (m as f64 * PI - phi_minus) / tau;
                let c = sub.contrast(d, Regime::Exact).unwrap();
                assert!(c.i2.abs() < 1e-10);
            }
        }
    }
}
