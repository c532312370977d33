//! Seeded randomized consistency suites: closed forms against the
//! boundary-matching oracle, flux conservation, reciprocity and gauge freedom.
//!
//! Sample `i` of a suite draws from its own ChaCha stream, so results do not
//! depend on the number of worker threads.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::model::SystemParams;
use crate::oracle::solve_boundary_matching;
use crate::scattering::{Direction, Regime, ScatteringResult, Subspace};

pub const ORACLE_TOLERANCE: f64 = 1e-9;
pub const FLUX_TOLERANCE: f64 = 1e-10;
pub const REFLECTANCE_TOLERANCE: f64 = 1e-12;
pub const CONTRAST_SUM_TOLERANCE: f64 = 1e-10;
pub const RECIPROCAL_CONTRAST_TOLERANCE: f64 = 1e-12;
pub const GAUGE_TOLERANCE: f64 = 1e-12;

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_DETUNINGS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random parameter sets per suite.
    pub samples: usize,
    /// Detunings per parameter set.
    pub detunings: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: DEFAULT_SAMPLES,
            detunings: DEFAULT_DETUNINGS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub samples: usize,
    pub max_abs_error: f64,
    pub tolerance: f64,
    /// Evaluations dropped at a flagged pole or singular oracle system.
    pub skipped: usize,
    pub pass: bool,
}

/// How coupling parameters are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Draw {
    Generic,
    /// |J₂| = 0: a single coupling point.
    SmallAtom,
    /// n = 0: no resonator photons.
    Vacuum,
    /// φ_J an integer multiple of π.
    ReciprocalPhase,
}

/// A random parameter set and the detunings to probe it at.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub params: SystemParams,
    pub deltas: Vec<f64>,
}

fn stream(seed: u64, suite: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ suite.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.set_stream(index as u64);
    rng
}

/// Draw parameter set `index` of a suite: n in 1..=30, τΓ in [0, 3π],
/// φ_J in [−π, π], |J₂|/|J₁| in [0, 2], ω_fc/g in [−5, 5], ω_e up to about
/// 10³Γ and Δ in ±20Γ.
pub fn sample(seed: u64, suite: u64, index: usize, detunings: usize, draw: Draw) -> Sample {
    let mut rng = stream(seed, suite, index);
    let j1_mag = rng.random_range(0.2..1.5);
    let mut j2_mag = j1_mag * rng.random_range(0.0..2.0);
    let phi1 = rng.random_range(-PI..PI);
    let mut phi_j = rng.random_range(-PI..PI);
    let mut n = rng.random_range(1..=30u32);
    let v = rng.random_range(0.5..2.0);
    match draw {
        Draw::Generic => {}
        Draw::SmallAtom => j2_mag = 0.0,
        Draw::Vacuum => n = 0,
        Draw::ReciprocalPhase => phi_j = PI * rng.random_range(-4..=4) as f64,
    }
    let gamma = (j1_mag * j1_mag + j2_mag * j2_mag) / v;
    let g = gamma * rng.random_range(0.1..5.0);
    let omega_c = gamma * rng.random_range(-5.0..5.0);
    let params = SystemParams {
        omega_e: gamma * rng.random_range(-50.0..1050.0),
        omega_f: omega_c + g * rng.random_range(-5.0..5.0),
        omega_c,
        g,
        j1_mag,
        j2_mag,
        phi1,
        phi2: phi1 + phi_j,
        v,
        tau: rng.random_range(0.0..3.0 * PI) / gamma,
        n,
    };
    let deltas = (0..detunings)
        .map(|_| gamma * rng.random_range(-20.0..20.0))
        .collect();
    Sample { params, deltas }
}

/// Largest error over all samples and the number of skipped evaluations.
fn run<F>(cfg: &VerifyConfig, suite: u64, draw: Draw, check: F) -> (f64, usize)
where
    F: Fn(&Sample) -> (f64, usize) + Sync,
{
    (0..cfg.samples)
        .into_par_iter()
        .map(|i| check(&sample(cfg.seed, suite, i, cfg.detunings, draw)))
        .reduce(|| (0.0, 0), |a, b| (a.0.max(b.0), a.1 + b.1))
}

fn report(name: &'static str, cfg: &VerifyConfig, (err, skipped): (f64, usize), tolerance: f64) -> SuiteReport {
    SuiteReport {
        suite: name,
        samples: cfg.samples,
        max_abs_error: err,
        tolerance,
        skipped,
        pass: err < tolerance && skipped < cfg.samples * cfg.detunings.max(1),
    }
}

const DIRECTIONS: [Direction; 2] = [Direction::Left, Direction::Right];
const REGIMES: [Regime; 2] = [Regime::Exact, Regime::Markov];

fn probabilities(r: &ScatteringResult) -> [f64; 3] {
    [r.transmittance(), r.reflectance(), r.conversion()]
}

/// Closed-form probabilities against the boundary-matching solution.
pub fn oracle_equivalence(cfg: &VerifyConfig, draw: Draw) -> (f64, usize) {
    run(cfg, 1 + draw as u64, draw, |s| {
        let Ok(sub) = Subspace::physical(&s.params) else {
            return (f64::INFINITY, 0);
        };
        let mut err: f64 = 0.0;
        let mut skipped = 0;
        for &delta in &s.deltas {
            for direction in DIRECTIONS {
                let closed = sub.scatter(delta, direction, Regime::Exact);
                let oracle = solve_boundary_matching(&s.params, s.params.n, delta, direction);
                match (closed, oracle) {
                    (Ok(c), Ok(o)) => {
                        let ours = probabilities(&c);
                        let theirs = [o.transmittance(), o.reflectance(), o.conversion()];
                        for (a, b) in ours.iter().zip(theirs) {
                            err = err.max((a - b).abs());
                        }
                    }
                    _ => skipped += 1,
                }
            }
        }
        (err, skipped)
    })
}

pub fn flux_conservation(cfg: &VerifyConfig, draw: Draw) -> (f64, usize) {
    run(cfg, 10 + draw as u64, draw, |s| {
        let Ok(sub) = Subspace::physical(&s.params) else {
            return (f64::INFINITY, 0);
        };
        let mut err: f64 = 0.0;
        let mut skipped = 0;
        for &delta in &s.deltas {
            for regime in REGIMES {
                for direction in DIRECTIONS {
                    match sub.scatter(delta, direction, regime) {
                        Ok(r) => err = err.max(r.flux_defect().abs()),
                        Err(_) => skipped += 1,
                    }
                }
            }
        }
        (err, skipped)
    })
}

/// Errors of R₋ = R̃₋ and I₁ = −I₂, in that order.
pub fn reciprocity(cfg: &VerifyConfig) -> ((f64, usize), (f64, usize)) {
    let pair = |s: &Sample, measure: &dyn Fn(&ScatteringResult, &ScatteringResult) -> f64| {
        let Ok(sub) = Subspace::physical(&s.params) else {
            return (f64::INFINITY, 0);
        };
        let mut err: f64 = 0.0;
        let mut skipped = 0;
        for &delta in &s.deltas {
            for regime in REGIMES {
                match sub.scatter_both(delta, regime) {
                    Ok((l, r)) => err = err.max(measure(&l, &r)),
                    Err(_) => skipped += 1,
                }
            }
        }
        (err, skipped)
    };
    let reflect = run(cfg, 20, Draw::Generic, |s| {
        pair(s, &|l, r| (l.reflectance() - r.reflectance()).abs())
    });
    let contrast = run(cfg, 21, Draw::Generic, |s| {
        pair(s, &|l, r| {
            let i1 = l.transmittance() - r.transmittance();
            let i2 = l.conversion() - r.conversion();
            (i1 + i2).abs()
        })
    });
    (reflect, contrast)
}

/// |I₂| when φ_J is a multiple of π.
pub fn reciprocal_phase_contrast(cfg: &VerifyConfig) -> (f64, usize) {
    run(cfg, 22, Draw::ReciprocalPhase, |s| {
        let Ok(sub) = Subspace::physical(&s.params) else {
            return (f64::INFINITY, 0);
        };
        let mut err: f64 = 0.0;
        let mut skipped = 0;
        for &delta in &s.deltas {
            for regime in REGIMES {
                match sub.contrast(delta, regime) {
                    Ok(c) => err = err.max(c.i2.abs()),
                    Err(_) => skipped += 1,
                }
            }
        }
        (err, skipped)
    })
}

/// A common phase on both couplings is unobservable.
pub fn gauge_invariance(cfg: &VerifyConfig) -> (f64, usize) {
    run(cfg, 30, Draw::Generic, |s| {
        let shift = s.deltas.first().copied().unwrap_or(1.0) * 0.7 + 0.3;
        let mut shifted = s.params;
        shifted.phi1 += shift;
        shifted.phi2 += shift;
        let (Ok(a), Ok(b)) = (Subspace::physical(&s.params), Subspace::physical(&shifted)) else {
            return (f64::INFINITY, 0);
        };
        let mut err: f64 = 0.0;
        let mut skipped = 0;
        for &delta in &s.deltas {
            for regime in REGIMES {
                for direction in DIRECTIONS {
                    match (a.scatter(delta, direction, regime), b.scatter(delta, direction, regime)) {
                        (Ok(x), Ok(y)) => {
                            for (p, q) in probabilities(&x).iter().zip(probabilities(&y)) {
                                err = err.max((p - q).abs());
                            }
                        }
                        _ => skipped += 1,
                    }
                }
            }
        }
        (err, skipped)
    })
}

/// Largest T_c with no photons in the resonator.
pub fn vacuum_conversion(cfg: &VerifyConfig) -> (f64, usize) {
    run(cfg, 40, Draw::Vacuum, |s| {
        let Ok(sub) = Subspace::physical(&s.params) else {
            return (f64::INFINITY, 0);
        };
        let mut err: f64 = 0.0;
        let mut skipped = 0;
        for &delta in &s.deltas {
            for regime in REGIMES {
                for direction in DIRECTIONS {
                    match sub.scatter(delta, direction, regime) {
                        Ok(r) => err = err.max(r.conversion()),
                        Err(_) => skipped += 1,
                    }
                }
            }
        }
        (err, skipped)
    })
}

/// Every suite, in a fixed order.
pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    let (reflect, contrast) = reciprocity(cfg);
    vec![
        report("oracle_equivalence", cfg, oracle_equivalence(cfg, Draw::Generic), ORACLE_TOLERANCE),
        report("flux_conservation", cfg, flux_conservation(cfg, Draw::Generic), FLUX_TOLERANCE),
        report("reflectance_reciprocity", cfg, reflect, REFLECTANCE_TOLERANCE),
        report("contrast_sum", cfg, contrast, CONTRAST_SUM_TOLERANCE),
        report(
            "reciprocal_phase_contrast",
            cfg,
            reciprocal_phase_contrast(cfg),
            RECIPROCAL_CONTRAST_TOLERANCE,
        ),
        report("gauge_invariance", cfg, gauge_invariance(cfg), GAUGE_TOLERANCE),
        report(
            "small_atom_flux",
            cfg,
            flux_conservation(cfg, Draw::SmallAtom),
            FLUX_TOLERANCE,
        ),
        report(
            "small_atom_oracle",
            cfg,
            oracle_equivalence(cfg, Draw::SmallAtom),
            ORACLE_TOLERANCE,
        ),
        report("vacuum_conversion", cfg, vacuum_conversion(cfg), RECIPROCAL_CONTRAST_TOLERANCE),
    ]
}
