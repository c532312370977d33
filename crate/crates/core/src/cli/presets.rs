//! Figure recipes. All use Γ = 1, |J₁| = |J₂| and ω_f = ω_c. Figures 2 to 4
//! are evaluated in the Markov regime, figures 5 and 6 with full retardation.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

use super::config::{AxisConfig, RunConfig};
use crate::analysis::{PhaseChoice, SweepAxis};
use crate::model::SystemParams;
use crate::scattering::Regime;

/// Canonical preset names.
pub const PRESETS: [&str; 11] = [
    "fig2a", "fig2c", "fig2e", "fig2a-cut", "fig3", "fig4a", "fig4", "fig5a", "fig5c", "fig5a-cut",
    "fig6",
];

/// Panel names that share data with a canonical preset.
const ALIASES: [(&str, &str); 12] = [
    ("fig2b", "fig2a"),
    ("fig2d", "fig2c"),
    ("fig2f", "fig2e"),
    ("fig4b", "fig4a"),
    ("fig4c", "fig4"),
    ("fig4d", "fig4"),
    ("fig5b", "fig5a"),
    ("fig5d", "fig5c"),
    ("fig6a", "fig6"),
    ("fig6b", "fig6"),
    ("fig3a", "fig3"),
    ("fig3c", "fig3"),
];

fn explicit(phi_plus: f64, phi_minus: f64) -> PhaseChoice {
    PhaseChoice::Explicit {
        phi_plus,
        phi_minus,
        phi_n: None,
    }
}

fn recipe(
    description: &str,
    params: SystemParams,
    phases: PhaseChoice,
    regime: Regime,
    axis1: AxisConfig,
    axis2: Option<AxisConfig>,
) -> RunConfig {
    RunConfig {
        description: Some(description.to_string()),
        params,
        phases,
        regime,
        axis1,
        axis2,
        ..RunConfig::baseline()
    }
}

fn photon_numbers(range: std::ops::RangeInclusive<u32>) -> AxisConfig {
    AxisConfig::values(SweepAxis::PhotonNumber, range.map(f64::from).collect())
}

pub fn resolve_name(name: &str) -> Option<&'static str> {
    let lower = name.to_ascii_lowercase();
    PRESETS
        .iter()
        .copied()
        .find(|p| *p == lower)
        .or_else(|| ALIASES.iter().find(|(a, _)| *a == lower).map(|(_, p)| *p))
}

pub fn preset(name: &str) -> Option<RunConfig> {
    // ω_e, τ and g are irrelevant once the phases are explicit.
    let markov_n1 = |phi_j| SystemParams::resonant_symmetric(1000.0, 5.0, 0.0, phi_j, 1);
    let delta = |lo: f64, hi: f64, points| AxisConfig::linspace(SweepAxis::Delta, lo, hi, points);
    let phase_axis = |axis| AxisConfig::linspace(axis, -PI, PI, 201);
    let config = match resolve_name(name)? {
        "fig2a" => recipe(
            "Markov regime, n = 1, phi_J = 0, phi_plus = pi/3; T_minus and T_c against delta and phi_minus",
            markov_n1(0.0),
            explicit(FRAC_PI_3, 0.0),
            Regime::Markov,
            delta(-4.0, 4.0, 401),
            Some(phase_axis(SweepAxis::PhiMinus)),
        ),
        "fig2c" => recipe(
            "Markov regime, n = 1, phi_J = 0, phi_minus = pi/3; T_minus and T_c against delta and phi_plus",
            markov_n1(0.0),
            explicit(0.0, FRAC_PI_3),
            Regime::Markov,
            delta(-4.0, 4.0, 401),
            Some(phase_axis(SweepAxis::PhiPlus)),
        ),
        "fig2e" => recipe(
            "Markov regime, n = 1, phi_minus = 0, phi_plus = pi; T_minus and T_c against delta and phi_J",
            markov_n1(0.0),
            explicit(PI, 0.0),
            Regime::Markov,
            delta(-4.0, 4.0, 401),
            Some(phase_axis(SweepAxis::PhiJ)),
        ),
        "fig2a-cut" => recipe(
            "Markov regime, n = 1, phi_J = 0, phi_plus = pi/3, phi_minus = pi: frequency-independent perfect transmission",
            markov_n1(0.0),
            explicit(FRAC_PI_3, PI),
            Regime::Markov,
            delta(-4.0, 4.0, 801),
            None,
        ),
        "fig3" => recipe(
            "Markov regime with physical phases, omega_e = 1015, g = 15, tau = 0.1 pi, phi_J = 0; spectra against delta and n",
            SystemParams::resonant_symmetric(1015.0, 15.0, 0.1 * PI, 0.0, 1),
            PhaseChoice::Physical,
            Regime::Markov,
            delta(-10.0, 10.0, 401),
            Some(photon_numbers(1..=25)),
        ),
        "fig4a" => recipe(
            "Markov regime with physical phases, omega_e = 1015, g = 5, tau = 0.1 pi, phi_J = pi/4; contrast against delta and n",
            SystemParams::resonant_symmetric(1015.0, 5.0, 0.1 * PI, FRAC_PI_4, 1),
            PhaseChoice::Physical,
            Regime::Markov,
            delta(-5.0, 5.0, 401),
            Some(photon_numbers(1..=20)),
        ),
        "fig4" => recipe(
            "Markov regime with physical phases, omega_e = 1015, g = 5, tau = 0.1 pi, phi_J = pi/2; contrast against delta and n",
            SystemParams::resonant_symmetric(1015.0, 5.0, 0.1 * PI, FRAC_PI_2, 1),
            PhaseChoice::Physical,
            Regime::Markov,
            delta(-5.0, 5.0, 401),
            Some(photon_numbers(1..=20)),
        ),
        "fig5a" => recipe(
            "Retarded regime, n = 1, tau = pi, phi_minus = 0, phi_plus = pi; T_c and I_2 against delta and phi_J",
            SystemParams::resonant_symmetric(1000.0, 5.0, PI, 0.0, 1),
            explicit(PI, 0.0),
            Regime::Exact,
            delta(-3.0, 3.0, 601),
            Some(phase_axis(SweepAxis::PhiJ)),
        ),
        "fig5c" => recipe(
            "Retarded regime, n = 1, tau = pi, phi_minus = 0, phi_plus = pi/2; T_c and I_2 against delta and phi_J",
            SystemParams::resonant_symmetric(1000.0, 5.0, PI, 0.0, 1),
            explicit(FRAC_PI_2, 0.0),
            Regime::Exact,
            delta(-3.0, 3.0, 601),
            Some(phase_axis(SweepAxis::PhiJ)),
        ),
        "fig5a-cut" => recipe(
            "Retarded regime, n = 1, tau = pi, phi_J = 0, phi_minus = 0, phi_plus = pi: conversion zeros at delta tau = m pi",
            SystemParams::resonant_symmetric(1000.0, 5.0, PI, 0.0, 1),
            explicit(PI, 0.0),
            Regime::Exact,
            delta(-4.0, 4.0, 801),
            None,
        ),
        "fig6" => recipe(
            "Retarded regime with physical phases, omega_e = 995.5, g = 5.5, tau = pi, phi_J = pi/2; contrast against delta and n",
            SystemParams::resonant_symmetric(995.5, 5.5, PI, FRAC_PI_2, 1),
            PhaseChoice::Physical,
            Regime::Exact,
            delta(-3.0, 3.0, 601),
            Some(photon_numbers(1..=20)),
        ),
        _ => return None,
    };
    Some(config)
}
