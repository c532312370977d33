//! Closed-form single-photon scattering amplitudes for a photon entering in
//! the n₋ channel, in the exact (retarded) and Markov regimes.
//!
//! The Markov amplitudes are the exact ones with every e^{±iΔτ} factor set to
//! one; both regimes therefore share a single kernel that receives the
//! detuning-dependent phase `Δτ` (exact) or `0` (Markov).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    channel_rates, phases, ChannelRates, DressedLevel, ModelError, PhaseSet, SystemParams,
};

/// Denominators smaller than this multiple of Γ are reported as poles. Near a
/// true bound state both numerator and denominator carry O(1e-16) rounding,
/// so anything below this threshold is numerically meaningless.
pub const POLE_TOLERANCE: f64 = 1e-10;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatterError {
    #[error("scattering pole at delta = {delta}: |denominator| = {magnitude:e}")]
    Pole { delta: f64, magnitude: f64 },
    #[error("mismatched contrast inputs: {0}")]
    MismatchedContext(String),
    #[error("invalid detuning grid: {0}")]
    InvalidGrid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    #[serde(alias = "left_incident")]
    Left,
    #[serde(alias = "right_incident")]
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Exact,
    Markov,
}

/// Strictly increasing, finite detunings Δₖⁿ from the |e> <-> |n₋> transition.
#[derive(Debug, Clone, PartialEq)]
pub struct DetuningGrid {
    values: Vec<f64>,
}

impl DetuningGrid {
    pub fn new(values: Vec<f64>) -> Result<Self, ScatterError> {
        if values.is_empty() {
            return Err(ScatterError::InvalidGrid("grid is empty".into()));
        }
        if let Some(bad) = values.iter().find(|x| !x.is_finite()) {
            return Err(ScatterError::InvalidGrid(format!("non-finite value {bad}")));
        }
        if values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(ScatterError::InvalidGrid(
                "values must be strictly increasing".into(),
            ));
        }
        Ok(Self { values })
    }

    /// `points` evenly spaced values from `start` to `stop` inclusive.
    pub fn linspace(start: f64, stop: f64, points: usize) -> Result<Self, ScatterError> {
        Self::new(linspace(start, stop, points))
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (points - 1) as f64;
            (0..points)
                .map(|i| if i + 1 == points { stop } else { start + step * i as f64 })
                .collect()
        }
    }
}

/// Amplitudes for one incidence direction at one detuning.
///
/// For right incidence the fields hold the tilde amplitudes: `t_minus` is the
/// elastic wave leaving to the left, `r_minus` the one returning to the right.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    pub t_minus: Complex64,
    pub r_minus: Complex64,
    pub r_plus: Complex64,
    pub t_plus: Complex64,
    pub direction: Direction,
    pub regime: Regime,
    pub delta: f64,
}

impl ScatteringResult {
    pub fn transmittance(&self) -> f64 {
        self.t_minus.norm_sqr()
    }

    pub fn reflectance(&self) -> f64 {
        self.r_minus.norm_sqr()
    }

    /// Probability that the photon leaves in the n₊ channel.
    pub fn conversion(&self) -> f64 {
        self.r_plus.norm_sqr() + self.t_plus.norm_sqr()
    }

    /// T₋ + R₋ + T_c − 1; zero for the lossless system.
    pub fn flux_defect(&self) -> f64 {
        self.transmittance() + self.reflectance() + self.conversion() - 1.0
    }
}

/// Transmission contrast I₁ = T₋ − T̃₋ and conversion contrast I₂ = T_c − T̃_c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContrastResult {
    pub i1: f64,
    pub i2: f64,
}

/// Closed forms including the retardation factors e^{iΔτ}.
pub fn scatter_exact(
    rates: &ChannelRates,
    phases: &PhaseSet,
    tau: f64,
    delta: f64,
    direction: Direction,
) -> Result<ScatteringResult, ScatterError> {
    amplitudes(rates, phases, delta * tau, delta, direction, Regime::Exact)
}

/// Markov closed forms: no Δ dependence beyond the explicit Δ terms.
pub fn scatter_markov(
    rates: &ChannelRates,
    phases: &PhaseSet,
    delta: f64,
    direction: Direction,
) -> Result<ScatteringResult, ScatterError> {
    amplitudes(rates, phases, 0.0, delta, direction, Regime::Markov)
}

fn amplitudes(
    rates: &ChannelRates,
    phases: &PhaseSet,
    retardation: f64,
    delta: f64,
    direction: Direction,
    regime: Regime,
) -> Result<ScatteringResult, ScatterError> {
    let c = &rates.couplings;
    let v = c.v;
    let arg_plus = retardation + phases.phi_plus;
    let arg_minus = retardation + phases.phi_minus;
    let e_plus = Complex64::cis(arg_plus);
    let e_minus = Complex64::cis(arg_minus);

    let denominator = delta
        + I * (rates.gamma_e_plus + rates.gamma_nl_plus * e_plus)
        + I * (rates.gamma_e_minus + rates.gamma_nl_minus * e_minus);
    let magnitude = denominator.norm();
    if !(magnitude >= POLE_TOLERANCE * rates.gamma_total) {
        return Err(ScatterError::Pole { delta, magnitude });
    }

    let j1m_sq = c.j1_minus.norm_sqr();
    let j2m_sq = c.j2_minus.norm_sqr();
    let local_plus = I * rates.gamma_e_plus + I * rates.gamma_nl_plus * e_plus;

    let (t_minus, r_minus, r_plus, t_plus) = match direction {
        Direction::Left => {
            let t = delta - 2.0 * c.j1_minus.conj() * c.j2_minus / v * arg_minus.sin()
                + local_plus;
            let r = -(I * rates.gamma_nl_minus
                + I / v * (j1m_sq * e_minus.inv() + j2m_sq * e_minus));
            let absorb = c.j1_minus.conj() + c.j2_minus.conj() * e_minus;
            let prefactor = I * Complex64::cis(-phases.phi_n) / v;
            let rp = prefactor * (c.j1_plus * e_plus.inv() + c.j2_plus) * absorb;
            let tp = prefactor * (c.j1_plus + c.j2_plus * e_plus.inv()) * absorb;
            (t, r, rp, tp)
        }
        Direction::Right => {
            let t = delta - 2.0 * c.j1_minus * c.j2_minus.conj() / v * arg_minus.sin()
                + local_plus;
            let r = -(I * rates.gamma_nl_minus
                + I * j1m_sq / v * e_minus
                + I * j2m_sq / v * e_minus.inv());
            let absorb = c.j1_minus.conj() + c.j2_minus.conj() * e_minus.inv();
            let prefactor = I * Complex64::cis(phases.phi_n) / v;
            let rp = prefactor * (c.j1_plus * e_plus + c.j2_plus) * absorb;
            let tp = prefactor * (c.j1_plus + c.j2_plus * e_plus) * absorb;
            (t, r, rp, tp)
        }
    };

    Ok(ScatteringResult {
        t_minus: t_minus / denominator,
        r_minus: r_minus / denominator,
        r_plus: r_plus / denominator,
        t_plus: t_plus / denominator,
        direction,
        regime,
        delta,
    })
}

/// δₖⁿ = γ₊ sin(Δτ + φ₊) + γ₋ sin(Δτ + φ₋).
pub fn lamb_shift_exact(rates: &ChannelRates, phases: &PhaseSet, tau: f64, delta: f64) -> f64 {
    let shift = delta * tau;
    rates.gamma_nl_plus * (shift + phases.phi_plus).sin()
        + rates.gamma_nl_minus * (shift + phases.phi_minus).sin()
}

/// Γ̃ₖⁿ = Σ_α [Γ_α + γ_α cos(Δτ + φ_α)].
pub fn effective_decay_exact(
    rates: &ChannelRates,
    phases: &PhaseSet,
    tau: f64,
    delta: f64,
) -> f64 {
    let shift = delta * tau;
    rates.gamma_e_plus
        + rates.gamma_nl_plus * (shift + phases.phi_plus).cos()
        + rates.gamma_e_minus
        + rates.gamma_nl_minus * (shift + phases.phi_minus).cos()
}

pub fn markov_lamb_shift(rates: &ChannelRates, phases: &PhaseSet) -> f64 {
    rates.gamma_nl_plus * phases.phi_plus.sin() + rates.gamma_nl_minus * phases.phi_minus.sin()
}

pub fn markov_effective_decay(rates: &ChannelRates, phases: &PhaseSet) -> f64 {
    rates.gamma_e_plus
        + rates.gamma_nl_plus * phases.phi_plus.cos()
        + rates.gamma_e_minus
        + rates.gamma_nl_minus * phases.phi_minus.cos()
}

pub fn contrasts(
    left: &ScatteringResult,
    right: &ScatteringResult,
) -> Result<ContrastResult, ScatterError> {
    if left.direction != Direction::Left || right.direction != Direction::Right {
        return Err(ScatterError::MismatchedContext(
            "expected one left- and one right-incident result".into(),
        ));
    }
    if left.regime != right.regime {
        return Err(ScatterError::MismatchedContext(format!(
            "regimes differ ({:?} vs {:?})",
            left.regime, right.regime
        )));
    }
    if left.delta.to_bits() != right.delta.to_bits() {
        return Err(ScatterError::MismatchedContext(format!(
            "detunings differ ({} vs {})",
            left.delta, right.delta
        )));
    }
    Ok(ContrastResult {
        i1: left.transmittance() - right.transmittance(),
        i2: left.conversion() - right.conversion(),
    })
}

/// Everything needed to scatter in the (n+1)-excitation subspace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Subspace {
    pub level: DressedLevel,
    pub rates: ChannelRates,
    pub phases: PhaseSet,
    pub tau: f64,
}

impl Subspace {
    /// Phases derived from the parameters. `n = 0` gives the bare two-level atom.
    pub fn physical(params: &SystemParams) -> Result<Self, ModelError> {
        params.validate()?;
        let level = DressedLevel::for_photon_number(params, params.n)?;
        Ok(Self {
            level,
            rates: channel_rates(params, &level),
            phases: phases(params, &level),
            tau: params.tau,
        })
    }

    /// Phases supplied by the caller; ω_e and τ only matter through `tau`.
    pub fn explicit(params: &SystemParams, phases: PhaseSet) -> Result<Self, ModelError> {
        params.validate()?;
        let level = DressedLevel::for_photon_number(params, params.n)?;
        Ok(Self {
            level,
            rates: channel_rates(params, &level),
            phases,
            tau: params.tau,
        })
    }

    pub fn scatter(
        &self,
        delta: f64,
        direction: Direction,
        regime: Regime,
    ) -> Result<ScatteringResult, ScatterError> {
        match regime {
            Regime::Exact => scatter_exact(&self.rates, &self.phases, self.tau, delta, direction),
            Regime::Markov => scatter_markov(&self.rates, &self.phases, delta, direction),
        }
    }

    /// Left- and right-incident results at the same detuning.
    pub fn scatter_both(
        &self,
        delta: f64,
        regime: Regime,
    ) -> Result<(ScatteringResult, ScatteringResult), ScatterError> {
        Ok((
            self.scatter(delta, Direction::Left, regime)?,
            self.scatter(delta, Direction::Right, regime)?,
        ))
    }

    pub fn contrast(&self, delta: f64, regime: Regime) -> Result<ContrastResult, ScatterError> {
        let (left, right) = self.scatter_both(delta, regime)?;
        contrasts(&left, &right)
    }

    pub fn lamb_shift(&self, delta: f64, regime: Regime) -> f64 {
        match regime {
            Regime::Exact => lamb_shift_exact(&self.rates, &self.phases, self.tau, delta),
            Regime::Markov => markov_lamb_shift(&self.rates, &self.phases),
        }
    }

    pub fn effective_decay(&self, delta: f64, regime: Regime) -> f64 {
        match regime {
            Regime::Exact => effective_decay_exact(&self.rates, &self.phases, self.tau, delta),
            Regime::Markov => markov_effective_decay(&self.rates, &self.phases),
        }
    }
}
