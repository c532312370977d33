//! Physical parameters of the giant-atom/resonator system and the quantities
//! every scattering formula consumes: dressed levels, damping rates and the
//! phases accumulated between the two coupling points.
//!
//! Frequencies, rates and inverse times share one unit. The presets and
//! figure recipes use the total waveguide decay rate Γ as that unit, so
//! `SystemParams::resonant_symmetric` builds couplings with Γ = 1.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("dressed mixing angle undefined for n = {n}: g = 0 and omega_f - omega_c = 0")]
    DegenerateDressing { n: u32 },
    #[error("dressed levels require n >= 1 (n = 0 is the bare two-level case)")]
    ZeroPhotonNumber,
}

fn invalid(name: &'static str, reason: impl Into<String>) -> ModelError {
    ModelError::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

/// One scattering problem: atom, resonator, waveguide couplings and geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemParams {
    /// |g> <-> |e> splitting.
    pub omega_e: f64,
    /// |g> <-> |f> splitting.
    pub omega_f: f64,
    /// Resonator frequency.
    pub omega_c: f64,
    /// Atom-resonator coupling, taken real and non-negative.
    pub g: f64,
    pub j1_mag: f64,
    pub j2_mag: f64,
    /// Phase of the coupling at x = -d/2.
    pub phi1: f64,
    /// Phase of the coupling at x = +d/2.
    pub phi2: f64,
    /// Group velocity.
    pub v: f64,
    /// Travel time d/v between the coupling points.
    pub tau: f64,
    /// Photon number in the resonator.
    pub n: u32,
}

impl SystemParams {
    /// Resonator on resonance with |g> <-> |f>, equal coupling magnitudes and
    /// Γ = 1. This is the configuration behind every figure recipe.
    pub fn resonant_symmetric(omega_e: f64, g: f64, tau: f64, phi_j: f64, n: u32) -> Self {
        Self {
            omega_e,
            omega_f: 0.0,
            omega_c: 0.0,
            g,
            j1_mag: FRAC_1_SQRT_2,
            j2_mag: FRAC_1_SQRT_2,
            phi1: 0.0,
            phi2: phi_j,
            v: 1.0,
            tau,
            n,
        }
    }

    pub fn with_n(mut self, n: u32) -> Self {
        self.n = n;
        self
    }

    /// Sets φ_J by moving the second coupling phase.
    pub fn with_phi_j(mut self, phi_j: f64) -> Self {
        self.phi2 = self.phi1 + phi_j;
        self
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    /// Γ = (|J₁|² + |J₂|²)/v.
    pub fn gamma(&self) -> f64 {
        (self.j1_mag * self.j1_mag + self.j2_mag * self.j2_mag) / self.v
    }

    pub fn omega_fc(&self) -> f64 {
        self.omega_f - self.omega_c
    }

    pub fn phi_j(&self) -> f64 {
        self.phi2 - self.phi1
    }

    pub fn j1(&self) -> Complex64 {
        Complex64::from_polar(self.j1_mag, self.phi1)
    }

    pub fn j2(&self) -> Complex64 {
        Complex64::from_polar(self.j2_mag, self.phi2)
    }

    /// Checks every field invariant needed before a scattering evaluation.
    pub fn validate(&self) -> Result<(), ModelError> {
        let finite = [
            ("omega_e", self.omega_e),
            ("omega_f", self.omega_f),
            ("omega_c", self.omega_c),
            ("g", self.g),
            ("j1_mag", self.j1_mag),
            ("j2_mag", self.j2_mag),
            ("phi1", self.phi1),
            ("phi2", self.phi2),
            ("v", self.v),
            ("tau", self.tau),
        ];
        for (name, value) in finite {
            if !value.is_finite() {
                return Err(invalid(name, format!("must be finite, got {value}")));
            }
        }
        if self.g < 0.0 {
            return Err(invalid("g", "must be >= 0"));
        }
        if self.j1_mag < 0.0 || self.j2_mag < 0.0 {
            return Err(invalid("j1_mag/j2_mag", "coupling magnitudes must be >= 0"));
        }
        if self.v <= 0.0 {
            return Err(invalid("v", "group velocity must be > 0"));
        }
        if self.tau < 0.0 {
            return Err(invalid("tau", "delay must be >= 0"));
        }
        if !(self.gamma() > 0.0) {
            return Err(invalid("j1_mag/j2_mag", "total decay rate must be > 0"));
        }
        if self.n >= 1 && self.g == 0.0 && self.omega_fc() == 0.0 {
            return Err(ModelError::DegenerateDressing { n: self.n });
        }
        Ok(())
    }
}

/// Dressed states |n±> of the atom-resonator block in the n-excitation manifold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedLevel {
    pub n: u32,
    /// Mixing angle in [0, π]; π/2 on resonance.
    pub theta: f64,
    pub nu_plus: f64,
    pub nu_minus: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    sin_half: f64,
    cos_half: f64,
}

impl DressedLevel {
    /// sin(θₙ/2): overlap of |n+> with |g,n>.
    pub fn sin_half(&self) -> f64 {
        self.sin_half
    }

    /// cos(θₙ/2): overlap of |n-> with -|g,n>.
    pub fn cos_half(&self) -> f64 {
        self.cos_half
    }

    /// Zero-photon manifold: |g,0> is the only lower state, so the plus
    /// channel is decoupled (θ = 0) and no conversion is possible.
    pub fn vacuum(params: &SystemParams) -> Self {
        let omega_fc = params.omega_fc();
        Self {
            n: 0,
            theta: 0.0,
            nu_plus: omega_fc,
            nu_minus: 0.0,
            lambda_plus: omega_fc,
            lambda_minus: 0.0,
            sin_half: 0.0,
            cos_half: 1.0,
        }
    }

    /// Dressed level for any n, falling back to [`DressedLevel::vacuum`] at n = 0.
    pub fn for_photon_number(params: &SystemParams, n: u32) -> Result<Self, ModelError> {
        if n == 0 {
            Ok(Self::vacuum(params))
        } else {
            dressed_levels(params, n)
        }
    }
}

/// Eigen-decomposition of the 2x2 block [[0, √n g], [√n g, ω_fc]] spanned by
/// |g,n> and |f,n-1>.
pub fn dressed_levels(params: &SystemParams, n: u32) -> Result<DressedLevel, ModelError> {
    if n == 0 {
        return Err(ModelError::ZeroPhotonNumber);
    }
    let omega_fc = params.omega_fc();
    let g = params.g;
    if g == 0.0 && omega_fc == 0.0 {
        return Err(ModelError::DegenerateDressing { n });
    }
    let coupling = (n as f64).sqrt() * g;
    let product = -(coupling * coupling);
    let root = omega_fc.hypot(2.0 * coupling);
    // The larger-magnitude root is formed without cancellation, the other
    // from the product of roots.
    let (nu_plus, nu_minus) = if omega_fc >= 0.0 {
        let upper = 0.5 * (omega_fc + root);
        (upper, product / upper + 0.0)
    } else {
        let lower = 0.5 * (omega_fc - root);
        (product / lower + 0.0, lower)
    };
    let theta = (2.0 * coupling).atan2(omega_fc);
    let sin_half = (-nu_minus / root).max(0.0).sqrt();
    let cos_half = (nu_plus / root).max(0.0).sqrt();
    let n_omega_c = n as f64 * params.omega_c;
    Ok(DressedLevel {
        n,
        theta,
        nu_plus,
        nu_minus,
        lambda_plus: n_omega_c + nu_plus,
        lambda_minus: n_omega_c + nu_minus,
        sin_half,
        cos_half,
    })
}

/// Dressed couplings J_{i±}ⁿ = J_i · {sin, cos}(θₙ/2), with the group velocity
/// they are divided by.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedCouplings {
    pub j1_plus: Complex64,
    pub j2_plus: Complex64,
    pub j1_minus: Complex64,
    pub j2_minus: Complex64,
    pub v: f64,
}

/// Local (Γ±ⁿ) and nonlocal (γ±ⁿ) damping rates of |e> into the n± channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelRates {
    pub gamma_total: f64,
    pub gamma_e_plus: f64,
    pub gamma_e_minus: f64,
    pub gamma_nl_plus: f64,
    pub gamma_nl_minus: f64,
    pub phi_j: f64,
    pub couplings: DressedCouplings,
}

pub fn channel_rates(params: &SystemParams, level: &DressedLevel) -> ChannelRates {
    let sin2 = level.sin_half * level.sin_half;
    let cos2 = level.cos_half * level.cos_half;
    let gamma_total = params.gamma();
    let phi_j = params.phi_j();
    let nonlocal = 2.0 * params.j1_mag * params.j2_mag / params.v * phi_j.cos();
    let (j1, j2) = (params.j1(), params.j2());
    ChannelRates {
        gamma_total,
        gamma_e_plus: gamma_total * sin2,
        gamma_e_minus: gamma_total * cos2,
        gamma_nl_plus: nonlocal * sin2,
        gamma_nl_minus: nonlocal * cos2,
        phi_j,
        couplings: DressedCouplings {
            j1_plus: j1 * level.sin_half,
            j2_plus: j2 * level.sin_half,
            j1_minus: j1 * level.cos_half,
            j2_minus: j2 * level.cos_half,
            v: params.v,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseMode {
    /// Derived from ω_e, ν±ⁿ and τ.
    Physical,
    /// Supplied directly, independent of the other parameters.
    Explicit,
}

/// Accumulated phases φ±ⁿ and φₙ. Values are kept unreduced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSet {
    pub phi_plus: f64,
    pub phi_minus: f64,
    pub phi_n: f64,
    pub mode: PhaseMode,
}

impl PhaseSet {
    /// Free phases; φₙ defaults to φ₋ − φ₊.
    pub fn explicit(phi_plus: f64, phi_minus: f64) -> Self {
        Self {
            phi_plus,
            phi_minus,
            phi_n: phi_minus - phi_plus,
            mode: PhaseMode::Explicit,
        }
    }

    pub fn with_phi_n(mut self, phi_n: f64) -> Self {
        self.phi_n = phi_n;
        self
    }

    /// The same phases wrapped into (-π, π].
    pub fn reduced(&self) -> Self {
        Self {
            phi_plus: wrap_phase(self.phi_plus),
            phi_minus: wrap_phase(self.phi_minus),
            phi_n: wrap_phase(self.phi_n),
            mode: self.mode,
        }
    }
}

pub fn phases(params: &SystemParams, level: &DressedLevel) -> PhaseSet {
    let tau = params.tau;
    let phi_plus = (params.omega_e - level.nu_plus) * tau;
    let phi_minus = (params.omega_e - level.nu_minus) * tau;
    // Taken as the difference so that φ₋ − φ₊ = φₙ holds bit for bit.
    PhaseSet {
        phi_plus,
        phi_minus,
        phi_n: phi_minus - phi_plus,
        mode: PhaseMode::Physical,
    }
}

/// Wraps an angle into (-π, π].
pub fn wrap_phase(phase: f64) -> f64 {
    let wrapped = phase.rem_euclid(TAU);
    if wrapped > PI {
        wrapped - TAU
    } else {
        wrapped
    }
}
