//! Single-photon scattering off a V-type giant atom that touches a 1D
//! waveguide at two points and is dressed by an n-photon resonator.
//!
//! * [`model`]: parameters, dressed levels, damping rates, accumulated phases.
//! * [`scattering`]: closed-form amplitudes (exact and Markov), Lamb shift,
//!   effective decay and nonreciprocity contrasts.
//! * [`oracle`]: the same amplitudes from a brute-force boundary-matching solve.
//! * [`analysis`]: conversion zeros, contrast extrema and parameter sweeps.
//! * [`cli`]: run configurations, figure presets and table output behind the
//!   `gascatter` binary.

// `!(x > 0.0)` is how NaN gets rejected along with the rest.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod model;
pub mod oracle;
pub mod scattering;
pub mod search;
pub mod verify;

pub use model::{
    channel_rates, dressed_levels, phases, ChannelRates, DressedLevel, ModelError, PhaseMode,
    PhaseSet, SystemParams,
};
pub use oracle::{solve_boundary_matching, solve_with_phases, PiecewiseWaveSolution};
pub use scattering::{
    contrasts, scatter_exact, scatter_markov, ContrastResult, DetuningGrid, Direction, Regime,
    ScatterError, ScatteringResult, Subspace,
};
