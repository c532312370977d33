//! Parameter sweeps and the searches built on them: conversion zeros (bound
//! states in the continuum), contrast extrema and unity-efficiency conversion.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{ModelError, PhaseSet, SystemParams};
use crate::scattering::{Direction, Regime, ScatteringResult, Subspace};
use crate::search::{covering_grid, golden_section, local_optima, Goal};

/// T_c below this counts as a conversion zero.
pub const ZERO_THRESHOLD: f64 = 1e-10;
/// Final bracket width of a zero search, in units of Γ.
pub const ZERO_LOCATION_TOLERANCE: f64 = 1e-9;
/// Final bracket width of an extremum search, in units of Γ.
pub const EXTREMUM_TOLERANCE: f64 = 1e-7;
/// Extrema with |value| at or below this are treated as a flat zero line.
pub const EXTREMUM_FLOOR: f64 = 1e-10;
/// A zero is attributed to a channel when its phase condition holds to this
/// fraction of π.
pub const CLASSIFY_TOLERANCE: f64 = 1e-6;
/// Coarse samples per narrowest feature (min of Γ̃ and π/τ).
pub const SAMPLES_PER_FEATURE: f64 = 20.0;
/// Features narrower than this (in units of Γ) are not resolved.
pub const MIN_FEATURE_WIDTH: f64 = 1e-3;
pub const MAX_COARSE_POINTS: usize = 400_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid sweep: {0}")]
    InvalidSpec(String),
}

fn invalid(msg: impl Into<String>) -> AnalysisError {
    AnalysisError::InvalidSpec(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Delta,
    PhiJ,
    PhiPlus,
    PhiMinus,
    PhotonNumber,
}

impl SweepAxis {
    pub fn column_name(&self) -> &'static str {
        match self {
            SweepAxis::Delta => "delta",
            SweepAxis::PhiJ => "phi_J",
            SweepAxis::PhiPlus => "phi_plus",
            SweepAxis::PhiMinus => "phi_minus",
            SweepAxis::PhotonNumber => "n",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisGrid {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

impl AxisGrid {
    pub fn linspace(axis: SweepAxis, start: f64, stop: f64, points: usize) -> Self {
        Self {
            axis,
            values: crate::scattering::linspace(start, stop, points),
        }
    }

    pub fn photon_numbers(range: impl IntoIterator<Item = u32>) -> Self {
        Self {
            axis: SweepAxis::PhotonNumber,
            values: range.into_iter().map(f64::from).collect(),
        }
    }

    fn validate(&self) -> Result<(), AnalysisError> {
        let name = self.axis.column_name();
        if self.values.is_empty() {
            return Err(invalid(format!("{name} grid is empty")));
        }
        if self.values.iter().any(|x| !x.is_finite()) {
            return Err(invalid(format!("{name} grid has non-finite values")));
        }
        match self.axis {
            SweepAxis::PhotonNumber => {
                if self
                    .values
                    .iter()
                    .any(|&x| x < 0.0 || x.fract() != 0.0 || x > u32::MAX as f64)
                {
                    return Err(invalid("photon numbers must be integers >= 0"));
                }
            }
            SweepAxis::Delta if self.values.windows(2).any(|w| w[1] <= w[0]) => {
                return Err(invalid("delta grid must be strictly increasing"));
            }
            _ => {}
        }
        Ok(())
    }
}

/// How the accumulated phases are obtained at each sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum PhaseChoice {
    Physical,
    Explicit {
        phi_plus: f64,
        phi_minus: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        phi_n: Option<f64>,
    },
}

/// A grid over one or two axes on top of a base configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub params: SystemParams,
    pub phases: PhaseChoice,
    pub regime: Regime,
    /// Detuning used when no axis sweeps it.
    #[serde(default)]
    pub delta: f64,
    pub axis1: AxisGrid,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis2: Option<AxisGrid>,
    pub directions: Vec<Direction>,
}

/// A single evaluation point: parameters, phases and detuning.
#[derive(Debug, Clone, Copy)]
struct Base {
    params: SystemParams,
    phases: PhaseChoice,
    delta: f64,
}

impl Base {
    fn apply(&mut self, axis: SweepAxis, value: f64) {
        match axis {
            SweepAxis::Delta => self.delta = value,
            SweepAxis::PhiJ => self.params = self.params.with_phi_j(value),
            SweepAxis::PhotonNumber => self.params.n = value as u32,
            SweepAxis::PhiPlus => {
                if let PhaseChoice::Explicit { phi_plus, .. } = &mut self.phases {
                    *phi_plus = value;
                }
            }
            SweepAxis::PhiMinus => {
                if let PhaseChoice::Explicit { phi_minus, .. } = &mut self.phases {
                    *phi_minus = value;
                }
            }
        }
    }

    fn subspace(&self) -> Result<Subspace, ModelError> {
        match self.phases {
            PhaseChoice::Physical => Subspace::physical(&self.params),
            PhaseChoice::Explicit {
                phi_plus,
                phi_minus,
                phi_n,
            } => {
                let mut set = PhaseSet::explicit(phi_plus, phi_minus);
                if let Some(phi_n) = phi_n {
                    set = set.with_phi_n(phi_n);
                }
                Subspace::explicit(&self.params, set)
            }
        }
    }
}

impl SweepSpec {
    /// A Δ-only spec at fixed parameters with both incidence directions.
    pub fn delta_line(
        params: SystemParams,
        phases: PhaseChoice,
        regime: Regime,
        start: f64,
        stop: f64,
        points: usize,
    ) -> Self {
        Self {
            params,
            phases,
            regime,
            delta: 0.0,
            axis1: AxisGrid::linspace(SweepAxis::Delta, start, stop, points),
            axis2: None,
            directions: vec![Direction::Left, Direction::Right],
        }
    }

    pub fn with_axis2(mut self, axis: AxisGrid) -> Self {
        self.axis2 = Some(axis);
        self
    }

    pub fn axes(&self) -> Vec<&AxisGrid> {
        std::iter::once(&self.axis1).chain(self.axis2.as_ref()).collect()
    }

    pub fn validate(&self) -> Result<(), AnalysisError> {
        for grid in self.axes() {
            grid.validate()?;
            if matches!(grid.axis, SweepAxis::PhiPlus | SweepAxis::PhiMinus)
                && self.phases == PhaseChoice::Physical
            {
                return Err(invalid(format!(
                    "sweeping {} needs explicit phases",
                    grid.axis.column_name()
                )));
            }
        }
        if let Some(axis2) = &self.axis2 {
            if axis2.axis == self.axis1.axis {
                return Err(invalid("axis1 and axis2 sweep the same quantity"));
            }
        }
        if self.directions.is_empty() {
            return Err(invalid("no incidence direction selected"));
        }
        if !self.delta.is_finite() {
            return Err(invalid("delta must be finite"));
        }
        let mut params = self.params;
        if self.axes().iter().any(|g| g.axis == SweepAxis::PhotonNumber) {
            // Photon number is checked per point.
            params.n = 0;
        }
        params.validate()?;
        Ok(())
    }

    fn base(&self) -> Base {
        Base {
            params: self.params,
            phases: self.phases,
            delta: self.delta,
        }
    }

    fn has(&self, direction: Direction) -> bool {
        self.directions.contains(&direction)
    }

    /// One single-axis spec per value of axis 2 (or `self` when there is none).
    pub fn slices(&self) -> Vec<(Option<f64>, SweepSpec)> {
        match &self.axis2 {
            None => vec![(None, self.clone())],
            Some(axis2) => axis2
                .values
                .iter()
                .map(|&value| {
                    let mut base = self.base();
                    base.apply(axis2.axis, value);
                    let spec = SweepSpec {
                        params: base.params,
                        phases: base.phases,
                        delta: base.delta,
                        axis2: None,
                        ..self.clone()
                    };
                    (Some(value), spec)
                })
                .collect(),
        }
    }

    /// The subspace and Δ range of a single-Δ-axis spec.
    fn delta_axis(&self) -> Result<(Subspace, f64, f64), AnalysisError> {
        self.validate()?;
        if self.axis1.axis != SweepAxis::Delta || self.axis2.is_some() {
            return Err(invalid("expected a single delta axis"));
        }
        let sub = self.base().subspace()?;
        let values = &self.axis1.values;
        Ok((sub, values[0], values[values.len() - 1]))
    }
}

/// Probabilities and derived quantities at one sweep point. Columns for a
/// direction that was not requested, or that hit a pole, are NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSpectrum {
    pub t_minus: f64,
    pub r_minus: f64,
    pub t_c: f64,
    pub t_minus_right: f64,
    pub r_minus_right: f64,
    pub t_c_right: f64,
    pub i1: f64,
    pub i2: f64,
    pub lamb_shift: f64,
    pub eff_decay: f64,
    pub pole: bool,
}

impl PointSpectrum {
    pub const COLUMNS: [&'static str; 10] = [
        "T_minus",
        "R_minus",
        "T_c",
        "Ttilde_minus",
        "Rtilde_minus",
        "Ttilde_c",
        "I1",
        "I2",
        "lamb_shift",
        "eff_decay",
    ];

    pub fn values(&self) -> [f64; 10] {
        [
            self.t_minus,
            self.r_minus,
            self.t_c,
            self.t_minus_right,
            self.r_minus_right,
            self.t_c_right,
            self.i1,
            self.i2,
            self.lamb_shift,
            self.eff_decay,
        ]
    }

    pub fn evaluate(sub: &Subspace, delta: f64, regime: Regime, directions: &[Direction]) -> Self {
        let mut pole = false;
        let mut probe = |direction: Direction| -> Option<ScatteringResult> {
            if !directions.contains(&direction) {
                return None;
            }
            let result = sub.scatter(delta, direction, regime).ok();
            pole |= result.is_none();
            result
        };
        let left = probe(Direction::Left);
        let right = probe(Direction::Right);
        let triple = |r: &Option<ScatteringResult>| match r {
            Some(r) => (r.transmittance(), r.reflectance(), r.conversion()),
            None => (f64::NAN, f64::NAN, f64::NAN),
        };
        let (t, r, c) = triple(&left);
        let (tt, rt, ct) = triple(&right);
        Self {
            t_minus: t,
            r_minus: r,
            t_c: c,
            t_minus_right: tt,
            r_minus_right: rt,
            t_c_right: ct,
            i1: t - tt,
            i2: c - ct,
            lamb_shift: sub.lamb_shift(delta, regime),
            eff_decay: sub.effective_decay(delta, regime),
            pole,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRow {
    /// Axis values in axis order.
    pub coords: Vec<f64>,
    pub spectrum: PointSpectrum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub axes: Vec<SweepAxis>,
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumTable {
    /// Axis names, the spectrum columns, then the pole flag.
    pub fn columns(&self) -> Vec<String> {
        self.axes
            .iter()
            .map(|a| a.column_name().to_string())
            .chain(PointSpectrum::COLUMNS.iter().map(|c| c.to_string()))
            .chain(std::iter::once("pole".to_string()))
            .collect()
    }
}

/// Dense evaluation of every grid point. Rows run over axis 1 fastest; the
/// order never depends on scheduling.
pub fn sweep(spec: &SweepSpec) -> Result<SpectrumTable, AnalysisError> {
    spec.validate()?;
    let axis1 = &spec.axis1;
    let outer: Vec<Option<f64>> = match &spec.axis2 {
        Some(axis2) => axis2.values.iter().copied().map(Some).collect(),
        None => vec![None],
    };
    let points: Vec<(f64, Option<f64>)> = outer
        .iter()
        .flat_map(|&y| axis1.values.iter().map(move |&x| (x, y)))
        .collect();
    let rows: Vec<Result<SpectrumRow, ModelError>> = points
        .par_iter()
        .map(|&(x, y)| {
            let mut base = spec.base();
            base.apply(axis1.axis, x);
            let mut coords = vec![x];
            if let (Some(axis2), Some(y)) = (&spec.axis2, y) {
                base.apply(axis2.axis, y);
                coords.push(y);
            }
            let sub = base.subspace()?;
            Ok(SpectrumRow {
                coords,
                spectrum: PointSpectrum::evaluate(&sub, base.delta, spec.regime, &spec.directions),
            })
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(SpectrumTable {
        axes: spec.axes().iter().map(|g| g.axis).collect(),
        rows,
    })
}

/// Quantity tracked by an extremum search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    Transmittance(Direction),
    Reflectance(Direction),
    Conversion(Direction),
    TransmissionContrast,
    ConversionContrast,
}

impl Observable {
    fn needs(&self, direction: Direction) -> bool {
        match self {
            Observable::Transmittance(d) | Observable::Reflectance(d) | Observable::Conversion(d) => {
                *d == direction
            }
            _ => true,
        }
    }

    /// NaN at poles.
    pub fn evaluate(&self, sub: &Subspace, delta: f64, regime: Regime) -> f64 {
        let get = |d: Direction| sub.scatter(delta, d, regime).ok();
        let value = match self {
            Observable::Transmittance(d) => get(*d).map(|r| r.transmittance()),
            Observable::Reflectance(d) => get(*d).map(|r| r.reflectance()),
            Observable::Conversion(d) => get(*d).map(|r| r.conversion()),
            Observable::TransmissionContrast => sub.contrast(delta, regime).ok().map(|c| c.i1),
            Observable::ConversionContrast => sub.contrast(delta, regime).ok().map(|c| c.i2),
        };
        value.unwrap_or(f64::NAN)
    }
}

/// Coarse sampling step: a fraction of the narrowest spectral feature, set by
/// the effective decay rate and, with retardation, by the period 2π/τ.
fn coarse_step(sub: &Subspace, regime: Regime, start: f64, stop: f64) -> f64 {
    let gamma = sub.rates.gamma_total;
    let probe = covering_grid(start, stop, gamma / 10.0, 20_001);
    let narrowest_decay = probe
        .iter()
        .map(|&d| sub.effective_decay(d, regime))
        .fold(f64::INFINITY, f64::min);
    let mut width = narrowest_decay.max(MIN_FEATURE_WIDTH * gamma);
    if regime == Regime::Exact && sub.tau > 0.0 {
        width = width.min(PI / sub.tau);
    }
    width / SAMPLES_PER_FEATURE
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremumReport {
    pub delta: f64,
    pub value: f64,
    pub kind: ExtremumKind,
    pub bracket_width: f64,
}

/// All interior local extrema of `observable` over the Δ range of a
/// single-Δ-axis spec, sorted by position.
pub fn find_extrema(
    spec: &SweepSpec,
    observable: Observable,
) -> Result<Vec<ExtremumReport>, AnalysisError> {
    let (sub, start, stop) = spec.delta_axis()?;
    for direction in [Direction::Left, Direction::Right] {
        if observable.needs(direction) && !spec.has(direction) {
            return Err(invalid(format!("{observable:?} needs {direction:?} incidence")));
        }
    }
    let regime = spec.regime;
    let f = |d: f64| observable.evaluate(&sub, d, regime);
    let grid = covering_grid(start, stop, coarse_step(&sub, regime, start, stop), MAX_COARSE_POINTS);
    let samples: Vec<f64> = grid.iter().map(|&d| f(d)).collect();

    let mut reports = Vec::new();
    for (goal, kind) in [(Goal::Maximize, ExtremumKind::Max), (Goal::Minimize, ExtremumKind::Min)] {
        for i in local_optima(&samples, goal) {
            let refined = golden_section(f, grid[i - 1], grid[i + 1], EXTREMUM_TOLERANCE, goal);
            if refined.value.abs() > EXTREMUM_FLOOR {
                reports.push(ExtremumReport {
                    delta: refined.x,
                    value: refined.value,
                    kind,
                    bracket_width: refined.width,
                });
            }
        }
    }
    reports.sort_by(|a, b| a.delta.total_cmp(&b.delta));
    Ok(reports)
}

/// Local extrema of the conversion contrast I₂(Δ).
pub fn find_contrast_extrema(spec: &SweepSpec) -> Result<Vec<ExtremumReport>, AnalysisError> {
    find_extrema(spec, Observable::ConversionContrast)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    /// Emission on |e> <-> |n₋> is dark at this Δ.
    StaticZero,
    /// Emission on |e> <-> |n₊> is dark at this Δ.
    MovingZero,
    /// Conversion vanishes on the whole Δ line.
    MarkovChannelSuppression,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmissionChannel {
    Minus,
    Plus,
}

/// The interference line a zero sits on: Δτ + φ_α ± φ_J = (2m + 1)π, with the
/// sign of φ_J fixed by channel and incidence direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroCondition {
    pub channel: EmissionChannel,
    /// (Δτ + φ_α)/π, unreduced (Δτ omitted in the Markov regime).
    pub phase_over_pi: f64,
    pub line_index: i64,
    /// Distance of the condition from exact, in units of π.
    pub mismatch: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroReport {
    pub direction: Direction,
    pub kind: ZeroKind,
    /// None for whole-line suppression.
    pub location: Option<f64>,
    pub condition: ZeroCondition,
    /// T_c at the zero (largest sampled T_c for whole-line suppression).
    pub residual: f64,
    pub bracket_width: f64,
}

/// Phase conditions for dark emission into each channel.
fn zero_conditions(
    sub: &Subspace,
    delta: f64,
    regime: Regime,
    direction: Direction,
) -> (ZeroCondition, ZeroCondition) {
    let retardation = match regime {
        Regime::Exact => delta * sub.tau,
        Regime::Markov => 0.0,
    };
    let phi_j = sub.rates.phi_j;
    let line = |channel: EmissionChannel, phase: f64, shifts: &[f64]| {
        // (phase + shift - π)/(2π) must be an integer for every shift.
        let turns: Vec<f64> = shifts.iter().map(|s| (phase + s - PI) / (2.0 * PI)).collect();
        let mismatch = turns
            .iter()
            .map(|t| 2.0 * (t - t.round()).abs())
            .fold(0.0, f64::max);
        ZeroCondition {
            channel,
            phase_over_pi: phase / PI,
            line_index: turns[0].round() as i64,
            mismatch,
        }
    };
    let minus_shift = match direction {
        Direction::Left => -phi_j,
        Direction::Right => phi_j,
    };
    // Both plus-channel amplitudes must vanish, one with each sign of φ_J.
    (
        line(EmissionChannel::Minus, retardation + sub.phases.phi_minus, &[minus_shift]),
        line(EmissionChannel::Plus, retardation + sub.phases.phi_plus, &[-phi_j, phi_j]),
    )
}

/// All Δ in the spec's range where T_c vanishes, per requested direction.
///
/// Zeros are double roots of T_c ≥ 0, so they are bracketed as local minima of
/// √T_c on a coarse grid and refined by golden-section search, which resolves
/// the resulting kink to ZERO_LOCATION_TOLERANCE.
pub fn find_conversion_zeros(spec: &SweepSpec) -> Result<Vec<ZeroReport>, AnalysisError> {
    let (sub, start, stop) = spec.delta_axis()?;
    let regime = spec.regime;
    let grid = covering_grid(start, stop, coarse_step(&sub, regime, start, stop), MAX_COARSE_POINTS);
    let mut reports = Vec::new();
    for direction in [Direction::Left, Direction::Right] {
        if !spec.has(direction) {
            continue;
        }
        let conversion = |d: f64| {
            sub.scatter(d, direction, regime)
                .map(|r| r.conversion())
                .unwrap_or(f64::NAN)
        };
        let samples: Vec<f64> = grid.iter().map(|&d| conversion(d)).collect();

        let finite_max = samples
            .iter()
            .copied()
            .filter(|x| x.is_finite())
            .fold(f64::NEG_INFINITY, f64::max);
        if finite_max < ZERO_THRESHOLD {
            let (minus, plus) = zero_conditions(&sub, start, regime, direction);
            let condition = if sub.level.sin_half() == 0.0 || plus.mismatch < minus.mismatch {
                plus
            } else {
                minus
            };
            reports.push(ZeroReport {
                direction,
                kind: ZeroKind::MarkovChannelSuppression,
                location: None,
                condition,
                residual: finite_max.max(0.0),
                bracket_width: stop - start,
            });
            continue;
        }

        let amplitude: Vec<f64> = samples.iter().map(|x| x.sqrt()).collect();
        let mut brackets: Vec<(f64, f64)> = local_optima(&amplitude, Goal::Minimize)
            .into_iter()
            .map(|i| (grid[i - 1], grid[i + 1]))
            .collect();
        let last = grid.len() - 1;
        if last >= 1 && amplitude[0] <= amplitude[1] {
            brackets.insert(0, (grid[0], grid[1]));
        }
        if last >= 1 && amplitude[last] <= amplitude[last - 1] {
            brackets.push((grid[last - 1], grid[last]));
        }

        let mut found: Vec<ZeroReport> = Vec::new();
        for (a, b) in brackets {
            let refined = golden_section(
                |d| conversion(d).sqrt(),
                a,
                b,
                ZERO_LOCATION_TOLERANCE * 1e-2,
                Goal::Minimize,
            );
            let residual = conversion(refined.x);
            if !(residual < ZERO_THRESHOLD) {
                continue;
            }
            if found
                .last()
                .and_then(|z| z.location)
                .is_some_and(|x| (x - refined.x).abs() < 1e3 * ZERO_LOCATION_TOLERANCE)
            {
                continue;
            }
            let (minus, plus) = zero_conditions(&sub, refined.x, regime, direction);
            let (kind, condition) = if minus.mismatch <= plus.mismatch {
                (ZeroKind::StaticZero, minus)
            } else {
                (ZeroKind::MovingZero, plus)
            };
            found.push(ZeroReport {
                direction,
                kind,
                location: Some(refined.x),
                condition,
                residual,
                bracket_width: refined.width,
            });
        }
        reports.extend(found);
    }
    Ok(reports)
}

/// Grid over photon number and φ_J for unity-efficiency conversion.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitySearch {
    /// Base parameters; `n` and φ_J are overwritten per grid point.
    pub params: SystemParams,
    pub phases: PhaseChoice,
    pub regime: Regime,
    pub photon_numbers: Vec<u32>,
    pub phi_j_values: Vec<f64>,
    pub delta_min: f64,
    pub delta_max: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnityPoint {
    pub n: u32,
    pub phi_j: f64,
    pub delta: f64,
    pub i2: f64,
}

/// Every refined I₂ extremum with |I₂| >= threshold, largest |I₂| first.
pub fn find_unity_conversion(search: &UnitySearch) -> Result<Vec<UnityPoint>, AnalysisError> {
    if !(search.threshold > 0.0) {
        return Err(invalid("threshold must be positive"));
    }
    if !(search.delta_max > search.delta_min) {
        return Err(invalid("delta range is empty"));
    }
    let tasks: Vec<(u32, f64)> = search
        .photon_numbers
        .iter()
        .flat_map(|&n| search.phi_j_values.iter().map(move |&p| (n, p)))
        .collect();
    let found: Vec<Result<Vec<UnityPoint>, AnalysisError>> = tasks
        .par_iter()
        .map(|&(n, phi_j)| {
            let params = search.params.with_n(n).with_phi_j(phi_j);
            let spec = SweepSpec::delta_line(
                params,
                search.phases,
                search.regime,
                search.delta_min,
                search.delta_max,
                2,
            );
            Ok(find_contrast_extrema(&spec)?
                .into_iter()
                .filter(|e| e.value.abs() >= search.threshold)
                .map(|e| UnityPoint {
                    n,
                    phi_j,
                    delta: e.delta,
                    i2: e.value,
                })
                .collect())
        })
        .collect();
    let mut points: Vec<UnityPoint> = Vec::new();
    for batch in found {
        points.extend(batch?);
    }
    points.sort_by(|a, b| b.i2.abs().total_cmp(&a.i2.abs()));
    Ok(points)
}
