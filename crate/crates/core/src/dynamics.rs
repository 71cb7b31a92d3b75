//! Spontaneous emission of the initially excited emitter.
//!
//! The initial state is expanded in the scattering states (continuum, sampled
//! on a uniform midpoint grid of the Brillouin zone) plus the bound states.
//! The emitter amplitude at time `t` is
//!
//! ```text
//! a(t) = (1/2pi) sum_k c_k u_e(k) e^{-i omega_k t} dk + sum_b c_b u_b e^{-i E_b t}
//! ```
//!
//! with `c_k = conj(u_e(k))` and `c_b = u_b` real.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::bound::{build_bound_state, BoundState};
use crate::error::{Error, Result};
use crate::model::{Branch, ModelParams};
use crate::scattering::scattering_solution;
use crate::spectrum::bound_state_energies;

/// Default number of Brillouin-zone samples.
pub const DEFAULT_NK: usize = 16384;
/// Smallest accepted grid.
pub const MIN_NK: usize = 256;
/// Completeness defect above which the grid is rejected.
pub const MAX_COMPLETENESS_DEFECT: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Spectral,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Spectral => "spectral",
            Method::Oracle => "oracle",
        }
    }
}

/// Sampled excited-state population.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub p_e: Vec<f64>,
    pub method: Method,
}

impl TimeSeries {
    /// Largest pointwise `|p_e - other.p_e|` over the common samples.
    pub fn max_deviation(&self, other: &TimeSeries) -> f64 {
        self.p_e
            .iter()
            .zip(&other.p_e)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Expansion coefficients of `sigma_+ |vacuum>` in the exact eigenbasis.
#[derive(Debug, Clone)]
pub struct OverlapDecomposition {
    pub params: ModelParams,
    /// Midpoints `-pi + (m + 1/2) 2pi/nk`.
    pub k_grid: Vec<f64>,
    /// `c_k = conj(u_e(k))`.
    pub c_k: Vec<Complex64>,
    pub bound_states: Vec<BoundState>,
    pub c_plus: Option<f64>,
    pub c_minus: Option<f64>,
    /// `|1 - (continuum weight + sum of c_b^2)|`.
    pub completeness_defect: f64,
}

impl OverlapDecomposition {
    /// `(1/2pi) integral |c_k|^2 dk` by the periodic trapezoid rule.
    pub fn continuum_weight(&self) -> f64 {
        self.c_k.iter().map(|c| c.norm_sqr()).sum::<f64>() / self.c_k.len() as f64
    }

    /// `c_+^2 + c_-^2` (absent levels contribute nothing).
    pub fn bound_weight(&self) -> f64 {
        self.c_plus.unwrap_or(0.0).powi(2) + self.c_minus.unwrap_or(0.0).powi(2)
    }

    /// Emitter amplitude at time `t`, up to the global phase `e^{-i omega_c t}`.
    pub fn amplitude(&self, t: f64) -> Complex64 {
        let j = self.params.hopping();
        let nk = self.c_k.len() as f64;
        let mut sum = Complex64::new(0.0, 0.0);
        for (k, c) in self.k_grid.iter().zip(&self.c_k) {
            let x = -2.0 * j * k.cos();
            sum += Complex64::from_polar(c.norm_sqr(), -x * t);
        }
        sum /= nk;
        for b in &self.bound_states {
            let x = b.energy - self.params.omega_c();
            sum += Complex64::from_polar(b.emitter_amplitude * b.emitter_amplitude, -x * t);
        }
        sum
    }

    pub fn population(&self, t: f64) -> f64 {
        self.amplitude(t).norm_sqr()
    }
}

/// Overlaps of the excited emitter with every eigenstate on an `nk` grid.
pub fn overlaps(params: &ModelParams, nk: usize) -> Result<OverlapDecomposition> {
    if nk < MIN_NK || !nk.is_multiple_of(2) {
        return Err(Error::Domain {
            quantity: "nk",
            value: nk as f64,
            domain: format!("even and at least {MIN_NK}"),
        });
    }
    let dk = 2.0 * PI / nk as f64;
    let k_grid: Vec<f64> = (0..nk).map(|m| -PI + (m as f64 + 0.5) * dk).collect();
    let c_k = k_grid
        .iter()
        .map(|&k| scattering_solution(params, k).map(|s| s.u_e.conj()))
        .collect::<Result<Vec<_>>>()?;

    let bound_states = bound_state_energies(params)
        .iter()
        .map(|level| build_bound_state(params, level))
        .collect::<Result<Vec<_>>>()?;
    let overlap_of = |branch| {
        bound_states
            .iter()
            .find(|b| b.branch == branch)
            .map(|b| b.emitter_amplitude)
    };
    let c_plus = overlap_of(Branch::Upper);
    let c_minus = overlap_of(Branch::Lower);

    let mut decomposition = OverlapDecomposition {
        params: *params,
        k_grid,
        c_k,
        bound_states,
        c_plus,
        c_minus,
        completeness_defect: 0.0,
    };
    let defect = (1.0 - decomposition.continuum_weight() - decomposition.bound_weight()).abs();
    if defect > MAX_COMPLETENESS_DEFECT {
        return Err(Error::GridTooCoarse {
            nk,
            defect,
            limit: MAX_COMPLETENESS_DEFECT,
        });
    }
    decomposition.completeness_defect = defect;
    Ok(decomposition)
}

/// `P_e(t)` from the eigenstate expansion.
pub fn evolve_spectral(params: &ModelParams, times: &[f64], nk: usize) -> Result<TimeSeries> {
    check_times(times)?;
    let decomposition = overlaps(params, nk)?;
    Ok(TimeSeries {
        times: times.to_vec(),
        p_e: times.iter().map(|&t| decomposition.population(t)).collect(),
        method: Method::Spectral,
    })
}

pub(crate) fn check_times(times: &[f64]) -> Result<()> {
    if let Some(&t) = times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(Error::Domain {
            quantity: "t",
            value: t,
            domain: "finite and nonnegative".into(),
        });
    }
    if let Some(w) = times.windows(2).find(|w| w[1] < w[0]) {
        return Err(Error::Domain {
            quantity: "t",
            value: w[1],
            domain: "sorted ascending".into(),
        });
    }
    Ok(())
}

/// Bound-state part of `P_e(t)`, which is all that survives at long times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LongTimeDiagnostics {
    /// Time-averaged population.
    pub mean: f64,
    /// Half peak-to-peak swing of the residual oscillation.
    pub oscillation_amplitude: f64,
    /// `|E_+ - E_-| / 2pi`, present only with two levels.
    pub frequency: Option<f64>,
    pub levels: usize,
}

impl LongTimeDiagnostics {
    /// `mean + amplitude cos(2pi f t + phase)`.
    pub fn model(&self, t: f64, phase: f64) -> f64 {
        match self.frequency {
            Some(f) => self.mean + self.oscillation_amplitude * (2.0 * PI * f * t + phase).cos(),
            None => self.mean,
        }
    }
}

pub fn long_time_diagnostics(params: &ModelParams) -> Result<LongTimeDiagnostics> {
    let states = bound_state_energies(params)
        .iter()
        .map(|level| build_bound_state(params, level))
        .collect::<Result<Vec<_>>>()?;
    let weights: Vec<f64> = states
        .iter()
        .map(|b| b.emitter_amplitude * b.emitter_amplitude)
        .collect();
    let mean = weights.iter().map(|w| w * w).sum();
    let (oscillation_amplitude, frequency) = match states.as_slice() {
        [a, b] => {
            let gap = (a.energy - params.omega_c()) - (b.energy - params.omega_c());
            (2.0 * weights[0] * weights[1], Some(gap.abs() / (2.0 * PI)))
        }
        _ => (0.0, None),
    };
    Ok(LongTimeDiagnostics {
        mean,
        oscillation_amplitude,
        frequency,
        levels: states.len(),
    })
}
