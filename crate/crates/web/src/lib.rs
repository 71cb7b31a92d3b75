//! Browser bindings. Each export takes plain numbers and returns a JSON
//! string that `www/main.js` draws on a canvas.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use cra_core::{
    bound_state_energies, build_bound_state, chirality, evolve_spectral, long_time_diagnostics,
    phase_boundary_g, ModelParams, PhaseBoundary,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Brillouin-zone samples used in the browser; smaller than the native default.
pub const WEB_NK: usize = 4096;

#[derive(Serialize)]
struct Sweep {
    g: Vec<f64>,
    lower: Vec<Option<f64>>,
    upper: Vec<Option<f64>>,
    band: [f64; 2],
    g_star: Option<f64>,
}

#[derive(Serialize)]
struct Level {
    branch: &'static str,
    energy: f64,
    kappa: f64,
    chirality: f64,
    emitter_amplitude: f64,
    sites: Vec<i64>,
    amplitudes: Vec<f64>,
}

#[derive(Serialize)]
struct Population {
    t: Vec<f64>,
    p_e: Vec<f64>,
    mean: f64,
    oscillation_amplitude: f64,
    frequency: Option<f64>,
}

fn params(omega_c: f64, omega: f64, hopping: f64, g0: f64, g1: f64) -> Result<ModelParams, String> {
    ModelParams::new(omega_c, omega, hopping, g0, g1).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serialises")
}

/// Bound-state energies against `g = g0 = g1` on `(0, g_max]`.
pub fn spectrum_sweep_json(
    omega_c: f64,
    omega: f64,
    hopping: f64,
    g_max: f64,
    points: usize,
) -> Result<String, String> {
    if points < 2 || !(g_max > 0.0) {
        return Err("need g_max > 0 and at least 2 points".into());
    }
    let base = params(omega_c, omega, hopping, 1.0, 1.0)?;
    let edges = base.band_edges();
    let mut out = Sweep {
        g: Vec::with_capacity(points),
        lower: Vec::with_capacity(points),
        upper: Vec::with_capacity(points),
        band: [edges.lower_edge, edges.upper_edge],
        g_star: match phase_boundary_g(omega_c, omega, hopping).map_err(|e| e.to_string())? {
            PhaseBoundary::Critical(g) => Some(g),
            PhaseBoundary::NoBoundary => None,
        },
    };
    for i in 1..=points {
        let g = g_max * i as f64 / points as f64;
        let p = base.with_couplings(g, g).map_err(|e| e.to_string())?;
        let levels = bound_state_energies(&p);
        let pick = |b| levels.iter().find(|l| l.branch == b).map(|l| l.energy);
        out.g.push(g);
        out.lower.push(pick(cra_core::Branch::Lower));
        out.upper.push(pick(cra_core::Branch::Upper));
    }
    Ok(to_json(&out))
}

/// Photon profiles of every bound state on `-half_width..=half_width`.
pub fn bound_profiles_json(
    omega_c: f64,
    omega: f64,
    hopping: f64,
    g0: f64,
    g1: f64,
    half_width: u32,
) -> Result<String, String> {
    let p = params(omega_c, omega, hopping, g0, g1)?;
    let r = half_width as i64;
    let levels = bound_state_energies(&p)
        .iter()
        .map(|l| {
            let s = build_bound_state(&p, l).map_err(|e| e.to_string())?;
            Ok(Level {
                branch: s.branch.name(),
                energy: s.energy,
                kappa: s.kappa,
                chirality: chirality(&p, &s).closed,
                emitter_amplitude: s.emitter_amplitude,
                sites: (-r..=r).collect(),
                amplitudes: (-r..=r).map(|j| s.amplitude(j)).collect(),
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(to_json(&levels))
}

/// `P_e(t)` on `samples` points of `[0, t_max]` with the late-time summary.
pub fn emitter_population_json(
    omega_c: f64,
    omega: f64,
    hopping: f64,
    g0: f64,
    g1: f64,
    t_max: f64,
    samples: usize,
) -> Result<String, String> {
    if samples < 2 || !(t_max > 0.0) {
        return Err("need t_max > 0 and at least 2 samples".into());
    }
    let p = params(omega_c, omega, hopping, g0, g1)?;
    let times: Vec<f64> = (0..samples)
        .map(|i| t_max * i as f64 / (samples - 1) as f64)
        .collect();
    let series = evolve_spectral(&p, &times, WEB_NK).map_err(|e| e.to_string())?;
    let late = long_time_diagnostics(&p).map_err(|e| e.to_string())?;
    Ok(to_json(&Population {
        t: series.times,
        p_e: series.p_e,
        mean: late.mean,
        oscillation_amplitude: late.oscillation_amplitude,
        frequency: late.frequency,
    }))
}

#[wasm_bindgen]
pub fn spectrum_sweep(
    omega_c: f64,
    omega: f64,
    hopping: f64,
    g_max: f64,
    points: usize,
) -> Result<String, JsError> {
    spectrum_sweep_json(omega_c, omega, hopping, g_max, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bound_profiles(
    omega_c: f64,
    omega: f64,
    hopping: f64,
    g0: f64,
    g1: f64,
    half_width: u32,
) -> Result<String, JsError> {
    bound_profiles_json(omega_c, omega, hopping, g0, g1, half_width).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn emitter_population(
    omega_c: f64,
    omega: f64,
    hopping: f64,
    g0: f64,
    g1: f64,
    t_max: f64,
    samples: usize,
) -> Result<String, JsError> {
    emitter_population_json(omega_c, omega, hopping, g0, g1, t_max, samples)
        .map_err(|e| JsError::new(&e))
}
