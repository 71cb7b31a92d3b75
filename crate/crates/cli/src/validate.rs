//! Seeded self-check of the analytic solvers against independent references.

use std::f64::consts::PI;

use cra_core::oracle::FiniteModel;
use cra_core::{
    bound_state_energies, build_bound_state, chirality, evolve_spectral, has_upper_bound_state,
    overlaps, phase_boundary_g, scattering_solution, ModelParams, PhaseBoundary,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const OMEGA_C: f64 = 200.0;
const MAX_ORACLE_SITES: usize = 2_000_001;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub samples: usize,
    /// Largest deviation seen; `null` when a structural mismatch occurred.
    pub deviation: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    /// Draws left out because no affordable chain can hold their level.
    #[serde(skip_serializing_if = "is_zero")]
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub seed: u64,
    pub tolerance_scale: f64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect()
    }
}

fn check(
    name: &'static str,
    samples: usize,
    measured: Result<f64, String>,
    tolerance: f64,
    scale: f64,
) -> Check {
    let tolerance = tolerance * scale;
    let (deviation, passed, note) = match measured {
        Ok(d) => (Some(d), d < tolerance, None),
        Err(note) => (None, false, Some(note)),
    };
    Check {
        name,
        samples,
        deviation,
        tolerance,
        passed,
        skipped: 0,
        note,
    }
}

fn draw(rng: &mut ChaCha8Rng) -> ModelParams {
    loop {
        let g0 = rng.random_range(0.0..3.0);
        let g1 = rng.random_range(0.0..3.0);
        let omega = OMEGA_C + rng.random_range(-3.0..3.0);
        if let Ok(p) = ModelParams::in_hopping_units(OMEGA_C, omega, g0, g1) {
            return p;
        }
    }
}

/// Energies of out-of-band levels against the finite-chain oracle. The chain
/// is made long enough to hold the most weakly bound level; draws needing
/// more than `MAX_ORACLE_SITES` are counted in `skipped`.
fn oracle_levels(sets: &[ModelParams], skipped: &mut usize) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for (i, p) in sets.iter().enumerate() {
        let analytic = bound_state_energies(p);
        let widest = analytic
            .iter()
            .filter_map(|l| build_bound_state(p, l).ok())
            .map(|s| 20.0 / s.kappa)
            .fold(0.0, f64::max);
        if widest > MAX_ORACLE_SITES as f64 {
            *skipped += 1;
            continue;
        }
        let n = (widest.ceil() as usize).max(2001) | 1;
        let oracle = FiniteModel::build(p, n)
            .map_err(|e| e.to_string())?
            .out_of_band_levels();
        if oracle.len() != analytic.len() {
            return Err(format!(
                "set {i}: {} analytic levels, {} on a {n}-site chain",
                analytic.len(),
                oracle.len()
            ));
        }
        for (a, o) in analytic.iter().zip(&oracle) {
            worst = worst.max((a.energy - o.energy).abs());
        }
    }
    Ok(worst)
}

/// Relative distance between the detected level-count jump and `g*`.
fn phase_boundary(rng: &mut ChaCha8Rng, count: usize) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let omega = OMEGA_C + rng.random_range(-3.0..1.5);
        let g_star = match phase_boundary_g(OMEGA_C, omega, 1.0).map_err(|e| e.to_string())? {
            PhaseBoundary::Critical(g) => g,
            PhaseBoundary::NoBoundary => return Err(format!("no boundary at Omega = {omega}")),
        };
        let upper = |g: f64| -> Result<bool, String> {
            let p = ModelParams::symmetric(OMEGA_C, omega, 1.0, g).map_err(|e| e.to_string())?;
            Ok(bound_state_energies(&p).len() == 2)
        };
        let (mut lo, mut hi) = (0.5 * g_star, 2.0 * g_star);
        if upper(lo)? || !upper(hi)? {
            return Err(format!("no level-count jump around g* = {g_star}"));
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if upper(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let p = ModelParams::symmetric(OMEGA_C, omega, 1.0, hi).map_err(|e| e.to_string())?;
        has_upper_bound_state(&p).map_err(|e| e.to_string())?;
        worst = worst.max((hi - g_star).abs() / g_star);
    }
    Ok(worst)
}

fn chirality_closed_vs_direct(sets: &[ModelParams]) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for p in sets {
        for l in bound_state_energies(p) {
            let s = build_bound_state(p, &l).map_err(|e| e.to_string())?;
            let c = chirality(p, &s);
            worst = worst.max((c.closed - c.direct).abs());
        }
    }
    Ok(worst)
}

fn scattering_flux(rng: &mut ChaCha8Rng, sets: &[ModelParams]) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for p in sets {
        let k = rng.random_range(0.05..PI - 0.05);
        let s = scattering_solution(p, k).map_err(|e| e.to_string())?;
        worst = worst
            .max(s.flux_defect())
            .max(s.lattice_residual(p, -5..=5));
    }
    Ok(worst)
}

fn completeness(sets: &[ModelParams]) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for p in sets {
        let d = overlaps(p, 4096).map_err(|e| e.to_string())?;
        worst = worst.max(d.completeness_defect);
    }
    Ok(worst)
}

fn dynamics(p: &ModelParams) -> Result<f64, String> {
    let times: Vec<f64> = (0..=40).map(|i| 0.5 * i as f64).collect();
    let spectral = evolve_spectral(p, &times, 8192).map_err(|e| e.to_string())?;
    let n = FiniteModel::minimal_sites(p.hopping(), 20.0);
    let oracle = FiniteModel::build(p, n)
        .and_then(|m| m.evolve(&times))
        .map_err(|e| e.to_string())?;
    Ok(spectral.max_deviation(&oracle))
}

pub fn run(seed: u64, scale: f64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets: Vec<ModelParams> = (0..20).map(|_| draw(&mut rng)).collect();
    let g1 = ModelParams::symmetric(OMEGA_C, OMEGA_C, 1.0, 1.0).expect("valid parameters");

    let mut skipped = 0;
    let mut oracle = check(
        "oracle_bound_energies",
        10,
        oracle_levels(&sets[..10], &mut skipped),
        1e-8,
        scale,
    );
    oracle.skipped = skipped;

    let checks = vec![
        oracle,
        check(
            "phase_boundary",
            10,
            phase_boundary(&mut rng, 10),
            1e-6,
            scale,
        ),
        check(
            "chirality_closed_vs_direct",
            sets.len(),
            chirality_closed_vs_direct(&sets),
            1e-10,
            scale,
        ),
        check(
            "scattering_flux_and_residual",
            sets.len(),
            scattering_flux(&mut rng, &sets),
            1e-10,
            scale,
        ),
        check("completeness", 5, completeness(&sets[..5]), 1e-6, scale),
        check(
            "dynamics_spectral_vs_oracle",
            41,
            dynamics(&g1),
            1e-6,
            scale,
        ),
    ];
    Report {
        version: env!("CARGO_PKG_VERSION"),
        seed,
        tolerance_scale: scale,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
