#![allow(dead_code)]

use cra_core::ModelParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const OMEGA_C: f64 = 200.0;

/// Seeded draws of `(g0, g1, Omega)` with `g0, g1 in [0, 3]` and
/// `Omega in [omega_c - 3, omega_c + 3]`, `J = 1`.
pub fn random_params(seed: u64, count: usize) -> Vec<ModelParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g0 = rng.random_range(0.0..3.0);
        let g1 = rng.random_range(0.0..3.0);
        let omega = OMEGA_C + rng.random_range(-3.0..3.0);
        if let Ok(p) = ModelParams::in_hopping_units(OMEGA_C, omega, g0, g1) {
            out.push(p);
        }
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn on_resonance(g0: f64, g1: f64) -> ModelParams {
    ModelParams::in_hopping_units(OMEGA_C, OMEGA_C, g0, g1).unwrap()
}

pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| start + (stop - start) * i as f64 / (points - 1) as f64)
        .collect()
}

/// Frequency from mean spacing of upward crossings of the sample mean.
pub fn crossing_frequency(times: &[f64], values: &[f64]) -> Option<f64> {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let mut crossings = Vec::new();
    for i in 1..values.len() {
        let (a, b) = (values[i - 1] - mean, values[i] - mean);
        if a < 0.0 && b >= 0.0 {
            let frac = a / (a - b);
            crossings.push(times[i - 1] + frac * (times[i] - times[i - 1]));
        }
    }
    if crossings.len() < 3 {
        return None;
    }
    let span = crossings[crossings.len() - 1] - crossings[0];
    Some((crossings.len() - 1) as f64 / span)
}

/// Least-squares fit of `m + a cos(wt) + b sin(wt)`; returns `(m, sqrt(a^2 + b^2))`.
pub fn sinusoid_fit(times: &[f64], values: &[f64], angular: f64) -> (f64, f64) {
    let mut ata = nalgebra::Matrix3::<f64>::zeros();
    let mut atb = nalgebra::Vector3::<f64>::zeros();
    for (t, v) in times.iter().zip(values) {
        let row = nalgebra::Vector3::new(1.0, (angular * t).cos(), (angular * t).sin());
        ata += row * row.transpose();
        atb += row * *v;
    }
    let x = ata.lu().solve(&atb).expect("regular normal equations");
    (x[0], x[1].hypot(x[2]))
}
