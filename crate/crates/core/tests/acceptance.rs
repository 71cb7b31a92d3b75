//! Exit-gate checks. Runs without the libtest harness so every criterion
//! prints one PASS/FAIL line even when the run succeeds.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use common::*;
use cra_core::oracle::wavepacket_transmission;
use cra_core::*;
use rand::Rng;

type Outcome = std::result::Result<String, String>;

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closed_form_energies() -> Outcome {
    let j: f64 = 1.0;
    let mut worst: f64 = 0.0;
    for g0 in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let p = ModelParams::new(OMEGA_C, OMEGA_C, j, g0, 0.0).unwrap();
        let x = (2.0 * j * j + (4.0 * j.powi(4) + g0.powi(4)).sqrt()).sqrt();
        let levels = bound_state_energies(&p);
        ensure(levels.len() == 2, || {
            format!("g0 = {g0}: {} levels", levels.len())
        })?;
        for l in &levels {
            let expected = OMEGA_C + l.branch.sign() * x;
            worst = worst.max((l.energy - expected).abs());
        }
    }
    ensure(worst < 1e-9 * j, || format!("max deviation {worst:e}"))?;
    Ok(format!("max |E - closed form| = {worst:.2e} (tol 1e-9)"))
}

fn oracle_spectrum_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    for (i, p) in random_params(2024, 50).iter().enumerate() {
        let analytic = bound_state_energies(p);
        let oracle = FiniteModel::build(p, 2001).unwrap().out_of_band_levels();
        ensure(analytic.len() == oracle.len(), || {
            format!(
                "set {i} {p:?}: analytic {} vs oracle {} levels",
                analytic.len(),
                oracle.len()
            )
        })?;
        for (a, o) in analytic.iter().zip(&oracle) {
            ensure(a.branch == o.branch, || format!("set {i}: branch order"))?;
            worst = worst.max((a.energy - o.energy).abs());
        }
    }
    ensure(worst < 1e-6, || format!("max deviation {worst:e}"))?;
    Ok(format!(
        "50 sets, counts equal, max |E_an - E_ED| = {worst:.2e} (tol 1e-6)"
    ))
}

fn phase_transition() -> Outcome {
    let grid = linspace(0.0, 3.0, 600);
    let step = grid[1] - grid[0];
    let counts: Vec<usize> = grid
        .iter()
        .map(|&g| {
            ModelParams::symmetric(OMEGA_C, OMEGA_C, 1.0, g)
                .map(|p| bound_state_energies(&p).len())
                .unwrap_or(0)
        })
        .collect();
    let first_two = counts
        .iter()
        .position(|&c| c == 2)
        .ok_or("no two-level point")?;
    ensure(counts[first_two - 1] == 1, || {
        "count does not step 1 -> 2".into()
    })?;
    ensure(counts[1..first_two].iter().all(|&c| c == 1), || {
        "one-level region not clean".into()
    })?;
    ensure(counts[first_two..].iter().all(|&c| c == 2), || {
        "two-level region not clean".into()
    })?;
    let critical = match phase_boundary_g(OMEGA_C, OMEGA_C, 1.0).unwrap() {
        PhaseBoundary::Critical(g) => g,
        PhaseBoundary::NoBoundary => return Err("no analytic boundary".into()),
    };
    let g_jump = grid[first_two];
    ensure((g_jump - critical).abs() <= step, || {
        format!("jump at {g_jump}, g* = {critical}")
    })?;
    ensure((critical - 2f64.sqrt()).abs() < 1e-15, || {
        format!("g* = {critical}")
    })?;
    Ok(format!(
        "1 -> 2 between g = {:.5} and {:.5}; g* = {critical:.5}, step {step:.5}",
        grid[first_two - 1],
        g_jump
    ))
}

fn chirality_consistency() -> Outcome {
    let mut worst_gap: f64 = 0.0;
    for p in random_params(77, 100) {
        for l in bound_state_energies(&p) {
            let b = build_bound_state(&p, &l).map_err(|e| e.to_string())?;
            let c = chirality(&p, &b);
            worst_gap = worst_gap.max((c.closed - c.direct).abs());
        }
    }
    ensure(worst_gap < 1e-10, || {
        format!("closed vs direct {worst_gap:e}")
    })?;

    let grid = linspace(0.1, 3.0, 41);
    let mut worst_symmetric: f64 = 0.0;
    let mut checked = 0;
    for omega in [OMEGA_C, 201.5] {
        for &g0 in &grid {
            for &g1 in &grid {
                let p = ModelParams::in_hopping_units(OMEGA_C, omega, g0, g1).unwrap();
                let signs: Vec<f64> = bound_state_energies(&p)
                    .iter()
                    .map(|l| {
                        let b = build_bound_state(&p, l).unwrap();
                        chirality(&p, &b).closed
                    })
                    .collect();
                if g0 == g1 {
                    for s in &signs {
                        worst_symmetric = worst_symmetric.max(s.abs());
                    }
                    continue;
                }
                for s in signs.iter().filter(|s| s.abs() > 1e-8) {
                    checked += 1;
                    ensure(s.signum() == (g0 - g1).signum(), || {
                        format!("Omega {omega}, g0 {g0}, g1 {g1}: S = {s}")
                    })?;
                }
            }
        }
    }
    ensure(worst_symmetric < 1e-12, || {
        format!("S on diagonal {worst_symmetric:e}")
    })?;
    Ok(format!(
        "|S_closed - S_direct| <= {worst_gap:.1e}; |S(g0=g1)| <= {worst_symmetric:.1e}; {checked} off-diagonal signs agree"
    ))
}

fn emission_sets() -> [(&'static str, ModelParams); 4] {
    [
        ("g=0.1", on_resonance(0.1, 0.1)),
        ("g=1", on_resonance(1.0, 1.0)),
        ("g=2", on_resonance(2.0, 2.0)),
        ("g0=0.7,g1=1.3", on_resonance(0.7, 1.3)),
    ]
}

fn dynamics_cross_validation() -> Outcome {
    let times = linspace(0.0, 50.0, 1001);
    let mut report = Vec::new();
    for (label, p) in emission_sets() {
        let spectral = evolve_spectral(&p, &times, 16384).map_err(|e| e.to_string())?;
        let n = FiniteModel::minimal_sites(1.0, 50.0);
        let oracle = FiniteModel::build(&p, n)
            .unwrap()
            .evolve(&times)
            .map_err(|e| e.to_string())?;
        let dev = spectral.max_deviation(&oracle);
        ensure(dev < 5e-3, || format!("{label}: deviation {dev:e}"))?;
        report.push(format!("{label}: {dev:.1e}"));
    }
    Ok(format!(
        "max |P_spec - P_ED| on [0, 50]: {}",
        report.join(", ")
    ))
}

fn emission_regimes() -> Outcome {
    // (a) weak coupling: exponential decay.
    let p = on_resonance(0.1, 0.1);
    let times = linspace(0.0, 400.0, 801);
    let ts = evolve_spectral(&p, &times, 16384).map_err(|e| e.to_string())?;
    let last = *ts.p_e.last().unwrap();
    ensure(last < 1e-2, || format!("(a) p_e(400) = {last:e}"))?;
    let fit: Vec<(f64, f64)> = times
        .iter()
        .zip(&ts.p_e)
        .filter(|(t, _)| **t >= 10.0 && **t <= 300.0)
        .map(|(t, p)| (*t, p.ln()))
        .collect();
    let (slope, r2) = linear_fit(&fit);
    ensure(slope < 0.0 && r2 > 0.99, || {
        format!("(a) log-linear slope {slope}, r^2 {r2}")
    })?;

    // (b) one bound state: constant plateau.
    let p = on_resonance(1.0, 1.0);
    let diag = long_time_diagnostics(&p).unwrap();
    let c_minus = overlaps(&p, 16384).unwrap().c_minus.unwrap();
    let plateau = c_minus.powi(4);
    ensure((plateau - diag.mean).abs() < 1e-14, || {
        "(b) diagnostics mean".into()
    })?;
    let late = linspace(300.0, 400.0, 1001);
    let ts = evolve_spectral(&p, &late, 16384).unwrap();
    let worst_b = ts
        .p_e
        .iter()
        .map(|v| (v - plateau).abs())
        .fold(0.0, f64::max);
    ensure(worst_b < 1e-2, || {
        format!("(b) plateau deviation {worst_b}")
    })?;

    // (c) strong coupling: oscillation at |E+ - E-| / 2pi.
    let p = on_resonance(2.0, 2.0);
    let late = linspace(200.0, 400.0, 8001);
    let ts = evolve_spectral(&p, &late, 16384).unwrap();
    let measured = crossing_frequency(&late, &ts.p_e).ok_or("(c) no oscillation")?;
    let levels = bound_state_energies(&p);
    let expected = (levels[1].energy - levels[0].energy).abs() / (2.0 * PI);
    let rel = (measured / expected - 1.0).abs();
    ensure(rel < 0.01, || {
        format!("(c) frequency {measured} vs {expected}")
    })?;

    // (d) unequal couplings: stationary oscillation amplitude.
    let p = on_resonance(0.7, 1.3);
    let d = overlaps(&p, 16384).unwrap();
    let (up, um) = (d.c_plus.unwrap(), d.c_minus.unwrap());
    let predicted = 2.0 * (up * up * um * um).abs();
    let ts = evolve_spectral(&p, &late, 16384).unwrap();
    let f = crossing_frequency(&late, &ts.p_e).ok_or("(d) no oscillation")?;
    let (_, amplitude) = sinusoid_fit(&late, &ts.p_e, 2.0 * PI * f);
    ensure(
        amplitude > 0.0 && (amplitude - predicted).abs() < 1e-2,
        || format!("(d) amplitude {amplitude} vs {predicted}"),
    )?;

    Ok(format!(
        "(a) p(400)={last:.1e}, r^2={r2:.4}; (b) plateau {plateau:.5} dev {worst_b:.1e}; \
         (c) f={measured:.5} vs {expected:.5}; (d) amp {amplitude:.5} vs {predicted:.5}"
    ))
}

fn linear_fit(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    (sxy / sxx, sxy * sxy / (sxx * syy))
}

fn flux_conservation() -> Outcome {
    let mut rng = rng(11);
    let mut worst: f64 = 0.0;
    for p in random_params(12, 200) {
        let k = rng.random_range(1e-3..PI - 1e-3);
        let s = scattering_solution(&p, k).map_err(|e| e.to_string())?;
        worst = worst.max(s.flux_defect().abs());
    }
    ensure(worst < 1e-12, || format!("flux defect {worst:e}"))?;

    let spots = [
        (200.0, 1.0, 0.0, PI / 2.0),
        (201.0, 1.7, 1.0, PI / 3.0),
        (200.0, 0.7, 1.3, 1.0),
        (200.5, 0.5, 0.5, 2.0),
        (199.0, 2.0, 0.3, 0.8),
    ];
    let mut worst_packet: f64 = 0.0;
    for (omega, g0, g1, k0) in spots {
        let p = ModelParams::in_hopping_units(OMEGA_C, omega, g0, g1).unwrap();
        let width = 20.0;
        let n = oracle::plan_wavepacket(1.0, k0, width)
            .unwrap()
            .minimal_sites;
        let tr = wavepacket_transmission(&p, k0, width, n).map_err(|e| e.to_string())?;
        let expected = scattering_solution(&p, k0).unwrap().transmission();
        let dev = (tr.transmitted - expected).abs();
        ensure(dev < 0.02, || {
            format!(
                "packet Omega {omega} g0 {g0} g1 {g1} k0 {k0}: T {} vs {expected}",
                tr.transmitted
            )
        })?;
        worst_packet = worst_packet.max(dev);
    }
    Ok(format!(
        "max ||t|^2+|r|^2-1| = {worst:.1e} over 200 draws; max |T_packet - |t|^2| = {worst_packet:.1e} over 5 packets"
    ))
}

fn completeness() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in random_params(31, 50) {
        let d = overlaps(&p, 16384).map_err(|e| e.to_string())?;
        worst = worst.max(d.completeness_defect);
    }
    ensure(worst < 1e-6, || format!("defect {worst:e}"))?;
    Ok(format!(
        "max completeness defect {worst:.1e} over 50 sets (tol 1e-6)"
    ))
}

fn main() {
    let criteria = [
        Criterion {
            name: "bound-energy closed form",
            budget: Duration::from_secs(1),
            run: closed_form_energies,
        },
        Criterion {
            name: "oracle spectrum equivalence",
            budget: Duration::from_secs(120),
            run: oracle_spectrum_equivalence,
        },
        Criterion {
            name: "phase transition",
            budget: Duration::from_secs(10),
            run: phase_transition,
        },
        Criterion {
            name: "chirality consistency",
            budget: Duration::from_secs(30),
            run: chirality_consistency,
        },
        Criterion {
            name: "dynamics cross-validation",
            budget: Duration::from_secs(300),
            run: dynamics_cross_validation,
        },
        Criterion {
            name: "emission regimes",
            budget: Duration::from_secs(300),
            run: emission_regimes,
        },
        Criterion {
            name: "flux conservation",
            budget: Duration::from_secs(300),
            run: flux_conservation,
        },
        Criterion {
            name: "completeness",
            budget: Duration::from_secs(300),
            run: completeness,
        },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome =
            std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => Err(format!(
                "{detail}; took {elapsed:.2?}, budget {:?}",
                c.budget
            )),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {} ({elapsed:.2?}): {detail}", c.name),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {} ({elapsed:.2?}): {detail}", c.name);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
