use std::f64::consts::PI;

use cra_core::oracle::FiniteModel;
use cra_core::{
    bound_state_energies, build_bound_state, chirality, evolve_spectral, scattering_solution,
    BoundState, ModelParams, TimeSeries,
};
use rayon::prelude::*;

use crate::args::{Axis, MethodArg, ModelArgs, Quantity};
use crate::error::CliError;
use crate::output::{num, opt, Table};

fn states(params: &ModelParams) -> Result<Vec<BoundState>, CliError> {
    Ok(bound_state_energies(params)
        .iter()
        .map(|l| build_bound_state(params, l))
        .collect::<cra_core::Result<Vec<_>>>()?)
}

pub fn band(model: &ModelArgs, points: usize) -> Result<Table, CliError> {
    if points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let p = model.params()?;
    let edges = p.band_edges();
    let mut t = Table::new("band", &["k", "omega_k"]);
    t.params(&p).meta(format!(
        "lower_edge={} upper_edge={}",
        num(edges.lower_edge),
        num(edges.upper_edge)
    ));
    for m in 0..points {
        let k = -PI + 2.0 * PI * m as f64 / (points - 1) as f64;
        t.row(vec![num(k), num(p.dispersion(k)?)]);
    }
    Ok(t)
}

pub fn bound(model: &ModelArgs, profile: Option<u32>) -> Result<Table, CliError> {
    let p = model.params()?;
    let found = states(&p)?;
    if let Some(r) = profile {
        let lower = found.iter().find(|s| s.branch == cra_core::Branch::Lower);
        let upper = found.iter().find(|s| s.branch == cra_core::Branch::Upper);
        let mut t = Table::new("bound --profile", &["j", "alpha_minus", "alpha_plus"]);
        t.params(&p).meta(format!(
            "u_e_minus={} u_e_plus={}",
            opt(lower.map(|s| s.emitter_amplitude)),
            opt(upper.map(|s| s.emitter_amplitude))
        ));
        let r = r as i64;
        for j in -r..=r {
            t.row(vec![
                j.to_string(),
                opt(lower.map(|s| s.amplitude(j))),
                opt(upper.map(|s| s.amplitude(j))),
            ]);
        }
        return Ok(t);
    }
    let mut t = Table::new(
        "bound",
        &["branch", "E", "kappa", "A", "N", "u_e", "S_closed"],
    );
    t.params(&p).meta(format!("levels={}", found.len()));
    for s in &found {
        t.row(vec![
            s.branch.name().to_string(),
            num(s.energy),
            num(s.kappa),
            num(s.asymmetry),
            num(s.norm),
            num(s.emitter_amplitude),
            num(chirality(&p, s).closed),
        ]);
    }
    Ok(t)
}

pub fn scatter(model: &ModelArgs, k: Option<f64>, points: usize) -> Result<Table, CliError> {
    let p = model.params()?;
    let ks: Vec<f64> = match k {
        Some(k) if k > 0.0 && k < PI => vec![k],
        Some(k) => return Err(CliError::Usage(format!("--k must lie in (0, pi), got {k}"))),
        None if points == 0 => return Err(CliError::Usage("--points must be positive".into())),
        None => (0..points)
            .map(|m| (m as f64 + 0.5) * PI / points as f64)
            .collect(),
    };
    let mut t = Table::new(
        "scatter",
        &[
            "k", "omega_k", "re_t", "im_t", "re_r", "im_r", "re_u_e", "im_u_e", "T", "R",
        ],
    );
    t.params(&p);
    for k in ks {
        let s = scattering_solution(&p, k)?;
        t.row(vec![
            num(k),
            num(p.dispersion(k)?),
            num(s.t.re),
            num(s.t.im),
            num(s.r.re),
            num(s.r.im),
            num(s.u_e.re),
            num(s.u_e.im),
            num(s.transmission()),
            num(s.reflection()),
        ]);
    }
    Ok(t)
}

pub fn chirality_table(model: &ModelArgs) -> Result<Table, CliError> {
    let p = model.params()?;
    let mut t = Table::new(
        "chirality",
        &[
            "branch",
            "E",
            "S_closed",
            "S_direct",
            "weight_left",
            "weight_right",
            "axis_warning",
        ],
    );
    t.params(&p);
    for s in states(&p)? {
        let c = chirality(&p, &s);
        t.row(vec![
            s.branch.name().to_string(),
            num(s.energy),
            num(c.closed),
            num(c.direct),
            num(c.left),
            num(c.right),
            c.axis_warning.to_string(),
        ]);
    }
    if p.g0() == 0.0 || p.g1() == 0.0 {
        t.meta("warning: one coupling vanishes; the j = 1/2 axis is not a symmetry axis here");
    }
    Ok(t)
}

pub struct DynamicsArgs {
    pub t_max: f64,
    pub dt: f64,
    pub nk: usize,
    pub method: MethodArg,
    pub sites: Option<usize>,
}

pub fn dynamics(model: &ModelArgs, a: &DynamicsArgs) -> Result<Table, CliError> {
    let p = model.params()?;
    if !(a.t_max > 0.0) || !a.t_max.is_finite() || !(a.dt > 0.0) {
        return Err(CliError::Usage("--t-max and --dt must be positive".into()));
    }
    let steps = (a.t_max / a.dt).round() as usize;
    let times: Vec<f64> = (0..=steps).map(|i| i as f64 * a.dt).collect();
    let t_end = times[times.len() - 1];

    let spectral = match a.method {
        MethodArg::Spectral | MethodArg::Both => Some(evolve_spectral(&p, &times, a.nk)?),
        MethodArg::Oracle => None,
    };
    let mut sites_used = None;
    let oracle = match a.method {
        MethodArg::Oracle | MethodArg::Both => {
            let minimal = FiniteModel::minimal_sites(p.hopping(), t_end);
            let n = a.sites.unwrap_or(minimal);
            if n < minimal {
                return Err(CliError::Precondition(format!(
                    "--sites {n} is too small for t_max = {t_end}; use at least {minimal}"
                )));
            }
            sites_used = Some(n);
            Some(FiniteModel::build(&p, n)?.evolve(&times)?)
        }
        MethodArg::Spectral => None,
    };

    let header: &[&str] = match a.method {
        MethodArg::Both => &["t", "p_e_spectral", "p_e_oracle"],
        _ => &["t", "p_e"],
    };
    let mut t = Table::new("dynamics", header);
    t.params(&p);
    if spectral.is_some() {
        t.meta(format!("nk={}", a.nk));
    }
    if let Some(n) = sites_used {
        t.meta(format!("sites={n}"));
    }
    let columns: Vec<&TimeSeries> = spectral.iter().chain(oracle.iter()).collect();
    for (i, time) in times.iter().enumerate() {
        let mut row = vec![num(*time)];
        row.extend(columns.iter().map(|s| num(s.p_e[i])));
        t.row(row);
    }
    if let (Some(s), Some(o)) = (&spectral, &oracle) {
        t.trailer(format!("max_abs_deviation={}", num(s.max_deviation(o))));
    }
    Ok(t)
}

pub struct SweepArgs {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub quantity: Quantity,
}

pub fn sweep(model: &ModelArgs, a: &SweepArgs) -> Result<Table, CliError> {
    if a.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    if !(a.start < a.stop) || !a.stop.is_finite() {
        return Err(CliError::Usage("--start must be below --stop".into()));
    }
    if matches!(a.axis, Axis::G0 | Axis::G1 | Axis::G) && a.start < 0.0 {
        return Err(CliError::Usage("couplings must be non-negative".into()));
    }
    let (g0, g1) = match a.axis {
        Axis::G => (0.0, 0.0),
        Axis::G0 => (0.0, model.g1.or(model.g).unwrap_or(0.0)),
        Axis::G1 => (model.g0.or(model.g).unwrap_or(0.0), 0.0),
        Axis::Omega => model.couplings()?,
    };
    let values: Vec<f64> = (0..a.points)
        .map(|i| a.start + (a.stop - a.start) * i as f64 / (a.points - 1) as f64)
        .collect();
    let build = |v: f64| -> Result<Option<ModelParams>, CliError> {
        let (omega, g0, g1) = match a.axis {
            Axis::G0 => (model.omega, v, g1),
            Axis::G1 => (model.omega, g0, v),
            Axis::G => (model.omega, v, v),
            Axis::Omega => (v, g0, g1),
        };
        if g0 == 0.0 && g1 == 0.0 {
            return Ok(None);
        }
        Ok(Some(ModelParams::new(
            model.omega_c,
            omega,
            model.hopping,
            g0,
            g1,
        )?))
    };

    let rows: Vec<Vec<String>> = values
        .par_iter()
        .map(|&v| -> Result<Vec<String>, CliError> {
            let found = match build(v)? {
                Some(p) => states(&p)?.into_iter().map(|s| (p, s)).collect(),
                None => Vec::new(),
            };
            let pick = |b: cra_core::Branch| found.iter().find(|(_, s)| s.branch == b);
            let lower = pick(cra_core::Branch::Lower);
            let upper = pick(cra_core::Branch::Upper);
            let mut row = vec![num(v)];
            match a.quantity {
                Quantity::Levels => {
                    row.push(opt(lower.map(|(_, s)| s.energy)));
                    row.push(opt(upper.map(|(_, s)| s.energy)));
                    row.push(found.len().to_string());
                }
                Quantity::Chirality => {
                    row.push(opt(lower.map(|(p, s)| chirality(p, s).closed)));
                    row.push(opt(upper.map(|(p, s)| chirality(p, s).closed)));
                }
                Quantity::BoundWeight => {
                    let w = |x: Option<&(ModelParams, BoundState)>| {
                        x.map(|(_, s)| s.emitter_amplitude * s.emitter_amplitude)
                    };
                    row.push(opt(w(lower)));
                    row.push(opt(w(upper)));
                    row.push(num(w(lower).unwrap_or(0.0) + w(upper).unwrap_or(0.0)));
                }
            }
            Ok(row)
        })
        .collect::<Result<_, _>>()?;

    let axis = a.axis.name();
    let header: Vec<&str> = match a.quantity {
        Quantity::Levels => vec![axis, "E_minus", "E_plus", "count"],
        Quantity::Chirality => vec![axis, "S_minus", "S_plus"],
        Quantity::BoundWeight => vec![axis, "c2_minus", "c2_plus", "c2_total"],
    };
    let mut t = Table::new("sweep", &header);
    t.meta(format!(
        "omega_c={} Omega={} J={} g0={} g1={}",
        num(model.omega_c),
        num(model.omega),
        num(model.hopping),
        num(g0),
        num(g1)
    ))
    .meta(format!(
        "axis={axis} start={} stop={} points={} quantity={}{}",
        num(a.start),
        num(a.stop),
        a.points,
        a.quantity.name(),
        if a.axis == Axis::G {
            " (g0 = g1 locked)"
        } else {
            ""
        }
    ));
    for r in rows {
        t.row(r);
    }
    Ok(t)
}
