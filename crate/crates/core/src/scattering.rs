//! Single-photon scattering eigenstates.
//!
//! For wave number `k` the photon amplitudes are
//!
//! ```text
//! alpha_j = e^{ikj} + r e^{-ikj}    (j <= 0)
//! alpha_j = t e^{ikj}               (j >= 1)
//! ```
//!
//! and the emitter amplitude is `u_e`. The split puts both coupled sites on
//! opposite sides of the matching point, so the free recursion holds for
//! every `j <= -1` and `j >= 2`; the lattice equations at `j = 0`, `j = 1`
//! and the emitter equation then fix `(t, r, u_e)` through a regular 3x3
//! linear system. On resonance (`omega_k = Omega`) the system stays regular,
//! so the emitter amplitude never goes through `1 / (omega_k - Omega)`.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringSolution {
    pub k: f64,
    pub t: Complex64,
    pub r: Complex64,
    pub u_e: Complex64,
}

impl ScatteringSolution {
    /// Photon amplitude at site `j`.
    pub fn amplitude(&self, j: i64) -> Complex64 {
        let phase = Complex64::from_polar(1.0, self.k * j as f64);
        if j <= 0 {
            phase + self.r * phase.conj()
        } else {
            self.t * phase
        }
    }

    pub fn transmission(&self) -> f64 {
        self.t.norm_sqr()
    }

    pub fn reflection(&self) -> f64 {
        self.r.norm_sqr()
    }

    /// `|t|^2 + |r|^2 - 1`.
    pub fn flux_defect(&self) -> f64 {
        self.transmission() + self.reflection() - 1.0
    }

    /// Largest defect of the single-excitation eigen-equations at photon
    /// sites `sites` and at the emitter, for energy `omega_k`.
    pub fn lattice_residual(
        &self,
        params: &ModelParams,
        sites: std::ops::RangeInclusive<i64>,
    ) -> f64 {
        let j = params.hopping();
        // Work relative to omega_c so the large common offset cancels exactly.
        let x = -2.0 * j * self.k.cos();
        let mut worst: f64 = 0.0;
        for site in sites {
            let mut lhs = x * self.amplitude(site)
                + j * (self.amplitude(site + 1) + self.amplitude(site - 1));
            if site == 0 {
                lhs -= params.g0() * self.u_e;
            }
            if site == 1 {
                lhs -= params.g1() * self.u_e;
            }
            worst = worst.max(lhs.norm());
        }
        let emitter = (x - params.detuning()) * self.u_e
            - params.g0() * self.amplitude(0)
            - params.g1() * self.amplitude(1);
        worst.max(emitter.norm())
    }
}

/// Scattering eigenstate at wave number `k`.
///
/// `k` in `(0, pi)` is a photon incident from the left. Negative `k` in
/// `(-pi, 0)` gives the complex-conjugate (time-reversed) partner of the
/// state at `-k`; the overlap expansion uses both halves of the zone.
pub fn scattering_solution(params: &ModelParams, k: f64) -> Result<ScatteringSolution> {
    if !(k > -PI && k < PI) || k == 0.0 {
        return Err(Error::Domain {
            quantity: "k",
            value: k,
            domain: "(-pi, 0) or (0, pi); group velocity vanishes at 0 and pi".into(),
        });
    }
    let j = params.hopping();
    let (g0, g1) = (params.g0(), params.g1());
    let one = Complex64::new(1.0, 0.0);
    let e_ik = Complex64::from_polar(1.0, k);
    let detuning_k = Complex64::new(-2.0 * j * k.cos() - params.detuning(), 0.0);

    // Unknowns ordered (t, r, u_e).
    let m = Matrix3::new(
        j * one,
        -j * one,
        g1 * one,
        j * e_ik,
        -j * e_ik.conj(),
        -g0 * one,
        -g1 * e_ik,
        -g0 * one,
        detuning_k,
    );
    let rhs = Vector3::new(j * one, j * e_ik, g0 * one);
    let sol = m.lu().solve(&rhs).ok_or(Error::SingularSystem {
        k,
        omega_c: params.omega_c(),
        omega: params.omega(),
        g0,
        g1,
    })?;
    Ok(ScatteringSolution {
        k,
        t: sol[0],
        r: sol[1],
        u_e: sol[2],
    })
}
