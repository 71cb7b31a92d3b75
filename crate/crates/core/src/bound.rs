//! Bound-state wavefunctions and their left/right asymmetry.
//!
//! With `q = -e^{-kappa}` above the band and `q = +e^{-kappa}` below it, the
//! photon amplitudes are
//!
//! ```text
//! alpha_j = N q^{|j|}      (j <= 0)
//! alpha_j = N A q^{j}      (j >= 1)
//! ```
//!
//! and the emitter amplitude is `N J (g0 + g1 q) / (J (E - Omega) + g1^2 q)`.
//! The asymmetry factor `A` applies from site 1 on; with that split the
//! lattice equation at site 1, the emitter equation and the geometric
//! normalisation sums are all satisfied exactly, and the equation at site 0
//! is the bound-state energy condition.

use crate::error::{Error, Result};
use crate::model::{Branch, ModelParams};
use crate::spectrum::BoundStateEnergy;

/// Truncation floor for the direct chirality sums.
const MIN_TRUNCATION: i64 = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub branch: Branch,
    pub energy: f64,
    /// Inverse localisation length.
    pub kappa: f64,
    /// Right/left amplitude ratio at the coupled sites.
    pub asymmetry: f64,
    pub norm: f64,
    /// Emitter amplitude, including the normalisation.
    pub emitter_amplitude: f64,
}

/// `kappa = arccosh(|E - omega_c| / 2J)` for a level on `branch`.
pub fn kappa_from_energy(params: &ModelParams, energy: f64, branch: Branch) -> Result<f64> {
    let y = branch.sign() * (energy - params.omega_c()) - 2.0 * params.hopping();
    if !(y > 0.0) {
        return Err(Error::Domain {
            quantity: "E",
            value: energy,
            domain: format!("strictly outside the band on the {} side", branch.name()),
        });
    }
    Ok(kappa_from_edge_distance(params.hopping(), y))
}

/// `arccosh(1 + y / 2J)` without the cancellation of `arccosh(c)` near 1.
fn kappa_from_edge_distance(hopping: f64, y: f64) -> f64 {
    let c1 = y / (2.0 * hopping);
    (c1 + (c1 * (c1 + 2.0)).sqrt()).ln_1p()
}

/// Assemble the normalised bound state belonging to a verified root.
pub fn build_bound_state(params: &ModelParams, level: &BoundStateEnergy) -> Result<BoundState> {
    let j = params.hopping();
    let (g0, g1) = (params.g0(), params.g1());
    let branch = level.branch;
    let y = level.edge_distance();
    let kappa = kappa_from_edge_distance(j, y);
    let decay = (-kappa).exp();
    let q = -branch.sign() * decay;

    // E - Omega relative to omega_c keeps the digits of the small offsets.
    let e_minus_omega = branch.sign() * (2.0 * j + y) - params.detuning();
    let denominator = j * e_minus_omega + g1 * g1 * q;
    let scale = j * e_minus_omega.abs() + g1 * g1 + g0 * g1;
    if denominator.abs() <= 1e-14 * scale {
        return Err(Error::DegenerateAmplitude {
            energy: level.energy,
            g0,
            g1,
            omega: params.omega(),
        });
    }
    let asymmetry = (j * e_minus_omega - g0 * g1) / denominator;
    let emitter_factor = j * (g0 + g1 * q) / denominator;

    let tail = asymmetry * asymmetry * decay * decay;
    // 1 - e^{-2 kappa}
    let gap = -(-2.0 * kappa).exp_m1();
    let norm = ((1.0 + tail) / gap + emitter_factor * emitter_factor).powf(-0.5);

    Ok(BoundState {
        branch,
        energy: level.energy,
        kappa,
        asymmetry,
        norm,
        emitter_amplitude: norm * emitter_factor,
    })
}

impl BoundState {
    /// Nearest-neighbour amplitude ratio `q` (`-e^{-kappa}` above the band).
    pub fn ratio(&self) -> f64 {
        -self.branch.sign() * (-self.kappa).exp()
    }

    /// Photon amplitude at site `j`.
    pub fn amplitude(&self, j: i64) -> f64 {
        let sign = if self.branch == Branch::Upper && j.rem_euclid(2) == 1 {
            -1.0
        } else {
            1.0
        };
        let envelope = (-self.kappa * j.unsigned_abs() as f64).exp();
        if j <= 0 {
            self.norm * sign * envelope
        } else {
            self.norm * sign * self.asymmetry * envelope
        }
    }

    /// Closed-form photon weight on `j <= 0` and on `j >= 1`.
    pub fn photon_weights(&self) -> (f64, f64) {
        let n2 = self.norm * self.norm;
        let gap = -(-2.0 * self.kappa).exp_m1();
        let right = self.asymmetry * self.asymmetry * (-2.0 * self.kappa).exp();
        (n2 / gap, n2 * right / gap)
    }

    /// `sum |alpha_j|^2 + |u_e|^2 - 1` from the closed-form sums.
    pub fn norm_defect(&self) -> f64 {
        let (left, right) = self.photon_weights();
        left + right + self.emitter_amplitude * self.emitter_amplitude - 1.0
    }

    /// `A^2 e^{-2 kappa}`; equals 1 for equal couplings.
    pub fn tail_ratio(&self) -> f64 {
        self.asymmetry * self.asymmetry * (-2.0 * self.kappa).exp()
    }

    /// Site range `|j| <= max(200, ceil(40 / kappa))` for direct sums.
    pub fn truncation(&self) -> i64 {
        let by_decay = (40.0 / self.kappa).ceil();
        if by_decay.is_finite() && by_decay < i64::MAX as f64 {
            MIN_TRUNCATION.max(by_decay as i64)
        } else {
            i64::MAX / 4
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiralityReport {
    /// `(1 - A^2 e^{-2 kappa}) / (1 + A^2 e^{-2 kappa})`.
    pub closed: f64,
    /// `(S_L - S_R) / (S_L + S_R)` from truncated sums.
    pub direct: f64,
    /// Photon weight on `j <= 0` (truncated sum).
    pub left: f64,
    /// Photon weight on `j >= 1` (truncated sum).
    pub right: f64,
    /// One coupling vanishes. The measure is taken about `j = 1/2`, which is
    /// not the symmetry axis of a locally coupled emitter, so a nonzero value
    /// there does not indicate a directional preference.
    pub axis_warning: bool,
}

/// Left/right asymmetry about `j = 1/2`; positive means left-heavy.
pub fn chirality(params: &ModelParams, state: &BoundState) -> ChiralityReport {
    let tail = state.tail_ratio();
    let closed = (1.0 - tail) / (1.0 + tail);

    let m = state.truncation();
    let mut left = 0.0;
    let mut right = 0.0;
    // Sum from the far tail inwards so small terms are not swallowed.
    for j in (1..=m).rev() {
        let a = state.amplitude(-j);
        left += a * a;
        let b = state.amplitude(j);
        right += b * b;
    }
    let a0 = state.amplitude(0);
    left += a0 * a0;

    ChiralityReport {
        closed,
        direct: (left - right) / (left + right),
        left,
        right,
        axis_warning: params.g0() == 0.0 || params.g1() == 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::bound_state_energies;

    fn states(omega: f64, g0: f64, g1: f64) -> (ModelParams, Vec<BoundState>) {
        let p = ModelParams::in_hopping_units(200.0, omega, g0, g1).unwrap();
        let s = bound_state_energies(&p)
            .iter()
            .map(|l| build_bound_state(&p, l).unwrap())
            .collect();
        (p, s)
    }

    #[test]
    fn kappa_examples() {
        let p = ModelParams::in_hopping_units(200.0, 200.0, 1.0, 1.0).unwrap();
        assert!(kappa_from_energy(&p, 202.0, Branch::Upper).is_err());
        assert!(kappa_from_energy(&p, 201.0, Branch::Upper).is_err());
        assert!(kappa_from_energy(&p, 197.0, Branch::Upper).is_err());
        let k = kappa_from_energy(&p, 200.0 + 2.0 * 1f64.cosh(), Branch::Upper).unwrap();
        assert!((k - 1.0).abs() < 1e-12);
        let k = kappa_from_energy(&p, 197.61, Branch::Lower).unwrap();
        assert!((k - 1.195f64.acosh()).abs() < 1e-12);
        assert!((k - 0.616).abs() < 2e-3);
    }

    #[test]
    fn equal_couplings_balance_tails() {
        for (omega, g) in [(200.0, 1.0), (201.0, 1.7), (202.5, 0.4), (199.0, 2.5)] {
            let (_, s) = states(omega, g, g);
            for b in &s {
                assert!((b.tail_ratio() - 1.0).abs() < 1e-12, "{omega} {g}");
                assert!((b.amplitude(0).abs() - b.amplitude(1).abs()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn local_coupling_at_resonance_has_unit_asymmetry() {
        let (_, s) = states(200.0, 1.0, 0.0);
        let upper = s.iter().find(|b| b.branch == Branch::Upper).unwrap();
        assert_eq!(upper.asymmetry, 1.0);
    }

    #[test]
    fn closed_norm_matches_direct_sum() {
        let (_, s) = states(201.0, 1.7, 1.0);
        assert_eq!(s.len(), 2);
        for b in &s {
            assert!(b.norm_defect().abs() < 1e-12);
            let direct: f64 = (-2000..=2000).map(|j| b.amplitude(j).powi(2)).sum::<f64>()
                + b.emitter_amplitude.powi(2);
            assert!((direct - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn amplitudes_anchor_and_alternate() {
        let (_, s) = states(201.0, 1.7, 1.0);
        for b in &s {
            assert_eq!(b.amplitude(0), b.norm);
            for j in (-10..=-1).chain(1..=10) {
                let product = b.amplitude(j) * b.amplitude(j + 1);
                match b.branch {
                    Branch::Upper => assert!(product < 0.0),
                    Branch::Lower => assert!(product > 0.0),
                }
            }
            for j in 1..30 {
                let ratio = b.amplitude(j + 1) / b.amplitude(j);
                assert!((ratio - b.ratio()).abs() < 1e-12);
                assert!((ratio.abs() - (-b.kappa).exp()).abs() < 1e-12);
            }
        }
        let lower = s.iter().find(|b| b.branch == Branch::Lower).unwrap();
        assert!(lower.amplitude(-6).abs() > lower.amplitude(7).abs());
    }

    #[test]
    fn satisfies_lattice_equations() {
        for (omega, g0, g1) in [(201.0, 1.7, 1.0), (200.0, 0.7, 1.3), (198.5, 2.0, 0.1)] {
            let (p, s) = states(omega, g0, g1);
            for b in &s {
                let x = b.energy - 200.0;
                for site in -20..=20i64 {
                    let mut lhs =
                        x * b.amplitude(site) + (b.amplitude(site + 1) + b.amplitude(site - 1));
                    if site == 0 {
                        lhs -= g0 * b.emitter_amplitude;
                    }
                    if site == 1 {
                        lhs -= g1 * b.emitter_amplitude;
                    }
                    assert!(lhs.abs() < 1e-10, "site {site}: {lhs}");
                }
                let emitter = (x - p.detuning()) * b.emitter_amplitude
                    - g0 * b.amplitude(0)
                    - g1 * b.amplitude(1);
                assert!(emitter.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn chirality_vanishes_for_equal_couplings() {
        let (p, s) = states(201.0, 1.7, 1.7);
        for b in &s {
            let c = chirality(&p, b);
            assert!(c.closed.abs() < 1e-12);
            assert!(c.direct.abs() < 1e-12);
            assert!(!c.axis_warning);
        }
    }

    #[test]
    fn local_coupling_reads_left_heavy_with_warning() {
        let (p, s) = states(201.0, 0.7, 0.0);
        assert_eq!(s.len(), 2);
        for b in &s {
            let c = chirality(&p, b);
            assert!(c.closed > 0.0 && c.direct > 0.0);
            assert!(c.axis_warning);
        }
    }

    #[test]
    fn both_branches_prefer_stronger_coupling_side() {
        let (p, s) = states(201.0, 1.7, 1.0);
        for b in &s {
            let c = chirality(&p, b);
            assert!(c.closed > 0.0);
            assert!((c.closed - c.direct).abs() < 1e-10);
        }
        let (p, s) = states(201.0, 1.0, 1.7);
        for b in &s {
            assert!(chirality(&p, b).closed < 0.0);
        }
    }
}
