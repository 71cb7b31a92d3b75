//! Finite-chain exact diagonalisation.
//!
//! An open chain of `n_sites` resonators (odd) with the emitter coupled to
//! the two central sites `i0 = (n_sites - 1) / 2` and `i0 + 1`, which play
//! the roles of lattice sites `j = 0` and `j = 1`. The single-excitation
//! Hamiltonian is a symmetric matrix of dimension `n_sites + 1` with the
//! emitter in the last row and column. It is only assembled densely when a
//! full eigendecomposition is requested.
//!
//! Out-of-band levels are located by inertia counting: eliminating the
//! emitter leaves a tridiagonal Schur complement, so the number of
//! eigenvalues below a shift is a Sturm count. Their eigenvectors come from
//! the free recursion run inwards from both chain ends. Time evolution uses
//! a full dense eigendecomposition.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::dynamics::{check_times, Method, TimeSeries};
use crate::error::{Error, Result};
use crate::model::{Branch, ModelParams};

/// Smallest accepted chain.
pub const MIN_SITES: usize = 11;

#[derive(Debug, Clone)]
pub struct FiniteModel {
    pub params: ModelParams,
    pub n_sites: usize,
}

/// An eigenvector of the finite model, split into photon and emitter parts.
#[derive(Debug, Clone)]
pub struct Eigenvector {
    pub energy: f64,
    /// Photon amplitudes indexed by chain position `0..n_sites`.
    pub photon: Vec<f64>,
    pub emitter: f64,
}

/// One level outside the band, with tail diagnostics from its eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleLevel {
    pub branch: Branch,
    pub energy: f64,
    /// Inverse decay length from a least-squares fit of `ln|amplitude|`.
    pub kappa_fit: f64,
    pub localization_length: f64,
    /// Squared emitter component, i.e. the weight of the excited emitter on
    /// this level.
    pub emitter_weight: f64,
    /// Photon weight on lattice sites `j <= 0` and `j >= 1`.
    pub left_weight: f64,
    pub right_weight: f64,
}

impl OracleLevel {
    pub fn asymmetry(&self) -> f64 {
        (self.left_weight - self.right_weight) / (self.left_weight + self.right_weight)
    }
}

/// Photon weight split of an evolved wavepacket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transmission {
    /// Weight on `j >= 1`.
    pub transmitted: f64,
    /// Weight on `j <= 0`.
    pub reflected: f64,
    pub emitter: f64,
    /// Time at which the weights were taken.
    pub time: f64,
}

/// Full eigendecomposition, energies relative to `omega_c`.
#[derive(Debug, Clone)]
pub struct Propagator {
    omega_c: f64,
    offsets: DVector<f64>,
    vectors: DMatrix<f64>,
}

impl Propagator {
    pub fn energies(&self) -> Vec<f64> {
        self.offsets.iter().map(|x| x + self.omega_c).collect()
    }

    /// `e^{-iHt} psi`, dropping the global phase `e^{-i omega_c t}`.
    pub fn evolve(&self, psi: &[Complex64], t: f64) -> Vec<Complex64> {
        let dim = self.offsets.len();
        let mut coefficients = vec![Complex64::new(0.0, 0.0); dim];
        for (n, c) in coefficients.iter_mut().enumerate() {
            let column = self.vectors.column(n);
            let overlap: Complex64 = column.iter().zip(psi).map(|(v, p)| p * *v).sum();
            *c = overlap * Complex64::from_polar(1.0, -self.offsets[n] * t);
        }
        (0..dim)
            .map(|i| {
                self.vectors
                    .row(i)
                    .iter()
                    .zip(&coefficients)
                    .map(|(v, c)| c * *v)
                    .sum()
            })
            .collect()
    }
}

impl FiniteModel {
    pub fn build(params: &ModelParams, n_sites: usize) -> Result<Self> {
        if n_sites < MIN_SITES || n_sites.is_multiple_of(2) {
            return Err(Error::Domain {
                quantity: "n_sites",
                value: n_sites as f64,
                domain: format!("odd and at least {MIN_SITES}"),
            });
        }
        Ok(Self {
            params: *params,
            n_sites,
        })
    }

    /// Smallest odd chain that keeps the light cone `2J t_max` at least 100
    /// sites away from both ends.
    pub fn minimal_sites(hopping: f64, t_max: f64) -> usize {
        let bound = 4.0 * hopping * t_max + 200.0;
        let mut n = bound.floor() as usize + 1;
        if n.is_multiple_of(2) {
            n += 1;
        }
        n.max(MIN_SITES)
    }

    /// Chain position of lattice site `j = 0`.
    pub fn center(&self) -> usize {
        (self.n_sites - 1) / 2
    }

    /// Lattice index `j` of chain position `p`.
    pub fn lattice_index(&self, p: usize) -> i64 {
        p as i64 - self.center() as i64
    }

    /// All eigenvalues, ascending, from the dense symmetric solver.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self
            .shifted_matrix()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        values.sort_by(f64::total_cmp);
        values.iter().map(|x| x + self.params.omega_c()).collect()
    }

    /// Dense Hamiltonian.
    pub fn matrix(&self) -> DMatrix<f64> {
        let mut m = self.shifted_matrix();
        for i in 0..m.nrows() {
            m[(i, i)] += self.params.omega_c();
        }
        m
    }

    /// Dense `H - omega_c`.
    fn shifted_matrix(&self) -> DMatrix<f64> {
        let n = self.n_sites;
        let i0 = self.center();
        let p = &self.params;
        let mut m = DMatrix::zeros(n + 1, n + 1);
        for site in 0..n - 1 {
            m[(site, site + 1)] = -p.hopping();
            m[(site + 1, site)] = -p.hopping();
        }
        m[(n, n)] = p.detuning();
        m[(n, i0)] = p.g0();
        m[(i0, n)] = p.g0();
        m[(n, i0 + 1)] = p.g1();
        m[(i0 + 1, n)] = p.g1();
        m
    }

    pub fn propagator(&self) -> Propagator {
        let eigen = self.shifted_matrix().symmetric_eigen();
        Propagator {
            omega_c: self.params.omega_c(),
            offsets: eigen.eigenvalues,
            vectors: eigen.eigenvectors,
        }
    }

    /// Tridiagonal Schur complement `H_ph - s - v v^T / (Omega - s)` at the
    /// shift `s = lambda - omega_c`, as (diagonal, off-diagonal).
    fn schur_complement(&self, shift: f64) -> (Vec<f64>, Vec<f64>) {
        let n = self.n_sites;
        let i0 = self.center();
        let (g0, g1) = (self.params.g0(), self.params.g1());
        let emitter_gap = self.params.detuning() - shift;
        let mut diag = vec![-shift; n];
        let mut off = vec![-self.params.hopping(); n - 1];
        diag[i0] -= g0 * g0 / emitter_gap;
        diag[i0 + 1] -= g1 * g1 / emitter_gap;
        off[i0] -= g0 * g1 / emitter_gap;
        (diag, off)
    }

    /// Number of eigenvalues strictly below `omega_c + shift`.
    pub fn count_below_offset(&self, shift: f64) -> usize {
        let mut shift = shift;
        if shift == self.params.detuning() {
            shift = shift.next_down();
        }
        let (diag, off) = self.schur_complement(shift);
        let mut negatives = usize::from(self.params.detuning() - shift < 0.0);
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut pivot = 0.0;
        for (p, d) in diag.iter().enumerate() {
            pivot = if p == 0 {
                *d
            } else {
                d - off[p - 1] * off[p - 1] / pivot
            };
            if pivot == 0.0 {
                pivot = -tiny;
            }
            if pivot < 0.0 {
                negatives += 1;
            }
        }
        negatives
    }

    /// `index`-th eigenvalue (0-based, ascending) inside `[lo, hi]` (offsets
    /// from `omega_c`), by bisection on the Sturm count.
    fn bisect_level(&self, index: usize, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below_offset(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Levels strictly outside `[omega_c - 2J, omega_c + 2J]`, lower first.
    pub fn out_of_band_levels(&self) -> Vec<OracleLevel> {
        let j = self.params.hopping();
        let dim = self.n_sites + 1;
        let reach = 4.0 * j
            + self.params.detuning().abs()
            + 2.0 * (self.params.g0() + self.params.g1())
            + 1.0;
        let below = self.count_below_offset(-2.0 * j);
        let above = dim - self.count_below_offset((2.0 * j).next_up());

        let mut levels = Vec::with_capacity(below + above);
        for index in 0..below {
            let x = self.bisect_level(index, -reach, -2.0 * j);
            levels.push(self.level_at(Branch::Lower, x));
        }
        for index in dim - above..dim {
            let x = self.bisect_level(index, 2.0 * j, reach);
            levels.push(self.level_at(Branch::Upper, x));
        }
        levels
    }

    fn level_at(&self, branch: Branch, offset: f64) -> OracleLevel {
        let v = self.eigenvector_at_offset(offset);
        let i0 = self.center();
        let left_weight = v.photon[..=i0].iter().map(|a| a * a).sum();
        let right_weight = v.photon[i0 + 1..].iter().map(|a| a * a).sum();
        let kappa_fit = self.tail_decay(&v.photon);
        OracleLevel {
            branch,
            energy: v.energy,
            kappa_fit,
            localization_length: 1.0 / kappa_fit,
            emitter_weight: v.emitter * v.emitter,
            left_weight,
            right_weight,
        }
    }

    /// Normalised eigenvector for an out-of-band eigenvalue `omega_c + offset`.
    ///
    /// The free recursion grows towards the emitter from either chain end,
    /// so it is run from both ends as amplitude ratios and the two halves are
    /// matched on the coupled sites.
    pub fn eigenvector_at_offset(&self, offset: f64) -> Eigenvector {
        let n = self.n_sites;
        let i0 = self.center();
        let (diag, off) = self.schur_complement(offset);

        // mu[p] = x[p+1] / x[p] for p < i0.
        let mut mu = vec![0.0; i0];
        for p in 0..i0 {
            let back = if p == 0 { 0.0 } else { off[p - 1] / mu[p - 1] };
            mu[p] = -(diag[p] + back) / off[p];
        }
        // nu[p] = x[p-1] / x[p] for p > i0 + 1.
        let mut nu = vec![0.0; n];
        for p in (i0 + 2..n).rev() {
            let ahead = if p == n - 1 { 0.0 } else { off[p] / nu[p + 1] };
            nu[p] = -(diag[p] + ahead) / off[p - 1];
        }

        // Amplitude on i0 + 1 relative to i0 = 1, from whichever coupled row
        // is better conditioned.
        let from_row_i0 = (-(off[i0 - 1] / mu[i0 - 1] + diag[i0]), off[i0]);
        let from_row_next = (-off[i0], diag[i0 + 1] + off[i0 + 1] / nu[i0 + 2]);
        let (num, den) = if from_row_i0.1.abs() >= from_row_next.1.abs() {
            from_row_i0
        } else {
            from_row_next
        };
        let b = num / den;

        let mut photon = vec![0.0; n];
        photon[i0] = 1.0;
        for p in (0..i0).rev() {
            photon[p] = photon[p + 1] / mu[p];
        }
        photon[i0 + 1] = b;
        for p in i0 + 2..n {
            photon[p] = photon[p - 1] / nu[p];
        }
        let emitter = (self.params.g0() * photon[i0] + self.params.g1() * photon[i0 + 1])
            / (offset - self.params.detuning());

        let norm = (photon.iter().map(|a| a * a).sum::<f64>() + emitter * emitter).sqrt();
        photon.iter_mut().for_each(|a| *a /= norm);
        Eigenvector {
            energy: self.params.omega_c() + offset,
            photon,
            emitter: emitter / norm,
        }
    }

    /// `max |(H - E) v|` over all components.
    pub fn eigen_residual(&self, v: &Eigenvector) -> f64 {
        let n = self.n_sites;
        let i0 = self.center();
        let p = &self.params;
        let a = &v.photon;
        let shift = v.energy - p.omega_c();
        let mut worst = (p.detuning() - shift) * v.emitter + p.g0() * a[i0] + p.g1() * a[i0 + 1];
        worst = worst.abs();
        for site in 0..n {
            let mut h = -shift * a[site];
            if site > 0 {
                h -= p.hopping() * a[site - 1];
            }
            if site + 1 < n {
                h -= p.hopping() * a[site + 1];
            }
            if site == i0 {
                h += p.g0() * v.emitter;
            }
            if site == i0 + 1 {
                h += p.g1() * v.emitter;
            }
            worst = worst.max(h.abs());
        }
        worst
    }

    /// Mean of the left and right tail decay rates fitted to
    /// `ln|amplitude|` against distance from the coupled sites.
    fn tail_decay(&self, photon: &[f64]) -> f64 {
        let i0 = self.center();
        let peak = photon.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        let floor = peak * 1e-200;
        let span = i0 / 2;
        let left: Vec<(f64, f64)> = (3..=span)
            .map(|d| (d as f64, photon[i0 - d].abs()))
            .take_while(|(_, a)| *a > floor)
            .map(|(d, a)| (d, a.ln()))
            .collect();
        let right: Vec<(f64, f64)> = (3..=span)
            .map(|d| (d as f64, photon[i0 + 1 + d].abs()))
            .take_while(|(_, a)| *a > floor)
            .map(|(d, a)| (d, a.ln()))
            .collect();
        let slopes: Vec<f64> = [left, right]
            .iter()
            .filter(|pts| pts.len() >= 3)
            .map(|pts| -least_squares_slope(pts))
            .collect();
        if slopes.is_empty() {
            f64::NAN
        } else {
            slopes.iter().sum::<f64>() / slopes.len() as f64
        }
    }

    /// `P_e(t)` for the excited emitter from the full eigendecomposition.
    pub fn evolve(&self, times: &[f64]) -> Result<TimeSeries> {
        check_times(times)?;
        let t_max = times.last().copied().unwrap_or(0.0);
        let minimal = Self::minimal_sites(self.params.hopping(), t_max);
        if self.n_sites < minimal {
            return Err(Error::LatticeTooSmall {
                n_sites: self.n_sites,
                minimal,
            });
        }
        let propagator = self.propagator();
        let emitter = self.n_sites;
        let weights: Vec<f64> = propagator
            .vectors
            .row(emitter)
            .iter()
            .map(|v| v * v)
            .collect();
        let p_e = times
            .iter()
            .map(|&t| {
                weights
                    .iter()
                    .zip(propagator.offsets.iter())
                    .map(|(w, x)| Complex64::from_polar(*w, -x * t))
                    .sum::<Complex64>()
                    .norm_sqr()
            })
            .collect();
        Ok(TimeSeries {
            times: times.to_vec(),
            p_e,
            method: Method::Oracle,
        })
    }
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Geometry of a Gaussian wavepacket run across the emitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketPlan {
    /// Start centre, in lattice sites left of `j = 0`.
    pub distance: f64,
    /// Time for the centre to travel `2 * distance`.
    pub duration: f64,
    /// Spatial width at `duration`.
    pub final_width: f64,
    pub minimal_sites: usize,
}

/// Launch distance, duration and chain length for a packet centred at `k0`
/// with spatial width `width`.
pub fn plan_wavepacket(hopping: f64, k0: f64, width: f64) -> Result<PacketPlan> {
    if !(k0 > 0.2 && k0 < PI - 0.2) {
        return Err(Error::Domain {
            quantity: "k0",
            value: k0,
            domain: "(0.2, pi - 0.2)".into(),
        });
    }
    if !(width >= 10.0) {
        return Err(Error::Domain {
            quantity: "width",
            value: width,
            domain: "at least 10 sites".into(),
        });
    }
    let distance = (8.0 * width).ceil();
    let velocity = 2.0 * hopping * k0.sin();
    let duration = 2.0 * distance / velocity;
    let curvature = 2.0 * hopping * k0.cos();
    let spread = curvature * duration / (2.0 * width * width);
    let final_width = width * (1.0 + spread * spread).sqrt();
    let half = distance + 8.0 * final_width + 10.0;
    let mut minimal = 2 * half.ceil() as usize + 1;
    if minimal.is_multiple_of(2) {
        minimal += 1;
    }
    Ok(PacketPlan {
        distance,
        duration,
        final_width,
        minimal_sites: minimal.max(MIN_SITES),
    })
}

/// Launch a Gaussian packet from the left, let it pass the emitter, and
/// split the final photon weight at `j = 1/2`.
pub fn wavepacket_transmission(
    params: &ModelParams,
    k0: f64,
    width: f64,
    n_sites: usize,
) -> Result<Transmission> {
    let plan = plan_wavepacket(params.hopping(), k0, width)?;
    if n_sites < plan.minimal_sites {
        return Err(Error::LatticeTooSmall {
            n_sites,
            minimal: plan.minimal_sites,
        });
    }
    let model = FiniteModel::build(params, n_sites)?;
    let i0 = model.center();

    let mut psi: Vec<Complex64> = (0..n_sites)
        .map(|p| {
            let x = model.lattice_index(p) as f64 + plan.distance;
            Complex64::from_polar(
                (-x * x / (4.0 * width * width)).exp(),
                k0 * model.lattice_index(p) as f64,
            )
        })
        .collect();
    psi.push(Complex64::new(0.0, 0.0));
    let norm = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    psi.iter_mut().for_each(|a| *a /= norm);

    let out = model.propagator().evolve(&psi, plan.duration);
    let edge: f64 = out[..5]
        .iter()
        .chain(&out[n_sites - 5..n_sites])
        .map(|a| a.norm_sqr())
        .sum();
    if edge > 1e-9 {
        return Err(Error::Domain {
            quantity: "boundary weight",
            value: edge,
            domain: "packet must not reach the chain ends".into(),
        });
    }
    Ok(Transmission {
        transmitted: out[i0 + 1..n_sites].iter().map(|a| a.norm_sqr()).sum(),
        reflected: out[..=i0].iter().map(|a| a.norm_sqr()).sum(),
        emitter: out[n_sites].norm_sqr(),
        time: plan.duration,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_rejects_bad_sizes() {
        let p = ModelParams::in_hopping_units(200.0, 200.0, 1.0, 1.0).unwrap();
        assert!(FiniteModel::build(&p, 10).is_err());
        assert!(FiniteModel::build(&p, 9).is_err());
        assert!(FiniteModel::build(&p, 101).is_ok());
    }

    #[test]
    fn matrix_layout() {
        let p = ModelParams::in_hopping_units(200.0, 201.0, 1.7, 1.0).unwrap();
        let m = FiniteModel::build(&p, 11).unwrap();
        let h = &m.matrix();
        assert_eq!(h.nrows(), 12);
        assert!((h - h.transpose()).amax() == 0.0);
        assert_eq!(h[(11, 11)], 201.0);
        assert_eq!(h[(11, 5)], 1.7);
        assert_eq!(h[(11, 6)], 1.0);
        assert_eq!(h[(3, 4)], -1.0);
        assert_eq!(h[(0, 0)], 200.0);
    }

    #[test]
    fn free_chain_spectrum() {
        let p = ModelParams::free_lattice(200.0, 200.7, 1.0).unwrap();
        let m = FiniteModel::build(&p, 11).unwrap();
        let mut expected: Vec<f64> = (1..=11)
            .map(|k| 200.0 - 2.0 * (PI * k as f64 / 12.0).cos())
            .collect();
        expected.push(200.7);
        expected.sort_by(f64::total_cmp);
        for (a, b) in m.spectrum().iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(m.out_of_band_levels().is_empty());
    }

    #[test]
    fn sturm_count_matches_dense_spectrum() {
        let p = ModelParams::in_hopping_units(200.0, 199.3, 1.2, 0.4).unwrap();
        let m = FiniteModel::build(&p, 201).unwrap();
        let spectrum = m.spectrum();
        for shift in [-5.0, -2.3, -2.0, -1.0, 0.0, 0.7, 1.9, 2.0, 2.4, 6.0] {
            let dense = spectrum.iter().filter(|e| **e < 200.0 + shift).count();
            assert_eq!(m.count_below_offset(shift), dense, "shift {shift}");
        }
    }

    #[test]
    fn bisected_levels_match_dense_eigenvalues() {
        let p = ModelParams::in_hopping_units(200.0, 201.0, 1.7, 1.0).unwrap();
        let m = FiniteModel::build(&p, 301).unwrap();
        let spectrum = m.spectrum();
        let levels = m.out_of_band_levels();
        assert_eq!(levels.len(), 2);
        assert!((levels[0].energy - spectrum[0]).abs() < 1e-10);
        assert!((levels[1].energy - spectrum[spectrum.len() - 1]).abs() < 1e-10);
    }

    #[test]
    fn eigenvectors_solve_the_finite_problem() {
        let p = ModelParams::in_hopping_units(200.0, 201.0, 1.7, 1.0).unwrap();
        let m = FiniteModel::build(&p, 401).unwrap();
        for level in m.out_of_band_levels() {
            let v = m.eigenvector_at_offset(level.energy - 200.0);
            assert!(m.eigen_residual(&v) < 1e-9);
        }
    }

    #[test]
    fn light_cone_precondition() {
        let p = ModelParams::in_hopping_units(200.0, 200.0, 1.0, 1.0).unwrap();
        let m = FiniteModel::build(&p, 401).unwrap();
        assert!(m.evolve(&[0.0, 49.0]).is_ok());
        match m.evolve(&[0.0, 60.0]) {
            Err(Error::LatticeTooSmall { minimal, .. }) => assert_eq!(minimal, 441),
            other => panic!("{other:?}"),
        }
        assert_eq!(FiniteModel::minimal_sites(1.0, 50.0), 401);
    }

    #[test]
    fn evolution_starts_at_one() {
        let p = ModelParams::in_hopping_units(200.0, 200.0, 0.7, 1.3).unwrap();
        let m = FiniteModel::build(&p, 211).unwrap();
        let ts = m.evolve(&[0.0]).unwrap();
        assert!((ts.p_e[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wavepacket_rejects_bad_inputs() {
        let p = ModelParams::in_hopping_units(200.0, 200.0, 1.0, 0.0).unwrap();
        assert!(wavepacket_transmission(&p, 0.1, 20.0, 2001).is_err());
        assert!(wavepacket_transmission(&p, 1.0, 5.0, 2001).is_err());
        assert!(matches!(
            wavepacket_transmission(&p, 1.0, 20.0, 101),
            Err(Error::LatticeTooSmall { .. })
        ));
    }
}
