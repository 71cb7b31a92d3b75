//! Physical parameters, the tight-binding dispersion and the band it spans.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// The five parameters of the array plus emitter.
///
/// `omega_c` is the resonator frequency, `omega` the emitter transition
/// frequency, `hopping` the nearest-neighbour photon hopping `J`, and `g0`,
/// `g1` the emitter couplings to resonators 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    omega_c: f64,
    omega: f64,
    hopping: f64,
    g0: f64,
    g1: f64,
}

impl ModelParams {
    /// Validated constructor. Rejects non-finite values, `hopping <= 0`,
    /// negative couplings and a fully decoupled emitter.
    pub fn new(omega_c: f64, omega: f64, hopping: f64, g0: f64, g1: f64) -> Result<Self> {
        let params = Self::checked(omega_c, omega, hopping, g0, g1)?;
        if g0 + g1 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "g0 + g1",
                value: g0 + g1,
                reason: "the emitter must couple to at least one resonator",
            });
        }
        Ok(params)
    }

    /// Same as [`ModelParams::new`] with `hopping = 1`.
    pub fn in_hopping_units(omega_c: f64, omega: f64, g0: f64, g1: f64) -> Result<Self> {
        Self::new(omega_c, omega, 1.0, g0, g1)
    }

    /// Equal couplings `g0 = g1 = g`.
    pub fn symmetric(omega_c: f64, omega: f64, hopping: f64, g: f64) -> Result<Self> {
        Self::new(omega_c, omega, hopping, g, g)
    }

    /// Reference configuration with both couplings switched off: a free chain
    /// next to an isolated emitter. Only meaningful for the scattering solver
    /// and the finite-lattice oracle; the bound-state machinery reports no
    /// levels for it.
    pub fn free_lattice(omega_c: f64, omega: f64, hopping: f64) -> Result<Self> {
        Self::checked(omega_c, omega, hopping, 0.0, 0.0)
    }

    fn checked(omega_c: f64, omega: f64, hopping: f64, g0: f64, g1: f64) -> Result<Self> {
        for (name, value) in [
            ("omega_c", omega_c),
            ("omega", omega),
            ("hopping", hopping),
            ("g0", g0),
            ("g1", g1),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite",
                });
            }
        }
        if hopping <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "hopping",
                value: hopping,
                reason: "must be positive",
            });
        }
        if g0 < 0.0 {
            return Err(Error::InvalidParameter {
                name: "g0",
                value: g0,
                reason: "couplings must be nonnegative",
            });
        }
        if g1 < 0.0 {
            return Err(Error::InvalidParameter {
                name: "g1",
                value: g1,
                reason: "couplings must be nonnegative",
            });
        }
        Ok(Self {
            omega_c,
            omega,
            hopping,
            g0,
            g1,
        })
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hopping(&self) -> f64 {
        self.hopping
    }

    pub fn g0(&self) -> f64 {
        self.g0
    }

    pub fn g1(&self) -> f64 {
        self.g1
    }

    pub fn is_decoupled(&self) -> bool {
        self.g0 == 0.0 && self.g1 == 0.0
    }

    /// Emitter detuning from the resonator frequency, `Omega - omega_c`.
    pub fn detuning(&self) -> f64 {
        self.omega - self.omega_c
    }

    /// Copy with both `omega_c` and `omega` shifted by `shift`.
    pub fn shifted(&self, shift: f64) -> Result<Self> {
        Self::checked(
            self.omega_c + shift,
            self.omega + shift,
            self.hopping,
            self.g0,
            self.g1,
        )
    }

    /// Copy with new couplings, keeping the frequencies.
    pub fn with_couplings(&self, g0: f64, g1: f64) -> Result<Self> {
        Self::new(self.omega_c, self.omega, self.hopping, g0, g1)
    }

    /// Copy with a new emitter frequency.
    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::checked(self.omega_c, omega, self.hopping, self.g0, self.g1)
    }

    /// Photon energy `omega_c - 2 J cos k` for `k` in the first Brillouin zone.
    pub fn dispersion(&self, k: f64) -> Result<f64> {
        if !(-PI..=PI).contains(&k) {
            return Err(Error::Domain {
                quantity: "k",
                value: k,
                domain: "[-pi, pi]".into(),
            });
        }
        Ok(self.omega_c - 2.0 * self.hopping * k.cos())
    }

    pub fn band_edges(&self) -> BandGeometry {
        BandGeometry {
            lower_edge: self.omega_c - 2.0 * self.hopping,
            upper_edge: self.omega_c + 2.0 * self.hopping,
        }
    }
}

/// The continuum `[omega_c - 2J, omega_c + 2J]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandGeometry {
    pub lower_edge: f64,
    pub upper_edge: f64,
}

impl BandGeometry {
    pub fn width(&self) -> f64 {
        self.upper_edge - self.lower_edge
    }

    /// True for energies on the closed band.
    pub fn contains(&self, energy: f64) -> bool {
        energy >= self.lower_edge && energy <= self.upper_edge
    }
}

/// Which side of the band an out-of-band level sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// Below the band, `E_-`.
    Lower,
    /// Above the band, `E_+`.
    Upper,
}

impl Branch {
    /// `+1` above the band, `-1` below it.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Upper => 1.0,
            Branch::Lower => -1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Branch::Upper => "+",
            Branch::Lower => "-",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::Upper => "upper",
            Branch::Lower => "lower",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fig2() -> ModelParams {
        ModelParams::in_hopping_units(200.0, 200.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn dispersion_spot_values() {
        let p = fig2();
        assert_eq!(p.dispersion(0.0).unwrap(), 198.0);
        assert!((p.dispersion(PI / 2.0).unwrap() - 200.0).abs() < 1e-12);
        assert_eq!(p.dispersion(PI).unwrap(), 202.0);
        assert_eq!(p.dispersion(-PI).unwrap(), 202.0);
    }

    #[test]
    fn dispersion_rejects_k_outside_zone() {
        let p = fig2();
        assert!(matches!(p.dispersion(3.2), Err(Error::Domain { .. })));
        assert!(p.dispersion(-3.2).is_err());
        assert!(p.dispersion(f64::NAN).is_err());
    }

    #[test]
    fn band_edges_examples() {
        let b = fig2().band_edges();
        assert_eq!((b.lower_edge, b.upper_edge), (198.0, 202.0));
        let b = ModelParams::new(0.0, 0.0, 1.0, 1.0, 0.0)
            .unwrap()
            .band_edges();
        assert_eq!((b.lower_edge, b.upper_edge), (-2.0, 2.0));
        let b = ModelParams::new(200.0, 200.0, 2.0, 1.0, 0.0)
            .unwrap()
            .band_edges();
        assert_eq!((b.lower_edge, b.upper_edge), (196.0, 204.0));
        assert_eq!(b.width(), 8.0);
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        assert!(ModelParams::new(200.0, 200.0, 1.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(200.0, 200.0, 0.0, 1.0, 0.0).is_err());
        assert!(ModelParams::new(200.0, 200.0, -1.0, 1.0, 0.0).is_err());
        assert!(ModelParams::new(200.0, 200.0, 1.0, -0.1, 1.0).is_err());
        assert!(ModelParams::new(200.0, 200.0, 1.0, 1.0, -0.1).is_err());
        assert!(ModelParams::new(f64::INFINITY, 200.0, 1.0, 1.0, 0.0).is_err());
        assert!(ModelParams::free_lattice(200.0, 200.0, 1.0)
            .unwrap()
            .is_decoupled());
    }

    proptest! {
        #[test]
        fn dispersion_is_even_and_inside_band(k in -PI..=PI, wc in -50.0..250.0f64, j in 0.1..5.0f64) {
            let p = ModelParams::new(wc, wc, j, 1.0, 0.5).unwrap();
            let b = p.band_edges();
            let e = p.dispersion(k).unwrap();
            prop_assert_eq!(e, p.dispersion(-k).unwrap());
            prop_assert!(e >= b.lower_edge && e <= b.upper_edge);
        }
    }
}
