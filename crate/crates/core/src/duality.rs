//! Babinet duality between wire antennas and their complementary apertures.
//!
//! `Z_a Z_w = η²/4`. When the aperture sits in a dielectric of relative
//! permittivity ε and the dual wire in the complementary medium (μ_r = ε),
//! the constant is the vacuum `η0²/4`: scaling the same-medium relation by
//! the medium swap cancels the medium factors exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::em::constants::{EPS0, ETA0, MU0};
use crate::em::{ImpedanceSweep, Medium, SpaceTag};
use crate::error::{ensure_positive, Error, Result};

/// Choice of η in the Babinet relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum BabinetEta {
    /// Free-space impedance; exact for aperture/wire pairs in swapped media.
    #[default]
    Vacuum,
    /// Wave impedance of the wire-space medium.
    WireMedium,
}

impl BabinetEta {
    pub fn value(&self, wire_medium: &Medium) -> f64 {
        match self {
            BabinetEta::Vacuum => ETA0,
            BabinetEta::WireMedium => wire_medium.wave_impedance(),
        }
    }
}

/// Babinet map with a fixed wave impedance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityMap {
    eta_m: f64,
}

impl DualityMap {
    pub fn new(eta_m: f64) -> Result<Self> {
        Ok(Self {
            eta_m: ensure_positive("eta_m", eta_m)?,
        })
    }

    pub fn vacuum() -> Self {
        Self { eta_m: ETA0 }
    }

    pub fn eta(&self) -> f64 {
        self.eta_m
    }

    /// Maps an impedance to the complementary space. The map is its own inverse.
    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        wire_to_aperture(z, self.eta_m)
    }

    pub fn map_sweep(&self, sweep: &ImpedanceSweep) -> Result<ImpedanceSweep> {
        let target = match sweep.space() {
            SpaceTag::Wire => SpaceTag::Aperture,
            SpaceTag::Aperture => SpaceTag::Wire,
        };
        sweep.map(target, |f, z| {
            self.apply(z).map_err(|e| Error::SweepPoint {
                freq_hz: f,
                source: Box::new(e),
            })
        })
    }
}

/// `Z_a = η_m² / (4 Z_w)`.
pub fn wire_to_aperture(z_w: Complex64, eta_m: f64) -> Result<Complex64> {
    ensure_positive("eta_m", eta_m)?;
    if z_w.norm() == 0.0 {
        return Err(Error::Degenerate("zero impedance is a pole of the Babinet map".into()));
    }
    Ok(Complex64::new(0.25 * eta_m * eta_m, 0.0) / z_w)
}

/// Inverse of [`wire_to_aperture`] (the same map).
pub fn aperture_to_wire(z_a: Complex64, eta_m: f64) -> Result<Complex64> {
    wire_to_aperture(z_a, eta_m)
}

/// Exchanges permittivity and permeability.
pub fn map_medium(aperture_medium: &Medium) -> Medium {
    aperture_medium.swapped()
}

/// Capacitance of a planar electrode in a groundplane from the inductance of
/// the complementary loop: `C_a = 4 (ε0/μ0) L_w`.
pub fn loop_inductance_to_capacitance(l_w: f64) -> f64 {
    4.0 * EPS0 / MU0 * l_w
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn self_dual_point() {
        let z = Complex64::new(ETA0 / 2.0, 0.0);
        let za = wire_to_aperture(z, ETA0).unwrap();
        assert!((za - z).norm() < 1e-12);
    }

    #[test]
    fn half_wave_dipole_complement() {
        let za = wire_to_aperture(Complex64::new(73.0, 42.5), ETA0).unwrap();
        // η0²/4 = 35481 Ω²
        assert_relative_eq!(0.25 * ETA0 * ETA0, 35481.3, max_relative = 1e-4);
        // the classical slot complement 363 - j211 Ω
        assert!((za.re - 363.0).abs() < 1.0, "{za}");
        assert!((za.im + 211.3).abs() < 1.0, "{za}");
    }

    #[test]
    fn zero_is_a_pole() {
        assert!(matches!(wire_to_aperture(Complex64::new(0.0, 0.0), ETA0), Err(Error::Degenerate(_))));
    }

    #[test]
    fn medium_swap() {
        let m = Medium::new(6.0, 1.0).unwrap();
        assert_eq!(map_medium(&m), Medium::new(1.0, 6.0).unwrap());
        assert_eq!(map_medium(&Medium::VACUUM), Medium::VACUUM);
        assert_eq!(map_medium(&map_medium(&m)), m);
    }

    #[test]
    fn loop_inductance_maps_to_electrode_capacitance() {
        let c = loop_inductance_to_capacitance(1e-9);
        assert!((c - 28.18e-15).abs() < 0.05e-15, "{c:e}");
        assert_relative_eq!(loop_inductance_to_capacitance(2e-9), 2.0 * c, max_relative = 1e-15);
        for f in [1e6, 1e9, 5e9, 1e11] {
            let w = 2.0 * PI * f;
            let za = wire_to_aperture(Complex64::new(0.0, w * 1e-9), ETA0).unwrap();
            let zc = Complex64::new(0.0, -1.0 / (w * c));
            assert!((za - zc).norm() < 1e-12 * zc.norm());
        }
    }

    #[test]
    fn peaks_map_to_minima() {
        let zs = [40.0, 120.0, 300.0, 110.0, 35.0].map(|r| Complex64::new(r, 0.0));
        let za: Vec<f64> = zs.iter().map(|z| wire_to_aperture(*z, ETA0).unwrap().re).collect();
        let (imax, _) = zs.iter().enumerate().max_by(|a, b| a.1.re.total_cmp(&b.1.re)).unwrap();
        let (imin, _) = za.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        assert_eq!(imax, imin);
    }

    proptest! {
        #[test]
        fn involution(re in 1e-3f64..1e4, im in -1e4f64..1e4, eta in 10.0f64..2000.0) {
            let z = Complex64::new(re, im);
            let back = aperture_to_wire(wire_to_aperture(z, eta).unwrap(), eta).unwrap();
            prop_assert!((back - z).norm() <= 1e-12 * z.norm());
        }
    }
}
