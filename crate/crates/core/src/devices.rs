//! Reference devices used by the reproduction checks and the CLI.
//!
//! The Xmon dimensions are the standard ones. The differential and 3D
//! dimensions are chosen so the structures resonate near their target
//! frequencies: one round trip around a differential island spans a
//! wavelength at 110 GHz, and the 3D pads form a half-wave dipole at 150 GHz.
//! Strips stay thin so the higher dipole modes remain inside thin-wire
//! validity.

use crate::em::FrequencyGrid;
use crate::error::Result;
use crate::geometry::QubitGeometry;
use crate::junction::JunctionModel;

const UM: f64 = 1e-6;

/// Silicon-like substrate used throughout (ε_eff = 6).
pub const SUBSTRATE_EPS: f64 = 11.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceDevice {
    pub id: &'static str,
    pub label: &'static str,
    pub geometry: QubitGeometry,
    /// Sweep window (Hz) and point count.
    pub f_start: f64,
    pub f_stop: f64,
    pub n_points: usize,
}

impl ReferenceDevice {
    pub fn grid(&self) -> Result<FrequencyGrid> {
        FrequencyGrid::linear(self.f_start, self.f_stop, self.n_points)
    }

    /// Same device on a coarser grid with `n` points.
    pub fn with_points(mut self, n: usize) -> Self {
        self.n_points = n;
        self
    }
}

/// Junction used for every device: `R_n = 7 kΩ`, `C_j = 9 fF`.
pub fn reference_junction() -> JunctionModel {
    JunctionModel::new(7e3, 9e-15).expect("valid constants")
}

/// Xmon with `l = 165 μm, s = 24 μm, w = 24 μm`.
pub fn xmon_large() -> ReferenceDevice {
    ReferenceDevice {
        id: "xmon-large",
        label: "Xmon l=165 s=24 w=24 um",
        geometry: QubitGeometry::xmon(165.0 * UM, 24.0 * UM, 24.0 * UM, SUBSTRATE_EPS).expect("valid"),
        f_start: 20e9,
        f_stop: 180e9,
        n_points: 641,
    }
}

/// Xmon with `l = 130 μm, s = 8 μm, w = 4 μm`.
pub fn xmon_small() -> ReferenceDevice {
    ReferenceDevice {
        id: "xmon-small",
        label: "Xmon l=130 s=8 w=4 um",
        geometry: QubitGeometry::xmon(130.0 * UM, 8.0 * UM, 4.0 * UM, SUBSTRATE_EPS).expect("valid"),
        f_start: 20e9,
        f_stop: 200e9,
        n_points: 721,
    }
}

/// Differential transmon: 400 × 100 μm islands, 30 μm gaps and separation.
/// Mid-gap round trip around one island is 1.12 mm, a wavelength at 109 GHz.
pub fn differential() -> ReferenceDevice {
    ReferenceDevice {
        id: "differential",
        label: "differential 400x100 um islands",
        geometry: QubitGeometry::differential(400.0 * UM, 100.0 * UM, 30.0 * UM, 30.0 * UM, SUBSTRATE_EPS)
            .expect("valid"),
        f_start: 40e9,
        f_stop: 240e9,
        n_points: 401,
    }
}

/// 3D transmon: two 195 × 12 μm pads across a 20 μm feed gap, 410 μm in
/// total, half a wavelength at 150 GHz in ε_eff = 6.
pub fn three_d() -> ReferenceDevice {
    ReferenceDevice {
        id: "3d",
        label: "3D transmon 2x195 um pads",
        geometry: QubitGeometry::three_d(195.0 * UM, 12.0 * UM, 20.0 * UM, SUBSTRATE_EPS).expect("valid"),
        f_start: 50e9,
        f_stop: 800e9,
        n_points: 751,
    }
}

/// Perimeter of the single-ended transmon families (mid-gap), 1.2 mm:
/// a wavelength at about 102 GHz.
pub const SINGLE_ENDED_PERIMETER: f64 = 1.2e-3;

/// Aspect ratios `p/w` of the single-ended families.
pub const ASPECT_RATIOS: [f64; 3] = [100.0, 50.0, 20.0];

pub fn circular_family() -> Vec<ReferenceDevice> {
    ASPECT_RATIOS
        .iter()
        .zip(["circular-p/w=100", "circular-p/w=50", "circular-p/w=20"])
        .map(|(&ratio, id)| ReferenceDevice {
            id,
            label: id,
            geometry: QubitGeometry::circular_with_aspect(SINGLE_ENDED_PERIMETER, ratio, SUBSTRATE_EPS)
                .expect("valid"),
            f_start: 20e9,
            f_stop: 140e9,
            n_points: 121,
        })
        .collect()
}

/// Rectangular islands whose mid-gap outline is `0.4 p × 0.1 p`.
pub fn rectangular_family() -> Vec<ReferenceDevice> {
    let p = SINGLE_ENDED_PERIMETER;
    ASPECT_RATIOS
        .iter()
        .zip(["rectangular-p/w=100", "rectangular-p/w=50", "rectangular-p/w=20"])
        .map(|(&ratio, id)| {
            let g = p / ratio;
            ReferenceDevice {
                id,
                label: id,
                geometry: QubitGeometry::rectangular(0.4 * p - g, 0.1 * p - g, g, SUBSTRATE_EPS).expect("valid"),
                f_start: 20e9,
                f_stop: 140e9,
                n_points: 121,
            }
        })
        .collect()
}

/// Every device entering the conjugate-match checks.
pub fn matched_devices() -> [ReferenceDevice; 4] {
    [xmon_large(), xmon_small(), differential(), three_d()]
}
