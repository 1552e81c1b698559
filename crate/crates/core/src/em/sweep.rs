use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::FrequencyGrid;
use crate::error::{Error, Result};

/// Tolerance on negative resistance attributed to solver noise (Ω).
pub const PASSIVITY_TOLERANCE: f64 = 0.01;

/// Which side of the Babinet duality an impedance lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceTag {
    Wire,
    Aperture,
}

/// Complex impedance sampled on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpedanceSweep {
    grid: FrequencyGrid,
    z: Vec<Complex64>,
    space: SpaceTag,
}

impl ImpedanceSweep {
    pub fn new(grid: FrequencyGrid, z: Vec<Complex64>, space: SpaceTag) -> Result<Self> {
        if z.len() != grid.len() {
            return Err(Error::param(
                "z",
                format!("{} samples for a {}-point grid", z.len(), grid.len()),
            ));
        }
        for (f, zi) in grid.iter().zip(&z) {
            if !(zi.re.is_finite() && zi.im.is_finite()) {
                return Err(Error::param("z", format!("non-finite impedance at {f:.6e} Hz")));
            }
            if zi.re < -PASSIVITY_TOLERANCE {
                return Err(Error::param(
                    "z",
                    format!("negative resistance {:.4} Ω at {f:.6e} Hz", zi.re),
                ));
            }
        }
        Ok(Self { grid, z, space })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn impedances(&self) -> &[Complex64] {
        &self.z
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.grid.iter().zip(self.z.iter().copied())
    }

    /// Applies a pointwise map and retags the result.
    pub fn map(&self, space: SpaceTag, mut f: impl FnMut(f64, Complex64) -> Result<Complex64>) -> Result<Self> {
        let z = self
            .iter()
            .map(|(freq, z)| f(freq, z))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.grid, z, space)
    }

    /// Frequencies where the reactance crosses zero from capacitive to
    /// inductive (series resonances), linearly interpolated, ascending.
    pub fn series_resonances(&self) -> Vec<f64> {
        (1..self.z.len())
            .filter(|&i| self.z[i - 1].im < 0.0 && self.z[i].im >= 0.0)
            .map(|i| {
                let (x0, x1) = (self.z[i - 1].im, self.z[i].im);
                let (f0, f1) = (self.grid.get(i - 1), self.grid.get(i));
                f0 + (f1 - f0) * (-x0) / (x1 - x0)
            })
            .collect()
    }

    /// Frequencies of local maxima of Re[Z], strongest first.
    pub fn resistance_peaks(&self) -> Vec<f64> {
        let re: Vec<f64> = self.z.iter().map(|z| z.re).collect();
        let mut peaks: Vec<(f64, f64)> = (1..re.len().saturating_sub(1))
            .filter(|&i| re[i] > re[i - 1] && re[i] >= re[i + 1])
            .map(|i| (self.grid.get(i), re[i]))
            .collect();
        peaks.sort_by(|a, b| b.1.total_cmp(&a.1));
        peaks.into_iter().map(|p| p.0).collect()
    }
}
