//! Shared electromagnetic bookkeeping: constants, media, frequency grids and
//! impedance sweeps.

pub mod constants;
mod grid;
mod medium;
mod sweep;

pub use grid::FrequencyGrid;
pub use medium::Medium;
pub use sweep::{ImpedanceSweep, SpaceTag, PASSIVITY_TOLERANCE};

use crate::error::{Error, Result};
use constants::{H, KB};

/// Exponent beyond which the Bose factor is treated as zero.
pub(crate) const MAX_BOSE_EXPONENT: f64 = 700.0;

/// Effective permittivity of a planar structure on a semi-infinite substrate.
pub fn effective_permittivity(eps_substrate: f64) -> Result<f64> {
    if !(eps_substrate.is_finite() && eps_substrate >= 1.0) {
        return Err(Error::param(
            "eps_substrate",
            format!("relative permittivity must be >= 1, got {eps_substrate}"),
        ));
    }
    Ok(0.5 * (1.0 + eps_substrate))
}

/// Mean photon occupancy `1/(exp(h f / kB T) - 1)`, zero at T = 0 and when
/// the exponent exceeds the overflow guard.
pub fn bose_occupancy(f_hz: f64, t_kelvin: f64) -> f64 {
    if t_kelvin <= 0.0 {
        return 0.0;
    }
    let x = H * f_hz / (KB * t_kelvin);
    if x > MAX_BOSE_EXPONENT {
        0.0
    } else {
        1.0 / x.exp_m1()
    }
}

/// Single-mode, single-polarization blackbody power spectral density (W/Hz).
pub fn blackbody_psd(f_hz: f64, t_kelvin: f64) -> f64 {
    H * f_hz * bose_occupancy(f_hz, t_kelvin)
}
