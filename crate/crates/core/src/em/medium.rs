use serde::{Deserialize, Serialize};

use super::constants::ETA0;
use crate::error::{Error, Result};

/// Homogeneous, lossless medium surrounding an antenna.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Medium {
    eps_rel: f64,
    mu_rel: f64,
}

impl Medium {
    pub const VACUUM: Medium = Medium {
        eps_rel: 1.0,
        mu_rel: 1.0,
    };

    pub fn new(eps_rel: f64, mu_rel: f64) -> Result<Self> {
        for (name, v) in [("eps_rel", eps_rel), ("mu_rel", mu_rel)] {
            if !(v.is_finite() && v >= 1.0) {
                return Err(Error::param(name, format!("must be >= 1, got {v}")));
            }
        }
        Ok(Self { eps_rel, mu_rel })
    }

    /// Non-magnetic dielectric with the given relative permittivity.
    pub fn dielectric(eps_rel: f64) -> Result<Self> {
        Self::new(eps_rel, 1.0)
    }

    /// Magnetic medium with unit permittivity.
    pub fn magnetic(mu_rel: f64) -> Result<Self> {
        Self::new(1.0, mu_rel)
    }

    pub fn eps_rel(&self) -> f64 {
        self.eps_rel
    }

    pub fn mu_rel(&self) -> f64 {
        self.mu_rel
    }

    /// Wave impedance of the medium (Ω).
    pub fn wave_impedance(&self) -> f64 {
        ETA0 * (self.mu_rel / self.eps_rel).sqrt()
    }

    /// Refractive index `sqrt(mu_rel * eps_rel)`.
    pub fn index(&self) -> f64 {
        (self.mu_rel * self.eps_rel).sqrt()
    }

    /// Wavelength in the medium at frequency `f_hz`.
    pub fn wavelength(&self, f_hz: f64) -> f64 {
        super::constants::C0 / (self.index() * f_hz)
    }

    /// Wavenumber in the medium (rad/m).
    pub fn wavenumber(&self, f_hz: f64) -> f64 {
        2.0 * std::f64::consts::PI * f_hz * self.index() / super::constants::C0
    }

    /// Medium with permittivity and permeability exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            eps_rel: self.mu_rel,
            mu_rel: self.eps_rel,
        }
    }
}

impl Default for Medium {
    fn default() -> Self {
        Self::VACUUM
    }
}
