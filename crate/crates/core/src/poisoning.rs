//! Photon-assisted quasiparticle poisoning from blackbody radiation.
//!
//! Every absorbed photon above the gap breaks one Cooper pair at the
//! junction, so the poisoning rate is the absorbed power divided by the
//! photon energy.

use serde::Serialize;

use crate::em::constants::{H, KB};
use crate::em::{blackbody_psd, bose_occupancy};
use crate::error::{ensure_positive, Error, Result};
use crate::matching::{trapezoid, MatchReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerMode {
    /// Integral of `S(f, T) e_c(f)` over the fundamental lobe.
    Exact,
    /// `S(f0, T) Δf_N`.
    Approx,
}

/// Absorbed blackbody power at temperature `t` (W).
pub fn absorbed_power(report: &MatchReport, t: f64, mode: PowerMode) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::param("T", format!("temperature must be >= 0, got {t}")));
    }
    Ok(match mode {
        PowerMode::Approx => blackbody_psd(report.f0, t) * report.delta_f_n,
        PowerMode::Exact => match report.lobe {
            Some((lo, hi)) => {
                let integrand: Vec<f64> = report
                    .grid
                    .iter()
                    .zip(&report.e_c)
                    .map(|(f, e)| blackbody_psd(f, t) * e)
                    .collect();
                trapezoid(&report.grid, &integrand, lo, hi)
            }
            None => 0.0,
        },
    })
}

/// `Γ_pa = Δf_N / (exp(h f0 / kB T) - 1)` (Hz).
pub fn poisoning_rate(f0: f64, delta_f_n: f64, t: f64) -> Result<f64> {
    ensure_positive("f0", f0)?;
    if !(delta_f_n >= 0.0 && delta_f_n.is_finite()) {
        return Err(Error::param("delta_f_N", format!("must be >= 0, got {delta_f_n}")));
    }
    if !(t >= 0.0) {
        return Err(Error::param("T", format!("temperature must be >= 0, got {t}")));
    }
    Ok(delta_f_n * bose_occupancy(f0, t))
}

/// Blackbody temperature producing the observed poisoning rate:
/// `T = (h f0 / kB) / ln(1 + Δf_N / Γ)`.
pub fn effective_temperature(f0: f64, delta_f_n: f64, gamma: f64) -> Result<f64> {
    ensure_positive("f0", f0)?;
    ensure_positive("delta_f_N", delta_f_n)?;
    ensure_positive("gamma", gamma)?;
    Ok(H * f0 / KB / (delta_f_n / gamma).ln_1p())
}

/// Summary of a forward poisoning calculation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoisoningReport {
    pub f0: f64,
    pub delta_f_n: f64,
    pub t: f64,
    pub power_exact: Option<f64>,
    pub power_approx: f64,
    pub gamma_pa: f64,
}

impl PoisoningReport {
    /// From peak frequency and noise bandwidth alone; no exact power.
    pub fn from_bandwidth(f0: f64, delta_f_n: f64, t: f64) -> Result<Self> {
        let gamma_pa = poisoning_rate(f0, delta_f_n, t)?;
        Ok(Self {
            f0,
            delta_f_n,
            t,
            power_exact: None,
            power_approx: blackbody_psd(f0, t) * delta_f_n,
            gamma_pa,
        })
    }

    pub fn from_match(report: &MatchReport, t: f64) -> Result<Self> {
        let gamma_pa = if report.delta_f_n > 0.0 {
            poisoning_rate(report.f0, report.delta_f_n, t)?
        } else {
            0.0
        };
        Ok(Self {
            f0: report.f0,
            delta_f_n: report.delta_f_n,
            t,
            power_exact: Some(absorbed_power(report, t, PowerMode::Exact)?),
            power_approx: absorbed_power(report, t, PowerMode::Approx)?,
            gamma_pa,
        })
    }

    /// JSON `{f0_GHz, delta_f_N_GHz, T_mK, gamma_pa_Hz, power_W}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "f0_GHz": self.f0 * 1e-9,
            "delta_f_N_GHz": self.delta_f_n * 1e-9,
            "T_mK": self.t * 1e3,
            "gamma_pa_Hz": self.gamma_pa,
            "power_W": self.power_approx,
        });
        if let Some(p) = self.power_exact {
            v["power_exact_W"] = p.into();
        }
        v
    }
}
