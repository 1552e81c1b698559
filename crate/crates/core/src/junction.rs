//! Above-gap electrical model of a Josephson junction: tunnel resistance
//! shunted by the junction self-capacitance.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};

/// Aluminum gap voltage 2Δ/e (V).
pub const ALUMINUM_GAP_VOLTAGE: f64 = 380e-6;
/// Specific capacitance of AlOx tunnel barriers (F/μm²).
pub const DEFAULT_SPECIFIC_CAPACITANCE: f64 = 75e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JunctionModel {
    /// Tunnel resistance R_n (Ω); infinite for an open circuit.
    r_n: f64,
    /// Self-capacitance C_j (F).
    c_j: f64,
    /// Gap voltage 2Δ/e (V).
    gap_voltage: f64,
}

impl JunctionModel {
    pub fn new(r_n: f64, c_j: f64) -> Result<Self> {
        ensure_positive("R_n", r_n)?;
        ensure_positive("C_j", c_j)?;
        Ok(Self {
            r_n,
            c_j,
            gap_voltage: ALUMINUM_GAP_VOLTAGE,
        })
    }

    /// Junction whose capacitance follows from its area (μm²) and the
    /// specific capacitance (F/μm²).
    pub fn from_area(r_n: f64, area_um2: f64, specific_c: f64) -> Result<Self> {
        Self::new(r_n, capacitance_from_area(area_um2, specific_c)?)
    }

    /// The open-circuit limit `R_n → ∞, C_j → 0`: draws no current.
    pub fn open_circuit() -> Self {
        Self {
            r_n: f64::INFINITY,
            c_j: 0.0,
            gap_voltage: ALUMINUM_GAP_VOLTAGE,
        }
    }

    pub fn with_gap_voltage(mut self, gap_voltage: f64) -> Result<Self> {
        self.gap_voltage = ensure_positive("gap_voltage", gap_voltage)?;
        Ok(self)
    }

    pub fn r_n(&self) -> f64 {
        self.r_n
    }

    pub fn c_j(&self) -> f64 {
        self.c_j
    }

    pub fn gap_voltage(&self) -> f64 {
        self.gap_voltage
    }

    pub fn is_open(&self) -> bool {
        self.r_n.is_infinite() && self.c_j == 0.0
    }

    /// RC time constant τ = R_n C_j.
    pub fn tau(&self) -> f64 {
        self.r_n * self.c_j
    }

    /// `Y_j = 1/R_n + jωC_j`.
    pub fn admittance(&self, f: f64) -> Complex64 {
        Complex64::new(1.0 / self.r_n, 2.0 * PI * f * self.c_j)
    }

    /// `Z_j = R_n (1 - jωτ) / (1 + ω²τ²)`. Infinite for an open circuit.
    pub fn impedance(&self, f: f64) -> Complex64 {
        if self.is_open() {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        let wt = 2.0 * PI * f * self.tau();
        Complex64::new(1.0, -wt) * (self.r_n / (1.0 + wt * wt))
    }

    /// Ambegaokar-Baratoff critical current `I_0 = πΔ / (2e R_n)` with `Δ = e V_gap / 2`.
    pub fn critical_current(&self) -> f64 {
        PI * self.gap_voltage / (4.0 * self.r_n)
    }
}

/// Alias of [`JunctionModel::impedance`].
pub fn junction_impedance(j: &JunctionModel, f: f64) -> Complex64 {
    j.impedance(f)
}

/// Junction capacitance from area (μm²) and specific capacitance (F/μm²).
pub fn capacitance_from_area(area_um2: f64, specific_c: f64) -> Result<f64> {
    ensure_positive("area", area_um2)?;
    ensure_positive("specific_c", specific_c)?;
    Ok(area_um2 * specific_c)
}

/// JSON junction document: either explicit capacitance or junction area.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JunctionDoc {
    Explicit(ExplicitDoc),
    Area(AreaDoc),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitDoc {
    #[serde(rename = "R_n_ohm")]
    pub r_n_ohm: f64,
    #[serde(rename = "C_j_fF")]
    pub c_j_ff: f64,
    #[serde(rename = "gap_voltage_uV", default, skip_serializing_if = "Option::is_none")]
    pub gap_voltage_uv: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AreaDoc {
    pub area_um2: f64,
    #[serde(rename = "specific_c_fF_um2", default = "default_specific_c_ff")]
    pub specific_c_ff_um2: f64,
    #[serde(rename = "R_n_ohm")]
    pub r_n_ohm: f64,
    #[serde(rename = "gap_voltage_uV", default, skip_serializing_if = "Option::is_none")]
    pub gap_voltage_uv: Option<f64>,
}

fn default_specific_c_ff() -> f64 {
    DEFAULT_SPECIFIC_CAPACITANCE * 1e15
}

impl JunctionDoc {
    pub fn into_model(self) -> Result<JunctionModel> {
        let (model, gap) = match self {
            JunctionDoc::Explicit(d) => (JunctionModel::new(d.r_n_ohm, d.c_j_ff * 1e-15)?, d.gap_voltage_uv),
            JunctionDoc::Area(d) => (
                JunctionModel::from_area(d.r_n_ohm, d.area_um2, d.specific_c_ff_um2 * 1e-15)?,
                d.gap_voltage_uv,
            ),
        };
        match gap {
            Some(uv) => model.with_gap_voltage(uv * 1e-6),
            None => Ok(model),
        }
    }
}

pub fn parse_junction(json: &str) -> Result<JunctionModel> {
    let doc: JunctionDoc =
        serde_json::from_str(json).map_err(|e| Error::Config(format!("junction: {e}")))?;
    doc.into_model()
}
