//! Radiation-limited T1 from the radiation resistance of the dual wire antenna.

use std::f64::consts::PI;

use log::warn;
use num_complex::Complex64;
use serde::Serialize;

use crate::em::constants::{C0, ETA0};
use crate::error::{ensure_positive, Error, Result};
use crate::geometry::{build_dual_wire_model, QubitGeometry};
use crate::mom::{input_impedance_at, SolverConfig};

/// Upper end of the electrically-small range for the loop formula.
pub const SMALL_LOOP_KR_LIMIT: f64 = 0.3;
/// Gap-to-radius ratio up to which the gap correction is fitted.
pub const GAP_CORRECTION_LIMIT: f64 = 0.2;
/// Slope of the finite-gap correction `1 + 2.1 w/r_i`.
pub const GAP_CORRECTION_SLOPE: f64 = 2.1;

/// `T1 = η² C / (4 Re Z_w)` (s).
pub fn t1_from_wire_impedance(c_qubit: f64, z_w: Complex64, eta_m: f64) -> Result<f64> {
    ensure_positive("C_qubit", c_qubit)?;
    ensure_positive("eta_m", eta_m)?;
    if !(z_w.re > 0.0) {
        return Err(Error::param(
            "z_w",
            format!("radiation resistance must be positive, got {} Ω", z_w.re),
        ));
    }
    Ok(eta_m * eta_m * c_qubit / (4.0 * z_w.re))
}

/// Radiation resistance of an electrically small loop of radius `r` in a
/// medium of effective permittivity `eps_eff`, with λ the in-medium wavelength:
/// `(8/3) π⁵ √ε η0 (r/λ)⁴` (Ω).
pub fn small_loop_radiation_resistance(r: f64, f: f64, eps_eff: f64) -> Result<f64> {
    ensure_positive("r", r)?;
    ensure_positive("f", f)?;
    ensure_positive("eps_eff", eps_eff)?;
    let lambda = C0 / (f * eps_eff.sqrt());
    let kr = 2.0 * PI * r / lambda;
    if kr >= SMALL_LOOP_KR_LIMIT {
        warn!("kr = {kr:.3} is outside the electrically small range (< {SMALL_LOOP_KR_LIMIT})");
    }
    Ok(8.0 / 3.0 * PI.powi(5) * eps_eff.sqrt() * ETA0 * (r / lambda).powi(4))
}

/// Geometry of the qubit island as seen by the radiative formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Island {
    /// Circular island of radius `r_i`, optionally with the gap width.
    Circular { r_i: f64, gap_w: Option<f64> },
    /// Island of arbitrary shape with area `a` (m²).
    Area { a: f64 },
    /// Symmetric two-island qubit. Its radiation is quadrupolar and no
    /// closed-form estimate exists.
    Differential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct T1Config {
    pub c_qubit: f64,
    pub f01: f64,
    pub eps_eff: f64,
    pub island: Island,
}

impl T1Config {
    pub fn circular(c_qubit: f64, f01: f64, eps_eff: f64, r_i: f64, gap_w: Option<f64>) -> Self {
        Self {
            c_qubit,
            f01,
            eps_eff,
            island: Island::Circular { r_i, gap_w },
        }
    }

    fn validate(&self) -> Result<()> {
        ensure_positive("C_qubit", self.c_qubit)?;
        ensure_positive("f01", self.f01)?;
        ensure_positive("eps_eff", self.eps_eff)?;
        Ok(())
    }
}

/// Finite-gap factor `1 + 2.1 w/r_i` multiplying the radiation resistance.
pub fn gap_correction(gap_w: f64, r_i: f64) -> Result<f64> {
    ensure_positive("gap_w", gap_w)?;
    ensure_positive("r_i", r_i)?;
    let ratio = gap_w / r_i;
    if ratio > GAP_CORRECTION_LIMIT {
        warn!("gap correction used at w/r_i = {ratio:.3}, beyond its fitted range {GAP_CORRECTION_LIMIT}");
    }
    Ok(1.0 + GAP_CORRECTION_SLOPE * ratio)
}

/// Closed-form radiative T1 of a circular island:
/// `(3/2π) ε^(-5/2) η0 C (c/(ω r))⁴`, divided by the gap factor if a gap is given.
pub fn t1_analytic_loop(cfg: &T1Config) -> Result<f64> {
    cfg.validate()?;
    let (r, gap) = match cfg.island {
        Island::Circular { r_i, gap_w } => (ensure_positive("r_i", r_i)?, gap_w),
        Island::Area { .. } => return t1_arbitrary_island(cfg),
        Island::Differential => return Err(differential_unsupported()),
    };
    let kr_free = 2.0 * PI * cfg.f01 * r / C0;
    if kr_free * cfg.eps_eff.sqrt() >= SMALL_LOOP_KR_LIMIT {
        warn!("island is not electrically small at {:.3e} Hz", cfg.f01);
    }
    let t1 = 1.5 / PI * cfg.eps_eff.powf(-2.5) * ETA0 * cfg.c_qubit * kr_free.powi(-4);
    match gap {
        Some(w) => Ok(t1 / gap_correction(w, r)?),
        None => Ok(t1),
    }
}

/// Radiative T1 of an island of area `A`, using the equal-area radius.
pub fn t1_arbitrary_island(cfg: &T1Config) -> Result<f64> {
    match cfg.island {
        Island::Area { a } => {
            let r_eff = (ensure_positive("area", a)? / PI).sqrt();
            t1_analytic_loop(&T1Config {
                island: Island::Circular { r_i: r_eff, gap_w: None },
                ..*cfg
            })
        }
        Island::Circular { r_i, .. } => t1_analytic_loop(&T1Config {
            island: Island::Circular { r_i, gap_w: None },
            ..*cfg
        }),
        Island::Differential => Err(differential_unsupported()),
    }
}

fn differential_unsupported() -> Error {
    Error::Unsupported(
        "radiative T1 of a differential qubit: its dipole moment cancels and the residual \
         loss from the unsymmetrized area has no closed-form estimate"
            .into(),
    )
}

/// Radiative T1 of a circular transmon from the method-of-moments resistance
/// of its dual loop at the qubit frequency.
pub fn t1_mom_loop(cfg: &T1Config, solver: &SolverConfig) -> Result<(f64, Complex64)> {
    cfg.validate()?;
    let (r_i, gap_w) = match cfg.island {
        Island::Circular { r_i, gap_w: Some(w) } => (r_i, w),
        Island::Circular { gap_w: None, .. } => {
            return Err(Error::param("gap_w", "the wire model needs a finite gap width"))
        }
        Island::Area { .. } => return Err(Error::Unsupported("wire model of an arbitrary island".into())),
        Island::Differential => return Err(differential_unsupported()),
    };
    let g = QubitGeometry::circular(r_i, gap_w, 2.0 * cfg.eps_eff - 1.0)?;
    let model = build_dual_wire_model(&g)?;
    let z = input_impedance_at(&model, cfg.f01, solver)?;
    Ok((t1_from_wire_impedance(cfg.c_qubit, z, ETA0)?, z))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum T1Method {
    Analytic,
    Mom,
}

/// JSON-facing T1 result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct T1Report {
    #[serde(rename = "T1_s")]
    pub t1_s: f64,
    #[serde(rename = "re_Zw_ohm")]
    pub re_zw_ohm: f64,
    pub r_eff_um: f64,
    pub eps_eff: f64,
    pub method: T1Method,
}

/// Computes T1 by the chosen method and packages the report.
pub fn t1_report(cfg: &T1Config, method: T1Method, solver: &SolverConfig) -> Result<T1Report> {
    let r_eff = match cfg.island {
        Island::Circular { r_i, .. } => r_i,
        Island::Area { a } => (a / PI).sqrt(),
        Island::Differential => return Err(differential_unsupported()),
    };
    let (t1, re) = match method {
        T1Method::Analytic => {
            let t1 = t1_analytic_loop(cfg)?;
            (t1, ETA0 * ETA0 * cfg.c_qubit / (4.0 * t1))
        }
        T1Method::Mom => {
            let (t1, z) = t1_mom_loop(cfg, solver)?;
            (t1, z.re)
        }
    };
    Ok(T1Report {
        t1_s: t1,
        re_zw_ohm: re,
        r_eff_um: r_eff * 1e6,
        eps_eff: cfg.eps_eff,
        method,
    })
}
