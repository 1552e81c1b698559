//! Conjugate-match analysis between a radiation impedance and the junction.

use std::fmt::Write as _;

use log::{debug, warn};
use num_complex::Complex64;
use serde::Serialize;

use crate::em::{FrequencyGrid, ImpedanceSweep, SpaceTag};
use crate::error::{Error, Result};
use crate::junction::JunctionModel;

/// Fraction of the peak efficiency bounding the fundamental lobe.
pub const LOBE_THRESHOLD: f64 = 0.01;

/// Power-wave reflection coefficient `Γ = (Z_rad - Z_j*) / (Z_rad + Z_j)`.
pub fn reflection(z_rad: Complex64, z_j: Complex64) -> Result<Complex64> {
    let den = z_rad + z_j;
    if den.norm() <= f64::EPSILON * (z_rad.norm() + z_j.norm()) || den.norm() == 0.0 {
        return Err(Error::Degenerate(format!("Z_rad + Z_j = 0 for Z_rad = {z_rad}, Z_j = {z_j}")));
    }
    Ok((z_rad - z_j.conj()) / den)
}

/// `e_c = 1 - |Γ|²`, clipped into [0, 1].
pub fn coupling_efficiency(z_rad: Complex64, z_j: Complex64) -> Result<f64> {
    let g = reflection(z_rad, z_j)?;
    Ok(clip(1.0 - g.norm_sqr()))
}

/// Coupling efficiency against a load given by its admittance:
/// `e_c = 4 Re(Z) Re(Y) / |1 + Z Y|²`. Equal to [`coupling_efficiency`] with
/// `Z_j = 1/Y` and well defined for an open load (`Y = 0`).
pub fn coupling_efficiency_admittance(z_rad: Complex64, y_load: Complex64) -> Result<f64> {
    let den = (Complex64::new(1.0, 0.0) + z_rad * y_load).norm_sqr();
    if den == 0.0 {
        return Err(Error::Degenerate(format!("1 + Z Y = 0 for Z = {z_rad}, Y = {y_load}")));
    }
    Ok(clip(4.0 * z_rad.re * y_load.re / den))
}

fn clip(e: f64) -> f64 {
    if (0.0..=1.0).contains(&e) {
        e
    } else {
        debug!("coupling efficiency {e:.3e} clipped into [0, 1]");
        e.clamp(0.0, 1.0)
    }
}

/// Index range `[lo, hi]` of the contiguous region around the global maximum
/// where the curve stays at or above `LOBE_THRESHOLD` times the peak.
/// `None` for an all-zero curve.
pub fn fundamental_lobe(curve: &[f64]) -> Option<(usize, usize)> {
    let (imax, &max) = curve.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1))?;
    if max <= 0.0 {
        return None;
    }
    let cut = LOBE_THRESHOLD * max;
    let mut lo = imax;
    while lo > 0 && curve[lo - 1] >= cut {
        lo -= 1;
    }
    let mut hi = imax;
    while hi + 1 < curve.len() && curve[hi + 1] >= cut {
        hi += 1;
    }
    Some((lo, hi))
}

/// Trapezoid rule of `values` over the grid between indices `lo..=hi`.
pub(crate) fn trapezoid(grid: &FrequencyGrid, values: &[f64], lo: usize, hi: usize) -> f64 {
    (lo..hi)
        .map(|i| 0.5 * (values[i] + values[i + 1]) * (grid.get(i + 1) - grid.get(i)))
        .sum()
}

/// Noise bandwidth `Δf_N = ∫ e_c df` over the fundamental lobe (Hz).
pub fn noise_bandwidth(e_c: &[f64], grid: &FrequencyGrid) -> Result<f64> {
    if e_c.len() != grid.len() {
        return Err(Error::param("e_c", format!("{} samples for a {}-point grid", e_c.len(), grid.len())));
    }
    match fundamental_lobe(e_c) {
        Some((lo, hi)) => Ok(trapezoid(grid, e_c, lo, hi)),
        None => {
            warn!("coupling efficiency is zero across the window; noise bandwidth is 0");
            Ok(0.0)
        }
    }
}

/// Vertex of the parabola through three equally spaced samples, as an offset
/// in units of the spacing, clamped to the bracketing interval.
fn parabolic_offset(y0: f64, y1: f64, y2: f64) -> f64 {
    let den = y0 - 2.0 * y1 + y2;
    if den >= 0.0 {
        return 0.0;
    }
    (0.5 * (y0 - y2) / den).clamp(-1.0, 1.0)
}

fn interpolate(values: &[Complex64], grid: &FrequencyGrid, f: f64) -> Complex64 {
    let n = grid.len();
    if n == 1 {
        return values[0];
    }
    let x = ((f - grid.f_start()) / grid.step()).clamp(0.0, (n - 1) as f64);
    let i = (x.floor() as usize).min(n - 2);
    let t = x - i as f64;
    values[i] * (1.0 - t) + values[i + 1] * t
}

/// Result of matching a radiation impedance sweep to a junction.
#[derive(Debug, Clone, Serialize)]
pub struct MatchReport {
    #[serde(skip)]
    pub grid: FrequencyGrid,
    #[serde(skip)]
    pub e_c: Vec<f64>,
    #[serde(skip)]
    pub z_rad: Vec<Complex64>,
    #[serde(skip)]
    pub z_j: Vec<Complex64>,
    pub f0: f64,
    pub peak_e_c: f64,
    pub delta_f_n: f64,
    pub z_rad_at_f0: Complex64,
    pub z_j_at_f0: Complex64,
    /// Index bounds of the fundamental lobe, if any.
    pub lobe: Option<(usize, usize)>,
}

/// Matches a radiation-space sweep (aperture-tagged for planar qubits, or
/// the wire sweep of a 3D transmon, which radiates directly) to `j`.
pub fn match_report(sweep: &ImpedanceSweep, j: &JunctionModel) -> Result<MatchReport> {
    if sweep.space() == SpaceTag::Wire {
        debug!("matching a wire-space sweep directly; valid only for structures that radiate as wires");
    }
    let grid = *sweep.grid();
    let z_rad = sweep.impedances().to_vec();
    let z_j: Vec<Complex64> = grid.iter().map(|f| j.impedance(f)).collect();
    let e_c = sweep
        .iter()
        .map(|(f, z)| coupling_efficiency_admittance(z, j.admittance(f)))
        .collect::<Result<Vec<_>>>()?;

    let (imax, &emax) = e_c
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid has at least one point");
    let f0 = if imax > 0 && imax + 1 < e_c.len() {
        let off = parabolic_offset(e_c[imax - 1], e_c[imax], e_c[imax + 1]);
        grid.get(imax) + off * grid.step()
    } else {
        grid.get(imax)
    };
    let delta_f_n = noise_bandwidth(&e_c, &grid)?;
    Ok(MatchReport {
        f0,
        peak_e_c: emax,
        delta_f_n,
        z_rad_at_f0: interpolate(&z_rad, &grid, f0),
        z_j_at_f0: j.impedance(f0),
        lobe: fundamental_lobe(&e_c),
        grid,
        e_c,
        z_rad,
        z_j,
    })
}

impl MatchReport {
    /// CSV with columns `f_Hz, Re_Zrad, Im_Zrad, Re_Zj, Im_Zj, e_c`.
    /// Open-circuit junction impedances are written as `inf`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("f_Hz,Re_Zrad,Im_Zrad,Re_Zj,Im_Zj,e_c\n");
        for (i, f) in self.grid.iter().enumerate() {
            let (zr, zj) = (self.z_rad[i], self.z_j[i]);
            let _ = writeln!(s, "{f:e},{:e},{:e},{:e},{:e},{:e}", zr.re, zr.im, zj.re, zj.im, self.e_c[i]);
        }
        s
    }

    /// JSON summary `{f0_GHz, delta_f_N_GHz, peak_e_c}`.
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "f0_GHz": self.f0 * 1e-9,
            "delta_f_N_GHz": self.delta_f_n * 1e-9,
            "peak_e_c": self.peak_e_c,
            "Z_rad_at_f0_ohm": [self.z_rad_at_f0.re, self.z_rad_at_f0.im],
            "Z_j_at_f0_ohm": [self.z_j_at_f0.re, self.z_j_at_f0.im],
        })
    }
}
