//! Thin-wire method-of-moments solver.
//!
//! Mixed-potential electric-field integral equation for perfectly conducting
//! wires in a homogeneous medium, discretized with triangle basis functions and
//! Galerkin testing. The reduced kernel places the source current on the wire
//! axis; the `1/R` part of near and self interactions is integrated in closed
//! form. Time convention `exp(+jωt)`: inductive reactance is positive.

mod basis;
mod kernel;
pub mod quadrature;

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::em::{FrequencyGrid, ImpedanceSweep, SpaceTag, PASSIVITY_TOLERANCE};
use crate::error::{Error, Result};
use crate::geometry::{Point3, WireModel, MIN_LENGTH_TO_RADIUS};
pub use basis::{Basis, BasisSet, Half};
pub use kernel::{pair_integrals, static_potential, KernelRules};

/// Longest admissible segment, in in-medium wavelengths.
pub const MAX_SEGMENT_WAVELENGTHS: f64 = 0.125;
/// Feed voltage of the delta-gap source (V).
pub const FEED_VOLTAGE: f64 = 1.0;

/// Treatment of near and self interactions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum KernelMode {
    /// Plain Gauss quadrature of the reduced kernel everywhere.
    Reduced,
    /// Closed-form integration of the `1/R` part for self and near pairs.
    #[default]
    ExtendedSelfTerm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub segments_per_wavelength: usize,
    /// Gauss points per segment.
    pub quadrature_points: usize,
    pub kernel: KernelMode,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            segments_per_wavelength: 20,
            quadrature_points: 8,
            kernel: KernelMode::ExtendedSelfTerm,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.quadrature_points < 4 {
            return Err(Error::param("quadrature_points", "must be >= 4"));
        }
        if self.segments_per_wavelength < 10 {
            return Err(Error::param("segments_per_wavelength", "must be >= 10"));
        }
        Ok(())
    }

    pub fn with_segments_per_wavelength(mut self, n: usize) -> Self {
        self.segments_per_wavelength = n;
        self
    }
}

/// Assembled moment system `Z I = V` at one frequency.
#[derive(Debug, Clone)]
pub struct MomMatrix {
    pub freq_hz: f64,
    /// Impedance matrix (Ω).
    pub entries: DMatrix<Complex64>,
    /// Excitation vector (V).
    pub rhs: DVector<Complex64>,
    /// Basis weights of the current through the feed gap.
    pub feed_weights: Vec<(usize, f64)>,
}

impl MomMatrix {
    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    /// Largest `|Z_ij - Z_ji| / max|Z|`.
    pub fn asymmetry(&self) -> f64 {
        let n = self.n();
        let scale = self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)]).norm());
            }
        }
        worst / scale
    }

    /// Self terms dominate interactions between far-apart basis functions:
    /// `|Z_ii| > |Z_ij|` whenever `|i - j| > n/2`.
    pub fn self_term_dominance(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| {
            let zii = self.entries[(i, i)].norm();
            (0..n)
                .filter(|&j| i.abs_diff(j) > n / 2)
                .all(|j| zii > self.entries[(i, j)].norm())
        })
    }
}

/// Solved currents.
#[derive(Debug, Clone)]
pub struct MomSolution {
    pub freq_hz: f64,
    pub input_impedance: Complex64,
    pub basis_currents: DVector<Complex64>,
    /// Current at each segment midpoint, positive along the segment direction.
    pub segment_currents: Vec<(Point3, Complex64)>,
}

impl MomSolution {
    /// CSV with columns `segment_index, x, y, z, Re[I], Im[I]` (midpoints in m, currents in A).
    pub fn currents_csv(&self) -> String {
        let mut s = String::from("segment_index,x,y,z,Re[I],Im[I]\n");
        for (i, (p, c)) in self.segment_currents.iter().enumerate() {
            s.push_str(&format!("{i},{:e},{:e},{:e},{:e},{:e}\n", p.x, p.y, p.z, c.re, c.im));
        }
        s
    }
}

/// Assembles the moment matrix of a discretized wire model at `f`.
pub fn assemble(model: &WireModel, f: f64, cfg: &SolverConfig) -> Result<MomMatrix> {
    cfg.validate()?;
    if !(f.is_finite() && f > 0.0) {
        return Err(Error::param("f", format!("frequency must be positive, got {f}")));
    }
    let medium = model.medium();
    let lambda = medium.wavelength(f);
    for (i, s) in model.segments().iter().enumerate() {
        let len = s.length();
        if len < MIN_LENGTH_TO_RADIUS * s.radius {
            return Err(Error::ThinWire(format!(
                "segment {i} length {len:.3e} m is below twice its radius {:.3e} m",
                s.radius
            )));
        }
        if len > MAX_SEGMENT_WAVELENGTHS * lambda {
            return Err(Error::ThinWire(format!(
                "segment {i} length {len:.3e} m exceeds λ/8 = {:.3e} m at {f:.4e} Hz",
                MAX_SEGMENT_WAVELENGTHS * lambda
            )));
        }
    }

    let basis = BasisSet::build(model);
    let n = basis.len();
    if n == 0 {
        return Err(Error::Geometry("wire model supports no current basis".into()));
    }
    let k = medium.wavenumber(f);
    let eta = medium.wave_impedance();
    let rules = KernelRules::new(cfg.quadrature_points, cfg.kernel == KernelMode::ExtendedSelfTerm);
    let segs = model.segments();
    let prefactor = Complex64::new(0.0, eta / (4.0 * PI));

    let mut z = DMatrix::<Complex64>::zeros(n, n);
    for p in 0..segs.len() {
        let (tp, lp) = (segs[p].direction(), segs[p].length());
        for q in p..segs.len() {
            if basis.members[p][0].is_empty() && basis.members[p][1].is_empty() {
                continue;
            }
            let (tq, lq) = (segs[q].direction(), segs[q].length());
            let a = pair_integrals(&segs[p], &segs[q], k, &rules);
            let sum = a[0][0] + a[0][1] + a[1][0] + a[1][1];
            let tdot = tp.dot(&tq);
            for alpha in 0..2 {
                for beta in 0..2 {
                    let charge = basis::shape_slope(alpha) * basis::shape_slope(beta) / (lp * lq);
                    let term = prefactor * (a[alpha][beta] * (k * tdot) - sum * (charge / k));
                    for &(m, cm) in &basis.members[p][alpha] {
                        for &(nn, cn) in &basis.members[q][beta] {
                            let v = term * (cm * cn);
                            z[(m, nn)] += v;
                            if p != q {
                                z[(nn, m)] += v;
                            }
                        }
                    }
                }
            }
        }
    }

    // delta gap at the feed segment midpoint, where both shapes equal 1/2
    let fs = model.feed_segment();
    let mut feed_weights = Vec::new();
    for shape in 0..2 {
        for &(m, c) in &basis.members[fs][shape] {
            feed_weights.push((m, 0.5 * c));
        }
    }
    let mut rhs = DVector::<Complex64>::zeros(n);
    for &(m, w) in &feed_weights {
        rhs[m] += Complex64::new(w * FEED_VOLTAGE, 0.0);
    }
    Ok(MomMatrix {
        freq_hz: f,
        entries: z,
        rhs,
        feed_weights,
    })
}

/// Solves the assembled system by LU factorization with partial pivoting.
pub fn solve(model: &WireModel, mat: &MomMatrix) -> Result<MomSolution> {
    let f = mat.freq_hz;
    let lu = mat.entries.clone().lu();
    let condition = pivot_condition(&lu.u());
    let currents = match lu.solve(&mat.rhs) {
        Some(x) if condition.is_finite() && condition < 1e15 => x,
        _ => {
            return Err(Error::SingularMatrix {
                freq_hz: f,
                condition,
            })
        }
    };
    let i_feed: Complex64 = mat
        .feed_weights
        .iter()
        .map(|&(m, w)| currents[m] * w)
        .sum();
    if !(i_feed.norm() > 0.0) {
        return Err(Error::SolverQuality {
            freq_hz: f,
            reason: "no current through the feed".into(),
        });
    }
    let zin = Complex64::new(FEED_VOLTAGE, 0.0) / i_feed;
    if !(zin.re.is_finite() && zin.im.is_finite()) {
        return Err(Error::SolverQuality {
            freq_hz: f,
            reason: format!("non-finite input impedance {zin}"),
        });
    }
    if zin.re < -PASSIVITY_TOLERANCE {
        return Err(Error::SolverQuality {
            freq_hz: f,
            reason: format!("negative input resistance {:.4} Ω", zin.re),
        });
    }
    let basis = BasisSet::build(model);
    let segment_currents = model
        .segments()
        .iter()
        .enumerate()
        .map(|(s, seg)| {
            let mut i = Complex64::new(0.0, 0.0);
            for shape in 0..2 {
                for &(m, c) in &basis.members[s][shape] {
                    i += currents[m] * (0.5 * c);
                }
            }
            (seg.midpoint(), i)
        })
        .collect();
    Ok(MomSolution {
        freq_hz: f,
        input_impedance: zin,
        basis_currents: currents,
        segment_currents,
    })
}

fn pivot_condition(u: &DMatrix<Complex64>) -> f64 {
    let diag: Vec<f64> = (0..u.nrows()).map(|i| u[(i, i)].norm()).collect();
    let max = diag.iter().cloned().fold(0.0, f64::max);
    let min = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    if min > 0.0 {
        max / min
    } else {
        f64::INFINITY
    }
}

/// Input impedance `V_feed / I_feed` of a discretized model.
pub fn input_impedance(model: &WireModel, f: f64, cfg: &SolverConfig) -> Result<Complex64> {
    solve_currents(model, f, cfg).map(|s| s.input_impedance)
}

pub fn solve_currents(model: &WireModel, f: f64, cfg: &SolverConfig) -> Result<MomSolution> {
    let mat = assemble(model, f, cfg)?;
    solve(model, &mat)
}

/// Discretizes a physical model for `f` and returns its input impedance.
pub fn input_impedance_at(model: &WireModel, f: f64, cfg: &SolverConfig) -> Result<Complex64> {
    let refined = model.discretize(cfg.segments_per_wavelength, f)?;
    input_impedance(&refined, f, cfg)
}

/// Impedance of a physical wire model over a frequency grid.
///
/// The model is meshed once for the top of the grid; grid points are solved
/// independently in parallel.
pub fn impedance_sweep(model: &WireModel, grid: &FrequencyGrid, cfg: &SolverConfig) -> Result<ImpedanceSweep> {
    let refined = model.discretize(cfg.segments_per_wavelength, grid.f_stop())?;
    sweep_refined(&refined, grid, cfg)
}

/// Sweep of an already discretized model.
pub fn sweep_refined(refined: &WireModel, grid: &FrequencyGrid, cfg: &SolverConfig) -> Result<ImpedanceSweep> {
    let z = grid
        .to_vec()
        .into_par_iter()
        .map(|f| {
            input_impedance(refined, f, cfg).map_err(|e| Error::SweepPoint {
                freq_hz: f,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ImpedanceSweep::new(*grid, z, SpaceTag::Wire)
}
