//! Device-level analysis: geometry → wire model → impedance sweep →
//! radiation impedance → junction match.

use serde::{Deserialize, Serialize};

use crate::duality::{BabinetEta, DualityMap};
use crate::em::{FrequencyGrid, ImpedanceSweep};
use crate::error::Result;
use crate::geometry::{build_dual_wire_model_with, BuildOptions, QubitGeometry, WireModel};
use crate::junction::JunctionModel;
use crate::matching::{match_report, MatchReport};
use crate::mom::{impedance_sweep, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub solver: SolverConfig,
    pub babinet: BabinetEta,
    pub loop_facets: Option<usize>,
}

impl PipelineConfig {
    fn build_options(&self) -> BuildOptions {
        let mut o = BuildOptions::default();
        if let Some(n) = self.loop_facets {
            o.loop_facets = n;
        }
        o
    }
}

/// Wire-space and radiation-space impedance of one device.
#[derive(Debug, Clone)]
pub struct DeviceSweep {
    pub model: WireModel,
    pub wire: ImpedanceSweep,
    /// Impedance seen by the junction: the Babinet image of `wire` for
    /// planar (aperture) qubits, `wire` itself for the 3D transmon.
    pub radiation: ImpedanceSweep,
}

pub fn device_sweep(g: &QubitGeometry, grid: &FrequencyGrid, cfg: &PipelineConfig) -> Result<DeviceSweep> {
    let model = build_dual_wire_model_with(g, cfg.build_options())?;
    let wire = impedance_sweep(&model, grid, &cfg.solver)?;
    let radiation = if g.is_aperture() {
        DualityMap::new(cfg.babinet.value(&model.medium()))?.map_sweep(&wire)?
    } else {
        wire.clone()
    };
    Ok(DeviceSweep { model, wire, radiation })
}

#[derive(Debug, Clone)]
pub struct DeviceAnalysis {
    pub sweep: DeviceSweep,
    pub report: MatchReport,
}

pub fn analyze_device(
    g: &QubitGeometry,
    j: &JunctionModel,
    grid: &FrequencyGrid,
    cfg: &PipelineConfig,
) -> Result<DeviceAnalysis> {
    let sweep = device_sweep(g, grid, cfg)?;
    let report = match_report(&sweep.radiation, j)?;
    Ok(DeviceAnalysis { sweep, report })
}
