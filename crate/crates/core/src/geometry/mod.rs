//! Qubit layouts and their dual thin-wire models.

mod json;
mod qubit;
mod wire;

pub use json::{parse_geometry, GeometryDoc};
pub use qubit::{
    build_dual_wire_model, build_dual_wire_model_with, dipole, folded_dipole, polygon_loop,
    BuildOptions, Layout, QubitGeometry, DEFAULT_LOOP_FACETS, MIN_LOOP_FACETS,
};
pub use wire::{
    Connectivity, Point3, Segment, Topology, WireModel, MIN_LENGTH_TO_RADIUS,
    THIN_WIRE_LENGTH_TO_RADIUS,
};
