//! Spurious antenna modes of superconducting transmon qubits.
//!
//! Planar transmons are aperture antennas: the island and groundplane form a
//! slot structure whose standing-wave modes sit near 100 GHz. This crate
//! analyses them through their complementary wire antennas:
//!
//! * [`geometry`] builds the dual thin-wire model of a qubit layout,
//! * [`mom`] solves for its input impedance with a thin-wire method-of-moments code,
//! * [`duality`] maps wire impedances to the aperture (qubit) side,
//! * [`junction`] and [`matching`] evaluate the conjugate match to the Josephson junction,
//! * [`poisoning`] turns the match into photon-assisted quasiparticle poisoning rates,
//! * [`radiative`] computes radiation-limited T1 at the qubit frequency.
//!
//! [`pipeline`] strings these together for a device, and [`devices`] holds the
//! reference layouts used by the reproduction checks in [`reproduce`].

pub mod devices;
pub mod duality;
pub mod em;
pub mod error;
pub mod geometry;
pub mod junction;
pub mod matching;
pub mod mom;
pub mod pipeline;
pub mod poisoning;
pub mod radiative;
pub mod reproduce;

pub use em::{
    blackbody_psd, effective_permittivity, constants, FrequencyGrid, ImpedanceSweep, Medium,
    SpaceTag,
};
pub use error::{Error, Result};
pub use geometry::{QubitGeometry, Segment, Topology, WireModel};
pub use junction::JunctionModel;
pub use matching::MatchReport;
pub use mom::{KernelMode, SolverConfig};
pub use num_complex::Complex64;
