use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::wire::{Point3, Segment, Topology, WireModel};
use crate::em::{effective_permittivity, Medium};
use crate::error::{ensure_positive, Error, Result};

/// Default number of facets for polygonal loops.
pub const DEFAULT_LOOP_FACETS: usize = 64;
/// Fewest facets accepted when a thick loop forces the facet count down.
pub const MIN_LOOP_FACETS: usize = 8;

/// Transmon layout. All lengths in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Layout {
    CircularTransmon { r_island: f64, gap_w: f64 },
    RectangularTransmon { length_l: f64, width_w: f64, gap_w: f64 },
    Xmon { arm_l: f64, trace_s: f64, gap_w: f64 },
    DifferentialTransmon { island_l: f64, island_w: f64, gap_w: f64, island_sep: f64 },
    ThreeDTransmon { pad_l: f64, pad_w: f64, feed_gap: f64 },
}

/// Qubit layout on a semi-infinite substrate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitGeometry {
    pub layout: Layout,
    pub substrate_eps: f64,
}

impl QubitGeometry {
    pub fn new(layout: Layout, substrate_eps: f64) -> Result<Self> {
        let g = Self {
            layout,
            substrate_eps,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn circular(r_island: f64, gap_w: f64, substrate_eps: f64) -> Result<Self> {
        Self::new(Layout::CircularTransmon { r_island, gap_w }, substrate_eps)
    }

    /// Circular transmon with mid-gap perimeter `p` and gap `w`.
    pub fn circular_with_aspect(perimeter: f64, p_over_w: f64, substrate_eps: f64) -> Result<Self> {
        let gap_w = perimeter / p_over_w;
        let r_island = perimeter / (2.0 * PI) - 0.5 * gap_w;
        Self::circular(r_island, gap_w, substrate_eps)
    }

    pub fn rectangular(length_l: f64, width_w: f64, gap_w: f64, substrate_eps: f64) -> Result<Self> {
        Self::new(
            Layout::RectangularTransmon {
                length_l,
                width_w,
                gap_w,
            },
            substrate_eps,
        )
    }

    pub fn xmon(arm_l: f64, trace_s: f64, gap_w: f64, substrate_eps: f64) -> Result<Self> {
        Self::new(Layout::Xmon { arm_l, trace_s, gap_w }, substrate_eps)
    }

    pub fn differential(
        island_l: f64,
        island_w: f64,
        gap_w: f64,
        island_sep: f64,
        substrate_eps: f64,
    ) -> Result<Self> {
        Self::new(
            Layout::DifferentialTransmon {
                island_l,
                island_w,
                gap_w,
                island_sep,
            },
            substrate_eps,
        )
    }

    pub fn three_d(pad_l: f64, pad_w: f64, feed_gap: f64, substrate_eps: f64) -> Result<Self> {
        Self::new(Layout::ThreeDTransmon { pad_l, pad_w, feed_gap }, substrate_eps)
    }

    pub fn effective_permittivity(&self) -> f64 {
        0.5 * (1.0 + self.substrate_eps)
    }

    /// Planar layouts are slot (aperture) structures in a groundplane; the 3D
    /// transmon is itself a wire antenna.
    pub fn is_aperture(&self) -> bool {
        !matches!(self.layout, Layout::ThreeDTransmon { .. })
    }

    /// Medium the dual wire model is embedded in.
    pub fn wire_medium(&self) -> Result<Medium> {
        let eps_eff = effective_permittivity(self.substrate_eps)?;
        if self.is_aperture() {
            // aperture in a dielectric maps to a wire in a magnetic medium
            Medium::dielectric(eps_eff).map(|m| m.swapped())
        } else {
            Medium::dielectric(eps_eff)
        }
    }

    fn validate(&self) -> Result<()> {
        effective_permittivity(self.substrate_eps)?;
        let smaller = |small: (&'static str, f64), big: (&'static str, f64)| -> Result<()> {
            if small.1 < big.1 {
                Ok(())
            } else {
                Err(Error::Geometry(format!(
                    "{} ({:.3e} m) must be smaller than {} ({:.3e} m)",
                    small.0, small.1, big.0, big.1
                )))
            }
        };
        match self.layout {
            Layout::CircularTransmon { r_island, gap_w } => {
                ensure_positive("r_island", r_island)?;
                ensure_positive("gap_w", gap_w)?;
                smaller(("gap_w", gap_w), ("r_island", r_island))
            }
            Layout::RectangularTransmon {
                length_l,
                width_w,
                gap_w,
            } => {
                ensure_positive("length_l", length_l)?;
                ensure_positive("width_w", width_w)?;
                ensure_positive("gap_w", gap_w)?;
                smaller(("gap_w", gap_w), ("length_l", length_l))
            }
            Layout::Xmon { arm_l, trace_s, gap_w } => {
                ensure_positive("arm_l", arm_l)?;
                ensure_positive("trace_s", trace_s)?;
                ensure_positive("gap_w", gap_w)?;
                smaller(("trace_s", trace_s), ("arm_l", arm_l))?;
                smaller(("gap_w", gap_w), ("arm_l", arm_l))
            }
            Layout::DifferentialTransmon {
                island_l,
                island_w,
                gap_w,
                island_sep,
            } => {
                ensure_positive("island_l", island_l)?;
                ensure_positive("island_w", island_w)?;
                ensure_positive("gap_w", gap_w)?;
                ensure_positive("island_sep", island_sep)?;
                smaller(("gap_w", gap_w), ("island_l", island_l))?;
                smaller(("island_sep", island_sep), ("island_l", island_l))
            }
            Layout::ThreeDTransmon { pad_l, pad_w, feed_gap } => {
                ensure_positive("pad_l", pad_l)?;
                ensure_positive("pad_w", pad_w)?;
                if !(feed_gap.is_finite() && feed_gap >= 0.0) {
                    return Err(Error::param("feed_gap", "must be non-negative"));
                }
                smaller(("feed_gap", feed_gap), ("pad_l", pad_l))
            }
        }
    }
}

/// Options for dual-model construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildOptions {
    /// Facets of polygonal loops; reduced automatically for thick loops so
    /// every facet stays a thin wire.
    pub loop_facets: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            loop_facets: DEFAULT_LOOP_FACETS,
        }
    }
}

/// Builds the thin-wire dual of `g` with default options.
pub fn build_dual_wire_model(g: &QubitGeometry) -> Result<WireModel> {
    build_dual_wire_model_with(g, BuildOptions::default())
}

/// Builds the thin-wire dual of a qubit layout.
///
/// Planar layouts map to the wire structure occupying their slots, traced at
/// mid-gap with equivalent wire radius `w/4`; the junction becomes a delta-gap
/// feed. The 3D transmon is already a strip dipole and maps to itself.
pub fn build_dual_wire_model_with(g: &QubitGeometry, opts: BuildOptions) -> Result<WireModel> {
    let medium = g.wire_medium()?;
    let model = match g.layout {
        Layout::CircularTransmon { r_island, gap_w } => {
            let r = r_island + 0.5 * gap_w;
            let a = 0.25 * gap_w;
            // Facet chord 2r·sin(π/N) must stay above the thin-wire limit.
            let min_chord = super::wire::THIN_WIRE_LENGTH_TO_RADIUS * a;
            let mut facets = opts.loop_facets;
            while facets >= MIN_LOOP_FACETS && 2.0 * r * (PI / facets as f64).sin() <= min_chord {
                facets -= 1;
            }
            if facets < MIN_LOOP_FACETS {
                return Err(Error::ThinWire(format!(
                    "gap {gap_w:.3e} m is too wide for a thin-wire loop of radius {r:.3e} m"
                )));
            }
            polygon_loop(r, a, facets, medium)?
        }
        Layout::RectangularTransmon {
            length_l,
            width_w,
            gap_w,
        } => folded_dipole(length_l + gap_w, width_w + gap_w, 0.25 * gap_w, medium)?,
        Layout::Xmon { arm_l, trace_s, gap_w } => xmon_outline(arm_l, trace_s, gap_w, medium)?,
        Layout::DifferentialTransmon {
            island_l,
            island_w,
            gap_w,
            island_sep,
        } => doubled_folded_dipole(island_l, island_w, gap_w, island_sep, medium)?,
        Layout::ThreeDTransmon { pad_l, pad_w, feed_gap } => {
            dipole(2.0 * pad_l + feed_gap, 0.25 * pad_w, medium)?
        }
    };
    model.check_thin_wire()?;
    Ok(model)
}

fn xy(x: f64, y: f64) -> Point3 {
    Point3::new(x, y, 0.0)
}

/// Closed polyline through `pts`; the feed sits on the first edge.
fn closed_polyline(pts: &[Point3], radius: f64, medium: Medium, topology: Topology) -> Result<WireModel> {
    let n = pts.len();
    let segments = (0..n)
        .map(|i| Segment::new(pts[i], pts[(i + 1) % n], radius))
        .collect();
    WireModel::new(segments, 0, medium, topology)
}

/// Center-fed straight dipole along x.
pub fn dipole(length: f64, radius: f64, medium: Medium) -> Result<WireModel> {
    ensure_positive("length", length)?;
    ensure_positive("radius", radius)?;
    let h = 0.5 * length;
    WireModel::new(
        vec![Segment::new(xy(-h, 0.0), xy(h, 0.0), radius)],
        0,
        medium,
        Topology::Dipole,
    )
}

/// Regular polygon loop with vertices on a circle of radius `r`, fed at the
/// middle of the facet straddling the -y axis.
pub fn polygon_loop(r: f64, radius: f64, facets: usize, medium: Medium) -> Result<WireModel> {
    ensure_positive("r", r)?;
    ensure_positive("radius", radius)?;
    if facets < 3 {
        return Err(Error::param("facets", "a loop needs at least 3 facets"));
    }
    let d = 2.0 * PI / facets as f64;
    let pts: Vec<Point3> = (0..facets)
        .map(|i| {
            let t = -0.5 * PI - 0.5 * d + d * i as f64;
            xy(r * t.cos(), r * t.sin())
        })
        .collect();
    closed_polyline(&pts, radius, medium, Topology::Loop)
}

/// Folded dipole: rectangle `length` × `spacing`, fed at the center of the lower branch.
pub fn folded_dipole(length: f64, spacing: f64, radius: f64, medium: Medium) -> Result<WireModel> {
    ensure_positive("length", length)?;
    ensure_positive("spacing", spacing)?;
    ensure_positive("radius", radius)?;
    let (x, y) = (0.5 * length, 0.5 * spacing);
    let pts = [xy(-x, -y), xy(x, -y), xy(x, y), xy(-x, y)];
    closed_polyline(&pts, radius, medium, Topology::FoldedDipole)
}

/// Mid-gap outline of an Xmon cross: four U-shaped arm strips joined at the
/// inner corners, fed at the tip of the lower arm where the junction sits.
fn xmon_outline(arm_l: f64, trace_s: f64, gap_w: f64, medium: Medium) -> Result<WireModel> {
    let hw = 0.5 * (trace_s + gap_w);
    let t = 0.5 * trace_s + arm_l + 0.5 * gap_w;
    let pts = [
        xy(-hw, -t),
        xy(hw, -t),
        xy(hw, -hw),
        xy(t, -hw),
        xy(t, hw),
        xy(hw, hw),
        xy(hw, t),
        xy(-hw, t),
        xy(-hw, hw),
        xy(-t, hw),
        xy(-t, -hw),
        xy(-hw, -hw),
    ];
    closed_polyline(&pts, 0.25 * gap_w, medium, Topology::XmonCross)
}

/// Two islands stacked along y inside one cavity: outer slot plus the slot
/// between the islands. The middle branch carries the junction.
fn doubled_folded_dipole(
    island_l: f64,
    island_w: f64,
    gap_w: f64,
    island_sep: f64,
    medium: Medium,
) -> Result<WireModel> {
    let x = 0.5 * (island_l + gap_w);
    let yt = 0.5 * island_sep + island_w + 0.5 * gap_w;
    let (a_out, a_mid) = (0.25 * gap_w, 0.25 * island_sep);
    let segments = vec![
        Segment::new(xy(-x, 0.0), xy(x, 0.0), a_mid),
        Segment::new(xy(x, 0.0), xy(x, yt), a_out),
        Segment::new(xy(x, yt), xy(-x, yt), a_out),
        Segment::new(xy(-x, yt), xy(-x, 0.0), a_out),
        Segment::new(xy(-x, 0.0), xy(-x, -yt), a_out),
        Segment::new(xy(-x, -yt), xy(x, -yt), a_out),
        Segment::new(xy(x, -yt), xy(x, 0.0), a_out),
    ];
    WireModel::new(segments, 0, medium, Topology::DoubledFoldedDipole)
}
