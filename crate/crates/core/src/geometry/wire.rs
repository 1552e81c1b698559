use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::em::{constants::C0, Medium};
use crate::error::{Error, Result};

pub type Point3 = Vector3<f64>;

/// Minimum ratio of segment length to wire radius for the thin-wire kernel.
pub const MIN_LENGTH_TO_RADIUS: f64 = 2.0;
/// Ratio of physical wire length to radius required when a model is built.
pub const THIN_WIRE_LENGTH_TO_RADIUS: f64 = 5.0;

/// Straight wire segment with a circular cross-section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub start: Point3,
    pub end: Point3,
    pub radius: f64,
}

impl Segment {
    pub fn new(start: Point3, end: Point3, radius: f64) -> Self {
        Self { start, end, radius }
    }

    pub fn length(&self) -> f64 {
        (self.end - self.start).norm()
    }

    pub fn direction(&self) -> Point3 {
        (self.end - self.start) / self.length()
    }

    pub fn midpoint(&self) -> Point3 {
        0.5 * (self.start + self.end)
    }

    pub fn point_at(&self, u: f64) -> Point3 {
        self.start + u * (self.end - self.start)
    }

    /// Splits into `n` equal pieces, preserving the exact end points.
    pub fn split(&self, n: usize) -> Vec<Segment> {
        (0..n)
            .map(|i| {
                let a = if i == 0 { self.start } else { self.point_at(i as f64 / n as f64) };
                let b = if i + 1 == n { self.end } else { self.point_at((i + 1) as f64 / n as f64) };
                Segment::new(a, b, self.radius)
            })
            .collect()
    }
}

/// Connectivity class of a wire model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    Loop,
    FoldedDipole,
    DoubledFoldedDipole,
    Dipole,
    XmonCross,
}

impl Topology {
    /// Closed topologies have no free wire ends.
    pub fn is_closed(&self) -> bool {
        !matches!(self, Topology::Dipole)
    }
}

/// Thin-wire antenna: straight segments and one delta-gap feed located at the
/// midpoint of `feed_segment`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WireModel {
    segments: Vec<Segment>,
    feed_segment: usize,
    medium: Medium,
    topology: Topology,
}

/// Node graph of a wire model: segment end points merged by position.
#[derive(Debug, Clone)]
pub struct Connectivity {
    pub nodes: Vec<Point3>,
    /// `(start_node, end_node)` per segment.
    pub ends: Vec<(usize, usize)>,
}

impl Connectivity {
    /// Segment ends attached to each node as `(segment, is_end)`.
    pub fn attachments(&self) -> Vec<Vec<(usize, bool)>> {
        let mut att = vec![Vec::new(); self.nodes.len()];
        for (s, &(a, b)) in self.ends.iter().enumerate() {
            att[a].push((s, false));
            att[b].push((s, true));
        }
        att
    }
}

impl WireModel {
    pub fn new(
        segments: Vec<Segment>,
        feed_segment: usize,
        medium: Medium,
        topology: Topology,
    ) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Geometry("wire model has no segments".into()));
        }
        if feed_segment >= segments.len() {
            return Err(Error::Geometry(format!(
                "feed segment {feed_segment} out of range (0..{})",
                segments.len()
            )));
        }
        for (i, s) in segments.iter().enumerate() {
            let len = s.length();
            if !(len.is_finite() && len > 0.0) {
                return Err(Error::Geometry(format!("segment {i} has zero or invalid length")));
            }
            if !(s.radius.is_finite() && s.radius > 0.0) {
                return Err(Error::Geometry(format!("segment {i} has non-positive radius")));
            }
        }
        let model = Self {
            segments,
            feed_segment,
            medium,
            topology,
        };
        let conn = model.connectivity();
        if !is_connected(&conn) {
            return Err(Error::Geometry("segments do not form a connected structure".into()));
        }
        if topology.is_closed() {
            let att = conn.attachments();
            if let Some(n) = att.iter().position(|a| a.len() < 2) {
                return Err(Error::Geometry(format!(
                    "{topology:?} model is not closed: free end at {:?}",
                    conn.nodes[n].as_slice()
                )));
            }
        }
        Ok(model)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn feed_segment(&self) -> usize {
        self.feed_segment
    }

    pub fn feed_point(&self) -> Point3 {
        self.segments[self.feed_segment].midpoint()
    }

    pub fn medium(&self) -> Medium {
        self.medium
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn with_medium(mut self, medium: Medium) -> Self {
        self.medium = medium;
        self
    }

    pub fn total_length(&self) -> f64 {
        self.segments.iter().map(Segment::length).sum()
    }

    /// Largest distance of any end point from the origin.
    pub fn extent(&self) -> f64 {
        self.segments
            .iter()
            .flat_map(|s| [s.start.norm(), s.end.norm()])
            .fold(0.0, f64::max)
    }

    /// Geometry scaled uniformly about the origin.
    pub fn scaled(&self, factor: f64) -> Self {
        let segments = self
            .segments
            .iter()
            .map(|s| Segment::new(s.start * factor, s.end * factor, s.radius * factor))
            .collect();
        Self {
            segments,
            ..self.clone()
        }
    }

    /// Tolerance used to merge coincident end points.
    pub fn node_tolerance(&self) -> f64 {
        let shortest = self
            .segments
            .iter()
            .map(Segment::length)
            .fold(f64::INFINITY, f64::min);
        (1e-9 * shortest).min(1e-12)
    }

    pub fn connectivity(&self) -> Connectivity {
        let tol = self.node_tolerance();
        let mut nodes: Vec<Point3> = Vec::new();
        let mut find = |p: Point3| -> usize {
            if let Some(i) = nodes.iter().position(|q| (q - p).norm() <= tol) {
                i
            } else {
                nodes.push(p);
                nodes.len() - 1
            }
        };
        let ends = self
            .segments
            .iter()
            .map(|s| (find(s.start), find(s.end)))
            .collect();
        Connectivity { nodes, ends }
    }

    /// Rejects models whose physical wires are not thin: radius must stay below
    /// a fifth of every wire length.
    pub fn check_thin_wire(&self) -> Result<()> {
        for (i, s) in self.segments.iter().enumerate() {
            if s.radius * THIN_WIRE_LENGTH_TO_RADIUS >= s.length() {
                return Err(Error::ThinWire(format!(
                    "wire {i}: radius {:.3e} m is not small against length {:.3e} m",
                    s.radius,
                    s.length()
                )));
            }
        }
        Ok(())
    }

    /// Subdivides every wire so that no segment exceeds
    /// `λ_min / segments_per_wavelength`, with `λ_min` the in-medium wavelength at
    /// `f_max`. The feed wire is split into an odd number of pieces so the feed
    /// stays at the midpoint of the central piece; a feed wire with a free end
    /// gets at least three.
    pub fn discretize(&self, segments_per_wavelength: usize, f_max: f64) -> Result<WireModel> {
        if segments_per_wavelength < 10 {
            return Err(Error::param(
                "segments_per_wavelength",
                format!("must be >= 10, got {segments_per_wavelength}"),
            ));
        }
        if !(f_max.is_finite() && f_max > 0.0) {
            return Err(Error::param("f_max", "must be positive"));
        }
        let lambda_min = C0 / (self.medium.index() * f_max);
        let max_len = lambda_min / segments_per_wavelength as f64;

        let conn = self.connectivity();
        let att = conn.attachments();
        let (fa, fb) = conn.ends[self.feed_segment];
        let feed_has_free_end = att[fa].len() < 2 || att[fb].len() < 2;

        let mut out = Vec::new();
        let mut feed = 0;
        for (i, s) in self.segments.iter().enumerate() {
            let mut n = (s.length() / max_len).ceil().max(1.0) as usize;
            if i == self.feed_segment {
                if feed_has_free_end {
                    n = n.max(3);
                }
                if n.is_multiple_of(2) {
                    // Odd count keeps the gap at the wire midpoint. Round down
                    // instead of up when the extra piece would be too short.
                    let floor = if feed_has_free_end { 3 } else { 1 };
                    let too_short = s.length() / ((n + 1) as f64) < MIN_LENGTH_TO_RADIUS * s.radius;
                    n = if too_short && n > floor { n - 1 } else { n + 1 };
                }
                feed = out.len() + n / 2;
            }
            let pieces = s.split(n);
            let piece_len = s.length() / n as f64;
            if piece_len < MIN_LENGTH_TO_RADIUS * s.radius {
                return Err(Error::ThinWire(format!(
                    "wire {i} would need segments of {piece_len:.3e} m, shorter than twice the radius {:.3e} m",
                    s.radius
                )));
            }
            out.extend(pieces);
        }
        WireModel::new(out, feed, self.medium, self.topology)
    }
}

fn is_connected(conn: &Connectivity) -> bool {
    let n = conn.nodes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for &(a, b) in &conn.ends {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        parent[ra] = rb;
    }
    let r0 = root(&mut parent, 0);
    (0..n).all(|i| root(&mut parent, i) == r0)
}
