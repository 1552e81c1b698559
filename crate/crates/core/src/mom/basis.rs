//! Piecewise-linear (triangle) current basis on a wire graph.
//!
//! A node shared by `k` segment ends carries `k - 1` basis functions, each a
//! pair of half-triangles flowing into the node along the first attached
//! segment and out along one of the others, so Kirchhoff's current law holds
//! at every junction. Free wire ends carry no basis function and force zero
//! current.

use crate::geometry::WireModel;

/// One half-triangle of a basis function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Half {
    pub segment: usize,
    /// 0: shape peaks at the segment start; 1: at its end.
    pub shape: usize,
    /// +1 if the basis current flows along the segment direction.
    pub sign: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    pub node: usize,
    pub halves: [Half; 2],
}

/// Basis functions and, per segment and shape, the `(basis, sign)` pairs that use it.
#[derive(Debug, Clone)]
pub struct BasisSet {
    pub functions: Vec<Basis>,
    pub members: Vec<[Vec<(usize, f64)>; 2]>,
}

impl BasisSet {
    pub fn build(model: &WireModel) -> Self {
        let conn = model.connectivity();
        let attachments = conn.attachments();
        let mut functions = Vec::new();
        for (node, att) in attachments.iter().enumerate() {
            if att.len() < 2 {
                continue;
            }
            let (s_in, in_at_end) = att[0];
            let incoming = Half {
                segment: s_in,
                shape: usize::from(in_at_end),
                sign: if in_at_end { 1.0 } else { -1.0 },
            };
            for &(s_out, out_at_end) in &att[1..] {
                let outgoing = Half {
                    segment: s_out,
                    shape: usize::from(out_at_end),
                    sign: if out_at_end { -1.0 } else { 1.0 },
                };
                functions.push(Basis {
                    node,
                    halves: [incoming, outgoing],
                });
            }
        }
        let mut members = vec![[Vec::new(), Vec::new()]; model.segments().len()];
        for (i, b) in functions.iter().enumerate() {
            for h in &b.halves {
                members[h.segment][h.shape].push((i, h.sign));
            }
        }
        Self { functions, members }
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }
}

/// Slope of shape function `shape` along a segment of unit length.
pub fn shape_slope(shape: usize) -> f64 {
    if shape == 1 {
        1.0
    } else {
        -1.0
    }
}
