//! JSON geometry documents. Lengths carry a `_um` suffix and are converted
//! to meters; unknown keys are rejected.

use serde::{Deserialize, Serialize};

use super::qubit::{Layout, QubitGeometry};
use crate::error::{Error, Result};

const UM: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeometryDoc {
    Circular {
        r_island_um: f64,
        gap_w_um: f64,
        substrate_eps: f64,
    },
    Rectangular {
        length_l_um: f64,
        width_w_um: f64,
        gap_w_um: f64,
        substrate_eps: f64,
    },
    Xmon {
        arm_l_um: f64,
        trace_s_um: f64,
        gap_w_um: f64,
        substrate_eps: f64,
    },
    Differential {
        island_l_um: f64,
        island_w_um: f64,
        gap_w_um: f64,
        island_sep_um: f64,
        substrate_eps: f64,
    },
    #[serde(rename = "3d", alias = "three_d")]
    ThreeD {
        pad_l_um: f64,
        pad_w_um: f64,
        feed_gap_um: f64,
        substrate_eps: f64,
    },
}

impl GeometryDoc {
    pub fn into_geometry(self) -> Result<QubitGeometry> {
        let (layout, eps) = match self {
            GeometryDoc::Circular {
                r_island_um,
                gap_w_um,
                substrate_eps,
            } => (
                Layout::CircularTransmon {
                    r_island: r_island_um * UM,
                    gap_w: gap_w_um * UM,
                },
                substrate_eps,
            ),
            GeometryDoc::Rectangular {
                length_l_um,
                width_w_um,
                gap_w_um,
                substrate_eps,
            } => (
                Layout::RectangularTransmon {
                    length_l: length_l_um * UM,
                    width_w: width_w_um * UM,
                    gap_w: gap_w_um * UM,
                },
                substrate_eps,
            ),
            GeometryDoc::Xmon {
                arm_l_um,
                trace_s_um,
                gap_w_um,
                substrate_eps,
            } => (
                Layout::Xmon {
                    arm_l: arm_l_um * UM,
                    trace_s: trace_s_um * UM,
                    gap_w: gap_w_um * UM,
                },
                substrate_eps,
            ),
            GeometryDoc::Differential {
                island_l_um,
                island_w_um,
                gap_w_um,
                island_sep_um,
                substrate_eps,
            } => (
                Layout::DifferentialTransmon {
                    island_l: island_l_um * UM,
                    island_w: island_w_um * UM,
                    gap_w: gap_w_um * UM,
                    island_sep: island_sep_um * UM,
                },
                substrate_eps,
            ),
            GeometryDoc::ThreeD {
                pad_l_um,
                pad_w_um,
                feed_gap_um,
                substrate_eps,
            } => (
                Layout::ThreeDTransmon {
                    pad_l: pad_l_um * UM,
                    pad_w: pad_w_um * UM,
                    feed_gap: feed_gap_um * UM,
                },
                substrate_eps,
            ),
        };
        QubitGeometry::new(layout, eps)
    }

    pub fn from_geometry(g: &QubitGeometry) -> Self {
        let substrate_eps = g.substrate_eps;
        match g.layout {
            Layout::CircularTransmon { r_island, gap_w } => GeometryDoc::Circular {
                r_island_um: r_island / UM,
                gap_w_um: gap_w / UM,
                substrate_eps,
            },
            Layout::RectangularTransmon {
                length_l,
                width_w,
                gap_w,
            } => GeometryDoc::Rectangular {
                length_l_um: length_l / UM,
                width_w_um: width_w / UM,
                gap_w_um: gap_w / UM,
                substrate_eps,
            },
            Layout::Xmon { arm_l, trace_s, gap_w } => GeometryDoc::Xmon {
                arm_l_um: arm_l / UM,
                trace_s_um: trace_s / UM,
                gap_w_um: gap_w / UM,
                substrate_eps,
            },
            Layout::DifferentialTransmon {
                island_l,
                island_w,
                gap_w,
                island_sep,
            } => GeometryDoc::Differential {
                island_l_um: island_l / UM,
                island_w_um: island_w / UM,
                gap_w_um: gap_w / UM,
                island_sep_um: island_sep / UM,
                substrate_eps,
            },
            Layout::ThreeDTransmon { pad_l, pad_w, feed_gap } => GeometryDoc::ThreeD {
                pad_l_um: pad_l / UM,
                pad_w_um: pad_w / UM,
                feed_gap_um: feed_gap / UM,
                substrate_eps,
            },
        }
    }
}

/// Parses a geometry document.
pub fn parse_geometry(json: &str) -> Result<QubitGeometry> {
    let doc: GeometryDoc =
        serde_json::from_str(json).map_err(|e| Error::Config(format!("geometry: {e}")))?;
    doc.into_geometry()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_xmon_document() {
        let g = parse_geometry(
            r#"{"variant": "xmon", "arm_l_um": 130, "trace_s_um": 8, "gap_w_um": 4, "substrate_eps": 11}"#,
        )
        .unwrap();
        match g.layout {
            Layout::Xmon { arm_l, trace_s, gap_w } => {
                assert!((arm_l - 130e-6).abs() < 1e-18);
                assert!((trace_s - 8e-6).abs() < 1e-18);
                assert!((gap_w - 4e-6).abs() < 1e-18);
            }
            other => panic!("unexpected layout {other:?}"),
        }
        assert_eq!(g.substrate_eps, 11.0);
    }

    #[test]
    fn rejects_unknown_keys_and_units() {
        let bad = r#"{"variant": "xmon", "arm_l": 130, "trace_s_um": 8, "gap_w_um": 4, "substrate_eps": 11}"#;
        assert!(matches!(parse_geometry(bad), Err(Error::Config(_))));
        let extra = r#"{"variant": "xmon", "arm_l_um": 130, "trace_s_um": 8, "gap_w_um": 4, "substrate_eps": 11, "color": "red"}"#;
        assert!(parse_geometry(extra).is_err());
        let unknown = r#"{"variant": "fluxonium", "substrate_eps": 11}"#;
        assert!(parse_geometry(unknown).is_err());
    }

    #[test]
    fn document_roundtrip() {
        let g = parse_geometry(
            r#"{"variant": "3d", "pad_l_um": 170, "pad_w_um": 24, "feed_gap_um": 20, "substrate_eps": 11}"#,
        )
        .unwrap();
        let back = GeometryDoc::from_geometry(&g).into_geometry().unwrap();
        assert_eq!(g, back);
    }
}
