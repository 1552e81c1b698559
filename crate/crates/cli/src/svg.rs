//! Minimal self-contained SVG line plots.

use std::fmt::Write;

use qubit_antenna::reproduce::{Plot, Table};

const WIDTH: f64 = 720.0;
const PANEL_HEIGHT: f64 = 240.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 40.0;
const PANEL_GAP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 50.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

/// Renders `plot`, resolving line data from `tables`.
pub fn render(plot: &Plot, tables: &[Table]) -> String {
    let n_panels = plot.panels.len().max(1) as f64;
    let height = MARGIN_TOP + n_panels * PANEL_HEIGHT + (n_panels - 1.0) * PANEL_GAP + MARGIN_BOTTOM;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(&plot.title)
    );

    let (x_lo, x_hi) = x_range(plot, tables);
    for (pi, panel) in plot.panels.iter().enumerate() {
        let top = MARGIN_TOP + pi as f64 * (PANEL_HEIGHT + PANEL_GAP);
        let frame = Frame {
            left: MARGIN_LEFT,
            right: WIDTH - MARGIN_RIGHT,
            top,
            bottom: top + PANEL_HEIGHT,
            x: (x_lo, x_hi),
            y: y_range(panel.lines.iter().map(|l| &tables[l.table].columns[l.y])),
        };
        frame.axes(&mut s, &panel.y_label);
        if pi + 1 == plot.panels.len() {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
                (frame.left + frame.right) / 2.0,
                frame.bottom + 35.0,
                escape(&plot.x_label)
            );
        }
        for (f, label) in &plot.markers {
            let x = frame.px(f * plot.x_scale);
            if x < frame.left || x > frame.right {
                continue;
            }
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#888" stroke-dasharray="2,3"/>"##,
                frame.top, frame.bottom
            );
            if pi == 0 {
                let _ = writeln!(
                    s,
                    r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle" font-size="10">{}</text>"#,
                    frame.top - 4.0,
                    escape(label)
                );
            }
        }
        for (li, line) in panel.lines.iter().enumerate() {
            let t = &tables[line.table];
            let color = COLORS[li % COLORS.len()];
            let pts: Vec<String> = t.columns[line.x]
                .iter()
                .zip(&t.columns[line.y])
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .map(|(x, y)| format!("{:.2},{:.2}", frame.px(x * plot.x_scale), frame.py(*y)))
                .collect();
            let dash = if line.dashed { r#" stroke-dasharray="6,4""# } else { "" };
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#,
                pts.join(" ")
            );
            let ly = frame.top + 14.0 + 16.0 * li as f64;
            let lx = frame.right + 10.0;
            let _ = writeln!(
                s,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="1.5"{dash}/>"#,
                lx + 22.0
            );
            let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, lx + 26.0, ly + 4.0, escape(&line.label));
        }
    }
    s.push_str("</svg>\n");
    s
}

struct Frame {
    left: f64,
    right: f64,
    top: f64,
    bottom: f64,
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x.0) / (self.x.1 - self.x.0) * (self.right - self.left)
    }

    fn py(&self, y: f64) -> f64 {
        self.bottom - (y - self.y.0) / (self.y.1 - self.y.0) * (self.bottom - self.top)
    }

    fn axes(&self, s: &mut String, y_label: &str) {
        let _ = writeln!(
            s,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            self.left,
            self.top,
            self.right - self.left,
            self.bottom - self.top
        );
        for v in ticks(self.x.0, self.x.1) {
            let x = self.px(v);
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="#ddd"/><text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"##,
                self.top,
                self.bottom,
                self.bottom + 15.0,
                tick_label(v)
            );
        }
        for v in ticks(self.y.0, self.y.1) {
            let y = self.py(v);
            let _ = writeln!(
                s,
                r##"<line x1="{}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="#ddd"/><text x="{}" y="{:.2}" text-anchor="end">{}</text>"##,
                self.left,
                self.right,
                self.left - 5.0,
                y + 4.0,
                tick_label(v)
            );
        }
        if self.y.0 < 0.0 && self.y.1 > 0.0 {
            let y = self.py(0.0);
            let _ = writeln!(
                s,
                r##"<line x1="{}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="#666"/>"##,
                self.left, self.right
            );
        }
        let cy = (self.top + self.bottom) / 2.0;
        let _ = writeln!(
            s,
            r#"<text x="20" y="{cy}" text-anchor="middle" transform="rotate(-90 20 {cy})">{}</text>"#,
            escape(y_label)
        );
    }
}

fn x_range(plot: &Plot, tables: &[Table]) -> (f64, f64) {
    let xs = plot
        .panels
        .iter()
        .flat_map(|p| p.lines.iter())
        .flat_map(|l| tables[l.table].columns[l.x].iter())
        .map(|x| x * plot.x_scale);
    pad(bounds(xs), 0.0)
}

fn y_range<'a>(cols: impl Iterator<Item = &'a Vec<f64>>) -> (f64, f64) {
    pad(bounds(cols.flat_map(|c| c.iter().copied())), 0.05)
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn pad((lo, hi): (f64, f64), frac: f64) -> (f64, f64) {
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
        let d = lo.abs().max(1.0) * 0.5;
        return (lo - d, hi + d);
    }
    let d = (hi - lo) * frac;
    (lo - d, hi + d)
}

/// Roughly five round-numbered ticks inside `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if !(1e-3..1e5).contains(&a) {
        format!("{v:.1e}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
