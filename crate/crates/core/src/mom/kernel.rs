//! Segment-pair integrals of the thin-wire reduced kernel.
//!
//! For segments `p` and `q` with linear shape functions `φ0 = 1 - u` and
//! `φ1 = u` along each, [`pair_integrals`] returns
//! `A[α][β] = ∫_p ∫_q φα φβ exp(-jkR)/R dl dl'` with
//! `R = sqrt(|r - r'|² + a²)`, `a` the source wire radius.

use num_complex::Complex64;

use super::quadrature::GaussRule;
use crate::geometry::{Point3, Segment};

/// Segments closer than this many segment lengths get singularity extraction.
const NEAR_DISTANCE: f64 = 1.0;
/// Sub-intervals of the observation segment for near pairs.
const NEAR_OUTER_PARTS: usize = 4;

pub type Block = [[Complex64; 2]; 2];

/// Quadrature rules shared by every pair evaluation of one assembly.
#[derive(Debug, Clone)]
pub struct KernelRules {
    pub far: GaussRule,
    pub near_outer: GaussRule,
    pub extract: bool,
}

impl KernelRules {
    pub fn new(points: usize, extract: bool) -> Self {
        let far = GaussRule::new(points);
        let near_outer = far.composite(NEAR_OUTER_PARTS);
        Self {
            far,
            near_outer,
            extract,
        }
    }
}

/// Reduced-kernel distance with the source radius.
#[inline]
fn reduced_distance(r: &Point3, rp: &Point3, a: f64) -> f64 {
    ((r - rp).norm_squared() + a * a).sqrt()
}

/// Whether a segment pair needs singular handling.
pub fn is_near(p: &Segment, q: &Segment) -> bool {
    let lp = p.length();
    let lq = q.length();
    let gap = (p.midpoint() - q.midpoint()).norm() - 0.5 * (lp + lq);
    gap < NEAR_DISTANCE * lp.max(lq)
}

/// `∫_q φβ / R dl'` in closed form for an observation point `r`, as `[β=0, β=1]`.
pub fn static_potential(r: &Point3, q: &Segment) -> [f64; 2] {
    let len = q.length();
    let t = q.direction();
    let d = r - q.start;
    let z0 = d.dot(&t);
    let rho2 = (d.norm_squared() - z0 * z0).max(0.0) + q.radius * q.radius;
    let rho = rho2.sqrt();
    let r_start = (z0 * z0 + rho2).sqrt();
    let r_end = ((len - z0) * (len - z0) + rho2).sqrt();
    let i0 = ((len - z0) / rho).asinh() + (z0 / rho).asinh();
    // ∫ s/R ds = [R] + z0 ∫ 1/R ds
    let i1 = (r_end - r_start) + z0 * i0;
    let phi1 = i1 / len;
    [i0 - phi1, phi1]
}

/// Segment-pair block `A[α][β]`; `α` indexes shape functions on `p`, `β` on `q`.
pub fn pair_integrals(p: &Segment, q: &Segment, k: f64, rules: &KernelRules) -> Block {
    let lp = p.length();
    let lq = q.length();
    let near = rules.extract && is_near(p, q);
    let outer = if near { &rules.near_outer } else { &rules.far };
    let inner = &rules.far;

    let inner_pts: Vec<(Point3, f64, f64)> = inner
        .iter()
        .map(|(v, w)| (q.point_at(v), v, w * lq))
        .collect();

    let mut block = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (u, wu) in outer.iter() {
        let r = p.point_at(u);
        let wu = wu * lp;
        let mut acc = [Complex64::new(0.0, 0.0); 2];
        for &(ref rp, v, wv) in &inner_pts {
            let dist = reduced_distance(&r, rp, q.radius);
            let phase = Complex64::new(0.0, -k * dist).exp();
            let g = if near {
                // smooth remainder; the 1/R part is added analytically below
                (phase - 1.0) / dist
            } else {
                phase / dist
            };
            acc[0] += g * ((1.0 - v) * wv);
            acc[1] += g * (v * wv);
        }
        if near {
            let s = static_potential(&r, q);
            acc[0] += s[0];
            acc[1] += s[1];
        }
        for beta in 0..2 {
            block[0][beta] += acc[beta] * ((1.0 - u) * wu);
            block[1][beta] += acc[beta] * (u * wu);
        }
    }
    block
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(x0: f64, x1: f64, a: f64) -> Segment {
        Segment::new(Point3::new(x0, 0.0, 0.0), Point3::new(x1, 0.0, 0.0), a)
    }

    #[test]
    fn static_potential_matches_brute_force() {
        let q = Segment::new(Point3::new(0.1, 0.2, 0.0), Point3::new(1.1, 0.5, 0.3), 0.01);
        let r = Point3::new(0.5, 0.3, 0.05);
        let n = 200_000;
        let (mut b0, mut b1) = (0.0, 0.0);
        for i in 0..n {
            let v = (i as f64 + 0.5) / n as f64;
            let d = reduced_distance(&r, &q.point_at(v), q.radius);
            let w = q.length() / n as f64;
            b0 += (1.0 - v) / d * w;
            b1 += v / d * w;
        }
        let s = static_potential(&r, &q);
        assert!((s[0] - b0).abs() / b0 < 1e-6, "{} vs {b0}", s[0]);
        assert!((s[1] - b1).abs() / b1 < 1e-6, "{} vs {b1}", s[1]);
    }

    #[test]
    fn far_pairs_are_transposes() {
        let p = seg(0.0, 0.1, 1e-3);
        let q = Segment::new(Point3::new(0.5, 0.3, 0.0), Point3::new(0.6, 0.35, 0.0), 1e-3);
        let rules = KernelRules::new(8, true);
        let a = pair_integrals(&p, &q, 5.0, &rules);
        let b = pair_integrals(&q, &p, 5.0, &rules);
        for i in 0..2 {
            for j in 0..2 {
                assert!((a[i][j] - b[j][i]).norm() < 1e-12 * a[i][j].norm());
            }
        }
    }
}
