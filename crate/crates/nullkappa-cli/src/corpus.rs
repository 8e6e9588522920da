//! Seeded random domain corpora: convex balanced polygons from slab
//! intersections, and convex star-shaped domains with a nonzero 2-mode.

use nullkappa_core::domains::{check_convex_balanced, descriptors, DomainSpec, RadialProfile};
use rand::Rng;

const MAX_ASPECT: f64 = 50.0;

/// Random convex balanced polygon: intersect k random slabs
/// { |x . e_i| <= w_i } (the polar body of the sampled symmetric support
/// data) and keep it if the aspect ratio D / 2 r_- stays below 50.
pub fn random_convex_polygon(rng: &mut impl Rng) -> DomainSpec {
    loop {
        let k = rng.random_range(3..=6usize);
        let slabs: Vec<([f64; 2], f64)> = (0..k)
            .map(|_| {
                let t: f64 = rng.random_range(0.0..std::f64::consts::PI);
                let w: f64 = rng.random_range(0.25..2.0);
                ([t.cos(), t.sin()], w)
            })
            .collect();
        if let Some(spec) = slab_intersection(&slabs) {
            if spec.validate().is_err() {
                continue;
            }
            let desc = match descriptors(&spec) {
                Ok(d) => d,
                Err(_) => continue,
            };
            if desc.diameter / (2.0 * desc.r_minus) <= MAX_ASPECT {
                return spec;
            }
        }
    }
}

/// Vertices of the intersection of symmetric slabs, as a CCW convex
/// balanced polygon; None when degenerate.
fn slab_intersection(slabs: &[([f64; 2], f64)]) -> Option<DomainSpec> {
    // candidate vertices: intersections of pairs of boundary lines
    let mut lines: Vec<([f64; 2], f64)> = Vec::new();
    for &(e, w) in slabs {
        lines.push((e, w));
        lines.push(([-e[0], -e[1]], w));
    }
    let mut pts: Vec<[f64; 2]> = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let (a, wa) = lines[i];
            let (b, wb) = lines[j];
            let det = a[0] * b[1] - a[1] * b[0];
            if det.abs() < 1e-9 {
                continue;
            }
            let x = (wa * b[1] - wb * a[1]) / det;
            let y = (a[0] * wb - b[0] * wa) / det;
            if lines
                .iter()
                .all(|&(e, w)| e[0] * x + e[1] * y <= w + 1e-9)
            {
                pts.push([x, y]);
            }
        }
    }
    if pts.len() < 4 {
        return None;
    }
    pts.sort_by(|p, q| {
        p[1].atan2(p[0])
            .partial_cmp(&q[1].atan2(q[0]))
            .unwrap()
    });
    // drop duplicates and collinear middles
    let mut vertices: Vec<[f64; 2]> = Vec::new();
    for p in pts {
        if vertices
            .iter()
            .all(|q| (q[0] - p[0]).hypot(q[1] - p[1]) > 1e-7)
        {
            vertices.push(p);
        }
    }
    let n = vertices.len();
    if n < 4 {
        return None;
    }
    let mut keep: Vec<[f64; 2]> = Vec::new();
    for i in 0..n {
        let a = vertices[(i + n - 1) % n];
        let b = vertices[i];
        let c = vertices[(i + 1) % n];
        let cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
        if cross > 1e-9 {
            keep.push(b);
        }
    }
    if keep.len() < 4 || keep.len() % 2 != 0 {
        return None;
    }
    Some(DomainSpec::ConvexPolygon { vertices: keep })
}

/// Random convex star-shaped domain R = 1 + eps F with a nonzero cos/sin
/// 2-mode; eps shrinks until the boundary passes the convexity check.
pub fn random_convex_star(rng: &mut impl Rng) -> DomainSpec {
    loop {
        let modes = rng.random_range(1..=3usize);
        let mut cos: Vec<f64> = (0..modes).map(|_| rng.random_range(-1.0..1.0)).collect();
        let sin: Vec<f64> = (0..modes).map(|_| rng.random_range(-1.0..1.0)).collect();
        if cos[0].abs() + sin[0].abs() < 0.1 {
            cos[0] += 0.5; // keep the 2-mode away from zero
        }
        let profile = RadialProfile::new(cos, sin);
        let mut eps = rng.random_range(0.02..0.10);
        for _ in 0..12 {
            let spec = DomainSpec::StarShaped { profile: profile.clone(), epsilon: eps };
            if spec.validate().is_ok() {
                if let Ok(cb) = check_convex_balanced(&spec) {
                    if cb.convex && cb.balanced {
                        return spec;
                    }
                }
            }
            eps *= 0.6;
        }
    }
}
