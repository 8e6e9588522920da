//! Balanced domains and their geometry: construction invariants, volume,
//! diameter, inradius, support half-breadth, chord functions, and the ring
//! functions eta, alpha, zeta.
//!
//! Planar domains are the main citizens; balls, boxes, and the double cone
//! of revolution exist in higher dimension only as far as their closed-form
//! transforms need.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::counterex::ZetaProfile;
use crate::quad;
use crate::specialfun::gamma_one_plus;
use crate::{Error, Result};

/// Default angular sample count for star-shaped boundaries.
pub const ANGULAR_NODES: usize = 4096;

const PI: f64 = core::f64::consts::PI;
const TAU: f64 = 2.0 * core::f64::consts::PI;

/// Truncated even-harmonic Fourier series
/// F(theta) = sum_m p_m cos(2m theta) + q_m sin(2m theta).
///
/// Only even harmonics appear, so F(theta + pi) = F(theta) (balance) and
/// the zero mean int F = 0 holds automatically.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RadialProfile {
    pub cosine_coeffs: Vec<f64>,
    pub sine_coeffs: Vec<f64>,
}

impl RadialProfile {
    pub fn new(cosine_coeffs: Vec<f64>, sine_coeffs: Vec<f64>) -> Self {
        RadialProfile { cosine_coeffs, sine_coeffs }
    }

    /// F(theta).
    pub fn eval(&self, theta: f64) -> f64 {
        let mut s = 0.0;
        for (m, &p) in self.cosine_coeffs.iter().enumerate() {
            s += p * (2.0 * (m as f64 + 1.0) * theta).cos();
        }
        for (m, &q) in self.sine_coeffs.iter().enumerate() {
            s += q * (2.0 * (m as f64 + 1.0) * theta).sin();
        }
        s
    }

    /// F'(theta).
    pub fn deriv(&self, theta: f64) -> f64 {
        let mut s = 0.0;
        for (m, &p) in self.cosine_coeffs.iter().enumerate() {
            let k = 2.0 * (m as f64 + 1.0);
            s -= p * k * (k * theta).sin();
        }
        for (m, &q) in self.sine_coeffs.iter().enumerate() {
            let k = 2.0 * (m as f64 + 1.0);
            s += q * k * (k * theta).cos();
        }
        s
    }

    /// F''(theta).
    pub fn second_deriv(&self, theta: f64) -> f64 {
        let mut s = 0.0;
        for (m, &p) in self.cosine_coeffs.iter().enumerate() {
            let k = 2.0 * (m as f64 + 1.0);
            s -= p * k * k * (k * theta).cos();
        }
        for (m, &q) in self.sine_coeffs.iter().enumerate() {
            let k = 2.0 * (m as f64 + 1.0);
            s -= q * k * k * (k * theta).sin();
        }
        s
    }
}

/// A balanced domain, by shape family.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainSpec {
    /// Euclidean ball of the given dimension.
    Ball { dim: usize, radius: f64 },
    /// Axis-aligned box centered at the origin; `half_sides[j]` is half the
    /// side length along axis j.
    Rectangle { half_sides: Vec<f64> },
    /// Strictly convex, centrally symmetric polygon; vertices CCW.
    ConvexPolygon { vertices: Vec<[f64; 2]> },
    /// Star-shaped boundary R(theta) = 1 + epsilon F(theta).
    StarShaped { profile: RadialProfile, epsilon: f64 },
    /// Star-shaped domain with n spikes realizing the ring function
    /// zeta-tilde: a disk of radius 1 - delta, n teeth out to radius 1, and
    /// n thinner teeth out to 1 + deltaTilde.
    Spiky { n: usize, zeta_tilde: ZetaProfile },
    /// Symmetric union of unit intervals on the line, centered at
    /// +-centers[j], each of half-width 1/2.
    IntervalUnion { centers: Vec<f64> },
    /// Double cone of revolution in R^3 with apexes at (+-1, 0, 0) and
    /// equatorial radius 1/alpha.
    RevolutionBody { alpha: f64 },
}

/// Result of the convexity/balance predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvexBalanced {
    pub convex: bool,
    pub balanced: bool,
    /// Set when the numeric convexity test lands within tolerance of zero.
    pub indeterminate: bool,
}

impl DomainSpec {
    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        match self {
            DomainSpec::Ball { dim, .. } => *dim,
            DomainSpec::Rectangle { half_sides } => half_sides.len(),
            DomainSpec::IntervalUnion { .. } => 1,
            DomainSpec::RevolutionBody { .. } => 3,
            _ => 2,
        }
    }

    /// Whether the planar star-shaped machinery (radial boundary, ring
    /// functions) applies.
    pub fn is_planar_star_shaped(&self) -> bool {
        matches!(
            self,
            DomainSpec::Ball { dim: 2, .. }
                | DomainSpec::ConvexPolygon { .. }
                | DomainSpec::StarShaped { .. }
                | DomainSpec::Spiky { .. }
        )
    }

    /// Checks the construction invariants of the variant.
    pub fn validate(&self) -> Result<()> {
        match self {
            DomainSpec::Ball { dim, radius } => {
                if *dim == 0 {
                    return Err(Error::InvalidDomain("ball dimension must be >= 1".into()));
                }
                if !(*radius > 0.0) {
                    return Err(Error::InvalidDomain(format!("ball radius must be > 0, got {radius}")));
                }
            }
            DomainSpec::Rectangle { half_sides } => {
                if half_sides.is_empty() || half_sides.iter().any(|&h| !(h > 0.0)) {
                    return Err(Error::InvalidDomain("rectangle half-sides must be positive".into()));
                }
            }
            DomainSpec::ConvexPolygon { vertices } => validate_polygon(vertices)?,
            DomainSpec::StarShaped { profile, epsilon } => {
                if *epsilon < 0.0 {
                    return Err(Error::InvalidDomain("epsilon must be >= 0".into()));
                }
                let mut min_r = f64::INFINITY;
                for k in 0..ANGULAR_NODES {
                    let theta = TAU * k as f64 / ANGULAR_NODES as f64;
                    min_r = min_r.min(1.0 + epsilon * profile.eval(theta));
                }
                if min_r <= 1e-9 {
                    return Err(Error::InvalidDomain(format!(
                        "radius 1 + eps F reaches {min_r:.3e}; boundary must stay positive"
                    )));
                }
            }
            DomainSpec::Spiky { n, zeta_tilde } => {
                if *n < 3 {
                    return Err(Error::InvalidDomain("spiky domain needs n >= 3".into()));
                }
                if *n % 2 != 0 {
                    return Err(Error::InvalidDomain(
                        "spiky domain needs even n: balance requires the antipodal map in the rotation group".into(),
                    ));
                }
                let z = zeta_tilde;
                if !(0.0 < z.delta && z.delta < z.delta_tilde && z.delta_tilde < 1.0) {
                    return Err(Error::InvalidDomain("zeta profile: need 0 < delta < deltaTilde < 1".into()));
                }
                if z.a > 0.5 || z.a <= 0.0 {
                    return Err(Error::InvalidDomain(format!(
                        "zeta profile plateau a = {} outside (0, 1/2]",
                        z.a
                    )));
                }
            }
            DomainSpec::IntervalUnion { centers } => {
                if centers.is_empty() {
                    return Err(Error::InvalidDomain("interval union needs at least one center".into()));
                }
                if centers[0] < 1.0 {
                    return Err(Error::InvalidDomain(format!(
                        "first center must be >= 1, got {}",
                        centers[0]
                    )));
                }
                for pair in centers.windows(2) {
                    if pair[1] < pair[0] + 1.0 {
                        return Err(Error::InvalidDomain(format!(
                            "centers must increase by >= 1 (intervals disjoint), got {} then {}",
                            pair[0], pair[1]
                        )));
                    }
                }
            }
            DomainSpec::RevolutionBody { alpha } => {
                if !(*alpha > 0.0) {
                    return Err(Error::InvalidDomain(format!("alpha must be > 0, got {alpha}")));
                }
            }
        }
        Ok(())
    }

    /// d-dimensional volume.
    pub fn volume(&self) -> f64 {
        match self {
            DomainSpec::Ball { dim, radius } => {
                let d = *dim as f64;
                PI.powf(d / 2.0) / gamma_one_plus(d / 2.0) * radius.powi(*dim as i32)
            }
            DomainSpec::Rectangle { half_sides } => half_sides.iter().map(|h| 2.0 * h).product(),
            DomainSpec::ConvexPolygon { vertices } => polygon_area(vertices),
            DomainSpec::StarShaped { profile, epsilon } => {
                periodic_trapezoid(ANGULAR_NODES, |theta| {
                    let r = 1.0 + epsilon * profile.eval(theta);
                    0.5 * r * r
                })
            }
            DomainSpec::Spiky { zeta_tilde, .. } => TAU * zeta_tilde.radial_moment(),
            DomainSpec::IntervalUnion { centers } => 2.0 * centers.len() as f64,
            DomainSpec::RevolutionBody { alpha } => 2.0 * PI / (3.0 * alpha * alpha),
        }
    }

    /// R(theta), for planar star-shaped variants.
    pub fn radial_boundary(&self, theta: f64) -> Result<f64> {
        match self {
            DomainSpec::Ball { dim: 2, radius } => Ok(*radius),
            DomainSpec::StarShaped { profile, epsilon } => Ok(1.0 + epsilon * profile.eval(theta)),
            DomainSpec::ConvexPolygon { vertices } => polygon_radial(vertices, theta),
            DomainSpec::Spiky { n, zeta_tilde } => Ok(spiky_radial(*n, zeta_tilde, theta)),
            _ => Err(Error::Unsupported(
                "radial boundary defined only for planar star-shaped domains".into(),
            )),
        }
    }

    /// Support half-breadth w(e) = sup_{x in Omega} x . e, planar variants.
    pub fn support_half_breadth(&self, e: [f64; 2]) -> Result<f64> {
        check_unit(e)?;
        match self {
            DomainSpec::Ball { dim: 2, radius } => Ok(*radius),
            DomainSpec::Rectangle { half_sides } if half_sides.len() == 2 => {
                Ok(half_sides[0] * e[0].abs() + half_sides[1] * e[1].abs())
            }
            DomainSpec::ConvexPolygon { vertices } => Ok(vertices
                .iter()
                .map(|v| v[0] * e[0] + v[1] * e[1])
                .fold(f64::NEG_INFINITY, f64::max)),
            DomainSpec::StarShaped { .. } => {
                let te = e[1].atan2(e[0]);
                let g = |theta: f64| {
                    self.radial_boundary(theta).unwrap() * (theta - te).cos()
                };
                Ok(refine_periodic_max(&g, ANGULAR_NODES))
            }
            DomainSpec::Spiky { n, zeta_tilde } => Ok(spiky_support(*n, zeta_tilde, e)),
            _ => Err(Error::Unsupported("support half-breadth is planar-only".into())),
        }
    }
}

/// Regular 2k-gon with the given circumradius, vertices CCW starting on
/// the x-axis. Handy as a convex balanced test domain.
pub fn regular_polygon(sides: usize, circumradius: f64) -> DomainSpec {
    let verts = (0..sides)
        .map(|k| {
            let t = TAU * k as f64 / sides as f64;
            [circumradius * t.cos(), circumradius * t.sin()]
        })
        .collect();
    DomainSpec::ConvexPolygon { vertices: verts }
}

/// Scalar geometric summary plus access to direction-dependent quantities.
#[derive(Debug, Clone)]
pub struct GeometricDescriptors {
    pub volume: f64,
    pub diameter: f64,
    pub r_minus: f64,
    spec: DomainSpec,
}

impl GeometricDescriptors {
    pub fn spec(&self) -> &DomainSpec {
        &self.spec
    }

    /// w(e).
    pub fn support_half_breadth(&self, e: [f64; 2]) -> Result<f64> {
        self.spec.support_half_breadth(e)
    }

    /// R(theta) for star-shaped variants.
    pub fn radial_boundary(&self, theta: f64) -> Result<f64> {
        self.spec.radial_boundary(theta)
    }

    /// r_+ = D/2.
    pub fn r_plus(&self) -> f64 {
        0.5 * self.diameter
    }
}

/// Computes volume, diameter, and inradius.
pub fn descriptors(spec: &DomainSpec) -> Result<GeometricDescriptors> {
    spec.validate()?;
    let volume = spec.volume();
    let (diameter, r_minus) = match spec {
        DomainSpec::Ball { radius, .. } => (2.0 * radius, *radius),
        DomainSpec::Rectangle { half_sides } => {
            let norm = half_sides.iter().map(|h| h * h).sum::<f64>().sqrt();
            let min_h = half_sides.iter().cloned().fold(f64::INFINITY, f64::min);
            (2.0 * norm, min_h)
        }
        DomainSpec::ConvexPolygon { vertices } => {
            let r_plus = vertices
                .iter()
                .map(|v| (v[0] * v[0] + v[1] * v[1]).sqrt())
                .fold(0.0_f64, f64::max);
            let mut r_minus = f64::INFINITY;
            let n = vertices.len();
            for i in 0..n {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
                let dist = (a[0] * b[1] - a[1] * b[0]).abs() / len;
                r_minus = r_minus.min(dist);
            }
            (2.0 * r_plus, r_minus)
        }
        DomainSpec::StarShaped { .. } => {
            let r = |theta: f64| spec.radial_boundary(theta).unwrap();
            let r_max = refine_periodic_max(&r, ANGULAR_NODES);
            let neg = |theta: f64| -r(theta);
            let r_min = -refine_periodic_max(&neg, ANGULAR_NODES);
            (2.0 * r_max, r_min)
        }
        DomainSpec::Spiky { zeta_tilde, .. } => {
            (2.0 * (1.0 + zeta_tilde.delta_tilde), 1.0 - zeta_tilde.delta)
        }
        DomainSpec::IntervalUnion { centers } => {
            (2.0 * (centers[centers.len() - 1] + 0.5), 0.5)
        }
        DomainSpec::RevolutionBody { alpha } => {
            let d = 2.0_f64.max(2.0 / alpha);
            (d, 1.0 / (1.0 + alpha * alpha).sqrt())
        }
    };
    Ok(GeometricDescriptors { volume, diameter, r_minus, spec: spec.clone() })
}

/// Values of the ring functions at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingValues {
    /// eta(r): arc length of Omega intersected with the circle |x| = r.
    pub eta: f64,
    /// alpha(r): area fraction of Omega inside the disk of radius r.
    pub alpha: f64,
    /// zeta(r) = eta(r) / (2 pi r); set to 1 at r = 0.
    pub zeta: f64,
}

/// Ring-function evaluator for a planar star-shaped domain.
#[derive(Debug, Clone)]
pub struct RingFunctions {
    spec: DomainSpec,
    volume: f64,
}

/// Builds the evaluator; errors for non-star-shaped or non-planar domains.
pub fn ring_functions(spec: &DomainSpec) -> Result<RingFunctions> {
    spec.validate()?;
    if !spec.is_planar_star_shaped() {
        return Err(Error::Unsupported(
            "ring functions are defined here for planar star-shaped domains".into(),
        ));
    }
    Ok(RingFunctions { spec: spec.clone(), volume: spec.volume() })
}

/// One-shot evaluation of eta, alpha, zeta at radius r.
pub fn ring_values(spec: &DomainSpec, r: f64) -> Result<RingValues> {
    ring_functions(spec)?.values(r)
}

impl RingFunctions {
    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn eta(&self, r: f64) -> Result<f64> {
        Ok(self.values(r)?.eta)
    }

    pub fn alpha(&self, r: f64) -> Result<f64> {
        Ok(self.values(r)?.alpha)
    }

    pub fn zeta(&self, r: f64) -> Result<f64> {
        Ok(self.values(r)?.zeta)
    }

    pub fn values(&self, r: f64) -> Result<RingValues> {
        if !(r >= 0.0) {
            return Err(Error::Domain(format!("radius must be >= 0, got {r}")));
        }
        if r == 0.0 {
            return Ok(RingValues { eta: 0.0, alpha: 0.0, zeta: 1.0 });
        }
        let (measure_above, area_inside) = match &self.spec {
            DomainSpec::Ball { radius, .. } => {
                if r < *radius {
                    (TAU, PI * r * r)
                } else {
                    (0.0, PI * radius * radius)
                }
            }
            DomainSpec::Spiky { zeta_tilde, .. } => {
                let zeta = zeta_tilde.value(r);
                (TAU * zeta, TAU * spiky_cumulative_moment(zeta_tilde, r))
            }
            DomainSpec::ConvexPolygon { vertices } => polygon_ring(vertices, r),
            DomainSpec::StarShaped { .. } => {
                star_ring(|theta| self.spec.radial_boundary(theta).unwrap(), r)
            }
            _ => unreachable!("constructor restricts to star-shaped"),
        };
        Ok(RingValues {
            eta: r * measure_above,
            alpha: (area_inside / self.volume).min(1.0),
            zeta: measure_above / TAU,
        })
    }
}

/// Chord length of Omega with the line {x . e = t}; even in t, supported
/// on [-w(e), w(e)]. Convex balanced planar domains only.
pub fn chord_width(spec: &DomainSpec, e: [f64; 2], t: f64) -> Result<f64> {
    check_unit(e)?;
    spec.validate()?;
    match spec {
        DomainSpec::Ball { dim: 2, radius } => {
            Ok(if t.abs() >= *radius { 0.0 } else { 2.0 * (radius * radius - t * t).sqrt() })
        }
        DomainSpec::Rectangle { half_sides } if half_sides.len() == 2 => {
            let (hx, hy) = (half_sides[0], half_sides[1]);
            let verts = alloc::vec![[hx, hy], [-hx, hy], [-hx, -hy], [hx, -hy]];
            polygon_chord(&verts, e, t)
        }
        DomainSpec::ConvexPolygon { vertices } => polygon_chord(vertices, e, t),
        DomainSpec::StarShaped { .. } => {
            let cb = check_convex_balanced(spec)?;
            if !cb.convex {
                return Err(Error::Unsupported("chord width needs a convex domain".into()));
            }
            star_chord(spec, e, t)
        }
        _ => Err(Error::Unsupported(
            "chord width is defined for planar convex balanced domains".into(),
        )),
    }
}

/// Convexity and balance predicates.
pub fn check_convex_balanced(spec: &DomainSpec) -> Result<ConvexBalanced> {
    let ok = |convex: bool, balanced: bool| {
        Ok(ConvexBalanced { convex, balanced, indeterminate: false })
    };
    match spec {
        DomainSpec::Ball { .. } | DomainSpec::Rectangle { .. } | DomainSpec::RevolutionBody { .. } => {
            ok(true, true)
        }
        DomainSpec::ConvexPolygon { vertices } => {
            let n = vertices.len();
            let mut convex = n >= 3;
            for i in 0..n {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                let c = vertices[(i + 2) % n];
                let cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
                if cross <= 0.0 {
                    convex = false;
                }
            }
            let scale = vertices
                .iter()
                .map(|v| v[0].abs().max(v[1].abs()))
                .fold(0.0_f64, f64::max);
            let mut balanced = n % 2 == 0;
            if balanced {
                for i in 0..n / 2 {
                    let v = vertices[i];
                    let w = vertices[i + n / 2];
                    if (v[0] + w[0]).abs() > 1e-12 * scale.max(1.0)
                        || (v[1] + w[1]).abs() > 1e-12 * scale.max(1.0)
                    {
                        balanced = false;
                    }
                }
            }
            ok(convex, balanced)
        }
        DomainSpec::StarShaped { profile, epsilon } => {
            // Curvature sign: R^2 + 2 R'^2 - R R'' >= 0 iff convex.
            let mut min_g = f64::INFINITY;
            for k in 0..ANGULAR_NODES {
                let theta = TAU * k as f64 / ANGULAR_NODES as f64;
                let r = 1.0 + epsilon * profile.eval(theta);
                let rp = epsilon * profile.deriv(theta);
                let rpp = epsilon * profile.second_deriv(theta);
                min_g = min_g.min(r * r + 2.0 * rp * rp - r * rpp);
            }
            Ok(ConvexBalanced {
                convex: min_g > 1e-10,
                balanced: true,
                indeterminate: min_g.abs() <= 1e-10,
            })
        }
        DomainSpec::Spiky { n, zeta_tilde } => {
            // Convex only in the degenerate no-spike case, which the profile
            // invariants exclude.
            let _ = (n, zeta_tilde);
            ok(false, true)
        }
        DomainSpec::IntervalUnion { centers } => {
            // Always at least two components (the set is symmetric and
            // bounded away from zero), hence never convex.
            let _ = centers;
            ok(false, true)
        }
    }
}

// ---------------------------------------------------------------------------
// polygon internals

fn validate_polygon(vertices: &[[f64; 2]]) -> Result<()> {
    let n = vertices.len();
    if n < 4 || n % 2 != 0 {
        return Err(Error::InvalidDomain(format!(
            "balanced polygon needs an even vertex count >= 4, got {n}"
        )));
    }
    if polygon_area(vertices) <= 1e-14 {
        return Err(Error::InvalidDomain("polygon area must be positive".into()));
    }
    let cb = check_convex_balanced(&DomainSpec::ConvexPolygon { vertices: vertices.to_vec() })?;
    if !cb.convex {
        return Err(Error::InvalidDomain(
            "polygon must be strictly convex with CCW orientation".into(),
        ));
    }
    if !cb.balanced {
        return Err(Error::InvalidDomain(
            "polygon must be centrally symmetric (vertex i + n/2 = -vertex i)".into(),
        ));
    }
    Ok(())
}

fn polygon_area(vertices: &[[f64; 2]]) -> f64 {
    let n = vertices.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        s += a[0] * b[1] - a[1] * b[0];
    }
    0.5 * s
}

fn polygon_radial(vertices: &[[f64; 2]], theta: f64) -> Result<f64> {
    let u = [theta.cos(), theta.sin()];
    let n = vertices.len();
    let mut best = 0.0_f64;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let d = [b[0] - a[0], b[1] - a[1]];
        let denom = u[0] * d[1] - u[1] * d[0];
        if denom.abs() < 1e-300 {
            continue;
        }
        let t = -(u[0] * a[1] - u[1] * a[0]) / denom;
        if (-1e-12..=1.0 + 1e-12).contains(&t) {
            let p = [a[0] + t * d[0], a[1] + t * d[1]];
            let s = p[0] * u[0] + p[1] * u[1];
            if s > best {
                best = s;
            }
        }
    }
    if best == 0.0 {
        return Err(Error::InvalidDomain(
            "polygon does not surround the origin; radial boundary undefined".into(),
        ));
    }
    Ok(best)
}

/// Angular measure of {theta : R(theta) > r} and area of Omega inside the
/// disk of radius r, both exact (edge-circle intersections in closed form).
fn polygon_ring(vertices: &[[f64; 2]], r: f64) -> (f64, f64) {
    let n = vertices.len();
    let mut measure_above = 0.0;
    let mut area = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let d = [b[0] - a[0], b[1] - a[1]];
        // |a + t d|^2 = r^2
        let qa = d[0] * d[0] + d[1] * d[1];
        let qb = 2.0 * (a[0] * d[0] + a[1] * d[1]);
        let qc = a[0] * a[0] + a[1] * a[1] - r * r;
        let mut ts = [0.0_f64, 1.0, f64::NAN, f64::NAN];
        let mut count = 2;
        let disc = qb * qb - 4.0 * qa * qc;
        if disc > 0.0 {
            let sq = disc.sqrt();
            for t in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
                if t > 1e-14 && t < 1.0 - 1e-14 {
                    ts[count] = t;
                    count += 1;
                }
            }
        }
        let ts = &mut ts[..count];
        ts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for w in ts.windows(2) {
            let (t0, t1) = (w[0], w[1]);
            if t1 - t0 <= 1e-15 {
                continue;
            }
            let p0 = [a[0] + t0 * d[0], a[1] + t0 * d[1]];
            let p1 = [a[0] + t1 * d[0], a[1] + t1 * d[1]];
            let cross = p0[0] * p1[1] - p0[1] * p1[0];
            let dot = p0[0] * p1[0] + p0[1] * p1[1];
            let dtheta = cross.atan2(dot); // in (0, pi) for CCW convex edges
            let tm = 0.5 * (t0 + t1);
            let pm = [a[0] + tm * d[0], a[1] + tm * d[1]];
            let inside = pm[0] * pm[0] + pm[1] * pm[1] <= r * r;
            if inside {
                area += 0.5 * cross;
            } else {
                area += 0.5 * r * r * dtheta;
                measure_above += dtheta;
            }
        }
    }
    (measure_above, area)
}

fn polygon_chord(vertices: &[[f64; 2]], e: [f64; 2], t: f64) -> Result<f64> {
    let perp = [-e[1], e[0]];
    let n = vertices.len();
    let mut s_min = f64::INFINITY;
    let mut s_max = f64::NEG_INFINITY;
    let mut hits = 0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let pa = a[0] * e[0] + a[1] * e[1];
        let pb = b[0] * e[0] + b[1] * e[1];
        let denom = pb - pa;
        if denom.abs() < 1e-14 {
            // Edge parallel to the cutting line; include endpoints if on it.
            if (pa - t).abs() < 1e-12 {
                for p in [a, b] {
                    let s = p[0] * perp[0] + p[1] * perp[1];
                    s_min = s_min.min(s);
                    s_max = s_max.max(s);
                    hits += 1;
                }
            }
            continue;
        }
        let u = (t - pa) / denom;
        if (-1e-12..=1.0 + 1e-12).contains(&u) {
            let p = [a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1])];
            let s = p[0] * perp[0] + p[1] * perp[1];
            s_min = s_min.min(s);
            s_max = s_max.max(s);
            hits += 1;
        }
    }
    Ok(if hits >= 2 { (s_max - s_min).max(0.0) } else { 0.0 })
}

// ---------------------------------------------------------------------------
// star-shaped internals

/// Measure of {R > r} and area of the domain inside the disk of radius r,
/// for a smooth star boundary: boundary crossings located by bisection, the
/// below-level part of int min(R, r)^2 / 2 by panel quadrature.
fn star_ring<R: Fn(f64) -> f64>(radial: R, r: f64) -> (f64, f64) {
    let n = ANGULAR_NODES;
    let h = TAU / n as f64;
    let g = |theta: f64| radial(theta) - r;
    let mut crossings: Vec<f64> = Vec::new();
    let mut g_prev = g(0.0);
    for k in 1..=n {
        let theta = h * k as f64;
        let g_cur = g(theta);
        if g_prev == 0.0 {
            crossings.push(h * (k as f64 - 1.0));
        } else if g_prev * g_cur < 0.0 {
            // bisect
            let (mut lo, mut hi) = (theta - h, theta);
            let mut g_lo = g_prev;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let gm = g(mid);
                if g_lo * gm <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    g_lo = gm;
                }
            }
            crossings.push(0.5 * (lo + hi));
        }
        g_prev = g_cur;
    }
    if crossings.is_empty() {
        return if g(0.0) > 0.0 {
            (TAU, PI * r * r)
        } else {
            let vol = periodic_trapezoid(n, |theta| {
                let rr = radial(theta);
                0.5 * rr * rr
            });
            (0.0, vol)
        };
    }
    crossings.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut measure_above = 0.0;
    let mut area = 0.0;
    let m = crossings.len();
    for i in 0..m {
        let t0 = crossings[i];
        let t1 = if i + 1 < m { crossings[i + 1] } else { crossings[0] + TAU };
        let mid = 0.5 * (t0 + t1);
        if g(mid) > 0.0 {
            measure_above += t1 - t0;
            area += 0.5 * r * r * (t1 - t0);
        } else {
            area += quad::integrate_panels(
                &|theta| {
                    let rr = radial(theta);
                    0.5 * rr * rr
                },
                t0,
                t1,
                &[],
                0.05,
                16,
            );
        }
    }
    (measure_above, area)
}

fn star_chord(spec: &DomainSpec, e: [f64; 2], t: f64) -> Result<f64> {
    let desc_d = {
        // crude bound on |x| along the chord
        let r_max = refine_periodic_max(&|th| spec.radial_boundary(th).unwrap(), ANGULAR_NODES);
        r_max
    };
    let perp = [-e[1], e[0]];
    let inside = |s: f64| -> bool {
        let x = [t * e[0] + s * perp[0], t * e[1] + s * perp[1]];
        let rho = (x[0] * x[0] + x[1] * x[1]).sqrt();
        if rho == 0.0 {
            return true;
        }
        rho <= spec.radial_boundary(x[1].atan2(x[0])).unwrap()
    };
    let n = 1024;
    let mut first_in = f64::NAN;
    let mut last_in = f64::NAN;
    for k in 0..=n {
        let s = -desc_d + 2.0 * desc_d * k as f64 / n as f64;
        if inside(s) {
            if first_in.is_nan() {
                first_in = s;
            }
            last_in = s;
        }
    }
    if first_in.is_nan() {
        return Ok(0.0);
    }
    let (fi, li) = (first_in, last_in);
    let refine = |mut ins: f64, mut out: f64| -> f64 {
        for _ in 0..60 {
            let mid = 0.5 * (ins + out);
            if inside(mid) {
                ins = mid;
            } else {
                out = mid;
            }
        }
        0.5 * (ins + out)
    };
    let step = 2.0 * desc_d / n as f64;
    let lo = refine(fi, fi - step);
    let hi = refine(li, li + step);
    Ok((hi - lo).max(0.0))
}

// ---------------------------------------------------------------------------
// spiky internals

/// Folded angular distance from theta to the nearest spike center 2 pi j/n.
fn spike_phase(n: usize, theta: f64) -> f64 {
    let period = TAU / n as f64;
    let mut phi = theta % period;
    if phi < 0.0 {
        phi += period;
    }
    phi.min(period - phi)
}

fn spiky_radial(n: usize, z: &ZetaProfile, theta: f64) -> f64 {
    let phi = spike_phase(n, theta);
    let w_outer = PI * z.a / n as f64; // half-width of the tall teeth
    let w_mid = PI / (2.0 * n as f64); // half-width of the zeta = 1/2 teeth
    if phi <= w_outer {
        1.0 + z.delta_tilde
    } else if phi <= w_mid {
        1.0
    } else {
        1.0 - z.delta
    }
}

/// Exact support half-breadth: the maximum of R(theta) cos(theta - theta_e)
/// over each constant-R angular band, via the distance to the band.
fn spiky_support(n: usize, z: &ZetaProfile, e: [f64; 2]) -> f64 {
    let te = e[1].atan2(e[0]);
    let phi = spike_phase(n, te);
    let w_outer = PI * z.a / n as f64;
    let w_mid = PI / (2.0 * n as f64);
    let half_period = PI / n as f64;
    let d_outer = (phi - w_outer).max(0.0);
    let d_mid = (phi - w_mid).max(0.0).max(w_outer - phi);
    let d_inner = (w_mid - phi).max(0.0);
    let mut best = (1.0 + z.delta_tilde) * d_outer.cos();
    if d_mid < half_period {
        best = best.max(d_mid.cos());
    }
    best.max((1.0 - z.delta) * d_inner.cos())
}

/// int_0^r rho zeta(rho) d rho, exact for the piecewise-constant profile.
fn spiky_cumulative_moment(z: &ZetaProfile, r: f64) -> f64 {
    let seg = |lo: f64, hi: f64, level: f64, r: f64| -> f64 {
        let hi = hi.min(r);
        if hi <= lo {
            0.0
        } else {
            0.5 * level * (hi * hi - lo * lo)
        }
    };
    seg(0.0, 1.0 - z.delta, 1.0, r)
        + seg(1.0 - z.delta, 1.0, 0.5, r)
        + seg(1.0, 1.0 + z.delta_tilde, z.a, r)
}

// ---------------------------------------------------------------------------
// shared helpers

/// Radii where the ring functions lose smoothness: stationary values of the
/// radial boundary. eta typically has square-root kinks there, so radial
/// quadratures should break panels at these points.
pub fn radial_critical_values(spec: &DomainSpec) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    match spec {
        DomainSpec::Ball { dim: 2, radius } => out.push(*radius),
        DomainSpec::ConvexPolygon { vertices } => {
            let n = vertices.len();
            for i in 0..n {
                let v = vertices[i];
                out.push((v[0] * v[0] + v[1] * v[1]).sqrt());
                let b = vertices[(i + 1) % n];
                // foot of the perpendicular from the origin, if interior
                let d = [b[0] - v[0], b[1] - v[1]];
                let len2 = d[0] * d[0] + d[1] * d[1];
                let t = -(v[0] * d[0] + v[1] * d[1]) / len2;
                if (0.0..=1.0).contains(&t) {
                    let p = [v[0] + t * d[0], v[1] + t * d[1]];
                    out.push((p[0] * p[0] + p[1] * p[1]).sqrt());
                }
            }
        }
        DomainSpec::StarShaped { .. } => {
            // stationary values of the smooth boundary: scan for local
            // extrema and polish each with golden-section refinement
            let f = |theta: f64| spec.radial_boundary(theta).unwrap();
            let n = ANGULAR_NODES;
            let h = TAU / n as f64;
            for k in 0..n {
                let a = f(h * (k as f64 - 1.0));
                let b = f(h * k as f64);
                let c = f(h * (k as f64 + 1.0));
                if (b >= a && b >= c) || (b <= a && b <= c) {
                    let lo = h * (k as f64 - 1.0);
                    let hi = h * (k as f64 + 1.0);
                    let sign = if b >= a { 1.0 } else { -1.0 };
                    let g = |theta: f64| sign * f(theta);
                    out.push(sign * golden_max(&g, lo, hi));
                }
            }
        }
        DomainSpec::Spiky { zeta_tilde, .. } => {
            out.extend_from_slice(&zeta_tilde.breakpoints());
        }
        _ => {}
    }
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out.dedup_by(|x, y| (*x - *y).abs() < 1e-10);
    out
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    f1.max(f2)
}

fn check_unit(e: [f64; 2]) -> Result<()> {
    let norm = (e[0] * e[0] + e[1] * e[1]).sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("direction must be unit length, |e| = {norm}")));
    }
    Ok(())
}

/// Trapezoid rule for a 2 pi-periodic integrand (spectrally accurate for
/// smooth f).
pub(crate) fn periodic_trapezoid<F: Fn(f64) -> f64>(n: usize, f: F) -> f64 {
    let h = TAU / n as f64;
    let mut s = 0.0;
    for k in 0..n {
        s += f(h * k as f64);
    }
    s * h
}

/// Maximum of a periodic function: coarse grid, then golden-section
/// refinement around the best sample.
pub(crate) fn refine_periodic_max<F: Fn(f64) -> f64>(f: &F, n: usize) -> f64 {
    let h = TAU / n as f64;
    let mut best_k = 0;
    let mut best = f64::NEG_INFINITY;
    for k in 0..n {
        let v = f(h * k as f64);
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let (mut a, mut b) = (h * best_k as f64 - h, h * best_k as f64 + h);
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    best.max(f1).max(f2)
}
