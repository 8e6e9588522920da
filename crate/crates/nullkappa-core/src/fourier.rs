//! Fourier transforms of indicator functions.
//!
//! For a balanced domain the transform is real:
//! chi-hat(xi) = int_Omega cos(xi . x) dx, and the directional slice
//! chi-hat_e(rho) = chi-hat(rho e) is what the null-variety search scans.
//! Closed forms cover balls, boxes, interval unions, and the double cone;
//! polygons get an exact chord-function integration; smooth star-shaped
//! boundaries use polar quadrature with an analytic radial inner integral;
//! spiky domains collapse to a Bessel-harmonic series in which only
//! harmonics divisible by the spike count survive.

use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::counterex::ZetaProfile;
use crate::domains::{chord_width, DomainSpec, ANGULAR_NODES};
use crate::quad;
use crate::specialfun::{bessel_j, gamma_one_plus, MAX_ORDER};
use crate::{Error, Result};

const PI: f64 = core::f64::consts::PI;
const TAU: f64 = 2.0 * core::f64::consts::PI;

/// One evaluation of the transform.
#[derive(Debug, Clone, PartialEq)]
pub struct FtSample {
    pub xi: Vec<f64>,
    /// Real value; balanced domains have identically real transforms.
    pub value: f64,
}

/// chi-hat of the d-ball of the given radius at |xi| = rho.
///
/// Unit ball: (2 pi)^{d/2} J_{d/2}(rho) / rho^{d/2}; radius r rescales as
/// r^d * (unit value at r rho).
pub fn ft_ball(dim: usize, radius: f64, rho: f64) -> f64 {
    let nu = dim as f64 / 2.0;
    let x = rho.abs() * radius;
    radius.powi(dim as i32) * TAU.powf(nu) * j_ratio(nu, x)
}

/// J_nu(x) / x^nu, stable through x = 0.
fn j_ratio(nu: f64, x: f64) -> f64 {
    if x < 1e-3 {
        let lead = 1.0 / (2.0_f64.powf(nu) * gamma_one_plus(nu));
        let x2 = x * x;
        lead
            * (1.0 - x2 / (4.0 * (nu + 1.0))
                + x2 * x2 / (32.0 * (nu + 1.0) * (nu + 2.0))
                - x2 * x2 * x2 / (384.0 * (nu + 1.0) * (nu + 2.0) * (nu + 3.0)))
    } else {
        bessel_j(nu, x).unwrap() / x.powf(nu)
    }
}

/// chi-hat of the box with the given half-sides: prod_j 2 sin(h_j xi_j)/xi_j.
pub fn ft_rectangle(half_sides: &[f64], xi: &[f64]) -> f64 {
    assert_eq!(half_sides.len(), xi.len(), "dimension mismatch");
    let mut p = 1.0;
    for (&h, &x) in half_sides.iter().zip(xi) {
        p *= 2.0 * h * sinc(h * x);
    }
    p
}

/// sin(x)/x with the removable singularity filled in.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// chi-hat of the double cone T_alpha along its axis.
///
/// The cross-section at height x1 is a disk of radius (1 - |x1|)/alpha, so
/// chi-hat(xi e1) = (4 pi / (alpha^2 xi^3)) (xi - sin xi); the xi -> 0 limit
/// is the volume 2 pi / (3 alpha^2).
pub fn ft_revolution_axis(alpha: f64, xi1: f64) -> f64 {
    let xi = xi1.abs();
    let pref = 4.0 * PI / (alpha * alpha);
    if xi < 0.1 {
        // (xi - sin xi)/xi^3 = 1/6 - xi^2/120 + xi^4/5040 - xi^6/362880;
        // the closed form cancels catastrophically this close to zero
        let x2 = xi * xi;
        pref * (1.0 / 6.0 - x2 / 120.0 + x2 * x2 / 5040.0 - x2 * x2 * x2 / 362880.0)
    } else {
        pref * (xi - xi.sin()) / (xi * xi * xi)
    }
}

/// Directional slice chi-hat_e(rho) for a balanced domain.
pub fn ft_directional(spec: &DomainSpec, e: [f64; 2], rho: f64) -> Result<f64> {
    ft_directional_with_nodes(spec, e, rho, default_nodes(spec))
}

/// Default angular resolution of the star-shaped quadrature path.
pub fn default_nodes(spec: &DomainSpec) -> usize {
    match spec {
        DomainSpec::Spiky { n, .. } => ANGULAR_NODES.max(64 * n),
        _ => ANGULAR_NODES,
    }
}

/// [`ft_directional`] with explicit angular node count (star-shaped path
/// only; closed-form variants ignore it).
pub fn ft_directional_with_nodes(
    spec: &DomainSpec,
    e: [f64; 2],
    rho: f64,
    nodes: usize,
) -> Result<f64> {
    let norm = (e[0] * e[0] + e[1] * e[1]).sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("direction must be unit length, |e| = {norm}")));
    }
    if !(rho >= 0.0) {
        return Err(Error::Domain(format!("rho must be >= 0, got {rho}")));
    }
    match spec {
        DomainSpec::Ball { dim, radius } => Ok(ft_ball(*dim, *radius, rho)),
        DomainSpec::Rectangle { half_sides } if half_sides.len() == 2 => {
            Ok(ft_rectangle(half_sides, &[rho * e[0], rho * e[1]]))
        }
        DomainSpec::Rectangle { .. } => Err(Error::Unsupported(
            "directional slices of boxes are implemented in the plane; use ft_rectangle directly".into(),
        )),
        DomainSpec::ConvexPolygon { vertices } => polygon_chord_ft(spec, vertices, e, rho),
        DomainSpec::StarShaped { .. } => {
            Ok(star_ft(|theta| spec.radial_boundary(theta).unwrap(), e, rho, nodes))
        }
        DomainSpec::Spiky { n, zeta_tilde } => spiky_ft(*n, zeta_tilde, e, rho),
        DomainSpec::IntervalUnion { centers } => {
            if e[1].abs() > 1e-12 {
                return Err(Error::Domain(
                    "interval unions live on the line; use e = (1, 0)".into(),
                ));
            }
            Ok(ft_interval_union(centers, rho))
        }
        DomainSpec::RevolutionBody { alpha } => {
            if e[1].abs() > 1e-12 {
                return Err(Error::Unsupported(
                    "the double cone has a closed form only along its axis".into(),
                ));
            }
            Ok(ft_revolution_axis(*alpha, rho))
        }
    }
}

/// Full-wavevector sample for planar (and 1D) domains.
pub fn ft(spec: &DomainSpec, xi: [f64; 2]) -> Result<FtSample> {
    let rho = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
    let value = if rho == 0.0 {
        spec.volume()
    } else {
        ft_directional(spec, [xi[0] / rho, xi[1] / rho], rho)?
    };
    Ok(FtSample { xi: alloc::vec![xi[0], xi[1]], value })
}

/// chi-hat of the symmetric union of unit intervals:
/// (4 sin(xi/2)/xi) sum_j cos(w_j xi).
pub fn ft_interval_union(centers: &[f64], xi: f64) -> f64 {
    let mut s = 0.0;
    for &w in centers {
        s += (w * xi).cos();
    }
    2.0 * sinc(0.5 * xi) * s
}

// ---------------------------------------------------------------------------
// polygon: exact chord-route integration

/// 2 int_0^{w} cos(t rho) nu_e(t) dt with the piecewise-linear chord
/// function integrated in closed form between its kinks.
fn polygon_chord_ft(
    spec: &DomainSpec,
    vertices: &[[f64; 2]],
    e: [f64; 2],
    rho: f64,
) -> Result<f64> {
    let mut knots: Vec<f64> = vertices
        .iter()
        .map(|v| (v[0] * e[0] + v[1] * e[1]).abs())
        .collect();
    knots.push(0.0);
    knots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    knots.dedup_by(|x, y| (*x - *y).abs() < 1e-13);
    let mut total = 0.0;
    for pair in knots.windows(2) {
        let (t0, t1) = (pair[0], pair[1]);
        if t1 - t0 < 1e-14 {
            continue;
        }
        let v0 = chord_width(spec, e, t0)?;
        let v1 = chord_width(spec, e, t1)?;
        // nu(t) = A + B t on [t0, t1]
        let b = (v1 - v0) / (t1 - t0);
        let a = v0 - b * t0;
        total += cos_linear_integral(a, b, t0, t1, rho);
    }
    Ok(2.0 * total)
}

/// int_{t0}^{t1} (a + b t) cos(rho t) dt, switching to a Taylor expansion
/// when rho t1 is small enough for the closed form to cancel badly.
fn cos_linear_integral(a: f64, b: f64, t0: f64, t1: f64, rho: f64) -> f64 {
    if rho * t1.abs() <= 0.5 {
        // integrate (a + bt) sum_k (-1)^k (rho t)^{2k}/(2k)! termwise
        let mut acc = 0.0;
        let mut sign = 1.0;
        let mut fact = 1.0;
        let mut rp = 1.0; // rho^{2k}
        for k in 0..9 {
            let p = 2 * k + 1;
            let term_a = a * (pow_i(t1, p) - pow_i(t0, p)) / p as f64;
            let term_b = b * (pow_i(t1, p + 1) - pow_i(t0, p + 1)) / (p + 1) as f64;
            acc += sign * rp / fact * (term_a + term_b);
            sign = -sign;
            rp *= rho * rho;
            // (2k)! -> (2k+2)!
            fact *= p as f64 * (p + 1) as f64;
        }
        acc
    } else {
        let (s0, s1) = ((rho * t0).sin(), (rho * t1).sin());
        let (c0, c1) = ((rho * t0).cos(), (rho * t1).cos());
        a * (s1 - s0) / rho + b * ((c1 - c0) / (rho * rho) + (t1 * s1 - t0 * s0) / rho)
    }
}

fn pow_i(x: f64, p: usize) -> f64 {
    let mut r = 1.0;
    for _ in 0..p {
        r *= x;
    }
    r
}

// ---------------------------------------------------------------------------
// star-shaped: polar quadrature with analytic radial inner integral

/// int_0^R r cos(c r) dr = R sin(cR)/c + (cos(cR) - 1)/c^2, with a series
/// branch controlling the cancellation at small |cR|.
fn radial_cos_integral(c: f64, r: f64) -> f64 {
    let u = c * r;
    if u.abs() < 0.05 {
        let u2 = u * u;
        r * r * (0.5 - u2 / 8.0 + u2 * u2 / 144.0 - u2 * u2 * u2 / 5760.0)
    } else {
        r * u.sin() / c + (u.cos() - 1.0) / (c * c)
    }
}

/// Polar-coordinates transform of a star-shaped domain: trapezoid in angle
/// (spectrally accurate for smooth boundaries).
fn star_ft<R: Fn(f64) -> f64>(radial: R, e: [f64; 2], rho: f64, nodes: usize) -> f64 {
    let omega = e[1].atan2(e[0]);
    let h = TAU / nodes as f64;
    let mut acc = 0.0;
    for k in 0..nodes {
        let theta = h * k as f64;
        let c = rho * (theta - omega).cos();
        acc += radial_cos_integral(c, radial(theta));
    }
    acc * h
}

/// Brute-force route for the spiky transform, exposed for cross-checking
/// the harmonic series path: sums the polar integral arc by arc, so each
/// panel has a constant radius and the quadrature sees a smooth integrand.
pub fn spiky_ft_arcs(n: usize, z: &ZetaProfile, e: [f64; 2], rho: f64) -> f64 {
    let omega = e[1].atan2(e[0]);
    let w_outer = PI * z.a / n as f64;
    let w_mid = PI / (2.0 * n as f64);
    let half_period = PI / n as f64;
    let mut total = 0.0;
    for j in 0..n {
        let c = TAU * j as f64 / n as f64;
        let arcs = [
            (c - half_period, c - w_mid, 1.0 - z.delta),
            (c - w_mid, c - w_outer, 1.0),
            (c - w_outer, c + w_outer, 1.0 + z.delta_tilde),
            (c + w_outer, c + w_mid, 1.0),
            (c + w_mid, c + half_period, 1.0 - z.delta),
        ];
        for &(lo, hi, r) in &arcs {
            if hi - lo < 1e-15 {
                continue;
            }
            total += quad::integrate_panels(
                &|theta| radial_cos_integral(rho * (theta - omega).cos(), r),
                lo,
                hi,
                &[],
                0.05,
                16,
            );
        }
    }
    total
}

/// Two independent evaluations of int_Omega J_0(|x|) dx.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AveragedBessel {
    /// int_0^{r_+} eta(r) J_0(r) dr.
    pub eta_route: f64,
    /// vol * (J_0(r_+) + int_0^{r_+} alpha(r) J_1(r) dr), the
    /// integrated-by-parts twin.
    pub alpha_route: f64,
}

/// int_Omega J_0(|x|) dx for a planar star-shaped domain, by the ring
/// function eta and, as a consistency check, through alpha.
pub fn averaged_bessel(spec: &DomainSpec) -> Result<AveragedBessel> {
    let desc = crate::domains::descriptors(spec)?;
    let rf = crate::domains::ring_functions(spec)?;
    let r_minus = desc.r_minus;
    let r_plus = desc.r_plus();
    // inside the inradius the ring is the full circle: eta = 2 pi r and
    // int_0^a r J_0(r) dr = a J_1(a)
    let core_part = TAU * r_minus * bessel_j(1.0, r_minus).unwrap();
    // eta has square-root kinks at stationary radii of the boundary; break
    // the quadrature panels there
    let knots = crate::domains::radial_critical_values(spec);
    let eta_route = core_part
        + quad::integrate_graded(
            &|r| rf.eta(r).unwrap() * bessel_j(0.0, r).unwrap(),
            r_minus,
            r_plus,
            &knots,
            0.05,
            16,
        );
    let alpha_route = desc.volume
        * (bessel_j(0.0, r_plus).unwrap()
            + quad::integrate_graded(
                &|r| rf.alpha(r).unwrap() * bessel_j(1.0, r).unwrap(),
                0.0,
                r_plus,
                &knots,
                0.05,
                16,
            ));
    if (eta_route - alpha_route).abs() > 1e-8 * desc.volume.max(1.0) {
        return Err(Error::NonConvergence {
            what: "averaged Bessel integral routes disagree".into(),
            residual: eta_route - alpha_route,
        });
    }
    Ok(AveragedBessel { eta_route, alpha_route })
}

/// Harmonic-series transform of the spiky domain.
///
/// Expanding cos(z cos phi) in even Bessel harmonics and summing over the n
/// congruent teeth kills every harmonic not divisible by n:
///
///   chi-hat(rho e) = 2 pi int r zeta(r) J_0(rho r) dr
///     + sum_{k>=1} (-1)^{kn/2} (4/k) cos(k n omega)
///         int r J_{kn}(rho r) sin(k pi zeta(r)) dr.
///
/// The leading term is in closed form ((r J_1)' = r J_0 per piece); for the
/// spike counts of interest (n >= 8, rho of order j_{1,1}) the correction
/// terms are bounded by (rho r / 2)^{kn} / (kn)! and are dropped once that
/// bound is negligible, which keeps dense certification grids cheap.
fn spiky_ft(n: usize, z: &ZetaProfile, e: [f64; 2], rho: f64) -> Result<f64> {
    let omega = e[1].atan2(e[0]);
    let segments = [
        (0.0, 1.0 - z.delta, 1.0),
        (1.0 - z.delta, 1.0, 0.5),
        (1.0, 1.0 + z.delta_tilde, z.a),
    ];
    // leading radial term, closed form per segment
    let mut lead = 0.0;
    for &(lo, hi, level) in &segments {
        lead += level * r_j0_integral(rho, lo, hi);
    }
    let mut total = TAU * lead;
    // harmonic corrections
    let r_max = 1.0 + z.delta_tilde;
    let vol = TAU * z.radial_moment();
    for k in 1.. {
        let order = k * n;
        // Crude tail bound: |J_m(x)| <= (x/2)^m / m!, and the radial factor
        // is at most r_max^2 / 2.
        let log_bound = (order as f64) * (0.5 * rho * r_max).max(1e-300).ln()
            - ln_factorial(order)
            + (4.0 / k as f64).ln()
            + (0.5 * r_max * r_max).ln();
        if log_bound < (1e-16 * vol).ln() {
            break;
        }
        if order as f64 > MAX_ORDER {
            return Err(Error::NonConvergence {
                what: format!(
                    "spiky transform needs harmonic order {order} beyond the Bessel range (n = {n}, rho = {rho})"
                ),
                residual: log_bound.exp(),
            });
        }
        let sign = if (order / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let mut corr = 0.0;
        for &(lo, hi, level) in &segments {
            let s = (k as f64 * PI * level).sin();
            if s == 0.0 {
                continue;
            }
            let f = |r: f64| r * bessel_j(order as f64, rho * r).unwrap();
            corr += s * quad::integrate_panels(&f, lo, hi, &[], 0.1, 16);
        }
        total += sign * 4.0 / k as f64 * (k as f64 * n as f64 * omega).cos() * corr;
    }
    Ok(total)
}

/// int_lo^hi r J_0(rho r) dr = (hi J_1(rho hi) - lo J_1(rho lo)) / rho.
fn r_j0_integral(rho: f64, lo: f64, hi: f64) -> f64 {
    if rho < 1e-6 {
        // J_0 ~ 1 - (rho r)^2/4
        let q = |r: f64| 0.5 * r * r - rho * rho * r.powi(4) / 16.0;
        return q(hi) - q(lo);
    }
    (hi * bessel_j(1.0, rho * hi).unwrap() - lo * bessel_j(1.0, rho * lo).unwrap()) / rho
}

fn ln_factorial(n: usize) -> f64 {
    let mut s = 0.0;
    for i in 2..=n {
        s += (i as f64).ln();
    }
    s
}

// ---------------------------------------------------------------------------
// polygon edge-sum closed form (works for arbitrary simple polygons, not
// just balanced ones; used as a cross-check and for triangles)

/// Complex transform int_P e^{i xi . x} dx of a CCW polygon by the
/// divergence theorem: each edge contributes in closed form.
pub fn ft_polygon_edge_sum(vertices: &[[f64; 2]], xi: [f64; 2]) -> Complex64 {
    let rho2 = xi[0] * xi[0] + xi[1] * xi[1];
    let n = vertices.len();
    if rho2.sqrt() < 1e-9 {
        // area, as a complex number
        let mut s = 0.0;
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            s += a[0] * b[1] - a[1] * b[0];
        }
        return Complex64::new(0.5 * s, 0.0);
    }
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let d = [b[0] - a[0], b[1] - a[1]];
        let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
        if len < 1e-300 {
            continue;
        }
        // outward normal of a CCW edge
        let nrm = [d[1] / len, -d[0] / len];
        let xin = xi[0] * nrm[0] + xi[1] * nrm[1];
        let phase_a = Complex64::new(0.0, xi[0] * a[0] + xi[1] * a[1]).exp();
        let z = Complex64::new(0.0, xi[0] * d[0] + xi[1] * d[1]);
        total += Complex64::new(0.0, -xin * len / rho2) * phase_a * expm1_over(z);
    }
    total
}

/// (e^z - 1)/z, series branch near zero.
fn expm1_over(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        Complex64::new(1.0, 0.0) + z / 2.0 + z * z / 6.0 + z * z * z / 24.0
    } else {
        (z.exp() - Complex64::new(1.0, 0.0)) / z
    }
}
