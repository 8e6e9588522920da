//! Test-side oracles, derived independently of the library's algorithms:
//! integral representations for the special functions and direct
//! quadrature for the transforms.

#![allow(dead_code)]

use nullkappa_core::domains::DomainSpec;

pub const PI: f64 = std::f64::consts::PI;

/// J_n(x) by its integral representation
/// (1/pi) int_0^pi cos(n theta - x sin theta) dtheta.
/// The integrand has vanishing derivative at both endpoints, so the
/// trapezoid rule converges fast.
pub fn bessel_oracle(n: u32, x: f64) -> f64 {
    let m = 20_000;
    let h = PI / m as f64;
    let g = |t: f64| (n as f64 * t - x * t.sin()).cos();
    let mut acc = 0.5 * (g(0.0) + g(PI));
    for i in 1..m {
        acc += g(h * i as f64);
    }
    acc * h / PI
}

/// Struve H_0(x) by (2/pi) int_0^{pi/2} sin(x cos theta) dtheta.
/// Simpson here: the integrand's derivative does not vanish at pi/2, so
/// the trapezoid rule would stall at O(h^2).
pub fn struve0_oracle(x: f64) -> f64 {
    simpson(|t| (x * t.cos()).sin(), 0.0, 0.5 * PI, 5_000) * 2.0 / PI
}

/// Composite Simpson over [a, b].
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = 2 * panels;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

/// Directional transform of a planar star-shaped domain by brute polar
/// quadrature: Simpson in r (no closed-form radial integral), trapezoid
/// in the angle.
pub fn star_ft_oracle(spec: &DomainSpec, e: [f64; 2], rho: f64) -> f64 {
    let omega = e[1].atan2(e[0]);
    let n_theta = 4096;
    let mut acc = 0.0;
    for i in 0..n_theta {
        let theta = 2.0 * PI * i as f64 / n_theta as f64;
        let r_max = spec.radial_boundary(theta).unwrap();
        let c = rho * (theta - omega).cos();
        acc += simpson(|r| r * (c * r).cos(), 0.0, r_max, 100);
    }
    acc * 2.0 * PI / n_theta as f64
}

/// Transform of the symmetric interval union by per-interval closed-form
/// cosine integrals (not the factored sine/cosine-sum identity).
pub fn interval_union_ft_oracle(centers: &[f64], xi: f64) -> f64 {
    if xi.abs() < 1e-12 {
        return 2.0 * centers.len() as f64;
    }
    let piece = |lo: f64, hi: f64| ((xi * hi).sin() - (xi * lo).sin()) / xi;
    centers
        .iter()
        .map(|&w| piece(w - 0.5, w + 0.5) + piece(-w - 0.5, -w + 0.5))
        .sum()
}
