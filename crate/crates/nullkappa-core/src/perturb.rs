//! First-order perturbation theory of the disk: the derivative of
//! sqrt(lambda_2) and of kappa under area-preserving balanced deformations
//! R = 1 + eps F(theta), the comparison inequality between them, and the
//! canonical rotation of the profile.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::domains::{DomainSpec, RadialProfile};
use crate::nullvariety;
use crate::specialfun::{bessel_j, bessel_zero};
use crate::spectral;
use crate::{Error, Result};

const PI: f64 = core::f64::consts::PI;
const TAU: f64 = 2.0 * core::f64::consts::PI;

/// Nodes of the periodic trapezoid rule used for the theta integrals.
const THETA_NODES: usize = 4096;
/// Base-angle grid for the alpha minimizations.
const ALPHA_GRID: usize = 2048;

fn j11() -> f64 {
    bessel_zero(1.0, 1).unwrap()
}

/// All first-order quantities for one deformation profile.
#[derive(Debug, Clone, Copy)]
pub struct PerturbationReport {
    /// d sqrt(lambda_2) / d eps at eps = +0.
    pub d_sqrt_lambda2: f64,
    /// d kappa / d eps at eps = +0.
    pub d_kappa: f64,
    /// L_F: the minimized cosine integral of the comparison inequality.
    pub lhs_p1: f64,
    /// R_F = -A |2-mode of F on [0, pi]|.
    pub rhs_p1: f64,
    /// Canonical rotation angle phi.
    pub rotation_angle: f64,
}

/// The (cos, sin) coefficients of the 2-mode: F has the term
/// p1 cos(2 theta) + q1 sin(2 theta).
fn two_mode(f: &RadialProfile) -> (f64, f64) {
    let p1 = f.cosine_coeffs.first().copied().unwrap_or(0.0);
    let q1 = f.sine_coeffs.first().copied().unwrap_or(0.0);
    (p1, q1)
}

/// d sqrt(lambda_2)/d eps = -(j11 / 2pi) |int_0^{2pi} F e^{2i theta}|.
/// The integral picks out the 2-mode: pi (p1 + i q1).
pub fn lambda2_derivative(f: &RadialProfile) -> f64 {
    let (p1, q1) = two_mode(f);
    -(j11() / 2.0) * (p1 * p1 + q1 * q1).sqrt()
}

/// The 2x2 matrix of the degenerate-eigenvalue derivative theorem for the
/// pair (J1 cos theta, J1 sin theta), by periodic quadrature.
pub fn lambda2_matrix(f: &RadialProfile) -> [[f64; 2]; 2] {
    let j = j11();
    let scale = 2.0 * j * j / PI;
    let quad = |g: &dyn Fn(f64) -> f64| {
        let n = THETA_NODES;
        let mut acc = 0.0;
        for i in 0..n {
            let t = TAU * i as f64 / n as f64;
            acc += f.eval(t) * g(t);
        }
        acc * TAU / n as f64
    };
    let m11 = scale * quad(&|t: f64| t.cos() * t.cos());
    let m12 = scale * quad(&|t: f64| t.cos() * t.sin());
    let m22 = scale * quad(&|t: f64| t.sin() * t.sin());
    [[m11, m12], [m12, m22]]
}

/// d sqrt(lambda_2)/d eps recovered from the smaller eigenvalue of the
/// matrix route; agrees with [`lambda2_derivative`] for zero-mean profiles.
pub fn lambda2_derivative_via_matrix(f: &RadialProfile) -> f64 {
    let m = lambda2_matrix(f);
    let half_tr = 0.5 * (m[0][0] + m[1][1]);
    let disc = (0.25 * (m[0][0] - m[1][1]) * (m[0][0] - m[1][1]) + m[0][1] * m[0][1]).sqrt();
    let smaller = half_tr - disc;
    // d lambda_2 = smaller eigenvalue; d sqrt = d lambda / (2 sqrt(lambda))
    smaller / (2.0 * j11())
}

fn cos_kernel_integral(f: &RadialProfile, alpha: f64) -> f64 {
    // int_0^{2pi} F(theta + alpha) cos(j11 cos theta) dtheta, trapezoid
    let j = j11();
    let n = THETA_NODES;
    let mut acc = 0.0;
    for i in 0..n {
        let t = TAU * i as f64 / n as f64;
        acc += f.eval(t + alpha) * (j * t.cos()).cos();
    }
    acc * TAU / n as f64
}

fn golden_min<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..70 {
        if f1 > f2 {
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
    if f1 < f2 { (x1, f1) } else { (x2, f2) }
}

/// d kappa/d eps = min_alpha [ -(j11 / (2 pi J0(j11)))
/// int F(theta + alpha) cos(j11 cos theta) dtheta ], by grid minimization
/// over the base angle with golden refinement.
pub fn kappa_derivative(f: &RadialProfile) -> f64 {
    let j = j11();
    let j0 = bessel_j(0.0, j).unwrap();
    let val = |alpha: f64| -(j / (TAU * j0)) * cos_kernel_integral(f, alpha);
    // F is pi-periodic, so the alpha dependence has period pi
    let mut best = (0.0, val(0.0));
    for i in 1..ALPHA_GRID {
        let a = PI * i as f64 / ALPHA_GRID as f64;
        let v = val(a);
        if v < best.1 {
            best = (a, v);
        }
    }
    let h = PI / ALPHA_GRID as f64;
    golden_min(&val, best.0 - h, best.0 + h).1
}

/// Mode-sum form of the same derivative:
/// -(j11/J0) max_alpha sum_m (-1)^m J_{2m}(j11) (p_m cos 2m alpha +
/// q_m sin 2m alpha); used as an independent cross-check.
pub fn kappa_derivative_modes(f: &RadialProfile) -> f64 {
    let j = j11();
    let j0 = bessel_j(0.0, j).unwrap();
    let n_modes = f.cosine_coeffs.len().max(f.sine_coeffs.len()).min(16);
    let mut terms: Vec<(f64, f64, f64)> = Vec::new(); // (2m, amp_cos, amp_sin)
    for m in 1..=n_modes {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let jm = bessel_j(2.0 * m as f64, j).unwrap();
        let p = f.cosine_coeffs.get(m - 1).copied().unwrap_or(0.0);
        let q = f.sine_coeffs.get(m - 1).copied().unwrap_or(0.0);
        terms.push((2.0 * m as f64, sign * jm * p, sign * jm * q));
    }
    let g = |alpha: f64| -> f64 {
        terms
            .iter()
            .map(|&(k, a, b)| a * (k * alpha).cos() + b * (k * alpha).sin())
            .sum()
    };
    let val = |alpha: f64| -(j / j0) * g(alpha);
    let mut best = (0.0, val(0.0));
    for i in 1..ALPHA_GRID {
        let a = PI * i as f64 / ALPHA_GRID as f64;
        let v = val(a);
        if v < best.1 {
            best = (a, v);
        }
    }
    let h = PI / ALPHA_GRID as f64;
    golden_min(&val, best.0 - h, best.0 + h).1
}

/// Rotates F so that its sine 2-mode vanishes and its cosine 2-mode is
/// non-negative; the angle comes from the phase of the 2-mode.
pub fn rotate_canonical(f: &RadialProfile) -> (f64, RadialProfile) {
    let (p1, q1) = two_mode(f);
    let phi = 0.5 * q1.atan2(p1);
    let n = f.cosine_coeffs.len().max(f.sine_coeffs.len());
    let mut cos_out = Vec::with_capacity(n);
    let mut sin_out = Vec::with_capacity(n);
    for m in 1..=n {
        let p = f.cosine_coeffs.get(m - 1).copied().unwrap_or(0.0);
        let q = f.sine_coeffs.get(m - 1).copied().unwrap_or(0.0);
        let (s, c) = (2.0 * m as f64 * phi).sin_cos();
        cos_out.push(p * c + q * s);
        sin_out.push(q * c - p * s);
    }
    (phi, RadialProfile::new(cos_out, sin_out))
}

/// Both sides of the comparison inequality:
/// lhs = min_alpha int_0^pi F(theta+alpha) cos(j11 cos theta) dtheta,
/// rhs = -A |int_0^pi F e^{2i theta} dtheta| with A = -J0(j11).
pub fn inequality_p1(f: &RadialProfile) -> (f64, f64) {
    let j = j11();
    // midpoint rule; the O(h^2) Euler-Maclaurin term cancels because the
    // integrand has vanishing derivative at both endpoints, so 1024 nodes
    // already reach ~1e-10
    let half_integral = |alpha: f64| -> f64 {
        let n = 1024;
        let mut acc = 0.0;
        for i in 0..n {
            let t = PI * (i as f64 + 0.5) / n as f64;
            acc += f.eval(t + alpha) * (j * t.cos()).cos();
        }
        acc * PI / n as f64
    };
    let alpha_grid = ALPHA_GRID / 2;
    let mut best = (0.0, half_integral(0.0));
    for i in 1..alpha_grid {
        let a = PI * i as f64 / alpha_grid as f64;
        let v = half_integral(a);
        if v < best.1 {
            best = (a, v);
        }
    }
    let h = PI / alpha_grid as f64;
    let (_, lhs) = golden_min(&half_integral, best.0 - h, best.0 + h);
    let a_const = -bessel_j(0.0, j).unwrap();
    let (p1, q1) = two_mode(f);
    // int_0^pi e^{2i theta} F = (pi/2)(p1 + i q1)
    let rhs = -a_const * (PI / 2.0) * (p1 * p1 + q1 * q1).sqrt();
    (lhs, rhs)
}

/// One-sided difference quotients of kappa and sqrt(lambda_2) on the
/// concrete perturbed domain, next to the analytic derivatives.
#[derive(Debug, Clone, Copy)]
pub struct FiniteDifferenceReport {
    pub eps: f64,
    pub kappa_quotient: f64,
    pub sqrt_lambda2_quotient: f64,
    pub d_kappa: f64,
    pub d_sqrt_lambda2: f64,
}

/// Builds the star-shaped domain R = 1 + eps F, computes kappa and
/// lambda_2 with the search/collocation machinery, and forms the one-sided
/// quotients at eps = +0.
pub fn finite_difference_check(f: &RadialProfile, eps: f64) -> Result<FiniteDifferenceReport> {
    if !(eps > 0.0) {
        return Err(Error::Domain("eps must be positive (one-sided derivative)".into()));
    }
    let spec = DomainSpec::StarShaped { profile: f.clone(), epsilon: eps };
    spec.validate()?;
    let j = j11();
    let kappa_eps = match nullvariety::kappa_with(&spec, 90, 768)?.kappa {
        nullvariety::RootResult::Root(r) => r,
        nullvariety::RootResult::Exceeds(b) => {
            return Err(Error::NonConvergence {
                what: "kappa search failed on the perturbed domain".into(),
                residual: b,
            })
        }
    };
    let lam2_eps = spectral::dirichlet_eigs(&spec, 2)?.dirichlet[1];
    Ok(FiniteDifferenceReport {
        eps,
        kappa_quotient: (kappa_eps - j) / eps,
        sqrt_lambda2_quotient: (lam2_eps.sqrt() - j) / eps,
        d_kappa: kappa_derivative(f),
        d_sqrt_lambda2: lambda2_derivative(f),
    })
}

/// Collects the analytic first-order quantities in one report.
pub fn perturbation_report(f: &RadialProfile) -> PerturbationReport {
    let (phi, _) = rotate_canonical(f);
    let (lhs, rhs) = inequality_p1(f);
    PerturbationReport {
        d_sqrt_lambda2: lambda2_derivative(f),
        d_kappa: kappa_derivative(f),
        lhs_p1: lhs,
        rhs_p1: rhs,
        rotation_angle: phi,
    }
}
