//! Real zeros of the directional Fourier transform: the first root
//! kappa_1(e) along each direction, kappa(Omega) = inf_e kappa_1(e), the
//! first null curve, and the triangle closed form.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::domains::{check_convex_balanced, DomainSpec};
use crate::fourier::{self, ft_directional, ft_directional_with_nodes, ft_polygon_edge_sum};
use crate::{Error, Result};

const PI: f64 = core::f64::consts::PI;
const TAU: f64 = 2.0 * core::f64::consts::PI;

/// Default number of scan samples on (0, bound].
pub const DEFAULT_SCAN_GRID: usize = 2048;

/// Default number of direction samples on [0, pi).
pub const DEFAULT_ANGULAR_RESOLUTION: usize = 720;

/// Outcome of a bounded root search: either a certified root or the
/// statement that the transform kept a fixed sign up to the bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootResult {
    Root(f64),
    Exceeds(f64),
}

impl RootResult {
    pub fn value(&self) -> Option<f64> {
        match self {
            RootResult::Root(r) => Some(*r),
            RootResult::Exceeds(_) => None,
        }
    }

    /// The root if present, otherwise the searched bound (a lower bound on
    /// any root).
    pub fn value_or_bound(&self) -> f64 {
        match self {
            RootResult::Root(r) | RootResult::Exceeds(r) => *r,
        }
    }
}

/// Result of the kappa search.
#[derive(Debug, Clone)]
pub struct NullVarietyResult {
    pub kappa: RootResult,
    /// Angle (in [0, pi)) of the direction attaining the minimum.
    pub argmin_direction: f64,
    /// Grid samples (angle, first root). Directions pruned by the running
    /// minimum are recorded as `Exceeds` of the pruned bound.
    pub per_direction_roots: Vec<(f64, RootResult)>,
    pub search_bound: f64,
}

/// Default search bound for a direction: 2 pi / w(e) where a first root is
/// guaranteed for convex balanced planar domains (kappa_1(e) <= 2 pi/w(e));
/// star-shaped non-convex domains fall back to 2 pi / r_-.
fn default_bound(spec: &DomainSpec, e: [f64; 2]) -> Result<f64> {
    let margin = 1.0 + 1e-9;
    Ok(match spec {
        DomainSpec::IntervalUnion { .. } => TAU * margin,
        DomainSpec::RevolutionBody { .. } => 2.0 * TAU,
        DomainSpec::Spiky { zeta_tilde, .. } => TAU / (1.0 - zeta_tilde.delta) * margin,
        DomainSpec::StarShaped { .. } => {
            let cb = check_convex_balanced(spec)?;
            if cb.convex {
                TAU / spec.support_half_breadth(e)? * margin
            } else {
                let desc = crate::domains::descriptors(spec)?;
                TAU / desc.r_minus * margin
            }
        }
        _ => TAU / spec.support_half_breadth(e)? * margin,
    })
}

/// First positive root of chi-hat_e, searched on (0, bound].
///
/// `bound = None` picks the per-shape default. The scan uses
/// [`DEFAULT_SCAN_GRID`] samples; use [`first_root_scan`] to control it.
pub fn first_root(spec: &DomainSpec, e: [f64; 2], bound: Option<f64>) -> Result<RootResult> {
    let b = match bound {
        Some(b) => b,
        None => default_bound(spec, e)?,
    };
    first_root_scan(spec, e, b, DEFAULT_SCAN_GRID)
}

/// [`first_root`] with an explicit scan resolution.
pub fn first_root_scan(
    spec: &DomainSpec,
    e: [f64; 2],
    bound: f64,
    grid: usize,
) -> Result<RootResult> {
    first_root_scan_with_nodes(spec, e, bound, grid, fourier::default_nodes(spec))
}

/// [`first_root_scan`] with an explicit angular node count for the
/// quadrature transforms; smooth low-mode boundaries stay accurate with
/// far fewer nodes than the conservative default, which matters in
/// corpus-scale sweeps.
pub fn first_root_scan_with_nodes(
    spec: &DomainSpec,
    e: [f64; 2],
    bound: f64,
    grid: usize,
    nodes: usize,
) -> Result<RootResult> {
    if !(bound > 0.0) {
        return Err(Error::Domain(format!("bound must be > 0, got {bound}")));
    }
    let vol = spec.volume();
    let f = |rho: f64| ft_directional_with_nodes(spec, e, rho, nodes).unwrap();
    spec.validate()?;
    // probe the dispatch once so direction errors surface as errors
    ft_directional(spec, e, 0.0)?;
    let h = bound / grid as f64;
    let mut f_prev2 = vol; // f(0)
    let mut f_prev = f(h);
    if f_prev == 0.0 {
        return Ok(RootResult::Root(h));
    }
    if f_prev * f_prev2 < 0.0 {
        return Ok(RootResult::Root(bisect_root(&f, 0.0, h)));
    }
    for k in 2..=grid {
        let rho = h * k as f64;
        let fk = f(rho);
        if fk == 0.0 {
            return Ok(RootResult::Root(rho));
        }
        if fk * f_prev < 0.0 {
            return Ok(RootResult::Root(bisect_root(&f, rho - h, rho)));
        }
        // tangential (double) root: a local minimum of |f| dipping to zero
        // without a sign change
        if f_prev.abs() < fk.abs()
            && f_prev.abs() < f_prev2.abs()
            && f_prev.abs() < 0.02 * vol
        {
            let (x, v) = golden_min_abs(&f, rho - 2.0 * h, rho);
            if v <= 1e-8 * vol {
                return Ok(RootResult::Root(x));
            }
        }
        f_prev2 = f_prev;
        f_prev = fk;
    }
    Ok(RootResult::Exceeds(bound))
}

/// The first `count` positive roots along a direction (sign changes and
/// certified tangential dips), ascending. May return fewer if the bound is
/// reached first.
pub fn directional_roots(
    spec: &DomainSpec,
    e: [f64; 2],
    count: usize,
    bound: f64,
    grid: usize,
) -> Result<Vec<f64>> {
    directional_roots_with_nodes(spec, e, count, bound, grid, fourier::default_nodes(spec))
}

/// [`directional_roots`] with an explicit angular node count for the
/// quadrature transforms.
pub fn directional_roots_with_nodes(
    spec: &DomainSpec,
    e: [f64; 2],
    count: usize,
    bound: f64,
    grid: usize,
    nodes: usize,
) -> Result<Vec<f64>> {
    spec.validate()?;
    ft_directional(spec, e, 0.0)?;
    let vol = spec.volume();
    let f = |rho: f64| ft_directional_with_nodes(spec, e, rho, nodes).unwrap();
    let h = bound / grid as f64;
    let mut roots = Vec::new();
    let mut f_prev2 = vol;
    let mut f_prev = f(h);
    for k in 2..=grid {
        if roots.len() >= count {
            break;
        }
        let rho = h * k as f64;
        let fk = f(rho);
        if fk * f_prev < 0.0 || fk == 0.0 {
            roots.push(if fk == 0.0 { rho } else { bisect_root(&f, rho - h, rho) });
        } else if f_prev.abs() < fk.abs()
            && f_prev.abs() < f_prev2.abs()
            && f_prev.abs() < 0.02 * vol
        {
            let (x, v) = golden_min_abs(&f, rho - 2.0 * h, rho);
            if v <= 1e-8 * vol {
                // double root
                roots.push(x);
                if roots.len() < count {
                    roots.push(x);
                }
            }
        }
        f_prev2 = f_prev;
        f_prev = fk;
    }
    Ok(roots)
}

fn bisect_root<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..80 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fa * fm <= 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
        if b - a <= 1e-13 * b.abs().max(1e-30) {
            break;
        }
    }
    0.5 * (a + b)
}

fn golden_min_abs<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = |x: f64| f(x).abs();
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    for _ in 0..100 {
        if f1 > f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = g(x1);
        }
    }
    if f1 < f2 { (x1, f1) } else { (x2, f2) }
}

/// kappa(Omega) by direction sweep at the default scan resolution.
pub fn kappa(spec: &DomainSpec, angular_resolution: usize) -> Result<NullVarietyResult> {
    kappa_with(spec, angular_resolution, DEFAULT_SCAN_GRID)
}

/// kappa(Omega) = inf_e kappa_1(e): scans a direction grid on [0, pi)
/// (balance makes the transform even), then refines the minimum by
/// golden-section in the angle. Directions whose search bound is pruned by
/// the running minimum report `Exceeds`.
pub fn kappa_with(
    spec: &DomainSpec,
    angular_resolution: usize,
    scan_grid: usize,
) -> Result<NullVarietyResult> {
    kappa_with_nodes(spec, angular_resolution, scan_grid, fourier::default_nodes(spec))
}

/// [`kappa_with`] with an explicit angular node count for the quadrature
/// transforms.
pub fn kappa_with_nodes(
    spec: &DomainSpec,
    angular_resolution: usize,
    scan_grid: usize,
    nodes: usize,
) -> Result<NullVarietyResult> {
    spec.validate()?;
    if angular_resolution == 0 {
        return Err(Error::Domain("angular resolution must be >= 1".into()));
    }
    match spec {
        DomainSpec::IntervalUnion { .. } => {
            let bound = default_bound(spec, [1.0, 0.0])?;
            let r = first_root_scan_with_nodes(spec, [1.0, 0.0], bound, scan_grid, nodes)?;
            return Ok(NullVarietyResult {
                kappa: r,
                argmin_direction: 0.0,
                per_direction_roots: alloc::vec![(0.0, r)],
                search_bound: bound,
            });
        }
        DomainSpec::Rectangle { half_sides } if half_sides.len() != 2 => {
            // d-dimensional box: kappa = pi / max h_j, attained along the
            // longest axis
            let h_max = half_sides.iter().cloned().fold(0.0_f64, f64::max);
            return Ok(NullVarietyResult {
                kappa: RootResult::Root(PI / h_max),
                argmin_direction: 0.0,
                per_direction_roots: Vec::new(),
                search_bound: PI / h_max,
            });
        }
        DomainSpec::RevolutionBody { .. } => {
            return Err(Error::Unsupported(
                "kappa of the double cone needs the full 3D variety; only the axis slice is available".into(),
            ));
        }
        _ => {}
    }
    // Spiky domains repeat with period 2 pi / n and are even in the angle,
    // so [0, pi/n] is a fundamental domain for the direction.
    let angle_span = match spec {
        DomainSpec::Spiky { n, .. } => PI / *n as f64,
        _ => PI,
    };
    let kappa_at = |theta: f64, cap: Option<f64>| -> Result<RootResult> {
        let e = [theta.cos(), theta.sin()];
        let mut bound = default_bound(spec, e)?;
        if let Some(c) = cap {
            bound = bound.min(c);
        }
        first_root_scan_with_nodes(spec, e, bound, scan_grid, nodes)
    };
    let mut per_direction: Vec<(f64, RootResult)> = Vec::with_capacity(angular_resolution);
    let mut best: Option<(f64, f64)> = None; // (theta, root)
    let mut max_bound = 0.0_f64;
    for k in 0..angular_resolution {
        let theta = angle_span * k as f64 / angular_resolution as f64;
        // prune with the running minimum: roots above it cannot win
        let cap = best.map(|(_, r)| r * (1.0 + 1e-9));
        let res = kappa_at(theta, cap)?;
        max_bound = max_bound.max(res.value_or_bound());
        if let RootResult::Root(r) = res {
            if best.map_or(true, |(_, b)| r < b) {
                best = Some((theta, r));
            }
        }
        per_direction.push((theta, res));
    }
    let Some((theta0, _)) = best else {
        return Ok(NullVarietyResult {
            kappa: RootResult::Exceeds(
                per_direction
                    .iter()
                    .map(|(_, r)| r.value_or_bound())
                    .fold(f64::INFINITY, f64::min),
            ),
            argmin_direction: 0.0,
            per_direction_roots: per_direction,
            search_bound: max_bound,
        });
    };
    // golden-section refinement of the angle around the best grid sample
    let h = angle_span / angular_resolution as f64;
    let eval = |theta: f64| -> f64 {
        kappa_at(theta, None)
            .ok()
            .and_then(|r| r.value())
            .unwrap_or(f64::INFINITY)
    };
    let (mut a, mut b) = (theta0 - h, theta0 + h);
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = eval(x1);
    let mut f2 = eval(x2);
    while b - a > 1e-6 {
        if f1 > f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = eval(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = eval(x1);
        }
    }
    let (theta_min, root) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
    let mut argmin = theta_min % PI;
    if argmin < 0.0 {
        argmin += PI;
    }
    Ok(NullVarietyResult {
        kappa: RootResult::Root(root),
        argmin_direction: argmin,
        per_direction_roots: per_direction,
        search_bound: max_bound,
    })
}

/// The first null curve: (angle, kappa_1(e)) on a uniform grid of [0, pi).
/// No pruning, so every direction carries its true first root.
pub fn null_curve(spec: &DomainSpec, angular_resolution: usize) -> Result<Vec<(f64, f64)>> {
    null_curve_with(spec, angular_resolution, DEFAULT_SCAN_GRID)
}

/// [`null_curve`] with an explicit scan resolution.
pub fn null_curve_with(
    spec: &DomainSpec,
    angular_resolution: usize,
    scan_grid: usize,
) -> Result<Vec<(f64, f64)>> {
    let cb = check_convex_balanced(spec)?;
    if !cb.convex || !cb.balanced {
        return Err(Error::Unsupported(
            "the first null curve is tracked for convex balanced planar domains".into(),
        ));
    }
    let mut out = Vec::with_capacity(angular_resolution);
    for k in 0..angular_resolution {
        let theta = PI * k as f64 / angular_resolution as f64;
        let e = [theta.cos(), theta.sin()];
        let bound = default_bound(spec, e)?;
        match first_root_scan(spec, e, bound, scan_grid)? {
            RootResult::Root(r) => out.push((theta, r)),
            RootResult::Exceeds(b) => {
                return Err(Error::NonConvergence {
                    what: format!("no first root below the guaranteed bound at angle {theta}"),
                    residual: b,
                })
            }
        }
    }
    Ok(out)
}

/// kappa of the right triangle T_{1,a} with legs 1 and a:
/// 2 pi sqrt(1 + a^{-2}).
pub fn triangle_kappa(a: f64) -> f64 {
    TAU * (1.0 + 1.0 / (a * a)).sqrt()
}

/// Independent check of the triangle formula: a 2D Newton search for the
/// smallest real wavevector where both the real and imaginary parts of the
/// (complex) transform vanish. The triangle is not balanced, so the
/// transform is genuinely complex.
pub fn triangle_kappa_search(a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("triangle leg must be positive, got {a}")));
    }
    let verts = [[0.0, 0.0], [1.0, 0.0], [0.0, a]];
    let area = 0.5 * a;
    let f = |xi: [f64; 2]| {
        let v = ft_polygon_edge_sum(&verts, xi);
        [v.re, v.im]
    };
    let radius = triangle_kappa(a) * 1.3;
    let mut best = f64::INFINITY;
    let n_theta = 48;
    let n_r = 24;
    for it in 0..n_theta {
        for ir in 1..=n_r {
            let theta = TAU * it as f64 / n_theta as f64;
            let r = radius * ir as f64 / n_r as f64;
            let mut xi = [r * theta.cos(), r * theta.sin()];
            // Newton with finite-difference Jacobian
            let mut ok = false;
            for _ in 0..40 {
                let v = f(xi);
                let res = (v[0] * v[0] + v[1] * v[1]).sqrt();
                if res < 1e-12 * area {
                    ok = true;
                    break;
                }
                let h = 1e-6;
                let vx = f([xi[0] + h, xi[1]]);
                let vy = f([xi[0], xi[1] + h]);
                let j = [
                    [(vx[0] - v[0]) / h, (vy[0] - v[0]) / h],
                    [(vx[1] - v[1]) / h, (vy[1] - v[1]) / h],
                ];
                let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
                if det.abs() < 1e-14 {
                    break;
                }
                let dx = (v[0] * j[1][1] - v[1] * j[0][1]) / det;
                let dy = (v[1] * j[0][0] - v[0] * j[1][0]) / det;
                xi[0] -= dx;
                xi[1] -= dy;
                if !(xi[0].is_finite() && xi[1].is_finite()) {
                    break;
                }
                if (xi[0] * xi[0] + xi[1] * xi[1]).sqrt() > 3.0 * radius {
                    break;
                }
            }
            if ok {
                // The zero can be degenerate (rank-1 Jacobian), leaving
                // Newton ~1e-5 short along the flat direction; polish by
                // pattern search on |chi-hat|^2 down to the noise floor.
                let xi = polish_zero_2d(&f, xi);
                let norm = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
                if norm > 1e-6 && norm < best {
                    best = norm;
                }
            }
        }
    }
    if best.is_finite() {
        Ok(best)
    } else {
        triangle_search_failed(a)
    }
}

/// Refines a near-zero of a 2D map whose Jacobian may be rank-deficient:
/// alternates a ridge-regularized Gauss-Newton step (kills the error across
/// the valley) with a golden-section line search along the Jacobian's
/// smallest singular direction (walks down the flat valley).
fn polish_zero_2d<F: Fn([f64; 2]) -> [f64; 2]>(f: &F, mut xi: [f64; 2]) -> [f64; 2] {
    let g = |p: [f64; 2]| {
        let v = f(p);
        v[0] * v[0] + v[1] * v[1]
    };
    for _ in 0..8 {
        let v = f(xi);
        if v[0] * v[0] + v[1] * v[1] < 1e-60 {
            break;
        }
        let h = 1e-6;
        let vx = f([xi[0] + h, xi[1]]);
        let vy = f([xi[0], xi[1] + h]);
        let j = [
            [(vx[0] - v[0]) / h, (vy[0] - v[0]) / h],
            [(vx[1] - v[1]) / h, (vy[1] - v[1]) / h],
        ];
        // J^T J and J^T v for the normal equations with a tiny ridge
        let a11 = j[0][0] * j[0][0] + j[1][0] * j[1][0];
        let a12 = j[0][0] * j[0][1] + j[1][0] * j[1][1];
        let a22 = j[0][1] * j[0][1] + j[1][1] * j[1][1];
        let b1 = j[0][0] * v[0] + j[1][0] * v[1];
        let b2 = j[0][1] * v[0] + j[1][1] * v[1];
        let ridge = 1e-10 * (a11 + a22);
        let (r11, r22) = (a11 + ridge, a22 + ridge);
        let det = r11 * r22 - a12 * a12;
        if det > 0.0 {
            let dx = (b1 * r22 - b2 * a12) / det;
            let dy = (b2 * r11 - b1 * a12) / det;
            let cand = [xi[0] - dx, xi[1] - dy];
            if g(cand) < g(xi) {
                xi = cand;
            }
        }
        // smallest right singular direction of J = eigenvector of J^T J for
        // the smaller eigenvalue
        let tr = a11 + a22;
        let disc = ((a11 - a22) * (a11 - a22) + 4.0 * a12 * a12).sqrt();
        let lam_min = 0.5 * (tr - disc);
        let mut u = [a12, lam_min - a11];
        let un = (u[0] * u[0] + u[1] * u[1]).sqrt();
        if un < 1e-14 * tr.sqrt().max(1e-300) {
            u = [1.0, 0.0];
        } else {
            u = [u[0] / un, u[1] / un];
        }
        let line = |t: f64| g([xi[0] + t * u[0], xi[1] + t * u[1]]);
        let (mut a, mut b) = (-1e-4, 1e-4);
        let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
        let mut x1 = b - inv_phi * (b - a);
        let mut x2 = a + inv_phi * (b - a);
        let mut f1 = line(x1);
        let mut f2 = line(x2);
        for _ in 0..90 {
            if f1 > f2 {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = line(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = line(x1);
            }
        }
        let t = if f1 < f2 { x1 } else { x2 };
        let best = f1.min(f2);
        if best < g(xi) {
            xi = [xi[0] + t * u[0], xi[1] + t * u[1]];
        }
    }
    xi
}

fn triangle_search_failed(a: f64) -> Result<f64> {
    {
        Err(Error::NonConvergence {
            what: format!("triangle null-variety search (a = {a})"),
            residual: f64::NAN,
        })
    }
}
