//! Dirichlet and Neumann Laplacian eigenvalues for planar balanced domains:
//! closed forms for the disk and the rectangle, a Fourier-Bessel
//! particular-solution collocation solver for convex star-shaped and
//! polygonal domains, and the eigenvalue inequality report.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::domains::{check_convex_balanced, descriptors, DomainSpec};
use crate::linalg::{
    orthonormalize_columns, smallest_two_singular_values, symmetric_eigen,
    symmetric_eigenvalues, Mat,
};
use crate::quad::gauss_legendre;
use crate::nullvariety;
use crate::specialfun::{bessel_j_int_all, bessel_prime_zero, bessel_zero};
use crate::{Error, Result};

const PI: f64 = core::f64::consts::PI;
const TAU: f64 = 2.0 * core::f64::consts::PI;

/// How a spectrum was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Collocation,
}

/// Ordered eigenvalues with per-value relative accuracy estimates.
/// `dirichlet` or `neumann` may be empty depending on which operation
/// produced the result; `accuracy[i]` matches the i-th entry of whichever
/// sequence is populated.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub dirichlet: Vec<f64>,
    pub neumann: Vec<f64>,
    pub accuracy: Vec<f64>,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bc {
    Dirichlet,
    Neumann,
}

/// First `count` Dirichlet eigenvalues (ascending, with multiplicity).
pub fn dirichlet_eigs(spec: &DomainSpec, count: usize) -> Result<SpectrumResult> {
    check_count(count)?;
    spec.validate()?;
    match spec {
        DomainSpec::Ball { dim: 2, radius } => {
            let eigs = disk_eigs(*radius, count, Bc::Dirichlet)?;
            Ok(SpectrumResult {
                accuracy: alloc::vec![1e-12; eigs.len()],
                dirichlet: eigs,
                neumann: Vec::new(),
                method: Method::ClosedForm,
            })
        }
        DomainSpec::Rectangle { half_sides } if half_sides.len() == 2 => {
            let eigs = rectangle_eigs(half_sides, count, Bc::Dirichlet);
            Ok(SpectrumResult {
                accuracy: alloc::vec![1e-12; eigs.len()],
                dirichlet: eigs,
                neumann: Vec::new(),
                method: Method::ClosedForm,
            })
        }
        DomainSpec::StarShaped { .. } | DomainSpec::ConvexPolygon { .. } => {
            let (eigs, acc) = collocation_eigs(spec, count, Bc::Dirichlet)?;
            if eigs.len() < count {
                return Err(Error::NonConvergence {
                    what: format!(
                        "collocation sweep found {} eigenvalue(s), needed {count}",
                        eigs.len()
                    ),
                    residual: eigs.last().copied().unwrap_or(f64::NAN),
                });
            }
            Ok(SpectrumResult {
                dirichlet: eigs,
                neumann: Vec::new(),
                accuracy: acc,
                method: Method::Collocation,
            })
        }
        _ => Err(Error::Unsupported(
            "eigenvalues available for the planar disk, rectangle, convex star-shaped and polygonal domains".into(),
        )),
    }
}

/// First `count` Neumann eigenvalues; mu_1 = 0 exactly by convention.
pub fn neumann_eigs(spec: &DomainSpec, count: usize) -> Result<SpectrumResult> {
    check_count(count)?;
    spec.validate()?;
    match spec {
        DomainSpec::Ball { dim: 2, radius } => {
            let eigs = disk_eigs(*radius, count, Bc::Neumann)?;
            Ok(SpectrumResult {
                accuracy: alloc::vec![1e-12; eigs.len()],
                dirichlet: Vec::new(),
                neumann: eigs,
                method: Method::ClosedForm,
            })
        }
        DomainSpec::Rectangle { half_sides } if half_sides.len() == 2 => {
            let eigs = rectangle_eigs(half_sides, count, Bc::Neumann);
            Ok(SpectrumResult {
                accuracy: alloc::vec![1e-12; eigs.len()],
                dirichlet: Vec::new(),
                neumann: eigs,
                method: Method::ClosedForm,
            })
        }
        DomainSpec::StarShaped { .. } | DomainSpec::ConvexPolygon { .. } => {
            let want = count.saturating_sub(1);
            let (sweep, sweep_acc) = collocation_eigs(spec, want, Bc::Neumann)?;
            // Reconcile the sweep against Rayleigh-Ritz upper bounds (see
            // the Rayleigh-Ritz section for why the sweep misses modes).
            // hi[j] certifies the j-th nonzero eigenvalue from above, so
            // walking the bounds in order repairs three sweep failures at
            // once: modes with no dip, degenerate pairs counted once, and
            // overshoots beyond a certified bound.
            let hi = ritz_neumann_low(spec, RITZ_DEGREE)?;
            let lo = ritz_neumann_low(spec, RITZ_DEGREE - 2)?;
            let mut eigs: Vec<f64> = Vec::with_capacity(want);
            let mut acc: Vec<f64> = Vec::with_capacity(want);
            let mut ci = 0;
            for (&r, &r_lo) in hi.iter().zip(&lo) {
                let rel = ((r_lo - r) / r.max(1e-300)).abs().max(1e-9);
                let bound = r * (1.0 + 3.0 * rel + 1e-3);
                if ci < sweep.len() && sweep[ci] <= bound {
                    // the sweep saw this mode; never exceed the bound
                    if sweep[ci] <= r {
                        eigs.push(sweep[ci]);
                        acc.push(sweep_acc[ci]);
                    } else {
                        eigs.push(r);
                        acc.push(sweep_acc[ci].max(rel).max((sweep[ci] - r) / r));
                    }
                    ci += 1;
                } else {
                    // the sweep skipped it: missed dip or undetected
                    // multiplicity
                    eigs.push(r);
                    acc.push(rel);
                }
            }
            for i in ci..sweep.len() {
                eigs.push(sweep[i]);
                acc.push(sweep_acc[i]);
            }
            eigs.truncate(want);
            acc.truncate(want);
            if eigs.len() < want {
                return Err(Error::NonConvergence {
                    what: format!(
                        "Neumann solver produced {} eigenvalue(s), needed {want}",
                        eigs.len()
                    ),
                    residual: eigs.last().copied().unwrap_or(f64::NAN),
                });
            }
            eigs.insert(0, 0.0);
            acc.insert(0, 0.0);
            Ok(SpectrumResult {
                dirichlet: Vec::new(),
                neumann: eigs,
                accuracy: acc,
                method: Method::Collocation,
            })
        }
        _ => Err(Error::Unsupported(
            "eigenvalues available for the planar disk, rectangle, convex star-shaped and polygonal domains".into(),
        )),
    }
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 || count > 10 {
        return Err(Error::Domain(format!("eigenvalue count must be in 1..=10, got {count}")));
    }
    Ok(())
}

/// Disk closed forms: Dirichlet (j_{n,k}/R)^2, Neumann 0 then
/// (j'_{n,k}/R)^2, angular order n >= 1 giving multiplicity two.
fn disk_eigs(radius: f64, count: usize, bc: Bc) -> Result<Vec<f64>> {
    let mut vals = Vec::new();
    for n in 0..=(count + 2) {
        for k in 1..=(count as u32 + 2) {
            let z = match bc {
                Bc::Dirichlet => bessel_zero(n as f64, k)?,
                Bc::Neumann => bessel_prime_zero(n as f64, k)?,
            };
            let lam = (z / radius) * (z / radius);
            vals.push(lam);
            if n >= 1 {
                vals.push(lam);
            }
        }
    }
    if bc == Bc::Neumann {
        vals.push(0.0);
    }
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals.truncate(count);
    Ok(vals)
}

/// Rectangle closed forms: pi^2 sum (n_j / a_j)^2 with n_j >= 1 (Dirichlet)
/// or n_j >= 0 (Neumann).
fn rectangle_eigs(half_sides: &[f64], count: usize, bc: Bc) -> Vec<f64> {
    let a = [2.0 * half_sides[0], 2.0 * half_sides[1]];
    let lo = match bc {
        Bc::Dirichlet => 1usize,
        Bc::Neumann => 0,
    };
    let n_max = count + 4;
    let mut vals = Vec::new();
    for n1 in lo..=n_max {
        for n2 in lo..=n_max {
            let v = PI * PI
                * ((n1 as f64 / a[0]) * (n1 as f64 / a[0])
                    + (n2 as f64 / a[1]) * (n2 as f64 / a[1]));
            vals.push(v);
        }
    }
    vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    vals.truncate(count);
    vals
}

// ---------------------------------------------------------------------------
// Fourier-Bessel collocation (method of particular solutions)
// ---------------------------------------------------------------------------

const M_MAX: usize = 24;
const BOUNDARY_POINTS: usize = 256;
const INTERIOR_POINTS: usize = 48;
const SWEEP_STEPS: usize = 280;

struct Colloc {
    // boundary samples: (r, theta, R'(theta))
    boundary: Vec<(f64, f64, f64)>,
    // interior samples: (r, theta)
    interior: Vec<(f64, f64)>,
}

impl Colloc {
    fn build(spec: &DomainSpec, n_boundary: usize) -> Result<Colloc> {
        let mut boundary = Vec::with_capacity(n_boundary);
        for i in 0..n_boundary {
            let theta = TAU * (i as f64 + 0.5) / n_boundary as f64;
            let r = spec.radial_boundary(theta)?;
            let rp = match spec {
                DomainSpec::StarShaped { profile, epsilon } => epsilon * profile.deriv(theta),
                DomainSpec::Ball { .. } => 0.0,
                _ => {
                    // piecewise-smooth boundary: one-sided-safe central
                    // difference; a handful of corner-straddling points only
                    // blur the residual slightly
                    let h = 1e-6;
                    (spec.radial_boundary(theta + h)? - spec.radial_boundary(theta - h)?)
                        / (2.0 * h)
                }
            };
            boundary.push((r, theta, rp));
        }
        let golden = PI * (3.0 - 5.0_f64.sqrt());
        let mut interior = Vec::with_capacity(INTERIOR_POINTS);
        for i in 0..INTERIOR_POINTS {
            let raw = i as f64 * golden;
            let theta = raw - TAU * (raw / TAU).floor();
            let u = (i as f64 + 0.5) / INTERIOR_POINTS as f64;
            let r = spec.radial_boundary(theta)? * 0.92 * u.sqrt();
            interior.push((r, theta));
        }
        Ok(Colloc { boundary, interior })
    }

    /// Two smallest singular values of the boundary block of the
    /// column-orthonormalized [boundary; interior] basis matrix.
    fn sigma_pair(&self, k: f64, orders: &[usize], m_max: usize, bc: Bc) -> (f64, f64) {
        let orders: Vec<usize> = orders.iter().copied().filter(|&m| m <= m_max).collect();
        let orders = &orders[..];
        let cols: usize = orders.iter().map(|&m| if m == 0 { 1 } else { 2 }).sum();
        let nb = self.boundary.len();
        let rows = nb + self.interior.len();
        let mut a = Mat::zeros(rows, cols);
        for (i, &(r, theta, rp)) in self.boundary.iter().enumerate() {
            let j = bessel_j_int_all(m_max + 1, k * r);
            let norm = 1.0 / (1.0 + (rp / r) * (rp / r)).sqrt();
            let mut c = 0;
            for &m in orders {
                let jm = j[m];
                match bc {
                    Bc::Dirichlet => {
                        a.set(i, c, jm * (m as f64 * theta).cos());
                        if m > 0 {
                            a.set(i, c + 1, jm * (m as f64 * theta).sin());
                        }
                    }
                    Bc::Neumann => {
                        // d/dn = (d/dr - (R'/R^2) d/dtheta) / sqrt(1+(R'/R)^2)
                        let jp = if m == 0 {
                            -j[1]
                        } else {
                            m as f64 / (k * r) * j[m] - j[m + 1]
                        };
                        let (cosm, sinm) = ((m as f64 * theta).cos(), (m as f64 * theta).sin());
                        let dcos = k * jp * cosm - (rp / (r * r)) * (-(m as f64) * jm * sinm);
                        a.set(i, c, dcos * norm);
                        if m > 0 {
                            let dsin = k * jp * sinm - (rp / (r * r)) * (m as f64 * jm * cosm);
                            a.set(i, c + 1, dsin * norm);
                        }
                    }
                }
                c += if m == 0 { 1 } else { 2 };
            }
        }
        for (i, &(r, theta)) in self.interior.iter().enumerate() {
            let j = bessel_j_int_all(m_max + 1, k * r);
            let mut c = 0;
            for &m in orders {
                a.set(nb + i, c, j[m] * (m as f64 * theta).cos());
                if m > 0 {
                    a.set(nb + i, c + 1, j[m] * (m as f64 * theta).sin());
                }
                c += if m == 0 { 1 } else { 2 };
            }
        }
        orthonormalize_columns(&mut a);
        // drop columns annihilated as linearly dependent so they do not fake
        // zero singular values in the boundary block
        let mut keep = Vec::new();
        for c in 0..cols {
            let mut n2 = 0.0;
            for r in 0..rows {
                n2 += a.at(r, c) * a.at(r, c);
            }
            if n2 > 0.25 {
                keep.push(c);
            }
        }
        let mut qb = Mat::zeros(nb, keep.len());
        for (cc, &c) in keep.iter().enumerate() {
            for r in 0..nb {
                qb.set(r, cc, a.at(r, c));
            }
        }
        smallest_two_singular_values(&qb)
    }
}

/// Sweep-and-refine eigenvalue search. Returns (eigenvalues, relative
/// accuracy estimates from a basis-size variation).
fn collocation_eigs(spec: &DomainSpec, count: usize, bc: Bc) -> Result<(Vec<f64>, Vec<f64>)> {
    if count == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let cb = check_convex_balanced(spec)?;
    if !cb.convex || !cb.balanced {
        return Err(Error::Unsupported(
            "collocation solver is restricted to convex balanced domains".into(),
        ));
    }
    let desc = descriptors(spec)?;
    // domain monotonicity: lambda_n <= lambda_n of the inscribed disk, and
    // mu_n < lambda_n, so the inscribed-disk value bounds the sweep above
    let k_hi = disk_eigs(desc.r_minus, count.max(2), Bc::Dirichlet)?
        .last()
        .unwrap()
        .sqrt()
        * 1.02;
    let k_lo = match bc {
        // Faber-Krahn: lambda_1 >= pi j01^2 / vol
        Bc::Dirichlet => 0.93 * bessel_zero(0.0, 1)? * (PI / desc.volume).sqrt(),
        // Payne-Weinberger for convex domains: mu_2 >= pi^2 / D^2
        Bc::Neumann => 0.7 * PI / desc.diameter,
    };
    let big = Colloc::build(spec, BOUNDARY_POINTS)?;
    let small = Colloc::build(spec, 3 * BOUNDARY_POINTS / 4)?;
    let even: Vec<usize> = (0..=M_MAX).step_by(2).collect();
    let odd: Vec<usize> = (1..=M_MAX).step_by(2).collect();
    let mut found: Vec<(f64, f64)> = Vec::new(); // (lambda, accuracy)
    for class in [&even, &odd] {
        let h = (k_hi - k_lo) / SWEEP_STEPS as f64;
        let mut sig: Vec<f64> = Vec::with_capacity(SWEEP_STEPS + 1);
        for i in 0..=SWEEP_STEPS {
            let k = k_lo + h * i as f64;
            sig.push(big.sigma_pair(k, class, M_MAX, bc).0);
        }
        for i in 1..SWEEP_STEPS {
            if sig[i] < sig[i - 1] && sig[i] <= sig[i + 1] && sig[i] < 0.4 {
                let a = k_lo + h * (i - 1) as f64;
                let b = k_lo + h * (i + 1) as f64;
                let f1 = |k: f64| big.sigma_pair(k, class, M_MAX, bc).0;
                // a perturbed degenerate pair can split by less than one
                // sweep step, leaving two dips in the same bracket:
                // subsample before refining each dip separately
                const FINE: usize = 48;
                let fh = (b - a) / FINE as f64;
                let fine: Vec<f64> = (0..=FINE).map(|j| f1(a + fh * j as f64)).collect();
                let mut dips: Vec<f64> = Vec::new();
                for j in 1..FINE {
                    if fine[j] < fine[j - 1] && fine[j] <= fine[j + 1] {
                        let lo = a + fh * (j - 1) as f64;
                        let hi = a + fh * (j + 1) as f64;
                        let (k_star, s_star) = golden_min(&f1, lo, hi, 60);
                        if s_star <= 0.1
                            && dips.iter().all(|&k0| (k0 - k_star).abs() > 1e-8)
                        {
                            dips.push(k_star);
                        }
                    }
                }
                for k_star in dips {
                    let (_, s2) = big.sigma_pair(k_star, class, M_MAX, bc);
                    let lam = k_star * k_star;
                    // self-consistency: re-refine with a smaller basis
                    let f2 = |k: f64| small.sigma_pair(k, class, M_MAX - 4, bc).0;
                    let (k_small, _) = golden_min(&f2, k_star - 0.25 * h, k_star + 0.25 * h, 50);
                    let acc = ((lam - k_small * k_small).abs() / lam).max(1e-9);
                    found.push((lam, acc));
                    if s2 < 0.02 {
                        // degenerate pair inside one symmetry class
                        found.push((lam, acc));
                    }
                }
            }
        }
    }
    found.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    // callers check the length: the Neumann path can repair a short sweep
    // from Rayleigh-Ritz bounds before giving up
    // cluster degenerate values (1e-6 relative) to their mean
    let mut i = 0;
    while i < found.len() {
        let mut j = i + 1;
        while j < found.len() && (found[j].0 - found[i].0).abs() < 1e-6 * found[i].0 {
            j += 1;
        }
        if j > i + 1 {
            let mean = found[i..j].iter().map(|f| f.0).sum::<f64>() / (j - i) as f64;
            for f in &mut found[i..j] {
                f.0 = mean;
            }
        }
        i = j;
    }
    found.truncate(count);
    Ok((
        found.iter().map(|f| f.0).collect(),
        found.iter().map(|f| f.1).collect(),
    ))
}

fn golden_min<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
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

// ---------------------------------------------------------------------------
// Rayleigh-Ritz upper bounds for the low Neumann spectrum
// ---------------------------------------------------------------------------
//
// The sigma sweep above can miss low Neumann dips on elongated domains: at
// small k the Fourier-Bessel columns J_m(kr) with m >= ~kr are numerically
// negligible, so the effective basis is too poor to represent the
// corner-dominated first antisymmetric mode and no dip forms. A Rayleigh-
// Ritz quotient on a polynomial trial space has no such blind spot and is
// certified from above by the min-max principle, so it both repairs the
// sweep (any bound clearly below the smallest sweep value marks a missed
// mode) and provides a standalone mu_2 upper bound.

const RITZ_DEGREE: usize = 14;
const RITZ_THETA_NODES: usize = 512;

struct QuadPt {
    x: f64,
    y: f64,
    w: f64,
}

/// Quadrature over the domain interior, exact for polynomials of total
/// degree 2 * order - 3 or better: fan triangles with a collapsed tensor
/// Gauss rule for polygons, midpoint-angle x Gauss-radius polar rules for
/// star-shaped boundaries.
fn domain_quadrature(spec: &DomainSpec, order: usize) -> Result<Vec<QuadPt>> {
    let (gn, gw) = gauss_legendre(order);
    // the same rule mapped to [0, 1]
    let n01: Vec<f64> = gn.iter().map(|&x| 0.5 * (x + 1.0)).collect();
    let w01: Vec<f64> = gw.iter().map(|&w| 0.5 * w).collect();
    let mut pts = Vec::new();
    match spec {
        DomainSpec::ConvexPolygon { vertices } => {
            let n = vertices.len();
            for i in 0..n {
                let v1 = vertices[i];
                let v2 = vertices[(i + 1) % n];
                // triangle (origin, v1, v2); x = s v1 + (1-s) t v2 collapses
                // the unit square onto the simplex with Jacobian (1-s)
                let two_area = (v1[0] * v2[1] - v1[1] * v2[0]).abs();
                for (&s, &ws) in n01.iter().zip(&w01) {
                    for (&t, &wt) in n01.iter().zip(&w01) {
                        let xi = s;
                        let eta = (1.0 - s) * t;
                        pts.push(QuadPt {
                            x: xi * v1[0] + eta * v2[0],
                            y: xi * v1[1] + eta * v2[1],
                            w: ws * wt * (1.0 - s) * two_area,
                        });
                    }
                }
            }
        }
        DomainSpec::Ball { dim: 2, .. } | DomainSpec::StarShaped { .. } => {
            let dth = TAU / RITZ_THETA_NODES as f64;
            for i in 0..RITZ_THETA_NODES {
                let theta = dth * (i as f64 + 0.5);
                let rb = spec.radial_boundary(theta)?;
                let (ct, st) = (theta.cos(), theta.sin());
                for (&u, &wu) in n01.iter().zip(&w01) {
                    let r = rb * u;
                    pts.push(QuadPt {
                        x: r * ct,
                        y: r * st,
                        w: wu * rb * r * dth,
                    });
                }
            }
        }
        _ => {
            return Err(Error::Unsupported(
                "interior quadrature available for planar star-shaped and polygonal domains"
                    .into(),
            ))
        }
    }
    Ok(pts)
}

/// Legendre values and derivatives P_0..P_p, P'_0..P'_p at x.
fn legendre_all(p: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let mut vals = Vec::with_capacity(p + 1);
    let mut ders = Vec::with_capacity(p + 1);
    vals.push(1.0);
    ders.push(0.0);
    if p == 0 {
        return (vals, ders);
    }
    vals.push(x);
    ders.push(1.0);
    for k in 1..p {
        let kf = k as f64;
        vals.push(((2.0 * kf + 1.0) * x * vals[k] - kf * vals[k - 1]) / (kf + 1.0));
        ders.push(ders[k - 1] + (2.0 * kf + 1.0) * vals[k]);
    }
    (vals, ders)
}

/// Merged-parity Rayleigh-Ritz upper bounds for the lowest nonzero Neumann
/// eigenvalues, ascending. Trial space: products P_a(u) P_b(v) of total
/// degree <= p in coordinates aligned with the domain's principal axes and
/// scaled by its half-extents, split into parity classes (eigenfunctions of
/// a balanced domain split the same way) and projected orthogonal to
/// constants.
fn ritz_neumann_low(spec: &DomainSpec, p: usize) -> Result<Vec<f64>> {
    let pts = domain_quadrature(spec, p + 2)?;
    // principal axes of the area (the domain is centered by balance)
    let (mut ixx, mut iyy, mut ixy, mut area) = (0.0, 0.0, 0.0, 0.0);
    for q in &pts {
        ixx += q.w * q.x * q.x;
        iyy += q.w * q.y * q.y;
        ixy += q.w * q.x * q.y;
        area += q.w;
    }
    let phi = 0.5 * (2.0 * ixy).atan2(ixx - iyy);
    let (cp, sp) = (phi.cos(), phi.sin());
    // half-extents along the principal axes, from the boundary
    let (mut su, mut sv) = (0.0_f64, 0.0_f64);
    for i in 0..256 {
        let theta = TAU * (i as f64 + 0.5) / 256.0;
        let r = spec.radial_boundary(theta)?;
        let (x, y) = (r * theta.cos(), r * theta.sin());
        su = su.max((x * cp + y * sp).abs());
        sv = sv.max((-x * sp + y * cp).abs());
    }
    let mut merged: Vec<f64> = Vec::new();
    for parity in 0..2usize {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for a in 0..=p {
            for b in 0..=(p - a) {
                if (a + b) % 2 == parity && a + b > 0 {
                    pairs.push((a, b));
                }
            }
        }
        let n = pairs.len();
        let mut mass = Mat::zeros(n, n);
        let mut stiff = Mat::zeros(n, n);
        let mut mean = alloc::vec![0.0; n];
        let mut val = alloc::vec![0.0; n];
        let mut gx = alloc::vec![0.0; n];
        let mut gy = alloc::vec![0.0; n];
        for q in &pts {
            let u = (q.x * cp + q.y * sp) / su;
            let v = (-q.x * sp + q.y * cp) / sv;
            let (pu, du) = legendre_all(p, u);
            let (pv, dv) = legendre_all(p, v);
            for (i, &(a, b)) in pairs.iter().enumerate() {
                val[i] = pu[a] * pv[b];
                // chain rule through the rotation and scaling
                let fu = du[a] * pv[b] / su;
                let fv = pu[a] * dv[b] / sv;
                gx[i] = fu * cp - fv * sp;
                gy[i] = fu * sp + fv * cp;
            }
            for i in 0..n {
                let (wv, wgx, wgy) = (q.w * val[i], q.w * gx[i], q.w * gy[i]);
                mean[i] += wv;
                for j in i..n {
                    mass.data[i * n + j] += wv * val[j];
                    stiff.data[i * n + j] += wgx * gx[j] + wgy * gy[j];
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                // project the trial functions orthogonal to constants:
                // (psi_i - m_i/A, psi_j - m_j/A) = M_ij - m_i m_j / A
                let mij = mass.data[i * n + j] - mean[i] * mean[j] / area;
                let kij = stiff.data[i * n + j];
                mass.data[i * n + j] = mij;
                mass.data[j * n + i] = mij;
                stiff.data[j * n + i] = kij;
            }
        }
        // generalized problem K c = mu M c on the numerically independent
        // part of the trial space (a subspace, so still upper bounds)
        let (mlam, mvec) = symmetric_eigen(&mass);
        let lmax = mlam.last().copied().unwrap_or(0.0);
        let keep: Vec<usize> = (0..n).filter(|&i| mlam[i] > 1e-12 * lmax).collect();
        let m = keep.len();
        if m == 0 {
            continue;
        }
        let mut b = Mat::zeros(n, m);
        for (c, &i) in keep.iter().enumerate() {
            let scale = 1.0 / mlam[i].sqrt();
            for r in 0..n {
                b.set(r, c, mvec.at(r, i) * scale);
            }
        }
        // A = B^T K B
        let mut kb = Mat::zeros(n, m);
        for r in 0..n {
            for c in 0..m {
                let mut s = 0.0;
                for t in 0..n {
                    s += stiff.at(r, t) * b.at(t, c);
                }
                kb.set(r, c, s);
            }
        }
        let mut a = Mat::zeros(m, m);
        for r in 0..m {
            for c in 0..m {
                let mut s = 0.0;
                for t in 0..n {
                    s += b.at(t, r) * kb.at(t, c);
                }
                a.set(r, c, s);
            }
        }
        let rho = symmetric_eigenvalues(&a);
        merged.extend(rho.iter().take(8).map(|&x| x.max(0.0)));
    }
    merged.sort_by(|x, y| x.partial_cmp(y).unwrap());
    merged.truncate(8);
    if merged.is_empty() {
        return Err(Error::NonConvergence {
            what: "Rayleigh-Ritz trial space collapsed".into(),
            residual: f64::NAN,
        });
    }
    Ok(merged)
}

/// Upper bound for the first nonzero Neumann eigenvalue mu_2, with a
/// relative accuracy estimate. Closed forms for the disk and rectangle;
/// otherwise a Rayleigh-Ritz bound whose accuracy is the change under a
/// trial-degree reduction.
pub fn neumann_mu2(spec: &DomainSpec) -> Result<(f64, f64)> {
    spec.validate()?;
    match spec {
        DomainSpec::Ball { dim: 2, radius } => {
            let z = bessel_prime_zero(1.0, 1)?;
            Ok(((z / radius) * (z / radius), 1e-12))
        }
        DomainSpec::Rectangle { half_sides } if half_sides.len() == 2 => {
            let a = half_sides[0].max(half_sides[1]);
            Ok(((PI / (2.0 * a)) * (PI / (2.0 * a)), 1e-12))
        }
        DomainSpec::StarShaped { .. } | DomainSpec::ConvexPolygon { .. } => {
            let cb = check_convex_balanced(spec)?;
            if !cb.convex || !cb.balanced {
                return Err(Error::Unsupported(
                    "Neumann bounds are restricted to convex balanced domains".into(),
                ));
            }
            let hi = ritz_neumann_low(spec, RITZ_DEGREE)?;
            let lo = ritz_neumann_low(spec, RITZ_DEGREE - 2)?;
            let v = hi[0];
            let acc = ((lo[0] - v).abs() / v.max(1e-300)).max(1e-10);
            Ok((v, acc))
        }
        _ => Err(Error::Unsupported(
            "mu_2 available for the planar disk, rectangle, convex star-shaped and polygonal domains"
                .into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// Inequality report
// ---------------------------------------------------------------------------

/// One evaluated inequality with its margin (lhs - rhs; >= 0 passes up to
/// the solver tolerance).
#[derive(Debug, Clone)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct InequalityReport {
    pub kappa: f64,
    pub max_kappa1: f64,
    pub dirichlet: Vec<f64>,
    pub neumann: Vec<f64>,
    pub checks: Vec<InequalityCheck>,
}

impl InequalityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Evaluates the spectral/null-variety inequalities:
/// kappa >= sqrt(mu_2); kappa >= 2 sqrt(mu_2); mu_{n+1} < lambda_n for
/// n <= 5; max_e kappa_1(e) >= sqrt(mu_3); and the conditional
/// mu_{n+2} <= lambda_n whenever kappa <= 2 sqrt(lambda_n).
pub fn inequality_checks(spec: &DomainSpec) -> Result<InequalityReport> {
    let lam_res = dirichlet_eigs(spec, 6)?;
    let mu_res = neumann_eigs(spec, 8)?;
    let lam = &lam_res.dirichlet;
    let mu = &mu_res.neumann;
    let res = nullvariety::kappa_with(spec, 240, 1024)?;
    let kappa = match res.kappa {
        nullvariety::RootResult::Root(r) => r,
        nullvariety::RootResult::Exceeds(b) => {
            return Err(Error::NonConvergence {
                what: "no null-variety point found below the search bound".into(),
                residual: b,
            })
        }
    };
    let max_kappa1 = nullvariety::null_curve_with(spec, 90, 1024)?
        .iter()
        .map(|&(_, r)| r)
        .fold(0.0_f64, f64::max);
    // tolerance: numerical slack plus the solvers' own accuracy estimates
    let tol = |i: usize, res: &SpectrumResult, seq: &[f64]| -> f64 {
        1e-9 * seq[i].max(1.0) + res.accuracy.get(i).copied().unwrap_or(0.0) * seq[i]
    };
    let kappa_tol = 1e-7 * kappa;
    let mut checks = Vec::new();
    let mut push = |name: String, lhs: f64, rhs: f64, slack: f64| {
        checks.push(InequalityCheck {
            name,
            lhs,
            rhs,
            margin: lhs - rhs,
            pass: lhs - rhs >= -slack,
        });
    };
    let mu2 = mu[1];
    let s_mu2 = 0.5 * tol(1, &mu_res, mu) / mu2.sqrt().max(1e-12);
    push("kappa >= sqrt(mu2)".into(), kappa, mu2.sqrt(), kappa_tol + s_mu2);
    push(
        "kappa >= 2 sqrt(mu2)".into(),
        kappa,
        2.0 * mu2.sqrt(),
        kappa_tol + 2.0 * s_mu2,
    );
    for n in 1..=5usize {
        push(
            format!("mu_{} < lambda_{}", n + 1, n),
            lam[n - 1],
            mu[n],
            tol(n - 1, &lam_res, lam) + tol(n, &mu_res, mu),
        );
    }
    let s_mu3 = 0.5 * tol(2, &mu_res, mu) / mu[2].sqrt().max(1e-12);
    push(
        "max_e kappa1(e) >= sqrt(mu3)".into(),
        max_kappa1,
        mu[2].sqrt(),
        kappa_tol + s_mu3,
    );
    for n in 1..=5usize {
        let lam_n = lam[n - 1];
        if kappa <= 2.0 * lam_n.sqrt() + kappa_tol {
            push(
                format!("mu_{} <= lambda_{} (kappa <= 2 sqrt(lambda_{}))", n + 2, n, n),
                lam_n,
                mu[n + 1],
                tol(n - 1, &lam_res, lam) + tol(n + 1, &mu_res, mu),
            );
        }
    }
    Ok(InequalityReport {
        kappa,
        max_kappa1,
        dirichlet: lam.clone(),
        neumann: mu.clone(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::RadialProfile;

    fn disk() -> DomainSpec {
        DomainSpec::Ball { dim: 2, radius: 1.0 }
    }

    #[test]
    fn disk_closed_forms() {
        let d = dirichlet_eigs(&disk(), 5).unwrap();
        let j01 = bessel_zero(0.0, 1).unwrap();
        let j11 = bessel_zero(1.0, 1).unwrap();
        assert_eq!(d.method, Method::ClosedForm);
        assert!((d.dirichlet[0] - j01 * j01).abs() < 1e-12);
        assert!((d.dirichlet[1] - j11 * j11).abs() < 1e-12);
        assert_eq!(d.dirichlet[1], d.dirichlet[2]);
        assert!((d.dirichlet[1] - 14.68197).abs() < 1e-4);
        let n = neumann_eigs(&disk(), 4).unwrap();
        assert_eq!(n.neumann[0], 0.0);
        let jp11 = bessel_prime_zero(1.0, 1).unwrap();
        assert!((jp11 - 1.84118).abs() < 1e-5);
        assert!((n.neumann[1] - jp11 * jp11).abs() < 1e-12);
        assert_eq!(n.neumann[1], n.neumann[2]);
    }

    #[test]
    fn rectangle_closed_forms() {
        let rect = DomainSpec::Rectangle { half_sides: vec![1.0, 0.5] };
        let d = dirichlet_eigs(&rect, 3).unwrap();
        let lam1 = PI * PI * (0.25 + 1.0);
        assert!((d.dirichlet[0] - lam1).abs() < 1e-12);
        assert!((d.dirichlet[1] - 2.0 * PI * PI).abs() < 1e-12);
        let n = neumann_eigs(&rect, 3).unwrap();
        assert_eq!(n.neumann[0], 0.0);
        assert!((n.neumann[1] - PI * PI / 4.0).abs() < 1e-12);
        let square = DomainSpec::Rectangle { half_sides: vec![0.5, 0.5] };
        let ns = neumann_eigs(&square, 3).unwrap();
        assert!((ns.neumann[1] - PI * PI).abs() < 1e-12);
        assert_eq!(ns.neumann[1], ns.neumann[2]);
    }

    #[test]
    fn faber_krahn_and_ppw() {
        let j01 = bessel_zero(0.0, 1).unwrap();
        let j11 = bessel_zero(1.0, 1).unwrap();
        for spec in [
            disk(),
            DomainSpec::Rectangle { half_sides: vec![1.0, 0.5] },
            crate::domains::regular_polygon(6, 1.0),
        ] {
            let d = dirichlet_eigs(&spec, 2).unwrap();
            let fk = PI * j01 * j01 / spec.volume();
            assert!(d.dirichlet[0] >= fk - 1e-4 * fk, "Faber-Krahn");
            assert!(d.dirichlet[1] < 3.0 * d.dirichlet[0], "PPW");
            assert!(
                d.dirichlet[1] / d.dirichlet[0] <= (j11 / j01) * (j11 / j01) + 1e-6,
                "Ashbaugh-Benguria"
            );
        }
    }

    #[test]
    fn collocation_recovers_disk() {
        // epsilon = 0 star is the unit disk
        let star = DomainSpec::StarShaped {
            profile: RadialProfile::new(vec![1.0], vec![]),
            epsilon: 0.0,
        };
        let d = dirichlet_eigs(&star, 4).unwrap();
        assert_eq!(d.method, Method::Collocation);
        let exact = disk_eigs(1.0, 4, Bc::Dirichlet).unwrap();
        for (got, want) in d.dirichlet.iter().zip(&exact) {
            assert!(
                (got - want).abs() < 1e-4 * want,
                "dirichlet {got} vs {want}"
            );
        }
        let n = neumann_eigs(&star, 4).unwrap();
        let exact = disk_eigs(1.0, 4, Bc::Neumann).unwrap();
        for (got, want) in n.neumann.iter().zip(&exact) {
            assert!(
                (got - want).abs() < 1e-4 * want.max(1.0),
                "neumann {got} vs {want}"
            );
        }
    }

    #[test]
    fn collocation_perturbed_star_scaling() {
        let star = DomainSpec::StarShaped {
            profile: RadialProfile::new(vec![1.0], vec![]),
            epsilon: 0.08,
        };
        let d = dirichlet_eigs(&star, 2).unwrap();
        // eigenvalues near the disk values, shifted by O(epsilon)
        let j01 = bessel_zero(0.0, 1).unwrap();
        assert!((d.dirichlet[0] - j01 * j01).abs() < 1.5 * j01 * j01 * 0.2);
        // accuracy estimate is honest: self-consistency within the target
        assert!(d.accuracy[0] < 1e-3, "accuracy {}", d.accuracy[0]);
        // PPW still holds
        assert!(d.dirichlet[1] < 3.0 * d.dirichlet[0]);
    }

    #[test]
    fn ritz_mu2_matches_disk_and_rectangle() {
        // disk via the Ritz path (epsilon = 0 star): mu_2 = p11^2
        let star = DomainSpec::StarShaped {
            profile: RadialProfile::new(vec![1.0], vec![]),
            epsilon: 0.0,
        };
        let exact = bessel_prime_zero(1.0, 1).unwrap().powi(2);
        let (mu2, acc) = neumann_mu2(&star).unwrap();
        assert!(mu2 >= exact - 1e-9, "Ritz must bound from above: {mu2} vs {exact}");
        assert!((mu2 - exact).abs() < 1e-7 * exact, "mu2 {mu2} vs {exact}");
        assert!(acc < 1e-6, "accuracy estimate {acc}");

        // 2 x 1 rectangle via the polygon path: mu_2 = (pi/2)^2
        let rect = DomainSpec::ConvexPolygon {
            vertices: vec![[1.0, -0.5], [1.0, 0.5], [-1.0, 0.5], [-1.0, -0.5]],
        };
        let exact = (PI / 2.0) * (PI / 2.0);
        let (mu2, _) = neumann_mu2(&rect).unwrap();
        assert!(mu2 >= exact - 1e-10);
        assert!((mu2 - exact).abs() < 1e-9 * exact, "mu2 {mu2} vs {exact}");
    }

    #[test]
    fn neumann_sweep_repair_on_elongated_parallelogram() {
        // An elongated parallelogram where the sigma sweep alone misses the
        // first antisymmetric mode entirely; the merged result must satisfy
        // Payne-Weinberger from below and the Ritz bound from above.
        let spec = DomainSpec::ConvexPolygon {
            vertices: vec![
                [-0.35023624484463656, -0.43844625362398304],
                [0.57738940661271, -1.4350659494297915],
                [0.35023624484463656, 0.43844625362398304],
                [-0.57738940661271, 1.4350659494297915],
            ],
        };
        let (bound, acc) = neumann_mu2(&spec).unwrap();
        assert!(bound < 2.45, "Ritz bound {bound}");
        assert!(acc < 1e-4, "accuracy estimate {acc}");
        let res = neumann_eigs(&spec, 2).unwrap();
        let mu2 = res.neumann[1];
        let d = descriptors(&spec).unwrap().diameter;
        assert!(mu2 >= PI * PI / (d * d) - 1e-9, "Payne-Weinberger: {mu2}");
        assert!(mu2 <= bound * (1.0 + 1e-9), "merged mu2 {mu2} above bound {bound}");
    }

    #[test]
    fn octagon_neumann_multiplicity_repaired() {
        // On the regular octagon the Neumann sigma dips bottom out around
        // 0.07-0.17 (corner-singular eigenfunctions), so the sweep alone
        // counts each degenerate pair once and drops one mode entirely;
        // the Ritz reconciliation must restore the full low spectrum.
        let spec = crate::domains::regular_polygon(8, 1.3);
        let res = neumann_eigs(&spec, 8).unwrap();
        let mu = &res.neumann;
        assert_eq!(mu[0], 0.0);
        // C8 symmetry: mu_2/mu_3 and mu_4/mu_5 are degenerate pairs
        assert!((mu[1] - mu[2]).abs() < 1e-3 * mu[1], "{mu:?}");
        assert!((mu[3] - mu[4]).abs() < 1e-3 * mu[3], "{mu:?}");
        // ascending and below the Dirichlet spectrum (mu_{n+1} < lambda_n)
        let lam = dirichlet_eigs(&spec, 5).unwrap().dirichlet;
        for n in 1..=5 {
            assert!(mu[n] < lam[n - 1], "interlacing at n = {n}: {mu:?} vs {lam:?}");
        }
        // Payne-Weinberger lower bound for convex domains
        let d = descriptors(&spec).unwrap().diameter;
        assert!(mu[1] >= PI * PI / (d * d));
    }

    #[test]
    fn inequality_report_disk_and_rect() {
        let rep = inequality_checks(&disk()).unwrap();
        assert!((rep.kappa - 3.8317059702).abs() < 1e-6);
        let filonov = rep
            .checks
            .iter()
            .find(|c| c.name == "kappa >= 2 sqrt(mu2)")
            .unwrap();
        assert!((filonov.rhs - 3.6824).abs() < 1e-4);
        assert!(rep.all_pass(), "{:?}", rep.checks);

        let rect = DomainSpec::Rectangle { half_sides: vec![1.0, 0.5] };
        let rep = inequality_checks(&rect).unwrap();
        let filonov = rep
            .checks
            .iter()
            .find(|c| c.name == "kappa >= 2 sqrt(mu2)")
            .unwrap();
        // equality case: kappa = pi = 2 sqrt(pi^2/4)
        assert!(filonov.margin.abs() < 1e-8, "margin {}", filonov.margin);
        assert!(rep.all_pass(), "{:?}", rep.checks);
    }

    #[test]
    fn eigenvalues_scale_as_inverse_square() {
        let d1 = dirichlet_eigs(&DomainSpec::Ball { dim: 2, radius: 1.0 }, 3).unwrap();
        let d2 = dirichlet_eigs(&DomainSpec::Ball { dim: 2, radius: 2.0 }, 3).unwrap();
        for (a, b) in d1.dirichlet.iter().zip(&d2.dirichlet) {
            assert!((a / b - 4.0).abs() < 1e-12);
        }
    }
}
