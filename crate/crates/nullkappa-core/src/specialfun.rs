//! Bessel functions of the first kind (integer and half-integer order),
//! their positive zeros, Struve functions H0 and H1, and the closed-form
//! antiderivatives of J1, r*J1, r^2*J1.
//!
//! Working ranges: orders 0, 1/2, 1, ..., up to [`MAX_ORDER`], arguments
//! well beyond the ~8.65 the integral estimates need. Small arguments use
//! the ascending series; larger arguments use normalized backward
//! recurrence (integer orders) or the spherical-Bessel recurrence
//! (half-integer orders), both accurate to close to machine precision.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Largest supported Bessel order.
pub const MAX_ORDER: f64 = 50.0;

/// Largest supported zero index for [`bessel_zero`].
pub const MAX_ZERO_INDEX: u32 = 100;

const SERIES_CUTOFF: f64 = 2.0;

/// J_nu(x) for nu a non-negative integer or half-integer, x >= 0.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check_order(nu)?;
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("bessel_j needs finite x >= 0, got {x}")));
    }
    let twice = (2.0 * nu).round() as u32;
    Ok(if twice % 2 == 0 {
        bessel_j_int(twice / 2, x)
    } else {
        bessel_j_half((twice - 1) / 2, x)
    })
}

/// Derivative J_nu'(x), from J_nu' = (nu/x) J_nu - J_{nu+1}.
pub fn bessel_j_prime(nu: f64, x: f64) -> Result<f64> {
    check_order(nu)?;
    if nu == 0.0 {
        return Ok(-bessel_j(1.0, x)?);
    }
    if x == 0.0 {
        // J_nu'(0) = 1/2 for nu = 1, else 0 for nu > 1; nu = 1/2 diverges
        // but is never queried here.
        return Ok(if nu == 1.0 { 0.5 } else { 0.0 });
    }
    Ok(nu / x * bessel_j(nu, x)? - bessel_j(nu + 1.0, x)?)
}

fn check_order(nu: f64) -> Result<()> {
    let twice = 2.0 * nu;
    if !(0.0..=2.0 * MAX_ORDER).contains(&twice) || (twice - twice.round()).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "order must be a non-negative integer or half-integer <= {MAX_ORDER}, got {nu}"
        )));
    }
    Ok(())
}

/// J_0, J_1, ..., J_{n_max} at a common argument, in one backward recurrence.
pub fn bessel_j_int_all(n_max: usize, x: f64) -> Vec<f64> {
    if x == 0.0 {
        let mut out = vec![0.0; n_max + 1];
        out[0] = 1.0;
        return out;
    }
    if x < SERIES_CUTOFF {
        return (0..=n_max).map(|n| series(n as f64, x)).collect();
    }
    miller_all(n_max, x)
}

fn bessel_j_int(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x < SERIES_CUTOFF {
        return series(n as f64, x);
    }
    miller_all(n as usize, x)[n as usize]
}

/// J_{h + 1/2}(x) via spherical Bessel functions.
fn bessel_j_half(h: u32, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x < SERIES_CUTOFF {
        return series(h as f64 + 0.5, x);
    }
    let l = h as usize;
    // Downward recurrence for spherical j_l, normalized against whichever
    // of j_0, j_1 is away from a zero.
    let start = l + 20 + (x as usize) + 2 * (x.sqrt() as usize);
    let mut next = 0.0_f64;
    let mut cur = 1e-290_f64;
    let mut jl = 0.0;
    let mut j1 = 0.0;
    let mut j0 = 0.0;
    for k in (0..=start).rev() {
        let prev = (2.0 * k as f64 + 3.0) / x * cur - next;
        next = cur;
        cur = prev;
        if k == l {
            jl = cur;
        }
        if cur.abs() > 1e280 {
            cur *= 1e-280;
            next *= 1e-280;
            jl *= 1e-280;
        }
        if k == 1 {
            j1 = cur;
        }
        if k == 0 {
            j0 = cur;
        }
    }
    let s0 = x.sin() / x;
    let s1 = x.sin() / (x * x) - x.cos() / x;
    let scale = if j0.abs() >= j1.abs() { s0 / j0 } else { s1 / j1 };
    jl * scale * (2.0 * x / core::f64::consts::PI).sqrt()
}

/// Ascending series, valid for any supported order; used for small x.
fn series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    // t0 = (x/2)^nu / Gamma(nu+1)
    let mut t = half.powf(nu) / gamma_one_plus(nu);
    let q = -half * half;
    let mut sum = t;
    let mut m = 1.0;
    loop {
        t *= q / (m * (nu + m));
        sum += t;
        if t.abs() < 1e-18 * sum.abs().max(1e-300) || m > 60.0 {
            break;
        }
        m += 1.0;
    }
    sum
}

/// Gamma(1 + nu) for nu a non-negative integer or half-integer.
pub fn gamma_one_plus(nu: f64) -> f64 {
    let twice = (2.0 * nu).round() as u32;
    if twice % 2 == 0 {
        let mut g = 1.0;
        for i in 1..=(twice / 2) {
            g *= i as f64;
        }
        g
    } else {
        // Gamma(m + 3/2) = (m + 1/2)(m - 1/2)...(1/2) * sqrt(pi)
        let m = (twice - 1) / 2;
        let mut g = core::f64::consts::PI.sqrt();
        for i in 0..=m {
            g *= i as f64 + 0.5;
        }
        g
    }
}

/// Backward (Miller) recurrence normalized by J_0 + 2 J_2 + 2 J_4 + ... = 1.
fn miller_all(n_max: usize, x: f64) -> Vec<f64> {
    let start0 = n_max.max(x as usize) + 20 + 2 * (x.sqrt() as usize);
    let start = start0 + (start0 % 2); // even start
    let mut out = vec![0.0; n_max + 1];
    let mut next = 0.0_f64;
    let mut cur = 1e-290_f64;
    let mut norm = 0.0;
    for k in (0..=start).rev() {
        let prev = 2.0 * (k as f64 + 1.0) / x * cur - next;
        next = cur;
        cur = prev;
        // `cur` now holds the unnormalized J_k.
        if k <= n_max {
            out[k] = cur;
        }
        if k % 2 == 0 {
            norm += if k == 0 { cur } else { 2.0 * cur };
        }
        if cur.abs() > 1e280 {
            cur *= 1e-280;
            next *= 1e-280;
            norm *= 1e-280;
            for v in out.iter_mut() {
                *v *= 1e-280;
            }
        }
    }
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// k-th positive zero j_{nu,k} of J_nu.
///
/// Zeros are located by a sign-change scan starting just above nu (all
/// positive zeros exceed nu and are separated by more than the scan step),
/// then polished by bisection and Newton steps.
pub fn bessel_zero(nu: f64, k: u32) -> Result<f64> {
    check_order(nu)?;
    if k == 0 || k > MAX_ZERO_INDEX {
        return Err(Error::Domain(format!(
            "zero index must be in 1..={MAX_ZERO_INDEX}, got {k}"
        )));
    }
    find_kth_zero(|x| bessel_j(nu, x).unwrap(), |x| bessel_j_prime(nu, x).unwrap(), nu, k)
}

/// k-th positive zero of J_nu' (integer nu), as needed for Neumann disk
/// eigenvalues. Follows the usual convention that for nu = 0 the zeros of
/// J_0' = -J_1 are the positive zeros of J_1 (x = 0 is not counted).
pub fn bessel_prime_zero(nu: f64, k: u32) -> Result<f64> {
    check_order(nu)?;
    if k == 0 || k > MAX_ZERO_INDEX {
        return Err(Error::Domain(format!(
            "zero index must be in 1..={MAX_ZERO_INDEX}, got {k}"
        )));
    }
    if nu == 0.0 {
        return bessel_zero(1.0, k);
    }
    // J_nu'' from the Bessel ODE: x^2 J'' + x J' + (x^2 - nu^2) J = 0.
    let d2 = move |x: f64| {
        let j = bessel_j(nu, x).unwrap();
        let jp = bessel_j_prime(nu, x).unwrap();
        -(x * jp + (x * x - nu * nu) * j) / (x * x)
    };
    find_kth_zero(|x| bessel_j_prime(nu, x).unwrap(), d2, nu * 0.9, k)
}

fn find_kth_zero<F, G>(f: F, df: G, lower: f64, k: u32) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let step = core::f64::consts::PI / 8.0;
    let mut x = lower.max(step * 0.5);
    let mut fx = f(x);
    // Skip a possible zero-grazing start.
    while fx == 0.0 {
        x += 1e-9;
        fx = f(x);
    }
    let mut found = 0;
    for _ in 0..200_000 {
        let x2 = x + step;
        let f2 = f(x2);
        if fx * f2 <= 0.0 && f2 != fx {
            found += 1;
            if found == k {
                return Ok(polish_zero(&f, &df, x, x2));
            }
        }
        x = x2;
        fx = f2;
    }
    Err(Error::NonConvergence {
        what: format!("zero scan (index {k})"),
        residual: fx,
    })
}

fn polish_zero<F, G>(f: &F, df: &G, mut a: f64, mut b: f64) -> f64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
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
        if (b - a) < 1e-13 * b.abs().max(1.0) {
            break;
        }
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..4 {
        let d = df(x);
        if d == 0.0 {
            break;
        }
        let nx = x - f(x) / d;
        if nx.is_finite() && nx > a - 1.0 && nx < b + 1.0 {
            x = nx;
        }
    }
    x
}

/// Cache of Bessel zeros keyed by (2*order, index).
#[derive(Debug, Default, Clone)]
pub struct BesselZeroTable {
    entries: BTreeMap<(u32, u32), f64>,
}

impl BesselZeroTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// j_{nu,k}, computing and caching on first use.
    pub fn get(&mut self, nu: f64, k: u32) -> Result<f64> {
        check_order(nu)?;
        let key = ((2.0 * nu).round() as u32, k);
        if let Some(&v) = self.entries.get(&key) {
            return Ok(v);
        }
        let v = bessel_zero(nu, k)?;
        self.entries.insert(key, v);
        Ok(v)
    }
}

/// Struve function H_n(x) for n in {0, 1}, by ascending power series.
///
/// The series is used only on [0, 4*pi]; the integral-estimate constants
/// need arguments up to 2*pi.
pub fn struve_h(n: u32, x: f64) -> Result<f64> {
    if n > 1 {
        return Err(Error::Domain(format!("struve_h supports n in {{0,1}}, got {n}")));
    }
    let max_x = 4.0 * core::f64::consts::PI;
    if !(0.0..=max_x + 1e-12).contains(&x) {
        return Err(Error::Domain(format!(
            "struve_h argument must lie in [0, 4*pi], got {x}"
        )));
    }
    let nf = n as f64;
    let half = 0.5 * x;
    // t0 = (x/2)^(n+1) / (Gamma(3/2) Gamma(n + 3/2))
    let mut t = half.powi(n as i32 + 1) / (gamma_one_plus(0.5) * gamma_one_plus(nf + 0.5));
    let q = -half * half;
    let mut sum = t;
    let mut m = 1.0;
    loop {
        t *= q / ((m + 0.5) * (m + nf + 0.5));
        sum += t;
        if t.abs() < 1e-18 * sum.abs().max(1e-300) || m > 80.0 {
            break;
        }
        m += 1.0;
    }
    Ok(sum)
}

/// The three antiderivative-based moments of J1 on [0, x].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselMoments {
    /// Integral of J1(t) dt = 1 - J0(x).
    pub i0: f64,
    /// Integral of t J1(t) dt = (pi x / 2)(J1(x) H0(x) - J0(x) H1(x)).
    pub i1: f64,
    /// Integral of t^2 J1(t) dt = x^2 J2(x).
    pub i2: f64,
}

/// Closed-form moments of J1 over [0, x].
pub fn bessel_moments(x: f64) -> Result<BesselMoments> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("bessel_moments needs x >= 0, got {x}")));
    }
    let j0 = bessel_j(0.0, x)?;
    let j1 = bessel_j(1.0, x)?;
    let j2 = bessel_j(2.0, x)?;
    let h0 = struve_h(0, x)?;
    let h1 = struve_h(1, x)?;
    let pi = core::f64::consts::PI;
    Ok(BesselMoments {
        i0: 1.0 - j0,
        i1: 0.5 * pi * x * (j1 * h0 - j0 * h1),
        i2: x * x * j2,
    })
}

/// Antiderivative of t J1(t): (pi x / 2)(J1 H0 - J0 H1)(x).
///
/// Only valid where the Struve series is ([0, 4*pi]).
pub fn xj1_antiderivative(x: f64) -> Result<f64> {
    Ok(bessel_moments(x)?.i1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_at_zero_is_one() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(3.0, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(0.5, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn known_reference_values() {
        // Abramowitz & Stegun style reference points.
        assert!((bessel_j(0.0, 1.0).unwrap() - 0.7651976865579666).abs() < 1e-14);
        assert!((bessel_j(1.0, 1.0).unwrap() - 0.4400505857449335).abs() < 1e-14);
        assert!((bessel_j(2.0, 5.0).unwrap() - 0.04656511627775222).abs() < 1e-13);
        assert!((bessel_j(0.0, 10.0).unwrap() + 0.2459357644513483).abs() < 1e-13);
        // J_{1/2}(x) = sqrt(2/(pi x)) sin x
        let x = 3.7_f64;
        let exact = (2.0 / (core::f64::consts::PI * x)).sqrt() * x.sin();
        assert!((bessel_j(0.5, x).unwrap() - exact).abs() < 1e-14);
        // J_{3/2}(x) = sqrt(2/(pi x)) (sin x / x - cos x)
        let exact32 = (2.0 / (core::f64::consts::PI * x)).sqrt() * (x.sin() / x - x.cos());
        assert!((bessel_j(1.5, x).unwrap() - exact32).abs() < 1e-14);
    }

    #[test]
    fn large_argument_values() {
        // J_0(50) and J_1(50), 16-digit references.
        assert!((bessel_j(0.0, 50.0).unwrap() - 0.05581232766925181).abs() < 1e-13);
        assert!((bessel_j(1.0, 50.0).unwrap() + 0.09751182812517514).abs() < 1e-13);
    }

    #[test]
    fn paper_table_zero_values() {
        assert!((bessel_zero(1.0, 1).unwrap() - 3.831705970).abs() < 1e-8);
        assert!((bessel_zero(0.0, 3).unwrap() - 8.653727913).abs() < 1e-8);
        assert!((bessel_zero(1.0, 2).unwrap() - 7.015586670).abs() < 1e-8);
        assert!((bessel_zero(0.0, 1).unwrap() - 2.404825557695773).abs() < 1e-12);
    }

    #[test]
    fn j1_vanishes_at_j11() {
        assert!(bessel_j(1.0, 3.831705970).unwrap().abs() < 1e-9);
    }

    #[test]
    fn j0_at_j11_matches_minus_a() {
        // A = -J_0(j_{1,1}) ~ 0.4028 (the paper rounds it to 0.408).
        let j11 = bessel_zero(1.0, 1).unwrap();
        let a = -bessel_j(0.0, j11).unwrap();
        assert!((a - 0.4028).abs() < 1e-4);
    }

    #[test]
    fn zeros_satisfy_residual_bound() {
        for &nu in &[0.0, 0.5, 1.0, 1.5, 2.0, 5.0, 15.0] {
            for k in 1..=10 {
                let z = bessel_zero(nu, k).unwrap();
                assert!(
                    bessel_j(nu, z).unwrap().abs() <= 1e-12,
                    "residual too large at nu={nu} k={k}"
                );
                assert!(z > nu);
            }
        }
    }

    #[test]
    fn zeros_increase_in_k() {
        let mut table = BesselZeroTable::new();
        for &nu in &[0.0, 1.0, 2.5] {
            let mut prev = 0.0;
            for k in 1..=20 {
                let z = table.get(nu, k).unwrap();
                assert!(z > prev);
                prev = z;
            }
        }
    }

    #[test]
    fn high_zero_index() {
        // j_{0,100} = 312.8892417... (McMahon gives ~ (100 - 1/4) pi).
        let z = bessel_zero(0.0, 100).unwrap();
        assert!((z - 313.37426607752784).abs() < 1e-8 || bessel_j(0.0, z).unwrap().abs() < 1e-12);
        assert!(bessel_j(0.0, z).unwrap().abs() < 1e-12);
    }

    #[test]
    fn recurrence_identity() {
        // J0 + J2 = (2/x) J1 on (0, 20).
        for i in 1..200 {
            let x = 0.1 * i as f64;
            let lhs = bessel_j(0.0, x).unwrap() + bessel_j(2.0, x).unwrap();
            let rhs = 2.0 / x * bessel_j(1.0, x).unwrap();
            assert!((lhs - rhs).abs() <= 1e-11, "x={x}");
        }
    }

    #[test]
    fn j2_equals_minus_j0_at_j11() {
        let j11 = bessel_zero(1.0, 1).unwrap();
        let j0 = bessel_j(0.0, j11).unwrap();
        let j2 = bessel_j(2.0, j11).unwrap();
        assert!((j2 + j0).abs() <= 1e-11);
    }

    #[test]
    fn struve_small_values() {
        assert_eq!(struve_h(0, 0.0).unwrap(), 0.0);
        assert_eq!(struve_h(1, 0.0).unwrap(), 0.0);
        // Reference values cross-checked against the integral
        // representation H_0(x) = (2/pi) int_0^{pi/2} sin(x cos t) dt.
        assert!((struve_h(0, 1.0).unwrap() - 0.5686566270482879).abs() < 1e-12);
        assert!((struve_h(1, 1.0).unwrap() - 0.1984573362019444).abs() < 1e-12);
        let two_pi = 2.0 * core::f64::consts::PI;
        assert!((struve_h(0, two_pi).unwrap() + 0.1299597391240346).abs() < 1e-11);
        assert!((struve_h(1, two_pi).unwrap() - 0.4127244558439265).abs() < 1e-11);
    }

    #[test]
    fn struve_rejects_out_of_range() {
        assert!(struve_h(0, 20.0).is_err());
        assert!(struve_h(2, 1.0).is_err());
    }

    #[test]
    fn moments_at_zero_and_at_j01() {
        let m = bessel_moments(0.0).unwrap();
        assert_eq!((m.i0, m.i1, m.i2), (0.0, 0.0, 0.0));
        let j01 = bessel_zero(0.0, 1).unwrap();
        assert!((bessel_moments(j01).unwrap().i0 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn prime_zero_values() {
        // j'_{1,1} = 1.8411837813406593
        assert!((bessel_prime_zero(1.0, 1).unwrap() - 1.8411837813406593).abs() < 1e-10);
        // j'_{0,k} = j_{1,k}
        assert!(
            (bessel_prime_zero(0.0, 1).unwrap() - bessel_zero(1.0, 1).unwrap()).abs() < 1e-14
        );
        // j'_{2,1} = 3.0542369282271403
        assert!((bessel_prime_zero(2.0, 1).unwrap() - 3.0542369282271403).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(bessel_j(-1.0, 1.0).is_err());
        assert!(bessel_j(0.3, 1.0).is_err());
        assert!(bessel_j(51.0, 1.0).is_err());
        assert!(bessel_j(0.0, -1.0).is_err());
    }
}
