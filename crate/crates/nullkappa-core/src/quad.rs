//! Gauss-Legendre quadrature on panels.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; accurate to machine
/// precision for the small n used here.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess for the i-th positive root.
        let mut x = (core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_deriv(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes.push(x);
        weights.push(w);
    }
    // Mirror to the negative half (skip the middle node for odd n).
    for i in (0..m).rev() {
        if nodes[i] == 0.0 {
            continue;
        }
        let (x, w) = (nodes[i], weights[i]);
        nodes.push(-x);
        weights.push(w);
    }
    (nodes, weights)
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    if n == 1 {
        return (x, 1.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Fixed-order Gauss-Legendre integration over a single interval.
#[cfg_attr(not(test), allow(dead_code))]
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, order: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    integrate_with(f, a, b, &nodes, &weights)
}

/// Same as [`integrate`] with precomputed nodes and weights.
pub fn integrate_with<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    nodes: &[f64],
    weights: &[f64],
) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (&x, &w) in nodes.iter().zip(weights) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Integrates over [a, b] split at the interior breakpoints, subdividing
/// each panel so no sub-panel is longer than `max_len`.
pub fn integrate_panels<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    max_len: f64,
    order: usize,
) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    let mut knots: Vec<f64> = Vec::with_capacity(breakpoints.len() + 2);
    knots.push(a);
    for &t in breakpoints {
        if t > a && t < b {
            knots.push(t);
        }
    }
    knots.push(b);
    knots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    knots.dedup_by(|x, y| (*x - *y).abs() < 1e-14);

    let mut total = 0.0;
    for pair in knots.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let len = hi - lo;
        if len <= 0.0 {
            continue;
        }
        let parts = (len / max_len).ceil().max(1.0) as usize;
        let step = len / parts as f64;
        for p in 0..parts {
            let x0 = lo + p as f64 * step;
            total += integrate_with(f, x0, x0 + step, &nodes, &weights);
        }
    }
    total
}

/// Like [`integrate_panels`], but panels are additionally refined
/// geometrically toward every breakpoint (and toward a and b), so endpoint
/// singularities of square-root type are resolved to near machine accuracy.
pub fn integrate_graded<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    max_len: f64,
    order: usize,
) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    let mut knots: Vec<f64> = Vec::with_capacity(breakpoints.len() + 2);
    knots.push(a);
    for &t in breakpoints {
        if t > a && t < b {
            knots.push(t);
        }
    }
    knots.push(b);
    knots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    knots.dedup_by(|x, y| (*x - *y).abs() < 1e-14);

    const LEVELS: u32 = 16;
    const RATIO: f64 = 0.35;
    let mut total = 0.0;
    for pair in knots.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let half = 0.5 * (hi - lo);
        if half <= 0.0 {
            continue;
        }
        // graded sub-edges in each half, accumulating toward lo and hi
        for (start, dir) in [(lo, 1.0), (hi, -1.0)] {
            let mut prev = 0.0;
            for lev in (0..=LEVELS).rev() {
                let offs = if lev == 0 { half } else { half * RATIO.powi(lev as i32) };
                if offs <= prev {
                    continue;
                }
                let (x0, x1) = if dir > 0.0 {
                    (start + prev, start + offs)
                } else {
                    (start - offs, start - prev)
                };
                let len = x1 - x0;
                let parts = (len / max_len).ceil().max(1.0) as usize;
                let step = len / parts as f64;
                for p in 0..parts {
                    let s0 = x0 + p as f64 * step;
                    total += integrate_with(f, s0, s0 + step, &nodes, &weights);
                }
                prev = offs;
            }
        }
    }
    total
}
