//! Randomized construction of frequency sets w_j for which
//! f(xi) = sum_j cos(w_j xi) stays positive on [-C/n, C/n], turning the
//! probabilistic existence argument into a replayable certificate.

use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use rand_core::RngCore;

use crate::{Error, Result};

/// How many (draw, grow) attempts the search makes before giving up.
/// n grows by 3/2 after each failed draw, so the budget also caps the
/// largest instance size tried.
pub const RETRY_BUDGET: usize = 12;

/// Grid points per half-interval; the step is (C/n) / 10^4.
const GRID_HALF_POINTS: usize = 10_000;

/// A certified frequency set.
#[derive(Debug, Clone)]
pub struct NazarovInstance {
    pub n: usize,
    pub c: f64,
    /// Chosen frequencies w_j, increasing, spacing >= 1.
    pub frequencies: Vec<u64>,
    /// Grid step used by the certificate.
    pub grid_step: f64,
    /// Minimum of f over the grid.
    pub min_f: f64,
    /// min_f minus the worst between-grid dip (step/2) * sum(w_j);
    /// positivity of the margin is the certificate.
    pub margin: f64,
}

impl NazarovInstance {
    /// f(xi) = sum_j cos(w_j xi).
    pub fn f(&self, xi: f64) -> f64 {
        self.frequencies.iter().map(|&w| (w as f64 * xi).cos()).sum()
    }

    /// Re-runs the grid certificate with a finer step (refine > 1 shrinks
    /// the step by that factor). Returns (min_f, margin).
    pub fn certify(&self, refine: usize) -> (f64, f64) {
        certify_grid(&self.frequencies, self.c / self.n as f64, refine.max(1))
    }
}

/// The averaging kernel G(x) = 1 + 2 sum_{k=1}^{n-1} (1 - k/n)^2 cos(kx)
/// behind the Bernoulli weights; exposed for cross-checks.
pub fn g_function(n: usize, x: f64) -> f64 {
    let mut s = 1.0;
    for k in 1..n {
        let w = 1.0 - k as f64 / n as f64;
        s += 2.0 * w * w * (k as f64 * x).cos();
    }
    s
}

fn unit(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Evaluates min f over the symmetric grid on [-C/n, C/n] and the
/// derivative-bound margin. f is even, so only the non-negative half is
/// evaluated; the step bound is taken against the full sum of frequencies.
fn certify_grid(freqs: &[u64], half_width: f64, refine: usize) -> (f64, f64) {
    let points = GRID_HALF_POINTS * refine;
    let step = half_width / points as f64;
    let mut min_f = f64::INFINITY;
    for i in 0..=points {
        let xi = step * i as f64;
        let v: f64 = freqs.iter().map(|&w| (w as f64 * xi).cos()).sum();
        if v < min_f {
            min_f = v;
        }
    }
    let weight_sum: f64 = freqs.iter().map(|&w| w as f64).sum();
    (min_f, min_f - 0.5 * step * weight_sum)
}

/// Draws frequency sets with P(k chosen) = (1 - k/n)^2 for growing n until
/// the positivity certificate on [-C/n, C/n] holds.
pub fn nazarov_search(c: f64, rng: &mut impl RngCore) -> Result<NazarovInstance> {
    if !(c > 0.0) {
        return Err(Error::Domain(String::from("C must be positive")));
    }
    // Start where the expected profile n * 2(1 - sin x / x)/x^2 on |x| <= C
    // comfortably beats the O(sqrt n) fluctuations, then grow on failure.
    let floor = 0.75 * c * c / (1.0 - c.sin() / c);
    let mut n = ((floor * floor).ceil() as usize).max(64);
    let mut last = (0.0, 0.0);
    for _ in 0..RETRY_BUDGET {
        let mut freqs: Vec<u64> = Vec::new();
        for k in 1..n {
            let p = 1.0 - k as f64 / n as f64;
            if unit(rng) < p * p {
                freqs.push(k as u64);
            }
        }
        if !freqs.is_empty() {
            let half_width = c / n as f64;
            let (min_f, margin) = certify_grid(&freqs, half_width, 1);
            if margin > 0.0 {
                return Ok(NazarovInstance {
                    n,
                    c,
                    frequencies: freqs,
                    grid_step: half_width / GRID_HALF_POINTS as f64,
                    min_f,
                    margin,
                });
            }
            last = (min_f, margin);
        }
        n = n * 3 / 2;
    }
    Err(Error::NonConvergence {
        what: format_diag(c, n, last),
        residual: last.1,
    })
}

fn format_diag(c: f64, n: usize, last: (f64, f64)) -> String {
    alloc::format!(
        "no certified frequency set for C = {c} up to n = {n}; last min_f = {}, margin = {}",
        last.0, last.1
    )
}
