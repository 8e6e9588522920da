//! From a certified frequency set to the interval union I_n and the lower
//! bound on kappa(I_n) * vol(I_n).
//!
//! chi-hat of I_n = union of { | |x| - w_j | <= 1/2 } factors as
//! (4 sin(xi/2) / xi) * sum_j cos(w_j xi); the sine factor is positive on
//! (0, 2 pi), so positivity of f on [-C/n, C/n] pushes the null variety
//! beyond C/n. The corridor construction that makes the 2D analogue
//! connected is not modelled: the quantitative content lives in the
//! product domain A_n = I_n x I_n, whose transform factors, so
//! kappa(A_n) = kappa(I_n) while vol grows to vol^2.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::NazarovInstance;

/// The certified lower bound on kappa, the exact volume, and their product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaVolumeBound {
    pub kappa_lower_bound: f64,
    pub volume: f64,
    pub product: f64,
}

/// Reads the kappa * volume lower bound off a certified instance:
/// kappa >= C/n, volume = 2 * count, product >= 2 C count / n.
pub fn interval_union_kappa(instance: &NazarovInstance) -> KappaVolumeBound {
    let kappa_lower_bound = instance.c / instance.n as f64;
    let volume = 2.0 * instance.frequencies.len() as f64;
    KappaVolumeBound { kappa_lower_bound, volume, product: kappa_lower_bound * volume }
}

/// Interval centers of I_n on the positive axis, for handing the instance
/// to the domain/transform machinery.
pub fn interval_centers(instance: &NazarovInstance) -> Vec<f64> {
    instance.frequencies.iter().map(|&w| w as f64).collect()
}
