//! The two counterexample constructions: spiky planar domains whose kappa
//! exceeds j_{1,1}, and random unions of unit intervals for which
//! kappa * volume is unbounded.

use alloc::format;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Piecewise-constant normalized ring function zeta-tilde:
/// 1 on [0, 1-delta], 1/2 on (1-delta, 1], `a` on (1, 1+deltaTilde], 0 beyond.
///
/// The plateau height `a` is pinned by the zero-moment condition
/// int r xi_delta(r) dr = 0, which keeps the volume of the spiky domain
/// equal to pi independently of delta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaProfile {
    pub delta_tilde: f64,
    pub delta: f64,
    pub a: f64,
}

impl ZetaProfile {
    /// Value of zeta-tilde at radius r.
    pub fn value(&self, r: f64) -> f64 {
        if r < 0.0 {
            0.0
        } else if r <= 1.0 - self.delta {
            1.0
        } else if r <= 1.0 {
            0.5
        } else if r <= 1.0 + self.delta_tilde {
            self.a
        } else {
            0.0
        }
    }

    /// Radii where the profile jumps (useful as quadrature breakpoints).
    pub fn breakpoints(&self) -> [f64; 3] {
        [1.0 - self.delta, 1.0, 1.0 + self.delta_tilde]
    }

    /// Outer radius of the support.
    pub fn outer_radius(&self) -> f64 {
        1.0 + self.delta_tilde
    }

    /// int_0^infinity r zeta(r) dr, in closed form. Equals 1/2 by the
    /// moment condition, so the spiky domain has volume 2 pi * 1/2 = pi.
    pub fn radial_moment(&self) -> f64 {
        let d = self.delta;
        let dt = self.delta_tilde;
        let r1 = 1.0 - d;
        0.5 * r1 * r1 + 0.25 * (1.0 - r1 * r1) + 0.5 * self.a * ((1.0 + dt) * (1.0 + dt) - 1.0)
    }
}

/// Builds the profile with the plateau height from the zero-moment
/// condition: a = delta(2 - delta) / (2 deltaTilde (2 + deltaTilde)).
pub fn build_zeta(delta_tilde: f64, delta: f64) -> Result<ZetaProfile> {
    if !(0.0 < delta && delta < delta_tilde && delta_tilde < 1.0) {
        return Err(Error::Domain(format!(
            "need 0 < delta < deltaTilde < 1, got delta={delta}, deltaTilde={delta_tilde}"
        )));
    }
    let a = delta * (2.0 - delta) / (2.0 * delta_tilde * (2.0 + delta_tilde));
    if a > 0.5 {
        return Err(Error::InvalidDomain(format!(
            "plateau height a={a} exceeds 1/2; zeta would not be non-increasing"
        )));
    }
    let profile = ZetaProfile { delta_tilde, delta, a };
    debug_assert!((profile.radial_moment() - 0.5).abs() < 1e-12);
    Ok(profile)
}

mod interval_union;
mod nazarov;
mod spiky;

pub use interval_union::{interval_centers, interval_union_kappa, KappaVolumeBound};
pub use nazarov::{g_function, nazarov_search, NazarovInstance, RETRY_BUDGET};
pub use spiky::{
    auto_zeta, spiky_domain, verify_spiky, zeta_positivity, zeta_radial_integral, SpikyReport,
};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateau_height_example() {
        let z = build_zeta(0.2, 0.05).unwrap();
        let expect = 0.05 * 1.95 / (2.0 * 0.2 * 2.2);
        assert!((z.a - expect).abs() < 1e-15);
        assert!((z.a - 0.110795454545).abs() < 1e-10);
    }

    #[test]
    fn moment_is_half_for_any_valid_profile() {
        for &(dt, d) in &[(0.2, 0.05), (0.5, 0.1), (0.9, 0.3), (0.3, 0.29)] {
            if let Ok(z) = build_zeta(dt, d) {
                assert!((z.radial_moment() - 0.5).abs() < 1e-14, "dt={dt} d={d}");
            }
        }
    }

    #[test]
    fn plateau_vanishes_with_delta() {
        let mut prev = f64::INFINITY;
        for k in 1..11 {
            let d = 0.1 / 2f64.powi(k);
            let z = build_zeta(0.2, d).unwrap();
            assert!(z.a < prev);
            prev = z.a;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_zeta(0.2, 0.2).is_err());
        assert!(build_zeta(0.2, 0.0).is_err());
        assert!(build_zeta(1.0, 0.1).is_err());
    }
}
