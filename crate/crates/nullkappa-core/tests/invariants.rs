mod common;

use common::{simpson, PI};
use nullkappa_core::domains::{DomainSpec, RadialProfile};
use nullkappa_core::nullvariety::kappa_with_nodes;
use nullkappa_core::perturb::rotate_canonical;
use proptest::prelude::*;

fn two_mode_amplitude(f: &RadialProfile) -> f64 {
    let p = f.cosine_coeffs.first().copied().unwrap_or(0.0);
    let q = f.sine_coeffs.first().copied().unwrap_or(0.0);
    p.hypot(q)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn rectangle_kappa_is_pi_over_max_half_side(
        a in 0.3f64..2.0,
        b in 0.3f64..2.0,
    ) {
        let rect = DomainSpec::Rectangle { half_sides: vec![a, b] };
        let k = kappa_with_nodes(&rect, 120, 256, 256)
            .unwrap()
            .kappa
            .value()
            .unwrap();
        let want = PI / a.max(b);
        prop_assert!((k - want).abs() < 1e-6, "a={a} b={b}: {k} vs {want}");
    }

    #[test]
    fn ball_kappa_scales(radius in 0.4f64..3.0) {
        let ball = DomainSpec::Ball { dim: 2, radius };
        let k = kappa_with_nodes(&ball, 8, 256, 256)
            .unwrap()
            .kappa
            .value()
            .unwrap();
        prop_assert!((k - 3.831705970207512 / radius).abs() < 1e-8);
    }

    #[test]
    fn star_volume_matches_polar_quadrature(
        p in proptest::collection::vec(-0.5f64..0.5, 1..4),
        q in proptest::collection::vec(-0.5f64..0.5, 1..4),
        eps in 0.01f64..0.12,
    ) {
        let profile = RadialProfile::new(p, q);
        let spec = DomainSpec::StarShaped { profile: profile.clone(), epsilon: eps };
        let want = simpson(
            |t| {
                let r = 1.0 + eps * profile.eval(t);
                0.5 * r * r
            },
            0.0,
            2.0 * PI,
            4000,
        );
        prop_assert!((spec.volume() - want).abs() < 1e-9);
    }

    #[test]
    fn canonical_rotation_kills_the_sine_mode(
        p in proptest::collection::vec(-1.0f64..1.0, 2..6),
        q in proptest::collection::vec(-1.0f64..1.0, 2..6),
    ) {
        let f = RadialProfile::new(p, q);
        let (phi, g) = rotate_canonical(&f);
        // rotation angle lands in (-pi/2, pi/2]
        prop_assert!(phi > -0.5 * PI - 1e-12 && phi <= 0.5 * PI + 1e-12);
        // the rotated profile has no sin(2 theta) component and a
        // nonnegative cos(2 theta) one
        prop_assert!(g.sine_coeffs[0].abs() < 1e-12);
        prop_assert!(g.cosine_coeffs[0] >= -1e-12);
        // rotation is a relabeling: G(theta) = F(theta + phi)
        for i in 0..7 {
            let t = 0.9 * i as f64;
            prop_assert!((g.eval(t) - f.eval(t + phi)).abs() < 1e-10);
        }
        // two-mode amplitude is rotation invariant
        prop_assert!((two_mode_amplitude(&g) - two_mode_amplitude(&f)).abs() < 1e-12);
    }
}
