mod common;

use common::{bessel_oracle, simpson, struve0_oracle, PI};
use nullkappa_core::specialfun::{
    bessel_j, bessel_moments, bessel_prime_zero, bessel_zero, struve_h,
};

#[test]
fn bessel_matches_integral_representation() {
    for &n in &[0u32, 1, 2, 7, 20, 50] {
        for &x in &[0.1, 1.0, 3.8317, 10.0, 25.0, 60.0] {
            let got = bessel_j(n as f64, x).unwrap();
            let want = bessel_oracle(n, x);
            assert!(
                (got - want).abs() < 1e-11,
                "J_{n}({x}): {got} vs {want}"
            );
        }
    }
}

#[test]
fn half_integer_orders_have_closed_forms() {
    for &x in &[0.3, 1.7, 5.0, 12.0] {
        let j_half = bessel_j(0.5, x).unwrap();
        let want = (2.0 / (PI * x)).sqrt() * x.sin();
        assert!((j_half - want).abs() < 1e-12, "J_1/2({x})");

        let j_three_half = bessel_j(1.5, x).unwrap();
        let want = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
        assert!((j_three_half - want).abs() < 1e-12, "J_3/2({x})");
    }
}

#[test]
fn zeros_match_published_values() {
    let known = [
        (0.0, 1, 2.404825557695773),
        (0.0, 2, 5.520078110286311),
        (0.0, 3, 8.653727912911013),
        (1.0, 1, 3.831705970207512),
        (1.0, 2, 7.015586669815613),
        (1.0, 3, 10.173468135062722),
    ];
    for (nu, k, want) in known {
        let got = bessel_zero(nu, k).unwrap();
        assert!((got - want).abs() < 1e-12, "j_{{{nu},{k}}}: {got}");
    }
    // p_{1,1}, the first positive zero of J1', published value.
    let p11 = bessel_prime_zero(1.0, 1).unwrap();
    assert!((p11 - 1.841183781340659).abs() < 1e-12, "{p11}");
}

#[test]
fn zeros_interlace_and_bracket() {
    // j_{nu,k} < j_{nu+1,k} < j_{nu,k+1}
    for nu in 0..6 {
        for k in 1..8u32 {
            let a = bessel_zero(nu as f64, k).unwrap();
            let b = bessel_zero(nu as f64 + 1.0, k).unwrap();
            let c = bessel_zero(nu as f64, k + 1).unwrap();
            assert!(a < b && b < c, "interlacing failed at nu={nu}, k={k}");
            assert!(bessel_j(nu as f64, a).unwrap().abs() < 1e-12);
        }
    }
}

#[test]
fn struve_matches_integral_representation() {
    for &x in &[0.2, 1.0, 2.4048, 3.8317, 7.0, 12.0] {
        let got = struve_h(0, x).unwrap();
        let want = struve0_oracle(x);
        assert!((got - want).abs() < 1e-11, "H0({x}): {got} vs {want}");
    }
    // H1 via H0' = (2/pi) - H1 (central difference on the oracle).
    for &x in &[0.5, 2.0, 5.0, 9.0] {
        let h = 1e-5;
        let d = (struve0_oracle(x + h) - struve0_oracle(x - h)) / (2.0 * h);
        let want = 2.0 / PI - d;
        let got = struve_h(1, x).unwrap();
        assert!((got - want).abs() < 1e-7, "H1({x}): {got} vs {want}");
    }
}

#[test]
fn moments_match_direct_quadrature() {
    for &x in &[0.7, 2.404825557695773, 3.831705970207512, 6.0, 11.5] {
        let m = bessel_moments(x).unwrap();
        let j1 = |t: f64| bessel_oracle(1, t);
        let q0 = simpson(j1, 0.0, x, 400);
        let q1 = simpson(|t| t * j1(t), 0.0, x, 400);
        let q2 = simpson(|t| t * t * j1(t), 0.0, x, 400);
        // tolerance is the Simpson error of the oracle at 400 panels
        assert!((m.i0 - q0).abs() < 1e-9, "i0({x}): {} vs {q0}", m.i0);
        assert!((m.i1 - q1).abs() < 1e-8, "i1({x}): {} vs {q1}", m.i1);
        assert!((m.i2 - q2).abs() < 1e-8, "i2({x}): {} vs {q2}", m.i2);
    }
}
