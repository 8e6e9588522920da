//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`). Stated runtime budgets are
//! asserted with wall-clock measurements.

use std::sync::OnceLock;
use std::time::Instant;

use nullkappa_cli::corpus;
use nullkappa_core::domains::{descriptors, DomainSpec, RadialProfile};
use nullkappa_core::machinery;
use nullkappa_core::nullvariety::{self, RootResult};
use nullkappa_core::perturb;
use nullkappa_core::specialfun::bessel_zero;
use nullkappa_core::spectral::{self, Method};
use nullkappa_core::counterex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PI: f64 = std::f64::consts::PI;
const J11: f64 = 3.831705970207512;
const CORPUS_SEED: u64 = 0;
const CORPUS_COUNT: usize = 100;

fn verdict(criterion: u32, what: &str, pass: bool) {
    println!(
        "criterion {criterion:2}: {} - {what}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {what}");
}

/// The shared 100 + 100 corpus with kappa precomputed once; criteria 5, 6,
/// and 7 all draw from it.
fn corpus() -> &'static Vec<(DomainSpec, f64)> {
    static CORPUS: OnceLock<Vec<(DomainSpec, f64)>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
        let mut out = Vec::with_capacity(2 * CORPUS_COUNT);
        for i in 0..2 * CORPUS_COUNT {
            let spec = if i < CORPUS_COUNT {
                corpus::random_convex_polygon(&mut rng)
            } else {
                corpus::random_convex_star(&mut rng)
            };
            let res = nullvariety::kappa_with_nodes(&spec, 120, 256, 512).unwrap();
            let kappa = match res.kappa {
                RootResult::Root(r) => r,
                RootResult::Exceeds(b) => panic!("kappa search exceeded bound {b}"),
            };
            out.push((spec, kappa));
        }
        out
    })
}

#[test]
fn criterion_01_constants_tables() {
    let t0 = Instant::now();
    let c = machinery::constants();
    let horizontal = [
        2.240206980,
        2.891592982,
        3.831705970,
        4.809651116,
        6.283185308,
        7.015586670,
        8.653727913,
        10.326163640,
    ];
    let vertical = [
        -0.0852948043,
        -0.0072444612,
        0.0386824043,
        0.3403496255,
        0.5384485717,
        0.6346834915,
    ];
    let mut worst = 0.0f64;
    for (got, want) in c
        .table_horizontal
        .iter()
        .map(|e| e.1)
        .zip(horizontal)
        .chain(c.table_vertical.iter().map(|e| e.1).zip(vertical))
    {
        worst = worst.max((got - want).abs());
    }
    let elapsed = t0.elapsed().as_secs_f64();
    verdict(
        1,
        &format!("14 table constants, worst abs error {worst:.2e}, {elapsed:.3} s"),
        worst <= 1e-8 && elapsed < 1.0,
    );
}

#[test]
fn criterion_02_disk_kappa_generic_search() {
    let t0 = Instant::now();
    let disk = DomainSpec::Ball { dim: 2, radius: 1.0 };
    let res = nullvariety::kappa_with_nodes(&disk, 120, 512, 512).unwrap();
    let k = res.kappa.value().unwrap();
    let err = (k - 3.831705970).abs();
    let elapsed = t0.elapsed().as_secs_f64();
    verdict(
        2,
        &format!("kappa(disk) = {k:.9}, error {err:.2e}, {elapsed:.2} s"),
        err <= 1e-7 && elapsed < 5.0,
    );
}

#[test]
fn criterion_03_rectangle_kappa_and_argmin() {
    let t0 = Instant::now();
    let rect = DomainSpec::Rectangle { half_sides: vec![1.0, 0.5] };
    let res = nullvariety::kappa_with_nodes(&rect, 240, 1024, 512).unwrap();
    let k = res.kappa.value().unwrap();
    let err = (k - PI).abs();
    // long axis is theta = 0 (mod pi)
    let dir = res.argmin_direction.min(PI - res.argmin_direction);
    let elapsed = t0.elapsed().as_secs_f64();
    verdict(
        3,
        &format!(
            "kappa(2x1 rectangle) = {k:.10}, error {err:.2e}, argmin offset {dir:.2e}, {elapsed:.2} s"
        ),
        err <= 1e-8 && dir < 1e-3 && elapsed < 5.0,
    );
}

#[test]
fn criterion_04_final_estimate_chain() {
    let consts = machinery::constants();
    let key = machinery::key_integral(consts.y_min).unwrap();
    let err = (key - (-0.0072444612)).abs();
    let mut worst = 0.0f64;
    for k in 0..5 {
        let y = consts.y_min + (1.0 - consts.y_min) * k as f64 / 4.0;
        let quad = machinery::key_integral_quadrature(y).unwrap();
        let closed = machinery::key_integral(y).unwrap();
        worst = worst.max((quad - closed).abs());
    }
    verdict(
        4,
        &format!(
            "keyIntegral(y_min) = {key:.10} (error {err:.2e}), quadrature agreement {worst:.2e}"
        ),
        err <= 1e-8 && worst <= 1e-9,
    );
}

#[test]
fn criterion_05_theorem_sweeps_on_corpus() {
    let t0 = Instant::now();
    let j01 = bessel_zero(0.0, 1).unwrap();
    let c26 = 2.0 * j01 / J11;
    let mut worst_t26 = f64::INFINITY;
    let mut worst_diam = f64::INFINITY;
    let mut worst_l44 = f64::INFINITY;
    for (spec, kappa) in corpus() {
        let desc = descriptors(spec).unwrap();
        let kb = J11 / (desc.volume / PI).sqrt();
        worst_t26 = worst_t26.min(c26 * kb - kappa);
        worst_diam = worst_diam.min(4.0 * PI / desc.diameter - kappa);
        for &theta in &[0.0_f64, 0.7] {
            let e = [theta.cos(), theta.sin()];
            let w = spec.support_half_breadth(e).unwrap();
            let roots =
                nullvariety::directional_roots_with_nodes(spec, e, 4, PI * 6.0 / w, 1024, 512)
                    .unwrap();
            for (j, r) in roots.iter().enumerate() {
                worst_l44 = worst_l44.min(PI * (j as f64 + 2.0) / w - r);
            }
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    verdict(
        5,
        &format!(
            "200 domains: min margins t2.6 {worst_t26:.3e}, diam {worst_diam:.3e}, lemma 4.4 {worst_l44:.3e}, {elapsed:.0} s"
        ),
        worst_t26 > 0.0 && worst_diam > 0.0 && worst_l44 > 0.0 && elapsed < 300.0,
    );
}

#[test]
fn criterion_06_conjecture_sweeps_on_corpus() {
    let mut worst_c23 = f64::INFINITY;
    let mut worst_c22 = f64::INFINITY;
    let mut worst_gap = f64::INFINITY;
    for (spec, kappa) in corpus() {
        let desc = descriptors(spec).unwrap();
        let kb = J11 / (desc.volume / PI).sqrt();
        worst_c23 = worst_c23.min(kb - kappa);
        let eig = spectral::dirichlet_eigs(spec, 2).unwrap();
        let lam2 = eig.dirichlet[1];
        worst_c22 = worst_c22.min(lam2.sqrt() - kappa);
        // margin must exceed the solver's own error estimate
        let err = eig.accuracy[1].max(1e-9) * lam2.sqrt() / 2.0;
        worst_gap = worst_gap.min(lam2.sqrt() - kappa - err);
    }
    verdict(
        6,
        &format!(
            "200 domains: min margins kappa<=kappa* {worst_c23:.3e}, kappa<=sqrt(lambda2) {worst_c22:.3e}, margin-over-solver-error {worst_gap:.3e}"
        ),
        worst_c23 > 0.0 && worst_c22 > 0.0 && worst_gap > 0.0,
    );
}

#[test]
fn criterion_07_eigenvalues() {
    // collocation on the disk (zero-profile star forces the generic path)
    let disk_colloc = DomainSpec::StarShaped {
        profile: RadialProfile::new(vec![], vec![]),
        epsilon: 0.0,
    };
    let d = spectral::dirichlet_eigs(&disk_colloc, 2).unwrap();
    assert_eq!(d.method, Method::Collocation);
    let disk_rel = (d.dirichlet[1] - 14.68197).abs() / 14.68197;

    let rect_colloc = DomainSpec::ConvexPolygon {
        vertices: vec![[1.0, -0.5], [1.0, 0.5], [-1.0, 0.5], [-1.0, -0.5]],
    };
    let r = spectral::dirichlet_eigs(&rect_colloc, 2).unwrap();
    assert_eq!(r.method, Method::Collocation);
    let rect_rel = (r.dirichlet[1] - 2.0 * PI * PI).abs() / (2.0 * PI * PI);

    // closed forms
    let disk = DomainSpec::Ball { dim: 2, radius: 1.0 };
    let rect = DomainSpec::Rectangle { half_sides: vec![1.0, 0.5] };
    let dc = spectral::dirichlet_eigs(&disk, 2).unwrap();
    let rc = spectral::dirichlet_eigs(&rect, 2).unwrap();
    let closed_err = (dc.dirichlet[1] - J11 * J11)
        .abs()
        .max((rc.dirichlet[1] - 2.0 * PI * PI).abs());

    // mu_{n+1} < lambda_n for n <= 5 on disk and rectangle
    let mut interlace = true;
    for spec in [&disk, &rect] {
        let lam = spectral::dirichlet_eigs(spec, 5).unwrap().dirichlet;
        let mu = spectral::neumann_eigs(spec, 6).unwrap().neumann;
        for n in 1..=5 {
            interlace &= mu[n] < lam[n - 1];
        }
    }

    // kappa >= 2 sqrt(mu_2) on the corpus; the inequality is an equality
    // for rectangles, so near-rectangular samples sit within solver error
    // of the boundary and the margin is compared against that error
    let mut worst_mu = f64::INFINITY;
    let mut worst_allowed = f64::INFINITY;
    for (spec, kappa) in corpus() {
        let res = spectral::neumann_eigs(spec, 2).unwrap();
        let mu2 = res.neumann[1];
        let margin = kappa - 2.0 * mu2.sqrt();
        let solver_err = res.accuracy[1] * mu2.sqrt() + 1e-7 * kappa;
        worst_mu = worst_mu.min(margin);
        worst_allowed = worst_allowed.min(margin + solver_err);
    }

    verdict(
        7,
        &format!(
            "collocation rel errors disk {disk_rel:.2e} / rect {rect_rel:.2e}, closed forms {closed_err:.2e}, interlacing {interlace}, min kappa-2sqrt(mu2) {worst_mu:.3e} (with solver allowance {worst_allowed:.3e})"
        ),
        disk_rel <= 1e-3
            && rect_rel <= 1e-3
            && closed_err <= 1e-10
            && interlace
            && worst_allowed > 0.0,
    );
}

#[test]
fn criterion_08_perturbation() {
    let cos2 = RadialProfile::new(vec![1.0], vec![]);
    let dk = perturb::kappa_derivative(&cos2);
    let dl = perturb::lambda2_derivative(&cos2);
    let dk_err = (dk + J11).abs();
    let dl_err = (dl + J11 / 2.0).abs();

    let fd = perturb::finite_difference_check(&cos2, 1e-3).unwrap();
    let fd_k = (fd.kappa_quotient + J11).abs();
    let fd_l = (fd.sqrt_lambda2_quotient + J11 / 2.0).abs();

    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut worst_p1 = f64::INFINITY;
    for _ in 0..200 {
        let modes = rng.random_range(1..=8usize);
        let cos: Vec<f64> = (0..modes).map(|_| rng.random_range(-1.0..1.0)).collect();
        let sin: Vec<f64> = (0..modes).map(|_| rng.random_range(-1.0..1.0)).collect();
        let (lhs, rhs) = perturb::inequality_p1(&RadialProfile::new(cos, sin));
        worst_p1 = worst_p1.min(rhs - lhs);
    }

    verdict(
        8,
        &format!(
            "dkappa err {dk_err:.2e}, dlambda2 err {dl_err:.2e}, FD errs {fd_k:.2e}/{fd_l:.2e}, (p1) min margin {worst_p1:.3e} over 200 profiles"
        ),
        dk_err <= 1e-6
            && dl_err <= 1e-9
            && fd_k <= 1e-2
            && fd_l <= 5e-2
            && worst_p1 > -1e-9,
    );
}

#[test]
fn criterion_09_spiky_counterexample() {
    let t0 = Instant::now();
    let zeta = counterex::auto_zeta(0.2).unwrap();
    let report = counterex::verify_spiky(256, &zeta, J11, 720, 512).unwrap();
    let elapsed = t0.elapsed().as_secs_f64();
    verdict(
        9,
        &format!(
            "spiky n=256: grid min {:.3e} at (theta {:.3}, gamma {:.3}), certified {}, {elapsed:.1} s",
            report.min_value, report.min_direction, report.min_gamma, report.certified
        ),
        report.min_value > 0.0 && report.certified && report.containment_ok && elapsed < 600.0,
    );
}

#[test]
fn criterion_10_nazarov_counterexample() {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut all = true;
    let mut summary = String::new();
    for &c in &[5.0, 10.0, 20.0] {
        let inst = counterex::nazarov_search(c, &mut rng).unwrap();
        let density = inst.frequencies.len() as f64 / inst.n as f64;
        let bound = counterex::interval_union_kappa(&inst);
        let ok = inst.margin > 0.0
            && density >= 0.1
            && bound.product >= 2.0 * c * density - 1e-9
            && bound.product >= 2.0 * c / 10.0;
        all &= ok;
        summary.push_str(&format!(
            "C={c}: n={} margin {:.2e} density {density:.3} product {:.2}; ",
            inst.n, inst.margin, bound.product
        ));
    }
    verdict(10, summary.trim_end_matches("; "), all);
}

#[test]
fn criterion_11_cuboid_inequality() {
    let mut worst = f64::INFINITY;
    for d in 1..=30 {
        worst = worst.min(machinery::cuboid_inequality_margin(d).unwrap());
    }
    verdict(
        11,
        &format!("j_{{d/2,1}} >= 2 sqrt(pi) Gamma(1+d/2)^(1/d) for d=1..30, min margin {worst:.3e}"),
        // equality holds at d = 1 (both sides are pi), so allow rounding
        worst >= -1e-12,
    );
}

#[test]
fn criterion_12_triangle_formula() {
    let mut worst = 0.0f64;
    for &a in &[1.0, 2.0, 4.0] {
        let got = nullvariety::triangle_kappa_search(a).unwrap();
        let want = 2.0 * PI * (1.0 + 1.0 / (a * a)).sqrt();
        worst = worst.max((got - want).abs());
        assert!((nullvariety::triangle_kappa(a) - want).abs() < 1e-12);
    }
    verdict(
        12,
        &format!("kappa(T_1a) vs 2 pi sqrt(1+a^-2) for a in {{1,2,4}}, worst error {worst:.2e}"),
        worst <= 1e-6,
    );
}
