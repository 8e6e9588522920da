//! Parametric family sweeps emitting one CSV row per parameter point.
//!
//! Family file schema (JSON):
//!
//! ```json
//! {"family": "rectangle-aspect", "from": 1.0, "to": 10.0, "steps": 10}
//! {"family": "star-epsilon", "cosine_coeffs": [1.0], "sine_coeffs": [],
//!  "from": 0.0, "to": 0.1, "steps": 11}
//! {"family": "regular-polygon", "from": 4, "to": 12, "steps": 5}
//! ```

use anyhow::{Context, Result};
use nullkappa_core::domains::{descriptors, regular_polygon, DomainSpec, RadialProfile};
use nullkappa_core::nullvariety;
use nullkappa_core::specialfun::bessel_zero;
use nullkappa_core::spectral;
use serde::Deserialize;
use std::path::Path;

const PI: f64 = std::f64::consts::PI;

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Family {
    /// Rectangles with half-sides (a, 1), a = aspect.
    RectangleAspect { from: f64, to: f64, steps: usize },
    /// Star domains R = 1 + eps F for a fixed profile, eps swept.
    StarEpsilon {
        #[serde(default)]
        cosine_coeffs: Vec<f64>,
        #[serde(default)]
        sine_coeffs: Vec<f64>,
        from: f64,
        to: f64,
        steps: usize,
    },
    /// Regular polygons with the given vertex counts (even counts only).
    RegularPolygon { from: usize, to: usize, steps: usize },
}

impl Family {
    fn points(&self) -> Vec<(f64, DomainSpec)> {
        match self {
            Family::RectangleAspect { from, to, steps } => linspace(*from, *to, *steps)
                .into_iter()
                .map(|a| (a, DomainSpec::Rectangle { half_sides: vec![a, 1.0] }))
                .collect(),
            Family::StarEpsilon { cosine_coeffs, sine_coeffs, from, to, steps } => {
                linspace(*from, *to, *steps)
                    .into_iter()
                    .map(|eps| {
                        (
                            eps,
                            DomainSpec::StarShaped {
                                profile: RadialProfile::new(
                                    cosine_coeffs.clone(),
                                    sine_coeffs.clone(),
                                ),
                                epsilon: eps,
                            },
                        )
                    })
                    .collect()
            }
            Family::RegularPolygon { from, to, steps } => linspace(*from as f64, *to as f64, *steps)
                .into_iter()
                .map(|s| {
                    let mut sides = s.round() as usize;
                    if sides % 2 == 1 {
                        sides += 1; // balance needs an even vertex count
                    }
                    (sides as f64, regular_polygon(sides, 1.0))
                })
                .collect(),
        }
    }
}

fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![from];
    }
    (0..steps)
        .map(|i| from + (to - from) * i as f64 / (steps - 1) as f64)
        .collect()
}

pub const CSV_HEADER: &str = "param,kappa,kappa_ball,lambda1,lambda2,mu2,diameter,r_minus,\
margin_t26,margin_diamest,margin_conj22,error";

fn row(param: f64, spec: &DomainSpec) -> String {
    match row_inner(spec) {
        Ok(v) => format!(
            "{param:.6},{:.10},{:.10},{:.10},{:.10},{:.10},{:.10},{:.10},{:.3e},{:.3e},{:.3e},",
            v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]
        ),
        Err(e) => format!("{param:.6},,,,,,,,,,,\"{e}\""),
    }
}

fn row_inner(spec: &DomainSpec) -> Result<[f64; 10]> {
    let desc = descriptors(spec)?;
    let res = nullvariety::kappa_with_nodes(spec, 120, 512, 1024)?;
    let kappa = res
        .kappa
        .value()
        .context("kappa search exceeded its bound")?;
    let j11 = bessel_zero(1.0, 1)?;
    let j01 = bessel_zero(0.0, 1)?;
    let kappa_ball = j11 / (desc.volume / PI).sqrt();
    let d = spectral::dirichlet_eigs(spec, 2)?;
    let nmn = spectral::neumann_eigs(spec, 2)?;
    let (lam1, lam2, mu2) = (d.dirichlet[0], d.dirichlet[1], nmn.neumann[1]);
    Ok([
        kappa,
        kappa_ball,
        lam1,
        lam2,
        mu2,
        desc.diameter,
        desc.r_minus,
        2.0 * j01 / j11 * kappa_ball - kappa,
        4.0 * PI / desc.diameter - kappa,
        lam2.sqrt() - kappa,
    ])
}

/// Runs the sweep; rows stay in parameter order regardless of worker count.
pub fn run(family_path: &Path, workers: usize) -> Result<String> {
    let text = std::fs::read_to_string(family_path)
        .with_context(|| format!("cannot read family file {}", family_path.display()))?;
    let family: Family = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse family file {}", family_path.display()))?;
    let points = family.points();
    let rows: Vec<String> = if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()?;
        pool.install(|| {
            use rayon::prelude::*;
            points.par_iter().map(|(p, s)| row(*p, s)).collect()
        })
    } else {
        points.iter().map(|(p, s)| row(*p, s)).collect()
    };
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}
