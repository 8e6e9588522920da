//! JSON domain-spec files.
//!
//! Schema (one object per file, discriminated by "type"):
//!
//! ```json
//! {"type": "ball", "dim": 2, "radius": 1.0}
//! {"type": "rectangle", "half_sides": [1.0, 0.5]}
//! {"type": "convex-polygon", "vertices": [[1,0],[0,1],[-1,0],[0,-1]]}
//! {"type": "star-shaped", "cosine_coeffs": [1.0], "sine_coeffs": [], "epsilon": 0.05}
//! {"type": "spiky", "n": 256, "delta_tilde": 0.2}            // delta auto
//! {"type": "spiky", "n": 256, "delta_tilde": 0.2, "delta": 0.05}
//! {"type": "interval-union", "centers": [1.5, 3.0]}
//! {"type": "revolution-body", "alpha": 2.0}
//! ```
//!
//! Coefficient index m in star profiles drives the harmonic cos/sin(2(m+1) theta).

use anyhow::{Context, Result};
use nullkappa_core::counterex::{auto_zeta, build_zeta};
use nullkappa_core::domains::{DomainSpec, RadialProfile};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SpecFile {
    Ball {
        dim: usize,
        radius: f64,
    },
    Rectangle {
        half_sides: Vec<f64>,
    },
    ConvexPolygon {
        vertices: Vec<[f64; 2]>,
    },
    StarShaped {
        #[serde(default)]
        cosine_coeffs: Vec<f64>,
        #[serde(default)]
        sine_coeffs: Vec<f64>,
        epsilon: f64,
    },
    Spiky {
        n: usize,
        delta_tilde: f64,
        #[serde(default)]
        delta: Option<f64>,
    },
    IntervalUnion {
        centers: Vec<f64>,
    },
    RevolutionBody {
        alpha: f64,
    },
}

impl SpecFile {
    pub fn to_domain(&self) -> Result<DomainSpec> {
        let spec = match self {
            SpecFile::Ball { dim, radius } => DomainSpec::Ball { dim: *dim, radius: *radius },
            SpecFile::Rectangle { half_sides } => {
                DomainSpec::Rectangle { half_sides: half_sides.clone() }
            }
            SpecFile::ConvexPolygon { vertices } => {
                DomainSpec::ConvexPolygon { vertices: vertices.clone() }
            }
            SpecFile::StarShaped { cosine_coeffs, sine_coeffs, epsilon } => {
                DomainSpec::StarShaped {
                    profile: RadialProfile::new(cosine_coeffs.clone(), sine_coeffs.clone()),
                    epsilon: *epsilon,
                }
            }
            SpecFile::Spiky { n, delta_tilde, delta } => {
                let zeta = match delta {
                    Some(d) => build_zeta(*delta_tilde, *d)?,
                    None => auto_zeta(*delta_tilde)?,
                };
                DomainSpec::Spiky { n: *n, zeta_tilde: zeta }
            }
            SpecFile::IntervalUnion { centers } => {
                DomainSpec::IntervalUnion { centers: centers.clone() }
            }
            SpecFile::RevolutionBody { alpha } => DomainSpec::RevolutionBody { alpha: *alpha },
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Short label for reports.
    pub fn label(&self) -> String {
        match self {
            SpecFile::Ball { dim, radius } => format!("ball(dim={dim}, r={radius})"),
            SpecFile::Rectangle { half_sides } => format!("rectangle{half_sides:?}"),
            SpecFile::ConvexPolygon { vertices } => format!("polygon({} vertices)", vertices.len()),
            SpecFile::StarShaped { epsilon, .. } => format!("star(eps={epsilon})"),
            SpecFile::Spiky { n, delta_tilde, .. } => format!("spiky(n={n}, dt={delta_tilde})"),
            SpecFile::IntervalUnion { centers } => format!("intervals({} pairs)", centers.len()),
            SpecFile::RevolutionBody { alpha } => format!("revolution(alpha={alpha})"),
        }
    }
}

pub fn load(path: &Path) -> Result<(SpecFile, DomainSpec)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read spec file {}", path.display()))?;
    let file: SpecFile = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse spec file {}", path.display()))?;
    let spec = file.to_domain()?;
    Ok((file, spec))
}
