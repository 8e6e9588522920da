//! Numerical core for studying the real null variety of the Fourier
//! transform of characteristic functions of balanced planar domains.
//!
//! The crate computes, at desk scale:
//!
//! - Bessel and Struve special functions, Bessel zeros, and the closed-form
//!   Bessel antiderivatives used by the integral estimates ([`specialfun`]);
//! - geometric descriptors of balanced domains: support half-breadth,
//!   diameter, inradius, chord and ring functions ([`domains`]);
//! - the Fourier transform of indicator functions, by closed form or
//!   quadrature ([`fourier`]);
//! - the quantity kappa = dist(N(Omega), 0) and directional first roots
//!   ([`nullvariety`]);
//! - Dirichlet and Neumann Laplacian eigenvalues by closed form or
//!   Fourier-Bessel collocation ([`spectral`]);
//! - the integral-estimate pipeline with its constants L, M, y_min
//!   ([`machinery`]);
//! - first-order perturbation theory of the disk ([`perturb`]);
//! - the spiky-domain and random interval-union counterexample
//!   constructions ([`counterex`]).
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats, and the CLI
//! live in the companion `nullkappa-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod counterex;
pub mod domains;
mod error;
pub mod fourier;
pub(crate) mod linalg;
pub mod machinery;
pub mod nullvariety;
pub mod perturb;
pub(crate) mod quad;
pub mod spectral;
pub mod specialfun;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
