//! Voronoi diagrams and dual Delaunay complexes for finite sets of Cauchy
//! distributions.
//!
//! A Cauchy density `p(x) = s / (π (s² + (x - l)²))` is identified with the
//! point `(l, s)` of the upper half-plane. Under the Fisher-Rao distance,
//! the Kullback-Leibler divergence, its square root, the chi-square
//! divergence and the forward flat (Bregman-Tsallis) divergence, the nearest
//! generator map is the same: a hyperbolic Voronoi diagram. This crate builds
//! that diagram once, in the Klein disk, as a power diagram of lifted spheres
//! clipped to the unit disk. The reverse flat divergence yields the ordinary
//! Euclidean Voronoi diagram of the `(l, s)` points.
//!
//! Module map:
//!
//! - [`divergences`]: closed-form dissimilarities and the dually flat
//!   coordinate machinery (natural/dual parameters, potentials, Bregman).
//! - [`hyperbolic`]: upper half-plane, Poincaré disk and Klein disk models.
//! - [`power_diagram`]: sphere mapping, lifting and the clipped power diagram.
//! - [`voronoi`]: Cauchy Voronoi diagrams, Delaunay complexes, verification
//!   predicates and nearest-generator classification.
//! - [`oracle`]: quadrature, brute-force labelings, finite differences and
//!   metric samplers used to check everything above independently.
//!
//! ```
//! use cauchy_voronoi::divergences::{kl, CauchyParam};
//!
//! let a = CauchyParam::new(0.0, 1.0).unwrap();
//! let b = CauchyParam::new(0.0, 2.0).unwrap();
//! assert!((kl(a, b) - (9.0f64 / 8.0).ln()).abs() < 1e-15);
//! ```

pub mod divergences;
mod error;
pub mod hyperbolic;
pub mod matrix;
pub mod oracle;
pub mod power_diagram;
pub mod voronoi;

pub use error::{Error, Result};
