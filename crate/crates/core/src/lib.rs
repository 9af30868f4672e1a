//! Numerical laboratory for polynomial root sets over the real normed
//! division algebras ℝ, ℂ, ℍ and 𝕆.
//!
//! Central polynomials (real coefficients) over ℍ and 𝕆 have whole spheres
//! of roots. This crate computes those spheres, drives them with time-varying
//! central coefficients, collapses them with non-central perturbations under
//! the gradient flow of `V(x) = ‖P(x)‖²`, and measures the collapse through
//! Gibbs-measure statistics.
//!
//! Module map:
//!
//! - [`algebra`]: Cayley–Dickson arithmetic, inner automorphisms of ℍ and
//!   G₂ elements of 𝕆 built from derivation exponentials.
//! - [`poly`]: left-coefficient polynomials, potential, Jacobian, right
//!   division by central quadratics and root localization.
//! - [`manifolds`]: root strata of central polynomials, sampling, symmetry
//!   and orbit checks, Hausdorff-dimension scans.
//! - [`dynamics`]: breathing modes of `x^{2k} + a(t)x^k + b(t)`, boundary
//!   crossings and spectra.
//! - [`flow`]: gradient-flow integration, collapse times, basins.
//! - [`thermo`]: Metropolis sampling of the Gibbs measure, order parameter,
//!   entropy coefficient, phase diagrams.
//! - [`claims`]: the acceptance checks, shared by the test suite and the CLI.

pub mod algebra;
pub mod claims;


mod error;
mod expm;
pub mod dynamics;
pub mod flow;
pub mod io;

pub mod manifolds;
pub mod poly;
pub mod spectrum;
pub mod thermo;


pub mod tolerances;

pub use algebra::{Algebra, Element, LinearMap};
pub use error::{Error, Result};
pub use poly::{CentralQuadratic, Deformation, Polynomial};
