//! Verification engine for skeletal modular tensor category data.
//!
//! The crate is organised in layers:
//!
//! - [`fusion_data`]: category data (fusion rules, F- and R-symbols,
//!   twists), built-in examples and the pentagon/hexagon suite.
//! - [`graphcalc`]: fusion-tree hom spaces, diagram evaluation, duality
//!   maps and the Ω, Ã, Â, σ operator calculus.
//! - [`deligne_double`]: the doubled category with braiding `R₊₋`.
//! - [`diagonal_frobenius`]: the diagonal commutative Frobenius algebra
//!   `⊕ₐ (a, a′)` and its axiom checkers.
//! - [`sewing_operad`]: the translation-and-scaling sphere operad and its
//!   sewing law.
//! - [`report`]: machine-readable residual reports.
//!
//! Category-side code is generic over the scalar field `S: Scalar`.

pub mod deligne_double;
pub mod diagonal_frobenius;
pub mod fusion_data;
pub mod graphcalc;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod sewing_operad;

use num_complex::Complex;
use num_rational::BigRational;

/// Double-precision complex scalar.
pub type C64 = Complex<f64>;
/// Single-precision complex scalar.
pub type C32 = Complex<f32>;
/// Exact Gaussian rationals.
pub type GaussQ = Complex<BigRational>;

/// Category data in double precision.
pub type CategoryF64 = fusion_data::CategoryData<C64>;
/// Category data over the Gaussian rationals.
pub type CategoryExact = fusion_data::CategoryData<GaussQ>;
/// Fusion-tree morphism in double precision.
pub type MorphismF64 = graphcalc::Morphism<C64>;
/// Sphere-operad element in double precision.
pub type KHatF64 = sewing_operad::KHatElement<C64>;
/// Sphere-operad element over the Gaussian rationals.
pub type KHatExact = sewing_operad::KHatElement<GaussQ>;

pub use report::{emit_report, Format, Record, Report};
pub use scalar::Scalar;
