//! Graphical calculus on skeletal category data.
//!
//! Morphisms between tensor words are block matrices over left-canonical
//! fusion-tree bases ([`hom`], [`morphism`]). String diagrams built from
//! vertices, duality maps, braidings and twists are evaluated layer by layer
//! ([`diagram`]). On top of this sit the duality normalization
//! ([`duality`]), the vertex operators Ω, Ã, Â, Â* and σ ([`operators`]) and
//! the rigidity, fusing-symmetry and operator-calculus suites ([`suites`]).

pub mod diagram;
pub mod duality;
pub mod hom;
pub mod morphism;
pub mod operators;
pub mod suites;

use thiserror::Error;

use crate::fusion_data::{CategoryData, FBlock};
use crate::linalg::Mat;
use crate::scalar::Scalar;

pub use diagram::{apply_gen, evaluate_diagram, Diagram, Gen};
pub use duality::{categorical_dim, duality_coeff, f_a_scalar, unit_vertex_coeffs, Duality};
pub use hom::{hom_space, HomSpace, Tree};
pub use morphism::Morphism;
pub use operators::{hat_a, hat_a_dual, omega, sigma_cyclic, sigma_cyclic_inverse, tilde_a, vertex_dual_pairing};
pub use suites::{verify_fusing_symmetries, verify_operator_calculus, verify_rigidity};

/// Errors raised by diagram construction and evaluation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    /// A generator or composite was applied to the wrong word.
    #[error("boundary mismatch: expected {expected:?}, found {found:?}")]
    BoundaryMismatch {
        /// Word the operation needs.
        expected: Vec<usize>,
        /// Word that was supplied.
        found: Vec<usize>,
    },
    /// The inputs of a layer do not match the outputs of the layer below.
    #[error("layer {layer} expects {expected:?} but its generators consume {found:?}")]
    LayerMismatch {
        /// Zero-based layer index.
        layer: usize,
        /// Word produced by the layers below.
        expected: Vec<usize>,
        /// Concatenated source words of the layer's generators.
        found: Vec<usize>,
    },
    /// A scalar was requested from a morphism with nonempty boundary.
    #[error("morphism is not closed")]
    NotClosed,
    /// Vertex coefficients were requested from a morphism of the wrong shape.
    #[error("morphism is not a single vertex or covertex")]
    NotVertex,
    /// A multiplicity index or coefficient vector is out of range.
    #[error("bad index: {0}")]
    BadIndex(String),
    /// Data that should be invertible or nonzero is degenerate.
    #[error("degenerate data: {0}")]
    Degenerate(String),
    /// An internal consistency failure.
    #[error("internal error: {0}")]
    Internal(String),
}

/// The F-move `F^{abc}_d` as a matrix from the `a(bc)` tree basis (columns)
/// to the `(ab)c` tree basis (rows), together with both index lists. An empty
/// block is returned when `d ∉ a ⊗ b ⊗ c`.
pub fn f_move<S: Scalar>(data: &CategoryData<S>, a: usize, b: usize, c: usize, d: usize) -> FBlock<S> {
    data.f_block(a, b, c, d).cloned().unwrap_or_else(|| FBlock {
        left: Vec::new(),
        right: Vec::new(),
        m: Mat::zeros(0, 0),
        inv: Mat::zeros(0, 0),
    })
}

/// The braiding `a ⊗ b → b ⊗ a`: `c_{a,b}` for the positive sense and
/// `c_{b,a}^{-1}` for the negative one.
pub fn r_move<S: Scalar>(data: &CategoryData<S>, a: usize, b: usize, positive: bool) -> Result<Morphism<S>, GraphError> {
    apply_gen(data, &[a, b], 0, &Gen::Braid { a, b, positive })
}

#[cfg(test)]
mod tests;
