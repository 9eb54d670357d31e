//! Normalization of the duality maps.
//!
//! For every label `a` two unit-channel vertices are fixed:
//!
//! - `Y⁽¹⁾_a = Y_{aa′}^e`, a multiple `y₁(a)` of the basis vertex of
//!   `hom(a ⊗ a′, e)`;
//! - `Y⁽²⁾_a = Y_{a′a}^e = θ_a Ω₀(Y⁽¹⁾_a)`, a multiple `y₂(a)` of the basis
//!   vertex of `hom(a′ ⊗ a, e)`.
//!
//! For the smaller label of a dual pair `y₁ = 1`; the partner reuses the same
//! two vertices with roles exchanged, so `Y⁽¹⁾_{a′} = Y⁽²⁾_a`. For a
//! self-dual label `y₂ = θ_a R^{aa}_e` is its Frobenius–Schur sign.
//!
//! The caps are `e′_a = Y⁽¹⁾_a` and `e_a = Y⁽²⁾_a`; the cups `i_a`, `i′_a`
//! are scaled so that `e′_a ∘ i_a = e_a ∘ i′_a = 1/F_a` with
//! `F_a = F(Y_{ae}^a ⊗ Y⁽²⁾_a; Y_{ea}^a ⊗ Y⁽¹⁾_a)`.


use super::GraphError;
use crate::fusion_data::CategoryData;
use crate::scalar::Scalar;

/// Coefficients `(y₁(a), y₂(a))` of `Y⁽¹⁾_a` and `Y⁽²⁾_a` against the basis
/// vertices of `hom(a ⊗ a′, e)` and `hom(a′ ⊗ a, e)`.
pub fn unit_vertex_coeffs<S: Scalar>(data: &CategoryData<S>, a: usize) -> (S, S) {
    let ad = data.dual(a);
    let e = data.unit();
    let y2_of = |x: usize| {
        let xd = data.dual(x);
        data.twist(x).clone() * data.r(xd, x, e, 0, 0)
    };
    if a <= ad {
        (S::one(), y2_of(a))
    } else {
        (y2_of(ad), S::one())
    }
}

/// The scalar `F_a = (y₂/y₁) · F^{a a′ a}_a[(e,0,0), (e,0,0)]`.
pub fn f_a_scalar<S: Scalar>(data: &CategoryData<S>, a: usize) -> S {
    let (y1, y2) = unit_vertex_coeffs(data, a);
    let ad = data.dual(a);
    let e = data.unit();
    y2 / y1 * data.f(a, ad, a, a, (e, 0, 0), (e, 0, 0))
}

/// Categorical dimension `1/F_a`.
pub fn categorical_dim<S: Scalar>(data: &CategoryData<S>, a: usize) -> Result<S, GraphError> {
    let fa = f_a_scalar(data, a);
    if fa.is_zero() {
        return Err(GraphError::Degenerate(format!("F_a vanishes for label {}", data.name(a))));
    }
    Ok(S::one() / fa)
}

/// Which of the four duality maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Duality {
    /// `i_a : e → a ⊗ a′`.
    CupR,
    /// `e_a : a′ ⊗ a → e`.
    CapR,
    /// `i′_a : e → a′ ⊗ a`.
    CupL,
    /// `e′_a : a ⊗ a′ → e`.
    CapL,
}

/// Coefficient of a duality map against the basis (co)vertex of its unit
/// channel.
pub fn duality_coeff<S: Scalar>(data: &CategoryData<S>, a: usize, which: Duality) -> Result<S, GraphError> {
    let (y1, y2) = unit_vertex_coeffs(data, a);
    let fa = f_a_scalar(data, a);
    if fa.is_zero() || y1.is_zero() || y2.is_zero() {
        return Err(GraphError::Degenerate(format!("duality data of label {} vanishes", data.name(a))));
    }
    Ok(match which {
        Duality::CapL => y1,
        Duality::CapR => y2,
        Duality::CupR => S::one() / (fa * y1),
        Duality::CupL => S::one() / (fa * y2),
    })
}
