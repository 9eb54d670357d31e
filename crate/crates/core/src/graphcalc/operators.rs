//! Vertex operators: braiding Ω_r, bending Ã_r and Â_r, the dual-basis
//! bending Â*_r and the cyclic rotation σ.
//!
//! Each operator is linear, so it is returned as a matrix whose column `μ`
//! holds the image of basis vertex `μ` expanded in the target basis. The
//! index `r` is `0` or `-1`.


use super::diagram::{evaluate_diagram, Diagram, Gen};
use super::duality::f_a_scalar;
use super::GraphError;
use crate::fusion_data::CategoryData;
use crate::linalg::Mat;
use crate::scalar::Scalar;

fn check_r(r: i32) -> Result<(), GraphError> {
    if r == 0 || r == -1 {
        Ok(())
    } else {
        Err(GraphError::BadIndex(format!("r = {r}, expected 0 or -1")))
    }
}

fn unit_vec<S: Scalar>(n: usize, k: usize) -> Vec<S> {
    (0..n).map(|i| if i == k { S::one() } else { S::zero() }).collect()
}

/// Assemble a matrix from the images of the basis vectors.
fn columns<S: Scalar>(
    n_out: usize,
    n_in: usize,
    image: impl Fn(Vec<S>) -> Result<Vec<S>, GraphError>,
) -> Result<Mat<S>, GraphError> {
    let mut m = Mat::zeros(n_out, n_in);
    for j in 0..n_in {
        let col = image(unit_vec(n_in, j))?;
        if col.len() != n_out {
            return Err(GraphError::Internal(format!("image has length {}, expected {n_out}", col.len())));
        }
        for (i, v) in col.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// Braid generator `x ⊗ y → y ⊗ x` whose sense is `positive`.
fn braid<S>(a: usize, b: usize, positive: bool) -> Gen<S> {
    Gen::Braid { a, b, positive }
}

/// The crossing used by Ã_r on `a₁ ⊗ a₃′`; Â_r and Â*_r use its inverse.
fn bend_positive(r: i32) -> bool {
    r == -1
}

/// `Ω_r : hom(a₁ ⊗ a₂, a₃) → hom(a₂ ⊗ a₁, a₃)`, `Ω₀(Y) = Y ∘ c_{a₂,a₁}` and
/// `Ω₋₁(Y) = Y ∘ c_{a₁,a₂}^{-1}`.
pub fn omega<S: Scalar>(data: &CategoryData<S>, a1: usize, a2: usize, a3: usize, r: i32) -> Result<Mat<S>, GraphError> {
    check_r(r)?;
    columns(data.n(a2, a1, a3), data.n(a1, a2, a3), |coeffs| {
        let d = Diagram::new(vec![a2, a1])
            .then(vec![braid(a2, a1, r == 0)])
            .then(vec![Gen::Vertex { a: a1, b: a2, c: a3, coeffs }]);
        evaluate_diagram(data, &d)?.vertex_coeffs()
    })
}

/// `Ã_r : hom(a₁ ⊗ a₂, a₃) → hom(a₁ ⊗ a₃′, a₂′)`: bend the output leg down
/// on the left with `e′_{a₃′}`, bend the right input leg up with `i′_{a₂′}`,
/// and cross `a₁` with `a₃′`.
pub fn tilde_a<S: Scalar>(data: &CategoryData<S>, a1: usize, a2: usize, a3: usize, r: i32) -> Result<Mat<S>, GraphError> {
    check_r(r)?;
    let (a2d, a3d) = (data.dual(a2), data.dual(a3));
    columns(data.n(a1, a3d, a2d), data.n(a1, a2, a3), |coeffs| {
        let d = Diagram::new(vec![a1, a3d])
            .then(vec![braid(a1, a3d, bend_positive(r)), Gen::CupL(a2d)])
            .then(vec![Gen::Id(a3d), Gen::Vertex { a: a1, b: a2, c: a3, coeffs }, Gen::Id(a2d)])
            .then(vec![Gen::CapL(a3d), Gen::Id(a2d)]);
        evaluate_diagram(data, &d)?.vertex_coeffs()
    })
}

/// `Â_r : hom(a₁ ⊗ a₃′, a₂′) → hom(a₁ ⊗ a₂, a₃)`, the inverse of `Ã_r`.
/// The arguments name the target space.
pub fn hat_a<S: Scalar>(data: &CategoryData<S>, a1: usize, a2: usize, a3: usize, r: i32) -> Result<Mat<S>, GraphError> {
    check_r(r)?;
    let (a2d, a3d) = (data.dual(a2), data.dual(a3));
    columns(data.n(a1, a2, a3), data.n(a1, a3d, a2d), |coeffs| {
        let d = Diagram::new(vec![a1, a2])
            .then(vec![Gen::CupL(a3d), Gen::Id(a1), Gen::Id(a2)])
            .then(vec![Gen::Id(a3), braid(a3d, a1, !bend_positive(r)), Gen::Id(a2)])
            .then(vec![Gen::Id(a3), Gen::Vertex { a: a1, b: a3d, c: a2d, coeffs }, Gen::Id(a2)])
            .then(vec![Gen::Id(a3), Gen::CapL(a2d)]);
        evaluate_diagram(data, &d)?.vertex_coeffs()
    })
}

/// `Â*_r : hom(a₃, a₁ ⊗ a₂) → hom(a₂′, a₁ ⊗ a₃′)` on covertices: bend the
/// input leg up with `i_{a₃′}`, close the right output leg with `e_{a₂′}`,
/// undo the Ã_r crossing, and scale by `dim a₂ / dim a₃`.
///
/// If `e_i` and `f_j` are dual bases of `hom(a₁ ⊗ a₂, a₃)` and
/// `hom(a₃, a₁ ⊗ a₂)`, then `Ã_r(e_i) ∘ Â*_r(f_j) = δ_{ij}`.
pub fn hat_a_dual<S: Scalar>(data: &CategoryData<S>, a1: usize, a2: usize, a3: usize, r: i32) -> Result<Mat<S>, GraphError> {
    check_r(r)?;
    let (a2d, a3d) = (data.dual(a2), data.dual(a3));
    let factor = f_a_scalar(data, a3) / f_a_scalar(data, a2);
    let m = columns(data.n(a1, a3d, a2d), data.n(a1, a2, a3), |coeffs| {
        let d = Diagram::new(vec![a2d])
            .then(vec![Gen::CupR(a3d), Gen::Id(a2d)])
            .then(vec![Gen::Id(a3d), Gen::Covertex { c: a3, a: a1, b: a2, coeffs }, Gen::Id(a2d)])
            .then(vec![braid(a3d, a1, !bend_positive(r)), Gen::CapR(a2d)]);
        evaluate_diagram(data, &d)?.covertex_coeffs()
    })?;
    Ok(m.scale(&factor))
}

/// The matrix `P[i][j]` with `Ã_r(e_i) ∘ Â*_r(f_j) = P[i][j] · id_{a₂′}`,
/// where `e_i`, `f_j` are the basis vertices and covertices of `a₁ ⊗ a₂ ↔ a₃`.
pub fn vertex_dual_pairing<S: Scalar>(data: &CategoryData<S>, a1: usize, a2: usize, a3: usize, r: i32) -> Result<Mat<S>, GraphError> {
    let n = data.n(a1, a2, a3);
    let (a2d, a3d) = (data.dual(a2), data.dual(a3));
    let ta = tilde_a(data, a1, a2, a3, r)?;
    let hd = hat_a_dual(data, a1, a2, a3, r)?;
    let mut p = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let ti: Vec<S> = (0..ta.rows()).map(|k| ta.get(k, i).clone()).collect();
            let fj: Vec<S> = (0..hd.rows()).map(|k| hd.get(k, j).clone()).collect();
            let d = Diagram::new(vec![a2d])
                .then(vec![Gen::Covertex { c: a2d, a: a1, b: a3d, coeffs: fj }])
                .then(vec![Gen::Vertex { a: a1, b: a3d, c: a2d, coeffs: ti }]);
            let mor = evaluate_diagram(data, &d)?;
            p.set(i, j, mor.blocks[a2d].get(0, 0).clone());
        }
    }
    Ok(p)
}

/// `σ₁₂₃ = Ω_r ∘ Ã_r : hom(a₁ ⊗ a₂, a₃) → hom(a₃′ ⊗ a₁, a₂′)`.
pub fn sigma_cyclic<S: Scalar>(data: &CategoryData<S>, a1: usize, a2: usize, a3: usize, r: i32) -> Result<Mat<S>, GraphError> {
    let (a2d, a3d) = (data.dual(a2), data.dual(a3));
    Ok(omega(data, a1, a3d, a2d, r)?.mul(&tilde_a(data, a1, a2, a3, r)?))
}

/// `σ₁₃₂ = Â_r ∘ Ω₋ᵣ₋₁ : hom(a₃′ ⊗ a₁, a₂′) → hom(a₁ ⊗ a₂, a₃)`, the inverse
/// of [`sigma_cyclic`]. The arguments name the target space.
pub fn sigma_cyclic_inverse<S: Scalar>(data: &CategoryData<S>, a1: usize, a2: usize, a3: usize, r: i32) -> Result<Mat<S>, GraphError> {
    check_r(r)?;
    let (a2d, a3d) = (data.dual(a2), data.dual(a3));
    Ok(hat_a(data, a1, a2, a3, r)?.mul(&omega(data, a3d, a1, a2d, -r - 1)?))
}
