//! Rigidity, fusing-symmetry and operator-calculus suites.
//!
//! Each suite returns a [`Report`] whose records are ordered by label tuple.
//! Errors raised while evaluating an instance are recorded as an infinite
//! residual so that a report never silently drops an instance.

use super::diagram::{evaluate_diagram, Diagram, Gen};
use super::duality::{f_a_scalar, unit_vertex_coeffs};
use super::morphism::Morphism;
use super::operators::{hat_a, omega, sigma_cyclic, sigma_cyclic_inverse, tilde_a, vertex_dual_pairing};
use super::GraphError;
use crate::fusion_data::CategoryData;
use crate::linalg::Mat;
use crate::report::Report;
use crate::scalar::Scalar;

fn push(report: &mut Report, id: &str, instance: String, r: Result<f64, GraphError>) {
    report.push(id, instance, r.unwrap_or(f64::INFINITY));
}

fn names<S: Scalar>(data: &CategoryData<S>, labels: &[usize]) -> String {
    labels.iter().map(|&a| data.name(a)).collect::<Vec<_>>().join(",")
}

/// Admissible triples `(a₁, a₂, a₃)` with `N_{a₁a₂}^{a₃} > 0`, in lexicographic order.
pub fn admissible_triples<S: Scalar>(data: &CategoryData<S>) -> Vec<(usize, usize, usize)> {
    let n = data.rank();
    let mut out = Vec::new();
    for a1 in 0..n {
        for a2 in 0..n {
            for a3 in 0..n {
                if data.n(a1, a2, a3) > 0 {
                    out.push((a1, a2, a3));
                }
            }
        }
    }
    out
}

fn dev_from_identity<S: Scalar>(m: &Mat<S>) -> f64 {
    m.max_diff(&Mat::identity(m.rows().max(m.cols())))
}

// ---------------------------------------------------------------------------
// Rigidity

/// The four zigzag composites of a label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Zigzag {
    /// `(id_a ⊗ e_a)(i_a ⊗ id_a)` on `a`.
    RightOnA,
    /// `(e_a ⊗ id_{a′})(id_{a′} ⊗ i_a)` on `a′`.
    RightOnDual,
    /// `(id_{a′} ⊗ e′_a)(i′_a ⊗ id_{a′})` on `a′`.
    LeftOnDual,
    /// `(e′_a ⊗ id_a)(id_a ⊗ i′_a)` on `a`.
    LeftOnA,
}

impl Zigzag {
    /// All four, in report order.
    pub const ALL: [Zigzag; 4] = [Zigzag::RightOnA, Zigzag::RightOnDual, Zigzag::LeftOnDual, Zigzag::LeftOnA];

    /// Record id.
    pub fn id(self) -> &'static str {
        match self {
            Zigzag::RightOnA => "zigzag_1",
            Zigzag::RightOnDual => "zigzag_2",
            Zigzag::LeftOnDual => "zigzag_3",
            Zigzag::LeftOnA => "zigzag_4",
        }
    }
}

/// Deviations of one zigzag from the identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZigzagResiduals {
    /// Diagram evaluation route.
    pub diagram: f64,
    /// Fusing-matrix expansion route.
    pub expansion: f64,
    /// Difference between the two routes.
    pub agreement: f64,
}

impl ZigzagResiduals {
    /// Largest of the three.
    pub fn max(&self) -> f64 {
        self.diagram.max(self.expansion).max(self.agreement)
    }
}

/// Evaluate one zigzag of label `a` by both routes. `cup_scale` multiplies
/// the cup (`i_a` or `i′_a`) and is `1` for the genuine maps.
pub fn zigzag_residuals<S: Scalar>(data: &CategoryData<S>, a: usize, which: Zigzag, cup_scale: &S) -> Result<ZigzagResiduals, GraphError> {
    let ad = data.dual(a);
    let e = data.unit();
    let (y1, y2) = unit_vertex_coeffs(data, a);
    let fa = f_a_scalar(data, a);
    let k = cup_scale.clone();
    let (strand, cup_layer, cap_layer, expansion) = match which {
        Zigzag::RightOnA => (
            a,
            vec![Gen::CupR(a), Gen::Id(a)],
            vec![Gen::Id(a), Gen::CapR(a)],
            k * y2 / (fa * y1) * data.f(a, ad, a, a, (e, 0, 0), (e, 0, 0)),
        ),
        Zigzag::RightOnDual => (
            ad,
            vec![Gen::Id(ad), Gen::CupR(a)],
            vec![Gen::CapR(a), Gen::Id(ad)],
            k * y2 / (fa * y1) * data.f_inv(ad, a, ad, ad, (e, 0, 0), (e, 0, 0)),
        ),
        Zigzag::LeftOnDual => (
            ad,
            vec![Gen::CupL(a), Gen::Id(ad)],
            vec![Gen::Id(ad), Gen::CapL(a)],
            k * y1 / (fa * y2) * data.f(ad, a, ad, ad, (e, 0, 0), (e, 0, 0)),
        ),
        Zigzag::LeftOnA => (
            a,
            vec![Gen::Id(a), Gen::CupL(a)],
            vec![Gen::CapL(a), Gen::Id(a)],
            k * y1 / (fa * y2) * data.f_inv(a, ad, a, a, (e, 0, 0), (e, 0, 0)),
        ),
    };
    let d = Diagram::new(vec![strand]).then(cup_layer).then(cap_layer);
    let mut mor = evaluate_diagram(data, &d)?;
    // The cup coefficient enters linearly.
    if !cup_scale.is_one() {
        mor = mor.scale(cup_scale);
    }
    let value = mor.blocks[strand].get(0, 0).clone();
    let id = Morphism::identity(data, &[strand]);
    Ok(ZigzagResiduals {
        diagram: mor.max_diff(&id)?,
        expansion: (expansion.clone() - S::one()).modulus(),
        agreement: (value - expansion).modulus(),
    })
}

/// Check all four zigzag identities for every label. One record per label
/// per zigzag; the residual is the largest of the diagram deviation, the
/// expansion deviation and their mutual difference.
pub fn verify_rigidity<S: Scalar>(data: &CategoryData<S>, tol: f64) -> Report {
    verify_rigidity_scaled(data, tol, &S::one())
}

/// [`verify_rigidity`] with every cup multiplied by `cup_scale`.
pub fn verify_rigidity_scaled<S: Scalar>(data: &CategoryData<S>, tol: f64, cup_scale: &S) -> Report {
    let mut report = Report::new("rigidity", tol);
    for a in 0..data.rank() {
        for z in Zigzag::ALL {
            let r = zigzag_residuals(data, a, z, cup_scale).map(|r| r.max());
            push(&mut report, z.id(), format!("a={}", data.name(a)), r);
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Fusing symmetries

/// A vertex with explicit coefficients.
#[derive(Clone, Debug)]
struct V<S> {
    a: usize,
    b: usize,
    c: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> V<S> {
    fn gen(&self) -> Gen<S> {
        Gen::Vertex { a: self.a, b: self.b, c: self.c, coeffs: self.coeffs.clone() }
    }
}

fn column<S: Scalar>(m: &Mat<S>, j: usize) -> Vec<S> {
    (0..m.rows()).map(|i| m.get(i, j).clone()).collect()
}

/// Coefficient row of a morphism `word → [d]` in the tree basis of `word → d`.
fn tree_row<S: Scalar>(mor: &Morphism<S>) -> Vec<S> {
    let d = mor.cod[0];
    let blk = &mor.blocks[d];
    (0..blk.cols()).map(|j| blk.get(0, j).clone()).collect()
}

/// `outer ∘ (id ⊗ inner)` on a three-letter word.
fn product<S: Scalar>(data: &CategoryData<S>, outer: &V<S>, inner: &V<S>) -> Result<Vec<S>, GraphError> {
    let d = Diagram::new(vec![outer.a, inner.a, inner.b])
        .then(vec![Gen::Id(outer.a), inner.gen()])
        .then(vec![outer.gen()]);
    Ok(tree_row(&evaluate_diagram(data, &d)?))
}

/// `outer ∘ (inner ⊗ id)` on a three-letter word.
fn iterate<S: Scalar>(data: &CategoryData<S>, outer: &V<S>, inner: &V<S>) -> Result<Vec<S>, GraphError> {
    let d = Diagram::new(vec![inner.a, inner.b, outer.b])
        .then(vec![inner.gen(), Gen::Id(outer.b)])
        .then(vec![outer.gen()]);
    Ok(tree_row(&evaluate_diagram(data, &d)?))
}

/// Coefficients `C` with `targets[j] = Σ_i C[i][j] basis[i]`.
fn expand<S: Scalar>(targets: &[Vec<S>], basis: &[Vec<S>]) -> Result<Mat<S>, GraphError> {
    let n = basis.first().map_or(0, Vec::len);
    let mut b = Mat::zeros(n, basis.len());
    for (j, v) in basis.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            b.set(i, j, x.clone());
        }
    }
    let mut t = Mat::zeros(n, targets.len());
    for (j, v) in targets.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            t.set(i, j, x.clone());
        }
    }
    b.solve(&t).ok_or_else(|| GraphError::Degenerate("expansion basis is singular".into()))
}

fn vertex_from<S: Scalar>(a: usize, b: usize, c: usize, coeffs: Vec<S>) -> V<S> {
    V { a, b, c, coeffs }
}

fn basis_vertex<S: Scalar>(data: &CategoryData<S>, a: usize, b: usize, c: usize, mu: usize) -> V<S> {
    let coeffs = (0..data.n(a, b, c)).map(|i| if i == mu { S::one() } else { S::zero() }).collect();
    V { a, b, c, coeffs }
}

/// Fusing matrix of block `(a₁,a₂,a₃,a₄)` recomputed by the engine: the
/// products `Y⁽¹⁾_i ∘ (id ⊗ Y⁽²⁾_j)` expanded in the iterates
/// `Y⁽³⁾_k ∘ (Y⁽⁴⁾_l ⊗ id)`. Rows follow the block's left basis, columns its right basis.
pub fn engine_fusing_matrix<S: Scalar>(data: &CategoryData<S>, a1: usize, a2: usize, a3: usize, a4: usize) -> Result<Mat<S>, GraphError> {
    let blk = super::f_move(data, a1, a2, a3, a4);
    let targets = blk
        .right
        .iter()
        .map(|&(a5, j, i)| product(data, &basis_vertex(data, a1, a5, a4, i), &basis_vertex(data, a2, a3, a5, j)))
        .collect::<Result<Vec<_>, _>>()?;
    let basis = blk
        .left
        .iter()
        .map(|&(a6, l, k)| iterate(data, &basis_vertex(data, a6, a3, a4, k), &basis_vertex(data, a1, a2, a6, l)))
        .collect::<Result<Vec<_>, _>>()?;
    expand(&targets, &basis)
}

/// Ω-conjugation symmetry: expanding the iterates `Ω₀(Y⁽¹⁾_i) ∘ (Ω₀(Y⁽²⁾_j) ⊗ id)`
/// in the products `Ω₀(Y⁽³⁾_k) ∘ (id ⊗ Ω₀(Y⁽⁴⁾_l))` reproduces the fusing
/// matrix. Returns the entrywise deviation.
pub fn omega_symmetry_residual<S: Scalar>(data: &CategoryData<S>, a1: usize, a2: usize, a3: usize, a4: usize) -> Result<f64, GraphError> {
    let blk = super::f_move(data, a1, a2, a3, a4);
    let targets = blk
        .right
        .iter()
        .map(|&(a5, j, i)| {
            let outer = vertex_from(a5, a1, a4, column(&omega(data, a1, a5, a4, 0)?, i));
            let inner = vertex_from(a3, a2, a5, column(&omega(data, a2, a3, a5, 0)?, j));
            iterate(data, &outer, &inner)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let basis = blk
        .left
        .iter()
        .map(|&(a6, l, k)| {
            let outer = vertex_from(a3, a6, a4, column(&omega(data, a6, a3, a4, 0)?, k));
            let inner = vertex_from(a2, a1, a6, column(&omega(data, a1, a2, a6, 0)?, l));
            product(data, &outer, &inner)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(expand(&targets, &basis)?.max_diff(&blk.m))
}

/// Ã₀/Ω₋₁ symmetry: expanding the products `Ã₀(Y⁽²⁾_j) ∘ (id ⊗ Ã₀(Y⁽¹⁾_i))`
/// on `a₂ ⊗ a₁ ⊗ a₄′` in the iterates `Ã₀(Y⁽³⁾_k) ∘ (Ω₋₁(Y⁽⁴⁾_l) ⊗ id)`
/// reproduces the fusing matrix. Returns the entrywise deviation.
pub fn tilde_symmetry_residual<S: Scalar>(data: &CategoryData<S>, a1: usize, a2: usize, a3: usize, a4: usize) -> Result<f64, GraphError> {
    let blk = super::f_move(data, a1, a2, a3, a4);
    let (a3d, a4d) = (data.dual(a3), data.dual(a4));
    let targets = blk
        .right
        .iter()
        .map(|&(a5, j, i)| {
            let a5d = data.dual(a5);
            let outer = vertex_from(a2, a5d, a3d, column(&tilde_a(data, a2, a3, a5, 0)?, j));
            let inner = vertex_from(a1, a4d, a5d, column(&tilde_a(data, a1, a5, a4, 0)?, i));
            product(data, &outer, &inner)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let basis = blk
        .left
        .iter()
        .map(|&(a6, l, k)| {
            let outer = vertex_from(a6, a4d, a3d, column(&tilde_a(data, a6, a3, a4, 0)?, k));
            let inner = vertex_from(a2, a1, a6, column(&omega(data, a1, a2, a6, -1)?, l));
            iterate(data, &outer, &inner)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(expand(&targets, &basis)?.max_diff(&blk.m))
}

/// Iterates `Y⁽³⁾_k ∘ (Y⁽⁴⁾_l ⊗ id)` over the left basis of `F^{b₁b₂b₃}_d`,
/// with the unit-channel element replaced by `unit ∘ (inner ⊗ id)`.
fn iterate_basis<S: Scalar>(data: &CategoryData<S>, b: [usize; 3], d: usize, inner: &V<S>) -> Result<(Vec<Vec<S>>, usize), GraphError> {
    let e = data.unit();
    let blk = super::f_move(data, b[0], b[1], b[2], d);
    let mut at = None;
    let mut out = Vec::new();
    for (idx, &(x, l, k)) in blk.left.iter().enumerate() {
        let (outer, inner_v) = if x == e {
            at = Some(idx);
            (basis_vertex(data, e, b[2], d, 0), inner.clone())
        } else {
            (basis_vertex(data, x, b[2], d, k), basis_vertex(data, b[0], b[1], x, l))
        };
        out.push(iterate(data, &outer, &inner_v)?);
    }
    let at = at.ok_or_else(|| GraphError::Degenerate("no unit channel".into()))?;
    Ok((out, at))
}

/// Products `Y⁽¹⁾_i ∘ (id ⊗ Y⁽²⁾_j)` over the right basis of `F^{b₁b₂b₃}_d`,
/// with the unit-channel element replaced by `unit ∘ (id ⊗ inner)`.
fn product_basis<S: Scalar>(data: &CategoryData<S>, b: [usize; 3], d: usize, inner: &V<S>) -> Result<(Vec<Vec<S>>, usize), GraphError> {
    let e = data.unit();
    let blk = super::f_move(data, b[0], b[1], b[2], d);
    let mut at = None;
    let mut out = Vec::new();
    for (idx, &(y, j, i)) in blk.right.iter().enumerate() {
        let (outer, inner_v) = if y == e {
            at = Some(idx);
            (basis_vertex(data, b[0], e, d, 0), inner.clone())
        } else {
            (basis_vertex(data, b[0], y, d, i), basis_vertex(data, b[1], b[2], y, j))
        };
        out.push(product(data, &outer, &inner_v)?);
    }
    let at = at.ok_or_else(|| GraphError::Degenerate("no unit channel".into()))?;
    Ok((out, at))
}

/// The four fusing-matrix expressions of `F_a`, computed by engine
/// expansions: the defining coefficient of the unit-channel product in the
/// iterates on `a ⊗ a′ ⊗ a`, the inverse coefficient on the same word, the
/// inverse coefficient on `a′ ⊗ a ⊗ a′`, and `F_{a′}`.
pub fn f_a_expressions<S: Scalar>(data: &CategoryData<S>, a: usize) -> Result<[S; 4], GraphError> {
    let ad = data.dual(a);
    let e = data.unit();
    let (y1, y2) = unit_vertex_coeffs(data, a);
    let y1v = vertex_from(a, ad, e, vec![y1]);
    let y2v = vertex_from(ad, a, e, vec![y2]);

    let (iters, li) = iterate_basis(data, [a, ad, a], a, &y1v)?;
    let (prods, ri) = product_basis(data, [a, ad, a], a, &y2v)?;
    let def = expand(&prods, &iters)?.get(li, ri).clone();
    let inv1 = expand(&iters, &prods)?.get(ri, li).clone();

    let (iters, li) = iterate_basis(data, [ad, a, ad], ad, &y2v)?;
    let (prods, ri) = product_basis(data, [ad, a, ad], ad, &y1v)?;
    let inv2 = expand(&iters, &prods)?.get(ri, li).clone();

    Ok([def, inv1, inv2, f_a_scalar(data, ad)])
}

/// Check the fusing-matrix symmetries, the `F_a` expressions, the dimension
/// identity and the unit-vertex phase identities.
///
/// Record ids: `engine_fusing` (engine expansion equals the stored block),
/// `omega_symmetry`, `tilde_symmetry`, `f_a_definition`, `f_a_inverse_1`,
/// `f_a_inverse_2`, `f_a_dual`, `dim_identity` (`1/F_a` against the
/// Perron–Frobenius dimension), `lemma_omega0` (`Y_{a′a}^e = θ_a Ω₀(Y_{aa′}^e)`),
/// `lemma_omega_minus1` (`Y_{a′a}^e = θ_a^{-1} Ω₋₁(Y_{aa′}^e)`),
/// `lemma_tilde_right` (`Ã₀(Y_{a′e}^{a′}) = θ_a Y_{a′a}^e`) and
/// `lemma_tilde_left` (`Ã₀(Y_{ea′}^{a′}) = Y_{ea}^a`).
pub fn verify_fusing_symmetries<S: Scalar>(data: &CategoryData<S>, tol: f64) -> Report {
    let mut report = Report::new("fusing_symmetries", tol);
    let keys: Vec<[usize; 4]> = data.f_blocks().keys().copied().collect();
    for key in &keys {
        let [a1, a2, a3, a4] = *key;
        let inst = names(data, key);
        let engine = engine_fusing_matrix(data, a1, a2, a3, a4).map(|m| m.max_diff(&super::f_move(data, a1, a2, a3, a4).m));
        push(&mut report, "engine_fusing", inst.clone(), engine);
        push(&mut report, "omega_symmetry", inst.clone(), omega_symmetry_residual(data, a1, a2, a3, a4));
        push(&mut report, "tilde_symmetry", inst, tilde_symmetry_residual(data, a1, a2, a3, a4));
    }
    let e = data.unit();
    for a in 0..data.rank() {
        let ad = data.dual(a);
        let inst = format!("a={}", data.name(a));
        let fa = f_a_scalar(data, a);
        match f_a_expressions(data, a) {
            Ok(ex) => {
                let ids = ["f_a_definition", "f_a_inverse_1", "f_a_inverse_2", "f_a_dual"];
                for (id, v) in ids.iter().zip(ex) {
                    report.push(*id, inst.clone(), (v - fa.clone()).modulus());
                }
            }
            Err(_) => {
                for id in ["f_a_definition", "f_a_inverse_1", "f_a_inverse_2", "f_a_dual"] {
                    report.push(id, inst.clone(), f64::INFINITY);
                }
            }
        }
        let dim = (S::one() / fa).to_c64();
        report.push("dim_identity", inst.clone(), (dim - data.qdim(a)).norm());

        let (y1, y2) = unit_vertex_coeffs(data, a);
        let th = data.twist(a).clone();
        let lemma0 = omega(data, a, ad, e, 0).map(|o| (th.clone() * o.get(0, 0).clone() * y1.clone() - y2.clone()).modulus());
        push(&mut report, "lemma_omega0", inst.clone(), lemma0);
        let lemma1 = omega(data, a, ad, e, -1).map(|o| (o.get(0, 0).clone() * y1.clone() / th.clone() - y2.clone()).modulus());
        push(&mut report, "lemma_omega_minus1", inst.clone(), lemma1);
        let right = tilde_a(data, ad, e, ad, 0).map(|t| (t.get(0, 0).clone() - th.clone() * y2.clone()).modulus());
        push(&mut report, "lemma_tilde_right", inst.clone(), right);
        let left = tilde_a(data, e, ad, ad, 0).map(|t| (t.get(0, 0).clone() - S::one()).modulus());
        push(&mut report, "lemma_tilde_left", inst, left);
    }
    report
}

// ---------------------------------------------------------------------------
// Operator calculus

/// Check, on every admissible triple and both values of `r`: `Ω₋₁ ∘ Ω₀ = id`
/// (`omega_inverse`), `Â_r ∘ Ã_r = id` and `Ã_r ∘ Â_r = id` (`tilde_hat`),
/// `σ³ = id` (`sigma_cube`), `σ₁₃₂ ∘ σ₁₂₃ = id` (`sigma_inverse`),
/// `Ω₀∘Ã₀ = Ω₋₁∘Ã₋₁` (`sigma_r_independence`) and the dual-basis pairing
/// `Ã_r(e_i) ∘ Â*_r(f_j) = δ_{ij}` (`dual_pairing`).
pub fn verify_operator_calculus<S: Scalar>(data: &CategoryData<S>, tol: f64) -> Report {
    let mut report = Report::new("operator_calculus", tol);
    for (a1, a2, a3) in admissible_triples(data) {
        let inst = names(data, &[a1, a2, a3]);
        let om = (|| Ok(dev_from_identity(&omega(data, a2, a1, a3, -1)?.mul(&omega(data, a1, a2, a3, 0)?))))();
        push(&mut report, "omega_inverse", inst.clone(), om);
        for r in [0, -1] {
            let inst_r = format!("{inst};r={r}");
            let th = (|| {
                let t = tilde_a(data, a1, a2, a3, r)?;
                let h = hat_a(data, a1, a2, a3, r)?;
                Ok(dev_from_identity(&h.mul(&t)).max(dev_from_identity(&t.mul(&h))))
            })();
            push(&mut report, "tilde_hat", inst_r.clone(), th);
            let cube = (|| {
                let (b1, b2, b3) = (data.dual(a3), a1, data.dual(a2));
                let (c1, c2, c3) = (data.dual(b3), b1, data.dual(b2));
                let s = sigma_cyclic(data, c1, c2, c3, r)?
                    .mul(&sigma_cyclic(data, b1, b2, b3, r)?)
                    .mul(&sigma_cyclic(data, a1, a2, a3, r)?);
                Ok(dev_from_identity(&s))
            })();
            push(&mut report, "sigma_cube", inst_r.clone(), cube);
            let inv = (|| {
                let s = sigma_cyclic_inverse(data, a1, a2, a3, r)?.mul(&sigma_cyclic(data, a1, a2, a3, r)?);
                Ok(dev_from_identity(&s))
            })();
            push(&mut report, "sigma_inverse", inst_r.clone(), inv);
            let pairing = vertex_dual_pairing(data, a1, a2, a3, r).map(|p| dev_from_identity(&p));
            push(&mut report, "dual_pairing", inst_r, pairing);
        }
        let indep = (|| Ok(sigma_cyclic(data, a1, a2, a3, 0)?.max_diff(&sigma_cyclic(data, a1, a2, a3, -1)?)))();
        push(&mut report, "sigma_r_independence", inst.clone(), indep);
    }
    report
}
