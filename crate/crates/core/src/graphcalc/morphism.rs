//! Morphisms between tensor words as block matrices over fusion trees.


use super::hom::{hom_space, Tree};
use super::GraphError;
use crate::fusion_data::CategoryData;
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// A morphism `dom → cod` between tensor words.
///
/// For each simple `c` the block `blocks[c]` describes post-composition on
/// splitting trees: column `t` holds the expansion of `φ ∘ t` in the
/// fusion-tree basis of `c → cod`. Composition is the block-wise matrix
/// product.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism<S> {
    /// Source word.
    pub dom: Vec<usize>,
    /// Target word.
    pub cod: Vec<usize>,
    /// Block per simple object, indexed `[cod tree, dom tree]`.
    pub blocks: Vec<Mat<S>>,
}

impl<S: Scalar> Morphism<S> {
    /// The zero morphism.
    pub fn zero(data: &CategoryData<S>, dom: &[usize], cod: &[usize]) -> Self {
        let blocks = (0..data.rank())
            .map(|c| Mat::zeros(hom_space(data, cod, c).dim(), hom_space(data, dom, c).dim()))
            .collect();
        Self { dom: dom.to_vec(), cod: cod.to_vec(), blocks }
    }

    /// The identity on a word.
    pub fn identity(data: &CategoryData<S>, word: &[usize]) -> Self {
        let blocks = (0..data.rank()).map(|c| Mat::identity(hom_space(data, word, c).dim())).collect();
        Self { dom: word.to_vec(), cod: word.to_vec(), blocks }
    }

    /// Build from a rule sending each source tree to a combination of target trees.
    pub fn from_tree_map(
        data: &CategoryData<S>,
        dom: &[usize],
        cod: &[usize],
        rule: impl Fn(usize, &Tree) -> Vec<(Tree, S)>,
    ) -> Result<Self, GraphError> {
        let mut blocks = Vec::with_capacity(data.rank());
        for c in 0..data.rank() {
            let src = hom_space(data, dom, c);
            let dst = hom_space(data, cod, c);
            let mut m = Mat::zeros(dst.dim(), src.dim());
            for (j, t) in src.basis.iter().enumerate() {
                for (t2, v) in rule(c, t) {
                    if v.is_zero() {
                        continue;
                    }
                    let i = dst.index_of(&t2).ok_or_else(|| {
                        GraphError::Internal(format!("tree {t2:?} not in the basis of {cod:?} → {c}"))
                    })?;
                    m.add_at(i, j, v);
                }
            }
            blocks.push(m);
        }
        Ok(Self { dom: dom.to_vec(), cod: cod.to_vec(), blocks })
    }

    /// `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Result<Self, GraphError> {
        if self.dom != rhs.cod {
            return Err(GraphError::BoundaryMismatch { expected: self.dom.clone(), found: rhs.cod.clone() });
        }
        let blocks = self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a.mul(b)).collect();
        Ok(Self { dom: rhs.dom.clone(), cod: self.cod.clone(), blocks })
    }

    /// Sum of two parallel morphisms.
    pub fn add(&self, rhs: &Self) -> Result<Self, GraphError> {
        self.check_parallel(rhs)?;
        let blocks = self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a.add(b)).collect();
        Ok(Self { dom: self.dom.clone(), cod: self.cod.clone(), blocks })
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &S) -> Self {
        Self { dom: self.dom.clone(), cod: self.cod.clone(), blocks: self.blocks.iter().map(|b| b.scale(s)).collect() }
    }

    /// Largest entrywise difference from a parallel morphism.
    pub fn max_diff(&self, rhs: &Self) -> Result<f64, GraphError> {
        self.check_parallel(rhs)?;
        Ok(self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a.max_diff(b)).fold(0.0, f64::max))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(Mat::max_abs).fold(0.0, f64::max)
    }

    fn check_parallel(&self, rhs: &Self) -> Result<(), GraphError> {
        if self.dom != rhs.dom {
            return Err(GraphError::BoundaryMismatch { expected: self.dom.clone(), found: rhs.dom.clone() });
        }
        if self.cod != rhs.cod {
            return Err(GraphError::BoundaryMismatch { expected: self.cod.clone(), found: rhs.cod.clone() });
        }
        Ok(())
    }

    /// Value of a morphism between empty words.
    pub fn scalar(&self, data: &CategoryData<S>) -> Result<S, GraphError> {
        if !self.dom.is_empty() || !self.cod.is_empty() {
            return Err(GraphError::NotClosed);
        }
        Ok(self.blocks[data.unit()].get(0, 0).clone())
    }

    /// Coefficients of a morphism `[a, b] → [c]` in the vertex basis of
    /// `hom(a ⊗ b, c)`, ordered by multiplicity index.
    pub fn vertex_coeffs(&self) -> Result<Vec<S>, GraphError> {
        if self.dom.len() != 2 || self.cod.len() != 1 {
            return Err(GraphError::NotVertex);
        }
        let blk = &self.blocks[self.cod[0]];
        Ok((0..blk.cols()).map(|j| blk.get(0, j).clone()).collect())
    }

    /// Coefficients of a morphism `[c] → [a, b]` in the covertex basis of
    /// `hom(c, a ⊗ b)`.
    pub fn covertex_coeffs(&self) -> Result<Vec<S>, GraphError> {
        if self.dom.len() != 1 || self.cod.len() != 2 {
            return Err(GraphError::NotVertex);
        }
        let blk = &self.blocks[self.dom[0]];
        Ok((0..blk.rows()).map(|i| blk.get(i, 0).clone()).collect())
    }
}

/// Primitive local moves on trees. All positions are leg indices.
pub(crate) mod prim {
    use super::*;

    fn splice<T: Clone>(v: &[T], at: usize, remove: usize, insert: &[T]) -> Vec<T> {
        let mut out = Vec::with_capacity(v.len() + insert.len());
        out.extend_from_slice(&v[..at]);
        out.extend_from_slice(insert);
        out.extend_from_slice(&v[at + remove..]);
        out
    }

    /// Fuse legs `pos, pos + 1` into `target` through basis vertex `nu`.
    pub fn vertex<S: Scalar>(data: &CategoryData<S>, word: &[usize], pos: usize, target: usize, nu: usize) -> Result<Morphism<S>, GraphError> {
        let (a, b) = (word[pos], word[pos + 1]);
        let cod = splice(word, pos, 2, &[target]);
        let e = data.unit();
        Morphism::from_tree_map(data, word, &cod, |_, t| {
            let u = t.before(pos, e);
            let d = t.ys[pos + 1];
            let left = (t.ys[pos], t.mus[pos], t.mus[pos + 1]);
            let mut out = Vec::new();
            for de in 0..data.n(u, target, d) {
                let v = data.f(u, a, b, d, left, (target, nu, de));
                out.push((
                    Tree { ys: splice(&t.ys, pos, 2, &[d]), mus: splice(&t.mus, pos, 2, &[de]) },
                    v,
                ));
            }
            out
        })
    }

    /// Split leg `pos` into `a ⊗ b` through basis covertex `nu`.
    pub fn covertex<S: Scalar>(data: &CategoryData<S>, word: &[usize], pos: usize, a: usize, b: usize, nu: usize) -> Result<Morphism<S>, GraphError> {
        let c = word[pos];
        let cod = splice(word, pos, 1, &[a, b]);
        let e = data.unit();
        Morphism::from_tree_map(data, word, &cod, |_, t| {
            if nu >= data.n(a, b, c) {
                return Vec::new();
            }
            let u = t.before(pos, e);
            let d = t.ys[pos];
            let right = (c, nu, t.mus[pos]);
            let mut out = Vec::new();
            if let Some(blk) = data.f_block(u, a, b, d) {
                for &(x, al, be) in &blk.left {
                    let v = data.f_inv(u, a, b, d, right, (x, al, be));
                    out.push((
                        Tree { ys: splice(&t.ys, pos, 1, &[x, d]), mus: splice(&t.mus, pos, 1, &[al, be]) },
                        v,
                    ));
                }
            }
            out
        })
    }

    /// Insert a unit leg at position `pos`.
    pub fn unit_in<S: Scalar>(data: &CategoryData<S>, word: &[usize], pos: usize) -> Result<Morphism<S>, GraphError> {
        let e = data.unit();
        let cod = splice(word, pos, 0, &[e]);
        Morphism::from_tree_map(data, word, &cod, |_, t| {
            let y = t.before(pos, e);
            vec![(Tree { ys: splice(&t.ys, pos, 0, &[y]), mus: splice(&t.mus, pos, 0, &[0]) }, S::one())]
        })
    }

    /// Remove the unit leg at position `pos`.
    pub fn unit_out<S: Scalar>(data: &CategoryData<S>, word: &[usize], pos: usize) -> Result<Morphism<S>, GraphError> {
        if word[pos] != data.unit() {
            return Err(GraphError::Internal(format!("leg {pos} of {word:?} is not the unit")));
        }
        let cod = splice(word, pos, 1, &[]);
        Morphism::from_tree_map(data, word, &cod, |_, t| {
            vec![(Tree { ys: splice(&t.ys, pos, 1, &[]), mus: splice(&t.mus, pos, 1, &[]) }, S::one())]
        })
    }
}
