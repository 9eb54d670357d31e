//! Fusion-tree bases of hom spaces.

use std::collections::HashMap;

use crate::fusion_data::CategoryData;
use crate::scalar::Scalar;

/// A left-canonical splitting tree of `c → a₁ ⊗ … ⊗ aₙ`.
///
/// The tree splits `c = yₙ → yₙ₋₁ ⊗ aₙ`, then `yₙ₋₁ → yₙ₋₂ ⊗ aₙ₋₁`, down to
/// `y₁ → y₀ ⊗ a₁` with `y₀` the unit. `ys[k]` is `y_{k+1}` and `mus[k]` the
/// multiplicity index of the vertex `y_{k+1} → y_k ⊗ a_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    /// Intermediate labels; the last one is the target.
    pub ys: Vec<usize>,
    /// Vertex multiplicity indices.
    pub mus: Vec<usize>,
}

impl Tree {
    /// Label on the spine just before leg `k`.
    pub fn before(&self, k: usize, unit: usize) -> usize {
        if k == 0 {
            unit
        } else {
            self.ys[k - 1]
        }
    }
}

/// Hom space between a tensor word and a simple target, with its
/// deterministic fusion-tree basis.
#[derive(Clone, Debug, PartialEq)]
pub struct HomSpace {
    /// Source word.
    pub word: Vec<usize>,
    /// Simple target.
    pub target: usize,
    /// Basis trees, sorted by internal labels then multiplicity indices.
    pub basis: Vec<Tree>,
    index: HashMap<Tree, usize>,
}

impl HomSpace {
    /// Dimension of the space.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Position of a tree in the basis.
    pub fn index_of(&self, t: &Tree) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// Enumerate the fusion-tree basis of `word → target`.
pub fn hom_space<S: Scalar>(data: &CategoryData<S>, word: &[usize], target: usize) -> HomSpace {
    let mut basis = Vec::new();
    let mut ys = Vec::with_capacity(word.len());
    let mut mus = Vec::with_capacity(word.len());
    enumerate(data, word, target, data.unit(), &mut ys, &mut mus, &mut basis);
    basis.sort_by(|a: &Tree, b: &Tree| (&a.ys, &a.mus).cmp(&(&b.ys, &b.mus)));
    let index = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    HomSpace { word: word.to_vec(), target, basis, index }
}

fn enumerate<S: Scalar>(
    data: &CategoryData<S>,
    word: &[usize],
    target: usize,
    prev: usize,
    ys: &mut Vec<usize>,
    mus: &mut Vec<usize>,
    out: &mut Vec<Tree>,
) {
    let k = ys.len();
    if k == word.len() {
        if prev == target {
            out.push(Tree { ys: ys.clone(), mus: mus.clone() });
        }
        return;
    }
    for y in 0..data.rank() {
        for mu in 0..data.n(prev, word[k], y) {
            ys.push(y);
            mus.push(mu);
            enumerate(data, word, target, y, ys, mus, out);
            ys.pop();
            mus.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_data::{builtin_category, Builtin};

    #[test]
    fn fibonacci_dimensions() {
        let d = builtin_category(Builtin::Fibonacci);
        assert_eq!(hom_space(&d, &[1, 1], 0).dim(), 1);
        assert_eq!(hom_space(&d, &[1], 0).dim(), 0);
        // τ^{⊗4} → 1 has dimension F_3 = 2.
        assert_eq!(hom_space(&d, &[1, 1, 1, 1], 0).dim(), 2);
        assert_eq!(hom_space(&d, &[], 0).dim(), 1);
    }

    #[test]
    fn trivial_dimension() {
        let d = builtin_category(Builtin::Trivial);
        assert_eq!(hom_space(&d, &[0, 0], 0).dim(), 1);
    }
}
