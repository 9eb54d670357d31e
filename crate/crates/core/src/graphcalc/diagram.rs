//! Layered string diagrams and their evaluation.


use super::duality::{duality_coeff, Duality};
use super::morphism::{prim, Morphism};
use super::GraphError;
use crate::fusion_data::CategoryData;
use crate::scalar::Scalar;

/// A diagram generator. Every generator has a source and a target word.
#[derive(Clone, Debug, PartialEq)]
pub enum Gen<S> {
    /// Identity strand.
    Id(usize),
    /// Vertex `a ⊗ b → c` with coefficients against the basis vertices.
    Vertex {
        /// Left input.
        a: usize,
        /// Right input.
        b: usize,
        /// Output.
        c: usize,
        /// Coefficient of each basis vertex.
        coeffs: Vec<S>,
    },
    /// Covertex `c → a ⊗ b` with coefficients against the basis covertices.
    Covertex {
        /// Input.
        c: usize,
        /// Left output.
        a: usize,
        /// Right output.
        b: usize,
        /// Coefficient of each basis covertex.
        coeffs: Vec<S>,
    },
    /// `i_a : e → a ⊗ a′`.
    CupR(usize),
    /// `e_a : a′ ⊗ a → e`.
    CapR(usize),
    /// `i′_a : e → a′ ⊗ a`.
    CupL(usize),
    /// `e′_a : a ⊗ a′ → e`.
    CapL(usize),
    /// Braiding `c_{a,b}` (positive) or `c_{b,a}^{-1}` (negative), both `a ⊗ b → b ⊗ a`.
    Braid {
        /// Left input.
        a: usize,
        /// Right input.
        b: usize,
        /// Sense.
        positive: bool,
    },
    /// Insert a unit strand: `[] → [e]`.
    UnitIn,
    /// Remove a unit strand: `[e] → []`.
    UnitOut,
    /// Twist `θ_a^{±1}`.
    Twist {
        /// Strand label.
        a: usize,
        /// Sense.
        positive: bool,
    },
}

impl<S: Scalar> Gen<S> {
    /// Basis vertex `a ⊗ b → c` with index `mu`.
    pub fn vertex(data: &CategoryData<S>, a: usize, b: usize, c: usize, mu: usize) -> Self {
        Gen::Vertex { a, b, c, coeffs: unit_vector(data.n(a, b, c), mu) }
    }

    /// Basis covertex `c → a ⊗ b` with index `mu`.
    pub fn covertex(data: &CategoryData<S>, c: usize, a: usize, b: usize, mu: usize) -> Self {
        Gen::Covertex { c, a, b, coeffs: unit_vector(data.n(a, b, c), mu) }
    }

    /// Source word.
    pub fn dom(&self, data: &CategoryData<S>) -> Vec<usize> {
        match *self {
            Gen::Id(a) | Gen::Twist { a, .. } => vec![a],
            Gen::Vertex { a, b, .. } | Gen::Braid { a, b, .. } => vec![a, b],
            Gen::Covertex { c, .. } => vec![c],
            Gen::CupR(_) | Gen::CupL(_) | Gen::UnitIn => vec![],
            Gen::UnitOut => vec![data.unit()],
            Gen::CapR(a) => vec![data.dual(a), a],
            Gen::CapL(a) => vec![a, data.dual(a)],
        }
    }

    /// Target word.
    pub fn cod(&self, data: &CategoryData<S>) -> Vec<usize> {
        match *self {
            Gen::Id(a) | Gen::Twist { a, .. } => vec![a],
            Gen::Vertex { c, .. } => vec![c],
            Gen::Covertex { a, b, .. } => vec![a, b],
            Gen::Braid { a, b, .. } => vec![b, a],
            Gen::CapR(_) | Gen::CapL(_) | Gen::UnitOut => vec![],
            Gen::UnitIn => vec![data.unit()],
            Gen::CupR(a) => vec![a, data.dual(a)],
            Gen::CupL(a) => vec![data.dual(a), a],
        }
    }
}

fn unit_vector<S: Scalar>(n: usize, mu: usize) -> Vec<S> {
    (0..n).map(|i| if i == mu { S::one() } else { S::zero() }).collect()
}

/// Apply one generator at leg position `pos` of `word`, identity elsewhere.
pub fn apply_gen<S: Scalar>(data: &CategoryData<S>, word: &[usize], pos: usize, gen: &Gen<S>) -> Result<Morphism<S>, GraphError> {
    let dom = gen.dom(data);
    if pos + dom.len() > word.len() || word[pos..pos + dom.len()] != dom[..] {
        return Err(GraphError::BoundaryMismatch {
            expected: dom,
            found: word[pos.min(word.len())..].to_vec(),
        });
    }
    let e = data.unit();
    match gen {
        Gen::Id(_) => Ok(Morphism::identity(data, word)),
        Gen::UnitIn => prim::unit_in(data, word, pos),
        Gen::UnitOut => prim::unit_out(data, word, pos),
        Gen::Twist { a, positive } => {
            let t = data.twist(*a).clone();
            let t = if *positive { t } else { S::one() / t };
            Ok(Morphism::identity(data, word).scale(&t))
        }
        Gen::Vertex { a, b, c, coeffs } => {
            if coeffs.len() != data.n(*a, *b, *c) {
                return Err(GraphError::BadIndex(format!("vertex {a}{b}→{c} with {} coefficients", coeffs.len())));
            }
            let mut out = Morphism::zero(data, word, &splice_word(word, pos, 2, &[*c]));
            for (mu, k) in coeffs.iter().enumerate() {
                if !k.is_zero() {
                    out = out.add(&prim::vertex(data, word, pos, *c, mu)?.scale(k))?;
                }
            }
            Ok(out)
        }
        Gen::Covertex { c, a, b, coeffs } => {
            if coeffs.len() != data.n(*a, *b, *c) {
                return Err(GraphError::BadIndex(format!("covertex {c}→{a}{b} with {} coefficients", coeffs.len())));
            }
            let mut out = Morphism::zero(data, word, &splice_word(word, pos, 1, &[*a, *b]));
            for (mu, k) in coeffs.iter().enumerate() {
                if !k.is_zero() {
                    out = out.add(&prim::covertex(data, word, pos, *a, *b, mu)?.scale(k))?;
                }
            }
            Ok(out)
        }
        Gen::CapL(a) | Gen::CapR(a) => {
            let which = if matches!(gen, Gen::CapL(_)) { Duality::CapL } else { Duality::CapR };
            let k = duality_coeff(data, *a, which)?;
            let v = prim::vertex(data, word, pos, e, 0)?;
            let out = prim::unit_out(data, &v.cod, pos)?;
            Ok(out.compose(&v)?.scale(&k))
        }
        Gen::CupL(a) | Gen::CupR(a) => {
            let (which, l, r) = if matches!(gen, Gen::CupL(_)) {
                (Duality::CupL, data.dual(*a), *a)
            } else {
                (Duality::CupR, *a, data.dual(*a))
            };
            let k = duality_coeff(data, *a, which)?;
            let u = prim::unit_in(data, word, pos)?;
            let cv = prim::covertex(data, &u.cod, pos, l, r, 0)?;
            Ok(cv.compose(&u)?.scale(&k))
        }
        Gen::Braid { a, b, positive } => {
            let cod = splice_word(word, pos, 2, &[*b, *a]);
            let mut out = Morphism::zero(data, word, &cod);
            for y in data.ring().channels(*a, *b) {
                let rmat = if *positive {
                    data.r_block(*a, *b, y).map(|blk| blk.m.clone())
                } else {
                    data.r_block(*b, *a, y).map(|blk| blk.inv.clone())
                }
                .ok_or_else(|| GraphError::Internal(format!("missing R block for channel {y}")))?;
                for ga in 0..data.n(*a, *b, y) {
                    let v = prim::vertex(data, word, pos, y, ga)?;
                    for nu in 0..data.n(*b, *a, y) {
                        let k = rmat.get(ga, nu).clone();
                        if k.is_zero() {
                            continue;
                        }
                        let cv = prim::covertex(data, &v.cod, pos, *b, *a, nu)?;
                        out = out.add(&cv.compose(&v)?.scale(&k))?;
                    }
                }
            }
            Ok(out)
        }
    }
}

fn splice_word(word: &[usize], at: usize, remove: usize, insert: &[usize]) -> Vec<usize> {
    let mut out = word[..at].to_vec();
    out.extend_from_slice(insert);
    out.extend_from_slice(&word[at + remove..]);
    out
}

/// A diagram read bottom to top: each layer is a horizontal row of
/// generators whose concatenated source equals the previous layer's target.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagram<S> {
    /// Source word of the bottom layer.
    pub dom: Vec<usize>,
    /// Layers, bottom first.
    pub layers: Vec<Vec<Gen<S>>>,
}

impl<S: Scalar> Diagram<S> {
    /// An empty diagram on a word (the identity).
    pub fn new(dom: Vec<usize>) -> Self {
        Self { dom, layers: Vec::new() }
    }

    /// Append a layer on top.
    pub fn then(mut self, layer: Vec<Gen<S>>) -> Self {
        self.layers.push(layer);
        self
    }
}

/// Evaluate a diagram layer by layer. Within a layer the generators are
/// applied left to right, each at its own position.
pub fn evaluate_diagram<S: Scalar>(data: &CategoryData<S>, d: &Diagram<S>) -> Result<Morphism<S>, GraphError> {
    let mut acc = Morphism::identity(data, &d.dom);
    for (li, layer) in d.layers.iter().enumerate() {
        let layer_dom: Vec<usize> = layer.iter().flat_map(|g| g.dom(data)).collect();
        if layer_dom != acc.cod {
            return Err(GraphError::LayerMismatch { layer: li, expected: acc.cod.clone(), found: layer_dom });
        }
        let mut pos = 0;
        for g in layer {
            let step = apply_gen(data, &acc.cod, pos, g)?;
            acc = step.compose(&acc)?;
            pos += g.cod(data).len();
        }
    }
    Ok(acc)
}
