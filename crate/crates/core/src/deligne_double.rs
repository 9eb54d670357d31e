//! The doubled category `C ⊠ C̄`.
//!
//! A simple object of the double is a label pair `(l, r)`. The right factor
//! is `C̄`: the same fusion data with the braiding reversed and the twist
//! inverted. Its natural braiding is the negative braiding of `C`, so the
//! braiding of the double is `R₊₋` (positive on the left, negative on the
//! right, both senses read in `C`) and its twist is `θᴸ ⊗ (θᴿ)^{-1}`.
//!
//! Morphisms between double words are stored per pair of simple channels
//! `(c_L, c_R)` as matrices over the product of the left and right
//! fusion-tree bases ([`DMor`]). A pure tensor `f ⊠ g` has Kronecker product
//! blocks.

use std::fmt;

use thiserror::Error;

use crate::fusion_data::CategoryData;
use crate::graphcalc::{evaluate_diagram, hom_space, Diagram, Gen, GraphError, Morphism};
use crate::linalg::Mat;
use crate::report::Report;
use crate::scalar::Scalar;

/// Errors of the double-category layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DoubleError {
    /// An error from the underlying graphical calculus.
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// Two double morphisms do not compose or add.
    #[error("double boundary mismatch: expected {expected}, found {found}")]
    BoundaryMismatch {
        /// Word the operation needs.
        expected: String,
        /// Word that was supplied.
        found: String,
    },
    /// A summand index is out of range.
    #[error("summand index {0} out of range")]
    BadSummand(usize),
}

/// A pair of tensor words, one per factor of the double.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DWord {
    /// Word in the left factor `C`.
    pub left: Vec<usize>,
    /// Word in the right factor `C̄`.
    pub right: Vec<usize>,
}

impl DWord {
    /// Build from both words.
    pub fn new(left: Vec<usize>, right: Vec<usize>) -> Self {
        Self { left, right }
    }

    /// The word of a list of label pairs.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        Self { left: pairs.iter().map(|p| p.0).collect(), right: pairs.iter().map(|p| p.1).collect() }
    }
}

impl fmt::Display for DWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}⊠{:?}", self.left, self.right)
    }
}

/// A morphism between double words.
#[derive(Clone, Debug, PartialEq)]
pub struct DMor<S> {
    /// Source.
    pub dom: DWord,
    /// Target.
    pub cod: DWord,
    rank: usize,
    /// Block for channel pair `(c_L, c_R)` at index `c_L · rank + c_R`, indexed
    /// `[cod_L · dim cod_R + cod_R, dom_L · dim dom_R + dom_R]`.
    pub blocks: Vec<Mat<S>>,
}

impl<S: Scalar> DMor<S> {
    /// The pure tensor `left ⊠ right`.
    pub fn from_pair(left: &Morphism<S>, right: &Morphism<S>) -> Self {
        let rank = left.blocks.len();
        let mut blocks = Vec::with_capacity(rank * rank);
        for bl in &left.blocks {
            for br in &right.blocks {
                blocks.push(bl.kron(br));
            }
        }
        Self {
            dom: DWord::new(left.dom.clone(), right.dom.clone()),
            cod: DWord::new(left.cod.clone(), right.cod.clone()),
            rank,
            blocks,
        }
    }

    /// `evaluate(left) ⊠ evaluate(right)`.
    pub fn from_diagrams(data: &CategoryData<S>, left: &Diagram<S>, right: &Diagram<S>) -> Result<Self, DoubleError> {
        Ok(Self::from_pair(&evaluate_diagram(data, left)?, &evaluate_diagram(data, right)?))
    }

    /// The zero morphism.
    pub fn zero(data: &CategoryData<S>, dom: &DWord, cod: &DWord) -> Self {
        let rank = data.rank();
        let mut blocks = Vec::with_capacity(rank * rank);
        for cl in 0..rank {
            for cr in 0..rank {
                let rows = hom_space(data, &cod.left, cl).dim() * hom_space(data, &cod.right, cr).dim();
                let cols = hom_space(data, &dom.left, cl).dim() * hom_space(data, &dom.right, cr).dim();
                blocks.push(Mat::zeros(rows, cols));
            }
        }
        Self { dom: dom.clone(), cod: cod.clone(), rank, blocks }
    }

    /// The identity.
    pub fn identity(data: &CategoryData<S>, word: &DWord) -> Self {
        Self::from_pair(&Morphism::identity(data, &word.left), &Morphism::identity(data, &word.right))
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self, DoubleError> {
        if self.dom != rhs.cod {
            return Err(DoubleError::BoundaryMismatch { expected: self.dom.to_string(), found: rhs.cod.to_string() });
        }
        let blocks = self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a.mul(b)).collect();
        Ok(Self { dom: rhs.dom.clone(), cod: self.cod.clone(), rank: self.rank, blocks })
    }

    /// Sum of parallel morphisms.
    pub fn add(&self, rhs: &Self) -> Result<Self, DoubleError> {
        self.check_parallel(rhs)?;
        let blocks = self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a.add(b)).collect();
        Ok(Self { dom: self.dom.clone(), cod: self.cod.clone(), rank: self.rank, blocks })
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &S) -> Self {
        Self { dom: self.dom.clone(), cod: self.cod.clone(), rank: self.rank, blocks: self.blocks.iter().map(|b| b.scale(s)).collect() }
    }

    /// Largest entrywise difference from a parallel morphism.
    pub fn max_diff(&self, rhs: &Self) -> Result<f64, DoubleError> {
        self.check_parallel(rhs)?;
        Ok(self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a.max_diff(b)).fold(0.0, f64::max))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(Mat::max_abs).fold(0.0, f64::max)
    }

    /// Block of channel pair `(c_L, c_R)`.
    pub fn block(&self, cl: usize, cr: usize) -> &Mat<S> {
        &self.blocks[cl * self.rank + cr]
    }

    /// Value of a morphism between empty double words.
    pub fn scalar(&self, data: &CategoryData<S>) -> Result<S, DoubleError> {
        if !self.dom.left.is_empty() || !self.dom.right.is_empty() || !self.cod.left.is_empty() || !self.cod.right.is_empty() {
            return Err(GraphError::NotClosed.into());
        }
        let e = data.unit();
        Ok(self.block(e, e).get(0, 0).clone())
    }

    fn check_parallel(&self, rhs: &Self) -> Result<(), DoubleError> {
        if self.dom != rhs.dom {
            return Err(DoubleError::BoundaryMismatch { expected: self.dom.to_string(), found: rhs.dom.to_string() });
        }
        if self.cod != rhs.cod {
            return Err(DoubleError::BoundaryMismatch { expected: self.cod.to_string(), found: rhs.cod.to_string() });
        }
        Ok(())
    }
}

/// A finite direct sum of simple double objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoubleObject {
    /// Summands `(left, right)` in order; repeats encode multiplicity.
    pub summands: Vec<(usize, usize)>,
}

impl DoubleObject {
    /// Build from summands.
    pub fn new(summands: Vec<(usize, usize)>) -> Self {
        Self { summands }
    }

    /// The tensor unit `{(e, e)}`.
    pub fn unit<S: Scalar>(data: &CategoryData<S>) -> Self {
        Self { summands: vec![(data.unit(), data.unit())] }
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut summands = self.summands.clone();
        summands.extend_from_slice(&other.summands);
        Self { summands }
    }

    /// Summands sorted, for multiset comparison.
    pub fn sorted(&self) -> Vec<(usize, usize)> {
        let mut s = self.summands.clone();
        s.sort_unstable();
        s
    }

    /// Summand names as `[left, right]` pairs.
    pub fn names<S: Scalar>(&self, data: &CategoryData<S>) -> Vec<[String; 2]> {
        self.summands.iter().map(|&(l, r)| [data.name(l).to_string(), data.name(r).to_string()]).collect()
    }
}

/// One summand of a double tensor product with its origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorIndex {
    /// Summand index in the first factor.
    pub i: usize,
    /// Summand index in the second factor.
    pub j: usize,
    /// Left channel.
    pub x: usize,
    /// Left multiplicity index.
    pub alpha: usize,
    /// Right channel.
    pub y: usize,
    /// Right multiplicity index.
    pub beta: usize,
}

/// A double tensor product with its decomposition bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleTensor {
    /// The decomposed object.
    pub object: DoubleObject,
    /// Origin of each summand of `object`, in the same order.
    pub index: Vec<TensorIndex>,
}

/// Decompose `A ⊗ B` into simple summands. Summand `(x, y)` appears
/// `Σ_{i,j} N_{A_iᴸ B_jᴸ}^x N_{A_iᴿ B_jᴿ}^y` times, ordered by
/// `(i, j, x, α, y, β)`.
pub fn double_tensor<S: Scalar>(data: &CategoryData<S>, a: &DoubleObject, b: &DoubleObject) -> DoubleTensor {
    let mut index = Vec::new();
    for (i, &(al, ar)) in a.summands.iter().enumerate() {
        for (j, &(bl, br)) in b.summands.iter().enumerate() {
            for x in data.ring().channels(al, bl) {
                for alpha in 0..data.n(al, bl, x) {
                    for y in data.ring().channels(ar, br) {
                        for beta in 0..data.n(ar, br, y) {
                            index.push(TensorIndex { i, j, x, alpha, y, beta });
                        }
                    }
                }
            }
        }
    }
    let object = DoubleObject { summands: index.iter().map(|t| (t.x, t.y)).collect() };
    DoubleTensor { object, index }
}

/// Braiding senses on the two factors, both read in `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `R₊₊`.
    PlusPlus,
    /// `R₊₋`: positive on the left, negative on the right.
    PlusMinus,
    /// `R₋₊`.
    MinusPlus,
    /// `R₋₋`.
    MinusMinus,
}

impl Variant {
    /// All four variants.
    pub const ALL: [Variant; 4] = [Variant::PlusPlus, Variant::PlusMinus, Variant::MinusPlus, Variant::MinusMinus];

    /// `(left positive, right positive)`.
    pub fn senses(self) -> (bool, bool) {
        match self {
            Variant::PlusPlus => (true, true),
            Variant::PlusMinus => (true, false),
            Variant::MinusPlus => (false, true),
            Variant::MinusMinus => (false, false),
        }
    }

    /// The variant with both senses flipped, which inverts the braiding.
    pub fn inverse(self) -> Self {
        match self {
            Variant::PlusPlus => Variant::MinusMinus,
            Variant::PlusMinus => Variant::MinusPlus,
            Variant::MinusPlus => Variant::PlusMinus,
            Variant::MinusMinus => Variant::PlusPlus,
        }
    }

    /// Short name, e.g. `"+-"`.
    pub fn name(self) -> &'static str {
        match self {
            Variant::PlusPlus => "++",
            Variant::PlusMinus => "+-",
            Variant::MinusPlus => "-+",
            Variant::MinusMinus => "--",
        }
    }
}

/// Braid generator of the left factor `C`.
pub fn left_braid<S>(a: usize, b: usize, positive: bool) -> Gen<S> {
    Gen::Braid { a, b, positive }
}

/// Braid generator of the right factor, with the sense read in `C`.
pub fn right_braid<S>(a: usize, b: usize, positive: bool) -> Gen<S> {
    Gen::Braid { a, b, positive }
}

/// Twist generator of the right factor `C̄` (inverse twist of `C`).
pub fn right_twist<S>(a: usize) -> Gen<S> {
    Gen::Twist { a, positive: false }
}

/// A block of a morphism between direct sums of double words.
#[derive(Clone, Debug, PartialEq)]
pub struct DBlock<S> {
    /// Source summand key.
    pub dom_key: Vec<usize>,
    /// Target summand key.
    pub cod_key: Vec<usize>,
    /// The component.
    pub mor: DMor<S>,
}

/// A morphism between double objects presented summand by summand.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleMorphism<S> {
    /// Nonzero components.
    pub blocks: Vec<DBlock<S>>,
}

fn one_layer<S: Scalar>(dom: Vec<usize>, layer: Vec<Gen<S>>) -> Diagram<S> {
    Diagram::new(dom).then(layer)
}

/// The braiding `A ⊗ B → B ⊗ A` of the given variant, one block per pair of
/// summands, keyed `[i, j] → [j, i]`.
pub fn double_braiding<S: Scalar>(data: &CategoryData<S>, a: &DoubleObject, b: &DoubleObject, variant: Variant) -> Result<DoubleMorphism<S>, DoubleError> {
    let (lp, rp) = variant.senses();
    let mut blocks = Vec::new();
    for (i, &(al, ar)) in a.summands.iter().enumerate() {
        for (j, &(bl, br)) in b.summands.iter().enumerate() {
            let mor = DMor::from_diagrams(
                data,
                &one_layer(vec![al, bl], vec![left_braid(al, bl, lp)]),
                &one_layer(vec![ar, br], vec![right_braid(ar, br, rp)]),
            )?;
            blocks.push(DBlock { dom_key: vec![i, j], cod_key: vec![j, i], mor });
        }
    }
    Ok(DoubleMorphism { blocks })
}

/// The twist `θᴸ ⊗ (θᴿ)^{-1}` of `A`, one diagonal block per summand.
pub fn double_twist<S: Scalar>(data: &CategoryData<S>, a: &DoubleObject) -> Result<DoubleMorphism<S>, DoubleError> {
    let mut blocks = Vec::new();
    for (i, &(l, r)) in a.summands.iter().enumerate() {
        let mor = DMor::from_diagrams(
            data,
            &one_layer(vec![l], vec![Gen::Twist { a: l, positive: true }]),
            &one_layer(vec![r], vec![right_twist(r)]),
        )?;
        blocks.push(DBlock { dom_key: vec![i], cod_key: vec![i], mor });
    }
    Ok(DoubleMorphism { blocks })
}

/// Scalar value of the double twist on a simple summand.
pub fn double_twist_scalar<S: Scalar>(data: &CategoryData<S>, l: usize, r: usize) -> S {
    data.twist(l).clone() / data.twist(r).clone()
}

/// `Σ_{x,μ} f_μ ∘ g(x) ∘ e_μ` on the word `[a, b] ++ tail` of one factor.
/// The middle layer maps `[x] ++ tail` to a word carrying `x` at leg `pos`,
/// where the covertex re-splits it.
fn through_channels<S: Scalar>(
    data: &CategoryData<S>,
    a: usize,
    b: usize,
    middle: impl Fn(usize) -> Vec<Gen<S>>,
    tail: Vec<usize>,
    pos: usize,
) -> Result<Morphism<S>, GraphError> {
    let mut dom = vec![a, b];
    dom.extend_from_slice(&tail);
    let mut out: Option<Morphism<S>> = None;
    for x in data.ring().channels(a, b) {
        for mu in 0..data.n(a, b, x) {
            let ids = |v: &[usize]| v.iter().map(|&t| Gen::Id(t)).collect::<Vec<_>>();
            let mut l1 = vec![Gen::vertex(data, a, b, x, mu)];
            l1.extend(ids(&tail));
            let mid = middle(x);
            let mid_cod: Vec<usize> = mid.iter().flat_map(|g| g.cod(data)).collect();
            let mut l3 = ids(&mid_cod[..pos]);
            l3.push(Gen::covertex(data, x, a, b, mu));
            l3.extend(ids(&mid_cod[pos + 1..]));
            let d = Diagram::new(dom.clone()).then(l1).then(mid).then(l3);
            let m = evaluate_diagram(data, &d)?;
            out = Some(match out {
                None => m,
                Some(acc) => acc.add(&m)?,
            });
        }
    }
    out.ok_or_else(|| GraphError::Degenerate(format!("no channel in {a} ⊗ {b}")))
}

/// Check, for every variant and all simple double objects: both hexagon
/// relations with the composite object decomposed into channels, the
/// inverse relation `R_{B,A}^{inverse variant} ∘ R_{A,B} = id`, and, for
/// `R₊₋`, the balancing `θ_{A⊗B} = R_{B,A} ∘ R_{A,B} ∘ (θ_A ⊗ θ_B)`.
pub fn verify_double_braiding<S: Scalar>(data: &CategoryData<S>, tol: f64) -> Report {
    let mut report = Report::new("double_braiding", tol);
    let n = data.rank();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|l| (0..n).map(move |r| (l, r))).collect();
    for variant in Variant::ALL {
        let (lp, rp) = variant.senses();
        let (lpi, rpi) = variant.inverse().senses();
        for &(al, ar) in &pairs {
            for &(bl, br) in &pairs {
                let inst = |extra: &str| {
                    format!("{};A=({},{});B=({},{}){extra}", variant.name(), data.name(al), data.name(ar), data.name(bl), data.name(br))
                };
                let inverse = (|| -> Result<f64, DoubleError> {
                    let fwd = DMor::from_diagrams(
                        data,
                        &one_layer(vec![al, bl], vec![left_braid(al, bl, lp)]),
                        &one_layer(vec![ar, br], vec![right_braid(ar, br, rp)]),
                    )?;
                    let back = DMor::from_diagrams(
                        data,
                        &one_layer(vec![bl, al], vec![left_braid(bl, al, lpi)]),
                        &one_layer(vec![br, ar], vec![right_braid(br, ar, rpi)]),
                    )?;
                    back.compose(&fwd)?.max_diff(&DMor::identity(data, &DWord::new(vec![al, bl], vec![ar, br])))
                })();
                report.push("inverse", inst(""), inverse.unwrap_or(f64::INFINITY));

                let balancing = (|| -> Result<f64, DoubleError> {
                    let side = |a: usize, b: usize, left: bool| -> Result<(Morphism<S>, Morphism<S>), GraphError> {
                        let tw = |t: usize| Gen::Twist { a: t, positive: left };
                        let lhs = through_channels(data, a, b, |x| vec![tw(x)], vec![], 0)?;
                        let (p, q) = if left { (lp, lp) } else { (rp, rp) };
                        let d = Diagram::new(vec![a, b])
                            .then(vec![tw(a), tw(b)])
                            .then(vec![Gen::Braid { a, b, positive: p }])
                            .then(vec![Gen::Braid { a: b, b: a, positive: q }]);
                        Ok((lhs, evaluate_diagram(data, &d)?))
                    };
                    let (ll, lr) = side(al, bl, true)?;
                    let (rl, rr) = side(ar, br, false)?;
                    Ok(DMor::from_pair(&ll, &rl).max_diff(&DMor::from_pair(&lr, &rr))?)
                })();
                if variant == Variant::PlusMinus {
                    report.push("balancing", inst(""), balancing.unwrap_or(f64::INFINITY));
                }

                for &(cl, cr) in &pairs {
                    let inst3 = inst(&format!(";C=({},{})", data.name(cl), data.name(cr)));
                    let hex = (|| -> Result<(f64, f64), DoubleError> {
                        // R_{A, B⊗C} through the channels of B ⊗ C.
                        let h1 = |a: usize, b: usize, c: usize, pos: bool| -> Result<(Morphism<S>, Morphism<S>), GraphError> {
                            let lhs = {
                                let mut acc: Option<Morphism<S>> = None;
                                for x in data.ring().channels(b, c) {
                                    for mu in 0..data.n(b, c, x) {
                                        let d = Diagram::new(vec![a, b, c])
                                            .then(vec![Gen::Id(a), Gen::vertex(data, b, c, x, mu)])
                                            .then(vec![Gen::Braid { a, b: x, positive: pos }])
                                            .then(vec![Gen::covertex(data, x, b, c, mu), Gen::Id(a)]);
                                        let m = evaluate_diagram(data, &d)?;
                                        acc = Some(match acc {
                                            None => m,
                                            Some(s) => s.add(&m)?,
                                        });
                                    }
                                }
                                acc.ok_or_else(|| GraphError::Degenerate("empty product".into()))?
                            };
                            let rhs = evaluate_diagram(
                                data,
                                &Diagram::new(vec![a, b, c])
                                    .then(vec![Gen::Braid { a, b, positive: pos }, Gen::Id(c)])
                                    .then(vec![Gen::Id(b), Gen::Braid { a, b: c, positive: pos }]),
                            )?;
                            Ok((lhs, rhs))
                        };
                        // R_{A⊗B, C} through the channels of A ⊗ B.
                        let h2 = |a: usize, b: usize, c: usize, pos: bool| -> Result<(Morphism<S>, Morphism<S>), GraphError> {
                            let lhs = through_channels(data, a, b, |x| vec![Gen::Braid { a: x, b: c, positive: pos }], vec![c], 1)?;
                            let rhs = evaluate_diagram(
                                data,
                                &Diagram::new(vec![a, b, c])
                                    .then(vec![Gen::Id(a), Gen::Braid { a: b, b: c, positive: pos }])
                                    .then(vec![Gen::Braid { a, b: c, positive: pos }, Gen::Id(b)]),
                            )?;
                            Ok((lhs, rhs))
                        };
                        let (l1, r1) = h1(al, bl, cl, lp)?;
                        let (l1r, r1r) = h1(ar, br, cr, rp)?;
                        let e1 = DMor::from_pair(&l1, &l1r).max_diff(&DMor::from_pair(&r1, &r1r))?;
                        let (l2, r2) = h2(al, bl, cl, lp)?;
                        let (l2r, r2r) = h2(ar, br, cr, rp)?;
                        let e2 = DMor::from_pair(&l2, &l2r).max_diff(&DMor::from_pair(&r2, &r2r))?;
                        Ok((e1, e2))
                    })();
                    let (e1, e2) = hex.unwrap_or((f64::INFINITY, f64::INFINITY));
                    report.push("hexagon_1", inst3.clone(), e1);
                    report.push("hexagon_2", inst3, e2);
                }
            }
        }
    }
    report
}
