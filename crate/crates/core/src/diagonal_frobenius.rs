//! The diagonal commutative Frobenius algebra `F = ⊕ₐ (a, a′)` in `C ⊠ C̄`.
//!
//! The multiplication on summands `(a₁, a₁′) ⊗ (a₂, a₂′) → (a₃, a₃′)` is
//! `Σ_{i,j} M[i][j] e_i ⊠ e_j`, where `e_i` and `e_j` are the basis vertices of
//! `hom(a₁ ⊗ a₂, a₃)` and `hom(a₁′ ⊗ a₂′, a₃′)`, and `M[i][j]` is the closed
//! pairing diagram of the dual covertices `f_i`, `f_j` divided by `dim a₃`.
//! The invariant form is `φ(a) = θ_a^{-1} / dim a`; the coproduct and counit
//! are derived from it and from the multiplication by transposition.
//!
//! Morphisms between tensor powers of `F` are evaluated by [`evaluate_f`]
//! from layers of [`FGen`] generators and stored as maps from
//! `(source summands, target summands)` to [`DMor`] components.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deligne_double::{DMor, DWord, DoubleError, DoubleObject, Variant};
use crate::fusion_data::{verify_coherence, CategoryData};
use crate::graphcalc::{categorical_dim, evaluate_diagram, omega, tilde_a, Diagram, Gen, GraphError};
use crate::linalg::Mat;
use crate::report::Report;
use crate::scalar::Scalar;

/// Errors raised while building or loading the algebra.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FfaError {
    /// Graphical-calculus failure.
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// Double-category failure.
    #[error(transparent)]
    Double(#[from] DoubleError),
    /// The input category failed its coherence suite.
    #[error("category data is not coherent: max residual {0:e}")]
    Incoherent(f64),
    /// A label has vanishing dimension.
    #[error("label {0} has vanishing dimension")]
    Degenerate(String),
    /// A multiplicity index is outside its space.
    #[error("multiplicity index out of range: {0}")]
    IndexOutOfRange(String),
    /// A serialized algebra does not match the category.
    #[error("algebra file does not match the category: {0}")]
    Mismatch(String),
}

/// Crossing sense at the single crossing of the pairing diagram, where the
/// strand `a₂` meets `a₁′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairingCrossing {
    /// `Braid { a: a₂, b: a₁′, positive: true }`.
    Positive,
    /// `Braid { a: a₂, b: a₁′, positive: false }`.
    Negative,
}

impl PairingCrossing {
    /// The convention under which the axiom suite passes on every built-in.
    pub const CHOSEN: PairingCrossing = PairingCrossing::Negative;

    /// The other reading.
    pub fn other(self) -> Self {
        match self {
            PairingCrossing::Positive => PairingCrossing::Negative,
            PairingCrossing::Negative => PairingCrossing::Positive,
        }
    }
}

/// The closed pairing diagram of covertices `f ∈ hom(a₃, a₁ ⊗ a₂)` and
/// `g ∈ hom(a₃′, a₁′ ⊗ a₂′)`, given by coefficient vectors, divided by `dim a₃`:
/// open `i_{a₃}`, split both strands, cross `a₂` with `a₁′`, close with
/// `e′_{a₁}` and `e′_{a₂}`.
pub fn pairing_with<S: Scalar>(
    data: &CategoryData<S>,
    a: [usize; 3],
    f: &[S],
    g: &[S],
    crossing: PairingCrossing,
) -> Result<S, FfaError> {
    let [a1, a2, a3] = a;
    let (a1d, a2d, a3d) = (data.dual(a1), data.dual(a2), data.dual(a3));
    let d = Diagram::new(vec![])
        .then(vec![Gen::CupR(a3)])
        .then(vec![
            Gen::Covertex { c: a3, a: a1, b: a2, coeffs: f.to_vec() },
            Gen::Covertex { c: a3d, a: a1d, b: a2d, coeffs: g.to_vec() },
        ])
        .then(vec![
            Gen::Id(a1),
            Gen::Braid { a: a2, b: a1d, positive: crossing == PairingCrossing::Positive },
            Gen::Id(a2d),
        ])
        .then(vec![Gen::CapL(a1), Gen::CapL(a2)]);
    let value = evaluate_diagram(data, &d)?.scalar(data)?;
    let dim = categorical_dim(data, a3)?;
    Ok(value / dim)
}

fn unit_vec<S: Scalar>(n: usize, k: usize) -> Vec<S> {
    (0..n).map(|i| if i == k { S::one() } else { S::zero() }).collect()
}

/// The multiplication coefficient `M[i][j]` on `(a₁, a₂) → a₃` in the
/// standard vertex bases, with the chosen crossing convention.
pub fn pairing_coefficient<S: Scalar>(data: &CategoryData<S>, a1: usize, a2: usize, a3: usize, i: usize, j: usize) -> Result<S, FfaError> {
    pairing_coefficient_with(data, a1, a2, a3, i, j, PairingCrossing::CHOSEN)
}

/// [`pairing_coefficient`] with an explicit crossing convention.
pub fn pairing_coefficient_with<S: Scalar>(
    data: &CategoryData<S>,
    a1: usize,
    a2: usize,
    a3: usize,
    i: usize,
    j: usize,
    crossing: PairingCrossing,
) -> Result<S, FfaError> {
    let nl = data.n(a1, a2, a3);
    let nr = data.n(data.dual(a1), data.dual(a2), data.dual(a3));
    if i >= nl || j >= nr {
        return Err(FfaError::IndexOutOfRange(format!("({i}, {j}) for spaces of dimension ({nl}, {nr})")));
    }
    pairing_with(data, [a1, a2, a3], &unit_vec(nl, i), &unit_vec(nr, j), crossing)
}

/// The diagonal algebra together with the category it lives over.
#[derive(Clone, Debug, PartialEq)]
pub struct FullFieldAlgebraData<S> {
    /// Category data.
    pub data: CategoryData<S>,
    /// Crossing convention used for the multiplication.
    pub crossing: PairingCrossing,
    /// The object `{(a, a′)}` in label order.
    pub object: DoubleObject,
    /// Multiplication coefficients per admissible `(a₁, a₂, a₃)`.
    pub mult: BTreeMap<(usize, usize, usize), Mat<S>>,
    /// The invariant form `φ(a)` per label.
    pub phi: Vec<S>,
    /// Coproduct coefficients per `(c, p, q)` against the covertex bases of
    /// `hom(c, p ⊗ q)` and `hom(c′, p′ ⊗ q′)`.
    pub coproduct: BTreeMap<(usize, usize, usize), Mat<S>>,
    /// Value of the counit on `(e, e)`.
    pub counit: S,
}

/// Transpose of a vertex `v : q′ ⊗ p′ → c′` to a covertex `c → p ⊗ q`, using
/// `i_x` and `e_x` only. Returns covertex coefficients.
fn transpose_vertex<S: Scalar>(data: &CategoryData<S>, q_d: usize, p_d: usize, c_d: usize, v: &[S]) -> Result<Vec<S>, GraphError> {
    let (p, q, c) = (data.dual(p_d), data.dual(q_d), data.dual(c_d));
    let d = Diagram::new(vec![c])
        .then(vec![Gen::Id(c), Gen::CupR(q_d)])
        .then(vec![Gen::Id(c), Gen::Id(q_d), Gen::CupR(p_d), Gen::Id(q)])
        .then(vec![Gen::Id(c), Gen::Vertex { a: q_d, b: p_d, c: c_d, coeffs: v.to_vec() }, Gen::Id(p), Gen::Id(q)])
        .then(vec![Gen::CapR(c_d), Gen::Id(p), Gen::Id(q)]);
    evaluate_diagram(data, &d)?.covertex_coeffs()
}

/// Build the diagonal algebra with the chosen crossing, after checking
/// coherence at tolerance `1e-9`.
pub fn build_diagonal_algebra<S: Scalar>(data: &CategoryData<S>) -> Result<FullFieldAlgebraData<S>, FfaError> {
    let rep = verify_coherence(data, 1e-9);
    if !rep.pass {
        return Err(FfaError::Incoherent(rep.max_residual));
    }
    build_diagonal_algebra_with(data, PairingCrossing::CHOSEN)
}

/// Build the diagonal algebra with an explicit crossing and no coherence check.
pub fn build_diagonal_algebra_with<S: Scalar>(data: &CategoryData<S>, crossing: PairingCrossing) -> Result<FullFieldAlgebraData<S>, FfaError> {
    let n = data.rank();
    let mut phi = Vec::with_capacity(n);
    for a in 0..n {
        let dim = categorical_dim(data, a).map_err(|_| FfaError::Degenerate(data.name(a).to_string()))?;
        if dim.modulus() < 1e-300 {
            return Err(FfaError::Degenerate(data.name(a).to_string()));
        }
        phi.push(S::one() / (data.twist(a).clone() * dim));
    }
    let mut mult = BTreeMap::new();
    for a1 in 0..n {
        for a2 in 0..n {
            for a3 in data.ring().channels(a1, a2) {
                mult.insert((a1, a2, a3), mult_matrix(data, a1, a2, a3, crossing, None)?);
            }
        }
    }
    let mut alg = FullFieldAlgebraData {
        data: data.clone(),
        crossing,
        object: DoubleObject::new((0..n).map(|a| (a, data.dual(a))).collect()),
        mult,
        phi,
        coproduct: BTreeMap::new(),
        counit: S::one(),
    };
    alg.derive_coalgebra()?;
    Ok(alg)
}

/// Multiplication coefficients on `(a₁, a₂) → a₃`. With `bases = Some((G_L, G_R))`
/// the vertex bases are `e′_k = Σ_i G[i][k] e_i` on each factor and the
/// coefficients are returned in those bases.
fn mult_matrix<S: Scalar>(
    data: &CategoryData<S>,
    a1: usize,
    a2: usize,
    a3: usize,
    crossing: PairingCrossing,
    bases: Option<(&Mat<S>, &Mat<S>)>,
) -> Result<Mat<S>, FfaError> {
    let nl = data.n(a1, a2, a3);
    let nr = data.n(data.dual(a1), data.dual(a2), data.dual(a3));
    // Dual covertex bases: coefficient columns of (G^{-1})^T.
    let duals = |g: Option<&Mat<S>>, n: usize| -> Result<Vec<Vec<S>>, FfaError> {
        match g {
            None => Ok((0..n).map(|k| unit_vec(n, k)).collect()),
            Some(g) => {
                let inv = g.inverse().ok_or_else(|| FfaError::Degenerate("basis change is singular".into()))?;
                let t = inv.transpose();
                Ok((0..n).map(|k| (0..n).map(|i| t.get(i, k).clone()).collect()).collect())
            }
        }
    };
    let fl = duals(bases.map(|b| b.0), nl)?;
    let fr = duals(bases.map(|b| b.1), nr)?;
    let mut m = Mat::zeros(nl, nr);
    for (i, f) in fl.iter().enumerate() {
        for (j, g) in fr.iter().enumerate() {
            m.set(i, j, pairing_with(data, [a1, a2, a3], f, g, crossing)?);
        }
    }
    Ok(m)
}

impl<S: Scalar> FullFieldAlgebraData<S> {
    /// Recompute the coproduct and counit from `mult` and `phi`:
    /// `Δ_{c→p,q} = φ(c)/(φ(p)φ(q)) · T(m_{q′,p′→c′})` and `ε = φ(e)` on `(e, e)`.
    pub fn derive_coalgebra(&mut self) -> Result<(), FfaError> {
        let data = &self.data;
        let n = data.rank();
        let mut coproduct = BTreeMap::new();
        for c in 0..n {
            for p in 0..n {
                for q in 0..n {
                    let nl = data.n(p, q, c);
                    if nl == 0 {
                        continue;
                    }
                    let (pd, qd, cd) = (data.dual(p), data.dual(q), data.dual(c));
                    let nr = data.n(pd, qd, cd);
                    let m = self
                        .mult
                        .get(&(qd, pd, cd))
                        .ok_or_else(|| FfaError::Mismatch(format!("missing multiplication block ({qd},{pd},{cd})")))?;
                    // Transposes of the basis vertices on both factors.
                    let tl: Vec<Vec<S>> = (0..m.rows())
                        .map(|i| transpose_vertex(data, qd, pd, cd, &unit_vec(m.rows(), i)))
                        .collect::<Result<_, _>>()?;
                    let tr: Vec<Vec<S>> = (0..m.cols())
                        .map(|j| transpose_vertex(data, q, p, c, &unit_vec(m.cols(), j)))
                        .collect::<Result<_, _>>()?;
                    let factor = self.phi[c].clone() / (self.phi[p].clone() * self.phi[q].clone());
                    let mut d = Mat::zeros(nl, nr);
                    for i in 0..m.rows() {
                        for j in 0..m.cols() {
                            let mij = m.get(i, j).clone() * factor.clone();
                            for (k, x) in tl[i].iter().enumerate() {
                                for (l, y) in tr[j].iter().enumerate() {
                                    d.add_at(k, l, mij.clone() * x.clone() * y.clone());
                                }
                            }
                        }
                    }
                    coproduct.insert((c, p, q), d);
                }
            }
        }
        self.coproduct = coproduct;
        self.counit = self.phi[data.unit()].clone();
        Ok(())
    }

    /// Copy with the stored `φ(a)` multiplied by `factor`. The coproduct and
    /// counit are kept, so only the reported form is perturbed.
    pub fn with_phi_scaled(&self, a: usize, factor: S) -> Self {
        let mut out = self.clone();
        out.phi[a] = out.phi[a].clone() * factor;
        out
    }

    /// Copy with `φ(a) = 1/dim a`, dropping the twist phase; the coalgebra is re-derived.
    pub fn without_phi_phase(&self) -> Result<Self, FfaError> {
        let mut out = self.clone();
        for a in 0..out.phi.len() {
            out.phi[a] = out.phi[a].clone() * out.data.twist(a).clone();
        }
        out.derive_coalgebra()?;
        Ok(out)
    }

    /// Label of the right factor of summand `a`.
    fn rd(&self, a: usize) -> usize {
        self.data.dual(a)
    }

    fn word(&self, labels: &[usize]) -> DWord {
        DWord::new(labels.to_vec(), labels.iter().map(|&a| self.rd(a)).collect())
    }
}

/// Generators of morphisms between tensor powers of `F`.
#[derive(Clone, Debug, PartialEq)]
pub enum FGen<S> {
    /// `id_F`.
    Id,
    /// `m : F ⊗ F → F`.
    Mul,
    /// `ι : 1 → F`.
    Unit,
    /// `ε : F → 1`.
    Counit,
    /// `Δ : F → F ⊗ F`.
    Comul,
    /// Double braiding `F ⊗ F → F ⊗ F`.
    Braid(Variant),
    /// Double twist `θᴸ ⊗ (θᴿ)^{-1}`.
    Twist,
    /// Diagonal scalar per summand.
    Scale(Vec<S>),
}

impl<S> FGen<S> {
    fn arity(&self) -> usize {
        match self {
            FGen::Unit => 0,
            FGen::Mul | FGen::Braid(_) => 2,
            _ => 1,
        }
    }
}

/// One term `coef · (left ⊠ right)` of a local double map.
type Term<S> = (S, Vec<Gen<S>>, Vec<Gen<S>>);

impl<S: Scalar> FullFieldAlgebraData<S> {
    /// Local action of a generator on input summands: the possible output
    /// summands, each with its list of terms.
    fn local(&self, g: &FGen<S>, input: &[usize]) -> Vec<(Vec<usize>, Vec<Term<S>>)> {
        let data = &self.data;
        let e = data.unit();
        let one = || S::one();
        match g {
            FGen::Id => vec![(input.to_vec(), vec![(one(), vec![Gen::Id(input[0])], vec![Gen::Id(self.rd(input[0]))])])],
            FGen::Scale(s) => {
                let a = input[0];
                vec![(vec![a], vec![(s[a].clone(), vec![Gen::Id(a)], vec![Gen::Id(self.rd(a))])])]
            }
            FGen::Twist => {
                let a = input[0];
                vec![(
                    vec![a],
                    vec![(one(), vec![Gen::Twist { a, positive: true }], vec![Gen::Twist { a: self.rd(a), positive: false }])],
                )]
            }
            FGen::Unit => vec![(vec![e], vec![(one(), vec![Gen::UnitIn], vec![Gen::UnitIn])])],
            FGen::Counit => {
                if input[0] == e {
                    vec![(vec![], vec![(self.counit.clone(), vec![Gen::UnitOut], vec![Gen::UnitOut])])]
                } else {
                    vec![]
                }
            }
            FGen::Braid(v) => {
                let (a, b) = (input[0], input[1]);
                let (lp, rp) = v.senses();
                vec![(
                    vec![b, a],
                    vec![(
                        one(),
                        vec![Gen::Braid { a, b, positive: lp }],
                        vec![Gen::Braid { a: self.rd(a), b: self.rd(b), positive: rp }],
                    )],
                )]
            }
            FGen::Mul => {
                let (a1, a2) = (input[0], input[1]);
                let (b1, b2) = (self.rd(a1), self.rd(a2));
                let mut out = Vec::new();
                for a3 in data.ring().channels(a1, a2) {
                    let Some(m) = self.mult.get(&(a1, a2, a3)) else { continue };
                    let b3 = self.rd(a3);
                    let mut terms = Vec::new();
                    for i in 0..m.rows() {
                        for j in 0..m.cols() {
                            let k = m.get(i, j).clone();
                            if k.is_zero() {
                                continue;
                            }
                            terms.push((
                                k,
                                vec![Gen::vertex(data, a1, a2, a3, i)],
                                vec![Gen::vertex(data, b1, b2, b3, j)],
                            ));
                        }
                    }
                    out.push((vec![a3], terms));
                }
                out
            }
            FGen::Comul => {
                let c = input[0];
                let cd = self.rd(c);
                let mut out = Vec::new();
                for p in 0..data.rank() {
                    for q in 0..data.rank() {
                        let Some(dm) = self.coproduct.get(&(c, p, q)) else { continue };
                        let (pd, qd) = (self.rd(p), self.rd(q));
                        let mut terms = Vec::new();
                        for i in 0..dm.rows() {
                            for j in 0..dm.cols() {
                                let k = dm.get(i, j).clone();
                                if k.is_zero() {
                                    continue;
                                }
                                terms.push((k, vec![Gen::covertex(data, c, p, q, i)], vec![Gen::covertex(data, cd, pd, qd, j)]));
                            }
                        }
                        out.push((vec![p, q], terms));
                    }
                }
                out
            }
        }
    }
}

/// A morphism `F^{⊗n} → F^{⊗m}` as components keyed by `(source summands,
/// target summands)`. Missing keys are zero.
pub type FMap<S> = BTreeMap<(Vec<usize>, Vec<usize>), DMor<S>>;

fn tuples(rank: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..rank).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// Evaluate a layered diagram of [`FGen`]s on `F^{⊗n_in}`.
pub fn evaluate_f<S: Scalar>(alg: &FullFieldAlgebraData<S>, n_in: usize, layers: &[Vec<FGen<S>>]) -> Result<FMap<S>, FfaError> {
    let data = &alg.data;
    let mut state: FMap<S> = BTreeMap::new();
    for t in tuples(data.rank(), n_in) {
        let w = alg.word(&t);
        state.insert((t.clone(), t), DMor::identity(data, &w));
    }
    for layer in layers {
        let mut next: FMap<S> = BTreeMap::new();
        for ((src, cur), mor) in &state {
            let arity: usize = layer.iter().map(FGen::arity).sum();
            if arity != cur.len() {
                return Err(FfaError::Mismatch(format!("layer consumes {arity} factors, word has {}", cur.len())));
            }
            // Cartesian product over the generators of the layer.
            let mut combos: Vec<(Vec<usize>, Vec<Term<S>>)> = vec![(vec![], vec![(S::one(), vec![], vec![])])];
            let mut pos = 0;
            for g in layer {
                let inp = &cur[pos..pos + g.arity()];
                pos += g.arity();
                let options = alg.local(g, inp);
                let mut grown = Vec::new();
                for (out_so_far, terms_so_far) in &combos {
                    for (out, terms) in &options {
                        let mut o = out_so_far.clone();
                        o.extend_from_slice(out);
                        let mut ts = Vec::new();
                        for (k1, l1, r1) in terms_so_far {
                            for (k2, l2, r2) in terms {
                                let mut l = l1.clone();
                                l.extend(l2.iter().cloned());
                                let mut r = r1.clone();
                                r.extend(r2.iter().cloned());
                                ts.push((k1.clone() * k2.clone(), l, r));
                            }
                        }
                        grown.push((o, ts));
                    }
                }
                combos = grown;
            }
            let w = alg.word(cur);
            for (out, terms) in combos {
                let w_out = alg.word(&out);
                let mut step = DMor::zero(data, &w, &w_out);
                for (k, l, r) in terms {
                    let piece = DMor::from_diagrams(
                        data,
                        &Diagram::new(w.left.clone()).then(l),
                        &Diagram::new(w.right.clone()).then(r),
                    )?;
                    step = step.add(&piece.scale(&k))?;
                }
                let composed = step.compose(mor)?;
                let key = (src.clone(), out);
                let entry = match next.remove(&key) {
                    Some(prev) => prev.add(&composed)?,
                    None => composed,
                };
                next.insert(key, entry);
            }
        }
        state = next;
    }
    Ok(state)
}

/// Largest entrywise difference between two [`FMap`]s; missing components count as zero.
pub fn fmap_diff<S: Scalar>(a: &FMap<S>, b: &FMap<S>) -> Result<f64, FfaError> {
    let mut worst: f64 = 0.0;
    for (k, m) in a {
        worst = worst.max(match b.get(k) {
            Some(n) => m.max_diff(n)?,
            None => m.max_abs(),
        });
    }
    for (k, n) in b {
        if !a.contains_key(k) {
            worst = worst.max(n.max_abs());
        }
    }
    Ok(worst)
}

fn record(report: &mut Report, id: &str, instance: &str, r: Result<f64, FfaError>) {
    report.push(id, instance, r.unwrap_or(f64::INFINITY));
}

fn compare<S: Scalar>(alg: &FullFieldAlgebraData<S>, n: usize, lhs: &[Vec<FGen<S>>], rhs: &[Vec<FGen<S>>]) -> Result<f64, FfaError> {
    fmap_diff(&evaluate_f(alg, n, lhs)?, &evaluate_f(alg, n, rhs)?)
}

/// Check the unit laws (`unit_left`, `unit_right`), associativity,
/// commutativity `m ∘ R₊₋ = m` by composition (`commutativity`) and through
/// the coefficient identity `Ω₀ ⊗ Ω₋₁ (M) = M` (`commutativity_omega`), and
/// `θ_F = id` (`twist`).
pub fn verify_algebra_axioms<S: Scalar>(alg: &FullFieldAlgebraData<S>, tol: f64) -> Report {
    use FGen::*;
    let mut report = Report::new("algebra_axioms", tol);
    record(&mut report, "unit_left", "F", compare(alg, 1, &[vec![Unit, Id], vec![Mul]], &[]));
    record(&mut report, "unit_right", "F", compare(alg, 1, &[vec![Id, Unit], vec![Mul]], &[]));
    record(
        &mut report,
        "associativity",
        "F⊗F⊗F",
        compare(alg, 3, &[vec![Mul, Id], vec![Mul]], &[vec![Id, Mul], vec![Mul]]),
    );
    record(
        &mut report,
        "commutativity",
        "F⊗F",
        compare(alg, 2, &[vec![Braid(Variant::PlusMinus)], vec![Mul]], &[vec![Mul]]),
    );
    record(&mut report, "commutativity_omega", "F⊗F", commutativity_omega(alg));
    record(&mut report, "twist", "F", compare(alg, 1, &[vec![Twist]], &[]));
    report
}

/// Residual of `Ω₀(b,a,c) · M[b,a,c] · Ω₋₁(b′,a′,c′)ᵀ = M[a,b,c]`, the
/// coefficient form of `m ∘ R₊₋ = m`.
pub fn commutativity_omega<S: Scalar>(alg: &FullFieldAlgebraData<S>) -> Result<f64, FfaError> {
    let data = &alg.data;
    let mut worst: f64 = 0.0;
    for (&(a, b, c), m) in &alg.mult {
        let swapped = alg.mult.get(&(b, a, c)).ok_or_else(|| FfaError::Mismatch("missing block".into()))?;
        let (ad, bd, cd) = (data.dual(a), data.dual(b), data.dual(c));
        let lhs = omega(data, b, a, c, 0)?.mul(swapped).mul(&omega(data, bd, ad, cd, -1)?.transpose());
        worst = worst.max(lhs.max_diff(m));
    }
    Ok(worst)
}

/// Check coassociativity, both counit laws and both Frobenius
/// compatibilities `(id ⊗ m)(Δ ⊗ id) = Δ ∘ m = (m ⊗ id)(id ⊗ Δ)`.
pub fn verify_frobenius<S: Scalar>(alg: &FullFieldAlgebraData<S>, tol: f64) -> Report {
    use FGen::*;
    let mut report = Report::new("frobenius", tol);
    record(
        &mut report,
        "coassociativity",
        "F",
        compare(alg, 1, &[vec![Comul], vec![Comul, Id]], &[vec![Comul], vec![Id, Comul]]),
    );
    record(&mut report, "counit_left", "F", compare(alg, 1, &[vec![Comul], vec![Counit, Id]], &[]));
    record(&mut report, "counit_right", "F", compare(alg, 1, &[vec![Comul], vec![Id, Counit]], &[]));
    record(
        &mut report,
        "frobenius_left",
        "F⊗F",
        compare(alg, 2, &[vec![Comul, Id], vec![Id, Mul]], &[vec![Mul], vec![Comul]]),
    );
    record(
        &mut report,
        "frobenius_right",
        "F⊗F",
        compare(alg, 2, &[vec![Id, Comul], vec![Mul, Id]], &[vec![Mul], vec![Comul]]),
    );
    report
}

/// Residual of the invariance `M[a₁,b,c] = φ(b)/φ(c) · Ã₀ ⊗ Ã₋₁ (M[a₁,c′,b′])`.
pub fn invariance_residual<S: Scalar>(alg: &FullFieldAlgebraData<S>) -> Result<f64, FfaError> {
    let data = &alg.data;
    let mut worst: f64 = 0.0;
    for (&(a1, b, c), m) in &alg.mult {
        let (a1d, bd, cd) = (data.dual(a1), data.dual(b), data.dual(c));
        let src = alg.mult.get(&(a1, cd, bd)).ok_or_else(|| FfaError::Mismatch("missing block".into()))?;
        let tl = tilde_a(data, a1, cd, bd, 0)?;
        let tr = tilde_a(data, a1d, c, b, -1)?;
        let factor = alg.phi[b].clone() / alg.phi[c].clone();
        let rhs = tl.mul(src).mul(&tr.transpose()).scale(&factor);
        worst = worst.max(rhs.max_diff(m));
    }
    Ok(worst)
}

/// `Φ(x) = (ε ∘ m ⊗ id)(id ⊗ i_F)` on summand `x`, as a scalar.
pub fn frobenius_phi<S: Scalar>(alg: &FullFieldAlgebraData<S>, x: usize) -> Result<S, FfaError> {
    let data = &alg.data;
    let e = data.unit();
    let xd = data.dual(x);
    let m = alg.mult.get(&(x, xd, e)).ok_or_else(|| FfaError::Mismatch("missing block".into()))?;
    let mut total = S::zero();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let left = Diagram::new(vec![x])
                .then(vec![Gen::Id(x), Gen::CupR(xd)])
                .then(vec![Gen::vertex(data, x, xd, e, i), Gen::Id(x)])
                .then(vec![Gen::UnitOut, Gen::Id(x)]);
            let right = Diagram::new(vec![xd])
                .then(vec![Gen::Id(xd), Gen::CupR(x)])
                .then(vec![Gen::vertex(data, xd, x, e, j), Gen::Id(xd)])
                .then(vec![Gen::UnitOut, Gen::Id(xd)]);
            let l = evaluate_diagram(data, &left)?.blocks[x].get(0, 0).clone();
            let r = evaluate_diagram(data, &right)?.blocks[xd].get(0, 0).clone();
            total = total + m.get(i, j).clone() * l * r;
        }
    }
    Ok(total * alg.counit.clone())
}

/// Check the invariance equation (`invariance`), the symmetry of the form
/// `ε ∘ m` under `R₊₋` (`form_symmetry`), and `Φ = φ` per summand (`phi_roundtrip`).
pub fn verify_invariant_form<S: Scalar>(alg: &FullFieldAlgebraData<S>, tol: f64) -> Report {
    use FGen::*;
    let mut report = Report::new("invariant_form", tol);
    record(&mut report, "invariance", "F⊗F", invariance_residual(alg));
    record(
        &mut report,
        "form_symmetry",
        "F⊗F",
        compare(alg, 2, &[vec![Braid(Variant::PlusMinus)], vec![Mul], vec![Counit]], &[vec![Mul], vec![Counit]]),
    );
    for x in 0..alg.data.rank() {
        let r = frobenius_phi(alg, x).map(|v| (v - alg.phi[x].clone()).modulus());
        record(&mut report, "phi_roundtrip", &format!("a={}", alg.data.name(x)), r);
    }
    report
}

/// Rebuild the multiplication in random vertex bases (seeded) and compare
/// it, converted back to the standard bases, with `alg.mult`.
pub fn basis_independence_residual<S: Scalar>(alg: &FullFieldAlgebraData<S>, seed: u64) -> Result<f64, FfaError> {
    let data = &alg.data;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_basis = |n: usize| -> Mat<S> {
        loop {
            let mut g = Mat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let (re, im): (f64, f64) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                    g.set(i, j, S::from_parts(re, im).unwrap_or_else(S::one));
                }
            }
            if g.inverse().is_some() {
                return g;
            }
        }
    };
    let mut worst: f64 = 0.0;
    for (&(a1, a2, a3), m) in &alg.mult {
        let gl = random_basis(m.rows());
        let gr = random_basis(m.cols());
        let m_new = mult_matrix(data, a1, a2, a3, alg.crossing, Some((&gl, &gr)))?;
        let back = gl.mul(&m_new).mul(&gr.transpose());
        worst = worst.max(back.max_diff(m));
    }
    Ok(worst)
}

/// Serialized form of the algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FfaFile {
    /// Label names of the category.
    pub labels: Vec<String>,
    /// Crossing convention.
    pub crossing: PairingCrossing,
    /// Summands as `[left, right]` name pairs.
    pub summands: Vec<[String; 2]>,
    /// Multiplication entries `[a₁, a₂, a₃, i, j, re, im]`.
    pub mult: Vec<(usize, usize, usize, usize, usize, f64, f64)>,
    /// Invariant form entries `[a, re, im]`.
    pub phi: Vec<(usize, f64, f64)>,
    /// Counit on `(e, e)` as `[re, im]`.
    pub counit: [f64; 2],
}

impl<S: Scalar> FullFieldAlgebraData<S> {
    /// Serializable form.
    pub fn to_file(&self) -> FfaFile {
        let mut mult = Vec::new();
        for (&(a1, a2, a3), m) in &self.mult {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let z = m.get(i, j).to_c64();
                    mult.push((a1, a2, a3, i, j, z.re, z.im));
                }
            }
        }
        let phi = self.phi.iter().enumerate().map(|(a, p)| {
            let z = p.to_c64();
            (a, z.re, z.im)
        });
        let c = self.counit.to_c64();
        FfaFile {
            labels: self.data.names().to_vec(),
            crossing: self.crossing,
            summands: self.object.names(&self.data),
            mult,
            phi: phi.collect(),
            counit: [c.re, c.im],
        }
    }

    /// Rebuild from a serialized algebra over `data`. The coproduct is
    /// re-derived from the loaded `phi` and `mult`.
    pub fn from_file(data: &CategoryData<S>, file: &FfaFile) -> Result<Self, FfaError> {
        if file.labels != data.names() {
            return Err(FfaError::Mismatch(format!("labels {:?} vs {:?}", file.labels, data.names())));
        }
        let conv = |re: f64, im: f64| S::from_parts(re, im).ok_or_else(|| FfaError::Mismatch("non-finite value".into()));
        let n = data.rank();
        let mut mult = BTreeMap::new();
        for a1 in 0..n {
            for a2 in 0..n {
                for a3 in data.ring().channels(a1, a2) {
                    let nr = data.n(data.dual(a1), data.dual(a2), data.dual(a3));
                    mult.insert((a1, a2, a3), Mat::zeros(data.n(a1, a2, a3), nr));
                }
            }
        }
        for &(a1, a2, a3, i, j, re, im) in &file.mult {
            let m = mult
                .get_mut(&(a1, a2, a3))
                .ok_or_else(|| FfaError::Mismatch(format!("inadmissible block ({a1},{a2},{a3})")))?;
            if i >= m.rows() || j >= m.cols() {
                return Err(FfaError::IndexOutOfRange(format!("({a1},{a2},{a3};{i},{j})")));
            }
            m.set(i, j, conv(re, im)?);
        }
        let mut phi = vec![S::zero(); n];
        for &(a, re, im) in &file.phi {
            if a >= n {
                return Err(FfaError::Mismatch(format!("phi label {a} out of range")));
            }
            phi[a] = conv(re, im)?;
        }
        let mut alg = FullFieldAlgebraData {
            data: data.clone(),
            crossing: file.crossing,
            object: DoubleObject::new((0..n).map(|a| (a, data.dual(a))).collect()),
            mult,
            phi,
            coproduct: BTreeMap::new(),
            counit: S::one(),
        };
        alg.derive_coalgebra()?;
        alg.counit = conv(file.counit[0], file.counit[1])?;
        Ok(alg)
    }
}

/// Run the algebra, Frobenius and invariant-form suites plus the
/// basis-independence rebuild (seeded), merged into one report.
pub fn verify_all<S: Scalar>(alg: &FullFieldAlgebraData<S>, tol: f64, seed: u64) -> Report {
    let mut report = Report::new("diagonal_algebra", tol);
    report.merge(verify_algebra_axioms(alg, tol));
    report.merge(verify_frobenius(alg, tol));
    report.merge(verify_invariant_form(alg, tol));
    let r = basis_independence_residual(alg, seed).unwrap_or(f64::INFINITY);
    report.push("basis_independence", "F", r);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_data::{builtin_category, Builtin};
    use crate::C64;

    const TOL: f64 = 1e-9;

    fn build(b: Builtin) -> FullFieldAlgebraData<C64> {
        build_diagonal_algebra(&builtin_category(b)).unwrap()
    }

    #[test]
    fn all_suites_pass_on_builtins() {
        for b in Builtin::ALL {
            let rep = verify_all(&build(b), TOL, 7);
            for r in rep.records.iter().filter(|r| !r.pass) {
                println!("{b} {} {} {:e}", r.id, r.instance, r.residual);
            }
            assert!(rep.pass, "{b}");
        }
    }

    #[test]
    fn rejected_crossing_fails_invariance() {
        for b in [Builtin::Fibonacci, Builtin::Ising] {
            let alg = build_diagonal_algebra_with(&builtin_category(b), PairingCrossing::CHOSEN.other()).unwrap();
            assert!(invariance_residual(&alg).unwrap() > 1e-2);
            assert!(!verify_frobenius(&alg, TOL).pass);
        }
    }

    #[test]
    fn scaled_phi_controls() {
        let alg = build(Builtin::Fibonacci).with_phi_scaled(1, C64::new(2.0, 0.0));
        assert!(verify_frobenius(&alg, TOL).pass);
        let form = verify_invariant_form(&alg, TOL);
        assert!(form.max_for("phi_roundtrip").unwrap() > 0.1);
    }

    #[test]
    fn dropped_phase_controls() {
        for b in Builtin::ALL {
            let alg = build(b).without_phi_phase().unwrap();
            let broken = verify_invariant_form(&alg, TOL).max_for("invariance").unwrap();
            if b == Builtin::Trivial {
                assert!(broken < TOL);
            } else {
                assert!(broken > 0.1, "{b}: {broken}");
            }
        }
    }

    #[test]
    fn unit_summand_multiplication_is_identity() {
        for b in Builtin::ALL {
            let alg = build(b);
            let e = alg.data.unit();
            for a in 0..alg.data.rank() {
                let m = &alg.mult[&(e, a, a)];
                assert!((m.get(0, 0) - C64::new(1.0, 0.0)).norm() < TOL);
            }
        }
    }

    #[test]
    fn file_roundtrip() {
        let alg = build(Builtin::Ising);
        let text = serde_json::to_string(&alg.to_file()).unwrap();
        let file: FfaFile = serde_json::from_str(&text).unwrap();
        let back = FullFieldAlgebraData::from_file(&alg.data, &file).unwrap();
        assert_eq!(back.to_file(), alg.to_file());
        assert!(verify_all(&back, TOL, 1).pass);
    }

    #[test]
    fn exact_build_on_gaussian_rationals() {
        use crate::fusion_data::builtin_category_exact;
        let d: CategoryData<crate::GaussQ> = builtin_category_exact(Builtin::Z2Semion).unwrap();
        let alg = build_diagonal_algebra(&d).unwrap();
        let rep = verify_all(&alg, f64::MIN_POSITIVE, 3);
        for r in rep.records.iter().filter(|r| !r.pass) {
            println!("exact {} {} {:e}", r.id, r.instance, r.residual);
        }
        assert!(rep.pass);
    }
}
