//! Skeletal modular tensor category data.
//!
//! A [`CategoryData`] holds the fusion ring, F-symbols and R-symbols (with
//! multiplicity indices), twists, conformal weights and Perron–Frobenius
//! dimensions of a finite braided ribbon category.
//!
//! # F-symbol convention
//!
//! For labels `a, b, c, d`, splitting trees of `d → a ⊗ b ⊗ c` come in two
//! shapes. The left tree `L(x, α, β)` splits `d →β x ⊗ c` and then
//! `x →α a ⊗ b`; the right tree `Rt(y, γ, δ)` splits `d →δ a ⊗ y` and then
//! `y →γ b ⊗ c`. The F-symbol is the change of basis
//!
//! ```text
//! L(x, α, β) = Σ F^{abc}_d[(x, α, β), (y, γ, δ)] · Rt(y, γ, δ)
//! ```
//!
//! and the file format's `mult` field is `[α, β, γ, δ]`.
//!
//! # R-symbol convention
//!
//! The braiding acts on splitting vertices as
//! `c_{a,b} ∘ f^{ab}_{c;μ} = Σ_ν R^{ab}_c[μ, ν] f^{ba}_{c;ν}`.
//!
//! # Gauge
//!
//! Every F-block with a unit label among `a, b, c` is the identity and
//! `R^{ea}_a = R^{ae}_a = 1`. The coherence suite checks this.

mod builtin;
mod coherence;
mod io;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::Mat;
use crate::scalar::Scalar;

pub use builtin::{builtin_category, builtin_category_exact, Builtin};
pub use coherence::{hexagon_residuals, pentagon_residuals, verify_coherence};
pub use io::{emit_category, load_category, parse_category, CategoryFile, FFileEntry, RFileEntry};

/// Index of a simple object.
pub type LabelId = usize;

/// A simple object together with its display name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    /// Index into the category's label list.
    pub id: LabelId,
    /// Display string.
    pub name: String,
}

/// Errors raised while building category data.
#[derive(Debug, Error, PartialEq)]
pub enum DataError {
    /// Input text did not parse.
    #[error("parse error: {0}")]
    Parse(String),
    /// A label index is outside `0..rank`.
    #[error("label index {index} out of range for {rank} labels")]
    LabelRange {
        /// Offending index.
        index: usize,
        /// Number of labels.
        rank: usize,
    },
    /// The dual map is not an involution or does not fix the unit.
    #[error("dual map is not an involution fixing the unit (label {0})")]
    DualNotInvolution(usize),
    /// `N_{ea}^b` or `N_{ae}^b` differs from `δ_{ab}`.
    #[error("unit constraint violated at N[{a},{b},{c}] = {n}")]
    UnitConstraint {
        /// First factor.
        a: usize,
        /// Second factor.
        b: usize,
        /// Channel.
        c: usize,
        /// Stored multiplicity.
        n: u32,
    },
    /// `N_{ab}^e` differs from `δ_{b,a'}`.
    #[error("duality channel violated at N[{a},{b},unit] = {n}")]
    DualChannel {
        /// First factor.
        a: usize,
        /// Second factor.
        b: usize,
        /// Stored multiplicity.
        n: u32,
    },
    /// The fusion ring is not associative.
    #[error("fusion ring not associative at ({a},{b},{c},{d})")]
    RingAssociativity {
        /// Labels of the failing instance.
        a: usize,
        /// Second label.
        b: usize,
        /// Third label.
        c: usize,
        /// Outer label.
        d: usize,
    },
    /// `N_{ab}^c ≠ N_{ba}^c`, which no braiding allows.
    #[error("fusion ring not commutative at ({a},{b},{c})")]
    RingCommutativity {
        /// First factor.
        a: usize,
        /// Second factor.
        b: usize,
        /// Channel.
        c: usize,
    },
    /// A fusion entry was listed twice.
    #[error("duplicate fusion entry ({0},{1},{2})")]
    DuplicateFusion(usize, usize, usize),
    /// An F-block of a nonzero space has no entries.
    #[error("missing F block for ({a},{b},{c},{d})")]
    MissingF {
        /// Label a.
        a: usize,
        /// Label b.
        b: usize,
        /// Label c.
        c: usize,
        /// Label d.
        d: usize,
    },
    /// An R-block of a nonzero channel has no entries.
    #[error("missing R block for ({a},{b},{c})")]
    MissingR {
        /// Label a.
        a: usize,
        /// Label b.
        b: usize,
        /// Label c.
        c: usize,
    },
    /// An F or R entry addresses a tree that does not exist.
    #[error("entry addresses a nonexistent fusion tree: {0}")]
    BadEntry(String),
    /// An F or R block is singular.
    #[error("singular block: {0}")]
    Singular(String),
    /// The twist list has the wrong length or contains zero.
    #[error("twist list invalid: {0}")]
    Twist(String),
    /// A value cannot be represented in the requested scalar type.
    #[error("value not representable: {0}")]
    NotRepresentable(String),
    /// The requested built-in does not exist or is not exactly representable.
    #[error("unknown or unsupported built-in category: {0}")]
    UnknownBuiltin(String),
}

/// Fusion multiplicities `N_{ab}^c` with unit and duality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    rank: usize,
    unit: usize,
    dual: Vec<usize>,
    n: Vec<u32>,
}

impl FusionRing {
    /// Build and validate a ring from `[a, b, c, N]` entries. Absent
    /// entries are zero.
    pub fn new(
        rank: usize,
        unit: usize,
        dual: Vec<usize>,
        entries: &[[u32; 4]],
    ) -> Result<Self, DataError> {
        let check = |i: usize| {
            if i < rank {
                Ok(())
            } else {
                Err(DataError::LabelRange { index: i, rank })
            }
        };
        check(unit)?;
        if dual.len() != rank {
            return Err(DataError::Parse(format!(
                "dual list has {} entries for {} labels",
                dual.len(),
                rank
            )));
        }
        for &d in &dual {
            check(d)?;
        }
        for a in 0..rank {
            if dual[dual[a]] != a {
                return Err(DataError::DualNotInvolution(a));
            }
        }
        if dual[unit] != unit {
            return Err(DataError::DualNotInvolution(unit));
        }
        let mut n = vec![0u32; rank * rank * rank];
        let mut seen = vec![false; rank * rank * rank];
        for e in entries {
            let (a, b, c) = (e[0] as usize, e[1] as usize, e[2] as usize);
            check(a)?;
            check(b)?;
            check(c)?;
            let idx = (a * rank + b) * rank + c;
            if seen[idx] {
                return Err(DataError::DuplicateFusion(a, b, c));
            }
            seen[idx] = true;
            n[idx] = e[3];
        }
        let ring = Self { rank, unit, dual, n };
        ring.validate()?;
        Ok(ring)
    }

    fn validate(&self) -> Result<(), DataError> {
        let r = self.rank;
        let e = self.unit;
        for a in 0..r {
            for b in 0..r {
                let want = u32::from(a == b);
                if self.n(e, a, b) as u32 != want {
                    return Err(DataError::UnitConstraint { a: e, b: a, c: b, n: self.n(e, a, b) as u32 });
                }
                if self.n(a, e, b) as u32 != want {
                    return Err(DataError::UnitConstraint { a, b: e, c: b, n: self.n(a, e, b) as u32 });
                }
                let want_dual = u32::from(b == self.dual[a]);
                if self.n(a, b, e) as u32 != want_dual {
                    return Err(DataError::DualChannel { a, b, n: self.n(a, b, e) as u32 });
                }
            }
        }
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    if self.n(a, b, c) != self.n(b, a, c) {
                        return Err(DataError::RingCommutativity { a, b, c });
                    }
                    for d in 0..r {
                        let lhs: usize = (0..r).map(|x| self.n(a, b, x) * self.n(x, c, d)).sum();
                        let rhs: usize = (0..r).map(|y| self.n(b, c, y) * self.n(a, y, d)).sum();
                        if lhs != rhs {
                            return Err(DataError::RingAssociativity { a, b, c, d });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of simple objects.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The unit label.
    pub fn unit(&self) -> usize {
        self.unit
    }

    /// The dual label `a'`.
    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    /// Multiplicity `N_{ab}^c`.
    pub fn n(&self, a: usize, b: usize, c: usize) -> usize {
        self.n[(a * self.rank + b) * self.rank + c] as usize
    }

    /// Channels `c` with `N_{ab}^c > 0`, ascending.
    pub fn channels(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.rank).filter(|&c| self.n(a, b, c) > 0).collect()
    }

    /// Nonzero `[a, b, c, N]` entries in lexicographic order.
    pub fn entries(&self) -> Vec<[u32; 4]> {
        let r = self.rank;
        let mut out = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let n = self.n(a, b, c);
                    if n > 0 {
                        out.push([a as u32, b as u32, c as u32, n as u32]);
                    }
                }
            }
        }
        out
    }

    /// Left basis `(x, α, β)` of `F^{abc}_d`, lexicographic.
    pub fn f_left_basis(&self, a: usize, b: usize, c: usize, d: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.rank {
            for al in 0..self.n(a, b, x) {
                for be in 0..self.n(x, c, d) {
                    out.push((x, al, be));
                }
            }
        }
        out
    }

    /// Right basis `(y, γ, δ)` of `F^{abc}_d`, lexicographic.
    pub fn f_right_basis(&self, a: usize, b: usize, c: usize, d: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for y in 0..self.rank {
            for ga in 0..self.n(b, c, y) {
                for de in 0..self.n(a, y, d) {
                    out.push((y, ga, de));
                }
            }
        }
        out
    }

    /// Perron–Frobenius dimensions: the positive common eigenvector of all
    /// fusion matrices, normalized so the unit has dimension one.
    pub fn perron_frobenius_dims(&self) -> Vec<f64> {
        let r = self.rank;
        // Power iteration on I + Σ_a N_a, which is primitive for a rigid ring.
        let mut v = vec![1.0f64; r];
        for _ in 0..100_000 {
            let mut w = v.clone();
            for a in 0..r {
                for b in 0..r {
                    for c in 0..r {
                        w[b] += self.n(a, b, c) as f64 * v[c];
                    }
                }
            }
            let norm = w[self.unit];
            for x in &mut w {
                *x /= norm;
            }
            let delta = w.iter().zip(&v).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            v = w;
            if delta < 1e-16 {
                break;
            }
        }
        v
    }

    /// `max_{a,b} |d_a d_b − Σ_c N_{ab}^c d_c|`.
    pub fn dim_residual(&self, d: &[f64]) -> f64 {
        let r = self.rank;
        let mut worst = 0.0f64;
        for a in 0..r {
            for b in 0..r {
                let rhs: f64 = (0..r).map(|c| self.n(a, b, c) as f64 * d[c]).sum();
                worst = worst.max((d[a] * d[b] - rhs).abs());
            }
        }
        worst
    }
}

/// One F-block `F^{abc}_d` with its composite bases and inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct FBlock<S> {
    /// Left-tree basis `(x, α, β)`.
    pub left: Vec<(usize, usize, usize)>,
    /// Right-tree basis `(y, γ, δ)`.
    pub right: Vec<(usize, usize, usize)>,
    /// Matrix indexed `[left, right]`.
    pub m: Mat<S>,
    /// Inverse matrix indexed `[right, left]`.
    pub inv: Mat<S>,
}

impl<S: Scalar> FBlock<S> {
    /// Position of a left-tree triple.
    pub fn left_index(&self, t: (usize, usize, usize)) -> Option<usize> {
        self.left.iter().position(|&x| x == t)
    }

    /// Position of a right-tree triple.
    pub fn right_index(&self, t: (usize, usize, usize)) -> Option<usize> {
        self.right.iter().position(|&x| x == t)
    }
}

/// One R-block `R^{ab}_c` (indexed `[μ, ν]`) with its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct RBlock<S> {
    /// Matrix `R^{ab}_c[μ, ν]`.
    pub m: Mat<S>,
    /// Matrix inverse.
    pub inv: Mat<S>,
}

/// An F-symbol entry with explicit indices.
#[derive(Clone, Debug, PartialEq)]
pub struct FEntry<S> {
    /// `[a, b, c, d, x, y]`.
    pub labels: [usize; 6],
    /// `[α, β, γ, δ]`.
    pub mult: [usize; 4],
    /// Value.
    pub value: S,
}

/// An R-symbol entry with explicit indices.
#[derive(Clone, Debug, PartialEq)]
pub struct REntry<S> {
    /// `[a, b, c]`.
    pub labels: [usize; 3],
    /// `[μ, ν]`.
    pub mult: [usize; 2],
    /// Value.
    pub value: S,
}

/// A skeletal braided ribbon fusion category.
#[derive(Clone, Debug, PartialEq)]
pub struct CategoryData<S> {
    names: Vec<String>,
    ring: FusionRing,
    f: BTreeMap<[usize; 4], FBlock<S>>,
    r: BTreeMap<[usize; 3], RBlock<S>>,
    twist: Vec<S>,
    h: Vec<f64>,
    qdim: Vec<f64>,
}

impl<S: Scalar> CategoryData<S> {
    /// Assemble category data and check the structural invariants: label
    /// ranges, unit and dual constraints, ring associativity, complete F and
    /// R coverage, and invertible blocks. Numerical coherence is left to
    /// [`verify_coherence`].
    pub fn new(
        names: Vec<String>,
        ring: FusionRing,
        f_entries: Vec<FEntry<S>>,
        r_entries: Vec<REntry<S>>,
        twist: Vec<S>,
    ) -> Result<Self, DataError> {
        let rank = ring.rank();
        if names.len() != rank {
            return Err(DataError::Parse(format!("{} names for {} labels", names.len(), rank)));
        }
        if twist.len() != rank {
            return Err(DataError::Twist(format!("{} twists for {} labels", twist.len(), rank)));
        }
        if let Some(a) = twist.iter().position(|t| t.is_zero()) {
            return Err(DataError::Twist(format!("zero twist on label {a}")));
        }
        let range = |i: usize| {
            if i < rank {
                Ok(())
            } else {
                Err(DataError::LabelRange { index: i, rank })
            }
        };

        let mut f = BTreeMap::new();
        let mut f_seen: BTreeMap<[usize; 4], usize> = BTreeMap::new();
        for a in 0..rank {
            for b in 0..rank {
                for c in 0..rank {
                    for d in 0..rank {
                        let left = ring.f_left_basis(a, b, c, d);
                        if left.is_empty() {
                            continue;
                        }
                        let right = ring.f_right_basis(a, b, c, d);
                        let m = Mat::zeros(left.len(), right.len());
                        f.insert(
                            [a, b, c, d],
                            FBlock { left, right, inv: m.clone(), m },
                        );
                    }
                }
            }
        }
        for e in f_entries {
            for &l in &e.labels {
                range(l)?;
            }
            let [a, b, c, d, x, y] = e.labels;
            let [al, be, ga, de] = e.mult;
            let block = f.get_mut(&[a, b, c, d]).ok_or_else(|| {
                DataError::BadEntry(format!("F{:?} on an empty space", e.labels))
            })?;
            let li = block.left_index((x, al, be)).ok_or_else(|| {
                DataError::BadEntry(format!("F{:?} mult {:?}: no left tree", e.labels, e.mult))
            })?;
            let ri = block.right_index((y, ga, de)).ok_or_else(|| {
                DataError::BadEntry(format!("F{:?} mult {:?}: no right tree", e.labels, e.mult))
            })?;
            block.m.set(li, ri, e.value);
            *f_seen.entry([a, b, c, d]).or_default() += 1;
        }
        for (key, block) in f.iter_mut() {
            if !f_seen.contains_key(key) {
                return Err(DataError::MissingF { a: key[0], b: key[1], c: key[2], d: key[3] });
            }
            block.inv = block
                .m
                .inverse()
                .ok_or_else(|| DataError::Singular(format!("F{key:?}")))?;
        }

        let mut r = BTreeMap::new();
        for a in 0..rank {
            for b in 0..rank {
                for c in ring.channels(a, b) {
                    let n = ring.n(a, b, c);
                    let m = Mat::zeros(n, n);
                    r.insert([a, b, c], RBlock { inv: m.clone(), m });
                }
            }
        }
        let mut r_seen: BTreeMap<[usize; 3], usize> = BTreeMap::new();
        for e in r_entries {
            for &l in &e.labels {
                range(l)?;
            }
            let block = r.get_mut(&e.labels).ok_or_else(|| {
                DataError::BadEntry(format!("R{:?} on an empty channel", e.labels))
            })?;
            let [mu, nu] = e.mult;
            if mu >= block.m.rows() || nu >= block.m.cols() {
                return Err(DataError::BadEntry(format!("R{:?} mult {:?}", e.labels, e.mult)));
            }
            block.m.set(mu, nu, e.value);
            *r_seen.entry(e.labels).or_default() += 1;
        }
        for (key, block) in r.iter_mut() {
            if !r_seen.contains_key(key) {
                return Err(DataError::MissingR { a: key[0], b: key[1], c: key[2] });
            }
            block.inv = block
                .m
                .inverse()
                .ok_or_else(|| DataError::Singular(format!("R{key:?}")))?;
        }

        let h = twist.iter().map(|t| weight_of(&t.to_c64())).collect();
        let qdim = ring.perron_frobenius_dims();
        Ok(Self { names, ring, f, r, twist, h, qdim })
    }

    /// The fusion ring.
    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    /// Number of simple objects.
    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    /// The unit label.
    pub fn unit(&self) -> usize {
        self.ring.unit()
    }

    /// The dual label.
    pub fn dual(&self, a: usize) -> usize {
        self.ring.dual(a)
    }

    /// Multiplicity `N_{ab}^c`.
    pub fn n(&self, a: usize, b: usize, c: usize) -> usize {
        self.ring.n(a, b, c)
    }

    /// Display name of a label.
    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    /// All display names.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// All labels with their names.
    pub fn labels(&self) -> Vec<Label> {
        self.names
            .iter()
            .enumerate()
            .map(|(id, name)| Label { id, name: name.clone() })
            .collect()
    }

    /// Label id from a display name.
    pub fn label_id(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The F-block `F^{abc}_d`, if the space is nonzero.
    pub fn f_block(&self, a: usize, b: usize, c: usize, d: usize) -> Option<&FBlock<S>> {
        self.f.get(&[a, b, c, d])
    }

    /// All F-blocks keyed by `[a, b, c, d]`.
    pub fn f_blocks(&self) -> &BTreeMap<[usize; 4], FBlock<S>> {
        &self.f
    }

    /// Single F-symbol; zero when the trees do not exist.
    pub fn f(&self, a: usize, b: usize, c: usize, d: usize, left: (usize, usize, usize), right: (usize, usize, usize)) -> S {
        self.f_block(a, b, c, d)
            .and_then(|blk| Some(blk.m.get(blk.left_index(left)?, blk.right_index(right)?).clone()))
            .unwrap_or_else(S::zero)
    }

    /// Single inverse F-symbol `(F^{abc}_d)^{-1}[right, left]`.
    pub fn f_inv(&self, a: usize, b: usize, c: usize, d: usize, right: (usize, usize, usize), left: (usize, usize, usize)) -> S {
        self.f_block(a, b, c, d)
            .and_then(|blk| Some(blk.inv.get(blk.right_index(right)?, blk.left_index(left)?).clone()))
            .unwrap_or_else(S::zero)
    }

    /// The R-block `R^{ab}_c`, if the channel is nonzero.
    pub fn r_block(&self, a: usize, b: usize, c: usize) -> Option<&RBlock<S>> {
        self.r.get(&[a, b, c])
    }

    /// All R-blocks keyed by `[a, b, c]`.
    pub fn r_blocks(&self) -> &BTreeMap<[usize; 3], RBlock<S>> {
        &self.r
    }

    /// Single R-symbol; zero off the admissible range.
    pub fn r(&self, a: usize, b: usize, c: usize, mu: usize, nu: usize) -> S {
        self.r_block(a, b, c)
            .filter(|blk| mu < blk.m.rows() && nu < blk.m.cols())
            .map(|blk| blk.m.get(mu, nu).clone())
            .unwrap_or_else(S::zero)
    }

    /// Twist `θ_a`.
    pub fn twist(&self, a: usize) -> &S {
        &self.twist[a]
    }

    /// All twists.
    pub fn twists(&self) -> &[S] {
        &self.twist
    }

    /// Conformal weight `h_a ∈ [0, 1)` with `θ_a = e^{2πi h_a}`.
    pub fn h(&self, a: usize) -> f64 {
        self.h[a]
    }

    /// Perron–Frobenius dimension of `a`.
    pub fn qdim(&self, a: usize) -> f64 {
        self.qdim[a]
    }

    /// Flat list of F entries in deterministic order.
    pub fn f_entries(&self) -> Vec<FEntry<S>> {
        let mut out = Vec::new();
        for (key, blk) in &self.f {
            for (li, &(x, al, be)) in blk.left.iter().enumerate() {
                for (ri, &(y, ga, de)) in blk.right.iter().enumerate() {
                    out.push(FEntry {
                        labels: [key[0], key[1], key[2], key[3], x, y],
                        mult: [al, be, ga, de],
                        value: blk.m.get(li, ri).clone(),
                    });
                }
            }
        }
        out
    }

    /// Flat list of R entries in deterministic order.
    pub fn r_entries(&self) -> Vec<REntry<S>> {
        let mut out = Vec::new();
        for (key, blk) in &self.r {
            for mu in 0..blk.m.rows() {
                for nu in 0..blk.m.cols() {
                    out.push(REntry { labels: *key, mult: [mu, nu], value: blk.m.get(mu, nu).clone() });
                }
            }
        }
        out
    }

    /// Rebuild with every entry passed through `f`.
    pub fn try_map<T: Scalar>(&self, f: impl Fn(&S) -> Option<T>) -> Result<CategoryData<T>, DataError> {
        let conv = |s: &S| f(s).ok_or_else(|| DataError::NotRepresentable(format!("{s:?}")));
        let fe = self
            .f_entries()
            .into_iter()
            .map(|e| Ok(FEntry { labels: e.labels, mult: e.mult, value: conv(&e.value)? }))
            .collect::<Result<Vec<_>, DataError>>()?;
        let re = self
            .r_entries()
            .into_iter()
            .map(|e| Ok(REntry { labels: e.labels, mult: e.mult, value: conv(&e.value)? }))
            .collect::<Result<Vec<_>, DataError>>()?;
        let tw = self.twist.iter().map(conv).collect::<Result<Vec<_>, DataError>>()?;
        CategoryData::new(self.names.clone(), self.ring.clone(), fe, re, tw)
    }

    /// Convert to another scalar type through double precision.
    pub fn convert<T: Scalar>(&self) -> Result<CategoryData<T>, DataError> {
        self.try_map(|s| {
            let z = s.to_c64();
            T::from_parts(z.re, z.im)
        })
    }

    /// Copy with `R^{ab}_c` multiplied by `factor`.
    pub fn with_r_scaled(&self, a: usize, b: usize, c: usize, factor: S) -> Result<Self, DataError> {
        let re = self
            .r_entries()
            .into_iter()
            .map(|mut e| {
                if e.labels == [a, b, c] {
                    e.value = e.value * factor.clone();
                }
                e
            })
            .collect();
        Self::new(self.names.clone(), self.ring.clone(), self.f_entries(), re, self.twist.clone())
    }

    /// Copy with the twist of `a` replaced.
    pub fn with_twist(&self, a: usize, theta: S) -> Result<Self, DataError> {
        let mut tw = self.twist.clone();
        tw[a] = theta;
        Self::new(self.names.clone(), self.ring.clone(), self.f_entries(), self.r_entries(), tw)
    }

    /// Whether `a` is the unit.
    pub fn is_unit(&self, a: usize) -> bool {
        a == self.unit()
    }

    /// The scalar one, for readability at call sites.
    pub fn one(&self) -> S {
        S::one()
    }
}

/// Representative of `arg(θ)/2π` in `[0, 1)`.
pub fn weight_of(theta: &num_complex::Complex<f64>) -> f64 {
    let h = theta.arg() / (2.0 * std::f64::consts::PI);
    let h = h - h.floor();
    if h >= 1.0 {
        0.0
    } else {
        h
    }
}

/// Perron–Frobenius dimension of `a`.
pub fn quantum_dimension<S: Scalar>(data: &CategoryData<S>, a: usize) -> f64 {
    data.qdim(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_entries() -> Vec<[u32; 4]> {
        vec![[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]]
    }

    #[test]
    fn ring_rejects_bad_unit() {
        let mut e = z2_entries();
        e[0] = [0, 0, 0, 2];
        assert!(matches!(
            FusionRing::new(2, 0, vec![0, 1], &e),
            Err(DataError::UnitConstraint { .. })
        ));
    }

    #[test]
    fn ring_rejects_non_involutive_dual() {
        assert!(matches!(
            FusionRing::new(2, 0, vec![1, 1], &z2_entries()),
            Err(DataError::DualNotInvolution(_))
        ));
    }

    #[test]
    fn fibonacci_ring_dims() {
        let ring = FusionRing::new(
            2,
            0,
            vec![0, 1],
            &[[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 1]],
        )
        .unwrap();
        let d = ring.perron_frobenius_dims();
        assert!((d[1] - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(ring.dim_residual(&d) < 1e-12);
    }

    #[test]
    fn weight_in_unit_interval() {
        let t = num_complex::Complex::new(1.0, 0.0);
        assert_eq!(weight_of(&t), 0.0);
        let t = num_complex::Complex::from_polar(1.0, -0.5);
        let h = weight_of(&t);
        assert!((0.0..1.0).contains(&h));
    }
}
