//! The sphere partial operad `K̂` of translation-plus-scaling local coordinates.
//!
//! An element of arity `n ≥ 1` is a sphere with a negatively oriented
//! puncture at `∞`, positively oriented punctures `z₁, …, z_{n−1}` and
//! `z_n = 0`, the local coordinate `w ↦ −1/(w − a)` at `∞` and the local
//! coordinates `w ↦ a₀⁽ⁱ⁾ (w − zᵢ)` at the finite punctures. Arity `0` is the
//! single element with no finite punctures.
//!
//! [`sew`] evaluates the closed sewing formula. [`geometric_sew_oracle`]
//! composes the local coordinates as explicit Möbius matrices, glues along
//! `J(u) = −1/u` and renormalizes, and is used as an independent check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::Report;
use crate::scalar::Scalar;

/// Relative margin used by the sewability tests.
pub const SEW_MARGIN: f64 = 1e-6;

/// Errors raised by operad operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SewError {
    /// Malformed element.
    #[error("invalid element: {0}")]
    Invalid(String),
    /// Sewing index outside `1..=m`.
    #[error("sewing index {i} out of range for arity {arity}")]
    IndexOutOfRange {
        /// Requested index.
        i: usize,
        /// Arity of the outer element.
        arity: usize,
    },
    /// No pair of coordinate disks separates the punctures.
    #[error("configuration is not sewable: inner radius {inner:e}, outer radius {outer:e}")]
    NotSewable {
        /// Radius of the inner element's punctures around its `∞` center.
        inner: f64,
        /// Largest admissible radius in the outer element's coordinate.
        outer: f64,
    },
    /// Two punctures of the result coincide.
    #[error("resulting punctures coincide")]
    Coincident,
    /// The Möbius normalization is degenerate.
    #[error("degenerate normalization: {0}")]
    Degenerate(String),
    /// A permutation is not a bijection of `1..=n`.
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
}

/// A point of `K̂(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KHatElement<S> {
    /// Punctures `z₁, …, z_{n−1}`; the `n`-th puncture is `0`.
    pub z: Vec<S>,
    /// Parameter of the local coordinate at `∞`.
    pub a: S,
    /// Scalings `a₀⁽¹⁾, …, a₀⁽ⁿ⁾`.
    pub a0: Vec<S>,
}

impl<S: Scalar> KHatElement<S> {
    /// Validated constructor.
    pub fn new(z: Vec<S>, a: S, a0: Vec<S>) -> Result<Self, SewError> {
        let el = KHatElement { z, a, a0 };
        el.validate()?;
        Ok(el)
    }

    /// The arity-0 element.
    pub fn vacuum() -> Self {
        KHatElement { z: vec![], a: S::zero(), a0: vec![] }
    }

    /// The identity `I_K ∈ K̂(1)`.
    pub fn identity() -> Self {
        Self::rescaling(S::one())
    }

    /// The element `(𝟎, (c, 𝟎)) ∈ K̂(1)`.
    pub fn rescaling(c: S) -> Self {
        KHatElement { z: vec![], a: S::zero(), a0: vec![c] }
    }

    /// Number of positively oriented punctures.
    pub fn arity(&self) -> usize {
        self.a0.len()
    }

    /// All finite punctures `z₁, …, z_n` including the trailing `0`.
    pub fn punctures(&self) -> Vec<S> {
        let mut p = self.z.clone();
        if self.arity() > 0 {
            p.push(S::zero());
        }
        p
    }

    /// Check the element invariants.
    pub fn validate(&self) -> Result<(), SewError> {
        let n = self.arity();
        if n == 0 {
            if !self.z.is_empty() || !self.a.is_zero() {
                return Err(SewError::Invalid("arity 0 has no punctures and a = 0".into()));
            }
            return Ok(());
        }
        if self.z.len() != n - 1 {
            return Err(SewError::Invalid(format!("{} punctures for arity {n}", self.z.len())));
        }
        if self.a0.iter().any(|c| c.is_zero()) {
            return Err(SewError::Invalid("zero scaling".into()));
        }
        let p = self.punctures();
        for i in 0..n {
            for j in 0..i {
                if p[i] == p[j] {
                    return Err(SewError::Invalid(format!("punctures {} and {} coincide", j + 1, i + 1)));
                }
            }
        }
        Ok(())
    }

    /// Largest entrywise distance to `other`; infinite if the arities differ.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.arity() != other.arity() {
            return f64::INFINITY;
        }
        let mut worst = (self.a.clone() - other.a.clone()).modulus();
        for (x, y) in self.z.iter().zip(&other.z).chain(self.a0.iter().zip(&other.a0)) {
            worst = worst.max((x.clone() - y.clone()).modulus());
        }
        worst
    }

    /// Translate the coordinate by `w ↦ w − c`.
    fn translated(mut self, c: &S) -> Self {
        for z in &mut self.z {
            *z = z.clone() - c.clone();
        }
        self.a = self.a - c.clone();
        self
    }

    /// Bring a puncture list whose last entry is not `0` into canonical form.
    fn from_punctures(mut p: Vec<S>, a: S, a0: Vec<S>) -> Self {
        match p.pop() {
            None => KHatElement { z: vec![], a: S::zero(), a0 },
            Some(last) => KHatElement { z: p, a, a0 }.translated(&last),
        }
    }
}

/// Closed-form sewability: the largest radius of the inner punctures around
/// `b` must stay below `|a₀⁽ⁱ⁾|` times the distance from `zᵢ` to the other
/// outer punctures, with relative margin [`SEW_MARGIN`].
pub fn sewability<S: Scalar>(p: &KHatElement<S>, i: usize, q: &KHatElement<S>) -> Result<(), SewError> {
    if i == 0 || i > p.arity() {
        return Err(SewError::IndexOutOfRange { i, arity: p.arity() });
    }
    let pp = p.punctures();
    let zi = &pp[i - 1];
    let outer = pp
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i - 1)
        .map(|(_, z)| (z.clone() - zi.clone()).modulus())
        .fold(f64::INFINITY, f64::min)
        * p.a0[i - 1].modulus();
    let inner = q.punctures().iter().map(|x| (x.clone() - q.a.clone()).modulus()).fold(0.0, f64::max);
    if inner * (1.0 + SEW_MARGIN) < outer {
        Ok(())
    } else {
        Err(SewError::NotSewable { inner, outer })
    }
}

/// `P ᵢ∞₀ Q` by the closed formula: the punctures of `Q` become
/// `(ξ_k − b)/a₀⁽ⁱ⁾ + zᵢ`, their scalings become `a₀⁽ⁱ⁾ b₀⁽ᵏ⁾`, and the result
/// is translated back when the sewn puncture was the one at `0`.
pub fn sew<S: Scalar>(p: &KHatElement<S>, i: usize, q: &KHatElement<S>) -> Result<KHatElement<S>, SewError> {
    p.validate()?;
    q.validate()?;
    sewability(p, i, q)?;
    let pp = p.punctures();
    let (zi, ai) = (pp[i - 1].clone(), p.a0[i - 1].clone());
    let mut punct = pp[..i - 1].to_vec();
    let mut a0 = p.a0[..i - 1].to_vec();
    for (xi, b0) in q.punctures().into_iter().zip(&q.a0) {
        punct.push((xi - q.a.clone()) / ai.clone() + zi.clone());
        a0.push(ai.clone() * b0.clone());
    }
    punct.extend_from_slice(&pp[i..]);
    a0.extend_from_slice(&p.a0[i..]);
    let out = KHatElement::from_punctures(punct, p.a.clone(), a0);
    out.validate().map_err(|_| SewError::Coincident)?;
    Ok(out)
}

/// A Möbius map `w ↦ (αw + β)/(γw + δ)` as `[[α, β], [γ, δ]]`.
#[derive(Clone, Debug, PartialEq)]
struct Mobius<S>([[S; 2]; 2]);

impl<S: Scalar> Mobius<S> {
    fn new(a: S, b: S, c: S, d: S) -> Self {
        Mobius([[a, b], [c, d]])
    }

    fn compose(&self, o: &Self) -> Self {
        let m = &self.0;
        let n = &o.0;
        let e = |i: usize, j: usize| m[i][0].clone() * n[0][j].clone() + m[i][1].clone() * n[1][j].clone();
        Mobius::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    /// Inverse up to scale.
    fn adjugate(&self) -> Self {
        let [[a, b], [c, d]] = self.0.clone();
        Mobius::new(d, S::zero() - b, S::zero() - c, a)
    }

    fn apply(&self, w: &S) -> Result<S, SewError> {
        let [[a, b], [c, d]] = &self.0;
        let den = c.clone() * w.clone() + d.clone();
        if den.is_zero() {
            return Err(SewError::Degenerate("point mapped to infinity".into()));
        }
        Ok((a.clone() * w.clone() + b.clone()) / den)
    }

    /// `w ↦ c (w − z)`.
    fn affine(c: &S, z: &S) -> Self {
        Mobius::new(c.clone(), S::zero() - c.clone() * z.clone(), S::zero(), S::one())
    }

    /// `w ↦ −1/(w − a)`.
    fn at_infinity(a: &S) -> Self {
        Mobius::new(S::zero(), S::zero() - S::one(), S::one(), S::zero() - a.clone())
    }

    /// `|M(w)|`, infinite at the pole.
    fn image_modulus(&self, w: &S) -> f64 {
        self.apply(w).map(|v| v.modulus()).unwrap_or(f64::INFINITY)
    }

    fn is_affine(&self) -> bool {
        let [[_, _], [c, d]] = &self.0;
        c.modulus() <= 1e-12 * d.modulus()
    }
}

/// A sphere with a puncture at `∞` and finite punctures, each carrying a
/// local coordinate map.
struct Sphere<S> {
    infinity: Mobius<S>,
    finite: Vec<(S, Mobius<S>)>,
}

impl<S: Scalar> Sphere<S> {
    fn of(el: &KHatElement<S>) -> Self {
        Sphere {
            infinity: Mobius::at_infinity(&el.a),
            finite: el.punctures().into_iter().zip(&el.a0).map(|(z, c)| (z.clone(), Mobius::affine(c, &z))).collect(),
        }
    }

    /// Read off the canonical element after the normalizing map `T` fixing
    /// `∞`, solved from `lim w ψ₀(T⁻¹ w) = −1` and the last puncture at `0`.
    fn normalize(self) -> Result<KHatElement<S>, SewError> {
        let [[alpha, beta], [gamma, delta]] = self.infinity.0.clone();
        if !alpha.is_zero() && alpha.modulus() > 1e-12 * beta.modulus() {
            return Err(SewError::Degenerate("coordinate at infinity does not vanish there".into()));
        }
        if beta.is_zero() || gamma.is_zero() {
            return Err(SewError::Degenerate("coordinate at infinity is singular".into()));
        }
        let lambda = S::zero() - gamma.clone() / beta;
        let mu = match self.finite.last() {
            Some((p, _)) => S::zero() - lambda.clone() * p.clone(),
            None => delta * lambda.clone() / gamma,
        };
        let t = Mobius::new(lambda, mu, S::zero(), S::one());
        let t_inv = t.adjugate();
        let psi = self.infinity.compose(&t_inv);
        let [[_, b], [c, d]] = psi.0.clone();
        if (b.clone() / c.clone() + S::one()).modulus() > 1e-9 {
            return Err(SewError::Degenerate("normalization failed".into()));
        }
        let a = S::zero() - d / c;
        let mut z = Vec::new();
        let mut a0 = Vec::new();
        for (p, phi) in &self.finite {
            let phi = phi.compose(&t_inv);
            if !phi.is_affine() {
                return Err(SewError::Degenerate("local coordinate is not affine".into()));
            }
            let [[al, _], [_, de]] = phi.0.clone();
            z.push(t.apply(p)?);
            a0.push(al / de);
        }
        let mut out = KHatElement::from_punctures(z, a, a0);
        if out.arity() == 0 {
            out.a = S::zero();
        }
        out.validate().map_err(|_| SewError::Coincident)?;
        Ok(out)
    }
}

/// Geometric sewability: scan radii `r` on a log grid for one where the
/// outer disk `|φᵢ| ≤ r` and the inner disk `|ψ₀| ≤ 1/r` are puncture-free.
fn geometric_sewable<S: Scalar>(outer: &Sphere<S>, i: usize, inner: &Sphere<S>) -> Result<(), SewError> {
    let phi = &outer.finite[i - 1].1;
    let others: Vec<f64> = outer
        .finite
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i - 1)
        .map(|(_, (p, _))| phi.image_modulus(p))
        .collect();
    let inside: Vec<f64> = inner.finite.iter().map(|(p, _)| inner.infinity.image_modulus(p)).collect();
    let outer_r = others.iter().cloned().fold(f64::INFINITY, f64::min);
    let inner_r = inside.iter().map(|v| 1.0 / v).fold(0.0, f64::max);
    for k in -4000..=4000 {
        let r = 10f64.powf(k as f64 / 200.0);
        let outer_ok = others.iter().all(|&v| v > r * (1.0 + SEW_MARGIN));
        let inner_ok = inside.iter().all(|&v| v > (1.0 / r) * (1.0 + SEW_MARGIN));
        if outer_ok && inner_ok {
            return Ok(());
        }
    }
    Err(SewError::NotSewable { inner: inner_r, outer: outer_r })
}

/// `P ᵢ∞₀ Q` by gluing: the coordinate of `Q` is identified with that of `P`
/// through `φᵢ⁻¹ ∘ J ∘ ψ₀`, the punctures and coordinates of `Q` are carried
/// over, and the result is renormalized.
pub fn geometric_sew_oracle<S: Scalar>(p: &KHatElement<S>, i: usize, q: &KHatElement<S>) -> Result<KHatElement<S>, SewError> {
    p.validate()?;
    q.validate()?;
    if i == 0 || i > p.arity() {
        return Err(SewError::IndexOutOfRange { i, arity: p.arity() });
    }
    let outer = Sphere::of(p);
    let inner = Sphere::of(q);
    geometric_sewable(&outer, i, &inner)?;
    let j = Mobius::new(S::zero(), S::zero() - S::one(), S::one(), S::zero());
    let glue = outer.finite[i - 1].1.adjugate().compose(&j).compose(&inner.infinity);
    let glue_inv = glue.adjugate();
    let mut finite = outer.finite[..i - 1].to_vec();
    for (x, phi) in &inner.finite {
        finite.push((glue.apply(x)?, phi.compose(&glue_inv)));
    }
    finite.extend_from_slice(&outer.finite[i..]);
    Sphere { infinity: outer.infinity, finite }.normalize()
}

impl<S: Clone> Clone for Sphere<S> {
    fn clone(&self) -> Self {
        Sphere { infinity: self.infinity.clone(), finite: self.finite.clone() }
    }
}

fn check_permutation(sigma: &[usize], n: usize) -> Result<(), SewError> {
    let mut seen = vec![false; n];
    if sigma.len() != n {
        return Err(SewError::BadPermutation(format!("length {} for arity {n}", sigma.len())));
    }
    for &s in sigma {
        if s == 0 || s > n || seen[s - 1] {
            return Err(SewError::BadPermutation(format!("{sigma:?}")));
        }
        seen[s - 1] = true;
    }
    Ok(())
}

/// Apply `σ` (one-based, `σ[j−1] = σ(j)`): puncture `j` of `P` becomes
/// puncture `σ(j)`, so `(σ·P)_k = P_{σ⁻¹(k)}`. If the puncture at `0` moves,
/// the result is translated back.
pub fn permute<S: Scalar>(p: &KHatElement<S>, sigma: &[usize]) -> Result<KHatElement<S>, SewError> {
    let n = p.arity();
    check_permutation(sigma, n)?;
    let pp = p.punctures();
    let mut punct = vec![S::zero(); n];
    let mut a0 = vec![S::zero(); n];
    for j in 0..n {
        punct[sigma[j] - 1] = pp[j].clone();
        a0[sigma[j] - 1] = p.a0[j].clone();
    }
    Ok(KHatElement::from_punctures(punct, p.a.clone(), a0))
}

/// Composition `σ ∘ τ` of one-based permutations.
pub fn compose_permutations(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    tau.iter().map(|&t| sigma[t - 1]).collect()
}

/// The permutation `σ ᵢ∘ τ` of `1..=m+n−1` with
/// `(σ·P) ∞_{σ(i)} (τ·Q) = (σ ᵢ∘ τ)·(P ∞ᵢ Q)`.
pub fn sewn_permutation(sigma: &[usize], i: usize, tau: &[usize]) -> Vec<usize> {
    let m = sigma.len();
    let n = tau.len();
    let si = sigma[i - 1];
    let place = |s: usize| if s < si { s } else { s + n - 1 };
    let mut out = Vec::with_capacity(m + n - 1);
    for &s in &sigma[..i - 1] {
        out.push(place(s));
    }
    for &t in tau {
        out.push(si + t - 1);
    }
    for &s in &sigma[i..] {
        out.push(place(s));
    }
    out
}

/// Sampling ranges for random elements.
fn random_scalar<S: Scalar>(rng: &mut ChaCha8Rng, radius: f64, exact: bool) -> S {
    let (re, im): (f64, f64) = (rng.gen_range(-radius..radius), rng.gen_range(-radius..radius));
    let (re, im) = if exact { ((re * 8.0).round() / 8.0, (im * 8.0).round() / 8.0) } else { (re, im) };
    S::from_parts(re, im).unwrap_or_else(S::zero)
}

fn random_nonzero<S: Scalar>(rng: &mut ChaCha8Rng, exact: bool) -> S {
    loop {
        let s: S = random_scalar(rng, 2.0, exact);
        if s.modulus() > 0.4 {
            return s;
        }
    }
}

/// A random element of arity `n` with punctures in a disk of radius `radius`.
pub fn random_element<S: Scalar>(rng: &mut ChaCha8Rng, n: usize, radius: f64, exact: bool) -> KHatElement<S> {
    loop {
        let z = (0..n.saturating_sub(1)).map(|_| random_scalar(rng, radius, exact)).collect();
        let a = if n == 0 { S::zero() } else { random_scalar(rng, radius, exact) };
        let a0 = (0..n).map(|_| random_nonzero(rng, exact)).collect();
        if let Ok(el) = KHatElement::new(z, a, a0) {
            return el;
        }
    }
}

/// Random element of arity `n` whose punctures lie near its `∞` center, so
/// that it can be sewn into typical outer elements.
fn random_inner<S: Scalar>(rng: &mut ChaCha8Rng, n: usize, exact: bool) -> KHatElement<S> {
    loop {
        let mut el: KHatElement<S> = random_element(rng, n, 0.25, exact);
        if n > 0 {
            el.a = random_scalar(rng, 0.25, exact);
        }
        if el.validate().is_ok() {
            return el;
        }
    }
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (1..=n).collect();
    for k in (1..n).rev() {
        v.swap(k, rng.gen_range(0..=k));
    }
    v
}

fn push(report: &mut Report, id: &str, instance: &str, r: Result<f64, SewError>) {
    report.push(id, instance, r.unwrap_or(f64::INFINITY));
}

/// Randomized operad suite. Each trial `t` draws from an independent stream
/// of the master `seed` and records:
/// `sew_vs_oracle`, `identity_left`, `identity_right`, `associativity_nested`,
/// `associativity_disjoint`, `equivariance`, `permutation_action` and
/// `rescaling_group`. Unsewable samples are redrawn. With `exact`, samples
/// are Gaussian rationals with denominator 8.
pub fn verify_operad_axioms<S: Scalar>(trials: usize, seed: u64, tol: f64, exact: bool) -> Report {
    let mut report = Report::new("operad_axioms", tol);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        let inst = format!("trial={t}");
        let (p, i, q) = sample_sewable::<S>(&mut rng, exact);
        let m = p.arity();
        let n = q.arity();

        if !exact {
            push(
                &mut report,
                "sew_vs_oracle",
                &inst,
                sew(&p, i, &q).and_then(|x| Ok(x.distance(&geometric_sew_oracle(&p, i, &q)?))),
            );
        }
        let id = KHatElement::<S>::identity();
        push(&mut report, "identity_left", &inst, sew(&id, 1, &q).map(|x| x.distance(&q)));
        let right = (1..=m).map(|k| sew(&p, k, &id).map(|x| x.distance(&p))).try_fold(0.0f64, |acc, r| r.map(|v| acc.max(v)));
        push(&mut report, "identity_right", &inst, right);

        // Nested: (P ∘ᵢ Q) ∘_{i+k−1} R = P ∘ᵢ (Q ∘ₖ R).
        let nested = (|| {
            for _ in 0..50 {
                let arity = rng.gen_range(0..3);
                let r: KHatElement<S> = random_inner(&mut rng, arity, exact);
                let k = rng.gen_range(1..=n.max(1));
                if n == 0 {
                    return Ok(0.0);
                }
                let lhs = sew(&p, i, &q).and_then(|pq| sew(&pq, i + k - 1, &r));
                let rhs = sew(&q, k, &r).and_then(|qr| sew(&p, i, &qr));
                if let (Ok(l), Ok(r)) = (lhs, rhs) {
                    return Ok(l.distance(&r));
                }
            }
            Err(SewError::Degenerate("no sewable nested triple".into()))
        })();
        push(&mut report, "associativity_nested", &inst, nested);

        // Disjoint: for j < i, (P ∘ᵢ Q) ∘ⱼ R = (P ∘ⱼ R) ∘_{i+l−1} Q.
        let disjoint = (|| {
            if m < 2 {
                return Ok(0.0);
            }
            for _ in 0..50 {
                let arity = rng.gen_range(0..3);
                let r: KHatElement<S> = random_inner(&mut rng, arity, exact);
                let l = r.arity();
                let (ii, jj) = if i > 1 { (i, rng.gen_range(1..i)) } else { (rng.gen_range(2..=m), 1) };
                let lhs = sew(&p, ii, &q).and_then(|pq| sew(&pq, jj, &r));
                let rhs = sew(&p, jj, &r).and_then(|pr| sew(&pr, ii + l - 1, &q));
                if let (Ok(a), Ok(b)) = (lhs, rhs) {
                    return Ok(a.distance(&b));
                }
            }
            Err(SewError::Degenerate("no sewable disjoint triple".into()))
        })();
        push(&mut report, "associativity_disjoint", &inst, disjoint);

        let sigma = random_permutation(&mut rng, m);
        let tau = random_permutation(&mut rng, n);
        let equiv = (|| {
            let lhs = sew(&permute(&p, &sigma)?, sigma[i - 1], &permute(&q, &tau)?)?;
            let rhs = permute(&sew(&p, i, &q)?, &sewn_permutation(&sigma, i, &tau))?;
            Ok(lhs.distance(&rhs))
        })();
        push(&mut report, "equivariance", &inst, equiv);

        let rho = random_permutation(&mut rng, m);
        let action = (|| {
            let lhs = permute(&p, &compose_permutations(&sigma, &rho))?;
            let rhs = permute(&permute(&p, &rho)?, &sigma)?;
            Ok(lhs.distance(&rhs))
        })();
        push(&mut report, "permutation_action", &inst, action);

        let (c1, c2): (S, S) = (random_nonzero(&mut rng, exact), random_nonzero(&mut rng, exact));
        let group = sew(&KHatElement::rescaling(c1.clone()), 1, &KHatElement::rescaling(c2.clone()))
            .map(|x| x.distance(&KHatElement::rescaling(c1 * c2)));
        push(&mut report, "rescaling_group", &inst, group);
    }
    report
}

/// Draw a sewable `(P, i, Q)` with `P` of arity 1..=4 and `Q` of arity 0..=3.
fn sample_sewable<S: Scalar>(rng: &mut ChaCha8Rng, exact: bool) -> (KHatElement<S>, usize, KHatElement<S>) {
    loop {
        let m = rng.gen_range(1..=4);
        let p: KHatElement<S> = random_element(rng, m, 3.0, exact);
        let arity = rng.gen_range(0..=3);
        let q: KHatElement<S> = random_inner(rng, arity, exact);
        let i = rng.gen_range(1..=m);
        if sewability(&p, i, &q).is_ok() {
            return (p, i, q);
        }
    }
}

/// JSON literal of an element: complex numbers as `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KHatLiteral {
    /// Punctures `z₁, …, z_{n−1}`.
    pub z: Vec<[f64; 2]>,
    /// Parameter at `∞`.
    pub a: [f64; 2],
    /// Scalings.
    pub a0: Vec<[f64; 2]>,
}

impl KHatLiteral {
    /// Convert into a validated element.
    pub fn to_element<S: Scalar>(&self) -> Result<KHatElement<S>, SewError> {
        let conv = |v: &[f64; 2]| S::from_parts(v[0], v[1]).ok_or_else(|| SewError::Invalid("non-finite value".into()));
        KHatElement::new(
            self.z.iter().map(conv).collect::<Result<_, _>>()?,
            conv(&self.a)?,
            self.a0.iter().map(conv).collect::<Result<_, _>>()?,
        )
    }

    /// Literal of an element.
    pub fn from_element<S: Scalar>(el: &KHatElement<S>) -> Self {
        let c = |s: &S| {
            let z = s.to_c64();
            [z.re, z.im]
        };
        KHatLiteral { z: el.z.iter().map(c).collect(), a: c(&el.a), a0: el.a0.iter().map(c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{GaussQ, C64};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn worked_example_matches_oracle() {
        let p = KHatElement::new(vec![c(3.0, 0.0)], c(0.0, 0.0), vec![c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let q = KHatElement::new(vec![c(5.0, 0.0)], c(1.0, 0.0), vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        // Inner radius max(|5 − 1|, |0 − 1|) = 4 is below |a₀⁽²⁾| · |3 − 0| = 6.
        let s = sew(&p, 2, &q).unwrap();
        let o = geometric_sew_oracle(&p, 2, &q).unwrap();
        assert!(s.distance(&o) < 1e-12);
        let frozen = KHatElement::new(
            vec![c(3.5, 0.0), c(2.5, 0.0)],
            c(0.5, 0.0),
            vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0)],
        )
        .unwrap();
        assert!(s.distance(&frozen) < 1e-15);
    }

    #[test]
    fn identity_is_exact_fixed_point() {
        let id = KHatElement::<C64>::identity();
        let q = KHatElement::new(vec![c(0.1, 0.2)], c(0.05, 0.0), vec![c(1.5, 0.0), c(0.0, 2.0)]).unwrap();
        assert_eq!(sew(&id, 1, &q).unwrap(), q);
        assert_eq!(sew(&q, 1, &id).unwrap(), q);
        assert_eq!(sew(&q, 2, &id).unwrap(), q);
        assert_eq!(geometric_sew_oracle(&id, 1, &id).unwrap(), id);
    }

    #[test]
    fn vacuum_removes_a_puncture() {
        let q = KHatElement::new(vec![c(1.0, 0.0), c(0.0, 2.0)], c(0.3, 0.0), vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        let v = KHatElement::<C64>::vacuum();
        let r = sew(&q, 1, &v).unwrap();
        assert_eq!(r.z, vec![c(0.0, 2.0)]);
        assert_eq!(r.a0, vec![c(2.0, 0.0), c(3.0, 0.0)]);
        let last = sew(&q, 3, &v).unwrap();
        assert_eq!(last.z, vec![c(1.0, -2.0)]);
        assert_eq!(last.a, c(0.3, -2.0));
        assert!(last.distance(&geometric_sew_oracle(&q, 3, &v).unwrap()) < 1e-12);
    }

    #[test]
    fn translation_parameter_is_the_inner_one() {
        // Reading the translation as the outer parameter `a` disagrees with the oracle.
        let p = KHatElement::new(vec![c(4.0, 0.0)], c(0.7, 0.0), vec![c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let q = KHatElement::new(vec![c(0.5, 0.0)], c(0.2, 0.0), vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let oracle = geometric_sew_oracle(&p, 1, &q).unwrap();
        let formula = sew(&p, 1, &q).unwrap();
        assert!(formula.distance(&oracle) < 1e-12);
        let with_outer = (c(0.5, 0.0) - p.a) / c(1.0, 0.0) + c(4.0, 0.0);
        assert!((with_outer - oracle.z[0]).norm() > 0.1);
    }

    #[test]
    fn unsewable_is_rejected_by_both() {
        let p = KHatElement::new(vec![c(1.0, 0.0)], c(0.0, 0.0), vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let q = KHatElement::new(vec![c(3.0, 0.0)], c(0.0, 0.0), vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(sew(&p, 1, &q), Err(SewError::NotSewable { .. })));
        assert!(matches!(geometric_sew_oracle(&p, 1, &q), Err(SewError::NotSewable { .. })));
        assert!(matches!(sew(&p, 3, &q), Err(SewError::IndexOutOfRange { .. })));
    }

    #[test]
    fn rescaling_subgroup() {
        let g = sew(&KHatElement::rescaling(c(2.0, 1.0)), 1, &KHatElement::rescaling(c(0.0, 3.0))).unwrap();
        assert_eq!(g, KHatElement::rescaling(c(2.0, 1.0) * c(0.0, 3.0)));
    }

    #[test]
    fn float_suite_passes() {
        let rep = verify_operad_axioms::<C64>(100, 42, 1e-10, false);
        for r in rep.records.iter().filter(|r| !r.pass) {
            println!("{} {} {:e}", r.id, r.instance, r.residual);
        }
        assert!(rep.pass);
        assert!(rep.max_for("sew_vs_oracle").unwrap() < 1e-12);
    }

    #[test]
    fn exact_suite_is_exact() {
        let rep = verify_operad_axioms::<GaussQ>(30, 5, f64::MIN_POSITIVE, true);
        for r in rep.records.iter().filter(|r| !r.pass) {
            println!("{} {} {:e}", r.id, r.instance, r.residual);
        }
        assert!(rep.pass);
    }

    #[test]
    fn misindexed_composition_is_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut detected = 0;
        for _ in 0..20 {
            let p: KHatElement<C64> = random_element(&mut rng, 2, 3.0, false);
            let q: KHatElement<C64> = random_inner(&mut rng, 2, false);
            let r: KHatElement<C64> = random_inner(&mut rng, 1, false);
            let (Ok(pq), Ok(qr)) = (sew(&p, 1, &q), sew(&q, 1, &r)) else { continue };
            // Correct index is 1; using 2 must disagree.
            if let (Ok(l), Ok(rh)) = (sew(&pq, 2, &r), sew(&p, 1, &qr)) {
                if l.distance(&rh) > 1e-6 {
                    detected += 1;
                }
            }
        }
        assert!(detected > 0);
    }

    #[test]
    fn transposition_swaps_entries() {
        let p = KHatElement::new(vec![c(1.0, 0.0), c(2.0, 0.0)], c(0.0, 0.0), vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        let s = permute(&p, &[2, 1, 3]).unwrap();
        assert_eq!(s.z, vec![c(2.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(s.a0, vec![c(2.0, 0.0), c(1.0, 0.0), c(3.0, 0.0)]);
        assert_eq!(permute(&p, &[1, 2, 3]).unwrap(), p);
    }
}
