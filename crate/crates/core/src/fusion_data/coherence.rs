//! Pentagon, hexagon and ribbon residuals of skeletal data.


use super::CategoryData;
use crate::linalg::Mat;
use crate::report::Report;
use crate::scalar::Scalar;

fn inst<S: Scalar>(data: &CategoryData<S>, keys: &[(&str, usize)]) -> String {
    keys.iter()
        .map(|(k, v)| format!("{k}={}", data.name(*v)))
        .collect::<Vec<_>>()
        .join(",")
}

fn max_f<S: Scalar>(data: &CategoryData<S>) -> f64 {
    data.f_blocks().values().map(|b| b.m.max_abs()).fold(1.0, f64::max)
}

fn max_r<S: Scalar>(data: &CategoryData<S>) -> f64 {
    data.r_blocks()
        .values()
        .map(|b| b.m.max_abs().max(b.inv.max_abs()))
        .fold(1.0, f64::max)
}

/// Pentagon residual for every outer tuple `(a, b, c, d, e)` with a nonzero
/// space, normalized by the cube of the largest F entry (at least one).
pub fn pentagon_residuals<S: Scalar>(data: &CategoryData<S>) -> Vec<([usize; 5], f64)> {
    let n = data.rank();
    let scale = max_f(data).powi(3);
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        if let Some(r) = pentagon_at(data, a, b, c, d, e) {
                            out.push(([a, b, c, d, e], r / scale));
                        }
                    }
                }
            }
        }
    }
    out
}

fn pentagon_at<S: Scalar>(data: &CategoryData<S>, a: usize, b: usize, c: usize, d: usize, e: usize) -> Option<f64> {
    let n = data.rank();
    let nn = |x, y, z| data.n(x, y, z);
    let mut worst: Option<f64> = None;
    for f in 0..n {
        for al in 0..nn(a, b, f) {
            for g in 0..n {
                for be in 0..nn(f, c, g) {
                    for ga in 0..nn(g, d, e) {
                        for l in 0..n {
                            for de in 0..nn(c, d, l) {
                                for k in 0..n {
                                    for la in 0..nn(b, l, k) {
                                        for mu in 0..nn(a, k, e) {
                                            let mut lhs = S::zero();
                                            for nu in 0..nn(f, l, e) {
                                                lhs = lhs
                                                    + data.f(f, c, d, e, (g, be, ga), (l, de, nu))
                                                        * data.f(a, b, l, e, (f, al, nu), (k, la, mu));
                                            }
                                            let mut rhs = S::zero();
                                            for h in 0..n {
                                                for si in 0..nn(b, c, h) {
                                                    for ps in 0..nn(a, h, g) {
                                                        for rh in 0..nn(h, d, k) {
                                                            rhs = rhs
                                                                + data.f(a, b, c, g, (f, al, be), (h, si, ps))
                                                                    * data.f(a, h, d, e, (g, ps, ga), (k, rh, mu))
                                                                    * data.f(b, c, d, k, (h, si, rh), (l, de, la));
                                                        }
                                                    }
                                                }
                                            }
                                            let r = (lhs - rhs).modulus();
                                            worst = Some(worst.map_or(r, |w: f64| if r.is_nan() { r } else { w.max(r) }));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    worst
}

/// Braiding matrix `R^{ab}_c` for the positive sense, or the reversed
/// braiding `(R^{ba}_c)^{-1}` for the negative sense.
pub(crate) fn r_sense<S: Scalar>(data: &CategoryData<S>, a: usize, b: usize, c: usize, positive: bool) -> Option<Mat<S>> {
    if positive {
        data.r_block(a, b, c).map(|blk| blk.m.clone())
    } else {
        data.r_block(b, a, c).map(|blk| blk.inv.clone())
    }
}

/// Hexagon residual for every outer tuple `(a, b, c, d)` and braiding sense.
pub fn hexagon_residuals<S: Scalar>(data: &CategoryData<S>, positive: bool) -> Vec<([usize; 4], f64)> {
    let n = data.rank();
    let scale = max_f(data).powi(2) * max_r(data).powi(2);
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if let Some(r) = hexagon_at(data, a, b, c, d, positive) {
                        out.push(([a, b, c, d], r / scale));
                    }
                }
            }
        }
    }
    out
}

fn hexagon_at<S: Scalar>(data: &CategoryData<S>, a: usize, b: usize, c: usize, d: usize, positive: bool) -> Option<f64> {
    let n = data.rank();
    let nn = |x, y, z| data.n(x, y, z);
    let rs = |x, y, z| r_sense(data, x, y, z, positive);
    let mut worst: Option<f64> = None;
    for e in 0..n {
        let Some(r_ab) = rs(a, b, e) else { continue };
        for al in 0..nn(a, b, e) {
            for be in 0..nn(e, c, d) {
                for g in 0..n {
                    let Some(r_ac) = rs(a, c, g) else { continue };
                    for mu2 in 0..nn(c, a, g) {
                        for nu in 0..nn(b, g, d) {
                            let mut lhs = S::zero();
                            for al2 in 0..nn(b, a, e) {
                                for mu in 0..nn(a, c, g) {
                                    lhs = lhs
                                        + r_ab.get(al, al2).clone()
                                            * data.f(b, a, c, d, (e, al2, be), (g, mu, nu))
                                            * r_ac.get(mu, mu2).clone();
                                }
                            }
                            let mut rhs = S::zero();
                            for f in 0..n {
                                let Some(r_af) = rs(a, f, d) else { continue };
                                for si in 0..nn(b, c, f) {
                                    for ta in 0..nn(a, f, d) {
                                        for ta2 in 0..nn(f, a, d) {
                                            rhs = rhs
                                                + data.f(a, b, c, d, (e, al, be), (f, si, ta))
                                                    * r_af.get(ta, ta2).clone()
                                                    * data.f(b, c, a, d, (f, si, ta2), (g, mu2, nu));
                                        }
                                    }
                                }
                            }
                            let r = (lhs - rhs).modulus();
                            worst = Some(worst.map_or(r, |w: f64| if r.is_nan() { r } else { w.max(r) }));
                        }
                    }
                }
            }
        }
    }
    worst
}

/// Full coherence suite: pentagons, both hexagons, the ribbon relation
/// `R^{ab}_c R^{ba}_c = θ_c/(θ_a θ_b)`, twist and dimension consistency, and
/// the unit gauge.
pub fn verify_coherence<S: Scalar>(data: &CategoryData<S>, tol: f64) -> Report {
    let mut rep = Report::new("verify-category", tol);
    let n = data.rank();
    let e = data.unit();

    for ([a, b, c, d, x], r) in pentagon_residuals(data) {
        rep.push("pentagon", inst(data, &[("a", a), ("b", b), ("c", c), ("d", d), ("e", x)]), r);
    }
    for (sense, positive) in [("hexagon+", true), ("hexagon-", false)] {
        for ([a, b, c, d], r) in hexagon_residuals(data, positive) {
            rep.push(sense, inst(data, &[("a", a), ("b", b), ("c", c), ("d", d)]), r);
        }
    }

    for a in 0..n {
        for b in 0..n {
            for c in data.ring().channels(a, b) {
                let (Some(rab), Some(rba)) = (data.r_block(a, b, c), data.r_block(b, a, c)) else {
                    continue;
                };
                let want = data.twist(c).clone() / (data.twist(a).clone() * data.twist(b).clone());
                let dbl = rab.m.mul(&rba.m);
                let target = Mat::identity(dbl.rows()).scale(&want);
                rep.push("ribbon", inst(data, &[("a", a), ("b", b), ("c", c)]), dbl.max_diff(&target));
            }
        }
    }

    for a in 0..n {
        let label = inst(data, &[("a", a)]);
        rep.push(
            "twist_dual",
            label.clone(),
            (data.twist(data.dual(a)).clone() - data.twist(a).clone()).modulus(),
        );
        rep.push("twist_modulus", label.clone(), (data.twist(a).modulus() - 1.0).abs());
        rep.push("qdim_dual", label, (data.qdim(a) - data.qdim(data.dual(a))).abs());
    }
    rep.push("twist_unit", inst(data, &[("e", e)]), (data.twist(e).clone() - S::one()).modulus());
    let dims: Vec<f64> = (0..n).map(|a| data.qdim(a)).collect();
    rep.push("qdim_ring", "all", data.ring().dim_residual(&dims));

    let mut gauge = 0.0f64;
    for (key, blk) in data.f_blocks() {
        if key[..3].contains(&e) {
            gauge = gauge.max(unit_block_residual(blk));
        }
    }
    for a in 0..n {
        for key in [[e, a, a], [a, e, a]] {
            if let Some(blk) = data.r_block(key[0], key[1], key[2]) {
                gauge = gauge.max(blk.m.max_diff(&Mat::identity(blk.m.rows())));
            }
        }
    }
    rep.push("unit_gauge", "all", gauge);
    rep
}

/// Deviation of a unit-involving F-block from the identity pairing of
/// left and right trees.
fn unit_block_residual<S: Scalar>(blk: &super::FBlock<S>) -> f64 {
    // With a unit among a, b, c both bases are indexed by the same
    // remaining multiplicity data in the same lexicographic order.
    if blk.m.rows() != blk.m.cols() {
        return f64::INFINITY;
    }
    blk.m.max_diff(&Mat::identity(blk.m.rows()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_data::{builtin_category, Builtin};
    use num_complex::Complex64;

    #[test]
    fn trivial_is_exactly_coherent() {
        let data = builtin_category(Builtin::Trivial);
        let rep = verify_coherence(&data, 1e-9);
        assert!(rep.pass);
        assert_eq!(rep.max_residual, 0.0);
    }

    #[test]
    fn negated_fibonacci_r_breaks_hexagon() {
        let data = builtin_category(Builtin::Fibonacci);
        let bad = data.with_r_scaled(1, 1, 0, Complex64::new(-1.0, 0.0)).unwrap();
        let rep = verify_coherence(&bad, 1e-9);
        assert!(!rep.pass);
        assert!(rep.max_for("hexagon+").unwrap() > 0.1);
    }
}
