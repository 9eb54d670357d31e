//! Property-based tests of the structural invariants.

use fullfield_core::fusion_data::{builtin_category, Builtin};
use fullfield_core::graphcalc::{evaluate_diagram, hat_a, omega, sigma_cyclic, tilde_a, Diagram, Gen, Morphism};
use fullfield_core::linalg::Mat;
use fullfield_core::report::{emit_report, Format, Report};
use fullfield_core::sewing_operad::{
    compose_permutations, geometric_sew_oracle, permute, sew, sewability, sewn_permutation, KHatElement,
};
use fullfield_core::{KHatExact, C64};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = C64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| C64::new(re, im))
}

fn nonzero() -> impl Strategy<Value = C64> {
    (0.3f64..3.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

fn matrix(n: usize) -> impl Strategy<Value = Mat<C64>> {
    proptest::collection::vec(complex(), n * n).prop_map(move |v| Mat::from_vec(n, n, v))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

/// An element of arity `n` with well-separated punctures in a disk of radius `r`.
fn element(n: usize, r: f64) -> impl Strategy<Value = KHatElement<C64>> {
    (proptest::collection::vec(complex(), n.saturating_sub(1)), complex(), proptest::collection::vec(nonzero(), n)).prop_filter_map(
        "distinct punctures",
        move |(z, a, a0)| {
            let z: Vec<C64> = z.into_iter().map(|x| x * (r / 3.0)).collect();
            let a = if n == 0 { C64::new(0.0, 0.0) } else { a * (r / 3.0) };
            let el = KHatElement::new(z, a, a0).ok()?;
            let p = el.punctures();
            for i in 0..p.len() {
                for j in 0..i {
                    if (p[i] - p[j]).norm() < 1e-3 {
                        return None;
                    }
                }
            }
            Some(el)
        },
    )
}

fn sewable() -> impl Strategy<Value = (KHatElement<C64>, usize, KHatElement<C64>)> {
    (1usize..=4, 0usize..=3)
        .prop_flat_map(|(m, n)| (element(m, 3.0), 1..=m, element(n, 0.3)))
        .prop_filter("sewable", |(p, i, q)| sewability(p, *i, q).is_ok())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn inverse_agrees_with_nalgebra(m in matrix(3)) {
        let nm = DMatrix::from_fn(3, 3, |i, j| *m.get(i, j));
        match (m.inverse(), nm.clone().try_inverse()) {
            (Some(inv), Some(ninv)) => {
                let scale = 1.0 + ninv.iter().map(|z| z.norm()).fold(0.0, f64::max);
                for i in 0..3 {
                    for j in 0..3 {
                        prop_assert!((inv.get(i, j) - ninv[(i, j)]).norm() < 1e-8 * scale);
                    }
                }
            }
            (None, None) => {}
            (a, _) => prop_assert!(a.is_none() || nm.determinant().norm() < 1e-12),
        }
    }

    #[test]
    fn product_transpose_reverses(a in matrix(3), b in matrix(3)) {
        let lhs = a.mul(&b).transpose();
        let rhs = b.transpose().mul(&a.transpose());
        prop_assert!(lhs.max_diff(&rhs) < 1e-12);
    }

    #[test]
    fn report_pass_iff_all_below_tol(res in proptest::collection::vec(0.0f64..2e-9, 0..20)) {
        let mut r = Report::new("p", 1e-9);
        for (k, x) in res.iter().enumerate() {
            r.push("id", k.to_string(), *x);
        }
        prop_assert_eq!(r.pass, res.iter().all(|x| *x < 1e-9));
        let back: Report = serde_json::from_str(&emit_report(&r, Format::Json)).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn formula_matches_oracle((p, i, q) in sewable()) {
        let s = sew(&p, i, &q).unwrap();
        let o = geometric_sew_oracle(&p, i, &q).unwrap();
        prop_assert!(s.distance(&o) < 1e-12, "{}", s.distance(&o));
    }

    #[test]
    fn identity_is_two_sided(p in (1usize..=4).prop_flat_map(|m| element(m, 3.0))) {
        // Float mode: the left unit costs one rounding in `(ξ − b) + b`.
        let id = KHatElement::identity();
        prop_assert!(sew(&id, 1, &p).unwrap().distance(&p) < 1e-14);
        for i in 1..=p.arity() {
            prop_assert!(sew(&p, i, &id).unwrap().distance(&p) < 1e-14);
        }
    }

    #[test]
    fn permutations_act((p, s, t) in (1usize..=5).prop_flat_map(|n| (element(n, 3.0), permutation(n), permutation(n)))) {
        let lhs = permute(&p, &compose_permutations(&s, &t)).unwrap();
        let rhs = permute(&permute(&p, &t).unwrap(), &s).unwrap();
        prop_assert!(lhs.distance(&rhs) < 1e-12);
    }

    #[test]
    fn sewing_is_equivariant(
        ((p, i, q), seed) in (sewable(), any::<u64>())
    ) {
        let m = p.arity();
        let n = q.arity();
        let mut rng = seed;
        let mut shuffle = |k: usize| {
            let mut v: Vec<usize> = (1..=k).collect();
            for j in (1..k).rev() {
                rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                v.swap(j, (rng >> 33) as usize % (j + 1));
            }
            v
        };
        let sigma = shuffle(m);
        let tau = shuffle(n);
        let lhs = sew(&permute(&p, &sigma).unwrap(), sigma[i - 1], &permute(&q, &tau).unwrap()).unwrap();
        let rhs = permute(&sew(&p, i, &q).unwrap(), &sewn_permutation(&sigma, i, &tau)).unwrap();
        prop_assert!(lhs.distance(&rhs) < 1e-12);
    }

    #[test]
    fn exact_rescalings_multiply(a in (-8i64..8, 1i64..8, -8i64..8), b in (-8i64..8, 1i64..8, -8i64..8)) {
        use fullfield_core::scalar::gauss;
        prop_assume!(a.0 != 0 || a.2 != 0);
        prop_assume!(b.0 != 0 || b.2 != 0);
        let x = gauss(a.0, a.1, a.2, a.1);
        let y = gauss(b.0, b.1, b.2, b.1);
        let g = sew(&KHatExact::rescaling(x.clone()), 1, &KHatExact::rescaling(y.clone())).unwrap();
        prop_assert_eq!(g, KHatExact::rescaling(x * y));
    }

    #[test]
    fn operators_are_linear(
        b in prop::sample::select(Builtin::ALL.to_vec()),
        pick in any::<prop::sample::Index>(),
        r in prop::sample::select(vec![0i32, -1]),
        c1 in complex(),
        c2 in complex(),
    ) {
        let d = builtin_category(b);
        let n_l = d.rank();
        let triples: Vec<(usize, usize, usize)> = (0..n_l)
            .flat_map(|a1| (0..n_l).flat_map(move |a2| (0..n_l).map(move |a3| (a1, a2, a3))))
            .filter(|&(a1, a2, a3)| d.n(a1, a2, a3) > 0)
            .collect();
        let (a1, a2, a3) = *pick.get(&triples);
        // Image of c1·e_0 + c2·e_last through the diagram equals the matrix image.
        let n = d.n(a1, a2, a3);
        let mut v = vec![C64::new(0.0, 0.0); n];
        v[0] += c1;
        v[n - 1] += c2;
        let t = tilde_a(&d, a1, a2, a3, r).unwrap();
        let (a2d, a3d) = (d.dual(a2), d.dual(a3));
        let diagram = Diagram::new(vec![a1, a3d])
            .then(vec![Gen::Braid { a: a1, b: a3d, positive: r == -1 }, Gen::CupL(a2d)])
            .then(vec![Gen::Id(a3d), Gen::Vertex { a: a1, b: a2, c: a3, coeffs: v.clone() }, Gen::Id(a2d)])
            .then(vec![Gen::CapL(a3d), Gen::Id(a2d)]);
        let got = evaluate_diagram(&d, &diagram).unwrap().vertex_coeffs().unwrap();
        for k in 0..t.rows() {
            let want: C64 = (0..n).map(|j| t.get(k, j) * v[j]).sum();
            prop_assert!((got[k] - want).norm() < 1e-10);
        }
        let h = hat_a(&d, a1, a2, a3, r).unwrap();
        prop_assert!(h.mul(&t).max_diff(&Mat::identity(n)) < 1e-9);
        let s = sigma_cyclic(&d, a1, a2, a3, r).unwrap();
        prop_assert_eq!(s.cols(), n);
        let o = omega(&d, a1, a2, a3, r).unwrap();
        prop_assert_eq!(o.rows(), d.n(a2, a1, a3));
    }

    #[test]
    fn braid_then_inverse_is_identity(
        b in prop::sample::select(Builtin::ALL.to_vec()),
        x in 0usize..3,
        y in 0usize..3,
        positive in any::<bool>(),
    ) {
        let d = builtin_category(b);
        let (x, y) = (x % d.rank(), y % d.rank());
        let diagram = Diagram::new(vec![x, y])
            .then(vec![Gen::Braid { a: x, b: y, positive }])
            .then(vec![Gen::Braid { a: y, b: x, positive: !positive }]);
        let m = evaluate_diagram(&d, &diagram).unwrap();
        prop_assert!(m.max_diff(&Morphism::identity(&d, &[x, y])).unwrap() < 1e-12);
    }
}
