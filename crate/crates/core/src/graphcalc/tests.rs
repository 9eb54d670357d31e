use super::*;
use crate::fusion_data::{builtin_category, Builtin};
use crate::C64;

const TOL: f64 = 1e-9;

fn triples(d: &CategoryData<C64>) -> Vec<(usize, usize, usize)> {
    let n = d.rank();
    let mut out = Vec::new();
    for a1 in 0..n {
        for a2 in 0..n {
            for a3 in 0..n {
                if d.n(a1, a2, a3) > 0 {
                    out.push((a1, a2, a3));
                }
            }
        }
    }
    out
}

fn all() -> Vec<CategoryData<C64>> {
    Builtin::ALL.iter().map(|&b| builtin_category(b)).collect()
}

fn closed(d: &CategoryData<C64>, diagram: &Diagram<C64>) -> C64 {
    evaluate_diagram(d, diagram).unwrap().scalar(d).unwrap()
}

#[test]
fn empty_diagram_is_one() {
    let d = builtin_category(Builtin::Fibonacci);
    assert_eq!(closed(&d, &Diagram::new(vec![])), C64::new(1.0, 0.0));
}

#[test]
fn closed_loops_give_quantum_dimensions() {
    for d in all() {
        for a in 0..d.rank() {
            let right = Diagram::new(vec![]).then(vec![Gen::CupR(a)]).then(vec![Gen::CapL(a)]);
            let left = Diagram::new(vec![]).then(vec![Gen::CupL(a)]).then(vec![Gen::CapR(a)]);
            for loop_ in [right, left] {
                let v = closed(&d, &loop_);
                assert!((v - C64::new(d.qdim(a), 0.0)).norm() < TOL, "{} loop {v}", d.name(a));
            }
        }
    }
}

#[test]
fn kink_gives_twist_times_dimension() {
    for d in all() {
        for a in 0..d.rank() {
            let ad = d.dual(a);
            let kink = Diagram::new(vec![])
                .then(vec![Gen::CupR(a)])
                .then(vec![Gen::Twist { a, positive: true }, Gen::Id(ad)])
                .then(vec![Gen::CapL(a)]);
            let want = d.twist(a) * d.qdim(a);
            assert!((closed(&d, &kink) - want).norm() < TOL);
        }
    }
}

#[test]
fn ribbon_double_braiding() {
    for d in all() {
        for (a, b, c) in triples(&d) {
            let once = r_move(&d, a, b, true).unwrap();
            let twice = r_move(&d, b, a, true).unwrap().compose(&once).unwrap();
            let want = d.twist(c) / (d.twist(a) * d.twist(b));
            let blk = &twice.blocks[c];
            for i in 0..blk.rows() {
                assert!((blk.get(i, i) - want).norm() < TOL);
            }
        }
    }
}

#[test]
fn braid_senses_are_inverse() {
    for d in all() {
        for (a, b, _) in triples(&d) {
            let p = r_move(&d, a, b, true).unwrap();
            let m = r_move(&d, b, a, false).unwrap();
            let id = Morphism::identity(&d, &[a, b]);
            assert!(m.compose(&p).unwrap().max_diff(&id).unwrap() < 1e-12);
        }
    }
}

#[test]
fn completeness_of_vertex_basis() {
    for d in all() {
        for a1 in 0..d.rank() {
            for a2 in 0..d.rank() {
                let word = [a1, a2];
                let mut sum = Morphism::zero(&d, &word, &word);
                for a3 in d.ring().channels(a1, a2) {
                    for mu in 0..d.n(a1, a2, a3) {
                        let diag = Diagram::new(word.to_vec())
                            .then(vec![Gen::vertex(&d, a1, a2, a3, mu)])
                            .then(vec![Gen::covertex(&d, a3, a1, a2, mu)]);
                        sum = sum.add(&evaluate_diagram(&d, &diag).unwrap()).unwrap();
                    }
                }
                assert!(sum.max_diff(&Morphism::identity(&d, &word)).unwrap() < TOL);
            }
        }
    }
}

#[test]
fn f_move_fibonacci() {
    let d = builtin_category(Builtin::Fibonacci);
    let blk = f_move(&d, 1, 1, 1, 1);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((blk.m.get(0, 0) - C64::new(1.0 / phi, 0.0)).norm() < TOL);
    assert!(blk.inv.mul(&blk.m).max_diff(&crate::linalg::Mat::identity(2)) < 1e-12);
}

#[test]
fn tilde_and_hat_are_inverse() {
    for d in all() {
        for (a1, a2, a3) in triples(&d) {
            for r in [0, -1] {
                let t = tilde_a(&d, a1, a2, a3, r).unwrap();
                let h = hat_a(&d, a1, a2, a3, r).unwrap();
                let n = t.cols();
                let m = t.rows();
                assert!(h.mul(&t).max_diff(&crate::linalg::Mat::identity(n)) < TOL, "{a1}{a2}{a3} r={r}: {:?}", h.mul(&t));
                assert!(t.mul(&h).max_diff(&crate::linalg::Mat::identity(m)) < TOL);
            }
        }
    }
}

#[test]
fn sigma_has_order_three() {
    for d in all() {
        for (a1, a2, a3) in triples(&d) {
            let (b1, b2, b3) = (d.dual(a3), a1, d.dual(a2));
            let (c1, c2, c3) = (d.dual(b3), b1, d.dual(b2));
            for r in [0, -1] {
                let s1 = sigma_cyclic(&d, a1, a2, a3, r).unwrap();
                let s2 = sigma_cyclic(&d, b1, b2, b3, r).unwrap();
                let s3 = sigma_cyclic(&d, c1, c2, c3, r).unwrap();
                let cube = s3.mul(&s2).mul(&s1);
                assert!(cube.max_diff(&crate::linalg::Mat::identity(s1.cols())) < TOL, "{a1}{a2}{a3}");
                let inv = sigma_cyclic_inverse(&d, a1, a2, a3, r).unwrap();
                assert!(inv.mul(&s1).max_diff(&crate::linalg::Mat::identity(s1.cols())) < TOL);
            }
            let s0 = sigma_cyclic(&d, a1, a2, a3, 0).unwrap();
            let sm = sigma_cyclic(&d, a1, a2, a3, -1).unwrap();
            assert!(s0.max_diff(&sm) < 1e-12);
        }
    }
}

#[test]
fn lemma_phases() {
    for d in all() {
        let e = d.unit();
        for a in 0..d.rank() {
            let ad = d.dual(a);
            let (y1, y2) = unit_vertex_coeffs(&d, a);
            let th = *d.twist(a);
            let o0 = omega(&d, a, ad, e, 0).unwrap();
            let om = omega(&d, a, ad, e, -1).unwrap();
            assert!((th * o0.get(0, 0) * y1 - y2).norm() < TOL);
            assert!((om.get(0, 0) * y1 / th - y2).norm() < TOL);
            let t1 = tilde_a(&d, ad, e, ad, 0).unwrap();
            assert!((t1.get(0, 0) - th * y2).norm() < TOL, "{}: {:?} vs {}", d.name(a), t1, th * y2);
            let t2 = tilde_a(&d, e, ad, ad, 0).unwrap();
            assert!((t2.get(0, 0) - C64::new(1.0, 0.0)).norm() < TOL);
        }
    }
}

#[test]
fn dual_basis_pairing() {
    for d in all() {
        for (a1, a2, a3) in triples(&d) {
            for r in [0, -1] {
                let p = vertex_dual_pairing(&d, a1, a2, a3, r).unwrap();
                assert!(p.max_diff(&crate::linalg::Mat::identity(p.rows())) < TOL, "{} {a1}{a2}{a3} r={r}: {p:?}", 0);
            }
        }
    }
}

#[test]
fn suites_pass_on_builtins() {
    for d in all() {
        for rep in [verify_rigidity(&d, TOL), verify_fusing_symmetries(&d, TOL), verify_operator_calculus(&d, TOL)] {
            for r in rep.records.iter().filter(|r| !r.pass) {
                println!("{} {} {} {}", rep.check, r.id, r.instance, r.residual);
            }
            assert!(rep.pass, "{}", rep.check);
        }
    }
}
