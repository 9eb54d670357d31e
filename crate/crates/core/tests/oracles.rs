//! Independent test-side oracles with frozen outputs.
//!
//! - Perron–Frobenius dimensions from a dense eigen-solve of the fusion
//!   matrices (nalgebra), compared with the engine's quantum and
//!   categorical dimensions.
//! - A Levenberg–Marquardt solve of the Fibonacci pentagon equations from a
//!   generic start, compared through gauge-invariant quantities with the
//!   built-in F-matrix.

use fullfield_core::fusion_data::{builtin_category, quantum_dimension, Builtin};
use fullfield_core::graphcalc::{categorical_dim, f_a_scalar};
use nalgebra::{DMatrix, DVector};

const GOLDEN: f64 = 1.618_033_988_749_895;

/// Perron–Frobenius eigenvalue of the fusion matrix `(N_a)_{bc} = N_{ab}^c`.
/// Fusion matrices are normal, so it equals the largest singular value,
/// read from the symmetric eigen-solve of `N_a N_aᵀ`.
fn pf_dims(b: Builtin) -> Vec<f64> {
    let d = builtin_category(b);
    let n = d.rank();
    (0..n)
        .map(|a| {
            let m = DMatrix::from_fn(n, n, |i, j| d.n(a, i, j) as f64);
            let g = &m * m.transpose();
            g.symmetric_eigen().eigenvalues.iter().cloned().fold(f64::MIN, f64::max).sqrt()
        })
        .collect()
}

#[test]
fn perron_frobenius_oracle_frozen() {
    let frozen: [(Builtin, &[f64]); 4] = [
        (Builtin::Trivial, &[1.0]),
        (Builtin::Z2Semion, &[1.0, 1.0]),
        (Builtin::Fibonacci, &[1.0, GOLDEN]),
        (Builtin::Ising, &[1.0, std::f64::consts::SQRT_2, 1.0]),
    ];
    for (b, want) in frozen {
        let got = pf_dims(b);
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{b}: oracle {g} vs frozen {w}");
        }
    }
}

#[test]
fn engine_dimensions_match_perron_frobenius() {
    for b in Builtin::ALL {
        let d = builtin_category(b);
        let pf = pf_dims(b);
        for a in 0..d.rank() {
            assert!((quantum_dimension(&d, a) - pf[a]).abs() < 1e-9, "{b} {}", d.name(a));
            let inv_fa = 1.0 / f_a_scalar(&d, a);
            assert!((inv_fa.re - pf[a]).abs() < 1e-9 && inv_fa.im.abs() < 1e-9, "{b} {}: 1/F_a = {inv_fa}", d.name(a));
            let cat = categorical_dim(&d, a).unwrap();
            assert!((cat.re - pf[a]).abs() < 1e-9);
        }
    }
}

/// Fibonacci F-symbol with labels `0 = 1`, `1 = τ`, in the gauge where every
/// block with a unit leg is `1` and the only nontrivial block is
/// `F^{τττ}_τ = [[x, y], [y, w]]`.
fn fib_f(p: &[f64; 3], a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> f64 {
    let adm = |x: usize, y: usize, z: usize| -> bool {
        // N_{xy}^z for Fibonacci.
        match (x, y, z) {
            (0, y, z) => y == z,
            (x, 0, z) => x == z,
            _ => true,
        }
    };
    if !(adm(a, b, e) && adm(e, c, d) && adm(b, c, f) && adm(a, f, d)) {
        return 0.0;
    }
    if a == 1 && b == 1 && c == 1 && d == 1 {
        match (e, f) {
            (0, 0) => p[0],
            (0, 1) | (1, 0) => p[1],
            _ => p[2],
        }
    } else {
        1.0
    }
}

/// Pentagon residuals
/// `F^{fcd}_e[g,l] F^{abl}_e[f,k] − Σ_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l]`.
fn pentagon(p: &[f64; 3]) -> Vec<f64> {
    let mut out = Vec::new();
    let r = 0..2usize;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    for e in r.clone() {
                        for f in r.clone() {
                            for g in r.clone() {
                                for k in r.clone() {
                                    for l in r.clone() {
                                        let lhs = fib_f(p, f, c, d, e, g, l) * fib_f(p, a, b, l, e, f, k);
                                        let rhs: f64 = (0..2)
                                            .map(|h| fib_f(p, a, b, c, g, f, h) * fib_f(p, a, h, d, e, g, k) * fib_f(p, b, c, d, k, h, l))
                                            .sum();
                                        out.push(lhs - rhs);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Levenberg–Marquardt with a forward-difference Jacobian.
fn levenberg_marquardt(mut p: [f64; 3]) -> [f64; 3] {
    let mut lambda = 1e-3;
    let cost = |p: &[f64; 3]| pentagon(p).iter().map(|r| r * r).sum::<f64>();
    for _ in 0..500 {
        let r = DVector::from_vec(pentagon(&p));
        let mut jac = DMatrix::zeros(r.len(), 3);
        for j in 0..3 {
            let mut q = p;
            q[j] += 1e-7;
            let rq = DVector::from_vec(pentagon(&q));
            jac.set_column(j, &((rq - &r) / 1e-7));
        }
        let jt = jac.transpose();
        let a = &jt * &jac + DMatrix::identity(3, 3) * lambda;
        let g = &jt * &r;
        let step = a.lu().solve(&(-g)).expect("damped normal equations are regular");
        let trial = [p[0] + step[0], p[1] + step[1], p[2] + step[2]];
        if cost(&trial) < cost(&p) {
            p = trial;
            lambda = (lambda * 0.3).max(1e-12);
        } else {
            lambda *= 10.0;
        }
        if cost(&p) < 1e-28 {
            break;
        }
    }
    p
}

#[test]
fn pentagon_solver_regenerates_fibonacci() {
    let sol = levenberg_marquardt([0.5, 0.7, -0.4]);
    assert!(pentagon(&sol).iter().all(|r| r.abs() < 1e-10));
    // Frozen oracle output: x = 1/φ, y² = 1/φ, w = −1/φ.
    let frozen = [1.0 / GOLDEN, 1.0 / GOLDEN, -1.0 / GOLDEN];
    assert!((sol[0] - frozen[0]).abs() < 1e-9);
    assert!((sol[1] * sol[1] - frozen[1]).abs() < 1e-9);
    assert!((sol[2] - frozen[2]).abs() < 1e-9);

    // Gauge-invariant comparison with the stored block.
    let d = builtin_category(Builtin::Fibonacci);
    let m = &d.f_block(1, 1, 1, 1).unwrap().m;
    assert!((m.get(0, 0).re - sol[0]).abs() < 1e-9);
    assert!((m.get(1, 1).re - sol[2]).abs() < 1e-9);
    assert!(((m.get(0, 1) * m.get(1, 0)).re - sol[1] * sol[1]).abs() < 1e-9);
}
