//! Hard-coded example categories.
//!
//! All four built-ins are multiplicity free and stored in the unitary gauge
//! with unit-involving F-blocks equal to the identity. The Fibonacci and
//! Ising tables are the sign-gauge canonical solutions of the pentagon and
//! hexagon equations selected by their twists; a test in the crate's test
//! suite re-derives them numerically and compares.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::{CategoryData, DataError, FEntry, FusionRing, REntry};
use crate::scalar::Scalar;

/// The built-in categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Builtin {
    /// One simple object, all data equal to one.
    Trivial,
    /// The semion category on the group ring of Z/2 with twist `i`.
    Z2Semion,
    /// Fibonacci: `τ ⊗ τ = 1 ⊕ τ`, twist `e^{4πi/5}`.
    Fibonacci,
    /// Ising: `σ ⊗ σ = 1 ⊕ ψ`, twist `e^{πi/8}` on `σ`.
    Ising,
}

impl Builtin {
    /// Every built-in, in a fixed order.
    pub const ALL: [Builtin; 4] = [Builtin::Trivial, Builtin::Z2Semion, Builtin::Fibonacci, Builtin::Ising];

    /// Name used by the `builtin:` URI scheme.
    pub fn name(self) -> &'static str {
        match self {
            Builtin::Trivial => "trivial",
            Builtin::Z2Semion => "z2_semion",
            Builtin::Fibonacci => "fibonacci",
            Builtin::Ising => "ising",
        }
    }

    /// Whether every entry is a Gaussian rational.
    pub fn exactly_representable(self) -> bool {
        matches!(self, Builtin::Trivial | Builtin::Z2Semion)
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = DataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| DataError::UnknownBuiltin(s.to_string()))
    }
}

/// Raw table of a multiplicity-free category: non-unit F-block entries and
/// non-unit R-symbols given by closures over label ids.
struct Table {
    names: &'static [&'static str],
    dual: Vec<usize>,
    fusion: Vec<[u32; 4]>,
    /// `F^{abc}_d[x, y]` for blocks with no unit among `a, b, c`.
    f: fn(usize, usize, usize, usize, usize, usize) -> Complex64,
    /// `R^{ab}_c` for `a, b` both non-unit.
    r: fn(usize, usize, usize) -> Complex64,
    twist: Vec<Complex64>,
}

fn phase(turns: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * turns)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn golden() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

fn table(which: Builtin) -> Table {
    match which {
        Builtin::Trivial => Table {
            names: &["1"],
            dual: vec![0],
            fusion: vec![[0, 0, 0, 1]],
            f: |_, _, _, _, _, _| real(1.0),
            r: |_, _, _| real(1.0),
            twist: vec![real(1.0)],
        },
        Builtin::Z2Semion => Table {
            names: &["1", "s"],
            dual: vec![0, 1],
            fusion: vec![[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]],
            f: |_, _, _, _, _, _| real(-1.0),
            r: |_, _, _| Complex64::new(0.0, 1.0),
            twist: vec![real(1.0), Complex64::new(0.0, 1.0)],
        },
        Builtin::Fibonacci => Table {
            names: &["1", "tau"],
            dual: vec![0, 1],
            fusion: vec![[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 1]],
            f: |_, _, _, d, x, y| {
                if d == 0 {
                    return real(1.0);
                }
                let p = golden();
                match (x, y) {
                    (0, 0) => real(1.0 / p),
                    (1, 1) => real(-1.0 / p),
                    _ => real(1.0 / p.sqrt()),
                }
            },
            r: |_, _, c| if c == 0 { phase(-2.0 / 5.0) } else { phase(3.0 / 10.0) },
            twist: vec![real(1.0), phase(2.0 / 5.0)],
        },
        Builtin::Ising => Table {
            names: &["1", "sigma", "psi"],
            dual: vec![0, 1, 2],
            fusion: vec![
                [0, 0, 0, 1],
                [0, 1, 1, 1],
                [0, 2, 2, 1],
                [1, 0, 1, 1],
                [1, 1, 0, 1],
                [1, 1, 2, 1],
                [1, 2, 1, 1],
                [2, 0, 2, 1],
                [2, 1, 1, 1],
                [2, 2, 0, 1],
            ],
            f: |a, b, c, d, x, y| {
                const S: usize = 1;
                const P: usize = 2;
                match (a, b, c, d) {
                    (S, S, S, S) => {
                        let v = 1.0 / 2f64.sqrt();
                        if x == P && y == P {
                            real(-v)
                        } else {
                            real(v)
                        }
                    }
                    (S, P, S, P) | (P, S, P, S) => real(-1.0),
                    _ => real(1.0),
                }
            },
            r: |a, b, c| match (a, b, c) {
                (1, 1, 0) => phase(-1.0 / 16.0),
                (1, 1, 2) => phase(3.0 / 16.0),
                (1, 2, 1) | (2, 1, 1) => Complex64::new(0.0, -1.0),
                _ => real(-1.0),
            },
            twist: vec![real(1.0), phase(1.0 / 16.0), real(-1.0)],
        },
    }
}

fn build<S: Scalar>(which: Builtin) -> Result<CategoryData<S>, DataError> {
    let t = table(which);
    let rank = t.names.len();
    let ring = FusionRing::new(rank, 0, t.dual.clone(), &t.fusion)?;
    let conv = |z: Complex64| {
        S::from_parts(z.re, z.im).ok_or_else(|| DataError::NotRepresentable(format!("{z}")))
    };
    // Values outside the Gaussian rationals cannot be exact; refuse rather
    // than silently rounding.
    if S::EXACT && !which.exactly_representable() {
        return Err(DataError::UnknownBuiltin(format!("{which} has no exact representation")));
    }

    let mut f = Vec::new();
    for a in 0..rank {
        for b in 0..rank {
            for c in 0..rank {
                for d in 0..rank {
                    let left = ring.f_left_basis(a, b, c, d);
                    if left.is_empty() {
                        continue;
                    }
                    let right = ring.f_right_basis(a, b, c, d);
                    let unit_block = a == 0 || b == 0 || c == 0;
                    for (li, &(x, al, be)) in left.iter().enumerate() {
                        for (ri, &(y, ga, de)) in right.iter().enumerate() {
                            let value = if unit_block {
                                real(if li == ri { 1.0 } else { 0.0 })
                            } else {
                                (t.f)(a, b, c, d, x, y)
                            };
                            f.push(FEntry {
                                labels: [a, b, c, d, x, y],
                                mult: [al, be, ga, de],
                                value: conv(value)?,
                            });
                        }
                    }
                }
            }
        }
    }
    let mut r = Vec::new();
    for a in 0..rank {
        for b in 0..rank {
            for c in ring.channels(a, b) {
                let value = if a == 0 || b == 0 { real(1.0) } else { (t.r)(a, b, c) };
                r.push(REntry { labels: [a, b, c], mult: [0, 0], value: conv(value)? });
            }
        }
    }
    let twist = t.twist.iter().map(|&z| conv(z)).collect::<Result<Vec<_>, _>>()?;
    let names = t.names.iter().map(|s| s.to_string()).collect();
    CategoryData::new(names, ring, f, r, twist)
}

/// A built-in category in double precision.
pub fn builtin_category(which: Builtin) -> CategoryData<Complex64> {
    build(which).expect("built-in tables are structurally valid")
}

/// A built-in category in any scalar type. Exact scalar types are only
/// supported for the trivial and semion categories.
pub fn builtin_category_exact<S: Scalar>(which: Builtin) -> Result<CategoryData<S>, DataError> {
    build(which)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussQ;

    #[test]
    fn names_round_trip() {
        for b in Builtin::ALL {
            assert_eq!(b.name().parse::<Builtin>().unwrap(), b);
        }
        assert!("nope".parse::<Builtin>().is_err());
    }

    #[test]
    fn fibonacci_has_golden_dimension() {
        let d = builtin_category(Builtin::Fibonacci);
        assert!((d.qdim(1) - golden()).abs() < 1e-12);
        assert!((d.h(1) - 0.4).abs() < 1e-12);
    }

    #[test]
    fn ising_sigma_dimension() {
        let d = builtin_category(Builtin::Ising);
        assert!((d.qdim(1) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn exact_mode_only_for_rational_tables() {
        assert!(builtin_category_exact::<GaussQ>(Builtin::Z2Semion).is_ok());
        assert!(builtin_category_exact::<GaussQ>(Builtin::Fibonacci).is_err());
    }
}
