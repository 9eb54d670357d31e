//! Scalar field abstraction.
//!
//! All category-side algebra runs over a complex field `S: Scalar`. Three
//! instances are provided: `Complex<f32>`, `Complex<f64>` and the Gaussian
//! rationals `Complex<BigRational>`. The rational instance is exact, so
//! identities that hold algebraically hold with residual exactly zero.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

/// A complex field usable by every module of the crate.
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + Debug + PartialEq + Send + Sync + 'static
{
    /// Whether arithmetic in this type is exact.
    const EXACT: bool;

    /// Complex conjugate.
    fn conj(&self) -> Self;

    /// Modulus as an `f64`, used for residuals and pivot selection.
    fn modulus(&self) -> f64;

    /// Convert from a pair of `f64`. Exact types convert the binary value
    /// exactly; `None` is returned for non-finite input.
    fn from_parts(re: f64, im: f64) -> Option<Self>;

    /// Lossy conversion to double precision.
    fn to_c64(&self) -> Complex<f64>;

    /// Embed a small integer.
    fn from_i64(n: i64) -> Self;

    /// The imaginary unit.
    fn i() -> Self;
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for Complex<$t> {
            const EXACT: bool = false;

            fn conj(&self) -> Self {
                Complex::conj(self)
            }

            fn modulus(&self) -> f64 {
                (self.norm() as f64)
            }

            fn from_parts(re: f64, im: f64) -> Option<Self> {
                if re.is_finite() && im.is_finite() {
                    Some(Complex::new(re as $t, im as $t))
                } else {
                    None
                }
            }

            fn to_c64(&self) -> Complex<f64> {
                Complex::new(self.re as f64, self.im as f64)
            }

            fn from_i64(n: i64) -> Self {
                Complex::new(n as $t, 0.0)
            }

            fn i() -> Self {
                Complex::new(0.0, 1.0)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for Complex<BigRational> {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn modulus(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(f64::INFINITY);
        let im = self.im.to_f64().unwrap_or(f64::INFINITY);
        re.hypot(im)
    }

    fn from_parts(re: f64, im: f64) -> Option<Self> {
        Some(Complex::new(
            BigRational::from_float(re)?,
            BigRational::from_float(im)?,
        ))
    }

    fn to_c64(&self) -> Complex<f64> {
        Complex::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }
}

/// Build a Gaussian rational from integer numerators and denominators.
pub fn gauss(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Complex<BigRational> {
    Complex::new(
        BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
        BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
    )
}

/// Largest modulus of a difference over paired sequences.
pub fn max_diff<S: Scalar>(a: &[S], b: &[S]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.clone() - y.clone()).modulus())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip_is_exact() {
        let z = Complex::<BigRational>::from_parts(0.5, -0.25).unwrap();
        assert_eq!(z, gauss(1, 2, -1, 4));
        assert_eq!(z.to_c64(), Complex::new(0.5, -0.25));
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = <Complex<BigRational> as Scalar>::i();
        assert_eq!(i.clone() * i, -Complex::<BigRational>::one());
        let j = <Complex<f64> as Scalar>::i();
        assert_eq!(j * j, Complex::new(-1.0, 0.0));
    }

    #[test]
    fn non_finite_rejected() {
        assert!(Complex::<f64>::from_parts(f64::NAN, 0.0).is_none());
        assert!(Complex::<BigRational>::from_parts(f64::INFINITY, 0.0).is_none());
    }
}
