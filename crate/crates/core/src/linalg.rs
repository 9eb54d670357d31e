//! Small dense matrices over a [`Scalar`] field.
//!
//! Hom spaces of the built-in categories are tiny, so a row-major `Vec`
//! with Gauss-Jordan inversion is all that is needed. Everything here works
//! over exact fields as well as floats.


use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    /// Build from row-major data.
    ///
    /// # Panics
    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Self { rows, cols, data }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    /// Overwrite entry `(r, c)`.
    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    /// Add `v` to entry `(r, c)`.
    pub fn add_at(&mut self, r: usize, c: usize, v: S) {
        let slot = &mut self.data[r * self.cols + c];
        *slot = slot.clone() + v;
    }

    /// Row-major entries.
    pub fn data(&self) -> &[S] {
        &self.data
    }

    /// Matrix product `self * rhs`.
    ///
    /// # Panics
    /// Panics on a shape mismatch.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_at(i, j, a.clone() * b.clone());
                }
            }
        }
        out
    }

    /// Entrywise sum.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Self::from_vec(self.rows, self.cols, data)
    }

    /// Entrywise difference.
    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Self::from_vec(self.rows, self.cols, data)
    }

    /// Multiply every entry by `s`.
    pub fn scale(&self, s: &S) -> Self {
        let data = self.data.iter().map(|a| a.clone() * s.clone()).collect();
        Self::from_vec(self.rows, self.cols, data)
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Kronecker product; row index `(i, k)` maps to `i * rhs.rows + k`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(
                            i * rhs.rows + k,
                            j * rhs.cols + l,
                            a.clone() * rhs.get(k, l).clone(),
                        );
                    }
                }
            }
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(S::modulus).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from `rhs`.
    pub fn max_diff(&self, rhs: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a.clone() - b.clone()).modulus())
            .fold(0.0, f64::max)
    }

    /// Inverse by Gauss-Jordan elimination with largest-modulus pivoting.
    /// Returns `None` for singular or non-square input.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .max_by(|&r1, &r2| {
                    a.get(r1, col)
                        .modulus()
                        .partial_cmp(&a.get(r2, col).modulus())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })?;
            if !S::EXACT && a.get(pivot, col).modulus() < 1e-300 {
                return None;
            }
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = S::one() / a.get(col, col).clone();
            for j in 0..n {
                let v = a.get(col, j).clone() * p.clone();
                a.set(col, j, v);
                let w = inv.get(col, j).clone() * p.clone();
                inv.set(col, j, w);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j).clone() - factor.clone() * a.get(col, j).clone();
                    a.set(r, j, v);
                    let w = inv.get(r, j).clone() - factor.clone() * inv.get(col, j).clone();
                    inv.set(r, j, w);
                }
            }
        }
        Some(inv)
    }

    /// Solve `self * x = b` for a square invertible `self`.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        Some(self.inverse()?.mul(b))
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    /// Map every entry into another scalar type.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat::from_vec(self.rows, self.cols, self.data.iter().map(f).collect())
    }

    /// Whether this is the exact identity matrix.
    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gauss;
    use num_complex::Complex64;

    #[test]
    fn inverse_of_rational_matrix_is_exact() {
        let m = Mat::from_vec(
            2,
            2,
            vec![gauss(1, 1, 0, 1), gauss(2, 1, 1, 1), gauss(0, 1, 1, 1), gauss(3, 1, 0, 1)],
        );
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Mat::from_vec(
            2,
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(4.0, 0.0),
            ],
        );
        assert!(m.inverse().is_none());
    }

    #[test]
    fn kron_shapes_and_entries() {
        let a = Mat::from_vec(1, 2, vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]);
        let b = Mat::from_vec(2, 1, vec![Complex64::new(3.0, 0.0), Complex64::new(5.0, 0.0)]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(*k.get(1, 1), Complex64::new(10.0, 0.0));
    }
}
