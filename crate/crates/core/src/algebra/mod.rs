//! Exact dense linear algebra over the Gaussian rationals `Q(i)`.

mod linalg;
mod matrix;
mod poly;
mod scalar;

pub use linalg::{
    char_poly, determinant, eigen_report, inverse, kernel_basis, rank, rref, solve_linear, Echelon,
    EigenReport, LinearSolution,
};
pub use matrix::{Matrix, Vector};
pub use poly::Poly;
pub use scalar::{Rational, Scalar};

/// `a * b`, failing with both shapes on mismatch.
pub fn mat_mul(a: &Matrix, b: &Matrix) -> crate::Result<Matrix> {
    a.try_mul(b)
}

pub fn mat_inv(a: &Matrix) -> crate::Result<Matrix> {
    inverse(a)
}

/// `v + w` for equal-length vectors.
pub fn vec_add(v: &[Scalar], w: &[Scalar]) -> Vector {
    debug_assert_eq!(v.len(), w.len());
    v.iter().zip(w).map(|(a, b)| a + b).collect()
}

pub fn vec_sub(v: &[Scalar], w: &[Scalar]) -> Vector {
    debug_assert_eq!(v.len(), w.len());
    v.iter().zip(w).map(|(a, b)| a - b).collect()
}

pub fn vec_scale(v: &[Scalar], z: &Scalar) -> Vector {
    v.iter().map(|a| a * z).collect()
}

/// Bilinear `ᵗv w` (no conjugation).
pub fn dot(v: &[Scalar], w: &[Scalar]) -> Scalar {
    debug_assert_eq!(v.len(), w.len());
    v.iter()
        .zip(w)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .map(|(a, b)| a * b)
        .sum()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn zero_vec(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

/// Outer product `v ᵗw`.
pub fn outer(v: &[Scalar], w: &[Scalar]) -> Matrix {
    Matrix::from_fn(v.len(), w.len(), |r, c| &v[r] * &w[c])
}
