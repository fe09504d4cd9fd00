#![allow(dead_code)]

use mcg_core::{Matrix, Scalar, Vector};
use proptest::prelude::*;

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=3, prop::option::weighted(0.25, -3i64..=3)).prop_map(|(a, b, im)| {
        let re = Scalar::frac(a, b);
        match im {
            Some(i) => &re + &(&Scalar::from_int(i) * &Scalar::i()),
            None => re,
        }
    })
}

pub fn vector(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(scalar(), n)
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(scalar(), rows * cols)
        .prop_map(move |v| Matrix::from_fn(rows, cols, |r, c| v[r * cols + c].clone()))
}

pub fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| matrix(n, n))
}

pub fn ints(v: &[i64]) -> Vector {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

/// Cofactor expansion along the first row.
pub fn laplace_det(m: &Matrix) -> Scalar {
    let n = m.rows();
    if n == 0 {
        return Scalar::one();
    }
    let mut total = Scalar::zero();
    for c in 0..n {
        if m[(0, c)].is_zero() {
            continue;
        }
        let minor = Matrix::from_fn(n - 1, n - 1, |r, k| {
            m[(r + 1, if k < c { k } else { k + 1 })].clone()
        });
        let term = &m[(0, c)] * &laplace_det(&minor);
        total = if c % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    total
}

/// Coefficients (lowest first) of the polynomial through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> Vec<Scalar> {
    let n = xs.len();
    let mut out = vec![Scalar::zero(); n];
    for i in 0..n {
        let mut basis = vec![Scalar::one()];
        let mut denom = Scalar::one();
        for j in (0..n).filter(|&j| j != i) {
            let mut next = vec![Scalar::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] = &next[k + 1] + b;
                next[k] = &next[k] - &(b * &xs[j]);
            }
            basis = next;
            denom = &denom * &(&xs[i] - &xs[j]);
        }
        let scale = &ys[i] / &denom;
        for (k, b) in basis.iter().enumerate() {
            out[k] = &out[k] + &(b * &scale);
        }
    }
    while out.last().is_some_and(Scalar::is_zero) {
        out.pop();
    }
    out
}

pub fn conj(p: &Matrix, x: &Matrix) -> Matrix {
    &(p * x) * &mcg_core::algebra::inverse(p).unwrap()
}
