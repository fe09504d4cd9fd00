mod common;

use common::{interpolate, laplace_det, matrix, scalar, square, vector};
use mcg_core::algebra::{
    char_poly, determinant, eigen_report, inverse, kernel_basis, rank, solve_linear, LinearSolution,
};
use mcg_core::{Matrix, Scalar};
use proptest::prelude::*;

fn unitriangular(n: usize, upper: bool) -> impl Strategy<Value = Matrix> {
    matrix(n, n).prop_map(move |m| {
        Matrix::from_fn(n, n, |r, c| {
            match (r == c, if upper { r < c } else { r > c }) {
                (true, _) => Scalar::one(),
                (false, true) => m[(r, c)].clone(),
                _ => Scalar::zero(),
            }
        })
    })
}

/// An invertible matrix as a product `L U` of unitriangular factors.
fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    (unitriangular(n, false), unitriangular(n, true)).prop_map(|(l, u)| &l * &u)
}

fn square_with_conjugator(max: usize) -> impl Strategy<Value = (Matrix, Matrix)> {
    (1..=max).prop_flat_map(|n| (matrix(n, n), invertible(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_plus_nullity(m in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let kernel = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn determinant_matches_cofactor_expansion(m in square(5)) {
        prop_assert_eq!(determinant(&m).unwrap(), laplace_det(&m));
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (1usize..=4).prop_flat_map(|n| (matrix(n, n), matrix(n, n)))) {
        let lhs = determinant(&(&a * &b)).unwrap();
        prop_assert_eq!(lhs, &determinant(&a).unwrap() * &determinant(&b).unwrap());
    }

    #[test]
    fn inverse_round_trip(m in square(5)) {
        let n = m.rows();
        if laplace_det(&m).is_zero() {
            prop_assert!(inverse(&m).is_err());
        } else {
            let inv = inverse(&m).unwrap();
            prop_assert!((&m * &inv).is_identity());
            prop_assert!((&inv * &m).is_identity());
            prop_assert_eq!(rank(&m), n);
        }
    }

    #[test]
    fn char_poly_matches_interpolated_determinant(m in square(5)) {
        let n = m.rows();
        let xs: Vec<Scalar> = (0..=n as i64).map(Scalar::from_int).collect();
        let ys: Vec<Scalar> = xs.iter().map(|x| laplace_det(&(&Matrix::scalar(n, x) - &m))).collect();
        let cp = char_poly(&m).unwrap();
        prop_assert_eq!(cp.coeffs(), &interpolate(&xs, &ys)[..]);
        prop_assert_eq!(cp.degree(), Some(n));
    }

    #[test]
    fn char_poly_is_similarity_invariant((m, p) in square_with_conjugator(5)) {
        let conj = &(&p * &m) * &inverse(&p).unwrap();
        prop_assert_eq!(char_poly(&conj).unwrap(), char_poly(&m).unwrap());
    }

    #[test]
    fn cayley_hamilton(m in square(5)) {
        let n = m.rows();
        let cp = char_poly(&m).unwrap();
        let mut acc = Matrix::zeros(n, n);
        for c in cp.coeffs().iter().rev() {
            acc = &(&acc * &m) + &Matrix::scalar(n, c);
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn solve_is_consistent_with_ranks((a, b) in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| (matrix(r, c), vector(r)))) {
        let mut aug = Matrix::zeros(a.rows(), a.cols() + 1);
        aug.set_block(0, 0, &a);
        aug.set_block(0, a.cols(), &Matrix::column(&b));
        match solve_linear(&a, &b).unwrap() {
            LinearSolution::Feasible { particular, nullspace } => {
                prop_assert_eq!(rank(&a), rank(&aug));
                prop_assert_eq!(a.mul_vec(&particular).unwrap(), b);
                prop_assert_eq!(nullspace.len(), a.cols() - rank(&a));
            }
            LinearSolution::Infeasible => prop_assert!(rank(&a) < rank(&aug)),
        }
    }

    #[test]
    fn generalized_eigenspace_has_full_multiplicity(m in square(5)) {
        let r = eigen_report(&m).unwrap();
        prop_assert!(r.gen_kernel_dims.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(r.gen_kernel_dims.last().copied().unwrap_or(0), r.mult_of_one);
        prop_assert!(r.eigenspace_dim_one <= r.mult_of_one);
    }

    #[test]
    fn scalar_text_round_trip(z in scalar()) {
        prop_assert_eq!(z.to_string().parse::<Scalar>().unwrap(), z);
    }

    #[test]
    fn division_inverts_multiplication(a in scalar(), b in scalar()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&(&a / &b) * &b, a);
    }
}
