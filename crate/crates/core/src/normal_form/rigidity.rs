//! Solution spaces of linear matrix equations, used to check the
//! commutant and fixed-point facts the solvers rely on.

use crate::algebra::{kernel_basis, rank, Matrix, Scalar};
use crate::symplectic::{a_matrix, b_matrix, u_block};

/// Basis of `{Z : f(Z) = 0}` for `Z` of the given shape and `f` linear,
/// returning several matrices that must all vanish.
pub fn solution_space(rows: usize, cols: usize, f: impl Fn(&Matrix) -> Vec<Matrix>) -> Vec<Matrix> {
    let unknowns = rows * cols;
    let images: Vec<Vec<Scalar>> = (0..unknowns)
        .map(|k| {
            let mut e = Matrix::zeros(rows, cols);
            e[(k / cols, k % cols)] = Scalar::one();
            f(&e).iter().flat_map(|m| m.entries().to_vec()).collect()
        })
        .collect();
    let eqs = images.first().map_or(0, Vec::len);
    let system = Matrix::from_fn(eqs, unknowns, |r, c| images[c][r].clone());
    kernel_basis(&system)
        .into_iter()
        .map(|v| Matrix::from_fn(rows, cols, |r, c| v[r * cols + c].clone()))
        .collect()
}

/// `{Z : ZM = MZ for all M}`.
pub fn commutant(mats: &[Matrix]) -> Vec<Matrix> {
    let n = mats.first().map_or(0, Matrix::rows);
    solution_space(n, n, |z| mats.iter().map(|m| &(z * m) - &(m * z)).collect())
}

/// Commutant of all `A_i`, `B_i` in `2g x 2g` matrices.
pub fn symplectic_commutant(g: u32) -> Vec<Matrix> {
    let gens: Vec<Matrix> = (1..=g)
        .flat_map(|i| [a_matrix(g, i), b_matrix(g, i)])
        .collect();
    commutant(&gens)
}

/// `diag(0, .., I_2, .., 0)` for each block.
pub fn block_scalar_basis(g: u32) -> Vec<Matrix> {
    let n = 2 * g as usize;
    (0..g as usize)
        .map(|i| {
            let mut m = Matrix::zeros(n, n);
            m.set_block(2 * i, 2 * i, &Matrix::identity(2));
            m
        })
        .collect()
}

/// Whether two families of same-shape matrices span the same space.
pub fn same_span(a: &[Matrix], b: &[Matrix]) -> bool {
    let flat = |ms: &[&Matrix]| -> Matrix {
        let len = ms.first().map_or(0, |m| m.entries().len());
        Matrix::from_fn(ms.len(), len, |r, c| ms[r].entries()[c].clone())
    };
    let ra = rank(&flat(&a.iter().collect::<Vec<_>>()));
    let rb = rank(&flat(&b.iter().collect::<Vec<_>>()));
    let both: Vec<&Matrix> = a.iter().chain(b).collect();
    ra == rb && rank(&flat(&both)) == ra
}

/// `{Y : YU = UY}` for the `2 x 2` block `U`.
pub fn u_commutant() -> Vec<Matrix> {
    commutant(&[u_block()])
}

/// `{Y : YU = UY = Y}`.
pub fn u_commutant_fixed() -> Vec<Matrix> {
    let u = u_block();
    solution_space(2, 2, |y| vec![&(y * &u) - &(&u * y), &(y * &u) - y])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commuting_with_u() {
        let expected = vec![Matrix::identity(2), Matrix::from_ints(&[[0, 1], [0, 0]])];
        assert_eq!(u_commutant().len(), 2);
        assert!(same_span(&u_commutant(), &expected));
        let fixed = u_commutant_fixed();
        assert!(same_span(&fixed, &expected[1..]));
    }

    #[test]
    fn rigidity_small() {
        for g in 1..=3 {
            let basis = symplectic_commutant(g);
            assert_eq!(basis.len(), g as usize);
            assert!(same_span(&basis, &block_scalar_basis(g)));
        }
    }
}
