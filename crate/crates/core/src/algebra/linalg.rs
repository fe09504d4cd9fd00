//! Exact elimination-based linear algebra over `Q(i)`.
//!
//! Everything here is exact Gauss-Jordan reduction; there are no pivoting
//! heuristics because there is no rounding to control. Matrices in this crate
//! are at most a few dozen rows, so the cubic cost is irrelevant.

use serde::Serialize;

use super::{Matrix, Poly, Scalar, Vector};
use crate::{Error, Result};

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(a: &Matrix) -> Echelon {
    let (rows, cols) = a.shape();
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| !m[(r, c)].is_zero()) else {
            continue;
        };
        if found != pr {
            for k in 0..cols {
                let tmp = m[(pr, k)].clone();
                m[(pr, k)] = m[(found, k)].clone();
                m[(found, k)] = tmp;
            }
        }
        let inv = m[(pr, c)].inv().expect("pivot is nonzero");
        for k in c..cols {
            if !m[(pr, k)].is_zero() {
                m[(pr, k)] = &m[(pr, k)] * &inv;
            }
        }
        for r in 0..rows {
            if r == pr || m[(r, c)].is_zero() {
                continue;
            }
            let factor = m[(r, c)].clone();
            for k in c..cols {
                if m[(pr, k)].is_zero() {
                    continue;
                }
                let delta = &factor * &m[(pr, k)];
                m[(r, k)] -= &delta;
            }
        }
        pivots.push(c);
        pr += 1;
    }
    Echelon { reduced: m, pivots }
}

pub fn rank(a: &Matrix) -> usize {
    rref(a).rank()
}

/// Basis of the right kernel `{v : a v = 0}`, one vector per free column.
pub fn kernel_basis(a: &Matrix) -> Vec<Vector> {
    let ech = rref(a);
    kernel_from_echelon(&ech, a.cols())
}

fn kernel_from_echelon(ech: &Echelon, cols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = vec![Scalar::zero(); cols];
            v[free] = Scalar::one();
            for (r, &p) in ech.pivots.iter().enumerate() {
                v[p] = -&ech.reduced[(r, free)];
            }
            v
        })
        .collect()
}

/// Full description of the solution set of `a x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Feasible {
        particular: Vector,
        nullspace: Vec<Vector>,
    },
    Infeasible,
}

impl LinearSolution {
    pub fn particular(&self) -> Option<&Vector> {
        match self {
            LinearSolution::Feasible { particular, .. } => Some(particular),
            LinearSolution::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, LinearSolution::Feasible { .. })
    }
}

pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<LinearSolution> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            op: "solve_linear",
            left: a.shape(),
            right: (b.len(), 1),
        });
    }
    let n = a.cols();
    let mut aug = Matrix::zeros(a.rows(), n + 1);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, &Matrix::column(b));
    let ech = rref(&aug);
    if ech.pivots.last() == Some(&n) {
        return Ok(LinearSolution::Infeasible);
    }
    let mut particular = vec![Scalar::zero(); n];
    for (r, &p) in ech.pivots.iter().enumerate() {
        particular[p] = ech.reduced[(r, n)].clone();
    }
    // Pivots of the augmented system never include column n here, so the
    // kernel of `a` is read from the same reduction.
    let nullspace = kernel_from_echelon(
        &Echelon {
            reduced: ech.reduced.block(0, 0, a.rows(), n),
            pivots: ech.pivots.clone(),
        },
        n,
    );
    Ok(LinearSolution::Feasible {
        particular,
        nullspace,
    })
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "mat_inv",
            shape: a.shape(),
        });
    }
    let n = a.rows();
    let mut aug = Matrix::zeros(n, 2 * n);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, &Matrix::identity(n));
    let ech = rref(&aug);
    let rank = ech.pivots.iter().take_while(|&&p| p < n).count();
    if rank < n {
        return Err(Error::Singular { rank });
    }
    Ok(ech.reduced.block(0, n, n, n))
}

/// Determinant by elimination with exact field division.
pub fn determinant(a: &Matrix) -> Result<Scalar> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "det",
            shape: a.shape(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
            return Ok(Scalar::zero());
        };
        if p != c {
            for k in 0..n {
                let tmp = m[(p, k)].clone();
                m[(p, k)] = m[(c, k)].clone();
                m[(c, k)] = tmp;
            }
            det = -det;
        }
        let pivot = m[(c, c)].clone();
        det = &det * &pivot;
        for r in c + 1..n {
            if m[(r, c)].is_zero() {
                continue;
            }
            let f = &m[(r, c)] / &pivot;
            for k in c..n {
                let delta = &f * &m[(c, k)];
                m[(r, k)] -= &delta;
            }
        }
    }
    Ok(det)
}

/// Characteristic polynomial `det(xI - a)`, monic, by Faddeev-LeVerrier.
pub fn char_poly(a: &Matrix) -> Result<Poly> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "char_poly",
            shape: a.shape(),
        });
    }
    let n = a.rows();
    // coeffs[k] multiplies x^k; c_n = 1.
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
        let mut mk = a * &m;
        for d in 0..n {
            mk[(d, d)] += &coeffs[n - k + 1];
        }
        let am = a * &mk;
        coeffs[n - k] = -(&am.trace() / &Scalar::from_int(k as i64));
        m = mk;
    }
    Ok(Poly::new(coeffs))
}

/// Eigenvalue-1 structure of a square matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenReport {
    pub dimension: usize,
    pub char_poly: Poly,
    pub mult_of_one: usize,
    pub eigenspace_dim_one: usize,
    /// `dim ker (M - I)^i` for `i = 1..=mult_of_one`.
    pub gen_kernel_dims: Vec<usize>,
}

impl EigenReport {
    /// `char_poly == (x - 1)^n`, i.e. 1 is the only eigenvalue.
    pub fn unique_eigenvalue_one(&self) -> bool {
        self.mult_of_one == self.dimension
    }
}

pub fn eigen_report(a: &Matrix) -> Result<EigenReport> {
    let cp = char_poly(a)?;
    let n = a.rows();
    let mult = cp.multiplicity_of_root(&Scalar::one());
    let shifted = a - &Matrix::identity(n);
    let mut dims = Vec::with_capacity(mult);
    let mut power = Matrix::identity(n);
    for _ in 0..mult {
        power = &power * &shifted;
        dims.push(n - rank(&power));
    }
    let eigenspace_dim_one = dims.first().copied().unwrap_or(0);
    Ok(EigenReport {
        dimension: n,
        char_poly: cp,
        mult_of_one: mult,
        eigenspace_dim_one,
        gen_kernel_dims: dims,
    })
}
