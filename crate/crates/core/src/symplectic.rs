//! The symplectic representation `rho0` on `H_1` of the closed-up surface.
//!
//! Basis order is `(x_1, y_1, x_2, y_2, ..., x_g, y_g)` with intersection
//! pairing `<x_i, y_i> = 1 = -<y_i, x_i>`. A twist along a curve of class `v`
//! acts by the transvection `x -> x + <v, x> v`; with that convention the
//! twists along `a_i` and `b_i` are the block matrices `A_i = diag(.., U, ..)`
//! and `B_i = diag(.., Û, ..)`, and `c_k` (class `x_k - x_{k+1}`) gives
//! `C_k = diag(I, L, I)`.

use serde::Serialize;

use crate::algebra::{self, Matrix, Scalar, Vector};
use crate::surface::{Family, GeneratorId, SurfaceSig, TwistWord};
use crate::{Error, Result};

/// Integer homology class in the basis `(x_1, y_1, ..., x_g, y_g)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyClass(pub Vec<i64>);

impl HomologyClass {
    pub fn zero(g: u32) -> Self {
        HomologyClass(vec![0; 2 * g as usize])
    }

    pub fn x(g: u32, i: u32) -> Self {
        let mut v = HomologyClass::zero(g);
        v.0[2 * (i as usize - 1)] = 1;
        v
    }

    pub fn y(g: u32, i: u32) -> Self {
        let mut v = HomologyClass::zero(g);
        v.0[2 * (i as usize - 1) + 1] = 1;
        v
    }

    pub fn genus(&self) -> u32 {
        (self.0.len() / 2) as u32
    }

    pub fn to_vector(&self) -> Vector {
        self.0.iter().map(|&c| Scalar::from_int(c)).collect()
    }

    pub fn neg(&self) -> Self {
        HomologyClass(self.0.iter().map(|c| -c).collect())
    }
}

impl std::ops::Sub for &HomologyClass {
    type Output = HomologyClass;
    fn sub(self, rhs: &HomologyClass) -> HomologyClass {
        HomologyClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// The intersection pairing `J` with `<u, v> = ᵗu J v`.
pub fn symplectic_form(g: u32) -> Matrix {
    let n = 2 * g as usize;
    let mut j = Matrix::zeros(n, n);
    for i in 0..g as usize {
        j[(2 * i, 2 * i + 1)] = Scalar::one();
        j[(2 * i + 1, 2 * i)] = -Scalar::one();
    }
    j
}

pub fn pairing(u: &[Scalar], v: &[Scalar]) -> Scalar {
    debug_assert_eq!(u.len() % 2, 0);
    // <x_i, y_i> = 1 so the pairing is sum_i (u_x v_y - u_y v_x).
    u.chunks(2)
        .zip(v.chunks(2))
        .map(|(a, b)| &(&a[0] * &b[1]) - &(&a[1] * &b[0]))
        .sum()
}

/// Transvection `x -> x + <v, x> v`, i.e. `I + v ᵗv J`.
pub fn pl_twist_matrix(v: &[Scalar]) -> Matrix {
    let n = v.len();
    assert!(n.is_multiple_of(2), "homology vectors have even length");
    let g = (n / 2) as u32;
    // ᵗv J as a row: entry c is <v, e_c>.
    let row: Vector = (0..n)
        .map(|c| {
            let mut e = vec![Scalar::zero(); n];
            e[c] = Scalar::one();
            pairing(v, &e)
        })
        .collect();
    debug_assert_eq!(
        Matrix::row_vector(&row),
        &Matrix::row_vector(v) * &symplectic_form(g)
    );
    &Matrix::identity(n) + &algebra::outer(v, &row)
}

/// Homology class of a generator curve (up to sign).
pub fn curve_class(sig: &SurfaceSig, gen: GeneratorId) -> Result<HomologyClass> {
    sig.check(gen)?;
    let g = sig.g;
    Ok(match gen.family {
        Family::A => HomologyClass::x(g, gen.index),
        Family::B => HomologyClass::y(g, gen.index),
        Family::C => &HomologyClass::x(g, gen.index) - &HomologyClass::x(g, gen.index + 1),
        Family::E | Family::F => HomologyClass::x(g, 1),
    })
}

pub fn rho0(sig: &SurfaceSig, gen: GeneratorId) -> Result<Matrix> {
    Ok(pl_twist_matrix(&curve_class(sig, gen)?.to_vector()))
}

/// `rho0(gen)^exp`. A transvection is `I + N` with `N^2 = 0`, so the power
/// is `I + exp N` for every integer `exp`.
pub fn rho0_power(sig: &SurfaceSig, gen: GeneratorId, exp: i32) -> Result<Matrix> {
    let t = rho0(sig, gen)?;
    let n = t.rows();
    let nil = &t - &Matrix::identity(n);
    Ok(&Matrix::identity(n) + &nil.scale(&Scalar::from_int(exp as i64)))
}

pub fn rho0_word(sig: &SurfaceSig, w: &TwistWord) -> Result<Matrix> {
    w.validate(sig)?;
    let mut acc = Matrix::identity(sig.homology_dim());
    for &(gen, exp) in w.letters() {
        acc = &acc * &rho0_power(sig, gen, exp)?;
    }
    Ok(acc)
}

/// `U = [[1,1],[0,1]]`.
pub fn u_block() -> Matrix {
    Matrix::from_ints(&[[1, 1], [0, 1]])
}

/// `Û = [[1,0],[-1,1]]`.
pub fn u_hat_block() -> Matrix {
    Matrix::from_ints(&[[1, 0], [-1, 1]])
}

/// The 4x4 matrix `L`, the nontrivial block of `C_k`.
pub fn l_block() -> Matrix {
    Matrix::from_ints(&[[1, 1, 0, -1], [0, 1, 0, 0], [0, -1, 1, 1], [0, 0, 0, 1]])
}

fn embed_block(g: u32, offset: usize, block: &Matrix) -> Matrix {
    let mut m = Matrix::identity(2 * g as usize);
    m.set_block(offset, offset, block);
    m
}

/// `A_i = diag(I_2, .., U, .., I_2)` with `U` in block `i` (1-based).
pub fn a_matrix(g: u32, i: u32) -> Matrix {
    embed_block(g, 2 * (i as usize - 1), &u_block())
}

pub fn b_matrix(g: u32, i: u32) -> Matrix {
    embed_block(g, 2 * (i as usize - 1), &u_hat_block())
}

/// `C_k = diag(I_{2k-2}, L, I_{2g-2k-2})`.
pub fn c_matrix(g: u32, k: u32) -> Matrix {
    embed_block(g, 2 * (k as usize - 1), &l_block())
}

/// The rotation `G = [[0, I_2], [I_{2g-2}, 0]]`; it shifts block `i` to block
/// `i + 1` (mod g), so `G⁻¹ A_i G = A_{i-1}`.
pub fn rotation_g(g: u32) -> Result<Matrix> {
    if g < 2 {
        return Err(Error::UnsupportedGenus { g, min: 2 });
    }
    let n = 2 * g as usize;
    let mut m = Matrix::zeros(n, n);
    m.set_block(0, n - 2, &Matrix::identity(2));
    m.set_block(2, 0, &Matrix::identity(n - 2));
    Ok(m)
}

/// `diag(m, I_extra)`.
pub fn tilde(m: &Matrix, extra: usize) -> Matrix {
    m.direct_sum(&Matrix::identity(extra))
}

/// Semidirect embedding `(z, A) -> [[A, z], [0, 1]]`.
pub fn block_embed(z: &[Scalar], a: &Matrix) -> Result<Matrix> {
    if !a.is_square() || a.rows() != z.len() {
        return Err(Error::DimensionMismatch {
            op: "block_embed",
            left: a.shape(),
            right: (z.len(), 1),
        });
    }
    let n = a.rows();
    let mut m = Matrix::identity(n + 1);
    m.set_block(0, 0, a);
    m.set_block(0, n, &Matrix::column(z));
    Ok(m)
}

/// Pieces of an `(n+1) x (n+1)` matrix `[[F, w], [ᵗs, t]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderedParts {
    pub f: Matrix,
    pub w: Vector,
    pub s: Vector,
    pub t: Scalar,
}

pub fn split_bordered(m: &Matrix) -> Result<BorderedParts> {
    if !m.is_square() || m.rows() < 2 {
        return Err(Error::NotSquare {
            op: "split_bordered",
            shape: m.shape(),
        });
    }
    let n = m.rows() - 1;
    Ok(BorderedParts {
        f: m.block(0, 0, n, n),
        w: m.block(0, n, n, 1).col(0),
        s: m.row(n)[..n].to_vec(),
        t: m[(n, n)].clone(),
    })
}

/// `[[F, w], [ᵗs, t]]`.
pub fn bordered(f: &Matrix, w: &[Scalar], s: &[Scalar], t: &Scalar) -> Matrix {
    let n = f.rows();
    assert!(f.is_square() && w.len() == n && s.len() == n);
    let mut m = Matrix::zeros(n + 1, n + 1);
    m.set_block(0, 0, f);
    m.set_block(0, n, &Matrix::column(w));
    m.set_block(n, 0, &Matrix::row_vector(s));
    m[(n, n)] = t.clone();
    m
}

/// Dual (contragredient) image `(ᵗM)⁻¹`.
pub fn dual_rep(m: &Matrix) -> Result<Matrix> {
    algebra::inverse(&m.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{determinant, vec_add};

    fn sig(g: u32) -> SurfaceSig {
        SurfaceSig::closed(g).unwrap()
    }

    /// Independent oracle: apply `x -> x + <v,x> v` to each basis vector and
    /// stack the images as columns.
    fn transvection_by_columns(v: &[i64]) -> Matrix {
        let n = v.len();
        let vs: Vec<Scalar> = v.iter().map(|&c| Scalar::from_int(c)).collect();
        let cols: Vec<Vector> = (0..n)
            .map(|c| {
                let mut e = vec![Scalar::zero(); n];
                e[c] = Scalar::one();
                let k = pairing(&vs, &e);
                vec_add(&e, &algebra::vec_scale(&vs, &k))
            })
            .collect();
        Matrix::from_fn(n, n, |r, c| cols[c][r].clone())
    }

    #[test]
    fn genus_one_twists_are_u_and_u_hat() {
        assert_eq!(
            pl_twist_matrix(&HomologyClass::x(1, 1).to_vector()),
            u_block()
        );
        assert_eq!(
            pl_twist_matrix(&HomologyClass::y(1, 1).to_vector()),
            u_hat_block()
        );
        assert!(pl_twist_matrix(&HomologyClass::zero(3).to_vector()).is_identity());
        assert_eq!(transvection_by_columns(&[1, 0]), u_block());
    }

    #[test]
    fn c1_twist_is_l() {
        let s = sig(2);
        let m = rho0(&s, GeneratorId::c(1)).unwrap();
        assert_eq!(m, l_block());
        assert_eq!(m, transvection_by_columns(&[1, 0, -1, 0]));
    }

    #[test]
    fn literal_definitions_match_transvections() {
        for g in 2..=5 {
            let s = sig(g);
            for i in 1..=g {
                assert_eq!(rho0(&s, GeneratorId::a(i)).unwrap(), a_matrix(g, i));
                assert_eq!(rho0(&s, GeneratorId::b(i)).unwrap(), b_matrix(g, i));
            }
            for k in 1..g {
                assert_eq!(rho0(&s, GeneratorId::c(k)).unwrap(), c_matrix(g, k));
            }
        }
        let s = SurfaceSig::new(3, 2, 1).unwrap();
        assert_eq!(rho0(&s, GeneratorId::e(2)).unwrap(), a_matrix(3, 1));
        assert_eq!(rho0(&s, GeneratorId::f(1)).unwrap(), a_matrix(3, 1));
    }

    #[test]
    fn rho0_examples() {
        let s = sig(2);
        let a1 = rho0(&s, GeneratorId::a(1)).unwrap();
        assert_eq!(a1, u_block().direct_sum(&Matrix::identity(2)));
        let b2 = rho0(&s, GeneratorId::b(2)).unwrap();
        assert_eq!(b2, Matrix::identity(2).direct_sum(&u_hat_block()));
    }

    #[test]
    fn word_images() {
        let s = sig(2);
        assert!(rho0_word(&s, &TwistWord::identity()).unwrap().is_identity());
        let lhs = rho0_word(&s, &"a1 b1 a1".parse().unwrap()).unwrap();
        let rhs = rho0_word(&s, &"b1 a1 b1".parse().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let w = TwistWord::from_letters([
            (GeneratorId::a(1), 1),
            (GeneratorId::b(1), -1),
            (GeneratorId::a(1), -1),
        ]);
        assert!(rho0_word(&s, &w.concat(&w.inverse()))
            .unwrap()
            .is_identity());
        let pow = rho0_word(&s, &"c1^-3".parse().unwrap()).unwrap();
        let c1_inv = algebra::inverse(&rho0(&s, GeneratorId::c(1)).unwrap()).unwrap();
        assert_eq!(pow, c1_inv.pow(3));
        assert!(rho0_word(&s, &"a3".parse().unwrap()).is_err());
    }

    #[test]
    fn transvections_are_symplectic_and_sign_blind() {
        let s = SurfaceSig::new(4, 1, 1).unwrap();
        let j = symplectic_form(4);
        for gen in crate::surface::generator_set(&s).unwrap() {
            let v = curve_class(&s, gen).unwrap();
            let m = pl_twist_matrix(&v.to_vector());
            assert_eq!(&(&m.transpose() * &j) * &m, j, "{gen}");
            assert_eq!(determinant(&m).unwrap(), Scalar::one());
            assert_eq!(pl_twist_matrix(&v.neg().to_vector()), m);
        }
    }

    #[test]
    fn form_is_skew_with_square_minus_one() {
        let j = symplectic_form(3);
        assert_eq!(j.transpose(), -&j);
        assert_eq!(&j * &j, -&Matrix::identity(6));
    }

    #[test]
    fn rotation_g_examples() {
        let g2 = rotation_g(2).unwrap();
        assert_eq!(
            g2,
            Matrix::from_ints(&[[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
        );
        for g in 2..=6 {
            let r = rotation_g(g).unwrap();
            assert!(r.pow(g).is_identity());
            assert_eq!(r.transpose(), algebra::inverse(&r).unwrap());
        }
        assert!(rotation_g(1).is_err());
    }

    #[test]
    fn block_embed_is_a_homomorphism() {
        let s = sig(2);
        let a = rho0(&s, GeneratorId::a(1)).unwrap();
        let b = rho0(&s, GeneratorId::c(1)).unwrap();
        let z1: Vector = [1, -2, 0, 3].iter().map(|&x| Scalar::from_int(x)).collect();
        let z2: Vector = vec![
            Scalar::frac(1, 2),
            Scalar::i(),
            Scalar::zero(),
            Scalar::from_int(5),
        ];
        let lhs = &block_embed(&z1, &a).unwrap() * &block_embed(&z2, &b).unwrap();
        let rhs = block_embed(&vec_add(&z1, &a.mul_vec(&z2).unwrap()), &(&a * &b)).unwrap();
        assert_eq!(lhs, rhs);

        assert!(block_embed(&algebra::zero_vec(4), &Matrix::identity(4))
            .unwrap()
            .is_identity());
        let e = block_embed(&z1, &Matrix::identity(4)).unwrap();
        let neg: Vector = z1.iter().map(|x| -x).collect();
        assert_eq!(
            algebra::inverse(&e).unwrap(),
            block_embed(&neg, &Matrix::identity(4)).unwrap()
        );
        assert!(block_embed(&z1, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn dual_swaps_block_type() {
        assert!(dual_rep(&Matrix::identity(3)).unwrap().is_identity());
        let s = sig(2);
        let f = rho0(&s, GeneratorId::b(1)).unwrap();
        let w: Vector = [1, 2, 0, -1].iter().map(|&x| Scalar::from_int(x)).collect();
        let m = block_embed(&w, &f).unwrap();
        let d = dual_rep(&m).unwrap();
        let parts = split_bordered(&d).unwrap();
        assert!(algebra::is_zero_vec(&parts.w));
        assert!(!algebra::is_zero_vec(&parts.s));
        assert!(parts.t.is_one());
        assert_eq!(dual_rep(&d).unwrap(), m);
        assert!(dual_rep(&Matrix::zeros(2, 2)).is_err());
    }
}
