//! Seeded constructors for the instance families used by the self-test and
//! the test suites. Every instance is built from its own seed, so families
//! can be split across threads without changing results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{self, Matrix, Scalar, Vector};
use crate::cohomology::{principal_cocycle, CrossedHomData};
use crate::normal_form::{CanonicalChain, ExtraGenForm, KeyLemmaForm};
use crate::surface::{GeneratorId, SurfaceSig};
use crate::symplectic::{a_matrix, b_matrix, c_matrix, symplectic_form, tilde, HomologyClass};
use crate::Result;

/// Mixes a base seed with a path of stream indices (splitmix64 steps).
pub fn instance_seed(base: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix(base), |acc, &k| {
        splitmix(acc ^ splitmix(k.wrapping_add(0x632B_E59B_D9B4_E019)))
    })
}

fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng(base: u64, path: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(instance_seed(base, path))
}

/// Small Gaussian rational: parts `a/b` with `|a| <= 6`, `1 <= b <= 4`;
/// imaginary part nonzero about a quarter of the time.
pub fn scalar(rng: &mut impl Rng) -> Scalar {
    let re = small_fraction(rng);
    if rng.random_ratio(1, 4) {
        let im = small_fraction(rng);
        &re + &(&im * &Scalar::i())
    } else {
        re
    }
}

fn small_fraction(rng: &mut impl Rng) -> Scalar {
    Scalar::frac(rng.random_range(-6..=6), rng.random_range(1..=4))
}

pub fn nonzero_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let z = scalar(rng);
        if !z.is_zero() {
            return z;
        }
    }
}

pub fn vector(rng: &mut impl Rng, n: usize) -> Vector {
    (0..n).map(|_| scalar(rng)).collect()
}

pub fn nonzero_vector(rng: &mut impl Rng, n: usize) -> Vector {
    loop {
        let v = vector(rng, n);
        if !algebra::is_zero_vec(&v) {
            return v;
        }
    }
}

/// A principal cocycle from a random `w0` (returned alongside).
pub fn principal(rng: &mut impl Rng, sig: &SurfaceSig) -> Result<(Vector, CrossedHomData)> {
    let w0 = vector(rng, sig.homology_dim());
    let c = principal_cocycle(sig, &w0)?;
    Ok((w0, c))
}

/// Adds `z·v` to the value on one generator.
pub fn perturb(c: &CrossedHomData, gen: GeneratorId, v: &[Scalar]) -> CrossedHomData {
    c.map_values(|g, x| {
        if g == gen {
            algebra::vec_add(x, v)
        } else {
            x.clone()
        }
    })
}

/// `z·y_1` at `a1`: outside `im(A_1 - I) = span(x_1)`, so never a coboundary.
pub fn off_image_at_a1(rng: &mut impl Rng, g: u32) -> (GeneratorId, Vector) {
    let mut v = algebra::zero_vec(2 * g as usize);
    v[1] = nonzero_scalar(rng);
    (GeneratorId::a(1), v)
}

/// `z·x_1` at `b1`: outside `im(B_1 - I) = span(y_1)`.
pub fn off_image_at_b1(rng: &mut impl Rng, g: u32) -> (GeneratorId, Vector) {
    let mut v = algebra::zero_vec(2 * g as usize);
    v[0] = nonzero_scalar(rng);
    (GeneratorId::b(1), v)
}

/// One of `w`, `s` random and nonzero, the other zero (coin flip).
fn split_pair(rng: &mut impl Rng, m: usize) -> (Vector, Vector) {
    let v = nonzero_vector(rng, m);
    if rng.random_bool(0.5) {
        (v, algebra::zero_vec(m))
    } else {
        (algebra::zero_vec(m), v)
    }
}

/// A key-lemma instance with `m = 1`: `X̃ = P̃ ((C_1, W_1), (S_1, 1)) P̃⁻¹`.
pub fn key_lemma_instance(rng: &mut impl Rng, g: u32) -> (Matrix, KeyLemmaForm) {
    let (w, s) = split_pair(rng, 1);
    let form = KeyLemmaForm {
        m: 1,
        p: nonzero_scalar(rng),
        w,
        s,
        t: Matrix::identity(1),
    };
    let pt = form.conjugator(g);
    let x = &(&pt * &form.to_matrix(g)) * &algebra::inverse(&pt).expect("p != 0");
    (x, form)
}

/// A key-lemma instance with tail `m >= 2` where `T = I + sᵗw`, `ᵗws = 0`
/// and typically both `w` and `s` nonzero.
pub fn key_lemma_instance_wide(rng: &mut impl Rng, g: u32, m: usize) -> (Matrix, KeyLemmaForm) {
    assert!(m >= 2);
    let w = nonzero_vector(rng, m);
    let k = w.iter().position(|x| !x.is_zero()).expect("nonzero");
    let mut s = vector(rng, m);
    let partial = algebra::dot(&w, &s) - &(&w[k] * &s[k]);
    s[k] = -(&partial / &w[k]);
    let t = &Matrix::identity(m) + &algebra::outer(&s, &w);
    let form = KeyLemmaForm {
        m,
        p: nonzero_scalar(rng),
        w,
        s,
        t,
    };
    let pt = form.conjugator(g);
    let x = &(&pt * &form.to_matrix(g)) * &algebra::inverse(&pt).expect("p != 0");
    (x, form)
}

/// Inputs `X̃_1..X̃_{g-1}` built from a random canonical chain: per `k`, one
/// of `w_k`, `s_k` is a rotated key-lemma tail, the other zero.
pub fn chain_instance(rng: &mut impl Rng, g: u32) -> (Vec<Matrix>, CanonicalChain) {
    let n = 2 * g as usize;
    let p_list: Vec<Scalar> = (1..g).map(|_| nonzero_scalar(rng)).collect();
    let q = tilde(&block_scalars(&p_list), 1);
    let mut ws = Vec::new();
    let mut ss = Vec::new();
    for k in 1..g as usize {
        let (a, b) = split_pair(rng, 1);
        let mut w = algebra::zero_vec(n);
        let mut s = algebra::zero_vec(n);
        w[2 * k - 2] = a[0].clone();
        w[2 * k] = -&a[0];
        s[2 * k - 1] = b[0].clone();
        s[2 * k + 1] = -&b[0];
        ws.push(w);
        ss.push(s);
    }
    let chain = CanonicalChain {
        g,
        p_list,
        conjugator: q.clone(),
        w: ws,
        s: ss,
    };
    let q_inv = algebra::inverse(&q).expect("invertible");
    let xs = chain
        .canonical_matrices()
        .iter()
        .map(|c| &(&q * c) * &q_inv)
        .collect();
    (xs, chain)
}

/// `X_k = P_0 C_k P_0⁻¹` with `P_0 = diag(I_2, p_2 I_2, ...)` random.
pub fn chain_2g_instance(rng: &mut impl Rng, g: u32) -> (Vec<Matrix>, Vec<Scalar>) {
    let p_list: Vec<Scalar> = (1..g).map(|_| nonzero_scalar(rng)).collect();
    let p = block_scalars(&p_list);
    let p_inv = algebra::inverse(&p).expect("invertible");
    let xs = (1..g).map(|k| &(&p * &c_matrix(g, k)) * &p_inv).collect();
    (xs, p_list)
}

/// `F̃ = ((A_1, w e_1), (s ᵗe_2, 1))` with one of `w`, `s` zero.
pub fn extra_instance(rng: &mut impl Rng, g: u32) -> (Matrix, ExtraGenForm) {
    let (w, s) = split_pair(rng, 1);
    let form = ExtraGenForm {
        m: 1,
        w,
        s,
        t: Matrix::identity(1),
    };
    (form.to_matrix(g), form)
}

fn block_scalars(p_list: &[Scalar]) -> Matrix {
    let mut blocks = vec![Matrix::identity(2)];
    blocks.extend(p_list.iter().map(|p| Matrix::scalar(2, p)));
    Matrix::block_diag(&blocks)
}

/// Which single condition a constructed negative breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    I,
    II,
    III,
    IV,
}

impl Violation {
    pub const ALL: [Violation; 4] = [Violation::I, Violation::II, Violation::III, Violation::IV];

    pub fn stage(self) -> &'static str {
        match self {
            Violation::I => "i",
            Violation::II => "ii",
            Violation::III => "iii",
            Violation::IV => "iv",
        }
    }
}

/// A matrix for role chain-`k` (tail `m <= 1`) that breaks exactly `which`:
/// (i) `diag(C_k, 0)` or `0`; (ii) `B̃_k x B̃_k⁻¹` for the valid input `x`;
/// (iii) `C_k + x_j ᵗv J` with `v = x_k - x_{k+1}` and some `j ∉ {k, k+1}`,
/// padded by `I_m`; (iv) `diag(A_k, I_m)`.
/// Returns `None` for (iii) when `g = 2` (no such `j`).
pub fn chain_violation(x: &Matrix, g: u32, k: u32, m: usize, which: Violation) -> Option<Matrix> {
    let conj =
        |a: &Matrix| &(&tilde(a, m) * x) * &algebra::inverse(&tilde(a, m)).expect("invertible");
    match which {
        Violation::I => Some(match m {
            0 => Matrix::zeros(2 * g as usize, 2 * g as usize),
            _ => c_matrix(g, k).direct_sum(&Matrix::zeros(m, m)),
        }),
        Violation::II => Some(conj(&b_matrix(g, k))),
        Violation::III => (1..=g).find(|&j| j != k && j != k + 1).map(|j| {
            let n = 2 * g as usize;
            let v = &HomologyClass::x(g, k) - &HomologyClass::x(g, k + 1);
            let row = &Matrix::row_vector(&v.to_vector()) * &symplectic_form(g);
            let mut e = algebra::zero_vec(n);
            e[2 * (j as usize - 1)] = Scalar::one();
            tilde(&(&c_matrix(g, k) + &algebra::outer(&e, row.row(0))), m)
        }),
        Violation::IV => Some(tilde(&a_matrix(g, k), m)),
    }
}
