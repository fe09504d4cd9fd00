use serde::Serialize;

use super::key_lemma::{key_lemma_solve, scale_block};
use super::{
    condition_check_in, expect_eq, expect_scalar, require_genus, Checked, Frame, Role, Witness,
};
use crate::algebra::{self, Matrix, Scalar, Vector};
use crate::symplectic::{bordered, c_matrix, rotation_g, split_bordered, tilde};
use crate::{Error, Result};

/// Output of [`normalize_chain`]: `P̃⁻¹ X̃_k P̃ = ((C_k, w_k), (ᵗs_k, 1))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalChain {
    pub g: u32,
    pub p_list: Vec<Scalar>,
    pub conjugator: Matrix,
    pub w: Vec<Vector>,
    pub s: Vec<Vector>,
}

impl CanonicalChain {
    /// `((C_k, w_k), (ᵗs_k, 1))` for `k = 1..g-1`.
    pub fn canonical_matrices(&self) -> Vec<Matrix> {
        (1..self.g)
            .map(|k| {
                bordered(
                    &c_matrix(self.g, k),
                    &self.w[k as usize - 1],
                    &self.s[k as usize - 1],
                    &Scalar::one(),
                )
            })
            .collect()
    }

    /// Zero pattern and support windows: for each `k`, `w_k = 0` or
    /// `s_k = 0`, and both vanish outside rows `2k-1..2k+2`.
    pub fn check_invariants(&self) -> Checked<()> {
        for k in 1..self.g as usize {
            let (w, s) = (&self.w[k - 1], &self.s[k - 1]);
            if !algebra::is_zero_vec(w) && !algebra::is_zero_vec(s) {
                return Err(Witness::new(
                    "split",
                    format!("k={k}"),
                    Matrix::column(w),
                    Matrix::column(s),
                ));
            }
            for v in [w, s] {
                let windowed: Vector = v
                    .iter()
                    .enumerate()
                    .map(|(r, x)| {
                        if (2 * k - 2..2 * k + 2).contains(&r) {
                            x.clone()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect();
                expect_eq(
                    "window",
                    format!("k={k}"),
                    Matrix::column(v),
                    Matrix::column(&windowed),
                )?;
            }
        }
        expect_eq(
            "conjugator",
            "",
            self.conjugator.clone(),
            tilde(&block_scalars(self.g, &self.p_list), 1),
        )
    }

    /// Every postcondition identity against the original inputs.
    pub fn verify(&self, xs: &[Matrix]) -> Result<Checked<()>> {
        let frame = Frame::new(self.g, 1)?;
        if let Err(w) = preserves_frame(&frame, &self.conjugator)? {
            return Ok(Err(w));
        }
        let inv = algebra::inverse(&self.conjugator)?;
        for (k, (x, c)) in (1..).zip(xs.iter().zip(self.canonical_matrices())) {
            let y = &(&inv * x) * &self.conjugator;
            if let Err(w) = expect_eq("post", format!("X{k}"), y, c) {
                return Ok(Err(w));
            }
        }
        Ok(self.check_invariants())
    }
}

/// Output of [`normalize_chain_2g`]: `P⁻¹ X_k P = C_k` exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain2g {
    pub g: u32,
    pub p_list: Vec<Scalar>,
    pub conjugator: Matrix,
}

impl Chain2g {
    pub fn verify(&self, xs: &[Matrix]) -> Result<Checked<()>> {
        let frame = Frame::new(self.g, 0)?;
        if let Err(w) = preserves_frame(&frame, &self.conjugator)? {
            return Ok(Err(w));
        }
        let inv = algebra::inverse(&self.conjugator)?;
        for (k, x) in (1..).zip(xs) {
            let y = &(&inv * x) * &self.conjugator;
            if let Err(w) = expect_eq("post", format!("X{k}"), y, c_matrix(self.g, k)) {
                return Ok(Err(w));
            }
        }
        Ok(expect_eq(
            "conjugator",
            "",
            self.conjugator.clone(),
            block_scalars(self.g, &self.p_list),
        ))
    }
}

/// `diag(I_2, p_1 I_2, ..., p_{g-1} I_2)`.
pub(crate) fn block_scalars(g: u32, p_list: &[Scalar]) -> Matrix {
    let mut blocks = vec![Matrix::identity(2)];
    blocks.extend(p_list.iter().map(|p| Matrix::scalar(2, p)));
    debug_assert_eq!(blocks.len(), g as usize);
    Matrix::block_diag(&blocks)
}

fn preserves_frame(frame: &Frame, p: &Matrix) -> Result<Checked<()>> {
    let inv = algebra::inverse(p)?;
    for i in 1..=frame.g {
        for (name, m) in [("A", frame.a(i)), ("B", frame.b(i))] {
            if let Err(w) = expect_eq("post", format!("{name}{i}"), &(&inv * m) * p, m.clone()) {
                return Ok(Err(w));
            }
        }
    }
    Ok(Ok(()))
}

/// Normalizes `X̃_1, ..., X̃_{g-1}` of size `2g+1` simultaneously.
pub fn normalize_chain(xs: &[Matrix], g: u32) -> Result<Checked<CanonicalChain>> {
    let (p_list, q) = match solve_p_list(xs, g, 1)? {
        Ok(v) => v,
        Err(w) => return Ok(Err(w)),
    };
    let conjugator = tilde(&q, 1);
    let inv = algebra::inverse(&conjugator)?;
    let mut w = Vec::new();
    let mut s = Vec::new();
    for (k, x) in (1..).zip(xs) {
        let y = &(&inv * x) * &conjugator;
        let parts = split_bordered(&y)?;
        if let Err(wit) = expect_eq("post", format!("C{k}"), parts.f, c_matrix(g, k)) {
            return Ok(Err(wit));
        }
        if let Err(wit) = expect_scalar("det", format!("k={k}"), &parts.t, &Scalar::one()) {
            return Ok(Err(wit));
        }
        w.push(parts.w);
        s.push(parts.s);
    }
    let chain = CanonicalChain {
        g,
        p_list,
        conjugator,
        w,
        s,
    };
    Ok(chain.verify(xs)?.map(|()| chain))
}

/// The `2g`-dimensional analogue: finds `P` with `P⁻¹ X_k P = C_k`.
pub fn normalize_chain_2g(xs: &[Matrix], g: u32) -> Result<Checked<Chain2g>> {
    let (p_list, q) = match solve_p_list(xs, g, 0)? {
        Ok(v) => v,
        Err(w) => return Ok(Err(w)),
    };
    let chain = Chain2g {
        g,
        p_list,
        conjugator: q,
    };
    Ok(chain.verify(xs)?.map(|()| chain))
}

/// Runs the key lemma on `G̃^{-(k-1)} Q̃_{k-1}⁻¹ X̃_k Q̃_{k-1} G̃^{k-1}` for
/// each `k`, accumulating `Q_k = Q_{k-1} G^{k-1} diag(I_2, p_k I_2, I) G^{-(k-1)}`.
fn solve_p_list(xs: &[Matrix], g: u32, m: usize) -> Result<Checked<(Vec<Scalar>, Matrix)>> {
    require_genus(g)?;
    if xs.len() != g as usize - 1 {
        return Err(Error::Shape(format!(
            "expected {} chain matrices for g={g}, got {}",
            g - 1,
            xs.len()
        )));
    }
    let frame = Frame::new(g, m)?;
    for (k, x) in (1..).zip(xs) {
        if let Err(w) = condition_check_in(&frame, x, Role::Chain(k))? {
            return Ok(Err(w.with_context(&format!("k={k}"))));
        }
    }
    let rot = rotation_g(g)?;
    let rot_inv = rot.transpose();
    let mut q = Matrix::identity(2 * g as usize);
    let mut shift = Matrix::identity(2 * g as usize);
    let mut shift_inv = shift.clone();
    let mut p_list = Vec::new();
    for (k, x) in (1..).zip(xs) {
        let qt = tilde(&q, m);
        let x_prime = &(&algebra::inverse(&qt)? * x) * &qt;
        let rotated = &(&tilde(&shift_inv, m) * &x_prime) * &tilde(&shift, m);
        let sol = match key_lemma_solve(&rotated, g, m)? {
            Ok(sol) => sol,
            Err(w) => return Ok(Err(w.with_context(&format!("k={k}")))),
        };
        let p_k = &(&shift * &scale_block(g, 2, &sol.form.p)) * &shift_inv;
        q = &q * &p_k;
        p_list.push(sol.form.p);
        shift = &rot * &shift;
        shift_inv = &shift_inv * &rot_inv;
    }
    Ok(Ok((p_list, q)))
}
