use serde::Serialize;

use super::key_lemma::{
    braid_equations, commute_equations, support_of_s, support_of_w, tail_identities, x0_shape,
    Parts,
};
use super::{condition_check_in, expect_eq, expect_scalar, Checked, Frame, Role, Witness};
use crate::algebra::{self, Matrix, Scalar, Vector};
use crate::symplectic::{a_matrix, tilde, u_block, u_hat_block};
use crate::Result;

/// `F̃ = ((A_1, W), (S, T))` with `W = ᵗ(w, 0, ...)` and `S = (0, s, 0, ...)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtraGenForm {
    pub m: usize,
    pub w: Vector,
    pub s: Vector,
    pub t: Matrix,
}

impl ExtraGenForm {
    pub fn verify(&self) -> Checked<()> {
        tail_identities(&self.w, &self.s, &self.t)
    }

    pub fn is_split(&self) -> bool {
        algebra::is_zero_vec(&self.w) || algebra::is_zero_vec(&self.s)
    }

    /// Block type read off from which of `w`, `s` vanishes.
    pub fn block_type(&self) -> Option<super::BlockType> {
        match (algebra::is_zero_vec(&self.w), algebra::is_zero_vec(&self.s)) {
            (_, true) => Some(super::BlockType::TypeA),
            (true, false) => Some(super::BlockType::TypeB),
            _ => None,
        }
    }

    pub fn to_matrix(&self, g: u32) -> Matrix {
        let n = 2 * g as usize;
        let mut out = tilde(&a_matrix(g, 1), self.m);
        out.set_block(0, n, &Matrix::row_vector(&self.w));
        out.set_block(n, 1, &Matrix::column(&self.s));
        out.set_block(n, n, &self.t);
        out
    }
}

/// Normal form for an extra generator's image. No conjugation is needed:
/// the input itself is returned in decomposed form.
pub fn extra_gen_solve(f: &Matrix, g: u32, m: usize) -> Result<Checked<ExtraGenForm>> {
    let frame = Frame::new(g, m)?;
    if let Err(w) = condition_check_in(&frame, f, Role::Extra)? {
        return Ok(Err(w));
    }
    Ok(stages(&frame, f))
}

fn stages(frame: &Frame, f: &Matrix) -> Checked<ExtraGenForm> {
    let g = frame.g;
    let p = Parts::split(f, g);
    let m = p.m();
    let commute: Vec<u32> = (2..=g).collect();
    commute_equations(frame, &p, &commute)?;
    support_of_s(&p.s, &[2])?;
    support_of_w(&p.w, &[1])?;
    let x0 = x0_shape(&p.x, g)?;

    // c_4 for j = 2 kills the off-diagonal corner entries.
    let z = Scalar::zero();
    let corner = Matrix::from_rows(vec![vec![x0.alpha.clone(), x0.beta.clone(), x0.d.clone()]])
        .expect("1x3");
    expect_eq(
        "c_4",
        "B2: alpha = beta = d = 0",
        corner,
        Matrix::from_rows(vec![vec![z.clone(), z.clone(), z]]).expect("1x3"),
    )?;

    let u_hat = u_hat_block();
    let n = &u_block() - &Matrix::identity(2);
    let x1 = &Matrix::identity(2) + &n.scale(&x0.b);
    let w = p.w.row(0).to_vec();
    let s = p.s.col(1);
    let ws = if m > 0 {
        algebra::dot(&w, &s)
    } else {
        Scalar::zero()
    };
    let lhs = &(&(&x1 * &u_hat) * &x1) + &n.scale(&ws);
    expect_eq("c_7", "corner", lhs, &(&u_hat * &x1) * &u_hat)?;
    expect_eq("form_X", "X = A1", p.x.clone(), a_matrix(g, 1))?;

    if m > 0 {
        let (wr, sc) = (Matrix::row_vector(&w), Matrix::column(&s));
        expect_eq("c_8", "w T = w", &wr * &p.t, wr.clone())?;
        expect_eq("c_9", "T s = s", &p.t * &sc, sc.clone())?;
        expect_eq("c_10", "s w = T^2 - T", &sc * &wr, &(&p.t * &p.t) - &p.t)?;
    }
    braid_equations(frame, &p, &[1])?;

    let form = ExtraGenForm {
        m,
        w,
        s,
        t: p.t.clone(),
    };
    form.verify()?;
    expect_eq("form", "reassembled", form.to_matrix(g), f.clone())?;
    if m == 1 {
        expect_scalar("det", "t = 1", &p.t[(0, 0)], &Scalar::one())?;
        if !form.is_split() {
            return Err(Witness::new(
                "c_7",
                "w s = 0",
                Matrix::scalar(1, &ws),
                Matrix::zeros(1, 1),
            ));
        }
    }
    Ok(form)
}
