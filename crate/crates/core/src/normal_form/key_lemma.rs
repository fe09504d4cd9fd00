use serde::Serialize;

use super::{condition_check_in, expect_eq, expect_scalar, Checked, Frame, Role, Witness};
use crate::algebra::{self, Matrix, Scalar, Vector};
use crate::symplectic::{c_matrix, tilde, u_block, u_hat_block};
use crate::Result;

/// The normalized tail data `((C_1, W_1), (S_1, T))` with
/// `W_1 = ᵗ(w, 0, -w, 0, ...)` and `S_1 = (0, s, 0, -s, ...)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KeyLemmaForm {
    pub m: usize,
    pub p: Scalar,
    pub w: Vector,
    pub s: Vector,
    pub t: Matrix,
}

impl KeyLemmaForm {
    /// `ᵗws = 0`, `ᵗwT = ᵗw`, `Ts = s`, `T² - T = sᵗw`.
    pub fn verify(&self) -> Checked<()> {
        tail_identities(&self.w, &self.s, &self.t)
    }

    /// Either `w = 0` or `s = 0`.
    pub fn is_split(&self) -> bool {
        algebra::is_zero_vec(&self.w) || algebra::is_zero_vec(&self.s)
    }

    pub fn to_matrix(&self, g: u32) -> Matrix {
        let n = 2 * g as usize;
        let mut out = tilde(&c_matrix(g, 1), self.m);
        for (r, v) in [
            (0, &self.w),
            (2, &algebra::vec_scale(&self.w, &-Scalar::one())),
        ] {
            out.set_block(r, n, &Matrix::row_vector(v));
        }
        for (c, v) in [
            (1, &self.s),
            (3, &algebra::vec_scale(&self.s, &-Scalar::one())),
        ] {
            out.set_block(n, c, &Matrix::column(v));
        }
        out.set_block(n, n, &self.t);
        out
    }

    /// `diag(I_2, p I_2, I_{2g-4}, I_m)`.
    pub fn conjugator(&self, g: u32) -> Matrix {
        scale_block(g, 2, &self.p).direct_sum(&Matrix::identity(self.m))
    }
}

/// A solved instance: `conjugated = P̃⁻¹ X̃ P̃ = form.to_matrix(g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KeyLemmaSolution {
    pub form: KeyLemmaForm,
    pub alpha: Scalar,
    pub conjugator: Matrix,
    pub conjugated: Matrix,
}

pub(crate) fn tail_identities(w: &[Scalar], s: &[Scalar], t: &Matrix) -> Checked<()> {
    let m = w.len();
    let wt = Matrix::row_vector(w);
    let sc = Matrix::column(s);
    expect_eq("form", "w.s", &wt * &sc, Matrix::zeros(1, 1))?;
    expect_eq("form", "wT", &wt * t, wt.clone())?;
    expect_eq("form", "Ts", t * &sc, sc.clone())?;
    expect_eq("form", "T^2-T", &(t * t) - t, &sc * &wt)?;
    debug_assert_eq!(t.shape(), (m, m));
    Ok(())
}

/// `diag(I, .., z I_2 at block `block`, .., I)` in dimension `2g`.
pub(crate) fn scale_block(g: u32, block: u32, z: &Scalar) -> Matrix {
    let mut p = Matrix::identity(2 * g as usize);
    let r = 2 * (block as usize - 1);
    p.set_block(r, r, &Matrix::scalar(2, z));
    p
}

/// `X̃ = ((X, W), (S, T))` with `X` of size `2g`.
#[derive(Debug, Clone)]
pub(crate) struct Parts {
    pub x: Matrix,
    pub w: Matrix,
    pub s: Matrix,
    pub t: Matrix,
}

impl Parts {
    pub fn split(xt: &Matrix, g: u32) -> Self {
        let n = 2 * g as usize;
        let m = xt.rows() - n;
        Parts {
            x: xt.block(0, 0, n, n),
            w: xt.block(0, n, n, m),
            s: xt.block(n, 0, m, n),
            t: xt.block(n, n, m, m),
        }
    }

    pub fn m(&self) -> usize {
        self.t.rows()
    }
}

/// Equations c_1..c_6: conditions (ii) and (iii) expanded blockwise.
pub(crate) fn commute_equations(frame: &Frame, p: &Parts, commute: &[u32]) -> Checked<()> {
    let n = 2 * frame.g as usize;
    let tail = p.m() > 0;
    let a_blocks: Vec<Matrix> = (1..=frame.g)
        .map(|i| frame.a(i).block(0, 0, n, n))
        .collect();
    for (i, a) in (1..).zip(&a_blocks) {
        expect_eq("c_1", format!("A{i}"), &p.x * a, a * &p.x)?;
    }
    if tail {
        for (i, a) in (1..).zip(&a_blocks) {
            expect_eq("c_2", format!("A{i}"), p.w.clone(), a * &p.w)?;
        }
        for (i, a) in (1..).zip(&a_blocks) {
            expect_eq("c_3", format!("A{i}"), &p.s * a, p.s.clone())?;
        }
    }
    let b_block = |j: u32| frame.b(j).block(0, 0, n, n);
    for &j in commute {
        expect_eq(
            "c_4",
            format!("B{j}"),
            &p.x * &b_block(j),
            &b_block(j) * &p.x,
        )?;
    }
    if tail {
        for &j in commute {
            expect_eq("c_5", format!("B{j}"), &b_block(j) * &p.w, p.w.clone())?;
        }
        for &j in commute {
            expect_eq("c_6", format!("B{j}"), &p.s * &b_block(j), p.s.clone())?;
        }
    }
    Ok(())
}

/// Equations c_7..c_10: condition (iv) expanded blockwise.
pub(crate) fn braid_equations(frame: &Frame, p: &Parts, braid: &[u32]) -> Checked<()> {
    let n = 2 * frame.g as usize;
    let tail = p.m() > 0;
    for &j in braid {
        let b = frame.b(j).block(0, 0, n, n);
        let ws = if tail {
            &p.w * &p.s
        } else {
            Matrix::zeros(n, n)
        };
        expect_eq(
            "c_7",
            format!("B{j}"),
            &(&(&p.x * &b) * &p.x) + &ws,
            &(&b * &p.x) * &b,
        )?;
        if tail {
            expect_eq(
                "c_8",
                format!("B{j}"),
                &(&(&p.x * &b) * &p.w) + &(&p.w * &p.t),
                &b * &p.w,
            )?;
            expect_eq(
                "c_9",
                format!("B{j}"),
                &(&(&p.s * &b) * &p.x) + &(&p.t * &p.s),
                &p.s * &b,
            )?;
            expect_eq(
                "c_10",
                format!("B{j}"),
                &(&(&p.s * &b) * &p.w) + &(&p.t * &p.t),
                p.t.clone(),
            )?;
        }
    }
    Ok(())
}

/// `S` may only be nonzero in the listed (1-based) columns.
pub(crate) fn support_of_s(s: &Matrix, keep: &[usize]) -> Checked<()> {
    let kept = Matrix::from_fn(s.rows(), s.cols(), |r, c| {
        if keep.contains(&(c + 1)) {
            s[(r, c)].clone()
        } else {
            Scalar::zero()
        }
    });
    expect_eq("form_S", format!("columns {keep:?}"), s.clone(), kept)
}

/// `W` may only be nonzero in the listed (1-based) rows.
pub(crate) fn support_of_w(w: &Matrix, keep: &[usize]) -> Checked<()> {
    let kept = Matrix::from_fn(w.rows(), w.cols(), |r, c| {
        if keep.contains(&(r + 1)) {
            w[(r, c)].clone()
        } else {
            Scalar::zero()
        }
    });
    expect_eq("form_W", format!("rows {keep:?}"), w.clone(), kept)
}

/// Entries of `X_0 = [[1, b, 0, α], [0, 1, 0, 0], [0, β, 1, d], [0, 0, 0, 1]]`.
#[derive(Debug, Clone)]
pub(crate) struct X0Params {
    pub b: Scalar,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub d: Scalar,
}

/// Stages form_X (`X = diag(X_0, I)`) and form_X0 (the pattern above, with
/// the diagonal already forced to 1).
pub(crate) fn x0_shape(x: &Matrix, g: u32) -> Checked<X0Params> {
    let n = 2 * g as usize;
    let x0 = x.block(0, 0, 4, 4);
    expect_eq(
        "form_X",
        "",
        x.clone(),
        x0.direct_sum(&Matrix::identity(n - 4)),
    )?;
    let params = X0Params {
        b: x0[(0, 1)].clone(),
        alpha: x0[(0, 3)].clone(),
        beta: x0[(2, 1)].clone(),
        d: x0[(2, 3)].clone(),
    };
    expect_eq("form_X0", "", x0, params.x0())?;
    Ok(params)
}

impl X0Params {
    pub fn x0(&self) -> Matrix {
        let (o, z) = (Scalar::one(), Scalar::zero());
        Matrix::from_rows(vec![
            vec![o.clone(), self.b.clone(), z.clone(), self.alpha.clone()],
            vec![z.clone(), o.clone(), z.clone(), z.clone()],
            vec![z.clone(), self.beta.clone(), o.clone(), self.d.clone()],
            vec![z.clone(), z.clone(), z, o],
        ])
        .expect("4x4")
    }
}

/// `ᵗw_i s_j` for rows `i` of `W` and columns `j` of `S` (1-based).
fn pairing(p: &Parts, i: usize, j: usize) -> Scalar {
    if p.m() == 0 {
        return Scalar::zero();
    }
    algebra::dot(p.w.row(i - 1), &p.s.col(j - 1))
}

/// The scalar relations c_11..c_16 read off from c_7 on the `4 x 4` corner.
fn corner_equations(p: &Parts, x0: &X0Params) -> Checked<()> {
    let u_hat = u_hat_block();
    let n = &u_block() - &Matrix::identity(2);
    let id = Matrix::identity(2);
    let (b, d, alpha, beta) = (&x0.b, &x0.d, &x0.alpha, &x0.beta);
    let one = Scalar::one();

    let lhs = &(&(&u_hat + &(&u_hat * &n).scale(b)) + &(&n * &u_hat).scale(b)) - &n.scale(&(b * b));
    let lhs = &lhs + &n.scale(&pairing(p, 1, 2));
    let rhs = &(&u_hat * &u_hat) + &(&(&u_hat * &n) * &u_hat).scale(b);
    expect_eq("c_11", "", lhs, rhs)?;

    let lhs = &(&(&u_hat + &(&u_hat * &n).scale(d)) + &(&n * &u_hat).scale(d)) - &n.scale(&(d * d));
    let lhs = &lhs + &n.scale(&pairing(p, 3, 4));
    let rhs = &(&u_hat * &u_hat) + &(&(&u_hat * &n) * &u_hat).scale(d);
    expect_eq("c_15", "", lhs, rhs)?;

    let lhs = &(&(&u_hat * &n).scale(alpha) + &n.scale(&(&(&one - b) * alpha)))
        + &n.scale(&pairing(p, 1, 4));
    expect_eq("c_12", "", lhs, (&u_hat * &n).scale(alpha))?;

    let lhs = &(&(&n * &u_hat).scale(beta) + &n.scale(&(beta * &(&one - b))))
        + &n.scale(&pairing(p, 3, 2));
    expect_eq("c_13", "", lhs, (&n * &u_hat).scale(beta))?;

    if p.m() > 0 {
        expect_eq(
            "c_16",
            "WS",
            &p.w * &p.s,
            Matrix::zeros(p.x.rows(), p.x.rows()),
        )?;
    }

    let two_d = &Scalar::from_int(2) * d;
    let lhs = &(&id + &n.scale(&(&two_d - &(alpha * beta)))) + &n.scale(&pairing(p, 3, 4));
    expect_eq("c_14", "", lhs, &id + &n.scale(d))?;
    Ok(())
}

/// Key-lemma normalization with the condition gate: fails with the first
/// violated condition (i)-(iv) before any derivation stage runs.
pub fn key_lemma_solve(x: &Matrix, g: u32, m: usize) -> Result<Checked<KeyLemmaSolution>> {
    let frame = Frame::new(g, m)?;
    if let Err(w) = condition_check_in(&frame, x, Role::Chain(1))? {
        return Ok(Err(w));
    }
    Ok(stages(&frame, x))
}

/// The derivation stages alone, without the condition gate.
pub fn key_lemma_replay(x: &Matrix, g: u32, m: usize) -> Result<Checked<KeyLemmaSolution>> {
    let frame = Frame::new(g, m)?;
    frame.check_shape(x)?;
    Ok(stages(&frame, x))
}

fn stages(frame: &Frame, xt: &Matrix) -> Checked<KeyLemmaSolution> {
    let g = frame.g;
    let p = Parts::split(xt, g);
    let m = p.m();
    let commute: Vec<u32> = (3..=g).collect();
    commute_equations(frame, &p, &commute)?;
    support_of_s(&p.s, &[2, 4])?;
    support_of_w(&p.w, &[1, 3])?;
    let x0 = x0_shape(&p.x, g)?;
    corner_equations(&p, &x0)?;

    let alpha = x0.alpha.clone();
    let inv_alpha = alpha.inv().expect("c_14 forces alpha beta = 1");
    let (w1, w3) = (p.w.row(0).to_vec(), p.w.row(2).to_vec());
    let (s2, s4) = (p.s.col(1), p.s.col(3));
    if m > 0 {
        let (w1r, w3r) = (Matrix::row_vector(&w1), Matrix::row_vector(&w3));
        let (s2c, s4c) = (Matrix::column(&s2), Matrix::column(&s4));
        expect_eq("c_8", "w3 = w1/alpha", w3r.clone(), w1r.scale(&inv_alpha))?;
        expect_eq("c_8", "w1 T = w1", &w1r * &p.t, w1r.clone())?;
        expect_eq("c_9", "s4 = alpha s2", s4c.clone(), s2c.scale(&alpha))?;
        expect_eq("c_9", "T s2 = s2", &p.t * &s2c, s2c.clone())?;
        let t2t = &(&p.t * &p.t) - &p.t;
        expect_eq("c_10", "s2 w1 = T^2 - T", &s2c * &w1r, t2t.clone())?;
        expect_eq("c_10", "s4 w3 = T^2 - T", &s4c * &w3r, t2t)?;
    }
    braid_equations(frame, &p, &[1, 2])?;

    let form = KeyLemmaForm {
        m,
        p: -inv_alpha,
        w: w1,
        s: s2,
        t: p.t.clone(),
    };
    let conjugator = form.conjugator(g);
    let conj_inv = algebra::inverse(&conjugator).expect("p is nonzero");
    let conjugated = &(&conj_inv * xt) * &conjugator;
    expect_eq("conjugate", "", conjugated.clone(), form.to_matrix(g))?;
    form.verify()?;
    if m == 1 {
        expect_scalar("det", "t = 1", &p.t[(0, 0)], &Scalar::one())?;
        if !form.is_split() {
            return Err(Witness::new(
                "c_16",
                "w s = 0",
                Matrix::scalar(1, &(&form.w[0] * &form.s[0])),
                Matrix::zeros(1, 1),
            ));
        }
    }
    Ok(KeyLemmaSolution {
        form,
        alpha,
        conjugator,
        conjugated,
    })
}
