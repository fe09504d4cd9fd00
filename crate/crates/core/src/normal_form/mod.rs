//! Rigidity solvers and the block-type classifier.
//!
//! Every solver takes already-normalized bases: the images of `t_{a_i}` and
//! `t_{b_i}` must be exactly `Ã_i = diag(A_i, I_m)` and `B̃_i = diag(B_i, I_m)`.
//! Each derivation step is a named stage; a failing stage is reported with
//! the two sides of the identity that broke.

#![allow(clippy::result_large_err)]

mod chain;
mod dichotomy;
mod eigen;
mod extra;
mod key_lemma;
pub mod rigidity;

use std::fmt;

use serde::Serialize;

use crate::algebra::{char_poly, Matrix, Poly, Scalar};
use crate::symplectic::{a_matrix, b_matrix, tilde};
use crate::{Error, Result};

pub use chain::{normalize_chain, normalize_chain_2g, CanonicalChain, Chain2g};
pub use dichotomy::{
    classify_dichotomy, lower_block, mixed_blocks_commute, upper_block, BlockType, DichotomyResult,
    DichotomyVerdict,
};
pub use eigen::{assert_eigen_theorem, EigenCheck};
pub use extra::{extra_gen_solve, ExtraGenForm};
pub use key_lemma::{key_lemma_replay, key_lemma_solve, KeyLemmaForm, KeyLemmaSolution};

/// Which family of conditions a matrix is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    /// Braids with `B̃_k`, `B̃_{k+1}`, commutes with the other `B̃_j`.
    Chain(u32),
    /// Braids with `B̃_1`, commutes with `B̃_2..B̃_g`.
    Extra,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Chain(k) => write!(f, "chain-{k}"),
            Role::Extra => f.write_str("extra"),
        }
    }
}

impl std::str::FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "extra" {
            return Ok(Role::Extra);
        }
        s.strip_prefix("chain-")
            .and_then(|k| k.parse().ok())
            .filter(|&k| k >= 1)
            .map(Role::Chain)
            .ok_or_else(|| Error::Parse(format!("role must be chain-<k> or extra, got {s:?}")))
    }
}

/// A failed identity: which stage, where, and both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub stage: String,
    pub context: String,
    pub lhs: Matrix,
    pub rhs: Matrix,
}

impl Witness {
    pub fn new(
        stage: impl Into<String>,
        context: impl Into<String>,
        lhs: Matrix,
        rhs: Matrix,
    ) -> Self {
        Witness {
            stage: stage.into(),
            context: context.into(),
            lhs,
            rhs,
        }
    }

    pub(crate) fn with_context(mut self, prefix: &str) -> Self {
        self.context = if self.context.is_empty() {
            prefix.to_string()
        } else {
            format!("{prefix}, {}", self.context)
        };
        self
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stage {}", self.stage)?;
        if !self.context.is_empty() {
            write!(f, " ({})", self.context)?;
        }
        write!(f, ": lhs {:?} != rhs {:?}", self.lhs, self.rhs)
    }
}

/// Outcome of a checked computation: the value, or the first broken identity.
pub type Checked<T> = std::result::Result<T, Witness>;

/// Compares two matrices, producing a witness on mismatch.
pub(crate) fn expect_eq(
    stage: &str,
    context: impl fmt::Display,
    lhs: Matrix,
    rhs: Matrix,
) -> Checked<()> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Witness::new(stage, context.to_string(), lhs, rhs))
    }
}

pub(crate) fn expect_scalar(
    stage: &str,
    context: impl fmt::Display,
    lhs: &Scalar,
    rhs: &Scalar,
) -> Checked<()> {
    expect_eq(
        stage,
        context,
        Matrix::scalar(1, lhs),
        Matrix::scalar(1, rhs),
    )
}

/// `Ã_i` and `B̃_i` for `i = 1..g`, padded with `I_m`.
#[derive(Debug, Clone)]
pub struct Frame {
    pub g: u32,
    pub m: usize,
    pub a: Vec<Matrix>,
    pub b: Vec<Matrix>,
}

impl Frame {
    pub fn new(g: u32, m: usize) -> Result<Self> {
        require_genus(g)?;
        let a = (1..=g).map(|i| tilde(&a_matrix(g, i), m)).collect();
        let b = (1..=g).map(|i| tilde(&b_matrix(g, i), m)).collect();
        Ok(Frame { g, m, a, b })
    }

    pub fn dim(&self) -> usize {
        2 * self.g as usize + self.m
    }

    /// `Ã_i`, 1-based.
    pub fn a(&self, i: u32) -> &Matrix {
        &self.a[i as usize - 1]
    }

    /// `B̃_i`, 1-based.
    pub fn b(&self, i: u32) -> &Matrix {
        &self.b[i as usize - 1]
    }

    pub(crate) fn check_shape(&self, x: &Matrix) -> Result<()> {
        if x.shape() != (self.dim(), self.dim()) {
            return Err(Error::Shape(format!(
                "expected a {n}x{n} matrix for g={}, m={}, got {}x{}",
                self.g,
                self.m,
                x.rows(),
                x.cols(),
                n = self.dim()
            )));
        }
        Ok(())
    }
}

pub(crate) fn require_genus(g: u32) -> Result<()> {
    if g < 2 {
        return Err(Error::UnsupportedGenus { g, min: 2 });
    }
    Ok(())
}

/// Condition (i): `char_poly(X) = (x-1)^n`. The witness is `(X - I)^n`
/// against zero, which is equivalent by Cayley-Hamilton.
pub fn unique_eigenvalue_one(x: &Matrix) -> Result<Checked<()>> {
    let n = x.rows();
    if char_poly(x)? == Poly::power_of_linear(&Scalar::one(), n) {
        return Ok(Ok(()));
    }
    let shifted = (x - &Matrix::identity(n)).pow(n as u32);
    Ok(Err(Witness::new(
        "i",
        "char_poly != (x-1)^n",
        shifted,
        Matrix::zeros(n, n),
    )))
}

/// Checks conditions (i)-(iv) for `role` in a `(2g+m)`-dimensional frame.
pub fn condition_check(x: &Matrix, role: Role, g: u32, m: usize) -> Result<Checked<()>> {
    let frame = Frame::new(g, m)?;
    condition_check_in(&frame, x, role)
}

pub(crate) fn condition_check_in(frame: &Frame, x: &Matrix, role: Role) -> Result<Checked<()>> {
    frame.check_shape(x)?;
    let braid_with = braid_set(frame, role)?;
    if let Err(w) = unique_eigenvalue_one(x)? {
        return Ok(Err(w));
    }
    Ok(commute_and_braid(frame, x, &braid_with))
}

/// Every condition that fails, one witness each (the first instance found).
/// Unlike [`condition_check`] this does not stop at the first failure.
pub fn failed_conditions(x: &Matrix, role: Role, g: u32, m: usize) -> Result<Vec<Witness>> {
    let frame = Frame::new(g, m)?;
    frame.check_shape(x)?;
    let braid_with = braid_set(&frame, role)?;
    let mut out = Vec::new();
    if let Err(w) = unique_eigenvalue_one(x)? {
        out.push(w);
    }
    let ii = (1..=g)
        .find_map(|i| expect_eq("ii", format!("A{i}"), x * frame.a(i), frame.a(i) * x).err());
    let iii = (1..=g)
        .filter(|j| !braid_with.contains(j))
        .find_map(|j| expect_eq("iii", format!("B{j}"), x * frame.b(j), frame.b(j) * x).err());
    let iv = braid_with.iter().find_map(|&j| {
        let b = frame.b(j);
        expect_eq("iv", format!("B{j}"), &(x * b) * x, &(b * x) * b).err()
    });
    out.extend([ii, iii, iv].into_iter().flatten());
    Ok(out)
}

fn braid_set(frame: &Frame, role: Role) -> Result<Vec<u32>> {
    match role {
        Role::Chain(k) if k >= 1 && k < frame.g => Ok(vec![k, k + 1]),
        Role::Chain(k) => Err(Error::Shape(format!(
            "chain index {k} outside 1..{}",
            frame.g - 1
        ))),
        Role::Extra => Ok(vec![1]),
    }
}

fn commute_and_braid(frame: &Frame, x: &Matrix, braid_with: &[u32]) -> Checked<()> {
    for i in 1..=frame.g {
        let a = frame.a(i);
        expect_eq("ii", format!("A{i}"), x * a, a * x)?;
    }
    for j in (1..=frame.g).filter(|j| !braid_with.contains(j)) {
        let b = frame.b(j);
        expect_eq("iii", format!("B{j}"), x * b, b * x)?;
    }
    for &j in braid_with {
        let b = frame.b(j);
        expect_eq("iv", format!("B{j}"), &(x * b) * x, &(b * x) * b)?;
    }
    Ok(())
}

/// JSON report shape shared by the solvers.
#[derive(Debug, Clone, Serialize)]
pub struct SolverReport {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub context: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessPair {
    pub lhs: Matrix,
    pub rhs: Matrix,
}

impl SolverReport {
    pub fn from_checked<T: Serialize>(outcome: &Checked<T>) -> Result<Self> {
        Ok(match outcome {
            Ok(v) => SolverReport {
                verdict: "pass",
                stage: None,
                context: None,
                witness: None,
                result: Some(serde_json::to_value(v)?),
            },
            Err(w) => SolverReport {
                verdict: "fail",
                stage: Some(w.stage.clone()),
                context: (!w.context.is_empty()).then(|| w.context.clone()),
                witness: Some(WitnessPair {
                    lhs: w.lhs.clone(),
                    rhs: w.rhs.clone(),
                }),
                result: None,
            },
        })
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::c_matrix;

    #[test]
    fn canonical_chain_passes() {
        for g in 2..=4 {
            for k in 1..g {
                let x = tilde(&c_matrix(g, k), 1);
                assert_eq!(
                    condition_check(&x, Role::Chain(k), g, 1).unwrap(),
                    Ok(()),
                    "g={g} k={k}"
                );
                let x0 = c_matrix(g, k);
                assert_eq!(condition_check(&x0, Role::Chain(k), g, 0).unwrap(), Ok(()));
            }
        }
    }

    #[test]
    fn a1_fails_chain_braid() {
        let x = tilde(&a_matrix(3, 1), 1);
        let w = condition_check(&x, Role::Chain(1), 3, 1)
            .unwrap()
            .unwrap_err();
        assert_eq!(w.stage, "iv");
        assert_eq!(w.context, "B2");
        assert_eq!(condition_check(&x, Role::Extra, 3, 1).unwrap(), Ok(()));
    }

    #[test]
    fn eigenvalue_witness() {
        let x = tilde(&c_matrix(2, 1), 1).direct_sum(&Matrix::identity(0));
        let mut bad = x.clone();
        bad.set_block(4, 4, &Matrix::zeros(1, 1));
        let w = condition_check(&bad, Role::Chain(1), 2, 1)
            .unwrap()
            .unwrap_err();
        assert_eq!(w.stage, "i");
        assert!(!w.lhs.is_zero());
    }

    #[test]
    fn shape_and_role_errors() {
        assert!(condition_check(&Matrix::identity(4), Role::Chain(1), 2, 1).is_err());
        assert!(condition_check(&Matrix::identity(5), Role::Chain(2), 2, 1).is_err());
        assert!(matches!(
            Frame::new(1, 1),
            Err(Error::UnsupportedGenus { .. })
        ));
        assert_eq!("chain-3".parse::<Role>().unwrap(), Role::Chain(3));
        assert!("chain-0".parse::<Role>().is_err());
    }

    #[test]
    fn report_json() {
        let bad: Checked<u32> = Err(Witness::new(
            "c_11",
            "",
            Matrix::identity(1),
            Matrix::zeros(1, 1),
        ));
        let r = SolverReport::from_checked(&bad).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["stage"], "c_11");
        assert!(v["witness"]["lhs"].is_object());
        let good: Checked<u32> = Ok(3);
        assert!(SolverReport::from_checked(&good).unwrap().passed());
    }
}
