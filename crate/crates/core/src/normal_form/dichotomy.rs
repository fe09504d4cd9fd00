use serde::Serialize;

use crate::algebra::{self, Matrix, Scalar};
use crate::cohomology::{CrossedHomData, GeneratorRep};
use crate::surface::GeneratorId;
use crate::symplectic::{bordered, rho0, split_bordered, symplectic_form};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlockType {
    /// `((F, w), (0, 1))`
    TypeA,
    /// `((F, 0), (ᵗs, 1))`
    TypeB,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum DichotomyVerdict {
    TypeA,
    TypeB,
    NotBlockForm {
        generator: GeneratorId,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DichotomyResult {
    #[serde(flatten)]
    pub verdict: DichotomyVerdict,
    /// Cocycle read off the last column (after dualizing for type B).
    pub extracted: Option<CrossedHomData>,
    /// Why extraction was skipped, when it was.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn block_type_of(m: &Matrix) -> (bool, bool) {
    let n = m.rows() - 1;
    let corner = m[(n, n)].is_one();
    let bottom = (0..n).all(|c| m[(n, c)].is_zero());
    let right = (0..n).all(|r| m[(r, n)].is_zero());
    (corner && bottom, corner && right)
}

/// Decides whether all generator images share the upper or the lower
/// block-triangular shape. Images that are block diagonal fit both; if every
/// image does, the verdict is type A.
pub fn classify_dichotomy(rep: &GeneratorRep) -> Result<DichotomyResult> {
    let sig = *rep.sig();
    if rep.dim() != sig.homology_dim() + 1 {
        return Err(Error::Shape(format!(
            "expected dimension {}, got {}",
            sig.homology_dim() + 1,
            rep.dim()
        )));
    }
    let shapes: Vec<(GeneratorId, bool, bool)> = rep
        .iter()
        .map(|(g, m)| {
            let (upper, lower) = block_type_of(m);
            (g, upper, lower)
        })
        .collect();
    if let Some(&(gen, ..)) = shapes.iter().find(|(_, u, l)| !u && !l) {
        let reason = "image is neither ((F,w),(0,1)) nor ((F,0),(ᵗs,1))".to_string();
        return Ok(DichotomyResult {
            verdict: DichotomyVerdict::NotBlockForm {
                generator: gen,
                reason,
            },
            extracted: None,
            note: None,
        });
    }
    let verdict = if shapes.iter().all(|s| s.1) {
        DichotomyVerdict::TypeA
    } else if shapes.iter().all(|s| s.2) {
        DichotomyVerdict::TypeB
    } else {
        let gen = shapes
            .iter()
            .find(|s| !s.1)
            .map(|s| s.0)
            .expect("some image is not upper");
        let reason = "upper and lower block forms are mixed across generators".to_string();
        return Ok(DichotomyResult {
            verdict: DichotomyVerdict::NotBlockForm {
                generator: gen,
                reason,
            },
            extracted: None,
            note: None,
        });
    };
    let upper = match verdict {
        DichotomyVerdict::TypeA => rep.clone(),
        _ => rep.dual()?,
    };
    let (extracted, note) = extract(&upper)?;
    Ok(DichotomyResult {
        verdict,
        extracted,
        note,
    })
}

/// Reads `c(gen)` from the last column of type-A images whose `F` blocks are
/// `rho0`. Dualizing a lower form with `F = rho0` gives `F = J rho0 J⁻¹`, so
/// that basis is tried as well.
fn extract(upper: &GeneratorRep) -> Result<(Option<CrossedHomData>, Option<String>)> {
    let sig = *upper.sig();
    let direct = upper
        .iter()
        .all(|(g, m)| rho0(&sig, g).is_ok_and(|r| split_bordered(m).is_ok_and(|p| p.f == r)));
    let rep = if direct {
        upper.clone()
    } else {
        let j = symplectic_form(sig.g);
        let jt = j.direct_sum(&Matrix::identity(1));
        let moved = upper.conjugate(&algebra::inverse(&jt)?)?;
        let ok = moved
            .iter()
            .all(|(g, m)| rho0(&sig, g).is_ok_and(|r| split_bordered(m).is_ok_and(|p| p.f == r)));
        if !ok {
            return Ok((
                None,
                Some("F blocks are not the symplectic images".to_string()),
            ));
        }
        moved
    };
    let values = rep
        .iter()
        .map(|(g, m)| Ok((g, split_bordered(m)?.w)))
        .collect::<Result<Vec<_>>>()?;
    Ok((Some(CrossedHomData::new(sig, values)?), None))
}

/// `((X, w), (0, 1))`.
pub fn upper_block(x: &Matrix, w: &[Scalar]) -> Matrix {
    bordered(x, w, &algebra::zero_vec(w.len()), &Scalar::one())
}

/// `((Y, 0), (ᵗs, 1))`.
pub fn lower_block(y: &Matrix, s: &[Scalar]) -> Matrix {
    bordered(y, &algebra::zero_vec(s.len()), s, &Scalar::one())
}

/// Whether `((X,w),(0,1))` and `((Y,0),(ᵗs,1))` commute, alongside whether
/// `w ᵗs = 0`. For commuting `X`, `Y`, commuting blocks force `w ᵗs = 0`;
/// the converse also needs `Yw = w` and `ᵗsX = ᵗs`.
pub fn mixed_blocks_commute(x: &Matrix, w: &[Scalar], y: &Matrix, s: &[Scalar]) -> (bool, bool) {
    let (u, l) = (upper_block(x, w), lower_block(y, s));
    let commute = &u * &l == &l * &u;
    let outer_zero = algebra::outer(w, s).is_zero();
    (commute, outer_zero)
}
