use std::fmt;

use serde::{Deserialize, Serialize};

use super::Scalar;

/// Dense univariate polynomial, coefficients lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    /// Trailing zero coefficients are dropped; the zero polynomial is `[]`.
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    /// `(x - root)^n`, expanded by the binomial theorem.
    pub fn power_of_linear(root: &Scalar, n: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); n + 1];
        let neg_root = -root;
        let mut binom = Scalar::one();
        for k in 0..=n {
            // coefficient of x^(n-k) is C(n,k) (-root)^k
            coeffs[n - k] = &binom * &neg_root.pow(k as u32);
            binom = &(&binom * &Scalar::from_int((n - k) as i64)) / &Scalar::from_int(k as i64 + 1);
        }
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Divides by `(x - root)`, returning quotient and remainder.
    pub fn div_linear(&self, root: &Scalar) -> (Poly, Scalar) {
        if self.coeffs.is_empty() {
            return (Poly::new(vec![]), Scalar::zero());
        }
        let n = self.coeffs.len() - 1;
        let mut quotient = vec![Scalar::zero(); n];
        let mut carry = Scalar::zero();
        for k in (0..=n).rev() {
            let value = &self.coeffs[k] + &(&carry * root);
            if k == 0 {
                return (Poly::new(quotient), value);
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Largest `k` with `(x - root)^k` dividing `self` (0 for the zero polynomial).
    pub fn multiplicity_of_root(&self, root: &Scalar) -> usize {
        let mut p = self.clone();
        let mut k = 0;
        while p.degree().is_some_and(|d| d > 0) {
            let (q, r) = p.div_linear(root);
            if !r.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
