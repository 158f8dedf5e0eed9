//! Sylvester resultants by fraction-free (Bareiss) elimination.
//!
//! Sign convention: for `p` of degree `m` and `q` of degree `n` in the
//! eliminated variable, the Sylvester matrix has the `n` shifted rows of `p`
//! first. Its determinant is `lc(p)^n · Π q(ρ)` over the roots `ρ` of `p`,
//! so `Res_{x2}(x2 - x1, x2 + x1) = 2*x1`.

use num_traits::Zero;

use super::ring::Ring;
use super::sparse::SparsePoly;
use super::{ExactPolyError, RatPoly2, Rational};

/// A ring with exact division, which is all Bareiss elimination needs.
pub trait ExactRing: Ring + PartialEq {
    fn is_zero_elem(&self) -> bool;
    fn div_exact_elem(&self, d: &Self) -> Option<Self>;
}

impl ExactRing for Rational {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn div_exact_elem(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            None
        } else {
            Some(self / d)
        }
    }
}

impl<const N: usize> ExactRing for SparsePoly<N> {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn div_exact_elem(&self, d: &Self) -> Option<Self> {
        self.div_exact(d)
    }
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn bareiss_det<R: ExactRing>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one_elem();
    }
    let mut negate = false;
    let mut prev = R::one_elem();
    for k in 0..n - 1 {
        if m[k][k].is_zero_elem() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero_elem()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return R::zero_elem(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num
                    .div_exact_elem(&prev)
                    .expect("Bareiss quotient is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant of two polynomials given by ascending coefficient lists.
///
/// Trailing zero coefficients are ignored.
pub fn resultant_from_coeffs<R: ExactRing>(p: &[R], q: &[R]) -> Result<R, ExactPolyError> {
    let trim = |c: &[R]| -> Vec<R> {
        let mut v = c.to_vec();
        while v.last().is_some_and(|x| x.is_zero_elem()) {
            v.pop();
        }
        v
    };
    let (p, q) = (trim(p), trim(q));
    if p.is_empty() || q.is_empty() {
        return Err(ExactPolyError::ZeroInput);
    }
    let (m, n) = (p.len() - 1, q.len() - 1);
    if m == 0 && n == 0 {
        return Err(ExactPolyError::BothConstant);
    }
    let size = m + n;
    let mut syl = vec![vec![R::zero_elem(); size]; size];
    for i in 0..n {
        for (k, c) in p.iter().enumerate() {
            syl[i][i + m - k] = c.clone();
        }
    }
    for j in 0..m {
        for (k, c) in q.iter().enumerate() {
            syl[n + j][j + n - k] = c.clone();
        }
    }
    Ok(bareiss_det(syl))
}

/// `Res_var(p, q)` for bivariate rational polynomials; `var` is 1 or 2.
///
/// The result no longer depends on `var`.
pub fn poly2_eliminate(p: &RatPoly2, q: &RatPoly2, var: usize) -> Result<RatPoly2, ExactPolyError> {
    assert!(var == 1 || var == 2, "variable index must be 1 or 2");
    resultant_from_coeffs(&p.coefficients_in(var - 1), &q.coefficients_in(var - 1))
}
