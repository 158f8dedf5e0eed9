use num_traits::{One, Zero};

use super::sparse::SparsePoly;
use super::{ExactPolyError, Rational};

/// Bivariate rational polynomial in `(x1, x2)`.
pub type RatPoly2 = SparsePoly<2>;

/// 2×2 rational matrix, row-major.
pub type RatMat2 = [[Rational; 2]; 2];

/// Arithmetic selector used by [`poly2_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly2_arith(a: &RatPoly2, b: &RatPoly2, op: ArithOp) -> RatPoly2 {
    match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    }
}

/// `p/q` as a rational.
pub fn q(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn qi(p: i64) -> Rational {
    Rational::from_integer(p.into())
}

pub fn mat2(a: [[i64; 2]; 2]) -> RatMat2 {
    [[qi(a[0][0]), qi(a[0][1])], [qi(a[1][0]), qi(a[1][1])]]
}

pub fn mat2_identity() -> RatMat2 {
    mat2([[1, 0], [0, 1]])
}

pub fn mat2_mul(a: &RatMat2, b: &RatMat2) -> RatMat2 {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat2_det(a: &RatMat2) -> Rational {
    &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]
}

pub fn x1() -> RatPoly2 {
    RatPoly2::var(0)
}

pub fn x2() -> RatPoly2 {
    RatPoly2::var(1)
}

/// The linear form `a*x1 + b*x2`.
pub fn linear_form(a: i64, b: i64) -> RatPoly2 {
    RatPoly2::from_int_terms(&[([1, 0], a), ([0, 1], b)])
}

/// `p(m·(x1, x2)ᵀ)`.
pub fn poly2_compose_linear(p: &RatPoly2, m: &RatMat2) -> RatPoly2 {
    let row = |r: &[Rational; 2]| {
        RatPoly2::from_terms([([1, 0], r[0].clone()), ([0, 1], r[1].clone())])
    };
    p.substitute(&[row(&m[0]), row(&m[1])])
}

/// Partial derivative; `var` is 1 or 2.
pub fn poly2_partial(p: &RatPoly2, var: usize) -> RatPoly2 {
    assert!(var == 1 || var == 2, "variable index must be 1 or 2");
    p.partial(var - 1)
}

/// Restricts `p` to the line `form = 0`.
///
/// For `form = a*x1 + b*x2` this substitutes `x1 = -(b/a) x2` when `a != 0`
/// and `x2 = 0` otherwise, so the result is a polynomial in the surviving variable.
pub fn poly2_reduce_mod_linear(p: &RatPoly2, form: &RatPoly2) -> Result<RatPoly2, ExactPolyError> {
    if form.is_zero() || !form.is_homogeneous_of(1) {
        return Err(ExactPolyError::NotHyperplane(form.to_string()));
    }
    let a = form.coeff(&[1, 0]);
    let b = form.coeff(&[0, 1]);
    let sub = if !a.is_zero() {
        [RatPoly2::monomial([0, 1], -(b / a)), x2()]
    } else {
        [x1(), RatPoly2::zero()]
    };
    Ok(p.substitute(&sub))
}

/// Exact 2×2 matrix inverse, if invertible.
pub fn mat2_inverse(a: &RatMat2) -> Option<RatMat2> {
    let d = mat2_det(a);
    if d.is_zero() {
        return None;
    }
    let inv = Rational::one() / d;
    Some([
        [&a[1][1] * &inv, -(&a[0][1] * &inv)],
        [-(&a[1][0] * &inv), &a[0][0] * &inv],
    ])
}
