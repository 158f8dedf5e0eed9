use num_complex::Complex64;
use num_traits::Zero;

use super::poly2::{poly2_compose_linear, qi};
use super::resultant::resultant_from_coeffs;
use super::sparse::SparsePoly;
use super::{CPoly1, ExactPolyError, RatPoly2, Rational};

/// `Res_y(P(s, y) - c1, Q(s, y) - c2)` kept symbolic in the targets `(c1, c2)`.
///
/// `P` and `Q` are the inputs after the shear `x1 = s - k*x2, x2 = y`, so the
/// roots in `s` are the values of `x1 + k*x2` over the fiber `{P = c1, Q = c2}`.
/// With `k = 0` this is the plain elimination of `x2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamResultant {
    shear: Rational,
    /// Coefficient of `s^i`, as a polynomial in `(c1, c2)`.
    coeffs: Vec<RatPoly2>,
}

impl ParamResultant {
    pub fn new(p: &RatPoly2, q: &RatPoly2, shear: Rational) -> Result<Self, ExactPolyError> {
        let m = [[qi(1), -shear.clone()], [qi(0), qi(1)]];
        let lift = |poly: &RatPoly2, target: usize| -> Vec<SparsePoly<3>> {
            let sheared = poly2_compose_linear(poly, &m);
            let mut out: Vec<SparsePoly<3>> = sheared
                .coefficients_in(1)
                .iter()
                .map(|c| SparsePoly::from_terms(c.terms().map(|(e, a)| ([e[0], 0, 0], a.clone()))))
                .collect();
            if out.is_empty() {
                out.push(SparsePoly::zero());
            }
            out[0] = &out[0] - &SparsePoly::var(target);
            out
        };
        let res = resultant_from_coeffs(&lift(p, 1), &lift(q, 2))?;
        let deg = res.degree_in(0).unwrap_or(0) as usize;
        let mut coeffs = vec![RatPoly2::zero(); deg + 1];
        for (e, c) in res.terms() {
            coeffs[e[0] as usize].add_term([e[1], e[2]], c.clone());
        }
        Ok(Self { shear, coeffs })
    }

    pub fn shear(&self) -> &Rational {
        &self.shear
    }

    /// Degree in `s` as a polynomial with symbolic targets.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[RatPoly2] {
        &self.coeffs
    }

    /// Specializes the target values and returns the univariate polynomial in `s`.
    pub fn specialize(&self, c1: Complex64, c2: Complex64) -> CPoly1 {
        CPoly1::new(self.coeffs.iter().map(|c| c.eval(&[c1, c2])).collect())
    }

    /// Exact specialization at rational targets.
    pub fn specialize_exact(&self, c1: &Rational, c2: &Rational) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.coeffs.iter().map(|c| c.eval(&[c1.clone(), c2.clone()])).collect();
        while v.last().is_some_and(|x| x.is_zero()) {
            v.pop();
        }
        v
    }
}
