use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::ring::Ring;
use super::Rational;

/// Univariate polynomial with complex double coefficients, ascending degree.
///
/// Exactly-zero leading coefficients are trimmed, so the zero polynomial has
/// no coefficients at all.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CPoly1 {
    coeffs: Vec<Complex64>,
}

impl CPoly1 {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn from_real(c: &[f64]) -> Self {
        Self::new(c.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The monic polynomial `Π (z - r)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut p = Self::constant(Complex64::new(1.0, 0.0));
        for &r in roots {
            p = &p * &Self::new(vec![-r, Complex64::new(1.0, 0.0)]);
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut dp = zero;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `Σ |a_k| max(1, |z|)^k`, the magnitude scale used for residual tests.
    pub fn abs_scale(&self, z: Complex64) -> f64 {
        let r = z.norm().max(1.0);
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl Add for &CPoly1 {
    type Output = CPoly1;
    fn add(self, rhs: Self) -> CPoly1 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[Complex64], k: usize| v.get(k).copied().unwrap_or_default();
        CPoly1::new((0..n).map(|k| get(&self.coeffs, k) + get(&rhs.coeffs, k)).collect())
    }
}

impl Sub for &CPoly1 {
    type Output = CPoly1;
    fn sub(self, rhs: Self) -> CPoly1 {
        self + &(-rhs)
    }
}

impl Mul for &CPoly1 {
    type Output = CPoly1;
    fn mul(self, rhs: Self) -> CPoly1 {
        if self.is_zero() || rhs.is_zero() {
            return CPoly1::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CPoly1::new(out)
    }
}

impl Neg for &CPoly1 {
    type Output = CPoly1;
    fn neg(self) -> CPoly1 {
        CPoly1 { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for CPoly1 {
    type Output = CPoly1;
    fn add(self, rhs: Self) -> CPoly1 {
        &self + &rhs
    }
}

impl Sub for CPoly1 {
    type Output = CPoly1;
    fn sub(self, rhs: Self) -> CPoly1 {
        &self - &rhs
    }
}

impl Mul for CPoly1 {
    type Output = CPoly1;
    fn mul(self, rhs: Self) -> CPoly1 {
        &self * &rhs
    }
}

impl Neg for CPoly1 {
    type Output = CPoly1;
    fn neg(self) -> CPoly1 {
        -&self
    }
}

impl Ring for CPoly1 {
    fn zero_elem() -> Self {
        CPoly1::zero()
    }
    fn one_elem() -> Self {
        CPoly1::constant(Complex64::new(1.0, 0.0))
    }
    fn from_rational(q: &Rational) -> Self {
        CPoly1::constant(Complex64::from_rational(q))
    }
}

pub fn cpoly_eval(p: &CPoly1, z: Complex64) -> Complex64 {
    p.eval(z)
}

pub fn cpoly_derivative(p: &CPoly1) -> CPoly1 {
    p.derivative()
}
