use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::Rational;

/// A commutative ring that rational polynomials can be evaluated in.
pub trait Ring:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one_elem();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Ring for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Ring for Complex64 {
    fn zero_elem() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_elem() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }
    fn pow(&self, n: u32) -> Self {
        self.powu(n)
    }
}

/// Nearest double to `q`.
pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
