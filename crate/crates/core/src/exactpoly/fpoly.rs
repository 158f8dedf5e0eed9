use num_complex::Complex64;

use super::ring::rational_to_f64;
use super::RatPoly2;

const MAX_DEG: usize = 24;

/// Floating-point copy of a [`RatPoly2`] for fast repeated evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct FPoly2 {
    terms: Vec<([u32; 2], f64)>,
    deg: [usize; 2],
}

impl From<&RatPoly2> for FPoly2 {
    fn from(p: &RatPoly2) -> Self {
        let terms: Vec<_> = p.terms().map(|(e, c)| (*e, rational_to_f64(c))).collect();
        let deg = [
            p.degree_in(0).unwrap_or(0) as usize,
            p.degree_in(1).unwrap_or(0) as usize,
        ];
        assert!(deg[0] < MAX_DEG && deg[1] < MAX_DEG, "degree too large for FPoly2");
        Self { terms, deg }
    }
}

impl FPoly2 {
    pub fn eval(&self, x1: Complex64, x2: Complex64) -> Complex64 {
        let mut p1 = [Complex64::new(1.0, 0.0); MAX_DEG];
        let mut p2 = [Complex64::new(1.0, 0.0); MAX_DEG];
        for k in 1..=self.deg[0] {
            p1[k] = p1[k - 1] * x1;
        }
        for k in 1..=self.deg[1] {
            p2[k] = p2[k - 1] * x2;
        }
        self.terms
            .iter()
            .map(|(e, c)| p1[e[0] as usize] * p2[e[1] as usize] * *c)
            .sum()
    }

    /// `Σ |c| |x1|^i |x2|^j`, the rounding-error scale of [`FPoly2::eval`].
    pub fn abs_eval(&self, x1: f64, x2: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.abs() * x1.powi(e[0] as i32) * x2.powi(e[1] as i32))
            .sum()
    }
}
