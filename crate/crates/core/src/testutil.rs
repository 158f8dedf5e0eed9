//! Shared fixtures for unit tests.

use num_complex::Complex64;

use crate::exactpoly::CPoly1;
use crate::rootsys::AlgebraId;
use crate::surface::{certify_generic, enclosing_radius, Certified, GenericityConfig, LocalHitchinData, TangentData};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn certified(alg: AlgebraId, r: f64, b1: &[Complex64], b2: &[Complex64]) -> Certified {
    let (p1, p2) = (CPoly1::new(b1.to_vec()), CPoly1::new(b2.to_vec()));
    let r = r.max(enclosing_radius(alg, &p1, &p2).unwrap());
    let d = LocalHitchinData::new(alg, r, p1, p2).unwrap();
    certify_generic(&d, &GenericityConfig::default()).unwrap()
}

pub fn sample_instance(alg: AlgebraId) -> Certified {
    match alg {
        AlgebraId::G2 => certified(alg, 1.0, &[c(1.0, 0.2), c(0.3, -0.1)], &[c(-0.05, 0.02), c(0.6, 0.1), c(0.1, 0.3)]),
        AlgebraId::A2 => certified(alg, 3.0, &[c(0.8, 0.1), c(0.2, 0.3)], &[c(0.3, -0.2), c(0.4, 0.1)]),
        AlgebraId::B2 => certified(alg, 3.0, &[c(1.0, -0.3), c(0.25, 0.4)], &[c(0.1, 0.05), c(0.3, -0.2), c(0.05, 0.1)]),
    }
}

pub fn tangent(a: &[Complex64], b: &[Complex64]) -> TangentData {
    TangentData::new(CPoly1::new(a.to_vec()), CPoly1::new(b.to_vec()))
}

/// Three fixed, unrelated tangent vectors.
pub fn sample_tangents() -> [TangentData; 3] {
    [
        tangent(&[c(0.7, -0.2), c(0.1, 0.4)], &[c(-0.3, 0.5), c(0.2, 0.0), c(0.1, -0.1)]),
        tangent(&[c(-0.4, 0.1)], &[c(0.9, 0.3), c(-0.2, 0.2)]),
        tangent(&[c(0.2, 0.6), c(-0.5, 0.1)], &[c(0.4, -0.7)]),
    ]
}

/// A certified chart from raw coefficient pairs, or `None` if it is not generic.
pub fn try_certify(alg: AlgebraId, b1: &[(f64, f64)], b2: &[(f64, f64)]) -> Option<Certified> {
    let p = |v: &[(f64, f64)]| CPoly1::new(v.iter().map(|&(a, b)| c(a, b)).collect());
    let (p1, p2) = (p(b1), p(b2));
    let r = enclosing_radius(alg, &p1, &p2).ok()?;
    let d = LocalHitchinData::new(alg, r, p1, p2).ok()?;
    certify_generic(&d, &GenericityConfig::default()).ok()
}

pub fn tangent_from(a: &[(f64, f64)], b: &[(f64, f64)]) -> TangentData {
    let p = |v: &[(f64, f64)]| CPoly1::new(v.iter().map(|&(x, y)| c(x, y)).collect());
    TangentData::new(p(a), p(b))
}

pub mod strategies {
    use proptest::prelude::*;

    pub fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..=max_len)
    }

    pub fn algebra() -> impl Strategy<Value = crate::rootsys::AlgebraId> {
        prop::sample::select(crate::rootsys::AlgebraId::ALL.to_vec())
    }
}
