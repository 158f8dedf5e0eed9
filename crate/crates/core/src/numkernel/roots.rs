use num_complex::Complex64;

use super::NumError;
use crate::exactpoly::CPoly1;

const MAX_ABERTH_ITERS: usize = 500;
const MAX_POLISH_ITERS: usize = 8;

/// Roots of a polynomial with their absolute residuals `|p(root)|`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// All roots of `p`, with multiplicity, by Aberth–Ehrlich iteration and Newton polish.
///
/// Every root satisfies `|p(z)| <= tol * p.abs_scale(z)`.
pub fn find_roots(p: &CPoly1, tol: f64) -> Result<RootSet, NumError> {
    let deg = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(NumError::ConstantPolynomial),
    };
    if p.coeffs().iter().any(|c| !c.is_finite()) {
        return Err(NumError::NonFinite);
    }

    // Exact zero roots are split off so the iteration never starts on z = 0 for z^k.
    let zeros = p.coeffs().iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = CPoly1::new(p.coeffs()[zeros..].to_vec());
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if deg > zeros {
        roots.extend(aberth(&reduced));
    }
    for z in roots.iter_mut() {
        *z = polish(p, *z);
    }

    let residuals: Vec<f64> = roots.iter().map(|&z| p.eval(z).norm()).collect();
    let ok = roots
        .iter()
        .zip(&residuals)
        .all(|(&z, &r)| r.is_finite() && r <= tol * p.abs_scale(z));
    if ok {
        Ok(RootSet { roots, residuals })
    } else {
        Err(NumError::RootsNotConverged { roots, residuals })
    }
}

fn aberth(p: &CPoly1) -> Vec<Complex64> {
    let n = p.degree().unwrap_or(0);
    let lead = p.leading();
    let monic = p.scale(lead.inv());
    let dp = monic.derivative();

    // Start on a circle whose radius is the geometric mean of the root moduli.
    let r0 = (monic.coeffs()[0].norm()).powf(1.0 / n as f64).max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(r0, th)
        })
        .collect();
    let mut done = vec![false; n];

    for _ in 0..MAX_ABERTH_ITERS {
        let mut moved = false;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let pv = monic.eval(z[k]);
            if pv.norm() == 0.0 {
                done[k] = true;
                continue;
            }
            let ratio = pv / dp.eval(z[k]);
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d.norm() > 0.0 {
                        sum += d.inv();
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.is_finite() {
                continue;
            }
            z[k] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * z[k].norm().max(f64::MIN_POSITIVE) {
                done[k] = true;
            } else {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    z
}

/// Newton steps accepted only while they reduce the residual.
fn polish(p: &CPoly1, mut z: Complex64) -> Complex64 {
    let mut best = p.eval(z).norm();
    for _ in 0..MAX_POLISH_ITERS {
        let (v, d) = p.eval_with_derivative(z);
        if v.norm() == 0.0 || d.norm() == 0.0 {
            break;
        }
        let cand = z - v / d;
        let r = p.eval(cand).norm();
        if !(r < best) {
            break;
        }
        best = r;
        z = cand;
    }
    z
}
