//! Floating-point kernels: polynomial roots, 2×2 Newton, Laurent extraction.

mod laurent;
mod newton;
mod roots;

#[cfg(test)]
mod tests;

use num_complex::Complex64;
use thiserror::Error;

pub use laurent::{
    circle_points, laurent_extract, laurent_extract_centered, spectral_t_derivative, LaurentData,
};
pub use newton::{newton2, NewtonOptions, NewtonSolution};
pub use roots::{find_roots, RootSet};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumError {
    #[error("constant polynomial has no roots")]
    ConstantPolynomial,
    #[error("non-finite coefficient")]
    NonFinite,
    #[error("root finder did not converge; best residuals {residuals:?}")]
    RootsNotConverged { roots: Vec<Complex64>, residuals: Vec<f64> },
    #[error("singular Jacobian at {last:?} (residual {residual:e})")]
    SingularJacobian { last: [Complex64; 2], residual: f64 },
    #[error("Newton iteration diverged at {last:?} (residual {residual:e})")]
    NewtonDiverged { last: [Complex64; 2], residual: f64 },
    #[error("sample count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("invalid contour radius {0}")]
    BadRadius(f64),
    #[error("coefficient a_{index} not stable at N = {samples}: last change {change:e}")]
    NotStabilized { index: i64, samples: usize, change: f64 },
}

/// Sample-count schedule for [`adaptive_laurent`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdaptiveOptions {
    pub n0: usize,
    pub n_max: usize,
    /// Relative change of the watched coefficient that counts as converged.
    pub rel_tol: f64,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self { n0: 64, n_max: 4096, rel_tol: 1e-10 }
    }
}

/// Doubles the sample count until coefficient `k` stops moving.
///
/// `extract(n)` must sample the same function on the same circle with `n` points.
pub fn adaptive_laurent<F, E>(mut extract: F, k: i64, opts: AdaptiveOptions) -> Result<LaurentData, E>
where
    F: FnMut(usize) -> Result<LaurentData, E>,
    E: From<NumError>,
{
    let mut n = opts.n0;
    let mut prev = extract(n)?;
    loop {
        if n * 2 > opts.n_max {
            return Err(NumError::NotStabilized { index: k, samples: n, change: f64::NAN }.into());
        }
        n *= 2;
        let next = extract(n)?;
        let (a, b) = (prev.coeff(k), next.coeff(k));
        let change = (a - b).norm();
        // absolute floor: a coefficient that is zero up to rounding of the samples
        let floor = 1e-14 * next.coefficients.values().map(|c| c.norm()).fold(0.0, f64::max);
        if change <= opts.rel_tol * b.norm() || change <= floor {
            return Ok(next);
        }
        if n * 2 > opts.n_max {
            return Err(NumError::NotStabilized { index: k, samples: n, change }.into());
        }
        prev = next;
    }
}
