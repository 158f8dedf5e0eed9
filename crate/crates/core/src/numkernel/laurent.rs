use std::collections::BTreeMap;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::NumError;

/// Laurent coefficients of a function sampled on the circle `|t - center| = radius`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentData {
    pub center: Complex64,
    pub radius: f64,
    /// `a_k` for `k` in `[-N/2, N/2)`.
    pub coefficients: BTreeMap<i64, Complex64>,
}

impl LaurentData {
    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coefficients.get(&k).copied().unwrap_or_default()
    }

    pub fn sample_count(&self) -> usize {
        self.coefficients.len()
    }

    /// `max_{k <= -k0} |a_k|` (0 if there are no such indices).
    pub fn tail_max(&self, k0: i64) -> f64 {
        self.coefficients.range(..=-k0).map(|(_, a)| a.norm()).fold(0.0, f64::max)
    }

    /// Evaluates the truncated series at `t`.
    pub fn eval(&self, t: Complex64) -> Complex64 {
        let s = t - self.center;
        self.coefficients.iter().map(|(&k, &a)| a * s.powi(k as i32)).sum()
    }

    /// Derivative of the truncated series at `t`, dropping the unpaired Nyquist term.
    pub fn eval_derivative(&self, t: Complex64) -> Complex64 {
        let n = self.sample_count() as i64;
        let s = t - self.center;
        self.coefficients
            .iter()
            .filter(|(&k, _)| k != -n / 2)
            .map(|(&k, &a)| a * k as f64 * s.powi(k as i32 - 1))
            .sum()
    }
}

/// Samples `f` at `t_m = center + radius * e^{2πi m/N}`.
pub fn circle_points(center: Complex64, radius: f64, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|m| center + Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * m as f64 / n as f64))
        .collect()
}

/// Laurent coefficients from equiangular samples by one FFT:
/// `a_k = (1/N) Σ_m s_m e^{-2πikm/N} / radius^k`.
pub fn laurent_extract(samples: &[Complex64], radius: f64) -> Result<LaurentData, NumError> {
    laurent_extract_centered(samples, Complex64::new(0.0, 0.0), radius)
}

pub fn laurent_extract_centered(
    samples: &[Complex64],
    center: Complex64,
    radius: f64,
) -> Result<LaurentData, NumError> {
    let n = samples.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(NumError::NotPowerOfTwo(n));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(NumError::BadRadius(radius));
    }
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let half = (n / 2) as i64;
    let coefficients = (-half..half)
        .map(|k| {
            let idx = k.rem_euclid(n as i64) as usize;
            (k, buf[idx] / n as f64 / radius.powi(k as i32))
        })
        .collect();
    Ok(LaurentData { center, radius, coefficients })
}

/// Values of `t·f'(t)` at the sample points, by spectral differentiation.
///
/// The unpaired Nyquist mode is dropped, so this is exact for trigonometric
/// polynomials of degree below `N/2`.
pub fn spectral_t_derivative(samples: &[Complex64]) -> Result<Vec<Complex64>, NumError> {
    let n = samples.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(NumError::NotPowerOfTwo(n));
    }
    let mut planner = FftPlanner::new();
    let mut buf = samples.to_vec();
    planner.plan_fft_forward(n).process(&mut buf);
    let half = (n / 2) as i64;
    for (idx, c) in buf.iter_mut().enumerate() {
        let k = if (idx as i64) < half { idx as i64 } else { idx as i64 - n as i64 };
        *c *= if k == -half { 0.0 } else { k as f64 / n as f64 };
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    Ok(buf)
}
