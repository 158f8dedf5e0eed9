//! Reproducible random instances.
//!
//! The generator is xoshiro256** seeded through SplitMix64 from the 64-bit
//! seed. A uniform double is `(next_u64 >> 11) · 2^-53`; a point of the unit
//! disk is drawn by rejection from the square `[-1, 1)²`, real part first.
//! Each attempt draws, in order: `β1` (`deg1 + 1` coefficients), `β2`
//! (`deg2 + 1`), then `u`, `v`, `w`, each as `deg1 + 1` then `deg2 + 1`
//! coefficients. The chart radius is `1.25 · max(1, max |discriminant zero|)`.
//! Attempts that do not certify are discarded and the stream continues.

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use thiserror::Error;

use super::config::{InstanceConfig, OracleSettings, TangentConfig};
use crate::exactpoly::CPoly1;
use crate::rootsys::AlgebraId;
use crate::surface::{certify_generic, enclosing_radius, GenericityConfig, LocalHitchinData};

type C = Complex64;

pub const DEFAULT_BUDGET: usize = 64;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("degrees must be at least 1 (got deg1 = {0}, deg2 = {1})")]
    Degree(usize, usize),
    #[error("no generic instance after {0} attempts")]
    Exhausted(usize),
}

struct Draw(Xoshiro256StarStar);

impl Draw {
    fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn disk(&mut self) -> C {
        loop {
            let x = 2.0 * self.uniform() - 1.0;
            let y = 2.0 * self.uniform() - 1.0;
            if x * x + y * y < 1.0 {
                return C::new(x, y);
            }
        }
    }

    fn coeffs(&mut self, deg: usize) -> Vec<C> {
        (0..=deg).map(|_| self.disk()).collect()
    }
}

/// Draws instances until one certifies with default thresholds.
pub fn generate(
    algebra: AlgebraId,
    seed: u64,
    deg1: usize,
    deg2: usize,
    budget: usize,
) -> Result<InstanceConfig, GenError> {
    if deg1 < 1 || deg2 < 1 {
        return Err(GenError::Degree(deg1, deg2));
    }
    let mut rng = Draw(Xoshiro256StarStar::seed_from_u64(seed));
    let genericity = GenericityConfig::default();
    for _ in 0..budget {
        let beta1 = rng.coeffs(deg1);
        let beta2 = rng.coeffs(deg2);
        let mut tangent = || TangentConfig(rng.coeffs(deg1), rng.coeffs(deg2));
        let (u, v, w) = (tangent(), tangent(), tangent());
        let (p1, p2) = (CPoly1::new(beta1.clone()), CPoly1::new(beta2.clone()));
        let Ok(radius) = enclosing_radius(algebra, &p1, &p2) else { continue };
        let Ok(data) = LocalHitchinData::new(algebra, radius, p1, p2) else { continue };
        if certify_generic(&data, &genericity).is_ok() {
            return Ok(InstanceConfig {
                algebra,
                radius,
                beta1,
                beta2,
                u,
                v,
                w,
                oracle: OracleSettings::default(),
                genericity,
                seed: Some(seed),
            });
        }
    }
    Err(GenError::Exhausted(budget))
}
