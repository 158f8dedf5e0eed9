//! Numeric cameral cover over the chart: fibers, ramification points and
//! local parametrizations by the vanishing root.

mod fiber;
mod param;
mod ram;


use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{q, ExactPolyError, FPoly2, ParamResultant};
use crate::numkernel::NumError;
use crate::rootsys::{self, AlgebraId, LengthClass};
use crate::surface::BranchPoint;

pub use fiber::{cluster_distinct, fiber, fiber_over};
pub use param::{contour_radius, curve_dz_dt, local_param, LocalParam, ParamSample};
pub use ram::ramification_points;

type C = Complex64;

/// A point of the cover: `I(alpha) = (β1(z), β2(z))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FiberPoint {
    #[serde(with = "crate::cjson::one")]
    pub z: C,
    #[serde(with = "crate::cjson::pair")]
    pub alpha: [C; 2],
    /// Largest relative residual of the two invariant equations.
    pub residual: f64,
}

/// A point of the cover where the positive root `root_index` vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RamPoint {
    pub branch: BranchPoint,
    pub root_index: usize,
    #[serde(with = "crate::cjson::pair")]
    pub alpha: [C; 2],
    pub class: LengthClass,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CameralError {
    #[error("fiber residual {worst:e} exceeds tolerance at z = {z}")]
    FiberResidual { z: C, worst: f64 },
    #[error("fiber has {got} points, expected {expected}")]
    FiberCount { got: usize, expected: usize },
    #[error("ramification compatibility residual {residual:e} for root {root} at z0 = {z0}")]
    Compatibility { root: String, z0: C, residual: f64 },
    #[error("expected {expected} ramification points over z0 = {z0}, found {got}")]
    RamCount { z0: C, got: usize, expected: usize },
    #[error("local parametrization failed at t = {t}: {source}; use a smaller radius")]
    Newton { t: C, source: NumError },
    #[error("sheet jump on the circle |t| = {radius:e}; use a smaller radius")]
    SheetJump { radius: f64 },
    #[error("contour |t| = {radius:e} leaves the chart of the ramification point (excursion {excursion:e} vs nearest feature {feature:e}); use a smaller radius")]
    RadiusTooLarge { radius: f64, excursion: f64, feature: f64 },
    #[error("no admissible contour radius found near z0 = {z0}")]
    NoRadius { z0: C },
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Exact(#[from] ExactPolyError),
}

/// Shear `k` of the elimination coordinate `s = x1 + k*x2`; regular for all three algebras.
pub fn elimination_shear() -> crate::exactpoly::Rational {
    q(3, 7)
}

/// Float copies of the invariants, their Jacobian and the fiber resultant.
#[derive(Debug)]
pub struct CompiledSystem {
    pub id: AlgebraId,
    pub inv: [FPoly2; 2],
    pub jac: [[FPoly2; 2]; 2],
    pub resultant: ParamResultant,
    /// `I(s - k*y, y)` split by powers of `y`, for back-substitution.
    pub sheared: [Vec<FPoly2>; 2],
    pub shear: f64,
}

impl CompiledSystem {
    pub fn get(id: AlgebraId) -> &'static CompiledSystem {
        static CELLS: [OnceLock<CompiledSystem>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        let idx = AlgebraId::ALL.iter().position(|&a| a == id).unwrap();
        CELLS[idx].get_or_init(|| Self::build(id))
    }

    fn build(id: AlgebraId) -> Self {
        use crate::exactpoly::{poly2_compose_linear, qi, rational_to_f64};
        let sys = rootsys::get(id);
        let k = elimination_shear();
        let resultant = ParamResultant::new(&sys.inv1, &sys.inv2, k.clone()).expect("invariants are nonconstant");
        let m = [[qi(1), -k.clone()], [qi(0), qi(1)]];
        let split = |p| -> Vec<FPoly2> {
            poly2_compose_linear(p, &m).coefficients_in(1).iter().map(FPoly2::from).collect()
        };
        Self {
            id,
            inv: [FPoly2::from(&sys.inv1), FPoly2::from(&sys.inv2)],
            jac: [
                [FPoly2::from(&sys.jacobian[0][0]), FPoly2::from(&sys.jacobian[0][1])],
                [FPoly2::from(&sys.jacobian[1][0]), FPoly2::from(&sys.jacobian[1][1])],
            ],
            sheared: [split(&sys.inv1), split(&sys.inv2)],
            resultant,
            shear: rational_to_f64(&k),
        }
    }

    pub fn eval_inv(&self, a: [C; 2]) -> [C; 2] {
        [self.inv[0].eval(a[0], a[1]), self.inv[1].eval(a[0], a[1])]
    }

    pub fn eval_jac(&self, a: [C; 2]) -> [[C; 2]; 2] {
        let e = |p: &FPoly2| p.eval(a[0], a[1]);
        [[e(&self.jac[0][0]), e(&self.jac[0][1])], [e(&self.jac[1][0]), e(&self.jac[1][1])]]
    }

    /// Rounding scale of `I_k(a)`: the absolute invariant at `(|a|, |a|)`, so
    /// it stays meaningful where `I_k` vanishes on a root hyperplane.
    pub fn inv_scale(&self, a: [C; 2]) -> [f64; 2] {
        let r = a[0].norm().max(a[1].norm());
        [self.inv[0].abs_eval(r, r), self.inv[1].abs_eval(r, r)]
    }

    /// Max over `k` of `|I_k(a) - c_k| / (scale_k(a) + |c_k|)`.
    pub fn relative_residual(&self, a: [C; 2], c: [C; 2]) -> f64 {
        let v = self.eval_inv(a);
        let s = self.inv_scale(a);
        (0..2)
            .map(|k| (v[k] - c[k]).norm() / (s[k] + c[k].norm()).max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }
}
