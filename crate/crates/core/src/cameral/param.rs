use num_complex::Complex64;
use serde::Serialize;

use super::{CameralError, CompiledSystem, RamPoint};
use crate::numkernel::{circle_points, laurent_extract, newton2, NewtonOptions};
use crate::surface::Certified;

type C = Complex64;

/// Largest `|t|` used for contours; keeps raw Laurent coefficients at negative
/// indices from amplifying rounding noise by `radius^{-k}`.
pub const MAX_T_RADIUS: f64 = 0.5;

/// Ray sub-steps used to reach the circle from the ramification point.
const RAY_STEPS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParamSample {
    #[serde(with = "crate::cjson::one")]
    pub t: C,
    #[serde(with = "crate::cjson::one")]
    pub z: C,
    #[serde(with = "crate::cjson::pair")]
    pub alpha: [C; 2],
}

/// The cover near a ramification point, sampled on `|t| = radius` where `t` is
/// the vanishing root.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalParam {
    pub ram: RamPoint,
    pub radius: f64,
    pub samples: Vec<ParamSample>,
}

impl LocalParam {
    pub fn z_values(&self) -> Vec<C> {
        self.samples.iter().map(|s| s.z).collect()
    }
}

/// Hyperplane frame of a root `L = a*x1 + b*x2`: `α = t*p0 + s*d` with `L(p0) = 1`, `L(d) = 0`.
fn frame(coeffs: [i64; 2]) -> ([f64; 2], [f64; 2]) {
    let (a, b) = (coeffs[0] as f64, coeffs[1] as f64);
    let n = a * a + b * b;
    ([a / n, b / n], [b, -a])
}

struct Curve<'a> {
    cert: &'a Certified,
    comp: &'static CompiledSystem,
    p0: [f64; 2],
    d: [f64; 2],
}

impl Curve<'_> {
    fn alpha(&self, t: C, s: C) -> [C; 2] {
        [t * self.p0[0] + s * self.d[0], t * self.p0[1] + s * self.d[1]]
    }

    /// Solves `I(t*p0 + s*d) = β(z)` for `(s, z)` from `seed`, residual rows scaled to be relative.
    fn solve(&self, t: C, seed: [C; 2]) -> Result<[C; 2], CameralError> {
        let data = self.cert.data();
        let f = |x: [C; 2]| {
            let (s, z) = (x[0], x[1]);
            let a = self.alpha(t, s);
            let v = self.comp.eval_inv(a);
            let j = self.comp.eval_jac(a);
            let sc = self.comp.inv_scale(a);
            let (b1, db1) = data.beta1.eval_with_derivative(z);
            let (b2, db2) = data.beta2.eval_with_derivative(z);
            let w = [1.0 / (sc[0] + b1.norm()).max(1e-300), 1.0 / (sc[1] + b2.norm()).max(1e-300)];
            let jd = |r: usize| j[r][0] * self.d[0] + j[r][1] * self.d[1];
            (
                [(v[0] - b1) * w[0], (v[1] - b2) * w[1]],
                [[jd(0) * w[0], -db1 * w[0]], [jd(1) * w[1], -db2 * w[1]]],
            )
        };
        newton2(f, seed, NewtonOptions { tol: 1e-12, max_iters: 40, refine: 2 })
            .map(|sol| sol.point)
            .map_err(|source| CameralError::Newton { t, source })
    }
}

/// `dz/dt` at a sample, from differentiating `I(t*p0 + s*d) = β(z)` along the curve.
///
/// Unlike spectral differentiation of the sampled `z`, this keeps its relative
/// accuracy as `t → 0`, where `z - z0 = O(t²)` drowns in the absolute rounding of `z`.
pub fn curve_dz_dt(cert: &Certified, ram: &RamPoint, sample: &ParamSample) -> C {
    let root = cert.system().positive_roots[ram.root_index];
    let (p0, d) = frame(root.coeffs);
    let comp = CompiledSystem::get(cert.data().algebra);
    let j = comp.eval_jac(sample.alpha);
    let (_, db1) = cert.data().beta1.eval_with_derivative(sample.z);
    let (_, db2) = cert.data().beta2.eval_with_derivative(sample.z);
    // [J d, -β'] (s', z')ᵀ = -J p0
    let jd = [j[0][0] * d[0] + j[0][1] * d[1], j[1][0] * d[0] + j[1][1] * d[1]];
    let jp = [j[0][0] * p0[0] + j[0][1] * p0[1], j[1][0] * p0[0] + j[1][1] * p0[1]];
    let det = jd[0] * (-db2) - (-db1) * jd[1];
    (jd[0] * (-jp[1]) - jd[1] * (-jp[0])) / det
}

/// Samples the branch of the cover through `ram` on the circle `|t| = radius`.
///
/// `t` is the vanishing root's value; the solve is seeded at the ramification
/// point, walked out along the positive real `t`-axis and then continued around
/// the circle from the previous samples. Fails on Newton breakdown, on a sheet
/// jump, or when `z(t)` strays halfway to the nearest other singular feature.
pub fn local_param(cert: &Certified, ram: &RamPoint, radius: f64, n: usize) -> Result<LocalParam, CameralError> {
    if n < 4 || !n.is_power_of_two() {
        return Err(crate::numkernel::NumError::NotPowerOfTwo(n).into());
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(crate::numkernel::NumError::BadRadius(radius).into());
    }
    let root = cert.system().positive_roots[ram.root_index];
    let (p0, d) = frame(root.coeffs);
    let curve = Curve { cert, comp: CompiledSystem::get(cert.data().algebra), p0, d };
    let z0 = ram.branch.z0;
    let s0 = (ram.alpha[0] * d[0] + ram.alpha[1] * d[1]) / (d[0] * d[0] + d[1] * d[1]);

    let mut x = [s0, z0];
    for k in 1..=RAY_STEPS {
        let t = C::new(radius * k as f64 / RAY_STEPS as f64, 0.0);
        x = curve.solve(t, x)?;
    }

    let ts = circle_points(C::new(0.0, 0.0), radius, n);
    let mut sol: Vec<[C; 2]> = Vec::with_capacity(n + 1);
    sol.push(x);
    for m in 1..=n {
        let t = if m == n { ts[0] } else { ts[m] };
        let seed = if m >= 2 {
            let (a, b) = (sol[m - 1], sol[m - 2]);
            [a[0] * 2.0 - b[0], a[1] * 2.0 - b[1]]
        } else {
            sol[m - 1]
        };
        sol.push(curve.solve(t, seed)?);
    }

    // sheet jumps: uneven steps, or failure to close up after one turn
    let steps: Vec<f64> = sol.windows(2).map(|w| (w[1][0] - w[0][0]).norm() + (w[1][1] - w[0][1]).norm()).collect();
    let mut sorted = steps.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    let size = 1.0 + s0.norm() + z0.norm();
    if steps.iter().any(|&st| st > 8.0 * median + 1e-12 * size) {
        return Err(CameralError::SheetJump { radius });
    }
    let (first, last) = (sol[0], sol[n]);
    if (first[0] - last[0]).norm() + (first[1] - last[1]).norm() > 1e-8 * size {
        return Err(CameralError::SheetJump { radius });
    }

    let feature = cert.feature_distance(z0);
    let excursion = sol.iter().map(|x| (x[1] - z0).norm()).fold(0.0, f64::max);
    if excursion >= 0.5 * feature {
        return Err(CameralError::RadiusTooLarge { radius, excursion, feature });
    }

    let samples = ts
        .iter()
        .zip(&sol[..n])
        .map(|(&t, x)| ParamSample { t, z: x[1], alpha: curve.alpha(t, x[0]) })
        .collect();
    Ok(LocalParam { ram: *ram, radius, samples })
}

/// Contour radius in `t` for a ramification point.
///
/// Targets `|z(t) - z0| ≈ factor × (distance to nearest other singular feature)`
/// using `z(t) - z0 ≈ c t²`, with `c` read off a pilot circle. Capped at
/// [`MAX_T_RADIUS`].
pub fn contour_radius(cert: &Certified, ram: &RamPoint, factor: f64) -> Result<f64, CameralError> {
    let z0 = ram.branch.z0;
    let rho = factor * cert.feature_distance(z0);
    let mut r = if rho.is_finite() { rho.sqrt().min(MAX_T_RADIUS) } else { MAX_T_RADIUS };
    for _ in 0..40 {
        match local_param(cert, ram, r, 16) {
            Ok(lp) => {
                let l = laurent_extract(&lp.z_values(), r)?;
                let c = l.coeff(2).norm();
                let target = if rho.is_finite() && c > 0.0 { (rho / c).sqrt() } else { MAX_T_RADIUS };
                return Ok(target.min(MAX_T_RADIUS));
            }
            Err(CameralError::Num(e)) => return Err(e.into()),
            Err(_) => r /= 4.0,
        }
    }
    Err(CameralError::NoRadius { z0 })
}
