//! Numerical quadratic-residue oracle for the cubic.
//!
//! At every ramification point the quadratic differential
//! `G = ∂_u log 𝔇 · κ(∇_v λ, ∇_w λ)` is sampled on a small circle in the
//! uniformizer `t` (the vanishing root), and its double-pole coefficient is
//! read off by FFT. Half the sum over all ramification points is the cubic.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cameral::{contour_radius, curve_dz_dt, local_param, ramification_points, CameralError, FiberPoint, RamPoint};
use crate::cubic::{d_disc, BranchTerm, CubicValue};
use crate::exactpoly::{rational_to_f64, FPoly2};
use crate::numkernel::{adaptive_laurent, laurent_extract, spectral_t_derivative, AdaptiveOptions, NumError};
use crate::rootsys::RootSystemData;
use crate::surface::{Certified, LocalHitchinData, TangentData};

type C = Complex64;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("Jacobian singular at alpha = ({a1}, {a2}): at ramification; use local frame")]
    AtRamification { a1: C, a2: C },
    #[error("z = {z} is a zero of the {class} discriminant factor")]
    AtDiscriminantZero { z: C, class: String },
    #[error("pole order mismatch at z0 = {z0}: tail {tail:e} vs |a_-2| = {value:e}")]
    PoleOrder { z0: C, tail: f64, value: f64 },
    #[error(transparent)]
    Cameral(#[from] CameralError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Components of `∇_v λ` in the `dz` frame at a cover point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NablaValue {
    #[serde(with = "crate::cjson::pair")]
    pub components: [C; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ResidueMethod {
    /// `∂_u log 𝔇` in full.
    Full,
    /// Only the polar part of the vanishing class factor.
    Reduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResidueRecord {
    pub ram: RamPoint,
    #[serde(with = "crate::cjson::one")]
    pub value: C,
    /// `max_{k >= 3} |a_{-k}|`.
    pub laurent_tail_bound: f64,
    pub method: ResidueMethod,
    pub radius: f64,
    pub samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleOptions {
    /// Contour target as a fraction of the distance to the nearest other feature.
    pub contour_factor: f64,
    pub adaptive: AdaptiveOptions,
    /// Allowed `tail / |a_{-2}|`.
    pub tail_tol: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { contour_factor: 0.1, adaptive: AdaptiveOptions::default(), tail_tol: 1e-6 }
    }
}

fn kappa(sys: &RootSystemData) -> [[f64; 2]; 2] {
    let k = &sys.killing;
    [[rational_to_f64(&k[0][0]), rational_to_f64(&k[0][1])], [rational_to_f64(&k[1][0]), rational_to_f64(&k[1][1])]]
}

/// `κ(a, b)` for component vectors.
pub fn killing_pair(sys: &RootSystemData, a: [C; 2], b: [C; 2]) -> C {
    let k = kappa(sys);
    let mut s = C::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            s += a[i] * b[j] * k[i][j];
        }
    }
    s
}

/// `-(D𝐈(α))⁻¹ v` without the singularity check.
fn nabla_raw(jac: &[[FPoly2; 2]; 2], alpha: [C; 2], v: (C, C)) -> ([C; 2], C, f64) {
    let j = jac.each_ref().map(|row| row.each_ref().map(|p| p.eval(alpha[0], alpha[1])));
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let scale = (j[0][0].norm() + j[0][1].norm()) * (j[1][0].norm() + j[1][1].norm());
    let x = [(j[1][1] * v.0 - j[0][1] * v.1) / det, (j[0][0] * v.1 - j[1][0] * v.0) / det];
    ([-x[0], -x[1]], det, scale)
}

fn compiled_jacobian(data: &LocalHitchinData) -> [[FPoly2; 2]; 2] {
    let jac = &data.system().jacobian;
    [[FPoly2::from(&jac[0][0]), FPoly2::from(&jac[0][1])], [FPoly2::from(&jac[1][0]), FPoly2::from(&jac[1][1])]]
}

/// `∇_v λ = -(D𝐈)⁻¹ (v1, v2)` at a cover point off the ramification locus.
pub fn nabla_sw(data: &LocalHitchinData, p: &FiberPoint, v: &TangentData) -> Result<NablaValue, OracleError> {
    let (comps, det, scale) = nabla_raw(&compiled_jacobian(data), p.alpha, v.eval(p.z));
    if !(det.norm() > 1e-13 * scale) {
        return Err(OracleError::AtRamification { a1: p.alpha[0], a2: p.alpha[1] });
    }
    Ok(NablaValue { components: comps })
}

/// `∂_u log 𝔇 = Σ_c d𝔇_c(u) / 𝔇_c` at `z`.
pub fn log_deriv_d(data: &LocalHitchinData, u: &TangentData, z: C) -> Result<C, OracleError> {
    let (b1, b2) = data.eval(z);
    let tu = u.eval(z);
    let mut sum = C::new(0.0, 0.0);
    for class in &data.system().classes {
        let f = FPoly2::from(&class.disc_b);
        let val = f.eval(b1, b2);
        if !(val.norm() > 1e-15 * f.abs_eval(b1.norm(), b2.norm())) {
            return Err(OracleError::AtDiscriminantZero { z, class: class.class.to_string() });
        }
        sum += d_disc(class, [b1, b2], tu) / val;
    }
    Ok(sum)
}

/// `t·dz/dt` on the samples; `z0` is removed first so the FFT works on the small part.
fn z_t_derivative(lp: &crate::cameral::LocalParam) -> Result<Vec<C>, NumError> {
    let z0 = lp.ram.branch.z0;
    spectral_t_derivative(&lp.samples.iter().map(|s| s.z - z0).collect::<Vec<_>>())
}

/// Samples `G` on `|t| = radius` with `n` points and extracts its Laurent series.
fn sample_g(
    cert: &Certified,
    ram: &RamPoint,
    jac: &[[FPoly2; 2]; 2],
    tangents: [&TangentData; 3],
    method: ResidueMethod,
    radius: f64,
    n: usize,
) -> Result<(crate::numkernel::LaurentData, f64), OracleError> {
    let data = cert.data();
    let sys = cert.system();
    let [u, v, w] = tangents;
    let lp = local_param(cert, ram, radius, n)?;
    let tdz = z_t_derivative(&lp)?;
    let class = sys.class(ram.class).expect("known class");
    let prefactor = rational_to_f64(&class.reduced_prefactor);
    let mut g = Vec::with_capacity(n);
    for (s, &tdz) in lp.samples.iter().zip(&tdz) {
        let dz = tdz / s.t;
        let (nv, _, _) = nabla_raw(jac, s.alpha, v.eval(s.z));
        let (nw, _, _) = nabla_raw(jac, s.alpha, w.eval(s.z));
        let lead = match method {
            ResidueMethod::Full => log_deriv_d(data, u, s.z)?,
            ResidueMethod::Reduced => {
                let (b1, b2) = data.eval(s.z);
                prefactor * d_disc(class, [b1, b2], u.eval(s.z)) / (b1.powu(sys.b1_power) * s.t * s.t)
            }
        };
        g.push(lead * killing_pair(sys, nv, nw) * dz * dz);
    }
    let gmax = g.iter().map(|x| x.norm()).fold(0.0, f64::max);
    Ok((laurent_extract(&g, radius)?, gmax))
}

/// The quadratic residue of `G` at one ramification point.
pub fn quadratic_residue_at(
    cert: &Certified,
    ram: &RamPoint,
    u: &TangentData,
    v: &TangentData,
    w: &TangentData,
    method: ResidueMethod,
    opts: &OracleOptions,
) -> Result<ResidueRecord, OracleError> {
    let radius = contour_radius(cert, ram, opts.contour_factor)?;
    let jac = compiled_jacobian(cert.data());
    let mut gmax = 0.0;
    let laurent = adaptive_laurent(
        |n| -> Result<_, OracleError> {
            let (l, m) = sample_g(cert, ram, &jac, [u, v, w], method, radius, n)?;
            gmax = m;
            Ok(l)
        },
        -2,
        opts.adaptive,
    )?;
    let value = laurent.coeff(-2);
    let tail = laurent.tail_max(3);
    // rounding of the samples alone puts ~1e-16·max|G|·r^k into a_{-k}
    let floor = 1e-13 * gmax * radius.powi(3);
    if !(tail <= opts.tail_tol * value.norm() + floor) {
        return Err(OracleError::PoleOrder { z0: ram.branch.z0, tail, value: value.norm() });
    }
    Ok(ResidueRecord { ram: *ram, value, laurent_tail_bound: tail, method, radius, samples: laurent.sample_count() })
}

/// Every ramification point of the certified chart, grouped in branch-point order.
pub fn all_ramification_points(cert: &Certified) -> Result<Vec<RamPoint>, OracleError> {
    let mut out = Vec::new();
    for bp in cert.branch_points() {
        out.extend(ramification_points(cert, bp)?);
    }
    Ok(out)
}

/// Residues at all ramification points, computed in parallel.
pub fn all_residues(
    cert: &Certified,
    u: &TangentData,
    v: &TangentData,
    w: &TangentData,
    method: ResidueMethod,
    opts: &OracleOptions,
) -> Result<Vec<ResidueRecord>, OracleError> {
    let rams = all_ramification_points(cert)?;
    rams.par_iter().map(|r| quadratic_residue_at(cert, r, u, v, w, method, opts)).collect()
}

/// The cubic as half the sum of residues, with the records it came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleCubic {
    pub value: CubicValue,
    pub records: Vec<ResidueRecord>,
}

/// `(1/2) Σ_x Res²_x G` over all ramification points.
pub fn bp_cubic(
    cert: &Certified,
    u: &TangentData,
    v: &TangentData,
    w: &TangentData,
    method: ResidueMethod,
    opts: &OracleOptions,
) -> Result<OracleCubic, OracleError> {
    let records = all_residues(cert, u, v, w, method, opts)?;
    let terms = cert
        .branch_points()
        .iter()
        .map(|bp| {
            let contribution = records.iter().filter(|r| r.ram.branch.z0 == bp.z0).map(|r| r.value).sum::<C>() * 0.5;
            BranchTerm { z0: bp.z0, class: bp.class, contribution }
        })
        .collect();
    Ok(OracleCubic { value: CubicValue::from_terms(cert.data().algebra, terms), records })
}

/// Convergence of the frame-corrected `∇_v λ · dz/dt` to the tabulated direction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NablaLimit {
    pub ram: RamPoint,
    #[serde(with = "crate::cjson::pair")]
    pub expected: [C; 2],
    pub radii: Vec<f64>,
    /// Relative error at each radius, up to an overall sign.
    pub errors: Vec<f64>,
}

impl NablaLimit {
    pub fn monotone(&self) -> bool {
        self.errors.windows(2).all(|w| w[1] < w[0])
    }

    pub fn final_error(&self) -> f64 {
        self.errors.last().copied().unwrap_or(f64::INFINITY)
    }
}

/// Radius schedule for [`nabla_limit_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitOptions {
    pub min_halvings: usize,
    pub max_halvings: usize,
    /// Stop halving once the error is below this (after `min_halvings`).
    pub target: f64,
}

impl Default for LimitOptions {
    fn default() -> Self {
        // Below ~1e-7 the solve noise, which grows like 1/r, takes over.
        Self { min_halvings: 3, max_halvings: 12, target: 2.5e-7 }
    }
}

/// Follows `∇_v λ · dz/dt` at `t → 0` by repeatedly halving the contour radius.
///
/// The expected limit is `d𝔇_c(v) / j¹(𝔇_c)` times the tabulated direction of
/// the vanishing root. Values at `t` and `-t` are averaged, which cancels the
/// odd term, so the error is `O(r²)`. `dz/dt` comes from the curve equations
/// rather than the samples, to stay accurate at tiny radii.
pub fn nabla_limit_check(
    cert: &Certified,
    ram: &RamPoint,
    v: &TangentData,
    limit: &LimitOptions,
    opts: &OracleOptions,
) -> Result<NablaLimit, OracleError> {
    const N: usize = 32;
    let data = cert.data();
    let sys = cert.system();
    let class = sys.class(ram.class).expect("known class");
    let z0 = ram.branch.z0;
    let (b1, b2) = data.eval(z0);
    let scalar = d_disc(class, [b1, b2], v.eval(z0)) / ram.branch.jet1;
    let table = &sys.nabla_table[ram.root_index];
    let expected = [scalar * rational_to_f64(&table[0]), scalar * rational_to_f64(&table[1])];
    let enorm = (expected[0].norm_sqr() + expected[1].norm_sqr()).sqrt().max(f64::MIN_POSITIVE);
    let jac = compiled_jacobian(data);

    let mut radius = contour_radius(cert, ram, opts.contour_factor)?;
    let (mut radii, mut errors) = (Vec::new(), Vec::new());
    for k in 0..=limit.max_halvings {
        let lp = local_param(cert, ram, radius, N)?;
        let at = |m: usize| {
            let s = &lp.samples[m];
            let (nv, _, _) = nabla_raw(&jac, s.alpha, v.eval(s.z));
            let dz = curve_dz_dt(cert, ram, s);
            [nv[0] * dz, nv[1] * dz]
        };
        let (p, q) = (at(0), at(N / 2));
        let avg = [(p[0] + q[0]) * 0.5, (p[1] + q[1]) * 0.5];
        let err = |sign: f64| {
            let d = [avg[0] - expected[0] * sign, avg[1] - expected[1] * sign];
            (d[0].norm_sqr() + d[1].norm_sqr()).sqrt() / enorm
        };
        radii.push(radius);
        let e = err(1.0).min(err(-1.0));
        errors.push(e);
        if k >= limit.min_halvings && e <= limit.target {
            break;
        }
        radius /= 2.0;
    }
    Ok(NablaLimit { ram: *ram, expected, radii, errors })
}

#[cfg(test)]
mod tests;
