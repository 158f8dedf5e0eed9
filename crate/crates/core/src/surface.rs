//! Local model of the Hitchin base: a coordinate disk with polynomial
//! coefficient functions, discriminant factors and genericity certification.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{CPoly1, RatPoly2};
use crate::numkernel::{find_roots, NumError};
use crate::rootsys::{self, AlgebraId, LengthClass, RootSysError, RootSystemData};

type C = Complex64;

/// Coordinate disk `|z| < radius`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskChart {
    radius: f64,
}

impl DiskChart {
    pub fn new(radius: f64) -> Result<Self, SurfaceError> {
        if radius > 0.0 && radius.is_finite() {
            Ok(Self { radius })
        } else {
            Err(SurfaceError::BadRadius(radius))
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, z: C) -> bool {
        z.norm() < self.radius
    }
}

/// A point `b = (β1(z), β2(z))` of the Hitchin base in one chart.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalHitchinData {
    pub algebra: AlgebraId,
    pub chart: DiskChart,
    pub beta1: CPoly1,
    pub beta2: CPoly1,
}

/// A tangent vector `(u1(z), u2(z))` at a base point.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TangentData {
    pub comp1: CPoly1,
    pub comp2: CPoly1,
}

impl TangentData {
    pub fn new(comp1: CPoly1, comp2: CPoly1) -> Self {
        Self { comp1, comp2 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn eval(&self, z: C) -> (C, C) {
        (self.comp1.eval(z), self.comp2.eval(z))
    }

    /// `λ·self + other`.
    pub fn axpy(&self, lambda: C, other: &TangentData) -> TangentData {
        TangentData {
            comp1: &self.comp1.scale(lambda) + &other.comp1,
            comp2: &self.comp2.scale(lambda) + &other.comp2,
        }
    }
}

/// A simple zero of one discriminant factor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BranchPoint {
    #[serde(with = "crate::cjson::one")]
    pub z0: C,
    pub class: LengthClass,
    /// Derivative of the vanishing factor at `z0`.
    #[serde(with = "crate::cjson::one")]
    pub jet1: C,
    /// `|factor(z0)|` after root polishing.
    pub factor_residual: f64,
}

/// Thresholds for [`certify_generic`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenericityConfig {
    /// Lower bound for `|factor'(z0)|` and `|β1(z0)|`.
    pub eps: f64,
    /// Minimum separation of distinct zeros, as a fraction of the chart radius.
    pub separation: f64,
    /// Relative residual accepted from the root finder.
    pub root_tol: f64,
}

impl Default for GenericityConfig {
    fn default() -> Self {
        Self { eps: 1e-8, separation: 1e-3, root_tol: 1e-12 }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenericityError {
    #[error("zero factor: the {class} discriminant factor vanishes identically")]
    ZeroFactor { class: LengthClass },
    #[error("simplicity: {class} factor has a multiple zero near {z0} (|derivative| = {derivative:e})")]
    Simplicity { class: LengthClass, z0: C, derivative: f64 },
    #[error("separation: zeros {a} ({class_a}) and {b} ({class_b}) are closer than {min_dist:e}")]
    Separation { a: C, class_a: LengthClass, b: C, class_b: LengthClass, min_dist: f64 },
    #[error("b1 vanishes: |beta1({z0})| = {value:e} at a branch point")]
    B1Vanishes { z0: C, value: f64 },
    #[error("b1/b2 zeros not disjoint: beta1 and beta2 share the zero near {z0}")]
    B1B2NotDisjoint { z0: C },
    #[error("containment: zero {z0} of the {class} factor lies outside the disk of radius {radius}")]
    OutsideDisk { z0: C, class: LengthClass, radius: f64 },
    #[error("root finding failed: {0}")]
    Roots(#[from] NumError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("chart radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error(transparent)]
    RootSys(#[from] RootSysError),
}

impl LocalHitchinData {
    pub fn new(algebra: AlgebraId, radius: f64, beta1: CPoly1, beta2: CPoly1) -> Result<Self, SurfaceError> {
        Ok(Self { algebra, chart: DiskChart::new(radius)?, beta1, beta2 })
    }

    pub fn system(&self) -> &'static RootSystemData {
        rootsys::get(self.algebra)
    }

    pub fn eval(&self, z: C) -> (C, C) {
        (self.beta1.eval(z), self.beta2.eval(z))
    }

    pub fn eval_derivative(&self, z: C) -> (C, C) {
        (self.beta1.eval_with_derivative(z).1, self.beta2.eval_with_derivative(z).1)
    }
}

/// Each class factor composed with `(β1(z), β2(z))`.
///
/// Leading coefficients at rounding level are dropped: composing with
/// `τ(β)` cancels the top terms exactly, and the float residue would otherwise
/// show up as a spurious zero near infinity.
pub fn discriminant_in_z(data: &LocalHitchinData) -> Vec<(LengthClass, CPoly1)> {
    let at = [data.beta1.clone(), data.beta2.clone()];
    let abs = |p: &CPoly1| CPoly1::new(p.coeffs().iter().map(|z| C::new(z.norm(), 0.0)).collect());
    let abs_at = [abs(&data.beta1), abs(&data.beta2)];
    data.system()
        .classes
        .iter()
        .map(|c| {
            let f = c.disc_b.eval(&at);
            let abs_disc = RatPoly2::from_terms(c.disc_b.terms().map(|(e, q)| (*e, num_traits::Signed::abs(q))));
            let bound = abs_disc.eval(&abs_at);
            let mut coeffs = f.into_coeffs();
            while let Some(top) = coeffs.last() {
                let k = coeffs.len() - 1;
                let scale = bound.coeffs().get(k).map_or(0.0, |b| b.re);
                if top.norm() > 64.0 * f64::EPSILON * scale {
                    break;
                }
                coeffs.pop();
            }
            (c.class, CPoly1::new(coeffs))
        })
        .collect()
}

/// A chart radius enclosing every zero of every discriminant factor:
/// `1.25 · max(1, max |zero|)`.
pub fn enclosing_radius(algebra: AlgebraId, beta1: &CPoly1, beta2: &CPoly1) -> Result<f64, GenericityError> {
    let probe = LocalHitchinData { algebra, chart: DiskChart { radius: 1.0 }, beta1: beta1.clone(), beta2: beta2.clone() };
    let mut far: f64 = 1.0;
    for (class, f) in discriminant_in_z(&probe) {
        if f.is_zero() {
            return Err(GenericityError::ZeroFactor { class });
        }
        if f.degree().unwrap_or(0) >= 1 {
            far = find_roots(&f, 1e-12)?.roots.iter().map(|z| z.norm()).fold(far, f64::max);
        }
    }
    Ok(1.25 * far)
}

/// Data that passed [`certify_generic`], with its branch points.
#[derive(Clone, Debug, PartialEq)]
pub struct Certified {
    data: LocalHitchinData,
    branch_points: Vec<BranchPoint>,
    /// Zeros of `β1` (where the reduced residue form has poles).
    beta1_zeros: Vec<C>,
    config: GenericityConfig,
}

impl Certified {
    pub fn data(&self) -> &LocalHitchinData {
        &self.data
    }

    pub fn system(&self) -> &'static RootSystemData {
        self.data.system()
    }

    pub fn branch_points(&self) -> &[BranchPoint] {
        &self.branch_points
    }

    pub fn config(&self) -> &GenericityConfig {
        &self.config
    }

    /// Distance from `z` to the nearest branch point or zero of `β1`, excluding `z` itself.
    pub fn feature_distance(&self, z: C) -> f64 {
        self.branch_points
            .iter()
            .map(|b| b.z0)
            .chain(self.beta1_zeros.iter().copied())
            .map(|w| (w - z).norm())
            .filter(|&d| d > 0.0)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Finds all branch points and checks the genericity clauses.
pub fn certify_generic(data: &LocalHitchinData, cfg: &GenericityConfig) -> Result<Certified, GenericityError> {
    let min_dist = cfg.separation * data.chart.radius();
    let mut pts: Vec<BranchPoint> = Vec::new();
    for (class, f) in discriminant_in_z(data) {
        if f.is_zero() {
            return Err(GenericityError::ZeroFactor { class });
        }
        if f.degree() == Some(0) {
            continue;
        }
        let df = f.derivative();
        let roots = find_roots(&f, cfg.root_tol)?;
        for (k, &z0) in roots.roots.iter().enumerate() {
            let d = df.eval(z0).norm();
            let clustered = roots.roots.iter().enumerate().any(|(j, &w)| j != k && (w - z0).norm() <= min_dist);
            if d <= cfg.eps || clustered {
                return Err(GenericityError::Simplicity { class, z0, derivative: d });
            }
            let b1 = data.beta1.eval(z0).norm();
            if b1 <= cfg.eps {
                return Err(GenericityError::B1Vanishes { z0, value: b1 });
            }
            if !data.chart.contains(z0) {
                return Err(GenericityError::OutsideDisk { z0, class, radius: data.chart.radius() });
            }
            pts.push(BranchPoint { z0, class, jet1: df.eval(z0), factor_residual: roots.residuals[k] });
        }
    }
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            if (a.z0 - b.z0).norm() <= min_dist {
                return Err(GenericityError::Separation {
                    a: a.z0,
                    class_a: a.class,
                    b: b.z0,
                    class_b: b.class,
                    min_dist,
                });
            }
        }
    }

    let zeros_of = |p: &CPoly1| -> Result<Vec<C>, GenericityError> {
        match p.degree() {
            Some(d) if d >= 1 => Ok(find_roots(p, cfg.root_tol)?.roots),
            _ => Ok(Vec::new()),
        }
    };
    let beta1_zeros = zeros_of(&data.beta1)?;
    if data.algebra == AlgebraId::A2 {
        let beta2_zeros = zeros_of(&data.beta2)?;
        for &a in &beta1_zeros {
            if beta2_zeros.iter().any(|&b| (a - b).norm() <= min_dist) {
                return Err(GenericityError::B1B2NotDisjoint { z0: a });
            }
        }
    }

    pts.sort_by(|a, b| {
        a.class
            .cmp(&b.class)
            .then(a.z0.re.total_cmp(&b.z0.re))
            .then(a.z0.im.total_cmp(&b.z0.im))
    });
    Ok(Certified { data: data.clone(), branch_points: pts, beta1_zeros, config: *cfg })
}

/// `(β1, β2) ↦ (β1, -β2 + (4/27) β1³)` as polynomials in `z`.
pub fn tau_apply(data: &LocalHitchinData) -> Result<LocalHitchinData, SurfaceError> {
    let (b1, b2) = rootsys::langlands_tau(data.system(), data.beta1.clone(), data.beta2.clone())?;
    Ok(LocalHitchinData { beta1: b1, beta2: b2, ..data.clone() })
}

/// `(u1, u2) ↦ (u1, -u2 + (4/9) β1² u1)`.
pub fn tau_push_tangent(data: &LocalHitchinData, t: &TangentData) -> Result<TangentData, SurfaceError> {
    let (u1, u2) = rootsys::langlands_dtau(
        data.system(),
        (data.beta1.clone(), data.beta2.clone()),
        (t.comp1.clone(), t.comp2.clone()),
    )?;
    Ok(TangentData { comp1: u1, comp2: u2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn data(alg: AlgebraId, r: f64, b1: &[f64], b2: &[f64]) -> LocalHitchinData {
        LocalHitchinData::new(alg, r, CPoly1::from_real(b1), CPoly1::from_real(b2)).unwrap()
    }

    #[test]
    fn chart_rejects_bad_radius() {
        assert_eq!(DiskChart::new(0.0), Err(SurfaceError::BadRadius(0.0)));
        assert!(DiskChart::new(f64::NAN).is_err());
        assert!(DiskChart::new(2.0).unwrap().contains(c(1.0, 1.0)));
    }

    #[test]
    fn g2_factors_with_linear_b2() {
        let f = discriminant_in_z(&data(AlgebraId::G2, 1.0, &[1.0], &[0.0, 1.0]));
        assert_eq!(f[0], (LengthClass::Short, CPoly1::from_real(&[0.0, 1.0])));
        assert_eq!(f[1], (LengthClass::Long, CPoly1::from_real(&[4.0, -27.0])));
    }

    #[test]
    fn b2_factors_with_zero_b1() {
        let f = discriminant_in_z(&data(AlgebraId::B2, 1.0, &[0.0], &[0.0, 1.0]));
        assert_eq!(f[0].1, CPoly1::from_real(&[0.0, 1.0]));
        assert_eq!(f[1].1, CPoly1::from_real(&[0.0, -4.0]));
    }

    #[test]
    fn a2_single_factor() {
        let f = discriminant_in_z(&data(AlgebraId::A2, 1.0, &[1.0], &[0.0, 1.0]));
        assert_eq!(f.len(), 1);
        let want = CPoly1::from_real(&[-4.0 / 27.0, 0.0, 1.0 / 27.0]);
        for (a, b) in f[0].1.coeffs().iter().zip(want.coeffs()) {
            assert!((a - b).norm() < 1e-16);
        }
    }

    #[test]
    fn zero_factor_is_reported() {
        for alg in AlgebraId::ALL {
            let err = certify_generic(&data(alg, 1.0, &[1.0], &[0.0]), &GenericityConfig::default());
            match alg {
                // A2: -(4 - 0)/27 is a nonzero constant, so no branch points at all
                AlgebraId::A2 => assert!(err.unwrap().branch_points().is_empty()),
                _ => assert!(matches!(err, Err(GenericityError::ZeroFactor { .. }))),
            }
        }
    }

    #[test]
    fn certify_linear_g2_example() {
        let cert = certify_generic(&data(AlgebraId::G2, 1.0, &[1.0], &[-0.5, 1.0]), &GenericityConfig::default())
            .unwrap();
        let bp = cert.branch_points();
        assert_eq!(bp.len(), 2);
        assert_eq!(bp[0].class, LengthClass::Short);
        assert!((bp[0].z0 - 0.5).norm() < 1e-15);
        assert!((bp[0].jet1 - 1.0).norm() < 1e-15);
        assert_eq!(bp[1].class, LengthClass::Long);
        assert!((bp[1].z0 - (0.5 + 4.0 / 27.0)).norm() < 1e-15);
        assert!((bp[1].jet1 + 27.0).norm() < 1e-12);
    }

    #[test]
    fn double_zero_fails_simplicity() {
        // β2 = (z - 0.3)²
        let err = certify_generic(&data(AlgebraId::B2, 1.0, &[1.0], &[0.09, -0.6, 1.0]), &GenericityConfig::default())
            .unwrap_err();
        assert!(matches!(err, GenericityError::Simplicity { class: LengthClass::Short, .. }), "{err}");
        assert!(err.to_string().starts_with("simplicity"));
        let err = certify_generic(&data(AlgebraId::G2, 1.0, &[1.0], &[0.0, 0.0, 1.0]), &GenericityConfig::default())
            .unwrap_err();
        assert!(err.to_string().starts_with("simplicity"));
    }

    #[test]
    fn vanishing_b1_is_reported() {
        // β1 = z, β2 = z: the short branch point at 0 has β1 = 0
        let err = certify_generic(&data(AlgebraId::B2, 1.0, &[0.0, 1.0], &[0.0, 1.0]), &GenericityConfig::default())
            .unwrap_err();
        assert!(err.to_string().starts_with("b1 vanishes"), "{err}");
    }

    #[test]
    fn a2_b1_b2_zeros_must_be_disjoint() {
        // β1 = z - 0.5, β2 = (z - 0.5)(z + 0.2): discriminant zeros avoid β1's zero
        let d = data(AlgebraId::A2, 2.0, &[-0.5, 1.0], &[-0.1, -0.3, 1.0]);
        let err = certify_generic(&d, &GenericityConfig::default()).unwrap_err();
        assert!(matches!(err, GenericityError::B1B2NotDisjoint { .. } | GenericityError::Simplicity { .. }), "{err}");
    }

    #[test]
    fn zeros_outside_disk_are_rejected() {
        let err = certify_generic(&data(AlgebraId::B2, 0.4, &[1.0], &[-0.5, 1.0]), &GenericityConfig::default())
            .unwrap_err();
        assert!(matches!(err, GenericityError::OutsideDisk { .. }));
    }

    #[test]
    fn close_zeros_of_different_factors_fail_separation() {
        // short zero at 0.5; long zero of 1 - 4(z - 0.5 + 0.25 - 1e-6)... build directly:
        // β1 = 1, β2 = z - a. Long factor 1 - 4β2 vanishes at a + 1/4. Shrink separation via radius.
        let d = data(AlgebraId::B2, 1000.0, &[1.0], &[-0.5, 1.0]);
        let err = certify_generic(&d, &GenericityConfig::default()).unwrap_err();
        assert!(matches!(err, GenericityError::Separation { .. }), "{err}");
    }

    #[test]
    fn tau_examples() {
        let d = data(AlgebraId::G2, 1.0, &[0.0], &[1.0, 2.0]);
        let t = tau_apply(&d).unwrap();
        assert_eq!(t.beta1, CPoly1::zero());
        assert_eq!(t.beta2, CPoly1::from_real(&[-1.0, -2.0]));
        let t = tau_apply(&data(AlgebraId::G2, 1.0, &[3.0], &[4.0])).unwrap();
        assert_eq!(t.beta1, CPoly1::from_real(&[3.0]));
        assert!(t.beta2.max_abs_coeff() < 1e-14);
        assert!(tau_apply(&data(AlgebraId::B2, 1.0, &[3.0], &[4.0])).is_err());
    }

    #[test]
    fn tau_push_at_zero_b1() {
        let d = data(AlgebraId::G2, 1.0, &[0.0], &[1.0]);
        let u = TangentData::new(CPoly1::from_real(&[1.0, 2.0]), CPoly1::from_real(&[3.0]));
        let pushed = tau_push_tangent(&d, &u).unwrap();
        assert_eq!(pushed.comp1, u.comp1);
        assert_eq!(pushed.comp2, CPoly1::from_real(&[-3.0]));
    }

    #[test]
    fn tau_swaps_discriminant_factors() {
        let d = LocalHitchinData::new(
            AlgebraId::G2,
            5.0,
            CPoly1::new(vec![c(0.9, 0.2), c(-0.3, 0.4)]),
            CPoly1::new(vec![c(0.1, -0.2), c(0.5, 0.3), c(-0.2, 0.1)]),
        )
        .unwrap();
        let t = tau_apply(&d).unwrap();
        let (f, g) = (discriminant_in_z(&d), discriminant_in_z(&t));
        assert_eq!((f[0].0, f[1].0), (LengthClass::Short, LengthClass::Long));
        // τ2 ∘ τ = pr2 and pr2 ∘ τ = τ2, with 𝔇_long = 27·τ2
        let close = |a: &CPoly1, b: &CPoly1| {
            a.degree() == b.degree() && a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| (x - y).norm() <= 1e-12 * (1.0 + y.norm()))
        };
        assert!(close(&g[0].1, &f[1].1.scale(c(1.0 / 27.0, 0.0))));
        assert!(close(&g[1].1, &f[0].1.scale(c(27.0, 0.0))));
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = CPoly1> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=max_deg + 1)
            .prop_map(|v| CPoly1::new(v.into_iter().map(|(a, b)| c(a, b)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn tau_twice_is_identity(b1 in arb_poly(3), b2 in arb_poly(4)) {
            let d = LocalHitchinData::new(AlgebraId::G2, 1.0, b1, b2).unwrap();
            let back = tau_apply(&tau_apply(&d).unwrap()).unwrap();
            prop_assert_eq!(&back.beta1, &d.beta1);
            let scale = 1.0 + d.beta1.max_abs_coeff().powi(3) * 4.0;
            let diff = &back.beta2 - &d.beta2;
            prop_assert!(diff.max_abs_coeff() <= 1e-14 * scale);
        }

        #[test]
        fn tau_swaps_g2_factors(b1 in arb_poly(3), b2 in arb_poly(4)) {
            let d = LocalHitchinData::new(AlgebraId::G2, 1.0, b1, b2).unwrap();
            let f = discriminant_in_z(&d);
            let g = discriminant_in_z(&tau_apply(&d).unwrap());
            let scale = 1.0 + f[1].1.max_abs_coeff();
            // short(τb) = long(b)/27, long(τb) = 27 short(b)
            prop_assert!((&g[0].1 - &f[1].1.scale(c(1.0 / 27.0, 0.0))).max_abs_coeff() <= 1e-12 * scale);
            prop_assert!((&g[1].1 - &f[0].1.scale(c(27.0, 0.0))).max_abs_coeff() <= 1e-12 * 27.0 * scale);
        }

        #[test]
        fn zero_counts_add_up(b1 in arb_poly(2), b2 in arb_poly(3), alg in 0usize..3) {
            let alg = AlgebraId::ALL[alg];
            let d = LocalHitchinData::new(alg, 1e3, b1, b2).unwrap();
            let cfg = GenericityConfig { separation: 1e-9, ..Default::default() };
            if let Ok(cert) = certify_generic(&d, &cfg) {
                let total: usize = discriminant_in_z(&d).iter().map(|(_, f)| f.degree().unwrap_or(0)).sum();
                prop_assert_eq!(cert.branch_points().len(), total);
            }
        }
    }
}
