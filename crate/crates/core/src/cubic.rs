//! Closed-form evaluation of the Donagi–Markman cubic on a certified chart.
//!
//! Both forms sum one term per branch point `z0` of class `c`:
//!
//! * explicit: `A_c · Π_{t∈{u,v,w}} (N_c(β)·t) / (β1^p · (E_c')²)`
//! * fancy:    `F_c · Π_{t∈{u,v,w}} d𝔇_c(t) / (β1^p · (𝔇_c')²)`
//!
//! where `𝔇_c = den_scale · E_c` and `d𝔇_c = num_scale · N_c`, so the two agree
//! whenever `A_c = F_c · num_scale³ / den_scale²`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::rational_to_f64;
use crate::rootsys::{AlgebraId, ClassData, LengthClass};
use crate::surface::{certify_generic, tau_apply, tau_push_tangent, BranchPoint, Certified, GenericityError, SurfaceError, TangentData};

type C = Complex64;

/// Guards relative differences when both sides vanish.
pub const REL_FLOOR: f64 = 1e-300;

#[derive(Debug, Error)]
pub enum CubicError {
    #[error(transparent)]
    Genericity(#[from] GenericityError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("tau image not generic: {0}")]
    TauImage(GenericityError),
}

/// Contribution of a single branch point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BranchTerm {
    #[serde(with = "crate::cjson::one")]
    pub z0: C,
    pub class: LengthClass,
    #[serde(with = "crate::cjson::one")]
    pub contribution: C,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubicValue {
    #[serde(with = "crate::cjson::one")]
    pub total: C,
    #[serde(serialize_with = "ser_class_map")]
    pub per_class: BTreeMap<LengthClass, C>,
    pub per_branch: Vec<BranchTerm>,
}

fn ser_class_map<S: serde::Serializer>(m: &BTreeMap<LengthClass, C>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k.name(), &[v.re, v.im])?;
    }
    map.end()
}

impl CubicValue {
    /// Sums `terms` in order; every class of `id` gets an entry, possibly zero.
    pub fn from_terms(id: AlgebraId, terms: Vec<BranchTerm>) -> Self {
        let sys = crate::rootsys::get(id);
        let mut per_class: BTreeMap<LengthClass, C> = sys.class_names().into_iter().map(|c| (c, C::new(0.0, 0.0))).collect();
        let mut total = C::new(0.0, 0.0);
        for t in &terms {
            total += t.contribution;
            *per_class.entry(t.class).or_default() += t.contribution;
        }
        CubicValue { total, per_class, per_branch: terms }
    }

    pub fn class_total(&self, c: LengthClass) -> C {
        self.per_class.get(&c).copied().unwrap_or_default()
    }
}

/// `|a - b| / max(|a|, |b|, floor)`.
pub fn rel_diff(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(REL_FLOOR)
}

#[derive(Clone, Copy)]
enum Form {
    Explicit,
    Fancy,
}

fn evaluate(cert: &Certified, u: &TangentData, v: &TangentData, w: &TangentData, form: Form) -> CubicValue {
    let data = cert.data();
    let sys = cert.system();
    let terms = cert
        .branch_points()
        .iter()
        .map(|bp| {
            let class = sys.class(bp.class).expect("branch point of a known class");
            let (b1, b2) = data.eval(bp.z0);
            let b = [b1, b2];
            let (coeff, num_scale, den_scale) = match form {
                Form::Explicit => (&class.aggregate_coeff_explicit, 1.0, rational_to_f64(&class.den_scale)),
                Form::Fancy => (&class.aggregate_coeff_fancy, rational_to_f64(&class.num_scale), 1.0),
            };
            let n = [class.explicit_num[0].eval(&b), class.explicit_num[1].eval(&b)];
            let dir = |t: &TangentData| {
                let (t1, t2) = t.eval(bp.z0);
                (n[0] * t1 + n[1] * t2) * num_scale
            };
            // jet1 is the derivative of 𝔇_c; the explicit form wants E_c' = 𝔇_c' / den_scale.
            let jet = bp.jet1 / den_scale;
            let den = b1.powu(sys.b1_power) * jet * jet;
            let contribution = dir(u) * dir(v) * dir(w) / den * rational_to_f64(coeff);
            BranchTerm { z0: bp.z0, class: bp.class, contribution }
        })
        .collect();
    CubicValue::from_terms(data.algebra, terms)
}

/// The cubic in explicit component form.
pub fn cubic_explicit(cert: &Certified, u: &TangentData, v: &TangentData, w: &TangentData) -> CubicValue {
    evaluate(cert, u, v, w, Form::Explicit)
}

/// The cubic in discriminant-differential form.
pub fn cubic_fancy(cert: &Certified, u: &TangentData, v: &TangentData, w: &TangentData) -> CubicValue {
    evaluate(cert, u, v, w, Form::Fancy)
}

/// `d𝔇_c(t)` at `z`: the directional derivative of the class factor in `(b1, b2)`.
pub fn d_disc(class: &ClassData, b: [C; 2], t: (C, C)) -> C {
    let n = [class.explicit_num[0].eval(&b), class.explicit_num[1].eval(&b)];
    (n[0] * t.0 + n[1] * t.1) * rational_to_f64(&class.num_scale)
}

/// Closed-form quadratic residue at any one ramification point over `bp`.
pub fn per_point_residue(cert: &Certified, bp: &BranchPoint, u: &TangentData, v: &TangentData, w: &TangentData) -> C {
    let sys = cert.system();
    let class = sys.class(bp.class).expect("branch point of a known class");
    let (b1, b2) = cert.data().eval(bp.z0);
    let b = [b1, b2];
    let n = [class.explicit_num[0].eval(&b), class.explicit_num[1].eval(&b)];
    let dir = |t: &TangentData| {
        let (t1, t2) = t.eval(bp.z0);
        n[0] * t1 + n[1] * t2
    };
    let jet = bp.jet1 / rational_to_f64(&class.den_scale);
    dir(u) * dir(v) * dir(w) / (b1.powu(sys.b1_power) * jet * jet) * rational_to_f64(&class.per_point_residue_coeff)
}

/// Outcome of comparing the cubic of `b` with that of `τ(b)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TauCheck {
    #[serde(with = "crate::cjson::one")]
    pub lhs: C,
    #[serde(with = "crate::cjson::one")]
    pub rhs: C,
    pub diff: f64,
    /// Short subtotal of `τ(b)` against the long subtotal of `b`.
    pub short_to_long: f64,
    /// Long subtotal of `τ(b)` against the short subtotal of `b`.
    pub long_to_short: f64,
}

impl TauCheck {
    pub fn worst(&self) -> f64 {
        self.diff.max(self.short_to_long).max(self.long_to_short)
    }
}

/// Evaluates the G2 cubic at `b` and at `τ(b)` on pushed-forward tangents.
pub fn check_tau_invariance(
    cert: &Certified,
    u: &TangentData,
    v: &TangentData,
    w: &TangentData,
) -> Result<TauCheck, CubicError> {
    let data = cert.data();
    let image = tau_apply(data)?;
    let image_cert = certify_generic(&image, cert.config()).map_err(CubicError::TauImage)?;
    let push = |t: &TangentData| tau_push_tangent(data, t);
    let (tu, tv, tw) = (push(u)?, push(v)?, push(w)?);
    let lhs_val = cubic_explicit(&image_cert, &tu, &tv, &tw);
    let rhs_val = cubic_explicit(cert, u, v, w);
    Ok(TauCheck {
        lhs: lhs_val.total,
        rhs: rhs_val.total,
        diff: rel_diff(lhs_val.total, rhs_val.total),
        short_to_long: rel_diff(lhs_val.class_total(LengthClass::Short), rhs_val.class_total(LengthClass::Long)),
        long_to_short: rel_diff(lhs_val.class_total(LengthClass::Long), rhs_val.class_total(LengthClass::Short)),
    })
}
