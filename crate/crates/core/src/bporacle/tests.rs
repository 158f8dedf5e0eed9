use proptest::prelude::*;

use super::*;
use crate::cameral::FiberPoint;
use crate::cubic::{cubic_explicit, per_point_residue, rel_diff};
use crate::exactpoly::CPoly1;
use crate::rootsys::AlgebraId;
use crate::testutil::{c, certified, sample_instance, sample_tangents, strategies, tangent, tangent_from, try_certify};

fn constant_data(id: AlgebraId, b1: C, b2: C) -> LocalHitchinData {
    LocalHitchinData::new(id, 1.0, CPoly1::constant(b1), CPoly1::constant(b2)).unwrap()
}

fn opts() -> OracleOptions {
    OracleOptions::default()
}

#[test]
fn log_derivative_g2_constant() {
    let data = constant_data(AlgebraId::G2, c(1.0, 0.0), c(1.0, 0.0));
    let u = tangent(&[c(1.0, 0.0)], &[c(1.0, 0.0)]);
    let val = log_deriv_d(&data, &u, c(0.3, 0.1)).unwrap();
    assert!((val - c(38.0 / 23.0, 0.0)).norm() < 1e-14, "{val}");
    assert_eq!(log_deriv_d(&data, &TangentData::zero(), c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
}

#[test]
fn log_derivative_b2_with_vanishing_b1() {
    let (b2, u2) = (c(0.7, -0.2), c(0.3, 0.4));
    let data = constant_data(AlgebraId::B2, c(0.0, 0.0), b2);
    let u = tangent(&[c(5.0, 1.0)], &[u2]);
    let val = log_deriv_d(&data, &u, c(0.0, 0.0)).unwrap();
    assert!((val - u2 * 2.0 / b2).norm() < 1e-14);
}

#[test]
fn log_derivative_rejects_discriminant_zero() {
    let data = LocalHitchinData::new(AlgebraId::G2, 1.0, CPoly1::constant(c(1.0, 0.0)), CPoly1::new(vec![c(0.0, 0.0), c(1.0, 0.0)]))
        .unwrap();
    let u = tangent(&[c(1.0, 0.0)], &[c(1.0, 0.0)]);
    let err = log_deriv_d(&data, &u, c(0.0, 0.0)).unwrap_err();
    assert!(matches!(err, OracleError::AtDiscriminantZero { .. }));
}

#[test]
fn nabla_is_linear_and_vanishes_at_zero() {
    let cert = sample_instance(AlgebraId::G2);
    let z = c(0.4, 0.9);
    let fib = crate::cameral::fiber(cert.data(), z).unwrap();
    let [u, v, _] = sample_tangents();
    let lam = c(0.3, -1.1);
    for p in &fib {
        let zero = nabla_sw(cert.data(), p, &TangentData::zero()).unwrap();
        assert_eq!(zero.components, [c(0.0, 0.0); 2]);
        let a = nabla_sw(cert.data(), p, &u).unwrap().components;
        let b = nabla_sw(cert.data(), p, &v).unwrap().components;
        let ab = nabla_sw(cert.data(), p, &u.axpy(lam, &v)).unwrap().components;
        for i in 0..2 {
            assert!((ab[i] - (a[i] * lam + b[i])).norm() <= 1e-12 * (a[i].norm() + b[i].norm()));
        }
    }
}

#[test]
fn nabla_rejects_ramification_points() {
    let cert = sample_instance(AlgebraId::B2);
    let bp = cert.branch_points()[0];
    let ram = crate::cameral::ramification_points(&cert, &bp).unwrap();
    let [u, _, _] = sample_tangents();
    let p = FiberPoint { z: bp.z0, alpha: ram[0].alpha, residual: 0.0 };
    let err = nabla_sw(cert.data(), &p, &u).unwrap_err();
    assert!(err.to_string().contains("use local frame"));
}

#[test]
fn residues_match_closed_form_and_reduced_method() {
    let [u, v, w] = sample_tangents();
    for id in AlgebraId::ALL {
        let cert = sample_instance(id);
        let full = all_residues(&cert, &u, &v, &w, ResidueMethod::Full, &opts()).unwrap();
        let reduced = all_residues(&cert, &u, &v, &w, ResidueMethod::Reduced, &opts()).unwrap();
        for (f, r) in full.iter().zip(&reduced) {
            let closed = per_point_residue(&cert, &f.ram.branch, &u, &v, &w);
            assert!(rel_diff(f.value, closed) <= 1e-6, "{id}: {} vs closed form {}", f.value, closed);
            assert!(rel_diff(f.value, r.value) <= 1e-8, "{id}: full {} vs reduced {}", f.value, r.value);
            assert!(f.laurent_tail_bound <= 1e-6 * f.value.norm());
        }
        // one residue per branch point and class
        for a in &full {
            for b in full.iter().filter(|b| b.ram.branch.z0 == a.ram.branch.z0) {
                assert!(rel_diff(a.value, b.value) <= 1e-8, "{id}: {} vs {}", a.value, b.value);
            }
        }
    }
}

#[test]
fn oracle_cubic_matches_explicit() {
    let [u, v, w] = sample_tangents();
    for id in AlgebraId::ALL {
        let cert = sample_instance(id);
        let oracle = bp_cubic(&cert, &u, &v, &w, ResidueMethod::Full, &opts()).unwrap();
        let closed = cubic_explicit(&cert, &u, &v, &w);
        assert!(rel_diff(oracle.value.total, closed.total) <= 1e-6);
        for (cls, val) in &closed.per_class {
            assert!(rel_diff(oracle.value.class_total(*cls), *val) <= 1e-6, "{id} {cls}");
        }
        let swapped = bp_cubic(&cert, &u, &w, &v, ResidueMethod::Full, &opts()).unwrap();
        assert!(rel_diff(oracle.value.total, swapped.value.total) <= 1e-10);
    }
}

#[test]
fn oracle_with_zero_tangent() {
    let [_, v, w] = sample_tangents();
    let cert = sample_instance(AlgebraId::B2);
    let oracle = bp_cubic(&cert, &TangentData::zero(), &v, &w, ResidueMethod::Full, &opts()).unwrap();
    assert!(oracle.value.total.norm() <= 1e-12);
}

#[test]
fn g2_linear_example_per_point() {
    // β1 = 1, β2 = z - 1/2; short point residue 12·u2³/(β1²·1²) = 12 for u = (1, 1)
    let cert = certified(AlgebraId::G2, 1.0, &[c(1.0, 0.0)], &[c(-0.5, 0.0), c(1.0, 0.0)]);
    let u = tangent(&[c(1.0, 0.0)], &[c(1.0, 0.0)]);
    let short = cert.branch_points().iter().find(|b| b.class == crate::rootsys::LengthClass::Short).unwrap();
    let rams = crate::cameral::ramification_points(&cert, short).unwrap();
    for r in &rams {
        let rec = quadratic_residue_at(&cert, r, &u, &u, &u, ResidueMethod::Full, &opts()).unwrap();
        assert!(rel_diff(rec.value, c(12.0, 0.0)) <= 1e-6, "{}", rec.value);
    }
}

#[test]
fn nabla_converges_to_table_direction() {
    let [_, v, _] = sample_tangents();
    for id in AlgebraId::ALL {
        let cert = sample_instance(id);
        for r in all_ramification_points(&cert).unwrap() {
            let lim = nabla_limit_check(&cert, &r, &v, &LimitOptions::default(), &opts()).unwrap();
            assert!(lim.errors.len() >= 4 && lim.monotone(), "{id}: {:?}", lim.errors);
            assert!(lim.final_error() <= 1e-6, "{id}: {:?}", lim.errors);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn oracle_agrees_on_random_instances(
        id in strategies::algebra(),
        b1 in strategies::coeffs(3),
        b2 in strategies::coeffs(3),
        t in prop::collection::vec(strategies::coeffs(2), 6),
    ) {
        let cert = try_certify(id, &b1, &b2);
        prop_assume!(cert.is_some());
        let cert = cert.unwrap();
        let (u, v, w) = (tangent_from(&t[0], &t[1]), tangent_from(&t[2], &t[3]), tangent_from(&t[4], &t[5]));
        let oracle = bp_cubic(&cert, &u, &v, &w, ResidueMethod::Full, &opts()).unwrap();
        let closed = cubic_explicit(&cert, &u, &v, &w);
        prop_assert!(rel_diff(oracle.value.total, closed.total) <= 1e-6, "{} vs {}", oracle.value.total, closed.total);
    }
}
