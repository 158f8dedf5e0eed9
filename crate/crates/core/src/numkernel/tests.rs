use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::exactpoly::CPoly1;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    v
}

#[test]
fn roots_of_z2_minus_1() {
    let rs = find_roots(&CPoly1::from_real(&[-1.0, 0.0, 1.0]), 1e-12).unwrap();
    let r = sorted(rs.roots);
    assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-14);
    assert!((r[1] - c(1.0, 0.0)).norm() < 1e-14);
}

#[test]
fn triple_root_at_zero() {
    let rs = find_roots(&CPoly1::from_real(&[0.0, 0.0, 0.0, 1.0]), 1e-12).unwrap();
    assert_eq!(rs.roots, vec![c(0.0, 0.0); 3]);
    assert!(rs.residuals.iter().all(|&r| r == 0.0));
}

#[test]
fn planted_degree_six_roots_are_recovered() {
    let planted = vec![
        c(0.3, -0.2),
        c(-0.7, 0.1),
        c(0.05, 0.9),
        c(1.4, 0.6),
        c(-0.4, -1.1),
        c(0.8, 0.0),
    ];
    let p = CPoly1::from_roots(&planted).scale(c(2.0, -1.0));
    let got = find_roots(&p, 1e-12).unwrap();
    for r in &planted {
        let d = got.roots.iter().map(|z| (z - r).norm()).fold(f64::INFINITY, f64::min);
        assert!(d < 1e-10, "planted {r} missed by {d}");
    }
}

#[test]
fn double_root_stays_within_residual_bound() {
    let p = CPoly1::from_roots(&[c(0.5, 0.5), c(0.5, 0.5), c(-1.0, 0.0)]);
    let rs = find_roots(&p, 1e-12).unwrap();
    assert_eq!(rs.len(), 3);
    for (z, r) in rs.roots.iter().zip(&rs.residuals) {
        assert!(*r <= 1e-12 * p.abs_scale(*z));
    }
}

#[test]
fn constant_polynomial_is_rejected() {
    assert_eq!(find_roots(&CPoly1::from_real(&[3.0]), 1e-12), Err(NumError::ConstantPolynomial));
    assert_eq!(find_roots(&CPoly1::zero(), 1e-12), Err(NumError::ConstantPolynomial));
}

#[test]
fn impossible_tolerance_reports_best_residuals() {
    let p = CPoly1::from_roots(&[c(0.1, 0.2), c(3.0, -1.0), c(-2.0, 0.5)]);
    match find_roots(&p, 0.0) {
        Err(NumError::RootsNotConverged { roots, residuals }) => {
            assert_eq!(roots.len(), 3);
            assert_eq!(residuals.len(), 3);
        }
        Ok(rs) => assert!(rs.residuals.iter().all(|&r| r == 0.0)),
        Err(e) => panic!("unexpected error {e}"),
    }
}

#[test]
fn newton_linear_system() {
    let sol = newton2(
        |x| ([x[0] - 1.0, x[1] - 2.0], [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]),
        [c(0.0, 0.0); 2],
        NewtonOptions::default(),
    )
    .unwrap();
    assert_eq!(sol.point, [c(1.0, 0.0), c(2.0, 0.0)]);
    assert_eq!(sol.iterations, 1);
}

#[test]
fn newton_circle_line() {
    let sol = newton2(
        |x| ([x[0] * x[0] - 1.0, x[1] - x[0]], [[x[0] * 2.0, c(0.0, 0.0)], [c(-1.0, 0.0), c(1.0, 0.0)]]),
        [c(0.9, 0.0); 2],
        NewtonOptions::default(),
    )
    .unwrap();
    assert!((sol.point[0] - 1.0).norm() < 1e-12 && (sol.point[1] - 1.0).norm() < 1e-12);
    assert!(sol.converged_superlinearly());
    assert!(sol.history.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn newton_reports_singular_jacobian() {
    let err = newton2(
        |x| ([x[0] * x[0] + 1.0, x[1]], [[x[0] * 2.0, c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]),
        [c(0.0, 0.0); 2],
        NewtonOptions::default(),
    )
    .unwrap_err();
    assert!(matches!(err, NumError::SingularJacobian { .. }));
}

fn sample(f: impl Fn(Complex64) -> Complex64, r: f64, n: usize) -> Vec<Complex64> {
    circle_points(c(0.0, 0.0), r, n).into_iter().map(f).collect()
}

#[test]
fn laurent_of_inverse_square() {
    let l = laurent_extract(&sample(|t| (t * t).inv(), 1.0, 64), 1.0).unwrap();
    assert!((l.coeff(-2) - 1.0).norm() < 1e-12);
    for (&k, a) in &l.coefficients {
        if k != -2 {
            assert!(a.norm() < 1e-12, "a_{k} = {a}");
        }
    }
}

#[test]
fn laurent_of_affine() {
    let l = laurent_extract(&sample(|t| 3.0 + 5.0 * t, 0.5, 32), 0.5).unwrap();
    assert!((l.coeff(0) - 3.0).norm() < 1e-12);
    assert!((l.coeff(1) - 5.0).norm() < 1e-12);
}

#[test]
fn laurent_read_off() {
    let l = laurent_extract(&sample(|t| (t + t * t) / (t * t * t), 0.2, 64), 0.2).unwrap();
    assert!((l.coeff(-2) - 1.0).norm() < 1e-12);
    assert!((l.coeff(-1) - 1.0).norm() < 1e-12);
    assert!(l.tail_max(3) < 1e-12);
}

#[test]
fn laurent_rejects_bad_sizes() {
    assert_eq!(laurent_extract(&[c(1.0, 0.0); 48], 1.0), Err(NumError::NotPowerOfTwo(48)));
    assert_eq!(laurent_extract(&[c(1.0, 0.0); 4], -1.0), Err(NumError::BadRadius(-1.0)));
}

#[test]
fn spectral_derivative_is_exact_on_polynomials() {
    let f = |t: Complex64| 1.0 + 2.0 * t - t * t * t;
    let df = |t: Complex64| 2.0 - 3.0 * t * t;
    let ts = circle_points(c(0.0, 0.0), 0.7, 16);
    let s: Vec<_> = ts.iter().map(|&t| f(t)).collect();
    let d = spectral_t_derivative(&s).unwrap();
    for (t, v) in ts.iter().zip(d) {
        assert!((v - t * df(*t)).norm() < 1e-13);
    }
}

#[test]
fn adaptive_stops_on_smooth_integrand() {
    let f = |t: Complex64| (1.0 - t).inv() / (t * t);
    let l = adaptive_laurent::<_, NumError>(
        |n| laurent_extract(&sample(f, 0.25, n), 0.25),
        -2,
        AdaptiveOptions::default(),
    )
    .unwrap();
    assert_eq!(l.sample_count(), 128);
    assert!((l.coeff(-2) - 1.0).norm() < 1e-12);
}

#[test]
fn adaptive_reports_non_convergence() {
    // a coefficient that keeps drifting with N never stabilizes
    let err = adaptive_laurent::<_, NumError>(
        |n| {
            let s = sample(|t| (1.0 + 1.0 / n as f64) / (t * t), 1.0, n);
            laurent_extract(&s, 1.0)
        },
        -2,
        AdaptiveOptions { n0: 64, n_max: 256, rel_tol: 1e-10 },
    )
    .unwrap_err();
    assert!(matches!(err, NumError::NotStabilized { index: -2, samples: 256, .. }));
}

fn arb_c() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| c(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn roots_reconstruct_monic_polynomial(cs in prop::collection::vec(arb_c(), 2..9)) {
        let mut cs = cs;
        *cs.last_mut().unwrap() = c(1.0, 0.0);
        let p = CPoly1::new(cs);
        let rs = find_roots(&p, 1e-12).unwrap();
        prop_assert_eq!(rs.len(), p.degree().unwrap());
        let back = CPoly1::from_roots(&rs.roots);
        let scale = p.max_abs_coeff();
        for (a, b) in p.coeffs().iter().zip(back.coeffs()) {
            prop_assert!((a - b).norm() <= 1e-8 * scale);
        }
    }

    #[test]
    fn laurent_recovers_sampled_polynomials(cs in prop::collection::vec(arb_c(), 1..12), r in 0.1f64..2.0) {
        let p = CPoly1::new(cs.clone());
        let l = laurent_extract(&sample(|t| p.eval(t), r, 32), r).unwrap();
        for (k, a) in cs.iter().enumerate() {
            prop_assert!((l.coeff(k as i64) - a).norm() <= 1e-12 * (1.0 + 2f64.powi(k as i32) / r.powi(k as i32)));
        }
    }
}
