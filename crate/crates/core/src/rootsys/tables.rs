use std::sync::OnceLock;

use super::types::*;
use crate::exactpoly::{
    mat2, mat2_inverse, poly2_partial, q, qi, RatMat2, RatPoly2, Rational,
};

fn p(terms: &[([u32; 2], i64)]) -> RatPoly2 {
    RatPoly2::from_int_terms(terms)
}

fn pq(terms: &[([u32; 2], Rational)]) -> RatPoly2 {
    RatPoly2::from_terms(terms.iter().cloned())
}

fn root(m1: i64, m2: i64, class: LengthClass) -> PositiveRoot {
    PositiveRoot { coeffs: [m1, m2], class }
}

fn half(a: i64, b: i64) -> [Rational; 2] {
    [q(a, 2), q(b, 2)]
}

fn whole(a: i64, b: i64) -> [Rational; 2] {
    [qi(a), qi(b)]
}

/// `±Π L²` over the given roots.
fn product_of_squares(roots: &[PositiveRoot], sign: i64) -> RatPoly2 {
    roots
        .iter()
        .fold(RatPoly2::from_int(sign), |acc, r| &acc * &r.form().pow(2))
}

/// Simple reflections on coordinates: `x_i ↦ x_i - (2 G_ij / G_jj) x_j`.
pub fn reflections_from_gram(g: &RatMat2) -> [RatMat2; 2] {
    let refl = |j: usize| -> RatMat2 {
        let mut m = mat2([[1, 0], [0, 1]]);
        for i in 0..2 {
            m[i][j] = &m[i][j] - &(qi(2) * &g[i][j] / &g[j][j]);
        }
        m
    };
    [refl(0), refl(1)]
}

fn jacobian_of(i1: &RatPoly2, i2: &RatPoly2) -> [[RatPoly2; 2]; 2] {
    [
        [poly2_partial(i1, 1), poly2_partial(i1, 2)],
        [poly2_partial(i2, 1), poly2_partial(i2, 2)],
    ]
}

/// Fills in the derived parts of the tables from the hand-entered ones.
fn assemble(
    id: AlgebraId,
    positive_roots: Vec<PositiveRoot>,
    killing: RatMat2,
    degrees: (u32, u32),
    inv1: RatPoly2,
    inv2: RatPoly2,
    jacobian_tables: Vec<[[RatPoly2; 2]; 2]>,
    classes: Vec<ClassData>,
    b1_power: u32,
    nabla_table: Vec<[Rational; 2]>,
    tau: Option<TauData>,
) -> RootSystemData {
    let simple_gram = mat2_inverse(&killing).expect("Killing form is nondegenerate");
    RootSystemData {
        id,
        weyl_generators: reflections_from_gram(&simple_gram),
        simple_gram,
        jacobian: jacobian_of(&inv1, &inv2),
        positive_roots,
        killing,
        degrees,
        inv1,
        inv2,
        jacobian_tables,
        classes,
        b1_power,
        nabla_table,
        tau,
    }
}

#[allow(clippy::too_many_arguments)]
fn class_data(
    class: LengthClass,
    disc_alpha: RatPoly2,
    disc_b: RatPoly2,
    explicit_num: [RatPoly2; 2],
    explicit_den: RatPoly2,
    scales: (Rational, Rational),
    killing_square: Rational,
    reduced_prefactor: Rational,
    coeffs: (Rational, Rational, Rational),
) -> ClassData {
    ClassData {
        class,
        disc_alpha,
        disc_b,
        explicit_num,
        explicit_den,
        num_scale: scales.0,
        den_scale: scales.1,
        killing_square,
        reduced_prefactor,
        per_point_residue_coeff: coeffs.0,
        aggregate_coeff_explicit: coeffs.1,
        aggregate_coeff_fancy: coeffs.2,
    }
}

fn g2() -> RootSystemData {
    use LengthClass::*;
    let roots = vec![
        root(1, 0, Short),
        root(1, 1, Short),
        root(2, 1, Short),
        root(3, 1, Long),
        root(3, 2, Long),
        root(0, 1, Long),
    ];
    let inv1 = p(&[([2, 0], 3), ([1, 1], 3), ([0, 2], 1)]);
    let inv2 = p(&[([6, 0], 4), ([5, 1], 12), ([4, 2], 13), ([3, 3], 6), ([2, 4], 1)]);
    let (x1, x2) = (|c: i64, k: u32| p(&[([k, 0], c)]), |c: i64, k: u32| p(&[([0, k], c)]));
    let x2q = |c: Rational, k: u32| pq(&[([0, k], c)]);
    let z = RatPoly2::zero;
    let jacobian_tables = vec![
        [[x2(3, 1), x2(2, 1)], [z(), z()]],
        [[x1(3, 1), x1(1, 1)], [z(), z()]],
        [[z(), x1(-1, 1)], [z(), z()]],
        [[x2(1, 1), x2(1, 1)], [x2q(q(4, 81), 5), x2q(q(4, 81), 5)]],
        [[x2(-1, 1), z()], [x2q(q(-4, 81), 5), z()]],
        [[x1(6, 1), x1(3, 1)], [x1(24, 5), x1(12, 5)]],
    ];
    let short: Vec<_> = roots[..3].to_vec();
    let long: Vec<_> = roots[3..].to_vec();
    let tau2 = pq(&[([0, 1], qi(-1)), ([3, 0], q(4, 27))]);
    let classes = vec![
        class_data(
            Short,
            product_of_squares(&short, 1),
            p(&[([0, 1], 1)]),
            [z(), p(&[([0, 0], 1)])],
            p(&[([0, 1], 1)]),
            (qi(1), qi(1)),
            qi(12),
            qi(1),
            (qi(12), qi(36), qi(36)),
        ),
        class_data(
            Long,
            product_of_squares(&long, 1),
            p(&[([3, 0], 4), ([0, 1], -27)]),
            [pq(&[([2, 0], q(4, 9))]), p(&[([0, 0], -1)])],
            tau2.clone(),
            (qi(27), qi(27)),
            qi(4),
            q(1, 9),
            (qi(12), qi(36), q(4, 3)),
        ),
    ];
    let nabla_table = vec![
        half(2, -3),
        half(1, -3),
        half(1, 0),
        half(1, -1),
        half(0, 1),
        half(1, -2),
    ];
    let tau = TauData {
        cartan: mat2([[3, 2], [-6, -3]]),
        cartan_scale_sq: qi(3),
        base: [p(&[([1, 0], 1)]), tau2],
        differential: [
            [p(&[([0, 0], 1)]), z()],
            [pq(&[([2, 0], q(4, 9))]), p(&[([0, 0], -1)])],
        ],
    };
    assemble(
        AlgebraId::G2,
        roots,
        mat2([[48, 24], [24, 16]]),
        (2, 6),
        inv1,
        inv2,
        jacobian_tables,
        classes,
        2,
        nabla_table,
        Some(tau),
    )
}

fn a2() -> RootSystemData {
    use LengthClass::*;
    let roots = vec![root(1, 0, Uniform), root(0, 1, Uniform), root(1, 1, Uniform)];
    let inv1 = p(&[([2, 0], 1), ([1, 1], 1), ([0, 2], 1)]);
    let inv2 = p(&[([3, 0], -2), ([2, 1], -3), ([1, 2], 3), ([0, 3], 2)]);
    let (x1, x2) = (|c: i64, k: u32| p(&[([k, 0], c)]), |c: i64, k: u32| p(&[([0, k], c)]));
    let jacobian_tables = vec![
        [[x2(1, 1), x2(2, 1)], [x2(3, 2), x2(6, 2)]],
        [[x1(2, 1), x1(1, 1)], [x1(-6, 2), x1(-3, 2)]],
        [[x1(1, 1), x1(-1, 1)], [x1(3, 2), x1(-3, 2)]],
    ];
    let disc = p(&[([3, 0], 4), ([0, 2], -1)]);
    let classes = vec![class_data(
        Uniform,
        product_of_squares(&roots, -1),
        disc.scale(&q(-1, 27)),
        [p(&[([2, 0], 12)]), p(&[([0, 1], -2)])],
        disc,
        (q(-1, 27), q(-1, 27)),
        qi(3),
        qi(-1),
        (q(1, 9), q(1, 6), q(-9, 2)),
    )];
    assemble(
        AlgebraId::A2,
        roots,
        mat2([[4, 2], [2, 4]]),
        (2, 3),
        inv1,
        inv2,
        jacobian_tables,
        classes,
        2,
        vec![half(2, -1), half(-1, 2), half(1, 1)],
        None,
    )
}

fn b2() -> RootSystemData {
    use LengthClass::*;
    let roots = vec![
        root(0, 1, Short),
        root(1, 1, Short),
        root(1, 0, Long),
        root(1, 2, Long),
    ];
    let inv1 = p(&[([2, 0], 1), ([1, 1], 2), ([0, 2], 2)]);
    let inv2 = p(&[([2, 2], 1), ([1, 3], 2), ([0, 4], 1)]);
    let (x1, x2) = (|c: i64, k: u32| p(&[([k, 0], c)]), |c: i64, k: u32| p(&[([0, k], c)]));
    let z = RatPoly2::zero;
    let jacobian_tables = vec![
        [[x1(2, 1), x1(2, 1)], [z(), z()]],
        [[z(), x2(2, 1)], [z(), z()]],
        [[x2(2, 1), x2(4, 1)], [x2(2, 3), x2(4, 3)]],
        [[x2(-2, 1), z()], [x2(-2, 3), z()]],
    ];
    let classes = vec![
        class_data(
            Short,
            product_of_squares(&roots[..2], 1),
            p(&[([0, 1], 1)]),
            [z(), p(&[([0, 0], 1)])],
            p(&[([0, 1], 1)]),
            (qi(1), qi(1)),
            qi(6),
            qi(1),
            (qi(6), qi(12), qi(12)),
        ),
        class_data(
            Long,
            product_of_squares(&roots[2..], 1),
            p(&[([2, 0], 1), ([0, 1], -4)]),
            [p(&[([1, 0], 1)]), p(&[([0, 0], -2)])],
            p(&[([2, 0], 1), ([0, 1], -4)]),
            (qi(2), qi(1)),
            qi(3),
            q(1, 2),
            (qi(12), qi(24), qi(3)),
        ),
    ];
    assemble(
        AlgebraId::B2,
        roots,
        mat2([[6, 6], [6, 12]]),
        (2, 4),
        inv1,
        inv2,
        jacobian_tables,
        classes,
        1,
        vec![whole(-1, 1), whole(1, 0), half(2, -1), half(0, 1)],
        None,
    )
}

/// Fresh copy of the exact tables for `id`.
pub fn build(id: AlgebraId) -> RootSystemData {
    match id {
        AlgebraId::A2 => a2(),
        AlgebraId::B2 => b2(),
        AlgebraId::G2 => g2(),
    }
}

/// Shared, lazily built tables.
pub fn get(id: AlgebraId) -> &'static RootSystemData {
    static CELLS: [OnceLock<RootSystemData>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let idx = AlgebraId::ALL.iter().position(|&a| a == id).unwrap();
    CELLS[idx].get_or_init(|| build(id))
}
