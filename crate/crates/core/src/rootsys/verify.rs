use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::types::*;
use crate::exactpoly::{
    mat2_det, mat2_identity, mat2_mul, poly2_compose_linear, poly2_partial,
    poly2_reduce_mod_linear, q, qi, RatMat2, RatPoly2, Rational,
};

/// Outcome of one exact identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClauseResult {
    pub name: String,
    pub passed: bool,
    /// For failures, the offending difference or values.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub algebra: AlgebraId,
    pub clauses: Vec<ClauseResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClauseResult> {
        self.clauses.iter().filter(|c| !c.passed)
    }

    pub fn clause(&self, name: &str) -> Option<&ClauseResult> {
        self.clauses.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}]", self.algebra)?;
        for c in &self.clauses {
            if c.passed {
                writeln!(f, "  PASS {}", c.name)?;
            } else {
                writeln!(f, "  FAIL {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

struct Report(Vec<ClauseResult>);

impl Report {
    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        let detail = if ok { String::new() } else { detail() };
        self.0.push(ClauseResult { name: name.into(), passed: ok, detail });
    }

    /// Polynomial identity `lhs == rhs`, reporting `lhs - rhs` on failure.
    fn poly_eq(&mut self, name: impl Into<String>, lhs: &RatPoly2, rhs: &RatPoly2) {
        let diff = lhs - rhs;
        self.check(name, diff.is_zero(), || format!("difference {diff}"));
    }

    fn rat_eq(&mut self, name: impl Into<String>, got: &Rational, want: &Rational) {
        self.check(name, got == want, || format!("stored {got}, derived {want}"));
    }
}

fn transpose_apply(m: &RatMat2, v: [i64; 2]) -> [Rational; 2] {
    [
        &m[0][0] * qi(v[0]) + &m[1][0] * qi(v[1]),
        &m[0][1] * qi(v[0]) + &m[1][1] * qi(v[1]),
    ]
}

/// Image of root functionals under `h ↦ M h`, as a permutation of `±roots`.
fn root_permutation(data: &RootSystemData, m: &RatMat2) -> Option<Vec<usize>> {
    let all: Vec<[i64; 2]> = data
        .positive_roots
        .iter()
        .flat_map(|r| [r.coeffs, [-r.coeffs[0], -r.coeffs[1]]])
        .collect();
    all.iter()
        .map(|&v| {
            let img = transpose_apply(m, v);
            all.iter().position(|w| img[0] == qi(w[0]) && img[1] == qi(w[1]))
        })
        .collect()
}

fn killing_pair(k: &RatMat2, a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    let mut s = Rational::zero();
    for i in 0..2 {
        for j in 0..2 {
            s += &k[i][j] * &a[i] * &b[j];
        }
    }
    s
}

/// Closure of the generators under multiplication, capped at `limit` elements.
fn generate_group(gens: &[RatMat2; 2], limit: usize) -> Vec<RatMat2> {
    let mut group = vec![mat2_identity()];
    let mut frontier = group.clone();
    while !frontier.is_empty() && group.len() <= limit {
        let mut next = Vec::new();
        for g in &frontier {
            for s in gens {
                let h = mat2_mul(g, s);
                if !group.contains(&h) {
                    group.push(h.clone());
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    group
}

/// Runs every exact identity clause on the tables.
fn fmt_mat(m: &RatMat2) -> String {
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

fn fmt_list<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

pub fn verify_algebra(data: &RootSystemData) -> VerificationReport {
    let mut r = Report(Vec::new());
    let invs = [&data.inv1, &data.inv2];
    let n_pos = data.positive_roots.len();
    let expected_pos = match data.id {
        AlgebraId::A2 => 3,
        AlgebraId::B2 => 4,
        AlgebraId::G2 => 6,
    };
    r.check("roots.count", n_pos == expected_pos, || format!("{n_pos} positive roots"));

    // (a) Weyl group
    for (j, s) in data.weyl_generators.iter().enumerate() {
        let sq = mat2_mul(s, s);
        r.check(format!("weyl.s{}.involution", j + 1), sq == mat2_identity(), || fmt_mat(&sq));
        r.check(format!("weyl.s{}.permutes_roots", j + 1), root_permutation(data, s).is_some(), || {
            "image of a root is not a root".into()
        });
        for (k, inv) in invs.iter().enumerate() {
            r.poly_eq(format!("weyl.s{}.invariance.I{}", j + 1, k + 1), &poly2_compose_linear(inv, s), inv);
        }
    }
    let group = generate_group(&data.weyl_generators, 64);
    let order = group.len();
    r.check("weyl.group_order", order == data.id.weyl_order(), || {
        format!("generated {order} elements, expected {}", data.id.weyl_order())
    });
    let perms: BTreeSet<Vec<usize>> = group.iter().filter_map(|g| root_permutation(data, g)).collect();
    r.check("weyl.faithful_on_roots", perms.len() == order, || {
        format!("{} distinct permutations for {order} elements", perms.len())
    });

    // root lengths from the Gram matrix
    let norm = |c: [i64; 2]| {
        let v = [qi(c[0]), qi(c[1])];
        killing_pair(&data.simple_gram, &v, &v)
    };
    for cls in data.class_names() {
        let norms: BTreeSet<Rational> =
            data.roots_in_class(cls).iter().map(|&i| norm(data.positive_roots[i].coeffs)).collect();
        r.check(format!("roots.{cls}.equal_length"), norms.len() == 1, || format!("lengths {}", fmt_list(&norms)));
    }
    if let (Some(s), Some(l)) = (data.class(LengthClass::Short), data.class(LengthClass::Long)) {
        let ns = norm(data.positive_roots[data.roots_in_class(s.class)[0]].coeffs);
        let nl = norm(data.positive_roots[data.roots_in_class(l.class)[0]].coeffs);
        r.check("roots.short_shorter_than_long", ns < nl, || format!("short {ns}, long {nl}"));
    }

    // (b) discriminant
    let i_sub = [data.inv1.clone(), data.inv2.clone()];
    let mut product = RatPoly2::from_int(1);
    for c in &data.classes {
        let roots: Vec<_> = data.roots_in_class(c.class);
        let from_roots = roots
            .iter()
            .fold(RatPoly2::from_int(1), |acc, &i| &acc * &data.positive_roots[i].form().pow(2));
        let signed = c.disc_alpha == from_roots || c.disc_alpha == -&from_roots;
        r.check(format!("disc.{}.product_of_squared_roots", c.class), signed, || {
            format!("difference {}", &c.disc_alpha - &from_roots)
        });
        r.poly_eq(format!("disc.{}.composition", c.class), &c.disc_b.substitute(&i_sub), &c.disc_alpha);
        product = &product * &c.disc_alpha;
    }
    let all_roots = data
        .positive_roots
        .iter()
        .fold(RatPoly2::from_int(1), |acc, rt| &acc * &(&rt.form() * &(-&rt.form())));
    r.poly_eq("disc.total_is_product_over_all_roots", &product, &all_roots);

    // (c) Langlands involution
    if let Some(tau) = &data.tau {
        verify_tau(&mut r, data, tau);
    }

    // (d) Jacobian on root hyperplanes
    r.check("jacobian.table_count", data.jacobian_tables.len() == n_pos, || {
        format!("{} tables", data.jacobian_tables.len())
    });
    for (root, table) in data.positive_roots.iter().zip(&data.jacobian_tables) {
        let form = root.form();
        let mut diffs = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let got = poly2_reduce_mod_linear(&data.jacobian[i][j], &form).unwrap();
                let want = poly2_reduce_mod_linear(&table[i][j], &form).unwrap();
                let d = &got - &want;
                if !d.is_zero() {
                    diffs.push(format!("entry ({},{}): {d}", i + 1, j + 1));
                }
            }
        }
        r.check(format!("jacobian.at.{}", root.label()), diffs.is_empty(), || diffs.join("; "));
        // D𝐈 is singular exactly on root hyperplanes
        let det = &(&data.jacobian[0][0] * &data.jacobian[1][1]) - &(&data.jacobian[0][1] * &data.jacobian[1][0]);
        let det_red = poly2_reduce_mod_linear(&det, &form).unwrap();
        r.check(format!("jacobian.singular_on.{}", root.label()), det_red.is_zero(), || {
            format!("det restricts to {det_red}")
        });
    }

    // (e) Killing form
    let k = &data.killing;
    let mut sum = [[Rational::zero(), Rational::zero()], [Rational::zero(), Rational::zero()]];
    for rt in &data.positive_roots {
        for i in 0..2 {
            for j in 0..2 {
                // α and -α contribute equally
                sum[i][j] += qi(2 * rt.coeffs[i] * rt.coeffs[j]);
            }
        }
    }
    r.check("killing.sum_over_roots", &sum == k, || format!("stored {}, Σ α⊗α = {}", fmt_mat(k), fmt_mat(&sum)));
    r.check("killing.symmetric", k[0][1] == k[1][0], || fmt_mat(k));
    r.check(
        "killing.positive_definite",
        k[0][0].is_positive() && mat2_det(k).is_positive(),
        || fmt_mat(k),
    );
    r.check("nabla.table_count", data.nabla_table.len() == n_pos, || {
        format!("{} vectors", data.nabla_table.len())
    });
    for (root, v) in data.positive_roots.iter().zip(&data.nabla_table) {
        let want = data.class(root.class).map(|c| c.killing_square.clone()).unwrap_or_default();
        let got = killing_pair(k, v, v);
        r.rat_eq(format!("killing.square.{}", root.label()), &got, &want);
    }

    // (f) coefficient consistency
    verify_coefficients(&mut r, data);

    VerificationReport { algebra: data.id, clauses: r.0 }
}

fn verify_tau(r: &mut Report, data: &RootSystemData, tau: &TauData) {
    let t = &tau.cartan;
    let degs = [data.degrees.0, data.degrees.1];
    let invs = [&data.inv1, &data.inv2];
    let i_sub = [data.inv1.clone(), data.inv2.clone()];
    for k in 0..2 {
        let d = degs[k];
        if d % 2 != 0 {
            r.check(format!("tau.pullback.I{}", k + 1), false, || format!("odd degree {d}"));
            continue;
        }
        let scale = Rational::one() / num_traits::pow(tau.cartan_scale_sq.clone(), (d / 2) as usize);
        let lhs = poly2_compose_linear(invs[k], t).scale(&scale);
        let rhs = tau.base[k].substitute(&i_sub);
        r.poly_eq(format!("tau.pullback.I{}", k + 1), &lhs, &rhs);
    }
    // τ² = -1 on the Cartan: T² = -3·id
    let t2 = mat2_mul(t, t);
    let minus = [
        [-tau.cartan_scale_sq.clone(), Rational::zero()],
        [Rational::zero(), -tau.cartan_scale_sq.clone()],
    ];
    r.check("tau.cartan_square_is_minus_one", t2 == minus, || format!("T² = {t2:?}"));
    let twice = [
        tau.base[0].substitute(&tau.base),
        tau.base[1].substitute(&tau.base),
    ];
    r.poly_eq("tau.base_involution.b1", &twice[0], &RatPoly2::var(0));
    r.poly_eq("tau.base_involution.b2", &twice[1], &RatPoly2::var(1));
    for i in 0..2 {
        for j in 0..2 {
            r.poly_eq(
                format!("tau.differential.{}{}", i + 1, j + 1),
                &tau.differential[i][j],
                &poly2_partial(&tau.base[i], j + 1),
            );
        }
    }
    if let (Some(s), Some(l)) = (data.class(LengthClass::Short), data.class(LengthClass::Long)) {
        // D_short ∘ τ = D_long / 27 and D_long ∘ τ = 27 D_short
        let ratio = &l.den_scale / &s.den_scale;
        r.poly_eq("tau.swaps_factors.short", &s.disc_b.substitute(&tau.base), &l.disc_b.scale(&(Rational::one() / &ratio)));
        r.poly_eq("tau.swaps_factors.long", &l.disc_b.substitute(&tau.base), &s.disc_b.scale(&ratio));
    }
}

fn verify_coefficients(r: &mut Report, data: &RootSystemData) {
    let i1p = data.inv1.pow(data.b1_power);
    let half = q(1, 2);
    let w_half = qi((data.weyl_order() / 2) as i64);
    for c in &data.classes {
        let name = c.class;
        for i in 0..2 {
            r.poly_eq(
                format!("coeff.{name}.explicit_numerator.u{}", i + 1),
                &c.disc_b.partial(i).scale(&(Rational::one() / &c.num_scale)),
                &c.explicit_num[i],
            );
        }
        r.poly_eq(
            format!("coeff.{name}.explicit_denominator"),
            &c.explicit_den.scale(&c.den_scale),
            &c.disc_b,
        );

        // reduced prefactor: (disc/L²)|_{L=0} · c = I1^p|_{L=0}, the same c for every root of the class
        let mut prefactors = BTreeSet::new();
        let mut failures = Vec::new();
        for i in data.roots_in_class(name) {
            let form = data.positive_roots[i].form();
            let Some(rest) = c.disc_alpha.div_exact(&form.pow(2)) else {
                failures.push(format!("{} does not divide twice", data.positive_roots[i].label()));
                continue;
            };
            let rest = poly2_reduce_mod_linear(&rest, &form).unwrap();
            let top = poly2_reduce_mod_linear(&i1p, &form).unwrap();
            match (rest.leading_term(), top.leading_term()) {
                (Some((_, a)), Some((_, b))) => {
                    let pf = b / a;
                    if rest.scale(&pf) != top {
                        failures.push(format!("{}: not proportional", data.positive_roots[i].label()));
                    }
                    prefactors.insert(pf);
                }
                _ => failures.push(format!("{}: vanishing restriction", data.positive_roots[i].label())),
            }
        }
        r.check(format!("coeff.{name}.prefactor_well_defined"), failures.is_empty() && prefactors.len() == 1, || {
            format!("{}; candidates {}", failures.join(", "), fmt_list(&prefactors))
        });
        let derived = prefactors.into_iter().next().unwrap_or_else(|| c.reduced_prefactor.clone());
        r.rat_eq(format!("coeff.{name}.reduced_prefactor"), &c.reduced_prefactor, &derived);

        let per_point_fancy = &c.killing_square * &derived;
        let cube = num_traits::pow(c.num_scale.clone(), 3);
        let sq = num_traits::pow(c.den_scale.clone(), 2);
        let per_point = &per_point_fancy * &cube / &sq;
        r.rat_eq(format!("coeff.{name}.per_point"), &c.per_point_residue_coeff, &per_point);

        let n_roots = qi(data.roots_in_class(name).len() as i64);
        let per_root = &w_half / &n_roots;
        let aggregate = &c.per_point_residue_coeff * &n_roots * &per_root * &half;
        r.rat_eq(format!("coeff.{name}.counting_identity"), &c.aggregate_coeff_explicit, &aggregate);
        r.rat_eq(
            format!("coeff.{name}.fancy_vs_explicit"),
            &(&c.aggregate_coeff_fancy * &cube / &sq),
            &c.aggregate_coeff_explicit,
        );
    }
}
