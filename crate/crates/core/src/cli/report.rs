use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use super::{Format, InstanceConfig, Outcome, EXIT_GENERICITY, EXIT_OK, EXIT_PARSE, EXIT_TOLERANCE, SCHEMA_VERSION};
use crate::bporacle::{bp_cubic, OracleCubic, ResidueMethod};
use crate::cameral::{ramification_points, RamPoint};
use crate::cubic::{check_tau_invariance, cubic_explicit, cubic_fancy, per_point_residue, rel_diff, CubicValue};
use crate::rootsys::{AlgebraId, LengthClass, VerificationReport};
use crate::surface::{certify_generic, BranchPoint, Certified};

type C = Complex64;

pub(super) trait Render: Serialize {
    fn table(&self) -> String;
}

pub(super) fn render<R: Render>(r: &R, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
        Format::Table => r.table(),
    }
}

fn cfmt(z: C) -> String {
    format!("{:+.12e}{:+.12e}i", z.re, z.im)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub passed: bool,
    pub algebras: Vec<VerificationReport>,
}

impl VerifyReport {
    pub fn new(algebras: Vec<VerificationReport>) -> Self {
        let passed = algebras.iter().all(|r| r.passed());
        VerifyReport { schema_version: SCHEMA_VERSION, command: "verify", passed, algebras }
    }
}

impl Render for VerifyReport {
    fn table(&self) -> String {
        let mut s = String::new();
        for r in &self.algebras {
            let _ = writeln!(s, "== {} ==", r.algebra);
            s.push_str(&r.to_string());
            let _ = writeln!(s, "{}: {}", r.algebra, if r.passed() { "all clauses PASS" } else { "FAIL" });
        }
        s
    }
}

/// A ramification point, flattened for reports.
#[derive(Clone, Debug, Serialize)]
pub struct RamRow {
    #[serde(with = "crate::cjson::one")]
    pub z0: C,
    pub class: LengthClass,
    pub root: String,
    #[serde(with = "crate::cjson::pair")]
    pub alpha: [C; 2],
}

impl RamRow {
    fn new(cert: &Certified, r: &RamPoint) -> Self {
        RamRow { z0: r.branch.z0, class: r.class, root: cert.system().positive_roots[r.root_index].label(), alpha: r.alpha }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub algebra: AlgebraId,
    pub radius: f64,
    pub branch_points: Vec<BranchPoint>,
    pub ram_points: Vec<RamRow>,
    pub explicit: CubicValue,
    pub fancy: CubicValue,
    #[serde(with = "crate::cjson::one")]
    pub explicit_total: C,
    #[serde(with = "crate::cjson::one")]
    pub fancy_total: C,
    /// `|fancy - explicit| / max(|fancy|, |explicit|)`.
    pub fancy_vs_explicit: f64,
}

impl EvalReport {
    fn table_into(&self, s: &mut String) {
        let _ = writeln!(s, "algebra {}  chart radius {}", self.algebra, self.radius);
        let _ = writeln!(s, "branch points: {}", self.branch_points.len());
        for (bp, t) in self.branch_points.iter().zip(&self.explicit.per_branch) {
            let _ = writeln!(s, "  {:<8} z0 = {}  contribution {}", bp.class.name(), cfmt(bp.z0), cfmt(t.contribution));
        }
        let _ = writeln!(s, "ramification points: {}", self.ram_points.len());
        for (cls, v) in &self.explicit.per_class {
            let _ = writeln!(s, "class {:<8} {}", cls.name(), cfmt(*v));
        }
        let _ = writeln!(s, "explicit total  {}", cfmt(self.explicit_total));
        let _ = writeln!(s, "fancy total     {}", cfmt(self.fancy_total));
        let _ = writeln!(s, "fancy vs explicit  {:.3e}", self.fancy_vs_explicit);
    }
}

impl Render for EvalReport {
    fn table(&self) -> String {
        let mut s = String::new();
        self.table_into(&mut s);
        s
    }
}

/// Closed form and both oracle methods at one ramification point.
#[derive(Clone, Debug, Serialize)]
pub struct PointRow {
    #[serde(flatten)]
    pub ram: RamRow,
    #[serde(with = "crate::cjson::one")]
    pub closed_form: C,
    #[serde(with = "crate::cjson::one")]
    pub full: C,
    #[serde(with = "crate::cjson::one")]
    pub reduced: C,
    pub delta_closed_form: f64,
    pub delta_reduced: f64,
    pub tail_bound: f64,
    pub radius: f64,
    pub samples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TauReport {
    /// `checked` or `skipped`.
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<crate::cubic::TauCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    #[serde(flatten)]
    pub eval: EvalReport,
    pub oracle_full: CubicValue,
    pub oracle_reduced: CubicValue,
    pub points: Vec<PointRow>,
    /// Oracle vs explicit, total.
    pub total_delta: f64,
    /// Oracle vs explicit, per length class.
    pub class_deltas: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<TauReport>,
    pub max_delta: f64,
    pub tol: f64,
    pub passed: bool,
}

impl Render for CrosscheckReport {
    fn table(&self) -> String {
        let mut s = String::new();
        self.eval.table_into(&mut s);
        let _ = writeln!(s, "{:<8} {:<10} {:>12} {:>12} {:>10}", "class", "root", "d(closed)", "d(reduced)", "tail");
        for p in &self.points {
            let _ = writeln!(
                s,
                "{:<8} {:<10} {:>12.3e} {:>12.3e} {:>10.1e}",
                p.ram.class.name(),
                p.ram.root,
                p.delta_closed_form,
                p.delta_reduced,
                p.tail_bound
            );
        }
        let _ = writeln!(s, "oracle total    {}", cfmt(self.oracle_full.total));
        let _ = writeln!(s, "total delta     {:.3e}", self.total_delta);
        if let Some(t) = &self.tau {
            match (&t.check, &t.reason) {
                (Some(c), _) => {
                    let _ = writeln!(s, "tau invariance  {:.3e} (classes {:.3e}, {:.3e})", c.diff, c.short_to_long, c.long_to_short);
                }
                (None, r) => {
                    let _ = writeln!(s, "tau invariance  skipped: {}", r.as_deref().unwrap_or(""));
                }
            }
        }
        let _ = writeln!(
            s,
            "max delta {:.3e} vs tol {:.1e}: {}",
            self.max_delta,
            self.tol,
            if self.passed { "PASS" } else { "FAIL" }
        );
        s
    }
}

struct Prepared {
    cert: Certified,
    rams: Vec<RamPoint>,
}

fn prepare(cfg: &InstanceConfig) -> Result<Prepared, Outcome> {
    let data = cfg.data().map_err(|e| Outcome::fail(EXIT_PARSE, e))?;
    let cert = certify_generic(&data, &cfg.genericity).map_err(|e| Outcome::fail(EXIT_GENERICITY, format!("not generic: {e}")))?;
    let mut rams = Vec::new();
    for bp in cert.branch_points() {
        rams.extend(ramification_points(&cert, bp).map_err(|e| Outcome::fail(EXIT_GENERICITY, format!("not generic: {e}")))?);
    }
    Ok(Prepared { cert, rams })
}

fn eval_report(cfg: &InstanceConfig, p: &Prepared) -> EvalReport {
    let [u, v, w] = cfg.tangents();
    let explicit = cubic_explicit(&p.cert, &u, &v, &w);
    let fancy = cubic_fancy(&p.cert, &u, &v, &w);
    EvalReport {
        schema_version: SCHEMA_VERSION,
        command: "eval",
        algebra: cfg.algebra,
        radius: cfg.radius,
        branch_points: p.cert.branch_points().to_vec(),
        ram_points: p.rams.iter().map(|r| RamRow::new(&p.cert, r)).collect(),
        explicit_total: explicit.total,
        fancy_total: fancy.total,
        fancy_vs_explicit: rel_diff(fancy.total, explicit.total),
        explicit,
        fancy,
    }
}

pub(super) fn cmd_eval(cfg: &InstanceConfig, format: Format) -> Outcome {
    match prepare(cfg) {
        Ok(p) => Outcome::ok(EXIT_OK, render(&eval_report(cfg, &p), format)),
        Err(o) => o,
    }
}

pub(super) fn cmd_crosscheck(cfg: &InstanceConfig, format: Format) -> Outcome {
    let p = match prepare(cfg) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let mut eval = eval_report(cfg, &p);
    eval.command = "crosscheck";
    let [u, v, w] = cfg.tangents();
    let opts = cfg.oracle.options();
    let run = |m| bp_cubic(&p.cert, &u, &v, &w, m, &opts);
    let (full, reduced): (OracleCubic, OracleCubic) = match (run(ResidueMethod::Full), run(ResidueMethod::Reduced)) {
        (Ok(f), Ok(r)) => (f, r),
        (Err(e), _) | (_, Err(e)) => return Outcome::fail(EXIT_TOLERANCE, format!("oracle failed: {e}")),
    };

    let points: Vec<PointRow> = full
        .records
        .iter()
        .zip(&reduced.records)
        .map(|(f, r)| {
            let closed = per_point_residue(&p.cert, &f.ram.branch, &u, &v, &w);
            PointRow {
                ram: RamRow::new(&p.cert, &f.ram),
                closed_form: closed,
                full: f.value,
                reduced: r.value,
                delta_closed_form: rel_diff(f.value, closed),
                delta_reduced: rel_diff(f.value, r.value),
                tail_bound: f.laurent_tail_bound.max(r.laurent_tail_bound),
                radius: f.radius,
                samples: f.samples.max(r.samples),
            }
        })
        .collect();
    let total_delta = rel_diff(full.value.total, eval.explicit_total);
    let class_deltas: BTreeMap<String, f64> = eval
        .explicit
        .per_class
        .iter()
        .map(|(cls, val)| (cls.name().to_string(), rel_diff(full.value.class_total(*cls), *val)))
        .collect();

    let tau = (cfg.algebra == AlgebraId::G2).then(|| match check_tau_invariance(&p.cert, &u, &v, &w) {
        Ok(check) => TauReport { status: "checked", check: Some(check), reason: None },
        Err(e) => TauReport { status: "skipped", check: None, reason: Some(e.to_string()) },
    });

    let mut max_delta = total_delta.max(eval.fancy_vs_explicit);
    for d in class_deltas.values() {
        max_delta = max_delta.max(*d);
    }
    for pt in &points {
        max_delta = max_delta.max(pt.delta_closed_form).max(pt.delta_reduced);
    }
    if let Some(TauReport { check: Some(c), .. }) = &tau {
        max_delta = max_delta.max(c.worst());
    }
    let tol = cfg.oracle.tol;
    let passed = max_delta <= tol;
    let rep = CrosscheckReport {
        eval,
        oracle_full: full.value,
        oracle_reduced: reduced.value,
        points,
        total_delta,
        class_deltas,
        tau,
        max_delta,
        tol,
        passed,
    };
    Outcome::ok(if passed { EXIT_OK } else { EXIT_TOLERANCE }, render(&rep, format))
}
