use num_complex::Complex64;

use super::{CameralError, CompiledSystem, FiberPoint};
use crate::numkernel::{find_roots, newton2, NewtonOptions};
use crate::rootsys::AlgebraId;
use crate::surface::LocalHitchinData;

type C = Complex64;

const FIBER_TOL: f64 = 1e-8;

/// The full fiber over `z`: `|W|` points counted with multiplicity.
pub fn fiber(data: &LocalHitchinData, z: C) -> Result<Vec<FiberPoint>, CameralError> {
    let (c1, c2) = data.eval(z);
    fiber_over(data.algebra, z, [c1, c2])
}

/// Solves `I(α) = c` by the precomputed sheared resultant, back-substitution and Newton polish.
pub fn fiber_over(id: AlgebraId, z: C, c: [C; 2]) -> Result<Vec<FiberPoint>, CameralError> {
    let sys = CompiledSystem::get(id);
    let res = sys.resultant.specialize(c[0], c[1]);
    let s_roots = average_clusters(find_roots(&res, 1e-12)?.roots);
    if s_roots.len() != id.weyl_order() {
        return Err(CameralError::FiberCount { got: s_roots.len(), expected: id.weyl_order() });
    }

    let mut out: Vec<FiberPoint> = Vec::with_capacity(s_roots.len());
    for (i, &s) in s_roots.iter().enumerate() {
        let mut cands: Vec<([C; 2], f64)> = y_candidates(sys, s, c[0])
            .into_iter()
            .map(|y| {
                let a = [s - y * sys.shear, y];
                (a, sys.relative_residual(a, c))
            })
            .collect();
        cands.sort_by(|a, b| a.1.total_cmp(&b.1));
        // A repeated s-value with two admissible y's means two distinct fiber
        // points share the coordinate; hand out the second one the second time.
        let repeats = s_roots[..i].iter().filter(|&&w| (w - s).norm() <= 1e-7 * (1.0 + s.norm())).count();
        let pick = if repeats % 2 == 1 && cands.len() > 1 && cands[1].1 <= FIBER_TOL {
            let (a0, a1) = (cands[0].0, cands[1].0);
            let distinct = (a0[0] - a1[0]).norm() + (a0[1] - a1[1]).norm() > 1e-6 * (1.0 + s.norm());
            if distinct { 1 } else { 0 }
        } else {
            0
        };
        let (alpha, r) = polish(sys, cands[pick].0, c);
        out.push(FiberPoint { z, alpha, residual: r });
    }
    let worst = out.iter().map(|p| p.residual).fold(0.0, f64::max);
    if !(worst <= FIBER_TOL) {
        return Err(CameralError::FiberResidual { z, worst });
    }
    Ok(out)
}

/// Replaces each cluster of nearly equal roots by its mean. Over a branch
/// point the resultant has double roots, which the root finder only resolves
/// to about the square root of the working precision; the pair's mean is
/// accurate to full precision.
fn average_clusters(mut roots: Vec<C>) -> Vec<C> {
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let n = roots.len();
    let mut done = vec![false; n];
    for i in 0..n {
        if done[i] {
            continue;
        }
        let members: Vec<usize> = (i..n).filter(|&j| !done[j] && (roots[j] - roots[i]).norm() <= 1e-6 * scale).collect();
        let mean = members.iter().map(|&j| roots[j]).sum::<C>() / members.len() as f64;
        for &j in &members {
            roots[j] = mean;
            done[j] = true;
        }
    }
    roots
}

/// Roots in `y` of `I1(s - k*y, y) = c1`.
fn y_candidates(sys: &CompiledSystem, s: C, c1: C) -> Vec<C> {
    let zero = C::new(0.0, 0.0);
    let coef = |k: usize| sys.sheared[0].get(k).map_or(zero, |p| p.eval(s, zero));
    let (a0, a1, a2) = (coef(0) - c1, coef(1), coef(2));
    if a2.norm() == 0.0 {
        return if a1.norm() == 0.0 { vec![zero] } else { vec![-a0 / a1] };
    }
    let disc = (a1 * a1 - a2 * a0 * 4.0).sqrt();
    let (p, m) = (a1 + disc, a1 - disc);
    let big = if p.norm() >= m.norm() { p } else { m };
    if big.norm() == 0.0 {
        return vec![zero, zero];
    }
    let qv = -big / 2.0;
    vec![qv / a2, a0 / qv]
}

/// Newton polish of `I(α) = c`; kept only if it lowers the residual.
fn polish(sys: &CompiledSystem, a: [C; 2], c: [C; 2]) -> ([C; 2], f64) {
    let r0 = sys.relative_residual(a, c);
    let f = |x: [C; 2]| {
        let v = sys.eval_inv(x);
        let j = sys.eval_jac(x);
        let s = sys.inv_scale(x);
        let w = [1.0 / (s[0] + c[0].norm()).max(f64::MIN_POSITIVE), 1.0 / (s[1] + c[1].norm()).max(f64::MIN_POSITIVE)];
        (
            [(v[0] - c[0]) * w[0], (v[1] - c[1]) * w[1]],
            [[j[0][0] * w[0], j[0][1] * w[0]], [j[1][0] * w[1], j[1][1] * w[1]]],
        )
    };
    match newton2(f, a, NewtonOptions { tol: 1e-15, max_iters: 60, refine: 0 }) {
        Ok(sol) if sol.residual < r0 => (sol.point, sys.relative_residual(sol.point, c)),
        Err(crate::numkernel::NumError::NewtonDiverged { last, .. }) => {
            let r = sys.relative_residual(last, c);
            if r < r0 { (last, r) } else { (a, r0) }
        }
        _ => (a, r0),
    }
}

/// Greedy clustering of fiber points; returns one representative per cluster.
pub fn cluster_distinct(points: &[FiberPoint], rel_tol: f64) -> Vec<FiberPoint> {
    let scale = points.iter().map(|p| p.alpha[0].norm().max(p.alpha[1].norm())).fold(1.0, f64::max);
    let mut reps: Vec<FiberPoint> = Vec::new();
    for p in points {
        let near = reps.iter().any(|r| {
            (r.alpha[0] - p.alpha[0]).norm().max((r.alpha[1] - p.alpha[1]).norm()) <= rel_tol * scale
        });
        if !near {
            reps.push(*p);
        }
    }
    reps
}
