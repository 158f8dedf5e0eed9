use num_complex::Complex64;

use super::NumError;

type C = Complex64;

#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions {
    /// Target for the max-norm of the residual.
    pub tol: f64,
    pub max_iters: usize,
    /// Extra steps taken after reaching `tol`, each kept only if it lowers the residual.
    pub refine: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self { tol: 1e-12, max_iters: 50, refine: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct NewtonSolution {
    pub point: [C; 2],
    pub residual: f64,
    pub iterations: usize,
    /// Residual after each step, starting with the seed.
    pub history: Vec<f64>,
}

impl NewtonSolution {
    /// True if the contraction factor of the final step did not degrade,
    /// as it would for a linearly converging (singular) solve.
    pub fn converged_superlinearly(&self) -> bool {
        let h = &self.history;
        if h.len() < 3 {
            return true;
        }
        let (a, b, c) = (h[h.len() - 3], h[h.len() - 2], h[h.len() - 1]);
        c <= 1e-14 || c / b <= 10.0 * b / a
    }
}

/// Solves `f(x) = 0` for two complex unknowns by Newton's method.
///
/// `f` returns the residual and its Jacobian `J[i][j] = ∂f_i/∂x_j`.
pub fn newton2<F>(mut f: F, start: [C; 2], opts: NewtonOptions) -> Result<NewtonSolution, NumError>
where
    F: FnMut([C; 2]) -> ([C; 2], [[C; 2]; 2]),
{
    let mut x = start;
    let (mut r, mut j) = f(x);
    let mut res = max_norm(&r);
    let mut history = vec![res];
    for it in 0..=opts.max_iters {
        if !res.is_finite() {
            return Err(NumError::NewtonDiverged { last: x, residual: res });
        }
        if res <= opts.tol {
            let mut sol = NewtonSolution { point: x, residual: res, iterations: it, history };
            for _ in 0..opts.refine {
                let Some(step) = newton_step(&r, &j) else { break };
                let cand = [x[0] - step[0], x[1] - step[1]];
                let (rc, jc) = f(cand);
                let rn = max_norm(&rc);
                if !(rn < sol.residual) {
                    break;
                }
                (x, r, j) = (cand, rc, jc);
                sol.point = x;
                sol.residual = rn;
                sol.iterations += 1;
                sol.history.push(rn);
            }
            return Ok(sol);
        }
        if it == opts.max_iters {
            break;
        }
        let Some(step) = newton_step(&r, &j) else {
            return Err(NumError::SingularJacobian { last: x, residual: res });
        };
        x = [x[0] - step[0], x[1] - step[1]];
        (r, j) = f(x);
        res = max_norm(&r);
        history.push(res);
        if res > 1e8 * history[0].max(opts.tol) {
            return Err(NumError::NewtonDiverged { last: x, residual: res });
        }
    }
    Err(NumError::NewtonDiverged { last: x, residual: res })
}

fn newton_step(r: &[C; 2], j: &[[C; 2]; 2]) -> Option<[C; 2]> {
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let scale = j.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
    if det.norm() <= 1e-14 * scale * scale || !det.is_finite() {
        return None;
    }
    Some([(j[1][1] * r[0] - j[0][1] * r[1]) / det, (j[0][0] * r[1] - j[1][0] * r[0]) / det])
}

fn max_norm(v: &[C; 2]) -> f64 {
    let (a, b) = (v[0].norm(), v[1].norm());
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}
