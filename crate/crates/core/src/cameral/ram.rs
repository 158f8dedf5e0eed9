use num_complex::Complex64;

use super::{CameralError, CompiledSystem, RamPoint};
use crate::surface::{BranchPoint, Certified};

type C = Complex64;

const COMPAT_TOL: f64 = 1e-8;

/// Ramification points over a certified branch point.
///
/// For each root `L = a*x1 + b*x2` of the vanishing class, the points lie on
/// `α = σ·d` with `d = (b, -a)`: `I1(α) = β1(z0)` fixes `σ² = β1(z0)/I1(d)`, and
/// `I2(α) = β2(z0)` is the compatibility condition that selects the signs.
pub fn ramification_points(cert: &Certified, bp: &BranchPoint) -> Result<Vec<RamPoint>, CameralError> {
    let data = cert.data();
    let sys = cert.system();
    let comp = CompiledSystem::get(data.algebra);
    let (b1, b2) = data.eval(bp.z0);
    let mut out = Vec::new();
    for idx in sys.roots_in_class(bp.class) {
        let root = sys.positive_roots[idx];
        let d = [C::new(root.coeffs[1] as f64, 0.0), C::new(-root.coeffs[0] as f64, 0.0)];
        let sigma = (b1 / comp.inv[0].eval(d[0], d[1])).sqrt();
        let mut best = f64::INFINITY;
        let before = out.len();
        for sign in [1.0, -1.0] {
            let alpha = [d[0] * sigma * sign, d[1] * sigma * sign];
            let r = comp.relative_residual(alpha, [b1, b2]);
            best = best.min(r);
            if r <= COMPAT_TOL {
                out.push(RamPoint { branch: *bp, root_index: idx, alpha, class: bp.class });
            }
        }
        if out.len() == before {
            return Err(CameralError::Compatibility { root: root.label(), z0: bp.z0, residual: best });
        }
    }
    let expected = sys.weyl_order() / 2;
    if out.len() != expected {
        return Err(CameralError::RamCount { z0: bp.z0, got: out.len(), expected });
    }
    Ok(out)
}
