//! Exact per-algebra tables (roots, invariants, Killing form, discriminant
//! factors, ∇λ directions, aggregate coefficients) and their verifier.

mod tables;
mod types;
mod verify;


use thiserror::Error;

use crate::exactpoly::Ring;

pub use tables::{build, get, reflections_from_gram};
pub use types::{AlgebraId, ClassData, LengthClass, PositiveRoot, RootSystemData, TauData};
pub use verify::{verify_algebra, ClauseResult, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSysError {
    #[error("involution undefined for {0}: only G2 is Langlands self-dual with a nontrivial base involution")]
    InvolutionUndefined(AlgebraId),
}

fn tau_of(data: &RootSystemData) -> Result<&TauData, RootSysError> {
    data.tau.as_ref().ok_or(RootSysError::InvolutionUndefined(data.id))
}

/// `τ(b1, b2) = (b1, -b2 + (4/27) b1³)` evaluated in any ring.
pub fn langlands_tau<R: Ring>(data: &RootSystemData, b1: R, b2: R) -> Result<(R, R), RootSysError> {
    let tau = tau_of(data)?;
    let at = [b1, b2];
    Ok((tau.base[0].eval(&at), tau.base[1].eval(&at)))
}

/// `dτ_b(u1, u2) = (u1, -u2 + (4/9) b1² u1)`.
pub fn langlands_dtau<R: Ring>(
    data: &RootSystemData,
    b: (R, R),
    u: (R, R),
) -> Result<(R, R), RootSysError> {
    let tau = tau_of(data)?;
    let at = [b.0, b.1];
    let d = &tau.differential;
    let row = |i: usize| d[i][0].eval(&at) * u.0.clone() + d[i][1].eval(&at) * u.1.clone();
    Ok((row(0), row(1)))
}
