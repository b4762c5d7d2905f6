use super::{Degree, Form, Omega};
use crate::error::{Error, Result};
use crate::linalg::{LinalgError, Subspace};

/// Degree-`k` component of the two-sided ideal of `Ω(A)` generated by a
/// subspace `D ⊆ Ω₁(A)`: the span of `β·δ·γ` with `β ∈ Ω_p`, `δ ∈ D`,
/// `γ ∈ Ω_q`, `p + q + 1 = k`.
pub fn ideal_component(omega: &Omega, d: &Subspace, k: Degree) -> Result<Subspace> {
    if k < 1 {
        return Err(Error::DegreeTooSmall { min: 1, found: k });
    }
    let dim1 = omega.dim(1);
    if d.ambient_dim() != dim1 {
        return Err(LinalgError::DimensionMismatch {
            expected: dim1,
            found: d.ambient_dim(),
        }
        .into());
    }
    let dimk = omega.dim(k);
    let mut out = Subspace::zero(dimk);
    if d.is_zero() {
        return Ok(out);
    }
    let gens: Vec<Form> = d.basis().iter().map(|v| omega.form_unchecked(1, v.clone())).collect();
    for p in 0..k {
        let q = k - 1 - p;
        // left part Ω_p · D
        let mut left = Subspace::zero(omega.dim(p + 1));
        for beta in 0..omega.dim(p) {
            for g in &gens {
                let mut v = omega.zero(p + 1);
                omega.add_basis_times(v.coords_mut(), p, beta, g, &crate::linalg::Scalar::one());
                left.insert(v.into_coords())?;
                if left.is_full() {
                    break;
                }
            }
        }
        for s in left.basis() {
            let s = omega.form_unchecked(p + 1, s.clone());
            for gamma in omega.basis(q) {
                out.insert(omega.mul(&s, &gamma)?.into_coords())?;
                if out.is_full() {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}
