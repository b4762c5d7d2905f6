use std::fmt;

use crate::error::Result;
use crate::forms::{Degree, Omega};
use crate::linalg::{unit_vector, Matrix, Scalar, Subspace, Vector};

use super::hom_space;

/// Target bimodule for [`check_universal_derivation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BimoduleTag {
    Algebra,
    Omega1,
    Omega2,
}

impl BimoduleTag {
    pub const ALL: [BimoduleTag; 3] = [BimoduleTag::Algebra, BimoduleTag::Omega1, BimoduleTag::Omega2];

    pub fn degree(self) -> Degree {
        match self {
            BimoduleTag::Algebra => 0,
            BimoduleTag::Omega1 => 1,
            BimoduleTag::Omega2 => 2,
        }
    }
}

impl fmt::Display for BimoduleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BimoduleTag::Algebra => "A",
            BimoduleTag::Omega1 => "Omega1",
            BimoduleTag::Omega2 => "Omega2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalDerivationReport {
    pub target: BimoduleTag,
    pub der_dim: usize,
    pub hom_dim: usize,
    /// Rank of `φ ↦ φ∘d` on a basis of the hom space.
    pub rank: usize,
    /// Every `φ∘d` satisfies the Leibniz rule.
    pub lands_in_derivations: bool,
}

impl UniversalDerivationReport {
    pub fn is_isomorphism(&self) -> bool {
        self.lands_in_derivations && self.rank == self.hom_dim && self.der_dim == self.hom_dim
    }
}

/// Leibniz defect `D(eᵢeⱼ) − D(eᵢ)eⱼ − eᵢD(eⱼ)` of a linear map
/// `D: A → Ω_m` given by the concatenated values `D(e₀), …, D(e_{n−1})`.
fn leibniz_residual(omega: &Omega, m: Degree, values: &[Scalar]) -> Result<Vector> {
    let n = omega.algebra().dim();
    let dm = omega.dim(m);
    let forms = (0..n)
        .map(|i| omega.form(m, values[i * dm..(i + 1) * dm].to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let minus = Scalar::from_int(-1);
    let mut out = Vec::with_capacity(n * n * dm);
    for i in 0..n {
        for j in 0..n {
            let mut r = omega.zero(m);
            for (t, c) in omega.algebra().structure_sparse(i, j) {
                r.add_scaled(c, &forms[*t])?;
            }
            r.add_scaled(&minus, &omega.right_mul(&forms[i], &unit_vector(n, j))?)?;
            r.add_scaled(&minus, &omega.left_mul(&unit_vector(n, i), &forms[j])?)?;
            out.extend(r.into_coords());
        }
    }
    Ok(out)
}

/// Compares derivations `A → M` with bimodule maps `Ω₁(A) → M` through
/// `φ ↦ φ∘d`, for `M ∈ {A, Ω₁, Ω₂}`.
pub fn check_universal_derivation(omega: &Omega, target: BimoduleTag) -> Result<UniversalDerivationReport> {
    let m = target.degree();
    let n = omega.algebra().dim();
    let dm = omega.dim(m);
    let unknowns = n * dm;
    let cols = (0..unknowns)
        .map(|u| leibniz_residual(omega, m, &unit_vector(unknowns, u)))
        .collect::<Result<Vec<_>>>()?;
    let der: Subspace = Matrix::from_columns(&cols, n * n * dm)?.kernel();

    let homs = hom_space(omega, m)?;
    let images: Vec<Vector> = homs
        .iter()
        .map(|phi| {
            let mut v = vec![Scalar::zero(); dm];
            for j in 1..n {
                v.extend(phi.image(j).coords().iter().cloned());
            }
            v
        })
        .collect();
    let mut lands = true;
    for v in &images {
        if !der.contains_vector(v)? {
            lands = false;
        }
    }
    let rank = Subspace::from_spanning(unknowns, images)?.dim();
    Ok(UniversalDerivationReport {
        target,
        der_dim: der.dim(),
        hom_dim: homs.len(),
        rank,
        lands_in_derivations: lands,
    })
}
