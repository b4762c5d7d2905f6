use crate::deriv::{fn_bracket, insert_hom, FormHom};
use crate::error::{Error, Result};
use crate::forms::Omega;
use crate::linalg::Scalar;

use super::{is_involutive, Projection};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureData {
    /// `[P, P] ∈ Ω¹₂`
    pub bracket: FormHom,
    /// `R = [P, P]∘P`
    pub curvature: FormHom,
    /// `R̄ = [P, P]∘(Id − P)`
    pub cocurvature: FormHom,
}

/// Curvature and cocurvature of a projection, with the splitting
/// `R + R̄ = [P, P]` and the vanishing of `R` on `ker P` and of `R̄` on
/// `im P` re-verified.
pub fn curvature(omega: &Omega, p: &Projection) -> Result<CurvatureData> {
    let bracket = fn_bracket(omega, p.hom(), p.hom())?;
    let q = p.complement(omega)?;
    let curvature = bracket.compose(omega, p.hom())?;
    let cocurvature = bracket.compose(omega, q.hom())?;
    if curvature.add(&cocurvature)? != bracket {
        return Err(Error::Inconsistent("R + R̄ != [P, P]".into()));
    }
    if !curvature.compose(omega, q.hom())?.is_zero() {
        return Err(Error::Inconsistent("curvature does not kill ker P".into()));
    }
    if !cocurvature.compose(omega, p.hom())?.is_zero() {
        return Err(Error::Inconsistent("cocurvature does not kill im P".into()));
    }
    Ok(CurvatureData {
        bracket,
        curvature,
        cocurvature,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BianchiReport {
    /// `[P, R + R̄]`
    pub first: FormHom,
    /// `2[R, P] − j_R R̄ − j_R̄ R`
    pub second: FormHom,
}

impl BianchiReport {
    pub fn first_holds(&self) -> bool {
        self.first.is_zero()
    }

    pub fn second_holds(&self) -> bool {
        self.second.is_zero()
    }
}

/// Residuals of `[P, R + R̄] = 0` and `2[R, P] = j_R R̄ + j_R̄ R`.
pub fn bianchi(omega: &Omega, p: &Projection, data: &CurvatureData) -> Result<BianchiReport> {
    let sum = data.curvature.add(&data.cocurvature)?;
    let first = fn_bracket(omega, p.hom(), &sum)?;
    let lhs = fn_bracket(omega, &data.curvature, p.hom())?.scaled(&Scalar::from_int(2));
    let rhs = insert_hom(omega, &data.curvature, &data.cocurvature)?.add(&insert_hom(
        omega,
        &data.cocurvature,
        &data.curvature,
    )?)?;
    Ok(BianchiReport {
        first,
        second: lhs.sub(&rhs)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlatnessReport {
    pub curvature_zero: bool,
    pub horizontal_involutive: bool,
    pub cocurvature_zero: bool,
    pub vertical_involutive: bool,
}

impl FlatnessReport {
    /// `R = 0 ⇔ ker P involutive` and `R̄ = 0 ⇔ im P involutive`.
    pub fn agrees(&self) -> bool {
        self.curvature_agrees() && self.cocurvature_agrees()
    }

    pub fn curvature_agrees(&self) -> bool {
        self.curvature_zero == self.horizontal_involutive
    }

    pub fn cocurvature_agrees(&self) -> bool {
        self.cocurvature_zero == self.vertical_involutive
    }

    /// The pairing with the roles of the two distributions exchanged:
    /// `R = 0 ⇔ im P involutive` and `R̄ = 0 ⇔ ker P involutive`.
    pub fn agrees_exchanged(&self) -> bool {
        self.curvature_zero == self.vertical_involutive && self.cocurvature_zero == self.horizontal_involutive
    }
}

/// Compares `R = 0` with involutivity of `ker P`, and `R̄ = 0` with
/// involutivity of `im P`.
pub fn flatness_equivalence(omega: &Omega, p: &Projection, data: &CurvatureData) -> Result<FlatnessReport> {
    Ok(FlatnessReport {
        curvature_zero: data.curvature.is_zero(),
        horizontal_involutive: is_involutive(omega, &p.kernel(omega)?)?,
        cocurvature_zero: data.cocurvature.is_zero(),
        vertical_involutive: is_involutive(omega, &p.image(omega)?)?,
    })
}
