use crate::deriv::{hom_space, FormHom};
use crate::error::{Error, Result};
use crate::forms::{Form, Omega};
use crate::linalg::{solve, Matrix, Scalar, Solution, Subspace, Vector};

use super::Distribution;

/// An idempotent `P ∈ Ω¹₁`. `im P` is the vertical distribution and
/// `ker P = im(Id − P)` the horizontal one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Projection {
    hom: FormHom,
}

impl Projection {
    pub fn new(omega: &Omega, hom: FormHom) -> Result<Self> {
        if hom.degree() != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: hom.degree(),
            });
        }
        if hom.compose(omega, &hom)? != hom {
            return Err(Error::NotProjection("P∘P != P".into()));
        }
        Ok(Projection { hom })
    }

    pub fn hom(&self) -> &FormHom {
        &self.hom
    }

    pub fn into_hom(self) -> FormHom {
        self.hom
    }

    /// `Id − P`.
    pub fn complement(&self, omega: &Omega) -> Result<Projection> {
        Ok(Projection {
            hom: FormHom::identity(omega).sub(&self.hom)?,
        })
    }

    pub fn image(&self, omega: &Omega) -> Result<Distribution> {
        Distribution::from_subspace(omega, self.hom.image_space(omega)?)
    }

    pub fn kernel(&self, omega: &Omega) -> Result<Distribution> {
        Distribution::from_subspace(omega, self.hom.kernel_space(omega)?)
    }

    pub fn is_trivial(&self, omega: &Omega) -> bool {
        self.hom.is_zero() || self.hom == FormHom::identity(omega)
    }
}

/// Projections `P ∈ Ω¹₁` with `P = Id` on `fixed` and `P = 0` on `killed`,
/// and with image inside `fixed` when `confine` is set. Returns the solution
/// with all free coordinates zero, or `None`.
fn solve_projection(omega: &Omega, fixed: &Subspace, killed: &Subspace, confine: bool) -> Result<Option<Projection>> {
    let basis = hom_space(omega, 1)?;
    let n = omega.algebra().dim();
    let dim1 = omega.dim(1);
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let push_eq = |rows: &mut Vec<Vector>, rhs: &mut Vec<Scalar>, values: Vec<Vector>, target: &[Scalar]| {
        for (s, t) in target.iter().enumerate() {
            rows.push(values.iter().map(|v| v[s].clone()).collect());
            rhs.push(t.clone());
        }
    };
    let apply_all = |v: &Vector| -> Result<Vec<Vector>> {
        let f = omega.form_unchecked(1, v.clone());
        basis
            .iter()
            .map(|h| h.apply(omega, &f).map(Form::into_coords))
            .collect()
    };
    for v in fixed.basis() {
        push_eq(&mut rows, &mut rhs, apply_all(v)?, v);
    }
    let zero = vec![Scalar::zero(); dim1];
    for v in killed.basis() {
        push_eq(&mut rows, &mut rhs, apply_all(v)?, &zero);
    }
    if confine {
        let ann = fixed.annihilator();
        for j in 0..n - 1 {
            let images: Vec<Vector> = basis.iter().map(|h| h.image(j + 1).coords().to_vec()).collect();
            for a in ann.basis() {
                rows.push(
                    images
                        .iter()
                        .map(|img| a.iter().zip(img).map(|(x, y)| x * y).sum())
                        .collect(),
                );
                rhs.push(Scalar::zero());
            }
        }
    }
    let coeffs = if basis.is_empty() {
        if rhs.iter().all(Scalar::is_zero) {
            Vec::new()
        } else {
            return Ok(None);
        }
    } else if rows.is_empty() {
        vec![Scalar::zero(); basis.len()]
    } else {
        let m = Matrix::from_rows_with_cols(rows, basis.len())?;
        match solve(&m, &rhs)? {
            Solution::Solvable { particular, .. } => particular,
            Solution::NoSolution => return Ok(None),
        }
    };
    let mut p = FormHom::zero(omega, 1);
    for (c, h) in coeffs.iter().zip(&basis) {
        if !c.is_zero() {
            p = p.add(&h.scaled(c))?;
        }
    }
    Ok(Some(Projection::new(omega, p)?))
}

/// A bimodule projection onto `D`, if `D` is a direct summand of `Ω₁`.
pub fn find_projection(omega: &Omega, d: &Distribution) -> Result<Option<Projection>> {
    d.check(omega)?;
    solve_projection(omega, d.space(), &Subspace::zero(omega.dim(1)), true)
}

/// The projection onto `d` along `c`, if `Ω₁ = d ⊕ c` and it is a bimodule map.
pub fn projection_along(omega: &Omega, d: &Distribution, c: &Distribution) -> Result<Option<Projection>> {
    d.check(omega)?;
    c.check(omega)?;
    if d.dim() + c.dim() != omega.dim(1) || !d.space().intersection(c.space())?.is_zero() {
        return Ok(None);
    }
    solve_projection(omega, d.space(), c.space(), false)
}
