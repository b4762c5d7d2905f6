use std::collections::VecDeque;

use crate::algebra::{AlgebraId, Subalgebra};
use crate::error::{Error, Result};
use crate::forms::{ideal_component, Form, Omega};
use crate::linalg::{unit_vector, LinalgError, Matrix, Scalar, Subspace, Vector};

/// A sub-bimodule of `Ω₁(A)`, stored as a canonical subspace of the
/// coordinates of `Ω₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Distribution {
    algebra: AlgebraId,
    space: Subspace,
}

impl Distribution {
    /// Accepts `space` only if it is already closed under both actions.
    pub fn from_subspace(omega: &Omega, space: Subspace) -> Result<Self> {
        check_ambient(omega, &space)?;
        for v in space.basis() {
            for image in translates(omega, v)? {
                if !space.contains_vector(&image)? {
                    return Err(Error::NotBimodule(format!(
                        "{} is not in the subspace",
                        omega.format(&omega.form_unchecked(1, image))
                    )));
                }
            }
        }
        Ok(Distribution {
            algebra: omega.algebra_id(),
            space,
        })
    }

    pub fn zero(omega: &Omega) -> Self {
        Distribution {
            algebra: omega.algebra_id(),
            space: Subspace::zero(omega.dim(1)),
        }
    }

    pub fn full(omega: &Omega) -> Self {
        Distribution {
            algebra: omega.algebra_id(),
            space: Subspace::full(omega.dim(1)),
        }
    }

    pub fn algebra_id(&self) -> AlgebraId {
        self.algebra
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_forms(&self, omega: &Omega) -> Vec<Form> {
        self.space
            .basis()
            .iter()
            .map(|v| omega.form_unchecked(1, v.clone()))
            .collect()
    }

    pub fn contains(&self, form: &Form) -> Result<bool> {
        if form.algebra_id() != self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        if form.degree() != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: form.degree(),
            });
        }
        Ok(self.space.contains_vector(form.coords())?)
    }

    pub(crate) fn check(&self, omega: &Omega) -> Result<()> {
        if self.algebra != omega.algebra_id() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }
}

fn check_ambient(omega: &Omega, space: &Subspace) -> Result<()> {
    if space.ambient_dim() != omega.dim(1) {
        return Err(LinalgError::DimensionMismatch {
            expected: omega.dim(1),
            found: space.ambient_dim(),
        }
        .into());
    }
    Ok(())
}

/// `eᵢ·v` and `v·eᵢ` for every non-unit basis element.
fn translates(omega: &Omega, v: &[Scalar]) -> Result<Vec<Vector>> {
    let n = omega.algebra().dim();
    let f = omega.form_unchecked(1, v.to_vec());
    let mut out = Vec::with_capacity(2 * (n - 1));
    for i in 1..n {
        let e = unit_vector(n, i);
        out.push(omega.left_mul(&e, &f)?.into_coords());
        out.push(omega.right_mul(&f, &e)?.into_coords());
    }
    Ok(out)
}

/// The sub-bimodule generated by `spanning`: the span closed under left and
/// right multiplication by basis elements.
pub fn make_distribution(omega: &Omega, spanning: &[Form]) -> Result<Distribution> {
    let mut space = Subspace::zero(omega.dim(1));
    let mut queue = VecDeque::new();
    for f in spanning {
        if f.algebra_id() != omega.algebra_id() {
            return Err(Error::AlgebraMismatch);
        }
        if f.degree() != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: f.degree(),
            });
        }
        if space.insert(f.coords().to_vec())? {
            queue.push_back(f.coords().to_vec());
        }
    }
    while let Some(v) = queue.pop_front() {
        if space.is_full() {
            break;
        }
        for w in translates(omega, &v)? {
            if space.insert(w.clone())? {
                queue.push_back(w);
            }
        }
    }
    Ok(Distribution {
        algebra: omega.algebra_id(),
        space,
    })
}

/// `d(D) ⊆ (D)`, checked in degree 2.
pub fn is_involutive(omega: &Omega, d: &Distribution) -> Result<bool> {
    d.check(omega)?;
    if d.space.is_zero() {
        return Ok(true);
    }
    let ideal = ideal_component(omega, &d.space, 2)?;
    for f in d.basis_forms(omega) {
        if !ideal.contains_vector(omega.differential(&f)?.coords())? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrabilityReport {
    pub integrable: bool,
    /// `B_max = {a ∈ A : da ∈ D}`.
    pub witness: Subalgebra,
    /// The sub-bimodule generated by `d(B_max)`.
    pub generated: Distribution,
    /// The plain linear span of `A·d(B_max)` and `d(B_max)·A`.
    pub linear_span: Subspace,
}

impl IntegrabilityReport {
    pub fn readings_differ(&self) -> bool {
        &self.linear_span != self.generated.space()
    }
}

/// Decides whether `D` is generated by `d(B)` for some unital subalgebra `B`,
/// using the largest candidate `B_max = {a : da ∈ D}`.
pub fn globally_integrable(omega: &Omega, d: &Distribution) -> Result<IntegrabilityReport> {
    d.check(omega)?;
    let alg = omega.algebra();
    let n = alg.dim();
    let d_of = |v: &[Scalar]| -> Form { omega.d_element(&alg.element(v.to_vec()).expect("length")) };
    // B_max is the kernel of a ↦ ann(D)·da
    let ann = d.space.annihilator();
    let cols: Vec<Vector> = (0..n)
        .map(|i| {
            let da = d_of(&unit_vector(n, i));
            ann.basis()
                .iter()
                .map(|row| row.iter().zip(da.coords()).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    let space = if ann.is_zero() {
        Subspace::full(n)
    } else {
        Matrix::from_columns(&cols, ann.dim())?.kernel()
    };
    let witness = Subalgebra::new(alg, space)?;
    let gens: Vec<Form> = witness.space().basis().iter().map(|b| d_of(b)).collect();
    let generated = make_distribution(omega, &gens)?;
    let mut linear_span = Subspace::zero(omega.dim(1));
    for g in &gens {
        for i in 0..n {
            let e = unit_vector(n, i);
            linear_span.insert(omega.left_mul(&e, g)?.into_coords())?;
            linear_span.insert(omega.right_mul(g, &e)?.into_coords())?;
        }
    }
    Ok(IntegrabilityReport {
        integrable: generated == *d,
        witness,
        generated,
        linear_span,
    })
}
