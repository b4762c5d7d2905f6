use crate::algebra::AlgebraId;
use crate::error::{Error, Result};
use crate::forms::{Degree, Form, Omega};
use crate::linalg::{unit_vector, Matrix, Scalar, Subspace, Vector};

/// A bimodule homomorphism `K: Ω₁(A) → Ωₖ(A)`, an element of `Ω¹ₖ`.
///
/// `Ω₁(A)` is free as a left module on `de₁, …, de_{n−1}`, so `K` is stored by
/// the images `K(deⱼ)`. Right equivariance is checked on construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormHom {
    algebra: AlgebraId,
    degree: Degree,
    images: Vec<Form>,
}

impl FormHom {
    pub fn new(omega: &Omega, degree: Degree, images: Vec<Form>) -> Result<Self> {
        let k = FormHom::checked_shape(omega, degree, images)?;
        if let Some((i, j)) = equivariance_defect(omega, &k.images)? {
            let labels = omega.algebra().labels();
            return Err(Error::NotEquivariant {
                a: labels[i].clone(),
                b: labels[j].clone(),
            });
        }
        Ok(k)
    }

    /// Builds the map without the equivariance check. Lengths and degrees
    /// are still validated.
    pub fn checked_shape(omega: &Omega, degree: Degree, images: Vec<Form>) -> Result<Self> {
        let n = omega.algebra().dim();
        if images.len() != n - 1 {
            return Err(Error::Length {
                expected: n - 1,
                found: images.len(),
            });
        }
        for f in &images {
            if f.algebra_id() != omega.algebra_id() {
                return Err(Error::AlgebraMismatch);
            }
            if f.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: f.degree(),
                });
            }
        }
        Ok(FormHom {
            algebra: omega.algebra_id(),
            degree,
            images,
        })
    }

    /// From the concatenated coordinates of `K(de₁), …, K(de_{n−1})`.
    pub fn from_coords(omega: &Omega, degree: Degree, coords: &[Scalar]) -> Result<Self> {
        let dk = omega.dim(degree);
        let n = omega.algebra().dim();
        if coords.len() != dk * (n - 1) {
            return Err(Error::Length {
                expected: dk * (n - 1),
                found: coords.len(),
            });
        }
        let images = coords
            .chunks(dk.max(1))
            .take(n - 1)
            .map(|c| omega.form_unchecked(degree, if dk == 0 { Vec::new() } else { c.to_vec() }))
            .collect();
        FormHom::new(omega, degree, images)
    }

    pub fn identity(omega: &Omega) -> Self {
        let images = (0..omega.algebra().dim() - 1).map(|j| omega.basis_form(1, j)).collect();
        FormHom {
            algebra: omega.algebra_id(),
            degree: 1,
            images,
        }
    }

    pub fn zero(omega: &Omega, degree: Degree) -> Self {
        let images = (0..omega.algebra().dim() - 1).map(|_| omega.zero(degree)).collect();
        FormHom {
            algebra: omega.algebra_id(),
            degree,
            images,
        }
    }

    pub fn algebra_id(&self) -> AlgebraId {
        self.algebra
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    /// `K(deⱼ)` for `j = 1, …, n−1`, in order.
    pub fn images(&self) -> &[Form] {
        &self.images
    }

    /// `K(deⱼ)`, `j ≥ 1`.
    pub fn image(&self, j: usize) -> &Form {
        &self.images[j - 1]
    }

    pub fn coords(&self) -> Vector {
        self.images.iter().flat_map(|f| f.coords().iter().cloned()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Form::is_zero)
    }

    fn check(&self, omega: &Omega) -> Result<()> {
        if self.algebra != omega.algebra_id() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// `K(Σ a_j deⱼ) = Σ a_j K(deⱼ)`.
    pub fn apply(&self, omega: &Omega, form: &Form) -> Result<Form> {
        self.check(omega)?;
        if form.degree() != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: form.degree(),
            });
        }
        let n = omega.algebra().dim();
        let r = n - 1;
        let mut out = omega.zero(self.degree);
        for (j, img) in self.images.iter().enumerate() {
            let a: Vector = (0..n).map(|i0| form.coords()[i0 * r + j].clone()).collect();
            if a.iter().all(Scalar::is_zero) {
                continue;
            }
            out.add_scaled(&Scalar::one(), &omega.left_mul(&a, img)?)?;
        }
        Ok(out)
    }

    /// `self ∘ inner` for `inner ∈ Ω¹₁`.
    pub fn compose(&self, omega: &Omega, inner: &FormHom) -> Result<FormHom> {
        self.check(omega)?;
        inner.check(omega)?;
        if inner.degree != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: inner.degree,
            });
        }
        let images = inner
            .images
            .iter()
            .map(|f| self.apply(omega, f))
            .collect::<Result<Vec<_>>>()?;
        FormHom::new(omega, self.degree, images)
    }

    /// Matrix of `K` as a linear map `Ω₁ → Ωₖ` in canonical coordinates.
    pub fn matrix(&self, omega: &Omega) -> Result<Matrix> {
        let cols = omega
            .basis(1)
            .map(|b| self.apply(omega, &b).map(Form::into_coords))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(&cols, omega.dim(self.degree))?)
    }

    pub fn image_space(&self, omega: &Omega) -> Result<Subspace> {
        Ok(self.matrix(omega)?.image())
    }

    pub fn kernel_space(&self, omega: &Omega) -> Result<Subspace> {
        Ok(self.matrix(omega)?.kernel())
    }

    fn zip_with(&self, other: &FormHom, f: impl Fn(&Form, &Form) -> Result<Form>) -> Result<FormHom> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(FormHom {
            algebra: self.algebra,
            degree: self.degree,
            images,
        })
    }

    pub fn add(&self, other: &FormHom) -> Result<FormHom> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &FormHom) -> Result<FormHom> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    pub fn scaled(&self, c: &Scalar) -> FormHom {
        FormHom {
            algebra: self.algebra,
            degree: self.degree,
            images: self.images.iter().map(|f| f.scaled(c)).collect(),
        }
    }

    /// Literal form `d(a) -> …; d(b) -> …`.
    pub fn format(&self, omega: &Omega) -> String {
        let labels = omega.algebra().labels();
        self.images
            .iter()
            .enumerate()
            .map(|(j, f)| format!("d({}) -> {}", labels[j + 1], omega.format(f)))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl std::fmt::Debug for FormHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FormHom")
            .field("degree", &self.degree)
            .field("images", &self.images)
            .finish()
    }
}

/// First pair `(i, j)` where `Σₘ cᵢⱼᵐ K(deₘ) ≠ eᵢ K(deⱼ) + K(deᵢ) eⱼ`.
fn equivariance_defect(omega: &Omega, images: &[Form]) -> Result<Option<(usize, usize)>> {
    let alg = omega.algebra();
    let n = alg.dim();
    for i in 1..n {
        for j in 1..n {
            let mut lhs = omega.zero(images[0].degree());
            for (m, c) in alg.structure_sparse(i, j) {
                if *m >= 1 {
                    lhs.add_scaled(c, &images[m - 1])?;
                }
            }
            let left = omega.left_mul(&unit_vector(n, i), &images[j - 1])?;
            let right = omega.right_mul(&images[i - 1], &unit_vector(n, j))?;
            if lhs != left.add(&right)? {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// A basis of `Ω¹ₖ = Hom_A^A(Ω₁(A), Ωₖ(A))`, canonical (RREF in the
/// concatenated image coordinates).
pub fn hom_space(omega: &Omega, k: Degree) -> Result<Vec<FormHom>> {
    if k < 0 {
        return Ok(Vec::new());
    }
    let alg = omega.algebra();
    let n = alg.dim();
    let r = n - 1;
    let dk = omega.dim(k);
    let rk = omega.tails(k);
    let unknowns = r * dk;
    let right = omega.right_table(k);
    // One constraint block per (i, j); row `s` of block (i, j) is the Ωₖ
    // coordinate `s` of the equivariance defect.
    let mut rows = Subspace::zero(unknowns);
    let mut row = vec![Scalar::zero(); unknowns];
    for i in 1..n {
        for j in 1..n {
            let mut block: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dk];
            for (m, c) in alg.structure_sparse(i, j) {
                if *m >= 1 {
                    for s in 0..dk {
                        block[s].push(((m - 1) * dk + s, c.clone()));
                    }
                }
            }
            // − eᵢ·K(deⱼ)
            for t in 0..dk {
                let (t0, tail) = (t / rk, t % rk);
                for (m, c) in alg.structure_sparse(i, t0) {
                    block[m * rk + tail].push(((j - 1) * dk + t, -c));
                }
            }
            // − K(deᵢ)·eⱼ
            for t in 0..dk {
                for (s, c) in &right[t * n + j] {
                    block[*s].push(((i - 1) * dk + t, -c));
                }
            }
            for entries in block {
                if entries.is_empty() {
                    continue;
                }
                for (u, c) in entries {
                    row[u] += &c;
                }
                if !row.iter().all(Scalar::is_zero) {
                    rows.insert(row.clone())?;
                }
                row.iter_mut().for_each(|x| *x = Scalar::zero());
                if rows.is_full() {
                    return Ok(Vec::new());
                }
            }
        }
    }
    rows.annihilator()
        .basis()
        .iter()
        .map(|v| {
            let images = v.chunks(dk).map(|c| omega.form_unchecked(k, c.to_vec())).collect();
            Ok(FormHom {
                algebra: omega.algebra_id(),
                degree: k,
                images,
            })
        })
        .collect()
}
