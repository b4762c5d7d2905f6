use crate::algebra::AlgebraId;
use crate::error::{Error, Result};
use crate::forms::{accumulate_outer, nonzero, Degree, Form, Omega};
use crate::linalg::{unit_vector, Scalar};

use super::FormHom;

/// A graded derivation of `Ω(A)` of degree `k`, stored by its values on the
/// generators: `D(eᵢ) ∈ Ωₖ` for all `i` and `D(deⱼ) ∈ Ωₖ₊₁` for `j ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedDerivation {
    algebra: AlgebraId,
    degree: Degree,
    on_elements: Vec<Form>,
    on_differentials: Vec<Form>,
}

impl GradedDerivation {
    /// Validates the generator data: `D(1) = 0`, the Leibniz rule on `A`, and
    /// compatibility with `d(eᵢeⱼ) = deᵢ·eⱼ + eᵢ·deⱼ`.
    pub fn new(omega: &Omega, degree: Degree, on_elements: Vec<Form>, on_differentials: Vec<Form>) -> Result<Self> {
        let d = GradedDerivation::unchecked(omega, degree, on_elements, on_differentials)?;
        d.verify(omega)?;
        Ok(d)
    }

    /// Shape checks only.
    pub fn unchecked(
        omega: &Omega,
        degree: Degree,
        on_elements: Vec<Form>,
        on_differentials: Vec<Form>,
    ) -> Result<Self> {
        let n = omega.algebra().dim();
        if on_elements.len() != n {
            return Err(Error::Length {
                expected: n,
                found: on_elements.len(),
            });
        }
        if on_differentials.len() != n - 1 {
            return Err(Error::Length {
                expected: n - 1,
                found: on_differentials.len(),
            });
        }
        for (f, k) in on_elements
            .iter()
            .map(|f| (f, degree))
            .chain(on_differentials.iter().map(|f| (f, degree + 1)))
        {
            if f.algebra_id() != omega.algebra_id() {
                return Err(Error::AlgebraMismatch);
            }
            if f.degree() != k {
                return Err(Error::DegreeMismatch {
                    expected: k,
                    found: f.degree(),
                });
            }
        }
        Ok(GradedDerivation {
            algebra: omega.algebra_id(),
            degree,
            on_elements,
            on_differentials,
        })
    }

    pub fn zero(omega: &Omega, degree: Degree) -> Self {
        let n = omega.algebra().dim();
        GradedDerivation {
            algebra: omega.algebra_id(),
            degree,
            on_elements: (0..n).map(|_| omega.zero(degree)).collect(),
            on_differentials: (1..n).map(|_| omega.zero(degree + 1)).collect(),
        }
    }

    /// The differential `d` as a derivation of degree 1.
    pub fn differential(omega: &Omega) -> Self {
        let n = omega.algebra().dim();
        let mut on_elements = vec![omega.zero(1)];
        on_elements.extend((0..n - 1).map(|j| omega.basis_form(1, j)));
        GradedDerivation {
            algebra: omega.algebra_id(),
            degree: 1,
            on_elements,
            on_differentials: (1..n).map(|_| omega.zero(2)).collect(),
        }
    }

    /// The insertion operator `j_K`, of degree `k − 1` for `K ∈ Ω¹ₖ`:
    /// zero on `A` and `K` on `Ω₁`.
    pub fn insertion(omega: &Omega, k: &FormHom) -> Result<Self> {
        if k.algebra_id() != omega.algebra_id() {
            return Err(Error::AlgebraMismatch);
        }
        let deg = k.degree() - 1;
        let n = omega.algebra().dim();
        Ok(GradedDerivation {
            algebra: omega.algebra_id(),
            degree: deg,
            on_elements: (0..n).map(|_| omega.zero(deg)).collect(),
            on_differentials: k.images().to_vec(),
        })
    }

    /// The Lie derivative `L_K = [j_K, d]`, of degree `k`.
    pub fn lie_derivative(omega: &Omega, k: &FormHom) -> Result<Self> {
        let j = GradedDerivation::insertion(omega, k)?;
        j.commutator(omega, &GradedDerivation::differential(omega))
    }

    pub fn algebra_id(&self) -> AlgebraId {
        self.algebra
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    /// `D(eᵢ)` for `i = 0, …, n−1`.
    pub fn on_elements(&self) -> &[Form] {
        &self.on_elements
    }

    /// `D(deⱼ)` for `j = 1, …, n−1`.
    pub fn on_differentials(&self) -> &[Form] {
        &self.on_differentials
    }

    pub fn is_zero(&self) -> bool {
        self.on_elements.iter().chain(&self.on_differentials).all(Form::is_zero)
    }

    /// Algebraic derivations vanish on `Ω₀(A) = A`.
    pub fn is_algebraic(&self) -> bool {
        self.on_elements.iter().all(Form::is_zero)
    }

    /// The restriction to `Ω₁`, as an element of `Ω¹ₖ₊₁`.
    pub fn restriction(&self, omega: &Omega) -> Result<FormHom> {
        self.check(omega)?;
        FormHom::new(omega, self.degree + 1, self.on_differentials.clone())
    }

    fn check(&self, omega: &Omega) -> Result<()> {
        if self.algebra != omega.algebra_id() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn verify(&self, omega: &Omega) -> Result<()> {
        self.check(omega)?;
        let alg = omega.algebra();
        let labels = alg.labels();
        let n = alg.dim();
        let k = self.degree;
        if !self.on_elements[0].is_zero() {
            return Err(Error::NotDerivation(format!("D({}) is not zero", labels[0])));
        }
        for i in 0..n {
            for j in 0..n {
                let mut lhs = omega.zero(k);
                for (m, c) in alg.structure_sparse(i, j) {
                    lhs.add_scaled(c, &self.on_elements[*m])?;
                }
                let rhs = omega
                    .right_mul(&self.on_elements[i], &unit_vector(n, j))?
                    .add(&omega.left_mul(&unit_vector(n, i), &self.on_elements[j])?)?;
                if lhs != rhs {
                    return Err(Error::NotDerivation(format!(
                        "Leibniz rule fails on {}*{}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let sign = Scalar::sign(k as i64);
        for i in 1..n {
            for j in 1..n {
                let mut lhs = omega.zero(k + 1);
                for (m, c) in alg.structure_sparse(i, j) {
                    if *m >= 1 {
                        lhs.add_scaled(c, &self.on_differentials[m - 1])?;
                    }
                }
                let mut rhs = omega.right_mul(&self.on_differentials[i - 1], &unit_vector(n, j))?;
                let dei = omega.basis_form(1, i - 1);
                rhs.add_scaled(&sign, &omega.mul(&dei, &self.on_elements[j])?)?;
                rhs.add_scaled(
                    &Scalar::one(),
                    &omega.append_d(&self.on_elements[i], &unit_vector(n, j))?,
                )?;
                rhs.add_scaled(
                    &Scalar::one(),
                    &omega.left_mul(&unit_vector(n, i), &self.on_differentials[j - 1])?,
                )?;
                if lhs != rhs {
                    return Err(Error::NotDerivation(format!(
                        "values on d({}) and d({}) are incompatible with d({}*{})",
                        labels[i], labels[j], labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Applies `D` to a homogeneous form by the graded Leibniz rule.
    ///
    /// For a basis form `e_{i₀} de_{i₁} ⋯ de_{i_l}` the result is
    /// `D(e_{i₀}) de_{i₁}⋯de_{i_l} + Σₛ (−1)^{k(s−1)} e_{i₀}⋯de_{i_{s−1}} · D(de_{i_s}) · de_{i_{s+1}}⋯de_{i_l}`.
    pub fn evaluate(&self, omega: &Omega, form: &Form) -> Result<Form> {
        self.check(omega)?;
        if form.algebra_id() != self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let k = self.degree;
        let l = form.degree();
        let mut out = omega.zero(l + k);
        if l < 0 || l + k < 0 {
            return Ok(out);
        }
        let r = omega.algebra().dim() - 1;
        let rl = omega.tails(l);
        let coords = form.coords();

        // s = 0: D(e_{i₀}) followed by the tail
        for (i0, block) in coords.chunks(rl.max(1)).enumerate().take(omega.algebra().dim()) {
            if rl == 0 {
                break;
            }
            accumulate_outer(
                out.coords_mut(),
                self.on_elements[i0].coords(),
                block,
                rl,
                &Scalar::one(),
            );
        }

        // s ≥ 1: prefix of degree s−1, then D(de_m), then a tail of length l−s
        for s in 1..=l {
            let sign = Scalar::sign(k as i64 * (s as i64 - 1));
            let tail = omega.tails(l - s);
            let group = tail;
            let prefix_count = omega.dim(s - 1);
            let mut y = omega.zero(s + k);
            for prefix in 0..prefix_count {
                for m in 1..=r {
                    let start = (prefix * r + m - 1) * group;
                    let block = &coords[start..start + group];
                    if block.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let v = &self.on_differentials[m - 1];
                    if v.is_zero() {
                        continue;
                    }
                    y.coords_mut().iter_mut().for_each(|x| *x = Scalar::zero());
                    omega.add_basis_times(y.coords_mut(), s - 1, prefix, v, &Scalar::one());
                    accumulate_outer(out.coords_mut(), y.coords(), block, tail, &sign);
                }
            }
        }
        Ok(out)
    }

    /// The graded commutator `[D₁, D₂] = D₁∘D₂ − (−1)^{k₁k₂} D₂∘D₁`,
    /// computed on generators.
    pub fn commutator(&self, omega: &Omega, other: &GradedDerivation) -> Result<GradedDerivation> {
        self.check(omega)?;
        other.check(omega)?;
        let sign = -Scalar::sign(self.degree as i64 * other.degree as i64);
        let both = |x: &Form| -> Result<Form> {
            let mut a = self.evaluate(omega, &other.evaluate(omega, x)?)?;
            a.add_scaled(&sign, &other.evaluate(omega, &self.evaluate(omega, x)?)?)?;
            Ok(a)
        };
        let n = omega.algebra().dim();
        let on_elements = (0..n)
            .map(|i| both(&omega.basis_form(0, i)))
            .collect::<Result<Vec<_>>>()?;
        let on_differentials = (0..n - 1)
            .map(|j| both(&omega.basis_form(1, j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedDerivation {
            algebra: self.algebra,
            degree: self.degree + other.degree,
            on_elements,
            on_differentials,
        })
    }

    fn zip_with(&self, other: &GradedDerivation, f: impl Fn(&Form, &Form) -> Result<Form>) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let zip = |a: &[Form], b: &[Form]| a.iter().zip(b).map(|(x, y)| f(x, y)).collect::<Result<Vec<_>>>();
        Ok(GradedDerivation {
            algebra: self.algebra,
            degree: self.degree,
            on_elements: zip(&self.on_elements, &other.on_elements)?,
            on_differentials: zip(&self.on_differentials, &other.on_differentials)?,
        })
    }

    pub fn add(&self, other: &GradedDerivation) -> Result<Self> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &GradedDerivation) -> Result<Self> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        GradedDerivation {
            algebra: self.algebra,
            degree: self.degree,
            on_elements: self.on_elements.iter().map(|f| f.scaled(c)).collect(),
            on_differentials: self.on_differentials.iter().map(|f| f.scaled(c)).collect(),
        }
    }

    /// Number of nonzero generator coordinates.
    pub fn support(&self) -> usize {
        self.on_elements
            .iter()
            .chain(&self.on_differentials)
            .map(|f| nonzero(f.coords()).count())
            .sum()
    }
}

impl std::fmt::Debug for GradedDerivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedDerivation")
            .field("degree", &self.degree)
            .field("on_elements", &self.on_elements)
            .field("on_differentials", &self.on_differentials)
            .finish()
    }
}
