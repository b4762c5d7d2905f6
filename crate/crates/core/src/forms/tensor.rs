//! Oracle representation of `Ωₖ(A)` inside `A^{⊗(k+1)}`.
//!
//! `Ω₁(A)` is the kernel of multiplication `A ⊗ A → A` with
//! `d(a) = 1⊗a − a⊗1`, and `Ωₖ(A) = Ω₁ ⊗_A ⋯ ⊗_A Ω₁` sits inside the full
//! tensor power. Products contract the last factor of the left tensor with the
//! first factor of the right one. Only the structure constants of `A` are used
//! here, so this is independent of the recursion in [`Omega::mul`].

use super::{nonzero, Degree, Form, Omega};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix, Scalar, Solution, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorRep {
    degree: Degree,
    coords: Vector,
}

impl TensorRep {
    pub fn new(algebra: &Algebra, degree: Degree, coords: Vector) -> Result<Self> {
        let len = tensor_dim(algebra.dim(), degree);
        if coords.len() != len {
            return Err(Error::Length {
                expected: len,
                found: coords.len(),
            });
        }
        Ok(TensorRep { degree, coords })
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// Contraction product `(x₀⊗⋯⊗x_p)(y₀⊗⋯⊗y_q) = x₀⊗⋯⊗x_p y₀⊗⋯⊗y_q`.
    pub fn mul(&self, algebra: &Algebra, other: &TensorRep) -> TensorRep {
        let n = algebra.dim();
        let (p, q) = (self.degree, other.degree);
        let nq = n.pow(q as u32);
        let mut out = vec![Scalar::zero(); tensor_dim(n, p + q)];
        for (s, a) in nonzero(&self.coords) {
            let (prefix, last) = (s / n, s % n);
            for (t, b) in nonzero(&other.coords) {
                let (first, rest) = (t / nq, t % nq);
                let ab = a * b;
                for (m, c) in algebra.structure_sparse(last, first) {
                    out[(prefix * n + m) * nq + rest] += &(&ab * c);
                }
            }
        }
        TensorRep {
            degree: p + q,
            coords: out,
        }
    }

    /// `μ(t)` for a degree-1 tensor. Zero exactly on `Ω₁(A)`.
    pub fn multiply_out(&self, algebra: &Algebra) -> Vector {
        let n = algebra.dim();
        let mut out = vec![Scalar::zero(); n];
        let stride = n.pow(self.degree as u32);
        for (s, a) in nonzero(&self.coords) {
            // contract all factors left to right
            let mut acc = crate::linalg::unit_vector(n, s / stride);
            let mut rest = s % stride;
            let mut w = stride;
            while w > 1 {
                w /= n;
                acc = algebra.mul_coords(&acc, &crate::linalg::unit_vector(n, rest / w));
                rest %= w;
            }
            crate::linalg::axpy(&mut out, a, &acc);
        }
        out
    }
}

fn tensor_dim(n: usize, k: Degree) -> usize {
    n.pow(k as u32 + 1)
}

/// Image of a basis form `e_{i₀} de_{i₁} ⋯ de_{i_k}` as sparse tensor terms.
fn basis_tensor(algebra: &Algebra, indices: &[usize]) -> Vec<(usize, Scalar)> {
    let n = algebra.dim();
    let mut terms = vec![(indices[0], Scalar::one())];
    for &i in &indices[1..] {
        let mut next = Vec::with_capacity(terms.len() * 2);
        for (s, c) in &terms {
            // · (1⊗e_i)
            next.push((s * n + i, c.clone()));
            // · (−e_i⊗1)
            let (prefix, last) = (s / n, s % n);
            for (m, x) in algebra.structure_sparse(last, i) {
                next.push(((prefix * n + m) * n, -(c * x)));
            }
        }
        terms = next;
    }
    terms
}

pub fn to_tensor_rep(omega: &Omega, form: &Form) -> Result<TensorRep> {
    omega.check(form)?;
    let alg = omega.algebra();
    let k = form.degree();
    let mut out = vec![Scalar::zero(); tensor_dim(alg.dim(), k)];
    for (idx, c) in nonzero(form.coords()) {
        for (t, x) in basis_tensor(alg, &omega.basis_indices(k, idx)) {
            out[t] += &(c * &x);
        }
    }
    Ok(TensorRep { degree: k, coords: out })
}

/// Inverse of [`to_tensor_rep`] on its image.
pub fn from_tensor_rep(omega: &Omega, t: &TensorRep) -> Result<Form> {
    let alg = omega.algebra();
    let k = t.degree;
    let rows = tensor_dim(alg.dim(), k);
    let columns: Vec<Vector> = (0..omega.dim(k))
        .map(|idx| {
            let mut col = vec![Scalar::zero(); rows];
            for (s, x) in basis_tensor(alg, &omega.basis_indices(k, idx)) {
                col[s] += &x;
            }
            col
        })
        .collect();
    let m = Matrix::from_columns(&columns, rows)?;
    match solve(&m, &t.coords)? {
        Solution::Solvable { particular, .. } => Ok(omega.form_unchecked(k, particular)),
        Solution::NoSolution => Err(Error::NotInTensorImage),
    }
}
