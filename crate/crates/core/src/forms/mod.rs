//! The universal differential graded algebra `Ω(A)`.
//!
//! `Ωₖ(A)` is identified with `A ⊗ Ā^{⊗k}`: the basis form
//! `e_{i₀} de_{i₁} ⋯ de_{i_k}` has `i₀ ∈ 0..n` and `i₁..i_k ∈ 1..n`, ordered
//! lexicographically, so `dim Ωₖ(A) = n(n−1)^k`. Left multiplication by `A`
//! only touches `i₀`; right multiplication is computed by moving the algebra
//! element leftwards through each `d` with `d(a)b = d(ab) − a d(b)`.

mod ideal;
mod mixed;
pub mod tensor;

use std::fmt;
use std::sync::{Arc, RwLock};

pub use ideal::ideal_component;
pub use mixed::MixedForm;

use crate::algebra::{Algebra, AlgebraHom, AlgebraId, Element};
use crate::error::{Error, Result};
use crate::linalg::{Scalar, Vector};

/// Form degree. Negative degrees denote the zero space.
pub type Degree = i32;

pub(crate) type Sparse = Vec<(usize, Scalar)>;

/// A homogeneous element of `Ωₖ(A)` in canonical basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    algebra: AlgebraId,
    degree: Degree,
    coords: Vector,
}

/// The graded algebra `Ω(A)` of an algebra `A`, with cached right-action
/// tables. Safe to share between threads.
pub struct Omega {
    algebra: Arc<Algebra>,
    /// `right[k][idx * n + j]` = (basis form `idx` of degree k) · e_j
    right: RwLock<Vec<Arc<Vec<Sparse>>>>,
}

/// `dim Ωₖ(A) = n(n−1)^k`.
pub fn form_dim(algebra: &Algebra, k: usize) -> usize {
    let n = algebra.dim();
    n * (n - 1).pow(k as u32)
}

impl Omega {
    pub fn new(algebra: Arc<Algebra>) -> Self {
        Omega {
            algebra,
            right: RwLock::new(Vec::new()),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn algebra_id(&self) -> AlgebraId {
        self.algebra.id()
    }

    pub(crate) fn n(&self) -> usize {
        self.algebra.dim()
    }

    /// `(n−1)^k`, the number of `d`-tails of length k.
    pub(crate) fn tails(&self, k: Degree) -> usize {
        if k < 0 {
            0
        } else {
            (self.n() - 1).pow(k as u32)
        }
    }

    pub fn dim(&self, k: Degree) -> usize {
        self.n() * self.tails(k)
    }

    /// Decodes a basis index into `(i₀, i₁, …, i_k)`.
    pub fn basis_indices(&self, k: Degree, idx: usize) -> Vec<usize> {
        let r = self.n() - 1;
        let mut out = vec![0; k as usize + 1];
        let mut rest = idx;
        for s in (1..=k as usize).rev() {
            out[s] = 1 + rest % r;
            rest /= r;
        }
        out[0] = rest;
        out
    }

    /// Inverse of [`Omega::basis_indices`].
    pub fn basis_index(&self, indices: &[usize]) -> usize {
        let r = self.n() - 1;
        indices[1..].iter().fold(indices[0], |acc, &i| acc * r + (i - 1))
    }

    pub(crate) fn check(&self, form: &Form) -> Result<()> {
        if form.algebra != self.algebra.id() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn zero(&self, k: Degree) -> Form {
        Form {
            algebra: self.algebra.id(),
            degree: k,
            coords: vec![Scalar::zero(); self.dim(k)],
        }
    }

    pub fn form(&self, k: Degree, coords: Vector) -> Result<Form> {
        if coords.len() != self.dim(k) {
            return Err(Error::Length {
                expected: self.dim(k),
                found: coords.len(),
            });
        }
        Ok(self.form_unchecked(k, coords))
    }

    pub(crate) fn form_unchecked(&self, k: Degree, coords: Vector) -> Form {
        debug_assert_eq!(coords.len(), self.dim(k));
        Form {
            algebra: self.algebra.id(),
            degree: k,
            coords,
        }
    }

    pub fn basis_form(&self, k: Degree, idx: usize) -> Form {
        let mut f = self.zero(k);
        f.coords[idx] = Scalar::one();
        f
    }

    /// All basis forms of degree `k` in canonical order.
    pub fn basis(&self, k: Degree) -> impl Iterator<Item = Form> + '_ {
        (0..self.dim(k)).map(move |i| self.basis_form(k, i))
    }

    /// An algebra element as a 0-form.
    pub fn element_form(&self, x: &Element) -> Form {
        self.form_unchecked(0, x.coords().to_vec())
    }

    /// `d(x)` for an algebra element `x`.
    pub fn d_element(&self, x: &Element) -> Form {
        let mut f = self.zero(1);
        for (m, c) in x.coords().iter().enumerate().skip(1) {
            f.coords[m - 1] = c.clone();
        }
        f
    }

    /// The differential `d: Ωₖ → Ωₖ₊₁`,
    /// `e_{i₀} de_{i₁}⋯de_{i_k} ↦ de_{i₀} de_{i₁}⋯de_{i_k}` (zero when `i₀ = 0`).
    pub fn differential(&self, form: &Form) -> Result<Form> {
        self.check(form)?;
        let k = form.degree;
        let mut out = self.zero(k + 1);
        if k < 0 {
            return Ok(out);
        }
        let rk = self.tails(k);
        for (idx, c) in nonzero(&form.coords) {
            let (i0, tail) = (idx / rk, idx % rk);
            if i0 >= 1 {
                out.coords[(i0 - 1) * rk + tail] += c;
            }
        }
        Ok(out)
    }

    /// Right action table of degree `k`, computed on first use.
    pub(crate) fn right_table(&self, k: Degree) -> Arc<Vec<Sparse>> {
        let k = k as usize;
        if let Some(t) = self.right.read().expect("lock").get(k) {
            return t.clone();
        }
        let mut guard = self.right.write().expect("lock");
        while guard.len() <= k {
            let next = self.compute_right_table(guard.len(), guard.last().map(|t| t.as_slice()));
            guard.push(Arc::new(next));
        }
        guard[k].clone()
    }

    fn compute_right_table(&self, k: usize, prev: Option<&[Sparse]>) -> Vec<Sparse> {
        let n = self.n();
        let alg = &self.algebra;
        if k == 0 {
            return (0..n * n)
                .map(|e| alg.structure_sparse(e / n, e % n).to_vec())
                .collect();
        }
        let prev = prev.expect("lower degree table");
        let r = n - 1;
        let dim = self.dim(k as Degree);
        let mut table = Vec::with_capacity(dim * n);
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        for idx in 0..dim {
            // basis form = prefix · d(e_last)
            let (prefix, last) = (idx / r, 1 + idx % r);
            for j in 0..n {
                acc.clear();
                // prefix · d(e_last e_j)
                for (m, c) in alg.structure_sparse(last, j) {
                    if *m >= 1 {
                        acc.push((prefix * r + m - 1, c.clone()));
                    }
                }
                // − (prefix · e_last) · d(e_j)
                if j >= 1 {
                    for (t, c) in &prev[prefix * n + last] {
                        acc.push((t * r + j - 1, -c));
                    }
                }
                table.push(combine(&mut acc));
            }
        }
        table
    }

    /// The product `ω·η` in `Ω(A)`.
    pub fn mul(&self, a: &Form, b: &Form) -> Result<Form> {
        self.check(a)?;
        self.check(b)?;
        let (p, q) = (a.degree, b.degree);
        let mut out = self.zero(p + q);
        if p < 0 || q < 0 {
            return Ok(out);
        }
        let n = self.n();
        let rq = self.tails(q);
        let table = self.right_table(p);
        let dp = self.dim(p);
        let mut v = vec![Scalar::zero(); dp];
        for j0 in 0..n {
            let block = &b.coords[j0 * rq..(j0 + 1) * rq];
            if block.iter().all(Scalar::is_zero) {
                continue;
            }
            v.iter_mut().for_each(|x| *x = Scalar::zero());
            for (i, c) in nonzero(&a.coords) {
                for (t, s) in &table[i * n + j0] {
                    v[*t] += &(c * s);
                }
            }
            accumulate_outer(&mut out.coords, &v, block, rq, &Scalar::one());
        }
        Ok(out)
    }

    /// `β·η` for the basis form `β` of degree `p` with index `basis_idx`,
    /// scaled by `coef` and added into `out` (degree `p + deg η`).
    pub(crate) fn add_basis_times(&self, out: &mut [Scalar], p: Degree, basis_idx: usize, eta: &Form, coef: &Scalar) {
        let q = eta.degree;
        if p < 0 || q < 0 {
            return;
        }
        let n = self.n();
        let rq = self.tails(q);
        let table = self.right_table(p);
        for j0 in 0..n {
            let block = &eta.coords[j0 * rq..(j0 + 1) * rq];
            let entry = &table[basis_idx * n + j0];
            if entry.is_empty() {
                continue;
            }
            for (tail, c) in nonzero(block) {
                let cc = coef * c;
                for (t, s) in entry {
                    out[t * rq + tail] += &(&cc * s);
                }
            }
        }
    }

    /// `a·ω` for an algebra element `a` (given by coordinates).
    pub fn left_mul(&self, a: &[Scalar], form: &Form) -> Result<Form> {
        self.check(form)?;
        let k = form.degree;
        let mut out = self.zero(k);
        if k < 0 {
            return Ok(out);
        }
        let rk = self.tails(k);
        for (idx, c) in nonzero(&form.coords) {
            let (i0, tail) = (idx / rk, idx % rk);
            for (s, x) in nonzero(a) {
                let cx = x * c;
                for (m, y) in self.algebra.structure_sparse(s, i0) {
                    out.coords[m * rk + tail] += &(&cx * y);
                }
            }
        }
        Ok(out)
    }

    /// `ω·b` for an algebra element `b` (given by coordinates).
    pub fn right_mul(&self, form: &Form, b: &[Scalar]) -> Result<Form> {
        self.check(form)?;
        let k = form.degree;
        let mut out = self.zero(k);
        if k < 0 {
            return Ok(out);
        }
        let n = self.n();
        let table = self.right_table(k);
        for (idx, c) in nonzero(&form.coords) {
            for (j, y) in nonzero(b) {
                let cy = c * y;
                for (t, s) in &table[idx * n + j] {
                    out.coords[*t] += &(&cy * s);
                }
            }
        }
        Ok(out)
    }

    /// `ω·d(x)`: appends one `d`-factor.
    pub fn append_d(&self, form: &Form, x: &[Scalar]) -> Result<Form> {
        self.check(form)?;
        let k = form.degree;
        let mut out = self.zero(k + 1);
        if k < 0 {
            return Ok(out);
        }
        let r = self.n() - 1;
        for (t, c) in nonzero(&form.coords) {
            for (m, y) in nonzero(x) {
                if m >= 1 {
                    out.coords[t * r + m - 1] += &(c * y);
                }
            }
        }
        Ok(out)
    }

    /// Human-readable form, e.g. `eps d(eps) + -2 * d(eps) d(eps)`.
    pub fn format(&self, form: &Form) -> String {
        let labels = self.algebra.labels();
        let mut terms = Vec::new();
        for (idx, c) in nonzero(&form.coords) {
            let ix = self.basis_indices(form.degree, idx);
            let mut parts = Vec::new();
            if (ix[0] != 0 || form.degree == 0) && !(ix[0] == 0 && labels[0] == "1" && !c.is_one()) {
                parts.push(labels[ix[0]].clone());
            }
            for &i in &ix[1..] {
                parts.push(format!("d({})", labels[i]));
            }
            let body = parts.join(" ");
            terms.push(if body.is_empty() {
                c.to_string()
            } else if c.is_one() {
                body
            } else {
                format!("{c} * {body}")
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// The form morphism `Ω(A) → Ω(A′)` induced by a unital algebra
/// homomorphism: `a₀ da₁⋯da_k ↦ f(a₀) d f(a₁)⋯d f(a_k)`.
pub fn induced_morphism(f: &AlgebraHom, source: &Omega, target: &Omega, form: &Form) -> Result<Form> {
    source.check(form)?;
    if f.source().id() != source.algebra_id() || f.target().id() != target.algebra_id() {
        return Err(Error::AlgebraMismatch);
    }
    let k = form.degree;
    let mut out = target.zero(k);
    if k < 0 {
        return Ok(out);
    }
    let images: Vec<Vector> = (0..source.n()).map(|i| f.matrix().column(i)).collect();
    for (idx, c) in nonzero(&form.coords) {
        let ix = source.basis_indices(k, idx);
        let mut v = target.form_unchecked(0, images[ix[0]].clone());
        for &i in &ix[1..] {
            v = target.append_d(&v, &images[i])?;
        }
        crate::linalg::axpy(&mut out.coords, c, &v.coords);
    }
    Ok(out)
}

impl Form {
    pub fn algebra_id(&self) -> AlgebraId {
        self.algebra
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vector {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    fn same_space(&self, other: &Form) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.same_space(other)?;
        Ok(self.with_coords(crate::linalg::add(&self.coords, &other.coords)))
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.same_space(other)?;
        Ok(self.with_coords(crate::linalg::sub(&self.coords, &other.coords)))
    }

    pub fn scaled(&self, a: &Scalar) -> Form {
        self.with_coords(crate::linalg::scale(&self.coords, a))
    }

    pub fn neg(&self) -> Form {
        self.scaled(&Scalar::from_int(-1))
    }

    /// `self += a * other`
    pub fn add_scaled(&mut self, a: &Scalar, other: &Form) -> Result<()> {
        self.same_space(other)?;
        crate::linalg::axpy(&mut self.coords, a, &other.coords);
        Ok(())
    }

    pub(crate) fn with_coords(&self, coords: Vector) -> Form {
        Form {
            algebra: self.algebra,
            degree: self.degree,
            coords,
        }
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [Scalar] {
        &mut self.coords
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form(deg {}; {:?})", self.degree, self.coords)
    }
}

pub(crate) fn nonzero(v: &[Scalar]) -> impl Iterator<Item = (usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero())
}

/// Sorts and merges duplicate indices, dropping zeros.
fn combine(acc: &mut Vec<(usize, Scalar)>) -> Sparse {
    acc.sort_by_key(|(i, _)| *i);
    let mut out: Sparse = Vec::with_capacity(acc.len());
    for (i, c) in acc.drain(..) {
        match out.last_mut() {
            Some((j, d)) if *j == i => *d += &c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// `out[t * stride + s] += coef * v[t] * w[s]`
pub(crate) fn accumulate_outer(out: &mut [Scalar], v: &[Scalar], w: &[Scalar], stride: usize, coef: &Scalar) {
    let w_nz: Vec<(usize, &Scalar)> = nonzero(w).collect();
    for (t, vt) in nonzero(v) {
        let cv = coef * vt;
        for (s, ws) in &w_nz {
            out[t * stride + s] += &(&cv * ws);
        }
    }
}

#[cfg(test)]
mod tests;
