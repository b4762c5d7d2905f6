use crate::error::Result;
use crate::forms::{Degree, Form, Omega};
use crate::linalg::{unit_vector, Matrix, Scalar, Vector};

use super::GradedDerivation;

/// All defects of the derivation invariants, concatenated: `D(1)`, the
/// Leibniz rule on every basis pair, and the compatibility with `d` on every
/// pair `i, j ≥ 1`. Linear in the generator values.
pub fn derivation_residual(omega: &Omega, d: &GradedDerivation) -> Result<Vector> {
    let alg = omega.algebra();
    let n = alg.dim();
    let k = d.degree();
    let (el, df) = (d.on_elements(), d.on_differentials());
    let mut out: Vector = el[0].coords().to_vec();
    for i in 0..n {
        for j in 0..n {
            let mut r = omega.zero(k);
            for (m, c) in alg.structure_sparse(i, j) {
                r.add_scaled(c, &el[*m])?;
            }
            let minus = Scalar::from_int(-1);
            r.add_scaled(&minus, &omega.right_mul(&el[i], &unit_vector(n, j))?)?;
            r.add_scaled(&minus, &omega.left_mul(&unit_vector(n, i), &el[j])?)?;
            out.extend(r.into_coords());
        }
    }
    let sign = -Scalar::sign(k as i64);
    let minus = Scalar::from_int(-1);
    for i in 1..n {
        for j in 1..n {
            let mut r = omega.zero(k + 1);
            for (m, c) in alg.structure_sparse(i, j) {
                if *m >= 1 {
                    r.add_scaled(c, &df[m - 1])?;
                }
            }
            r.add_scaled(&minus, &omega.right_mul(&df[i - 1], &unit_vector(n, j))?)?;
            r.add_scaled(&sign, &omega.mul(&omega.basis_form(1, i - 1), &el[j])?)?;
            r.add_scaled(&minus, &omega.append_d(&el[i], &unit_vector(n, j))?)?;
            r.add_scaled(&minus, &omega.left_mul(&unit_vector(n, i), &df[j - 1])?)?;
            out.extend(r.into_coords());
        }
    }
    Ok(out)
}

fn solve_space(omega: &Omega, k: Degree, algebraic: bool) -> Result<Vec<GradedDerivation>> {
    let n = omega.algebra().dim();
    let (dk, dk1) = (omega.dim(k), omega.dim(k + 1));
    let n_el = if algebraic { 0 } else { n * dk };
    let unknowns = n_el + (n - 1) * dk1;
    let build = |v: &[Scalar]| -> Result<GradedDerivation> {
        let mut el: Vec<Form> = (0..n).map(|_| omega.zero(k)).collect();
        if !algebraic {
            for (i, f) in el.iter_mut().enumerate() {
                *f = omega.form(k, v[i * dk..(i + 1) * dk].to_vec())?;
            }
        }
        let df = (0..n - 1)
            .map(|j| omega.form(k + 1, v[n_el + j * dk1..n_el + (j + 1) * dk1].to_vec()))
            .collect::<Result<Vec<_>>>()?;
        GradedDerivation::unchecked(omega, k, el, df)
    };
    let mut cols = Vec::with_capacity(unknowns);
    for u in 0..unknowns {
        cols.push(derivation_residual(omega, &build(&unit_vector(unknowns, u))?)?);
    }
    let rows = cols.first().map_or(0, Vec::len);
    let kernel = Matrix::from_columns(&cols, rows)?.kernel();
    kernel.basis().iter().map(|v| build(v)).collect()
}

/// A basis of `Der_k Ω(A)`, solved directly from the derivation invariants.
pub fn derivation_space(omega: &Omega, k: Degree) -> Result<Vec<GradedDerivation>> {
    solve_space(omega, k, false)
}

/// A basis of the algebraic derivations of degree `k` (those vanishing on `A`).
pub fn algebraic_derivation_space(omega: &Omega, k: Degree) -> Result<Vec<GradedDerivation>> {
    solve_space(omega, k, true)
}
