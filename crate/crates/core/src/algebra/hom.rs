use std::sync::Arc;

use super::{Algebra, AlgebraError, Element};
use crate::linalg::{unit_vector, Matrix};

/// A unital algebra homomorphism, as a `target.dim() × source.dim()` matrix
/// in normalized coordinates.
#[derive(Debug, Clone)]
pub struct AlgebraHom {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    matrix: Matrix,
}

impl AlgebraHom {
    /// Checks that the unit maps to the unit and `f(e_i e_j) = f(e_i) f(e_j)`
    /// on all basis pairs.
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Result<Self, AlgebraError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(AlgebraError::NotHomomorphism(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let f = AlgebraHom { source, target, matrix };
        if f.matrix.column(0) != unit_vector(f.target.dim(), 0) {
            return Err(AlgebraError::NotHomomorphism("unit is not mapped to the unit".into()));
        }
        let n = f.source.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = f.matrix.mul_vec(f.source.structure(i, j)).expect("shape");
                let rhs = f.target.mul_coords(&f.matrix.column(i), &f.matrix.column(j));
                if lhs != rhs {
                    return Err(AlgebraError::NotHomomorphism(format!(
                        "f({a}*{b}) != f({a})*f({b})",
                        a = f.source.labels()[i],
                        b = f.source.labels()[j]
                    )));
                }
            }
        }
        Ok(f)
    }

    pub fn identity(a: Arc<Algebra>) -> Self {
        let n = a.dim();
        AlgebraHom {
            source: a.clone(),
            target: a,
            matrix: Matrix::identity(n),
        }
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Element) -> Result<Element, AlgebraError> {
        if x.algebra_id() != self.source.id() {
            return Err(AlgebraError::Mismatch);
        }
        let y = self.matrix.mul_vec(x.coords()).expect("shape");
        Ok(self.target.element_unchecked(y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, matrix, truncated_poly};

    #[test]
    fn identity_is_valid() {
        let a = Arc::new(matrix(2).unwrap());
        let id = AlgebraHom::identity(a.clone());
        assert!(AlgebraHom::new(a.clone(), a, id.matrix().clone()).is_ok());
    }

    /// Transpose on raw matrix units, conjugated into normalized coordinates.
    #[test]
    fn transpose_is_not_multiplicative() {
        let a = Arc::new(matrix(2).unwrap());
        // raw permutation E12 <-> E21
        let perm = Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        let to_raw = a.basis_change();
        let from_raw = to_raw.inverse().unwrap();
        let t = from_raw.mul(&perm).unwrap().mul(to_raw).unwrap();
        let err = AlgebraHom::new(a.clone(), a, t).unwrap_err();
        assert!(matches!(err, AlgebraError::NotHomomorphism(_)));
    }

    #[test]
    fn quotient_maps() {
        let t3 = Arc::new(truncated_poly(3).unwrap());
        let dual = Arc::new(dual_numbers());
        let f = AlgebraHom::new(t3.clone(), dual.clone(), Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        let x = t3.basis_element(1);
        assert_eq!(f.apply(&x).unwrap(), dual.basis_element(1));
        // x -> 2 eps is still a homomorphism; x -> 1 + eps is not multiplicative
        assert!(AlgebraHom::new(t3.clone(), dual.clone(), Matrix::from_i64(&[&[1, 0, 0], &[0, 2, 0]])).is_ok());
        let bad = Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 0]]);
        assert!(AlgebraHom::new(t3, dual, bad).is_err());
    }
}
