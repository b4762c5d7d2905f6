//! Finite-dimensional unital associative algebras given by structure
//! constants.
//!
//! Every [`Algebra`] is normalized so that its unit is basis vector 0. The
//! remaining basis vectors `e_1 .. e_{n-1}` then span a complement of the
//! scalars, which is what the canonical bases of the form spaces are built on.

mod catalog;
mod hom;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

pub use catalog::{builtin, dual_numbers, group_algebra_cyclic, matrix, product_qq, standard_catalog, truncated_poly};
pub use hom::AlgebraHom;

use crate::linalg::{axpy, unit_vector, Matrix, Scalar, Subspace, Vector};

/// Identity of an algebra value. Clones share it; independently constructed
/// algebras never do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId(u64);

impl AlgebraId {
    fn fresh() -> Self {
        static NEXT: AtomicU64 = AtomicU64::new(1);
        AlgebraId(NEXT.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("algebra must have dimension at least 1")]
    Empty,
    #[error("malformed structure table: {0}")]
    Shape(String),
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c}) for basis triple ({i}, {j}, {k})")]
    NonAssociative {
        i: usize,
        j: usize,
        k: usize,
        a: String,
        b: String,
        c: String,
    },
    #[error("not a two-sided unit: {side} product with basis element {index} ({label})")]
    NotUnit {
        index: usize,
        label: String,
        side: &'static str,
    },
    #[error("singular basis change while moving the unit to index 0")]
    SingularBasisChange,
    #[error("unknown builtin algebra `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid parameter for {name}: {detail}")]
    InvalidParameter { name: String, detail: String },
    #[error("elements belong to different algebras")]
    Mismatch,
    #[error("expected {expected} coordinates, found {found}")]
    Length { expected: usize, found: usize },
    #[error("not a unital homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("not a unital subalgebra: {0}")]
    NotSubalgebra(String),
}

/// A finite-dimensional unital associative algebra over the rationals.
#[derive(Clone)]
pub struct Algebra {
    id: AlgebraId,
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<Vector>>,
    sparse: Vec<Vec<Vec<(usize, Scalar)>>>,
    raw_labels: Vec<String>,
    /// Columns are the normalized basis vectors in raw coordinates.
    to_raw: Matrix,
    /// Raw coordinates to normalized coordinates.
    from_raw: Matrix,
}

/// An element of an algebra, in normalized basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    algebra: AlgebraId,
    coords: Vector,
}

impl Algebra {
    /// Validates a structure table (`table[i][j]` = coordinates of `e_i e_j`)
    /// and a unit vector, then changes basis so the unit sits at index 0.
    ///
    /// Associativity is checked before the unit law, so a table that breaks
    /// both reports the associativity failure.
    pub fn from_structure_constants(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<Vector>>,
        unit: Vector,
    ) -> Result<Algebra, AlgebraError> {
        let n = labels.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::Shape(format!("table must be {n} x {n}")));
        }
        if let Some((i, j)) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| table[i][j].len() != n)
        {
            return Err(AlgebraError::Shape(format!(
                "product {}*{} has {} coordinates, expected {n}",
                labels[i],
                labels[j],
                table[i][j].len()
            )));
        }
        if unit.len() != n {
            return Err(AlgebraError::Shape(format!(
                "unit has {} coordinates, expected {n}",
                unit.len()
            )));
        }

        let mul = |x: &[Scalar], y: &[Scalar]| raw_mul(&table, x, y);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = mul(&table[i][j], &unit_vector(n, k));
                    let right = mul(&unit_vector(n, i), &table[j][k]);
                    if left != right {
                        return Err(AlgebraError::NonAssociative {
                            i,
                            j,
                            k,
                            a: labels[i].clone(),
                            b: labels[j].clone(),
                            c: labels[k].clone(),
                        });
                    }
                }
            }
        }
        for i in 0..n {
            let e = unit_vector(n, i);
            if mul(&unit, &e) != e {
                return Err(AlgebraError::NotUnit {
                    index: i,
                    label: labels[i].clone(),
                    side: "left",
                });
            }
            if mul(&e, &unit) != e {
                return Err(AlgebraError::NotUnit {
                    index: i,
                    label: labels[i].clone(),
                    side: "right",
                });
            }
        }

        // new basis: f_0 = unit, then the raw basis vectors except the pivot
        let pivot = unit
            .iter()
            .position(|x| !x.is_zero())
            .ok_or(AlgebraError::SingularBasisChange)?;
        let mut columns = vec![unit.clone()];
        let mut new_labels = Vec::with_capacity(n);
        let unit_is_basis = unit[pivot].is_one() && unit.iter().filter(|x| !x.is_zero()).count() == 1;
        new_labels.push(if unit_is_basis {
            labels[pivot].clone()
        } else if labels.iter().any(|l| l == "1") {
            "unit".to_string()
        } else {
            "1".to_string()
        });
        for i in (0..n).filter(|&i| i != pivot) {
            columns.push(unit_vector(n, i));
            new_labels.push(labels[i].clone());
        }
        let to_raw = Matrix::from_columns(&columns, n).expect("square");
        let from_raw = to_raw.inverse().ok_or(AlgebraError::SingularBasisChange)?;

        let mut new_table = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let raw = mul(&columns[a], &columns[b]);
                new_table[a][b] = from_raw.mul_vec(&raw).expect("square");
            }
        }
        let sparse = new_table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.iter()
                            .enumerate()
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(m, x)| (m, x.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Algebra {
            id: AlgebraId::fresh(),
            name: name.into(),
            labels: new_labels,
            table: new_table,
            sparse,
            raw_labels: labels,
            to_raw,
            from_raw,
        })
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Dimension `n`.
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Labels of the normalized basis; index 0 is the unit.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Labels of the basis the algebra was defined in.
    pub fn raw_labels(&self) -> &[String] {
        &self.raw_labels
    }

    /// Columns: normalized basis vectors expressed in the original basis.
    pub fn basis_change(&self) -> &Matrix {
        &self.to_raw
    }

    /// Normalized coordinates of the raw basis vector `i`.
    pub fn raw_basis_element(&self, i: usize) -> Element {
        self.element_unchecked(self.from_raw.column(i))
    }

    /// Coordinates of `e_i e_j`.
    pub fn structure(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    /// Nonzero coordinates of `e_i e_j`.
    pub fn structure_sparse(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.sparse[i][j]
    }

    pub fn element(&self, coords: Vector) -> Result<Element, AlgebraError> {
        if coords.len() != self.dim() {
            return Err(AlgebraError::Length {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        Ok(self.element_unchecked(coords))
    }

    pub(crate) fn element_unchecked(&self, coords: Vector) -> Element {
        Element {
            algebra: self.id,
            coords,
        }
    }

    pub fn basis_element(&self, i: usize) -> Element {
        self.element_unchecked(unit_vector(self.dim(), i))
    }

    pub fn unit(&self) -> Element {
        self.basis_element(0)
    }

    pub fn zero(&self) -> Element {
        self.element_unchecked(vec![Scalar::zero(); self.dim()])
    }

    fn check(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.algebra != self.id {
            return Err(AlgebraError::Mismatch);
        }
        Ok(())
    }

    /// Coordinates of `x·y` for raw coordinate vectors.
    pub fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (m, s) in &self.sparse[i][j] {
                    out[*m] += &(&c * s);
                }
            }
        }
        out
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element_unchecked(self.mul_coords(&x.coords, &y.coords)))
    }

    /// Exhaustive check of associativity and the unit law on the normalized
    /// basis.
    pub fn verify_laws(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            if self.table[0][i] != unit_vector(n, i) || self.table[i][0] != unit_vector(n, i) {
                return Err(AlgebraError::NotUnit {
                    index: i,
                    label: self.labels[i].clone(),
                    side: "normalized",
                });
            }
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_coords(&self.table[i][j], &unit_vector(n, k));
                    let right = self.mul_coords(&unit_vector(n, i), &self.table[j][k]);
                    if left != right {
                        return Err(AlgebraError::NonAssociative {
                            i,
                            j,
                            k,
                            a: self.labels[i].clone(),
                            b: self.labels[j].clone(),
                            c: self.labels[k].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Human-readable element, e.g. `1 + -2 * eps`.
    pub fn format_element(&self, coords: &[Scalar]) -> String {
        let terms: Vec<String> = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let label = &self.labels[i];
                if i == 0 && label == "1" {
                    c.to_string()
                } else if c.is_one() {
                    label.clone()
                } else {
                    format!("{c} * {label}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

fn raw_mul(table: &[Vec<Vector>], x: &[Scalar], y: &[Scalar]) -> Vector {
    let n = x.len();
    let mut out = vec![Scalar::zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            axpy(&mut out, &(xi * yj), &table[i][j]);
        }
    }
    out
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("name", &self.name)
            .field("labels", &self.labels)
            .finish()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Algebra {}

impl Element {
    pub fn algebra_id(&self) -> AlgebraId {
        self.algebra
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

    pub fn scaled(&self, a: &Scalar) -> Element {
        Element {
            algebra: self.algebra,
            coords: self.coords.iter().map(|x| a * x).collect(),
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, AlgebraError> {
        if self.algebra != other.algebra {
            return Err(AlgebraError::Mismatch);
        }
        Ok(Element {
            algebra: self.algebra,
            coords: crate::linalg::add(&self.coords, &other.coords),
        })
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element{:?}", self.coords)
    }
}

/// A unital subalgebra, as a subspace of element coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subalgebra {
    algebra: AlgebraId,
    space: Subspace,
}

impl Subalgebra {
    /// Checks that `space` contains the unit and is closed under products.
    pub fn new(algebra: &Algebra, space: Subspace) -> Result<Subalgebra, AlgebraError> {
        let n = algebra.dim();
        if space.ambient_dim() != n {
            return Err(AlgebraError::Length {
                expected: n,
                found: space.ambient_dim(),
            });
        }
        if !space.contains_vector(&unit_vector(n, 0)).expect("length") {
            return Err(AlgebraError::NotSubalgebra("does not contain the unit".into()));
        }
        for x in space.basis() {
            for y in space.basis() {
                let p = algebra.mul_coords(x, y);
                if !space.contains_vector(&p).expect("length") {
                    return Err(AlgebraError::NotSubalgebra(format!(
                        "product {} * {} leaves the subspace",
                        algebra.format_element(x),
                        algebra.format_element(y)
                    )));
                }
            }
        }
        Ok(Subalgebra {
            algebra: algebra.id(),
            space,
        })
    }

    /// The scalars `K·1`.
    pub fn scalars(algebra: &Algebra) -> Subalgebra {
        let space = Subspace::from_spanning(algebra.dim(), [unit_vector(algebra.dim(), 0)]).expect("length");
        Subalgebra {
            algebra: algebra.id(),
            space,
        }
    }

    pub fn whole(algebra: &Algebra) -> Subalgebra {
        Subalgebra {
            algebra: algebra.id(),
            space: Subspace::full(algebra.dim()),
        }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn dual_table() -> Vec<Vec<Vector>> {
        vec![vec![v(&[1, 0]), v(&[0, 1])], vec![v(&[0, 1]), v(&[0, 0])]]
    }

    /// Brute-force associativity over all basis triples, independent of the
    /// validator.
    fn failing_triples(table: &[Vec<Vector>]) -> Vec<(usize, usize, usize)> {
        let n = table.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut left = vec![Scalar::zero(); n];
                    for (m, c) in table[i][j].iter().enumerate() {
                        axpy(&mut left, c, &table[m][k]);
                    }
                    let mut right = vec![Scalar::zero(); n];
                    for (m, c) in table[j][k].iter().enumerate() {
                        axpy(&mut right, c, &table[i][m]);
                    }
                    if left != right {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn dual_numbers_validate() {
        let a = Algebra::from_structure_constants("dual", labels(&["1", "eps"]), dual_table(), v(&[1, 0])).unwrap();
        assert_eq!(a.dim(), 2);
        let eps = a.basis_element(1);
        assert!(a.mul(&eps, &eps).unwrap().is_zero());
    }

    #[test]
    fn unit_candidate_failing() {
        // e1 e1 = e1 but e1 e0 = e1 != e0
        let a = Algebra::from_structure_constants("dual", labels(&["1", "eps"]), dual_table(), v(&[0, 1]));
        assert!(matches!(a, Err(AlgebraError::NotUnit { .. })), "{a:?}");
    }

    #[test]
    fn perturbed_constant_breaks_associativity() {
        let mut t = dual_table();
        t[1][0] = v(&[0, 2]); // eps * 1 = 2 eps
        let bad = failing_triples(&t);
        assert_eq!(bad.first(), Some(&(1, 0, 0)));
        match Algebra::from_structure_constants("bad", labels(&["1", "eps"]), t, v(&[1, 0])) {
            Err(AlgebraError::NonAssociative { i, j, k, .. }) => {
                assert!(bad.contains(&(i, j, k)));
                assert_eq!((i, j, k), bad[0]);
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn shape_errors() {
        let t = vec![vec![v(&[1])]];
        assert!(matches!(
            Algebra::from_structure_constants("x", labels(&["a", "b"]), t, v(&[1, 0])),
            Err(AlgebraError::Shape(_))
        ));
        assert!(matches!(
            Algebra::from_structure_constants("x", vec![], vec![], vec![]),
            Err(AlgebraError::Empty)
        ));
    }

    #[test]
    fn unit_moves_to_index_zero() {
        // Q x Q in the idempotent basis p, q with unit p + q
        let t = vec![vec![v(&[1, 0]), v(&[0, 0])], vec![v(&[0, 0]), v(&[0, 1])]];
        let a = Algebra::from_structure_constants("qq", labels(&["p", "q"]), t, v(&[1, 1])).unwrap();
        assert_eq!(a.labels(), &["1".to_string(), "q".to_string()]);
        assert_eq!(a.structure(1, 1), &v(&[0, 1])[..]);
        a.verify_laws().unwrap();
        // p = 1 - q in the normalized basis
        assert_eq!(a.raw_basis_element(0).coords(), &v(&[1, -1])[..]);
    }

    #[test]
    fn element_mismatch() {
        let a = dual_numbers();
        let b = dual_numbers();
        assert_eq!(a.mul(&a.unit(), &b.unit()), Err(AlgebraError::Mismatch));
    }

    #[test]
    fn subalgebra_checks() {
        let a = truncated_poly(3).unwrap();
        let s = Subspace::from_spanning(3, [v(&[1, 0, 0]), v(&[0, 0, 1])]).unwrap();
        assert!(Subalgebra::new(&a, s).is_ok());
        let s = Subspace::from_spanning(3, [v(&[0, 1, 0])]).unwrap();
        assert!(Subalgebra::new(&a, s).is_err());
    }

    #[test]
    fn formatting() {
        let a = dual_numbers();
        assert_eq!(a.format_element(&v(&[2, -1])), "2 + -1 * eps");
        assert_eq!(a.format_element(&v(&[0, 0])), "0");
    }
}
