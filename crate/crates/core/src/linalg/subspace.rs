use super::matrix::Matrix;
use super::scalar::Scalar;
use super::{LinalgError, Vector};

/// A linear subspace of `Q^ambient`, stored as the rows of its reduced row
/// echelon basis. The representation is canonical: two spanning sets of the
/// same subspace give equal values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit_vector(ambient, i)).collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_spanning<I>(ambient: usize, vectors: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = Vector>,
    {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, n: usize) -> Result<(), LinalgError> {
        if n != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: n,
            });
        }
        Ok(())
    }

    /// Reduces `v` against the basis; the remainder is zero iff `v` is a member.
    fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
    }

    /// Adds `v` to the span, keeping the basis in RREF. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, mut v: Vector) -> Result<bool, LinalgError> {
        self.check_len(v.len())?;
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[p].recip().expect("nonzero");
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in &mut self.basis {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v).skip(p) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, v);
        Ok(true)
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        self.check_len(v.len())?;
        let mut w = v.to_vec();
        self.reduce(&mut w);
        Ok(w.iter().all(Scalar::is_zero))
    }

    /// Coefficients of `v` in the RREF basis, or `None` if `v` is not a member.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vector>, LinalgError> {
        if !self.contains_vector(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_len(other.ambient)?;
        for v in &other.basis {
            if !self.contains_vector(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_len(other.ambient)?;
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v.clone())?;
        }
        Ok(s)
    }

    /// The orthogonal complement under the standard pairing; its basis rows
    /// form a matrix whose kernel is exactly `self`.
    pub fn annihilator(&self) -> Subspace {
        let mut vs = Vec::new();
        let mut k = 0;
        for f in 0..self.ambient {
            if k < self.pivots.len() && self.pivots[k] == f {
                k += 1;
                continue;
            }
            let mut v = vec![Scalar::zero(); self.ambient];
            v[f] = Scalar::one();
            for (row, &p) in self.basis.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    v[p] = -&row[f];
                }
            }
            vs.push(v);
        }
        Subspace::from_spanning(self.ambient, vs).expect("ambient length")
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_len(other.ambient)?;
        let ann = self.annihilator();
        if ann.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // x = Σ b_j v_j lies in self iff ann · x = 0
        let ann_m = Matrix::from_rows(ann.basis.clone())?;
        let mut images = Vec::with_capacity(other.dim());
        for v in &other.basis {
            images.push(ann_m.mul_vec(v)?);
        }
        let c = Matrix::from_columns(&images, ann.dim())?;
        let combos = c.kernel();
        let vs = combos.basis.iter().map(|b| {
            let mut x = vec![Scalar::zero(); self.ambient];
            for (coef, v) in b.iter().zip(&other.basis) {
                if coef.is_zero() {
                    continue;
                }
                for (xi, vi) in x.iter_mut().zip(v) {
                    if !vi.is_zero() {
                        *xi += &(coef * vi);
                    }
                }
            }
            x
        });
        Subspace::from_spanning(self.ambient, vs)
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}", self.dim(), self.ambient)?;
        for b in &self.basis {
            write!(f, "; {b:?}")?;
        }
        write!(f, ")")
    }
}
