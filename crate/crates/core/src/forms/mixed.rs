use std::collections::BTreeMap;

use super::{Degree, Form, Omega};
use crate::algebra::AlgebraId;
use crate::error::{Error, Result};

/// An inhomogeneous element of `Ω(A)`, stored by degree. Zero pieces are
/// never kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedForm {
    algebra: AlgebraId,
    pieces: BTreeMap<Degree, Form>,
}

impl MixedForm {
    pub fn zero(omega: &Omega) -> Self {
        MixedForm {
            algebra: omega.algebra_id(),
            pieces: BTreeMap::new(),
        }
    }

    pub fn from_form(form: Form) -> Self {
        let mut m = MixedForm {
            algebra: form.algebra_id(),
            pieces: BTreeMap::new(),
        };
        if !form.is_zero() {
            m.pieces.insert(form.degree(), form);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = Degree> + '_ {
        self.pieces.keys().copied()
    }

    pub fn component(&self, k: Degree) -> Option<&Form> {
        self.pieces.get(&k)
    }

    pub fn pieces(&self) -> impl Iterator<Item = &Form> {
        self.pieces.values()
    }

    /// Adds a homogeneous form into the matching degree.
    pub fn add_form(&mut self, form: &Form) -> Result<()> {
        if form.algebra_id() != self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let k = form.degree();
        let sum = match self.pieces.remove(&k) {
            Some(f) => f.add(form)?,
            None => form.clone(),
        };
        if !sum.is_zero() {
            self.pieces.insert(k, sum);
        }
        Ok(())
    }

    pub fn add(&self, other: &MixedForm) -> Result<MixedForm> {
        let mut out = self.clone();
        for f in other.pieces() {
            out.add_form(f)?;
        }
        Ok(out)
    }

    pub fn mul(&self, omega: &Omega, other: &MixedForm) -> Result<MixedForm> {
        if self.algebra != other.algebra || self.algebra != omega.algebra_id() {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = MixedForm::zero(omega);
        for a in self.pieces() {
            for b in other.pieces() {
                out.add_form(&omega.mul(a, b)?)?;
            }
        }
        Ok(out)
    }

    pub fn differential(&self, omega: &Omega) -> Result<MixedForm> {
        let mut out = MixedForm::zero(omega);
        for a in self.pieces() {
            out.add_form(&omega.differential(a)?)?;
        }
        Ok(out)
    }
}
