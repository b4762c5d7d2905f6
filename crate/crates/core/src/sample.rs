//! Seeded random sampling of forms, homs and derivations. Coefficients are
//! drawn uniformly from `{−2, −1, 0, 1, 2}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deriv::{compose_parts, FormHom, GradedDerivation};
use crate::error::Result;
use crate::forms::{Degree, Form, Omega};
use crate::linalg::{Scalar, Vector};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn scalar(&mut self) -> Scalar {
        Scalar::from_int(self.rng.gen_range(-2..=2))
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn vector(&mut self, len: usize) -> Vector {
        (0..len).map(|_| self.scalar()).collect()
    }

    pub fn form(&mut self, omega: &Omega, k: Degree) -> Form {
        let v = self.vector(omega.dim(k));
        omega.form(k, v).expect("length matches")
    }

    /// A random linear combination of the given basis of `Ω¹ₖ`.
    pub fn hom(&mut self, omega: &Omega, k: Degree, basis: &[FormHom]) -> FormHom {
        let mut out = FormHom::zero(omega, k);
        for b in basis {
            let c = self.scalar();
            if !c.is_zero() {
                out = out.add(&b.scaled(&c)).expect("same space");
            }
        }
        out
    }

    /// `L_K + j_L` for random `K ∈ Ω¹ₖ`, `L ∈ Ω¹ₖ₊₁`. Every derivation has
    /// this form, so this samples the whole of `Der_k`.
    pub fn derivation(
        &mut self,
        omega: &Omega,
        k: Degree,
        hk: &[FormHom],
        hk1: &[FormHom],
    ) -> Result<GradedDerivation> {
        let kk = self.hom(omega, k, hk);
        let ll = self.hom(omega, k + 1, hk1);
        compose_parts(omega, &kk, &ll)
    }
}
