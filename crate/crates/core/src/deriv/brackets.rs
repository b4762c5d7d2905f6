use crate::error::{Error, Result};
use crate::forms::Omega;

use super::{FormHom, GradedDerivation};

/// `D = L_K + j_L` with `K ∈ Ω¹ₖ` and `L ∈ Ω¹ₖ₊₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub lie_part: FormHom,
    pub algebraic_part: FormHom,
}

/// `L_K + j_L`, of degree `deg K`.
pub fn compose_parts(omega: &Omega, k: &FormHom, l: &FormHom) -> Result<GradedDerivation> {
    if l.degree() != k.degree() + 1 {
        return Err(Error::DegreeMismatch {
            expected: k.degree() + 1,
            found: l.degree(),
        });
    }
    GradedDerivation::lie_derivative(omega, k)?.add(&GradedDerivation::insertion(omega, l)?)
}

/// Splits a derivation into its Lie and algebraic parts. `K(deⱼ) = D(eⱼ)`,
/// and `L` is the restriction of `D − L_K` to `Ω₁`.
pub fn decompose(omega: &Omega, d: &GradedDerivation) -> Result<Decomposition> {
    let k = d.degree();
    let lie_part = FormHom::new(omega, k, d.on_elements()[1..].to_vec())
        .map_err(|e| Error::Inconsistent(format!("D restricted to A is not a bimodule map: {e}")))?;
    let lk = GradedDerivation::lie_derivative(omega, &lie_part)?;
    let rest = d.sub(&lk)?;
    if !rest.is_algebraic() {
        return Err(Error::Inconsistent("D − L_K does not vanish on A".into()));
    }
    let algebraic_part = FormHom::new(omega, k + 1, rest.on_differentials().to_vec())
        .map_err(|e| Error::Inconsistent(format!("algebraic part is not a bimodule map: {e}")))?;
    if &compose_parts(omega, &lie_part, &algebraic_part)? != d {
        return Err(Error::Inconsistent("L_K + j_L does not reproduce D".into()));
    }
    Ok(Decomposition {
        lie_part,
        algebraic_part,
    })
}

/// `[K, L]^Δ ∈ Ω¹_{k+ℓ−1}`, defined by `j_{[K,L]^Δ} = [j_K, j_L]`.
pub fn algebraic_bracket(omega: &Omega, k: &FormHom, l: &FormHom) -> Result<FormHom> {
    let jk = GradedDerivation::insertion(omega, k)?;
    let jl = GradedDerivation::insertion(omega, l)?;
    let c = jk.commutator(omega, &jl)?;
    if !c.is_algebraic() {
        return Err(Error::Inconsistent("commutator of insertions is not algebraic".into()));
    }
    c.restriction(omega)
}

/// The Frölicher–Nijenhuis bracket `[K, L] ∈ Ω¹_{k+ℓ}` with
/// `L_{[K,L]} = [L_K, L_L]`.
pub fn fn_bracket(omega: &Omega, k: &FormHom, l: &FormHom) -> Result<FormHom> {
    let parts = fn_bracket_parts(omega, k, l)?;
    if !parts.algebraic_part.is_zero() {
        return Err(Error::Inconsistent(format!(
            "[L_K, L_L] has a nonzero algebraic part: {}",
            parts.algebraic_part.format(omega)
        )));
    }
    Ok(parts.lie_part)
}

/// The decomposition of `[L_K, L_L]`. Its algebraic part is expected to
/// vanish since the commutator commutes with `d`.
pub fn fn_bracket_parts(omega: &Omega, k: &FormHom, l: &FormHom) -> Result<Decomposition> {
    let lk = GradedDerivation::lie_derivative(omega, k)?;
    let ll = GradedDerivation::lie_derivative(omega, l)?;
    decompose(omega, &lk.commutator(omega, &ll)?)
}

/// `j_K L = j_K ∘ L ∈ Ω¹_{k+ℓ−1}`.
pub fn insert_hom(omega: &Omega, k: &FormHom, l: &FormHom) -> Result<FormHom> {
    let jk = GradedDerivation::insertion(omega, k)?;
    let images = l
        .images()
        .iter()
        .map(|f| jk.evaluate(omega, f))
        .collect::<Result<Vec<_>>>()?;
    FormHom::new(omega, k.degree() + l.degree() - 1, images)
}
