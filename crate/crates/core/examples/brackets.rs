//! The algebraic and Frölicher–Nijenhuis brackets on `Ω¹(A)`.

use std::sync::Arc;

use ncdiff::algebra::group_algebra_cyclic;
use ncdiff::deriv::{algebraic_bracket, fn_bracket, fn_bracket_parts, hom_space, GradedDerivation};
use ncdiff::forms::Omega;
use ncdiff::sample::Sampler;

fn main() -> ncdiff::Result<()> {
    let omega = Omega::new(Arc::new(group_algebra_cyclic(3).expect("m >= 1")));
    let mut s = Sampler::new(7);
    let basis = hom_space(&omega, 1)?;
    let k = s.hom(&omega, 1, &basis);
    let l = s.hom(&omega, 1, &basis);
    println!("K = {}", k.format(&omega));
    println!("L = {}", l.format(&omega));

    let parts = fn_bracket_parts(&omega, &k, &l)?;
    println!("\n[K, L] = {}", parts.lie_part.format(&omega));
    println!("algebraic residue is zero: {}", parts.algebraic_part.is_zero());

    // L_[K,L] = [L_K, L_L]
    let lhs = GradedDerivation::lie_derivative(&omega, &fn_bracket(&omega, &k, &l)?)?;
    let rhs = GradedDerivation::lie_derivative(&omega, &k)?
        .commutator(&omega, &GradedDerivation::lie_derivative(&omega, &l)?)?;
    assert_eq!(lhs, rhs);
    println!("L_[K,L] = [L_K, L_L]");

    println!("\n[K, L]^ = {}", algebraic_bracket(&omega, &k, &l)?.format(&omega));
    Ok(())
}
