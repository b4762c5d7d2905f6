//! Graded derivations: insertion operators, Lie derivatives and the
//! decomposition `D = L_K + j_L`.

use std::sync::Arc;

use ncdiff::algebra::truncated_poly;
use ncdiff::deriv::{compose_parts, decompose, derivation_space, hom_space, GradedDerivation};
use ncdiff::forms::Omega;

fn main() -> ncdiff::Result<()> {
    let omega = Omega::new(Arc::new(truncated_poly(3).expect("m >= 1")));
    for k in -1..=1 {
        println!(
            "degree {k:>2}: dim Der = {}, dim Hom(Omega1, Omega_{}) = {}",
            derivation_space(&omega, k)?.len(),
            k + 1,
            hom_space(&omega, k + 1)?.len()
        );
    }

    let ks = hom_space(&omega, 1)?;
    let ls = hom_space(&omega, 2)?;
    let (k, l) = (&ks[ks.len() - 1], &ls[0]);
    println!("\nK: {}", k.format(&omega));
    println!("L: {}", l.format(&omega));

    let lie = GradedDerivation::lie_derivative(&omega, k)?;
    let d = GradedDerivation::differential(&omega);
    println!("[L_K, d] = 0: {}", lie.commutator(&omega, &d)?.is_zero());

    let parts = decompose(&omega, &compose_parts(&omega, k, l)?)?;
    assert_eq!(&parts.lie_part, k);
    assert_eq!(&parts.algebraic_part, l);
    println!("decompose(L_K + j_L) recovers (K, L)");

    let x = omega.algebra().basis_element(1);
    let w = omega.mul(&omega.d_element(&x), &omega.d_element(&x))?;
    println!("L_K(dx dx) = {}", omega.format(&lie.evaluate(&omega, &w)?));
    Ok(())
}
