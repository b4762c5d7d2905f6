//! Distributions in `Ω₁(A)`: bimodule closure, splittings, involutivity and
//! global integrability.

use std::sync::Arc;

use ncdiff::algebra::{dual_numbers, truncated_poly};
use ncdiff::forms::Omega;
use ncdiff::geometry::{find_projection, globally_integrable, is_involutive, make_distribution};

fn main() -> ncdiff::Result<()> {
    let omega = Omega::new(Arc::new(dual_numbers()));
    let eps = omega.algebra().basis_element(1);
    let w = omega.mul(&omega.element_form(&eps), &omega.d_element(&eps))?;
    let d = make_distribution(&omega, &[w])?;
    println!("dual numbers, D = <eps d(eps)>: dim {}", d.dim());
    println!("  involutive: {}", is_involutive(&omega, &d)?);
    println!("  has a complement: {}", find_projection(&omega, &d)?.is_some());

    let omega = Omega::new(Arc::new(truncated_poly(3).expect("m >= 1")));
    let x2 = omega.algebra().basis_element(2);
    let d = make_distribution(&omega, &[omega.d_element(&x2)])?;
    let r = globally_integrable(&omega, &d)?;
    println!("\nQ[x]/x^3, D = <d(x^2)>: dim {}", d.dim());
    println!("  integrable: {}", r.integrable);
    for v in r.witness.space().basis() {
        println!("  B_max contains {}", omega.algebra().format_element(v));
    }
    if r.readings_differ() {
        println!("  linear span of A d(B) + d(B) A has dim {}", r.linear_span.dim());
    }
    Ok(())
}
