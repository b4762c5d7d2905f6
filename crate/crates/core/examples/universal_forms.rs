//! Dimensions, products and the differential of universal forms, checked
//! against the tensor model `Ω_k ⊂ A^{⊗(k+1)}`.

use std::sync::Arc;

use ncdiff::algebra::standard_catalog;
use ncdiff::forms::tensor::to_tensor_rep;
use ncdiff::forms::Omega;

fn main() -> ncdiff::Result<()> {
    for a in standard_catalog() {
        let omega = Omega::new(Arc::new(a));
        let dims: Vec<usize> = (0..=4).map(|k| omega.dim(k)).collect();
        println!("{:<26} dim Omega_0..4 = {dims:?}", omega.algebra().name());
    }

    let omega = Omega::new(Arc::new(ncdiff::algebra::matrix(2).expect("m >= 1")));
    let alg = omega.algebra();
    let (e12, e21) = (alg.basis_element(1), alg.basis_element(2));
    let w = omega.mul(&omega.element_form(&e12), &omega.d_element(&e21))?;
    println!("\nw = {}", omega.format(&w));
    println!("dw = {}", omega.format(&omega.differential(&w)?));
    let w2 = omega.mul(&w, &w)?;
    println!("w w = {}", omega.format(&w2));
    println!(
        "d(d(w)) = {}",
        omega.format(&omega.differential(&omega.differential(&w)?)?)
    );

    // the same product computed in the tensor model
    let t = to_tensor_rep(&omega, &w)?;
    assert_eq!(t.mul(alg, &t), to_tensor_rep(&omega, &w2)?);
    println!("tensor model agrees on w w");
    Ok(())
}
