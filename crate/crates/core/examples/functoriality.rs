//! A unital homomorphism `f: A → B` induces `Ω(A) → Ω(B)` commuting with
//! `d` and the product.

use std::sync::Arc;

use ncdiff::algebra::{dual_numbers, truncated_poly, AlgebraHom};
use ncdiff::forms::{induced_morphism, Omega};
use ncdiff::linalg::Matrix;

fn main() -> ncdiff::Result<()> {
    let a = Arc::new(dual_numbers());
    let b = Arc::new(truncated_poly(3).expect("m >= 1"));
    // eps -> x^2
    let f = AlgebraHom::new(a.clone(), b.clone(), Matrix::from_i64(&[&[1, 0], &[0, 0], &[0, 1]]))?;
    let (oa, ob) = (Omega::new(a), Omega::new(b));

    let eps = oa.algebra().basis_element(1);
    let w = oa.mul(&oa.element_form(&eps), &oa.d_element(&eps))?;
    let fw = induced_morphism(&f, &oa, &ob, &w)?;
    println!("f(eps d(eps)) = {}", ob.format(&fw));

    let f_dw = induced_morphism(&f, &oa, &ob, &oa.differential(&w)?)?;
    assert_eq!(f_dw, ob.differential(&fw)?);
    println!("f(d w) = d(f w) = {}", ob.format(&f_dw));

    let ww = oa.mul(&w, &oa.d_element(&eps))?;
    assert_eq!(
        induced_morphism(&f, &oa, &ob, &ww)?,
        ob.mul(&fw, &induced_morphism(&f, &oa, &ob, &oa.d_element(&eps))?)?
    );
    println!("f is multiplicative on eps d(eps) d(eps)");
    Ok(())
}
