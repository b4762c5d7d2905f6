use std::sync::Arc;

use super::*;
use crate::algebra::{dual_numbers, matrix, product_qq, standard_catalog, truncated_poly};
use crate::linalg::{Matrix, Subspace};

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn dual() -> Omega {
    Omega::new(Arc::new(dual_numbers()))
}

#[test]
fn dimensions() {
    assert_eq!(dual().dim(3), 2);
    assert_eq!(Omega::new(Arc::new(matrix(2).unwrap())).dim(2), 36);
    for a in standard_catalog() {
        let n = a.dim();
        assert_eq!(form_dim(&a, 0), n);
        assert_eq!(Omega::new(Arc::new(a)).dim(-1), 0);
    }
}

#[test]
fn basis_index_round_trip() {
    let omega = Omega::new(Arc::new(truncated_poly(3).unwrap()));
    for k in 0..4 {
        for idx in 0..omega.dim(k) {
            let ix = omega.basis_indices(k, idx);
            assert!(ix[1..].iter().all(|&i| i >= 1));
            assert_eq!(omega.basis_index(&ix), idx);
        }
    }
    assert_eq!(omega.basis_indices(2, 0), vec![0, 1, 1]);
    assert_eq!(omega.basis_indices(2, 5), vec![1, 1, 2]);
}

#[test]
fn differential_examples() {
    let omega = dual();
    let eps = omega.algebra().basis_element(1);
    assert_eq!(
        omega.differential(&omega.element_form(&eps)).unwrap(),
        omega.basis_form(1, 0)
    );
    let one = omega.algebra().unit();
    assert!(omega.differential(&omega.element_form(&one)).unwrap().is_zero());
    // d(eps d(eps)) = d(eps) d(eps)
    let d = omega.differential(&omega.basis_form(1, 1)).unwrap();
    assert_eq!(d, omega.basis_form(2, 0));
    assert_eq!(omega.format(&d), "d(eps) d(eps)");
}

#[test]
fn product_examples() {
    let omega = dual();
    let deps = omega.basis_form(1, 0);
    let eps = omega.basis_form(0, 1);
    let p = omega.mul(&deps, &eps).unwrap();
    assert_eq!(p.coords(), &[s(0), s(-1)]);
    assert_eq!(omega.format(&p), "-1 * eps d(eps)");
    assert_eq!(omega.mul(&deps, &deps).unwrap(), omega.basis_form(2, 0));

    let omega = Omega::new(Arc::new(product_qq()));
    let dp = omega.basis_form(1, 0);
    let p = omega.basis_form(0, 1);
    let prod = omega.mul(&dp, &p).unwrap();
    assert_eq!(omega.format(&prod), "d(p) + -1 * p d(p)");
}

#[test]
fn actions_agree_with_mul() {
    let omega = Omega::new(Arc::new(matrix(2).unwrap()));
    let a = vec![s(1), s(2), s(0), s(-1)];
    let b = vec![s(0), s(1), s(1), s(3)];
    let af = omega.form(0, a.clone()).unwrap();
    let bf = omega.form(0, b.clone()).unwrap();
    for w in omega.basis(2).step_by(5) {
        assert_eq!(omega.left_mul(&a, &w).unwrap(), omega.mul(&af, &w).unwrap());
        assert_eq!(omega.right_mul(&w, &b).unwrap(), omega.mul(&w, &bf).unwrap());
        let db = omega.differential(&bf).unwrap();
        assert_eq!(omega.append_d(&w, &b).unwrap(), omega.mul(&w, &db).unwrap());
    }
}

#[test]
fn unit_is_unit_of_omega() {
    let omega = Omega::new(Arc::new(matrix(2).unwrap()));
    let one = omega.element_form(&omega.algebra().unit());
    for w in omega.basis(2) {
        assert_eq!(omega.mul(&one, &w).unwrap(), w);
        assert_eq!(omega.mul(&w, &one).unwrap(), w);
    }
}

#[test]
fn mismatch_errors() {
    let a = dual();
    let b = dual();
    assert_eq!(
        a.mul(&a.basis_form(0, 0), &b.basis_form(0, 0)),
        Err(Error::AlgebraMismatch)
    );
    assert!(matches!(a.form(1, vec![s(1)]), Err(Error::Length { .. })));
    assert!(matches!(
        a.basis_form(1, 0).add(&a.basis_form(2, 0)),
        Err(Error::DegreeMismatch { .. })
    ));
}

#[test]
fn induced_morphism_examples() {
    let t3 = Arc::new(truncated_poly(3).unwrap());
    let dn = Arc::new(dual_numbers());
    let (src, dst) = (Omega::new(t3.clone()), Omega::new(dn.clone()));
    let f = AlgebraHom::new(t3.clone(), dn, Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]])).unwrap();
    // x dx -> eps d(eps)
    let x_dx = src.basis_form(1, src.basis_index(&[1, 1]));
    let img = induced_morphism(&f, &src, &dst, &x_dx).unwrap();
    assert_eq!(dst.format(&img), "eps d(eps)");
    // x^2 dx -> 0
    let x2_dx = src.basis_form(1, src.basis_index(&[2, 1]));
    assert!(induced_morphism(&f, &src, &dst, &x2_dx).unwrap().is_zero());

    // dual numbers -> Q, eps -> 0 kills d(eps)
    let q = Arc::new(truncated_poly(1).unwrap());
    let dual_alg = src_dual();
    let g = AlgebraHom::new(dual_alg.clone(), q.clone(), Matrix::from_i64(&[&[1, 0]])).unwrap();
    let (s1, s2) = (Omega::new(dual_alg), Omega::new(q));
    assert!(induced_morphism(&g, &s1, &s2, &s1.basis_form(1, 0)).unwrap().is_zero());

    let id = AlgebraHom::identity(t3);
    assert_eq!(induced_morphism(&id, &src, &src, &x_dx).unwrap(), x_dx);
}

fn src_dual() -> Arc<crate::algebra::Algebra> {
    Arc::new(dual_numbers())
}

#[test]
fn ideal_examples() {
    let omega = dual();
    let full = Subspace::full(omega.dim(1));
    assert!(ideal_component(&omega, &full, 2).unwrap().is_full());
    let zero = Subspace::zero(omega.dim(1));
    for k in 1..4 {
        assert!(ideal_component(&omega, &zero, k).unwrap().is_zero());
    }
    let d = Subspace::from_spanning(2, [vec![s(0), s(1)]]).unwrap();
    assert_eq!(ideal_component(&omega, &d, 1).unwrap(), d);
    // degree 2: span{eps d(eps) d(eps), d(eps) eps d(eps)} = span{eps d(eps) d(eps)}
    let i2 = ideal_component(&omega, &d, 2).unwrap();
    assert_eq!(i2.basis(), &[vec![s(0), s(1)]]);
    assert!(matches!(
        ideal_component(&omega, &d, 0),
        Err(Error::DegreeTooSmall { .. })
    ));
}

#[test]
fn mixed_forms() {
    let omega = dual();
    let one = MixedForm::from_form(omega.basis_form(0, 0));
    let deps = MixedForm::from_form(omega.basis_form(1, 0));
    let sum = one.add(&deps).unwrap();
    assert_eq!(sum.degrees().collect::<Vec<_>>(), vec![0, 1]);
    let sq = sum.mul(&omega, &sum).unwrap();
    // (1 + dε)^2 = 1 + 2dε + dε dε
    assert_eq!(sq.component(1).unwrap().coords(), &[s(2), s(0)]);
    assert_eq!(sq.component(2).unwrap(), &omega.basis_form(2, 0));
    assert!(sum.differential(&omega).unwrap().is_zero());
    let neg = MixedForm::from_form(omega.basis_form(1, 0).neg());
    assert_eq!(deps.add(&neg).unwrap(), MixedForm::zero(&omega));
}
