use std::sync::Arc;

use super::*;
use crate::algebra::{dual_numbers, product_qq, standard_catalog, truncated_poly};
use crate::forms::Omega;
use crate::linalg::Scalar;

fn dual() -> Omega {
    Omega::new(Arc::new(dual_numbers()))
}

/// K(dε) = ε dε over the dual numbers.
fn eps_hom(omega: &Omega) -> FormHom {
    FormHom::new(omega, 1, vec![omega.basis_form(1, 1)]).unwrap()
}

#[test]
fn hom_space_dual_numbers() {
    let omega = dual();
    let basis = hom_space(&omega, 1).unwrap();
    assert_eq!(basis.len(), 2);
    assert!(FormHom::new(&omega, 1, vec![omega.basis_form(1, 0)]).is_ok());
    assert!(FormHom::new(&omega, 1, vec![omega.basis_form(1, 1)]).is_ok());
}

#[test]
fn identity_and_zero_are_homs() {
    for a in standard_catalog() {
        let omega = Omega::new(Arc::new(a));
        let id = FormHom::identity(&omega);
        assert!(FormHom::new(&omega, 1, id.images().to_vec()).is_ok());
        for k in 0..3 {
            let z = FormHom::zero(&omega, k);
            assert!(FormHom::new(&omega, k, z.images().to_vec()).is_ok());
        }
    }
}

#[test]
fn non_equivariant_map_is_rejected() {
    // Over Q×Q, dp ↦ p breaks K(d(pp)) = p K(dp) + K(dp) p: the left side is p, the right 2p
    let omega = Omega::new(Arc::new(product_qq()));
    let err = FormHom::new(&omega, 0, vec![omega.basis_form(0, 1)]).unwrap_err();
    assert!(matches!(err, crate::Error::NotEquivariant { .. }));
}

#[test]
fn evaluate_examples() {
    let omega = dual();
    let d = GradedDerivation::differential(&omega);
    d.verify(&omega).unwrap();
    let x = omega.basis_form(1, 1);
    assert_eq!(d.evaluate(&omega, &x).unwrap(), omega.differential(&x).unwrap());
    for a in [
        d.clone(),
        GradedDerivation::insertion(&omega, &eps_hom(&omega)).unwrap(),
    ] {
        assert!(a.evaluate(&omega, &omega.basis_form(0, 0)).unwrap().is_zero());
    }
    let jk = GradedDerivation::insertion(&omega, &eps_hom(&omega)).unwrap();
    assert_eq!(jk.degree(), 0);
    assert!(jk.evaluate(&omega, &omega.basis_form(2, 0)).unwrap().is_zero());
}

#[test]
fn differential_matches_evaluation_everywhere() {
    let omega = Omega::new(Arc::new(truncated_poly(3).unwrap()));
    let d = GradedDerivation::differential(&omega);
    for k in 0..4 {
        for f in omega.basis(k) {
            assert_eq!(d.evaluate(&omega, &f).unwrap(), omega.differential(&f).unwrap());
        }
    }
}

#[test]
fn insertion_of_identity_counts_degree() {
    for a in standard_catalog().into_iter().take(3) {
        let omega = Omega::new(Arc::new(a));
        let j = GradedDerivation::insertion(&omega, &FormHom::identity(&omega)).unwrap();
        for l in 0..4 {
            for f in omega.basis(l) {
                assert_eq!(j.evaluate(&omega, &f).unwrap(), f.scaled(&Scalar::from_int(l as i64)));
            }
        }
    }
}

#[test]
fn lie_derivative_examples() {
    let omega = dual();
    let lid = GradedDerivation::lie_derivative(&omega, &FormHom::identity(&omega)).unwrap();
    assert_eq!(lid, GradedDerivation::differential(&omega));
    let lz = GradedDerivation::lie_derivative(&omega, &FormHom::zero(&omega, 1)).unwrap();
    assert!(lz.is_zero());
    let lk = GradedDerivation::lie_derivative(&omega, &eps_hom(&omega)).unwrap();
    lk.verify(&omega).unwrap();
    assert_eq!(lk.on_elements()[1], omega.basis_form(1, 1));
    // L_K(dε) = −d(L_K ε) = −dε dε
    assert_eq!(lk.on_differentials()[0], omega.basis_form(2, 0).neg());
    let d = GradedDerivation::differential(&omega);
    assert!(lk.commutator(&omega, &d).unwrap().is_zero());
}

#[test]
fn commutator_examples() {
    let omega = dual();
    let d = GradedDerivation::differential(&omega);
    assert!(d.commutator(&omega, &d).unwrap().is_zero());
    let lk =
        GradedDerivation::insertion(&omega, &FormHom::new(&omega, 1, vec![omega.basis_form(1, 0)]).unwrap()).unwrap();
    assert!(lk.commutator(&omega, &lk).unwrap().is_zero());
    // [j_K, d](a) = K(da)
    let k = eps_hom(&omega);
    let jk = GradedDerivation::insertion(&omega, &k).unwrap();
    let c = jk.commutator(&omega, &d).unwrap();
    for i in 0..2 {
        let a = omega.algebra().basis_element(i);
        let kda = k.apply(&omega, &omega.d_element(&a)).unwrap();
        assert_eq!(c.on_elements()[i], kda);
    }
}

#[test]
fn decompose_examples() {
    let omega = dual();
    let d = GradedDerivation::differential(&omega);
    let parts = decompose(&omega, &d).unwrap();
    assert_eq!(parts.lie_part, FormHom::identity(&omega));
    assert!(parts.algebraic_part.is_zero());

    let l = eps_hom(&omega);
    let parts = decompose(&omega, &GradedDerivation::insertion(&omega, &l).unwrap()).unwrap();
    assert!(parts.lie_part.is_zero());
    assert_eq!(parts.algebraic_part, l);
}

#[test]
fn decompose_round_trip_product() {
    let omega = Omega::new(Arc::new(product_qq()));
    let h1 = hom_space(&omega, 1).unwrap();
    let h2 = hom_space(&omega, 2).unwrap();
    for k in &h1 {
        for l in &h2 {
            let kk = k.scaled(&Scalar::from_int(2)).add(&h1[0]).unwrap();
            let dd = compose_parts(&omega, &kk, l).unwrap();
            dd.verify(&omega).unwrap();
            let parts = decompose(&omega, &dd).unwrap();
            assert_eq!(parts.lie_part, kk);
            assert_eq!(&parts.algebraic_part, l);
        }
    }
}

#[test]
fn bracket_examples() {
    let omega = dual();
    let id = FormHom::identity(&omega);
    let k = eps_hom(&omega);
    let z = FormHom::zero(&omega, 1);
    assert!(algebraic_bracket(&omega, &id, &id).unwrap().is_zero());
    assert!(algebraic_bracket(&omega, &k, &z).unwrap().is_zero());
    assert!(algebraic_bracket(&omega, &k, &k).unwrap().is_zero());
    assert!(fn_bracket(&omega, &k, &z).unwrap().is_zero());
    assert!(fn_bracket(&omega, &id, &id).unwrap().is_zero());
    assert_eq!(fn_bracket(&omega, &k, &k).unwrap().degree(), 2);
}

#[test]
fn insert_hom_examples() {
    let omega = Omega::new(Arc::new(truncated_poly(3).unwrap()));
    let id = FormHom::identity(&omega);
    for l in 0..3 {
        for h in hom_space(&omega, l).unwrap() {
            let got = insert_hom(&omega, &id, &h).unwrap();
            assert_eq!(got, h.scaled(&Scalar::from_int(l as i64)));
            assert!(insert_hom(&omega, &FormHom::zero(&omega, 1), &h).unwrap().is_zero());
            assert!(insert_hom(&omega, &h, &FormHom::zero(&omega, 2)).unwrap().is_zero());
        }
    }
}

#[test]
fn universal_derivations() {
    let r = check_universal_derivation(&dual(), BimoduleTag::Omega1).unwrap();
    assert_eq!((r.der_dim, r.hom_dim), (2, 2));
    assert!(r.is_isomorphism());
    let omega = Omega::new(Arc::new(product_qq()));
    let r = check_universal_derivation(&omega, BimoduleTag::Algebra).unwrap();
    // commutative and semisimple: no derivations into A
    assert_eq!((r.der_dim, r.hom_dim), (0, 0));
    assert!(r.is_isomorphism());
}

#[test]
fn derivation_space_splits() {
    let omega = dual();
    for k in -1..2 {
        let all = derivation_space(&omega, k).unwrap();
        let h = hom_space(&omega, k).unwrap().len() + hom_space(&omega, k + 1).unwrap().len();
        assert_eq!(all.len(), h, "degree {k}");
        for d in &all {
            d.verify(&omega).unwrap();
        }
        for d in algebraic_derivation_space(&omega, k).unwrap() {
            let j = GradedDerivation::insertion(&omega, &d.restriction(&omega).unwrap()).unwrap();
            assert_eq!(j, d);
        }
    }
}
