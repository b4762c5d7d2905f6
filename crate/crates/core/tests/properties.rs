//! Property tests for the invariants of each layer.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ncdiff::algebra::standard_catalog;
use ncdiff::checks::jacobi_defect;
use ncdiff::cli::{evaluate, load, parse_problem};
use ncdiff::deriv::{fn_bracket, hom_space, FormHom, GradedDerivation};
use ncdiff::forms::tensor::{from_tensor_rep, to_tensor_rep};
use ncdiff::forms::{Degree, Form, Omega};
use ncdiff::geometry::{corpus, find_projection, make_distribution, Projection};
use ncdiff::linalg::Scalar;
use ncdiff::sample::Sampler;

fn omega(i: usize) -> Omega {
    Omega::new(Arc::new(standard_catalog().swap_remove(i)))
}

/// Catalog index, skipping matrix(2) where degree-3 products get slow in
/// debug builds.
fn small_algebra() -> impl Strategy<Value = usize> {
    prop_oneof![Just(0usize), Just(1), Just(2), Just(4)]
}

fn any_algebra() -> impl Strategy<Value = usize> {
    0usize..5
}

fn form_of(omega: &Omega, k: Degree, raw: &[i64]) -> Form {
    let v = (0..omega.dim(k))
        .map(|i| Scalar::from_int(raw[i % raw.len()]))
        .collect();
    omega.form(k, v).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..40)
}

fn big(s: &Scalar) -> BigRational {
    s.to_big()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_laws_match_bigrational(a in any::<i64>(), b in 1i64..=i64::MAX, c in any::<i64>(), d in 1i64..=i64::MAX) {
        let x = Scalar::ratio(a, b);
        let y = Scalar::ratio(c, d);
        let bx = BigRational::new(BigInt::from(a), BigInt::from(b));
        let by = BigRational::new(BigInt::from(c), BigInt::from(d));
        prop_assert_eq!(big(&(&x + &y)), &bx + &by);
        prop_assert_eq!(big(&(&x * &y)), &bx * &by);
        prop_assert_eq!(big(&(&x - &y)), &bx - &by);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) * &y.recip().unwrap(), x);
        }
    }

    #[test]
    fn scalar_parse_display_round_trip(a in any::<i64>(), b in 1i64..=1_000_000) {
        let x = Scalar::ratio(a, b);
        prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
    }

    #[test]
    fn d_squares_to_zero(i in any_algebra(), k in 0i32..=3, raw in coeffs()) {
        let o = omega(i);
        let f = form_of(&o, k, &raw);
        prop_assert!(o.differential(&o.differential(&f).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn graded_leibniz(i in small_algebra(), p in 0i32..=2, q in 0i32..=2, r1 in coeffs(), r2 in coeffs()) {
        let o = omega(i);
        let (a, b) = (form_of(&o, p, &r1), form_of(&o, q, &r2));
        let lhs = o.differential(&o.mul(&a, &b).unwrap()).unwrap();
        let mut rhs = o.mul(&o.differential(&a).unwrap(), &b).unwrap();
        rhs.add_scaled(&Scalar::sign(p as i64), &o.mul(&a, &o.differential(&b).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_is_associative_and_unital(i in small_algebra(), ks in prop::array::uniform3(0i32..=1), r in coeffs()) {
        let o = omega(i);
        let f: Vec<Form> = ks.iter().enumerate().map(|(j, &k)| form_of(&o, k, &r[j % r.len()..])).collect();
        let l = o.mul(&o.mul(&f[0], &f[1]).unwrap(), &f[2]).unwrap();
        let rr = o.mul(&f[0], &o.mul(&f[1], &f[2]).unwrap()).unwrap();
        prop_assert_eq!(l, rr);
        let one = o.element_form(&o.algebra().unit());
        prop_assert_eq!(o.mul(&one, &f[0]).unwrap(), f[0].clone());
        prop_assert_eq!(o.mul(&f[0], &one).unwrap(), f[0].clone());
    }

    #[test]
    fn tensor_model_round_trip(i in any_algebra(), k in 0i32..=2, raw in coeffs()) {
        let o = omega(i);
        let f = form_of(&o, k, &raw);
        let t = to_tensor_rep(&o, &f).unwrap();
        // forms multiply out to zero in A
        if k >= 1 {
            prop_assert!(t.multiply_out(o.algebra()).iter().all(|c| c.is_zero()));
        }
        prop_assert_eq!(from_tensor_rep(&o, &t).unwrap(), f);
    }

    #[test]
    fn hom_space_elements_are_equivariant(i in any_algebra(), k in 0i32..=2, seed in any::<u64>()) {
        let o = omega(i);
        let h = Sampler::new(seed).hom(&o, k, &hom_space(&o, k).unwrap());
        prop_assert!(FormHom::new(&o, k, h.images().to_vec()).is_ok());
    }

    #[test]
    fn derivation_commutator_is_graded_antisymmetric(i in small_algebra(), ka in -1i32..=1, kb in -1i32..=1, seed in any::<u64>()) {
        let o = omega(i);
        let mut s = Sampler::new(seed);
        let homs: Vec<Vec<FormHom>> = (-1..=3).map(|k| hom_space(&o, k).unwrap()).collect();
        let h = |k: Degree| &homs[(k + 1) as usize];
        let a = s.derivation(&o, ka, h(ka), h(ka + 1)).unwrap();
        let b = s.derivation(&o, kb, h(kb), h(kb + 1)).unwrap();
        let ab = a.commutator(&o, &b).unwrap();
        let ba = b.commutator(&o, &a).unwrap();
        prop_assert!(ab.add(&ba.scaled(&Scalar::sign((ka * kb) as i64))).unwrap().is_zero());
        let d = GradedDerivation::differential(&o);
        prop_assert!(jacobi_defect(&o, &a, &b, &d).unwrap().is_zero());
        // derivations satisfy the graded Leibniz rule on random forms
        let f = s.form(&o, 1);
        let g = s.form(&o, 1);
        let lhs = a.evaluate(&o, &o.mul(&f, &g).unwrap()).unwrap();
        let mut rhs = o.mul(&a.evaluate(&o, &f).unwrap(), &g).unwrap();
        rhs.add_scaled(&Scalar::sign(ka as i64), &o.mul(&f, &a.evaluate(&o, &g).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fn_bracket_is_graded_antisymmetric(i in small_algebra(), k in 0i32..=2, l in 0i32..=2, seed in any::<u64>()) {
        let o = omega(i);
        let mut s = Sampler::new(seed);
        let kk = s.hom(&o, k, &hom_space(&o, k).unwrap());
        let ll = s.hom(&o, l, &hom_space(&o, l).unwrap());
        let a = fn_bracket(&o, &kk, &ll).unwrap();
        let b = fn_bracket(&o, &ll, &kk).unwrap();
        prop_assert!(a.add(&b.scaled(&Scalar::sign((k * l) as i64))).unwrap().is_zero());
    }

    #[test]
    fn make_distribution_is_idempotent(i in small_algebra(), raw in coeffs()) {
        let o = omega(i);
        let f = form_of(&o, 1, &raw);
        let d = make_distribution(&o, &[f]).unwrap();
        prop_assert_eq!(make_distribution(&o, &d.basis_forms(&o)).unwrap(), d);
    }

    #[test]
    fn formatted_forms_parse_back(i in any_algebra(), k in 0i32..=2, raw in coeffs()) {
        let o = omega(i);
        let f = form_of(&o, k, &raw);
        let text = format!("[algebra]\nbuiltin = {}\n", o.algebra().name());
        let problem = load(&parse_problem(&text).unwrap()).unwrap();
        let po = problem.omega.as_ref().unwrap();
        let out = evaluate(po, &problem.names, &o.format(&f)).unwrap();
        let coords: Vec<String> = f.coords().iter().map(|c| c.to_string()).collect();
        prop_assert_eq!(&out[1].1, &coords.join(" "));
    }
}

#[test]
fn projection_invariants_on_corpus() {
    for i in [0usize, 1, 2, 4] {
        let o = omega(i);
        let ds = corpus::enumerate_distributions(&o).unwrap().unwrap();
        for p in corpus::projection_corpus(&o, &ds).unwrap() {
            let (im, ker) = (p.image(&o).unwrap(), p.kernel(&o).unwrap());
            assert_eq!(im.dim() + ker.dim(), o.dim(1));
            assert!(im.space().intersection(ker.space()).unwrap().is_zero());
            let q = p.complement(&o).unwrap();
            assert_eq!(q.image(&o).unwrap(), ker);
            assert_eq!(find_projection(&o, &im).unwrap().unwrap().image(&o).unwrap(), im);
            assert!(Projection::new(&o, p.hom().clone()).is_ok());
        }
    }
}
