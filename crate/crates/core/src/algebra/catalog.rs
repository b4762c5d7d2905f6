//! Built-in example algebras.

use super::{Algebra, AlgebraError};
use crate::linalg::{unit_vector, Scalar, Vector};

fn table_from(n: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Vec<Vec<Vector>> {
    (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()
}

fn check_param(name: &str, m: usize) -> Result<(), AlgebraError> {
    if m < 1 {
        return Err(AlgebraError::InvalidParameter {
            name: name.to_string(),
            detail: format!("parameter must be at least 1, got {m}"),
        });
    }
    Ok(())
}

fn power_label(base: &str, p: usize) -> String {
    match p {
        0 => "1".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{p}"),
    }
}

/// `Q[eps]/(eps^2)` with basis `1, eps`.
pub fn dual_numbers() -> Algebra {
    let mut a = truncated_poly(2).expect("m = 2");
    a.name = "dual_numbers".into();
    a.labels[1] = "eps".into();
    a.raw_labels[1] = "eps".into();
    a
}

/// `Q × Q` with basis `1, p` where `p = (1, 0)` is idempotent.
pub fn product_qq() -> Algebra {
    let t = table_from(2, |i, j| match (i, j) {
        (0, k) | (k, 0) => unit_vector(2, k),
        _ => unit_vector(2, 1),
    });
    Algebra::from_structure_constants("product_QQ", vec!["1".into(), "p".into()], t, unit_vector(2, 0))
        .expect("catalog algebra is valid")
}

/// `Q[x]/(x^m)` with basis `1, x, x^2, …, x^{m-1}`.
pub fn truncated_poly(m: usize) -> Result<Algebra, AlgebraError> {
    check_param("truncated_poly", m)?;
    let t = table_from(m, |i, j| {
        if i + j < m {
            unit_vector(m, i + j)
        } else {
            vec![Scalar::zero(); m]
        }
    });
    let labels = (0..m).map(|p| power_label("x", p)).collect();
    Algebra::from_structure_constants(format!("truncated_poly({m})"), labels, t, unit_vector(m, 0))
}

/// The full matrix algebra `M_m(Q)` on matrix units `E_ab`. The unit
/// `Σ E_aa` replaces `E_11` in the normalized basis.
pub fn matrix(m: usize) -> Result<Algebra, AlgebraError> {
    check_param("matrix", m)?;
    let n = m * m;
    let idx = |a: usize, b: usize| a * m + b;
    let t = table_from(n, |i, j| {
        let (a, b) = (i / m, i % m);
        let (c, d) = (j / m, j % m);
        if b == c {
            unit_vector(n, idx(a, d))
        } else {
            vec![Scalar::zero(); n]
        }
    });
    let labels = (0..n)
        .map(|i| {
            let (a, b) = (i / m + 1, i % m + 1);
            if m < 10 {
                format!("E{a}{b}")
            } else {
                format!("E{a}_{b}")
            }
        })
        .collect();
    let mut unit = vec![Scalar::zero(); n];
    for a in 0..m {
        unit[idx(a, a)] = Scalar::one();
    }
    Algebra::from_structure_constants(format!("matrix({m})"), labels, t, unit)
}

/// The group algebra `Q[C_m]` with basis `1, g, …, g^{m-1}`.
pub fn group_algebra_cyclic(m: usize) -> Result<Algebra, AlgebraError> {
    check_param("group_algebra_cyclic", m)?;
    let t = table_from(m, |i, j| unit_vector(m, (i + j) % m));
    let labels = (0..m).map(|p| power_label("g", p)).collect();
    Algebra::from_structure_constants(format!("group_algebra_cyclic({m})"), labels, t, unit_vector(m, 0))
}

/// Looks up a catalog algebra by name, e.g. `dual_numbers`, `matrix(2)`.
pub fn builtin(spec: &str) -> Result<Algebra, AlgebraError> {
    let spec = spec.trim();
    let (name, param) = match spec.split_once('(') {
        Some((name, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| AlgebraError::UnknownBuiltin(spec.to_string()))?;
            let m: usize = inner.trim().parse().map_err(|_| AlgebraError::InvalidParameter {
                name: name.trim().to_string(),
                detail: format!("`{}` is not a non-negative integer", inner.trim()),
            })?;
            (name.trim(), Some(m))
        }
        None => (spec, None),
    };
    let need = |p: Option<usize>| {
        p.ok_or_else(|| AlgebraError::InvalidParameter {
            name: name.to_string(),
            detail: "missing parameter".to_string(),
        })
    };
    match name {
        "dual_numbers" => Ok(dual_numbers()),
        "product_QQ" | "product_qq" => Ok(product_qq()),
        "truncated_poly" => truncated_poly(need(param)?),
        "matrix" => matrix(need(param)?),
        "group_algebra_cyclic" => group_algebra_cyclic(need(param)?),
        _ => Err(AlgebraError::UnknownBuiltin(spec.to_string())),
    }
}

/// The catalog used by the verification suites.
pub fn standard_catalog() -> Vec<Algebra> {
    vec![
        dual_numbers(),
        product_qq(),
        truncated_poly(3).expect("valid"),
        matrix(2).expect("valid"),
        group_algebra_cyclic(3).expect("valid"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_laws_hold() {
        for a in standard_catalog() {
            a.verify_laws().unwrap_or_else(|e| panic!("{}: {e}", a.name()));
        }
        for m in 1..=4 {
            truncated_poly(m).unwrap().verify_laws().unwrap();
            group_algebra_cyclic(m).unwrap().verify_laws().unwrap();
        }
        matrix(3).unwrap().verify_laws().unwrap();
    }

    #[test]
    fn dual_numbers_shape() {
        let a = builtin("dual_numbers").unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.labels(), &["1", "eps"]);
    }

    #[test]
    fn matrix_units_and_unit() {
        let a = builtin("matrix(2)").unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.labels(), &["1", "E12", "E21", "E22"]);
        assert_eq!(a.raw_labels(), &["E11", "E12", "E21", "E22"]);
        // E12 E21 = E11 = 1 - E22
        let e12 = a.raw_basis_element(1);
        let e21 = a.raw_basis_element(2);
        let e11 = a.raw_basis_element(0);
        assert_eq!(a.mul(&e12, &e21).unwrap(), e11);
        assert_eq!(
            e11.coords(),
            &[Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::from_int(-1)]
        );
    }

    #[test]
    fn truncated_poly_relation() {
        let a = builtin("truncated_poly(3)").unwrap();
        assert_eq!(a.dim(), 3);
        let x = a.basis_element(1);
        let x2 = a.basis_element(2);
        assert!(a.mul(&x, &x2).unwrap().is_zero());
        assert_eq!(a.mul(&x, &x).unwrap(), x2);
    }

    #[test]
    fn idempotent_in_product() {
        let a = product_qq();
        let p = a.basis_element(1);
        assert_eq!(a.mul(&p, &p).unwrap(), p);
    }

    #[test]
    fn builtin_errors() {
        assert!(matches!(builtin("octonions"), Err(AlgebraError::UnknownBuiltin(_))));
        assert!(matches!(
            builtin("matrix(0)"),
            Err(AlgebraError::InvalidParameter { .. })
        ));
        assert!(matches!(builtin("matrix"), Err(AlgebraError::InvalidParameter { .. })));
        assert!(matches!(
            builtin("matrix(x)"),
            Err(AlgebraError::InvalidParameter { .. })
        ));
    }
}
