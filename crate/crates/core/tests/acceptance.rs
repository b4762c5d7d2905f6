//! Acceptance criteria, one test per criterion. Each test writes a single
//! `criterion N ... PASS|FAIL` line to stderr (bypassing output capture) and
//! fails if the criterion or its time budget is not met.

use std::io::Write;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use ncdiff::algebra::{standard_catalog, truncated_poly};
use ncdiff::checks::jacobi_defect;
use ncdiff::deriv::{
    algebraic_derivation_space, check_universal_derivation, compose_parts, decompose, fn_bracket_parts, hom_space,
    BimoduleTag, FormHom, GradedDerivation,
};
use ncdiff::forms::tensor::to_tensor_rep;
use ncdiff::forms::{Degree, Omega};
use ncdiff::geometry::{
    bianchi, corpus, curvature, flatness_equivalence, globally_integrable, make_distribution, Distribution, Projection,
};
use ncdiff::linalg::{unit_vector, Matrix, Scalar};
use ncdiff::sample::Sampler;

fn catalog() -> Vec<Omega> {
    standard_catalog()
        .into_iter()
        .map(|a| Omega::new(Arc::new(a)))
        .collect()
}

fn name(omega: &Omega) -> String {
    omega.algebra().name().to_string()
}

/// Runs `body`, prints the criterion line and asserts pass and budget.
fn criterion(n: u32, title: &str, budget: Duration, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (ok, detail) = match &outcome {
        Ok(d) => (elapsed <= budget, d.clone()),
        Err(d) => (false, d.clone()),
    };
    let line = format!(
        "criterion {n:>2} {title}: {} ({:.2}s of {}s) {detail}\n",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    std::io::stderr().write_all(line.as_bytes()).ok();
    if let Err(d) = outcome {
        panic!("criterion {n} failed: {d}");
    }
    assert!(
        elapsed <= budget,
        "criterion {n} exceeded its budget: {elapsed:?} > {budget:?}"
    );
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: ncdiff::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

#[test]
fn criterion_01_dimensions() {
    criterion(1, "dimensions", Duration::from_secs(1), || {
        for omega in catalog() {
            let n = omega.algebra().dim();
            for k in 0..=4 {
                let expected = n * (n - 1).pow(k as u32);
                ensure(omega.dim(k) == expected, || format!("{} degree {k}", name(&omega)))?;
            }
            // the canonical basis embeds injectively into A^{⊗(k+1)}
            for k in 0..=2 {
                let rows = omega
                    .basis(k)
                    .map(|f| Ok(to_tensor_rep(&omega, &f)?.coords().to_vec()))
                    .collect::<ncdiff::Result<Vec<_>>>();
                let rank = Matrix::from_rows(e2s(rows)?).map_err(|e| e.to_string())?.rank();
                ensure(rank == omega.dim(k), || {
                    format!("{} tensor rank in degree {k}", name(&omega))
                })?;
            }
        }
        Ok("5 algebras, k <= 4".into())
    });
}

#[test]
fn criterion_02_d_squared() {
    criterion(2, "d o d = 0", Duration::from_secs(10), || {
        let mut count = 0;
        for omega in catalog() {
            for k in 0..=4 {
                for f in omega.basis(k) {
                    count += 1;
                    let dd = e2s(omega.differential(&e2s(omega.differential(&f))?))?;
                    ensure(dd.is_zero(), || format!("{}: d(d({}))", name(&omega), omega.format(&f)))?;
                }
            }
        }
        Ok(format!("{count} basis forms"))
    });
}

#[test]
fn criterion_03_graded_leibniz() {
    criterion(3, "graded Leibniz", Duration::from_secs(30), || {
        for omega in catalog() {
            let mut s = Sampler::new(3);
            for _ in 0..100 {
                let (p, q) = (s.index(4) as Degree, s.index(4) as Degree);
                let (a, b) = (s.form(&omega, p), s.form(&omega, q));
                let lhs = e2s(omega.differential(&e2s(omega.mul(&a, &b))?))?;
                let mut rhs = e2s(omega.mul(&e2s(omega.differential(&a))?, &b))?;
                e2s(rhs.add_scaled(
                    &Scalar::sign(p as i64),
                    &e2s(omega.mul(&a, &e2s(omega.differential(&b))?))?,
                ))?;
                ensure(lhs == rhs, || format!("{} degrees ({p}, {q})", name(&omega)))?;
            }
        }
        Ok("100 pairs per algebra, degree <= 3".into())
    });
}

#[test]
fn criterion_04_tensor_oracle() {
    criterion(4, "product vs tensor model", Duration::from_secs(60), || {
        for omega in catalog() {
            let alg = omega.algebra();
            let mut s = Sampler::new(4);
            for _ in 0..100 {
                let (p, q) = (s.index(3) as Degree, s.index(3) as Degree);
                let (a, b) = (s.form(&omega, p), s.form(&omega, q));
                let direct = e2s(to_tensor_rep(&omega, &e2s(omega.mul(&a, &b))?))?;
                let model = e2s(to_tensor_rep(&omega, &a))?.mul(alg, &e2s(to_tensor_rep(&omega, &b))?);
                ensure(direct == model, || format!("{} degrees ({p}, {q})", name(&omega)))?;
            }
        }
        Ok("100 pairs per algebra, degree <= 2".into())
    });
}

#[test]
fn criterion_05_universal_derivation() {
    criterion(5, "d* is bijective", Duration::from_secs(30), || {
        for omega in catalog() {
            for tag in BimoduleTag::ALL {
                let r = e2s(check_universal_derivation(&omega, tag))?;
                ensure(r.is_isomorphism(), || format!("{} target {tag}: {r:?}", name(&omega)))?;
            }
        }
        Ok("targets A, Omega1, Omega2 on 5 algebras".into())
    });
}

fn hom_spaces(omega: &Omega, top: Degree) -> ncdiff::Result<Vec<Vec<FormHom>>> {
    (-1..=top).map(|k| hom_space(omega, k)).collect()
}

#[test]
fn criterion_06_graded_lie_algebra() {
    criterion(
        6,
        "graded anticommutativity and Jacobi",
        Duration::from_secs(120),
        || {
            for omega in catalog() {
                let n = omega.algebra().dim();
                if n > 4 {
                    continue;
                }
                let triples = if n <= 3 { 50 } else { 20 };
                let homs = e2s(hom_spaces(&omega, 3))?;
                let h = |k: Degree| &homs[(k + 1) as usize];
                let mut s = Sampler::new(6);
                for _ in 0..triples {
                    let ks: Vec<Degree> = (0..3).map(|_| s.index(4) as Degree - 1).collect();
                    let ds: Vec<GradedDerivation> = ks
                        .iter()
                        .map(|&k| s.derivation(&omega, k, h(k), h(k + 1)))
                        .collect::<ncdiff::Result<_>>()
                        .map_err(|e| e.to_string())?;
                    let ab = e2s(ds[0].commutator(&omega, &ds[1]))?;
                    let ba = e2s(ds[1].commutator(&omega, &ds[0]))?;
                    let sign = Scalar::sign(ks[0] as i64 * ks[1] as i64);
                    ensure(e2s(ab.add(&ba.scaled(&sign)))?.is_zero(), || {
                        format!("{} anticommutativity, degrees {ks:?}", name(&omega))
                    })?;
                    let j = e2s(jacobi_defect(&omega, &ds[0], &ds[1], &ds[2]))?;
                    ensure(j.is_zero(), || format!("{} Jacobi, degrees {ks:?}", name(&omega)))?;
                }
            }
            Ok("50 triples (dim <= 3), 20 for matrix(2), degrees -1..2".into())
        },
    );
}

#[test]
fn criterion_07_insertion() {
    criterion(
        7,
        "j_K restricts to K; algebraic = insertion",
        Duration::from_secs(30),
        || {
            let mut homs = 0;
            let mut algebraic = 0;
            for omega in catalog() {
                for k in 0..=3 {
                    for h in e2s(hom_space(&omega, k))? {
                        homs += 1;
                        let j = e2s(GradedDerivation::insertion(&omega, &h))?;
                        ensure(j.is_algebraic() && e2s(j.restriction(&omega))? == h, || {
                            format!("{}: {}", name(&omega), h.format(&omega))
                        })?;
                    }
                }
                for k in -1..=2 {
                    for d in e2s(algebraic_derivation_space(&omega, k))? {
                        algebraic += 1;
                        let j = e2s(GradedDerivation::insertion(&omega, &e2s(d.restriction(&omega))?))?;
                        ensure(j == d, || {
                            format!("{} algebraic derivation of degree {k}", name(&omega))
                        })?;
                    }
                }
            }
            Ok(format!("{homs} hom basis elements, {algebraic} algebraic derivations"))
        },
    );
}

/// Shared by criteria 8 and 9: 50 random `(K, L)` per algebra with `k <= 2`.
fn decomposition_pairs(
    mut visit: impl FnMut(&Omega, &FormHom, &FormHom) -> Result<(), String>,
) -> Result<usize, String> {
    let mut count = 0;
    for omega in catalog() {
        let homs = e2s(hom_spaces(&omega, 3))?;
        let mut s = Sampler::new(8);
        for _ in 0..50 {
            let k = s.index(3) as Degree;
            let kk = s.hom(&omega, k, &homs[(k + 1) as usize]);
            let ll = s.hom(&omega, k + 1, &homs[(k + 2) as usize]);
            visit(&omega, &kk, &ll)?;
            count += 1;
        }
    }
    Ok(count)
}

#[test]
fn criterion_08_decomposition() {
    criterion(
        8,
        "decompose(L_K + j_L) = (K, L), [L_K, d] = 0",
        Duration::from_secs(60),
        || {
            let count = decomposition_pairs(|omega, k, l| {
                let parts = e2s(decompose(omega, &e2s(compose_parts(omega, k, l))?))?;
                ensure(&parts.lie_part == k && &parts.algebraic_part == l, || {
                    format!("{} K = {}", name(omega), k.format(omega))
                })?;
                let lie = e2s(GradedDerivation::lie_derivative(omega, k))?;
                let c = e2s(lie.commutator(omega, &GradedDerivation::differential(omega)))?;
                ensure(c.is_zero(), || {
                    format!("{} [L_K, d] for K = {}", name(omega), k.format(omega))
                })
            })?;
            Ok(format!("{count} pairs"))
        },
    );
}

#[test]
fn criterion_09_fn_bracket_well_defined() {
    criterion(
        9,
        "FN bracket has no algebraic residue",
        Duration::from_secs(60),
        || {
            let count = decomposition_pairs(|omega, k, l| {
                for (a, b) in [(k, l), (k, k), (l, k)] {
                    let parts = e2s(fn_bracket_parts(omega, a, b))?;
                    ensure(parts.algebraic_part.is_zero(), || {
                        format!(
                            "{}: residue for {} and {}",
                            name(omega),
                            a.format(omega),
                            b.format(omega)
                        )
                    })?;
                }
                Ok(())
            })?;
            Ok(format!("{} bracket pairs", 3 * count))
        },
    );
}

/// The projection corpus: enumerated for small `Ω₁`, random for matrix(2).
fn projection_corpus() -> Result<Vec<(Omega, Vec<Projection>)>, String> {
    let mut out = Vec::new();
    for omega in catalog() {
        let ps = match e2s(corpus::enumerate_distributions(&omega))? {
            Some(ds) => e2s(corpus::projection_corpus(&omega, &ds))?,
            None => e2s(corpus::random_projections(&omega, &mut Sampler::new(0), 6, 500))?,
        };
        out.push((omega, ps));
    }
    Ok(out)
}

#[test]
fn criterion_10_bianchi() {
    criterion(10, "Bianchi identities", Duration::from_secs(120), || {
        let mut summary = Vec::new();
        for (omega, ps) in projection_corpus()? {
            let nontrivial = ps.iter().filter(|p| !p.is_trivial(&omega)).count();
            if omega.algebra().name() == "matrix(2)" {
                ensure(nontrivial >= 5, || {
                    format!("only {nontrivial} nontrivial matrix(2) projections")
                })?;
            }
            for p in &ps {
                let c = e2s(curvature(&omega, p))?;
                let b = e2s(bianchi(&omega, p, &c))?;
                ensure(b.first_holds(), || {
                    format!(
                        "{} first identity, P = {}: {}",
                        name(&omega),
                        p.hom().format(&omega),
                        b.first.format(&omega)
                    )
                })?;
                ensure(b.second_holds(), || {
                    format!(
                        "{} second identity, P = {}: {}",
                        name(&omega),
                        p.hom().format(&omega),
                        b.second.format(&omega)
                    )
                })?;
            }
            summary.push(format!("{} {}", name(&omega), ps.len()));
        }
        Ok(format!("projections: {}", summary.join(", ")))
    });
}

#[test]
fn criterion_11_flatness_involutivity() {
    criterion(11, "flatness <=> involutivity", Duration::from_secs(60), || {
        let mut failures = Vec::new();
        let mut exchanged_failures = 0;
        let mut total = 0;
        for (omega, ps) in projection_corpus()? {
            for p in &ps {
                total += 1;
                let c = e2s(curvature(&omega, p))?;
                let f = e2s(flatness_equivalence(&omega, p, &c))?;
                if !f.agrees_exchanged() {
                    exchanged_failures += 1;
                }
                if !f.agrees() {
                    failures.push(format!(
                        "{} P = [{}]: R = 0 {}, ker P involutive {}, Rbar = 0 {}, im P involutive {}",
                        name(&omega),
                        p.hom().format(&omega),
                        f.curvature_zero,
                        f.horizontal_involutive,
                        f.cocurvature_zero,
                        f.vertical_involutive
                    ));
                }
            }
        }
        let diagnostic = format!(
            "exchanged pairing (R = 0 <=> im P involutive, Rbar = 0 <=> ker P involutive) fails on {exchanged_failures} of {total}"
        );
        if failures.is_empty() {
            Ok(format!("{total} projections; {diagnostic}"))
        } else {
            Err(format!(
                "{} of {total} projections disagree; {diagnostic}; first: {}",
                failures.len(),
                failures[0]
            ))
        }
    });
}

#[test]
fn criterion_12_global_integrability() {
    criterion(12, "global integrability", Duration::from_secs(10), || {
        for omega in catalog() {
            let n = omega.algebra().dim();
            let zero = e2s(globally_integrable(&omega, &Distribution::zero(&omega)))?;
            ensure(zero.integrable && zero.witness.dim() == 1, || {
                format!("{} D = 0", name(&omega))
            })?;
            ensure(
                zero.witness
                    .space()
                    .contains_vector(&unit_vector(n, 0))
                    .unwrap_or(false),
                || format!("{} D = 0 witness is not K.1", name(&omega)),
            )?;
            let full = e2s(globally_integrable(&omega, &Distribution::full(&omega)))?;
            ensure(full.integrable && full.witness.dim() == n, || {
                format!("{} D = Omega1", name(&omega))
            })?;
        }
        let omega = Omega::new(Arc::new(truncated_poly(3).expect("m >= 1")));
        let d = e2s(make_distribution(
            &omega,
            &[omega.d_element(&omega.algebra().basis_element(2))],
        ))?;
        let r = e2s(globally_integrable(&omega, &d))?;
        let has = |i| r.witness.space().contains_vector(&unit_vector(3, i)).unwrap_or(false);
        ensure(r.integrable && has(0) && has(2), || {
            "Q[x]/x^3 with D = <d(x^2)>".to_string()
        })?;
        Ok(format!(
            "Q[x]/x^3, D = <d(x^2)>: B_max of dimension {}",
            r.witness.dim()
        ))
    });
}

#[test]
fn criterion_13_cli_determinism() {
    criterion(13, "CLI determinism", Duration::from_secs(60), || {
        let file = concat!(env!("CARGO_MANIFEST_DIR"), "/problems/dual_numbers.alg");
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_ncdiff"))
                .args(["check", file, "all", "--seed", "0"])
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.code() == Some(0), || {
            format!("exit code {:?}", a.status.code())
        })?;
        ensure(b.status.code() == Some(0), || {
            format!("exit code {:?}", b.status.code())
        })?;
        ensure(a.stdout == b.stdout, || "reports differ".to_string())?;
        Ok(format!("{} identical bytes, exit 0", a.stdout.len()))
    });
}
