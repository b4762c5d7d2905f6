//! End-to-end tests of the `ncdiff` binary.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;

use ncdiff::algebra::product_qq;
use ncdiff::deriv::{fn_bracket, FormHom};
use ncdiff::forms::Omega;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ncdiff(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ncdiff"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn problem(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("problems")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn catalog_files_validate() {
    for f in [
        "dual_numbers.alg",
        "product_qq.alg",
        "truncated_poly3.alg",
        "matrix2.alg",
        "cyclic3.alg",
    ] {
        let r = ncdiff(&["validate", &problem(f)]);
        assert_eq!(r.code, 0, "{f}: {}{}", r.stdout, r.stderr);
        assert!(r.stdout.contains("[PASS]       algebra.associativity"));
    }
}

/// First basis triple, in lexicographic order, where the perturbed dual
/// number table fails associativity.
fn brute_force_first_failure() -> (usize, usize, usize) {
    // e0 = 1, e1 = eps; eps*1 = 2 eps, everything else as in the dual numbers
    let t = |i: usize, j: usize| -> [i64; 2] {
        match (i, j) {
            (0, 0) => [1, 0],
            (0, 1) => [0, 1],
            (1, 0) => [0, 2],
            _ => [0, 0],
        }
    };
    let mul = |x: [i64; 2], y: [i64; 2]| {
        let mut out = [0; 2];
        for i in 0..2 {
            for j in 0..2 {
                let p = t(i, j);
                for m in 0..2 {
                    out[m] += x[i] * y[j] * p[m];
                }
            }
        }
        out
    };
    let e = |i: usize| if i == 0 { [1, 0] } else { [0, 1] };
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                if mul(mul(e(i), e(j)), e(k)) != mul(e(i), mul(e(j), e(k))) {
                    return (i, j, k);
                }
            }
        }
    }
    panic!("table is associative");
}

#[test]
fn broken_associativity_names_the_triple() {
    let r = ncdiff(&["validate", &problem("broken_associativity.alg")]);
    assert_eq!(r.code, 1);
    let (i, j, k) = brute_force_first_failure();
    assert!(r.stdout.contains("[FAIL]       algebra.associativity"), "{}", r.stdout);
    assert!(r.stdout.contains(&format!("({i}, {j}, {k})")), "{}", r.stdout);
}

#[test]
fn empty_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "empty.alg", "");
    let r = ncdiff(&["validate", &f]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains(":1:1: empty problem file"), "{}", r.stderr);
}

#[test]
fn parse_errors_carry_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            "[algebra]\nbuiltin = dual_numbers\n[forms]\nw = eps d(q)\n",
            ":4:11: unknown name `q`",
        ),
        (
            "[algebra]\nbuiltin = dual_numbers\n[forms]\nw = eps +\n",
            ":4:10: expected an expression",
        ),
        (
            "[algebra]\nbasis = 1 e\nunit = 1 0\nmul 1 1 = 1 0\n",
            "missing product `mul 1 e`",
        ),
        (
            "[algebra]\nbuiltin = dual_numbers\n[forms]\nw = eps + d(eps)\n",
            ":4:9: degree mismatch",
        ),
        ("[algebra]\nbuiltin = dual_numbers\n[shapes]\n", ":3:2: unknown section"),
        ("x = 1\n", ":1:1: content before the first section header"),
    ];
    for (i, (text, want)) in cases.iter().enumerate() {
        let f = write_temp(&dir, &format!("case{i}.alg"), text);
        let r = ncdiff(&["validate", &f]);
        assert_eq!(r.code, 2, "case {i}: {}", r.stdout);
        assert!(r.stderr.contains(want), "case {i}: {}", r.stderr);
    }
}

#[test]
fn non_equivariant_hom_is_a_failed_check() {
    // dp -> p breaks K(d(pp)) = p K(dp) + K(dp) p
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(
        &dir,
        "k.alg",
        "[algebra]\nbuiltin = product_QQ\n[homs]\nK = d(p) -> p\n",
    );
    let r = ncdiff(&["validate", &f]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("[FAIL]       hom.K"), "{}", r.stdout);
}

#[test]
fn compute_examples() {
    let dual = problem("dual_numbers.alg");
    let r = ncdiff(&["compute", &dual, "d(eps)"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("value: d(eps)\n"));
    assert!(r.stdout.contains("coords: 1 0\n"));

    let r = ncdiff(&["compute", &dual, "mul(d(eps), eps)"]);
    assert!(r.stdout.contains("value: -1 * eps d(eps)\n"), "{}", r.stdout);

    let r = ncdiff(&["compute", &dual, "d(eps) eps + eps d(eps)"]);
    assert!(r.stdout.contains("value: 0\n"), "{}", r.stdout);

    let r = ncdiff(&["compute", &dual, "lie(K)(d(eps))"]);
    assert!(r.stdout.contains("value: -1 * d(eps) d(eps)\n"), "{}", r.stdout);
}

#[test]
fn compute_fn_bracket_matches_library() {
    let r = ncdiff(&[
        "compute",
        &problem("product_qq.alg"),
        "fnbracket(P, P)",
        "--format",
        "machine",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let omega = Omega::new(Arc::new(product_qq()));
    let p = FormHom::new(&omega, 1, vec![omega.basis_form(1, 1)]).unwrap();
    let want = fn_bracket(&omega, &p, &p).unwrap();
    let coords: Vec<String> = want.coords().iter().map(|c| c.to_string()).collect();
    assert!(
        r.stdout.contains(&format!("COORDS {}\n", coords.join(" "))),
        "{}",
        r.stdout
    );
    assert!(r.stdout.contains("RESULT hom of degree 2\n"));
}

#[test]
fn compute_errors() {
    let dual = problem("dual_numbers.alg");
    let r = ncdiff(&["compute", &dual, "mul(d(eps), zz)"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("expression:13: unknown name `zz`"), "{}", r.stderr);
    let r = ncdiff(&["compute", &dual, "eps + d(eps)"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("degree mismatch"));
}

#[test]
fn check_is_deterministic_across_runs_and_workers() {
    let f = problem("cyclic3.alg");
    let a = ncdiff(&["check", &f, "all", "--seed", "5"]);
    let b = ncdiff(&["check", &f, "all", "--seed", "5", "--workers", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.code, b.code);
    let c = ncdiff(&["check", &f, "all", "--seed", "6"]);
    assert!(c.stdout.contains("seed: 6"));
}

#[test]
fn dual_numbers_check_all_passes() {
    let r = ncdiff(&["check", &problem("dual_numbers.alg"), "all"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(!r.stdout.contains("[FAIL]"));
}

#[test]
fn geometry_without_projections_is_infeasible() {
    let r = ncdiff(&[
        "check",
        &problem("truncated_poly3.alg"),
        "geometry",
        "--format",
        "machine",
    ]);
    assert_eq!(r.code, 0);
    for line in r.stdout.lines().filter(|l| l.starts_with("CHECK geometry.projections")) {
        assert!(line.contains(" INFEASIBLE no nontrivial projection"), "{line}");
    }
    assert!(r.stdout.contains("CHECK geometry.integrability PASS"));
}

#[test]
fn machine_format_is_a_line_protocol() {
    let r = ncdiff(&["check", &problem("product_qq.alg"), "dga", "--format", "machine"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert!(lines[0].starts_with("META version ncdiff "));
    assert!(lines.iter().any(|l| l.starts_with("META input sha256:")));
    assert!(lines.contains(&"META seed 0"));
    assert!(lines.last().unwrap().starts_with("SUMMARY pass="));
    for l in &lines {
        assert!(
            l.starts_with("META ") || l.starts_with("CHECK ") || l.starts_with("SUMMARY "),
            "{l}"
        );
    }
    assert!(lines.iter().any(|l| l.starts_with("CHECK dga.d_squared PASS")));
}

#[test]
fn matrix_dga_suite_passes() {
    let start = std::time::Instant::now();
    let r = ncdiff(&["check", &problem("matrix2.alg"), "dga"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn usage_errors() {
    let r = ncdiff(&["check", &problem("dual_numbers.alg"), "everything"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("unknown suite"));
    let r = ncdiff(&["validate", "/nonexistent/file.alg"]);
    assert_eq!(r.code, 2);
}
