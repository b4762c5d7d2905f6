//! Loading a problem file and evaluating expressions against it, the same
//! path `ncdiff compute` takes.

use ncdiff::cli::{evaluate, load, parse_problem};

const FILE: &str = "
[algebra]
builtin = product_QQ

[homs]
K = d(p) -> p d(p)

[projections]
P = K
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let problem = load(&parse_problem(FILE)?)?;
    for e in &problem.entries {
        println!("{} {} {}", e.verdict, e.id, e.detail);
    }
    let omega = problem.omega.as_ref().expect("valid algebra");
    for expr in ["mul(d(p), p)", "fnbracket(P, P)", "curvature(P)", "j(K)(d(p) d(p))"] {
        println!("\n> {expr}");
        let lines = evaluate(omega, &problem.names, expr).map_err(|e| e.to_string())?;
        for (k, v) in lines {
            println!("{k}: {v}");
        }
    }
    Ok(())
}
