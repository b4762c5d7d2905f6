//! Curvature and cocurvature of projections, the Bianchi identities, and how
//! flatness compares with involutivity of the two distributions.

use std::sync::Arc;

use ncdiff::algebra::group_algebra_cyclic;
use ncdiff::forms::Omega;
use ncdiff::geometry::{bianchi, corpus, curvature, flatness_equivalence};

fn main() -> ncdiff::Result<()> {
    let omega = Omega::new(Arc::new(group_algebra_cyclic(3).expect("m >= 1")));
    let ds = corpus::enumerate_distributions(&omega)?.expect("small algebra");
    let ps = corpus::projection_corpus(&omega, &ds)?;
    println!("{} projections of Omega1(Q[Z/3])", ps.len());
    for p in &ps {
        let c = curvature(&omega, p)?;
        let b = bianchi(&omega, p, &c)?;
        let f = flatness_equivalence(&omega, p, &c)?;
        println!(
            "rank {}: R = 0 {:<5}  Rbar = 0 {:<5}  im P inv {:<5}  ker P inv {:<5}  bianchi {}/{}",
            p.image(&omega)?.dim(),
            f.curvature_zero,
            f.cocurvature_zero,
            f.vertical_involutive,
            f.horizontal_involutive,
            b.first_holds(),
            b.second_holds()
        );
    }
    Ok(())
}
