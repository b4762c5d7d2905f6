//! Verification suites run by `ncdiff check`.
//!
//! Every check is an exact equality test. Randomized checks draw from a
//! sampler seeded by the run seed and the check id, so results do not depend
//! on scheduling.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::deriv::{
    algebraic_bracket, algebraic_derivation_space, check_universal_derivation, compose_parts, decompose, fn_bracket,
    fn_bracket_parts, hom_space, BimoduleTag, FormHom, GradedDerivation,
};
use crate::error::Result;
use crate::forms::tensor::to_tensor_rep;
use crate::forms::{Degree, Omega};
use crate::geometry::{
    bianchi, corpus, curvature, find_projection, flatness_equivalence, globally_integrable, Distribution, Projection,
};
use crate::linalg::Scalar;
use crate::sample::Sampler;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    Infeasible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Infeasible => "INFEASIBLE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub id: String,
    pub inputs: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Dga,
    Derivations,
    Brackets,
    Geometry,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dga" => Ok(Suite::Dga),
            "derivations" => Ok(Suite::Derivations),
            "brackets" => Ok(Suite::Brackets),
            "geometry" => Ok(Suite::Geometry),
            "all" => Ok(Suite::All),
            _ => Err(format!(
                "unknown suite `{s}` (expected dga, derivations, brackets, geometry or all)"
            )),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub seed: u64,
    /// Checks on basis forms go up to this degree.
    pub degree: Degree,
    /// Random cases per randomized check.
    pub samples: usize,
    /// Extra projections to include in the geometry suite.
    pub projections: Vec<Projection>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            degree: 4,
            samples: 10,
            projections: Vec::new(),
        }
    }
}

enum Outcome {
    Pass(String),
    Fail(String),
    Infeasible(String),
}

type Job<'a> = (
    &'static str,
    Box<dyn Fn(&mut Sampler) -> Result<Vec<(String, Outcome)>> + Send + Sync + 'a>,
);

fn single(o: Outcome) -> Result<Vec<(String, Outcome)>> {
    Ok(vec![(String::new(), o)])
}

fn sampler_for(seed: u64, id: &str) -> Sampler {
    let h = Sha256::digest(format!("{seed}:{id}").as_bytes());
    Sampler::new(u64::from_le_bytes(h[..8].try_into().expect("8 bytes")))
}

/// Runs a suite and returns its entries sorted by id.
pub fn run_suite(omega: &Omega, suite: Suite, cfg: &CheckConfig) -> Vec<CheckEntry> {
    let mut jobs: Vec<Job> = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Dga {
        dga_jobs(omega, cfg, &mut jobs);
    }
    if all || suite == Suite::Derivations {
        derivation_jobs(omega, cfg, &mut jobs);
    }
    if all || suite == Suite::Brackets {
        bracket_jobs(omega, cfg, &mut jobs);
    }
    if all || suite == Suite::Geometry {
        geometry_jobs(omega, cfg, &mut jobs);
    }
    let inputs = format!(
        "algebra={} seed={} degree={}",
        omega.algebra().name(),
        cfg.seed,
        cfg.degree
    );
    let mut entries: Vec<CheckEntry> = jobs
        .par_iter()
        .flat_map_iter(|(id, job)| {
            let mut sampler = sampler_for(cfg.seed, id);
            let results =
                job(&mut sampler).unwrap_or_else(|e| vec![(String::new(), Outcome::Fail(format!("error: {e}")))]);
            let inputs = inputs.clone();
            results.into_iter().map(move |(suffix, o)| {
                let (verdict, detail) = match o {
                    Outcome::Pass(d) => (Verdict::Pass, d),
                    Outcome::Fail(d) => (Verdict::Fail, d),
                    Outcome::Infeasible(d) => (Verdict::Infeasible, d),
                };
                CheckEntry {
                    id: if suffix.is_empty() {
                        id.to_string()
                    } else {
                        format!("{id}.{suffix}")
                    },
                    inputs: inputs.clone(),
                    verdict,
                    detail,
                }
            })
        })
        .collect();
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    entries
}

fn count_outcome(checked: usize, failures: Vec<String>, what: &str) -> Outcome {
    if failures.is_empty() {
        Outcome::Pass(format!("{checked} {what}"))
    } else {
        Outcome::Fail(format!(
            "{} of {checked} {what} failed; first: {}",
            failures.len(),
            failures[0]
        ))
    }
}

fn dga_jobs<'a>(omega: &'a Omega, cfg: &'a CheckConfig, jobs: &mut Vec<Job<'a>>) {
    let top = cfg.degree;
    jobs.push((
        "dga.dimensions",
        Box::new(move |_| {
            let n = omega.algebra().dim();
            let bad: Vec<String> = (0..=top)
                .filter(|&k| omega.dim(k) != n * (n - 1).pow(k as u32))
                .map(|k| format!("degree {k}"))
                .collect();
            single(count_outcome(top as usize + 1, bad, "degrees"))
        }),
    ));
    jobs.push((
        "dga.d_squared",
        Box::new(move |_| {
            let mut bad = Vec::new();
            let mut count = 0;
            for k in 0..=top.min(4) {
                for f in omega.basis(k) {
                    count += 1;
                    if !omega.differential(&omega.differential(&f)?)?.is_zero() {
                        bad.push(format!("d(d({}))", omega.format(&f)));
                    }
                }
            }
            single(count_outcome(count, bad, "basis forms"))
        }),
    ));
    jobs.push((
        "dga.leibniz",
        Box::new(move |s| {
            let mut bad = Vec::new();
            let maxd = top.clamp(0, 3);
            for _ in 0..cfg.samples {
                let p = s.index(maxd as usize + 1) as Degree;
                let q = s.index(maxd as usize + 1) as Degree;
                let (a, b) = (s.form(omega, p), s.form(omega, q));
                let lhs = omega.differential(&omega.mul(&a, &b)?)?;
                let mut rhs = omega.mul(&omega.differential(&a)?, &b)?;
                rhs.add_scaled(&Scalar::sign(p as i64), &omega.mul(&a, &omega.differential(&b)?)?)?;
                if lhs != rhs {
                    bad.push(format!("degrees ({p}, {q})"));
                }
            }
            single(count_outcome(cfg.samples, bad, "random pairs"))
        }),
    ));
    jobs.push((
        "dga.associativity",
        Box::new(move |s| {
            let mut bad = Vec::new();
            for _ in 0..cfg.samples {
                let ks: Vec<Degree> = (0..3).map(|_| s.index(2) as Degree).collect();
                let f: Vec<_> = ks.iter().map(|&k| s.form(omega, k)).collect();
                let l = omega.mul(&omega.mul(&f[0], &f[1])?, &f[2])?;
                let r = omega.mul(&f[0], &omega.mul(&f[1], &f[2])?)?;
                if l != r {
                    bad.push(format!("degrees {ks:?}"));
                }
            }
            single(count_outcome(cfg.samples, bad, "random triples"))
        }),
    ));
    jobs.push((
        "dga.unit",
        Box::new(move |_| {
            let one = omega.element_form(&omega.algebra().unit());
            let mut bad = Vec::new();
            let mut count = 0;
            for k in 0..=top.clamp(0, 2) {
                for f in omega.basis(k) {
                    count += 1;
                    if omega.mul(&one, &f)? != f || omega.mul(&f, &one)? != f {
                        bad.push(omega.format(&f));
                    }
                }
            }
            single(count_outcome(count, bad, "basis forms"))
        }),
    ));
    jobs.push((
        "dga.tensor_oracle",
        Box::new(move |s| {
            let alg = omega.algebra();
            let mut bad = Vec::new();
            for _ in 0..cfg.samples {
                let (p, q) = (s.index(3) as Degree, s.index(3) as Degree);
                let (a, b) = (s.form(omega, p), s.form(omega, q));
                let via_forms = to_tensor_rep(omega, &omega.mul(&a, &b)?)?;
                let via_tensors = to_tensor_rep(omega, &a)?.mul(alg, &to_tensor_rep(omega, &b)?);
                if via_forms != via_tensors {
                    bad.push(format!("degrees ({p}, {q})"));
                }
            }
            single(count_outcome(cfg.samples, bad, "random pairs"))
        }),
    ));
}

fn derivation_jobs<'a>(omega: &'a Omega, cfg: &'a CheckConfig, jobs: &mut Vec<Job<'a>>) {
    jobs.push((
        "derivations.universal",
        Box::new(move |_| {
            BimoduleTag::ALL
                .iter()
                .map(|&t| {
                    let r = check_universal_derivation(omega, t)?;
                    let msg = format!("dim Der = {}, dim Hom = {}, rank = {}", r.der_dim, r.hom_dim, r.rank);
                    Ok((
                        t.to_string(),
                        if r.is_isomorphism() {
                            Outcome::Pass(msg)
                        } else {
                            Outcome::Fail(msg)
                        },
                    ))
                })
                .collect()
        }),
    ));
    jobs.push((
        "derivations.insertion_restricts",
        Box::new(move |_| {
            let mut count = 0;
            let mut bad = Vec::new();
            for k in 0..=cfg.degree.clamp(0, 3) {
                for h in hom_space(omega, k)? {
                    count += 1;
                    let j = GradedDerivation::insertion(omega, &h)?;
                    if j.restriction(omega)? != h || !j.is_algebraic() {
                        bad.push(h.format(omega));
                    }
                }
            }
            single(count_outcome(count, bad, "hom basis elements"))
        }),
    ));
    jobs.push((
        "derivations.algebraic_are_insertions",
        Box::new(move |_| {
            let mut count = 0;
            let mut bad = Vec::new();
            for k in -1..=cfg.degree.clamp(0, 2) - 1 {
                for d in algebraic_derivation_space(omega, k)? {
                    count += 1;
                    let j = GradedDerivation::insertion(omega, &d.restriction(omega)?)?;
                    if j != d {
                        bad.push(format!("degree {k}"));
                    }
                }
            }
            single(count_outcome(count, bad, "algebraic derivations"))
        }),
    ));
    jobs.push((
        "derivations.decompose_round_trip",
        Box::new(move |s| {
            let mut bad = Vec::new();
            for _ in 0..cfg.samples {
                let k = s.index(3) as Degree;
                let (hk, hk1) = (hom_space(omega, k)?, hom_space(omega, k + 1)?);
                let kk = s.hom(omega, k, &hk);
                let ll = s.hom(omega, k + 1, &hk1);
                let parts = decompose(omega, &compose_parts(omega, &kk, &ll)?)?;
                if parts.lie_part != kk || parts.algebraic_part != ll {
                    bad.push(format!("degree {k}"));
                }
            }
            single(count_outcome(cfg.samples, bad, "random pairs"))
        }),
    ));
    jobs.push((
        "derivations.lie_commutes_with_d",
        Box::new(move |s| {
            let d = GradedDerivation::differential(omega);
            let mut bad = Vec::new();
            for _ in 0..cfg.samples {
                let k = s.index(3) as Degree;
                let kk = s.hom(omega, k, &hom_space(omega, k)?);
                if !GradedDerivation::lie_derivative(omega, &kk)?
                    .commutator(omega, &d)?
                    .is_zero()
                {
                    bad.push(kk.format(omega));
                }
            }
            single(count_outcome(cfg.samples, bad, "random homs"))
        }),
    ));
    jobs.push((
        "derivations.graded_lie",
        Box::new(move |s| {
            let homs: Vec<Vec<FormHom>> = (-1..=3).map(|k| hom_space(omega, k)).collect::<Result<_>>()?;
            let h = |k: Degree| &homs[(k + 1) as usize];
            let mut anti = Vec::new();
            let mut jac = Vec::new();
            for _ in 0..cfg.samples {
                let ks: Vec<Degree> = (0..3).map(|_| s.index(3) as Degree - 1).collect();
                let ds = ks
                    .iter()
                    .map(|&k| s.derivation(omega, k, h(k), h(k + 1)))
                    .collect::<Result<Vec<_>>>()?;
                let (a, b, c) = (&ds[0], &ds[1], &ds[2]);
                let sign = Scalar::sign(ks[0] as i64 * ks[1] as i64);
                let ab = a.commutator(omega, b)?;
                let ba = b.commutator(omega, a)?;
                if !ab.add(&ba.scaled(&sign))?.is_zero() {
                    anti.push(format!("degrees {ks:?}"));
                }
                if !jacobi_defect(omega, a, b, c)?.is_zero() {
                    jac.push(format!("degrees {ks:?}"));
                }
            }
            Ok(vec![
                (
                    "anticommutativity".into(),
                    count_outcome(cfg.samples, anti, "random pairs"),
                ),
                ("jacobi".into(), count_outcome(cfg.samples, jac, "random triples")),
            ])
        }),
    ));
}

/// `[a,[b,c]] − [[a,b],c] − (−1)^{|a||b|}[b,[a,c]]`
pub fn jacobi_defect(
    omega: &Omega,
    a: &GradedDerivation,
    b: &GradedDerivation,
    c: &GradedDerivation,
) -> Result<GradedDerivation> {
    let lhs = a.commutator(omega, &b.commutator(omega, c)?)?;
    let r1 = a.commutator(omega, b)?.commutator(omega, c)?;
    let r2 = b.commutator(omega, &a.commutator(omega, c)?)?;
    let sign = Scalar::sign(a.degree() as i64 * b.degree() as i64);
    lhs.sub(&r1)?.sub(&r2.scaled(&sign))
}

fn bracket_jobs<'a>(omega: &'a Omega, cfg: &'a CheckConfig, jobs: &mut Vec<Job<'a>>) {
    jobs.push((
        "brackets.fn",
        Box::new(move |s| {
            let homs: Vec<Vec<FormHom>> = (0..=2).map(|k| hom_space(omega, k)).collect::<Result<_>>()?;
            let mut residual = Vec::new();
            let mut anti = Vec::new();
            let mut degree0 = Vec::new();
            let mut jac = Vec::new();
            for _ in 0..cfg.samples {
                let ks: Vec<Degree> = (0..3).map(|_| s.index(3) as Degree).collect();
                let hs: Vec<FormHom> = ks.iter().map(|&k| s.hom(omega, k, &homs[k as usize])).collect();
                let parts = fn_bracket_parts(omega, &hs[0], &hs[1])?;
                if !parts.algebraic_part.is_zero() {
                    residual.push(format!("degrees {ks:?}"));
                    continue;
                }
                let kl = parts.lie_part;
                let lk = fn_bracket(omega, &hs[1], &hs[0])?;
                if !kl
                    .add(&lk.scaled(&Scalar::sign(ks[0] as i64 * ks[1] as i64)))?
                    .is_zero()
                {
                    anti.push(format!("degrees {ks:?}"));
                }
                // L_{[K,L]}(a) = [L_K, L_L](a)
                let c = GradedDerivation::lie_derivative(omega, &hs[0])?
                    .commutator(omega, &GradedDerivation::lie_derivative(omega, &hs[1])?)?;
                if GradedDerivation::lie_derivative(omega, &kl)?.on_elements() != c.on_elements() {
                    degree0.push(format!("degrees {ks:?}"));
                }
                let (a, b, cc) = (&hs[0], &hs[1], &hs[2]);
                let lhs = fn_bracket(omega, a, &fn_bracket(omega, b, cc)?)?;
                let r1 = fn_bracket(omega, &fn_bracket(omega, a, b)?, cc)?;
                let r2 = fn_bracket(omega, b, &fn_bracket(omega, a, cc)?)?;
                let sign = Scalar::sign(ks[0] as i64 * ks[1] as i64);
                if !lhs.sub(&r1)?.sub(&r2.scaled(&sign))?.is_zero() {
                    jac.push(format!("degrees {ks:?}"));
                }
            }
            let n = cfg.samples;
            Ok(vec![
                ("algebraic_residue".into(), count_outcome(n, residual, "random pairs")),
                ("anticommutativity".into(), count_outcome(n, anti, "random pairs")),
                ("degree0_lie".into(), count_outcome(n, degree0, "random pairs")),
                ("jacobi".into(), count_outcome(n, jac, "random triples")),
            ])
        }),
    ));
    jobs.push((
        "brackets.algebraic",
        Box::new(move |s| {
            let homs: Vec<Vec<FormHom>> = (0..=2).map(|k| hom_space(omega, k)).collect::<Result<_>>()?;
            let mut anti = Vec::new();
            let mut jac = Vec::new();
            for _ in 0..cfg.samples {
                let ks: Vec<Degree> = (0..3).map(|_| s.index(3) as Degree).collect();
                let hs: Vec<FormHom> = ks.iter().map(|&k| s.hom(omega, k, &homs[k as usize])).collect();
                let dk: Vec<i64> = ks.iter().map(|&k| k as i64 - 1).collect();
                let kl = algebraic_bracket(omega, &hs[0], &hs[1])?;
                let lk = algebraic_bracket(omega, &hs[1], &hs[0])?;
                if !kl.add(&lk.scaled(&Scalar::sign(dk[0] * dk[1])))?.is_zero() {
                    anti.push(format!("degrees {ks:?}"));
                }
                let (a, b, c) = (&hs[0], &hs[1], &hs[2]);
                let lhs = algebraic_bracket(omega, a, &algebraic_bracket(omega, b, c)?)?;
                let r1 = algebraic_bracket(omega, &algebraic_bracket(omega, a, b)?, c)?;
                let r2 = algebraic_bracket(omega, b, &algebraic_bracket(omega, a, c)?)?;
                if !lhs.sub(&r1)?.sub(&r2.scaled(&Scalar::sign(dk[0] * dk[1])))?.is_zero() {
                    jac.push(format!("degrees {ks:?}"));
                }
            }
            Ok(vec![
                (
                    "anticommutativity".into(),
                    count_outcome(cfg.samples, anti, "random pairs"),
                ),
                ("jacobi".into(), count_outcome(cfg.samples, jac, "random triples")),
            ])
        }),
    ));
}

/// Projections used by the geometry suite: the enumerated corpus when `Ω₁`
/// is small, random splittings otherwise, plus any supplied extras.
pub fn geometry_corpus(omega: &Omega, sampler: &mut Sampler, extra: &[Projection]) -> Result<Vec<Projection>> {
    let mut ps = match corpus::enumerate_distributions(omega)? {
        Some(ds) => corpus::projection_corpus(omega, &ds)?,
        None => {
            let mut ps = vec![
                Projection::new(omega, FormHom::zero(omega, 1))?,
                Projection::new(omega, FormHom::identity(omega))?,
            ];
            ps.extend(corpus::random_projections(omega, sampler, 5, 200)?);
            ps
        }
    };
    for p in extra {
        if !ps.contains(p) {
            ps.push(p.clone());
        }
    }
    Ok(ps)
}

fn geometry_jobs<'a>(omega: &'a Omega, cfg: &'a CheckConfig, jobs: &mut Vec<Job<'a>>) {
    jobs.push((
        "geometry.projections",
        Box::new(move |s| {
            let ps = geometry_corpus(omega, s, &cfg.projections)?;
            let nontrivial = ps.iter().filter(|p| !p.is_trivial(omega)).count();
            let mut split = Vec::new();
            let mut b1 = Vec::new();
            let mut b2 = Vec::new();
            let mut flat_r = Vec::new();
            let mut flat_rb = Vec::new();
            let mut exchanged = Vec::new();
            for p in &ps {
                let name = p.hom().format(omega);
                let (im, ker) = (p.image(omega)?, p.kernel(omega)?);
                let direct = im.dim() + ker.dim() == omega.dim(1) && im.space().intersection(ker.space())?.is_zero();
                let refound = find_projection(omega, &im)?.map(|q| q.image(omega)).transpose()?;
                if !direct || refound.as_ref() != Some(&im) {
                    split.push(name.clone());
                }
                let c = curvature(omega, p)?;
                let b = bianchi(omega, p, &c)?;
                if !b.first_holds() {
                    b1.push(format!("P: {name}; residual: {}", b.first.format(omega)));
                }
                if !b.second_holds() {
                    b2.push(format!("P: {name}; residual: {}", b.second.format(omega)));
                }
                let f = flatness_equivalence(omega, p, &c)?;
                if !f.curvature_agrees() {
                    flat_r.push(format!(
                        "P: {name}; R = 0: {}, ker P involutive: {}",
                        f.curvature_zero, f.horizontal_involutive
                    ));
                }
                if !f.agrees_exchanged() {
                    exchanged.push(format!("P: {name}"));
                }
                if !f.cocurvature_agrees() {
                    flat_rb.push(format!(
                        "P: {name}; Rbar = 0: {}, im P involutive: {}",
                        f.cocurvature_zero, f.vertical_involutive
                    ));
                }
            }
            let what = "projections";
            let n = ps.len();
            let guard = |o: Outcome| -> Outcome {
                if nontrivial == 0 {
                    if let Outcome::Pass(d) = o {
                        return Outcome::Infeasible(format!(
                            "no nontrivial projection found; only trivial cases checked ({d})"
                        ));
                    }
                }
                o
            };
            Ok(vec![
                ("bianchi1".into(), guard(count_outcome(n, b1, what))),
                ("bianchi2".into(), guard(count_outcome(n, b2, what))),
                ("flatness_curvature".into(), guard(count_outcome(n, flat_r, what))),
                // R = 0 iff im P involutive, and Rbar = 0 iff ker P involutive
                ("flatness_exchanged".into(), guard(count_outcome(n, exchanged, what))),
                ("flatness_cocurvature".into(), guard(count_outcome(n, flat_rb, what))),
                ("splitting".into(), guard(count_outcome(n, split, what))),
            ])
        }),
    ));
    jobs.push((
        "geometry.integrability",
        Box::new(move |_| {
            let zero = globally_integrable(omega, &Distribution::zero(omega))?;
            let full = globally_integrable(omega, &Distribution::full(omega))?;
            let n = omega.algebra().dim();
            let ok = zero.integrable && zero.witness.dim() == 1 && full.integrable && full.witness.dim() == n;
            let msg = format!(
                "dim B_max: {} for D = 0, {} for D = Omega1",
                zero.witness.dim(),
                full.witness.dim()
            );
            single(if ok { Outcome::Pass(msg) } else { Outcome::Fail(msg) })
        }),
    ));
}
