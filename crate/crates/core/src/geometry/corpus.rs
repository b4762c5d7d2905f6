//! Test corpora of distributions and projections.
//!
//! Over `Q` the set of sub-bimodules is usually infinite, so the corpus is
//! bounded: bimodules generated by a single vector with entries in
//! `{−1, 0, 1}`, closed under sums, together with every projection onto one
//! of them along another.

use std::collections::HashSet;

use crate::error::Result;
use crate::forms::Omega;
use crate::sample::Sampler;

use super::{find_projection, make_distribution, projection_along, Distribution, Projection};

/// Exhaustive search is limited to `Ω₁` of at most this dimension.
pub const MAX_ENUMERATION_DIM: usize = 8;

fn push_unique<T: Clone + Eq + std::hash::Hash>(seen: &mut HashSet<T>, out: &mut Vec<T>, x: T) -> bool {
    if seen.insert(x.clone()) {
        out.push(x);
        true
    } else {
        false
    }
}

/// Bimodules generated by `{−1, 0, 1}` vectors, closed under pairwise sums,
/// in discovery order. Returns `None` if `Ω₁` is too large to enumerate.
pub fn enumerate_distributions(omega: &Omega) -> Result<Option<Vec<Distribution>>> {
    let dim1 = omega.dim(1);
    if dim1 > MAX_ENUMERATION_DIM {
        return Ok(None);
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    push_unique(&mut seen, &mut out, Distribution::zero(omega));
    let total = 3usize.pow(dim1 as u32);
    for code in 1..total {
        let mut v = Vec::with_capacity(dim1);
        let mut c = code;
        for _ in 0..dim1 {
            v.push(crate::linalg::Scalar::from_int((c % 3) as i64 - 1));
            c /= 3;
        }
        // skip one of each ±v pair
        match v.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => continue,
            None => continue,
            _ => {}
        }
        let d = make_distribution(omega, &[omega.form(1, v)?])?;
        push_unique(&mut seen, &mut out, d);
    }
    let mut start = 0;
    loop {
        let before = out.len();
        for i in 0..before {
            for j in start.max(i + 1)..before {
                let sum = out[i].space().sum(out[j].space())?;
                let d = Distribution::from_subspace(omega, sum)?;
                push_unique(&mut seen, &mut out, d);
            }
        }
        if out.len() == before {
            break;
        }
        start = before;
    }
    Ok(Some(out))
}

/// Every projection onto a corpus distribution, both the canonical one from
/// [`find_projection`] and one along each complementary corpus distribution.
pub fn projection_corpus(omega: &Omega, distributions: &[Distribution]) -> Result<Vec<Projection>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for d in distributions {
        if let Some(p) = find_projection(omega, d)? {
            push_unique(&mut seen, &mut out, p);
        }
    }
    let dim1 = omega.dim(1);
    for d in distributions {
        for c in distributions {
            if d.dim() + c.dim() != dim1 {
                continue;
            }
            if let Some(p) = projection_along(omega, d, c)? {
                push_unique(&mut seen, &mut out, p);
            }
        }
    }
    Ok(out)
}

/// A distribution generated by one or two random sparse vectors.
fn random_distribution(omega: &Omega, sampler: &mut Sampler) -> Result<Distribution> {
    let dim1 = omega.dim(1);
    let count = 1 + sampler.index(2);
    let mut gens = Vec::new();
    for _ in 0..count {
        let mut v = vec![crate::linalg::Scalar::zero(); dim1];
        for _ in 0..1 + sampler.index(2) {
            let i = sampler.index(dim1);
            v[i] = sampler.scalar();
        }
        gens.push(omega.form(1, v)?);
    }
    make_distribution(omega, &gens)
}

/// Up to `count` distinct nontrivial projections from random splittings
/// `Ω₁ = D ⊕ C`, trying at most `attempts` random pairs.
pub fn random_projections(
    omega: &Omega,
    sampler: &mut Sampler,
    count: usize,
    attempts: usize,
) -> Result<Vec<Projection>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for _ in 0..attempts {
        if out.len() >= count {
            break;
        }
        let d = random_distribution(omega, sampler)?;
        if d.dim() == 0 || d.dim() == omega.dim(1) {
            continue;
        }
        let c = random_distribution(omega, sampler)?;
        let p = match projection_along(omega, &d, &c)? {
            Some(p) => Some(p),
            None => find_projection(omega, &d)?,
        };
        if let Some(p) = p {
            if !p.is_trivial(omega) {
                push_unique(&mut seen, &mut out, p);
            }
        }
    }
    Ok(out)
}
