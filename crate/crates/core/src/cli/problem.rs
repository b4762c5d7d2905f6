//! Problem files: a line-oriented sectioned format.
//!
//! ```text
//! # comments run to the end of the line
//! [algebra]
//! name = dual
//! basis = 1 eps
//! unit = 1 0
//! mul 1 1 = 1 0
//! mul 1 eps = 0 1
//! mul eps 1 = 0 1
//! mul eps eps = 0 0
//!
//! [forms]
//! w = (1/2)*eps d(eps)
//!
//! [homs]
//! K = d(eps) -> eps d(eps)
//! ```
//!
//! `builtin = matrix(2)` may replace the table. Other sections are
//! `[distributions]` (comma-separated spanning 1-forms), `[subalgebras]`
//! (comma-separated elements) and `[projections]` (a hom expression).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{builtin, Algebra, AlgebraError, Subalgebra};
use crate::checks::{CheckEntry, Verdict};
use crate::forms::Omega;
use crate::geometry::{make_distribution, Projection};
use crate::linalg::{Scalar, Subspace, Vector};

use super::expr::{is_identifier, parse_expr, parse_hom, parse_list, Env, Expr, ExprError, HomItem, Value, BUILTINS};

/// Error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        msg: msg.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Algebra,
    Forms,
    Homs,
    Distributions,
    Subalgebras,
    Projections,
}

impl Section {
    fn parse(s: &str) -> Option<Section> {
        Some(match s {
            "algebra" => Section::Algebra,
            "forms" => Section::Forms,
            "homs" => Section::Homs,
            "distributions" => Section::Distributions,
            "subalgebras" => Section::Subalgebras,
            "projections" => Section::Projections,
            _ => return None,
        })
    }
}

/// Source position of a value: line and 0-based char offset of its start.
#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

impl Pos {
    fn at(self, e: ExprError) -> ParseError {
        perr(self.line, self.col + e.col + 1, e.msg)
    }
}

#[derive(Clone, Debug)]
enum Body {
    Form(Expr),
    Hom(Vec<HomItem>),
    Distribution(Vec<Expr>),
    Subalgebra(Vec<Expr>),
    Projection(Expr),
}

#[derive(Clone, Debug)]
struct Decl {
    name: String,
    pos: Pos,
    body: Body,
}

#[derive(Default)]
struct AlgebraSpec {
    header: Option<usize>,
    builtin: Option<(String, Pos)>,
    name: Option<String>,
    basis: Option<(Vec<String>, Pos)>,
    unit: Option<(Vec<String>, Pos)>,
    products: Vec<(String, String, Vec<String>, Pos)>,
}

/// The syntactic content of a problem file.
pub struct ProblemFile {
    algebra: AlgebraSpec,
    decls: Vec<Decl>,
}

/// A loaded problem: the algebra, the declared names and the validation
/// entries produced while loading.
pub struct Problem {
    pub omega: Option<Omega>,
    pub names: BTreeMap<String, Value>,
    pub projections: Vec<(String, Projection)>,
    pub entries: Vec<CheckEntry>,
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

/// Char offset of the first non-blank char of `part` inside `line`.
fn offset_in(line: &str, part: &str) -> usize {
    let byte = part.as_ptr() as usize - line.as_ptr() as usize;
    let lead = part.len() - part.trim_start().len();
    line[..byte + lead].chars().count()
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut section = None;
    let mut alg = AlgebraSpec::default();
    let mut decls: Vec<Decl> = Vec::new();
    let mut seen_any = false;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        seen_any = true;
        let lead = offset_in(raw, line);
        if let Some(inner) = trimmed.strip_prefix('[') {
            let name = inner
                .strip_suffix(']')
                .ok_or_else(|| perr(lineno, lead + 1, "unterminated section header"))?
                .trim();
            let s = Section::parse(name).ok_or_else(|| perr(lineno, lead + 2, format!("unknown section `{name}`")))?;
            if s == Section::Algebra {
                if alg.header.is_some() {
                    return Err(perr(lineno, lead + 1, "duplicate [algebra] section"));
                }
                alg.header = Some(lineno);
            }
            section = Some(s);
            continue;
        }
        let Some(section) = section else {
            return Err(perr(lineno, lead + 1, "content before the first section header"));
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| perr(lineno, lead + 1, "expected `key = value`"))?;
        let vpos = Pos {
            line: lineno,
            col: offset_in(raw, value),
        };
        let kcol = offset_in(raw, key) + 1;
        let key = key.trim();
        let value = value.trim();
        if value.is_empty() {
            return Err(perr(lineno, vpos.col + 1, "missing value"));
        }
        if section == Section::Algebra {
            algebra_line(&mut alg, key, value, lineno, kcol, vpos)?;
            continue;
        }
        if !is_identifier(key) {
            return Err(perr(lineno, kcol, format!("`{key}` is not a valid name")));
        }
        if BUILTINS.contains(&key) {
            return Err(perr(
                lineno,
                kcol,
                format!("`{key}` is a built-in operation and cannot be redefined"),
            ));
        }
        if decls.iter().any(|d| d.name == key) {
            return Err(perr(lineno, kcol, format!("`{key}` is already declared")));
        }
        let body = match section {
            Section::Forms => Body::Form(parse_expr(value).map_err(|e| vpos.at(e))?),
            Section::Homs => Body::Hom(parse_hom(value).map_err(|e| vpos.at(e))?),
            Section::Distributions => Body::Distribution(parse_list(value).map_err(|e| vpos.at(e))?),
            Section::Subalgebras => Body::Subalgebra(parse_list(value).map_err(|e| vpos.at(e))?),
            Section::Projections => Body::Projection(parse_expr(value).map_err(|e| vpos.at(e))?),
            Section::Algebra => unreachable!(),
        };
        decls.push(Decl {
            name: key.to_string(),
            pos: vpos,
            body,
        });
    }
    if !seen_any {
        return Err(perr(1, 1, "empty problem file"));
    }
    let Some(header) = alg.header else {
        return Err(perr(1, 1, "missing [algebra] section"));
    };
    if alg.builtin.is_none() && alg.basis.is_none() {
        return Err(perr(
            header,
            1,
            "[algebra] needs either `builtin` or `basis`, `unit` and `mul` lines",
        ));
    }
    Ok(ProblemFile { algebra: alg, decls })
}

fn algebra_line(
    alg: &mut AlgebraSpec,
    key: &str,
    value: &str,
    line: usize,
    kcol: usize,
    vpos: Pos,
) -> Result<(), ParseError> {
    let words = || value.split_whitespace().map(str::to_string).collect::<Vec<_>>();
    let dup = |k: &str| perr(line, kcol, format!("duplicate `{k}`"));
    match key.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["builtin"] => {
            if alg.builtin.replace((value.to_string(), vpos)).is_some() {
                return Err(dup("builtin"));
            }
        }
        ["name"] => {
            if alg.name.replace(value.to_string()).is_some() {
                return Err(dup("name"));
            }
        }
        ["basis"] => {
            let labels: Vec<String> = value
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            if alg.basis.replace((labels, vpos)).is_some() {
                return Err(dup("basis"));
            }
        }
        ["unit"] => {
            if alg.unit.replace((words(), vpos)).is_some() {
                return Err(dup("unit"));
            }
        }
        ["mul", a, b] => alg.products.push((a.to_string(), b.to_string(), words(), vpos)),
        _ => return Err(perr(line, kcol, format!("unknown [algebra] key `{key}`"))),
    }
    Ok(())
}

fn parse_coords(words: &[String], n: usize, pos: Pos) -> Result<Vector, ParseError> {
    if words.len() != n {
        return Err(perr(
            pos.line,
            pos.col + 1,
            format!("expected {n} coordinates, found {}", words.len()),
        ));
    }
    words
        .iter()
        .map(|w| {
            w.parse::<Scalar>()
                .map_err(|_| perr(pos.line, pos.col + 1, format!("`{w}` is not a rational number")))
        })
        .collect()
}

/// Builds the raw structure table. Syntax problems are parse errors; the
/// algebra laws are checked afterwards and reported as verdicts.
fn algebra_input(spec: &AlgebraSpec) -> Result<std::result::Result<Algebra, AlgebraError>, ParseError> {
    let header = spec.header.unwrap_or(1);
    if let Some((b, pos)) = &spec.builtin {
        if spec.basis.is_some() || spec.unit.is_some() || !spec.products.is_empty() {
            return Err(perr(header, 1, "`builtin` cannot be combined with an explicit table"));
        }
        return match builtin(b) {
            Ok(a) => Ok(Ok(a)),
            Err(e) => Err(perr(pos.line, pos.col + 1, e.to_string())),
        };
    }
    let (labels, bpos) = spec.basis.clone().expect("checked in parse_problem");
    let n = labels.len();
    if n == 0 {
        return Err(perr(bpos.line, bpos.col + 1, "empty basis"));
    }
    for (i, l) in labels.iter().enumerate() {
        if !is_identifier(l) && l != "1" {
            return Err(perr(
                bpos.line,
                bpos.col + 1,
                format!("basis label `{l}` is not a valid name"),
            ));
        }
        if BUILTINS.contains(&l.as_str()) {
            return Err(perr(
                bpos.line,
                bpos.col + 1,
                format!("basis label `{l}` is a built-in operation"),
            ));
        }
        if labels[..i].contains(l) {
            return Err(perr(bpos.line, bpos.col + 1, format!("duplicate basis label `{l}`")));
        }
    }
    let (unit_words, upos) = spec.unit.clone().ok_or_else(|| perr(header, 1, "missing `unit`"))?;
    // a single basis label is accepted in place of coordinates
    let unit = match unit_words.as_slice() {
        [l] if labels.contains(l) => {
            crate::linalg::unit_vector(n, labels.iter().position(|x| x == l).expect("present"))
        }
        _ => parse_coords(&unit_words, n, upos)?,
    };
    let idx = |l: &str, pos: Pos| {
        labels
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| perr(pos.line, pos.col + 1, format!("unknown basis label `{l}`")))
    };
    let mut table: Vec<Vec<Option<Vector>>> = vec![vec![None; n]; n];
    for (a, b, words, pos) in &spec.products {
        let (i, j) = (idx(a, *pos)?, idx(b, *pos)?);
        if table[i][j].is_some() {
            return Err(perr(pos.line, 1, format!("product {a}*{b} given twice")));
        }
        table[i][j] = Some(parse_coords(words, n, *pos)?);
    }
    let mut full = Vec::with_capacity(n);
    for (i, row) in table.into_iter().enumerate() {
        let mut r = Vec::with_capacity(n);
        for (j, v) in row.into_iter().enumerate() {
            r.push(v.ok_or_else(|| perr(header, 1, format!("missing product `mul {} {}`", labels[i], labels[j])))?);
        }
        full.push(r);
    }
    let name = spec.name.clone().unwrap_or_else(|| "algebra".to_string());
    Ok(Algebra::from_structure_constants(name, labels, full, unit))
}

fn entry(id: impl Into<String>, inputs: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> CheckEntry {
    CheckEntry {
        id: id.into(),
        inputs: inputs.into(),
        verdict,
        detail: detail.into(),
    }
}

/// Builds the algebra and evaluates declarations in file order.
///
/// Unknown names, type errors and degree mismatches are parse errors with a
/// position. Mathematical failures (non-associative table, non-equivariant
/// hom, non-idempotent projection, non-closed subalgebra) become FAIL entries.
pub fn load(file: &ProblemFile) -> Result<Problem, ParseError> {
    let mut problem = Problem {
        omega: None,
        names: BTreeMap::new(),
        projections: Vec::new(),
        entries: Vec::new(),
    };
    let algebra = match algebra_input(&file.algebra)? {
        Ok(a) => a,
        Err(e) => {
            let id = match e {
                AlgebraError::NonAssociative { .. } => "algebra.associativity",
                AlgebraError::NotUnit { .. } | AlgebraError::SingularBasisChange => "algebra.unit",
                _ => "algebra.table",
            };
            problem
                .entries
                .push(entry(id, "structure table", Verdict::Fail, e.to_string()));
            return Ok(problem);
        }
    };
    let n = algebra.dim();
    let name = algebra.name().to_string();
    problem.entries.push(entry(
        "algebra.associativity",
        name.clone(),
        Verdict::Pass,
        format!("{} basis triples", n * n * n),
    ));
    problem.entries.push(entry(
        "algebra.unit",
        name.clone(),
        Verdict::Pass,
        format!("two-sided unit {}", algebra.labels()[0]),
    ));
    let omega = Omega::new(Arc::new(algebra));
    let labels_in_use = |s: &str| {
        omega
            .algebra()
            .labels()
            .iter()
            .chain(omega.algebra().raw_labels())
            .any(|l| l == s)
    };

    for decl in &file.decls {
        let pos = decl.pos;
        if labels_in_use(&decl.name) {
            return Err(perr(
                pos.line,
                1,
                format!("`{}` is a basis label and cannot be redefined", decl.name),
            ));
        }
        let env = Env {
            omega: &omega,
            names: &problem.names,
        };
        let at = |e: ExprError| pos.at(e);
        let (id, value, verdict, detail) = match &decl.body {
            Body::Form(e) => match env.eval(e).map_err(at)? {
                Value::Form(f) => {
                    let d = format!("degree {}", f.degree());
                    (format!("form.{}", decl.name), Some(Value::Form(f)), Verdict::Pass, d)
                }
                v => {
                    return Err(perr(
                        pos.line,
                        pos.col + 1,
                        format!("expected a form, found a {}", v.kind()),
                    ))
                }
            },
            Body::Hom(items) => {
                let h = env.hom_literal(items, 0).map_err(at)?;
                let id = format!("hom.{}", decl.name);
                match crate::deriv::FormHom::new(&omega, h.degree(), h.images().to_vec()) {
                    Ok(h) => {
                        let d = format!("degree {}", h.degree());
                        (id, Some(Value::Hom(h)), Verdict::Pass, d)
                    }
                    Err(e) => (id, None, Verdict::Fail, e.to_string()),
                }
            }
            Body::Distribution(es) => {
                let mut forms = Vec::new();
                for e in es {
                    match env.eval(e).map_err(at)? {
                        Value::Form(f) if f.is_zero() => forms.push(omega.zero(1)),
                        Value::Form(f) if f.degree() == 1 => forms.push(f),
                        Value::Form(f) => {
                            return Err(pos.at(ExprError {
                                col: 0,
                                msg: format!("distributions are spanned by 1-forms, found degree {}", f.degree()),
                            }))
                        }
                        v => {
                            return Err(perr(
                                pos.line,
                                pos.col + 1,
                                format!("expected a 1-form, found a {}", v.kind()),
                            ))
                        }
                    }
                }
                let d = make_distribution(&omega, &forms).map_err(|e| perr(pos.line, pos.col + 1, e.to_string()))?;
                let detail = format!(
                    "bimodule of dimension {} in Omega1 (dimension {})",
                    d.dim(),
                    omega.dim(1)
                );
                (
                    format!("distribution.{}", decl.name),
                    Some(Value::Distribution(d)),
                    Verdict::Pass,
                    detail,
                )
            }
            Body::Subalgebra(es) => {
                let mut vs = Vec::new();
                for e in es {
                    match env.eval(e).map_err(at)? {
                        Value::Form(f) if f.degree() == 0 => vs.push(f.into_coords()),
                        _ => {
                            return Err(perr(
                                pos.line,
                                pos.col + 1,
                                "subalgebras are spanned by algebra elements",
                            ))
                        }
                    }
                }
                let space = Subspace::from_spanning(n, vs).map_err(|e| perr(pos.line, pos.col + 1, e.to_string()))?;
                let id = format!("subalgebra.{}", decl.name);
                match Subalgebra::new(omega.algebra(), space) {
                    Ok(b) => {
                        let d = format!("dimension {}", b.dim());
                        (id, Some(Value::Subalgebra(b)), Verdict::Pass, d)
                    }
                    Err(e) => (id, None, Verdict::Fail, e.to_string()),
                }
            }
            Body::Projection(e) => {
                let h = match env.eval(e).map_err(at)? {
                    Value::Hom(h) => h,
                    v => {
                        return Err(perr(
                            pos.line,
                            pos.col + 1,
                            format!("expected a hom, found a {}", v.kind()),
                        ))
                    }
                };
                let id = format!("projection.{}", decl.name);
                match Projection::new(&omega, h) {
                    Ok(p) => {
                        let detail = format!(
                            "rank {} of {}",
                            p.image(&omega).map(|d| d.dim()).unwrap_or(0),
                            omega.dim(1)
                        );
                        problem.projections.push((decl.name.clone(), p.clone()));
                        (id, Some(Value::Hom(p.into_hom())), Verdict::Pass, detail)
                    }
                    Err(e) => (id, None, Verdict::Fail, e.to_string()),
                }
            }
        };
        if let Some(v) = value {
            problem.names.insert(decl.name.clone(), v);
        }
        problem
            .entries
            .push(entry(id, format!("line {}", pos.line), verdict, detail));
    }
    problem.omega = Some(omega);
    Ok(problem)
}
