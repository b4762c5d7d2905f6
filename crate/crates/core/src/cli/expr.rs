//! Expression language shared by problem files and `ncdiff compute`.
//!
//! Juxtaposition and `*` multiply forms, `d(x)` is the differential, and
//! calls such as `j(K)(F)` or `fnbracket(K, L)` reach the derivation
//! calculus. Numbers are multiples of the unit.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Subalgebra;
use crate::deriv::{algebraic_bracket, fn_bracket, insert_hom, FormHom, GradedDerivation};
use crate::forms::{Form, Omega};
use crate::geometry::{
    curvature, find_projection, globally_integrable, is_involutive, make_distribution, Distribution,
    IntegrabilityReport, Projection,
};
use crate::linalg::{unit_vector, Scalar};

/// Error at a character offset of the source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub col: usize,
    pub msg: String,
}

impl ExprError {
    fn new(col: usize, msg: impl Into<String>) -> Self {
        ExprError { col, msg: msg.into() }
    }
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.col + 1, self.msg)
    }
}

type PResult<T> = std::result::Result<T, ExprError>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Semi,
    Arrow,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '^'
}

/// Whether `s` can be written as a name in expressions.
pub fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(is_ident_start) && cs.all(is_ident_char)
}

fn tokenize(src: &str) -> PResult<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            ';' => Tok::Semi,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            '-' => Tok::Minus,
            c if c.is_ascii_digit() => {
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                Tok::Num(chars[start..=i].iter().collect())
            }
            c if is_ident_start(c) => {
                while i + 1 < chars.len() && is_ident_char(chars[i + 1]) {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            c => return Err(ExprError::new(i, format!("unexpected character `{c}`"))),
        };
        i += 1;
        out.push(Token { tok, start, end: i });
    }
    out.push(Token {
        tok: Tok::End,
        start: chars.len(),
        end: chars.len(),
    });
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug)]
pub struct Expr {
    kind: ExprKind,
    col: usize,
}

#[derive(Clone, Debug)]
enum ExprKind {
    Num(Scalar),
    Name(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Box<Expr>, Vec<Expr>),
}

/// One `lhs -> rhs` item of a hom literal; `lhs` is absent in positional lists.
#[derive(Clone, Debug)]
pub struct HomItem {
    pub source: Option<Expr>,
    pub image: Expr,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> PResult<Self> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<Token> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> ExprError {
        let t = self.peek();
        let found = match &t.tok {
            Tok::End => "end of input".to_string(),
            Tok::Num(s) | Tok::Ident(s) => format!("`{s}`"),
            other => format!("`{}`", tok_text(other)),
        };
        ExprError::new(t.start, format!("expected {what}, found {found}"))
    }

    fn finish(&mut self) -> PResult<()> {
        if self.peek().tok == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected("end of expression"))
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let col = self.bump().start;
            let rhs = self.term()?;
            lhs = Expr {
                kind: ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)),
                col,
            };
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let (op, col) = match self.peek().tok {
                Tok::Star => (BinOp::Mul, self.bump().start),
                Tok::Slash => (BinOp::Div, self.bump().start),
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen => (BinOp::Mul, self.peek().start),
                _ => return Ok(lhs),
            };
            let rhs = self.unary()?;
            lhs = Expr {
                kind: ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)),
                col,
            };
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.peek().tok == Tok::Minus {
            let col = self.bump().start;
            let inner = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                col,
            });
        }
        self.postfix()
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let t = self.peek().clone();
        let mut e = match &t.tok {
            Tok::Num(s) => {
                self.bump();
                let v: Scalar = s
                    .parse()
                    .map_err(|_| ExprError::new(t.start, format!("bad number `{s}`")))?;
                Expr {
                    kind: ExprKind::Num(v),
                    col: t.start,
                }
            }
            Tok::Ident(s) => {
                self.bump();
                Expr {
                    kind: ExprKind::Name(s.clone()),
                    col: t.start,
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                // a parenthesized expression is never called: `(a)(b)` is a product
                return Ok(e);
            }
            _ => return Err(self.unexpected("an expression")),
        };
        // calls bind only when `(` touches the callee, so `eps (x)` is a product
        let mut end = t.end;
        while self.peek().tok == Tok::LParen && self.peek().start == end {
            self.bump();
            let mut args = Vec::new();
            if self.peek().tok != Tok::RParen {
                loop {
                    args.push(self.expr()?);
                    if self.peek().tok == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
            end = self.expect(Tok::RParen, "`,` or `)`")?.end;
            e = Expr {
                col: e.col,
                kind: ExprKind::Call(Box::new(e), args),
            };
        }
        Ok(e)
    }
}

fn tok_text(t: &Tok) -> &'static str {
    match t {
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::Comma => ",",
        Tok::Plus => "+",
        Tok::Minus => "-",
        Tok::Star => "*",
        Tok::Slash => "/",
        Tok::Semi => ";",
        Tok::Arrow => "->",
        Tok::Num(_) | Tok::Ident(_) | Tok::End => "",
    }
}

pub fn parse_expr(src: &str) -> PResult<Expr> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Comma-separated expressions.
pub fn parse_list(src: &str) -> PResult<Vec<Expr>> {
    let mut p = Parser::new(src)?;
    let mut out = vec![p.expr()?];
    while p.peek().tok == Tok::Comma {
        p.bump();
        out.push(p.expr()?);
    }
    p.finish()?;
    Ok(out)
}

/// `d(a) -> F; d(b) -> G` or a positional `F; G`.
pub fn parse_hom(src: &str) -> PResult<Vec<HomItem>> {
    let mut p = Parser::new(src)?;
    let mut out = Vec::new();
    loop {
        let first = p.expr()?;
        let item = if p.peek().tok == Tok::Arrow {
            p.bump();
            HomItem {
                source: Some(first),
                image: p.expr()?,
            }
        } else {
            HomItem {
                source: None,
                image: first,
            }
        };
        out.push(item);
        if p.peek().tok == Tok::Semi {
            p.bump();
            if p.peek().tok == Tok::End {
                break;
            }
        } else {
            break;
        }
    }
    p.finish()?;
    if out.iter().any(|i| i.source.is_some()) && out.iter().any(|i| i.source.is_none()) {
        return Err(ExprError::new(0, "mix of `d(x) -> F` items and positional images"));
    }
    Ok(out)
}

/// Values produced by evaluation.
#[derive(Clone, Debug)]
pub enum Value {
    Form(Form),
    Hom(FormHom),
    Derivation(GradedDerivation),
    Distribution(Distribution),
    Subalgebra(Subalgebra),
    Integrability(Box<IntegrabilityReport>),
    Bool(bool),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Form(_) => "form",
            Value::Hom(_) => "hom",
            Value::Derivation(_) => "derivation",
            Value::Distribution(_) => "distribution",
            Value::Subalgebra(_) => "subalgebra",
            Value::Integrability(_) => "integrability report",
            Value::Bool(_) => "boolean",
        }
    }
}

/// Names reserved for built-in operations.
pub const BUILTINS: &[&str] = &[
    "d",
    "mul",
    "j",
    "lie",
    "abracket",
    "fnbracket",
    "insert",
    "compose",
    "commutator",
    "restrict",
    "curvature",
    "cocurvature",
    "span",
    "projection",
    "image",
    "kernel",
    "involutive",
    "integrable",
];

/// Evaluation context: the forms, the declared names, and basis labels.
pub struct Env<'a> {
    pub omega: &'a Omega,
    pub names: &'a BTreeMap<String, Value>,
}

fn lift<T, E: fmt::Display>(col: usize, r: std::result::Result<T, E>) -> PResult<T> {
    r.map_err(|e| ExprError::new(col, e.to_string()))
}

impl Env<'_> {
    fn label(&self, name: &str) -> Option<Form> {
        let alg = self.omega.algebra();
        if let Some(i) = alg.labels().iter().position(|l| l == name) {
            return Some(self.omega.element_form(&alg.basis_element(i)));
        }
        let i = alg.raw_labels().iter().position(|l| l == name)?;
        Some(self.omega.element_form(&alg.raw_basis_element(i)))
    }

    fn scalar_form(&self, c: Scalar) -> Form {
        let n = self.omega.algebra().dim();
        let mut v = unit_vector(n, 0);
        v[0] = c;
        self.omega.form(0, v).expect("degree 0 length")
    }

    fn as_scalar(f: &Form) -> Option<Scalar> {
        if f.degree() != 0 || f.coords()[1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(f.coords()[0].clone())
    }

    pub fn eval(&self, e: &Expr) -> PResult<Value> {
        let col = e.col;
        match &e.kind {
            ExprKind::Num(c) => Ok(Value::Form(self.scalar_form(c.clone()))),
            ExprKind::Name(n) => {
                if let Some(v) = self.names.get(n) {
                    return Ok(v.clone());
                }
                if n == "d" {
                    return Ok(Value::Derivation(GradedDerivation::differential(self.omega)));
                }
                if BUILTINS.contains(&n.as_str()) {
                    return Err(ExprError::new(col, format!("`{n}` must be called with arguments")));
                }
                self.label(n)
                    .map(Value::Form)
                    .ok_or_else(|| ExprError::new(col, format!("unknown name `{n}`")))
            }
            ExprKind::Neg(inner) => match self.eval(inner)? {
                Value::Form(f) => Ok(Value::Form(f.neg())),
                Value::Hom(h) => Ok(Value::Hom(h.scaled(&Scalar::from_int(-1)))),
                Value::Derivation(d) => Ok(Value::Derivation(d.scaled(&Scalar::from_int(-1)))),
                v => Err(ExprError::new(col, format!("cannot negate a {}", v.kind()))),
            },
            ExprKind::Bin(op, l, r) => {
                let (a, b) = (self.eval(l)?, self.eval(r)?);
                self.binary(*op, a, b, col)
            }
            ExprKind::Call(callee, args) => self.call(callee, args, col),
        }
    }

    fn expect_form(&self, e: &Expr) -> PResult<Form> {
        match self.eval(e)? {
            Value::Form(f) => Ok(f),
            v => Err(ExprError::new(e.col, format!("expected a form, found a {}", v.kind()))),
        }
    }

    fn expect_hom(&self, e: &Expr) -> PResult<FormHom> {
        match self.eval(e)? {
            Value::Hom(h) => Ok(h),
            v => Err(ExprError::new(e.col, format!("expected a hom, found a {}", v.kind()))),
        }
    }

    fn expect_derivation(&self, e: &Expr) -> PResult<GradedDerivation> {
        match self.eval(e)? {
            Value::Derivation(d) => Ok(d),
            v => Err(ExprError::new(
                e.col,
                format!("expected a derivation, found a {}", v.kind()),
            )),
        }
    }

    fn expect_distribution(&self, e: &Expr) -> PResult<Distribution> {
        match self.eval(e)? {
            Value::Distribution(d) => Ok(d),
            v => Err(ExprError::new(
                e.col,
                format!("expected a distribution, found a {}", v.kind()),
            )),
        }
    }

    fn expect_projection(&self, e: &Expr) -> PResult<Projection> {
        let h = self.expect_hom(e)?;
        lift(e.col, Projection::new(self.omega, h))
    }

    /// Zero forms adapt to the degree of the other operand.
    fn align(&self, a: Form, b: Form) -> (Form, Form) {
        if a.degree() == b.degree() {
            (a, b)
        } else if a.is_zero() {
            (self.omega.zero(b.degree()), b)
        } else if b.is_zero() {
            let z = self.omega.zero(a.degree());
            (a, z)
        } else {
            (a, b)
        }
    }

    fn binary(&self, op: BinOp, a: Value, b: Value, col: usize) -> PResult<Value> {
        use Value::*;
        match (op, a, b) {
            (BinOp::Add | BinOp::Sub, Form(x), Form(y)) => {
                let (x, y) = self.align(x, y);
                if x.degree() != y.degree() {
                    return Err(ExprError::new(
                        col,
                        format!("degree mismatch: {} and {}", x.degree(), y.degree()),
                    ));
                }
                let r = if op == BinOp::Add { x.add(&y) } else { x.sub(&y) };
                Ok(Form(lift(col, r)?))
            }
            (BinOp::Add | BinOp::Sub, Hom(x), Hom(y)) => {
                let r = if op == BinOp::Add { x.add(&y) } else { x.sub(&y) };
                Ok(Hom(lift(col, r)?))
            }
            (BinOp::Add | BinOp::Sub, Derivation(x), Derivation(y)) => {
                let r = if op == BinOp::Add { x.add(&y) } else { x.sub(&y) };
                Ok(Derivation(lift(col, r)?))
            }
            (BinOp::Mul, Form(x), Form(y)) => Ok(Form(lift(col, self.omega.mul(&x, &y))?)),
            (BinOp::Mul, Form(x), Hom(h)) | (BinOp::Mul, Hom(h), Form(x)) => match Self::as_scalar(&x) {
                Some(c) => Ok(Hom(h.scaled(&c))),
                None => Err(ExprError::new(col, "a hom can only be scaled by a number")),
            },
            (BinOp::Mul, Form(x), Derivation(d)) | (BinOp::Mul, Derivation(d), Form(x)) => match Self::as_scalar(&x) {
                Some(c) => Ok(Derivation(d.scaled(&c))),
                None => Err(ExprError::new(col, "a derivation can only be scaled by a number")),
            },
            (BinOp::Div, x, Form(y)) => {
                let inv = Self::as_scalar(&y)
                    .and_then(|c| c.recip())
                    .ok_or_else(|| ExprError::new(col, "division by something other than a nonzero number"))?;
                match x {
                    Form(f) => Ok(Form(f.scaled(&inv))),
                    Hom(h) => Ok(Hom(h.scaled(&inv))),
                    Derivation(d) => Ok(Derivation(d.scaled(&inv))),
                    v => Err(ExprError::new(col, format!("cannot divide a {}", v.kind()))),
                }
            }
            (op, a, b) => Err(ExprError::new(
                col,
                format!(
                    "cannot {} a {} and a {}",
                    match op {
                        BinOp::Add => "add",
                        BinOp::Sub => "subtract",
                        BinOp::Mul => "multiply",
                        BinOp::Div => "divide",
                    },
                    a.kind(),
                    b.kind()
                ),
            )),
        }
    }

    fn arity(name: &str, args: &[Expr], n: usize, col: usize) -> PResult<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(ExprError::new(
                col,
                format!(
                    "`{name}` takes {n} argument{}, found {}",
                    if n == 1 { "" } else { "s" },
                    args.len()
                ),
            ))
        }
    }

    fn call(&self, callee: &Expr, args: &[Expr], col: usize) -> PResult<Value> {
        let omega = self.omega;
        if let ExprKind::Name(name) = &callee.kind {
            if !self.names.contains_key(name) && name != "d" && BUILTINS.contains(&name.as_str()) {
                return self.builtin(name, args, col);
            }
        }
        match self.eval(callee)? {
            Value::Derivation(d) => {
                Self::arity("a derivation", args, 1, col)?;
                let f = self.expect_form(&args[0])?;
                Ok(Value::Form(lift(col, d.evaluate(omega, &f))?))
            }
            Value::Hom(h) => {
                Self::arity("a hom", args, 1, col)?;
                let f = self.expect_form(&args[0])?;
                let f = if f.is_zero() { omega.zero(1) } else { f };
                Ok(Value::Form(lift(col, h.apply(omega, &f))?))
            }
            v => Err(ExprError::new(col, format!("a {} cannot be called", v.kind()))),
        }
    }

    fn builtin(&self, name: &str, args: &[Expr], col: usize) -> PResult<Value> {
        let omega = self.omega;
        let two_homs = |f: fn(&Omega, &FormHom, &FormHom) -> crate::Result<FormHom>| -> PResult<Value> {
            Self::arity(name, args, 2, col)?;
            let (k, l) = (self.expect_hom(&args[0])?, self.expect_hom(&args[1])?);
            Ok(Value::Hom(lift(col, f(omega, &k, &l))?))
        };
        match name {
            "mul" => {
                if args.is_empty() {
                    return Err(ExprError::new(col, "`mul` needs at least one argument"));
                }
                let mut acc = self.expect_form(&args[0])?;
                for a in &args[1..] {
                    acc = lift(a.col, omega.mul(&acc, &self.expect_form(a)?))?;
                }
                Ok(Value::Form(acc))
            }
            "j" | "lie" => {
                Self::arity(name, args, 1, col)?;
                let k = self.expect_hom(&args[0])?;
                let d = if name == "j" {
                    GradedDerivation::insertion(omega, &k)
                } else {
                    GradedDerivation::lie_derivative(omega, &k)
                };
                Ok(Value::Derivation(lift(col, d)?))
            }
            "abracket" => two_homs(algebraic_bracket),
            "fnbracket" => two_homs(fn_bracket),
            "insert" => two_homs(insert_hom),
            "compose" => two_homs(|o, k, l| k.compose(o, l)),
            "commutator" => {
                Self::arity(name, args, 2, col)?;
                let (a, b) = (self.expect_derivation(&args[0])?, self.expect_derivation(&args[1])?);
                Ok(Value::Derivation(lift(col, a.commutator(omega, &b))?))
            }
            "restrict" => {
                Self::arity(name, args, 1, col)?;
                let d = self.expect_derivation(&args[0])?;
                Ok(Value::Hom(lift(col, d.restriction(omega))?))
            }
            "curvature" | "cocurvature" => {
                Self::arity(name, args, 1, col)?;
                let p = self.expect_projection(&args[0])?;
                let c = lift(col, curvature(omega, &p))?;
                Ok(Value::Hom(if name == "curvature" {
                    c.curvature
                } else {
                    c.cocurvature
                }))
            }
            "span" => {
                let forms = args.iter().map(|a| self.expect_form(a)).collect::<PResult<Vec<_>>>()?;
                if let Some((f, a)) = forms.iter().zip(args).find(|(f, _)| f.degree() != 1 && !f.is_zero()) {
                    return Err(ExprError::new(
                        a.col,
                        format!("distributions live in degree 1, found degree {}", f.degree()),
                    ));
                }
                let forms: Vec<Form> = forms
                    .into_iter()
                    .map(|f| if f.is_zero() { omega.zero(1) } else { f })
                    .collect();
                Ok(Value::Distribution(lift(col, make_distribution(omega, &forms))?))
            }
            "projection" => {
                Self::arity(name, args, 1, col)?;
                let d = self.expect_distribution(&args[0])?;
                match lift(col, find_projection(omega, &d))? {
                    Some(p) => Ok(Value::Hom(p.into_hom())),
                    None => Err(ExprError::new(
                        col,
                        "the distribution has no complementary sub-bimodule",
                    )),
                }
            }
            "image" | "kernel" => {
                Self::arity(name, args, 1, col)?;
                let p = self.expect_projection(&args[0])?;
                let d = if name == "image" {
                    p.image(omega)
                } else {
                    p.kernel(omega)
                };
                Ok(Value::Distribution(lift(col, d)?))
            }
            "involutive" => {
                Self::arity(name, args, 1, col)?;
                let d = self.expect_distribution(&args[0])?;
                Ok(Value::Bool(lift(col, is_involutive(omega, &d))?))
            }
            "integrable" => {
                Self::arity(name, args, 1, col)?;
                let d = self.expect_distribution(&args[0])?;
                Ok(Value::Integrability(Box::new(lift(
                    col,
                    globally_integrable(omega, &d),
                )?)))
            }
            _ => unreachable!("builtin list and dispatch agree"),
        }
    }

    /// Builds a hom from literal items. The result is checked for shape only;
    /// callers decide how to treat a non-equivariant map.
    pub fn hom_literal(&self, items: &[HomItem], col: usize) -> PResult<FormHom> {
        let omega = self.omega;
        let r = omega.algebra().dim() - 1;
        let mut images: Vec<Option<(Form, usize)>> = vec![None; r];
        if items.iter().all(|i| i.source.is_none()) {
            if items.len() != r {
                return Err(ExprError::new(
                    col,
                    format!("expected {r} images, one per d(e_j), found {}", items.len()),
                ));
            }
            for (j, it) in items.iter().enumerate() {
                images[j] = Some((self.expect_form(&it.image)?, it.image.col));
            }
        } else {
            for it in items {
                let src = it.source.as_ref().expect("keyed literal");
                let s = self.expect_form(src)?;
                let j = (1..=r)
                    .find(|&j| s == omega.d_element(&omega.algebra().basis_element(j)))
                    .ok_or_else(|| {
                        ExprError::new(
                            src.col,
                            "left side must be d(label) for a basis label other than the unit",
                        )
                    })?;
                if images[j - 1].is_some() {
                    return Err(ExprError::new(src.col, "image given twice"));
                }
                images[j - 1] = Some((self.expect_form(&it.image)?, it.image.col));
            }
        }
        let degree = images
            .iter()
            .flatten()
            .filter(|(f, _)| !f.is_zero())
            .map(|(f, _)| f.degree())
            .max()
            .unwrap_or(0);
        let mut out = Vec::with_capacity(r);
        for f in images {
            let f = match f {
                None => omega.zero(degree),
                Some((f, _)) if f.is_zero() => omega.zero(degree),
                Some((f, at)) if f.degree() != degree => {
                    return Err(ExprError::new(
                        at,
                        format!("images must share one degree; found {} and {degree}", f.degree()),
                    ));
                }
                Some((f, _)) => f,
            };
            out.push(f);
        }
        lift(col, FormHom::checked_shape(omega, degree, out))
    }
}
