//! A small language for intersection numbers on `E(n)` and `F_e`.
//!
//! ```text
//! statement := ('chi'|'pair'|'triple'|'genus') CONTEXT ':' expr (',' expr)*
//! expr      := '-'? term (('+'|'-') term)*
//! term      := factor ('*' factor)*
//! factor    := INT | INT? SYMBOL | '(' expr ')'
//! CONTEXT   := 'E(' INT ')' | 'F' INT | 'F_' INT
//! ```
//!
//! Whitespace is ignored. Symbols are `D, F, K` on `E(n)`, additionally
//! `h = D` and `f = F` on `E(2)`, and `C0, L, K` on `F_e`.

use std::fmt;

use e3core::coverops::{fe_chi, fe_genus, fe_pair, FeClass};
use e3core::intersection_ring::{chi_en, genus_e2, pair_e2, triple_product_e3, E2Class, EnClass};
use e3core::Error as CoreError;

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Chi,
    Pair,
    Triple,
    Genus,
}

impl Op {
    const ALL: [Op; 4] = [Op::Chi, Op::Pair, Op::Triple, Op::Genus];

    pub fn keyword(self) -> &'static str {
        match self {
            Op::Chi => "chi",
            Op::Pair => "pair",
            Op::Triple => "triple",
            Op::Genus => "genus",
        }
    }
}

/// `E(n)` with `n >= 2`, or the Hirzebruch surface `F_e` with `e >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Context {
    En(u32),
    Fe(i64),
}

impl Context {
    pub fn dim(self) -> u32 {
        match self {
            Context::En(n) => n,
            Context::Fe(_) => 2,
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::En(n) => write!(f, "E({n})"),
            Context::Fe(e) => write!(f, "F{e}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    D,
    F,
    SmallH,
    SmallF,
    C0,
    L,
    K,
}

impl Symbol {
    pub const ALL: [Symbol; 7] =
        [Symbol::D, Symbol::F, Symbol::SmallH, Symbol::SmallF, Symbol::C0, Symbol::L, Symbol::K];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::D => "D",
            Symbol::F => "F",
            Symbol::SmallH => "h",
            Symbol::SmallF => "f",
            Symbol::C0 => "C0",
            Symbol::L => "L",
            Symbol::K => "K",
        }
    }

    /// Coordinates on the two generators of `ctx`: `(D, F)` on `E(n)`,
    /// `(C0, L)` on `F_e`.
    fn coords(self, ctx: Context) -> Result<(i64, i64)> {
        let clash = || CliError::Core(CoreError::MixedSurface(format!("{} is not a class on {ctx}", self.name())));
        match (ctx, self) {
            (Context::En(_), Symbol::D) => Ok((1, 0)),
            (Context::En(_), Symbol::F) => Ok((0, 1)),
            (Context::En(2), Symbol::SmallH) => Ok((1, 0)),
            (Context::En(2), Symbol::SmallF) => Ok((0, 1)),
            (Context::En(n), Symbol::K) => {
                let k = EnClass::canonical(n);
                Ok((k.a, k.b))
            }
            (Context::Fe(_), Symbol::C0) => Ok((1, 0)),
            (Context::Fe(_), Symbol::L) => Ok((0, 1)),
            (Context::Fe(e), Symbol::K) => {
                let k = FeClass::canonical(e);
                Ok((k.a, k.b))
            }
            _ => Err(clash()),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Integer literals are non-negative; negation is explicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    /// `3D` is `Class(Some(3), D)`, a bare `D` is `Class(None, D)`.
    Class(Option<i64>, Symbol),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub op: Op,
    pub ctx: Context,
    pub args: Vec<Expr>,
}

// ---- printing ----

fn is_sum(e: &Expr) -> bool {
    matches!(e, Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_))
}

fn write_expr(e: &Expr, out: &mut String) {
    match e {
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            // a leading `Neg` stays leftmost, so it needs no parentheses
            if is_sum(a) {
                write_expr(a, out);
            } else {
                write_term(a, out);
            }
            out.push_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " });
            write_term(b, out);
        }
        Expr::Neg(x) => {
            out.push('-');
            write_term(x, out);
        }
        _ => write_term(e, out),
    }
}

fn write_term(e: &Expr, out: &mut String) {
    match e {
        _ if is_sum(e) => {
            out.push('(');
            write_expr(e, out);
            out.push(')');
        }
        Expr::Mul(a, b) => {
            write_term(a, out);
            out.push('*');
            write_factor(b, out);
        }
        _ => write_factor(e, out),
    }
}

fn write_factor(e: &Expr, out: &mut String) {
    match e {
        Expr::Int(n) => out.push_str(&n.to_string()),
        Expr::Class(Some(c), s) => out.push_str(&format!("{c}{s}")),
        Expr::Class(None, s) => out.push_str(s.name()),
        _ => {
            out.push('(');
            write_expr(e, out);
            out.push(')');
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_expr(self, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: ", self.op.keyword(), self.ctx)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

// ---- lexing ----

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Colon,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "{s:?}"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Colon => f.write_str("':'"),
            Tok::Comma => f.write_str("','"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn parse_err(pos: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { pos, msg: msg.into() }
}

/// Tokens paired with their 1-based column; always ends with `End`.
fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits.parse().map_err(|_| parse_err(col, format!("integer {digits} is too large")))?;
            out.push((Tok::Int(n), col));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            _ => return Err(parse_err(col, format!("unexpected character {c:?}"))),
        };
        out.push((t, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

// ---- parsing ----

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn col(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let (t, col) = self.bump();
        if t == want {
            Ok(())
        } else {
            Err(parse_err(col, format!("expected {want}, found {t}")))
        }
    }

    fn int(&mut self, what: &str) -> Result<i64> {
        match self.bump() {
            (Tok::Int(n), _) => Ok(n),
            (t, col) => Err(parse_err(col, format!("expected {what}, found {t}"))),
        }
    }

    fn statement(&mut self) -> Result<Statement> {
        let op = match self.bump() {
            (Tok::Ident(s), col) => Op::ALL.into_iter().find(|o| o.keyword() == s).ok_or_else(|| {
                parse_err(col, format!("unknown statement {s:?}; expected chi, pair, triple or genus"))
            })?,
            (t, col) => Err(parse_err(col, format!("expected a statement keyword, found {t}")))?,
        };
        let ctx = self.context()?;
        self.expect(Tok::Colon)?;
        let mut args = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.expr()?);
        }
        match self.bump() {
            (Tok::End, _) => Ok(Statement { op, ctx, args }),
            (t, col) => Err(parse_err(col, format!("expected ',' or end of input, found {t}"))),
        }
    }

    fn context(&mut self) -> Result<Context> {
        let (t, col) = self.bump();
        let Tok::Ident(name) = t else {
            return Err(parse_err(col, format!("expected a surface such as E(3) or F2, found {t}")));
        };
        if name == "E" {
            self.expect(Tok::LParen)?;
            let ncol = self.col();
            let n = self.int("the dimension n")?;
            self.expect(Tok::RParen)?;
            return match u32::try_from(n) {
                Ok(n) if n >= 2 => Ok(Context::En(n)),
                _ => Err(parse_err(ncol, format!("E(n) needs n >= 2, got {n}"))),
            };
        }
        if let Some(rest) = name.strip_prefix('F') {
            let rest = rest.strip_prefix('_').unwrap_or(rest);
            if rest.is_empty() {
                return Ok(Context::Fe(self.int("the index e of F_e")?));
            }
            if rest.chars().all(|c| c.is_ascii_digit()) {
                return rest.parse().map(Context::Fe).map_err(|_| parse_err(col, format!("index {rest} is too large")));
            }
        }
        Err(parse_err(col, format!("unknown surface {name:?}; expected E(n) or F_e")))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = if *self.peek() == Tok::Minus {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.bump() {
            (Tok::Int(n), _) => match self.peek().clone() {
                Tok::Ident(s) => {
                    let col = self.col();
                    self.bump();
                    Ok(Expr::Class(Some(n), symbol(&s, col)?))
                }
                _ => Ok(Expr::Int(n)),
            },
            (Tok::Ident(s), col) => Ok(Expr::Class(None, symbol(&s, col)?)),
            (Tok::LParen, _) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            (t, col) => Err(parse_err(col, format!("expected an integer, a class or '(', found {t}"))),
        }
    }
}

fn symbol(s: &str, col: usize) -> Result<Symbol> {
    Symbol::ALL
        .into_iter()
        .find(|x| x.name() == s)
        .ok_or_else(|| parse_err(col, format!("unknown symbol {s:?}; expected one of D, F, h, f, C0, L, K")))
}

pub fn parse_statement(src: &str) -> Result<Statement> {
    Parser { toks: lex(src)?, at: 0 }.statement()
}

/// Parses a bare expression, for tests and tooling.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    match p.bump() {
        (Tok::End, _) => Ok(e),
        (t, col) => Err(parse_err(col, format!("expected an operator or end of input, found {t}"))),
    }
}

// ---- evaluation ----

/// A homogeneous element of degree `deg` in the numerical ring generated by
/// `X, Y` (`D, F` or `C0, L`); `c[j]` multiplies `X^(deg-j) Y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cycle {
    deg: u32,
    c: Vec<i64>,
}

fn overflow() -> CliError {
    CliError::Eval("integer overflow".into())
}

impl Cycle {
    fn scalar(n: i64) -> Self {
        Cycle { deg: 0, c: vec![n] }
    }

    fn class(a: i64, b: i64) -> Self {
        Cycle { deg: 1, c: vec![a, b] }
    }

    fn combine(&self, o: &Cycle, sign: i64) -> Result<Cycle> {
        if self.deg != o.deg {
            return Err(CliError::Eval(format!("cannot add terms of degree {} and {}", self.deg, o.deg)));
        }
        let c = self
            .c
            .iter()
            .zip(&o.c)
            .map(|(x, y)| y.checked_mul(sign).and_then(|y| x.checked_add(y)).ok_or_else(overflow))
            .collect::<Result<_>>()?;
        Ok(Cycle { deg: self.deg, c })
    }

    fn mul(&self, o: &Cycle) -> Result<Cycle> {
        let mut c = vec![0i64; self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] = x.checked_mul(*y).and_then(|p| c[i + j].checked_add(p)).ok_or_else(overflow)?;
            }
        }
        Ok(Cycle { deg: self.deg + o.deg, c })
    }

    fn as_class(&self) -> Result<(i64, i64)> {
        match self.c[..] {
            [a, b] if self.deg == 1 => Ok((a, b)),
            _ => Err(CliError::Eval(format!("expected a divisor class, got an element of degree {}", self.deg))),
        }
    }
}

fn eval_expr(e: &Expr, ctx: Context) -> Result<Cycle> {
    match e {
        Expr::Int(n) => Ok(Cycle::scalar(*n)),
        Expr::Class(k, s) => {
            let (a, b) = s.coords(ctx)?;
            let k = k.unwrap_or(1);
            Ok(Cycle::class(a.checked_mul(k).ok_or_else(overflow)?, b.checked_mul(k).ok_or_else(overflow)?))
        }
        Expr::Neg(x) => eval_expr(x, ctx)?.mul(&Cycle::scalar(-1)),
        Expr::Add(a, b) => eval_expr(a, ctx)?.combine(&eval_expr(b, ctx)?, 1),
        Expr::Sub(a, b) => eval_expr(a, ctx)?.combine(&eval_expr(b, ctx)?, -1),
        Expr::Mul(a, b) => eval_expr(a, ctx)?.mul(&eval_expr(b, ctx)?),
    }
}

/// Degree of the top monomial `X^(dim-j) Y^j`, computed by the core pairings.
fn top_number(ctx: Context, j: usize) -> Result<i64> {
    let dim = ctx.dim() as usize;
    match ctx {
        Context::En(2) => {
            let g = |i: usize| if i < dim - j { E2Class::new(1, 0) } else { E2Class::new(0, 1) };
            Ok(pair_e2(&g(0), &g(1)))
        }
        Context::En(3) => {
            let g = |i: usize| if i < dim - j { EnClass::new(3, 1, 0) } else { EnClass::new(3, 0, 1) };
            Ok(triple_product_e3(&g(0), &g(1), &g(2))?)
        }
        Context::Fe(e) => {
            let g = |i: usize| if i < dim - j { FeClass::new(e, 1, 0) } else { FeClass::new(e, 0, 1) };
            Ok(fe_pair(&g(0), &g(1))?)
        }
        Context::En(n) => Err(CoreError::WrongDimension { expected: 3, got: n }.into()),
    }
}

fn degree_of(c: &Cycle, ctx: Context) -> Result<i64> {
    c.c.iter().enumerate().try_fold(0i64, |acc, (j, x)| {
        x.checked_mul(top_number(ctx, j)?).and_then(|p| acc.checked_add(p)).ok_or_else(overflow)
    })
}

fn wrong_dim(op: Op, want: u32, ctx: Context) -> CliError {
    match ctx {
        Context::En(n) => CoreError::WrongDimension { expected: want, got: n }.into(),
        Context::Fe(_) => {
            CliError::Eval(format!("{} needs a space of dimension {want}; {ctx} is a surface", op.keyword()))
        }
    }
}

pub fn eval_statement(st: &Statement) -> Result<i64> {
    let ctx = st.ctx;
    let values = st.args.iter().map(|e| eval_expr(e, ctx)).collect::<Result<Vec<_>>>()?;
    let single = || -> Result<(i64, i64)> {
        match &values[..] {
            [v] => v.as_class(),
            _ => Err(CliError::Eval(format!("{} takes exactly one class", st.op.keyword()))),
        }
    };
    match st.op {
        Op::Chi => {
            let (a, b) = single()?;
            match ctx {
                Context::En(n) => Ok(chi_en(n, a, b)?),
                Context::Fe(e) => Ok(fe_chi(&FeClass::new(e, a, b))?),
            }
        }
        Op::Genus => {
            let (a, b) = single()?;
            match ctx {
                Context::En(2) => Ok(genus_e2(&E2Class::new(a, b))),
                Context::Fe(e) => Ok(fe_genus(&FeClass::new(e, a, b))?),
                Context::En(_) => Err(wrong_dim(st.op, 2, ctx)),
            }
        }
        Op::Pair | Op::Triple => {
            let want = if st.op == Op::Pair { 2 } else { 3 };
            if ctx.dim() != want {
                return Err(wrong_dim(st.op, want, ctx));
            }
            let product = values.iter().try_fold(Cycle::scalar(1), |acc, v| acc.mul(v))?;
            if product.deg != want {
                return Err(CliError::Eval(format!(
                    "{} needs a product of total degree {want}, got degree {}",
                    st.op.keyword(),
                    product.deg
                )));
            }
            degree_of(&product, ctx)
        }
    }
}

/// Parses and evaluates one statement, e.g. `chi E(3): 4D-F`.
pub fn eval_source(src: &str) -> Result<i64> {
    eval_statement(&parse_statement(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reference_statements() {
        assert_eq!(eval_source("chi E(3): 4D-F").unwrap(), 5);
        assert_eq!(eval_source("pair E(2): (4h-2f)*f").unwrap(), 4);
        assert_eq!(eval_source("chi F2: 2C0+6L").unwrap(), 15);
        assert_eq!(eval_source("pair E(2): 4h - 2f, f").unwrap(), 4);
        assert_eq!(eval_source("triple E(3): D, D, F").unwrap(), 1);
        assert_eq!(eval_source("triple E(3): D*D*D").unwrap(), 1);
        assert_eq!(eval_source("pair F_2: C0*C0").unwrap(), -2);
        assert_eq!(eval_source("pair F 1: C0, K").unwrap(), -1);
        assert_eq!(eval_source("genus E(2): 4h-2f").unwrap(), 1);
        assert_eq!(eval_source("genus F2: C0").unwrap(), 0);
        assert_eq!(eval_source("chi E(3): -K").unwrap(), chi_en(3, 3, -1).unwrap());
    }

    #[test]
    fn mixed_surface_and_shape_errors() {
        let e = eval_source("chi E(3): C0 + D").unwrap_err();
        assert!(e.to_string().starts_with("MIXED_SURFACE"), "{e}");
        assert!(eval_source("chi F2: h").unwrap_err().to_string().starts_with("MIXED_SURFACE"));
        assert!(matches!(eval_source("pair E(2): h"), Err(CliError::Eval(_))));
        assert!(matches!(eval_source("chi E(2): h*h"), Err(CliError::Eval(_))));
        assert!(matches!(eval_source("chi E(2): h + 1"), Err(CliError::Eval(_))));
        assert!(matches!(eval_source("triple E(2): h, h, h"), Err(CliError::Core(CoreError::WrongDimension { .. }))));
        assert!(matches!(eval_source("triple F2: C0, C0, L"), Err(CliError::Eval(_))));
    }

    #[test]
    fn parse_errors_carry_columns() {
        let col = |s: &str| match parse_statement(s) {
            Err(CliError::Parse { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(col("chi E(3) 4D"), 10);
        assert_eq!(col("chi E(3): 4D +"), 15);
        assert_eq!(col("chi E(3): 4X"), 12);
        assert_eq!(col("chi G: D"), 5);
        assert_eq!(col("chi E(1): D"), 7);
        assert_eq!(col("foo E(3): D"), 1);
        assert_eq!(col("chi E(3): D $"), 13);
        assert_eq!(col("chi E(3): (D"), 13);
    }

    #[test]
    fn printer_is_canonical() {
        let st = parse_statement("chi   E(3):4D-F").unwrap();
        assert_eq!(st.to_string(), "chi E(3): 4D - F");
        let st = parse_statement("pair F_2: -(C0+L)*2L, -(-K)").unwrap();
        assert_eq!(st.to_string(), "pair F2: -(C0 + L)*2L, -(-K)");
        assert_eq!(parse_expr("D - (F - K)").unwrap().to_string(), "D - (F - K)");
        assert_eq!(parse_expr("D*(F*K)").unwrap().to_string(), "D*(F*K)");
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let sym = proptest::sample::select(Symbol::ALL.to_vec());
        let leaf = prop_oneof![
            (0i64..50).prop_map(Expr::Int),
            (proptest::option::of(0i64..50), sym).prop_map(|(c, s)| Expr::Class(c, s)),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|x| Expr::Neg(Box::new(x))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            ]
        })
    }

    fn arb_statement() -> impl Strategy<Value = Statement> {
        let op = proptest::sample::select(Op::ALL.to_vec());
        let ctx = prop_oneof![(2u32..6).prop_map(Context::En), (0i64..6).prop_map(Context::Fe)];
        (op, ctx, proptest::collection::vec(arb_expr(), 1..4)).prop_map(|(op, ctx, args)| Statement { op, ctx, args })
    }

    proptest! {
        #[test]
        fn parse_print_parse_is_identity(st in arb_statement()) {
            let printed = st.to_string();
            let back = parse_statement(&printed).unwrap();
            prop_assert_eq!(&back, &st);
            prop_assert_eq!(back.to_string(), printed);
        }

        #[test]
        fn whitespace_is_insignificant(st in arb_statement()) {
            let printed = st.to_string();
            let squeezed: String = printed.chars().filter(|c| *c != ' ').collect();
            // `F2` must not fuse with the keyword; keep the single separating space
            let squeezed = squeezed.replacen(st.op.keyword(), &format!("{} ", st.op.keyword()), 1);
            prop_assert_eq!(parse_statement(&squeezed).unwrap(), st);
        }

        #[test]
        fn pairing_matches_core_on_f_e(e in 0i64..5, a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9) {
            let src = format!("pair F{e}: {}, {}", lit(a, "C0", b, "L"), lit(c, "C0", d, "L"));
            let want = fe_pair(&FeClass::new(e, a, b), &FeClass::new(e, c, d)).unwrap();
            prop_assert_eq!(eval_source(&src).unwrap(), want);
        }

        #[test]
        fn chi_matches_core_on_e3(a in -9i64..9, b in -9i64..9) {
            let src = format!("chi E(3): {}", lit(a, "D", b, "F"));
            prop_assert_eq!(eval_source(&src).unwrap(), chi_en(3, a, b).unwrap());
        }

        #[test]
        fn triple_is_trilinear(x in (-5i64..5, -5i64..5), y in (-5i64..5, -5i64..5), z in (-5i64..5, -5i64..5)) {
            let src = format!("triple E(3): ({})*({})*({})", lit(x.0, "D", x.1, "F"), lit(y.0, "D", y.1, "F"), lit(z.0, "D", z.1, "F"));
            let cls = |p: (i64, i64)| EnClass::new(3, p.0, p.1);
            prop_assert_eq!(eval_source(&src).unwrap(), triple_product_e3(&cls(x), &cls(y), &cls(z)).unwrap());
        }
    }

    /// `aX + bY` in DSL syntax.
    fn lit(a: i64, x: &str, b: i64, y: &str) -> String {
        let head = if a < 0 { format!("-{}{x}", -a) } else { format!("{a}{x}") };
        if b < 0 {
            format!("{head} - {}{y}", -b)
        } else {
            format!("{head} + {b}{y}")
        }
    }
}
