//! Homogeneous forms over `Q(w)` in `x0, x1, x2`, projective points, affine
//! charts and local intersection multiplicities.

use std::collections::BTreeMap;
use std::fmt;

use crate::check::{timed, CheckResult};
use crate::error::{Error, Result};
use crate::exactfield::{Eis, Rat};

pub type Exp = [u32; 3];

/// Homogeneous polynomial; every stored exponent sums to `degree` and every
/// stored coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    degree: u32,
    terms: BTreeMap<Exp, Eis>,
}

impl Form {
    pub fn zero(degree: u32) -> Self {
        Form { degree, terms: BTreeMap::new() }
    }

    pub fn constant(c: Eis) -> Self {
        Form::monomial([0, 0, 0], c)
    }

    pub fn monomial(e: Exp, c: Eis) -> Self {
        let mut f = Form::zero(e.iter().sum());
        if !c.is_zero() {
            f.terms.insert(e, c);
        }
        f
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Form::monomial(e, Eis::one())
    }

    /// `l0*x0 + l1*x1 + l2*x2`.
    pub fn linear(l: &[Eis; 3]) -> Self {
        let mut f = Form::zero(1);
        for (i, c) in l.iter().enumerate() {
            f = f.add(&Form::var(i).scale(c)).expect("same degree");
        }
        f
    }

    /// Builds a form from arbitrary terms; fails unless they are homogeneous.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Exp, Eis)>) -> Result<Self> {
        let mut f = Form::zero(degree);
        for (e, c) in terms {
            let d = e.iter().sum();
            if d != degree {
                return Err(Error::DegreeMismatch(degree, d));
            }
            f.accumulate(e, &c);
        }
        Ok(f)
    }

    fn accumulate(&mut self, e: Exp, c: &Eis) {
        let slot = self.terms.entry(e).or_insert_with(Eis::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Eis)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exp) -> Eis {
        self.terms.get(e).cloned().unwrap_or_else(Eis::zero)
    }

    /// Term with the lex-largest exponent, i.e. the lex leading term for
    /// `x0 > x1 > x2`.
    pub fn leading(&self) -> Option<(&Exp, &Eis)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, rhs: &Form) -> Result<Form> {
        if self.degree != rhs.degree && !self.is_zero() && !rhs.is_zero() {
            return Err(Error::DegreeMismatch(self.degree, rhs.degree));
        }
        let mut out = if self.is_zero() { Form::zero(rhs.degree) } else { self.clone() };
        for (e, c) in &rhs.terms {
            out.accumulate(*e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Form) -> Result<Form> {
        self.add(&rhs.scale(&Eis::from(-1)))
    }

    pub fn mul(&self, rhs: &Form) -> Form {
        let mut out = Form::zero(self.degree + rhs.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.accumulate([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Eis) -> Form {
        let mut out = Form::zero(self.degree);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(*e, v * c);
        }
        out
    }

    /// Rescales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Form {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Applies a monomial substitution `x^e -> c * x^e'`.
    pub fn map_monomials(&self, f: impl Fn(&Exp) -> (Exp, Eis)) -> Form {
        let mut out = Form::zero(self.degree);
        for (e, c) in &self.terms {
            let (e2, k) = f(e);
            out.accumulate(e2, &(c * &k));
        }
        out
    }

    pub fn partial(&self, i: usize) -> Form {
        let mut out = Form::zero(self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = *e;
                e2[i] -= 1;
                out.accumulate(e2, &c.scale(&Rat::from(e[i] as i64)));
            }
        }
        out
    }

    pub fn evaluate(&self, p: &[Eis; 3]) -> Eis {
        let mut acc = Eis::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                t *= &p[i].pow(e[i]);
            }
            acc += &t;
        }
        acc
    }

    /// `true` iff `rhs = c * self` for some nonzero `c`.
    pub fn is_proportional(&self, rhs: &Form) -> bool {
        if self.is_zero() || rhs.is_zero() || self.degree != rhs.degree {
            return false;
        }
        let (e, a) = self.leading().expect("nonzero");
        let b = rhs.coeff(e);
        if b.is_zero() {
            return false;
        }
        self.scale(&b.checked_div(a).expect("nonzero")) == *rhs
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Point of `P^2`, normalised so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [Eis; 3],
}

impl ProjPoint {
    pub fn new(coords: [Eis; 3]) -> Result<Self> {
        let k = coords.iter().position(|c| !c.is_zero()).ok_or(Error::DivisionByZero)?;
        let inv = coords[k].inv()?;
        Ok(ProjPoint { coords: [&coords[0] * &inv, &coords[1] * &inv, &coords[2] * &inv] })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        ProjPoint::new([a.into(), b.into(), c.into()])
    }

    pub fn coords(&self) -> &[Eis; 3] {
        &self.coords
    }

    /// Intersection point of two distinct lines given by coefficient vectors.
    pub fn meet(l: &[Eis; 3], m: &[Eis; 3]) -> Result<Self> {
        ProjPoint::new([
            &(&l[1] * &m[2]) - &(&l[2] * &m[1]),
            &(&l[2] * &m[0]) - &(&l[0] * &m[2]),
            &(&l[0] * &m[1]) - &(&l[1] * &m[0]),
        ])
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Polynomial in the affine chart variables `(u, v)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Eis>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn term(i: u32, j: u32, c: Eis) -> Self {
        let mut p = BivarPoly::zero();
        p.accumulate((i, j), &c);
        p
    }

    fn accumulate(&mut self, e: (u32, u32), c: &Eis) {
        let slot = self.terms.entry(e).or_insert_with(Eis::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Eis {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Eis::zero)
    }

    pub fn constant_term(&self) -> Eis {
        self.coeff(0, 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn add(&self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.accumulate(*e, c);
        }
        out
    }

    pub fn sub(&self, rhs: &BivarPoly) -> BivarPoly {
        self.add(&rhs.scale(&Eis::from(-1)))
    }

    pub fn mul(&self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &rhs.terms {
                out.accumulate((i1 + i2, j1 + j2), &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Eis) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (e, v) in &self.terms {
            out.accumulate(*e, &(v * c));
        }
        out
    }

    fn shift_u(&self, k: u32) -> BivarPoly {
        BivarPoly { terms: self.terms.iter().map(|((i, j), c)| ((i + k, *j), c.clone())).collect() }
    }

    /// `p(u, 0)` as a map from `u`-degree to coefficient.
    fn on_u_axis(&self) -> BTreeMap<u32, Eis> {
        self.terms.iter().filter(|((_, j), _)| *j == 0).map(|((i, _), c)| (*i, c.clone())).collect()
    }

    /// Exact quotient by `v`; caller guarantees `p(u, 0) = 0`.
    fn div_v(&self) -> BivarPoly {
        BivarPoly { terms: self.terms.iter().map(|((i, j), c)| ((*i, j - 1), c.clone())).collect() }
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|((i, j), c)| format!("({c})*u^{i}*v^{j}")).collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

fn binomial_expand(c: &Eis, n: u32, var_is_u: bool) -> BivarPoly {
    // (c + t)^n with t = u or v
    let mut out = BivarPoly::zero();
    let mut binom = Rat::one();
    for k in 0..=n {
        let coeff = c.pow(n - k).scale(&binom);
        out = out.add(&if var_is_u { BivarPoly::term(k, 0, coeff) } else { BivarPoly::term(0, k, coeff) });
        binom = &(&binom * &Rat::from((n - k) as i64)) * &Rat::new(1, (k + 1) as i64).expect("k+1 > 0");
    }
    out
}

/// Restricts `f` to the chart `x_chart = 1`, translated so `center` is the
/// origin. The chart variables are the two remaining coordinates in
/// increasing index order.
pub fn dehomogenize(f: &Form, chart: usize, center: &ProjPoint) -> Result<BivarPoly> {
    let c = center.coords();
    if c[chart].is_zero() {
        return Err(Error::ChartCoordinateZero);
    }
    let inv = c[chart].inv()?;
    let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    let (iu, iv) = (others[0], others[1]);
    let cu = &c[iu] * &inv;
    let cv = &c[iv] * &inv;
    let mut out = BivarPoly::zero();
    for (e, coeff) in f.terms() {
        let pu = binomial_expand(&cu, e[iu], true);
        let pv = binomial_expand(&cv, e[iv], false);
        out = out.add(&pu.mul(&pv).scale(coeff));
    }
    Ok(out)
}

/// Local intersection number in `N ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => write!(f, "INFINITE"),
        }
    }
}

fn ord_and_lead(axis: &BTreeMap<u32, Eis>) -> (u32, u32, Eis) {
    let (lo, _) = axis.iter().next().expect("nonzero");
    let (hi, c) = axis.iter().next_back().expect("nonzero");
    (*lo, *hi, c.clone())
}

/// Intersection number at the origin of two affine curves.
///
/// Runs the axiomatic reduction on `f(u, 0)`, `g(u, 0)`. Every step preserves
/// the local number and each division by `v` adds at least 1, so when the
/// curves share no component through the origin the running total never
/// exceeds `bound`; passing it proves a common component.
pub fn fulton_affine(f: &BivarPoly, g: &BivarPoly, bound: u64) -> Multiplicity {
    let (mut f, mut g) = (f.clone(), g.clone());
    let mut total: u64 = 0;
    loop {
        if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
            return Multiplicity::Finite(total);
        }
        let fa = f.on_u_axis();
        let ga = g.on_u_axis();
        match (fa.is_empty(), ga.is_empty()) {
            (true, true) => return Multiplicity::Infinite,
            (false, true) => {
                total += ord_and_lead(&fa).0 as u64;
                g = g.div_v();
            }
            (true, false) => {
                total += ord_and_lead(&ga).0 as u64;
                f = f.div_v();
            }
            (false, false) => {
                let (_, r, fr) = ord_and_lead(&fa);
                let (_, s, gs) = ord_and_lead(&ga);
                if r > s {
                    std::mem::swap(&mut f, &mut g);
                    let factor = fr.checked_div(&gs).expect("nonzero");
                    g = g.sub(&f.shift_u(r - s).scale(&factor));
                } else {
                    let factor = gs.checked_div(&fr).expect("nonzero");
                    g = g.sub(&f.shift_u(s - r).scale(&factor));
                }
            }
        }
        if total > bound {
            return Multiplicity::Infinite;
        }
    }
}

/// Chart used for local computations at `p`: the largest index with a
/// nonzero coordinate.
pub fn chart_for(p: &ProjPoint) -> usize {
    (0..3).rev().find(|&i| !p.coords()[i].is_zero()).expect("point has a nonzero coordinate")
}

/// Local intersection multiplicity of `f` and `g` at `p`.
pub fn fulton_mult(f: &Form, g: &Form, p: &ProjPoint) -> Multiplicity {
    let chart = chart_for(p);
    let fa = dehomogenize(f, chart, p).expect("chart coordinate is nonzero");
    let ga = dehomogenize(g, chart, p).expect("chart coordinate is nonzero");
    fulton_affine(&fa, &ga, f.degree() as u64 * g.degree() as u64)
}

pub fn is_singular_at(f: &Form, p: &ProjPoint) -> Result<bool> {
    if !f.evaluate(p.coords()).is_zero() {
        return Err(Error::NotOnCurve);
    }
    Ok((0..3).all(|i| f.partial(i).evaluate(p.coords()).is_zero()))
}

/// Parses polynomials in `x0, x1, x2` over `Q(w)`.
///
/// Accepts `+ - * ^`, parentheses, integers, `w`, and juxtaposition as
/// multiplication, e.g. `(x0 + w^2*x1)(x0 + x1 + w x2)`.
pub fn parse_form(s: &str) -> Result<Form> {
    let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = FormParser { toks: &toks, pos: 0, src: s };
    let poly = p.sum()?;
    if p.pos != toks.len() {
        return Err(p.err());
    }
    let degree = poly.keys().map(|e| e.iter().sum()).next().unwrap_or(0);
    Form::from_terms(degree, poly)
}

type Sparse = BTreeMap<Exp, Eis>;

struct FormParser<'a> {
    toks: &'a [char],
    pos: usize,
    src: &'a str,
}

fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
            let slot = out.entry(e).or_insert_with(Eis::zero);
            *slot += &(c1 * c2);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn sparse_add(a: &mut Sparse, b: &Sparse, sign: i64) {
    for (e, c) in b {
        let slot = a.entry(*e).or_insert_with(Eis::zero);
        *slot += &c.scale(&Rat::from(sign));
    }
    a.retain(|_, c| !c.is_zero());
}

impl FormParser<'_> {
    fn err(&self) -> Error {
        Error::Parse { what: "form", input: format!("{} (at {})", self.src, self.pos) }
    }

    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Sparse> {
        let mut acc = Sparse::new();
        let mut sign = 1;
        if self.peek() == Some('-') {
            sign = -1;
            self.pos += 1;
        }
        loop {
            let t = self.product()?;
            sparse_add(&mut acc, &t, sign);
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<Sparse> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => self.pos += 1,
                Some(c) if c == '(' || c == 'x' || c == 'w' || c.is_ascii_digit() => {}
                _ => return Ok(acc),
            }
            let f = self.power()?;
            acc = sparse_mul(&acc, &f);
        }
    }

    fn power(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.number()?;
            let mut acc: Sparse = [([0, 0, 0], Eis::one())].into_iter().collect();
            for _ in 0..n {
                acc = sparse_mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.toks[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err())
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('w') => {
                self.pos += 1;
                Ok([([0, 0, 0], Eis::w())].into_iter().collect())
            }
            Some('x') => {
                self.pos += 1;
                let i = match self.peek() {
                    Some(d @ '0'..='2') => d as usize - '0' as usize,
                    _ => return Err(self.err()),
                };
                self.pos += 1;
                let mut e = [0; 3];
                e[i] = 1;
                Ok([(e, Eis::one())].into_iter().collect())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok([([0, 0, 0], Eis::from(n as i64))].into_iter().collect())
            }
            _ => Err(self.err()),
        }
    }
}

const SUITE: &str = "curves";

/// Reference evaluations, charts, multiplicities and singularity tests.
pub fn verify_curves() -> Vec<CheckResult> {
    let form = |s: &str| parse_form(s).expect("literal form parses");
    let pt = |a: i64, b: i64, c: i64| ProjPoint::from_ints(a, b, c).expect("nonzero point");
    let c10 = form("x0^3 + w*x1^3 + w^2*x2^3");
    let conic = form("x1*x2 - x0^2");
    let mut out = Vec::new();

    for (id, f, p, want) in [
        ("evaluate/triangle-vertex", form("x0*x1*x2"), pt(1, 0, 0), Eis::zero()),
        ("evaluate/fermat-base-point", form("x0^3 + x1^3 + x2^3"), pt(0, 1, -1), Eis::zero()),
        ("evaluate/c10-at-e0", c10.clone(), pt(1, 0, 0), Eis::one()),
    ] {
        out.push(timed(|| {
            CheckResult::equal(SUITE, id, "substitution of coordinates", &want, &f.evaluate(p.coords()))
        }));
    }

    let chart_checks: Vec<(&str, Form, usize, ProjPoint, BivarPoly)> = vec![
        ("dehomogenize/x0x1", form("x0*x1"), 2, pt(0, 0, 1), BivarPoly::term(1, 1, Eis::one())),
        (
            "dehomogenize/parabola",
            conic.clone(),
            2,
            pt(0, 0, 1),
            BivarPoly::term(0, 1, Eis::one()).sub(&BivarPoly::term(2, 0, Eis::one())),
        ),
    ];
    for (id, f, chart, p, want) in chart_checks {
        out.push(timed(|| {
            let got = dehomogenize(&f, chart, &p).map_or_else(|e| e.to_string(), |g| (g == want).to_string());
            CheckResult::equal(SUITE, id, "affine chart centred at the point", &"true".to_string(), &got)
        }));
    }
    out.push(timed(|| {
        let e0 = pt(1, 0, 0);
        let got = dehomogenize(&c10, 0, &e0).map_or_else(|e| e.to_string(), |g| g.constant_term().to_string());
        CheckResult::equal(
            SUITE,
            "dehomogenize/c10-constant",
            "constant term is the value at the centre",
            &c10.evaluate(e0.coords()).to_string(),
            &got,
        )
    }));
    out.push(timed(|| {
        let got = dehomogenize(&c10, 1, &pt(1, 0, 0)).map_or_else(|e| e.to_string(), |_| "ok".into());
        CheckResult::equal(
            SUITE,
            "dehomogenize/zero-chart",
            "chart coordinate must be nonzero",
            &Error::ChartCoordinateZero.to_string(),
            &got,
        )
    }));

    let t01 = form("(x0 + x1 + x2)(x0 + w*x1 + w^2*x2)(x0 + w^2*x1 + w*x2)");
    let mut mults = vec![
        ("fulton/transversal-lines", form("x0"), form("x1"), pt(0, 0, 1), 1),
        ("fulton/conic-tangent", conic.clone(), form("x1"), pt(0, 0, 1), 2),
    ];
    let t01_vertices = [
        pt(1, 1, 1),
        ProjPoint::new([Eis::one(), Eis::w(), Eis::w_pow(2)]).expect("nonzero"),
        ProjPoint::new([Eis::one(), Eis::w_pow(2), Eis::w()]).expect("nonzero"),
    ];
    for (k, v) in t01_vertices.into_iter().enumerate() {
        let id: &'static str = ["fulton/c10-t01-vertex0", "fulton/c10-t01-vertex1", "fulton/c10-t01-vertex2"][k];
        mults.push((id, c10.clone(), t01.clone(), v, 3));
    }
    for (id, f, g, p, want) in mults {
        out.push(timed(|| {
            CheckResult::equal(
                SUITE,
                id,
                "local intersection number",
                &Multiplicity::Finite(want),
                &fulton_mult(&f, &g, &p),
            )
        }));
    }

    for (id, f, p, want) in [
        ("singular/triangle-vertex", form("x0*x1*x2"), pt(1, 0, 0), true),
        ("singular/fermat-base-point", form("x0^3 + x1^3 + x2^3"), pt(0, 1, -1), false),
        ("singular/conic", conic.clone(), pt(0, 0, 1), false),
    ] {
        out.push(timed(|| {
            let got = is_singular_at(&f, &p).map_or_else(|e| e.to_string(), |b| b.to_string());
            CheckResult::equal(SUITE, id, "all partial derivatives vanish", &want.to_string(), &got)
        }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_suite_passes() {
        let rs = verify_curves();
        let bad: Vec<_> = rs.iter().filter(|r| !r.passed()).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
    use proptest::prelude::*;

    fn x(i: usize) -> Form {
        Form::var(i)
    }

    fn origin() -> ProjPoint {
        ProjPoint::from_ints(0, 0, 1).unwrap()
    }

    #[test]
    fn normalisation_of_points() {
        let p = ProjPoint::new([0.into(), Eis::from(2), Eis::w()]).unwrap();
        assert!(p.coords()[1].is_one());
        assert!(ProjPoint::from_ints(0, 0, 0).is_err());
    }

    #[test]
    fn dehomogenize_examples() {
        let f = x(0).mul(&x(1));
        assert_eq!(dehomogenize(&f, 2, &origin()).unwrap(), BivarPoly::term(1, 1, Eis::one()));
        let g = x(1).mul(&x(2)).sub(&x(0).mul(&x(0))).unwrap();
        let expect = BivarPoly::term(0, 1, Eis::one()).sub(&BivarPoly::term(2, 0, Eis::one()));
        assert_eq!(dehomogenize(&g, 2, &origin()).unwrap(), expect);
        assert_eq!(dehomogenize(&f, 0, &origin()), Err(Error::ChartCoordinateZero));
    }

    #[test]
    fn constant_term_is_value_in_chart_scaling() {
        let f = parse_form("x0^3 + w*x1^3 + w^2*x2^3").unwrap();
        let p = ProjPoint::from_ints(1, 2, 3).unwrap();
        let q = ProjPoint::new([Rat::new(1, 3).unwrap().into(), Rat::new(2, 3).unwrap().into(), Eis::one()]).unwrap();
        let expect = f.evaluate(&[Rat::new(1, 3).unwrap().into(), Rat::new(2, 3).unwrap().into(), Eis::one()]);
        assert_eq!(p, q);
        assert_eq!(dehomogenize(&f, 2, &p).unwrap().constant_term(), expect);
    }

    #[test]
    fn textbook_multiplicities() {
        let o = origin();
        // node vs transverse line
        let cusp = x(1).mul(&x(1)).mul(&x(2)).sub(&x(0).mul(&x(0)).mul(&x(0))).unwrap();
        assert_eq!(fulton_mult(&x(0), &x(1), &o), Multiplicity::Finite(1));
        // y^2 = x^3 against y = 0: multiplicity 3
        assert_eq!(fulton_mult(&cusp, &x(1), &o), Multiplicity::Finite(3));
        // against x = 0: multiplicity 2
        assert_eq!(fulton_mult(&cusp, &x(0), &o), Multiplicity::Finite(2));
        // conic y z = x^2 with its tangent y = 0
        let conic = x(1).mul(&x(2)).sub(&x(0).mul(&x(0))).unwrap();
        assert_eq!(fulton_mult(&conic, &x(1), &o), Multiplicity::Finite(2));
        // point off a curve
        let p = ProjPoint::from_ints(1, 1, 1).unwrap();
        assert_eq!(fulton_mult(&x(0), &x(1), &p), Multiplicity::Finite(0));
    }

    #[test]
    fn common_component_is_infinite() {
        let o = origin();
        let l = x(0).sub(&x(1)).unwrap();
        let f = l.mul(&x(0).add(&x(1)).unwrap());
        assert_eq!(fulton_mult(&l, &f, &o), Multiplicity::Infinite);
        let g = x(1).mul(&x(0));
        assert_eq!(fulton_mult(&x(1), &g, &o), Multiplicity::Infinite);
        assert_eq!(fulton_mult(&f, &f, &o), Multiplicity::Infinite);
        // shared component not through the point gives a finite number
        let p = ProjPoint::from_ints(1, -1, 0).unwrap();
        assert_eq!(fulton_mult(&l.mul(&x(2)), &l.mul(&x(0)), &p), Multiplicity::Finite(0));
    }

    #[test]
    fn singularity_detection() {
        let node = x(1).mul(&x(1)).mul(&x(2)).sub(&x(0).mul(&x(0)).mul(&x(0).add(&x(2)).unwrap())).unwrap();
        assert!(is_singular_at(&node, &origin()).unwrap());
        let smooth = x(1).mul(&x(2)).sub(&x(0).mul(&x(0))).unwrap();
        assert!(!is_singular_at(&smooth, &origin()).unwrap());
        let off = ProjPoint::from_ints(1, 0, 0).unwrap();
        assert_eq!(is_singular_at(&smooth, &off), Err(Error::NotOnCurve));
    }

    #[test]
    fn parser_accepts_products_of_lines() {
        let t = parse_form("(x0 + w^2*x1 + w^2*x2)(x0 + x1 + w*x2)").unwrap();
        let l1 = Form::linear(&[Eis::one(), Eis::w_pow(2), Eis::w_pow(2)]);
        let l2 = Form::linear(&[Eis::one(), Eis::one(), Eis::w()]);
        assert_eq!(t, l1.mul(&l2));
        assert!(parse_form("x0 + x1^2").is_err());
        assert!(parse_form("x3").is_err());
    }

    fn small_linear() -> impl Strategy<Value = Form> {
        prop::array::uniform3((-2i64..3, -1i64..2)).prop_map(|c| {
            Form::linear(&[
                Eis::from_ints(c[0].0, c[0].1),
                Eis::from_ints(c[1].0, c[1].1),
                Eis::from_ints(c[2].0, c[2].1),
            ])
        })
    }

    fn curve_through_origin() -> impl Strategy<Value = Form> {
        // product of a line through [0:0:1] and an arbitrary line
        (prop::array::uniform2(-2i64..3), small_linear())
            .prop_map(|(a, l)| Form::linear(&[a[0].into(), a[1].into(), Eis::zero()]).mul(&l))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn multiplicity_is_symmetric(f in curve_through_origin(), g in curve_through_origin()) {
            let o = origin();
            prop_assert_eq!(fulton_mult(&f, &g, &o), fulton_mult(&g, &f, &o));
        }

        #[test]
        fn multiplicity_is_additive(f in curve_through_origin(), g in small_linear(), h in small_linear()) {
            let o = origin();
            let gh = g.mul(&h);
            let lhs = fulton_mult(&f, &gh, &o);
            let rhs = match (fulton_mult(&f, &g, &o), fulton_mult(&f, &h, &o)) {
                (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
                _ => Multiplicity::Infinite,
            };
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn adding_multiples_preserves_multiplicity(f in curve_through_origin(), g in curve_through_origin(), c in (-2i64..3, -1i64..2)) {
            let o = origin();
            let g2 = g.add(&f.scale(&Eis::from_ints(c.0, c.1))).unwrap();
            prop_assert_eq!(fulton_mult(&f, &g, &o), fulton_mult(&f, &g2, &o));
        }
    }
}
