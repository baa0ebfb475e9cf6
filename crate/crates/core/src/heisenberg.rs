//! Heisenberg group `H_3` acting on plane cubics through the Schrödinger
//! representation, its eigen-cubics, and the four triangles of the Hesse
//! pencil.
//!
//! `sigma(x_i) = x_{i-1}`, `tau(x_i) = w^{-i} x_i`, central `eps(x_i) = w x_i`,
//! indices mod 3. On cubics `eps` acts trivially, so `sigma` and `tau`
//! commute and a character `(a, b)` means `sigma = w^a`, `tau = w^b`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::check::{timed, CheckResult};
use crate::error::{Error, Result};
use crate::exactfield::{Eis, Rat};
use crate::fixtures::Table;
use crate::planecurves::{fulton_mult, parse_form, Exp, Form, Multiplicity, ProjPoint};

/// Element of `(Z/3)^2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Character {
    pub a: u8,
    pub b: u8,
}

impl Character {
    pub fn new(a: i64, b: i64) -> Self {
        Character { a: a.rem_euclid(3) as u8, b: b.rem_euclid(3) as u8 }
    }

    pub fn all() -> impl Iterator<Item = Character> {
        (0..9).map(|k| Character::new(k / 3, k % 3))
    }

    pub fn nontrivial() -> impl Iterator<Item = Character> {
        Character::all().filter(|c| !c.is_trivial())
    }

    pub fn is_trivial(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn neg(self) -> Self {
        Character::new(-(self.a as i64), -(self.b as i64))
    }

    pub fn add(self, o: Character) -> Self {
        Character::new((self.a + o.a) as i64, (self.b + o.b) as i64)
    }

    pub fn sub(self, o: Character) -> Self {
        self.add(o.neg())
    }

    /// `true` iff `self = ±o`.
    pub fn same_class(self, o: Character) -> bool {
        self == o || self == o.neg()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl FromStr for Character {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "character", input: s.to_string() };
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        Ok(Character::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Sigma,
    Tau,
    Central,
}

pub fn act(g: Generator, f: &Form) -> Form {
    let d = f.degree() as i64;
    f.map_monomials(|e| match g {
        // x0^e0 x1^e1 x2^e2 -> x2^e0 x0^e1 x1^e2
        Generator::Sigma => ([e[1], e[2], e[0]], Eis::one()),
        Generator::Tau => (*e, Eis::w_pow(-(e[1] as i64 + 2 * e[2] as i64))),
        Generator::Central => (*e, Eis::w_pow(d)),
    })
}

fn act_pow(g: Generator, k: u8, f: &Form) -> Form {
    (0..k).fold(f.clone(), |acc, _| act(g, &acc))
}

/// The character by which `sigma`, `tau` act on `f`, if `f` is an eigenform.
pub fn eigen_character(f: &Form) -> Option<Character> {
    if f.is_zero() {
        return None;
    }
    Character::all().find(|c| {
        act(Generator::Sigma, f) == f.scale(&Eis::w_pow(c.a as i64))
            && act(Generator::Tau, f) == f.scale(&Eis::w_pow(c.b as i64))
    })
}

/// Projector onto the `(a, b)`-isotypic part:
/// `(1/9) sum_{i,j} w^{-(a i + b j)} sigma^i tau^j`.
pub fn project(f: &Form, ch: Character) -> Form {
    let mut acc = Form::zero(f.degree());
    for i in 0..3u8 {
        for j in 0..3u8 {
            let g = act_pow(Generator::Sigma, i, &act_pow(Generator::Tau, j, f));
            let weight = Eis::w_pow(-((ch.a * i + ch.b * j) as i64));
            acc = acc.add(&g.scale(&weight)).expect("same degree");
        }
    }
    acc.scale(&Eis::from(Rat::new(1, 9).expect("nonzero")))
}

pub fn monomials(degree: u32) -> Vec<Exp> {
    let mut out = Vec::new();
    for i in (0..=degree).rev() {
        for j in (0..=degree - i).rev() {
            out.push([i, j, degree - i - j]);
        }
    }
    out
}

/// Reduced row echelon basis of the span of `rows`.
fn row_reduce(mut rows: Vec<Vec<Eis>>) -> Vec<Vec<Eis>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        rows[rank] = rows[rank].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let k = rows[r][col].clone();
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &(y * &k);
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Basis of the span of `forms` (all of degree `degree`), in echelon form
/// with respect to lex-descending monomials.
pub fn span_basis(forms: &[Form], degree: u32) -> Vec<Form> {
    let mons = monomials(degree);
    let rows = forms.iter().map(|f| mons.iter().map(|m| f.coeff(m)).collect()).collect();
    row_reduce(rows)
        .into_iter()
        .map(|row| Form::from_terms(degree, mons.iter().copied().zip(row)).expect("homogeneous"))
        .collect()
}

/// Splits cubic forms into the nine character spaces.
///
/// Each space is spanned by projections of monomials; bases are echelon
/// forms, so every generator is monic in its lex-leading monomial.
pub fn decompose_degree3() -> BTreeMap<Character, Vec<Form>> {
    let mons: Vec<Form> = monomials(3).into_iter().map(|e| Form::monomial(e, Eis::one())).collect();
    Character::all()
        .map(|ch| {
            let images: Vec<Form> = mons.iter().map(|m| project(m, ch)).filter(|f| !f.is_zero()).collect();
            (ch, span_basis(&images, 3))
        })
        .collect()
}

/// The two generators of the invariant pencil.
pub fn hesse_pencil() -> [Form; 2] {
    let cubes = Form::from_terms(3, [([3, 0, 0], Eis::one()), ([0, 3, 0], Eis::one()), ([0, 0, 3], Eis::one())])
        .expect("homogeneous");
    [cubes, Form::monomial([1, 1, 1], Eis::one())]
}

/// A singular member of the Hesse pencil: three lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub label: Character,
    pub lines: [[Eis; 3]; 3],
    pub cubic: Form,
}

impl Triangle {
    pub fn new(label: Character, lines: [[Eis; 3]; 3]) -> Self {
        let cubic = lines.iter().map(Form::linear).fold(Form::constant(Eis::one()), |acc, l| acc.mul(&l));
        Triangle { label, lines, cubic }
    }

    /// Pairwise meets of the edges, in the order (0,1), (0,2), (1,2).
    pub fn vertices(&self) -> [ProjPoint; 3] {
        let m = |i: usize, j: usize| ProjPoint::meet(&self.lines[i], &self.lines[j]).expect("distinct edges");
        [m(0, 1), m(0, 2), m(1, 2)]
    }
}

/// Eigen-cubics and triangles as transcribed.
#[derive(Clone, Debug)]
pub struct HesseData {
    pub cubics: BTreeMap<Character, Form>,
    pub triangles: Vec<Triangle>,
}

fn linear_coeffs(f: &Form) -> Result<[Eis; 3]> {
    if f.degree() != 1 {
        return Err(Error::DegreeMismatch(1, f.degree()));
    }
    Ok([f.coeff(&[1, 0, 0]), f.coeff(&[0, 1, 0]), f.coeff(&[0, 0, 1])])
}

impl HesseData {
    pub fn from_table(t: &Table) -> Result<Self> {
        let mut cubics = BTreeMap::new();
        let mut triangles = Vec::new();
        for e in &t.entries {
            if let Some(ch) = e.label.strip_prefix('C') {
                cubics.insert(ch.parse()?, parse_form(&e.value)?);
            } else if let Some(ch) = e.label.strip_prefix('T') {
                let lines: Vec<[Eis; 3]> =
                    e.value.split(';').map(|s| parse_form(s).and_then(|f| linear_coeffs(&f))).collect::<Result<_>>()?;
                let lines: [[Eis; 3]; 3] =
                    lines.try_into().map_err(|_| Error::Fixture(format!("{}: expected three lines", e.label)))?;
                triangles.push(Triangle::new(ch.parse()?, lines));
            } else {
                return Err(Error::Fixture(format!("unknown Hesse label {}", e.label)));
            }
        }
        Ok(HesseData { cubics, triangles })
    }

    /// Triangle labelled `±ch`.
    pub fn triangle_for(&self, ch: Character) -> Option<&Triangle> {
        self.triangles.iter().find(|t| t.label.same_class(ch))
    }
}

/// The nine common zeros of `x0^3 + x1^3 + x2^3` and `x0 x1 x2`.
///
/// A common zero has a vanishing coordinate; the other two then satisfy
/// `x_i^3 = -x_j^3`, so `x_j = -w^k x_i`.
pub fn hesse_base_points() -> Vec<ProjPoint> {
    let [cubes, xyz] = hesse_pencil();
    let mut pts = Vec::new();
    for zero in 0..3 {
        for k in 0..3 {
            let mut c = [Eis::one(), Eis::one(), Eis::one()];
            c[zero] = Eis::zero();
            let j = (0..3).rev().find(|&i| i != zero).expect("two free coordinates");
            c[j] = -Eis::w_pow(k);
            let p = ProjPoint::new(c).expect("nonzero point");
            if cubes.evaluate(p.coords()).is_zero() && xyz.evaluate(p.coords()).is_zero() && !pts.contains(&p) {
                pts.push(p);
            }
        }
    }
    pts.sort();
    pts
}

fn mults_at(f: &Form, g: &Form, t: &Triangle) -> Vec<Multiplicity> {
    t.vertices().iter().map(|v| fulton_mult(f, g, v)).collect()
}

fn fmt_mults(m: &[Multiplicity]) -> String {
    m.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

const SUITE: &str = "heisenberg";

/// Eigenspace dimensions of the degree-3 forms, and agreement of each
/// one-dimensional eigenspace with the tabulated cubic up to scalar.
pub fn verify_decomposition(d: &HesseData) -> Vec<CheckResult> {
    let dec = decompose_degree3();
    let mut out = Vec::new();
    for (ch, basis) in &dec {
        out.push(timed(|| {
            let id = format!("eigenspace/{ch}");
            if ch.is_trivial() {
                let same = span_basis(basis, 3) == span_basis(&hesse_pencil(), 3);
                let actual =
                    format!("dim {}, {}", basis.len(), if same { "the Hesse pencil" } else { "not the Hesse pencil" });
                CheckResult::equal(
                    SUITE,
                    id,
                    "the invariant cubics are the Hesse pencil",
                    &"dim 2, the Hesse pencil".to_string(),
                    &actual,
                )
            } else {
                let matches = d.cubics.get(ch).is_some_and(|c| basis.len() == 1 && basis[0].is_proportional(c));
                let actual =
                    format!("dim {}, {}", basis.len(), if matches { "proportional to C" } else { "differs from C" });
                CheckResult::equal(
                    SUITE,
                    id,
                    "each nontrivial character has a unique cubic C(a,b)",
                    &"dim 1, proportional to C".to_string(),
                    &actual,
                )
            }
        }));
    }
    out
}

/// For each eigen-cubic `C(a,b)` and triangle `T(i,j)`: `C(a,b)` passes
/// through the vertices of `T(i,j)` iff `(i,j) != ±(a,b)`, and then meets
/// the triangle with multiplicity 3 at each vertex.
pub fn verify_cubic_triangle_contacts(d: &HesseData) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (ch, c) in &d.cubics {
        for t in &d.triangles {
            out.push(timed(|| {
                let contained = !t.label.same_class(*ch);
                let on: Vec<bool> = t.vertices().iter().map(|v| c.evaluate(v.coords()).is_zero()).collect();
                let actual_contained = on.iter().all(|b| *b);
                let partial = on.iter().any(|b| *b) && !actual_contained;
                let expected =
                    if contained { "contains vertices; mult 3,3,3".to_string() } else { "misses vertices".to_string() };
                let actual = if partial {
                    format!("passes through {} of 3 vertices", on.iter().filter(|b| **b).count())
                } else if actual_contained {
                    format!("contains vertices; mult {}", fmt_mults(&mults_at(c, &t.cubic, t)))
                } else {
                    "misses vertices".to_string()
                };
                CheckResult::equal(
                    SUITE,
                    format!("cubic-triangle/C{ch}/T{}", t.label),
                    "C(a,b) contains the vertices of T(i,j) iff (i,j) != ±(a,b), each with multiplicity 3",
                    &expected,
                    &actual,
                )
            }));
        }
    }
    out
}

/// Expected local multiplicities of `C(c1) . C(c2)` at the vertices of each
/// triangle.
pub fn expected_pair_profile(c1: Character, c2: Character, tri: &Triangle) -> u64 {
    if c1 == c2.neg() {
        if tri.label.same_class(c1) {
            0
        } else {
            1
        }
    } else if tri.label.same_class(c1.add(c2)) {
        1
    } else if tri.label.same_class(c1.sub(c2)) {
        2
    } else {
        0
    }
}

/// For every unordered pair of distinct eigen-cubics, the intersection is
/// supported on triangle vertices with the multiplicities of
/// [`expected_pair_profile`], and totals 9.
pub fn verify_cubic_pair_intersections(d: &HesseData) -> Vec<CheckResult> {
    let chars: Vec<Character> = d.cubics.keys().copied().collect();
    let mut out = Vec::new();
    for (i, c1) in chars.iter().enumerate() {
        for c2 in &chars[i + 1..] {
            out.push(timed(|| {
                let (f, g) = (&d.cubics[c1], &d.cubics[c2]);
                let mut exp_parts = Vec::new();
                let mut act_parts = Vec::new();
                let mut total = 0u64;
                let mut infinite = false;
                for t in &d.triangles {
                    let e = expected_pair_profile(*c1, *c2, t);
                    exp_parts.push(format!("T{}:{e},{e},{e}", t.label));
                    let m = mults_at(f, g, t);
                    for x in &m {
                        match x {
                            Multiplicity::Finite(n) => total += n,
                            Multiplicity::Infinite => infinite = true,
                        }
                    }
                    act_parts.push(format!("T{}:{}", t.label, fmt_mults(&m)));
                }
                let expected = format!("{}; total 9", exp_parts.join(" "));
                let actual = if infinite {
                    format!("{}; total INFINITE", act_parts.join(" "))
                } else {
                    format!("{}; total {total}", act_parts.join(" "))
                };
                CheckResult::equal(
                    SUITE,
                    format!("cubic-pair/C{c1}xC{c2}"),
                    "two eigen-cubics meet only at triangle vertices: simply on T(±(c1+c2)), doubly on T(±(c1-c2)); opposite characters meet simply on the three other triangles",
                    &expected,
                    &actual,
                )
            }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Fixtures;

    fn data() -> HesseData {
        HesseData::from_table(&Fixtures::embedded().hesse).unwrap()
    }

    #[test]
    fn group_relations_on_cubics() {
        let f = parse_form("x0^2*x1 + 2*x1*x2^2 + w*x0*x1*x2 + x2^3").unwrap();
        let s3 = act_pow(Generator::Sigma, 3, &f);
        let t3 = act_pow(Generator::Tau, 3, &f);
        assert_eq!(s3, f);
        assert_eq!(t3, f);
        assert_eq!(act(Generator::Central, &f), f);
        let st = act(Generator::Sigma, &act(Generator::Tau, &f));
        let ts = act(Generator::Tau, &act(Generator::Sigma, &f));
        assert_eq!(st, ts);
    }

    #[test]
    fn sigma_and_tau_do_not_commute_on_lines() {
        let x0 = Form::var(0);
        let st = act(Generator::Sigma, &act(Generator::Tau, &x0));
        let ts = act(Generator::Tau, &act(Generator::Sigma, &x0));
        assert!(st.is_proportional(&ts));
        assert_ne!(st, ts);
    }

    #[test]
    fn projectors_are_idempotent_and_complete() {
        let f = parse_form("x0^3 + 3*x0*x1*x2 + w*x1^2*x2 - x2^2*x0").unwrap();
        let mut sum = Form::zero(3);
        for ch in Character::all() {
            let p = project(&f, ch);
            assert_eq!(project(&p, ch), p);
            if !p.is_zero() {
                assert_eq!(eigen_character(&p), Some(ch));
            }
            sum = sum.add(&p).unwrap();
        }
        assert_eq!(sum, f);
    }

    #[test]
    fn decomposition_dimensions() {
        let dec = decompose_degree3();
        for (ch, basis) in &dec {
            let want = if ch.is_trivial() { 2 } else { 1 };
            assert_eq!(basis.len(), want, "{ch}");
        }
        let inv = &dec[&Character::new(0, 0)];
        let pencil = hesse_pencil();
        assert_eq!(span_basis(inv, 3), span_basis(&pencil, 3));
    }

    #[test]
    fn fixture_cubics_are_the_eigen_cubics() {
        let d = data();
        let dec = decompose_degree3();
        assert_eq!(d.cubics.len(), 8);
        for (ch, c) in &d.cubics {
            assert_eq!(eigen_character(c), Some(*ch));
            assert!(dec[ch][0].is_proportional(c), "{ch}");
        }
    }

    #[test]
    fn triangles_are_singular_pencil_members() {
        let d = data();
        let pencil = span_basis(&hesse_pencil(), 3);
        for t in &d.triangles {
            let mut with = pencil.clone();
            with.push(t.cubic.clone());
            assert_eq!(span_basis(&with, 3).len(), 2, "T{}", t.label);
        }
    }

    #[test]
    fn base_points_lie_three_on_each_edge() {
        let pts = hesse_base_points();
        assert_eq!(pts.len(), 9);
        for t in data().triangles {
            for l in &t.lines {
                let on = pts.iter().filter(|p| Form::linear(l).evaluate(p.coords()).is_zero()).count();
                assert_eq!(on, 3);
            }
        }
    }

    #[test]
    fn character_parsing() {
        assert_eq!("(1,2)".parse::<Character>().unwrap(), Character::new(1, 2));
        assert_eq!(Character::new(1, 2).neg(), Character::new(2, 1));
        assert!("1,2".parse::<Character>().is_err());
    }

    #[test]
    fn pair_profile_sums_to_nine() {
        let d = data();
        let chars: Vec<_> = Character::nontrivial().collect();
        for c1 in &chars {
            for c2 in &chars {
                if c1 != c2 {
                    let s: u64 = d.triangles.iter().map(|t| 3 * expected_pair_profile(*c1, *c2, t)).sum();
                    assert_eq!(s, 9);
                }
            }
        }
    }
}
