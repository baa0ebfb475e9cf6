//! Numerical intersection theory: the ring of `E(n)` on classes `aD + bF`,
//! the ruled surface `E(2)` on classes `ah + bf`, splittings of a
//! reducible paracanonical curve, and integer Gram lattices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::check::{timed, CheckResult};
use crate::error::{Error, Result};
use crate::exactfield::Rat;
use crate::fixtures::Table;

/// `chi(aD + bF) = (a + nb) (a+1) ... (a+n-1) / n!` on `E(n)`.
pub fn chi_en(n: u32, a: i64, b: i64) -> Result<i64> {
    assert!(n >= 2, "E(n) needs n >= 2");
    let (ra, n) = (Rat::from(a), n as i64);
    let mut num = &ra + &(&Rat::from(n) * &Rat::from(b));
    let mut fact = Rat::one();
    for i in 1..n {
        num = &num * &(&ra + &Rat::from(i));
        fact = &fact * &Rat::from(i + 1);
    }
    let v = num.checked_div(&fact)?;
    v.to_i64().filter(|_| v.is_integer()).ok_or_else(|| Error::NonInteger(format!("chi_E({n})({a}D + {b}F) = {v}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CohomologyCase {
    OnlyH0,
    OnlyH1,
    OnlyHn1,
    OnlyHn,
    AllVanish,
    TorsionDependent,
}

impl fmt::Display for CohomologyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CohomologyCase::OnlyH0 => "ONLY_H0",
            CohomologyCase::OnlyH1 => "ONLY_H1",
            CohomologyCase::OnlyHn1 => "ONLY_Hn1",
            CohomologyCase::OnlyHn => "ONLY_Hn",
            CohomologyCase::AllVanish => "ALL_VANISH",
            CohomologyCase::TorsionDependent => "TORSION_DEPENDENT",
        })
    }
}

/// Which cohomology of a line bundle algebraically equivalent to `aD + bF`
/// survives. The vanishing range `-n < a < 0` is tested first.
pub fn cohomology_case(n: u32, a: i64, b: i64) -> CohomologyCase {
    assert!(n >= 2, "E(n) needs n >= 2");
    let n = n as i64;
    let s = a + n * b;
    if -n < a && a < 0 {
        CohomologyCase::AllVanish
    } else if s == 0 {
        CohomologyCase::TorsionDependent
    } else if a >= 0 {
        if s > 0 {
            CohomologyCase::OnlyH0
        } else {
            CohomologyCase::OnlyH1
        }
    } else if s > 0 {
        CohomologyCase::OnlyHn1
    } else {
        CohomologyCase::OnlyHn
    }
}

/// `aD + bF` on `E(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EnClass {
    pub n: u32,
    pub a: i64,
    pub b: i64,
}

impl EnClass {
    pub fn new(n: u32, a: i64, b: i64) -> Self {
        EnClass { n, a, b }
    }

    pub fn canonical(n: u32) -> Self {
        EnClass::new(n, -(n as i64), 1)
    }

    pub fn chi(&self) -> Result<i64> {
        chi_en(self.n, self.a, self.b)
    }
}

impl fmt::Display for EnClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}D{:+}F", self.a, self.b)
    }
}

/// Triple product on `E(3)` with `D^3 = D^2 F = 1` and `F^2 = 0`.
pub fn triple_product_e3(c1: &EnClass, c2: &EnClass, c3: &EnClass) -> Result<i64> {
    for c in [c1, c2, c3] {
        if c.n != 3 {
            return Err(Error::WrongDimension { expected: 3, got: c.n });
        }
    }
    let ddd = c1.a * c2.a * c3.a;
    let ddf = c1.a * c2.a * c3.b + c1.a * c2.b * c3.a + c1.b * c2.a * c3.a;
    Ok(ddd + ddf)
}

/// A curve in `E(3)` known through its degrees on `D` and `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveNumbers {
    pub dot_d: i64,
    pub dot_f: i64,
    pub label: String,
}

impl CurveNumbers {
    pub fn new(label: &str, dot_d: i64, dot_f: i64) -> Self {
        CurveNumbers { dot_d, dot_f, label: label.to_string() }
    }
}

pub fn pair_curve_divisor(c: &CurveNumbers, d: &EnClass) -> Result<i64> {
    if d.n != 3 {
        return Err(Error::WrongDimension { expected: 3, got: d.n });
    }
    Ok(d.a * c.dot_d + d.b * c.dot_f)
}

/// `ah + bf` on `E(2)`, with `h^2 = hf = 1`, `f^2 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct E2Class {
    pub h: i64,
    pub f: i64,
}

impl E2Class {
    pub const fn new(h: i64, f: i64) -> Self {
        E2Class { h, f }
    }

    pub const fn canonical() -> Self {
        E2Class::new(-2, 1)
    }
}

impl fmt::Display for E2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.h, self.f) {
            (0, b) => write!(f, "{b}f"),
            (a, 0) => write!(f, "{a}h"),
            (a, b) => write!(f, "{a}h{b:+}f"),
        }
    }
}

/// Reads sums such as `4h-2f`, `h`, `-f + 3h`.
impl FromStr for E2Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "E(2) class", input: s.to_string() };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = E2Class::new(0, 0);
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let sign = match rest.as_bytes()[0] {
                b'-' => {
                    rest = &rest[1..];
                    -1
                }
                b'+' => {
                    rest = &rest[1..];
                    1
                }
                _ => 1,
            };
            let digits = rest.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?;
            let coef: i64 = if digits == 0 { 1 } else { rest[..digits].parse().map_err(|_| bad())? };
            match &rest[digits..digits + 1] {
                "h" => out.h += sign * coef,
                "f" => out.f += sign * coef,
                _ => return Err(bad()),
            }
            rest = &rest[digits + 1..];
        }
        Ok(out)
    }
}

pub fn pair_e2(c1: &E2Class, c2: &E2Class) -> i64 {
    c1.h * c2.h + c1.h * c2.f + c1.f * c2.h
}

/// Arithmetic genus `1 + (C^2 + CK)/2`.
pub fn genus_e2(c: &E2Class) -> i64 {
    let k = E2Class::canonical();
    1 + (pair_e2(c, c) + pair_e2(c, &k)) / 2
}

/// One irreducible component of a reducible paracanonical curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub label: String,
    pub self_int: i64,
    pub k_dot: i64,
}

impl Component {
    pub fn arithmetic_genus(&self) -> i64 {
        1 + (self.self_int + self.k_dot) / 2
    }
}

/// A splitting `C = A_1 + ... + A_r` with `C` numerically canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCase {
    pub name: String,
    pub components: Vec<Component>,
    /// `pairs[i][j] = A_i A_j` for `i != j`; the diagonal holds `A_i^2`.
    pub pairs: Vec<Vec<i64>>,
}

impl SplitCase {
    pub fn total_square(&self) -> i64 {
        self.pairs.iter().flatten().sum()
    }
}

impl fmt::Display for SplitCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.name)?;
        for c in &self.components {
            write!(f, " {}^2={},K{}={}", c.label, c.self_int, c.label, c.k_dot)?;
        }
        for i in 0..self.components.len() {
            for j in i + 1..self.components.len() {
                write!(f, " {}{}={}", self.components[i].label, self.components[j].label, self.pairs[i][j])?;
            }
        }
        Ok(())
    }
}

/// `K^2` of the surfaces with ample canonical class considered here.
pub const K_SQUARED: i64 = 3;

/// Default search window for `A_i^2`, from Hodge index and parity.
pub const SPLIT_BOUND: (i64, i64) = (-12, 4);

fn admissible_self_ints(k: i64, bound: (i64, i64)) -> Vec<i64> {
    (bound.0..=bound.1)
        .filter(|s| K_SQUARED * s <= k * k)
        .filter(|s| (s + k).rem_euclid(2) == 0)
        .filter(|s| 1 + (s + k) / 2 >= 0)
        // a rational component lies in an Albanese fibre: a line with A^2 = -3, KA = 1
        .filter(|s| 1 + (s + k) / 2 > 0 || (k == 1 && *s == -3))
        .collect()
}

fn is_rational(k: i64, s: i64) -> bool {
    1 + (s + k) / 2 == 0
}

/// All numerical types of reduced reducible curves `C ≡ K`.
///
/// Components have `KA_i >= 1` summing to `K^2`, satisfy Hodge index
/// `K^2 A_i^2 <= (K A_i)^2`, have even `A_i^2 + K A_i` and `p_a >= 0`;
/// at most one is rational. Pairwise products solve `K A_i = C A_i` and must
/// be nonnegative integers.
pub fn enumerate_splittings(bound: (i64, i64)) -> Vec<SplitCase> {
    let mut out = Vec::new();
    // two components: KA = 2, KB = 1
    for sa in admissible_self_ints(2, bound) {
        for sb in admissible_self_ints(1, bound) {
            if is_rational(2, sa) && is_rational(1, sb) {
                continue;
            }
            let (x, y) = (2 - sa, 1 - sb);
            if x != y || x < 0 {
                continue;
            }
            let comps = vec![
                Component { label: "A".into(), self_int: sa, k_dot: 2 },
                Component { label: "B".into(), self_int: sb, k_dot: 1 },
            ];
            let name = if sb == -3 { "1a" } else { "1b" };
            out.push(SplitCase { name: name.into(), components: comps, pairs: vec![vec![sa, x], vec![x, sb]] });
        }
    }
    // three components, all with KA_i = 1; s1 >= s2 >= s3 up to relabelling
    let s = admissible_self_ints(1, bound);
    for (i, &s1) in s.iter().enumerate().rev() {
        for (j, &s2) in s[..=i].iter().enumerate().rev() {
            for &s3 in s[..=j].iter().rev() {
                let rational = [s1, s2, s3].iter().filter(|&&v| is_rational(1, v)).count();
                if rational > 1 {
                    continue;
                }
                let r = [1 - s1, 1 - s2, 1 - s3];
                let twice = [r[0] + r[1] - r[2], r[0] + r[2] - r[1], r[1] + r[2] - r[0]];
                if twice.iter().any(|v| v % 2 != 0 || *v < 0) {
                    continue;
                }
                let (x12, x13, x23) = (twice[0] / 2, twice[1] / 2, twice[2] / 2);
                let pairs = vec![vec![s1, x12, x13], vec![x12, s2, x23], vec![x13, x23, s3]];
                let (name, labels) = if s3 == -3 { ("2b", ["B1", "B2", "A"]) } else { ("2a", ["A", "B1", "B2"]) };
                let comps = [s1, s2, s3]
                    .iter()
                    .zip(labels)
                    .map(|(s, l)| Component { label: l.into(), self_int: *s, k_dot: 1 })
                    .collect();
                out.push(SplitCase { name: name.into(), components: comps, pairs });
            }
        }
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// Outcome of ruling out a non-reduced paracanonical curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub case: String,
    pub quantity: String,
    pub value: String,
    pub requirement: String,
    pub contradiction: bool,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} = {} but {}; {}",
            self.case,
            self.quantity,
            self.value,
            self.requirement,
            if self.contradiction { "CONTRADICTION" } else { "CONSISTENT" }
        )
    }
}

/// `C = 3A` forces `9 A^2 = K^2`.
pub fn certificate_triple() -> Certificate {
    let a2 = Rat::from(K_SQUARED).checked_div(&Rat::from(9)).expect("nonzero");
    Certificate {
        case: "3A".into(),
        quantity: "A^2".into(),
        value: a2.to_string(),
        requirement: "A^2 must be an integer".into(),
        contradiction: !a2.is_integer(),
    }
}

/// `C = 2A + B`: every numerical solution has `A (A + B) = 1`, so `C`
/// would not be 2-connected.
///
/// `KA = KB = 1`; Hodge index and parity give `A^2, B^2` in `{-1, -3}`; `A`
/// is not rational since it appears twice; `AB` comes from
/// `p_a(C) = p_a(2A) + p_a(B) + 2AB - 1`.
pub fn certificate_double() -> Certificate {
    let pa_c = 1 + (K_SQUARED + K_SQUARED) / 2;
    let mut values = std::collections::BTreeSet::new();
    for sa in admissible_self_ints(1, SPLIT_BOUND) {
        if is_rational(1, sa) {
            continue;
        }
        for sb in admissible_self_ints(1, SPLIT_BOUND) {
            let pa_2a = 1 + (4 * sa + 2) / 2;
            let pa_b = 1 + (sb + 1) / 2;
            let twice_ab = pa_c - pa_2a - pa_b + 1;
            if twice_ab < 0 || twice_ab % 2 != 0 {
                continue;
            }
            let ab = twice_ab / 2;
            if 4 * sa + 4 * ab + sb != K_SQUARED {
                continue;
            }
            values.insert(sa + ab);
        }
    }
    let value = values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    Certificate {
        case: "2A+B".into(),
        quantity: "A(A+B)".into(),
        value,
        requirement: "a 2-connected curve needs A(C-A) >= 2".into(),
        contradiction: !values.is_empty() && values.iter().all(|v| *v < 2),
    }
}

/// Degrees of the split components on the Albanese fibre `f`, read from
/// the `E(2)` classes of `case`.
pub fn albanese_degrees(case: &str, classes: &Table) -> Result<Vec<i64>> {
    let prefix = format!("{case}.");
    let out: Vec<i64> = classes
        .with_prefix(&prefix)
        .map(|e| e.value.parse::<E2Class>().map(|c| pair_e2(&E2Class::new(0, 1), &c)))
        .collect::<Result<_>>()?;
    if out.is_empty() {
        return Err(Error::Fixture(format!("no E(2) classes for case {case}")));
    }
    Ok(out)
}

/// `(chi, c_2, h^{1,1})` from Noether's formula.
pub fn noether_invariants(p_g: i64, q: i64, k2: i64) -> (i64, i64, i64) {
    let chi = 1 - q + p_g;
    let c2 = 12 * chi - k2;
    (chi, c2, c2 - 2 + 4 * q - 2 * p_g)
}

/// Intersection form on a basis, plus pairings of extra classes with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceLattice {
    pub name: String,
    pub labels: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    pairings: BTreeMap<(String, String), (i64, String)>,
}

fn key(x: &str, y: &str) -> (String, String) {
    if x <= y {
        (x.to_string(), y.to_string())
    } else {
        (y.to_string(), x.to_string())
    }
}

impl SurfaceLattice {
    /// Reads `name.basis` and every `name:X.Y` entry of the table.
    pub fn from_table(t: &Table, name: &str) -> Result<Self> {
        let labels: Vec<String> =
            t.get(&format!("{name}.basis"))?.value.split_whitespace().map(str::to_string).collect();
        let mut pairings = BTreeMap::new();
        for e in t.with_prefix(&format!("{name}:")) {
            let rest = &e.label[name.len() + 1..];
            let (x, y) =
                rest.split_once('.').ok_or_else(|| Error::Fixture(format!("bad pairing label {}", e.label)))?;
            let v: i64 = e.value.parse().map_err(|_| Error::Fixture(format!("bad pairing value {}", e.value)))?;
            if let Some((old, _)) = pairings.insert(key(x, y), (v, e.provenance.clone())) {
                if old != v {
                    return Err(Error::Fixture(format!("conflicting values for {}", e.label)));
                }
            }
        }
        let mut lat = SurfaceLattice { name: name.to_string(), labels, gram: Vec::new(), pairings };
        let mut gram = Vec::new();
        for x in &lat.labels {
            let row = lat.labels.iter().map(|y| lat.pairing(x, y)).collect::<Result<Vec<_>>>()?;
            gram.push(row);
        }
        lat.gram = gram;
        Ok(lat)
    }

    pub fn pairing(&self, x: &str, y: &str) -> Result<i64> {
        self.pairings
            .get(&key(x, y))
            .map(|(v, _)| *v)
            .ok_or_else(|| Error::Fixture(format!("{}: pairing {x}.{y} unknown", self.name)))
    }

    pub fn provenance(&self, x: &str, y: &str) -> Option<&str> {
        self.pairings.get(&key(x, y)).map(|(_, p)| p.as_str())
    }

    /// Adds a derived pairing; refuses to overwrite a different value.
    pub fn with_pairing(mut self, x: &str, y: &str, v: i64, provenance: &str) -> Result<Self> {
        if let Ok(old) = self.pairing(x, y) {
            if old != v {
                return Err(Error::Fixture(format!("{x}.{y} is {old}, not {v}")));
            }
        }
        self.pairings.insert(key(x, y), (v, provenance.to_string()));
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        integer_rank(&self.gram)
    }

    pub fn determinant(&self) -> BigInt {
        integer_determinant(&self.gram)
    }

    /// `(lhs - rhs) . v` for every basis vector `v`.
    pub fn relation_residuals(&self, rel: &Relation) -> Result<Vec<(String, i64)>> {
        self.labels
            .iter()
            .map(|v| {
                let mut total = 0;
                for (c, x) in rel.difference() {
                    total += c * self.pairing(&x, v)?;
                }
                Ok((v.clone(), total))
            })
            .collect()
    }

    pub fn check_relation(&self, rel: &Relation) -> Result<bool> {
        Ok(self.relation_residuals(rel)?.iter().all(|(_, r)| *r == 0))
    }
}

/// Rank by fraction-free Gaussian elimination.
pub fn integer_rank(m: &[Vec<i64>]) -> usize {
    bareiss(m).0
}

/// Determinant of a square matrix, exact.
pub fn integer_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix expected");
    let (rank, det) = bareiss(m);
    if rank < n {
        BigInt::zero()
    } else {
        det
    }
}

/// Returns the rank and, for full-rank square input, the determinant.
/// Every intermediate pivot division is exact.
fn bareiss(m: &[Vec<i64>]) -> (usize, BigInt) {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut sign = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = if sign < 0 { -prev } else { prev };
    (r, det)
}

/// A numerical relation `sum c_i X_i = sum d_j Y_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub lhs: Vec<(i64, String)>,
    pub rhs: Vec<(i64, String)>,
}

fn parse_side(s: &str, whole: &str) -> Result<Vec<(i64, String)>> {
    let bad = || Error::Parse { what: "relation", input: whole.to_string() };
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let sign = if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            -1
        } else {
            rest = rest.strip_prefix('+').unwrap_or(rest);
            1
        };
        let d = rest.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?;
        let coef: i64 = if d == 0 { 1 } else { rest[..d].parse().map_err(|_| bad())? };
        rest = &rest[d..];
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let sym = &rest[..end];
        if sym.is_empty() || !sym.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(bad());
        }
        out.push((sign * coef, sym.to_string()));
        rest = &rest[end..];
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

impl Relation {
    /// Parses `3K = 3G + A1 + A2 + A3`.
    pub fn parse(name: &str, s: &str) -> Result<Self> {
        let (l, r) = s.split_once('=').ok_or_else(|| Error::Parse { what: "relation", input: s.to_string() })?;
        Ok(Relation { name: name.to_string(), lhs: parse_side(l, s)?, rhs: parse_side(r, s)? })
    }

    /// `lhs - rhs` with like terms combined.
    pub fn difference(&self) -> Vec<(i64, String)> {
        let mut acc: BTreeMap<String, i64> = BTreeMap::new();
        for (c, x) in &self.lhs {
            *acc.entry(x.clone()).or_default() += c;
        }
        for (c, x) in &self.rhs {
            *acc.entry(x.clone()).or_default() -= c;
        }
        acc.into_iter().filter(|(_, c)| *c != 0).map(|(x, c)| (c, x)).collect()
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &[(i64, String)]| {
            v.iter()
                .enumerate()
                .map(|(i, (c, x))| {
                    let sign = if *c < 0 {
                        " - "
                    } else if i == 0 {
                        ""
                    } else {
                        " + "
                    };
                    let lead = if *c < 0 && i == 0 { "-" } else { sign };
                    if c.abs() == 1 {
                        format!("{lead}{x}")
                    } else {
                        format!("{lead}{}{x}", c.abs())
                    }
                })
                .collect::<String>()
        };
        write!(f, "{} = {}", side(&self.lhs), side(&self.rhs))
    }
}

/// The three relations among `K, G, A, M, N, F` on the genus-2 surface.
pub fn genus2_relations() -> [Relation; 3] {
    [
        Relation::parse("3K", "3K = 3G + A1 + A2 + A3").expect("literal"),
        Relation::parse("F+3G", "F + 3G = 2K + M1 + M2 + M3 + M4").expect("literal"),
        Relation::parse("F+N", "F + N1 + N2 + N3 + N4 = 2K + G").expect("literal"),
    ]
}

/// Solves `(lhs - rhs) . probe = 0` for the single unknown pairing
/// `unknown . probe`.
pub fn solve_pairing(lat: &SurfaceLattice, rel: &Relation, probe: &str, unknown: &str) -> Result<i64> {
    let mut known = 0;
    let mut coef = 0;
    for (c, x) in rel.difference() {
        if x == unknown {
            coef += c;
        } else {
            known += c * lat.pairing(&x, probe)?;
        }
    }
    if coef == 0 {
        return Err(Error::Fixture(format!("{unknown} does not occur in {rel}")));
    }
    if known % coef != 0 {
        return Err(Error::NonInteger(format!("{unknown}.{probe} = {}/{}", -known, coef)));
    }
    Ok(-known / coef)
}

/// `F.G` from the `3K` relation paired with the Albanese fibre `F`.
pub fn derive_fg(lat: &SurfaceLattice) -> Result<i64> {
    solve_pairing(lat, &genus2_relations()[0], "F", "G")
}

const RING: &str = "ring";
const LATTICE: &str = "lattice";

fn eq<T: PartialEq + fmt::Display>(suite: &str, id: impl Into<String>, claim: &str, e: T, a: T) -> CheckResult {
    CheckResult::equal(suite, id, claim, &e, &a)
}

fn show<T: fmt::Display>(r: Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => e.to_string(),
    }
}

/// Checks of the intersection rings of `E(3)`, `E(2)` and of the
/// splitting analysis.
pub fn verify_ring(e2_classes: &Table) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let chi_claim = "chi(aD+bF) = (a+nb)(a+1)...(a+n-1)/n!";
    for (n, a, b, want) in [(3, 4, -1, 5), (3, 3, -1, 0), (2, 4, -1, 5)] {
        out.push(timed(|| eq(RING, format!("chi/E({n})/{a},{b}"), chi_claim, want.to_string(), show(chi_en(n, a, b)))));
    }
    out.push(timed(|| {
        let bad: Vec<String> = (-9..=9i64)
            .filter(|a| a % 3 == 0)
            .filter(|a| chi_en(3, *a, -a / 3) != Ok(0))
            .map(|a| a.to_string())
            .collect();
        eq(RING, "chi/E(3)/a+3b=0", "chi vanishes when a + 3b = 0", String::new(), bad.join(","))
    }));
    for (a, b, want) in
        [(4, -1, CohomologyCase::OnlyH0), (-1, 5, CohomologyCase::AllVanish), (3, -1, CohomologyCase::TorsionDependent)]
    {
        out.push(timed(|| {
            eq(
                RING,
                format!("cohomology/E(3)/{a},{b}"),
                "only one cohomology group survives unless -n<a<0 or a+nb=0",
                want,
                cohomology_case(3, a, b),
            )
        }));
    }
    let x = EnClass::new(3, 4, -1);
    let d = EnClass::new(3, 1, 0);
    let k = EnClass::canonical(3);
    let f = EnClass::new(3, 0, 1);
    for (id, c, want) in [("(4D-F)DD", [x, d, d], 3), ("KKK", [k, k, k], 0), ("FFD", [f, f, d], 0)] {
        out.push(timed(|| {
            eq(
                RING,
                format!("triple/{id}"),
                "D^3 = D^2F = 1 and F^2 = 0 on E(3)",
                want.to_string(),
                show(triple_product_e3(&c[0], &c[1], &c[2])),
            )
        }));
    }
    let n = CurveNumbers::new("N", 1, 3);
    let ell = CurveNumbers::new("l", 1, 2);
    for (c, dv, want) in [(&n, x, 1), (&ell, EnClass::new(3, 3, -1), 1), (&n, k, 0)] {
        out.push(timed(|| {
            eq(
                RING,
                format!("curve-pair/{}.({})", c.label, dv),
                "curve degrees pair linearly with aD+bF",
                want.to_string(),
                show(pair_curve_divisor(c, &dv)),
            )
        }));
    }
    let c = E2Class::new(4, -1);
    out.push(timed(|| eq(RING, "e2/genus/4h-f", "the restricted paracanonical curve has genus 4", 4, genus_e2(&c))));
    out.push(timed(|| {
        eq(RING, "e2/pair/(4h-2f).f", "h^2 = hf = 1, f^2 = 0", 4, pair_e2(&E2Class::new(4, -2), &E2Class::new(0, 1)))
    }));
    out.push(timed(|| {
        eq(RING, "e2/pair/K.K", "K(E(2))^2 = 0", 0, pair_e2(&E2Class::canonical(), &E2Class::canonical()))
    }));

    let splits = enumerate_splittings(SPLIT_BOUND);
    out.push(timed(|| {
        let names: Vec<String> = splits.iter().map(|s| s.name.clone()).collect();
        eq(
            RING,
            "splittings/cases",
            "a reducible paracanonical curve splits as (1a), (1b), (2a) or (2b)",
            "1a,1b,2a,2b".to_string(),
            names.join(","),
        )
    }));
    let want = [
        "(1a) A^2=-2,KA=2 B^2=-3,KB=1 AB=4",
        "(1b) A^2=0,KA=2 B^2=-1,KB=1 AB=2",
        "(2a) A^2=-1,KA=1 B1^2=-1,KB1=1 B2^2=-1,KB2=1 AB1=1 AB2=1 B1B2=1",
        "(2b) B1^2=-1,KB1=1 B2^2=-1,KB2=1 A^2=-3,KA=1 B1B2=0 B1A=2 B2A=2",
    ];
    for (i, w) in want.iter().enumerate() {
        out.push(timed(|| {
            let got = splits.get(i).map(ToString::to_string).unwrap_or_default();
            eq(RING, format!("splittings/{}", &w[1..3]), "numerical type of each splitting", w.to_string(), got)
        }));
    }
    out.push(timed(|| {
        let wide = enumerate_splittings((-40, 12));
        eq(RING, "splittings/bound-stable", "enlarging the search window adds no splitting", splits.len(), wide.len())
    }));
    out.push(timed(|| {
        eq(
            RING,
            "nonreduced/3A",
            "C = 3A forces A^2 = 1/3",
            "3A: A^2 = 1/3 but A^2 must be an integer; CONTRADICTION".to_string(),
            certificate_triple().to_string(),
        )
    }));
    out.push(timed(|| {
        eq(
            RING,
            "nonreduced/2A+B",
            "C = 2A + B forces A(A+B) = 1, against 2-connectedness",
            "2A+B: A(A+B) = 1 but a 2-connected curve needs A(C-A) >= 2; CONTRADICTION".to_string(),
            certificate_double().to_string(),
        )
    }));
    for (case, want) in [("1a", "4,0"), ("1b", "3,1"), ("2a", "2,1,1"), ("2b", "0,2,2")] {
        out.push(timed(|| {
            let got = albanese_degrees(case, e2_classes)
                .map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
            eq(
                RING,
                format!("albanese/{case}"),
                "degrees of the components on the Albanese fibre",
                want.to_string(),
                show(got),
            )
        }));
    }
    out.push(timed(|| {
        let got = ["1a", "1b", "2a", "2b"]
            .iter()
            .map(|c| -> Result<E2Class> {
                let mut s = E2Class::new(0, 0);
                for e in e2_classes.with_prefix(&format!("{c}.")) {
                    let v: E2Class = e.value.parse()?;
                    s = E2Class::new(s.h + v.h, s.f + v.f);
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
        eq(
            RING,
            "albanese/sum",
            "each splitting restricts to 4h - f on E(2)",
            "4h-1f,4h-1f,4h-1f,4h-1f".to_string(),
            show(got),
        )
    }));
    for (pg, q, k2, want) in [(1, 1, 3, (1, 9, 9)), (3, 2, 6, (2, 18, 18)), (0, 0, 0, (1, 12, 10))] {
        out.push(timed(|| {
            eq(
                RING,
                format!("noether/{pg},{q},{k2}"),
                "chi = 1-q+p_g, c2 = 12chi - K^2, h11 = c2 - 2 + 4q - 2p_g",
                format!("{want:?}"),
                format!("{:?}", noether_invariants(pg, q, k2)),
            )
        }));
    }
    out
}

/// Gram-lattice checks: ranks, relations and the derived value of `F.G`.
pub fn verify_lattice(gram: &Table) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let seven = SurfaceLattice::from_table(gram, "seven_fibres");
    let genus2 = SurfaceLattice::from_table(gram, "genus2");
    out.push(timed(|| {
        eq(
            LATTICE,
            "rank/seven_fibres",
            "W1..W7, Gamma, K, G are numerically independent",
            "10".to_string(),
            show(seven.as_ref().map(|l| l.rank()).map_err(Clone::clone)),
        )
    }));
    out.push(timed(|| {
        let (_, _, h11) = noether_invariants(1, 1, 3);
        let got = seven.as_ref().map(|l| format!("rank {} > h11 {}", l.rank(), h11)).map_err(Clone::clone);
        eq(
            LATTICE,
            "rank/exceeds-h11",
            "rank Num(S) would exceed h^{1,1}(S) = 9",
            "rank 10 > h11 9".to_string(),
            show(got),
        )
    }));
    out.push(timed(|| {
        eq(
            LATTICE,
            "rank/genus2",
            "K, G, B12, B13, B23, M1..M4 are numerically independent",
            "9".to_string(),
            show(genus2.as_ref().map(|l| l.rank()).map_err(Clone::clone)),
        )
    }));
    let fg = genus2.as_ref().map_err(Clone::clone).and_then(derive_fg);
    out.push(timed(|| {
        eq(
            LATTICE,
            "derive/FG",
            "pairing 3K = 3G + A1 + A2 + A3 with F gives FG = 4",
            "4".to_string(),
            show(fg.clone()),
        )
    }));
    out.push(timed(|| {
        let kf = genus2.as_ref().map_err(Clone::clone).and_then(|l| l.pairing("F", "K"));
        eq(LATTICE, "derive/KF", "adjunction on a genus-3 fibre with F^2 = 0", "4".to_string(), show(kf))
    }));
    let full = genus2
        .clone()
        .and_then(|l| fg.clone().and_then(|v| l.with_pairing("F", "G", v, "derived from the 3K relation")));
    for rel in genus2_relations() {
        out.push(timed(|| {
            let got = full.as_ref().map_err(Clone::clone).and_then(|l| l.relation_residuals(&rel)).map(|r| {
                let nz: Vec<String> = r.iter().filter(|(_, v)| *v != 0).map(|(x, v)| format!("{x}:{v}")).collect();
                if nz.is_empty() {
                    "0 on every generator".to_string()
                } else {
                    nz.join(",")
                }
            });
            eq(
                LATTICE,
                format!("relation/{}", rel.name),
                &format!("{rel} numerically"),
                "0 on every generator".to_string(),
                show(got),
            )
        }));
    }
    for k in 1..=4 {
        out.push(timed(|| {
            let got = full.as_ref().map_err(Clone::clone).and_then(|l| {
                let (m, n) = (format!("M{k}"), format!("N{k}"));
                let sq = l.pairing(&m, &m)? + 2 * l.pairing(&m, &n)? + l.pairing(&n, &n)?;
                let kd = l.pairing(&m, "K")? + l.pairing(&n, "K")?;
                Ok(format!("square {sq}, K-degree {kd}"))
            });
            eq(
                LATTICE,
                format!("fibre/M{k}+N{k}"),
                "M_k + N_k is a fibre of the genus-2 pencil",
                "square 0, K-degree 2".to_string(),
                show(got),
            )
        }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Fixtures;
    use proptest::prelude::*;

    #[test]
    fn chi_examples() {
        assert_eq!(chi_en(3, 4, -1), Ok(5));
        assert_eq!(chi_en(3, 3, -1), Ok(0));
        assert_eq!(chi_en(2, 4, -1), Ok(5));
        assert_eq!(chi_en(3, 0, 0), Ok(0));
        assert_eq!(chi_en(2, 0, 1), Ok(1));
    }

    #[test]
    fn chi_matches_riemann_roch_on_e2() {
        // chi = D(D-K)/2 on E(2) with chi(O) = 0
        for a in -5..=5 {
            for b in -5..=5 {
                let c = E2Class::new(a, b);
                let k = E2Class::canonical();
                let dk = E2Class::new(a - k.h, b - k.f);
                assert_eq!(chi_en(2, a, b).unwrap() * 2, pair_e2(&c, &dk));
            }
        }
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(cohomology_case(3, 4, -1), CohomologyCase::OnlyH0);
        assert_eq!(cohomology_case(3, -1, 5), CohomologyCase::AllVanish);
        assert_eq!(cohomology_case(3, 3, -1), CohomologyCase::TorsionDependent);
        assert_eq!(cohomology_case(3, 1, -1), CohomologyCase::OnlyH1);
        assert_eq!(cohomology_case(3, -4, 2), CohomologyCase::OnlyHn1);
        assert_eq!(cohomology_case(3, -4, 1), CohomologyCase::OnlyHn);
    }

    #[test]
    fn triple_products() {
        let k = EnClass::canonical(3);
        // K^3 expanded by hand: -27 + 3*9 = 0
        assert_eq!(triple_product_e3(&k, &k, &k), Ok(0));
        assert_eq!(triple_product_e3(&EnClass::new(3, 4, -1), &EnClass::new(3, 1, 0), &EnClass::new(3, 1, 0)), Ok(3));
        assert!(triple_product_e3(&EnClass::new(2, 1, 0), &k, &k).is_err());
    }

    #[test]
    fn e2_parsing_and_genus() {
        assert_eq!("4h-2f".parse::<E2Class>(), Ok(E2Class::new(4, -2)));
        assert_eq!("-f + 3h".parse::<E2Class>(), Ok(E2Class::new(3, -1)));
        assert_eq!("h".parse::<E2Class>(), Ok(E2Class::new(1, 0)));
        assert!("4x".parse::<E2Class>().is_err());
        assert!("".parse::<E2Class>().is_err());
        assert_eq!(genus_e2(&E2Class::new(4, -1)), 4);
        assert_eq!(genus_e2(&E2Class::new(0, 1)), 0);
        assert_eq!(genus_e2(&E2Class::new(1, 0)), 1);
        assert_eq!(E2Class::new(4, -1).to_string(), "4h-1f");
    }

    #[test]
    fn splittings_are_the_four_cases() {
        let s = enumerate_splittings(SPLIT_BOUND);
        assert_eq!(s.len(), 4);
        for c in &s {
            assert_eq!(c.total_square(), K_SQUARED);
            for (i, comp) in c.components.iter().enumerate() {
                assert_eq!(c.pairs[i].iter().sum::<i64>(), comp.k_dot);
            }
        }
        assert_eq!(s, enumerate_splittings((-100, 100)));
    }

    #[test]
    fn certificates() {
        let t = certificate_triple();
        assert!(t.contradiction);
        assert_eq!(t.value, "1/3");
        let d = certificate_double();
        assert!(d.contradiction);
        assert_eq!(d.value, "1");
    }

    #[test]
    fn albanese_from_fixture() {
        let fx = Fixtures::embedded();
        assert_eq!(albanese_degrees("1a", &fx.e2_classes), Ok(vec![4, 0]));
        assert_eq!(albanese_degrees("2b", &fx.e2_classes), Ok(vec![0, 2, 2]));
        assert!(albanese_degrees("3c", &fx.e2_classes).is_err());
    }

    #[test]
    fn noether() {
        assert_eq!(noether_invariants(1, 1, 3), (1, 9, 9));
        assert_eq!(noether_invariants(3, 2, 6).1, 18);
        assert_eq!(noether_invariants(0, 0, 0), (1, 12, 10));
    }

    #[test]
    fn lattices_from_fixture() {
        let fx = Fixtures::embedded();
        let seven = SurfaceLattice::from_table(&fx.gram, "seven_fibres").unwrap();
        assert_eq!(seven.rank(), 10);
        assert_eq!(seven.determinant(), BigInt::from(2));
        let g2 = SurfaceLattice::from_table(&fx.gram, "genus2").unwrap();
        assert_eq!(g2.rank(), 9);
        assert_eq!(g2.determinant().abs(), BigInt::from(4));
        assert!(g2.pairing("F", "G").is_err());
        assert_eq!(derive_fg(&g2), Ok(4));
        let full = g2.with_pairing("F", "G", 4, "derived").unwrap();
        for r in genus2_relations() {
            assert!(full.check_relation(&r).unwrap(), "{r}");
        }
        assert!(full.clone().with_pairing("F", "G", 5, "wrong").is_err());
        let broken = Relation::parse("x", "3K = 2G + A1 + A2 + A3").unwrap();
        assert!(!full.check_relation(&broken).unwrap());
    }

    #[test]
    fn relation_display_round_trips() {
        for r in genus2_relations() {
            assert_eq!(Relation::parse(&r.name, &r.to_string()).unwrap(), r);
        }
        assert_eq!(Relation::parse("x", "-K = -2G").unwrap().to_string(), "-K = -2G");
    }

    #[test]
    fn suites_pass() {
        let fx = Fixtures::embedded();
        for r in verify_ring(&fx.e2_classes).iter().chain(&verify_lattice(&fx.gram)) {
            assert!(r.passed(), "{r:#?}");
        }
    }

    fn small_class() -> impl Strategy<Value = EnClass> {
        (-6i64..=6, -6i64..=6).prop_map(|(a, b)| EnClass::new(3, a, b))
    }

    fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec((0..n, 0..n, -2i64..=2), 0..12).prop_map(move |ops| {
            let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
            for (i, j, c) in ops {
                if i != j {
                    for k in 0..n {
                        u[i][k] += c * u[j][k];
                    }
                }
            }
            u
        })
    }

    fn congruent(g: &[Vec<i64>], u: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = g.len();
        let mut out = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for k in 0..n {
                    for l in 0..n {
                        s += u[i][k] * g[k][l] * u[j][l];
                    }
                }
                out[i][j] = s;
            }
        }
        out
    }

    proptest! {
        #[test]
        fn triple_product_symmetric_and_trilinear(a in small_class(), b in small_class(), c in small_class(), d in small_class()) {
            let t = |x: &EnClass, y: &EnClass, z: &EnClass| triple_product_e3(x, y, z).unwrap();
            prop_assert_eq!(t(&a, &b, &c), t(&b, &c, &a));
            prop_assert_eq!(t(&a, &b, &c), t(&b, &a, &c));
            let ad = EnClass::new(3, a.a + d.a, a.b + d.b);
            prop_assert_eq!(t(&ad, &b, &c), t(&a, &b, &c) + t(&d, &b, &c));
        }

        #[test]
        fn chi_vanishes_on_multiples_of_canonical(k in -3i64..=3) {
            prop_assert_eq!(chi_en(3, -3 * k, k), Ok(0));
        }

        #[test]
        fn chi_is_integral(n in 2u32..=5, a in -12i64..=12, b in -12i64..=12) {
            prop_assert!(chi_en(n, a, b).is_ok());
        }

        #[test]
        fn rank_invariant_under_unimodular_change(u in unimodular(10)) {
            let fx = Fixtures::embedded();
            let seven = SurfaceLattice::from_table(&fx.gram, "seven_fibres").unwrap();
            let g = congruent(&seven.gram, &u);
            prop_assert_eq!(integer_rank(&g), 10);
            prop_assert_eq!(integer_determinant(&g), BigInt::from(2));
        }

        #[test]
        fn bareiss_rank_of_low_rank_products(v in prop::collection::vec(-5i64..=5, 4), w in prop::collection::vec(-5i64..=5, 4)) {
            let m: Vec<Vec<i64>> = v.iter().map(|x| w.iter().map(|y| x * y).collect()).collect();
            let expected = usize::from(v.iter().any(|x| *x != 0) && w.iter().any(|y| *y != 0));
            prop_assert_eq!(integer_rank(&m), expected);
        }

        #[test]
        fn e2_pairing_symmetric(a in -9i64..=9, b in -9i64..=9, c in -9i64..=9, d in -9i64..=9) {
            let (x, y) = (E2Class::new(a, b), E2Class::new(c, d));
            prop_assert_eq!(pair_e2(&x, &y), pair_e2(&y, &x));
            prop_assert_eq!(x.to_string().parse::<E2Class>().unwrap(), x);
        }
    }
}
