//! Torsion points of an elliptic curve, unordered triples in `E(3)`, and
//! loci of `E(3)` parametrised by affine maps in one or two torsion
//! parameters.
//!
//! `E[∞]` is modelled as `(Q/Z)^2`; `E[M]` is the subgroup of points of
//! order dividing `M`. Every constant used here lies in `E[6]` and every
//! coefficient is `0` or `±1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;

use crate::check::{timed, CheckResult};
use crate::error::{Error, Result};
use crate::fixtures::Table;

/// Point `(x/level, y/level)` of `(Q/Z)^2` with `level` equal to its order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsionPt {
    level: u32,
    x: u32,
    y: u32,
}

impl TorsionPt {
    pub fn new(level: u32, x: i64, y: i64) -> Self {
        assert!(level > 0, "level must be positive");
        let n = level as i64;
        let (x, y) = (x.rem_euclid(n), y.rem_euclid(n));
        let g = x.gcd(&y).gcd(&n);
        TorsionPt { level: (n / g) as u32, x: (x / g) as u32, y: (y / g) as u32 }
    }

    pub fn zero() -> Self {
        TorsionPt::new(1, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.level == 1
    }

    pub fn order(&self) -> u32 {
        self.level
    }

    /// Coordinates in `(Z/m)^2`, if the point lies in `E[m]`.
    pub fn coords_at(&self, m: u32) -> Option<(u32, u32)> {
        if m % self.level != 0 {
            return None;
        }
        let k = m / self.level;
        Some((self.x * k, self.y * k))
    }

    pub fn add(&self, o: &TorsionPt) -> Self {
        let l = self.level.lcm(&o.level);
        let (a, b) = self.coords_at(l).expect("lcm level");
        let (c, d) = o.coords_at(l).expect("lcm level");
        TorsionPt::new(l, a as i64 + c as i64, b as i64 + d as i64)
    }

    pub fn neg(&self) -> Self {
        TorsionPt::new(self.level, -(self.x as i64), -(self.y as i64))
    }

    pub fn sub(&self, o: &TorsionPt) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, k: i64) -> Self {
        TorsionPt::new(self.level, self.x as i64 * k, self.y as i64 * k)
    }

    /// All of `E[m]`, `m^2` points.
    pub fn all_at(m: u32) -> impl Iterator<Item = TorsionPt> {
        (0..m).flat_map(move |x| (0..m).map(move |y| TorsionPt::new(m, x as i64, y as i64)))
    }
}

impl fmt::Display for TorsionPt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = torsion_name(self) {
            return write!(f, "{name}");
        }
        write!(f, "({}/{}, {}/{})", self.x, self.level, self.y, self.level)
    }
}

impl fmt::Debug for TorsionPt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Nonzero 2-torsion, `i` in `1..=3`: `(1/2,0)`, `(0,1/2)`, `(1/2,1/2)`.
pub fn xi(i: u8) -> TorsionPt {
    match i {
        1 => TorsionPt::new(2, 1, 0),
        2 => TorsionPt::new(2, 0, 1),
        3 => TorsionPt::new(2, 1, 1),
        _ => panic!("xi index must be 1..=3"),
    }
}

/// Nonzero 3-torsion, `k` in `1..=8`; `eta(k + 4) = 2 eta(k)`.
pub fn eta(k: u8) -> TorsionPt {
    let base = |k| match k {
        1 => TorsionPt::new(3, 0, 1),
        2 => TorsionPt::new(3, 1, 0),
        3 => TorsionPt::new(3, 1, 1),
        4 => TorsionPt::new(3, 1, 2),
        _ => panic!("eta index must be 1..=8"),
    };
    if k <= 4 {
        base(k)
    } else {
        base(k - 4).mul(2)
    }
}

/// Index `k` with `eta(k) = p`.
pub fn eta_index(p: &TorsionPt) -> Option<u8> {
    (1..=8).find(|&k| eta(k) == *p)
}

/// Index in `1..=4` of the subgroup `<p>` for nonzero 3-torsion `p`.
pub fn eta_class(p: &TorsionPt) -> Option<u8> {
    eta_index(p).map(|k| if k > 4 { k - 4 } else { k })
}

fn torsion_name(p: &TorsionPt) -> Option<String> {
    if p.is_zero() {
        return Some("0".into());
    }
    if let Some(i) = (1..=3).find(|&i| xi(i) == *p) {
        return Some(format!("xi{i}"));
    }
    eta_index(p).map(|k| if k <= 4 { format!("eta{k}") } else { format!("2eta{}", k - 4) })
}

/// Unordered triple `p + q + r` of `E(3)`, stored sorted.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple([TorsionPt; 3]);

impl Triple {
    pub fn new(p: TorsionPt, q: TorsionPt, r: TorsionPt) -> Self {
        let mut a = [p, q, r];
        a.sort();
        Triple(a)
    }

    pub fn points(&self) -> &[TorsionPt; 3] {
        &self.0
    }

    pub fn sum(&self) -> TorsionPt {
        self.0[0].add(&self.0[1]).add(&self.0[2])
    }

    pub fn level(&self) -> u32 {
        self.0.iter().fold(1, |l, p| l.lcm(&p.order()))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {} + {}", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(x, y) -> c + a x + b y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Aff {
    pub c: TorsionPt,
    pub a: i64,
    pub b: i64,
}

const fn aff(c: TorsionPt, a: i64, b: i64) -> Aff {
    Aff { c, a, b }
}

impl Aff {
    fn eval(&self, x: &TorsionPt, y: &TorsionPt) -> TorsionPt {
        self.c.add(&x.mul(self.a)).add(&y.mul(self.b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Curve,
    /// `{u + x + y}`
    SurfaceD(TorsionPt),
    /// `{x + y + z : x + y + z = u}`
    SurfaceF(TorsionPt),
    /// `{x + (x + y) + y}`
    SurfaceY,
    /// `{u + v + (u + xi)}`
    SurfacePsi(TorsionPt),
}

/// Image of `E` (curves) or `E x E` (surfaces) under three affine maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamLocus {
    pub name: String,
    pub shape: Shape,
    pub maps: [Aff; 3],
}

impl ParamLocus {
    fn curve(name: String, m: [(TorsionPt, i64); 3]) -> Self {
        ParamLocus { name, shape: Shape::Curve, maps: m.map(|(c, a)| aff(c, a, 0)) }
    }

    pub fn d(u: TorsionPt) -> Self {
        let o = TorsionPt::zero();
        ParamLocus {
            name: format!("D_{u}"),
            shape: Shape::SurfaceD(u),
            maps: [aff(u, 0, 0), aff(o, 1, 0), aff(o, 0, 1)],
        }
    }

    pub fn f(u: TorsionPt) -> Self {
        let o = TorsionPt::zero();
        ParamLocus {
            name: format!("F_{u}"),
            shape: Shape::SurfaceF(u),
            maps: [aff(o, 1, 0), aff(o, 0, 1), aff(u, -1, -1)],
        }
    }

    pub fn y() -> Self {
        let o = TorsionPt::zero();
        ParamLocus { name: "Y".into(), shape: Shape::SurfaceY, maps: [aff(o, 1, 0), aff(o, 1, 1), aff(o, 0, 1)] }
    }

    pub fn psi(x: TorsionPt) -> Self {
        let o = TorsionPt::zero();
        ParamLocus {
            name: format!("Psi_{x}"),
            shape: Shape::SurfacePsi(x),
            maps: [aff(o, 1, 0), aff(o, 0, 1), aff(x, 1, 0)],
        }
    }

    /// `{x + xi + (-x)}`
    pub fn a(x: TorsionPt) -> Self {
        ParamLocus::curve(format!("A_{x}"), [(x, 0), (TorsionPt::zero(), 1), (TorsionPt::zero(), -1)])
    }

    /// `{xi_i + x + (x + xi_j)}`
    pub fn b(i: u8, j: u8) -> Self {
        ParamLocus::curve(format!("B_{i}{j}"), [(xi(i), 0), (TorsionPt::zero(), 1), (xi(j), 1)])
    }

    /// `{x + (x + e) + (x + 2e)}`; depends only on `<e>`.
    pub fn n(e: TorsionPt) -> Self {
        ParamLocus::curve(format!("N_{e}"), [(TorsionPt::zero(), 1), (e, 1), (e.mul(2), 1)])
    }

    /// `{x + e + 2e}`
    pub fn m(e: TorsionPt) -> Self {
        ParamLocus::curve(format!("M_{e}"), [(TorsionPt::zero(), 1), (e, 0), (e.mul(2), 0)])
    }

    /// `{xi_i + x + (x + xi_i)}`
    pub fn ell(i: u8) -> Self {
        ParamLocus::curve(format!("l_{i}"), [(xi(i), 0), (TorsionPt::zero(), 1), (xi(i), 1)])
    }

    /// `{x + (x + xi_i) + (x + xi_j)}`
    pub fn gamma(i: u8, j: u8) -> Self {
        ParamLocus::curve(format!("Gamma_{i}{j}"), [(TorsionPt::zero(), 1), (xi(i), 1), (xi(j), 1)])
    }

    pub fn params(&self) -> u8 {
        if self.shape == Shape::Curve {
            1
        } else {
            2
        }
    }

    /// Least `M` with every constant in `E[M]`.
    pub fn const_level(&self) -> u32 {
        self.maps.iter().fold(1, |l, m| l.lcm(&m.c.order()))
    }

    pub fn at(&self, x: &TorsionPt, y: &TorsionPt) -> Triple {
        let [p, q, r] = self.maps.map(|m| m.eval(x, y));
        Triple::new(p, q, r)
    }

    /// Triples with parameters in `E[m]`.
    pub fn points(&self, m: u32) -> BTreeSet<Triple> {
        let o = TorsionPt::zero();
        let mut out = BTreeSet::new();
        for x in TorsionPt::all_at(m) {
            if self.params() == 1 {
                out.insert(self.at(&x, &o));
            } else {
                for y in TorsionPt::all_at(m) {
                    out.insert(self.at(&x, &y));
                }
            }
        }
        out
    }

    /// Exact membership test, independent of any level.
    pub fn contains_point(&self, p: &Triple) -> bool {
        let [a, b, c] = *p.points();
        let perms = [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)];
        match self.shape {
            Shape::SurfaceD(u) => p.points().contains(&u),
            Shape::SurfaceF(u) => p.sum() == u,
            Shape::SurfaceY => perms.iter().any(|(p, q, r)| *q == p.add(r)),
            Shape::SurfacePsi(x) => perms.iter().any(|(p, q, _)| *q == p.add(&x)),
            Shape::Curve => self.contains_point_generic(p),
        }
    }

    /// Membership by solving the parameter equations for every matching of
    /// the three maps with the three points.
    pub fn contains_point_generic(&self, p: &Triple) -> bool {
        let level = p.level().lcm(&self.const_level()) * solution_factor(&self.maps);
        permutations().iter().any(|perm| {
            let rows: Vec<(i64, i64, TorsionPt)> = (0..3)
                .map(|k| {
                    let m = &self.maps[k];
                    (m.a, m.b, p.points()[perm[k]].sub(&m.c))
                })
                .collect();
            solvable(&rows, level)
        })
    }
}

fn permutations() -> [[usize; 3]; 6] {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

/// Multiplier `D` such that a solvable system with right-hand sides in
/// `E[N]` has a solution in `E[N D]`: the lcm of nonzero coefficients and
/// nonzero 2x2 minors bounds every invariant factor.
fn solution_factor(maps: &[Aff; 3]) -> u32 {
    let mut d: i64 = 1;
    for m in maps {
        for v in [m.a, m.b] {
            if v != 0 {
                d = d.lcm(&v.abs());
            }
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let minor = maps[i].a * maps[j].b - maps[j].a * maps[i].b;
            if minor != 0 {
                d = d.lcm(&minor.abs());
            }
        }
    }
    d as u32
}

/// Solutions `y` in `Z/n` of `b y = s`.
fn solve_mod(b: i64, s: i64, n: i64) -> Vec<i64> {
    let (b, s) = (b.rem_euclid(n), s.rem_euclid(n));
    let g = b.gcd(&n);
    if s % g != 0 {
        return Vec::new();
    }
    let step = n / g;
    let y0 = (0..step).find(|y| (b * y - s).rem_euclid(n) == 0).expect("gcd divides");
    (0..g).map(|k| y0 + k * step).collect()
}

/// Whether `a_k X + b_k Y = t_k` has a solution with `X, Y` in `E[n]`.
/// Coordinates decouple because the coefficients are integers.
fn solvable(rows: &[(i64, i64, TorsionPt)], n: u32) -> bool {
    (0..2).all(|coord| {
        let n = n as i64;
        let rhs: Vec<i64> = rows
            .iter()
            .map(|(_, _, t)| {
                let (x, y) = t.coords_at(n as u32).expect("level covers constants");
                if coord == 0 {
                    x as i64
                } else {
                    y as i64
                }
            })
            .collect();
        (0..n).any(|x| {
            let residual: Vec<i64> = rows.iter().zip(&rhs).map(|((a, _, _), r)| r - a * x).collect();
            match rows.iter().position(|(_, b, _)| b.rem_euclid(n) != 0) {
                None => residual.iter().all(|r| r.rem_euclid(n) == 0),
                Some(k) => solve_mod(rows[k].1, residual[k], n)
                    .into_iter()
                    .any(|y| rows.iter().zip(&residual).all(|((_, b, _), r)| (b * y - r).rem_euclid(n) == 0)),
            }
        })
    })
}

fn require_level(l: &ParamLocus, m: u32) -> Result<()> {
    if m == 0 || m % l.const_level() != 0 {
        return Err(Error::InsufficientLevel(format!(
            "{} has constants of order {}, not dividing {m}",
            l.name,
            l.const_level()
        )));
    }
    Ok(())
}

/// `l1 ∩ l2` restricted to triples with entries in `E[m]`.
///
/// The locus with fewer parameters is enumerated over `E[m]` and each
/// triple is tested for exact membership in the other.
pub fn intersect_loci(l1: &ParamLocus, l2: &ParamLocus, m: u32) -> Result<BTreeSet<Triple>> {
    require_level(l1, m)?;
    require_level(l2, m)?;
    let (small, big) = if l1.params() <= l2.params() { (l1, l2) } else { (l2, l1) };
    Ok(small.points(m).into_iter().filter(|p| big.contains_point(p)).collect())
}

pub fn membership(p: &Triple, l: &ParamLocus) -> bool {
    l.contains_point(p)
}

/// Whether the curve `small` lies in `big`.
///
/// Looks for an affine reparametrisation `X = alpha x + p`, `Y = beta x + q`
/// turning the maps of `big` into those of `small` for some matching:
/// integer identities in `alpha, beta` and torsion identities in `p, q`.
pub fn contains_locus(big: &ParamLocus, small: &ParamLocus) -> Result<bool> {
    if small.params() != 1 {
        return Err(Error::WrongDimension { expected: 1, got: small.params() as u32 });
    }
    let level = big.const_level().lcm(&small.const_level()) * solution_factor(&big.maps);
    let betas: Vec<i64> = if big.params() == 1 { vec![0] } else { (-3..=3).collect() };
    for perm in permutations() {
        for alpha in -3..=3 {
            for &beta in &betas {
                let ok = (0..3).all(|k| {
                    let bm = &big.maps[k];
                    bm.a * alpha + bm.b * beta == small.maps[perm[k]].a
                });
                if !ok {
                    continue;
                }
                let rows: Vec<(i64, i64, TorsionPt)> = (0..3)
                    .map(|k| {
                        let bm = &big.maps[k];
                        (bm.a, bm.b, small.maps[perm[k]].c.sub(&bm.c))
                    })
                    .collect();
                if solvable(&rows, level) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// All `x` in `E[m]` with `a x = t`.
///
/// For `a != 0` there are exactly `a^2` solutions once `m` is a multiple of
/// `|a| ord(t)`; smaller levels are rejected rather than answered partially.
pub fn solve_linear(a: i64, t: &TorsionPt, m: u32) -> Result<Vec<TorsionPt>> {
    if m == 0 || m % t.order() != 0 {
        return Err(Error::InsufficientLevel(format!("{t} is not in E[{m}]")));
    }
    if a == 0 {
        return Ok(if t.is_zero() { TorsionPt::all_at(m).collect() } else { Vec::new() });
    }
    let need = a.unsigned_abs() as u32 * t.order();
    if m % need != 0 {
        return Err(Error::InsufficientLevel(format!("solutions of {a}x = {t} need E[{need}], level is {m}")));
    }
    let (tx, ty) = t.coords_at(m).expect("checked");
    let n = m as i64;
    let xs = solve_mod(a, tx as i64, n);
    let ys = solve_mod(a, ty as i64, n);
    let mut out: Vec<TorsionPt> = xs.iter().flat_map(|x| ys.iter().map(move |y| TorsionPt::new(m, *x, *y))).collect();
    out.sort();
    Ok(out)
}

/// N-curves with multiplicities, keyed by class index `1..=4`.
pub type NCycle = BTreeMap<u8, u8>;

/// Scheme-theoretic `X_{eta_i} . X_{eta_j}` for distinct `i, j` in `1..=8`.
///
/// If `eta_j = 2 eta_i` the surfaces meet transversally along the three
/// N-curves other than `N_{eta_i}`; otherwise transversally along
/// `N_{eta_i + eta_j}` and with contact order 2 along `N_{eta_i - eta_j}`.
pub fn bielliptic_rule(i: u8, j: u8) -> NCycle {
    let (ei, ej) = (eta(i), eta(j));
    let own = eta_class(&ei).expect("3-torsion");
    if ej == ei.mul(2) {
        (1..=4).filter(|&k| k != own).map(|k| (k, 1)).collect()
    } else {
        let mut c = NCycle::new();
        c.insert(eta_class(&ei.add(&ej)).expect("nonzero sum"), 1);
        c.insert(eta_class(&ei.sub(&ej)).expect("nonzero difference"), 2);
        c
    }
}

pub fn build_bielliptic_table() -> BTreeMap<(u8, u8), NCycle> {
    let mut t = BTreeMap::new();
    for i in 1..=8 {
        for j in 1..=8 {
            if i != j {
                t.insert((i, j), bielliptic_rule(i, j));
            }
        }
    }
    t
}

pub fn eta_label(k: u8) -> String {
    if k <= 4 {
        format!("eta{k}")
    } else {
        format!("2eta{}", k - 4)
    }
}

fn parse_eta_label(s: &str) -> Result<u8> {
    let bad = || Error::Parse { what: "eta label", input: s.to_string() };
    let (twice, rest) = match s.strip_prefix('2') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let k: u8 = rest.strip_prefix("eta").ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if !(1..=4).contains(&k) {
        return Err(bad());
    }
    Ok(if twice { k + 4 } else { k })
}

/// Reads `eta3, 2eta4` as `N_3 + 2 N_4`.
pub fn parse_ncycle(s: &str) -> Result<NCycle> {
    let mut c = NCycle::new();
    for part in s.split(',') {
        let k = parse_eta_label(part.trim())?;
        let (class, mult) = if k > 4 { (k - 4, 2) } else { (k, 1) };
        if c.insert(class, mult).is_some() {
            return Err(Error::Parse { what: "N-cycle", input: s.to_string() });
        }
    }
    Ok(c)
}

pub fn fmt_ncycle(c: &NCycle) -> String {
    let mut parts: Vec<(u8, String)> =
        c.iter().map(|(k, m)| (*m, if *m == 1 { format!("eta{k}") } else { format!("{m}eta{k}") })).collect();
    parts.sort();
    parts.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(", ")
}

/// A printed cell of the intersection table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedCell {
    pub row: u8,
    pub col: u8,
    pub printed: NCycle,
    pub erratum: Option<NCycle>,
}

pub fn read_bielliptic_table(t: &Table) -> Result<Vec<PrintedCell>> {
    let mut out = Vec::new();
    for e in &t.entries {
        let (r, c) = e.label.split_once('/').ok_or_else(|| Error::Fixture(format!("bad table label {}", e.label)))?;
        let (row, col) = (parse_eta_label(r)?, parse_eta_label(c)?);
        if e.value == "*" {
            continue;
        }
        let erratum = match e.provenance.split_once("erratum:") {
            None => None,
            Some((_, rest)) => Some(parse_ncycle(rest.split('(').next().unwrap_or("").trim())?),
        };
        out.push(PrintedCell { row, col, printed: parse_ncycle(&e.value)?, erratum });
    }
    Ok(out)
}

/// Compares the rule table with the printed one, cell by cell.
///
/// A cell carrying an erratum passes only if the printed value contradicts
/// its mirror cell, the erratum equals that mirror, and the rule agrees.
pub fn compare_bielliptic(t: &Table) -> Result<Vec<CheckResult>> {
    let cells = read_bielliptic_table(t)?;
    let rule = build_bielliptic_table();
    let printed: BTreeMap<(u8, u8), &NCycle> = cells.iter().map(|c| ((c.row, c.col), &c.printed)).collect();
    let mut out = Vec::new();
    for cell in &cells {
        out.push(timed(|| {
            let id = format!("bielliptic/{}x{}", eta_label(cell.row), eta_label(cell.col));
            let computed = rule[&(cell.row, cell.col)].clone();
            let claim = "X(eta_i).X(eta_j): the three other N-curves if eta_j = 2 eta_i, else N(eta_i+eta_j) + 2 N(eta_i-eta_j)";
            match &cell.erratum {
                None => CheckResult::equal("torsion", id, claim, &fmt_ncycle(&cell.printed), &fmt_ncycle(&computed)),
                Some(fix) => {
                    let mirror = printed.get(&(cell.col, cell.row)).copied();
                    let confirmed = mirror == Some(fix) && mirror != Some(&cell.printed);
                    let expected = format!("{} (printed {}, erratum confirmed by mirror cell)", fmt_ncycle(fix), fmt_ncycle(&cell.printed));
                    let actual = if confirmed {
                        format!("{} (printed {}, erratum confirmed by mirror cell)", fmt_ncycle(&computed), fmt_ncycle(&cell.printed))
                    } else {
                        format!("{} (erratum not confirmed by mirror cell)", fmt_ncycle(&computed))
                    };
                    CheckResult::equal("torsion", id, claim, &expected, &actual)
                }
            }
        }));
    }
    Ok(out)
}

/// `X_S` for a set `S` of at least two eta indices: the N-curves common to
/// every pairwise intersection. N-curves are pairwise disjoint, so a point of
/// `X_S` lies on exactly one of them and that curve must occur in every pair.
pub fn common_ncurves(s: &[u8], table: &BTreeMap<(u8, u8), NCycle>) -> BTreeSet<u8> {
    assert!(s.len() >= 2, "needs at least two surfaces");
    let mut common: BTreeSet<u8> = (1..=4).collect();
    for (a, i) in s.iter().enumerate() {
        for j in &s[a + 1..] {
            let support: BTreeSet<u8> = table[&(*i, *j)].keys().copied().collect();
            common = common.intersection(&support).copied().collect();
        }
    }
    common
}

/// One term of the expansion of `⋂_k (X_{eta_k} ∪ D_{2 eta_k})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseTerm {
    /// Indices whose bielliptic surface was chosen.
    pub surfaces: Vec<u8>,
    /// Centres `u` of the chosen `D_u`.
    pub d_centres: Vec<TorsionPt>,
    pub points: BTreeSet<Triple>,
}

/// Expands the intersection of the eight reducible members
/// `X_{eta_k} + D_{2 eta_k}` of the linear system into its `2^8` terms and
/// evaluates each one.
///
/// `X_S` comes from [`common_ncurves`]; four or more distinct `D`'s have
/// empty intersection, three meet in `u + v + w`, and `N ∩ D` is computed by
/// [`intersect_loci`] at level `m`.
pub fn expand_base_locus(m: u32) -> Result<Vec<BaseTerm>> {
    let table = build_bielliptic_table();
    let mut terms = Vec::new();
    for mask in 0u16..256 {
        let surfaces: Vec<u8> = (1..=8).filter(|k| mask & (1 << (k - 1)) != 0).collect();
        let d_centres: Vec<TorsionPt> = (1..=8).filter(|k| mask & (1 << (k - 1)) == 0).map(|k| eta(k).mul(2)).collect();
        let points = if d_centres.len() >= 4 {
            BTreeSet::new()
        } else {
            let curves = common_ncurves(&surfaces, &table);
            let mut pts = BTreeSet::new();
            for k in curves {
                let n = ParamLocus::n(eta(k));
                match d_centres.len() {
                    3 => {
                        let p = Triple::new(d_centres[0], d_centres[1], d_centres[2]);
                        if n.contains_point(&p) {
                            pts.insert(p);
                        }
                    }
                    len => {
                        // fewer than two D's would leave a whole curve
                        if len < 2 {
                            return Err(Error::InsufficientLevel(format!(
                                "term with {len} D's has a positive-dimensional part"
                            )));
                        }
                        let mut acc: Option<BTreeSet<Triple>> = None;
                        for u in &d_centres {
                            let s = intersect_loci(&n, &ParamLocus::d(*u), m)?;
                            acc = Some(match acc {
                                None => s,
                                Some(a) => a.intersection(&s).copied().collect(),
                            });
                        }
                        pts.extend(acc.unwrap_or_default());
                    }
                }
            }
            pts
        };
        terms.push(BaseTerm { surfaces, d_centres, points });
    }
    Ok(terms)
}

/// Union of all terms of [`expand_base_locus`].
pub fn enumerate_base_points(m: u32) -> Result<BTreeSet<Triple>> {
    Ok(expand_base_locus(m)?.into_iter().flat_map(|t| t.points).collect())
}

/// The four points `0 + eta_k + 2 eta_k`.
pub fn expected_base_points() -> BTreeSet<Triple> {
    (1..=4).map(|k| Triple::new(TorsionPt::zero(), eta(k), eta(k).mul(2))).collect()
}

pub fn fmt_triples(s: &BTreeSet<Triple>) -> String {
    if s.is_empty() {
        return "{}".into();
    }
    format!("{{{}}}", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

/// Level needed by the checks that enumerate torsion: constants lie in
/// `E[6]` and multipliers are at most 2, so solutions lie in `E[24]`.
pub const SEARCH_LEVEL: u32 = 24;

const SUITE: &str = "torsion";

fn gated(level: u32, need: u32, id: String, claim: &str, f: impl FnOnce() -> Result<(String, String)>) -> CheckResult {
    if level % need != 0 {
        return CheckResult::skip(SUITE, id, claim, format!("INSUFFICIENT_LEVEL: needs E[{need}], level is {level}"));
    }
    timed(|| match f() {
        Ok((e, a)) => CheckResult::equal(SUITE, id.clone(), claim, &e, &a),
        Err(err) => CheckResult::equal(SUITE, id.clone(), claim, &"no error".to_string(), &err.to_string()),
    })
}

fn set_of<const N: usize>(ts: [Triple; N]) -> BTreeSet<Triple> {
    ts.into_iter().collect()
}

/// Every torsion-locus check at search level `level`.
pub fn verify_torsion(table: &Table, level: u32) -> Vec<CheckResult> {
    let o = TorsionPt::zero();
    let mut out = Vec::new();

    for k in 1..=4 {
        out.push(gated(
            level,
            SEARCH_LEVEL,
            format!("n-meets-d0/eta{k}"),
            "N(eta) meets D_0 only in 0 + eta + 2eta",
            || {
                let s = intersect_loci(&ParamLocus::n(eta(k)), &ParamLocus::d(o), level)?;
                Ok((fmt_triples(&set_of([Triple::new(o, eta(k), eta(k).mul(2))])), fmt_triples(&s)))
            },
        ));
        out.push(gated(
            level,
            SEARCH_LEVEL,
            format!("n-meets-du/eta{k}"),
            "N(eta) meets every D_u, u in E[6], in one point",
            || {
                let mut sizes = BTreeSet::new();
                for u in TorsionPt::all_at(6) {
                    sizes.insert(intersect_loci(&ParamLocus::n(eta(k)), &ParamLocus::d(u), level)?.len());
                }
                Ok(("{1}".to_string(), format!("{sizes:?}")))
            },
        ));
    }

    for i in 1..=3u8 {
        out.push(gated(
            level,
            SEARCH_LEVEL,
            format!("ell-meets-f0/l{i}"),
            "l_i meets F_0 in xi1 + xi2 + xi3 and 0 + xi_i + xi_i",
            || {
                let s = intersect_loci(&ParamLocus::ell(i), &ParamLocus::f(o), level)?;
                let want = set_of([Triple::new(xi(1), xi(2), xi(3)), Triple::new(o, xi(i), xi(i))]);
                Ok((fmt_triples(&want), fmt_triples(&s)))
            },
        ));
    }

    for (i, j) in [(1u8, 2u8), (1, 3), (2, 3)] {
        out.push(gated(
            level,
            SEARCH_LEVEL,
            format!("gamma-meets-d0/Gamma{i}{j}"),
            "Gamma meets D_0 in the three points 0 + xi_a + xi_b",
            || {
                let s = intersect_loci(&ParamLocus::gamma(i, j), &ParamLocus::d(o), level)?;
                let want =
                    set_of([Triple::new(o, xi(1), xi(2)), Triple::new(o, xi(1), xi(3)), Triple::new(o, xi(2), xi(3))]);
                Ok((fmt_triples(&want), fmt_triples(&s)))
            },
        ));
    }

    // xi1 + xi2 + xi3 lies on every l_i but has no zero summand, so it is
    // not on D_0; it is the extra point of l_i on F_0 instead
    out.push(gated(
        level,
        SEARCH_LEVEL,
        "sing-y-meets-d0".into(),
        "the curves l_i meet D_0 exactly in the points 0 + xi_i + xi_i",
        || {
            let mut s = BTreeSet::new();
            for i in 1..=3 {
                s.extend(intersect_loci(&ParamLocus::ell(i), &ParamLocus::d(o), level)?);
            }
            let want: BTreeSet<Triple> = (1..=3).map(|i| Triple::new(o, xi(i), xi(i))).collect();
            Ok((fmt_triples(&want), fmt_triples(&s)))
        },
    ));
    out.push(gated(
        level,
        SEARCH_LEVEL,
        "gamma-d0-avoids-sing-y".into(),
        "no point of Gamma on D_0 lies on a curve l_i",
        || {
            let pts = intersect_loci(&ParamLocus::gamma(1, 2), &ParamLocus::d(o), level)?;
            let bad: BTreeSet<Triple> =
                pts.into_iter().filter(|p| (1..=3).any(|i| ParamLocus::ell(i).contains_point(p))).collect();
            Ok(("{}".to_string(), fmt_triples(&bad)))
        },
    ));

    for i in 1..=3u8 {
        for k in 1..=4u8 {
            out.push(gated(
                level,
                SEARCH_LEVEL,
                format!("psi-misses-n/xi{i}/eta{k}"),
                "Psi(xi) and N(eta) are disjoint",
                || {
                    let s = intersect_loci(&ParamLocus::psi(xi(i)), &ParamLocus::n(eta(k)), level)?;
                    Ok(("{}".to_string(), fmt_triples(&s)))
                },
            ));
        }
    }

    for j in 1..=3u8 {
        for k in 1..=4u8 {
            out.push(gated(
                level,
                SEARCH_LEVEL,
                format!("n-meets-a/xi{j}/eta{k}"),
                "N(eta) meets A(xi) in xi + (xi + eta) + (xi + 2eta)",
                || {
                    let s = intersect_loci(&ParamLocus::n(eta(k)), &ParamLocus::a(xi(j)), level)?;
                    let p = Triple::new(xi(j), xi(j).add(&eta(k)), xi(j).add(&eta(k).mul(2)));
                    Ok((fmt_triples(&set_of([p])), fmt_triples(&s)))
                },
            ));
        }
    }

    let y = ParamLocus::y();
    let mut contained: Vec<ParamLocus> = vec![ParamLocus::a(o)];
    contained.extend((1..=3).map(ParamLocus::ell));
    for c in contained {
        out.push(gated(
            level,
            1,
            format!("y-contains/{}", c.name),
            "the surface Y contains A_0 and the curves l_i",
            || Ok(("true".into(), contains_locus(&y, &c)?.to_string())),
        ));
    }
    for k in 1..=4u8 {
        out.push(gated(
            level,
            1,
            format!("y-contains/0+eta{k}+2eta{k}"),
            "the surface Y contains 0 + eta + 2eta",
            || Ok(("true".into(), membership(&Triple::new(o, eta(k), eta(k).mul(2)), &y).to_string())),
        ));
    }

    for (a, t, m, want) in [
        (2i64, o, 24u32, "4 solutions"),
        (3, eta(1), 36, "9 solutions"),
        (3, eta(1), 12, "INSUFFICIENT_LEVEL"),
        (-1, xi(2), 6, "1 solutions"),
    ] {
        out.push(gated(
            level,
            1,
            format!("solve-linear/{a}x={t}/E[{m}]"),
            "a x = t has a^2 solutions once the level contains them",
            || {
                let got = match solve_linear(a, &t, m) {
                    Ok(v) => format!("{} solutions", v.len()),
                    Err(Error::InsufficientLevel(_)) => "INSUFFICIENT_LEVEL".into(),
                    Err(e) => e.to_string(),
                };
                Ok((want.to_string(), got))
            },
        ));
    }

    match compare_bielliptic(table) {
        Ok(rs) => out.extend(rs),
        Err(e) => out.push(CheckResult::equal(
            SUITE,
            "bielliptic/read",
            "printed table is readable",
            &"ok".to_string(),
            &e.to_string(),
        )),
    }

    out.push(gated(
        level,
        SEARCH_LEVEL,
        "base-points/union".into(),
        "the base locus is the four points 0 + eta + 2eta",
        || Ok((fmt_triples(&expected_base_points()), fmt_triples(&enumerate_base_points(level)?))),
    ));
    out.push(gated(
        level,
        SEARCH_LEVEL,
        "base-points/stable".into(),
        "the base locus does not grow when the level doubles",
        || Ok((fmt_triples(&enumerate_base_points(level)?), fmt_triples(&enumerate_base_points(2 * level)?))),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn o() -> TorsionPt {
        TorsionPt::zero()
    }

    #[test]
    fn normalisation() {
        assert_eq!(TorsionPt::new(6, 3, 0), xi(1));
        assert_eq!(TorsionPt::new(12, 0, 4), eta(1));
        assert_eq!(TorsionPt::new(5, 5, 10), o());
        assert_eq!(eta(1).mul(3), o());
        assert_eq!(eta(5), eta(1).neg());
        assert_eq!(xi(1).add(&xi(2)), xi(3));
    }

    #[test]
    fn eta_and_xi_tables() {
        for k in 1..=8 {
            assert_eq!(eta(k).order(), 3);
            assert_eq!(eta_index(&eta(k)), Some(k));
        }
        assert_eq!(eta_class(&eta(6)), Some(2));
        assert_eq!(eta_class(&xi(1)), None);
    }

    #[test]
    fn solve_linear_counts() {
        assert_eq!(solve_linear(2, &o(), 24).unwrap().len(), 4);
        assert_eq!(solve_linear(3, &eta(1), 36).unwrap().len(), 9);
        assert_eq!(solve_linear(-1, &xi(2), 6).unwrap(), vec![xi(2)]);
        assert_eq!(solve_linear(0, &o(), 3).unwrap().len(), 9);
        assert!(solve_linear(0, &xi(1), 6).unwrap().is_empty());
    }

    #[test]
    fn solve_linear_rejects_incomplete_levels() {
        // 3x = eta1 has no solution in E[12] but 9 in E[9]
        assert!(matches!(solve_linear(3, &eta(1), 12), Err(Error::InsufficientLevel(_))));
        assert!(matches!(solve_linear(1, &eta(1), 4), Err(Error::InsufficientLevel(_))));
        let brute: Vec<TorsionPt> = TorsionPt::all_at(12).filter(|x| x.mul(3) == eta(1)).collect();
        assert!(brute.is_empty());
    }

    #[test]
    fn n_curve_meets_d0_once() {
        for k in 1..=4 {
            let s = intersect_loci(&ParamLocus::n(eta(k)), &ParamLocus::d(o()), 24).unwrap();
            assert_eq!(s, [Triple::new(o(), eta(k), eta(k).mul(2))].into_iter().collect());
        }
    }

    #[test]
    fn ell_meets_f0_twice() {
        for i in 1..=3 {
            let s = intersect_loci(&ParamLocus::ell(i), &ParamLocus::f(o()), 24).unwrap();
            let want: BTreeSet<Triple> =
                [Triple::new(o(), xi(i), xi(i)), Triple::new(xi(1), xi(2), xi(3))].into_iter().collect();
            assert_eq!(s, want);
        }
    }

    #[test]
    fn gamma_meets_d0_in_three_points() {
        let s = intersect_loci(&ParamLocus::gamma(1, 2), &ParamLocus::d(o()), 24).unwrap();
        let want: BTreeSet<Triple> =
            [Triple::new(o(), xi(1), xi(2)), Triple::new(o(), xi(1), xi(3)), Triple::new(o(), xi(2), xi(3))]
                .into_iter()
                .collect();
        assert_eq!(s, want);
    }

    #[test]
    fn y_contains_expected_points_and_curves() {
        let y = ParamLocus::y();
        for k in 1..=4 {
            assert!(membership(&Triple::new(o(), eta(k), eta(k).mul(2)), &y));
        }
        assert!(contains_locus(&y, &ParamLocus::a(o())).unwrap());
        for i in 1..=3 {
            assert!(contains_locus(&y, &ParamLocus::ell(i)).unwrap());
        }
        assert!(!contains_locus(&y, &ParamLocus::n(eta(1))).unwrap());
        assert!(!contains_locus(&ParamLocus::d(o()), &ParamLocus::a(xi(1))).unwrap());
        assert!(contains_locus(&ParamLocus::d(xi(1)), &ParamLocus::a(xi(1))).unwrap());
        assert!(contains_locus(&ParamLocus::f(xi(1)), &ParamLocus::a(xi(1))).unwrap());
        assert!(contains_locus(&ParamLocus::d(eta(2)), &ParamLocus::m(eta(2))).unwrap());
    }

    #[test]
    fn insufficient_level_is_reported() {
        let r = intersect_loci(&ParamLocus::n(eta(1)), &ParamLocus::d(xi(1)), 3);
        assert!(matches!(r, Err(Error::InsufficientLevel(_))));
    }

    #[test]
    fn ncycle_parsing() {
        let c = parse_ncycle("eta3, 2eta4").unwrap();
        assert_eq!(c, [(3, 1), (4, 2)].into_iter().collect());
        assert_eq!(fmt_ncycle(&c), "eta3, 2eta4");
        assert!(parse_ncycle("eta5").is_err());
        assert!(parse_ncycle("eta1, 2eta1").is_err());
    }

    #[test]
    fn rule_is_symmetric_and_avoids_own_curves() {
        let t = build_bielliptic_table();
        for ((i, j), c) in &t {
            assert_eq!(c, &t[&(*j, *i)]);
            let own = [eta_class(&eta(*i)).unwrap(), eta_class(&eta(*j)).unwrap()];
            for k in c.keys() {
                assert!(!own.contains(k));
            }
            let deg: u8 = c.values().sum();
            assert_eq!(deg, 3);
        }
        assert_eq!(fmt_ncycle(&t[&(1, 2)]), "eta3, 2eta4");
        assert_eq!(fmt_ncycle(&t[&(1, 5)]), "eta2, eta3, eta4");
    }

    fn torsion_pt(m: u32) -> impl Strategy<Value = TorsionPt> {
        (0..m, 0..m).prop_map(move |(x, y)| TorsionPt::new(m, x as i64, y as i64))
    }

    fn named_curve() -> impl Strategy<Value = ParamLocus> {
        prop_oneof![
            (1u8..=3).prop_map(|i| ParamLocus::a(xi(i))),
            (1u8..=3, 1u8..=3).prop_filter("distinct", |(i, j)| i != j).prop_map(|(i, j)| ParamLocus::b(i, j)),
            (1u8..=4).prop_map(|k| ParamLocus::n(eta(k))),
            (1u8..=4).prop_map(|k| ParamLocus::m(eta(k))),
            (1u8..=3).prop_map(ParamLocus::ell),
            Just(ParamLocus::a(TorsionPt::zero())),
        ]
    }

    fn named_surface() -> impl Strategy<Value = ParamLocus> {
        prop_oneof![
            torsion_pt(6).prop_map(ParamLocus::d),
            torsion_pt(6).prop_map(ParamLocus::f),
            Just(ParamLocus::y()),
            (1u8..=3).prop_map(|i| ParamLocus::psi(xi(i))),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn fast_and_generic_membership_agree(s in named_surface(), p in torsion_pt(12), q in torsion_pt(12), r in torsion_pt(6)) {
            let t = Triple::new(p, q, r);
            prop_assert_eq!(s.contains_point(&t), s.contains_point_generic(&t));
        }

        #[test]
        fn intersection_is_symmetric(c in named_curve(), d in named_curve()) {
            prop_assert_eq!(intersect_loci(&c, &d, 12).unwrap(), intersect_loci(&d, &c, 12).unwrap());
        }

        #[test]
        fn containment_matches_pointwise_oracle(s in named_surface(), c in named_curve()) {
            let pointwise = c.points(12).iter().all(|p| s.contains_point(p));
            prop_assert_eq!(contains_locus(&s, &c).unwrap(), pointwise);
        }

        #[test]
        fn n_meets_every_d_once(u in torsion_pt(6), k in 1u8..=4) {
            let s = intersect_loci(&ParamLocus::n(eta(k)), &ParamLocus::d(u), 24).unwrap();
            prop_assert_eq!(s.len(), 1);
        }

        #[test]
        fn solve_linear_matches_brute_force(a in -3i64..=3, t in torsion_pt(6)) {
            let m = 36;
            let brute: Vec<TorsionPt> = TorsionPt::all_at(m).filter(|x| x.mul(a) == t).collect();
            let mut brute = brute;
            brute.sort();
            if a == 0 || m % (a.unsigned_abs() as u32 * t.order()) == 0 {
                let s = solve_linear(a, &t, m).unwrap();
                if a != 0 {
                    prop_assert_eq!(s.len() as i64, a * a);
                }
                prop_assert_eq!(s, brute);
            }
        }
    }
}
