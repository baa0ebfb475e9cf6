//! Exact arithmetic: arbitrary-precision rationals and the Eisenstein field
//! `Q(w)`, `w^2 + w + 1 = 0`.
//!
//! Every element of `Q(w)` is stored as `a + b*w` with `a, b` rational, so
//! equality is structural.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::check::{timed, CheckResult};
use crate::error::{Error, Result};

/// Reduced rational with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num.into(), den.into())))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// `Some(n)` iff the value is an integer fitting in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rat) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "rational", input: s.to_string() };
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Rat::from_big(n, d)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(self.0.$m(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

/// Panics on a zero divisor; use [`Rat::checked_div`] for fallible division.
impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

/// Element `a + b*w` of `Q(w)` where `w^2 = -1 - w`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Eis {
    pub a: Rat,
    pub b: Rat,
}

impl Eis {
    pub fn new(a: Rat, b: Rat) -> Self {
        Eis { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Eis::new(a.into(), b.into())
    }

    pub fn zero() -> Self {
        Eis::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Eis::from_ints(1, 0)
    }

    /// The primitive cube root of unity `w`.
    pub fn w() -> Self {
        Eis::from_ints(0, 1)
    }

    /// `w^k` for any integer `k`; exponents are read mod 3.
    pub fn w_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Eis::one(),
            1 => Eis::w(),
            _ => Eis::from_ints(-1, -1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a == Rat::one() && self.b.is_zero()
    }

    /// Galois conjugate `w -> w^2`: `(a - b) - b*w`.
    pub fn conj(&self) -> Self {
        Eis::new(&self.a - &self.b, -&self.b)
    }

    /// Field norm `a^2 - ab + b^2`; zero only at zero.
    pub fn norm(&self) -> Rat {
        &(&(&self.a * &self.a) - &(&self.a * &self.b)) + &(&self.b * &self.b)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ni = n.inv()?;
        let c = self.conj();
        Ok(Eis::new(&c.a * &ni, &c.b * &ni))
    }

    pub fn checked_div(&self, rhs: &Eis) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Eis::new(&self.a * r, &self.b * r)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Eis::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<Rat> for Eis {
    fn from(r: Rat) -> Self {
        Eis::new(r, Rat::zero())
    }
}

impl From<i64> for Eis {
    fn from(n: i64) -> Self {
        Eis::from_ints(n, 0)
    }
}

impl fmt::Display for Eis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·w", self.a, self.b)
    }
}

impl fmt::Debug for Eis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts the canonical `"a + b·w"` (also `*w`) and bare rationals.
impl FromStr for Eis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "Eisenstein number", input: s.to_string() };
        let t = s.trim();
        let body = t.strip_suffix("·w").or_else(|| t.strip_suffix("*w")).map(str::trim_end);
        match body {
            None => Ok(Eis::from(t.parse::<Rat>().map_err(|_| bad())?)),
            Some(body) => {
                let (a, b) = body.split_once(" + ").ok_or_else(bad)?;
                Ok(Eis::new(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
            }
        }
    }
}

impl Add<&Eis> for &Eis {
    type Output = Eis;
    fn add(self, rhs: &Eis) -> Eis {
        Eis::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub<&Eis> for &Eis {
    type Output = Eis;
    fn sub(self, rhs: &Eis) -> Eis {
        Eis::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

// (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd)w
impl Mul<&Eis> for &Eis {
    type Output = Eis;
    fn mul(self, rhs: &Eis) -> Eis {
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let ad = &self.a * &rhs.b;
        let bc = &self.b * &rhs.a;
        Eis::new(&ac - &bd, &(&ad + &bc) - &bd)
    }
}

/// Panics on a zero divisor; use [`Eis::checked_div`] for fallible division.
impl Div<&Eis> for &Eis {
    type Output = Eis;
    fn div(self, rhs: &Eis) -> Eis {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! eis_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Eis> for Eis {
            type Output = Eis;
            fn $m(self, rhs: Eis) -> Eis {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Eis> for Eis {
            type Output = Eis;
            fn $m(self, rhs: &Eis) -> Eis {
                (&self).$m(rhs)
            }
        }
    };
}

eis_owned!(Add, add);
eis_owned!(Sub, sub);
eis_owned!(Mul, mul);

impl Neg for &Eis {
    type Output = Eis;
    fn neg(self) -> Eis {
        Eis::new(-&self.a, -&self.b)
    }
}

impl Neg for Eis {
    type Output = Eis;
    fn neg(self) -> Eis {
        -&self
    }
}

impl AddAssign<&Eis> for Eis {
    fn add_assign(&mut self, rhs: &Eis) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&Eis> for Eis {
    fn sub_assign(&mut self, rhs: &Eis) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Eis> for Eis {
    fn mul_assign(&mut self, rhs: &Eis) {
        *self = &*self * rhs;
    }
}

const SUITE: &str = "field";

/// Reference identities of `Q(w)`.
pub fn verify_field() -> Vec<CheckResult> {
    let w = Eis::w();
    let one = Eis::one();
    let e = |a: i64, b: i64| Eis::from_ints(a, b);
    let show = |r: Result<Eis>| r.map_or_else(|err| err.to_string(), |v| v.to_string());
    let cases: Vec<(&str, &str, Eis, Eis)> = vec![
        ("mul/w*w", "w^2 = -1 - w", e(-1, -1), &w * &w),
        ("mul/(1+w)^2", "(1 + w)^2 = w", w.clone(), &e(1, 1) * &e(1, 1)),
        ("add/w+w^2", "1 + w + w^2 = 0", e(-1, 0), &w + &(&w * &w)),
        ("pow/w^3", "w^3 = 1", one.clone(), w.pow(3)),
    ];
    let mut out: Vec<CheckResult> = cases
        .into_iter()
        .map(|(id, claim, want, got)| timed(|| CheckResult::equal(SUITE, id, claim, &want, &got)))
        .collect();
    for (id, x, want) in
        [("inv/1", one.clone(), one.clone()), ("inv/w", w.clone(), e(-1, -1)), ("inv/1+w", e(1, 1), e(0, -1))]
    {
        out.push(timed(|| CheckResult::equal(SUITE, id, "x * inv(x) = 1", &want.to_string(), &show(x.inv()))));
    }
    out.push(timed(|| {
        CheckResult::equal(
            SUITE,
            "inv/0",
            "zero has no inverse",
            &Error::DivisionByZero.to_string(),
            &show(Eis::zero().inv()),
        )
    }));
    for (id, x, want) in [("norm/w", w.clone(), 1), ("norm/0", Eis::zero(), 0), ("norm/2+w", e(2, 1), 3)] {
        out.push(timed(|| CheckResult::equal(SUITE, id, "N(a + bw) = a^2 - ab + b^2", &Rat::from(want), &x.norm())));
    }
    out.push(timed(|| {
        let x = e(3, -7);
        let round = x.to_string().parse::<Eis>().map(|v| v == x);
        CheckResult::equal(
            SUITE,
            "print/round-trip",
            "printing then parsing is the identity",
            &"true".to_string(),
            &round.map_or_else(|e| e.to_string(), |b| b.to_string()),
        )
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_suite_passes() {
        let rs = verify_field();
        let bad: Vec<_> = rs.iter().filter(|r| !r.passed()).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
    use proptest::prelude::*;

    fn rat() -> impl Strategy<Value = Rat> {
        (-50i64..50, 1i64..12).prop_map(|(n, d)| Rat::new(n, d).unwrap())
    }

    fn eis() -> impl Strategy<Value = Eis> {
        (rat(), rat()).prop_map(|(a, b)| Eis::new(a, b))
    }

    fn nonzero_eis() -> impl Strategy<Value = Eis> {
        eis().prop_filter("nonzero", |e| !e.is_zero())
    }

    #[test]
    fn w_is_a_primitive_cube_root() {
        let w = Eis::w();
        assert_eq!(&(&w * &w) + &w, Eis::from_ints(-1, 0));
        assert_eq!(w.pow(3), Eis::one());
        assert_eq!(w.pow(2), Eis::from_ints(-1, -1));
        assert_eq!(Eis::w_pow(-1), Eis::w_pow(2));
    }

    #[test]
    fn inverse_of_one_plus_w() {
        // (1 + w)^{-1} = -w since (1 + w)(-w) = -w - w^2 = 1
        let x = Eis::from_ints(1, 1);
        assert_eq!(x.inv().unwrap(), Eis::from_ints(0, -1));
        assert_eq!(x.norm(), Rat::one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Eis::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(Rat::zero().inv(), Err(Error::DivisionByZero));
        assert!(Rat::new(1, 0).is_err());
    }

    #[test]
    fn display_and_parse() {
        let x = Eis::new(Rat::new(-1, 2).unwrap(), Rat::from(3));
        assert_eq!(x.to_string(), "-1/2 + 3·w");
        assert_eq!("-1/2 + 3·w".parse::<Eis>().unwrap(), x);
        assert_eq!("-1/2 + 3*w".parse::<Eis>().unwrap(), x);
        assert_eq!("7/3".parse::<Eis>().unwrap(), Eis::from(Rat::new(7, 3).unwrap()));
        assert!("1 + w + w".parse::<Eis>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn field_axioms(x in eis(), y in eis(), z in eis()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x + &Eis::zero(), x.clone());
            prop_assert_eq!(&x * &Eis::one(), x.clone());
            prop_assert_eq!(&x + &(-&x), Eis::zero());
        }

        #[test]
        fn inverses(x in nonzero_eis()) {
            prop_assert_eq!(&x * &x.inv().unwrap(), Eis::one());
        }

        #[test]
        fn norm_is_multiplicative(x in eis(), y in eis()) {
            prop_assert_eq!((&x * &y).norm(), &x.norm() * &y.norm());
        }

        #[test]
        fn norm_is_product_with_conjugate(x in eis()) {
            prop_assert_eq!(&x * &x.conj(), Eis::from(x.norm()));
        }

        #[test]
        fn print_parse_roundtrip(x in eis()) {
            prop_assert_eq!(x.to_string().parse::<Eis>().unwrap(), x);
        }
    }
}
