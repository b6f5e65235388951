//! Exact arithmetic: reduced rationals, Laurent polynomials in π with
//! rational coefficients, ε-expansions with π-Laurent coefficients, and the
//! handful of number-theoretic primitives the invariant formulas need.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, always reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Panics when `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Largest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn pow(&self, e: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, e))
    }

    /// The exact value of a finite float.
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Rational)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Integer value as `i64`, if `self` is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    /// Exact square root when both numerator and denominator are perfect
    /// squares.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::from_bigints(n, d))
        } else {
            None
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

macro_rules! rational_binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign_method:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($tr::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(&self.0, rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational($tr::$method(&self.0, &rhs.0))
            }
        }
        impl $assign_tr<Rational> for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                $assign_tr::$assign_method(&mut self.0, rhs.0);
            }
        }
        impl<'a> $assign_tr<&'a Rational> for Rational {
            fn $assign_method(&mut self, rhs: &'a Rational) {
                $assign_tr::$assign_method(&mut self.0, &rhs.0);
            }
        }
    };
}

rational_binop!(Add, add, AddAssign, add_assign);
rational_binop!(Sub, sub, SubAssign, sub_assign);
rational_binop!(Mul, mul, MulAssign, mul_assign);

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'b> Div<&'b Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &'b Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl<'a> Div<&'a Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Rational::from_bigints(parse_int(n)?, d))
            }
            None => Ok(Rational::from(parse_int(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(n) => Ok(Rational::from_integer(n)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Inverse of `a` modulo `m`, in `[1, m)`. By convention the inverse modulo
/// 1 is 0.
pub fn mod_inverse(a: i64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::DomainError("modulus must be positive".into()));
    }
    if m == 1 {
        return Ok(0);
    }
    let m_i = m as i128;
    let a_red = (a as i128).rem_euclid(m_i);
    let eg = a_red.extended_gcd(&m_i);
    if eg.gcd != 1 {
        return Err(Error::NotInvertible { a, m });
    }
    Ok(eg.x.rem_euclid(m_i) as u64)
}

/// Fractional part `x - floor(x)`, always in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - Rational::from(x.floor())
}

/// ζ(0, x) = 1/2 - x for the Hurwitz zeta function, `0 < x <= 1`.
pub fn hurwitz_zeta_at_zero(x: &Rational) -> Result<Rational> {
    if !x.is_positive() || *x > Rational::one() {
        return Err(Error::DomainError(format!(
            "hurwitz zeta at 0 needs 0 < x <= 1, got {x}"
        )));
    }
    Ok(Rational::new(1, 2) - x)
}

/// ζ(-1) = -1/12.
pub fn zeta_at_minus_one() -> Rational {
    Rational::new(-1, 12)
}

/// Smallest π exponent representable in a [`PiLaurent`].
pub const PI_EXP_MIN: i32 = -4;
/// Largest π exponent representable in a [`PiLaurent`].
pub const PI_EXP_MAX: i32 = 4;

fn check_pi_exp(e: i32) -> Result<()> {
    if (PI_EXP_MIN..=PI_EXP_MAX).contains(&e) {
        Ok(())
    } else {
        Err(Error::ExponentOverflow(e))
    }
}

/// Finite sum Σ cₑ πᵉ with rational coefficients and `e` in `[-4, 4]`.
///
/// Zero coefficients are never stored, so structural equality is value
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PiLaurent {
    coeffs: BTreeMap<i32, Rational>,
}

impl PiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(r: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(0, r);
        p
    }

    /// The monomial c·πᵉ.
    pub fn monomial(c: Rational, e: i32) -> Result<Self> {
        check_pi_exp(e)?;
        let mut p = Self::zero();
        p.add_term(e, c);
        Ok(p)
    }

    /// π^e.
    pub fn pi_pow(e: i32) -> Result<Self> {
        Self::monomial(Rational::one(), e)
    }

    fn add_term(&mut self, e: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i32) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The value as a rational, if no π-power survives.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        PiLaurent {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                let e = ea + eb;
                check_pi_exp(e)?;
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// Division by a single-term divisor c·πᵉ.
    pub fn checked_div_monomial(&self, rhs: &Self) -> Result<Self> {
        let mut it = rhs.coeffs.iter();
        match (it.next(), it.next()) {
            (Some((e, c)), None) => {
                let inv =
                    PiLaurent::monomial(c.recip().expect("stored coefficients are nonzero"), -e)?;
                self.checked_mul(&inv)
            }
            (None, _) => Err(Error::DomainError("division by zero".into())),
            _ => Err(Error::DomainError(format!(
                "divisor {rhs} is not a monomial"
            ))),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(e, c)| c.to_f64() * std::f64::consts::PI.powi(*e))
            .sum()
    }
}

impl From<Rational> for PiLaurent {
    fn from(r: Rational) -> Self {
        PiLaurent::rational(r)
    }
}

impl<'b> Add<&'b PiLaurent> for &PiLaurent {
    type Output = PiLaurent;
    fn add(self, rhs: &'b PiLaurent) -> PiLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for PiLaurent {
    type Output = PiLaurent;
    fn add(self, rhs: PiLaurent) -> PiLaurent {
        &self + &rhs
    }
}

impl<'b> Sub<&'b PiLaurent> for &PiLaurent {
    type Output = PiLaurent;
    fn sub(self, rhs: &'b PiLaurent) -> PiLaurent {
        self + &(-rhs)
    }
}

impl Sub for PiLaurent {
    type Output = PiLaurent;
    fn sub(self, rhs: PiLaurent) -> PiLaurent {
        &self - &rhs
    }
}

impl Neg for &PiLaurent {
    type Output = PiLaurent;
    fn neg(self) -> PiLaurent {
        PiLaurent {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for PiLaurent {
    type Output = PiLaurent;
    fn neg(self) -> PiLaurent {
        -&self
    }
}

impl fmt::Display for PiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let pi = match e {
                0 => String::new(),
                1 => "pi".to_string(),
                _ => format!("pi^{e}"),
            };
            match (*e, mag == Rational::one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{pi}")?,
                _ => write!(f, "{mag}*{pi}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PiLaurent {
    type Err = Error;

    /// Accepts the display syntax: terms `c`, `c*pi^e`, `pi^e`, `c*pi`, `pi`
    /// joined by `+`/`-`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad pi-Laurent value {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // Split into signed terms; a '-' right after '^' belongs to the exponent.
        let mut terms = Vec::new();
        let mut current = String::new();
        let mut prev = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !current.is_empty() && prev != Some('^') {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        terms.push(current);

        let mut out = PiLaurent::zero();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coef, exp) = match body.find("pi") {
                None => (body.parse::<Rational>()?, 0),
                Some(pos) => {
                    let coef = match &body[..pos] {
                        "" => Rational::one(),
                        c => c.strip_suffix('*').ok_or_else(bad)?.parse::<Rational>()?,
                    };
                    let exp = match &body[pos + 2..] {
                        "" => 1,
                        rest => rest
                            .strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<i32>()
                            .map_err(|_| bad())?,
                    };
                    (coef, exp)
                }
            };
            check_pi_exp(exp)?;
            out.add_term(exp, if neg { -coef } else { coef });
        }
        Ok(out)
    }
}

impl Serialize for PiLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PiLaurent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub const EPS_EXP_MIN: i32 = -2;
pub const EPS_EXP_MAX: i32 = 2;

/// Σ ηᵢ εⁱ for i in `[-2, 2]`, coefficients in π-Laurent form.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentEps {
    coeffs: BTreeMap<i32, PiLaurent>,
}

impl LaurentEps {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn set(&mut self, e: i32, c: PiLaurent) -> Result<()> {
        if !(EPS_EXP_MIN..=EPS_EXP_MAX).contains(&e) {
            return Err(Error::DomainError(format!(
                "eps exponent {e} outside [-2, 2]"
            )));
        }
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
        Ok(())
    }

    pub fn coeff(&self, e: i32) -> PiLaurent {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// Exponents carrying a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = i32> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn eval_f64(&self, eps: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(e, c)| c.to_f64() * eps.powi(*e))
            .sum()
    }
}

impl fmt::Display for LaurentEps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| format!("eps^{e}: {c}"))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl fmt::Debug for LaurentEps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A value that is exact when possible and floating-point otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Exact(Rational),
    Approx(f64),
}

impl Number {
    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(r) => r.to_f64(),
            Number::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Number::Exact(r) => Some(r),
            Number::Approx(_) => None,
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Exact(r) => write!(f, "{r}"),
            Number::Approx(x) => write!(f, "{x:.12}"),
        }
    }
}

/// A user-supplied integral: exact when given as a π-Laurent value.
#[derive(Clone, Debug, PartialEq)]
pub enum Integral {
    Exact(PiLaurent),
    Approx(f64),
}

impl FromStr for Integral {
    type Err = Error;

    /// Anything mentioning `pi` or `/` is parsed exactly; plain decimals are
    /// floats unless they are integers.
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(p) = s.parse::<PiLaurent>() {
            return Ok(Integral::Exact(p));
        }
        s.trim()
            .parse::<f64>()
            .map(Integral::Approx)
            .map_err(|_| Error::Parse(format!("bad integral {s:?}")))
    }
}
