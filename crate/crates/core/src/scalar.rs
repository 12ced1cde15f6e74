//! Exact scalars, exponents, and certified p-th root enclosures.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::{Error, Rational, Result};

/// Exact ordered field element usable as a coefficient.
///
/// Implemented for every type that provides exact signed arithmetic and a
/// total order, which in practice means [`Rational`] or a fixed-width
/// `Ratio<i64>` for small experiments.
pub trait Scalar: Clone + Ord + Signed + FromPrimitive + fmt::Debug + fmt::Display {}

impl<T> Scalar for T where T: Clone + Ord + Signed + FromPrimitive + fmt::Debug + fmt::Display {}

/// Exact `k`-th power; `rat_pow(x, 0) == 1`.
pub fn rat_pow<S: Scalar>(x: &S, k: u32) -> S {
    num_traits::pow(x.clone(), k as usize)
}

/// Norm exponent: a positive integer or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    Finite(u32),
    Infinity,
}

impl Exponent {
    pub fn finite(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidExponent("0".into()));
        }
        Ok(Exponent::Finite(p))
    }

    pub fn as_finite(self) -> Option<u32> {
        match self {
            Exponent::Finite(p) => Some(p),
            Exponent::Infinity => None,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            other => {
                let p: u32 = other.parse().map_err(|_| Error::InvalidExponent(other.to_string()))?;
                Exponent::finite(p)
            }
        }
    }
}

/// Closed rational interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    /// Panics if `lo > hi`.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "enclosure bounds out of order: {lo} > {hi}");
        Enclosure { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Scales by a nonnegative factor.
    pub fn scale(&self, k: &Rational) -> Enclosure {
        debug_assert!(!k.is_negative());
        Enclosure { lo: &self.lo * k, hi: &self.hi * k }
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    /// Square of a nonnegative enclosure.
    pub fn square(&self) -> Enclosure {
        debug_assert!(!self.lo.is_negative());
        Enclosure { lo: &self.lo * &self.lo, hi: &self.hi * &self.hi }
    }

    /// Certain ordering of the two intervals, or `None` when they overlap
    /// without both collapsing to the same point.
    pub fn compare(&self, other: &Enclosure) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        if self.is_point() && other.is_point() {
            return Some(self.lo.cmp(&other.lo));
        }
        if self.hi < other.lo {
            Some(Less)
        } else if self.lo > other.hi {
            Some(Greater)
        } else {
            None
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Exact integer `p`-th root of a nonnegative integer, if it exists.
fn exact_int_root(n: &BigInt, p: u32) -> Option<BigInt> {
    let r = n.nth_root(p);
    (num_traits::pow(r.clone(), p as usize) == *n).then_some(r)
}

/// Exact rational `p`-th root of `x >= 0`, if it exists.
pub fn exact_root(x: &Rational, p: u32) -> Option<Rational> {
    if x.is_negative() || p == 0 {
        return None;
    }
    let num = exact_int_root(x.numer(), p)?;
    let den = exact_int_root(x.denom(), p)?;
    Some(Rational::new(num, den))
}

/// Smallest `k` with `2^-k <= width`.
fn dyadic_level(width: &Rational) -> u64 {
    let (a, b) = (width.numer(), width.denom());
    let mut k = b.bits().saturating_sub(a.bits());
    while (a << k) < *b {
        k += 1;
    }
    k
}

/// Encloses `x^(1/p)` in a rational interval no wider than `width`.
///
/// Perfect powers collapse to a point. Otherwise the bounds are consecutive
/// dyadic rationals `r/2^k, (r+1)/2^k` with `r = floor(2^k x^(1/p))`, computed
/// from an integer root so no rounding is involved.
pub fn root_enclosure(x: &Rational, p: u32, width: &Rational) -> Result<Enclosure> {
    if x.is_negative() {
        return Err(Error::NegativeRadicand(x.to_string()));
    }
    if !width.is_positive() {
        return Err(Error::NonPositiveWidth(width.to_string()));
    }
    if p == 0 {
        return Err(Error::InvalidExponent("0".into()));
    }
    if let Some(r) = exact_root(x, p) {
        return Ok(Enclosure::point(r));
    }
    let k = dyadic_level(width);
    let shift = k * u64::from(p);
    let scaled = (x.numer() << shift) / x.denom();
    let r = scaled.nth_root(p);
    let den = BigInt::one() << k;
    let lo = Rational::new(r.clone(), den.clone());
    let hi = Rational::new(r + 1, den);
    Ok(Enclosure::new(lo, hi))
}

/// Parses `"num/den"`, integers, or decimals such as `"-1.25"` and `"1e-30"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim().replace('−', "-");
    if t.is_empty() {
        return Err(Error::parse("rational", s, "empty"));
    }
    if t.contains('/') {
        let (n, d) = t.split_once('/').unwrap();
        let n: BigInt = n.trim().parse().map_err(|_| Error::parse("rational", s, "bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::parse("rational", s, "bad denominator"))?;
        if d.is_zero() {
            return Err(Error::parse("rational", s, "zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }

    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = t[i + 1..].parse().map_err(|_| Error::parse("rational", s, "bad exponent"))?;
            (&t[..i], e)
        }
        None => (t.as_str(), 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(Error::parse("rational", s, "not a number"));
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().unwrap();
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let mut value = if scale >= 0 {
        Rational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

/// Canonical text form: reduced, sign on the numerator, integers without `/1`.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// `2^-k` as an exact rational.
pub fn pow2_inv(k: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

/// `base^k` as an exact rational.
pub fn int_pow(base: i64, k: u32) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(base), k as usize))
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
