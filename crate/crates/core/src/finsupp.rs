//! Finitely supported sequences `C_c(N)` with the `p`-norm family.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;


use crate::scalar::{parse_rational, rat_pow, Scalar};
use crate::{Error, Rational};

/// Position in the index set. The index set is the naturals in their usual
/// order; polynomial coefficient vectors also use index 0 for the constant.
pub type Index = u64;

/// A function `N -> S` that is nonzero at only finitely many indices.
///
/// Zero values are never stored, so the key set is exactly the support and
/// structural equality is equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinSuppVec<S> {
    entries: BTreeMap<Index, S>,
}

impl<S: Scalar> Default for FinSuppVec<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> FinSuppVec<S> {
    pub fn zero() -> Self {
        FinSuppVec { entries: BTreeMap::new() }
    }

    /// Characteristic function of `{k}`.
    pub fn chi(k: Index) -> Self {
        Self::single(k, S::one())
    }

    pub fn single(k: Index, value: S) -> Self {
        let mut v = Self::zero();
        v.set(k, value);
        v
    }

    /// Builds a vector from `(index, value)` pairs, summing repeated indices.
    pub fn from_entries<I: IntoIterator<Item = (Index, S)>>(iter: I) -> Self {
        let mut v = Self::zero();
        for (k, x) in iter {
            let cur = v.coordinate(k);
            v.set(k, cur + x);
        }
        v
    }

    fn set(&mut self, k: Index, value: S) {
        if value.is_zero() {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, value);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = Index> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Index, &S)> + '_ {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    /// `u(k)`, zero outside the support.
    pub fn coordinate(&self, k: Index) -> S {
        self.entries.get(&k).cloned().unwrap_or_else(S::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, x) in other.iter() {
            out.set(k, out.coordinate(k) + x.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, x) in other.iter() {
            out.set(k, out.coordinate(k) - x.clone());
        }
        out
    }

    pub fn scale(&self, lambda: &S) -> Self {
        if lambda.is_zero() {
            return Self::zero();
        }
        FinSuppVec {
            entries: self.entries.iter().map(|(&k, x)| (k, x.clone() * lambda.clone())).collect(),
        }
    }

    /// `‖u‖_p^p = Σ |u(k)|^p`, kept as the exact p-th power.
    pub fn pnorm_pow(&self, p: u32) -> S {
        assert!(p >= 1, "p-norm needs p >= 1");
        self.entries.values().fold(S::zero(), |acc, x| acc + rat_pow(&x.abs(), p))
    }

    /// `max |u(k)|`, zero for the zero vector.
    pub fn supnorm(&self) -> S {
        self.entries.values().map(|x| x.abs()).max().unwrap_or_else(S::zero)
    }

    /// Sum `Σ u(k) v(k)` over the common support.
    pub fn dot(&self, other: &Self) -> S {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small
            .iter()
            .filter_map(|(k, x)| large.entries.get(&k).map(|y| x.clone() * y.clone()))
            .fold(S::zero(), |acc, t| acc + t)
    }

    /// Returns `λ >= 0` with `other = λ·self`, if one exists.
    pub fn nonneg_multiple_of(&self, other: &Self) -> Option<S> {
        if other.is_zero() {
            return Some(S::zero());
        }
        if self.is_zero() || self.len() != other.len() {
            return None;
        }
        let (k0, x0) = self.iter().next()?;
        let lambda = other.coordinate(k0) / x0.clone();
        if lambda.is_negative() {
            return None;
        }
        (self.scale(&lambda) == *other).then_some(lambda)
    }
}

impl<S: Scalar> Add for &FinSuppVec<S> {
    type Output = FinSuppVec<S>;
    fn add(self, rhs: Self) -> FinSuppVec<S> {
        FinSuppVec::add(self, rhs)
    }
}

impl<S: Scalar> Sub for &FinSuppVec<S> {
    type Output = FinSuppVec<S>;
    fn sub(self, rhs: Self) -> FinSuppVec<S> {
        FinSuppVec::sub(self, rhs)
    }
}

impl<S: Scalar> Neg for &FinSuppVec<S> {
    type Output = FinSuppVec<S>;
    fn neg(self) -> FinSuppVec<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> FromIterator<(Index, S)> for FinSuppVec<S> {
    fn from_iter<I: IntoIterator<Item = (Index, S)>>(iter: I) -> Self {
        Self::from_entries(iter)
    }
}

/// Support-sorted `k1:num/den, k2:num/den`; the zero vector prints as `0`.
impl<S: Scalar> fmt::Display for FinSuppVec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, x)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}:{x}")?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for FinSuppVec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for FinSuppVec<Rational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.is_empty() || t == "0" {
            return Ok(Self::zero());
        }
        let mut entries = Vec::new();
        for part in t.split(',') {
            let (k, x) = part
                .split_once(':')
                .ok_or_else(|| Error::parse("vector", s, format!("entry {part:?} lacks `index:value`")))?;
            let k: Index = k.trim().parse().map_err(|_| Error::parse("vector", s, format!("bad index {k:?}")))?;
            if entries.iter().any(|(j, _)| *j == k) {
                return Err(Error::DuplicateIndex(k));
            }
            entries.push((k, parse_rational(x)?));
        }
        Ok(Self::from_entries(entries))
    }
}
