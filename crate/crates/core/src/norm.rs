//! Norm specifications and exactly comparable norm values.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::operators::{Element, LinearMap};
use crate::scalar::{exact_root, pow2_inv, rat_pow, root_enclosure, Enclosure, Exponent};
use crate::{Error, Rational, Result};

/// Which norm to measure with.
#[derive(Clone, Debug)]
pub enum NormSpec {
    /// Basis `p`-norm: on sequences the usual `ℓ^p` norm, on polynomials the
    /// `ℓ^p` norm of the monomial coefficients.
    PNorm(Exponent),
    /// `max_{t ∈ [0,1]} |f(t)|` for polynomials.
    SupUnitInterval { refinement: u32 },
    /// `‖u‖ = ‖Tu‖_inner`.
    Induced { map: LinearMap, inner: Box<NormSpec> },
}

/// A norm value in the most exact form available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormValue {
    /// The norm itself.
    Exact(Rational),
    /// `‖u‖^p` for a finite `p >= 2`; the norm is its `p`-th root.
    Power { pow: Rational, p: u32 },
    /// Certified bounds on the norm.
    Bounds(Enclosure),
}

/// Finest dyadic width tried when comparing through root enclosures.
pub const MAX_REFINE_BITS: u64 = 256;

impl NormSpec {
    pub fn p(p: u32) -> NormSpec {
        NormSpec::PNorm(Exponent::Finite(p))
    }

    pub fn sup() -> NormSpec {
        NormSpec::PNorm(Exponent::Infinity)
    }

    pub fn induced(map: LinearMap, inner: NormSpec) -> NormSpec {
        NormSpec::Induced { map, inner: Box::new(inner) }
    }

    /// The non-induced norm at the bottom of the chain.
    pub fn base(&self) -> &NormSpec {
        match self {
            NormSpec::Induced { inner, .. } => inner.base(),
            other => other,
        }
    }

    /// Applies every induced map, innermost last, checking definiteness.
    pub fn image(&self, x: &Element) -> Result<Element> {
        match self {
            NormSpec::Induced { map, inner } => {
                let y = map.apply(x)?;
                if !x.is_zero() && y.is_zero() {
                    return Err(Error::NotDefinite { map: map.to_string(), vector: x.to_string() });
                }
                inner.image(&y)
            }
            _ => Ok(x.clone()),
        }
    }

    pub fn eval(&self, x: &Element) -> Result<NormValue> {
        let y = self.image(x)?;
        self.base().eval_base(&y)
    }

    fn eval_base(&self, x: &Element) -> Result<NormValue> {
        match (self, x) {
            (NormSpec::PNorm(Exponent::Finite(p)), Element::Seq(u)) => Ok(NormValue::from_power(u.pnorm_pow(*p), *p)),
            (NormSpec::PNorm(Exponent::Finite(p)), Element::Poly(f)) => {
                Ok(NormValue::from_power(f.coefficient_vector().pnorm_pow(*p), *p))
            }
            (NormSpec::PNorm(Exponent::Infinity), Element::Seq(u)) => Ok(NormValue::Exact(u.supnorm())),
            (NormSpec::PNorm(Exponent::Infinity), Element::Poly(f)) => Ok(NormValue::Exact(f.coeff_maxnorm())),
            (NormSpec::SupUnitInterval { refinement }, Element::Poly(f)) => {
                let enc = f.supnorm01_enclosure(*refinement);
                Ok(if enc.is_point() { NormValue::Exact(enc.lo().clone()) } else { NormValue::Bounds(enc) })
            }
            (NormSpec::SupUnitInterval { .. }, Element::Seq(_)) => {
                Err(Error::NormKindMismatch { spec: self.to_string(), operand: "sequence" })
            }
            (NormSpec::Induced { .. }, _) => unreachable!("base() strips induced layers"),
        }
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::PNorm(p) => write!(f, "l{p}"),
            NormSpec::SupUnitInterval { .. } => f.write_str("sup[0,1]"),
            NormSpec::Induced { map, inner } => write!(f, "{inner}({map} .)"),
        }
    }
}

impl NormValue {
    /// Normalizes `p = 1` and perfect powers to [`NormValue::Exact`].
    pub fn from_power(pow: Rational, p: u32) -> NormValue {
        if p == 1 {
            return NormValue::Exact(pow);
        }
        match exact_root(&pow, p) {
            Some(r) => NormValue::Exact(r),
            None => NormValue::Power { pow, p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            NormValue::Exact(v) => v.is_zero(),
            NormValue::Power { pow, .. } => pow.is_zero(),
            NormValue::Bounds(e) => e.hi().is_zero(),
        }
    }

    /// Value to the `q`-th power, when that is exact.
    pub fn exact_pow(&self, q: u32) -> Option<Rational> {
        match self {
            NormValue::Exact(v) => Some(rat_pow(v, q)),
            NormValue::Power { pow, p } if *p == q => Some(pow.clone()),
            _ => None,
        }
    }

    pub fn enclose(&self, width: &Rational) -> Enclosure {
        match self {
            NormValue::Exact(v) => Enclosure::point(v.clone()),
            NormValue::Power { pow, p } => root_enclosure(pow, *p, width).expect("norm powers are nonnegative"),
            NormValue::Bounds(e) => e.clone(),
        }
    }

    /// `k·‖u‖` for `k >= 0`.
    pub fn scaled(&self, k: &Rational) -> NormValue {
        assert!(!k.is_negative(), "norm values scale by nonnegative factors only");
        match self {
            NormValue::Exact(v) => NormValue::Exact(v * k),
            NormValue::Power { pow, p } => NormValue::Power { pow: pow * rat_pow(k, *p), p: *p },
            NormValue::Bounds(e) => NormValue::Bounds(e.scale(k)),
        }
    }

    /// Compares two nonnegative quantities exactly where possible, falling
    /// back to root enclosures refined down to `2^-MAX_REFINE_BITS`.
    /// `None` means the enclosures never separated.
    pub fn compare(&self, other: &NormValue) -> Option<Ordering> {
        use NormValue::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Some(a.cmp(b)),
            (Power { pow: a, p }, Exact(b)) => Some(a.cmp(&rat_pow(b, *p))),
            (Exact(a), Power { pow: b, p }) => Some(rat_pow(a, *p).cmp(b)),
            // A^(1/p) vs B^(1/q)  <=>  A^q vs B^p
            (Power { pow: a, p }, Power { pow: b, p: q }) => Some(rat_pow(a, *q).cmp(&rat_pow(b, *p))),
            _ => compare_by_enclosure(self, other, MAX_REFINE_BITS),
        }
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormValue::Exact(v) => write!(f, "{v}"),
            NormValue::Power { pow, p } => write!(f, "({pow})^(1/{p})"),
            NormValue::Bounds(e) => write!(f, "{e}"),
        }
    }
}

/// Compares through enclosures of width `2^-8, 2^-16, …` up to `2^-max_bits`.
pub fn compare_by_enclosure(a: &NormValue, b: &NormValue, max_bits: u64) -> Option<Ordering> {
    let mut bits = 8;
    loop {
        let w = pow2_inv(bits);
        if let Some(ord) = a.enclose(&w).compare(&b.enclose(&w)) {
            return Some(ord);
        }
        if bits >= max_bits {
            return None;
        }
        bits = (bits * 2).min(max_bits);
    }
}

/// Orders `‖u‖` and `‖v‖` under `spec`.
pub fn norm_cmp(u: &Element, v: &Element, spec: &NormSpec) -> Result<Ordering> {
    let a = spec.eval(u)?;
    let b = spec.eval(v)?;
    a.compare(&b).ok_or_else(|| Error::Undecided(pow2_inv(MAX_REFINE_BITS).to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::Growth;
    use crate::scalar::{integer, rational};
    use crate::{Polynomial, Vector};

    fn chi(k: u64) -> Element {
        Element::Seq(Vector::chi(k))
    }

    #[test]
    fn norm_cmp_examples() {
        assert_eq!(norm_cmp(&chi(1), &chi(2), &NormSpec::p(2)).unwrap(), Ordering::Equal);
        let two_chi1: Element = Vector::single(1, integer(2)).into();
        assert_eq!(norm_cmp(&two_chi1, &chi(1), &NormSpec::p(1)).unwrap(), Ordering::Greater);
        let s: Element = "1:1, 2:1".parse::<Vector>().unwrap().into();
        assert_eq!(norm_cmp(&s, &two_chi1, &NormSpec::p(2)).unwrap(), Ordering::Less);
    }

    #[test]
    fn norm_cmp_through_induced() {
        let spec = NormSpec::induced(LinearMap::thm13(Growth::Linear, 2), NormSpec::p(1));
        // ‖Tχ_5‖_1 = 6 > ‖Tχ_3‖_1 = 4
        assert_eq!(norm_cmp(&chi(5), &chi(3), &spec).unwrap(), Ordering::Greater);
        // ‖Tχ_2‖_1 = 1 = ‖Tχ_1‖_1 - 1
        assert_eq!(norm_cmp(&chi(2), &chi(1), &spec).unwrap(), Ordering::Less);
    }

    #[test]
    fn values_normalize() {
        assert_eq!(NormValue::from_power(integer(9), 2), NormValue::Exact(integer(3)));
        assert_eq!(NormValue::from_power(integer(7), 1), NormValue::Exact(integer(7)));
        assert!(matches!(NormValue::from_power(integer(2), 2), NormValue::Power { .. }));
    }

    #[test]
    fn mixed_exponent_comparison() {
        // 2^(1/2) vs 3^(1/3): 2^3 = 8 < 9 = 3^2
        let a = NormValue::Power { pow: integer(2), p: 2 };
        let b = NormValue::Power { pow: integer(3), p: 3 };
        assert_eq!(a.compare(&b), Some(Ordering::Less));
        let enc = NormValue::Bounds(Enclosure::new(rational(7, 5), rational(29, 20)));
        assert_eq!(a.compare(&enc), None);
        let far = NormValue::Bounds(Enclosure::new(integer(2), integer(3)));
        assert_eq!(a.compare(&far), Some(Ordering::Less));
    }

    #[test]
    fn polynomial_norms() {
        let f: Element = "3 - 4t".parse::<Polynomial>().unwrap().into();
        assert_eq!(NormSpec::sup().eval(&f).unwrap(), NormValue::Exact(integer(4)));
        assert_eq!(NormSpec::p(2).eval(&f).unwrap(), NormValue::Exact(integer(5)));
        let s = NormSpec::SupUnitInterval { refinement: 20 }.eval(&f).unwrap();
        assert_eq!(s, NormValue::Exact(integer(3)));
        assert!(NormSpec::SupUnitInterval { refinement: 1 }.eval(&chi(1)).is_err());
    }

    #[test]
    fn scaling() {
        let v = NormValue::Power { pow: integer(2), p: 2 };
        assert_eq!(v.scaled(&integer(3)), NormValue::Power { pow: integer(18), p: 2 });
        assert_eq!(NormValue::Exact(rational(1, 2)).scaled(&integer(4)), NormValue::Exact(integer(2)));
    }
}
