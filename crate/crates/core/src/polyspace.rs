//! Polynomials with exact coefficients and their `[0, 1]` sup-norm.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::finsupp::FinSuppVec;
use crate::scalar::{parse_rational, Enclosure, Scalar};
use crate::{Error, Rational};

/// Dense coefficient list, lowest degree first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `c·t^k`.
    pub fn monomial(k: usize, c: S) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, t: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * S::from_usize(k).expect("degree fits the scalar type"))
            .collect();
        Self::new(coeffs)
    }

    /// `∫_0^t f(s) ds`.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(S::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / S::from_usize(k + 1).expect("degree fits the scalar type"));
        }
        Self::new(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, lambda: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * lambda.clone()).collect())
    }

    /// `max_j |α_j|`.
    pub fn coeff_maxnorm(&self) -> S {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(S::zero)
    }

    /// Coefficients in the monomial basis `{1, t, t², …}` as a sequence
    /// indexed by degree.
    pub fn coefficient_vector(&self) -> FinSuppVec<S> {
        self.coeffs.iter().enumerate().map(|(k, c)| (k as u64, c.clone())).collect()
    }

    /// True when no two coefficients have opposite signs.
    pub fn has_one_sign(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative()) || self.coeffs.iter().all(|c| !c.is_positive())
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Coefficients of `f` in the degree-`d` Bernstein basis on `[0, 1]`.
fn bernstein_coefficients(f: &Poly<Rational>) -> Vec<Rational> {
    let d = f.degree().unwrap_or(0);
    let denoms: Vec<BigInt> = (0..=d).map(|j| binomial(d, j)).collect();
    (0..=d)
        .map(|k| {
            (0..=k)
                .map(|j| f.coeff(j) * Rational::new(binomial(k, j), denoms[j].clone()))
                .fold(Rational::zero(), |acc, t| acc + t)
        })
        .collect()
}

/// de Casteljau split at the midpoint.
fn split_half(b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut work = b.to_vec();
    let n = work.len();
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    left.push(work[0].clone());
    right.push(work[n - 1].clone());
    for level in 1..n {
        for i in 0..n - level {
            work[i] = (&work[i] + &work[i + 1]) * &half;
        }
        left.push(work[0].clone());
        right.push(work[n - 1 - level].clone());
    }
    right.reverse();
    (left, right)
}

fn max_abs(b: &[Rational]) -> Rational {
    b.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

/// Upper bound on the number of live subintervals kept per refinement round.
const MAX_ACTIVE: usize = 1 << 12;

impl Poly<Rational> {
    /// Certified enclosure of `max_{t ∈ [0,1]} |f(t)|`.
    ///
    /// Constants and one-sign polynomials return the exact value `|f(1)|`.
    /// Otherwise runs `refinement` rounds of midpoint subdivision on the
    /// Bernstein control points: the lower bound is the largest `|f|` seen at
    /// a subdivision point, the upper bound the largest control point among
    /// subintervals that could still beat it.
    pub fn supnorm01_enclosure(&self, refinement: u32) -> Enclosure {
        if self.is_zero() {
            return Enclosure::point(Rational::zero());
        }
        if self.degree() == Some(0) || self.has_one_sign() {
            return Enclosure::point(self.eval(&Rational::one()).abs());
        }

        let root = bernstein_coefficients(self);
        let mut lo = root[0].abs().max(root[root.len() - 1].abs());
        let mut active = vec![root];
        for _ in 0..refinement {
            active.retain(|b| max_abs(b) > lo);
            if active.is_empty() || active.len() * 2 > MAX_ACTIVE {
                break;
            }
            let mut next = Vec::with_capacity(active.len() * 2);
            for b in &active {
                let (l, r) = split_half(b);
                // r[0] = f(midpoint)
                lo = lo.max(r[0].abs());
                next.push(l);
                next.push(r);
            }
            active = next;
        }
        let hi = active.iter().map(|b| max_abs(b)).fold(lo.clone(), Rational::max);
        Enclosure::new(lo, hi)
    }
}

/// `a0 + a1 t + a2 t^2 …`; the zero polynomial prints as `0`.
impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag} ")?;
                    }
                    if k == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly<Rational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('−', "-");
        if compact.is_empty() {
            return Err(Error::parse("polynomial", s, "empty"));
        }
        // split into signed terms, keeping signs that belong to an exponent
        let mut terms = Vec::new();
        let mut current = String::new();
        for (i, ch) in compact.char_indices() {
            let prev = compact[..i].chars().last();
            if (ch == '+' || ch == '-') && i > 0 && !matches!(prev, Some('e' | 'E' | '^')) {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        terms.push(current);

        let mut coeffs: Vec<Rational> = Vec::new();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coef, degree) = match body.find('t') {
                None => (parse_rational(body)?, 0usize),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let c = if c.is_empty() { Rational::one() } else { parse_rational(c)? };
                    let rest = &body[pos + 1..];
                    let d = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| Error::parse("polynomial", s, format!("bad term {term:?}")))?
                    };
                    (c, d)
                }
            };
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, Rational::zero());
            }
            coeffs[degree] += if neg { -coef } else { coef };
        }
        Ok(Poly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, rational};
    use crate::Polynomial;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    /// `t^n / n`
    fn f_n(n: usize) -> Polynomial {
        Poly::monomial(n, rational(1, n as i64))
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("t^2 - 1").eval(&integer(2)), integer(3));
        assert_eq!(p("5 - 3t + t^4").eval(&integer(0)), integer(5));
        assert_eq!(p("t - t^2").eval(&rational(1, 2)), rational(1, 4));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("t^3").derivative(), p("3 t^2"));
        assert!(p("7/2").derivative().is_zero());
        for n in 1..20 {
            assert_eq!(f_n(n).derivative(), Poly::monomial(n - 1, integer(1)));
        }
    }

    #[test]
    fn antiderivatives() {
        assert_eq!(p("1").antiderivative(), p("t"));
        assert_eq!(p("t").antiderivative(), p("1/2 t^2"));
        let f = p("3 - 2t + 4/5 t^3");
        assert_eq!(f.antiderivative().derivative(), f);
        assert_eq!(f.derivative().antiderivative(), f.sub(&Poly::constant(f.eval(&integer(0)))));
    }

    #[test]
    fn coefficient_max_norm() {
        assert_eq!(p("3 + 2t - 5t^4").coeff_maxnorm(), integer(5));
        assert_eq!(Polynomial::zero().coeff_maxnorm(), integer(0));
        let f = p("1/3 - 2t");
        assert_eq!(f.scale(&integer(-3)).coeff_maxnorm(), integer(3) * f.coeff_maxnorm());
        assert_eq!(f.coeff_maxnorm(), f.coefficient_vector().supnorm());
    }

    #[test]
    fn text_form() {
        assert_eq!(p("3 + 2t - 5t^4").to_string(), "3 + 2 t - 5 t^4");
        assert_eq!(p("-t + 1/2 t^2").to_string(), "-t + 1/2 t^2");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("t^2 + t^2"), p("2t^2"));
        assert_eq!(p("1e-2 t"), p("1/100 t"));
        assert!("t^x".parse::<Polynomial>().is_err());
        assert!("".parse::<Polynomial>().is_err());
    }

    #[test]
    fn one_sign_sup_is_exact() {
        for n in 1..40 {
            assert_eq!(f_n(n).supnorm01_enclosure(0), Enclosure::point(rational(1, n as i64)));
        }
        assert_eq!(Polynomial::zero().supnorm01_enclosure(5), Enclosure::point(integer(0)));
        assert_eq!(p("-3").supnorm01_enclosure(0), Enclosure::point(integer(3)));
        assert_eq!(p("-t - t^3").supnorm01_enclosure(0), Enclosure::point(integer(2)));
    }

    #[test]
    fn bernstein_endpoints_are_values() {
        let f = p("2 - 7t + 3t^2 + t^5");
        let b = bernstein_coefficients(&f);
        assert_eq!(b[0], f.eval(&integer(0)));
        assert_eq!(b[b.len() - 1], f.eval(&integer(1)));
        let (l, r) = split_half(&b);
        assert_eq!(r[0], f.eval(&rational(1, 2)));
        assert_eq!(l[l.len() - 1], r[0]);
    }

    /// Dense rational sampling gives a lower bound on the true maximum.
    fn sampled_max(f: &Polynomial, steps: i64) -> Rational {
        (0..=steps).map(|i| f.eval(&rational(i, steps)).abs()).max().unwrap()
    }

    #[test]
    fn logistic_bump() {
        let f = p("t - t^2");
        let enc = f.supnorm01_enclosure(24);
        assert!(enc.contains(&rational(1, 4)));
        assert!(enc.width() < rational(1, 1_000_000));
        assert!(enc.hi() >= &sampled_max(&f, 997));
    }

    #[test]
    fn sign_changing_enclosure_is_sound() {
        let f = p("1/3 - 2t + t^3");
        let enc = f.supnorm01_enclosure(16);
        // |f'| <= 5 on [0, 1], so the true max is within 5/4000 of the samples
        let sampled = sampled_max(&f, 2000);
        assert!(enc.lo() <= &(&sampled + rational(1, 800)));
        assert!(enc.hi() >= &sampled);
        let coarse = f.supnorm01_enclosure(2);
        assert!(coarse.width() >= enc.width());
    }
}
