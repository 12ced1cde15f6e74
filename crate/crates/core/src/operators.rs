//! Linear maps and functionals on sequences and polynomials, together with
//! the norms and inner products they induce.
//!
//! The central construction is the rank-one perturbation of the identity
//! `Tu = u - φ(u)·e`. With `φ(χ_n) = n` and pivot `e = χ_2` one has
//! `φ(e) = 2`, which makes `T` its own inverse while `‖Tχ_n‖_1 = n + 1`
//! grows without bound.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::finsupp::Index;
use crate::norm::NormSpec;
use crate::scalar::{int_pow, Enclosure, Exponent};
use crate::{Error, Polynomial, Rational, Result, Vector};

/// A named pure function, so maps built from closures can still be printed.
#[derive(Clone)]
pub struct Rule<A, B> {
    name: String,
    f: Arc<dyn Fn(A) -> B + Send + Sync>,
}

impl<A, B> Rule<A, B> {
    pub fn new(name: impl Into<String>, f: impl Fn(A) -> B + Send + Sync + 'static) -> Self {
        Rule { name: name.into(), f: Arc::new(f) }
    }

    pub fn call(&self, a: A) -> B {
        (self.f)(a)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl<A, B> fmt::Debug for Rule<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rule({})", self.name)
    }
}

/// Values `g(k) = φ(χ_k)` of a functional on the unit vectors.
#[derive(Clone, Debug)]
pub enum Growth {
    Zero,
    /// `g(k) = k`
    Linear,
    /// `g(k) = base^k`
    Exponential(i64),
    Custom(Rule<Index, Rational>),
}

impl Growth {
    pub fn at(&self, k: Index) -> Rational {
        match self {
            Growth::Zero => Rational::zero(),
            Growth::Linear => Rational::from_integer(k.into()),
            Growth::Exponential(base) => int_pow(*base, u32::try_from(k).expect("index too large for a power")),
            Growth::Custom(rule) => rule.call(k),
        }
    }
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Growth::Zero => f.write_str("0"),
            Growth::Linear => f.write_str("n"),
            Growth::Exponential(b) => write!(f, "{b}^n"),
            Growth::Custom(rule) => f.write_str(rule.name()),
        }
    }
}

impl FromStr for Growth {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Growth::Zero),
            "n" => Ok(Growth::Linear),
            other => other
                .strip_suffix("^n")
                .and_then(|b| b.parse().ok())
                .map(Growth::Exponential)
                .ok_or_else(|| Error::parse("growth rule", s, "expected `0`, `n`, or `<base>^n`")),
        }
    }
}

/// Linear functional, determined by its values on the unit vectors `χ_k`.
#[derive(Clone, Debug)]
pub enum Functional {
    /// Finitely many nonzero values; every other `φ(χ_k)` is zero.
    Explicit(BTreeMap<Index, Rational>),
    /// `φ(χ_k) = g(k)·‖χ_k‖_1 = g(k)`.
    Growth(Growth),
}

impl Functional {
    pub fn on_unit(&self, k: Index) -> Rational {
        match self {
            Functional::Explicit(values) => values.get(&k).cloned().unwrap_or_else(Rational::zero),
            Functional::Growth(g) => g.at(k),
        }
    }

    /// `φ(u) = Σ u(k)·φ(χ_k)`.
    pub fn eval(&self, u: &Vector) -> Rational {
        u.iter().fold(Rational::zero(), |acc, (k, x)| acc + x * self.on_unit(k))
    }
}

/// Either a finitely supported sequence or a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Seq(Vector),
    Poly(Polynomial),
}

impl Element {
    pub fn kind(&self) -> &'static str {
        match self {
            Element::Seq(_) => "sequence",
            Element::Poly(_) => "polynomial",
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Seq(u) => u.is_zero(),
            Element::Poly(f) => f.is_zero(),
        }
    }

    pub fn as_seq(&self) -> Option<&Vector> {
        match self {
            Element::Seq(u) => Some(u),
            Element::Poly(_) => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Polynomial> {
        match self {
            Element::Poly(f) => Some(f),
            Element::Seq(_) => None,
        }
    }

    /// `self - other`; panics when the kinds differ.
    pub fn sub(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Seq(u), Element::Seq(v)) => Element::Seq(u - v),
            (Element::Poly(f), Element::Poly(g)) => Element::Poly(f.sub(g)),
            _ => panic!("cannot subtract a {} from a {}", other.kind(), self.kind()),
        }
    }

    /// `self + other`; panics when the kinds differ.
    pub fn add(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Seq(u), Element::Seq(v)) => Element::Seq(u + v),
            (Element::Poly(f), Element::Poly(g)) => Element::Poly(f.add(g)),
            _ => panic!("cannot add a {} to a {}", other.kind(), self.kind()),
        }
    }

    pub fn scale(&self, lambda: &Rational) -> Element {
        match self {
            Element::Seq(u) => Element::Seq(u.scale(lambda)),
            Element::Poly(f) => Element::Poly(f.scale(lambda)),
        }
    }
}

impl From<Vector> for Element {
    fn from(u: Vector) -> Self {
        Element::Seq(u)
    }
}

impl From<Polynomial> for Element {
    fn from(f: Polynomial) -> Self {
        Element::Poly(f)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Seq(u) => write!(f, "{u}"),
            Element::Poly(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum LinearMap {
    Identity,
    /// `χ_k ↦ rule(k)`, extended linearly.
    BasisImage(Rule<Index, Vector>),
    /// `χ_k ↦ χ_{rule(k)}`; must be injective on every support it meets.
    Relabel(Rule<Index, Index>),
    /// `u ↦ u - φ(u)·pivot`.
    RankOnePerturb { phi: Functional, pivot: Vector },
    Derivative,
    /// `f ↦ ∫_0^t f`.
    Antiderivative,
    /// `Compose([A, B, C])` is `A ∘ B ∘ C`: the last map acts first.
    Compose(Vec<LinearMap>),
}

impl LinearMap {
    /// Rank-one perturbation with `φ(χ_n) = growth(n)` and pivot `χ_pivot`.
    pub fn thm13(growth: Growth, pivot: Index) -> LinearMap {
        LinearMap::RankOnePerturb { phi: Functional::Growth(growth), pivot: Vector::chi(pivot) }
    }

    /// Relabeling `χ_k ↦ χ_{k+offset}`.
    pub fn shift(offset: u64) -> LinearMap {
        LinearMap::Relabel(Rule::new(format!("shift:+{offset}"), move |k: Index| k + offset))
    }

    /// Relabeling that exchanges `a` and `b`.
    pub fn swap(a: Index, b: Index) -> LinearMap {
        LinearMap::Relabel(Rule::new(format!("swap:{a}:{b}"), move |k: Index| {
            if k == a {
                b
            } else if k == b {
                a
            } else {
                k
            }
        }))
    }

    pub fn basis_image(name: impl Into<String>, f: impl Fn(Index) -> Vector + Send + Sync + 'static) -> LinearMap {
        LinearMap::BasisImage(Rule::new(name, f))
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        match x {
            Element::Seq(u) => self.apply_seq(u).map(Element::Seq),
            Element::Poly(f) => self.apply_poly(f).map(Element::Poly),
        }
    }

    pub fn apply_seq(&self, u: &Vector) -> Result<Vector> {
        match self {
            LinearMap::Identity => Ok(u.clone()),
            LinearMap::BasisImage(rule) => {
                Ok(u.iter().fold(Vector::zero(), |acc, (k, x)| acc.add(&rule.call(k).scale(x))))
            }
            LinearMap::Relabel(rule) => {
                let mut seen: BTreeMap<Index, Index> = BTreeMap::new();
                let mut out = Vec::with_capacity(u.len());
                for (k, x) in u.iter() {
                    let target = rule.call(k);
                    if let Some(&first) = seen.get(&target) {
                        return Err(Error::RelabelCollision { first, second: k, target });
                    }
                    seen.insert(target, k);
                    out.push((target, x.clone()));
                }
                Ok(Vector::from_entries(out))
            }
            LinearMap::RankOnePerturb { phi, pivot } => Ok(u - &pivot.scale(&phi.eval(u))),
            LinearMap::Derivative | LinearMap::Antiderivative => {
                Err(Error::KindMismatch { map: self.to_string(), operand: "sequence" })
            }
            LinearMap::Compose(maps) => maps.iter().rev().try_fold(u.clone(), |acc, m| m.apply_seq(&acc)),
        }
    }

    pub fn apply_poly(&self, f: &Polynomial) -> Result<Polynomial> {
        match self {
            LinearMap::Identity => Ok(f.clone()),
            LinearMap::Derivative => Ok(f.derivative()),
            LinearMap::Antiderivative => Ok(f.antiderivative()),
            LinearMap::Compose(maps) => maps.iter().rev().try_fold(f.clone(), |acc, m| m.apply_poly(&acc)),
            _ => Err(Error::KindMismatch { map: self.to_string(), operand: "polynomial" }),
        }
    }

    /// `φ(pivot)` for a rank-one perturbation. The map is an involution
    /// exactly when this equals 2 (or `φ ≡ 0` on everything it meets).
    pub fn pivot_weight(&self) -> Option<Rational> {
        match self {
            LinearMap::RankOnePerturb { phi, pivot } => Some(phi.eval(pivot)),
            _ => None,
        }
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearMap::Identity => f.write_str("identity"),
            LinearMap::BasisImage(rule) => f.write_str(rule.name()),
            LinearMap::Relabel(rule) => f.write_str(rule.name()),
            LinearMap::RankOnePerturb { phi: Functional::Growth(g), pivot }
                if pivot.len() == 1 && pivot.iter().all(|(_, x)| x.is_one()) =>
            {
                let k = pivot.support().next().unwrap();
                write!(f, "thm13:g={g}:pivot={k}")
            }
            LinearMap::RankOnePerturb { phi, pivot } => write!(f, "rank-one(phi={phi:?}, pivot={pivot})"),
            LinearMap::Derivative => f.write_str("derivative"),
            LinearMap::Antiderivative => f.write_str("antiderivative"),
            LinearMap::Compose(maps) => {
                let names: Vec<String> = maps.iter().map(|m| m.to_string()).collect();
                write!(f, "compose({})", names.join(" . "))
            }
        }
    }
}

/// Parses registry names: `identity`, `derivative`, `antiderivative`,
/// `shift:+7`, `thm13:g=n:pivot=2`, `thm13:g=4^n:pivot=2`.
impl FromStr for LinearMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "identity" => return Ok(LinearMap::Identity),
            "derivative" => return Ok(LinearMap::Derivative),
            "antiderivative" => return Ok(LinearMap::Antiderivative),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("shift:") {
            let offset: u64 = rest
                .trim_start_matches('+')
                .parse()
                .map_err(|_| Error::parse("linear map", s, "shift offset must be a nonnegative integer"))?;
            return Ok(LinearMap::shift(offset));
        }
        if let Some(rest) = t.strip_prefix("thm13:") {
            let mut growth = Growth::Linear;
            let mut pivot: Index = 2;
            for part in rest.split(':') {
                match part.split_once('=') {
                    Some(("g", g)) => growth = g.parse()?,
                    Some(("pivot", k)) => {
                        pivot = k.parse().map_err(|_| Error::parse("linear map", s, "bad pivot index"))?
                    }
                    _ => return Err(Error::parse("linear map", s, format!("unknown parameter {part:?}"))),
                }
            }
            return Ok(LinearMap::thm13(growth, pivot));
        }
        Err(Error::parse("linear map", s, "unknown map"))
    }
}

/// Rank-one map `u ↦ u - φ(u)·χ_pivot` with `φ(χ_n) = growth(n)`.
pub fn thm13_map(growth: Growth, pivot: Index) -> LinearMap {
    LinearMap::thm13(growth, pivot)
}

/// Isometric relabeling `χ_k ↦ χ_{relabel(k)}`.
pub fn thm11_iso(name: impl Into<String>, relabel: impl Fn(Index) -> Index + Send + Sync + 'static) -> LinearMap {
    LinearMap::Relabel(Rule::new(name, relabel))
}

/// True iff `T(Tu) = u` for every sample; maps that reject a sample count as
/// failures.
pub fn check_involution<'a>(map: &LinearMap, samples: impl IntoIterator<Item = &'a Element>) -> bool {
    samples
        .into_iter()
        .all(|u| map.apply(u).and_then(|tu| map.apply(&tu)).is_ok_and(|ttu| ttu == *u))
}

/// `‖Tu‖_p^p`.
pub fn induced_norm_pow(map: &LinearMap, u: &Element, p: u32) -> Result<Rational> {
    let spec = NormSpec::induced(map.clone(), NormSpec::PNorm(Exponent::finite(p)?));
    Ok(spec.eval(u)?.exact_pow(p).expect("finite p-norms have exact powers"))
}

/// Sup-norm of `Tu`: the largest coordinate for sequences, the maximum of
/// `|Tu|` on `[0, 1]` for polynomials.
pub fn induced_supnorm(map: &LinearMap, u: &Element, refinement: u32) -> Result<Enclosure> {
    let inner = match u {
        Element::Seq(_) => NormSpec::PNorm(Exponent::Infinity),
        Element::Poly(_) => NormSpec::SupUnitInterval { refinement },
    };
    Ok(NormSpec::induced(map.clone(), inner).eval(u)?.enclose(&Rational::one()))
}

/// `(u, v) = Σ (Tu)(k)·(Tv)(k)`.
pub fn induced_inner(map: &LinearMap, u: &Vector, v: &Vector) -> Result<Rational> {
    Ok(map.apply_seq(u)?.dot(&map.apply_seq(v)?))
}

/// Indices where two maps disagree on the unit vectors `χ_k`, `k ∈ indices`.
pub fn disagreements(a: &LinearMap, b: &LinearMap, indices: impl IntoIterator<Item = Index>) -> BTreeSet<Index> {
    indices
        .into_iter()
        .filter(|&k| {
            let u = Vector::chi(k);
            a.apply_seq(&u).ok() != b.apply_seq(&u).ok()
        })
        .collect()
}
