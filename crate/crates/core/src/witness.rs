//! Witness sequences and the checkers that certify their inequalities up to
//! a finite depth.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::certificate::{Certificate, Row};
use crate::finsupp::Index;
use crate::norm::{NormSpec, NormValue};
use crate::operators::{Element, Rule};
use crate::scalar::{integer, pow2_inv, rational, Exponent};
use crate::{Error, Poly, Rational, Result, Vector};

/// A deterministic sequence `n ↦ s(n)`, `n >= 1`.
#[derive(Clone)]
pub struct SeqGen {
    description: String,
    gen: Arc<dyn Fn(u64) -> Element + Send + Sync>,
    /// Coordinates of the (possibly infinitely supported) limit.
    limit: Option<Rule<Index, Rational>>,
}

impl fmt::Debug for SeqGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeqGen({})", self.description)
    }
}

impl SeqGen {
    pub fn new(description: impl Into<String>, gen: impl Fn(u64) -> Element + Send + Sync + 'static) -> SeqGen {
        SeqGen { description: description.into(), gen: Arc::new(gen), limit: None }
    }

    pub fn with_limit(mut self, limit: Rule<Index, Rational>) -> SeqGen {
        self.limit = Some(limit);
        self
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn at(&self, n: u64) -> Element {
        (self.gen)(n)
    }

    /// `s(1), …, s(depth)`.
    pub fn terms(&self, depth: u64) -> Vec<Element> {
        (1..=depth).map(|n| self.at(n)).collect()
    }

    pub fn limit_coefficient(&self, m: Index) -> Option<Rational> {
        self.limit.as_ref().map(|r| r.call(m))
    }
}

/// Partial sums `Σ_{m ≤ n} c(m)·χ_m` of a coefficient rule.
fn partial_sums(description: String, coeff: Rule<Index, Rational>) -> SeqGen {
    let c = coeff.clone();
    SeqGen::new(description, move |n| Element::Seq((1..=n).map(|m| (m, c.call(m))).collect())).with_limit(coeff)
}

/// `u_n = χ_n`, the basis vectors whose images under the rank-one map grow.
pub fn gen_thm13() -> SeqGen {
    SeqGen::new("chi(n)", |n| Element::Seq(Vector::chi(n)))
}

/// `v_n = Σ_{k=1}^n 2^-k χ_k`. The unit vectors `χ_k` already have
/// `‖χ_k‖_1 = 1`, so any growth rule enters only through the norm used to
/// measure the sequence.
pub fn gen_cor22() -> SeqGen {
    partial_sums("sum_{k<=n} 2^-k chi(k)".into(), Rule::new("2^-m", pow2_inv))
}

/// `u_n = Σ_{m=1}^n m^(-2/p) χ_m` for `p ∈ {1, 2}`, where the coefficients
/// stay rational.
pub fn gen_lemma41(p: u32) -> Result<SeqGen> {
    let coeff = match p {
        1 => Rule::new("m^-2", |m: Index| rational(1, (m * m) as i64)),
        2 => Rule::new("m^-1", |m: Index| rational(1, m as i64)),
        other => return Err(Error::IrrationalCoefficients(other)),
    };
    Ok(partial_sums(format!("sum_{{m<=n}} m^(-2/{p}) chi(m)"), coeff))
}

/// `u_n = Σ_{m=1}^n 2^-m χ_m`, whose `p`-th power tails are geometric for
/// every `p`.
pub fn gen_lemma41_geo(p: Exponent) -> SeqGen {
    partial_sums(format!("sum_{{m<=n}} 2^-m chi(m) (p={p})"), Rule::new("2^-m", pow2_inv))
}

/// `f_n(t) = t^n / n`.
pub fn gen_derivative_witness() -> SeqGen {
    SeqGen::new("t^n/n", |n| Element::Poly(Poly::monomial(n as usize, rational(1, n as i64))))
}

/// Certifies `‖s(n)‖_B >= L(n)·‖s(n)‖_A` for `n = 1..=depth`, `n ∉ exclude`.
pub fn check_ratio_divergence(
    s: &SeqGen,
    norm_a: &NormSpec,
    norm_b: &NormSpec,
    lower: impl Fn(u64) -> Rational,
    depth: u64,
    exclude: &BTreeSet<u64>,
) -> Result<Certificate> {
    let mut cert = Certificate::new("ratio_divergence")
        .param("sequence", s.description())
        .param("norm_a", norm_a)
        .param("norm_b", norm_b)
        .param("depth", depth)
        .param("exclude", join(exclude.iter()));
    for n in (1..=depth).filter(|n| !exclude.contains(n)) {
        let x = s.at(n);
        let a = norm_a.eval(&x)?;
        let b = norm_b.eval(&x)?;
        // a negative bound holds trivially
        let l = lower(n).max(Rational::zero());
        cert.push(Row::compare(n, &b, &a.scaled(&l), |o| o != Ordering::Less));
    }
    Ok(cert.finish())
}

/// Certifies `‖s(n) - s(m)‖ <= modulus(m)` for all `1 <= m < n <= depth`.
/// One row per `n`; it shows the first failing `m`, or `m = n - 1`.
pub fn check_cauchy(s: &SeqGen, norm: &NormSpec, modulus: impl Fn(u64) -> Rational, depth: u64) -> Result<Certificate> {
    let mut cert = Certificate::new("cauchy")
        .param("sequence", s.description())
        .param("norm", norm)
        .param("depth", depth);
    let terms = s.terms(depth);
    for n in 2..=depth {
        let sn = &terms[(n - 1) as usize];
        let mut shown = None;
        for m in 1..n {
            let d = norm.eval(&sn.sub(&terms[(m - 1) as usize]))?;
            let row = Row::compare(n, &d, &NormValue::Exact(modulus(m)), |o| o != Ordering::Greater);
            let failed = row.holds != Some(true);
            if failed || m == n - 1 {
                shown = Some((m, row));
            }
            if failed {
                break;
            }
        }
        let (m, row) = shown.expect("n >= 2 has at least one m");
        let note = row.check.clone().map(|c| format!(", {c}")).unwrap_or_default();
        cert.push(row.with_check(format!("m={m}{note}")));
    }
    Ok(cert.finish())
}

/// Certifies `‖s(n) - s(n-1)‖ > gap` for `2 <= n <= depth`.
pub fn check_not_cauchy(s: &SeqGen, norm: &NormSpec, gap: &Rational, depth: u64) -> Result<Certificate> {
    let mut cert = Certificate::new("not_cauchy")
        .param("sequence", s.description())
        .param("norm", norm)
        .param("gap", gap)
        .param("depth", depth);
    let mut prev = s.at(1);
    for n in 2..=depth {
        let cur = s.at(n);
        let d = norm.eval(&cur.sub(&prev))?;
        cert.push(Row::compare(n, &d, &NormValue::Exact(gap.clone()), |o| o == Ordering::Greater));
        prev = cur;
    }
    Ok(cert.finish())
}

/// Certifies `‖χ_k - χ_j‖_p^p = 2` for every pair of distinct indices.
pub fn check_separation(indices: &[Index], p: u32) -> Result<Certificate> {
    let mut seen = BTreeSet::new();
    for &k in indices {
        if !seen.insert(k) {
            return Err(Error::DuplicateIndex(k));
        }
    }
    let two = integer(2);
    let mut cert = Certificate::new("separation").param("p", p).param("indices", indices.len());
    let mut n = 0;
    for (i, &k) in indices.iter().enumerate() {
        for &j in &indices[i + 1..] {
            n += 1;
            let d = (&Vector::chi(k) - &Vector::chi(j)).pnorm_pow(p);
            let holds = d == two;
            cert.push(Row::new(n, d, &two, holds).with_check(format!("k={k},j={j}")));
        }
    }
    Ok(cert.finish())
}

/// Certifies that the coordinates of `s(n)` agree with the limit rule for all
/// `m <= n <= depth`, and names the first index outside `excluded` where the
/// limit is nonzero. The limit therefore escapes every finite set.
pub fn check_escape(s: &SeqGen, depth: u64, excluded: &BTreeSet<Index>) -> Result<Certificate> {
    if s.limit.is_none() {
        return Err(Error::NoLimitRule(s.description().to_string()));
    }
    let limit: Vec<Rational> = (1..=depth).map(|m| s.limit_coefficient(m).unwrap()).collect();
    let mut cert = Certificate::new("escape")
        .param("sequence", s.description())
        .param("depth", depth)
        .param("excluded", excluded.len());
    for n in 1..=depth {
        let u = match s.at(n) {
            Element::Seq(u) => u,
            Element::Poly(_) => return Err(Error::KindMismatch { map: "escape".into(), operand: "polynomial" }),
        };
        let stable = (1..=n).all(|m| u.coordinate(m) == limit[(m - 1) as usize]);
        cert.push(Row::new(n, u.coordinate(n), &limit[(n - 1) as usize], stable));
    }
    let witness = (1..=depth).find(|m| !excluded.contains(m) && !limit[(*m - 1) as usize].is_zero());
    match witness {
        Some(m) => {
            cert.set_param("witness_index", m);
            cert.set_param("witness_value", &limit[(m - 1) as usize]);
        }
        None => cert.push(
            Row::new(depth + 1, "none", "nonzero coordinate outside the set", false).with_check("witness"),
        ),
    }
    Ok(cert.finish())
}

/// Depth-`n` partial sums of the geometric series with coefficient `2^-k`;
/// the `j`-th coordinate is `2^-j` once `n >= j`.
pub fn series_partial_sum(n: u64) -> Vector {
    (1..=n).map(|k| (k, pow2_inv(k))).collect()
}

/// `1/m` as a Cauchy modulus.
pub fn harmonic_modulus(m: u64) -> Rational {
    rational(1, m as i64)
}

/// `1/⌊√m⌋`, which dominates `m^(-1/2)`.
pub fn sqrt_harmonic_modulus(m: u64) -> Rational {
    rational(1, m.isqrt() as i64)
}

fn join<'a, T: fmt::Display + 'a>(items: impl Iterator<Item = &'a T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
