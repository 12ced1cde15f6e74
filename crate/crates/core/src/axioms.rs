//! Oracles for the norm axioms, the parallelogram law, induced inner
//! products, and bounds on the coordinate functionals.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::certificate::{Certificate, Row};
use crate::finsupp::Index;
use crate::norm::{NormSpec, NormValue};
use crate::operators::{induced_inner, induced_norm_pow, Element, LinearMap, Rule};
use crate::scalar::{integer, pow2_inv, Enclosure};
use crate::witness::series_partial_sum;
use crate::{Error, Rational, Result, Vector};

/// Constants `M_k > 0` in `|u_k| <= M_k ‖u‖`.
#[derive(Clone, Debug)]
pub struct BoundFamily(Rule<Index, Rational>);

impl BoundFamily {
    pub fn new(name: impl Into<String>, f: impl Fn(Index) -> Rational + Send + Sync + 'static) -> BoundFamily {
        BoundFamily(Rule::new(name, f))
    }

    pub fn constant(m: Rational) -> BoundFamily {
        assert!(m.is_positive(), "bound constants must be positive");
        BoundFamily::new(format!("M={m}"), move |_| m.clone())
    }

    /// Panics if the rule produces a nonpositive constant.
    pub fn at(&self, k: Index) -> Rational {
        let m = self.0.call(k);
        assert!(m.is_positive(), "bound constant M_{k} = {m} is not positive");
        m
    }

    pub fn name(&self) -> &str {
        self.0.name()
    }
}

fn as_coefficients(x: &Element) -> Vector {
    match x {
        Element::Seq(u) => u.clone(),
        Element::Poly(f) => f.coefficient_vector(),
    }
}

/// Largest `k` with `2^-k >= width`, capped so the loop terminates.
fn bits_for(width: &Rational) -> u64 {
    let mut k = 0;
    while pow2_inv(k + 1) >= *width && k < 4096 {
        k += 1;
    }
    k.max(8)
}

/// Decides `a <= b + c` for nonnegative norm values.
fn triangle_row(n: u64, a: &NormValue, b: &NormValue, c: &NormValue, width: &Rational) -> Row {
    if let (NormValue::Exact(a), NormValue::Exact(b), NormValue::Exact(c)) = (a, b, c) {
        let sum = b + c;
        return Row::new(n, a, &sum, *a <= sum);
    }
    let max_bits = bits_for(width);
    let mut bits = 8;
    loop {
        let w = pow2_inv(bits);
        let ea = a.enclose(&w);
        let sum: Enclosure = b.enclose(&w).add(&c.enclose(&w));
        if ea.hi() <= sum.lo() {
            return Row::new(n, &ea, &sum, true).with_check(format!("triangle, width 2^-{bits}"));
        }
        if ea.lo() > sum.hi() {
            return Row::new(n, &ea, &sum, false).with_check(format!("triangle, width 2^-{bits}"));
        }
        if bits >= max_bits {
            return Row::undecided(n, &ea, &sum).with_check(format!("triangle, width 2^-{bits}"));
        }
        bits = (bits * 2).min(max_bits);
    }
}

/// Checks definiteness, homogeneity, and the triangle inequality on each
/// `(u, v, λ)` sample.
///
/// Definiteness and homogeneity are exact identities between p-th powers.
/// The triangle inequality is decided exactly when all three norms are
/// rational, accepted as an equality when `Tu` and `Tv` are nonnegative
/// multiples of one another, and otherwise decided by root enclosures refined
/// down to `tolerance_width`.
pub fn check_norm_axioms(spec: &NormSpec, samples: &[(Vector, Vector, Rational)], tolerance_width: &Rational) -> Result<Certificate> {
    if !tolerance_width.is_positive() {
        return Err(Error::NonPositiveWidth(tolerance_width.to_string()));
    }
    let mut cert = Certificate::new("norm_axioms")
        .param("norm", spec)
        .param("samples", samples.len())
        .param("tolerance_width", tolerance_width);
    for (i, (u, v, lambda)) in samples.iter().enumerate() {
        let n = i as u64 + 1;
        let (eu, ev) = (Element::Seq(u.clone()), Element::Seq(v.clone()));
        let nu = spec.eval(&eu)?;
        let nv = spec.eval(&ev)?;

        let definite = nu.is_zero() == u.is_zero();
        let expect = if u.is_zero() { "0" } else { ">0" };
        cert.push(Row::new(n, &nu, expect, definite).with_check("definiteness"));

        let scaled = spec.eval(&Element::Seq(u.scale(lambda)))?;
        let row = Row::compare(n, &scaled, &nu.scaled(&lambda.abs()), |o| o == Ordering::Equal);
        cert.push(row.with_check(format!("homogeneity, lambda={lambda}")));

        let sum = spec.eval(&Element::Seq(u + v))?;
        let (iu, iv) = (as_coefficients(&spec.image(&eu)?), as_coefficients(&spec.image(&ev)?));
        let collinear = iu.nonneg_multiple_of(&iv).is_some() || iv.nonneg_multiple_of(&iu).is_some();
        let row = if collinear && !matches!((&sum, &nu, &nv), (NormValue::Exact(_), NormValue::Exact(_), NormValue::Exact(_))) {
            Row::new(n, &sum, format!("{nu} + {nv}"), true).with_check("triangle, collinear equality")
        } else {
            let row = triangle_row(n, &sum, &nu, &nv, tolerance_width);
            if row.check.is_some() {
                row
            } else {
                row.with_check("triangle")
            }
        };
        cert.push(row);
    }
    Ok(cert.finish())
}

/// Squares of a norm value, exact when possible.
fn squared(x: &NormValue) -> Result<Rational, Enclosure> {
    x.exact_pow(2).ok_or_else(|| x.enclose(&pow2_inv(128)).square())
}

/// `Σ c_i·x_i²` as a formal sum over radicands: rational squares collect
/// under `None`, and `(A^(1/p))²` under `Some((p, A))`. Equal formal sums are
/// equal numbers.
fn formal_square_sum(terms: &[(Rational, &NormValue)]) -> Option<BTreeMap<Option<(u32, Rational)>, Rational>> {
    let mut sum = BTreeMap::new();
    for (c, x) in terms {
        let (key, value) = match x {
            NormValue::Power { pow, p } => (Some((*p, pow.clone())), c.clone()),
            other => (None, c * other.exact_pow(2)?),
        };
        *sum.entry(key).or_insert_with(Rational::zero) += value;
    }
    sum.retain(|_, c| !c.is_zero());
    Some(sum)
}

/// Tests `‖w+z‖² + ‖w−z‖² = 2(‖w‖² + ‖z‖²)` on each pair.
pub fn check_parallelogram(spec: &NormSpec, pairs: &[(Vector, Vector)]) -> Result<Certificate> {
    let mut cert = Certificate::new("parallelogram").param("norm", spec).param("pairs", pairs.len());
    let (one, two) = (integer(1), integer(2));
    for (i, (w, z)) in pairs.iter().enumerate() {
        let n = i as u64 + 1;
        let eval = |x: Vector| spec.eval(&Element::Seq(x));
        let parts = [eval(w + z)?, eval(w - z)?, eval(w.clone())?, eval(z.clone())?];
        let sq: Vec<_> = parts.iter().map(squared).collect();
        if sq.iter().all(|s| s.is_ok()) {
            let s: Vec<Rational> = sq.into_iter().map(|s| s.unwrap()).collect();
            let lhs = &s[0] + &s[1];
            let rhs = &two * (&s[2] + &s[3]);
            cert.push(Row::new(n, &lhs, &rhs, lhs == rhs));
            continue;
        }
        let lhs = formal_square_sum(&[(one.clone(), &parts[0]), (one.clone(), &parts[1])]);
        let rhs = formal_square_sum(&[(two.clone(), &parts[2]), (two.clone(), &parts[3])]);
        if lhs.is_some() && lhs == rhs {
            let text = format!("{}^2 + {}^2", parts[0], parts[1]);
            cert.push(Row::new(n, text, format!("2({}^2 + {}^2)", parts[2], parts[3]), true).with_check("symbolic"));
            continue;
        }
        let enc: Vec<Enclosure> = sq.into_iter().map(|s| s.map_or_else(|e| e, Enclosure::point)).collect();
        let lhs = enc[0].add(&enc[1]);
        let rhs = enc[2].add(&enc[3]).scale(&two);
        match lhs.compare(&rhs) {
            Some(ord) => cert.push(Row::new(n, &lhs, &rhs, ord == Ordering::Equal)),
            None => cert.push(Row::undecided(n, &lhs, &rhs)),
        }
    }
    Ok(cert.finish())
}

/// Checks that `(u, v) = (Tu, Tv)` is symmetric, linear in the first slot,
/// positive, and consistent with `‖Tu‖_2²`.
pub fn check_inner_consistency(map: &LinearMap, samples: &[(Vector, Vector, Rational)]) -> Result<Certificate> {
    let mut cert = Certificate::new("inner_consistency").param("map", map).param("samples", samples.len());
    for (i, (u, v, lambda)) in samples.iter().enumerate() {
        let n = i as u64 + 1;
        let uv = induced_inner(map, u, v)?;
        let vu = induced_inner(map, v, u)?;
        cert.push(Row::new(n, &uv, &vu, uv == vu).with_check("symmetry"));

        let lhs = induced_inner(map, &(u + &v.scale(lambda)), u)?;
        let rhs = induced_inner(map, u, u)? + lambda * &vu;
        cert.push(Row::new(n, &lhs, &rhs, lhs == rhs).with_check(format!("linearity, lambda={lambda}")));

        let uu = induced_inner(map, u, u)?;
        let positive = if u.is_zero() { uu.is_zero() } else { uu.is_positive() };
        cert.push(Row::new(n, &uu, if u.is_zero() { "0" } else { ">0" }, positive).with_check("positivity"));

        let norm_sq = if u.is_zero() { Rational::zero() } else { induced_norm_pow(map, &Element::Seq(u.clone()), 2)? };
        cert.push(Row::new(n, &uu, &norm_sq, uu == norm_sq).with_check("norm consistency"));
    }
    Ok(cert.finish())
}

/// Checks `|u_k| <= M_k ‖u‖` for every sample and index. Row `n` is the
/// `n`-th sample (1-based).
pub fn check_coordinate_bounds(spec: &NormSpec, bounds: &BoundFamily, samples: &[Vector], indices: &[Index]) -> Result<Certificate> {
    let mut cert = Certificate::new("coordinate_bounds")
        .param("norm", spec)
        .param("bounds", bounds.name())
        .param("samples", samples.len());
    for (i, u) in samples.iter().enumerate() {
        let n = i as u64 + 1;
        let norm = spec.eval(&Element::Seq(u.clone()))?;
        for &k in indices {
            let coord = NormValue::Exact(u.coordinate(k).abs());
            let row = Row::compare(n, &coord, &norm.scaled(&bounds.at(k)), |o| o != Ordering::Greater);
            let note = row.check.clone().map(|c| format!(", {c}")).unwrap_or_default();
            cert.push(row.with_check(format!("k={k}{note}")));
        }
    }
    Ok(cert.finish())
}

/// `j`-th coordinate of `Σ_{k<=n} 2^-k χ_k`.
pub fn thm43_series_coord(j: Index, n: u64) -> Rational {
    series_partial_sum(n).coordinate(j)
}

/// Certifies that the coordinates of the partial sums `Σ_{k<=n} 2^-k χ_k`
/// are `2^-j` for `j <= n` and zero beyond, for all `j, n <= depth`.
pub fn check_series_coordinates(depth: u64) -> Certificate {
    let mut cert = Certificate::new("series_coordinates").param("depth", depth);
    for n in 1..=depth {
        let u = series_partial_sum(n);
        for j in 1..=depth {
            let expected = if j <= n { pow2_inv(j) } else { Rational::zero() };
            let got = u.coordinate(j);
            let holds = got == expected;
            cert.push(Row::new(n, got, expected, holds).with_check(format!("j={j}")));
        }
    }
    cert.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::Verdict;
    use crate::operators::Growth;
    use crate::sample::{random_pairs, random_triples};
    use crate::scalar::{parse_rational, rational, Exponent};

    fn chi(k: u64) -> Vector {
        Vector::chi(k)
    }

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn triangle_equality_for_disjoint_l1() {
        let c = check_norm_axioms(&NormSpec::p(1), &[(chi(1), chi(2), integer(5))], &q("1e-30")).unwrap();
        assert_eq!(c.verdict, Verdict::AllHold);
        let tri = c.rows.iter().find(|r| r.check.as_deref() == Some("triangle")).unwrap();
        assert_eq!((tri.lhs.as_str(), tri.rhs.as_str()), ("2", "2"));
    }

    #[test]
    fn sqrt2_below_two() {
        let c = check_norm_axioms(&NormSpec::p(2), &[(chi(1), chi(2), integer(3))], &q("1e-30")).unwrap();
        assert_eq!(c.verdict, Verdict::AllHold);
        let tri = c.rows.iter().find(|r| r.check.as_deref().unwrap_or("").starts_with("triangle")).unwrap();
        assert!(tri.lhs.starts_with('['), "√2 is enclosed, got {}", tri.lhs);
        assert_eq!(tri.holds, Some(true));
    }

    #[test]
    fn homogeneity_is_exact() {
        let u: Vector = "1:1/2, 3:-2".parse().unwrap();
        let c = check_norm_axioms(&NormSpec::p(2), &[(u.clone(), chi(1), integer(3))], &q("1e-30")).unwrap();
        let row = c.rows.iter().find(|r| r.check.as_deref().unwrap_or("").starts_with("homogeneity")).unwrap();
        assert_eq!(row.holds, Some(true));
        assert_eq!(u.scale(&integer(3)).pnorm_pow(2), integer(9) * u.pnorm_pow(2));
    }

    #[test]
    fn seeded_axioms_never_undecided() {
        let samples = random_triples(11, 60, 8);
        for p in [Exponent::Finite(1), Exponent::Finite(2), Exponent::Finite(3), Exponent::Infinity] {
            let c = check_norm_axioms(&NormSpec::PNorm(p), &samples, &q("1e-30")).unwrap();
            assert_eq!(c.verdict, Verdict::AllHold, "p = {p}");
            assert_eq!(c.undecided().count(), 0);
        }
    }

    #[test]
    fn axioms_for_an_induced_norm() {
        let spec = NormSpec::induced(LinearMap::thm13(Growth::Linear, 2), NormSpec::p(3));
        let c = check_norm_axioms(&spec, &random_triples(3, 30, 6), &q("1e-30")).unwrap();
        assert_eq!(c.verdict, Verdict::AllHold);
    }

    #[test]
    fn parallelogram_examples() {
        let c = check_parallelogram(&NormSpec::sup(), &[(chi(1), chi(2))]).unwrap();
        assert_eq!(c.verdict, Verdict::ViolatedAt(1));
        assert_eq!((c.rows[0].lhs.as_str(), c.rows[0].rhs.as_str()), ("2", "4"));

        let c = check_parallelogram(&NormSpec::p(2), &random_pairs(5, 100, 10)).unwrap();
        assert_eq!(c.verdict, Verdict::AllHold);

        let u: Vector = "2:3/4, 5:-1".parse().unwrap();
        for spec in [NormSpec::p(1), NormSpec::p(3), NormSpec::sup()] {
            let c = check_parallelogram(&spec, &[(u.clone(), Vector::zero())]).unwrap();
            assert_eq!(c.verdict, Verdict::AllHold, "{spec}");
        }
    }

    #[test]
    fn parallelogram_l3_violation_via_enclosures() {
        // ‖χ1+χ2‖_3² + ‖χ1−χ2‖_3² = 2·2^(2/3) ≈ 3.17 vs 4
        let c = check_parallelogram(&NormSpec::p(3), &[(chi(1), chi(2))]).unwrap();
        assert_eq!(c.verdict, Verdict::ViolatedAt(1));
    }

    #[test]
    fn inner_product_examples() {
        let samples = random_triples(9, 40, 8);
        assert_eq!(check_inner_consistency(&LinearMap::Identity, &samples).unwrap().verdict, Verdict::AllHold);
        let t = LinearMap::thm13(Growth::Linear, 2);
        assert_eq!(induced_inner(&t, &chi(3), &chi(3)).unwrap(), integer(10));
        let with_fraction: Vec<_> = samples.into_iter().map(|(u, v, _)| (u, v, rational(-2, 3))).collect();
        let c = check_inner_consistency(&t, &with_fraction).unwrap();
        assert_eq!(c.verdict, Verdict::AllHold);
    }

    #[test]
    fn coordinate_bounds_examples() {
        let samples = crate::sample::random_vectors(4, 50, 10);
        let idx: Vec<u64> = (1..=10).collect();
        let one = BoundFamily::constant(integer(1));
        assert_eq!(check_coordinate_bounds(&NormSpec::sup(), &one, &samples, &idx).unwrap().verdict, Verdict::AllHold);
        assert_eq!(check_coordinate_bounds(&NormSpec::p(2), &one, &samples, &idx).unwrap().verdict, Verdict::AllHold);

        let t = LinearMap::thm13(Growth::Linear, 2);
        let spec = NormSpec::induced(t.clone(), NormSpec::p(1));
        let images: Vec<Vector> = (1..=20).map(|n| t.apply_seq(&chi(n)).unwrap()).collect();
        let c = check_coordinate_bounds(&spec, &BoundFamily::constant(integer(10)), &images, &[2]).unwrap();
        assert_eq!(c.verdict, Verdict::ViolatedAt(11));
    }

    #[test]
    fn series_coordinates() {
        assert_eq!(thm43_series_coord(3, 10), rational(1, 8));
        assert_eq!(thm43_series_coord(5, 3), integer(0));
        assert_eq!(thm43_series_coord(1, 1), rational(1, 2));
        assert_eq!(check_series_coordinates(12).verdict, Verdict::AllHold);
    }

    #[test]
    fn nonpositive_bounds_rejected() {
        let r = std::panic::catch_unwind(|| BoundFamily::constant(integer(0)));
        assert!(r.is_err());
    }
}
