//! Named demonstrations: each runs the checkers behind one result and
//! collects their certificates.

use std::collections::BTreeSet;
use std::cmp::Ordering;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use serde_json::json;

use crate::axioms::{check_coordinate_bounds, check_inner_consistency, check_norm_axioms, check_parallelogram, check_series_coordinates, BoundFamily};
use crate::certificate::{write_csv, Certificate, Row, Verdict};
use crate::operators::{thm11_iso, Element, Growth, LinearMap};
use crate::sample::{random_pairs, random_triples, random_vectors, DEFAULT_SEED};
use crate::scalar::{integer, parse_rational, pow2_inv, Exponent};
use crate::witness::{
    check_cauchy, check_escape, check_not_cauchy, check_ratio_divergence, check_separation, gen_cor22,
    gen_derivative_witness, gen_lemma41, gen_lemma41_geo, gen_thm13, harmonic_modulus, sqrt_harmonic_modulus, SeqGen,
};
use crate::{Error, NormSpec, Rational, Result, Vector};

/// Registry ids with one-line citations, in run order.
pub const REGISTRY: &[(&str, &str)] = &[
    ("thm1.3", "proof of Theorem 1.3"),
    ("cor2.2", "Corollary 2.2, Cauchy in one norm but not the other"),
    ("example-derivative", "derivative-induced norm on polynomials"),
    ("lemma4.1a", "Cauchy-but-escaping sequence"),
    ("lemma4.1b", "2-separated unit vectors"),
    ("thm4.3", "coordinate functionals of a convergent series"),
    ("parallelogram", "parallelogram law, Corollary 3.5"),
    ("axioms", "norm axioms on seeded samples"),
    ("thm1.1-isometry", "relabelings are isometries, Theorem 1.1"),
];

pub fn list_demos() -> String {
    REGISTRY.iter().map(|(id, what)| format!("{id} — {what}\n")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::parse("format", s, "expected text, json or csv")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DemoConfig {
    /// `None` runs the whole registry.
    pub demo: Option<String>,
    pub depth: u64,
    pub p: Exponent,
    pub refinement: u32,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for DemoConfig {
    fn default() -> DemoConfig {
        DemoConfig {
            demo: None,
            depth: 100,
            p: Exponent::Finite(1),
            refinement: 32,
            seed: DEFAULT_SEED,
            format: Format::Text,
            out: None,
        }
    }
}

impl DemoConfig {
    pub fn for_demo(id: &str) -> DemoConfig {
        DemoConfig { demo: Some(id.to_string()), ..DemoConfig::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(id) = &self.demo {
            if !REGISTRY.iter().any(|(r, _)| r == id) {
                return Err(Error::UnknownDemo(id.clone()));
            }
        }
        if self.depth < 2 {
            return Err(Error::Config(format!("depth must be at least 2, got {}", self.depth)));
        }
        if self.p == Exponent::Finite(0) {
            return Err(Error::InvalidExponent("0".into()));
        }
        Ok(())
    }

    fn ids(&self) -> Vec<&'static str> {
        REGISTRY
            .iter()
            .map(|(id, _)| *id)
            .filter(|id| self.demo.as_deref().is_none_or(|d| d == *id))
            .collect()
    }

    /// Everything except the output path, so reports are reproducible.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "demo": self.demo.as_deref().unwrap_or("all"),
            "depth": self.depth,
            "p": self.p.to_string(),
            "refinement": self.refinement,
            "seed": self.seed,
            "format": self.format.to_string(),
        })
    }
}

/// One certificate and whether its claim is a violation.
#[derive(Clone, Debug)]
pub struct Entry {
    pub demo: &'static str,
    pub expect_violation: bool,
    pub certificate: Certificate,
}

impl Entry {
    fn new(demo: &'static str, expect_violation: bool, mut certificate: Certificate) -> Entry {
        let as_expected = match certificate.verdict {
            Verdict::AllHold => !expect_violation,
            Verdict::ViolatedAt(_) => expect_violation,
            Verdict::Undecided(_) => false,
        };
        certificate.set_param("demo", demo);
        certificate.set_param("expect", if expect_violation { "violation" } else { "AllHold" });
        certificate.set_param("outcome", if as_expected { "as expected" } else { "unexpected" });
        Entry { demo, expect_violation, certificate }
    }

    fn note(mut self, text: &str) -> Entry {
        self.certificate.set_param("note", text);
        self
    }

    pub fn as_expected(&self) -> bool {
        self.certificate.params["outcome"] == "as expected"
    }
}

#[derive(Clone, Debug)]
pub struct Bundle {
    pub config: DemoConfig,
    pub entries: Vec<Entry>,
}

impl Bundle {
    /// 0 when every certificate came out as claimed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.entries.iter().all(Entry::as_expected) {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let demos: Vec<_> = self.entries.iter().map(|e| e.certificate.to_json()).collect();
        json!({ "demos": demos, "config": self.config.to_json() })
    }

    pub fn write(&self, out: &mut dyn Write) -> Result<()> {
        let io = |e: std::io::Error| Error::Config(format!("write failed: {e}"));
        match self.config.format {
            Format::Json => {
                let text = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
                writeln!(out, "{text}").map_err(io)
            }
            Format::Csv => write_csv(out, self.entries.iter().map(|e| (e.demo, &e.certificate)))
                .map_err(|e| Error::Config(format!("csv write failed: {e}"))),
            Format::Text => self.write_text(out).map_err(io),
        }
    }

    fn write_text(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for e in &self.entries {
            let c = &e.certificate;
            let expect = if e.expect_violation { "expected violation" } else { "expected AllHold" };
            let mark = if e.as_expected() { "ok" } else { "FAILED" };
            writeln!(out, "[{mark}] {} {}: {} ({expect}, {} rows)", e.demo, c.claim_id, c.verdict, c.rows.len())?;
            for (k, v) in c.params.iter().filter(|(k, _)| !matches!(k.as_str(), "demo" | "expect" | "outcome")) {
                writeln!(out, "    {k} = {v}")?;
            }
            for row in c.rows.iter().filter(|r| r.holds != Some(true)).take(3) {
                let check = row.check.as_deref().map(|c| format!(" [{c}]")).unwrap_or_default();
                let status = if row.holds.is_none() { "undecided" } else { "fails" };
                writeln!(out, "    n={}{check}: {} vs {} {status}", row.n, row.lhs, row.rhs)?;
            }
        }
        let ok = self.entries.iter().filter(|e| e.as_expected()).count();
        writeln!(out, "{ok}/{} certificates as expected", self.entries.len())
    }
}

/// Runs the configured demos. Errors are usage errors.
pub fn run_demo(cfg: &DemoConfig) -> Result<Bundle> {
    cfg.validate()?;
    let mut entries = Vec::new();
    for id in cfg.ids() {
        entries.extend(run_one(id, cfg)?);
    }
    Ok(Bundle { config: cfg.clone(), entries })
}

fn run_one(id: &'static str, cfg: &DemoConfig) -> Result<Vec<Entry>> {
    let ok = |c: Certificate| Entry::new(id, false, c);
    let expect_fail = |c: Certificate| Entry::new(id, true, c);
    let lp = NormSpec::PNorm(cfg.p);
    let depth = cfg.depth;
    Ok(match id {
        "thm1.3" => {
            let t = LinearMap::thm13(Growth::Linear, 2);
            let ratio = check_ratio_divergence(
                &gen_thm13(),
                &lp,
                &NormSpec::induced(t.clone(), lp.clone()),
                |n| integer(n as i64 - 1),
                depth,
                &BTreeSet::new(),
            )?;
            vec![ok(ratio), ok(involution(&t, &random_vectors(cfg.seed, 100, 20))?)]
        }
        "cor2.2" => {
            let v = gen_cor22();
            let induced = NormSpec::induced(LinearMap::thm13(Growth::Exponential(4), 1), lp.clone());
            vec![
                ok(check_cauchy(&v, &lp, pow2_inv, depth)?),
                ok(check_not_cauchy(&v, &induced, &integer(1), depth)?),
                expect_fail(check_cauchy(&v, &induced, pow2_inv, depth)?)
                    .note("the same modulus fails in the induced norm"),
            ]
        }
        "example-derivative" => {
            let sup = NormSpec::SupUnitInterval { refinement: cfg.refinement };
            let induced = NormSpec::induced(LinearMap::Derivative, sup.clone());
            let exclude = BTreeSet::new();
            vec![ok(check_ratio_divergence(&gen_derivative_witness(), &sup, &induced, |n| integer(n as i64), depth, &exclude)?)]
        }
        "lemma4.1a" => {
            let (s, modulus): (SeqGen, fn(u64) -> Rational) = match cfg.p {
                Exponent::Finite(1) => (gen_lemma41(1)?, harmonic_modulus),
                Exponent::Finite(2) => (gen_lemma41(2)?, sqrt_harmonic_modulus),
                other => (gen_lemma41_geo(other), pow2_inv),
            };
            let excluded: BTreeSet<u64> = (1..depth).collect();
            vec![ok(check_cauchy(&s, &lp, modulus, depth)?), ok(check_escape(&s, depth, &excluded)?)]
        }
        "lemma4.1b" => {
            let indices: Vec<u64> = (1..=depth.min(50)).collect();
            let mut ps = vec![1, 2, 3];
            if let Exponent::Finite(p) = cfg.p {
                if !ps.contains(&p) {
                    ps.push(p);
                }
            }
            ps.into_iter().map(|p| check_separation(&indices, p).map(ok)).collect::<Result<_>>()?
        }
        "thm4.3" => {
            let t = LinearMap::thm13(Growth::Linear, 2);
            let induced = NormSpec::induced(t.clone(), NormSpec::p(1));
            let mut entries = vec![ok(check_series_coordinates(depth.min(40)))];
            for m in [1, 10, 100] {
                let samples: Vec<Vector> = (1..=m + 2).map(|n| t.apply_seq(&Vector::chi(n))).collect::<Result<_>>()?;
                let c = check_coordinate_bounds(&induced, &BoundFamily::constant(integer(m as i64)), &samples, &[2])?;
                entries.push(expect_fail(c).note("pi_2 is unbounded for the induced norm"));
            }
            entries
        }
        "parallelogram" => {
            let (c1, c2) = (Vector::chi(1), Vector::chi(2));
            let induced = NormSpec::induced(LinearMap::thm13(Growth::Linear, 2), NormSpec::p(2));
            let pairs = random_pairs(cfg.seed, 100, 12);
            vec![
                expect_fail(check_parallelogram(&NormSpec::sup(), &[(c1, c2)])?)
                    .note("the violation confirms the sup norm has no inner product"),
                ok(check_parallelogram(&NormSpec::p(2), &pairs)?),
                ok(check_parallelogram(&induced, &pairs)?),
            ]
        }
        "axioms" => {
            let samples = random_triples(cfg.seed, 200, 12);
            let width = parse_rational("1e-30").expect("literal parses");
            let t = LinearMap::thm13(Growth::Linear, 2);
            let mut specs = vec![NormSpec::p(1), NormSpec::p(2), NormSpec::p(3), NormSpec::sup()];
            if !specs.iter().any(|s| matches!(s, NormSpec::PNorm(p) if *p == cfg.p)) {
                specs.push(lp.clone());
            }
            specs.push(NormSpec::induced(t.clone(), lp.clone()));
            let mut entries =
                specs.iter().map(|s| check_norm_axioms(s, &samples, &width).map(ok)).collect::<Result<Vec<_>>>()?;
            entries.push(ok(check_inner_consistency(&t, &samples)?));
            entries
        }
        "thm1.1-isometry" => {
            let samples = random_vectors(cfg.seed, 100, 30);
            let maps = [
                LinearMap::shift(7),
                LinearMap::swap(1, 2),
                thm11_iso("k -> 2k", |k| 2 * k),
                thm11_iso("pair swap", |k| if k % 2 == 1 { k + 1 } else { k - 1 }),
            ];
            let mut specs = vec![NormSpec::p(1), NormSpec::p(2), NormSpec::p(3), NormSpec::sup()];
            if !specs.iter().any(|s| matches!(s, NormSpec::PNorm(p) if *p == cfg.p)) {
                specs.push(lp.clone());
            }
            maps.iter().map(|m| isometry(m, &specs, &samples).map(ok)).collect::<Result<_>>()?
        }
        _ => return Err(Error::UnknownDemo(id.to_string())),
    })
}

/// `T(Tu) = u` on each sample.
fn involution(t: &LinearMap, samples: &[Vector]) -> Result<Certificate> {
    let mut cert = Certificate::new("involution").param("map", t).param("samples", samples.len());
    for (i, u) in samples.iter().enumerate() {
        let ttu = t.apply_seq(&t.apply_seq(u)?)?;
        cert.push(Row::new(i as u64 + 1, &ttu, u, ttu == *u));
    }
    Ok(cert.finish())
}

/// `‖Tu‖ = ‖u‖` for each sample under each norm.
fn isometry(t: &LinearMap, specs: &[NormSpec], samples: &[Vector]) -> Result<Certificate> {
    let mut cert = Certificate::new("isometry").param("map", t).param("samples", samples.len());
    for (i, u) in samples.iter().enumerate() {
        let x = Element::Seq(u.clone());
        let tx = t.apply(&x)?;
        for spec in specs {
            let row = Row::compare(i as u64 + 1, &spec.eval(&tx)?, &spec.eval(&x)?, |o| o == Ordering::Equal);
            cert.push(row.with_check(spec.to_string()));
        }
    }
    Ok(cert.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(id: &str) -> Bundle {
        run_demo(&DemoConfig::for_demo(id)).unwrap()
    }

    #[test]
    fn registry_listing() {
        let text = list_demos();
        assert!(text.contains("thm1.3 — proof of Theorem 1.3"));
        assert!(text.contains("lemma4.1a — Cauchy-but-escaping sequence"));
        assert_eq!(text, list_demos());
        assert_eq!(text.lines().count(), REGISTRY.len());
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(run_demo(&DemoConfig::for_demo("nosuch")), Err(Error::UnknownDemo(_))));
        let shallow = DemoConfig { depth: 1, ..DemoConfig::for_demo("thm1.3") };
        assert!(matches!(run_demo(&shallow), Err(Error::Config(_))));
    }

    #[test]
    fn thm13_at_depth_1000() {
        let b = run_demo(&DemoConfig { depth: 1000, ..DemoConfig::for_demo("thm1.3") }).unwrap();
        assert_eq!(b.exit_code(), 0);
        assert!(b.entries.iter().all(|e| e.certificate.verdict == Verdict::AllHold));
    }

    #[test]
    fn parallelogram_expected_violation() {
        let b = run("parallelogram");
        assert_eq!(b.exit_code(), 0);
        let sup = &b.entries[0].certificate;
        assert_eq!(sup.verdict, Verdict::ViolatedAt(1));
        assert_eq!((sup.rows[0].lhs.as_str(), sup.rows[0].rhs.as_str()), ("2", "4"));
        assert!(sup.params["note"].contains("confirms"));
        assert_eq!(b.entries[1].certificate.verdict, Verdict::AllHold);
    }

    #[test]
    fn every_demo_is_as_expected() {
        for (id, _) in REGISTRY {
            let b = run(id);
            for e in &b.entries {
                assert!(e.as_expected(), "{id}/{}: {}", e.certificate.claim_id, e.certificate.verdict);
            }
        }
    }

    #[test]
    fn other_exponents() {
        for p in [Exponent::Finite(2), Exponent::Finite(3), Exponent::Infinity] {
            for id in ["thm1.3", "cor2.2", "lemma4.1a", "axioms"] {
                let cfg = DemoConfig { p, depth: 30, ..DemoConfig::for_demo(id) };
                assert_eq!(run_demo(&cfg).unwrap().exit_code(), 0, "{id} with p={p}");
            }
        }
    }

    #[test]
    fn json_is_deterministic() {
        let cfg = DemoConfig { format: Format::Json, depth: 20, ..DemoConfig::for_demo("axioms") };
        let render = || {
            let mut buf = Vec::new();
            run_demo(&cfg).unwrap().write(&mut buf).unwrap();
            buf
        };
        assert_eq!(render(), render());
        let v: serde_json::Value = serde_json::from_slice(&render()).unwrap();
        assert_eq!(v["config"]["depth"], 20);
        assert!(v["demos"].as_array().is_some_and(|d| !d.is_empty()));
    }
}
