//! Reproducible records of exactly checked inequalities.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::norm::NormValue;

/// Overall outcome; the first offending row decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AllHold,
    ViolatedAt(u64),
    Undecided(u64),
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::AllHold
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::AllHold => f.write_str("AllHold"),
            Verdict::ViolatedAt(n) => write!(f, "ViolatedAt({n})"),
            Verdict::Undecided(n) => write!(f, "Undecided({n})"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let parse_arg = |prefix: &str| -> Option<u64> { s.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok() };
        if s == "AllHold" {
            Ok(Verdict::AllHold)
        } else if let Some(n) = parse_arg("ViolatedAt(") {
            Ok(Verdict::ViolatedAt(n))
        } else if let Some(n) = parse_arg("Undecided(") {
            Ok(Verdict::Undecided(n))
        } else {
            Err(serde::de::Error::custom(format!("unknown verdict {s:?}")))
        }
    }
}

/// One checked instance. `holds` is `None` when the check could not be
/// decided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<String>,
    pub lhs: String,
    pub rhs: String,
    pub holds: Option<bool>,
}

impl Row {
    pub fn new(n: u64, lhs: impl ToString, rhs: impl ToString, holds: bool) -> Row {
        Row { n, check: None, lhs: lhs.to_string(), rhs: rhs.to_string(), holds: Some(holds) }
    }

    pub fn undecided(n: u64, lhs: impl ToString, rhs: impl ToString) -> Row {
        Row { n, check: None, lhs: lhs.to_string(), rhs: rhs.to_string(), holds: None }
    }

    pub fn with_check(mut self, check: impl Into<String>) -> Row {
        self.check = Some(check.into());
        self
    }

    /// Row for `lhs ⋈ rhs` where `accept` says which orderings satisfy the
    /// claim. Values with a common exponent are printed as exact powers.
    pub fn compare(n: u64, lhs: &NormValue, rhs: &NormValue, accept: impl Fn(Ordering) -> bool) -> Row {
        let (l, r, note) = comparable_strings(lhs, rhs);
        let row = match lhs.compare(rhs) {
            Some(ord) => Row::new(n, l, r, accept(ord)),
            None => Row::undecided(n, l, r),
        };
        match note {
            Some(note) => row.with_check(note),
            None => row,
        }
    }
}

/// Renders two norm values as rational strings where possible, raising both
/// to a shared exponent if either is only known as a power.
pub fn comparable_strings(a: &NormValue, b: &NormValue) -> (String, String, Option<String>) {
    let p = match (a, b) {
        (NormValue::Power { p, .. }, _) | (_, NormValue::Power { p, .. }) => Some(*p),
        _ => None,
    };
    match p {
        Some(p) => match (a.exact_pow(p), b.exact_pow(p)) {
            (Some(x), Some(y)) => (x.to_string(), y.to_string(), Some(format!("power {p}"))),
            _ => (a.to_string(), b.to_string(), None),
        },
        None => (a.to_string(), b.to_string(), None),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim_id: String,
    pub params: BTreeMap<String, String>,
    pub rows: Vec<Row>,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn new(claim_id: impl Into<String>) -> Certificate {
        Certificate { claim_id: claim_id.into(), params: BTreeMap::new(), rows: Vec::new(), verdict: Verdict::AllHold }
    }

    pub fn param(mut self, key: impl Into<String>, value: impl ToString) -> Certificate {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn set_param(&mut self, key: impl Into<String>, value: impl ToString) {
        self.params.insert(key.into(), value.to_string());
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    /// Recomputes the verdict from the rows.
    pub fn finish(mut self) -> Certificate {
        self.verdict = verdict_of(&self.rows);
        self
    }

    pub fn violations(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.holds == Some(false))
    }

    pub fn undecided(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.holds.is_none())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificates serialize")
    }
}

pub fn verdict_of(rows: &[Row]) -> Verdict {
    if let Some(r) = rows.iter().find(|r| r.holds == Some(false)) {
        Verdict::ViolatedAt(r.n)
    } else if let Some(r) = rows.iter().find(|r| r.holds.is_none()) {
        Verdict::Undecided(r.n)
    } else {
        Verdict::AllHold
    }
}

/// Flattens rows into `claim_id,n,check,lhs,rhs,holds` records.
pub fn write_csv<'a, W: std::io::Write>(
    out: W,
    certs: impl IntoIterator<Item = (&'a str, &'a Certificate)>,
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["demo", "claim_id", "n", "check", "lhs", "rhs", "holds"])?;
    for (demo, cert) in certs {
        for row in &cert.rows {
            let holds = match row.holds {
                Some(true) => "true",
                Some(false) => "false",
                None => "undecided",
            };
            let n = row.n.to_string();
            w.write_record([demo, &cert.claim_id, &n, row.check.as_deref().unwrap_or(""), &row.lhs, &row.rhs, holds])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::integer;

    #[test]
    fn verdict_tracks_rows() {
        let mut c = Certificate::new("demo");
        c.push(Row::new(1, "1", "2", true));
        c.push(Row::undecided(2, "a", "b"));
        c.push(Row::new(3, "5", "2", false));
        let c = c.finish();
        assert_eq!(c.verdict, Verdict::ViolatedAt(3));
        assert_eq!(c.violations().count(), 1);

        let mut d = Certificate::new("demo");
        d.push(Row::new(1, "1", "2", true));
        d.push(Row::undecided(4, "a", "b"));
        assert_eq!(d.finish().verdict, Verdict::Undecided(4));
        assert_eq!(Certificate::new("empty").finish().verdict, Verdict::AllHold);
    }

    #[test]
    fn json_schema() {
        let mut c = Certificate::new("claim").param("p", 2);
        c.push(Row::new(7, "1/2", "3", true));
        let c = c.finish();
        let v = c.to_json();
        assert_eq!(v["claim_id"], "claim");
        assert_eq!(v["params"]["p"], "2");
        assert_eq!(v["rows"][0]["n"], 7);
        assert_eq!(v["rows"][0]["lhs"], "1/2");
        assert_eq!(v["rows"][0]["holds"], true);
        assert_eq!(v["verdict"], "AllHold");
        let back: Certificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn power_rows_print_rationals() {
        let a = NormValue::Power { pow: integer(2), p: 2 };
        let b = NormValue::Exact(integer(2));
        let row = Row::compare(1, &a, &b, |o| o != Ordering::Greater);
        assert_eq!((row.lhs.as_str(), row.rhs.as_str()), ("2", "4"));
        assert_eq!(row.holds, Some(true));
        assert_eq!(row.check.as_deref(), Some("power 2"));
    }

    #[test]
    fn csv_flattening() {
        let mut c = Certificate::new("claim");
        c.push(Row::new(1, "1", "2", true).with_check("m=0"));
        c.push(Row::undecided(2, "x", "y"));
        let mut buf = Vec::new();
        write_csv(&mut buf, [("d", &c)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "demo,claim_id,n,check,lhs,rhs,holds\nd,claim,1,m=0,1,2,true\nd,claim,2,,x,y,undecided\n");
    }
}
