//! Serialized records. Every float is written with 17 significant digits so
//! that a parsed value re-serializes to the same bytes.

use std::fmt::Write as _;

use serde::de::Deserializer;
use serde::ser::{Error as _, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

pub const SCHEMA_VERSION: &str = "1.0";

/// A float serialized as `d.ddddddddddddddddde±x`; non-finite values
/// become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sig17(pub f64);

impl Sig17 {
    pub fn text(self) -> String {
        if self.0.is_finite() {
            format!("{:.16e}", self.0)
        } else {
            String::new()
        }
    }
}

impl From<f64> for Sig17 {
    fn from(v: f64) -> Self {
        Sig17(v)
    }
}

impl Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            RawValue::from_string(self.text())
                .map_err(S::Error::custom)?
                .serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

impl<'de> Deserialize<'de> for Sig17 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Sig17(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN)))
    }
}

/// One emitted document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Output<E, R> {
    pub schema_version: String,
    pub command: E,
    pub rows: Vec<R>,
}

impl<E, R> Output<E, R> {
    pub fn new(command: E, rows: Vec<R>) -> Self {
        Output {
            schema_version: SCHEMA_VERSION.to_string(),
            command,
            rows,
        }
    }
}

impl<E: Serialize, R: Serialize> Output<E, R> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records always serialize");
        s.push('\n');
        s
    }
}

/// Rows that have a CSV rendering.
pub trait CsvRow {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

pub fn to_csv<R: CsvRow>(rows: &[R]) -> String {
    let mut out = R::HEADER.join(",");
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{}", r.fields().join(","));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyRow {
    pub family: String,
    pub n: Sig17,
    pub c: Option<Sig17>,
    pub x: Sig17,
    pub method: String,
    pub s: Sig17,
    pub renyi: Sig17,
    pub tsallis: Sig17,
    pub err_estimate: Sig17,
}

impl CsvRow for EntropyRow {
    const HEADER: &'static [&'static str] = &[
        "family",
        "n",
        "c",
        "x",
        "method",
        "s",
        "renyi",
        "tsallis",
        "err_estimate",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            self.family.clone(),
            self.n.text(),
            self.c.map(Sig17::text).unwrap_or_default(),
            self.x.text(),
            self.method.clone(),
            self.s.text(),
            self.renyi.text(),
            self.tsallis.text(),
            self.err_estimate.text(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub id: String,
    pub kind: String,
    pub points: usize,
    pub min_margin: Sig17,
    pub violations: usize,
}

impl CsvRow for VerifyRow {
    const HEADER: &'static [&'static str] = &["id", "kind", "points", "min_margin", "violations"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.id.clone(),
            self.kind.clone(),
            self.points.to_string(),
            self.min_margin.text(),
            self.violations.to_string(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRow {
    pub id: String,
    pub points: usize,
    pub max_rel_deviation: Sig17,
    pub passed: bool,
}

impl CsvRow for IdentityRow {
    const HEADER: &'static [&'static str] = &["id", "points", "max_rel_deviation", "passed"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.id.clone(),
            self.points.to_string(),
            self.max_rel_deviation.text(),
            self.passed.to_string(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadRow {
    pub m: usize,
    pub value: Sig17,
    pub abs_error: Sig17,
}

impl CsvRow for QuadRow {
    const HEADER: &'static [&'static str] = &["m", "value", "abs_error"];

    fn fields(&self) -> Vec<String> {
        vec![self.m.to_string(), self.value.text(), self.abs_error.text()]
    }
}
