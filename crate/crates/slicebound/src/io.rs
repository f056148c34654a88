//! JSON wire formats: knot files, family descriptors, and machine-readable
//! report rendering.  The canonical form of every document is
//! [`canonical_json`] (pretty-printed, two-space indent); parsing a canonical
//! document and re-serializing it is byte-identical.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{BoundReport, Conclusion, RuleCheck};
use crate::construct::FamilyDescriptor;
use crate::ring::Rational;
use crate::seifert::{catalog, SeifertMatrix};
use crate::signatures::RhoValue;
use thiserror::Error;

/// A knot on the wire: either an explicit Seifert matrix (entries are
/// decimal strings so 64-bit consumers cannot silently overflow) or a
/// reference into the built-in catalog.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KnotFile {
    Matrix {
        name: String,
        matrix: Vec<Vec<String>>,
    },
    Catalog {
        catalog: String,
        #[serde(default)]
        params: Vec<i64>,
    },
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("matrix entry at row {row}, column {col} is not an integer: {text:?}")]
    BadEntry { row: usize, col: usize, text: String },
    #[error("not a Seifert matrix: {0}")]
    Seifert(#[from] crate::seifert::SeifertError),
    #[error("catalog error: {0}")]
    Catalog(#[from] crate::seifert::CatalogError),
    #[error("invalid family: {0}")]
    Family(String),
}

/// Parses a knot document.  Syntax errors keep serde_json's line/column
/// diagnostics.
pub fn parse_knot_file(text: &str) -> Result<KnotFile, IoError> {
    Ok(serde_json::from_str(text)?)
}

/// Resolves a wire knot to a validated Seifert matrix.
pub fn knot_to_seifert(kf: &KnotFile) -> Result<SeifertMatrix, IoError> {
    match kf {
        KnotFile::Matrix { name, matrix } => {
            let mut entries = Vec::with_capacity(matrix.len());
            for (row, r) in matrix.iter().enumerate() {
                let mut out = Vec::with_capacity(r.len());
                for (col, text) in r.iter().enumerate() {
                    let v = BigInt::from_str(text.trim()).map_err(|_| IoError::BadEntry {
                        row,
                        col,
                        text: text.clone(),
                    })?;
                    out.push(v);
                }
                entries.push(out);
            }
            Ok(SeifertMatrix::new(entries)?.with_name(name.clone()))
        }
        KnotFile::Catalog { catalog: name, params } => Ok(catalog(name, params)?),
    }
}

/// Normalizes a Seifert matrix to the explicit wire form.
pub fn seifert_to_knot(s: &SeifertMatrix) -> KnotFile {
    let n = s.size();
    KnotFile::Matrix {
        name: s.name().unwrap_or("knot").to_string(),
        matrix: (0..n)
            .map(|i| (0..n).map(|j| s.entry(i, j).to_string()).collect())
            .collect(),
    }
}

/// A family request on the wire.  Multiplicities are optional; absent means
/// one copy of each companion (or, on the command line, "compute them").
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub g: u32,
    pub n: u64,
    #[serde(rename = "J")]
    pub j: KnotFile,
    #[serde(rename = "J_prime")]
    pub j_prime: KnotFile,
    #[serde(rename = "J_copies", default, skip_serializing_if = "Option::is_none")]
    pub j_copies: Option<u32>,
    #[serde(rename = "J_prime_copies", default, skip_serializing_if = "Option::is_none")]
    pub j_prime_copies: Option<u32>,
}

pub fn parse_family_file(text: &str) -> Result<FamilyFile, IoError> {
    Ok(serde_json::from_str(text)?)
}

/// Resolves a wire family to builder parameters.
pub fn family_to_descriptor(ff: &FamilyFile) -> Result<FamilyDescriptor, IoError> {
    let j = knot_to_seifert(&ff.j)?;
    let j_prime = knot_to_seifert(&ff.j_prime)?;
    Ok(FamilyDescriptor::new(ff.g, ff.n, j, j_prime)
        .with_copies(ff.j_copies.unwrap_or(1), ff.j_prime_copies.unwrap_or(1)))
}

/// The canonical serialization every document round-trips through.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("wire types always serialize")
}

/// A rational as JSON: exact fraction plus a decimal rendering.
pub fn rational_json(r: &Rational) -> Value {
    json!({ "exact": r.to_string(), "decimal": decimal_string(r) })
}

/// Fixed-point decimal rendering with enough digits to distinguish the
/// default certification precision (falls back to the exact fraction for
/// values outside f64 range).
pub fn decimal_string(r: &Rational) -> String {
    match r.to_f64() {
        Some(f) if f.is_finite() => format!("{f:.9}"),
        _ => r.to_string(),
    }
}

/// A ρ enclosure as JSON: midpoint, radius, certified interval, and the
/// exact rational value when the jump data determines one.
pub fn rho_json(rho: &RhoValue) -> Value {
    let iv = rho.tight_interval();
    json!({
        "value": decimal_string(rho.value()),
        "error_bound": decimal_string(rho.error_bound()),
        "interval": [rational_json(&iv.lo), rational_json(&iv.hi)],
        "exact": rho.exact_rational().map(|q| q.to_string()),
    })
}

fn check_json(check: &RuleCheck) -> Value {
    match check {
        RuleCheck::MagnitudeAtLeast { lhs_lower, threshold } => json!({
            "kind": "magnitude_at_least",
            "lhs_lower": rational_json(lhs_lower),
            "threshold": rational_json(threshold),
        }),
        RuleCheck::IntervalsAvoid { entries, radius } => json!({
            "kind": "intervals_avoid",
            "radius": rational_json(radius),
            "entries": entries
                .iter()
                .map(|(pattern, a, b, lo, hi)| {
                    json!({
                        "pattern": pattern,
                        "a": a,
                        "b": b,
                        "interval": [rational_json(lo), rational_json(hi)],
                    })
                })
                .collect::<Vec<_>>(),
        }),
        RuleCheck::AbsConsistent { abs_lower, budget, consistent } => json!({
            "kind": "abs_consistent",
            "abs_lower": rational_json(abs_lower),
            "budget": rational_json(budget),
            "consistent": consistent,
        }),
        RuleCheck::Identity { lhs, rhs } => json!({
            "kind": "identity",
            "lhs": lhs,
            "rhs": rhs,
        }),
        RuleCheck::CeilingHalf { rhs, bound } => json!({
            "kind": "ceiling_half",
            "rhs": rational_json(rhs),
            "bound": bound,
        }),
    }
}

fn conclusion_json(c: &Conclusion) -> Value {
    match c {
        Conclusion::GenusAtLeast { bound, sharp } => {
            json!({ "kind": "genus_at_least", "bound": bound, "sharp": sharp })
        }
        Conclusion::GenusBound(b) => json!({ "kind": "genus_bound", "bound": b }),
        Conclusion::NoInformation => json!({ "kind": "no_information" }),
    }
}

/// Machine-readable report: every fired rule with its anchor inequality, the
/// numeric payload it was decided on, and an overall re-verification bit.
pub fn report_to_json(report: &BoundReport) -> Value {
    json!({
        "inputs": report
            .inputs
            .iter()
            .map(|(k, v)| json!({ "name": k, "value": v }))
            .collect::<Vec<_>>(),
        "fired_rules": report
            .fired_rules
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "anchor": r.anchor,
                    "instantiation": r.instantiation,
                    "check": check_json(&r.check),
                    "holds": r.check.holds(),
                })
            })
            .collect::<Vec<_>>(),
        "conclusion": conclusion_json(&report.conclusion),
        "verified": report.verify(),
    })
}
