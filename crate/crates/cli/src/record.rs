//! Per-discriminant analysis records.

use std::collections::BTreeMap;

use cmhecke_core::characters::{conductor_exponents, simplest_characters};
use cmhecke_core::dimension::classify_simplest;
use cmhecke_core::lfun::vanishing_order;
use cmhecke_core::rootnum::root_number;
use cmhecke_core::{build_field, Case, CharacterSpec, FieldData, NumericsConfig, Result};
use serde::ser::{Serialize, Serializer};
use serde_json::value::RawValue;

/// Marker for analytic fields outside the `4 ∥ D` theory.
pub const UNSUPPORTED: &str = "unsupported";
/// Marker for analytic fields that do not apply to the character's sign.
pub const NOT_APPLICABLE: &str = "n/a";

/// A cell in the record: a number, or a marker saying why there is none.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(i64),
    Bool(bool),
    Marker(&'static str),
}

/// Seventeen significant digits, enough to recover every `f64` exactly.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl Field {
    pub fn render(&self) -> String {
        match self {
            Field::Num(x) => format_f64(*x),
            Field::Int(n) => n.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Marker(m) => (*m).to_string(),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Field::Num(x) if x.is_finite() => {
                let raw = RawValue::from_string(format_f64(*x)).map_err(serde::ser::Error::custom)?;
                raw.serialize(s)
            }
            Field::Num(_) => s.serialize_str("nan"),
            Field::Int(n) => s.serialize_i64(*n),
            Field::Bool(b) => s.serialize_bool(*b),
            Field::Marker(m) => s.serialize_str(m),
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CharacterRecord {
    pub spec: String,
    pub order: u32,
    pub conductor_exponents: BTreeMap<String, u32>,
    pub dimension: &'static str,
    /// `h` or `2h`; null when the verdict leaves it open.
    pub dim: Option<u64>,
    pub scalar_restriction: bool,
    #[serde(rename = "W")]
    pub w: i32,
    pub ord: Field,
    #[serde(rename = "L1")]
    pub l1: Field,
    #[serde(rename = "LambdaPrime1")]
    pub lambda_prime1: Field,
    #[serde(rename = "R")]
    pub r: Field,
    #[serde(rename = "C1")]
    pub c1: Field,
    #[serde(rename = "C2")]
    pub c2: Field,
    pub bounds_ok: Field,
    pub bound_failures: Vec<&'static str>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct AnalysisRecord {
    #[serde(rename = "D")]
    pub disc: u64,
    pub case: &'static str,
    pub d: Option<u64>,
    pub h: u64,
    pub r: u32,
    #[serde(rename = "B")]
    pub b: Field,
    pub n_simplest: usize,
    pub characters: Vec<CharacterRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

fn character_record(spec: &CharacterSpec, cfg: &NumericsConfig) -> Result<CharacterRecord> {
    let field = &spec.field;
    let verdict = classify_simplest(spec)?;
    let w = root_number(spec)?;
    let mut rec = CharacterRecord {
        spec: spec.id(),
        order: spec.order,
        conductor_exponents: conductor_exponents(spec).into_iter().map(|(p, e)| (p.to_string(), e)).collect(),
        dimension: verdict.tag.as_str(),
        dim: verdict.dimension(field.h),
        scalar_restriction: verdict.scalar_restriction,
        w,
        ord: Field::Int(i64::from((1 - w) / 2)),
        l1: Field::Marker(UNSUPPORTED),
        lambda_prime1: Field::Marker(UNSUPPORTED),
        r: Field::Marker(UNSUPPORTED),
        c1: Field::Marker(UNSUPPORTED),
        c2: Field::Marker(UNSUPPORTED),
        bounds_ok: Field::Marker(UNSUPPORTED),
        bound_failures: Vec::new(),
    };
    if field.case != Case::FourExact {
        return Ok(rec);
    }
    let report = vanishing_order(spec, cfg)?;
    rec.ord = Field::Int(i64::from(report.ord));
    rec.l1 = Field::Num(report.l1);
    match (report.derivative, report.bounds) {
        (Some(t), Some(b)) => {
            rec.lambda_prime1 = Field::Num(t.lambda_prime1);
            rec.r = Field::Num(t.r);
            rec.c1 = Field::Num(t.c1);
            rec.c2 = Field::Num(t.c2);
            rec.bounds_ok = Field::Bool(b.ok());
            rec.bound_failures = b.failures();
        }
        _ => {
            for f in [&mut rec.lambda_prime1, &mut rec.r, &mut rec.c1, &mut rec.c2, &mut rec.bounds_ok] {
                *f = Field::Marker(NOT_APPLICABLE);
            }
        }
    }
    Ok(rec)
}

fn record_for(field: FieldData, cfg: &NumericsConfig) -> Result<AnalysisRecord> {
    let (characters, note) = if field.is_special() {
        (Vec::new(), Some("extra units: no simplest characters"))
    } else {
        let specs = simplest_characters(&field)?;
        let recs = specs.iter().map(|s| character_record(s, cfg)).collect::<Result<Vec<_>>>()?;
        (recs, None)
    };
    Ok(AnalysisRecord {
        disc: field.disc,
        case: field.case.as_str(),
        d: field.d,
        h: field.h,
        r: field.r,
        b: Field::Num(field.b),
        n_simplest: characters.len(),
        characters,
        note,
    })
}

/// Full analysis of `Q(√−D)` and its simplest characters.
pub fn analyze(disc: u64, cfg: &NumericsConfig) -> Result<AnalysisRecord> {
    record_for(build_field(disc)?, cfg)
}
