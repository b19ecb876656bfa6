//! Text, JSON and CSV renderings of analysis records.

use std::fmt::Write as _;
use std::io;

use crate::record::{format_f64, AnalysisRecord, Field};

pub const CSV_HEADER: [&str; 13] =
    ["D", "case", "d", "h", "r", "B", "spec", "order", "W", "ord", "L1", "dLambda", "bounds_ok"];

/// One row per character, in record order.
pub fn csv_rows(rec: &AnalysisRecord) -> Vec<[String; 13]> {
    let b = rec.b.render();
    let d = rec.d.map(|d| d.to_string()).unwrap_or_default();
    rec.characters
        .iter()
        .map(|c| {
            [
                rec.disc.to_string(),
                rec.case.to_string(),
                d.clone(),
                rec.h.to_string(),
                rec.r.to_string(),
                b.clone(),
                c.spec.clone(),
                c.order.to_string(),
                c.w.to_string(),
                c.ord.render(),
                c.l1.render(),
                c.lambda_prime1.render(),
                c.bounds_ok.render(),
            ]
        })
        .collect()
}

pub fn write_csv<W: io::Write>(out: W, records: &[AnalysisRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for rec in records {
        for row in csv_rows(rec) {
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn to_json<T: serde::Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("records serialize")
}

fn show(f: &Field) -> String {
    match f {
        Field::Num(x) if x.abs() >= 1e-3 && x.abs() < 1e6 => format!("{x:.12}"),
        Field::Num(x) => format_f64(*x),
        other => other.render(),
    }
}

pub fn human(rec: &AnalysisRecord) -> String {
    let mut s = String::new();
    let d = rec.d.map(|d| format!(", d = {d}")).unwrap_or_default();
    let _ = writeln!(s, "D = {} ({}{d})", rec.disc, rec.case);
    let _ = writeln!(s, "  h = {}, r = {}, B = {}", rec.h, rec.r, show(&rec.b));
    if let Some(note) = rec.note {
        let _ = writeln!(s, "  {note}");
    }
    for c in &rec.characters {
        let exps: Vec<String> = c.conductor_exponents.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        let dim = c.dim.map(|n| n.to_string()).unwrap_or_else(|| "?".into());
        let _ = writeln!(s, "  character {} (order {}, conductor {})", c.spec, c.order, exps.join(" "));
        let _ = writeln!(s, "    dimension {} = {dim}, scalar restriction {}", c.dimension, c.scalar_restriction);
        let _ = writeln!(s, "    W = {:+}, ord = {}", c.w, c.ord.render());
        let _ = writeln!(s, "    L(1) = {}, Lambda'(1) = {}", show(&c.l1), show(&c.lambda_prime1));
        if let Field::Bool(ok) = c.bounds_ok {
            let _ = writeln!(s, "    R = {}, C1 = {}, C2 = {}", show(&c.r), show(&c.c1), show(&c.c2));
            if ok {
                let _ = writeln!(s, "    bounds hold");
            } else {
                let _ = writeln!(s, "    bounds fail: {}", c.bound_failures.join(", "));
            }
        }
    }
    s
}
