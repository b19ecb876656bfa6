//! Command-line analysis, tables and self-verification for the simplest Hecke
//! characters computed by `cmhecke-core`.

pub mod output;
pub mod record;
pub mod verify;

use cmhecke_core::Error;
use rayon::prelude::*;

pub use record::{analyze, AnalysisRecord, CharacterRecord, Field};

/// Exit status for a core error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotFundamental(_) => 2,
        Error::ConvergenceFailure { .. } => 3,
        _ => 1,
    }
}

/// Records for every fundamental `D` in `from..=to`, in increasing `D`, with
/// the discriminants that failed alongside their errors.
pub fn table(from: u64, to: u64, cfg: &cmhecke_core::NumericsConfig) -> (Vec<AnalysisRecord>, Vec<(u64, Error)>) {
    let results: Vec<(u64, Result<AnalysisRecord, Error>)> = (from..=to)
        .into_par_iter()
        .filter(|&d| cmhecke_core::arith::is_fundamental(d))
        .map(|d| (d, analyze(d, cfg)))
        .collect();
    let mut ok = Vec::new();
    let mut failed = Vec::new();
    for (d, r) in results {
        match r {
            Ok(rec) => ok.push(rec),
            Err(e) => failed.push((d, e)),
        }
    }
    (ok, failed)
}
