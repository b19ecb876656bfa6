use core::f64::consts::PI;

use super::{Neumaier, NumericsConfig};
use crate::arith::ideal_counts;
use crate::error::{Error, Result};
use crate::field::FieldData;

/// `θ(t) = h + 2Σ_{n≥1} a(n)·e^{−2πnt/√D}`, `a(n)` the number of ideals of norm `n`.
pub fn theta(t: f64, field: &FieldData, cfg: &NumericsConfig) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain("theta needs t > 0"));
    }
    let rate = 2.0 * PI * t / field.sqrt_disc();
    let q = libm::exp(-rate);
    // a(n) ≤ n, so the tail past N is at most 2Σ_{n>N} n·qⁿ.
    let tail = |n: f64| 2.0 * libm::pow(q, n + 1.0) * ((n + 1.0) - n * q) / ((1.0 - q) * (1.0 - q));
    let mut n_max = 1u64;
    while tail(n_max as f64) >= cfg.target_abs_error {
        n_max += 1 + n_max / 8;
        cfg.check_terms(n_max as f64, "theta")?;
    }
    let counts = ideal_counts(n_max as usize, field.disc)?;
    let mut acc = Neumaier::default();
    for (n, &a) in counts.iter().enumerate().skip(1) {
        if a != 0 {
            acc.add(a as f64 * libm::exp(-rate * n as f64));
        }
    }
    Ok(field.h as f64 + 2.0 * acc.total())
}
