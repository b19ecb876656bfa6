//! Theta series, Eisenstein sums and the central value and derivative of the
//! two-class combination `L̃(s, [O_K], χ) + L̃(s, [𝔭₂], χ)` for `4 ∥ D`.

mod derivative;
mod lattice;
mod theta;

use alloc::string::String;

pub use derivative::{bound_report, central_derivative, coeff_a, coeff_b, incgamma_f, BoundReport, DerivativeTerms};
pub use lattice::{eisenstein, g_odd, partial_l_ideal, IdealClass};
pub use theta::theta;

use crate::characters::CharacterSpec;
use crate::error::{Error, Result};
use crate::field::Case;
use crate::rootnum::root_number;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericsConfig {
    /// Every truncated series stops once its certified tail is below this.
    pub target_abs_error: f64,
    /// Guard on the number of terms any single series may use.
    pub max_terms: u64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self { target_abs_error: 1e-10, max_terms: 100_000_000 }
    }
}

impl NumericsConfig {
    pub fn with_target(target_abs_error: f64) -> Self {
        Self { target_abs_error, ..Self::default() }
    }

    fn check_terms(&self, count: f64, what: &'static str) -> Result<()> {
        if count > self.max_terms as f64 {
            Err(Error::ConvergenceFailure { what, max_terms: self.max_terms })
        } else {
            Ok(())
        }
    }
}

/// Compensated summation; terms are added in call order, so results are
/// reproducible bit for bit.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `L(1)` of the two-class combination, `(2π/√D)(1 + W)(θ(½) − θ(1))`.
pub fn central_value(spec: &CharacterSpec, cfg: &NumericsConfig) -> Result<f64> {
    let field = &spec.field;
    if field.case != Case::FourExact {
        return Err(Error::WrongCase("4 ∥ D required"));
    }
    let w = root_number(spec)?;
    if w == -1 {
        return Ok(0.0);
    }
    let diff = theta(0.5, field, cfg)? - theta(1.0, field, cfg)?;
    Ok(2.0 * core::f64::consts::PI / field.sqrt_disc() * 2.0 * diff)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralReport {
    pub disc: u64,
    pub spec_id: String,
    pub w: i32,
    /// Exactly `0.0` when `W = −1`.
    pub l1: f64,
    /// `Λ(1) = (B/2π)·L(1)`.
    pub lambda1: f64,
    pub derivative: Option<DerivativeTerms>,
    pub ord: u32,
    pub bounds: Option<BoundReport>,
}

impl CentralReport {
    pub fn lambda_prime1(&self) -> Option<f64> {
        self.derivative.map(|t| t.lambda_prime1)
    }

    /// `None` when the bounds do not apply (`W = +1`).
    pub fn bounds_ok(&self) -> Option<bool> {
        self.bounds.as_ref().map(BoundReport::ok)
    }
}

/// Order of vanishing at `s = 1`, read off from the computed values.
pub fn vanishing_order(spec: &CharacterSpec, cfg: &NumericsConfig) -> Result<CentralReport> {
    let field = &spec.field;
    if field.case != Case::FourExact {
        return Err(Error::WrongCase("4 ∥ D required"));
    }
    field.require_not_special()?;
    let w = root_number(spec)?;
    let l1 = central_value(spec, cfg)?;
    let lambda1 = field.b / (2.0 * core::f64::consts::PI) * l1;
    let (derivative, bounds, ord) = if w == 1 {
        if !(l1 > 0.0) {
            return Err(Error::Inconclusive("W = +1 but L(1) is not positive"));
        }
        (None, None, 0)
    } else {
        let terms = central_derivative(spec, cfg)?;
        if !(terms.lambda_prime1 > 0.0) {
            return Err(Error::Inconclusive("W = -1 but Λ'(1) is not positive"));
        }
        (Some(terms), Some(bound_report(field, &terms)), 1)
    };
    Ok(CentralReport { disc: field.disc, spec_id: spec.id(), w, l1, lambda1, derivative, ord, bounds })
}
