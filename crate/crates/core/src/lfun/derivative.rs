//! `Λ′(1)` through incomplete gamma functions, and the explicit bounds on its terms.

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use super::{Neumaier, NumericsConfig};
use crate::arith::{isqrt, kronecker, kronecker_table};
use crate::characters::{eval_epsilon, AlgebraicInteger, CharacterSpec};
use crate::error::{Error, Result};
use crate::field::{Case, FieldData};
use crate::rootnum::root_number;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `f(x) = Γ(0, x)/x = E₁(x)/x`.
pub fn incgamma_f(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x <= 1.0 {
        // E₁(x) = −γ − ln x − Σ_{k≥1} (−x)^k/(k·k!)
        let mut sum = Neumaier::default();
        let mut power = 1.0;
        for k in 1..40 {
            power *= -x / k as f64;
            let term = power / k as f64;
            sum.add(term);
            if term.abs() < 1e-18 * sum.total().abs() {
                break;
            }
        }
        return (-EULER_GAMMA - libm::log(x) - sum.total()) / x;
    }
    if x > 745.0 {
        return 0.0;
    }
    // Modified Lentz on E₁(x) = e^{−x}/(x+1− 1²/(x+3− 2²/(x+5− …)))
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..1000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    libm::exp(-x) * (h / x)
}

/// `Σ ε(u+v√−d)·2u` over `u > 0` odd, `v > 0` even with `u² + v²d = n`.
pub fn coeff_a(n: u64, spec: &CharacterSpec) -> Result<f64> {
    let field = &spec.field;
    if field.case != Case::FourExact {
        return Err(Error::WrongCase("4 ∥ D required"));
    }
    let d = field.d();
    let mut total = 0i64;
    let mut v = 2u64;
    while v * v * d < n {
        let rest = n - v * v * d;
        let u = isqrt(rest);
        if u * u == rest && u % 2 == 1 {
            total += 2 * u as i64 * epsilon_sign(spec, u as i64, v as i64)?;
        }
        v += 2;
    }
    Ok(total as f64)
}

/// `Σ (−D/u)·2u` over `u, v > 0` odd with `u² + v²d = n`.
pub fn coeff_b(n: u64, field: &FieldData) -> f64 {
    let Some(d) = field.d else { return 0.0 };
    if n % 4 != 2 {
        return 0.0;
    }
    let mut total = 0i64;
    let mut v = 1u64;
    while v * v * d < n {
        let rest = n - v * v * d;
        let u = isqrt(rest);
        if u * u == rest && u % 2 == 1 {
            total += 2 * u as i64 * i64::from(kronecker(-(field.disc as i64), u as i64));
        }
        v += 2;
    }
    total as f64
}

/// `ε(u + v√−d)` for `v` even; it is `±1`, or 0 off the conductor.
fn epsilon_sign(spec: &CharacterSpec, u: i64, v: i64) -> Result<i64> {
    match eval_epsilon(spec, &AlgebraicInteger::sqrt(u, v, spec.field.d())) {
        Ok(m) => Ok(i64::from(m.as_sign().expect("ε at an odd rational-like element is ±1"))),
        Err(Error::NotCoprime) => Ok(0),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeTerms {
    pub r: f64,
    pub c1: f64,
    pub c2: f64,
    /// `4(R + C₁ − C₂)`.
    pub lambda_prime1: f64,
}

/// `Σ_{u ≥ 1} e^{−c u²} ≤ ½√(π/c)`, plus 1 when the `u = 0` row is included.
fn gauss_row(c: f64, with_zero: bool) -> f64 {
    0.5 * libm::sqrt(PI / c) + if with_zero { 1.0 } else { 0.0 }
}

/// Cutoff `X` for `Σ_{Q > X} 2e^{−aQ}/(a√Q)` over `Q = u² + v²d`: bounded by
/// `2/(a√X)·e^{−aX/2}·Σ e^{−aQ/2}`.
fn form_cutoff(a: f64, d: f64, budget: f64) -> f64 {
    let rows = gauss_row(a / 2.0, false) * gauss_row(a * d / 2.0, true);
    let bound = |x: f64| 2.0 / (a * libm::sqrt(x)) * libm::exp(-a * x / 2.0) * rows;
    // Past X every argument aQ is ≥ 1, where f(aQ) < e^{−aQ}/(aQ)² ≤ e^{−aQ}/(aQ).
    let mut x = 1.0 / a;
    while bound(x) >= budget {
        x *= 1.25;
    }
    x
}

/// `Λ′(1) = 4(R + C₁ − C₂)` with `R = Σ (−D/n)·n·f(2πn²/B)`,
/// `C₁ = Σ a(n)·f(2πn/B)` and `C₂ = Σ b(n)·f(πn/B)`.
pub fn central_derivative(spec: &CharacterSpec, cfg: &NumericsConfig) -> Result<DerivativeTerms> {
    let field = &spec.field;
    if field.case != Case::FourExact {
        return Err(Error::WrongCase("4 ∥ D required"));
    }
    let w = root_number(spec)?;
    if w != -1 {
        return Err(Error::WrongSign(w));
    }
    let b = field.b;
    let d = field.d();
    let df = d as f64;
    let budget = cfg.target_abs_error / 12.0;

    // R: n·f(an²) < e^{−an²}/(an) once an² ≥ 1, and n² ≥ (N+1)² + 2(N+1)(n−N−1) past N.
    let a = 2.0 * PI / b;
    let r_tail = |n: f64| libm::exp(-a * n * n) / (a * n * (1.0 - libm::exp(-2.0 * a * n)));
    let mut n_max = libm::ceil(1.0 / libm::sqrt(a)) as u64;
    while r_tail((n_max + 1) as f64) >= budget {
        n_max += 1;
        cfg.check_terms(n_max as f64, "R series")?;
    }
    let chi = kronecker_table(field.disc);
    let mut r = Neumaier::default();
    for n in 1..=n_max {
        let k = chi[(n % field.disc) as usize];
        if k != 0 {
            let nf = n as f64;
            r.add(f64::from(k) * nf * incgamma_f(a * nf * nf));
        }
    }

    let x1 = form_cutoff(a, df, budget);
    cfg.check_terms(libm::sqrt(x1) * (libm::sqrt(x1 / df) + 1.0), "C1 series")?;
    let mut c1 = Neumaier::default();
    let x1 = libm::floor(x1) as u64;
    let mut u = 1u64;
    while u * u + 4 * d <= x1 {
        let mut v = 2u64;
        let mut row = Neumaier::default();
        while u * u + v * v * d <= x1 {
            let sign = epsilon_sign(spec, u as i64, v as i64)?;
            if sign != 0 {
                let q = (u * u + v * v * d) as f64;
                row.add((2 * u) as f64 * sign as f64 * incgamma_f(a * q));
            }
            v += 2;
        }
        c1.add(row.total());
        u += 2;
    }

    let a2 = PI / b;
    let x2 = form_cutoff(a2, df, budget);
    cfg.check_terms(libm::sqrt(x2) * (libm::sqrt(x2 / df) + 1.0), "C2 series")?;
    let mut c2 = Neumaier::default();
    let x2 = libm::floor(x2) as u64;
    let mut u = 1u64;
    while u * u + d <= x2 {
        let k = chi[(u % field.disc) as usize];
        if k != 0 {
            let mut v = 1u64;
            let mut row = Neumaier::default();
            while u * u + v * v * d <= x2 {
                let q = (u * u + v * v * d) as f64;
                row.add(incgamma_f(a2 * q));
                v += 2;
            }
            c2.add(f64::from(k) * (2 * u) as f64 * row.total());
        }
        u += 2;
    }

    let (r, c1, c2) = (r.total(), c1.total(), c2.total());
    Ok(DerivativeTerms { r, c1, c2, lambda_prime1: 4.0 * (r + c1 - c2) })
}

/// Relative slack on the printed constants.
pub const BOUND_SLACK: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub b: f64,
    /// `.5235B − .8458B^{3/4} − .3951B^{1/2}`.
    pub r_lower: f64,
    pub r_ok: bool,
    /// `2.789·10⁻⁷·B`.
    pub c1_limit: f64,
    pub c1_ok: bool,
    /// `.0850·B`.
    pub c2_limit: f64,
    pub c2_ok: bool,
    /// `.4385B − .8458B^{3/4} − .3951B^{1/2}`.
    pub final_lower: f64,
    /// `None` when `B < 42√2`.
    pub final_ok: Option<bool>,
}

impl BoundReport {
    pub fn ok(&self) -> bool {
        self.r_ok && self.c1_ok && self.c2_ok && self.final_ok.unwrap_or(true)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.r_ok {
            out.push("R lower bound");
        }
        if !self.c1_ok {
            out.push("|C1| upper bound");
        }
        if !self.c2_ok {
            out.push("|C2| upper bound");
        }
        if self.final_ok == Some(false) {
            out.push("Lambda'(1)/4 lower bound");
        }
        out
    }
}

#[allow(clippy::approx_constant)]
pub fn bound_report(field: &FieldData, terms: &DerivativeTerms) -> BoundReport {
    let b = field.b;
    let correction = 0.8458 * libm::pow(b, 0.75) + 0.3951 * libm::sqrt(b);
    let r_lower = 0.5235 * b - correction;
    let c1_limit = 2.789e-7 * b;
    let c2_limit = 0.0850 * b;
    let final_lower = 0.4385 * b - correction;
    let final_ok = (b >= 42.0 * SQRT_2).then(|| terms.lambda_prime1 / 4.0 >= final_lower);
    BoundReport {
        b,
        r_lower,
        r_ok: terms.r >= r_lower - BOUND_SLACK * r_lower.abs(),
        c1_limit,
        c1_ok: terms.c1.abs() <= c1_limit * (1.0 + BOUND_SLACK),
        c2_limit,
        c2_ok: terms.c2.abs() <= c2_limit * (1.0 + BOUND_SLACK),
        final_lower,
        final_ok,
    }
}
