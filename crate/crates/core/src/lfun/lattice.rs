//! Direct lattice sums at points of absolute convergence.

use core::f64::consts::PI;

use super::{theta, Neumaier, NumericsConfig};
use crate::arith::{isqrt, kronecker_table};
use crate::characters::{eval_epsilon, eval_epsilon_p2_coset, AlgebraicInteger, CharacterSpec, Mu12};
use crate::error::{Error, Result};
use crate::field::{Case, FieldData};
use crate::rootnum::chi_p2_value;

/// Ideal class of a partial L-function: `[O_K]` or `[𝔭₂]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealClass {
    Principal,
    P2,
}

impl IdealClass {
    pub fn as_str(self) -> &'static str {
        match self {
            IdealClass::Principal => "PRINCIPAL",
            IdealClass::P2 => "P2_CLASS",
        }
    }
}

/// Smallest power-of-two-ish cutoff `X` with
/// `(s−½)/(s−3/2)·κ(X)·X^{3/2−s} < target`, for summands bounded by
/// `Q^{1/2−s}` over a lattice with at most `κ(T)·T` points of norm `≤ T`.
fn norm_cutoff(s: f64, target: f64, kappa: impl Fn(f64) -> f64) -> f64 {
    let bound = |x: f64| (s - 0.5) / (s - 1.5) * kappa(x) * libm::pow(x, 1.5 - s);
    let mut hi = 1.0;
    while bound(hi) >= target {
        hi *= 2.0;
    }
    let mut lo = hi / 2.0;
    for _ in 0..16 {
        let mid = 0.5 * (lo + hi);
        if bound(mid) >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

fn check_direct(s: f64) -> Result<()> {
    if s < 3.0 {
        Err(Error::Domain("direct summation needs s >= 3; only s = 1 is covered by the theta identity"))
    } else {
        Ok(())
    }
}

/// `Σ_{n>0, m} (−D/n)·n·(n² + c²m²)^{−s}` over `n² + c²m² ≤ X`.
fn eisenstein_direct(c: f64, s: f64, field: &FieldData, cfg: &NumericsConfig, odd_m: bool) -> Result<f64> {
    let x = norm_cutoff(s, cfg.target_abs_error, |x| 2.0 / c + 1.0 / libm::sqrt(x));
    cfg.check_terms(libm::sqrt(x) * (2.0 * libm::sqrt(x) / c + 1.0), "eisenstein")?;
    let chi = kronecker_table(field.disc);
    let n_max = libm::floor(libm::sqrt(x)) as u64;
    let mut outer = Neumaier::default();
    for n in 1..=n_max {
        let k = chi[(n % field.disc) as usize];
        if k == 0 {
            continue;
        }
        let nf = n as f64;
        let m_max = libm::floor(libm::sqrt(x - nf * nf) / c) as i64;
        let mut inner = Neumaier::default();
        let start = if odd_m { 1 } else { 0 };
        let step = if odd_m { 2 } else { 1 };
        let mut m = start;
        while m <= m_max {
            let cm = c * m as f64;
            let term = nf * libm::pow(nf * nf + cm * cm, -s);
            inner.add(if m == 0 { term } else { 2.0 * term });
            m += step;
        }
        outer.add(f64::from(k) * inner.total());
    }
    Ok(outer.total())
}

/// `G(it, s)`: direct sum for `s ≥ 3`, the theta identity at `s = 1`.
pub fn eisenstein(t: f64, s: f64, field: &FieldData, cfg: &NumericsConfig) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain("eisenstein needs t > 0"));
    }
    let sd = field.sqrt_disc();
    if s == 1.0 {
        return Ok(PI / sd * theta(t * sd, field, cfg)?);
    }
    check_direct(s)?;
    eisenstein_direct(field.disc as f64 * t, s, field, cfg, false)
}

/// `G_odd(it, s) = G(it, s) − G(2it, s)`: the odd-`m` part.
pub fn g_odd(t: f64, s: f64, field: &FieldData, cfg: &NumericsConfig) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain("g_odd needs t > 0"));
    }
    let sd = field.sqrt_disc();
    if s == 1.0 {
        return Ok(PI / sd * (theta(t * sd, field, cfg)? - theta(2.0 * t * sd, field, cfg)?));
    }
    check_direct(s)?;
    eisenstein_direct(field.disc as f64 * t, s, field, cfg, true)
}

/// Largest odd integer `≤ n`, for `n ≥ 0` (−1 when `n = 0`).
fn largest_odd(n: i64) -> i64 {
    if n % 2 == 1 {
        n
    } else {
        n - 1
    }
}

fn value_or_zero(v: Result<Mu12>) -> Result<Option<Mu12>> {
    match v {
        Ok(m) => Ok(Some(m)),
        Err(Error::NotCoprime) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `L̃(s, C, χ) + L̃(s, C, χ′)` by summing over the ideals of the class.
pub fn partial_l_ideal(s: f64, cls: IdealClass, spec: &CharacterSpec, cfg: &NumericsConfig) -> Result<f64> {
    let field = &spec.field;
    if field.case != Case::FourExact {
        return Err(Error::WrongCase("4 ∥ D required"));
    }
    check_direct(s)?;
    let conj = spec.conjugate();
    let d = field.d();
    let df = d as f64;
    let mut outer = Neumaier::default();
    match cls {
        IdealClass::Principal => {
            // Ideals (α), α = x + y√−d up to sign.
            let x = norm_cutoff(s, cfg.target_abs_error, |x| {
                (2.0 + 1.0 / libm::sqrt(x)) * (2.0 / libm::sqrt(df) + 1.0 / libm::sqrt(x))
            });
            cfg.check_terms((2.0 * libm::sqrt(x) + 1.0) * (2.0 * libm::sqrt(x / df) + 1.0), "partial L, principal")?;
            let x = libm::floor(x) as u64;
            let y_max = isqrt(x / d) as i64;
            for y in -y_max..=y_max {
                let rest = x - (y * y) as u64 * d;
                let x_max = isqrt(rest) as i64;
                let mut inner = Neumaier::default();
                for xx in -x_max..=x_max {
                    let alpha = AlgebraicInteger::sqrt(xx, y, d);
                    let (Some(e1), Some(e2)) =
                        (value_or_zero(eval_epsilon(spec, &alpha))?, value_or_zero(eval_epsilon(&conj, &alpha))?)
                    else {
                        continue;
                    };
                    let coeff = (e1.to_complex() + e2.to_complex()) * alpha.to_complex();
                    inner.add(0.5 * coeff.re * libm::pow(alpha.norm() as f64, -s));
                }
                outer.add(inner.total());
            }
        }
        IdealClass::P2 => {
            // 𝔞 = γ𝔭₂ with γ = a + b(1−√−d)/2 ∈ 𝔭₂⁻¹, b odd so that 𝔞 is
            // prime to 2; χ(𝔞) = ε(β)·β·χ(α₀⁻¹𝔭₂) with β = α₀γ.
            let c = chi_p2_value(spec)?.to_complex();
            let c_conj = chi_p2_value(&conj)?.to_complex();
            let x = norm_cutoff(s, cfg.target_abs_error, |x| {
                (2.0 * libm::sqrt(2.0 / df) + 1.0 / libm::sqrt(x)) * (core::f64::consts::SQRT_2 + 1.0 / libm::sqrt(x))
            });
            cfg.check_terms(
                (2.0 * libm::sqrt(2.0 * x / df) + 1.0) * (libm::sqrt(2.0 * x) + 1.0),
                "partial L, p2 class",
            )?;
            // N(𝔞) = (w² + b²d)/2 with w = 2a + b.
            let two_x = 2 * libm::floor(x) as u64;
            let b_max = isqrt(two_x / d) as i64;
            let k = (d as i64 + 1) / 2;
            let mut b = -largest_odd(b_max);
            while b <= b_max {
                let rest = two_x - (b * b) as u64 * d;
                let w_max = isqrt(rest) as i64;
                let mut inner = Neumaier::default();
                let mut w = -largest_odd(w_max);
                while w <= w_max {
                    let a = (w - b) / 2;
                    let beta = AlgebraicInteger::sqrt(a + k * b, a, d);
                    let norm_a = ((w * w) as u64 + (b * b) as u64 * d) / 2;
                    debug_assert_eq!(beta.norm() * 2, norm_a * (d + 1));
                    let e1 = value_or_zero(eval_epsilon_p2_coset(spec, a, b))?;
                    let e2 = value_or_zero(eval_epsilon_p2_coset(&conj, a, b))?;
                    if let (Some(e1), Some(e2)) = (e1, e2) {
                        let coeff = (e1.to_complex() * c + e2.to_complex() * c_conj) * beta.to_complex();
                        inner.add(0.5 * coeff.re * libm::pow(norm_a as f64, -s));
                    }
                    w += 2;
                }
                outer.add(inner.total());
                b += 2;
            }
        }
    }
    Ok(outer.total())
}
