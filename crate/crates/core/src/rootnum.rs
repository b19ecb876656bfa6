//! Root numbers of the simplest characters.

use num_complex::Complex64;

use crate::arith::kronecker;
use crate::characters::{eval_epsilon, kappa2, AlgebraicInteger, CharacterSpec, Mu12};
use crate::error::{Error, Result};
use crate::field::{Case, FieldData};
use crate::lfun::{g_odd, partial_l_ideal, IdealClass, NumericsConfig};

/// `W(χ) ∈ {±1}`.
pub fn root_number(spec: &CharacterSpec) -> Result<i32> {
    let field = &spec.field;
    field.require_not_special()?;
    if !spec.is_simplest() {
        return Err(Error::Unsupported("root numbers of twisted characters"));
    }
    Ok(match field.case {
        Case::Odd => kronecker(2, field.disc as i64),
        Case::FourExact => kronecker(2, field.d() as i64),
        Case::Eight => {
            let v = eval_epsilon(spec, &AlgebraicInteger::sqrt(1, 1, field.d()))?;
            v.as_sign().expect("ε(1+√−d) is ±1 for 8 ∥ D")
        }
    })
}

/// `(q₀ + q₁i + q₂√−d + q₃i√−d) / den` in `Q(i, √−d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CosetValue {
    pub q: [i64; 4],
    pub den: i64,
    pub d: u64,
}

impl CosetValue {
    pub fn to_complex(&self) -> Complex64 {
        let sd = libm::sqrt(self.d as f64);
        let [q0, q1, q2, q3] = self.q.map(|v| v as f64);
        // √−d = i√d, i√−d = −√d
        Complex64::new(q0 - q3 * sd, q1 + q2 * sd) / self.den as f64
    }

    /// `|v|²` as an exact fraction, when it is rational.
    pub fn abs_sq(&self) -> Option<(i64, i64)> {
        let [q0, q1, q2, q3] = self.q;
        // The √d cross term is 2(q₁q₂ − q₀q₃)√d.
        if q1 * q2 != q0 * q3 {
            return None;
        }
        let num = q0 * q0 + q1 * q1 + self.d as i64 * (q2 * q2 + q3 * q3);
        let den = self.den * self.den;
        let g = crate::arith::gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        Some((num / g, den / g))
    }

    /// Image under `i ↦ −i`, fixing `√−d`.
    pub fn conj_i(&self) -> Self {
        let [q0, q1, q2, q3] = self.q;
        Self { q: [q0, -q1, q2, -q3], ..*self }
    }
}

/// `χ(α₀⁻¹𝔭₂) = W·(1 − ε₂(√−d))·α₀⁻¹` with `α₀ = 1 + √−d`.
pub fn chi_p2_value(spec: &CharacterSpec) -> Result<CosetValue> {
    let field = &spec.field;
    if field.case != Case::FourExact {
        return Err(Error::WrongCase("4 ∥ D required"));
    }
    let w = i64::from(root_number(spec)?);
    let s: i64 = match spec.eps2_on_sqrt_md {
        Some(Mu12::I) => 1,
        Some(Mu12::NEG_I) => -1,
        _ => unreachable!("ε₂(√−d) is ±i"),
    };
    let d = field.d();
    // (1 − si)(1 − √−d) / (1 + d)
    Ok(CosetValue { q: [w, -s * w, -w, s * w], den: 1 + d as i64, d })
}

/// `W(κ₂ψ₂)`.
pub fn w_kappa2_psi2(field: &FieldData) -> Result<Mu12> {
    match field.case {
        Case::Odd => Err(Error::WrongCase("4 | D required")),
        Case::FourExact => Ok(Mu12::I),
        Case::Eight => {
            let k2 = Mu12::from_sign(kappa2(2, field.disc));
            Ok(if kappa2(-1, field.disc) == -1 { Mu12::I * k2 } else { k2 })
        }
    }
}

/// Recovers `W` from the `𝔭₂`-class lattice sum against `2^{s₀}·G_odd(i/(2√D), s₀)`.
pub fn numeric_root_check(spec: &CharacterSpec, s0: f64, cfg: &NumericsConfig) -> Result<i32> {
    let field = &spec.field;
    if field.case != Case::FourExact {
        return Err(Error::WrongCase("4 ∥ D required"));
    }
    if s0 < 3.0 {
        return Err(Error::Domain("numeric root check needs s0 >= 3"));
    }
    let lhs = partial_l_ideal(s0, IdealClass::P2, spec, cfg)?;
    let rhs = libm::pow(2.0, s0) * g_odd(0.5 / field.sqrt_disc(), s0, field, cfg)?;
    let ratio = lhs / rhs;
    if (ratio - 1.0).abs() < 1e-4 {
        Ok(1)
    } else if (ratio + 1.0).abs() < 1e-4 {
        Ok(-1)
    } else {
        Err(Error::ConvergenceFailure { what: "numeric root number ratio", max_terms: cfg.max_terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::Sign;
    use crate::field::build_field;

    fn spec(disc: u64, sign: Sign) -> CharacterSpec {
        CharacterSpec::simplest(&build_field(disc).unwrap(), sign).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(root_number(&spec(7, Sign::Plus)), Ok(1));
        assert_eq!(root_number(&spec(20, Sign::Plus)), Ok(-1));
        assert_eq!(root_number(&spec(20, Sign::Minus)), Ok(-1));
        assert_eq!(root_number(&spec(68, Sign::Plus)), Ok(1));
        let w40: [i32; 2] = [Sign::Plus, Sign::Minus].map(|s| root_number(&spec(40, s)).unwrap());
        assert_eq!(w40[0], -w40[1]);
    }

    #[test]
    fn coset_value_d20() {
        let v = chi_p2_value(&spec(20, Sign::Plus)).unwrap();
        // −(1 − i)(1 − √−5)/6
        assert_eq!(v, CosetValue { q: [-1, 1, 1, -1], den: 6, d: 5 });
        assert_eq!(v.abs_sq(), Some((1, 3)));
        let w = chi_p2_value(&spec(20, Sign::Minus)).unwrap();
        assert_eq!(w, v.conj_i());
        assert_eq!(chi_p2_value(&spec(40, Sign::Plus)), Err(Error::WrongCase("4 ∥ D required")));
    }

    #[test]
    fn kappa_psi_table() {
        assert_eq!(w_kappa2_psi2(&build_field(20).unwrap()), Ok(Mu12::I));
        assert!(w_kappa2_psi2(&build_field(7).unwrap()).is_err());
        for disc in [24u64, 40, 56, 88, 104, 120, 136] {
            let w = w_kappa2_psi2(&build_field(disc).unwrap()).unwrap();
            let k1 = kappa2(-1, disc);
            assert_eq!(w.order(), if k1 == -1 { 4 } else { w.order().min(2) });
        }
    }
}
