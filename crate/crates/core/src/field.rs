//! Validated discriminants and the per-field constants.

use alloc::vec::Vec;
use core::fmt;

use crate::arith::{factor, is_fundamental, reduced_forms};
use crate::error::{Error, Result};

/// Ramification of 2 in `Q(√−D)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// `2 ∤ D`
    Odd,
    /// `4 ∥ D`, with `d = D/4 ≡ 1 mod 4`
    FourExact,
    /// `8 ∥ D`, with `d = D/4 ≡ 2 mod 4`
    Eight,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::Odd => "ODD",
            Case::FourExact => "FOUR_EXACT",
            Case::Eight => "EIGHT",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldData {
    /// `D`, where `−D` is the field discriminant.
    pub disc: u64,
    pub case: Case,
    /// `D/4` when `4 | D`.
    pub d: Option<u64>,
    /// Class number.
    pub h: u64,
    /// Genus rank: `r + 1` prime divisors of `D`.
    pub r: u32,
    /// Functional-equation constant: `D`, `√2·D` or `2D`.
    pub b: f64,
    pub prime_divisors: Vec<u64>,
    pub unit_count: u32,
}

impl FieldData {
    /// `D ∈ {3, 4}`: extra units, excluded from the character theory.
    pub fn is_special(&self) -> bool {
        self.disc <= 4
    }

    /// `d`, panicking for odd `D`.
    pub fn d(&self) -> u64 {
        self.d.expect("d is defined only when 4 | D")
    }

    pub fn sqrt_disc(&self) -> f64 {
        libm::sqrt(self.disc as f64)
    }

    pub fn require_not_special(&self) -> Result<()> {
        if self.is_special() {
            Err(Error::SpecialDiscriminant(self.disc))
        } else {
            Ok(())
        }
    }
}

pub fn build_field(disc: u64) -> Result<FieldData> {
    if disc < 3 || !is_fundamental(disc) {
        return Err(Error::NotFundamental(disc));
    }
    let case = match disc % 8 {
        4 => Case::FourExact,
        0 => Case::Eight,
        _ => Case::Odd,
    };
    let d = (disc % 4 == 0).then_some(disc / 4);
    let h = reduced_forms(disc)?.len() as u64;
    let prime_divisors: Vec<u64> = factor(disc).primes().collect();
    let r = prime_divisors.len() as u32 - 1;
    let b = match case {
        Case::Odd => disc as f64,
        Case::FourExact => core::f64::consts::SQRT_2 * disc as f64,
        Case::Eight => 2.0 * disc as f64,
    };
    let unit_count = match disc {
        3 => 6,
        4 => 4,
        _ => 2,
    };
    Ok(FieldData { disc, case, d, h, r, b, prime_divisors, unit_count })
}

/// Number of simplest characters: 1 for odd `D` or `D = 4`, else 2.
pub fn simplest_count(field: &FieldData) -> u32 {
    if field.case == Case::Odd || field.disc == 4 {
        1
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        let f = build_field(20).unwrap();
        assert_eq!((f.case, f.d, f.h, f.r), (Case::FourExact, Some(5), 2, 1));
        assert!((f.b - 28.284_271_247_461_9).abs() < 1e-12);

        let f = build_field(7).unwrap();
        assert_eq!((f.case, f.d, f.h, f.r), (Case::Odd, None, 1, 0));
        assert_eq!(f.b, 7.0);

        assert_eq!(build_field(21), Err(Error::NotFundamental(21)));
        assert_eq!(build_field(12), Err(Error::NotFundamental(12)));
        assert_eq!(build_field(16), Err(Error::NotFundamental(16)));

        let f = build_field(84).unwrap();
        assert_eq!((f.case, f.d, f.r, f.h), (Case::FourExact, Some(21), 2, 4));

        let f = build_field(40).unwrap();
        assert_eq!((f.case, f.d, f.b), (Case::Eight, Some(10), 80.0));
    }

    #[test]
    fn special_discriminants() {
        let f = build_field(4).unwrap();
        assert!(f.is_special());
        assert_eq!((f.h, f.unit_count), (1, 4));
        assert_eq!(build_field(3).unwrap().unit_count, 6);
        assert!(!build_field(7).unwrap().is_special());
    }

    #[test]
    fn simplest_counts() {
        assert_eq!(simplest_count(&build_field(7).unwrap()), 1);
        assert_eq!(simplest_count(&build_field(20).unwrap()), 2);
        assert_eq!(simplest_count(&build_field(4).unwrap()), 1);
        assert_eq!(simplest_count(&build_field(24).unwrap()), 2);
    }

    #[test]
    fn genus_divides_class_number() {
        for disc in 3..=500 {
            if let Ok(f) = build_field(disc) {
                assert_eq!(f.h % (1 << f.r), 0, "D = {disc}");
                let ratio = f.b / disc as f64;
                let expect = match f.case {
                    Case::Odd => 1.0,
                    Case::FourExact => core::f64::consts::SQRT_2,
                    Case::Eight => 2.0,
                };
                assert!((ratio - expect).abs() < 1e-15);
            }
        }
    }
}
