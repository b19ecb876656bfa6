//! Dimension of the CM abelian variety attached to ε: `h` or `2h`.

use alloc::vec::Vec;
use core::fmt;

use crate::arith::{factor, is_fundamental, is_prime, kronecker, mod_pow};
use crate::characters::{kappa2, CharacterSpec, LocalKind, Mu12};
use crate::error::{Error, Result};

/// The ε-data the dimension verdict depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpsilonProfile {
    pub order: u32,
    pub disc: u64,
    /// `ε(2α₂²)` for some `α₂` with `2α₂²` prime to the conductor.
    pub val_2: Option<Mu12>,
    /// `ε(3α₃²)` likewise.
    pub val_3: Option<Mu12>,
    /// Smallest `N` with `Im(ε) ⊆ μ_N`.
    pub image_exponent: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DimensionTag {
    EqualsH,
    TwiceH,
    /// The image constraint fails; the dimension is not determined here.
    ExceedsHUnknown,
}

impl DimensionTag {
    pub fn as_str(self) -> &'static str {
        match self {
            DimensionTag::EqualsH => "EQUALS_H",
            DimensionTag::TwiceH => "TWICE_H",
            DimensionTag::ExceedsHUnknown => "EXCEEDS_H_UNKNOWN",
        }
    }
}

impl fmt::Display for DimensionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DimensionVerdict {
    pub tag: DimensionTag,
    /// Isogenous to the scalar restriction of a CM elliptic curve.
    pub scalar_restriction: bool,
}

impl DimensionVerdict {
    pub fn dimension(&self, h: u64) -> Option<u64> {
        match self.tag {
            DimensionTag::EqualsH => Some(h),
            DimensionTag::TwiceH => Some(2 * h),
            DimensionTag::ExceedsHUnknown => None,
        }
    }

    fn plain(tag: DimensionTag) -> Self {
        Self { tag, scalar_restriction: false }
    }
}

/// Largest admissible image: `μ₂`, `μ₄`, `μ₆` or `μ₁₂` by `gcd(6, D)`.
pub fn image_bound(disc: u64) -> u32 {
    match (disc % 2 == 0, disc % 3 == 0) {
        (false, false) => 2,
        (true, false) => 4,
        (false, true) => 6,
        (true, true) => 12,
    }
}

pub fn check_image_constraint(profile: &EpsilonProfile) -> bool {
    profile.image_exponent != 0 && image_bound(profile.disc) % profile.image_exponent == 0
}

pub fn classify(profile: &EpsilonProfile, h: u64) -> Result<DimensionVerdict> {
    let disc = profile.disc;
    if disc <= 4 {
        return Err(Error::SpecialDiscriminant(disc));
    }
    if h == 0 {
        return Err(Error::Domain("class number must be positive"));
    }
    if profile.order % 2 != 0 || profile.image_exponent % profile.order != 0 || 12 % profile.image_exponent != 0 {
        return Err(Error::Domain("inconsistent profile: order must be even and divide the image exponent"));
    }
    if !check_image_constraint(profile) {
        return Ok(DimensionVerdict::plain(DimensionTag::ExceedsHUnknown));
    }
    let need = |v: Option<Mu12>, what| v.ok_or(Error::MissingValue(what));
    let tag_if = |ok: bool| if ok { DimensionTag::EqualsH } else { DimensionTag::TwiceH };
    Ok(match profile.order {
        2 => DimensionVerdict { tag: DimensionTag::EqualsH, scalar_restriction: true },
        4 => {
            let v = need(profile.val_2, "val_2")?;
            DimensionVerdict::plain(tag_if(disc % 4 == 0 && disc != 8 && v.order() == 4))
        }
        6 => {
            let v = need(profile.val_3, "val_3")?;
            DimensionVerdict::plain(tag_if(disc % 3 == 0 && matches!(v.order(), 2 | 6)))
        }
        12 => {
            let v = need(profile.val_2, "val_2")?;
            DimensionVerdict::plain(tag_if(disc % 12 == 0 && matches!(v.order(), 4 | 12)))
        }
        _ => return Err(Error::Domain("order must be 2, 4, 6 or 12")),
    })
}

/// Verdict for a simplest character, or for its 2-adic twist by `φ̃^j`.
pub fn classify_simplest(spec: &CharacterSpec) -> Result<DimensionVerdict> {
    let field = &spec.field;
    field.require_not_special()?;
    if spec.locals.iter().any(|l| matches!(l.kind, LocalKind::Eps3Twist(_))) {
        return Err(Error::Unsupported("classify_simplest with a twisted 3-adic component"));
    }
    // ε(2α₂²) is only determined up to the ±1 coming from the odd primes;
    // the verdict depends on its order alone.
    let val_2 = match spec.local(2).map(|l| l.kind) {
        Some(LocalKind::Eps2Four { sign, twist }) => {
            Some(Mu12::I.pow(i64::from(sign.as_i32())) * phi_at_g(field.d()).pow(i64::from(twist)))
        }
        Some(LocalKind::Eps2Eight { .. }) => Some(Mu12::from_sign(kappa2(-((field.d() / 2) as i64), field.disc))),
        _ => None,
    };
    let profile =
        EpsilonProfile { order: spec.order, disc: field.disc, val_2, val_3: None, image_exponent: spec.order };
    classify(&profile, field.h)
}

/// `φ(g)` for `g = (√−d + (1−d)/2)/(√−d − (1−d)/2)`, `4 ∥ D`.
///
/// `g` lies in `G_n \ G_{n+1}` with `n = v₂(1 − d) ≥ 2`, and `φ` maps a
/// generator of `G₂/G₄` to `i`.
fn phi_at_g(d: u64) -> Mu12 {
    let level = (d as i64 - 1).trailing_zeros();
    match level {
        2 => Mu12::I,
        3 => Mu12::NEG_ONE,
        _ => Mu12::ONE,
    }
}

/// Which of the three example constructions to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExampleKind {
    /// `ε_p` onto `μ₄`, `p ≡ 1 mod 4`, `4 | D`.
    Order4,
    /// `ε_p` onto `μ₆`, `p ≡ 1 mod 3`, `3 | D`.
    Order6,
    /// `ε_p` onto `μ₁₂`, `p ≡ 1 mod 12`, `12 | D`.
    Order12,
}

impl ExampleKind {
    fn root(self) -> Mu12 {
        match self {
            ExampleKind::Order4 => Mu12::I,
            ExampleKind::Order6 => Mu12::new(2),
            ExampleKind::Order12 => Mu12::new(1),
        }
    }
}

/// `ε = ∏ ε_p` with `ε_p(g_p) = ζ`, `ζ` the example's root of unity, given
/// `(p, g_p)` pairs.
pub fn profile_from_example(disc: u64, kind: ExampleKind, primes: &[(u64, u64)]) -> Result<EpsilonProfile> {
    if !is_fundamental(disc) {
        return Err(Error::NotFundamental(disc));
    }
    if disc <= 4 {
        return Err(Error::SpecialDiscriminant(disc));
    }
    let divides = match kind {
        ExampleKind::Order4 => disc % 4 == 0,
        ExampleKind::Order6 => disc % 3 == 0,
        ExampleKind::Order12 => disc % 12 == 0,
    };
    if !divides {
        return Err(Error::WrongCase("D does not satisfy the example's divisibility"));
    }
    if primes.is_empty() {
        return Err(Error::Domain("at least one prime is needed"));
    }
    for &(p, g) in primes {
        let congruent = match kind {
            ExampleKind::Order4 => p % 4 == 1,
            ExampleKind::Order6 => p % 2 == 1 && p % 3 == 1,
            ExampleKind::Order12 => p % 12 == 1,
        };
        let split_or_ramified = kronecker(-(disc as i64), p as i64) != -1;
        if !is_prime(p) || !congruent || !split_or_ramified || !is_primitive_root(g, p) {
            return Err(Error::BadPrime(p));
        }
    }
    let zeta = kind.root();
    let eval = |n: i64| -> Mu12 {
        primes.iter().fold(Mu12::ONE, |acc, &(p, g)| {
            let residue = n.rem_euclid(p as i64) as u64;
            acc * zeta.pow(discrete_log(g, residue, p) as i64)
        })
    };
    if eval(-1) != Mu12::NEG_ONE {
        return Err(Error::NotOdd);
    }
    let order = zeta.order();
    Ok(EpsilonProfile { order, disc, val_2: Some(eval(2)), val_3: Some(eval(3)), image_exponent: order })
}

fn is_primitive_root(g: u64, p: u64) -> bool {
    if g % p == 0 {
        return false;
    }
    let qs: Vec<u64> = factor(p - 1).primes().collect();
    qs.iter().all(|&q| mod_pow(g, (p - 1) / q, p) != 1)
}

fn discrete_log(g: u64, target: u64, p: u64) -> u64 {
    let mut x = 1u64;
    for e in 0..p - 1 {
        if x == target {
            return e;
        }
        x = x * g % p;
    }
    unreachable!("{target} is not a power of the primitive root {g} mod {p}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::Sign;
    use crate::field::build_field;

    fn profile(order: u32, disc: u64, val_2: Option<Mu12>, val_3: Option<Mu12>) -> EpsilonProfile {
        EpsilonProfile { order, disc, val_2, val_3, image_exponent: order }
    }

    #[test]
    fn image_constraint_examples() {
        assert!(check_image_constraint(&profile(2, 7, None, None)));
        assert!(!check_image_constraint(&profile(4, 7, None, None)));
        assert!(check_image_constraint(&profile(12, 84, None, None)));
    }

    #[test]
    fn classify_examples() {
        let v = classify(&profile(2, 23, None, None), 3).unwrap();
        assert_eq!(v, DimensionVerdict { tag: DimensionTag::EqualsH, scalar_restriction: true });
        for val in [Mu12::I, Mu12::NEG_I] {
            assert_eq!(classify(&profile(4, 20, Some(val), None), 2).unwrap().tag, DimensionTag::EqualsH);
        }
        for val in [Mu12::ONE, Mu12::NEG_ONE] {
            assert_eq!(classify(&profile(4, 20, Some(val), None), 2).unwrap().tag, DimensionTag::TwiceH);
        }
        assert_eq!(classify(&profile(4, 8, Some(Mu12::I), None), 1).unwrap().tag, DimensionTag::TwiceH);
        assert_eq!(classify(&profile(4, 7, Some(Mu12::I), None), 1).unwrap().tag, DimensionTag::ExceedsHUnknown);
        assert_eq!(classify(&profile(4, 20, None, None), 2), Err(Error::MissingValue("val_2")));
        assert_eq!(classify(&profile(2, 4, None, None), 1), Err(Error::SpecialDiscriminant(4)));
    }

    #[test]
    fn simplest_and_twists() {
        let f7 = build_field(7).unwrap();
        let v = classify_simplest(&CharacterSpec::simplest(&f7, Sign::Plus).unwrap()).unwrap();
        assert_eq!(v.tag, DimensionTag::EqualsH);
        assert!(v.scalar_restriction);

        for (disc, expect) in [(20, DimensionTag::TwiceH), (68, DimensionTag::EqualsH)] {
            let f = build_field(disc).unwrap();
            for sign in [Sign::Plus, Sign::Minus] {
                for j in [-1, 1] {
                    let t = CharacterSpec::with_two_adic(&f, sign, j).unwrap();
                    assert_eq!(classify_simplest(&t).unwrap().tag, expect, "D = {disc}");
                }
                let t2 = CharacterSpec::with_two_adic(&f, sign, 2).unwrap();
                assert_eq!(classify_simplest(&t2).unwrap().tag, DimensionTag::EqualsH);
            }
        }
    }

    #[test]
    fn example_constructions() {
        let p = profile_from_example(20, ExampleKind::Order4, &[(29, 2)]).unwrap();
        assert_eq!(p.order, 4);
        assert_eq!(p.val_2.unwrap().order(), 4);
        assert_eq!(classify(&p, 2).unwrap().tag, DimensionTag::EqualsH);

        // 41 and 89 are both 1 mod 8 and split.
        assert_eq!(profile_from_example(20, ExampleKind::Order4, &[(41, 6), (89, 3)]), Err(Error::NotOdd));

        let p = profile_from_example(84, ExampleKind::Order6, &[(7, 3)]).unwrap();
        assert!(matches!(p.val_3.unwrap().order(), 2 | 6));
        assert_eq!(classify(&p, 4).unwrap().tag, DimensionTag::EqualsH);

        assert_eq!(profile_from_example(20, ExampleKind::Order4, &[(29, 4)]), Err(Error::BadPrime(29)));
        assert_eq!(profile_from_example(20, ExampleKind::Order4, &[(7, 3)]), Err(Error::BadPrime(7)));
    }
}
