//! Twelfth roots of unity, the local character sets `E_p`, the simplest
//! characters and pointwise evaluation of their finite part ε.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Mul, Neg};

use num_complex::Complex64;

use crate::arith::{gcd, hilbert_symbol_2, jacobi, kronecker};
use crate::error::{Error, Result};
use crate::field::{Case, FieldData};

/// `e^{2πik/12}`, stored as `k mod 12`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mu12(u8);

impl Mu12 {
    pub const ONE: Mu12 = Mu12(0);
    pub const I: Mu12 = Mu12(3);
    pub const NEG_ONE: Mu12 = Mu12(6);
    pub const NEG_I: Mu12 = Mu12(9);

    pub fn new(k: i64) -> Self {
        Mu12(k.rem_euclid(12) as u8)
    }

    pub fn k(self) -> u8 {
        self.0
    }

    /// `+1 ↦ 1`, `−1 ↦ −1`.
    pub fn from_sign(s: i32) -> Self {
        match s {
            1 => Self::ONE,
            -1 => Self::NEG_ONE,
            _ => panic!("{s} is not a sign"),
        }
    }

    pub fn as_sign(self) -> Option<i32> {
        match self.0 {
            0 => Some(1),
            6 => Some(-1),
            _ => None,
        }
    }

    pub fn pow(self, e: i64) -> Self {
        Self::new(i64::from(self.0) * e)
    }

    pub fn inv(self) -> Self {
        Self::new(-i64::from(self.0))
    }

    pub fn conj(self) -> Self {
        self.inv()
    }

    pub fn order(self) -> u32 {
        12 / gcd(u64::from(self.0), 12) as u32
    }

    pub fn to_complex(self) -> Complex64 {
        const H: f64 = 0.866_025_403_784_438_6; // √3/2
        const COS: [f64; 12] = [1.0, H, 0.5, 0.0, -0.5, -H, -1.0, -H, -0.5, 0.0, 0.5, H];
        let k = usize::from(self.0);
        Complex64::new(COS[k], COS[(k + 9) % 12])
    }
}

impl Mul for Mu12 {
    type Output = Mu12;
    fn mul(self, rhs: Mu12) -> Mu12 {
        Mu12((self.0 + rhs.0) % 12)
    }
}

impl fmt::Display for Mu12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => f.write_str("1"),
            3 => f.write_str("i"),
            6 => f.write_str("-1"),
            9 => f.write_str("-i"),
            k => write!(f, "zeta12^{k}"),
        }
    }
}

/// Coordinates of an element of `O_K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `x + y√−d`, used when `4 | D`.
    Sqrt { d: u64 },
    /// `x + y(1 + √−D)/2`, used when `D` is odd.
    Half { disc: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraicInteger {
    pub x: i64,
    pub y: i64,
    pub basis: Basis,
}

impl AlgebraicInteger {
    pub fn sqrt(x: i64, y: i64, d: u64) -> Self {
        Self { x, y, basis: Basis::Sqrt { d } }
    }

    pub fn half(x: i64, y: i64, disc: u64) -> Self {
        assert!(disc % 4 == 3, "half-integral basis needs D ≡ 3 mod 4");
        Self { x, y, basis: Basis::Half { disc } }
    }

    /// `x + yω` in the natural basis of `field` (`ω = √−d` or `(1+√−D)/2`).
    pub fn in_field(field: &FieldData, x: i64, y: i64) -> Self {
        match field.d {
            Some(d) => Self::sqrt(x, y, d),
            None => Self::half(x, y, field.disc),
        }
    }

    pub fn norm(&self) -> u64 {
        let (x, y) = (i128::from(self.x), i128::from(self.y));
        let n = match self.basis {
            Basis::Sqrt { d } => x * x + y * y * i128::from(d),
            Basis::Half { disc } => x * x + x * y + y * y * ((i128::from(disc) + 1) / 4),
        };
        u64::try_from(n).expect("norm overflow")
    }

    pub fn conj(&self) -> Self {
        match self.basis {
            Basis::Sqrt { .. } => Self { y: -self.y, ..*self },
            Basis::Half { .. } => Self { x: self.x + self.y, y: -self.y, ..*self },
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let (x, y) = (self.x as f64, self.y as f64);
        match self.basis {
            Basis::Sqrt { d } => Complex64::new(x, y * libm::sqrt(d as f64)),
            Basis::Half { disc } => Complex64::new(x + 0.5 * y, 0.5 * y * libm::sqrt(disc as f64)),
        }
    }
}

impl Mul for AlgebraicInteger {
    type Output = AlgebraicInteger;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.basis, rhs.basis, "mixed bases");
        let (a, b, c, e) = (self.x, self.y, rhs.x, rhs.y);
        let (x, y) = match self.basis {
            Basis::Sqrt { d } => (a * c - (d as i64) * b * e, a * e + b * c),
            // ω² = ω − (1 + D)/4
            Basis::Half { disc } => (a * c - b * e * ((disc as i64 + 1) / 4), a * e + b * c + b * e),
        };
        Self { x, y, basis: self.basis }
    }
}

impl Neg for AlgebraicInteger {
    type Output = AlgebraicInteger;
    fn neg(self) -> Self {
        Self { x: -self.x, y: -self.y, basis: self.basis }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One element of `E_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocalKind {
    /// `ε_p⁰`: the tame quadratic extension of `κ_p` (`p` odd, including `p = 3`).
    Eps0,
    /// `ε₃⁰ φ₃^i` with `i = ±1`.
    Eps3Twist(i8),
    /// `8 ∥ D`: `ε₂^±`, times `φ̃` when `twist = 1`.
    Eps2Eight { sign: Sign, twist: u8 },
    /// `4 ∥ D`: `ε₂^± φ̃^j`, `j ∈ {−1, 0, 1, 2}`.
    Eps2Four { sign: Sign, twist: i8 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalCharacterSpec {
    pub p: u64,
    pub kind: LocalKind,
    pub conductor_index: u32,
}

impl LocalCharacterSpec {
    pub fn new(p: u64, kind: LocalKind) -> Self {
        let conductor_index = match kind {
            LocalKind::Eps0 => 1,
            LocalKind::Eps3Twist(_) => 2,
            LocalKind::Eps2Eight { .. } => 5,
            LocalKind::Eps2Four { twist: 0, .. } => 3,
            LocalKind::Eps2Four { twist: 2, .. } => 5,
            LocalKind::Eps2Four { .. } => 7,
        };
        Self { p, kind, conductor_index }
    }

    pub fn order(&self) -> u32 {
        match self.kind {
            LocalKind::Eps0 => 2,
            LocalKind::Eps3Twist(_) => 6,
            LocalKind::Eps2Eight { twist: 0, .. } => 2,
            LocalKind::Eps2Eight { .. } => 4,
            LocalKind::Eps2Four { .. } => 4,
        }
    }

    pub fn is_untwisted(&self) -> bool {
        matches!(
            self.kind,
            LocalKind::Eps0 | LocalKind::Eps2Eight { twist: 0, .. } | LocalKind::Eps2Four { twist: 0, .. }
        )
    }

    fn conj(&self) -> Self {
        let kind = match self.kind {
            LocalKind::Eps0 => LocalKind::Eps0,
            LocalKind::Eps3Twist(i) => LocalKind::Eps3Twist(-i),
            // ε₂⁺φ̃⁻¹ = ε₂⁻φ̃
            LocalKind::Eps2Eight { sign, twist: 1 } => LocalKind::Eps2Eight { sign: sign.flip(), twist: 1 },
            k @ LocalKind::Eps2Eight { .. } => k,
            LocalKind::Eps2Four { sign, twist } => {
                LocalKind::Eps2Four { sign: sign.flip(), twist: if twist == 2 { 2 } else { -twist } }
            }
        };
        Self { kind, ..*self }
    }
}

/// The full set `E_p` of local components at `p | D`.
pub fn enumerate_local(field: &FieldData, p: u64) -> Result<Vec<LocalCharacterSpec>> {
    if !field.prime_divisors.contains(&p) {
        return Err(Error::InvalidPrime { p, disc: field.disc });
    }
    let kinds: Vec<LocalKind> = match (p, field.case) {
        (2, Case::FourExact) => [Sign::Plus, Sign::Minus]
            .into_iter()
            .flat_map(|sign| [-1, 0, 1, 2].map(|twist| LocalKind::Eps2Four { sign, twist }))
            .collect(),
        (2, _) => [Sign::Plus, Sign::Minus]
            .into_iter()
            .flat_map(|sign| [0, 1].map(|twist| LocalKind::Eps2Eight { sign, twist }))
            .collect(),
        (3, _) => Vec::from([LocalKind::Eps0, LocalKind::Eps3Twist(-1), LocalKind::Eps3Twist(1)]),
        _ => Vec::from([LocalKind::Eps0]),
    };
    Ok(kinds.into_iter().map(|k| LocalCharacterSpec::new(p, k)).collect())
}

/// `ε = ∏_{p | D} ε_p` for one field.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterSpec {
    pub field: FieldData,
    /// One component per prime divisor, ascending by prime.
    pub locals: Vec<LocalCharacterSpec>,
    /// `ε₂(√−d) ∈ {±i}` when `4 ∥ D`.
    pub eps2_on_sqrt_md: Option<Mu12>,
    pub order: u32,
}

impl CharacterSpec {
    pub fn new(field: &FieldData, mut locals: Vec<LocalCharacterSpec>) -> Result<Self> {
        field.require_not_special()?;
        locals.sort_by_key(|l| l.p);
        let primes: Vec<u64> = locals.iter().map(|l| l.p).collect();
        if primes != field.prime_divisors {
            return Err(Error::Domain("local components must cover exactly the primes dividing D"));
        }
        for l in &locals {
            if !enumerate_local(field, l.p)?.contains(l) {
                return Err(Error::Domain("local component is not in E_p"));
            }
        }
        let order = locals.iter().fold(1, |acc, l| lcm(acc, l.order()));
        let eps2_on_sqrt_md = locals.iter().find_map(|l| match l.kind {
            LocalKind::Eps2Four { sign: Sign::Plus, .. } => Some(Mu12::I),
            LocalKind::Eps2Four { sign: Sign::Minus, .. } => Some(Mu12::NEG_I),
            _ => None,
        });
        Ok(Self { field: field.clone(), locals, eps2_on_sqrt_md, order })
    }

    /// The simplest character with the given 2-adic sign (ignored for odd `D`).
    pub fn simplest(field: &FieldData, sign: Sign) -> Result<Self> {
        Self::with_two_adic(field, sign, 0)
    }

    /// `ε₂^± φ̃^twist · ∏_{p odd} ε_p⁰`; `twist` must be valid for the case.
    pub fn with_two_adic(field: &FieldData, sign: Sign, twist: i8) -> Result<Self> {
        let locals = field
            .prime_divisors
            .iter()
            .map(|&p| {
                let kind = match (p, field.case) {
                    (2, Case::FourExact) => LocalKind::Eps2Four { sign, twist },
                    (2, _) => LocalKind::Eps2Eight { sign, twist: twist as u8 },
                    _ => LocalKind::Eps0,
                };
                LocalCharacterSpec::new(p, kind)
            })
            .collect();
        Self::new(field, locals)
    }

    pub fn is_simplest(&self) -> bool {
        self.locals.iter().all(LocalCharacterSpec::is_untwisted)
    }

    pub fn local(&self, p: u64) -> Option<&LocalCharacterSpec> {
        self.locals.iter().find(|l| l.p == p)
    }

    /// Sign of the 2-adic component, for even `D`.
    pub fn two_adic_sign(&self) -> Option<Sign> {
        self.local(2).map(|l| match l.kind {
            LocalKind::Eps2Four { sign, .. } | LocalKind::Eps2Eight { sign, .. } => sign,
            _ => unreachable!("2-adic component of the wrong kind"),
        })
    }

    /// Complex-conjugate character.
    pub fn conjugate(&self) -> Self {
        let locals: Vec<_> = self.locals.iter().map(LocalCharacterSpec::conj).collect();
        Self::new(&self.field, locals).expect("conjugate of a valid spec is valid")
    }

    /// `"0"` for the odd-`D` character, `"+"`/`"-"` for the even ones; twisted
    /// components are appended.
    pub fn id(&self) -> String {
        let mut s = String::new();
        match self.two_adic_sign() {
            Some(sign) => s.push(sign.symbol()),
            None => s.push('0'),
        }
        for l in &self.locals {
            match l.kind {
                LocalKind::Eps2Four { twist, .. } if twist != 0 => {
                    s.push_str(&alloc::format!("phi{twist}"));
                }
                LocalKind::Eps2Eight { twist: 1, .. } => s.push_str("phi1"),
                LocalKind::Eps3Twist(i) => s.push_str(&alloc::format!("phi3^{i}")),
                _ => {}
            }
        }
        s
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(u64::from(a), u64::from(b)) as u32 * b
}

/// `E_Sim`: one character for odd `D`, the two `ε₂^± ∏ ε_p⁰` for even `D`.
pub fn simplest_characters(field: &FieldData) -> Result<Vec<CharacterSpec>> {
    field.require_not_special()?;
    if field.case == Case::Odd {
        return Ok(Vec::from([CharacterSpec::simplest(field, Sign::Plus)?]));
    }
    [Sign::Plus, Sign::Minus].into_iter().map(|s| CharacterSpec::simplest(field, s)).collect()
}

pub fn conductor_exponents(spec: &CharacterSpec) -> BTreeMap<u64, u32> {
    spec.locals.iter().map(|l| (l.p, l.conductor_index)).collect()
}

/// `κ₂(x) = (x, −D)₂`.
pub fn kappa2(x: i64, disc: u64) -> i32 {
    hilbert_symbol_2(x, -(disc as i64))
}

/// Value of ε at `β`; defined for simplest characters only.
pub fn eval_epsilon(spec: &CharacterSpec, beta: &AlgebraicInteger) -> Result<Mu12> {
    let field = &spec.field;
    let expected = match field.d {
        Some(d) => Basis::Sqrt { d },
        None => Basis::Half { disc: field.disc },
    };
    if beta.basis != expected {
        return Err(Error::BasisMismatch);
    }
    if !spec.is_simplest() {
        return Err(Error::Unsupported("pointwise evaluation of twisted components"));
    }
    if gcd(beta.norm(), field.disc) != 1 {
        return Err(Error::NotCoprime);
    }
    let disc = field.disc;
    Ok(match field.case {
        Case::Odd => {
            // ω ≡ 1/2 mod √−D
            let inv2 = (disc as i64 + 1) / 2;
            let t = (i128::from(beta.x) + i128::from(beta.y) * i128::from(inv2)).rem_euclid(i128::from(disc));
            Mu12::from_sign(jacobi(t as i64, disc))
        }
        Case::FourExact => {
            let d = field.d();
            let c = dlog_mod_p2_cubed(beta.x, beta.y, d);
            let eps2 = spec.eps2_on_sqrt_md.expect("4 ∥ D spec carries ε₂(√−d)").pow(c);
            eps2 * Mu12::from_sign(jacobi(beta.x, d))
        }
        Case::Eight => {
            let d = field.d();
            let sign = spec.two_adic_sign().expect("even D").as_i32();
            let (j, k, l) = decompose_mod_p2_fifth(beta.x, beta.y, d);
            let mut v = 1;
            if j == 1 {
                v *= kappa2(-1, disc);
            }
            if k == 1 {
                v *= kappa2(3, disc);
            }
            if l % 2 == 1 {
                v *= sign;
            }
            Mu12::from_sign(v * jacobi(beta.x, d / 2))
        }
    })
}

/// Exponent `c ∈ 0..4` with `x + y√−d ≡ (√−d)^c` modulo `𝔭₂³ = 2𝔭₂` (`d` odd).
fn dlog_mod_p2_cubed(x: i64, y: i64, d: u64) -> i64 {
    let d = d as i64;
    let powers = [(1, 0), (0, 1), (-d, 0), (0, -d)];
    let in_two_p2 = |a: i64, b: i64| a % 2 == 0 && b % 2 == 0 && (a / 2 + b / 2) % 2 == 0;
    let mut hits = powers.iter().enumerate().filter(|(_, &(a, b))| in_two_p2(x - a, y - b));
    let (c, _) = hits.next().expect("unit of O/𝔭₂³ not in ⟨√−d⟩");
    debug_assert!(hits.next().is_none());
    c as i64
}

/// Exponents `(j, k, l)` with `x + y√−d ≡ (−1)^j 3^k (1+√−d)^l` modulo
/// `𝔭₂⁵ = {a + b√−d : 8 | a, 4 | b}` (`d ≡ 2 mod 4`).
fn decompose_mod_p2_fifth(x: i64, y: i64, d: u64) -> (u8, u8, u8) {
    let d = d as i64;
    let reduce = |a: i64, b: i64| (a.rem_euclid(8), b.rem_euclid(4));
    let mul = |(a, b): (i64, i64), (c, e): (i64, i64)| reduce(a * c - d * b * e, a * e + b * c);
    let target = reduce(x, y);
    let mut found = None;
    let mut seen = 0u32;
    for j in 0..2u8 {
        for k in 0..2u8 {
            let mut g = mul(if j == 1 { (7, 0) } else { (1, 0) }, if k == 1 { (3, 0) } else { (1, 0) });
            for l in 0..4u8 {
                seen |= 1 << (g.0 * 4 + g.1);
                if g == target {
                    found = Some((j, k, l));
                }
                g = mul(g, (1, 1));
            }
        }
    }
    debug_assert_eq!(seen.count_ones(), 16, "generators do not span (O/𝔭₂⁵)*");
    found.expect("element is not a unit mod 𝔭₂⁵")
}

/// ε at `β = a + (1+d)b/2 + a√−d = α₀(a + b(1−√−d)/2)`, `4 ∥ D`.
pub fn eval_epsilon_p2_coset(spec: &CharacterSpec, a: i64, b: i64) -> Result<Mu12> {
    let field = &spec.field;
    if field.case != Case::FourExact {
        return Err(Error::WrongCase("4 ∥ D required"));
    }
    let d = field.d();
    let beta = AlgebraicInteger::sqrt(a + (d as i64 + 1) / 2 * b, a, d);
    if gcd(beta.norm(), field.disc) != 1 {
        return Err(Error::NotCoprime);
    }
    let base = Mu12::from_sign(kronecker(-(field.disc as i64), 2 * a + b));
    let i = spec.eps2_on_sqrt_md.expect("4 ∥ D spec carries ε₂(√−d)");
    Ok(if a % 2 == 0 { base } else { i * base })
}
