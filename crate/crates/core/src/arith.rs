//! Exact integer kernel: residue symbols, factorization, reduced forms and
//! ideal counts.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Kronecker symbol `(a/n)`.
///
/// Conventions: `(a/0)` is 1 for `a = ±1` and 0 otherwise; `(a/2)` is 0 for
/// even `a` and otherwise depends on `a mod 8`; `(a/−1)` is −1 exactly when
/// `a < 0`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return i32::from(a == 1 || a == -1);
    }
    let mut a = i128::from(a);
    let mut n = i128::from(n);
    let mut sign = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -sign;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
    }
    a = a.rem_euclid(n);
    sign * jacobi_odd(a, n)
}

/// Jacobi symbol for odd positive `n`, `0 ≤ a < n`.
fn jacobi_odd(mut a: i128, mut n: i128) -> i32 {
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Jacobi symbol `(a/n)` for odd positive `n`; any integer `a`.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi needs an odd modulus");
    let n = i128::from(n);
    jacobi_odd(i128::from(a).rem_euclid(n), n)
}

/// 2-adic Hilbert symbol `(a, b)_2` for nonzero integers.
pub fn hilbert_symbol_2(a: i64, b: i64) -> i32 {
    assert!(a != 0 && b != 0, "Hilbert symbol of zero");
    let alpha = a.trailing_zeros();
    let beta = b.trailing_zeros();
    let u = (a >> alpha).rem_euclid(8);
    let v = (b >> beta).rem_euclid(8);
    let eps = |x: i64| (x - 1) / 2 % 2;
    let omega = |x: i64| (x * x - 1) / 8 % 2;
    let e = eps(u) * eps(v) + i64::from(alpha) * omega(v) + i64::from(beta) * omega(u);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = u128::from(m);
    let mut b = u128::from(base) % m128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: u64) -> Option<u64> {
    let m = i128::from(m);
    let (mut r0, mut r1) = (i128::from(a).rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1 || m == 1).then(|| s0.rem_euclid(m) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimeFactorization {
    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }
}

/// Trial division; fine for the `n ≤ 10⁹` range used here.
pub fn factor(mut n: u64) -> PrimeFactorization {
    assert!(n >= 1, "factor(0)");
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    PrimeFactorization { factors }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n).factors == [(n, 1)]
}

/// Whether `−D` is a fundamental discriminant.
pub fn is_fundamental(disc: u64) -> bool {
    if disc == 0 {
        return false;
    }
    match disc % 4 {
        3 => factor(disc).is_squarefree(),
        0 => {
            let m = disc / 4;
            matches!(m % 4, 1 | 2) && factor(m).is_squarefree()
        }
        _ => false,
    }
}

/// Positive definite binary quadratic form `ax² + bxy + cy²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadraticForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let Self { a, b, c } = *self;
        a > 0 && b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// Number of `(x, y) ∈ Z²` with `f(x, y) = n`.
    pub fn representation_count(&self, n: u64) -> u64 {
        let disc = -self.discriminant();
        assert!(disc > 0 && self.a > 0, "form is not positive definite");
        let n = n as i64;
        // 4an = (2ax + by)² + |disc|·y²
        let bound = 4 * self.a * n;
        let y_max = isqrt((bound / disc) as u64) as i64;
        let mut count = 0;
        for y in -y_max..=y_max {
            let rest = bound - disc * y * y;
            let t = isqrt(rest as u64) as i64;
            if t * t != rest {
                continue;
            }
            let roots: &[i64] = if t == 0 { &[0] } else { &[t, -t] };
            count += roots.iter().filter(|&&w| (w - self.b * y) % (2 * self.a) == 0).count() as u64;
        }
        count
    }
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = libm::sqrt(n as f64) as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// All reduced forms of discriminant `−D`; the length is the class number.
pub fn reduced_forms(disc: u64) -> Result<Vec<QuadraticForm>> {
    if !is_fundamental(disc) {
        return Err(Error::NotFundamental(disc));
    }
    let d = disc as i64;
    let mut forms = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= d {
        for b in (-a + 1)..=a {
            let num = b * b + d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = QuadraticForm::new(a, b, num / (4 * a));
            if f.is_reduced() {
                forms.push(f);
            }
        }
        a += 1;
    }
    Ok(forms)
}

/// Number of integral ideals of norm `n`: `Σ_{m | n} (−D/m)`.
pub fn ideal_count(n: u64, disc: u64) -> Result<u64> {
    if !is_fundamental(disc) {
        return Err(Error::NotFundamental(disc));
    }
    assert!(n >= 1, "ideal_count(0)");
    let mut total = 0i64;
    let mut m = 1u64;
    while m * m <= n {
        if n % m == 0 {
            total += i64::from(kronecker(-(disc as i64), m as i64));
            let other = n / m;
            if other != m {
                total += i64::from(kronecker(-(disc as i64), other as i64));
            }
        }
        m += 1;
    }
    Ok(total as u64)
}

/// `ideal_count(n)` for `1 ≤ n ≤ len`, as a vector indexed by `n` (entry 0 unused).
pub fn ideal_counts(len: usize, disc: u64) -> Result<Vec<u64>> {
    if !is_fundamental(disc) {
        return Err(Error::NotFundamental(disc));
    }
    let chi = kronecker_table(disc);
    let mut counts = vec![0i64; len + 1];
    for m in 1..=len {
        let k = i64::from(chi[m % chi.len()]);
        if k != 0 {
            for multiple in (m..=len).step_by(m) {
                counts[multiple] += k;
            }
        }
    }
    Ok(counts.into_iter().map(|c| c as u64).collect())
}

/// One period of `n ↦ (−D/n)`, which is periodic mod `D` for fundamental `−D`.
pub fn kronecker_table(disc: u64) -> Vec<i8> {
    (0..disc).map(|n| kronecker(-(disc as i64), n as i64) as i8).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(2, 7), 1);
        assert_eq!(kronecker(2, 5), -1);
        assert_eq!(kronecker(-20, 3), 1);
        assert_eq!(kronecker(123, 1), 1);
        assert_eq!(kronecker(5, 0), 0);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(4, 2), 0);
        assert_eq!(kronecker(-1, -1), -1);
        assert_eq!(kronecker(1, -1), 1);
    }

    #[test]
    fn kronecker_matches_euler_criterion_on_primes() {
        for p in [3i64, 5, 7, 11, 13, 101] {
            for a in -60i64..60 {
                let r = mod_pow(a.rem_euclid(p) as u64, ((p - 1) / 2) as u64, p as u64);
                let expect = if a % p == 0 {
                    0
                } else if r == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(a, p), expect, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn hilbert_symbol_known_values() {
        assert_eq!(hilbert_symbol_2(-1, -1), -1);
        assert_eq!(hilbert_symbol_2(2, 3), -1);
        assert_eq!(hilbert_symbol_2(2, 7), 1);
        assert_eq!(hilbert_symbol_2(3, 5), 1);
        assert_eq!(hilbert_symbol_2(3, 7), -1);
        // (x, −x) = 1
        for x in [-7i64, 3, 6, 10, -12] {
            assert_eq!(hilbert_symbol_2(x, -x), 1);
        }
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor(84).factors, [(2, 2), (3, 1), (7, 1)]);
        assert!(factor(1).factors.is_empty());
        assert_eq!(factor(20).factors, [(2, 2), (5, 1)]);
        assert_eq!(factor(999_999_937).factors, [(999_999_937, 1)]);
    }

    #[test]
    fn fundamental_test() {
        for d in [3, 4, 7, 8, 20, 23, 24, 40, 52, 84, 148] {
            assert!(is_fundamental(d), "{d}");
        }
        for d in [12, 16, 21, 27, 36, 44, 1, 2] {
            assert!(!is_fundamental(d), "{d}");
        }
    }

    #[test]
    fn reduced_form_examples() {
        assert_eq!(reduced_forms(20).unwrap(), [QuadraticForm::new(1, 0, 5), QuadraticForm::new(2, 2, 3)]);
        assert_eq!(reduced_forms(4).unwrap(), [QuadraticForm::new(1, 0, 1)]);
        assert_eq!(reduced_forms(23).unwrap().len(), 3);
        assert_eq!(reduced_forms(21), Err(Error::NotFundamental(21)));
    }

    #[test]
    fn ideal_count_examples() {
        assert_eq!(ideal_count(1, 20).unwrap(), 1);
        assert_eq!(ideal_count(3, 20).unwrap(), 2);
        assert_eq!(ideal_count(2, 20).unwrap(), 1);
        let table = ideal_counts(500, 84).unwrap();
        for n in 1..=500u64 {
            assert_eq!(table[n as usize], ideal_count(n, 84).unwrap());
        }
    }

    #[test]
    fn representation_count_small() {
        let f = QuadraticForm::new(1, 0, 5);
        assert_eq!(f.representation_count(1), 2);
        assert_eq!(f.representation_count(5), 2);
        assert_eq!(f.representation_count(6), 4);
        assert_eq!(QuadraticForm::new(2, 2, 3).representation_count(3), 4);
    }

    #[test]
    fn mod_inverse_works() {
        assert_eq!(mod_inverse(2, 7), Some(4));
        assert_eq!(mod_inverse(-2, 7), Some(3));
        assert_eq!(mod_inverse(2, 8), None);
    }
}
