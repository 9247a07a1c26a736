//! Exact integer number theory shared by the order and graph engines.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("Kronecker symbol (a|0) is not defined here")]
    ZeroModulus,
    #[error("argument must be a positive integer")]
    NonPositive,
    #[error("gcd of an empty list is undefined")]
    EmptyList,
}

/// Factorization of a positive integer into increasing prime powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(q, _)| q)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(q, e) in &self.factors {
            let len = divs.len();
            let mut pw = 1u64;
            for _ in 0..e {
                pw *= q;
                for i in 0..len {
                    divs.push(divs[i] * pw);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// The first twelve primes are a witness set for every n < 3.1e23.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_BASES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Trial-division factorization; intended for n up to roughly 10^12.
pub fn factorize(n: u64) -> Result<PrimeFactorization, ArithError> {
    if n == 0 {
        return Err(ArithError::NonPositive);
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut q = 2u64;
    while q <= rest / q {
        if rest.is_multiple_of(q) {
            let mut e = 0;
            while rest.is_multiple_of(q) {
                rest /= q;
                e += 1;
            }
            factors.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(PrimeFactorization { value: n, factors })
}

/// Kronecker symbol (a|n) for n != 0.
pub fn kronecker(a: i64, n: i64) -> Result<i8, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroModulus);
    }
    let mut result: i8 = 1;
    let mut n = n as i128;
    let a = a as i128;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    Ok(result * jacobi(a.rem_euclid(n), n))
}

// Jacobi symbol for odd positive n and 0 <= a < n.
fn jacobi(mut a: i128, mut n: i128) -> i8 {
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
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

pub fn moebius(n: u64) -> Result<i8, ArithError> {
    let fact = factorize(n)?;
    if !fact.is_squarefree() {
        return Ok(0);
    }
    Ok(if fact.factors().len() % 2 == 0 { 1 } else { -1 })
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_all(xs: &[u64]) -> Result<u64, ArithError> {
    if xs.is_empty() {
        return Err(ArithError::EmptyList);
    }
    Ok(xs.iter().fold(0, |g, &x| gcd(g, x)))
}

/// Floor square root.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn perfect_square_root(n: u128) -> Option<u128> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

/// `num/den` rounded half away from zero to `places` decimals, e.g. `4.000000`.
pub fn decimal_string(num: &BigInt, den: &BigInt, places: u32) -> Result<String, ArithError> {
    if den.is_zero() {
        return Err(ArithError::ZeroModulus);
    }
    let negative = num.is_negative() != den.is_negative() && !num.is_zero();
    let (n, d) = (num.magnitude(), den.magnitude());
    let scale = BigUint::from(10u32).pow(places);
    let (q, r) = (n * &scale).div_rem(d);
    let q = if r * 2u32 >= *d { q + 1u32 } else { q };
    let (int, frac) = q.div_rem(&scale);
    let sign = if negative && !(int.is_zero() && frac.is_zero()) {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return Ok(format!("{sign}{int}"));
    }
    Ok(format!(
        "{sign}{int}.{:0>width$}",
        frac.to_string(),
        width = places as usize
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_square_mod(a: i64, q: i64) -> bool {
        let a = a.rem_euclid(q);
        a != 0 && (1..q).any(|x| (x * x) % q == a)
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-23, 2), Ok(1));
        assert_eq!(kronecker(-3, 13), Ok(1));
        assert_eq!(kronecker(17, 1), Ok(1));
        assert_eq!(kronecker(-5, 1), Ok(1));
        assert_eq!(kronecker(5, 0), Err(ArithError::ZeroModulus));
        // 2-rule: -3 = 5 mod 8
        assert_eq!(kronecker(-3, 2), Ok(-1));
        assert_eq!(kronecker(-4, 2), Ok(0));
        assert_eq!(kronecker(-1, -1), Ok(-1));
    }

    #[test]
    fn kronecker_matches_residue_brute_force() {
        for q in [3i64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 101] {
            for a in -200i64..200 {
                let expected = if a.rem_euclid(q) == 0 {
                    0
                } else if is_square_mod(a, q) {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(a, q).unwrap(), expected, "({a}|{q})");
            }
        }
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1), Ok(1));
        assert_eq!(moebius(4), Ok(0));
        assert_eq!(moebius(6), Ok(1));
        assert_eq!(moebius(30), Ok(-1));
        assert_eq!(moebius(0), Err(ArithError::NonPositive));
    }

    #[test]
    fn moebius_divisor_sums() {
        for n in 1..500u64 {
            let s: i64 = factorize(n)
                .unwrap()
                .divisors()
                .into_iter()
                .map(|d| moebius(d).unwrap() as i64)
                .sum();
            assert_eq!(s, if n == 1 { 1 } else { 0 }, "n={n}");
        }
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(262144).unwrap().factors(), &[(2, 18)]);
        assert_eq!(factorize(0), Err(ArithError::NonPositive));
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..200).filter(|&n| is_prime(n)).collect();
        let sieve: Vec<u64> = (0..200u64)
            .filter(|&n| n >= 2 && (2..n).all(|d| n % d != 0))
            .collect();
        assert_eq!(small, sieve);
        assert!(is_prime(18_446_744_073_709_551_557));
        // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(18_446_744_073_709_551_615));
    }

    #[test]
    fn gcd_all_examples() {
        assert_eq!(gcd_all(&[3]), Ok(3));
        assert_eq!(gcd_all(&[4, 6]), Ok(2));
        assert_eq!(gcd_all(&[1, 99]), Ok(1));
        assert_eq!(gcd_all(&[]), Err(ArithError::EmptyList));
    }

    proptest! {
        #[test]
        fn kronecker_is_multiplicative(a in -10_000i64..10_000, n1 in -300i64..300, n2 in -300i64..300) {
            prop_assume!(n1 != 0 && n2 != 0);
            let lhs = kronecker(a, n1 * n2).unwrap();
            let rhs = kronecker(a, n1).unwrap() * kronecker(a, n2).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn factorization_multiplies_back(n in 1u64..5_000_000) {
            let f = factorize(n).unwrap();
            let prod: u64 = f.factors().iter().map(|&(q, e)| q.pow(e)).product();
            prop_assert_eq!(prod, n);
            prop_assert!(f.primes().all(is_prime));
            prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        }

        #[test]
        fn isqrt_is_floor(n in 0u128..(1u128 << 100)) {
            let r = isqrt(n);
            prop_assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }

    #[test]
    fn decimal_rendering() {
        let r = |n: i64, d: i64, k| decimal_string(&BigInt::from(n), &BigInt::from(d), k).unwrap();
        assert_eq!(r(4, 1, 6), "4.000000");
        assert_eq!(r(24, 8, 6), "3.000000");
        assert_eq!(r(2, 3, 6), "0.666667");
        assert_eq!(r(-2, 3, 6), "-0.666667");
        assert_eq!(r(1, 20_000_000, 6), "0.000000");
        assert_eq!(r(-1, 20_000_000, 6), "0.000000");
        assert_eq!(r(1, 2_000_000, 6), "0.000001");
        assert_eq!(r(7, 2, 0), "4");
        assert_eq!(r(2047, 1024, 6), "1.999023");
        assert!(decimal_string(&BigInt::from(1), &BigInt::zero(), 6).is_err());
    }
}
