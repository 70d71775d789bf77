//! Elementary number theory on machine integers.

use num_bigint::BigUint;
use num_traits::One;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The Möbius function.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Euler's totient function.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient is defined for n >= 1");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Multiplicative order of `q` modulo `n` (1 when n = 1).
pub fn mult_order(q: u64, n: u64) -> u64 {
    assert!(gcd(q, n) == 1, "q must be a unit modulo n");
    if n == 1 {
        return 1;
    }
    let mut x = q % n;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * q as u128 % n as u128) as u64;
        k += 1;
    }
    k
}

/// `base^exp` if it fits in a u128.
pub fn checked_pow(base: u64, exp: u64) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

pub fn big_pow(base: u64, exp: u64) -> BigUint {
    let mut acc = BigUint::one();
    let b = BigUint::from(base);
    for _ in 0..exp {
        acc *= &b;
    }
    acc
}

/// Returns `(p, s)` with `q = p^s` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = factorize(q);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

/// Exact integer `k`-th root of `x`, if one exists.
pub fn exact_root(x: u128, k: u32) -> Option<u128> {
    if k == 0 {
        return None;
    }
    if x < 2 || k == 1 {
        return Some(x);
    }
    let guess = (x as f64).powf(1.0 / k as f64).round() as u128;
    for r in guess.saturating_sub(2)..=guess + 2 {
        match r.checked_pow(k) {
            Some(v) if v == x => return Some(r),
            _ => {}
        }
    }
    None
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_and_totient_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(totient(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(totient(6), 2);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
    }

    #[test]
    fn totient_is_mobius_transform_of_identity() {
        for n in 1..=500u64 {
            let s: i64 = divisors(n).iter().map(|&i| mobius(i) * (n / i) as i64).sum();
            assert_eq!(s, totient(n) as i64, "n = {n}");
        }
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn orders_and_roots() {
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(mult_order(4, 3), 1);
        assert_eq!(mult_order(5, 1), 1);
        assert_eq!(exact_root(64, 3), Some(4));
        assert_eq!(exact_root(7, 2), None);
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
    }
}
