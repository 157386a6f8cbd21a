//! Small-integer arithmetic helpers.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    prime_divisors(n).iter().fold(n, |acc, p| acc / p * (p - 1))
}

/// `U(n)`: residues in `1..=n` coprime to `n`. `U(1) = {1}`.
pub fn coprime_residues(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |j| j.gcd(&n) == 1)
}

/// Least `m >= 1` with `k^m = 1 (mod n)`; requires `gcd(k, n) = 1`.
pub fn multiplicative_order(k: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if k.gcd(&n) != 1 {
        return None;
    }
    let k = k % n;
    let mut x = k;
    let mut m = 1;
    while x != 1 {
        x = x * k % n;
        m += 1;
    }
    Some(m)
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}
