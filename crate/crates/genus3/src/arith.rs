//! Machine-integer helpers: modular arithmetic, primality, integer square
//! roots and prime-power decomposition. Everything here is exact; no
//! floating point.

/// (a * b) mod m without overflow.
#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// a^e mod m by square-and-multiply.
pub fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all u64 with this base set.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Exact floor of the square root of a u64.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    // the float seed can be off by one in either direction
    while x.checked_mul(x).is_none_or(|s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

/// Decomposes q as p^n with p prime, or None.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    // find the smallest prime factor by trial division
    let mut p = 0u64;
    if q.is_multiple_of(2) {
        p = 2;
    } else {
        let mut d = 3u64;
        while d * d <= q {
            if q.is_multiple_of(d) {
                p = d;
                break;
            }
            d += 2;
        }
        if p == 0 {
            return Some((q, 1)); // q itself is prime
        }
    }
    let mut rest = q;
    let mut n = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    if rest == 1 {
        Some((p, n))
    } else {
        None
    }
}

/// Decomposes q as p^n with p an odd prime, or None.
pub fn odd_prime_power(q: u64) -> Option<(u64, u32)> {
    match prime_power(q) {
        Some((p, n)) if p % 2 == 1 => Some((p, n)),
        _ => None,
    }
}

/// All odd prime powers in [3, max], ascending.
pub fn odd_prime_powers(max: u64) -> Vec<u64> {
    (3..=max).filter(|&q| odd_prime_power(q).is_some()).collect()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn isqrt_exact() {
        for n in 0..100_000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "n={n}");
        }
        assert_eq!(isqrt(u64::MAX), 4_294_967_295);
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(243), Some((3, 5)));
        assert_eq!(prime_power(2401), Some((7, 4)));
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(odd_prime_power(128), None);
        assert_eq!(odd_prime_power(125), Some((5, 3)));
    }
}
