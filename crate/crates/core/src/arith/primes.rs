//! Deterministic primality and factorization for the integer sizes that
//! occur in form entries and search bounds.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Miller-Rabin with a witness set that is deterministic for all of u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

fn pollard_brent(n: u64, seed: u64) -> u64 {
    // Brent's cycle variant; n must be odd and composite. Returns a (possibly
    // trivial) divisor; n itself signals a failed seed and the caller retries.
    // An exact collision x == y must abort rather than be skipped: for prime
    // squares every useful collision can be exact, and skipping them loops.
    let c = 1 + seed % (n - 1);
    let f = |x: u64| (mulmod(x, x, n) + c) % n;
    let mut x = seed % n;
    let (mut y, mut d) = (x, 1u64);
    let mut ys = x;
    let m = 128u64;
    let mut r = 1u64;
    let mut q = 1u64;
    while d == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0u64;
        while k < r && d == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                if x == y {
                    return n;
                }
                q = mulmod(q, x.abs_diff(y), n);
            }
            d = gcd(q, n);
            k += m;
        }
        r <<= 1;
    }
    if d == n {
        loop {
            ys = f(ys);
            if x == ys {
                return n;
            }
            d = gcd(x.abs_diff(ys), n);
            if d > 1 {
                break;
            }
        }
    }
    d
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Factor a u64 into (prime, exponent) pairs in ascending prime order.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if n == 1 {
            return out;
        }
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut stack = vec![n];
    let mut rest: Vec<u64> = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            rest.push(m);
            continue;
        }
        let mut d = m;
        let mut seed = 2u64;
        while d == m {
            d = pollard_brent(m, seed);
            seed += 1;
        }
        stack.push(d);
        stack.push(m / d);
    }
    rest.sort_unstable();
    let mut i = 0;
    while i < rest.len() {
        let p = rest[i];
        let mut e = 0;
        while i < rest.len() && rest[i] == p {
            e += 1;
            i += 1;
        }
        out.push((p, e));
    }
    out.sort_unstable();
    out
}

/// Factor a nonzero BigUint; every prime factor must fit in u64.
pub fn factor_biguint(n: &BigUint) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    if let Some(small) = n.to_u64() {
        return Ok(factor_u64(small));
    }
    // Strip small primes, then insist the cofactor fits in u64.
    let mut m = n.clone();
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while p < 100_000 {
        let bp = BigUint::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = num_integer::Integer::div_rem(&m, &bp);
            if r.is_zero() {
                m = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            out.push((p, e));
        }
        if m.is_one() {
            return Ok(out);
        }
        p = next_prime(p + 1);
    }
    match m.to_u64() {
        Some(small) => {
            for (q, e) in factor_u64(small) {
                out.push((q, e));
            }
            out.sort_unstable();
            Ok(out)
        }
        None => Err(Error::FactorTooLarge),
    }
}

/// Smallest prime >= n.
pub fn next_prime(mut n: u64) -> u64 {
    if n <= 2 {
        return 2;
    }
    if n % 2 == 0 {
        n += 1;
    }
    while !is_prime_u64(n) {
        n += 2;
    }
    n
}

/// Ascending primes up to and including `bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    if n >= 1 {
        sieve[1] = false;
    }
    let mut i = 2usize;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_and_carmichael() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(25326001));
        assert!(is_prime_u64(1_000_000_007));
        assert!(is_prime_u64((1u64 << 61) - 1));
        assert!(!is_prime_u64((1u64 << 62) - 1));
    }

    #[test]
    fn factor_roundtrip() {
        for n in [1u64, 2, 12, 97, 360, 1_000_003, 2 * 3 * 5 * 7 * 11 * 13, 999_999_999_989] {
            let f = factor_u64(n);
            let back: u64 = f.iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(back, n, "factoring {n}");
            for (p, _) in &f {
                assert!(is_prime_u64(*p));
            }
        }
    }

    #[test]
    fn factor_prime_powers_beyond_trial_range() {
        // Squares and cubes of primes above the trial-division range once
        // made the rho stage spin on exact collisions.
        assert_eq!(factor_u64(193 * 193), vec![(193, 2)]);
        assert_eq!(factor_u64(193 * 193 * 193), vec![(193, 3)]);
        assert_eq!(factor_u64(3 * 3 * 5 * 5 * 7 * 7 * 193 * 193), vec![(3, 2), (5, 2), (7, 2), (193, 2)]);
        assert_eq!(factor_u64(999_983 * 999_983), vec![(999_983, 2)]);
        assert_eq!(factor_u64(104_729u64.pow(3)), vec![(104_729, 3)]);
        assert_eq!(factor_u64(1_009 * 1_009 * 2), vec![(2, 1), (1_009, 2)]);
    }

    #[test]
    fn biguint_factor_large() {
        let n = BigUint::from(10u64).pow(30); // 2^30 * 5^30
        let f = factor_biguint(&n).unwrap();
        assert_eq!(f, vec![(2, 30), (5, 30)]);
    }

    #[test]
    fn sieve_matches_mr() {
        let ps = primes_up_to(1000);
        assert_eq!(ps.len(), 168);
        for p in ps {
            assert!(is_prime_u64(p));
        }
    }
}
