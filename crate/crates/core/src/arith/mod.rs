//! Exact rational arithmetic helpers: valuations, squarefree parts,
//! residue symbols, and local square tests.

pub mod primes;
pub mod rng;

use crate::error::{Error, Result};
use crate::place::Place;
use crate::square_class::SquareClass;
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};

/// Exact rational numbers; always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for tests and small literals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "a" or "a/b" into a rational. Used by the CLI and serde paths so
/// diagnostics stay consistent.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("'{t}' is not an integer")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("'{s}' has a zero denominator")));
            }
            Ok(Rational::new(parse_int(n)?, den))
        }
    }
}

/// Sign and prime factorization (with exponents in Z) of a nonzero rational,
/// factoring numerator and denominator separately.
pub fn factor_rational(x: &Rational) -> Result<(bool, Vec<(u64, i64)>)> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let negative = x.numer().sign() == Sign::Minus;
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    let mut map: Vec<(u64, i64)> = primes::factor_biguint(num)?
        .into_iter()
        .map(|(p, e)| (p, e as i64))
        .collect();
    for (p, e) in primes::factor_biguint(den)? {
        match map.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => map[i].1 -= e as i64,
            Err(i) => map.insert(i, (p, -(e as i64))),
        }
    }
    map.retain(|&(_, e)| e != 0);
    Ok((negative, map))
}

/// Squarefree part: the canonical representative of x modulo nonzero squares.
pub fn squarefree_part(x: &Rational) -> Result<SquareClass> {
    SquareClass::of(x)
}

/// p-adic valuation of a nonzero rational.
pub fn padic_valuation(x: &Rational, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let vp = |n: &BigInt| -> i64 {
        let mut n = n.magnitude().clone();
        let bp = BigUint::from(p);
        let mut v = 0i64;
        loop {
            let (q, r) = num_integer::Integer::div_rem(&n, &bp);
            if r.is_zero() {
                n = q;
                v += 1;
            } else {
                return v;
            }
        }
    };
    Ok(vp(x.numer()) - vp(x.denom()))
}

/// The p-free unit part of x reduced mod p^k, as a u64. Requires p^k to fit.
pub fn unit_part_mod(x: &Rational, p: u64, k: u32) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let pk = p
        .checked_pow(k)
        .expect("modulus overflow in unit_part_mod");
    let bpk = BigInt::from(pk);
    let bp = BigInt::from(p);
    let strip = |n: &BigInt| -> BigInt {
        let mut n = n.clone();
        while (&n % &bp).is_zero() {
            n /= &bp;
        }
        n
    };
    let n = strip(x.numer());
    let d = strip(x.denom());
    let n_red = ((&n % &bpk) + &bpk) % &bpk;
    let d_red = ((&d % &bpk) + &bpk) % &bpk;
    let n_u = to_u64(&n_red);
    let d_u = to_u64(&d_red);
    // Inverse mod p^k via extended Euclid on u64-sized values.
    let d_inv = inv_mod(d_u, pk).expect("denominator unit part must be invertible");
    Ok(((n_u as u128 * d_inv as u128) % pk as u128) as u64)
}

fn to_u64(n: &BigInt) -> u64 {
    use num_traits::ToPrimitive;
    n.to_u64().expect("reduced residue fits u64")
}

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(((t % m as i128 + m as i128) % m as i128) as u64)
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Legendre symbol (a|p) in {-1, +1} for odd prime p and a coprime to p,
/// by Euler's criterion.
pub fn legendre_symbol(a: &BigInt, p: u64) -> Result<i8> {
    if p == 2 || !primes::is_prime_u64(p) {
        return Err(Error::OddPrimeRequired);
    }
    let bp = BigInt::from(p);
    let r = ((a % &bp) + &bp) % &bp;
    let r_u = to_u64(&r);
    if r_u == 0 {
        return Err(Error::NotCoprime);
    }
    let e = powmod(r_u, (p - 1) / 2, p);
    Ok(if e == 1 { 1 } else { -1 })
}

/// Smallest positive quadratic nonresidue modulo an odd prime.
pub fn smallest_nonresidue(p: u64) -> Result<u64> {
    let mut u = 2u64;
    loop {
        if legendre_symbol(&BigInt::from(u), p)? == -1 {
            return Ok(u);
        }
        u += 1;
    }
}

/// Legendre symbol of a nonzero rational unit at p (numerator and denominator
/// both coprime to p after reduction is not required; the unit part is used).
pub fn legendre_of_unit(x: &Rational, p: u64) -> Result<i8> {
    debug_assert_ne!(p, 2);
    let u = unit_part_mod(x, p, 1)?;
    let e = powmod(u, (p - 1) / 2, p);
    Ok(if e == 1 { 1 } else { -1 })
}

/// Whether x is a square in the completion at v.
pub fn is_local_square(x: &Rational, v: Place) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    match v {
        Place::Infinite => Ok(x.is_positive()),
        Place::Finite(2) => {
            let val = padic_valuation(x, 2)?;
            Ok(val % 2 == 0 && unit_part_mod(x, 2, 3)? == 1)
        }
        Place::Finite(p) => {
            let val = padic_valuation(x, p)?;
            Ok(val % 2 == 0 && legendre_of_unit(x, p)? == 1)
        }
    }
}
