//! Brute-force deciders used by the test suites to cross-check the
//! invariant-theoretic code paths. Everything here favors transparency over
//! speed: local isotropy is decided by residue search plus Hensel lifting,
//! global isotropy by an exact box search for a zero, and none of it calls
//! into the symbol or Witt machinery it is meant to validate.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::rng::SplitMix64;
use crate::arith::Rational;
use crate::form::DiagonalForm;
use crate::global::SynthesisProfile;
use crate::place::Place;
use crate::square_class::SquareClass;

// Integer vector in the square class of each entry: n/d and n*d differ by
// the square d^2, so isotropy questions are unchanged.
fn integral_entries(q: &DiagonalForm) -> Vec<BigInt> {
    q.entries().iter().map(|a| a.numer() * a.denom()).collect()
}

// Divide out p^2 while the valuation allows; the result has valuation 0 or 1.
fn strip_square_factor(mut n: BigInt, p: u64) -> BigInt {
    let bp2 = BigInt::from(p) * BigInt::from(p);
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, &bp2);
        if r.is_zero() {
            n = q;
        } else {
            return n;
        }
    }
}

fn residue(n: &BigInt, m: u64) -> u64 {
    use num_traits::ToPrimitive;
    let bm = BigInt::from(m);
    (((n % &bm) + &bm) % &bm).to_u64().expect("residue fits")
}

// Dynamic program over residues: marks[r] = (some tuple sums to r, some
// tuple with a coordinate accepted by `keep` sums to r).
fn residue_reach(
    coeffs: &[u64],
    m: u64,
    keep: impl Fn(u64) -> bool,
) -> Vec<(bool, bool)> {
    let mut acc = vec![(false, false); m as usize];
    acc[0] = (true, false);
    for &c in coeffs {
        let mut next = vec![(false, false); m as usize];
        for r in 0..m {
            let (any, good) = acc[r as usize];
            if !any {
                continue;
            }
            for x in 0..m {
                let r2 = ((r + c * (x * x % m)) % m) as usize;
                next[r2].0 = true;
                next[r2].1 |= good || keep(x);
            }
        }
        acc = next;
    }
    acc
}

// Nontrivial zero of sum b_i z_i^2 = 0 over Z/p with all b_i units.
fn unit_form_has_modp_zero(b: &[u64], p: u64) -> bool {
    !b.is_empty() && residue_reach(b, p, |z| z != 0)[0].1
}

// Primitive zero of sum a_i x_i^2 = 0 over Z/32, entries odd or twice odd.
// A primitive zero mod 2^5 Newton-lifts to Z_2: the derivative 2 a_i x_i at
// an odd coordinate has valuation at most 2, and 5 > 2*2.
fn dyadic_form_has_mod32_zero(a: &[BigInt]) -> bool {
    let coeffs: Vec<u64> = a.iter().map(|c| residue(c, 32)).collect();
    residue_reach(&coeffs, 32, |x| x % 2 == 1)[0].1
}

/// Local isotropy by residue search and Hensel lifting. At an odd prime the
/// form splits as U + pV with unit blocks, and a primitive p-adic zero
/// reduces to a nontrivial mod-p zero of U (unit derivative, lifts) or,
/// after dividing the whole form by p, of V. At the dyadic place a depth-5
/// residue search with an odd coordinate is sound and complete for entries
/// of valuation at most 1.
pub fn hensel_isotropic(q: &DiagonalForm, v: Place) -> bool {
    let entries = integral_entries(q);
    match v {
        Place::Infinite => {
            entries.iter().any(|a| a.is_positive()) && entries.iter().any(|a| a.is_negative())
        }
        Place::Finite(2) => {
            let normalized: Vec<BigInt> =
                entries.into_iter().map(|a| strip_square_factor(a, 2)).collect();
            dyadic_form_has_mod32_zero(&normalized)
        }
        Place::Finite(p) => {
            let mut units: Vec<u64> = Vec::new();
            let mut shifted: Vec<u64> = Vec::new();
            for a in entries {
                let a = strip_square_factor(a, p);
                let r = residue(&a, p);
                if r != 0 {
                    units.push(r);
                } else {
                    shifted.push(residue(&(a / BigInt::from(p)), p));
                }
            }
            unit_form_has_modp_zero(&units, p) || unit_form_has_modp_zero(&shifted, p)
        }
    }
}

/// Exact integer zero of the form within the box |x_i| <= height, or None.
/// The scan splits the coordinates in half and matches partial sums, so the
/// cost is the square root of the naive box size.
pub fn box_zero_search(q: &DiagonalForm, height: u64) -> Option<Vec<BigInt>> {
    let a = integral_entries(q);
    let m = a.len();
    let half = m / 2;
    let enumerate = |coeffs: &[BigInt]| -> Vec<(BigInt, Vec<BigInt>)> {
        let mut out: Vec<(BigInt, Vec<BigInt>)> = vec![(BigInt::zero(), Vec::new())];
        for c in coeffs {
            let mut next = Vec::with_capacity(out.len() * (2 * height as usize + 1));
            for (s, xs) in &out {
                for x in -(height as i64)..=(height as i64) {
                    let bx = BigInt::from(x);
                    let mut xs2 = xs.clone();
                    xs2.push(bx.clone());
                    next.push((s + c * &bx * &bx, xs2));
                }
            }
            out = next;
        }
        out
    };
    let mut left = enumerate(&a[..half]);
    let mut right = enumerate(&a[half..]);
    left.sort_by(|x, y| x.0.cmp(&y.0));
    right.sort_by(|x, y| x.0.cmp(&y.0));
    // Opposed pointers: left ascends, right descends, matches sum to zero.
    let (mut i, mut j) = (0usize, right.len());
    while i < left.len() && j > 0 {
        let s = &left[i].0 + &right[j - 1].0;
        if s.is_zero() {
            // Scan the two tie blocks for a nontrivial combination.
            let lv = left[i].0.clone();
            let rv = right[j - 1].0.clone();
            let li_end = (i..left.len()).take_while(|&k| left[k].0 == lv).last().unwrap() + 1;
            let rj_start = (0..j).rev().take_while(|&k| right[k].0 == rv).last().unwrap();
            for l in &left[i..li_end] {
                for r in &right[rj_start..j] {
                    let mut x = l.1.clone();
                    x.extend(r.1.iter().cloned());
                    if x.iter().any(|c| !c.is_zero()) {
                        return Some(x);
                    }
                }
            }
            i = li_end;
            j = rj_start;
        } else if s.is_negative() {
            i += 1;
        } else {
            j -= 1;
        }
    }
    None
}

/// Exact rational zero search with doubling box heights. Returns a witness
/// vector, verified exactly before being reported.
pub fn rational_zero_search(q: &DiagonalForm, max_height: u64) -> Option<Vec<Rational>> {
    let mut h = 2u64;
    loop {
        if let Some(x) = box_zero_search(q, h) {
            let witness: Vec<Rational> = x
                .iter()
                .zip(q.entries())
                .map(|(c, a)| Rational::from(c.clone()) * Rational::from(a.denom().clone()))
                .collect();
            debug_assert!(q.evaluate(&witness).is_zero());
            return Some(witness);
        }
        if h >= max_height {
            return None;
        }
        h = (h * 2).min(max_height);
    }
}

/// Nonzero integer entries, uniform in [-max_abs, max_abs].
pub fn gen_form(rng: &mut SplitMix64, dim: usize, max_abs: u64) -> DiagonalForm {
    let entries: Vec<Rational> = (0..dim)
        .map(|_| {
            let mag = 1 + rng.below(max_abs);
            Rational::from(BigInt::from(rng.sign() * mag as i64))
        })
        .collect();
    DiagonalForm::new(entries).expect("nonzero entries")
}

/// Nonzero rational, numerator in [-max_num, max_num], denominator in
/// [1, max_den].
pub fn gen_rational(rng: &mut SplitMix64, max_num: u64, max_den: u64) -> Rational {
    let num = BigInt::from(rng.sign() * (1 + rng.below(max_num)) as i64);
    let den = BigInt::from(1 + rng.below(max_den));
    Rational::new(num, den)
}

/// Form with nonzero rational entries of bounded height.
pub fn gen_rational_form(
    rng: &mut SplitMix64,
    dim: usize,
    max_num: u64,
    max_den: u64,
) -> DiagonalForm {
    let entries: Vec<Rational> = (0..dim).map(|_| gen_rational(rng, max_num, max_den)).collect();
    DiagonalForm::new(entries).expect("nonzero entries")
}

const PROFILE_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// A random realizable profile: dimension in [3, 9], coherent determinant
/// sign, and a finite minus set whose parity matches the real Hasse value
/// determined by the signature.
pub fn gen_profile(rng: &mut SplitMix64) -> SynthesisProfile {
    let dim = 3 + rng.below(7) as usize;
    let mp = rng.below(dim as u64 + 1) as usize;
    let mm = dim - mp;
    let det_primes: Vec<u64> = PROFILE_PRIMES
        .iter()
        .copied()
        .filter(|_| rng.below(5) == 0)
        .take(3)
        .collect();
    let det = SquareClass::from_parts(mm % 2 == 1, det_primes);
    let c_inf_minus = (mm * mm.saturating_sub(1) / 2) % 2 == 1;
    let mut minus_primes: BTreeSet<u64> = PROFILE_PRIMES
        .iter()
        .copied()
        .filter(|_| rng.below(4) == 0)
        .collect();
    if (minus_primes.len() + usize::from(c_inf_minus)) % 2 != 0 {
        let p = PROFILE_PRIMES[rng.below(PROFILE_PRIMES.len() as u64) as usize];
        if !minus_primes.remove(&p) {
            minus_primes.insert(p);
        }
    }
    let minus_set: BTreeSet<Place> = minus_primes
        .into_iter()
        .map(|p| Place::finite(p).expect("prime"))
        .collect();
    SynthesisProfile { dim, det, signature: (mp, mm), minus_set }
}
