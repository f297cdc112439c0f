//! The Hilbert symbol (a,b)_v on nonzero rationals, place by place.
//!
//! At the archimedean place the symbol is -1 exactly when both arguments are
//! negative. At an odd prime p, writing a = p^alpha * u and b = p^beta * w
//! with u, w units, the symbol is
//! (-1)^(alpha beta (p-1)/2) * (u|p)^beta * (w|p)^alpha.
//! At 2, with eps(u) = (u-1)/2 and omega(u) = (u^2-1)/8 taken mod 2 on the
//! odd unit parts, the symbol is (-1)^(eps(u)eps(w) + alpha omega(w) + beta omega(u)).

use crate::arith::{factor_rational, legendre_of_unit, padic_valuation, unit_part_mod, Rational};
use crate::error::{Error, Result};
use crate::place::Place;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

pub fn hilbert_symbol(a: &Rational, b: &Rational, v: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    match v {
        Place::Infinite => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Finite(2) => {
            let alpha = padic_valuation(a, 2)? as u64 & 1; // only parity matters
            let beta = padic_valuation(b, 2)? as u64 & 1;
            let u = unit_part_mod(a, 2, 3)?;
            let w = unit_part_mod(b, 2, 3)?;
            let eps = |x: u64| ((x - 1) / 2) & 1;
            let omega = |x: u64| ((x * x - 1) / 8) & 1;
            let e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
            Ok(if e & 1 == 0 { 1 } else { -1 })
        }
        Place::Finite(p) => {
            let alpha = padic_valuation(a, p)?;
            let beta = padic_valuation(b, p)?;
            let mut s: i8 = if (alpha & 1 == 1) && (beta & 1 == 1) && ((p - 1) / 2) & 1 == 1 {
                -1
            } else {
                1
            };
            if beta & 1 == 1 {
                s *= legendre_of_unit(a, p)?;
            }
            if alpha & 1 == 1 {
                s *= legendre_of_unit(b, p)?;
            }
            Ok(s)
        }
    }
}

/// The finite set of places where (a,b)_v = -1. Always of even size.
pub fn hilbert_support(a: &Rational, b: &Rational) -> Result<BTreeSet<Place>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut candidates: BTreeSet<Place> = BTreeSet::new();
    candidates.insert(Place::Infinite);
    candidates.insert(Place::Finite(2));
    for x in [a, b] {
        for (p, _) in factor_rational(x)?.1 {
            candidates.insert(Place::finite(p)?);
        }
    }
    let mut out = BTreeSet::new();
    for v in candidates {
        if hilbert_symbol(a, b, v)? == -1 {
            out.insert(v);
        }
    }
    debug_assert!(out.len() % 2 == 0, "product formula violated");
    Ok(out)
}

/// Some b with (a,b)_v = -1, for a that is not a square in the completion at v.
/// The scan orders are fixed so output is deterministic.
pub fn nonsquare_partner(a: &Rational, v: Place) -> Result<Rational> {
    use crate::arith::{is_local_square, rat};
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if is_local_square(a, v)? {
        return Err(Error::IsSquare);
    }
    let candidates: Vec<Rational> = match v {
        Place::Infinite => vec![rat(-1, 1)],
        Place::Finite(2) => [1i64, -1, 2, -2, 5, -5, 10, -10]
            .iter()
            .map(|&n| rat(n, 1))
            .collect(),
        Place::Finite(p) => {
            let u = crate::arith::smallest_nonresidue(p)?;
            vec![
                rat(1, 1),
                rat(u as i64, 1),
                rat(p as i64, 1),
                rat((u * p) as i64, 1),
            ]
        }
    };
    for b in candidates {
        if hilbert_symbol(a, &b, v)? == -1 {
            return Ok(b);
        }
    }
    unreachable!("a non-square class always has a partner with symbol -1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn archimedean_and_small_prime_values() {
        assert_eq!(hilbert_symbol(&rat(-1, 1), &rat(-1, 1), Place::Infinite).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat(-1, 1), &rat(-1, 1), Place::Finite(3)).unwrap(), 1);
        assert_eq!(hilbert_symbol(&rat(-1, 1), &rat(-1, 1), Place::Finite(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat(3, 1), &rat(3, 1), Place::Finite(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat(3, 1), &rat(3, 1), Place::Finite(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat(2, 1), &rat(5, 1), Place::Finite(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat(2, 1), &rat(-1, 1), Place::Finite(2)).unwrap(), 1);
    }

    #[test]
    fn square_class_invariance_spot() {
        let a = rat(3, 5);
        let b = rat(-7, 2);
        for v in [Place::Infinite, Place::Finite(2), Place::Finite(3), Place::Finite(5), Place::Finite(7)] {
            let lhs = hilbert_symbol(&a, &b, v).unwrap();
            let scaled = &a * rat(49, 4); // multiply by a square
            assert_eq!(lhs, hilbert_symbol(&scaled, &b, v).unwrap());
        }
    }

    #[test]
    fn support_examples() {
        let s = hilbert_support(&rat(-1, 1), &rat(-1, 1)).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![Place::Finite(2), Place::Infinite]);
        let s = hilbert_support(&rat(3, 1), &rat(3, 1)).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![Place::Finite(2), Place::Finite(3)]);
    }

    #[test]
    fn partner_examples() {
        assert_eq!(nonsquare_partner(&rat(5, 1), Place::Finite(3)).unwrap(), rat(3, 1));
        assert_eq!(nonsquare_partner(&rat(2, 1), Place::Finite(2)).unwrap(), rat(5, 1));
        assert_eq!(nonsquare_partner(&rat(-3, 1), Place::Infinite).unwrap(), rat(-1, 1));
        assert_eq!(nonsquare_partner(&rat(4, 1), Place::Finite(5)), Err(Error::IsSquare));
    }

    #[test]
    fn partner_symbol_is_minus_one_for_all_dyadic_classes() {
        for n in [-1i64, 2, -2, 5, -5, 10, -10, 3, 6, 7, 14] {
            let a = rat(n, 1);
            if crate::arith::is_local_square(&a, Place::Finite(2)).unwrap() {
                continue;
            }
            let b = nonsquare_partner(&a, Place::Finite(2)).unwrap();
            assert_eq!(hilbert_symbol(&a, &b, Place::Finite(2)).unwrap(), -1, "a = {n}");
        }
    }
}
