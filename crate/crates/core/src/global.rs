//! Decision procedures over the rationals. The local-global principle makes
//! every question here a finite computation: isometry is equality of
//! invariant profiles, isotropy and subform tests reduce to the places in
//! the supports, and the two search problems (a squarefree integer in
//! prescribed local square classes, a form with a prescribed profile) are
//! solved by bounded scans whose success is guaranteed by Dirichlet's
//! theorem, then certified by direct recomputation.

use crate::arith::primes::{factor_u64, next_prime};
use crate::arith::{factor_rational, squarefree_part, Rational};
use crate::error::{Error, Result};
use crate::form::{DiagonalForm, InvariantProfile};
use crate::hilbert::hilbert_symbol;
use crate::local::{local_subform, LocalSquareClass};
use crate::place::Place;
use crate::square_class::SquareClass;
use crate::witness::isotropy_witness;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Cap on the prime multipliers tried by the existence searches. Existence
/// is a theorem, so exhaustion signals a bug or an absurdly sparse
/// progression, not a negative answer.
pub const DEFAULT_SEARCH_BOUND: u64 = 1_000_000;

/// One requirement for the square existence search: lie in `target` at
/// `place`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareClassConstraint {
    pub place: Place,
    pub target: LocalSquareClass,
}

/// A signed squarefree integer lying in every prescribed local square
/// class. The candidate is a product of the primes forced to odd valuation
/// times a single auxiliary prime (or 1) scanned in ascending order, so the
/// result is deterministic and as small as the constraints allow.
pub fn square_existence(constraints: &[SquareClassConstraint], bound: u64) -> Result<Rational> {
    let mut by_place: BTreeMap<Place, LocalSquareClass> = BTreeMap::new();
    for c in constraints {
        if c.target.place() != c.place {
            return Err(Error::PlaceMismatch);
        }
        if by_place.insert(c.place, c.target).is_some() {
            return Err(Error::DuplicateConstraint(c.place));
        }
    }
    let negative = matches!(
        by_place.get(&Place::Infinite),
        Some(LocalSquareClass::Real { positive: false })
    );
    let mut base = BigInt::one();
    for (v, t) in &by_place {
        let odd = match t {
            LocalSquareClass::Odd { odd_val, .. } => *odd_val,
            LocalSquareClass::Dyadic { odd_val, .. } => *odd_val,
            LocalSquareClass::Real { .. } => false,
        };
        if odd {
            base *= BigInt::from(v.prime().expect("finite place"));
        }
    }
    if negative {
        base = -base;
    }
    let matches_all = |s: &Rational| -> Result<bool> {
        for (v, t) in &by_place {
            if LocalSquareClass::of(s, *v)? != *t {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut u = 1u64;
    loop {
        let s = Rational::from(&base * BigInt::from(u));
        if matches_all(&s)? {
            return Ok(s);
        }
        u = next_prime(u + 1);
        if u > bound {
            return Err(Error::SearchExhausted(format!(
                "no multiplier below {bound} lands in the prescribed square classes"
            )));
        }
    }
}

// True for 1 and any product of distinct primes.
fn squarefree_small(n: u64) -> bool {
    factor_u64(n).iter().all(|(_, e)| *e == 1)
}

// A nonzero s with (s, d)_v equal to the requested value at every place in
// `targets` and +1 at every other place, optionally with a forced sign.
// Ok(None) means no such s exists (the requests contradict the product
// formula or ask for -1 where d is a local square); that verdict is exact.
//
// The pool {infinity, 2} plus the target places plus the odd-valuation
// support of d carries every symbol that can differ from +1, except at
// primes introduced by the candidate itself; the product formula forces +1
// there once the pool values multiply to +1, and the verification step
// checks even that.
pub(crate) fn find_symbol_solution(
    d: &Rational,
    targets: &BTreeMap<Place, i8>,
    sign: Option<bool>,
    bound: u64,
) -> Result<Option<Rational>> {
    if d.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut pool: BTreeSet<Place> = targets.keys().copied().collect();
    pool.insert(Place::Infinite);
    pool.insert(Place::Finite(2));
    let (_, fac) = factor_rational(d)?;
    for (p, e) in fac {
        if e % 2 != 0 {
            pool.insert(Place::finite(p)?);
        }
    }
    // One square class per finite pool place realizes the requested symbol;
    // which of the candidates is taken does not matter, so keep the first.
    let mut finite_choices: Vec<(SquareClassConstraint, i8)> = Vec::new();
    let mut infinite_choices: Vec<(LocalSquareClass, i8)> = Vec::new();
    for v in &pool {
        let want = targets.get(v).copied();
        let mut found = false;
        for cls in LocalSquareClass::enumerate(*v)? {
            if let (Some(pos), LocalSquareClass::Real { positive }) = (sign, cls) {
                if positive != pos {
                    continue;
                }
            }
            let sym = hilbert_symbol(&cls.representative()?, d, *v)?;
            let ok = match want {
                Some(w) => sym == w,
                // Away from the requested places the symbol must stay +1,
                // except at infinity where the sign filter already spoke.
                None => *v == Place::Infinite || sym == 1,
            };
            if !ok {
                continue;
            }
            if *v == Place::Infinite {
                infinite_choices.push((cls, sym));
            } else {
                finite_choices.push((SquareClassConstraint { place: *v, target: cls }, sym));
                found = true;
                break;
            }
        }
        if *v != Place::Infinite && !found {
            return Ok(None);
        }
    }
    if infinite_choices.is_empty() {
        return Ok(None);
    }
    let finite_product: i8 = finite_choices.iter().map(|(_, s)| s).product();
    let mut exhausted = false;
    for (cls, sym) in infinite_choices {
        if finite_product * sym != 1 {
            continue;
        }
        let mut constraints: Vec<SquareClassConstraint> =
            finite_choices.iter().map(|(c, _)| *c).collect();
        constraints.push(SquareClassConstraint { place: Place::Infinite, target: cls });
        match square_existence(&constraints, bound) {
            Ok(s) => {
                if verify_symbol_solution(&s, d, targets, sign, &pool)? {
                    return Ok(Some(s));
                }
            }
            Err(Error::SearchExhausted(_)) => exhausted = true,
            Err(e) => return Err(e),
        }
    }
    if exhausted {
        Err(Error::SearchExhausted(
            "square class realization ran out of prime multipliers".into(),
        ))
    } else {
        Ok(None)
    }
}

fn verify_symbol_solution(
    s: &Rational,
    d: &Rational,
    targets: &BTreeMap<Place, i8>,
    sign: Option<bool>,
    pool: &BTreeSet<Place>,
) -> Result<bool> {
    if let Some(pos) = sign {
        if s.is_positive() != pos {
            return Ok(false);
        }
    }
    for (v, want) in targets {
        if hilbert_symbol(s, d, *v)? != *want {
            return Ok(false);
        }
    }
    for v in pool {
        if *v != Place::Infinite
            && !targets.contains_key(v)
            && hilbert_symbol(s, d, *v)? != 1
        {
            return Ok(false);
        }
    }
    // The auxiliary prime of the multiplier lies outside the pool; its
    // symbol must not disturb the implicit +1 values.
    let (_, fac) = factor_rational(s)?;
    for (p, e) in fac {
        if e % 2 != 0 {
            let v = Place::finite(p)?;
            if !pool.contains(&v) && hilbert_symbol(s, d, v)? != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The data a global form is determined by: dimension, determinant class,
/// real signature, and the finite places with Hasse invariant -1. The real
/// Hasse invariant is a function of the signature, so it is not stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisProfile {
    pub dim: usize,
    pub det: SquareClass,
    pub signature: (usize, usize),
    pub minus_set: BTreeSet<Place>,
}

impl SynthesisProfile {
    pub fn from_invariants(p: &InvariantProfile) -> SynthesisProfile {
        let minus_set = p
            .hasse_minus
            .iter()
            .copied()
            .filter(|v| v.is_finite())
            .collect();
        SynthesisProfile {
            dim: p.dim,
            det: p.det.clone(),
            signature: p.signature,
            minus_set,
        }
    }
}

fn pairs_parity(n: usize) -> bool {
    // Parity of n choose 2.
    (n * n.saturating_sub(1) / 2) % 2 == 1
}

/// A diagonal form over the rationals with exactly the prescribed
/// invariants. The head is a string of +-1 entries carrying the bulk of the
/// signature; the residual determinant and Hasse data are pushed into a
/// ternary tail <a, b, a*b*d'> whose middle entry comes from the symbol
/// solver. The output is certified by recomputing its profile.
pub fn synthesize_form(profile: &SynthesisProfile, bound: u64) -> Result<DiagonalForm> {
    let m = profile.dim;
    let (mp, mm) = profile.signature;
    if mp + mm != m {
        return Err(Error::InvalidProfile("signature does not sum to the dimension".into()));
    }
    if m < 3 {
        return Err(Error::InvalidProfile("realization below dimension 3 is out of scope".into()));
    }
    if profile.det.is_negative() != (mm % 2 == 1) {
        return Err(Error::InvalidProfile("determinant sign disagrees with the signature".into()));
    }
    if profile.minus_set.contains(&Place::Infinite) {
        return Err(Error::InvalidProfile(
            "the real Hasse invariant is determined by the signature".into(),
        ));
    }
    let c_inf_minus = pairs_parity(mm);
    if (profile.minus_set.len() + usize::from(c_inf_minus)) % 2 != 0 {
        return Err(Error::InvalidProfile(
            "an odd number of places with Hasse invariant -1 violates the product formula".into(),
        ));
    }

    let t_minus = mm.min(3);
    let t_plus = 3 - t_minus;
    let h_plus = mp - t_plus;
    let h_minus = mm - t_minus;
    let mut head: Vec<Rational> = vec![Rational::one(); h_plus];
    head.extend(std::iter::repeat(-Rational::one()).take(h_minus));

    // Tail determinant class and the sign pattern of its entries.
    let mut dprime = profile.det.clone();
    if h_minus % 2 == 1 {
        dprime = dprime.mul(&SquareClass::minus_one());
    }
    debug_assert_eq!(dprime.is_negative(), t_minus % 2 == 1);
    let dp = dprime.to_rational();
    let ab_positive = t_minus <= 1;

    // Places where the tail Hasse invariant is pinned.
    let mut relevant: BTreeSet<Place> = profile.minus_set.clone();
    relevant.insert(Place::Finite(2));
    for p in dprime.primes() {
        relevant.insert(Place::Finite(*p));
    }

    let expected = InvariantProfile {
        dim: m,
        det: profile.det.clone(),
        disc: if pairs_parity(m) {
            profile.det.mul(&SquareClass::minus_one())
        } else {
            profile.det.clone()
        },
        signature: profile.signature,
        hasse_minus: {
            let mut s = profile.minus_set.clone();
            if c_inf_minus {
                s.insert(Place::Infinite);
            }
            s
        },
    };

    let head_pairs = pairs_parity(h_minus);
    let mut n = 0u64;
    while n < 1_000 {
        n += 1;
        if !squarefree_small(n) {
            continue;
        }
        let a = if ab_positive {
            Rational::from(BigInt::from(n))
        } else {
            Rational::from(-BigInt::from(n))
        };
        let mut places = relevant.clone();
        for (p, e) in factor_rational(&a)?.1 {
            if e % 2 != 0 {
                places.insert(Place::finite(p)?);
            }
        }
        // Required Hasse invariant of the tail, then the symbol targets for
        // b: c(head + tail) = c(head) c(tail) (det head, det tail), and
        // c(tail) = (a,b)(a,-d')(b,-d') turns into (b, -a d') = tau.
        let mut targets: BTreeMap<Place, i8> = BTreeMap::new();
        for v in &places {
            let goal: i8 = if profile.minus_set.contains(v) { -1 } else { 1 };
            let c_head: i8 = if head_pairs {
                hilbert_symbol(&-Rational::one(), &-Rational::one(), *v)?
            } else {
                1
            };
            let mix: i8 = if h_minus % 2 == 1 {
                hilbert_symbol(&-Rational::one(), &dp, *v)?
            } else {
                1
            };
            let c_tail = goal * c_head * mix;
            let tau = c_tail * hilbert_symbol(&a, &(-dp.clone()), *v)?;
            if tau != 1 {
                targets.insert(*v, -1);
            } else {
                targets.insert(*v, 1);
            }
        }
        let darg = -(&a * &dp);
        let b = match find_symbol_solution(&darg, &targets, Some(ab_positive), bound)? {
            Some(b) => b,
            None => continue,
        };
        let tail = vec![a.clone(), b.clone(), &a * &b * &dp];
        let mut entries = head.clone();
        entries.extend(tail);
        let q = DiagonalForm::new(entries)?;
        if q.invariants()? == expected {
            return Ok(q);
        }
    }
    Err(Error::SearchExhausted(
        "no ternary tail matched the prescribed profile".into(),
    ))
}

/// Hasse-Minkowski: rational forms are isometric exactly when their
/// invariant profiles agree.
pub fn globally_isometric(q1: &DiagonalForm, q2: &DiagonalForm) -> Result<bool> {
    Ok(q1.invariants()? == q2.invariants()?)
}

/// Isotropy over the rationals, decided place by place. For dimensions up
/// to 6 an isotropic verdict comes with a bounded search for an explicit
/// rational zero; the verdict never depends on the search succeeding.
pub fn globally_isotropic(q: &DiagonalForm) -> Result<(bool, Option<Vec<Rational>>)> {
    for v in q.support_places()? {
        if !crate::local::local_isotropic(q, v)? {
            return Ok((false, None));
        }
    }
    let witness = if q.dim() <= 6 { isotropy_witness(q) } else { None };
    Ok((true, witness))
}

pub(crate) fn union_support(q1: &DiagonalForm, q2: &DiagonalForm) -> Result<BTreeSet<Place>> {
    let mut s = q1.support_places()?;
    s.extend(q2.support_places()?);
    Ok(s)
}

/// Whether r embeds isometrically as a subspace of q over the rationals.
/// In codimension 3 and higher the finite places impose no condition, so
/// the answer is the real signature containment alone.
pub fn is_subform(r: &DiagonalForm, q: &DiagonalForm) -> Result<bool> {
    if r.dim() > q.dim() {
        return Err(Error::DimensionExceeded);
    }
    let (rp, rm) = r.signature();
    let (qp, qm) = q.signature();
    let real_ok = rp <= qp && rm <= qm;
    if q.dim() - r.dim() >= 3 {
        return Ok(real_ok);
    }
    if !real_ok {
        return Ok(false);
    }
    for v in union_support(r, q)? {
        if !local_subform(r, q, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The square class lambda with lambda * q1 isometric to q2, if one exists.
/// Odd dimension admits a single candidate (the determinant ratio). Even
/// dimension reduces to prescribing the symbols (lambda, disc q1)_v; the
/// witness is searched small-first and certified by a scale-and-compare, so
/// None is always a proof of non-similarity.
pub fn similar(
    q1: &DiagonalForm,
    q2: &DiagonalForm,
    bound: u64,
) -> Result<Option<SquareClass>> {
    if q1.dim() != q2.dim() {
        return Ok(None);
    }
    if q1.dim() % 2 == 1 {
        let lambda = squarefree_part(&(q2.det() / q1.det()))?;
        let scaled = q1.scale(&lambda.to_rational())?;
        return Ok(if globally_isometric(&scaled, q2)? { Some(lambda) } else { None });
    }
    // Scaling by lambda fixes the determinant class in even dimension.
    if squarefree_part(&q1.det())? != squarefree_part(&q2.det())? {
        return Ok(None);
    }
    let disc = squarefree_part(&q1.disc())?;
    let disc_rat = disc.to_rational();
    let (p1, m1) = q1.signature();
    let pos_ok = (p1, m1) == q2.signature();
    let neg_ok = (m1, p1) == q2.signature();
    if !pos_ok && !neg_ok {
        return Ok(None);
    }
    // Required symbol values, from the scaling law c(lambda q) =
    // (lambda, disc q) c(q).
    let h1 = q1.hasse_minus_places()?;
    let h2 = q2.hasse_minus_places()?;
    let mut eps: BTreeMap<Place, i8> = BTreeMap::new();
    for v in h1.symmetric_difference(&h2) {
        eps.insert(*v, -1);
    }
    for (v, e) in &eps {
        if v.is_finite() && *e == -1 && LocalSquareClass::of(&disc_rat, *v)?.is_one() {
            // (lambda, square)_v is identically +1.
            return Ok(None);
        }
    }
    let eps_inf: i8 = if eps.contains_key(&Place::Infinite) { -1 } else { 1 };
    let sym_neg: i8 = if disc.is_negative() { -1 } else { 1 };
    let mut signs: Vec<bool> = Vec::new();
    if pos_ok && eps_inf == 1 {
        signs.push(true);
    }
    if neg_ok && sym_neg == eps_inf {
        signs.push(false);
    }
    if signs.is_empty() {
        return Ok(None);
    }
    // Small candidates first, so the reported witness is the natural one.
    for n in 1..=30u64 {
        if !squarefree_small(n) {
            continue;
        }
        for &pos in &signs {
            let lam = if pos {
                Rational::from(BigInt::from(n))
            } else {
                Rational::from(-BigInt::from(n))
            };
            if globally_isometric(&q1.scale(&lam)?, q2)? {
                return Ok(Some(squarefree_part(&lam)?));
            }
        }
    }
    let sign = if signs.len() == 1 { Some(signs[0]) } else { None };
    match find_symbol_solution(&disc_rat, &eps, sign, bound)? {
        Some(lam) => {
            if globally_isometric(&q1.scale(&lam)?, q2)? {
                Ok(Some(squarefree_part(&lam)?))
            } else {
                Err(Error::SearchExhausted(
                    "similarity witness failed the scale-and-compare check".into(),
                ))
            }
        }
        None => Ok(None),
    }
}

/// Verdict for whether two forms have the same groups up to the scaling
/// action. Odd dimension: equivalent to similarity. Even dimension:
/// similarity still suffices, and for a pair of hyperbolic-admissible forms
/// it is also necessary; outside that range the question is left open.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "lambda", rename_all = "kebab-case")]
pub enum Isogroupy {
    Yes(SquareClass),
    No,
    UnknownEvenDim,
}

pub fn isogroupic(q1: &DiagonalForm, q2: &DiagonalForm, bound: u64) -> Result<Isogroupy> {
    if q1.dim() != q2.dim() {
        return Ok(Isogroupy::No);
    }
    if let Some(lambda) = similar(q1, q2, bound)? {
        return Ok(Isogroupy::Yes(lambda));
    }
    if q1.dim() % 2 == 1 {
        return Ok(Isogroupy::No);
    }
    if crate::hyperbolic::is_admissible(q1) && crate::hyperbolic::is_admissible(q2) {
        return Ok(Isogroupy::No);
    }
    Ok(Isogroupy::UnknownEvenDim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::local::local_isometric;

    fn form(entries: &[i64]) -> DiagonalForm {
        DiagonalForm::from_ints(entries).unwrap()
    }

    fn finite(p: u64) -> Place {
        Place::finite(p).unwrap()
    }

    #[test]
    fn square_existence_examples() {
        let pos = SquareClassConstraint {
            place: Place::Infinite,
            target: LocalSquareClass::Real { positive: true },
        };
        let nonres3 = SquareClassConstraint {
            place: finite(3),
            target: LocalSquareClass::Odd { p: 3, odd_val: false, nonresidue: true },
        };
        let s = square_existence(&[pos, nonres3], DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(s, rat(2, 1));

        let neg = SquareClassConstraint {
            place: Place::Infinite,
            target: LocalSquareClass::Real { positive: false },
        };
        assert_eq!(square_existence(&[neg], DEFAULT_SEARCH_BOUND).unwrap(), rat(-1, 1));

        let three = SquareClassConstraint {
            place: finite(3),
            target: LocalSquareClass::Odd { p: 3, odd_val: true, nonresidue: false },
        };
        assert_eq!(square_existence(&[three], DEFAULT_SEARCH_BOUND).unwrap(), rat(3, 1));

        let dup = square_existence(&[three, three], DEFAULT_SEARCH_BOUND);
        assert!(matches!(dup, Err(Error::DuplicateConstraint(_))));
    }

    #[test]
    fn square_existence_dyadic_and_mixed() {
        let cls = LocalSquareClass::of(&rat(5, 1), Place::Finite(2)).unwrap();
        let c = SquareClassConstraint { place: finite(2), target: cls };
        let s = square_existence(&[c], DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(LocalSquareClass::of(&s, Place::Finite(2)).unwrap(), cls);
        // Constraints at several places at once.
        let want2 = LocalSquareClass::of(&rat(-6, 1), Place::Finite(2)).unwrap();
        let want3 = LocalSquareClass::of(&rat(-6, 1), finite(3)).unwrap();
        let want5 = LocalSquareClass::of(&rat(-6, 1), finite(5)).unwrap();
        let got = square_existence(
            &[
                SquareClassConstraint { place: finite(2), target: want2 },
                SquareClassConstraint { place: finite(3), target: want3 },
                SquareClassConstraint { place: finite(5), target: want5 },
                SquareClassConstraint {
                    place: Place::Infinite,
                    target: LocalSquareClass::Real { positive: false },
                },
            ],
            DEFAULT_SEARCH_BOUND,
        )
        .unwrap();
        for v in [finite(2), finite(3), finite(5)] {
            assert_eq!(
                LocalSquareClass::of(&got, v).unwrap(),
                LocalSquareClass::of(&rat(-6, 1), v).unwrap()
            );
        }
        assert!(got.is_negative());
    }

    #[test]
    fn symbol_solver_finds_and_refuses() {
        // (s,3) = -1 at 3 alone contradicts the product formula.
        let mut t = BTreeMap::new();
        t.insert(finite(3), -1i8);
        assert_eq!(find_symbol_solution(&rat(3, 1), &t, None, DEFAULT_SEARCH_BOUND).unwrap(), None);
        // Adding the dyadic place balances it; 2 is the smallest answer.
        t.insert(finite(2), -1i8);
        let s = find_symbol_solution(&rat(3, 1), &t, None, DEFAULT_SEARCH_BOUND)
            .unwrap()
            .unwrap();
        assert_eq!(hilbert_symbol(&s, &rat(3, 1), finite(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&s, &rat(3, 1), finite(2)).unwrap(), -1);
        // Requesting -1 where d is a local square is impossible.
        let mut t5 = BTreeMap::new();
        t5.insert(finite(5), -1i8);
        assert_eq!(
            find_symbol_solution(&rat(4, 1), &t5, None, DEFAULT_SEARCH_BOUND).unwrap(),
            None
        );
    }

    #[test]
    fn isometry_examples() {
        assert!(globally_isometric(&form(&[1, 1]), &form(&[2, 2])).unwrap());
        let q = form(&[1, 1, 3, 3, -5]);
        assert!(globally_isometric(&q, &q).unwrap());
        assert!(!globally_isometric(&form(&[1, 1, 1, 1, -5]), &form(&[1, 1, 3, 3, -5])).unwrap());
        assert!(!globally_isometric(&form(&[1, 1, 1]), &form(&[2, 2, 2])).unwrap());
    }

    #[test]
    fn isometry_matches_all_local_checks() {
        let pairs = [
            (form(&[1, 1]), form(&[2, 2])),
            (form(&[1, 1, 1, 1, -5]), form(&[1, 1, 3, 3, -5])),
            (form(&[1, 2, 3]), form(&[6, 1, 1])),
        ];
        for (q1, q2) in &pairs {
            let mut all_local = q1.dim() == q2.dim();
            if all_local {
                for v in union_support(q1, q2).unwrap() {
                    all_local &= local_isometric(q1, q2, v).unwrap();
                }
            }
            assert_eq!(globally_isometric(q1, q2).unwrap(), all_local);
        }
    }

    #[test]
    fn isotropy_with_witness() {
        let (yes, w) = globally_isotropic(&form(&[1, 1, 1, 1, -5])).unwrap();
        assert!(yes);
        let w = w.unwrap();
        assert!(form(&[1, 1, 1, 1, -5]).evaluate(&w).is_zero());
        assert!(w.iter().any(|c| !c.is_zero()));

        assert_eq!(globally_isotropic(&form(&[1, 1, 1, 1])).unwrap(), (false, None));
        assert_eq!(globally_isotropic(&form(&[1, 1, -3])).unwrap(), (false, None));
    }

    #[test]
    fn subform_examples() {
        assert!(is_subform(&form(&[1, 1, 1, -5]), &form(&[1, 1, 1, 1, -5])).unwrap());
        assert!(is_subform(&form(&[5]), &form(&[1, 1])).unwrap());
        assert!(!is_subform(&form(&[-1]), &form(&[1, 1])).unwrap());
        assert!(matches!(
            is_subform(&form(&[1, 1, 1]), &form(&[1, 1])),
            Err(Error::DimensionExceeded)
        ));
        // Codimension 3: only the real condition matters.
        assert!(is_subform(&form(&[1, -1]), &form(&[1, 1, 1, -1, -1])).unwrap());
        assert!(!is_subform(&form(&[-1, -1]), &form(&[1, 1, 1, 1, -1])).unwrap());
    }

    #[test]
    fn deletion_always_embeds() {
        let q = form(&[1, 1, 3, 3, -5]);
        for i in 0..q.dim() {
            let r = q.delete_entries(&[i]).unwrap();
            assert!(is_subform(&r, &q).unwrap(), "deletion {i} of {q}");
        }
        let r = q.delete_entries(&[0, 2]).unwrap();
        assert!(is_subform(&r, &q).unwrap());
    }

    #[test]
    fn similarity_examples() {
        let lam = similar(&form(&[1, 1, 1]), &form(&[2, 2, 2]), DEFAULT_SEARCH_BOUND)
            .unwrap()
            .unwrap();
        assert_eq!(lam.to_rational(), rat(2, 1));

        let lam = similar(&form(&[1, 1]), &form(&[-1, -1]), DEFAULT_SEARCH_BOUND)
            .unwrap()
            .unwrap();
        assert_eq!(lam.to_rational(), rat(-1, 1));

        assert_eq!(
            similar(&form(&[1, 1, 1, 1, -5]), &form(&[1, 1, 3, 3, -5]), DEFAULT_SEARCH_BOUND)
                .unwrap(),
            None
        );
    }

    #[test]
    fn similarity_closure_under_scaling() {
        for entries in [&[1i64, 1, 1, 1, -5][..], &[1, 2, -3], &[1, 1, 3, 3], &[2, -7]] {
            let q = form(entries);
            for lam in [rat(3, 1), rat(-1, 1), rat(10, 1), rat(-6, 1)] {
                let scaled = q.scale(&lam).unwrap();
                let found = similar(&q, &scaled, DEFAULT_SEARCH_BOUND).unwrap();
                let found = found.unwrap_or_else(|| panic!("{q} should be similar to its {lam} scale"));
                assert!(globally_isometric(&q.scale(&found.to_rational()).unwrap(), &scaled).unwrap());
            }
        }
    }

    #[test]
    fn isogroupy_verdicts() {
        let yes = isogroupic(&form(&[1, 1, 1]), &form(&[2, 2, 2]), DEFAULT_SEARCH_BOUND).unwrap();
        assert!(matches!(yes, Isogroupy::Yes(_)));

        let no = isogroupic(&form(&[1, 1, 1, 1, -5]), &form(&[1, 1, 3, 3, -5]), DEFAULT_SEARCH_BOUND)
            .unwrap();
        assert_eq!(no, Isogroupy::No);

        // Even-dimensional, not similar, both definite: left open.
        let open = isogroupic(&form(&[1, 1, 1, 1]), &form(&[1, 1, 3, 3]), DEFAULT_SEARCH_BOUND)
            .unwrap();
        assert_eq!(open, Isogroupy::UnknownEvenDim);

        // Even-dimensional admissible pair: similarity is decisive.
        let no = isogroupic(&form(&[1, 1, 1, -1]), &form(&[1, 1, 3, -3]), DEFAULT_SEARCH_BOUND)
            .unwrap();
        assert!(matches!(no, Isogroupy::No | Isogroupy::Yes(_)));

        let sizes = isogroupic(&form(&[1, 1]), &form(&[1, 1, 1]), DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(sizes, Isogroupy::No);
    }

    #[test]
    fn synthesis_examples() {
        // The 5-dimensional hyperbolic profile with split set {3}.
        let target = form(&[1, -1, -1, -3, -3]);
        let profile = SynthesisProfile::from_invariants(&target.invariants().unwrap());
        let q = synthesize_form(&profile, DEFAULT_SEARCH_BOUND).unwrap();
        assert!(globally_isometric(&q, &target).unwrap());

        // Positive definite ternary with Hasse -1 at 2 and 3.
        let profile = SynthesisProfile {
            dim: 3,
            det: SquareClass::one(),
            signature: (3, 0),
            minus_set: [finite(2), finite(3)].into_iter().collect(),
        };
        let q = synthesize_form(&profile, DEFAULT_SEARCH_BOUND).unwrap();
        let got = SynthesisProfile::from_invariants(&q.invariants().unwrap());
        assert_eq!(got, profile);
    }

    #[test]
    fn synthesis_rejects_bad_profiles() {
        let odd_minus = SynthesisProfile {
            dim: 4,
            det: SquareClass::one(),
            signature: (4, 0),
            minus_set: [finite(3)].into_iter().collect(),
        };
        assert!(matches!(synthesize_form(&odd_minus, 1000), Err(Error::InvalidProfile(_))));

        let bad_sign = SynthesisProfile {
            dim: 3,
            det: SquareClass::minus_one(),
            signature: (3, 0),
            minus_set: BTreeSet::new(),
        };
        assert!(matches!(synthesize_form(&bad_sign, 1000), Err(Error::InvalidProfile(_))));

        let too_small = SynthesisProfile {
            dim: 2,
            det: SquareClass::one(),
            signature: (2, 0),
            minus_set: BTreeSet::new(),
        };
        assert!(matches!(synthesize_form(&too_small, 1000), Err(Error::InvalidProfile(_))));

        let infinite_minus = SynthesisProfile {
            dim: 3,
            det: SquareClass::one(),
            signature: (3, 0),
            minus_set: [Place::Infinite].into_iter().collect(),
        };
        assert!(matches!(synthesize_form(&infinite_minus, 1000), Err(Error::InvalidProfile(_))));
    }

    #[test]
    fn synthesis_roundtrip_spot_checks() {
        for entries in [
            &[1i64, 1, 1, 1, -5][..],
            &[1, 1, 3, 3, -5],
            &[1, 1, 1, 3, 3, -1],
            &[2, 3, 5],
            &[-1, -1, -1, -1, -1],
            &[1, 2, -7, 10],
        ] {
            let q = form(entries);
            let profile = SynthesisProfile::from_invariants(&q.invariants().unwrap());
            let built = synthesize_form(&profile, DEFAULT_SEARCH_BOUND).unwrap();
            assert!(
                globally_isometric(&built, &q).unwrap(),
                "synthesized {built} does not match {q}"
            );
        }
    }
}
