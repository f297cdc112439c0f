//! The hyperbolic side of the classification: admissible forms, the
//! commensurability test, distinguishing places, the containment dichotomy,
//! and the parametrization of commensurability classes by finite sets of
//! primes.
//!
//! A form of signature (m-1, 1) or (1, m-1) with m >= 3 gives rise to a
//! hyperbolic space of dimension m - 1 acted on by its isometry group over
//! the integers. Over the rationals two such quotients are commensurable
//! exactly when the forms are similar, so every commensurability question
//! here reduces to the similarity decision and every negative answer can be
//! localized: some completion distinguishes the two forms, and a subform
//! witness at that place certifies the difference.
//!
//! In odd dimensions the similarity classes with a fixed dimension are in
//! bijection with finite sets of primes of the right parity: scaling to a
//! determinant-one representative, the class is determined by the set of
//! finite places where the representative fails to split. Both directions
//! of that bijection and an exhaustive enumeration are provided.

use std::collections::BTreeSet;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::primes::next_prime;
use crate::arith::squarefree_part;
use crate::error::{Error, Result};
use crate::form::{order_form, DiagonalForm};
use crate::global::{similar, synthesize_form, union_support, SynthesisProfile};
use crate::local::{tits_index, LocalSquareClass};
use crate::place::Place;
use crate::square_class::SquareClass;
use crate::subform::{
    distinguishing_subform_even_codim1, distinguishing_subform_even_codim2,
    distinguishing_subform_odd, similar_subform_obstruction, similar_subform_search,
    SubformCertificate,
};

/// Number of real places at which the quaternion algebra (-1, -1) ramifies
/// over the rationals: the single real place. Tests recompute this from the
/// support of the symbol.
pub const HAMILTON_RAMIFIED_REAL_PLACES: usize = 1;

// Primes past the combined support are scanned up to this limit when two
// even-dimensional forms have different discriminant classes; the first
// separating prime is small in practice.
const BEYOND_SUPPORT_SCAN_LIMIT: u64 = 1000;

/// Whether the form has hyperbolic type over the reals: dimension at least
/// 3 and exactly one entry on the minority sign side.
pub fn is_admissible(q: &DiagonalForm) -> bool {
    let (plus, minus) = q.signature();
    q.dim() >= 3 && (minus == 1 || plus == 1)
}

fn ensure_admissible(q: &DiagonalForm) -> Result<()> {
    if q.dim() < 3 {
        return Err(Error::DimensionTooSmall {
            needed: 3,
            got: q.dim(),
        });
    }
    if !is_admissible(q) {
        return Err(Error::NotAdmissible);
    }
    Ok(())
}

/// An admissible form together with the dimension of the hyperbolic space
/// it acts on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissiblePair {
    pub form: DiagonalForm,
    pub hyperbolic_dim: usize,
}

impl AdmissiblePair {
    pub fn new(q: &DiagonalForm) -> Result<AdmissiblePair> {
        ensure_admissible(q)?;
        Ok(AdmissiblePair {
            form: q.clone(),
            hyperbolic_dim: q.dim() - 1,
        })
    }
}

/// Commensurability of the quotients attached to two admissible forms.
/// Over the rationals this is equivalent to similarity of the forms; forms
/// of different dimensions are never commensurable.
pub fn commensurable(q1: &DiagonalForm, q2: &DiagonalForm, bound: u64) -> Result<bool> {
    ensure_admissible(q1)?;
    ensure_admissible(q2)?;
    if q1.dim() != q2.dim() {
        return Ok(false);
    }
    Ok(similar(q1, q2, bound)?.is_some())
}

// Finite supporting places with the odd primes first in ascending order and
// the dyadic place last. Obstructions at odd primes have simpler local
// square class arithmetic, so they are preferred as distinguishing places.
fn ordered_finite_pool(q1: &DiagonalForm, q2: &DiagonalForm) -> Result<Vec<Place>> {
    let mut odd = Vec::new();
    let mut dyadic = Vec::new();
    for v in union_support(q1, q2)? {
        match v.prime() {
            Some(2) => dyadic.push(v),
            Some(_) => odd.push(v),
            None => {}
        }
    }
    odd.extend(dyadic);
    Ok(odd)
}

/// A finite place where the local algebraic groups of two non-similar
/// admissible forms have different Tits indices, or None for similar forms.
/// Odd-dimensional pairs are compared through their determinant-one
/// representatives, even-dimensional pairs directly; for even pairs with
/// different discriminant classes the first separating prime may lie past
/// both supports and is found by scanning outward.
pub fn distinguishing_place(
    q1: &DiagonalForm,
    q2: &DiagonalForm,
    bound: u64,
) -> Result<Option<Place>> {
    ensure_admissible(q1)?;
    ensure_admissible(q2)?;
    if q1.dim() != q2.dim() {
        return Err(Error::NotComparable);
    }
    if similar(q1, q2, bound)?.is_some() {
        return Ok(None);
    }
    if q1.dim() % 2 == 1 {
        let r1 = q1.scale(&q1.det())?;
        let r2 = q2.scale(&q2.det())?;
        for v in ordered_finite_pool(&r1, &r2)? {
            if tits_index(&r1, v)? != tits_index(&r2, v)? {
                return Ok(Some(v));
            }
        }
        // Determinant-one representatives agreeing at every supporting
        // place would be similar, contradicting the check above.
        return Err(Error::SearchExhausted(
            "no supporting place separates the forms".into(),
        ));
    }
    for v in ordered_finite_pool(q1, q2)? {
        if tits_index(q1, v)? != tits_index(q2, v)? {
            return Ok(Some(v));
        }
    }
    // Equal discriminant classes must already separate over the support.
    if squarefree_part(&q1.disc())?
        .mul(&squarefree_part(&q2.disc())?)
        .is_one()
    {
        return Err(Error::SearchExhausted(
            "no supporting place separates the forms".into(),
        ));
    }
    let mut p = 2u64;
    for v in union_support(q1, q2)? {
        if let Some(q) = v.prime() {
            p = p.max(q);
        }
    }
    loop {
        p = next_prime(p + 1);
        if p > BEYOND_SUPPORT_SCAN_LIMIT.max(bound.min(BEYOND_SUPPORT_SCAN_LIMIT)) {
            return Err(Error::SearchExhausted(
                "no scanned prime separates the discriminant classes".into(),
            ));
        }
        let v = Place::finite(p)?;
        if tits_index(q1, v)? != tits_index(q2, v)? {
            return Ok(Some(v));
        }
    }
}

/// Verdict for geodesic subspace containment between the spaces of two
/// admissible forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubspaceContainment {
    Yes,
    No,
    /// In codimension 1 and 2 the bounded scalar sweep found no embedding
    /// and no local obstruction excluded one.
    #[serde(rename = "inconclusive-codim-le-2")]
    InconclusiveCodimLe2,
}

/// Whether the hyperbolic space of q1 embeds as a totally geodesic subspace
/// of the space of q2, that is, whether some rational multiple of q1 is a
/// subform of q2. In codimension 3 or more only the real condition matters.
/// In codimension 1 and 2 a scalar sweep looks for an embedding and a local
/// square class scan looks for an obstruction; if neither settles it, the
/// verdict is honest inconclusiveness.
pub fn contains_as_subspace(
    q1: &DiagonalForm,
    q2: &DiagonalForm,
) -> Result<SubspaceContainment> {
    ensure_admissible(q1)?;
    ensure_admissible(q2)?;
    if q1.dim() >= q2.dim() {
        return Err(Error::DimensionOrder);
    }
    let codim = q2.dim() - q1.dim();
    let (rp, rm) = q1.signature();
    let (qp, qm) = q2.signature();
    if codim >= 3 {
        let fits = (rp <= qp && rm <= qm) || (rm <= qp && rp <= qm);
        return Ok(if fits {
            SubspaceContainment::Yes
        } else {
            SubspaceContainment::No
        });
    }
    if similar_subform_search(q1, q2)?.is_some() {
        return Ok(SubspaceContainment::Yes);
    }
    if similar_subform_obstruction(q1, q2)?.is_some() {
        return Ok(SubspaceContainment::No);
    }
    Ok(SubspaceContainment::InconclusiveCodimLe2)
}

/// The outcome of the commensurability dichotomy for a pair of admissible
/// forms of dimension at least 5: either the quotients are commensurable,
/// or a certified distinguishing subform separates them. `shared_range`
/// lists the subspace dimensions in which both spaces contain the same
/// isometry classes of geodesic subspaces regardless of commensurability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DichotomyReport {
    pub dims_equal: bool,
    pub commensurable: bool,
    pub shared_range: Option<(usize, usize)>,
    pub codim1_witness: Option<SubformCertificate>,
    pub codim2_witness: Option<SubformCertificate>,
}

impl DichotomyReport {
    fn settled(dims_equal: bool, commensurable: bool, shared_range: Option<(usize, usize)>) -> Self {
        DichotomyReport {
            dims_equal,
            commensurable,
            shared_range,
            codim1_witness: None,
            codim2_witness: None,
        }
    }
}

fn is_square_at(x: &crate::arith::Rational, v: Place) -> Result<bool> {
    Ok(LocalSquareClass::of(x, v)?.is_one())
}

// Try the two even-dimensional witness patterns at one place, preferring
// codimension 1. The pair is passed in ordered representatives.
fn even_witness_at(
    r1: &DiagonalForm,
    r2: &DiagonalForm,
    v: Place,
    bound: u64,
) -> Result<Option<(bool, SubformCertificate)>> {
    let n = r1.dim() / 2;
    let d1 = is_square_at(&r1.disc(), v)?;
    let d2 = is_square_at(&r2.disc(), v)?;
    if d1 && d2 {
        let t1 = tits_index(r1, v)?;
        let t2 = tits_index(r2, v)?;
        if t1.split && t2.witt_index + 2 == n {
            let (_, cert) = distinguishing_subform_even_codim1(r1, r2, v)?;
            return Ok(Some((true, cert)));
        }
        if t2.split && t1.witt_index + 2 == n {
            let (_, cert) = distinguishing_subform_even_codim1(r2, r1, v)?;
            return Ok(Some((true, cert)));
        }
        return Ok(None);
    }
    if d1 != d2 {
        // The witness lives in the form with locally non-square
        // discriminant; the other form plays the ambient role of the
        // forced-complement argument.
        let (a, b) = if d1 { (r1, r2) } else { (r2, r1) };
        let half = (a.dim() - 2) / 2;
        let twist = if half % 2 == 1 {
            crate::hilbert::hilbert_symbol(&-crate::arith::Rational::one(), &b.disc(), v)?
        } else {
            1
        };
        if a.hasse(v)? != b.hasse(v)? * twist {
            let (_, cert) = distinguishing_subform_even_codim2(a, b, v, bound)?;
            return Ok(Some((false, cert)));
        }
    }
    Ok(None)
}

/// Decide commensurability for two admissible forms of dimension at least
/// 5 and, on a negative answer with equal dimensions, produce a certified
/// distinguishing subform. Odd-dimensional pairs are normalized to their
/// determinant-one representatives, whose determinants are everywhere
/// locally square, so the odd codimension-1 pattern applies at any
/// separating place. Even-dimensional pairs are normalized to be ordered
/// at the real place and scanned for a place admitting the codimension-1
/// or codimension-2 pattern.
pub fn dichotomy_report(
    q1: &DiagonalForm,
    q2: &DiagonalForm,
    bound: u64,
) -> Result<DichotomyReport> {
    for q in [q1, q2] {
        if q.dim() < 5 {
            return Err(Error::DimensionTooSmall {
                needed: 5,
                got: q.dim(),
            });
        }
        if !is_admissible(q) {
            return Err(Error::NotAdmissible);
        }
    }
    let dims_equal = q1.dim() == q2.dim();
    if !dims_equal {
        return Ok(DichotomyReport::settled(false, false, None));
    }
    let m = q1.dim();
    let n = m - 1;
    let shared_range = if n >= 5 { Some((2, n - 3)) } else { None };
    if similar(q1, q2, bound)?.is_some() {
        return Ok(DichotomyReport::settled(true, true, shared_range));
    }
    if m % 2 == 1 {
        let r1 = q1.scale(&q1.det())?;
        let r2 = q2.scale(&q2.det())?;
        for v in ordered_finite_pool(&r1, &r2)? {
            if tits_index(&r1, v)? != tits_index(&r2, v)? {
                let (_, cert) = distinguishing_subform_odd(&r1, &r2, v, bound)?;
                return Ok(DichotomyReport {
                    dims_equal,
                    commensurable: false,
                    shared_range,
                    codim1_witness: Some(cert),
                    codim2_witness: None,
                });
            }
        }
        return Err(Error::SearchExhausted(
            "no supporting place separates the forms".into(),
        ));
    }
    let (_, r1) = order_form(q1);
    let (_, r2) = order_form(q2);
    for v in ordered_finite_pool(&r1, &r2)? {
        if let Some((codim1, cert)) = even_witness_at(&r1, &r2, v, bound)? {
            return Ok(DichotomyReport {
                dims_equal,
                commensurable: false,
                shared_range,
                codim1_witness: if codim1 { Some(cert.clone()) } else { None },
                codim2_witness: if codim1 { None } else { Some(cert) },
            });
        }
    }
    // Places past the support carry trivial Hasse invariants on both
    // sides, so neither pattern can fire there; the scan over the support
    // is exhaustive for these two patterns.
    Err(Error::SearchExhausted(
        "no supporting place admits a certified witness pattern".into(),
    ))
}

/// The parity constraint between the half-dimension n and the number of
/// finite places where a determinant-one admissible form fails to split:
/// the count is even when n is 0 or 1 mod 4 and odd when n is 2 or 3 mod 4.
pub fn maclachlan_parity_ok(n: usize, ramified: usize) -> bool {
    match n % 4 {
        0 | 1 => ramified % 2 == 0,
        _ => ramified % 2 == 1,
    }
}

/// Split/ramified counts of the determinant-one representative over the
/// supporting places, kept as an audit trail for the parametrization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationAudit {
    pub finite_split: usize,
    pub finite_ramified: usize,
    pub real_split: usize,
    pub real_ramified: usize,
    pub parity_ok: bool,
}

/// A commensurability class of odd-dimensional admissible forms in the
/// prime-set parametrization: the half-dimension n, the finite primes where
/// the determinant-one representative fails to split, an optional witness
/// form, and the audit counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaclachlanClass {
    pub n: usize,
    pub primes: BTreeSet<u64>,
    pub witness: Option<DiagonalForm>,
    pub audit: RamificationAudit,
}

/// Read the prime-set parameters off an odd-dimensional admissible form.
/// The form is scaled to its determinant-one representative, which has
/// signature (1, 2n); the class consists of the finite supporting places
/// where that representative is not split. Places outside the support are
/// always split.
pub fn maclachlan_form_to_primes(q: &DiagonalForm) -> Result<MaclachlanClass> {
    if q.dim() % 2 == 0 {
        return Err(Error::EvenDimension);
    }
    ensure_admissible(q)?;
    let n = (q.dim() - 1) / 2;
    let rep = q.scale(&q.det())?;
    debug_assert_eq!(rep.signature(), (1, 2 * n));
    let mut primes = BTreeSet::new();
    let mut finite_places = 0usize;
    for v in rep.support_places()? {
        if let Some(p) = v.prime() {
            finite_places += 1;
            if !tits_index(&rep, v)?.split {
                primes.insert(p);
            }
        }
    }
    let finite_ramified = primes.len();
    let real_split = usize::from(n == 1);
    let audit = RamificationAudit {
        finite_split: finite_places - finite_ramified,
        finite_ramified,
        real_split,
        real_ramified: 1 - real_split,
        parity_ok: maclachlan_parity_ok(n, finite_ramified),
    };
    debug_assert!(audit.parity_ok);
    Ok(MaclachlanClass {
        n,
        primes,
        witness: Some(rep),
        audit,
    })
}

/// Realize a prime set of the right parity as a determinant-one admissible
/// form of dimension 2n + 1 that fails to split exactly at the given
/// primes. The split local Hasse value is -1 exactly at the dyadic place
/// when n(n+1)/2 is odd, so the Hasse minus set is the prime set with the
/// dyadic membership flipped in that case. The output is checked by a full
/// roundtrip.
pub fn maclachlan_primes_to_form(
    n: usize,
    primes: &BTreeSet<u64>,
    bound: u64,
) -> Result<DiagonalForm> {
    if n == 0 {
        return Err(Error::DimensionTooSmall { needed: 3, got: 1 });
    }
    let mut minus_set: BTreeSet<Place> = BTreeSet::new();
    for &p in primes {
        minus_set.insert(Place::finite(p)?);
    }
    if !maclachlan_parity_ok(n, primes.len()) {
        return Err(Error::ParityViolation);
    }
    if (n * (n + 1) / 2) % 2 == 1 {
        let two = Place::Finite(2);
        if !minus_set.remove(&two) {
            minus_set.insert(two);
        }
    }
    let profile = SynthesisProfile {
        dim: 2 * n + 1,
        det: SquareClass::one(),
        signature: (1, 2 * n),
        minus_set,
    };
    let q = synthesize_form(&profile, bound)?;
    let back = maclachlan_form_to_primes(&q)?;
    if back.n != n || back.primes != *primes {
        return Err(Error::SearchExhausted(
            "the synthesized class failed its splitness roundtrip".into(),
        ));
    }
    Ok(q)
}

/// All commensurability classes of dimension 2n + 1 whose prime set uses
/// only primes up to the given bound, each with a realized witness form.
/// Classes are listed by prime set size, then lexicographically.
pub fn maclachlan_enumerate(
    n: usize,
    prime_bound: u64,
    bound: u64,
) -> Result<Vec<MaclachlanClass>> {
    if n == 0 {
        return Err(Error::DimensionTooSmall { needed: 3, got: 1 });
    }
    let mut primes = Vec::new();
    if prime_bound >= 2 {
        let mut p = 2u64;
        while p <= prime_bound {
            primes.push(p);
            p = next_prime(p + 1);
        }
    }
    if primes.len() > 20 {
        return Err(Error::SearchExhausted(
            "too many primes below the bound for exhaustive enumeration".into(),
        ));
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << primes.len()) {
        let subset: BTreeSet<u64> = primes
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &p)| p)
            .collect();
        if !maclachlan_parity_ok(n, subset.len()) {
            continue;
        }
        let witness = maclachlan_primes_to_form(n, &subset, bound)?;
        let class = maclachlan_form_to_primes(&witness)?;
        debug_assert_eq!(class.primes, subset);
        out.push(MaclachlanClass {
            n,
            primes: subset,
            witness: Some(witness),
            audit: class.audit,
        });
    }
    out.sort_by(|a, b| {
        (a.primes.len(), a.primes.iter().collect::<Vec<_>>())
            .cmp(&(b.primes.len(), b.primes.iter().collect::<Vec<_>>()))
    });
    Ok(out)
}
