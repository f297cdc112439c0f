//! Decision procedures over a single completion of the rationals: square
//! classes, isometry, isotropy, Witt index, existence of forms with
//! prescribed invariants, subform representability, and the Tits index of
//! the corresponding special orthogonal group.
//!
//! Everything here is decided from the invariant triple (dim, det, c), or
//! the signature at the real place, never by searching for vectors. The
//! companion Hensel-lifting oracle in the test suite cross-checks that.

use crate::arith::{is_local_square, smallest_nonresidue, unit_part_mod, Rational};
use crate::error::{Error, Result};
use crate::form::DiagonalForm;
use crate::hilbert::hilbert_symbol;
use crate::place::Place;
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A square class of the completion at one place: two classes at the real
/// place, four at an odd prime (valuation parity, residue bit), eight at 2
/// (valuation parity, odd part mod 8).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalSquareClass {
    Real { positive: bool },
    Odd { p: u64, odd_val: bool, nonresidue: bool },
    Dyadic { odd_val: bool, unit_mod8: u8 },
}

impl LocalSquareClass {
    pub fn of(x: &Rational, v: Place) -> Result<Self> {
        use crate::arith::{legendre_of_unit, padic_valuation};
        use num_traits::{Signed, Zero};
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(match v {
            Place::Infinite => LocalSquareClass::Real { positive: x.is_positive() },
            Place::Finite(2) => LocalSquareClass::Dyadic {
                odd_val: padic_valuation(x, 2)? & 1 == 1,
                unit_mod8: unit_part_mod(x, 2, 3)? as u8,
            },
            Place::Finite(p) => LocalSquareClass::Odd {
                p,
                odd_val: padic_valuation(x, p)? & 1 == 1,
                nonresidue: legendre_of_unit(x, p)? == -1,
            },
        })
    }

    pub fn place(&self) -> Place {
        match self {
            LocalSquareClass::Real { .. } => Place::Infinite,
            LocalSquareClass::Odd { p, .. } => Place::Finite(*p),
            LocalSquareClass::Dyadic { .. } => Place::Finite(2),
        }
    }

    /// The trivial class, i.e. the squares themselves.
    pub fn is_one(&self) -> bool {
        match *self {
            LocalSquareClass::Real { positive } => positive,
            LocalSquareClass::Odd { odd_val, nonresidue, .. } => !odd_val && !nonresidue,
            LocalSquareClass::Dyadic { odd_val, unit_mod8 } => !odd_val && unit_mod8 == 1,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (*self, *other) {
            (LocalSquareClass::Real { positive: a }, LocalSquareClass::Real { positive: b }) => {
                Ok(LocalSquareClass::Real { positive: a == b })
            }
            (
                LocalSquareClass::Odd { p, odd_val: e1, nonresidue: n1 },
                LocalSquareClass::Odd { p: q, odd_val: e2, nonresidue: n2 },
            ) if p == q => {
                Ok(LocalSquareClass::Odd { p, odd_val: e1 != e2, nonresidue: n1 != n2 })
            }
            (
                LocalSquareClass::Dyadic { odd_val: e1, unit_mod8: u1 },
                LocalSquareClass::Dyadic { odd_val: e2, unit_mod8: u2 },
            ) => Ok(LocalSquareClass::Dyadic {
                odd_val: e1 != e2,
                unit_mod8: ((u1 as u16 * u2 as u16) % 8) as u8,
            }),
            _ => Err(Error::PlaceMismatch),
        }
    }

    /// A small canonical representative of the class.
    pub fn representative(&self) -> Result<Rational> {
        Ok(match *self {
            LocalSquareClass::Real { positive } => {
                Rational::from(BigInt::from(if positive { 1 } else { -1 }))
            }
            LocalSquareClass::Odd { p, odd_val, nonresidue } => {
                let mut n = if nonresidue { smallest_nonresidue(p)? } else { 1 };
                if odd_val {
                    n *= p;
                }
                Rational::from(BigInt::from(n))
            }
            LocalSquareClass::Dyadic { odd_val, unit_mod8 } => {
                let mut n = unit_mod8 as u64;
                if odd_val {
                    n *= 2;
                }
                Rational::from(BigInt::from(n))
            }
        })
    }

    /// All square classes of the completion at v: 2, 4, or 8 of them.
    pub fn enumerate(v: Place) -> Result<Vec<Self>> {
        Ok(match v {
            Place::Infinite => vec![
                LocalSquareClass::Real { positive: true },
                LocalSquareClass::Real { positive: false },
            ],
            Place::Finite(2) => {
                let mut all = Vec::with_capacity(8);
                for odd_val in [false, true] {
                    for unit_mod8 in [1u8, 3, 5, 7] {
                        all.push(LocalSquareClass::Dyadic { odd_val, unit_mod8 });
                    }
                }
                all
            }
            Place::Finite(p) => {
                Place::finite(p)?;
                let mut all = Vec::with_capacity(4);
                for odd_val in [false, true] {
                    for nonresidue in [false, true] {
                        all.push(LocalSquareClass::Odd { p, odd_val, nonresidue });
                    }
                }
                all
            }
        })
    }
}

impl fmt::Display for LocalSquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.representative() {
            Ok(r) => write!(f, "{r}"),
            Err(_) => write!(f, "<invalid>"),
        }
    }
}

impl Serialize for LocalSquareClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let rep = self.representative().map_err(S::Error::custom)?;
        rep.to_string().serialize(s)
    }
}

/// What determines a form over the completion at one place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalInvariants {
    pub place: Place,
    pub dim: usize,
    pub det_class: LocalSquareClass,
    pub hasse: i8,
    /// Present exactly at the real place.
    pub signature: Option<(usize, usize)>,
}

pub fn local_invariants(q: &DiagonalForm, v: Place) -> Result<LocalInvariants> {
    Ok(LocalInvariants {
        place: v,
        dim: q.dim(),
        det_class: LocalSquareClass::of(&q.det(), v)?,
        hasse: q.hasse(v)?,
        signature: if v == Place::Infinite { Some(q.signature()) } else { None },
    })
}

pub fn local_isometric(q1: &DiagonalForm, q2: &DiagonalForm, v: Place) -> Result<bool> {
    if q1.dim() != q2.dim() {
        return Ok(false);
    }
    match v {
        Place::Infinite => Ok(q1.signature() == q2.signature()),
        _ => Ok(LocalSquareClass::of(&q1.det(), v)? == LocalSquareClass::of(&q2.det(), v)?
            && q1.hasse(v)? == q2.hasse(v)?),
    }
}

// Isotropy from the invariant triple alone. dim 2: -det must be a square;
// dim 3: c = (-1,-det); dim 4: anisotropic exactly when disc is a square
// and c = -(-1,-1); dim >= 5: always isotropic at a finite place.
fn isotropic_from_invariants(
    dim: usize,
    det: &LocalSquareClass,
    c: i8,
    v: Place,
) -> Result<bool> {
    debug_assert!(v.is_finite());
    let d = det.representative()?;
    let minus_one = -Rational::one();
    match dim {
        0 | 1 => Ok(false),
        2 => is_local_square(&(-&d), v),
        3 => Ok(c == hilbert_symbol(&minus_one, &(-&d), v)?),
        4 => {
            // disc = det in dimension 4.
            let aniso = is_local_square(&d, v)?
                && c == -hilbert_symbol(&minus_one, &minus_one, v)?;
            Ok(!aniso)
        }
        _ => Ok(true),
    }
}

pub fn local_isotropic(q: &DiagonalForm, v: Place) -> Result<bool> {
    match v {
        Place::Infinite => {
            let (pos, neg) = q.signature();
            Ok(pos > 0 && neg > 0)
        }
        _ => {
            let det = LocalSquareClass::of(&q.det(), v)?;
            isotropic_from_invariants(q.dim(), &det, q.hasse(v)?, v)
        }
    }
}

/// Number of hyperbolic planes split off by q over the completion at v.
///
/// Computed by invariant bookkeeping: splitting off <1,-1> sends the triple
/// (m, d, c) to (m-2, -d, c*(-1,-d)_v), by the direct-sum product rule.
pub fn local_witt_index(q: &DiagonalForm, v: Place) -> Result<usize> {
    if v == Place::Infinite {
        let (pos, neg) = q.signature();
        return Ok(pos.min(neg));
    }
    let mut dim = q.dim();
    let mut det = LocalSquareClass::of(&q.det(), v)?;
    let mut c = q.hasse(v)?;
    let minus_one_class = LocalSquareClass::of(&-Rational::one(), v)?;
    let mut witt = 0;
    while dim >= 2 && isotropic_from_invariants(dim, &det, c, v)? {
        let d = det.representative()?;
        c *= hilbert_symbol(&-Rational::one(), &(-&d), v)?;
        det = det.mul(&minus_one_class)?;
        dim -= 2;
        witt += 1;
    }
    Ok(witt)
}

/// Whether a form over the completion at finite v with the given invariants
/// exists. Everything is realizable except two corner cases: c = -1 is
/// impossible when dim = 1, and when dim = 2 with det in the class of -1
/// (because then c(<a,b>) = (a,-a) = 1).
pub fn local_form_exists(dim: usize, det: &LocalSquareClass, c: i8, v: Place) -> Result<bool> {
    if dim == 0 {
        return Err(Error::EmptyForm);
    }
    if !v.is_finite() {
        return Err(Error::PreconditionViolated(
            "existence test applies at finite places; use signatures at the real place".into(),
        ));
    }
    if det.place() != v {
        return Err(Error::PlaceMismatch);
    }
    debug_assert!(c == 1 || c == -1);
    if c == 1 {
        return Ok(true);
    }
    if dim == 1 {
        return Ok(false);
    }
    if dim == 2 {
        let minus_one = LocalSquareClass::of(&-Rational::one(), v)?;
        return Ok(*det != minus_one);
    }
    Ok(true)
}

/// Build some form over the completion at finite v with the given invariants,
/// or None when excluded by the existence restriction. Entries are global
/// rationals that realize the local data at v.
pub fn local_form_with(
    dim: usize,
    det: &LocalSquareClass,
    c: i8,
    v: Place,
) -> Result<Option<DiagonalForm>> {
    if !local_form_exists(dim, det, c, v)? {
        return Ok(None);
    }
    if dim == 1 {
        return Ok(Some(DiagonalForm::new(vec![det.representative()?])?));
    }
    if dim == 2 {
        // <a, a*d>: determinant class d, Hasse (a, a*d) = (a, -d) after
        // discarding the square a^2. Scan classes for the right symbol.
        let d = det.representative()?;
        for a_cls in LocalSquareClass::enumerate(v)? {
            let a = a_cls.representative()?;
            let b = &a * &d;
            if hilbert_symbol(&a, &b, v)? == c {
                return Ok(Some(DiagonalForm::new(vec![a, b])?));
            }
        }
        unreachable!("existence test admitted an unrealizable binary profile");
    }
    // dim >= 3: a head of ones in front of a ternary tail <a, b, ab*d>
    // carrying the whole invariant load; the head contributes nothing to
    // det or c, and ternary forms have no existence restriction.
    let d = det.representative()?;
    for a_cls in LocalSquareClass::enumerate(v)? {
        let a = a_cls.representative()?;
        for b_cls in LocalSquareClass::enumerate(v)? {
            let b = b_cls.representative()?;
            let third = &a * &b * &d;
            let tail = DiagonalForm::new(vec![a.clone(), b, third])?;
            if tail.hasse(v)? != c {
                continue;
            }
            if dim == 3 {
                return Ok(Some(tail));
            }
            let ones = DiagonalForm::new(vec![Rational::one(); dim - 3])?;
            return Ok(Some(ones.direct_sum(&tail)));
        }
    }
    unreachable!("ternary forms realize every (det, c) pair")
}

/// Is r isometric to a subform of q over the completion at v?
///
/// At the real place this is containment of signatures. At a finite place
/// the complement t has forced invariants (dim q - dim r, det q/det r, and
/// c(t) = c(q)c(r)(det r, det t)), so the answer is whether such a t exists;
/// in codimension 1 and 2 the forced form is constructed and the direct sum
/// checked, which guards the corner cases of the existence restriction.
pub fn local_subform(r: &DiagonalForm, q: &DiagonalForm, v: Place) -> Result<bool> {
    if r.dim() > q.dim() {
        return Err(Error::DimensionExceeded);
    }
    if v == Place::Infinite {
        let (rp, rn) = r.signature();
        let (qp, qn) = q.signature();
        return Ok(rp <= qp && rn <= qn);
    }
    let t_dim = q.dim() - r.dim();
    if t_dim == 0 {
        return local_isometric(r, q, v);
    }
    let det_t = q.det() / r.det();
    let c_t = q.hasse(v)? * r.hasse(v)? * hilbert_symbol(&r.det(), &det_t, v)?;
    let det_t_class = LocalSquareClass::of(&det_t, v)?;
    if t_dim >= 3 {
        // Complements of dimension >= 3 always exist and the direct sum
        // matches q by local uniqueness of the invariant triple.
        return Ok(true);
    }
    match local_form_with(t_dim, &det_t_class, c_t, v)? {
        None => Ok(false),
        Some(t) => local_isometric(&r.direct_sum(&t), q, v),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TitsFamily {
    #[serde(rename = "B")]
    B,
    #[serde(rename = "D_inner")]
    DInner,
    #[serde(rename = "D_outer")]
    DOuter,
}

/// The Tits index of SO(q) over the completion: its family, half-rank n,
/// and local Witt index r, as in the symbols B_{n,r}, 1D_{n,r}, 2D_{n,r}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TitsIndex {
    pub family: TitsFamily,
    pub n: usize,
    pub witt_index: usize,
    pub split: bool,
}

impl TitsIndex {
    pub fn label(&self) -> String {
        let prefix = match self.family {
            TitsFamily::B => "B",
            TitsFamily::DInner => "1D",
            TitsFamily::DOuter => "2D",
        };
        format!("{}_{{{},{}}}", prefix, self.n, self.witt_index)
    }
}

impl fmt::Display for TitsIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Tits index of SO(q) at v for dim q >= 3.
///
/// Odd dim 2n+1: split B_{n,n} exactly when
/// c(q) = (-1,-1)^(n(n-3)/2) (-1, det q)^n, else B_{n,n-1}.
/// Even dim 2n with square discriminant: inner type, split 1D_{n,n} when
/// c(q) = (-1,-1)^(n(n-1)/2), else 1D_{n,n-2}. Nonsquare discriminant:
/// outer type 2D_{n,n-1}. At the real place the Witt index is min of the
/// signature and the family is read off the sign of the discriminant.
pub fn tits_index(q: &DiagonalForm, v: Place) -> Result<TitsIndex> {
    let m = q.dim();
    if m < 3 {
        return Err(Error::DimensionTooSmall { needed: 3, got: m });
    }
    let n = m / 2;
    let odd = m % 2 == 1;
    let witt = local_witt_index(q, v)?;
    let family = if odd {
        TitsFamily::B
    } else if is_local_square(&q.disc(), v)? {
        TitsFamily::DInner
    } else {
        TitsFamily::DOuter
    };
    let split = match family {
        TitsFamily::B | TitsFamily::DInner => witt == n,
        TitsFamily::DOuter => false,
    };
    let idx = TitsIndex { family, n, witt_index: witt, split };
    if v.is_finite() {
        // The subscript must land where the classification says it does.
        debug_assert!(match family {
            TitsFamily::B => witt == n || witt == n - 1,
            TitsFamily::DInner => witt == n || witt == n - 2,
            TitsFamily::DOuter => witt == n - 1,
        });
        debug_assert_eq!(split, split_value_check(q, v)?, "Witt stripping disagrees with the split criterion");
    }
    Ok(idx)
}

// The closed-form split criterion, kept as a cross-check against the
// stripping computation in local_witt_index.
fn split_value_check(q: &DiagonalForm, v: Place) -> Result<bool> {
    let m = q.dim();
    let n = (m / 2) as i64;
    let minus_one = -Rational::one();
    let mm = hilbert_symbol(&minus_one, &minus_one, v)?;
    let c = q.hasse(v)?;
    if m % 2 == 1 {
        let mut target = 1i8;
        if (n * (n - 3) / 2).rem_euclid(2) == 1 {
            target *= mm;
        }
        if n % 2 == 1 {
            target *= hilbert_symbol(&minus_one, &q.det(), v)?;
        }
        Ok(c == target)
    } else {
        if !is_local_square(&q.disc(), v)? {
            return Ok(false);
        }
        let mut target = 1i8;
        if (n * (n - 1) / 2).rem_euclid(2) == 1 {
            target *= mm;
        }
        Ok(c == target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn form(entries: &[i64]) -> DiagonalForm {
        DiagonalForm::from_ints(entries).unwrap()
    }

    #[test]
    fn square_class_structure() {
        assert_eq!(LocalSquareClass::enumerate(Place::Infinite).unwrap().len(), 2);
        assert_eq!(LocalSquareClass::enumerate(Place::Finite(7)).unwrap().len(), 4);
        assert_eq!(LocalSquareClass::enumerate(Place::Finite(2)).unwrap().len(), 8);
        for v in [Place::Infinite, Place::Finite(2), Place::Finite(5)] {
            for cls in LocalSquareClass::enumerate(v).unwrap() {
                let rep = cls.representative().unwrap();
                assert_eq!(LocalSquareClass::of(&rep, v).unwrap(), cls);
                assert!(cls.mul(&cls).unwrap().is_one());
            }
        }
        // -1 is a residue mod 5 but not mod 3.
        assert!(LocalSquareClass::of(&rat(-1, 1), Place::Finite(5)).unwrap().is_one());
        assert!(!LocalSquareClass::of(&rat(-1, 1), Place::Finite(3)).unwrap().is_one());
        let a = LocalSquareClass::of(&rat(3, 1), Place::Finite(2)).unwrap();
        let b = LocalSquareClass::of(&rat(5, 1), Place::Finite(2)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), LocalSquareClass::of(&rat(15, 1), Place::Finite(2)).unwrap());
        assert_eq!(
            a.mul(&LocalSquareClass::Real { positive: true }),
            Err(Error::PlaceMismatch)
        );
    }

    #[test]
    fn invariants_at_places() {
        let li = local_invariants(&form(&[1, 1, 5, -1]), Place::Finite(3)).unwrap();
        assert!(li.det_class.is_one());
        assert_eq!(li.hasse, 1);
        let li = local_invariants(&form(&[1, 1, 1, 1, -5]), Place::Infinite).unwrap();
        assert_eq!(li.signature, Some((4, 1)));
        let li = local_invariants(&form(&[1, 1, 3, 3]), Place::Finite(3)).unwrap();
        assert!(li.det_class.is_one());
        assert_eq!(li.hasse, -1);
    }

    #[test]
    fn isometry_checks() {
        assert!(local_isometric(&form(&[1, 1]), &form(&[2, 2]), Place::Finite(5)).unwrap());
        assert!(!local_isometric(&form(&[1, 1]), &form(&[1, -1]), Place::Infinite).unwrap());
        let q1 = form(&[1, 1, 1, 1, -5]);
        let q2 = form(&[1, 1, 3, 3, -5]);
        assert!(!local_isometric(&q1, &q2, Place::Finite(3)).unwrap());
        assert!(local_isometric(&q1, &q2, Place::Infinite).unwrap());
    }

    #[test]
    fn isotropy() {
        assert!(!local_isotropic(&form(&[1, 1]), Place::Finite(3)).unwrap());
        assert!(local_isotropic(&form(&[1, 1]), Place::Finite(5)).unwrap());
        assert!(!local_isotropic(&form(&[1, 1, 3, 3]), Place::Finite(3)).unwrap());
        assert!(local_isotropic(&form(&[1, -1]), Place::Infinite).unwrap());
        assert!(!local_isotropic(&form(&[1, 1, 1]), Place::Infinite).unwrap());
        for p in [2u64, 3, 5, 7, 11] {
            assert!(local_isotropic(&form(&[1, 1, 1, 1, -5]), Place::Finite(p)).unwrap());
            assert!(local_isotropic(&form(&[1, 2, 3, 4, 5]), Place::Finite(p)).unwrap());
        }
    }

    #[test]
    fn witt_indices() {
        for v in [Place::Infinite, Place::Finite(2), Place::Finite(3), Place::Finite(7)] {
            assert_eq!(local_witt_index(&form(&[1, -1, 1, -1]), v).unwrap(), 2);
        }
        assert_eq!(local_witt_index(&form(&[1, 1, 3, 3]), Place::Finite(3)).unwrap(), 0);
        assert_eq!(local_witt_index(&form(&[1, 1, 1, 1, -5]), Place::Finite(3)).unwrap(), 2);
        assert_eq!(local_witt_index(&form(&[1, 1, 1, 1, -5]), Place::Infinite).unwrap(), 1);
    }

    #[test]
    fn existence_restriction() {
        let p = Place::Finite(3);
        let minus_one = LocalSquareClass::of(&rat(-1, 1), p).unwrap();
        let one = LocalSquareClass::of(&rat(1, 1), p).unwrap();
        assert!(!local_form_exists(2, &minus_one, -1, p).unwrap());
        assert!(!local_form_exists(1, &minus_one, -1, p).unwrap());
        assert!(local_form_exists(1, &minus_one, 1, p).unwrap());
        assert!(local_form_exists(3, &one, -1, p).unwrap());
        assert!(local_form_exists(2, &one, -1, p).unwrap());
        // At p = 5, the class of -1 is the trivial class, so a binary form
        // of square determinant cannot have c = -1 there.
        let p5 = Place::Finite(5);
        let one5 = LocalSquareClass::of(&rat(1, 1), p5).unwrap();
        assert_eq!(one5, LocalSquareClass::of(&rat(-1, 1), p5).unwrap());
        assert!(!local_form_exists(2, &one5, -1, p5).unwrap());
    }

    #[test]
    fn realization_hits_requested_invariants() {
        for v in [Place::Finite(2), Place::Finite(3), Place::Finite(5)] {
            for dim in 1..=5usize {
                for det in LocalSquareClass::enumerate(v).unwrap() {
                    for c in [1i8, -1] {
                        let exists = local_form_exists(dim, &det, c, v).unwrap();
                        match local_form_with(dim, &det, c, v).unwrap() {
                            None => assert!(!exists),
                            Some(t) => {
                                assert!(exists);
                                assert_eq!(t.dim(), dim);
                                assert_eq!(LocalSquareClass::of(&t.det(), v).unwrap(), det);
                                assert_eq!(t.hasse(v).unwrap(), c);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subform_tests() {
        let r = form(&[1, 1, 1, -5]);
        let q = form(&[1, 1, 1, 1, -5]);
        for v in [Place::Infinite, Place::Finite(2), Place::Finite(3), Place::Finite(5)] {
            assert!(local_subform(&r, &q, v).unwrap(), "{v}");
        }
        assert!(!local_subform(&form(&[1, 1]), &form(&[1, -1, -1]), Place::Infinite).unwrap());
        for p in [2u64, 3] {
            assert!(local_subform(&form(&[1]), &form(&[1, -1]), Place::Finite(p)).unwrap());
        }
        assert_eq!(local_subform(&q, &r, Place::Finite(3)), Err(Error::DimensionExceeded));
        // Codimension 0 reduces to isometry.
        assert!(local_subform(&form(&[1, 1]), &form(&[2, 2]), Place::Finite(5)).unwrap());
        assert!(!local_subform(&form(&[1, 1]), &form(&[1, -1]), Place::Infinite).unwrap());
    }

    #[test]
    fn tits_indices_of_known_forms() {
        let t = tits_index(&form(&[1, -1, 1, -1]), Place::Finite(3)).unwrap();
        assert_eq!(t.label(), "1D_{2,2}");
        assert!(t.split);
        let t = tits_index(&form(&[1, 1, 3, 3]), Place::Finite(3)).unwrap();
        assert_eq!(t.label(), "1D_{2,0}");
        assert!(!t.split);
        let t = tits_index(&form(&[1, 1, 1, 1, -5]), Place::Finite(3)).unwrap();
        assert_eq!(t.label(), "B_{2,2}");
        assert!(t.split);
        let t = tits_index(&form(&[1, 1, 1, 1, -5]), Place::Infinite).unwrap();
        assert_eq!(t.label(), "B_{2,1}");
        assert!(!t.split);
        // Signature (3,1): negative discriminant, outer type at infinity.
        let t = tits_index(&form(&[1, 1, 1, -1]), Place::Infinite).unwrap();
        assert_eq!(t.label(), "2D_{2,1}");
        assert_eq!(
            tits_index(&form(&[1, 1]), Place::Finite(3)),
            Err(Error::DimensionTooSmall { needed: 3, got: 2 })
        );
    }

    #[test]
    fn codimension_one_deletions_of_split_even_forms() {
        // From a split even form, every codimension-1 deletion is a split
        // odd form; from the quasi-split non-split one, never split.
        let v = Place::Finite(3);
        let split = form(&[1, -1, 1, -1]);
        for i in 0..4 {
            let r = split.delete_entries(&[i]).unwrap();
            let t = tits_index(&r, v).unwrap();
            assert_eq!(t.label(), "B_{1,1}");
        }
        let aniso = form(&[1, 1, 3, 3]);
        for i in 0..4 {
            let r = aniso.delete_entries(&[i]).unwrap();
            let t = tits_index(&r, v).unwrap();
            assert_eq!(t.label(), "B_{1,0}");
        }
    }
}
