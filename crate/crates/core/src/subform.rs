//! Construction of distinguishing subforms and the certificates that attest
//! them.
//!
//! Two forms can agree in dimension and real signature yet disagree in a
//! local invariant at a single finite place. Such a disagreement can be
//! turned into a concrete witness: a subform r of one form, isotropic at the
//! real place, no scale of which embeds in the other form. The witness comes
//! in four patterns, keyed by the parity of the ambient dimension and by
//! which place carries the obstruction:
//!
//! - odd dimension, codimension 1: the determinants of both forms are local
//!   squares at the place, their Hasse invariants differ, and a codimension-1
//!   subform with locally square discriminant pins the Hasse invariant of any
//!   ambient form containing a scale of it;
//! - even dimension, codimension 1: both discriminants are local squares but
//!   exactly one form is locally split; the local Witt index bounds every
//!   codimension-1 subform of the non-split form away from split;
//! - even dimension, codimension 2: exactly one discriminant is a local
//!   square; a codimension-2 subform of the non-square side with locally
//!   square discriminant forces a hyperbolic binary complement at the place,
//!   again pinning the Hasse invariant of the containing form;
//! - real place: for some intermediate dimensions a signature count alone
//!   excludes the witness from the other form.
//!
//! A certificate records only quantities a verifier can recompute from the
//! stored forms: dimensions, local square class memberships, Hasse
//! invariants, Tits indices, and the forced value whose mismatch is the
//! obstruction. `verify_certificate` recomputes everything from scratch and
//! accepts no stored value on faith.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::arith::{factor_rational, squarefree_part, Rational};
use crate::error::{Error, Result};
use crate::form::DiagonalForm;
use crate::global::{
    globally_isometric, is_subform, square_existence, synthesize_form, union_support,
    SquareClassConstraint, SynthesisProfile,
};
use crate::hilbert::hilbert_symbol;
use crate::local::{local_subform, tits_index, LocalSquareClass, TitsFamily, TitsIndex};
use crate::place::Place;
use crate::square_class::SquareClass;

/// Local data for the odd-dimensional codimension-1 pattern. Any embedding
/// of a scale of r into an ambient form with the same determinant class
/// forces that form's Hasse invariant at v0 to equal `forced_hasse`, because
/// the discriminant of r is a local square there: scaling changes neither
/// the determinant class nor the Hasse invariant of r at v0, and the
/// one-dimensional complement contributes only the recorded symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCodim1Data {
    pub det_q1_square: bool,
    pub det_q2_square: bool,
    pub hasse_q1: i8,
    pub hasse_q2: i8,
    pub hasse_r: i8,
    pub disc_r_square: bool,
    pub complement_symbol: i8,
    pub forced_hasse: i8,
}

/// Local data for the even-dimensional codimension-1 pattern. The witness is
/// split at v0 while every codimension-1 subform of q2 has local Witt index
/// at most `subform_witt_bound` there, and the Witt index is invariant under
/// scaling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenCodim1Data {
    pub disc_q1_square: bool,
    pub disc_q2_square: bool,
    pub tits_q1: TitsIndex,
    pub tits_q2: TitsIndex,
    pub tits_r: TitsIndex,
    pub subform_witt_bound: usize,
}

/// Local data for the even-dimensional codimension-2 pattern. The witness
/// sits inside q2; were a scale of it to embed in q1, the binary complement
/// would have determinant in the class of -1 at v0, hence be hyperbolic
/// there, forcing the Hasse invariant of q1 to equal `forced_hasse`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenCodim2Data {
    pub disc_q1_square: bool,
    pub disc_q2_square: bool,
    pub hasse_q1: i8,
    pub hasse_q2: i8,
    pub twist_symbol: i8,
    pub disc_r_square: bool,
    pub complement_det_minus: bool,
    pub forced_hasse: i8,
}

/// Data for the real-place pattern: the witness is a deletion subform of one
/// of the two forms, isotropic over the reals, whose signature fits neither
/// the other form's signature nor its negation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealPlaceData {
    pub which: u8,
    pub deleted: BTreeSet<usize>,
    pub sig_q1: (usize, usize),
    pub sig_q2: (usize, usize),
    pub sig_r: (usize, usize),
    pub excluded_sig: (usize, usize),
}

/// A checkable record that the subform r distinguishes the pair (q1, q2):
/// r embeds in its designated ambient form, stays isotropic at the real
/// place when the ambient form is, and no scale of r embeds in the other
/// form. All stored data can be recomputed from the forms and the place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SubformCertificate {
    #[serde(rename = "odd-codim-1")]
    OddCodim1 {
        q1: DiagonalForm,
        q2: DiagonalForm,
        r: DiagonalForm,
        v0: Place,
        data: OddCodim1Data,
    },
    #[serde(rename = "even-codim-1")]
    EvenCodim1 {
        q1: DiagonalForm,
        q2: DiagonalForm,
        r: DiagonalForm,
        v0: Place,
        data: EvenCodim1Data,
    },
    #[serde(rename = "even-codim-2")]
    EvenCodim2 {
        q1: DiagonalForm,
        q2: DiagonalForm,
        r: DiagonalForm,
        v0: Place,
        data: EvenCodim2Data,
    },
    #[serde(rename = "real-place")]
    RealPlace {
        q1: DiagonalForm,
        q2: DiagonalForm,
        r: DiagonalForm,
        v0: Place,
        data: RealPlaceData,
    },
}

fn is_square_at(x: &Rational, v: Place) -> Result<bool> {
    Ok(LocalSquareClass::of(x, v)?.is_one())
}

// r must be isotropic at the real place whenever the ambient form is.
fn keeps_real_isotropy(ambient: &DiagonalForm, r: &DiagonalForm) -> bool {
    let (ap, am) = ambient.signature();
    let (rp, rm) = r.signature();
    !(ap >= 1 && am >= 1) || (rp >= 1 && rm >= 1)
}

fn fits(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 <= b.0 && a.1 <= b.1
}

fn real_unit(positive: bool) -> Rational {
    if positive {
        Rational::one()
    } else {
        -Rational::one()
    }
}

impl SubformCertificate {
    pub fn witness(&self) -> &DiagonalForm {
        match self {
            SubformCertificate::OddCodim1 { r, .. }
            | SubformCertificate::EvenCodim1 { r, .. }
            | SubformCertificate::EvenCodim2 { r, .. }
            | SubformCertificate::RealPlace { r, .. } => r,
        }
    }

    pub fn place(&self) -> Place {
        match self {
            SubformCertificate::OddCodim1 { v0, .. }
            | SubformCertificate::EvenCodim1 { v0, .. }
            | SubformCertificate::EvenCodim2 { v0, .. }
            | SubformCertificate::RealPlace { v0, .. } => *v0,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SubformCertificate::OddCodim1 { .. } => "odd-codim-1",
            SubformCertificate::EvenCodim1 { .. } => "even-codim-1",
            SubformCertificate::EvenCodim2 { .. } => "even-codim-2",
            SubformCertificate::RealPlace { .. } => "real-place",
        }
    }

    /// Certify a given witness for the odd-dimensional codimension-1
    /// pattern: r inside q1, obstruction against q2 at the finite place v0.
    pub fn odd_codim1(
        q1: &DiagonalForm,
        q2: &DiagonalForm,
        r: &DiagonalForm,
        v0: Place,
    ) -> Result<SubformCertificate> {
        let m = q1.dim();
        if !v0.is_finite() {
            return Err(Error::HypothesesViolated(
                "the distinguishing place must be finite".into(),
            ));
        }
        if q2.dim() != m {
            return Err(Error::HypothesesViolated(
                "ambient forms must share a dimension".into(),
            ));
        }
        if m % 2 == 0 || m < 5 {
            return Err(Error::HypothesesViolated(
                "this pattern needs odd dimension at least 5".into(),
            ));
        }
        if r.dim() + 1 != m {
            return Err(Error::HypothesesViolated(
                "the witness must have codimension 1".into(),
            ));
        }
        if q1.signature() != q2.signature() {
            return Err(Error::HypothesesViolated(
                "forms must be isometric at the real place".into(),
            ));
        }
        let det_q1_square = is_square_at(&q1.det(), v0)?;
        let det_q2_square = is_square_at(&q2.det(), v0)?;
        if !det_q1_square || !det_q2_square {
            return Err(Error::HypothesesViolated(
                "both determinants must be local squares at the place".into(),
            ));
        }
        let hasse_q1 = q1.hasse(v0)?;
        let hasse_q2 = q2.hasse(v0)?;
        if hasse_q1 == hasse_q2 {
            return Err(Error::HypothesesViolated(
                "equal Hasse invariants leave nothing to distinguish".into(),
            ));
        }
        let disc_r_square = is_square_at(&r.disc(), v0)?;
        if !disc_r_square {
            return Err(Error::HypothesesViolated(
                "the witness discriminant must be a local square at the place".into(),
            ));
        }
        if !is_subform(r, q1)? {
            return Err(Error::HypothesesViolated(
                "the witness does not embed in the first form".into(),
            ));
        }
        if !keeps_real_isotropy(q1, r) {
            return Err(Error::HypothesesViolated(
                "the witness must stay isotropic at the real place".into(),
            ));
        }
        let hasse_r = r.hasse(v0)?;
        let complement_symbol = hilbert_symbol(&r.det(), &(q2.det() * r.det()), v0)?;
        let forced_hasse = hasse_r * complement_symbol;
        // With both determinants locally square the forced value equals the
        // Hasse invariant of q1, so the mismatch below cannot fail; it is
        // kept as an explicit hypothesis rather than an inference.
        if forced_hasse == hasse_q2 {
            return Err(Error::HypothesesViolated(
                "the witness fails to force a Hasse contradiction".into(),
            ));
        }
        Ok(SubformCertificate::OddCodim1 {
            q1: q1.clone(),
            q2: q2.clone(),
            r: r.clone(),
            v0,
            data: OddCodim1Data {
                det_q1_square,
                det_q2_square,
                hasse_q1,
                hasse_q2,
                hasse_r,
                disc_r_square,
                complement_symbol,
                forced_hasse,
            },
        })
    }

    /// Certify a given witness for the even-dimensional codimension-1
    /// pattern: r inside the locally split form q1, obstruction against the
    /// locally non-split form q2 at v0.
    pub fn even_codim1(
        q1: &DiagonalForm,
        q2: &DiagonalForm,
        r: &DiagonalForm,
        v0: Place,
    ) -> Result<SubformCertificate> {
        let m = q1.dim();
        if !v0.is_finite() {
            return Err(Error::HypothesesViolated(
                "the distinguishing place must be finite".into(),
            ));
        }
        if q2.dim() != m {
            return Err(Error::HypothesesViolated(
                "ambient forms must share a dimension".into(),
            ));
        }
        if m % 2 != 0 || m < 4 {
            return Err(Error::HypothesesViolated(
                "this pattern needs even dimension at least 4".into(),
            ));
        }
        if r.dim() + 1 != m {
            return Err(Error::HypothesesViolated(
                "the witness must have codimension 1".into(),
            ));
        }
        if q1.signature() != q2.signature() {
            return Err(Error::HypothesesViolated(
                "forms must be isometric at the real place".into(),
            ));
        }
        let disc_q1_square = is_square_at(&q1.disc(), v0)?;
        let disc_q2_square = is_square_at(&q2.disc(), v0)?;
        if !disc_q1_square || !disc_q2_square {
            return Err(Error::HypothesesViolated(
                "both discriminants must be local squares at the place".into(),
            ));
        }
        let n = m / 2;
        let tits_q1 = tits_index(q1, v0)?;
        if !(tits_q1.family == TitsFamily::DInner && tits_q1.split) {
            return Err(Error::HypothesesViolated(
                "the first form must be split at the place".into(),
            ));
        }
        let tits_q2 = tits_index(q2, v0)?;
        if !(tits_q2.family == TitsFamily::DInner && tits_q2.witt_index + 2 == n) {
            return Err(Error::HypothesesViolated(
                "the second form must have local Witt defect 2 at the place".into(),
            ));
        }
        let tits_r = tits_index(r, v0)?;
        if !tits_r.split {
            return Err(Error::HypothesesViolated(
                "the witness must be split at the place".into(),
            ));
        }
        if !is_subform(r, q1)? {
            return Err(Error::HypothesesViolated(
                "the witness does not embed in the first form".into(),
            ));
        }
        if !keeps_real_isotropy(q1, r) {
            return Err(Error::HypothesesViolated(
                "the witness must stay isotropic at the real place".into(),
            ));
        }
        Ok(SubformCertificate::EvenCodim1 {
            q1: q1.clone(),
            q2: q2.clone(),
            r: r.clone(),
            v0,
            data: EvenCodim1Data {
                disc_q1_square,
                disc_q2_square,
                tits_q1,
                tits_q2,
                tits_r,
                subform_witt_bound: tits_q2.witt_index,
            },
        })
    }

    /// Certify a given witness for the even-dimensional codimension-2
    /// pattern: r inside q2 (the form with locally non-square discriminant),
    /// obstruction against q1 at v0.
    pub fn even_codim2(
        q1: &DiagonalForm,
        q2: &DiagonalForm,
        r: &DiagonalForm,
        v0: Place,
    ) -> Result<SubformCertificate> {
        let m = q1.dim();
        if !v0.is_finite() {
            return Err(Error::HypothesesViolated(
                "the distinguishing place must be finite".into(),
            ));
        }
        if q2.dim() != m {
            return Err(Error::HypothesesViolated(
                "ambient forms must share a dimension".into(),
            ));
        }
        if m % 2 != 0 || m < 6 {
            return Err(Error::HypothesesViolated(
                "this pattern needs even dimension at least 6".into(),
            ));
        }
        if r.dim() + 2 != m {
            return Err(Error::HypothesesViolated(
                "the witness must have codimension 2".into(),
            ));
        }
        if q1.signature() != q2.signature() {
            return Err(Error::HypothesesViolated(
                "forms must be isometric at the real place".into(),
            ));
        }
        let disc_q1_square = is_square_at(&q1.disc(), v0)?;
        let disc_q2_square = is_square_at(&q2.disc(), v0)?;
        if !disc_q1_square {
            return Err(Error::HypothesesViolated(
                "the first discriminant must be a local square at the place".into(),
            ));
        }
        if disc_q2_square {
            return Err(Error::HypothesesViolated(
                "the second discriminant must not be a local square at the place".into(),
            ));
        }
        let half = (m - 2) / 2;
        let twist_symbol = if half % 2 == 1 {
            hilbert_symbol(&-Rational::one(), &q2.disc(), v0)?
        } else {
            1
        };
        let hasse_q1 = q1.hasse(v0)?;
        let hasse_q2 = q2.hasse(v0)?;
        if hasse_q1 == hasse_q2 * twist_symbol {
            return Err(Error::HypothesesViolated(
                "the Hasse inequality hypothesis fails at the place".into(),
            ));
        }
        let disc_r_square = is_square_at(&r.disc(), v0)?;
        if !disc_r_square {
            return Err(Error::HypothesesViolated(
                "the witness discriminant must be a local square at the place".into(),
            ));
        }
        if !is_subform(r, q2)? {
            return Err(Error::HypothesesViolated(
                "the witness does not embed in the second form".into(),
            ));
        }
        if !keeps_real_isotropy(q2, r) {
            return Err(Error::HypothesesViolated(
                "the witness must stay isotropic at the real place".into(),
            ));
        }
        let complement_det = q1.det() * r.det();
        let complement_det_minus = is_square_at(&-complement_det.clone(), v0)?;
        // Automatic from the two discriminant conditions, kept explicit.
        if !complement_det_minus {
            return Err(Error::HypothesesViolated(
                "the forced binary complement is not locally hyperbolic".into(),
            ));
        }
        let forced_hasse = r.hasse(v0)? * hilbert_symbol(&r.det(), &complement_det, v0)?;
        if forced_hasse == hasse_q1 {
            return Err(Error::HypothesesViolated(
                "the witness fails to force a Hasse contradiction".into(),
            ));
        }
        Ok(SubformCertificate::EvenCodim2 {
            q1: q1.clone(),
            q2: q2.clone(),
            r: r.clone(),
            v0,
            data: EvenCodim2Data {
                disc_q1_square,
                disc_q2_square,
                hasse_q1,
                hasse_q2,
                twist_symbol,
                disc_r_square,
                complement_det_minus,
                forced_hasse,
            },
        })
    }

    /// Certify a real-place witness: the deletion subform of the chosen host
    /// (`which` is 1 or 2) obtained by removing the listed entries.
    pub fn real_place(
        q1: &DiagonalForm,
        q2: &DiagonalForm,
        which: u8,
        deleted: &BTreeSet<usize>,
    ) -> Result<SubformCertificate> {
        if which != 1 && which != 2 {
            return Err(Error::NotApplicable("the host selector must be 1 or 2".into()));
        }
        let m = q1.dim();
        if q2.dim() != m {
            return Err(Error::NotApplicable("forms must share a dimension".into()));
        }
        if m < 5 {
            return Err(Error::NotApplicable(
                "the real obstruction needs dimension at least 5".into(),
            ));
        }
        let host = if which == 1 { q1 } else { q2 };
        let other_sig = if which == 1 { q2.signature() } else { q1.signature() };
        let idx: Vec<usize> = deleted.iter().copied().collect();
        let r = host.delete_entries(&idx)?;
        if r.dim() < 2 {
            return Err(Error::NotApplicable(
                "the witness must keep at least two entries".into(),
            ));
        }
        let sig_r = r.signature();
        if sig_r.0 == 0 || sig_r.1 == 0 {
            return Err(Error::NotApplicable(
                "the witness must be isotropic at the real place".into(),
            ));
        }
        if fits(sig_r, other_sig) || fits((sig_r.1, sig_r.0), other_sig) {
            return Err(Error::NotApplicable(
                "the witness embeds in the other form up to sign".into(),
            ));
        }
        Ok(SubformCertificate::RealPlace {
            q1: q1.clone(),
            q2: q2.clone(),
            r: r.clone(),
            v0: Place::Infinite,
            data: RealPlaceData {
                which,
                deleted: deleted.clone(),
                sig_q1: q1.signature(),
                sig_q2: q2.signature(),
                sig_r,
                excluded_sig: other_sig,
            },
        })
    }
}

/// Recompute every recorded quantity from the stored forms and place, check
/// the hypotheses, and confirm the recorded obstruction. Any tampering with
/// the forms, the place, or the data fields makes some recomputation
/// disagree. Internal failures count as rejection.
pub fn verify_certificate(cert: &SubformCertificate) -> bool {
    check_certificate(cert).unwrap_or(false)
}

fn check_certificate(cert: &SubformCertificate) -> Result<bool> {
    match cert {
        SubformCertificate::OddCodim1 { q1, q2, r, v0, data } => {
            let m = q1.dim();
            if q2.dim() != m || m % 2 == 0 || m < 5 || r.dim() + 1 != m || !v0.is_finite() {
                return Ok(false);
            }
            if q1.signature() != q2.signature() {
                return Ok(false);
            }
            let det_q1_square = is_square_at(&q1.det(), *v0)?;
            let det_q2_square = is_square_at(&q2.det(), *v0)?;
            let hasse_q1 = q1.hasse(*v0)?;
            let hasse_q2 = q2.hasse(*v0)?;
            let hasse_r = r.hasse(*v0)?;
            let disc_r_square = is_square_at(&r.disc(), *v0)?;
            let complement_symbol = hilbert_symbol(&r.det(), &(q2.det() * r.det()), *v0)?;
            let forced_hasse = hasse_r * complement_symbol;
            Ok(data.det_q1_square == det_q1_square
                && data.det_q2_square == det_q2_square
                && data.hasse_q1 == hasse_q1
                && data.hasse_q2 == hasse_q2
                && data.hasse_r == hasse_r
                && data.disc_r_square == disc_r_square
                && data.complement_symbol == complement_symbol
                && data.forced_hasse == forced_hasse
                && det_q1_square
                && det_q2_square
                && hasse_q1 != hasse_q2
                && disc_r_square
                && forced_hasse != hasse_q2
                && is_subform(r, q1)?
                && keeps_real_isotropy(q1, r))
        }
        SubformCertificate::EvenCodim1 { q1, q2, r, v0, data } => {
            let m = q1.dim();
            if q2.dim() != m || m % 2 != 0 || m < 4 || r.dim() + 1 != m || !v0.is_finite() {
                return Ok(false);
            }
            if q1.signature() != q2.signature() {
                return Ok(false);
            }
            let disc_q1_square = is_square_at(&q1.disc(), *v0)?;
            let disc_q2_square = is_square_at(&q2.disc(), *v0)?;
            let n = m / 2;
            let tits_q1 = tits_index(q1, *v0)?;
            let tits_q2 = tits_index(q2, *v0)?;
            let tits_r = tits_index(r, *v0)?;
            Ok(data.disc_q1_square == disc_q1_square
                && data.disc_q2_square == disc_q2_square
                && data.tits_q1 == tits_q1
                && data.tits_q2 == tits_q2
                && data.tits_r == tits_r
                && data.subform_witt_bound == tits_q2.witt_index
                && disc_q1_square
                && disc_q2_square
                && tits_q1.family == TitsFamily::DInner
                && tits_q1.split
                && tits_q2.family == TitsFamily::DInner
                && tits_q2.witt_index + 2 == n
                && tits_r.split
                // Witt index is a scaling invariant, so the bound excludes
                // every scale of r from q2.
                && tits_r.witt_index > tits_q2.witt_index
                && is_subform(r, q1)?
                && keeps_real_isotropy(q1, r))
        }
        SubformCertificate::EvenCodim2 { q1, q2, r, v0, data } => {
            let m = q1.dim();
            if q2.dim() != m || m % 2 != 0 || m < 6 || r.dim() + 2 != m || !v0.is_finite() {
                return Ok(false);
            }
            if q1.signature() != q2.signature() {
                return Ok(false);
            }
            let disc_q1_square = is_square_at(&q1.disc(), *v0)?;
            let disc_q2_square = is_square_at(&q2.disc(), *v0)?;
            let half = (m - 2) / 2;
            let twist_symbol = if half % 2 == 1 {
                hilbert_symbol(&-Rational::one(), &q2.disc(), *v0)?
            } else {
                1
            };
            let hasse_q1 = q1.hasse(*v0)?;
            let hasse_q2 = q2.hasse(*v0)?;
            let disc_r_square = is_square_at(&r.disc(), *v0)?;
            let complement_det = q1.det() * r.det();
            let complement_det_minus = is_square_at(&-complement_det.clone(), *v0)?;
            let forced_hasse = r.hasse(*v0)? * hilbert_symbol(&r.det(), &complement_det, *v0)?;
            Ok(data.disc_q1_square == disc_q1_square
                && data.disc_q2_square == disc_q2_square
                && data.hasse_q1 == hasse_q1
                && data.hasse_q2 == hasse_q2
                && data.twist_symbol == twist_symbol
                && data.disc_r_square == disc_r_square
                && data.complement_det_minus == complement_det_minus
                && data.forced_hasse == forced_hasse
                && disc_q1_square
                && !disc_q2_square
                && hasse_q1 != hasse_q2 * twist_symbol
                && disc_r_square
                && complement_det_minus
                && forced_hasse != hasse_q1
                && is_subform(r, q2)?
                && keeps_real_isotropy(q2, r))
        }
        SubformCertificate::RealPlace { q1, q2, r, v0, data } => {
            if *v0 != Place::Infinite {
                return Ok(false);
            }
            let m = q1.dim();
            if q2.dim() != m || m < 5 {
                return Ok(false);
            }
            if data.which != 1 && data.which != 2 {
                return Ok(false);
            }
            let host = if data.which == 1 { q1 } else { q2 };
            let other_sig = if data.which == 1 { q2.signature() } else { q1.signature() };
            let idx: Vec<usize> = data.deleted.iter().copied().collect();
            let recomputed = host.delete_entries(&idx)?;
            let sig_r = recomputed.signature();
            Ok(recomputed == *r
                && data.sig_q1 == q1.signature()
                && data.sig_q2 == q2.signature()
                && data.sig_r == sig_r
                && data.excluded_sig == other_sig
                && sig_r.0 >= 1
                && sig_r.1 >= 1
                && !fits(sig_r, other_sig)
                && !fits((sig_r.1, sig_r.0), other_sig))
        }
    }
}

// Places where the Hasse invariant of the complemented profile must be
// read off: the support of q together with the primes of s and the dyadic
// place. Outside this set every symbol in the formula is trivial.
fn complemented_minus_set(q: &DiagonalForm, s: &Rational) -> Result<BTreeSet<Place>> {
    let mut places = q.support_places()?;
    let (_, fac) = factor_rational(s)?;
    for (p, _) in fac {
        places.insert(Place::finite(p)?);
    }
    let det_q = q.det();
    let mut minus = BTreeSet::new();
    for v in places {
        if !v.is_finite() {
            continue;
        }
        if q.hasse(v)? * hilbert_symbol(s, &(det_q.clone() * s), v)? == -1 {
            minus.insert(v);
        }
    }
    Ok(minus)
}

// A scalar in the square class alpha at v0 with the requested real sign.
// The preferred candidate is tried first so that witnesses stay close to
// the ambient determinant; otherwise a signed squarefree solution is found
// by enumeration.
fn scalar_in_classes(
    pref: &Rational,
    v0: Place,
    alpha: &Rational,
    want_positive: bool,
    bound: u64,
) -> Result<Rational> {
    if pref.is_positive() == want_positive && is_square_at(&(pref.clone() * alpha), v0)? {
        return Ok(pref.clone());
    }
    let constraints = [
        SquareClassConstraint {
            place: v0,
            target: LocalSquareClass::of(alpha, v0)?,
        },
        SquareClassConstraint {
            place: Place::Infinite,
            target: LocalSquareClass::of(&real_unit(want_positive), Place::Infinite)?,
        },
    ];
    square_existence(&constraints, bound)
}

/// Build a codimension-1 witness for an odd-dimensional pair whose
/// determinants are local squares at the finite place v0 and whose Hasse
/// invariants differ there. The witness is assembled by invariants: one
/// entry is removed from the majority sign side, the determinant class is
/// chosen to make the witness discriminant a local square at v0, and the
/// Hasse data is inherited from q1 through the one-dimensional complement.
pub fn distinguishing_subform_odd(
    q1: &DiagonalForm,
    q2: &DiagonalForm,
    v0: Place,
    bound: u64,
) -> Result<(DiagonalForm, SubformCertificate)> {
    let m = q1.dim();
    if !v0.is_finite() {
        return Err(Error::HypothesesViolated(
            "the distinguishing place must be finite".into(),
        ));
    }
    if q2.dim() != m {
        return Err(Error::HypothesesViolated(
            "ambient forms must share a dimension".into(),
        ));
    }
    if m % 2 == 0 || m < 5 {
        return Err(Error::HypothesesViolated(
            "this pattern needs odd dimension at least 5".into(),
        ));
    }
    if q1.signature() != q2.signature() {
        return Err(Error::HypothesesViolated(
            "forms must be isometric at the real place".into(),
        ));
    }
    if !is_square_at(&q1.det(), v0)? || !is_square_at(&q2.det(), v0)? {
        return Err(Error::HypothesesViolated(
            "both determinants must be local squares at the place".into(),
        ));
    }
    if q1.hasse(v0)? == q2.hasse(v0)? {
        return Err(Error::HypothesesViolated(
            "equal Hasse invariants leave nothing to distinguish".into(),
        ));
    }
    let n = (m - 1) / 2;
    let (p, neg) = q1.signature();
    // Remove an entry from a side that keeps the real isotropy type.
    let drop_positive = p >= 2 || neg == 0;
    let sig_r = if drop_positive { (p - 1, neg) } else { (p, neg - 1) };
    let det1 = q1.det();
    // The witness discriminant must be a local square at v0, which pins its
    // determinant to the class of (-1)^n there.
    let alpha = real_unit(n % 2 == 0);
    let mut pref = squarefree_part(&det1)?.to_rational();
    if !drop_positive {
        pref = -pref;
    }
    let want_positive = pref.is_positive();
    let s = scalar_in_classes(&pref, v0, &alpha, want_positive, bound)?;
    let minus_set = complemented_minus_set(q1, &s)?;
    let profile = SynthesisProfile {
        dim: m - 1,
        det: squarefree_part(&s)?,
        signature: sig_r,
        minus_set,
    };
    let r = synthesize_form(&profile, bound)?;
    let cert = SubformCertificate::odd_codim1(q1, q2, &r, v0)?;
    Ok((r, cert))
}

/// Build a codimension-1 witness for an even-dimensional pair that is
/// locally split on the q1 side and has Witt defect 2 on the q2 side, both
/// discriminants being local squares at v0. Every codimension-1 subform of
/// q1 is split at v0, so a plain entry deletion that keeps the real
/// isotropy type suffices.
pub fn distinguishing_subform_even_codim1(
    q1: &DiagonalForm,
    q2: &DiagonalForm,
    v0: Place,
) -> Result<(DiagonalForm, SubformCertificate)> {
    let m = q1.dim();
    if !v0.is_finite() {
        return Err(Error::HypothesesViolated(
            "the distinguishing place must be finite".into(),
        ));
    }
    if q2.dim() != m {
        return Err(Error::HypothesesViolated(
            "ambient forms must share a dimension".into(),
        ));
    }
    if m % 2 != 0 || m < 4 {
        return Err(Error::HypothesesViolated(
            "this pattern needs even dimension at least 4".into(),
        ));
    }
    if q1.signature() != q2.signature() {
        return Err(Error::HypothesesViolated(
            "forms must be isometric at the real place".into(),
        ));
    }
    if !is_square_at(&q1.disc(), v0)? || !is_square_at(&q2.disc(), v0)? {
        return Err(Error::HypothesesViolated(
            "both discriminants must be local squares at the place".into(),
        ));
    }
    let n = m / 2;
    let t1 = tits_index(q1, v0)?;
    if !(t1.family == TitsFamily::DInner && t1.split) {
        return Err(Error::HypothesesViolated(
            "the first form must be split at the place".into(),
        ));
    }
    let t2 = tits_index(q2, v0)?;
    if !(t2.family == TitsFamily::DInner && t2.witt_index + 2 == n) {
        return Err(Error::HypothesesViolated(
            "the second form must have local Witt defect 2 at the place".into(),
        ));
    }
    let (p, neg) = q1.signature();
    let mixed = p >= 1 && neg >= 1;
    for i in 0..m {
        let r = q1.delete_entries(&[i])?;
        if mixed {
            let (rp, rm) = r.signature();
            if rp == 0 || rm == 0 {
                continue;
            }
        }
        let cert = SubformCertificate::even_codim1(q1, q2, &r, v0)?;
        return Ok((r, cert));
    }
    Err(Error::SearchExhausted(
        "no entry deletion keeps the real isotropy type".into(),
    ))
}

/// Build a codimension-2 witness inside q2 for an even-dimensional pair
/// where the discriminant of q1 is a local square at v0, that of q2 is not,
/// and the Hasse invariants violate the twisted equality that containment
/// would force. Entry-pair deletions of q2 are scanned first; failing that,
/// a witness is synthesized from its forced invariants, with the binary
/// complement normalized to <1, d> so the recomposition is automatic.
pub fn distinguishing_subform_even_codim2(
    q1: &DiagonalForm,
    q2: &DiagonalForm,
    v0: Place,
    bound: u64,
) -> Result<(DiagonalForm, SubformCertificate)> {
    let m = q1.dim();
    if !v0.is_finite() {
        return Err(Error::HypothesesViolated(
            "the distinguishing place must be finite".into(),
        ));
    }
    if q2.dim() != m {
        return Err(Error::HypothesesViolated(
            "ambient forms must share a dimension".into(),
        ));
    }
    if m % 2 != 0 || m < 6 {
        return Err(Error::HypothesesViolated(
            "this pattern needs even dimension at least 6".into(),
        ));
    }
    if q1.signature() != q2.signature() {
        return Err(Error::HypothesesViolated(
            "forms must be isometric at the real place".into(),
        ));
    }
    if !is_square_at(&q1.disc(), v0)? {
        return Err(Error::HypothesesViolated(
            "the first discriminant must be a local square at the place".into(),
        ));
    }
    if is_square_at(&q2.disc(), v0)? {
        return Err(Error::HypothesesViolated(
            "the second discriminant must not be a local square at the place".into(),
        ));
    }
    let half = (m - 2) / 2;
    let twist_symbol = if half % 2 == 1 {
        hilbert_symbol(&-Rational::one(), &q2.disc(), v0)?
    } else {
        1
    };
    if q1.hasse(v0)? == q2.hasse(v0)? * twist_symbol {
        return Err(Error::HypothesesViolated(
            "the Hasse inequality hypothesis fails at the place".into(),
        ));
    }
    let (p, neg) = q2.signature();
    let mixed = p >= 1 && neg >= 1;
    // Deletion scan: the removed pair must form a complement with trivial
    // local Hasse invariant at v0 so the forced chain stays aligned with
    // the hypothesis, and the rest must have locally square discriminant.
    for i in 0..m {
        for j in (i + 1)..m {
            let r = q2.delete_entries(&[i, j])?;
            if mixed {
                let (rp, rm) = r.signature();
                if rp == 0 || rm == 0 {
                    continue;
                }
            }
            if !is_square_at(&r.disc(), v0)? {
                continue;
            }
            if hilbert_symbol(&q2.entries()[i], &q2.entries()[j], v0)? != 1 {
                continue;
            }
            let cert = SubformCertificate::even_codim2(q1, q2, &r, v0)?;
            return Ok((r, cert));
        }
    }
    // Synthesis fallback: remove two entries worth of signature with a
    // complement of the shape <1, d>, whose Hasse invariant is trivial at
    // every place.
    let n = m / 2;
    let alpha = real_unit((n - 1) % 2 == 0);
    let det2 = q2.det();
    for &(dp, dn) in &[(2usize, 0usize), (1, 1)] {
        if dp > p || dn > neg {
            continue;
        }
        if mixed && (p - dp == 0 || neg - dn == 0) {
            continue;
        }
        let sig_r = (p - dp, neg - dn);
        let mut pref = squarefree_part(&det2)?.to_rational();
        if dn % 2 == 1 {
            pref = -pref;
        }
        let want_positive = pref.is_positive();
        let s = scalar_in_classes(&pref, v0, &alpha, want_positive, bound)?;
        let minus_set = complemented_minus_set(q2, &s)?;
        let profile = SynthesisProfile {
            dim: m - 2,
            det: squarefree_part(&s)?,
            signature: sig_r,
            minus_set,
        };
        match synthesize_form(&profile, bound) {
            Ok(r) => {
                let cert = SubformCertificate::even_codim2(q1, q2, &r, v0)?;
                return Ok((r, cert));
            }
            Err(Error::InvalidProfile(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SearchExhausted(
        "no removal pattern keeps the real structure".into(),
    ))
}

/// A subform distinguished by signature count alone. For a pair with equal
/// dimension m but different signatures, certain witness dimensions j admit
/// a deletion subform of one of the two forms, isotropic over the reals,
/// that cannot embed in the other form in either orientation. Returns which
/// form hosts the witness, the deleted entry indices, and the certificate.
pub fn real_distinguishing_subform(
    q1: &DiagonalForm,
    q2: &DiagonalForm,
    j: usize,
) -> Result<(u8, BTreeSet<usize>, SubformCertificate)> {
    let m = q1.dim();
    if q2.dim() != m {
        return Err(Error::NotApplicable("forms must share a dimension".into()));
    }
    if m < 5 {
        return Err(Error::NotApplicable(
            "the real obstruction needs dimension at least 5".into(),
        ));
    }
    let s1 = q1.signature();
    let s2 = q2.signature();
    if s1.0 < s1.1 || s2.0 < s2.1 {
        return Err(Error::NotApplicable(
            "forms must be ordered at the real place".into(),
        ));
    }
    if s1 == s2 {
        return Err(Error::NotApplicable(
            "equal signatures admit no real obstruction".into(),
        ));
    }
    // Arrange the signatures as (m1, n1) and (m2, n2) with m1 > m2; since
    // the totals agree this forces n2 > n1.
    let swapped = s1.0 < s2.0;
    let ((m1, n1), (_m2, n2)) = if swapped { (s2, s1) } else { (s1, s2) };
    // First window: a witness with full negative part n2 fits the flatter
    // form but is too unbalanced for the steeper one in either orientation.
    // Second window: a witness with full positive part m1 exceeds both
    // sides of the other signature.
    let (which, sig_r) = if n1 + n2 < j && j < m {
        (if swapped { 1 } else { 2 }, (j - n2, n2))
    } else if m1 < j && j < m {
        (if swapped { 2 } else { 1 }, (m1, j - m1))
    } else {
        return Err(Error::NotApplicable(format!(
            "no real obstruction in dimension {j} for these signatures"
        )));
    };
    let host = if which == 1 { q1 } else { q2 };
    let mut keep_pos = sig_r.0;
    let mut keep_neg = sig_r.1;
    let mut deleted = BTreeSet::new();
    for (i, a) in host.entries().iter().enumerate() {
        if a.is_positive() {
            if keep_pos > 0 {
                keep_pos -= 1;
            } else {
                deleted.insert(i);
            }
        } else if keep_neg > 0 {
            keep_neg -= 1;
        } else {
            deleted.insert(i);
        }
    }
    let cert = SubformCertificate::real_place(q1, q2, which, &deleted)?;
    Ok((which, deleted, cert))
}

/// Complete a low-dimensional subform to its ambient form: find t with
/// r + t isometric to q. Requires codimension at least 3, where the
/// complement is determined by its invariants and always exists once the
/// signatures fit. The result is certified by recomposition.
pub fn transfer_subform(
    r: &DiagonalForm,
    q: &DiagonalForm,
    bound: u64,
) -> Result<DiagonalForm> {
    if r.dim() + 2 >= q.dim() {
        return Err(Error::PreconditionViolated(
            "the complement must have dimension at least 3".into(),
        ));
    }
    let (rp, rm) = r.signature();
    let (qp, qm) = q.signature();
    if rp > qp || rm > qm {
        return Err(Error::PreconditionViolated(
            "the signature does not embed at the real place".into(),
        ));
    }
    let det_t = squarefree_part(&(q.det() * r.det()))?;
    let det_t_rat = det_t.to_rational();
    let mut minus_set = BTreeSet::new();
    for v in union_support(r, q)? {
        if !v.is_finite() {
            continue;
        }
        let c = q.hasse(v)? * r.hasse(v)? * hilbert_symbol(&r.det(), &det_t_rat, v)?;
        if c == -1 {
            minus_set.insert(v);
        }
    }
    let profile = SynthesisProfile {
        dim: q.dim() - r.dim(),
        det: det_t,
        signature: (qp - rp, qm - rm),
        minus_set,
    };
    let t = synthesize_form(&profile, bound)?;
    if !globally_isometric(&r.direct_sum(&t), q)? {
        return Err(Error::SearchExhausted(
            "the synthesized complement failed recomposition".into(),
        ));
    }
    Ok(t)
}

/// Sweep scalars supported on the primes of both forms, looking for one
/// whose multiple of r embeds in q. A hit is definitive. A miss is not: a
/// scalar needing a prime outside both supports escapes the sweep, so
/// callers must treat an empty result as inconclusive rather than as a
/// proof of non-containment.
pub fn similar_subform_search(
    r: &DiagonalForm,
    q: &DiagonalForm,
) -> Result<Option<SquareClass>> {
    if r.dim() > q.dim() {
        return Err(Error::DimensionExceeded);
    }
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    for v in union_support(r, q)? {
        if let Some(p) = v.prime() {
            primes.insert(p);
        }
    }
    let primes: Vec<u64> = primes.into_iter().collect();
    if primes.len() > 20 {
        return Err(Error::SearchExhausted(
            "the combined support is too large for the scalar sweep".into(),
        ));
    }
    let mut magnitudes: Vec<BigInt> = Vec::with_capacity(1 << primes.len());
    for mask in 0u64..(1u64 << primes.len()) {
        let mut prod = BigInt::one();
        for (k, &p) in primes.iter().enumerate() {
            if mask & (1 << k) != 0 {
                prod *= BigInt::from(p);
            }
        }
        magnitudes.push(prod);
    }
    magnitudes.sort();
    for mag in magnitudes {
        for positive in [true, false] {
            let lambda = if positive {
                Rational::from(mag.clone())
            } else {
                -Rational::from(mag.clone())
            };
            if is_subform(&r.scale(&lambda)?, q)? {
                return Ok(Some(squarefree_part(&lambda)?));
            }
        }
    }
    Ok(None)
}

/// A place at which no scale of r embeds in q locally, if one exists among
/// the supporting places. Outside the combined support both forms are unit
/// forms and the trivial scale always embeds, so a sweep over the support
/// is exhaustive: an obstruction here rules out every rational scale.
pub fn similar_subform_obstruction(
    r: &DiagonalForm,
    q: &DiagonalForm,
) -> Result<Option<Place>> {
    if r.dim() > q.dim() {
        return Err(Error::DimensionExceeded);
    }
    for v in union_support(r, q)? {
        let mut embeds = false;
        for cls in LocalSquareClass::enumerate(v)? {
            let lambda = cls.representative()?;
            if local_subform(&r.scale(&lambda)?, q, v)? {
                embeds = true;
                break;
            }
        }
        if !embeds {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::global::DEFAULT_SEARCH_BOUND;

    fn f(entries: &[i64]) -> DiagonalForm {
        DiagonalForm::from_ints(entries).unwrap()
    }

    fn p3() -> Place {
        Place::finite(3).unwrap()
    }

    // Pair with odd dimension 5: determinants both -5, Hasse invariants at
    // 3 are +1 and -1.
    fn odd_pair() -> (DiagonalForm, DiagonalForm) {
        (f(&[1, 1, 1, 1, -5]), f(&[1, 1, 3, 3, -5]))
    }

    // Pair with even dimension 4: discriminants both locally square at 3,
    // split against Witt defect 2.
    fn even4_pair() -> (DiagonalForm, DiagonalForm) {
        (f(&[1, 1, 5, -1]), f(&[3, 3, 5, -1]))
    }

    // Pair with even dimension 6: discriminant square at 3 on the first
    // side only, Hasse invariants -1 and +1 there.
    fn even6_pair() -> (DiagonalForm, DiagonalForm) {
        (f(&[1, 1, 1, 3, 3, -1]), f(&[1, 1, 1, 1, 1, -5]))
    }

    #[test]
    fn odd_construction_matches_the_expected_witness() {
        let (q1, q2) = odd_pair();
        let (r, cert) = distinguishing_subform_odd(&q1, &q2, p3(), DEFAULT_SEARCH_BOUND).unwrap();
        assert!(globally_isometric(&r, &f(&[1, 1, 1, -5])).unwrap());
        assert!(verify_certificate(&cert));
        assert!(is_subform(&r, &q1).unwrap());
    }

    #[test]
    fn odd_checker_accepts_the_named_witness() {
        let (q1, q2) = odd_pair();
        let cert = SubformCertificate::odd_codim1(&q1, &q2, &f(&[1, 1, 1, -5]), p3()).unwrap();
        assert!(verify_certificate(&cert));
        assert_eq!(cert.kind(), "odd-codim-1");
        assert_eq!(cert.place(), p3());
    }

    #[test]
    fn odd_rejects_equal_hasse_invariants() {
        let (q1, _) = odd_pair();
        let err = distinguishing_subform_odd(&q1, &q1, p3(), DEFAULT_SEARCH_BOUND).unwrap_err();
        assert!(matches!(err, Error::HypothesesViolated(_)));
    }

    #[test]
    fn odd_rejects_nonsquare_determinants() {
        let (q1, q2) = odd_pair();
        // At 5 the common determinant -5 has odd valuation.
        let err =
            distinguishing_subform_odd(&q1, &q2, Place::finite(5).unwrap(), DEFAULT_SEARCH_BOUND)
                .unwrap_err();
        assert!(matches!(err, Error::HypothesesViolated(_)));
    }

    #[test]
    fn odd_rejects_a_bad_witness() {
        let (q1, q2) = odd_pair();
        // Discriminant 3 is not a local square at 3.
        let err = SubformCertificate::odd_codim1(&q1, &q2, &f(&[1, 1, 1, 3]), p3()).unwrap_err();
        assert!(matches!(err, Error::HypothesesViolated(_)));
    }

    #[test]
    fn even_codim1_construction_and_named_witness() {
        let (q1, q2) = even4_pair();
        let (r, cert) = distinguishing_subform_even_codim1(&q1, &q2, p3()).unwrap();
        assert!(verify_certificate(&cert));
        assert!(is_subform(&r, &q1).unwrap());

        let named = SubformCertificate::even_codim1(&q1, &q2, &f(&[1, 1, -1]), p3()).unwrap();
        assert!(verify_certificate(&named));
        match &named {
            SubformCertificate::EvenCodim1 { data, .. } => {
                assert_eq!(data.tits_q1.label(), "1D_{2,2}");
                assert_eq!(data.tits_q2.label(), "1D_{2,0}");
                assert_eq!(data.tits_r.label(), "B_{1,1}");
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn even_codim1_rejects_swapped_arguments() {
        let (q1, q2) = even4_pair();
        let err = distinguishing_subform_even_codim1(&q2, &q1, p3()).unwrap_err();
        assert!(matches!(err, Error::HypothesesViolated(_)));
    }

    #[test]
    fn even_codim2_construction_matches_the_expected_witness() {
        let (q1, q2) = even6_pair();
        let (r, cert) =
            distinguishing_subform_even_codim2(&q1, &q2, p3(), DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(r, f(&[1, 1, 1, -5]));
        assert!(verify_certificate(&cert));
        assert!(is_subform(&r, &q2).unwrap());
    }

    #[test]
    fn even_codim2_checker_accepts_the_named_witness() {
        let (q1, q2) = even6_pair();
        let cert = SubformCertificate::even_codim2(&q1, &q2, &f(&[1, 1, 1, -5]), p3()).unwrap();
        assert!(verify_certificate(&cert));
    }

    #[test]
    fn even_codim2_rejects_swapped_arguments() {
        let (q1, q2) = even6_pair();
        let err =
            distinguishing_subform_even_codim2(&q2, &q1, p3(), DEFAULT_SEARCH_BOUND).unwrap_err();
        assert!(matches!(err, Error::HypothesesViolated(_)));
    }

    #[test]
    fn even_codim2_rejects_a_square_second_discriminant() {
        let (q1, _) = even6_pair();
        let err =
            distinguishing_subform_even_codim2(&q1, &q1, p3(), DEFAULT_SEARCH_BOUND).unwrap_err();
        assert!(matches!(err, Error::HypothesesViolated(_)));
    }

    #[test]
    fn real_place_witness_for_signature_pairs() {
        let q1 = f(&[1, 1, 1, 1, -1]);
        let q2 = f(&[1, 1, 1, -1, -1]);
        let (which, deleted, cert) = real_distinguishing_subform(&q1, &q2, 4).unwrap();
        assert_eq!(which, 2);
        assert_eq!(deleted, BTreeSet::from([2]));
        assert!(verify_certificate(&cert));
        match &cert {
            SubformCertificate::RealPlace { r, data, .. } => {
                assert_eq!(data.sig_r, (2, 2));
                assert_eq!(data.excluded_sig, (4, 1));
                assert_eq!(*r, f(&[1, 1, -1, -1]));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn real_place_rejects_small_dimension_and_equal_signatures() {
        let err = real_distinguishing_subform(&f(&[1, 1, 1, -1]), &f(&[1, 1, -1, -1]), 3)
            .unwrap_err();
        assert!(matches!(err, Error::NotApplicable(_)));
        let q = f(&[1, 1, 1, 1, -1]);
        let err = real_distinguishing_subform(&q, &q, 4).unwrap_err();
        assert!(matches!(err, Error::NotApplicable(_)));
    }

    #[test]
    fn real_place_rejects_out_of_window_dimensions() {
        let q1 = f(&[1, 1, 1, 1, -1]);
        let q2 = f(&[1, 1, 1, -1, -1]);
        let err = real_distinguishing_subform(&q1, &q2, 2).unwrap_err();
        assert!(matches!(err, Error::NotApplicable(_)));
    }

    #[test]
    fn transfer_completes_small_subforms() {
        let r = f(&[1, -1]);
        let q = f(&[1, 1, 1, 1, 1, -5]);
        let t = transfer_subform(&r, &q, DEFAULT_SEARCH_BOUND).unwrap();
        assert!(globally_isometric(&r.direct_sum(&t), &q).unwrap());

        let r = f(&[1, 1]);
        let q = f(&[1, 1, 1, 3, 3, -1]);
        let t = transfer_subform(&r, &q, DEFAULT_SEARCH_BOUND).unwrap();
        assert!(globally_isometric(&r.direct_sum(&t), &q).unwrap());
    }

    #[test]
    fn transfer_requires_codimension_three() {
        let err = transfer_subform(
            &f(&[1, 1, 1, -5]),
            &f(&[1, 1, 1, 1, 1, -5]),
            DEFAULT_SEARCH_BOUND,
        )
        .unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(_)));
    }

    #[test]
    fn scalar_sweep_finds_a_deletion_subform() {
        let q = f(&[1, 1, 1, 1, -5]);
        let r = q.delete_entries(&[0]).unwrap();
        let found = similar_subform_search(&r, &q).unwrap();
        assert_eq!(found, Some(SquareClass::one()));
    }

    #[test]
    fn scalar_sweep_finds_a_scaled_subform() {
        let q = f(&[3, 3, 3, 3, -15]);
        let r = f(&[1, 1, 1, -5]);
        // The plain inclusion fails at 5, but some supported scale embeds.
        assert!(!is_subform(&r, &q).unwrap());
        let lambda = similar_subform_search(&r, &q).unwrap().unwrap();
        assert!(is_subform(&r.scale(&lambda.to_rational()).unwrap(), &q).unwrap());
    }

    #[test]
    fn obstruction_finds_the_blocking_place() {
        // No scale of this witness embeds in the second form: at 3 its
        // discriminant is square, so scaling cannot repair the forced
        // Hasse mismatch.
        let r = f(&[1, 1, 1, -5]);
        let q = f(&[1, 1, 1, 3, 3, -1]);
        assert_eq!(
            similar_subform_obstruction(&r, &q).unwrap(),
            Some(Place::finite(3).unwrap())
        );
        assert_eq!(similar_subform_search(&r, &q).unwrap(), None);
    }

    #[test]
    fn obstruction_is_empty_for_true_subforms() {
        let q = f(&[1, 1, 1, 1, -5]);
        let r = q.delete_entries(&[1]).unwrap();
        assert_eq!(similar_subform_obstruction(&r, &q).unwrap(), None);
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let (q1, q2) = odd_pair();
        let (_, cert) = distinguishing_subform_odd(&q1, &q2, p3(), DEFAULT_SEARCH_BOUND).unwrap();
        assert!(verify_certificate(&cert));

        let mut forged = cert.clone();
        if let SubformCertificate::OddCodim1 { data, .. } = &mut forged {
            data.hasse_q2 = -data.hasse_q2;
        }
        assert!(!verify_certificate(&forged));

        let mut forged = cert.clone();
        if let SubformCertificate::OddCodim1 { r, .. } = &mut forged {
            *r = f(&[1, 1, 1, 5]);
        }
        assert!(!verify_certificate(&forged));

        let mut forged = cert;
        if let SubformCertificate::OddCodim1 { v0, .. } = &mut forged {
            *v0 = Place::finite(7).unwrap();
        }
        assert!(!verify_certificate(&forged));
    }

    #[test]
    fn tampered_real_certificates_fail_verification() {
        let q1 = f(&[1, 1, 1, 1, -1]);
        let q2 = f(&[1, 1, 1, -1, -1]);
        let (_, _, cert) = real_distinguishing_subform(&q1, &q2, 4).unwrap();
        let mut forged = cert;
        if let SubformCertificate::RealPlace { data, .. } = &mut forged {
            // Deleting a negative entry instead changes the recomputed form.
            data.deleted = BTreeSet::from([3]);
        }
        assert!(!verify_certificate(&forged));
    }

    #[test]
    fn certificates_round_trip_through_json() {
        let (q1, q2) = odd_pair();
        let cert = SubformCertificate::odd_codim1(&q1, &q2, &f(&[1, 1, 1, -5]), p3()).unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        assert!(text.contains("\"kind\":\"odd-codim-1\""));
        let back: SubformCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&back));
    }
}
