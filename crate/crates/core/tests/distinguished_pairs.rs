//! End-to-end runs on the three benchmark pairs: a 5-dimensional pair split
//! by the odd codimension-1 construction, a 4-dimensional pair with equal
//! discriminants but different local Witt indices, and a 6-dimensional pair
//! separated in codimension 2 while sharing every geodesic surface.

use qforms::{
    commensurable, contains_as_subspace, dichotomy_report, distinguishing_place,
    globally_isometric, hilbert_symbol, is_subform, isogroupic, local_witt_index, rat, similar,
    tits_index, transfer_subform, verify_certificate, DiagonalForm, Isogroupy, LocalSquareClass,
    Place, SquareClass, SubformCertificate, SubspaceContainment, DEFAULT_SEARCH_BOUND,
};

fn form(entries: &[i64]) -> DiagonalForm {
    DiagonalForm::from_ints(entries).unwrap()
}

fn p(v: u64) -> Place {
    Place::finite(v).unwrap()
}

#[test]
fn five_dimensional_pair() {
    let q1 = form(&[1, 1, 1, 1, -5]);
    let q2 = form(&[1, 1, 3, 3, -5]);

    // Shared data: determinant class -5, a square at 3, equal signatures.
    assert_eq!(
        SquareClass::of(&q1.det()).unwrap(),
        SquareClass::of(&q2.det()).unwrap()
    );
    assert!(LocalSquareClass::of(&q1.det(), p(3)).unwrap().is_one());
    assert_eq!(q1.signature(), (4, 1));
    assert_eq!(q2.signature(), (4, 1));

    // The pair separates at 3 through the Hasse invariant.
    assert_eq!(q1.hasse(p(3)).unwrap(), 1);
    assert_eq!(q2.hasse(p(3)).unwrap(), -1);
    assert!(!globally_isometric(&q1, &q2).unwrap());
    assert_eq!(similar(&q1, &q2, DEFAULT_SEARCH_BOUND).unwrap(), None);
    assert!(!commensurable(&q1, &q2, DEFAULT_SEARCH_BOUND).unwrap());
    assert_eq!(isogroupic(&q1, &q2, DEFAULT_SEARCH_BOUND).unwrap(), Isogroupy::No);
    assert_eq!(
        distinguishing_place(&q1, &q2, DEFAULT_SEARCH_BOUND).unwrap(),
        Some(p(3))
    );

    // The named witness embeds in q1 and in no rescaling of q2.
    let r = form(&[1, 1, 1, -5]);
    assert!(is_subform(&r, &q1).unwrap());
    assert!(!is_subform(&r, &q2).unwrap());

    let report = dichotomy_report(&q1, &q2, DEFAULT_SEARCH_BOUND).unwrap();
    assert!(report.dims_equal);
    assert!(!report.commensurable);
    assert_eq!(report.shared_range, None);
    let cert = report.codim1_witness.expect("codimension-1 witness");
    assert!(matches!(&cert, SubformCertificate::OddCodim1 { .. }));
    assert_eq!(cert.place(), p(3));
    assert!(verify_certificate(&cert));
    assert!(report.codim2_witness.is_none());
}

#[test]
fn four_dimensional_pair() {
    let q1 = form(&[1, 1, 5, -1]);
    let q2 = form(&[3, 3, 5, -1]);

    // Equal square discriminants at 3, different Hasse invariants.
    assert!(LocalSquareClass::of(&q1.disc(), p(3)).unwrap().is_one());
    assert!(LocalSquareClass::of(&q2.disc(), p(3)).unwrap().is_one());
    assert_eq!(q1.hasse(p(3)).unwrap(), 1);
    assert_eq!(q2.hasse(p(3)).unwrap(), -1);

    // The groups differ at 3: split against Witt index zero.
    let t1 = tits_index(&q1, p(3)).unwrap();
    let t2 = tits_index(&q2, p(3)).unwrap();
    assert_eq!(t1.label(), "1D_{2,2}");
    assert_eq!(t2.label(), "1D_{2,0}");
    assert!(t1.split);
    assert!(!t2.split);
    assert_eq!(local_witt_index(&q1, p(3)).unwrap(), 2);
    assert_eq!(local_witt_index(&q2, p(3)).unwrap(), 0);

    assert!(!commensurable(&q1, &q2, DEFAULT_SEARCH_BOUND).unwrap());
    assert_eq!(isogroupic(&q1, &q2, DEFAULT_SEARCH_BOUND).unwrap(), Isogroupy::No);
    assert_eq!(
        distinguishing_place(&q1, &q2, DEFAULT_SEARCH_BOUND).unwrap(),
        Some(p(3))
    );

    // The named witness embeds in q1 and is excluded from every rescaling
    // of q2 by the Witt-index drop at 3.
    let r = form(&[1, 1, -1]);
    let cert = SubformCertificate::even_codim1(&q1, &q2, &r, p(3)).unwrap();
    assert!(verify_certificate(&cert));
    assert!(is_subform(&r, &q1).unwrap());
}

#[test]
fn six_dimensional_pair() {
    let q1 = form(&[1, 1, 1, 3, 3, -1]);
    let q2 = form(&[1, 1, 1, 1, 1, -5]);

    // Discriminants: square for q1, nonsquare at 3 for q2.
    assert!(LocalSquareClass::of(&q1.disc(), p(3)).unwrap().is_one());
    assert!(!LocalSquareClass::of(&q2.disc(), p(3)).unwrap().is_one());
    assert_eq!(q1.hasse(p(3)).unwrap(), -1);
    assert_eq!(q2.hasse(p(3)).unwrap(), 1);

    assert!(!commensurable(&q1, &q2, DEFAULT_SEARCH_BOUND).unwrap());
    assert_eq!(
        distinguishing_place(&q1, &q2, DEFAULT_SEARCH_BOUND).unwrap(),
        Some(p(3))
    );

    let report = dichotomy_report(&q1, &q2, DEFAULT_SEARCH_BOUND).unwrap();
    assert!(!report.commensurable);
    assert_eq!(report.shared_range, Some((2, 2)));
    let cert = report.codim2_witness.expect("codimension-2 witness");
    assert!(matches!(cert, SubformCertificate::EvenCodim2 { .. }));
    assert_eq!(cert.place(), p(3));
    assert!(verify_certificate(&cert));

    // Both quotients carry the same geodesic surfaces: every indefinite
    // 3-dimensional deletion subform of either form transfers to the other.
    let pairs = [(&q1, &q2), (&q2, &q1)];
    let mut transferred = 0usize;
    for (src, dst) in pairs {
        for i in 0..src.dim() {
            for j in (i + 1)..src.dim() {
                for k in (j + 1)..src.dim() {
                    let r = src.delete_entries(&[i, j, k]).unwrap();
                    let (rp, rm) = r.signature();
                    if rp == 0 || rm == 0 {
                        continue;
                    }
                    let t = transfer_subform(&r, dst, DEFAULT_SEARCH_BOUND).unwrap();
                    assert!(globally_isometric(&r.direct_sum(&t), dst).unwrap());
                    transferred += 1;
                }
            }
        }
    }
    // Each form has one negative entry: a mixed triple keeps it, so there
    // are C(5,2) = 10 such deletions per side.
    assert_eq!(transferred, 20);

    // A 3-dimensional section sits in codimension 3, where the signature
    // condition alone settles containment.
    assert_eq!(
        contains_as_subspace(&form(&[1, 1, -5]), &q1).unwrap(),
        SubspaceContainment::Yes
    );
}

#[test]
fn certificates_roundtrip_through_json() {
    let q1 = form(&[1, 1, 1, 1, -5]);
    let q2 = form(&[1, 1, 3, 3, -5]);
    let report = dichotomy_report(&q1, &q2, DEFAULT_SEARCH_BOUND).unwrap();
    let cert = report.codim1_witness.unwrap();
    let text = serde_json::to_string(&cert).unwrap();
    assert!(text.contains("\"kind\":\"odd-codim-1\""));
    let back: SubformCertificate = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cert);
    assert!(verify_certificate(&back));
}

#[test]
fn hilbert_values_fixed_by_hand() {
    // (2, 5)_5 and (3, 5)_5 reduce to Legendre symbols mod 5, both -1;
    // (-1, -1) is -1 at 2 and at infinity; (2, 3)_2 = (-1)^w(3) = -1 since
    // (3^2 - 1)/8 is odd.
    assert_eq!(hilbert_symbol(&rat(2, 1), &rat(5, 1), p(5)).unwrap(), -1);
    assert_eq!(hilbert_symbol(&rat(3, 1), &rat(5, 1), p(5)).unwrap(), -1);
    assert_eq!(hilbert_symbol(&rat(-1, 1), &rat(-1, 1), p(2)).unwrap(), -1);
    assert_eq!(
        hilbert_symbol(&rat(-1, 1), &rat(-1, 1), Place::Infinite).unwrap(),
        -1
    );
    assert_eq!(hilbert_symbol(&rat(2, 1), &rat(3, 1), p(2)).unwrap(), -1);
}
