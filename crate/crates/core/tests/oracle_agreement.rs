//! Cross-checks of the invariant-theoretic deciders against brute force:
//! Hensel lifting for local isotropy, bounded rational zero search for
//! global isotropy, and recomposition for subform transfer. The acceptance
//! suite reruns these at full scale; this file keeps a moderate sample in
//! the default test run.

use qforms::arith::rng::SplitMix64;
use qforms::oracles::{gen_form, hensel_isotropic, rational_zero_search};
use qforms::{
    globally_isometric, globally_isotropic, is_subform, local_isotropic, transfer_subform,
    DiagonalForm, Place, DEFAULT_SEARCH_BOUND,
};
use num_traits::Zero;

fn check_places(q: &DiagonalForm) -> Vec<Place> {
    let mut places = vec![
        Place::Infinite,
        Place::Finite(2),
        Place::Finite(3),
        Place::Finite(5),
        Place::Finite(7),
    ];
    for v in q.support_places().unwrap() {
        if !places.contains(&v) {
            places.push(v);
        }
    }
    places
}

#[test]
fn local_isotropy_matches_hensel_lifting() {
    let mut rng = SplitMix64::new(0x1ca1_0c41);
    for round in 0..300 {
        let dim = 2 + (round % 3);
        let q = gen_form(&mut rng, dim, 30);
        for v in check_places(&q) {
            let fast = local_isotropic(&q, v).unwrap();
            let slow = hensel_isotropic(&q, v);
            assert_eq!(fast, slow, "disagreement for {q:?} at {v:?}");
        }
    }
}

#[test]
fn global_isotropy_matches_zero_search() {
    let mut rng = SplitMix64::new(0x910b_a150);
    for round in 0..200 {
        let dim = 2 + (round % 3);
        let q = gen_form(&mut rng, dim, 30);
        let (verdict, witness) = globally_isotropic(&q).unwrap();
        if verdict {
            let zero = rational_zero_search(&q, 4096)
                .unwrap_or_else(|| panic!("no zero below the cap for isotropic {q:?}"));
            assert!(q.evaluate(&zero).is_zero());
            assert!(zero.iter().any(|x| !x.is_zero()));
            let w = witness.expect("the decider returns a witness in low dimension");
            assert!(q.evaluate(&w).is_zero());
            assert!(w.iter().any(|x| !x.is_zero()));
        } else {
            assert!(witness.is_none());
            assert!(
                rational_zero_search(&q, 48).is_none(),
                "anisotropic verdict contradicted by a small zero of {q:?}"
            );
        }
    }
}

#[test]
fn transfer_recomposes_random_deletions() {
    let mut rng = SplitMix64::new(0x7a45_f0a3);
    let mut done = 0usize;
    while done < 60 {
        let m = 5 + (rng.below(5) as usize);
        let q = gen_form(&mut rng, m, 20);
        // Transfer needs the complement to have dimension at least 3.
        let k = 3 + (rng.below((m - 3) as u64) as usize);
        let mut drop: Vec<usize> = Vec::new();
        while drop.len() < k {
            let i = rng.below(m as u64) as usize;
            if !drop.contains(&i) {
                drop.push(i);
            }
        }
        drop.sort_unstable();
        let r = q.delete_entries(&drop).unwrap();
        assert!(is_subform(&r, &q).unwrap());
        let t = transfer_subform(&r, &q, DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(t.dim(), k);
        assert!(globally_isometric(&r.direct_sum(&t), &q).unwrap());
        done += 1;
    }
}

#[test]
fn witnesses_have_coprime_integer_shape() {
    // The zero search returns integer coordinates; the decider may return
    // rationals. Either way the evaluation must vanish exactly.
    let q = DiagonalForm::from_ints(&[2, 3, -5]).unwrap();
    let zero = rational_zero_search(&q, 64).unwrap();
    assert!(q.evaluate(&zero).is_zero());
    let (verdict, witness) = globally_isotropic(&q).unwrap();
    assert!(verdict);
    assert!(q.evaluate(&witness.unwrap()).is_zero());
}
