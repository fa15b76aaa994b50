//! Property tests: every candidate a pairing expands to must convert to
//! a well-formed, reduced, canonical diagram, and the handedness choices
//! must never affect drawability.

use proptest::prelude::*;

use stgen_generate::{
    enumerate_pairings, expand, required_crossings, theta_reduce, to_pgp, Pairing,
};
use stgen_pgp::Pgp;

fn arb_pairing() -> impl Strategy<Value = Pairing> {
    (1usize..=3).prop_flat_map(|k| {
        let all = enumerate_pairings(k);
        let len = all.len();
        (Just(all), 0..len).prop_map(|(all, i)| all[i].clone())
    })
}

proptest! {
    /// Expansion validates only the all-positive candidate of each
    /// ordering; conversion validates the candidate's own handedness.
    /// Flipping a crossing swaps its strands in place without moving
    /// the underlying curves, so the two must agree.
    #[test]
    fn drawability_is_independent_of_handedness(pairing in arb_pairing()) {
        for spec in expand(&pairing, 6) {
            prop_assert!(to_pgp(&spec).is_ok());
        }
    }

    /// Conversion reduces passings and canonicalizes but never touches
    /// crossings, so the output must be a canonical fixpoint carrying
    /// exactly the pairing's forced crossings within the pairing's
    /// passing count.
    #[test]
    fn converted_candidates_are_reduced_canonical_forms(pairing in arb_pairing()) {
        let forced = required_crossings(&pairing).len();
        for spec in expand(&pairing, 6) {
            let p = to_pgp(&spec).unwrap();
            prop_assert!(p.is_canonical());
            prop_assert_eq!(theta_reduce(&p), p.clone());
            prop_assert_eq!(p.crossings(), forced);
            prop_assert!(p.passings() <= pairing.k());
            prop_assert!(Pgp::new(p.omega().to_vec(), p.segments().to_vec()).is_ok());
        }
    }

    /// Rebuilding a pairing from its own chords is the identity, and
    /// its chord count determines the boundary size.
    #[test]
    fn pairings_round_trip_through_their_chords(pairing in arb_pairing()) {
        let rebuilt = Pairing::new(pairing.chords().to_vec()).unwrap();
        prop_assert_eq!(&rebuilt, &pairing);
        prop_assert_eq!(rebuilt.k(), rebuilt.chords().len());
    }

    /// Each realizable ordering contributes one candidate per choice of
    /// handedness.
    #[test]
    fn candidates_come_in_full_sign_families(pairing in arb_pairing()) {
        let c = required_crossings(&pairing).len();
        let specs = expand(&pairing, 6);
        let mut orderings: Vec<_> = specs.iter().map(|s| s.orderings.clone()).collect();
        orderings.sort();
        orderings.dedup();
        prop_assert_eq!(specs.len(), orderings.len() << c);
        let mut signs: Vec<_> = specs.iter().map(|s| s.signs.clone()).collect();
        signs.sort();
        signs.dedup();
        prop_assert_eq!(signs.len(), if specs.is_empty() { 0 } else { 1 << c });
    }
}
