//! Passing reduction by Θ moves.
//!
//! A freshly drawn basic diagram usually meets the cutting curve more
//! often than its link requires: a strand that dips across the curve and
//! straight back can be retracted, and sliding a crossing through the
//! curve can expose further retractions.  Reduction explores the moves
//! that keep the underlying annulus graph fixed — crossing slides and
//! bite retractions — and keeps the best diagram found.  Crossing counts
//! never change here; simplifications of the projection itself are the
//! business of the minimality filters.

use std::collections::{HashSet, VecDeque};

use stgen_moves::{apply_each, Move};
use stgen_pgp::Pgp;

/// States explored per slide orbit before giving up; reachable orbits
/// are in practice far smaller.
const ORBIT_CAP: usize = 20_000;

/// Retracts the passings of a diagram as far as Θ moves allow.
///
/// Explores crossing slides across the cutting curve together with bite
/// retractions, and returns the least canonical form among the reachable
/// diagrams with the fewest passings.  The underlying annulus graph is
/// kept fixed throughout, so the result presents the same link with the
/// same crossings.  The result is a fixpoint: reducing it again returns
/// it unchanged.
///
/// Retraction and sliding commute: a slide only moves a crossing to the
/// other side of the cutting curve, and retracting the stretch of curve
/// next to it erases the difference.  Descending by the first available
/// retraction therefore reaches the same fewest-passings slide orbit as
/// exploring every order, so each slide orbit is searched in full only
/// at the bottom level.
pub fn theta_reduce(p: &Pgp) -> Pgp {
    let mut current = p.relabel_minimal();
    'descend: loop {
        let mut best = current.clone();
        let mut seen = HashSet::from([current.clone()]);
        let mut queue = VecDeque::from([current.clone()]);
        while let Some(state) = queue.pop_front() {
            let k = state.passings();
            let retractions = (1..k).map(|p| Move::Theta2PlusRemove { p });
            let slides = (1..k).map(|p| Move::Theta1Plus { p });
            let images = apply_each(&state, retractions.chain(slides));
            if let Some((_, down)) = images
                .iter()
                .find(|(mv, _)| matches!(mv, Move::Theta2PlusRemove { .. }))
            {
                current = down.clone();
                continue 'descend;
            }
            for (_, q) in images {
                if seen.contains(&q) {
                    continue;
                }
                if Pgp::canonical_compare(&q, &best) == std::cmp::Ordering::Less {
                    best = q.clone();
                }
                seen.insert(q.clone());
                queue.push_back(q);
                if seen.len() >= ORBIT_CAP {
                    return best;
                }
            }
        }
        return best;
    }
}

/// Reference reduction by breadth-first search over the full Θ orbit,
/// used to cross-check the descent strategy.
#[cfg(test)]
pub(crate) fn theta_reduce_exhaustive(p: &Pgp) -> Pgp {
    let start = p.relabel_minimal();
    let mut best = start.clone();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        let k = cur.passings();
        let moves = (1..k)
            .map(|p| Move::Theta2PlusRemove { p })
            .chain((1..k).map(|p| Move::Theta1Plus { p }));
        for (_, q) in apply_each(&cur, moves) {
            if seen.contains(&q) {
                continue;
            }
            if q.passings() < best.passings()
                || (q.passings() == best.passings()
                    && Pgp::canonical_compare(&q, &best) == std::cmp::Ordering::Less)
            {
                best = q.clone();
            }
            seen.insert(q.clone());
            queue.push_back(q);
            if seen.len() >= ORBIT_CAP {
                return best;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use stgen_pgp::Segment;

    fn pgp(omega: Vec<i8>, segments: Vec<Segment>) -> Pgp {
        Pgp::new(omega, segments).unwrap()
    }

    #[test]
    fn a_bite_retracts_to_the_affine_unknot() {
        let cupcap = pgp(
            vec![],
            vec![Segment::open(1, 2, vec![]), Segment::open(-2, -1, vec![])],
        );
        let unknot = pgp(vec![], vec![Segment::closed(vec![])]).relabel_minimal();
        assert_eq!(theta_reduce(&cupcap), unknot);
    }

    #[test]
    fn the_longitude_is_already_reduced() {
        let longitude = pgp(vec![], vec![Segment::open(1, -1, vec![])]).relabel_minimal();
        assert_eq!(theta_reduce(&longitude), longitude);
    }

    #[test]
    fn reduction_is_a_fixpoint() {
        let wrap2 = pgp(
            vec![1],
            vec![Segment::open(1, -2, vec![-1]), Segment::open(2, -1, vec![1])],
        );
        let reduced = theta_reduce(&wrap2);
        assert_eq!(theta_reduce(&reduced), reduced);
    }

    #[test]
    fn nested_bites_retract_fully() {
        // A comb dipping across the curve twice: +1..+4 joined as nested
        // returns on the bottom, matched by nested returns on top.
        let comb = pgp(
            vec![],
            vec![
                Segment::open(1, 4, vec![]),
                Segment::open(2, 3, vec![]),
                Segment::open(-1, -2, vec![]),
                Segment::open(-3, -4, vec![]),
            ],
        );
        let got = theta_reduce(&comb);
        assert_eq!(got.passings(), 0);
    }

    #[test]
    fn descent_matches_the_exhaustive_search_on_every_small_candidate() {
        use crate::candidates::{expand, ChordPlan};
        use crate::pairing::for_each_capped;

        for k in 1..=4 {
            for_each_capped(k, 2, &mut |pairing, _| {
                if pairing.is_split() {
                    return;
                }
                let plan = ChordPlan::new(&pairing);
                for spec in expand(&pairing, 2) {
                    let raw = plan.build_unchecked(&spec.pairing, &spec.orderings, &spec.signs);
                    assert_eq!(
                        theta_reduce(&raw),
                        theta_reduce_exhaustive(&raw),
                        "descent disagrees on a candidate of {:?}",
                        spec.pairing
                    );
                }
            });
        }
    }
}
