//! The census seed set: locally minimal diagrams up to a crossing cap.
//!
//! Generation expands every connected matching within the crossing cap
//! into candidate diagrams, reduces each candidate's passings with Θ
//! moves, and then discards every diagram that is visibly non-minimal:
//! diagrams admitting a simplifying move, diagrams that a crossing
//! slide, tangle slide, or triangle move can strictly shrink, and all
//! but the least member of each symmetry class.  What survives is the
//! deterministic seed set that equivalence classification starts from.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use stgen_moves::{has_simplifying_move, neighbors_filtered, symmetry_variants, Constraints, Move};
use stgen_pgp::Pgp;

use crate::candidates::{for_each_ordering, mask_signs, validate_ordering, ChordPlan};
use crate::pairing::{for_each_leaf, Pairing};
use crate::reduce::theta_reduce;

/// States explored per slide orbit in the minimality filter; orbits this
/// large are treated as minimal rather than explored further.
const SLIDE_ORBIT_CAP: usize = 4096;

/// Counters describing one generation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GenerateStats {
    /// Matchings whose forced crossings fit the cap.
    pub pairings: u64,
    /// Matchings kept after dropping split diagrams.
    pub connected_pairings: u64,
    /// Connected matchings actually expanded: those without a
    /// retractable return chord that would make every candidate
    /// redundant with a smaller matching.
    pub expanded_pairings: u64,
    /// Candidate diagrams over all matchings within the cap — every
    /// choice of crossing orders and handedness, before any filtering.
    pub raw_candidates: u64,
    /// Candidates over expanded matchings whose ordering can be drawn.
    pub valid_candidates: u64,
    /// Distinct canonical forms after Θ reduction.
    pub reduced_forms: u64,
    /// Locally minimal, symmetry-least diagrams emitted.
    pub survivors: u64,
}

/// The locally minimal census seed set for diagrams of at most
/// `max_crossings` crossings, in canonical order.
///
/// Every non-split link with at most `max_crossings` crossings is
/// presented by at least one emitted diagram.  Each emitted diagram is
/// canonical, Θ-reduced, admits no simplifying move, is least in its
/// symmetry class, and cannot be strictly shrunk by a single triangle
/// move or by any sequence of crossing and tangle slides.
pub fn generate_minimal(max_crossings: usize) -> Vec<Pgp> {
    generate_minimal_with_stats(max_crossings).0
}

/// [`generate_minimal`] together with counters from every stage.
pub fn generate_minimal_with_stats(max_crossings: usize) -> (Vec<Pgp>, GenerateStats) {
    census(max_crossings, true)
}

/// The pipeline, with the redundant-matching skip switchable so tests
/// can confirm it never changes the output.
fn census(max_crossings: usize, skip_redundant: bool) -> (Vec<Pgp>, GenerateStats) {
    let mut stats = GenerateStats::default();
    let kmax = (2 * max_crossings).max(2);
    let mut kept: Vec<Pairing> = Vec::new();
    let mut scratch = Vec::new();
    for k in 1..=kmax {
        for_each_leaf(k, max_crossings, &mut |leaf| {
            stats.pairings += 1;
            stats.raw_candidates = stats.raw_candidates.saturating_add(leaf.raw_candidates());
            if leaf.is_split(&mut scratch) {
                return;
            }
            stats.connected_pairings += 1;
            if skip_redundant && leaf.bite_redundant() {
                return;
            }
            stats.expanded_pairings += 1;
            kept.push(leaf.to_pairing());
        });
    }

    let (reduced, valid) = kept
        .par_iter()
        .map(expand_and_reduce)
        .reduce(
            || (HashSet::new(), 0),
            |(mut a, ca), (b, cb)| {
                a.extend(b);
                (a, ca + cb)
            },
        );
    stats.valid_candidates = valid;
    stats.reduced_forms = reduced.len() as u64;

    let mut survivors: Vec<Pgp> = reduced
        .into_par_iter()
        .filter(is_locally_minimal)
        .collect();
    survivors.sort_by(Pgp::canonical_compare);
    stats.survivors = survivors.len() as u64;
    (survivors, stats)
}

/// Θ-reduced canonical forms of every drawable candidate over one
/// matching, with the count of drawable candidates.
fn expand_and_reduce(pairing: &Pairing) -> (HashSet<Pgp>, u64) {
    let plan = ChordPlan::new(pairing);
    let c = plan.crossings.len();
    let mut out = HashSet::new();
    let mut valid = 0u64;
    for_each_ordering(&plan, &mut |orderings| {
        if !validate_ordering(&plan, pairing, orderings) {
            return;
        }
        for mask in 0u64..1 << c {
            let signs = mask_signs(mask, c);
            let raw = plan.build_unchecked(pairing, orderings, &signs);
            out.insert(theta_reduce(&raw));
            valid += 1;
        }
    });
    (out, valid)
}

/// Whether a reduced diagram belongs in the seed set.
fn is_locally_minimal(p: &Pgp) -> bool {
    !has_simplifying_move(p)
        && symmetry_variants(p)[0] == *p
        && !triangle_move_shrinks(p)
        && !slide_orbit_shrinks(p)
}

/// Whether some single triangle move yields a smaller diagram.
fn triangle_move_shrinks(p: &Pgp) -> bool {
    let cons = Constraints::new(p.crossings(), p.passings());
    neighbors_filtered(p, &cons, |mv| matches!(mv, Move::Omega3 { .. }))
        .iter()
        .any(|(_, q)| Pgp::canonical_compare(q, p) == std::cmp::Ordering::Less)
}

/// Whether the orbit of the diagram under crossing and tangle slides
/// across the cutting curve contains a smaller diagram or one that a
/// simplifying move shrinks.
fn slide_orbit_shrinks(p: &Pgp) -> bool {
    let cons = Constraints::new(p.crossings(), p.passings());
    let keep = |mv: &Move| matches!(mv, Move::Theta1Plus { .. } | Move::ThetaBar1 { .. });
    let mut seen = HashSet::from([p.clone()]);
    let mut queue = VecDeque::from([p.clone()]);
    while let Some(cur) = queue.pop_front() {
        for (_, q) in neighbors_filtered(&cur, &cons, keep) {
            if seen.contains(&q) {
                continue;
            }
            if Pgp::canonical_compare(&q, p) == std::cmp::Ordering::Less
                || has_simplifying_move(&q)
            {
                return true;
            }
            seen.insert(q.clone());
            queue.push_back(q);
            if seen.len() >= SLIDE_ORBIT_CAP {
                return false;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use stgen_pgp::Segment;

    fn canonical(omega: Vec<i8>, segments: Vec<Segment>) -> Pgp {
        Pgp::new(omega, segments).unwrap().relabel_minimal()
    }

    fn affine_unknot() -> Pgp {
        canonical(vec![], vec![Segment::closed(vec![])])
    }

    fn longitude() -> Pgp {
        canonical(vec![], vec![Segment::open(1, -1, vec![])])
    }

    fn wrap2_negative() -> Pgp {
        canonical(
            vec![-1],
            vec![Segment::open(1, -2, vec![1]), Segment::open(2, -1, vec![-1])],
        )
    }

    fn sorted(mut expect: Vec<Pgp>) -> Vec<Pgp> {
        expect.sort_by(Pgp::canonical_compare);
        expect
    }

    #[test]
    fn crossingless_census_is_the_unknot_and_the_longitude() {
        let (got, stats) = generate_minimal_with_stats(0);
        assert_eq!(got, sorted(vec![affine_unknot(), longitude()]));
        assert_eq!(stats.survivors, 2);
    }

    #[test]
    fn one_crossing_census_adds_the_negative_wrap_two_diagram() {
        let got = generate_minimal(1);
        assert_eq!(
            got,
            sorted(vec![affine_unknot(), longitude(), wrap2_negative()])
        );
    }

    #[test]
    fn one_crossing_stats_count_every_stage() {
        let (_, stats) = generate_minimal_with_stats(1);
        // k = 1 contributes the through chord; k = 2 contributes the
        // parallel, crossing, and cup/cap matchings, of which the
        // parallel one is split.
        assert_eq!(stats.pairings, 4);
        assert_eq!(stats.connected_pairings, 3);
        assert_eq!(stats.expanded_pairings, 3);
        assert_eq!(stats.raw_candidates, 5);
        assert_eq!(stats.valid_candidates, 4);
        assert_eq!(stats.reduced_forms, 4);
        assert_eq!(stats.survivors, 3);
    }

    #[test]
    fn skipping_redundant_matchings_changes_no_output() {
        for cap in 0..=2 {
            let (with_skip, fast) = census(cap, true);
            let (without, slow) = census(cap, false);
            assert_eq!(with_skip, without, "cap={cap}");
            assert_eq!(fast.reduced_forms, slow.reduced_forms, "cap={cap}");
            assert_eq!(fast.pairings, slow.pairings);
            assert_eq!(fast.raw_candidates, slow.raw_candidates);
            assert!(fast.expanded_pairings <= slow.expanded_pairings);
        }
    }

    #[test]
    fn the_positive_wrap_two_diagram_is_dropped_as_a_symmetry_image() {
        let plus = canonical(
            vec![1],
            vec![Segment::open(1, -2, vec![-1]), Segment::open(2, -1, vec![1])],
        );
        assert!(!is_locally_minimal(&plus));
        assert!(is_locally_minimal(&wrap2_negative()));
    }

    #[test]
    fn two_crossing_census_is_deterministic_across_thread_counts() {
        let default_pool = generate_minimal(2);
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| generate_minimal(2));
        assert_eq!(default_pool, single);
    }

    #[test]
    fn two_crossing_census_emits_reduced_minimal_canonical_forms() {
        let out = generate_minimal(2);
        assert!(out.len() > 3);
        for p in &out {
            assert!(p.crossings() <= 2);
            assert!(p.passings() <= 4);
            assert!(p.is_canonical());
            assert!(Pgp::new(p.omega().to_vec(), p.segments().to_vec()).is_ok());
            assert_eq!(theta_reduce(p), *p);
            assert!(!has_simplifying_move(p));
            assert_eq!(symmetry_variants(p)[0], *p);
            let windings = p.trace_components().max_winding();
            assert!(windings <= p.passings() as i64);
        }
        let mut sorted_out = out.clone();
        sorted_out.sort_by(Pgp::canonical_compare);
        assert_eq!(out, sorted_out);
    }
}
