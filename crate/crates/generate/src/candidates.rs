//! Candidate basic diagrams over a pairing, and their conversion to
//! periodic Gauss paragraphs.
//!
//! A pairing fixes the chords and which of them must cross; what remains
//! free is the order in which each chord meets its crossings and the
//! handedness of every crossing.  A [`BasicDiagramSpec`] records one such
//! choice.  Not every choice of orders can be drawn — three mutually
//! crossing chords, for instance, admit exactly two consistent
//! arrangements — so expansion validates each ordering by building the
//! diagram once.  Handedness never affects drawability: flipping a
//! crossing exchanges its over- and under-strand in place, leaving the
//! underlying curves untouched, so one validation covers all sign
//! choices of an ordering.

use serde::{Deserialize, Serialize};
use stgen_pgp::{Pgp, Segment};

use crate::pairing::{chi, required_crossings, Pairing};
use crate::reduce::theta_reduce;
use crate::GenerateError;

/// One candidate basic diagram: a pairing together with an order of
/// crossings along every chord and a handedness for every crossing.
///
/// Crossing labels `1, …, c` follow the lexicographic order of
/// [`required_crossings`]; `orderings[s]` lists the labels on chord `s`
/// in traversal order from its canonically first endpoint, and
/// `signs[l - 1]` is the handedness of crossing `l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasicDiagramSpec {
    /// The underlying matching of the boundary points.
    pub pairing: Pairing,
    /// Crossing labels along each chord, from its first endpoint.
    pub orderings: Vec<Vec<usize>>,
    /// Handedness of each crossing, by label.
    pub signs: Vec<i8>,
}

/// Per-pairing crossing geometry shared by expansion and conversion.
pub(crate) struct ChordPlan {
    /// Chord-index pairs `(s, t)`, `s < t`, indexed by crossing label - 1.
    pub crossings: Vec<(usize, usize)>,
    /// Crossing labels incident to each chord, ascending.
    pub labels: Vec<Vec<usize>>,
    /// Boundary orientation of each crossing, by label.
    pub chi: Vec<i8>,
}

impl ChordPlan {
    pub fn new(pairing: &Pairing) -> Self {
        let crossings = required_crossings(pairing);
        let mut labels = vec![Vec::new(); pairing.k()];
        for (i, &(s, t)) in crossings.iter().enumerate() {
            labels[s].push(i + 1);
            labels[t].push(i + 1);
        }
        let chi = crossings
            .iter()
            .map(|&(s, t)| chi(pairing.chords()[s], pairing.chords()[t], pairing.k()))
            .collect();
        Self { crossings, labels, chi }
    }

    /// The chord carrying the over-strand of crossing `label` when its
    /// handedness is `sign`.
    ///
    /// With both chords in their canonical directions, the handedness
    /// determined by putting the first chord of the pair on top is the
    /// negation of the boundary orientation; choosing the observed
    /// handedness therefore picks the over-strand.
    pub fn over_chord(&self, label: usize, sign: i8) -> usize {
        let (s, t) = self.crossings[label - 1];
        if sign == -self.chi[label - 1] {
            s
        } else {
            t
        }
    }

    /// Crossing-sign vector and segment list of the diagram for
    /// `orderings` and `signs`.
    pub fn parts(
        &self,
        pairing: &Pairing,
        orderings: &[Vec<usize>],
        signs: &[i8],
    ) -> (Vec<i8>, Vec<Segment>) {
        let omega = signs.to_vec();
        let segments = pairing
            .chords()
            .iter()
            .zip(orderings)
            .enumerate()
            .map(|(s, (&(a, b), order))| {
                let entries = order
                    .iter()
                    .map(|&l| {
                        let e = l as i32;
                        if self.over_chord(l, signs[l - 1]) == s {
                            e
                        } else {
                            -e
                        }
                    })
                    .collect();
                Segment::open(a, b, entries)
            })
            .collect();
        (omega, segments)
    }

    /// Builds the diagram for `orderings` and `signs` without
    /// validating the embedding.
    pub fn build_unchecked(&self, pairing: &Pairing, orderings: &[Vec<usize>], signs: &[i8]) -> Pgp {
        let (omega, segments) = self.parts(pairing, orderings, signs);
        Pgp::new_unchecked(omega, segments)
    }
}

/// All candidate diagrams over `pairing` whose crossing count is at most
/// `max_crossings`: every realizable choice of crossing orders, with
/// every choice of handedness.
///
/// Returns an empty list when the forced crossings already exceed the
/// cap.  Orderings that cannot be drawn are dropped; since handedness
/// never affects drawability, each realizable ordering contributes
/// `2^c` candidates.
pub fn expand(pairing: &Pairing, max_crossings: usize) -> Vec<BasicDiagramSpec> {
    let plan = ChordPlan::new(pairing);
    let c = plan.crossings.len();
    if c > max_crossings {
        return Vec::new();
    }
    let mut out = Vec::new();
    for_each_ordering(&plan, &mut |orderings| {
        if validate_ordering(&plan, pairing, orderings) {
            for mask in 0u64..1 << c {
                out.push(BasicDiagramSpec {
                    pairing: pairing.clone(),
                    orderings: orderings.to_vec(),
                    signs: mask_signs(mask, c),
                });
            }
        }
    });
    out
}

/// Converts a candidate diagram to its periodic Gauss paragraph.
///
/// The candidate is drawn as specified, then its passings are retracted
/// as far as Θ moves allow, and the least canonical form of the result
/// is returned.
///
/// # Errors
///
/// Returns [`GenerateError::BadPairing`] when the orderings or signs do
/// not match the pairing's crossing set, and
/// [`GenerateError::Realizability`] when the candidate cannot be drawn.
pub fn to_pgp(spec: &BasicDiagramSpec) -> Result<Pgp, GenerateError> {
    let plan = ChordPlan::new(&spec.pairing);
    check_shape(&plan, spec)?;
    let (omega, segments) = plan.parts(&spec.pairing, &spec.orderings, &spec.signs);
    let raw = Pgp::new(omega, segments)?;
    Ok(theta_reduce(&raw))
}

/// Signs of the crossings encoded by `mask`: bit `l - 1` set means
/// crossing `l` is negative.
pub(crate) fn mask_signs(mask: u64, c: usize) -> Vec<i8> {
    (0..c)
        .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
        .collect()
}

/// Whether an ordering choice can be drawn, checked by validating the
/// all-positive diagram it produces.
pub(crate) fn validate_ordering(plan: &ChordPlan, pairing: &Pairing, orderings: &[Vec<usize>]) -> bool {
    let signs = vec![1i8; plan.crossings.len()];
    let (omega, segments) = plan.parts(pairing, orderings, &signs);
    Pgp::new(omega, segments).is_ok()
}

/// Calls `f` with every choice of per-chord crossing orders, in
/// lexicographic order of the permutation tuples.
pub(crate) fn for_each_ordering(plan: &ChordPlan, f: &mut impl FnMut(&[Vec<usize>])) {
    let perms: Vec<Vec<Vec<usize>>> = plan.labels.iter().map(|l| permutations(l)).collect();
    let mut idx = vec![0usize; perms.len()];
    loop {
        let current: Vec<Vec<usize>> = perms
            .iter()
            .zip(&idx)
            .map(|(p, &i)| p[i].clone())
            .collect();
        f(&current);
        let mut s = perms.len();
        loop {
            if s == 0 {
                return;
            }
            s -= 1;
            idx[s] += 1;
            if idx[s] < perms[s].len() {
                break;
            }
            idx[s] = 0;
        }
    }
}

/// All permutations of `items`, in lexicographic order.
fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

fn check_shape(plan: &ChordPlan, spec: &BasicDiagramSpec) -> Result<(), GenerateError> {
    let c = plan.crossings.len();
    if spec.signs.len() != c || spec.signs.iter().any(|&s| s != 1 && s != -1) {
        return Err(GenerateError::BadPairing(format!(
            "expected {c} signs of ±1 for the forced crossings"
        )));
    }
    if spec.orderings.len() != plan.labels.len() {
        return Err(GenerateError::BadPairing(format!(
            "expected one crossing order per chord ({})",
            plan.labels.len()
        )));
    }
    for (order, labels) in spec.orderings.iter().zip(&plan.labels) {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != *labels {
            return Err(GenerateError::BadPairing(format!(
                "chord order {order:?} is not a permutation of its crossings {labels:?}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairing(chords: &[(i32, i32)]) -> Pairing {
        Pairing::new(chords.to_vec()).unwrap()
    }

    #[test]
    fn single_crossing_pairing_expands_to_two_candidates() {
        let p = pairing(&[(1, -2), (2, -1)]);
        let specs = expand(&p, 6);
        assert_eq!(specs.len(), 2);
        assert_eq!(specs[0].orderings, vec![vec![1], vec![1]]);
        assert_eq!(specs[0].signs, vec![1]);
        assert_eq!(specs[1].signs, vec![-1]);
    }

    #[test]
    fn expansion_is_empty_over_the_crossing_cap() {
        let p = pairing(&[(1, -2), (2, -1)]);
        assert_eq!(expand(&p, 0), Vec::new());
    }

    #[test]
    fn mutually_crossing_chords_admit_exactly_two_arrangements() {
        // The three chords pass through a common region, so the triangle
        // they bound can be resolved in two ways; each resolution flips
        // the crossing order on all three chords at once.
        let p = pairing(&[(1, -3), (2, -2), (3, -1)]);
        let specs = expand(&p, 3);
        assert_eq!(specs.len(), 2 * 8);
        let mut orderings: Vec<_> = specs.iter().map(|s| s.orderings.clone()).collect();
        orderings.sort();
        orderings.dedup();
        assert_eq!(orderings.len(), 2);
    }

    #[test]
    fn longitude_from_the_single_through_chord() {
        let p = pairing(&[(1, -1)]);
        let specs = expand(&p, 0);
        assert_eq!(specs.len(), 1);
        let got = to_pgp(&specs[0]).unwrap();
        let want = Pgp::new(vec![], vec![Segment::open(1, -1, vec![])])
            .unwrap()
            .relabel_minimal();
        assert_eq!(got, want);
    }

    #[test]
    fn cup_and_cap_retract_to_the_affine_unknot() {
        let p = pairing(&[(1, 2), (-1, -2)]);
        let specs = expand(&p, 0);
        assert_eq!(specs.len(), 1);
        let got = to_pgp(&specs[0]).unwrap();
        let want = Pgp::new(vec![], vec![Segment::closed(vec![])])
            .unwrap()
            .relabel_minimal();
        assert_eq!(got, want);
    }

    #[test]
    fn wrap_two_crossing_signs_give_the_two_one_crossing_diagrams() {
        let p = pairing(&[(1, -2), (2, -1)]);
        let specs = expand(&p, 1);
        let positive = specs.iter().find(|s| s.signs == vec![1]).unwrap();
        let negative = specs.iter().find(|s| s.signs == vec![-1]).unwrap();
        let plus = Pgp::new(
            vec![1],
            vec![Segment::open(1, -2, vec![-1]), Segment::open(2, -1, vec![1])],
        )
        .unwrap()
        .relabel_minimal();
        let minus = Pgp::new(
            vec![-1],
            vec![Segment::open(1, -2, vec![1]), Segment::open(2, -1, vec![-1])],
        )
        .unwrap()
        .relabel_minimal();
        assert_eq!(to_pgp(positive).unwrap(), plus);
        assert_eq!(to_pgp(negative).unwrap(), minus);
    }

    #[test]
    fn malformed_orderings_are_rejected() {
        let p = pairing(&[(1, -2), (2, -1)]);
        let spec = BasicDiagramSpec {
            pairing: p,
            orderings: vec![vec![1], vec![]],
            signs: vec![1],
        };
        assert!(matches!(to_pgp(&spec), Err(GenerateError::BadPairing(_))));
    }
}
