//! Perfect matchings of the boundary points and their chord geometry.
//!
//! Cutting the annulus along the cutting curve leaves a square whose
//! bottom edge carries the points `+1, …, +k` and whose top edge carries
//! their glued copies `-1, …, -k`.  A basic diagram joins these `2k`
//! points by `k` chords drawn in minimal position, so which chords cross
//! — and the handedness a crossing gets once an over-strand is chosen —
//! is determined by the endpoints alone.  This module owns that
//! combinatorics: enumeration of matchings (with pruning by a crossing
//! cap), the forced crossing set, and the connectivity test that rejects
//! split diagrams.

use serde::{Deserialize, Serialize};

use crate::GenerateError;

/// Sort key placing bottom points before top points, then by position.
fn key(x: i32) -> (u8, i32) {
    if x > 0 {
        (0, x)
    } else {
        (1, -x)
    }
}

/// Index of a boundary point in the counterclockwise boundary cycle of
/// the square: bottom `+1..+k` left to right, then top `-k..-1` right to
/// left.
fn circle(x: i32, k: usize) -> usize {
    if x > 0 {
        x as usize - 1
    } else {
        2 * k - (-x) as usize
    }
}

/// Signed boundary label of a circle index.
fn signed(idx: usize, k: usize) -> i32 {
    if idx < k {
        idx as i32 + 1
    } else {
        -((2 * k - idx) as i32)
    }
}

/// A perfect matching of the `2k` boundary points `{±1, …, ±k}`.
///
/// Each chord is stored with its canonically first endpoint (bottom
/// before top, then smaller position) first, and the chords are sorted
/// by that endpoint, so equal matchings compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pairing {
    chords: Vec<(i32, i32)>,
    k: usize,
}

impl Pairing {
    /// Builds a pairing from a chord list, in any order and orientation.
    ///
    /// # Errors
    ///
    /// Returns [`GenerateError::BadPairing`] unless every point of
    /// `{±1, …, ±k}` (with `k` the number of chords) appears exactly
    /// once.
    pub fn new(chords: Vec<(i32, i32)>) -> Result<Self, GenerateError> {
        let k = chords.len();
        let mut seen = vec![false; 2 * k];
        for &(a, b) in &chords {
            for x in [a, b] {
                if x == 0 || x.unsigned_abs() as usize > k {
                    return Err(GenerateError::BadPairing(format!(
                        "point {x} is outside ±1..±{k}"
                    )));
                }
                let idx = circle(x, k);
                if seen[idx] {
                    return Err(GenerateError::BadPairing(format!("point {x} appears twice")));
                }
                seen[idx] = true;
            }
        }
        let mut chords: Vec<(i32, i32)> = chords
            .into_iter()
            .map(|(a, b)| if key(a) <= key(b) { (a, b) } else { (b, a) })
            .collect();
        chords.sort_by_key(|&(a, _)| key(a));
        Ok(Self { chords, k })
    }

    /// Number of passings on the cutting curve.
    pub fn k(&self) -> usize {
        self.k
    }

    /// The chords in canonical order, each with its canonically first
    /// endpoint first.
    pub fn chords(&self) -> &[(i32, i32)] {
        &self.chords
    }

    /// Whether the diagram is split: the underlying annulus graph,
    /// whose vertices are the chords and whose edges join chords that
    /// share a passing or must cross, is disconnected.
    ///
    /// Split diagrams present split links (including parallel
    /// longitudes), which the census excludes.
    pub fn is_split(&self) -> bool {
        let k = self.k;
        if k <= 1 {
            return false;
        }
        let mut owner = vec![0usize; 2 * k];
        for (s, &(a, b)) in self.chords.iter().enumerate() {
            owner[circle(a, k)] = s;
            owner[circle(b, k)] = s;
        }
        let mut dsu = Dsu::new(k);
        for i in 1..=k {
            dsu.union(owner[circle(i as i32, k)], owner[circle(-(i as i32), k)]);
        }
        for (s, t) in required_crossings(self) {
            dsu.union(s, t);
        }
        (0..k).filter(|&s| dsu.find(s) == s).count() > 1
    }

    /// Whether some return chord joining two adjacent passings can be
    /// retracted across the cutting curve without leaving the world of
    /// basic diagrams, making every candidate over this matching
    /// redundant.
    ///
    /// Such a chord is crossingless (nothing fits inside its span), so
    /// a retraction removing its two passings applies to every
    /// candidate and splices the two counterpart strands into one.  The
    /// result is again a basic-diagram candidate — over the smaller
    /// matching obtained by the same splice — unless the spliced strand
    /// would cross some strand twice or cross itself.  When a splice
    /// stays basic, every candidate here reduces to a candidate the
    /// smaller matching already generates, so the whole matching can be
    /// skipped; the retraction also preserves connectivity, because the
    /// return chord touches the rest of the diagram only through its
    /// two passings.
    pub fn bite_redundant(&self) -> bool {
        let mut partner = vec![0usize; 2 * self.k];
        for &(a, b) in &self.chords {
            let (i, j) = (circle(a, self.k), circle(b, self.k));
            partner[i] = j;
            partner[j] = i;
        }
        bite_redundant_partner(&partner, self.k)
    }
}

/// The set of chord pairs forced to cross, as index pairs `(s, t)` with
/// `s < t` into [`Pairing::chords`], in lexicographic order.
///
/// Two chords must cross exactly when their endpoints interleave around
/// the boundary of the square.  Crossing labels `1, 2, …` used by the
/// expansion stage follow the order of this list.
pub fn required_crossings(pairing: &Pairing) -> Vec<(usize, usize)> {
    let k = pairing.k;
    let mut out = Vec::new();
    for s in 0..pairing.chords.len() {
        for t in s + 1..pairing.chords.len() {
            if interleaved(pairing.chords[s], pairing.chords[t], k) {
                out.push((s, t));
            }
        }
    }
    out
}

/// Whether the endpoints of two chords interleave around the boundary.
fn interleaved(a: (i32, i32), b: (i32, i32), k: usize) -> bool {
    let (lo, hi) = span(a, k);
    let inside = |x: i32| {
        let i = circle(x, k);
        lo < i && i < hi
    };
    inside(b.0) != inside(b.1)
}

/// Circle-index span of a chord, smaller index first.
fn span(a: (i32, i32), k: usize) -> (usize, usize) {
    let (i, j) = (circle(a.0, k), circle(a.1, k));
    (i.min(j), i.max(j))
}

/// Orientation of a forced crossing between interleaved chords `a` and
/// `b`, with each chord directed from its canonically first endpoint.
///
/// Walking counterclockwise around the boundary from the start of `a`,
/// the result is `+1` when the start of `b` comes before the end of `a`
/// (the frame `(a, b)` is positively oriented at the crossing point) and
/// `-1` otherwise.
pub(crate) fn chi(a: (i32, i32), b: (i32, i32), k: usize) -> i8 {
    let base = circle(a.0, k);
    let r = |x: i32| (circle(x, k) + 2 * k - base) % (2 * k);
    if r(b.0) < r(a.1) {
        1
    } else {
        -1
    }
}

/// All perfect matchings of the `2k` boundary points, in the order the
/// capped enumerator produces them.
///
/// There are `(2k-1)!!` matchings, so this is only practical for small
/// `k`; the census pipeline enumerates with crossing-cap pruning
/// instead of materializing the full list.
pub fn enumerate_pairings(k: usize) -> Vec<Pairing> {
    let mut out = Vec::new();
    for_each_capped(k, usize::MAX, &mut |p, _| out.push(p));
    out
}

/// Enumerates matchings of `2k` points whose forced crossing count is at
/// most `cap`, calling `f(pairing, crossings)` for each.
pub(crate) fn for_each_capped(k: usize, cap: usize, f: &mut impl FnMut(Pairing, usize)) {
    for_each_leaf(k, cap, &mut |leaf| f(leaf.to_pairing(), leaf.crossings));
}

/// A completed matching as seen inside the enumerator, exposed without
/// allocating so that the census can count and filter billions of
/// matchings cheaply.
pub(crate) struct Leaf<'a> {
    pub k: usize,
    /// Forced crossing count of the matching.
    pub crossings: usize,
    /// Matched partner by circle index.
    pub partner: &'a [usize],
    /// Per-chord forced crossing counts, in chord placement order.
    pub counts: &'a [usize],
}

impl Leaf<'_> {
    pub fn to_pairing(&self) -> Pairing {
        let k = self.k;
        let mut chords: Vec<(i32, i32)> = (0..2 * k)
            .filter(|&i| i < self.partner[i])
            .map(|i| {
                let (a, b) = (signed(i, k), signed(self.partner[i], k));
                if key(a) <= key(b) {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        chords.sort_by_key(|&(a, _)| key(a));
        Pairing { chords, k }
    }

    /// Number of basic-diagram candidates over this matching: every
    /// per-segment crossing order times every over/under assignment,
    /// before any realizability filtering.  Saturates on overflow.
    pub fn raw_candidates(&self) -> u64 {
        let mut n: u64 = if self.crossings < 64 { 1u64 << self.crossings } else { u64::MAX };
        for &m in self.counts {
            for r in 2..=m as u64 {
                n = n.saturating_mul(r);
            }
        }
        n
    }

    /// Whether the diagram is split (see [`Pairing::is_split`]), using a
    /// caller-provided scratch buffer to avoid per-leaf allocation.
    pub fn is_split(&self, scratch: &mut Vec<usize>) -> bool {
        let (k, n) = (self.k, 2 * self.k);
        if k <= 1 {
            return false;
        }
        scratch.clear();
        scratch.extend(0..n);
        let root = |dsu: &mut Vec<usize>, mut x: usize| {
            while dsu[x] != x {
                dsu[x] = dsu[dsu[x]];
                x = dsu[x];
            }
            x
        };
        // Chords are named by their smaller circle index; each passing
        // glues the chord at i to the chord at the opposite point.
        let chord = |i: usize| i.min(self.partner[i]);
        for i in 0..k {
            let (a, b) = (root(scratch, chord(i)), root(scratch, chord(n - 1 - i)));
            scratch[a] = b;
        }
        for i in 0..n {
            if i >= self.partner[i] {
                continue;
            }
            for j in i + 1..n {
                if j >= self.partner[j] {
                    continue;
                }
                if interleaved_spans((i, self.partner[i]), (j, self.partner[j])) {
                    let (a, b) = (root(scratch, i), root(scratch, j));
                    scratch[a] = b;
                }
            }
        }
        let mut roots = 0;
        for i in 0..n {
            if i < self.partner[i] && root(scratch, i) == i {
                roots += 1;
            }
        }
        roots > 1
    }

    /// Whether some return chord makes this matching redundant; see
    /// [`Pairing::bite_redundant`].
    pub fn bite_redundant(&self) -> bool {
        bite_redundant_partner(self.partner, self.k)
    }
}

/// Core of [`Pairing::bite_redundant`] on a circle-index partner array.
fn bite_redundant_partner(partner: &[usize], k: usize) -> bool {
    let n = 2 * k;
    'bites: for c in 0..n.saturating_sub(1) {
        if c + 1 == k || partner[c] != c + 1 {
            // Either not matched to its neighbour, or the corner pair
            // joining the last bottom point to the last top point,
            // which is a through chord rather than a return.
            continue;
        }
        // Counterpart points across the curve, and the two strands the
        // retraction would splice.
        let (a, b) = (n - 1 - c, n - 2 - c);
        if partner[a] == b {
            continue; // One strand closes onto itself: not basic.
        }
        let x = (a.min(partner[a]), a.max(partner[a]));
        let y = (b.min(partner[b]), b.max(partner[b]));
        if interleaved_spans(x, y) {
            continue; // The spliced strand would cross itself.
        }
        for i in 0..n {
            if i >= partner[i] || i == c || i == x.0 || i == y.0 {
                continue;
            }
            let z = (i, partner[i]);
            if interleaved_spans(z, x) && interleaved_spans(z, y) {
                continue 'bites; // Double crossing after the splice.
            }
        }
        return true;
    }
    false
}

/// Whether two chords given by circle-index endpoint pairs interleave.
fn interleaved_spans(a: (usize, usize), b: (usize, usize)) -> bool {
    let (lo, hi) = (a.0.min(a.1), a.0.max(a.1));
    let inside = |x: usize| lo < x && x < hi;
    inside(b.0) != inside(b.1)
}

/// Enumerates matchings of `2k` points whose forced crossing count is at
/// most `cap`, presenting each as an allocation-free [`Leaf`].
///
/// Chords are matched greedily from the lowest unmatched boundary
/// index, and a branch is abandoned as soon as the crossings already
/// committed, plus one for every placed chord with an odd number of
/// unmatched points inside its span (each such chord must be crossed at
/// least once more), exceed the cap.
pub(crate) fn for_each_leaf(k: usize, cap: usize, f: &mut impl FnMut(&Leaf)) {
    if k == 0 {
        f(&Leaf { k: 0, crossings: 0, partner: &[], counts: &[] });
        return;
    }
    let mut state = Enumerator {
        k,
        cap,
        partner: vec![usize::MAX; 2 * k],
        spans: Vec::with_capacity(k),
        inside: Vec::with_capacity(k),
        counts: Vec::with_capacity(k),
        total: 0,
    };
    state.recurse(f);
}

struct Enumerator {
    k: usize,
    cap: usize,
    /// Matched partner by circle index, or `usize::MAX`.
    partner: Vec<usize>,
    /// Circle-index spans of the placed chords.
    spans: Vec<(usize, usize)>,
    /// Unmatched points strictly inside each placed chord's span.
    inside: Vec<usize>,
    /// Forced crossings per placed chord.
    counts: Vec<usize>,
    total: usize,
}

impl Enumerator {
    fn recurse(&mut self, f: &mut impl FnMut(&Leaf)) {
        let Some(i) = self.partner.iter().position(|&p| p == usize::MAX) else {
            f(&Leaf {
                k: self.k,
                crossings: self.total,
                partner: &self.partner,
                counts: &self.counts,
            });
            return;
        };
        for j in i + 1..2 * self.k {
            if self.partner[j] != usize::MAX {
                continue;
            }
            let mut crossings = 0;
            for (&(lo, hi), _) in self.spans.iter().zip(&self.inside) {
                let ii = lo < i && i < hi;
                let ji = lo < j && j < hi;
                if ii != ji {
                    crossings += 1;
                }
            }
            if self.total + crossings > self.cap {
                continue;
            }
            self.place(i, j, crossings);
            if self.lower_bound_ok() {
                self.recurse(f);
            }
            self.unplace(i, j, crossings);
        }
    }

    fn place(&mut self, i: usize, j: usize, crossings: usize) {
        self.partner[i] = j;
        self.partner[j] = i;
        self.total += crossings;
        for ((&(lo, hi), inside), count) in
            self.spans.iter().zip(&mut self.inside).zip(&mut self.counts)
        {
            let ii = lo < i && i < hi;
            let ji = lo < j && j < hi;
            *inside -= usize::from(ii) + usize::from(ji);
            *count += usize::from(ii != ji);
        }
        let own = (i + 1..j).filter(|&x| self.partner[x] == usize::MAX).count();
        self.spans.push((i, j));
        self.inside.push(own);
        self.counts.push(crossings);
    }

    fn unplace(&mut self, i: usize, j: usize, crossings: usize) {
        self.spans.pop();
        self.inside.pop();
        self.counts.pop();
        for ((&(lo, hi), inside), count) in
            self.spans.iter().zip(&mut self.inside).zip(&mut self.counts)
        {
            let ii = lo < i && i < hi;
            let ji = lo < j && j < hi;
            *inside += usize::from(ii) + usize::from(ji);
            *count -= usize::from(ii != ji);
        }
        self.total -= crossings;
        self.partner[i] = usize::MAX;
        self.partner[j] = usize::MAX;
    }

    /// Every placed chord with an odd number of unmatched points inside
    /// its span must be crossed at least once more, and those future
    /// crossings are distinct per chord.
    fn lower_bound_ok(&self) -> bool {
        if self.cap == usize::MAX {
            return true;
        }
        let forced = self.inside.iter().filter(|&&n| n % 2 == 1).count();
        self.total + forced <= self.cap
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_normalizes_orientation_and_order() {
        let p = Pairing::new(vec![(-1, 2), (1, -2)]).unwrap();
        assert_eq!(p.chords(), &[(1, -2), (2, -1)]);
        assert_eq!(p.k(), 2);
    }

    #[test]
    fn pairing_rejects_repeats_and_out_of_range() {
        assert!(matches!(
            Pairing::new(vec![(1, 1), (2, -2)]),
            Err(GenerateError::BadPairing(_))
        ));
        assert!(matches!(
            Pairing::new(vec![(1, -3), (2, -2)]),
            Err(GenerateError::BadPairing(_))
        ));
    }

    #[test]
    fn double_factorial_counts() {
        assert_eq!(enumerate_pairings(1).len(), 1);
        assert_eq!(enumerate_pairings(2).len(), 3);
        assert_eq!(enumerate_pairings(3).len(), 15);
        assert_eq!(enumerate_pairings(4).len(), 105);
    }

    #[test]
    fn wrap_two_chords_must_cross() {
        let p = Pairing::new(vec![(1, -2), (2, -1)]).unwrap();
        assert_eq!(required_crossings(&p), vec![(0, 1)]);
    }

    #[test]
    fn nested_returns_are_crossingless() {
        let p = Pairing::new(vec![(1, 4), (2, 3), (-1, -4), (-2, -3)]).unwrap();
        assert_eq!(required_crossings(&p), Vec::new());
    }

    #[test]
    fn half_twist_chords_cross_pairwise() {
        let p = Pairing::new(vec![(1, -3), (2, -2), (3, -1)]).unwrap();
        assert_eq!(required_crossings(&p), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn capped_enumeration_prunes_to_the_crossingless_matchings() {
        let mut seen = Vec::new();
        for_each_capped(3, 0, &mut |p, c| {
            assert_eq!(c, 0);
            seen.push(p);
        });
        // Catalan number C_3: crossingless matchings of 6 points.
        assert_eq!(seen.len(), 5);
        for p in &seen {
            assert!(required_crossings(p).is_empty());
        }
    }

    #[test]
    fn capped_enumeration_counts_match_the_full_enumeration() {
        for k in 0..=4 {
            let full = enumerate_pairings(k);
            for cap in 0..=7 {
                let mut got = 0usize;
                for_each_capped(k, cap, &mut |p, c| {
                    assert_eq!(required_crossings(&p).len(), c);
                    assert!(c <= cap);
                    got += 1;
                });
                let want = full
                    .iter()
                    .filter(|p| required_crossings(p).len() <= cap)
                    .count();
                assert_eq!(got, want, "k={k} cap={cap}");
            }
        }
    }

    #[test]
    fn parallel_longitudes_are_split() {
        let p = Pairing::new(vec![(1, -1), (2, -2)]).unwrap();
        assert!(p.is_split());
    }

    #[test]
    fn crossing_chords_are_not_split() {
        let p = Pairing::new(vec![(1, -2), (2, -1)]).unwrap();
        assert!(!p.is_split());
    }

    #[test]
    fn cup_cap_is_not_split() {
        let p = Pairing::new(vec![(1, 2), (-1, -2)]).unwrap();
        assert!(!p.is_split());
    }

    #[test]
    fn disjoint_cup_cap_pairs_are_split() {
        let p = Pairing::new(vec![(1, 2), (-1, -2), (3, 4), (-3, -4)]).unwrap();
        assert!(p.is_split());
    }

    #[test]
    fn crossing_orientation_of_the_wrap_two_pair() {
        assert_eq!(chi((1, -2), (2, -1), 2), 1);
    }

    /// Runs `f` on the enumerator leaf for the given chords.
    fn with_leaf(chords: Vec<(i32, i32)>, f: &mut impl FnMut(&Leaf)) {
        let want = Pairing::new(chords).unwrap();
        let mut found = false;
        for_each_leaf(want.k(), usize::MAX, &mut |leaf| {
            if leaf.to_pairing() == want {
                found = true;
                f(leaf);
            }
        });
        assert!(found);
    }

    #[test]
    fn nested_returns_have_a_retractable_bite() {
        with_leaf(vec![(1, 4), (2, 3), (-1, -2), (-3, -4)], &mut |leaf| {
            assert!(leaf.bite_redundant());
        });
    }

    #[test]
    fn the_single_return_pair_is_not_redundant() {
        // Retracting the cup would close the cap into a loop.
        with_leaf(vec![(1, 2), (-1, -2)], &mut |leaf| {
            assert!(!leaf.bite_redundant());
        });
    }

    #[test]
    fn through_chords_have_no_bites() {
        with_leaf(vec![(1, -2), (2, -1)], &mut |leaf| {
            assert!(!leaf.bite_redundant());
        });
    }

    #[test]
    fn a_clasped_return_is_not_redundant() {
        // The two strands over the cup cross each other, so the splice
        // would cross itself: the candidates here reach states no
        // smaller matching generates.
        with_leaf(vec![(1, 2), (3, -2), (-1, -3)], &mut |leaf| {
            assert!(!leaf.bite_redundant());
        });
    }

    #[test]
    fn a_return_clasped_through_a_third_chord_is_not_redundant() {
        // The strands over the cup avoid each other but both cross the
        // chords +4/-4 and +3/-3, which the spliced strand would then
        // cross twice.
        with_leaf(vec![(1, 2), (5, -1), (-5, -2), (4, -4), (3, -3)], &mut |leaf| {
            assert!(!leaf.bite_redundant());
        });
    }

    #[test]
    fn leaf_views_agree_with_pairing_methods() {
        let mut scratch = Vec::new();
        for k in 0..=4 {
            for_each_leaf(k, usize::MAX, &mut |leaf| {
                let p = leaf.to_pairing();
                let forced = required_crossings(&p);
                assert_eq!(leaf.crossings, forced.len());
                assert_eq!(leaf.is_split(&mut scratch), p.is_split());
                let mut per_chord = vec![0usize; k];
                for &(s, t) in &forced {
                    per_chord[s] += 1;
                    per_chord[t] += 1;
                }
                let want: u64 = (1u64 << forced.len())
                    * per_chord
                        .iter()
                        .map(|&m| (1..=m as u64).product::<u64>())
                        .product::<u64>();
                assert_eq!(leaf.raw_candidates(), want);
            });
        }
    }
}
