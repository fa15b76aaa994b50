//! The canonical total order on diagrams and the minimal relabeling.
//!
//! A diagram admits many equivalent encodings: crossing labels are
//! arbitrary names, segments may be listed in any order, each segment may
//! be written in either traversal direction (flipping ω for every crossing
//! with exactly one passage on the reversed segment), and a closed
//! segment's crossing list may start anywhere on the loop.  Passing labels
//! carry no freedom: they are positions along the cutting arc, which runs
//! from the inner to the outer boundary and orders them linearly.
//!
//! [`Pgp::canonical_compare`] is a total order on encodings;
//! [`Pgp::relabel_minimal`] returns the order-minimal encoding of a
//! diagram, the representative used for deduplication everywhere else.

use std::cmp::Ordering;

use crate::code::{endpoint_key, Pgp, Segment};

/// Comparison key for one crossing-list entry: smaller label first, then
/// over-pass (+) before under-pass, then positive ω before negative.
fn crossing_key(c: i32, omega: &[i8]) -> (u32, u8, u8) {
    let idx = c.unsigned_abs() as usize - 1;
    (c.unsigned_abs(), u8::from(c < 0), u8::from(omega[idx] < 0))
}

fn segment_cmp(sa: &Segment, oa: &[i8], sb: &Segment, ob: &[i8]) -> Ordering {
    // A segment touching the boundary precedes a closed one.
    match (sa.boundary, sb.boundary) {
        (Some(_), None) => return Ordering::Less,
        (None, Some(_)) => return Ordering::Greater,
        (Some((a1, a2)), Some((b1, b2))) => {
            let t = (endpoint_key(a1), endpoint_key(a2))
                .cmp(&(endpoint_key(b1), endpoint_key(b2)));
            if t != Ordering::Equal {
                return t;
            }
        }
        (None, None) => {}
    }
    // The segment with more crossings is the smaller one.
    let t = sb.crossings.len().cmp(&sa.crossings.len());
    if t != Ordering::Equal {
        return t;
    }
    for (&ca, &cb) in sa.crossings.iter().zip(&sb.crossings) {
        let t = crossing_key(ca, oa).cmp(&crossing_key(cb, ob));
        if t != Ordering::Equal {
            return t;
        }
    }
    Ordering::Equal
}

/// One entry of a candidate relabeling: which stored segment goes at this
/// position, whether it is written in reverse, and (for closed segments)
/// which rotation of the crossing list is used.
#[derive(Debug, Clone, Copy)]
struct Placement {
    seg: usize,
    reversed: bool,
    rot: usize,
}

impl Pgp {
    /// Total order on diagram encodings, coarsest criteria first: passing
    /// count, crossing count, component count, segment count, then the
    /// segment codes position by position.  Equality on every criterion
    /// forces identical structures.
    pub fn canonical_compare(a: &Pgp, b: &Pgp) -> Ordering {
        a.passings()
            .cmp(&b.passings())
            .then_with(|| a.crossings().cmp(&b.crossings()))
            .then_with(|| {
                a.trace_components()
                    .count()
                    .cmp(&b.trace_components().count())
            })
            .then_with(|| a.segments().len().cmp(&b.segments().len()))
            .then_with(|| {
                for (sa, sb) in a.segments().iter().zip(b.segments()) {
                    let t = segment_cmp(sa, &a.omega, sb, &b.omega);
                    if t != Ordering::Equal {
                        return t;
                    }
                }
                Ordering::Equal
            })
    }

    /// The canonical_compare-minimal encoding of this diagram.
    ///
    /// Open segments are forced: each (segment, direction) pair starts at a
    /// distinct endpoint label, the boundary tuple is compared before any
    /// crossing data, and no two tuples tie — so the minimal arrangement
    /// takes each open segment in the direction starting at its smaller
    /// endpoint and sorts by the resulting tuples.  Closed segments (rare:
    /// only components avoiding the cutting arc) are searched exhaustively
    /// over order, direction and rotation.  Crossing labels are assigned by
    /// first appearance, the unique minimizer of the label criterion.
    pub fn relabel_minimal(&self) -> Pgp {
        let mut open = Vec::new();
        let mut closed = Vec::new();
        for (s, seg) in self.segments.iter().enumerate() {
            match seg.boundary {
                Some((a, b)) => {
                    let reversed =
                        (endpoint_key(b), endpoint_key(a)) < (endpoint_key(a), endpoint_key(b));
                    let (first, second) = if reversed { (b, a) } else { (a, b) };
                    open.push((endpoint_key(first), endpoint_key(second), s, reversed));
                }
                None => closed.push(s),
            }
        }
        open.sort();
        let base: Vec<Placement> = open
            .into_iter()
            .map(|(_, _, seg, reversed)| Placement {
                seg,
                reversed,
                rot: 0,
            })
            .collect();
        if closed.is_empty() {
            return self.emit(&base);
        }
        let mut arrangement = base;
        let mut best: Option<Pgp> = None;
        self.search_closed(&mut arrangement, &mut closed, &mut best);
        best.expect("closed search yields at least one candidate")
    }

    /// True when this encoding is its own minimal relabeling.
    pub fn is_canonical(&self) -> bool {
        self.relabel_minimal() == *self
    }

    fn search_closed(
        &self,
        arrangement: &mut Vec<Placement>,
        remaining: &mut Vec<usize>,
        best: &mut Option<Pgp>,
    ) {
        if remaining.is_empty() {
            let candidate = self.emit(arrangement);
            let better = match best {
                Some(b) => Pgp::canonical_compare(&candidate, b) == Ordering::Less,
                None => true,
            };
            if better {
                *best = Some(candidate);
            }
            return;
        }
        for i in 0..remaining.len() {
            let seg = remaining[i];
            // Indistinguishable closed segments (possible only when
            // crossing-free) need only one representative per step.
            if remaining[..i]
                .iter()
                .any(|&o| self.segments[o] == self.segments[seg])
            {
                continue;
            }
            remaining.swap_remove(i);
            let len = self.segments[seg].crossings.len();
            let choices: &[bool] = if len == 0 { &[false] } else { &[false, true] };
            for &reversed in choices {
                for rot in 0..len.max(1) {
                    arrangement.push(Placement { seg, reversed, rot });
                    self.search_closed(arrangement, remaining, best);
                    arrangement.pop();
                }
            }
            remaining.push(seg);
            let last = remaining.len() - 1;
            remaining.swap(i, last);
        }
    }

    /// Materializes one candidate relabeling: applies directions and
    /// rotations and assigns crossing labels by first appearance.  ω is
    /// relative to canonical directions, so re-writing an open segment
    /// backwards leaves it alone; reversing a closed segment (whose
    /// canonical direction is its list order) flips the handedness of
    /// every crossing with exactly one passage on it.
    fn emit(&self, placements: &[Placement]) -> Pgp {
        let n = self.crossings();
        let mut seg_reversed = vec![false; self.segments.len()];
        for p in placements {
            seg_reversed[p.seg] = p.reversed;
        }
        let mut new_label = vec![0u32; n];
        let mut next = 0u32;
        let mut segments = Vec::with_capacity(placements.len());
        for p in placements {
            let seg = &self.segments[p.seg];
            let mut list = seg.crossings.clone();
            if p.reversed {
                list.reverse();
            }
            list.rotate_left(p.rot);
            for c in &mut list {
                let idx = c.unsigned_abs() as usize - 1;
                if new_label[idx] == 0 {
                    next += 1;
                    new_label[idx] = next;
                }
                *c = new_label[idx] as i32 * c.signum();
            }
            let boundary = seg
                .boundary
                .map(|(a, b)| if p.reversed { (b, a) } else { (a, b) });
            segments.push(Segment {
                boundary,
                crossings: list,
            });
        }
        let (over_seg, under_seg) = self.passage_segments();
        let flip = |s: usize| -> i8 {
            if seg_reversed[s] && self.segments[s].is_closed() {
                -1
            } else {
                1
            }
        };
        let mut omega = vec![0i8; n];
        for old in 0..n {
            omega[new_label[old] as usize - 1] =
                self.omega[old] * flip(over_seg[old]) * flip(under_seg[old]);
        }
        Pgp::new_unchecked(omega, segments)
    }
}
