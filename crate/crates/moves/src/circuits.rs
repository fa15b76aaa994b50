//! A strand-circuit view of a diagram.
//!
//! Each link component is unrolled into a closed walk of *items*: passages
//! through crossings (with their over/under status) and crossings of the
//! cutting curve (with their position and direction).  Moves become local
//! edits of these walks.  The handedness of each crossing is tracked
//! relative to the walk traversal directions; a rewrite never reverses a
//! walk, so handedness entries only change when a move genuinely mirrors
//! part of the diagram.

use stgen_pgp::{Pgp, Segment, ValidationReport};

/// One event along a strand walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Item {
    /// The strand crosses the cutting curve at position `pos` (1-based).
    /// `north` means it leaves through the top copy and re-enters from the
    /// bottom copy — the direction that contributes +1 to the winding.
    Passing { pos: usize, north: bool },
    /// The strand passes through crossing `label` (1-based).
    Passage { label: usize, over: bool },
}

impl Item {
    pub(crate) fn is_passing(self) -> bool {
        matches!(self, Item::Passing { .. })
    }

    /// The signed crossing entry for a passage item.
    fn signed(self) -> i32 {
        match self {
            Item::Passage { label, over } => {
                let l = label as i32;
                if over {
                    l
                } else {
                    -l
                }
            }
            Item::Passing { .. } => unreachable!("passing item in a closed walk"),
        }
    }
}

/// The walk decomposition of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Circuits {
    /// Closed walks, one per link component; an empty walk is a
    /// crossing-free affine loop.
    pub walks: Vec<Vec<Item>>,
    /// Handedness per crossing label−1, relative to the traversal
    /// directions of the walks through its two branches.
    pub omega: Vec<i8>,
    /// Number of passings.
    pub k: usize,
}

impl Circuits {
    pub(crate) fn from_pgp(p: &Pgp) -> Circuits {
        let comps = p.trace_components();
        let (over_seg, under_seg) = p.passage_segments();
        // Canonical-direction handedness → traversal-relative handedness.
        let factor: Vec<i8> = p
            .segments()
            .iter()
            .enumerate()
            .map(|(s, seg)| {
                if comps.segment_forward[s] == seg.canonical_forward() {
                    1
                } else {
                    -1
                }
            })
            .collect();
        let omega = (0..p.crossings())
            .map(|c| p.omega()[c] * factor[over_seg[c]] * factor[under_seg[c]])
            .collect();

        let mut walks = Vec::new();
        for comp in &comps.list {
            let mut walk = Vec::new();
            for &s in &comp.segments {
                let seg = &p.segments()[s];
                let forward = comps.segment_forward[s];
                let mut entries = seg.crossings.clone();
                if !forward {
                    entries.reverse();
                }
                for e in entries {
                    walk.push(Item::Passage {
                        label: e.unsigned_abs() as usize,
                        over: e > 0,
                    });
                }
                if let Some((a, b)) = seg.boundary {
                    let exit = if forward { b } else { a };
                    walk.push(Item::Passing {
                        pos: exit.unsigned_abs() as usize,
                        north: exit < 0,
                    });
                }
            }
            walks.push(walk);
        }
        Circuits {
            walks,
            omega,
            k: p.passings(),
        }
    }

    /// Cuts the walks back into segments and restores the
    /// canonical-direction handedness convention.  Fails when the edited
    /// walks do not describe a valid diagram.
    pub(crate) fn to_pgp(&self) -> Result<Pgp, ValidationReport> {
        let mut segments = Vec::new();
        for walk in &self.walks {
            let passings: Vec<usize> = walk
                .iter()
                .enumerate()
                .filter(|(_, it)| it.is_passing())
                .map(|(i, _)| i)
                .collect();
            if passings.is_empty() {
                segments.push(Segment::closed(walk.iter().map(|it| it.signed()).collect()));
                continue;
            }
            let len = walk.len();
            for (pi, &a) in passings.iter().enumerate() {
                let b = passings[(pi + 1) % passings.len()];
                let Item::Passing { pos: pa, north: na } = walk[a] else {
                    unreachable!()
                };
                let Item::Passing { pos: pb, north: nb } = walk[b] else {
                    unreachable!()
                };
                let start = if na { pa as i32 } else { -(pa as i32) };
                let end = if nb { -(pb as i32) } else { pb as i32 };
                let mut list = Vec::new();
                let mut i = (a + 1) % len;
                while i != b {
                    list.push(walk[i].signed());
                    i = (i + 1) % len;
                }
                segments.push(Segment::open(start, end, list));
            }
        }

        let mut omega = self.omega.clone();
        for seg in &segments {
            if !seg.canonical_forward() {
                for &e in &seg.crossings {
                    omega[e.unsigned_abs() as usize - 1] *= -1;
                }
            }
        }
        Pgp::new(omega, segments)
    }

    pub(crate) fn crossings(&self) -> usize {
        self.omega.len()
    }

    /// The (walk, index) locus of each crossing's passages: `[over, under]`.
    pub(crate) fn passage_loci(&self) -> Vec<[(usize, usize); 2]> {
        let mut loci = vec![[(usize::MAX, usize::MAX); 2]; self.omega.len()];
        for (w, walk) in self.walks.iter().enumerate() {
            for (i, item) in walk.iter().enumerate() {
                if let Item::Passage { label, over } = *item {
                    loci[label - 1][usize::from(!over)] = (w, i);
                }
            }
        }
        loci
    }

    /// The (walk, index, north) locus of each position's passing.
    pub(crate) fn passing_loci(&self) -> Vec<(usize, usize, bool)> {
        let mut loci = vec![(usize::MAX, usize::MAX, false); self.k];
        for (w, walk) in self.walks.iter().enumerate() {
            for (i, item) in walk.iter().enumerate() {
                if let Item::Passing { pos, north } = *item {
                    loci[pos - 1] = (w, i, north);
                }
            }
        }
        loci
    }

    /// Removes the given crossing labels (whose items must already be gone
    /// from the walks) and compacts the remaining labels downward.
    pub(crate) fn drop_crossings(&mut self, labels: &[usize]) {
        let n = self.omega.len();
        let mut map = vec![0usize; n + 1];
        let mut next = 0;
        for (l, slot) in map.iter_mut().enumerate().skip(1) {
            if !labels.contains(&l) {
                next += 1;
                *slot = next;
            }
        }
        self.omega = (1..=n)
            .filter(|l| !labels.contains(l))
            .map(|l| self.omega[l - 1])
            .collect();
        for walk in &mut self.walks {
            for item in walk.iter_mut() {
                if let Item::Passage { label, .. } = item {
                    debug_assert!(map[*label] != 0, "dropped crossing still present");
                    *label = map[*label];
                }
            }
        }
    }

    /// Removes positions `p` and `p+1` (whose passing items must already be
    /// gone) and renumbers the rest.
    pub(crate) fn drop_passings(&mut self, p: usize) {
        for walk in &mut self.walks {
            for item in walk.iter_mut() {
                if let Item::Passing { pos, .. } = item {
                    debug_assert!(*pos != p && *pos != p + 1, "dropped passing still present");
                    if *pos > p + 1 {
                        *pos -= 2;
                    }
                }
            }
        }
        self.k -= 2;
    }

    /// Makes room for two new positions `s+1`, `s+2` by shifting every
    /// position greater than `s` up by two.
    pub(crate) fn shift_passings_up(&mut self, s: usize) {
        for walk in &mut self.walks {
            for item in walk.iter_mut() {
                if let Item::Passing { pos, .. } = item {
                    if *pos > s {
                        *pos += 2;
                    }
                }
            }
        }
        self.k += 2;
    }
}

/// An edit of several walks, phrased against the *original* indices so
/// that independent edits never have to reason about each other's shifts.
#[derive(Debug, Clone)]
pub(crate) struct EditPlan {
    removed: Vec<Vec<bool>>,
    replaced: Vec<Vec<Option<Item>>>,
    before: Vec<Vec<Vec<Item>>>,
    after: Vec<Vec<Vec<Item>>>,
}

impl EditPlan {
    pub(crate) fn new(c: &Circuits) -> EditPlan {
        let shape = |f: fn(usize) -> Vec<Vec<Item>>| -> Vec<Vec<Vec<Item>>> {
            c.walks.iter().map(|w| f(w.len())).collect()
        };
        EditPlan {
            removed: c.walks.iter().map(|w| vec![false; w.len()]).collect(),
            replaced: c.walks.iter().map(|w| vec![None; w.len()]).collect(),
            before: shape(|n| vec![Vec::new(); n]),
            after: shape(|n| vec![Vec::new(); n]),
        }
    }

    pub(crate) fn remove(&mut self, w: usize, i: usize) {
        debug_assert!(!self.removed[w][i]);
        self.removed[w][i] = true;
    }

    pub(crate) fn replace(&mut self, w: usize, i: usize, item: Item) {
        debug_assert!(self.replaced[w][i].is_none());
        self.replaced[w][i] = Some(item);
    }

    pub(crate) fn insert_before(&mut self, w: usize, i: usize, items: Vec<Item>) {
        self.before[w][i].extend(items);
    }

    pub(crate) fn insert_after(&mut self, w: usize, i: usize, items: Vec<Item>) {
        self.after[w][i].extend(items);
    }

    /// Inserts into the conceptual gap before item `i` of walk `w`; for an
    /// empty walk `i` must be 0 and the items become the whole walk.
    pub(crate) fn insert_gap(&mut self, w: usize, i: usize, items: Vec<Item>, empty_walk: bool) {
        if empty_walk {
            debug_assert!(i == 0);
            self.before[w].push(items);
        } else {
            self.insert_before(w, i, items);
        }
    }

    pub(crate) fn apply(self, c: &Circuits) -> Circuits {
        let mut out = c.clone();
        for (w, walk) in c.walks.iter().enumerate() {
            let mut new_walk = Vec::new();
            for i in 0..self.before[w].len() {
                new_walk.extend(self.before[w][i].iter().copied());
                if i < walk.len() && !self.removed[w][i] {
                    new_walk.push(self.replaced[w][i].unwrap_or(walk[i]));
                }
                if i < self.after[w].len() {
                    new_walk.extend(self.after[w][i].iter().copied());
                }
            }
            out.walks[w] = new_walk;
        }
        out
    }
}

/// CCW germ slot entered by a walk arriving at a crossing: the germ order
/// is [over-in, under-out, over-out, under-in] for ω=+1 and
/// [over-in, under-in, over-out, under-out] for ω=−1.
pub(crate) fn in_slot(omega: i8, over: bool) -> usize {
    match (omega > 0, over) {
        (_, true) => 0,
        (true, false) => 3,
        (false, false) => 1,
    }
}

/// CCW germ slot left by a walk departing a crossing.
pub(crate) fn out_slot(omega: i8, over: bool) -> usize {
    match (omega > 0, over) {
        (_, true) => 2,
        (true, false) => 1,
        (false, false) => 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wrap2_neg() -> Pgp {
        Pgp::parse("omega=[-]; seg: (1,-2) : 1 ; seg: (2,-1) : -1").unwrap()
    }

    #[test]
    fn round_trips_through_walks() {
        for text in [
            "omega=[]; seg: (1,-1) :",
            "omega=[-]; seg: (1,-2) : 1 ; seg: (2,-1) : -1",
            "omega=[-,-]; seg: (1,-1) : 1,-2 ; seg: (2,-2) : -1,2",
            "omega=[+]; seg: (1,-1) : 1,-1",
            "omega=[]; seg: (1,-1) : ; seg: closed :",
        ] {
            let p = Pgp::parse(text).unwrap();
            let c = Circuits::from_pgp(&p);
            let q = c.to_pgp().expect("round trip validates");
            assert_eq!(q.relabel_minimal(), p.relabel_minimal(), "{text}");
        }
    }

    #[test]
    fn walk_items_follow_the_strand() {
        let c = Circuits::from_pgp(&wrap2_neg());
        assert_eq!(c.k, 2);
        assert_eq!(c.walks.len(), 1);
        assert_eq!(
            c.walks[0],
            vec![
                Item::Passage { label: 1, over: true },
                Item::Passing { pos: 2, north: true },
                Item::Passage { label: 1, over: false },
                Item::Passing { pos: 1, north: true },
            ],
        );
        assert_eq!(c.omega, vec![-1]);
    }

    #[test]
    fn loci_point_back_at_items() {
        let c = Circuits::from_pgp(&wrap2_neg());
        let loci = c.passage_loci();
        assert_eq!(loci[0][0], (0, 0));
        assert_eq!(loci[0][1], (0, 2));
        let ploci = c.passing_loci();
        assert_eq!(ploci[0], (0, 3, true));
        assert_eq!(ploci[1], (0, 1, true));
    }

    #[test]
    fn edit_plan_rebuilds_in_slot_order() {
        let c = Circuits::from_pgp(&wrap2_neg());
        let mut plan = EditPlan::new(&c);
        plan.remove(0, 0);
        plan.insert_after(0, 2, vec![Item::Passage { label: 1, over: true }]);
        let out = plan.apply(&c);
        assert_eq!(
            out.walks[0],
            vec![
                Item::Passing { pos: 2, north: true },
                Item::Passage { label: 1, over: false },
                Item::Passage { label: 1, over: true },
                Item::Passing { pos: 1, north: true },
            ],
        );
    }
}
