//! Tangle detection and the moves that slide structure past a tangle.
//!
//! A tangle here is a set of crossings spanned by runs of consecutive
//! passage items, closed up so that every occurrence of a tangle crossing
//! lies inside it, together with any crossing-only walks trapped inside.
//! Its boundary is probed combinatorially: the four germ slots around
//! each crossing are laid out counter-clockwise, arcs between tangle items
//! are mated, and the orbit walking "rotate, then cross a mated arc"
//! from one dangling germ must visit exactly the four dangling germs.
//! That orbit is the cyclic order of the tangle's four ends, which is all
//! the rewrites need to reattach strands on the far side.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::catalog::{err, MoveError};
use crate::circuits::{in_slot, out_slot, Circuits, EditPlan, Item};

type Locus = (usize, usize);
/// A germ slot around a crossing: (label, CCW slot).
type Germ = (usize, usize);

/// Reads `t` consecutive passage items next to `(w, i)`, behind it when
/// `back`; fails on a passing item or when the run would wrap onto the
/// anchor itself.
fn run(c: &Circuits, w: usize, i: usize, back: bool, t: usize) -> Option<Vec<Locus>> {
    let len = c.walks[w].len();
    if t >= len {
        return None;
    }
    let mut out = Vec::with_capacity(t);
    for s in 1..=t {
        let j = if back {
            (i + len - s) % len
        } else {
            (i + s) % len
        };
        match c.walks[w][j] {
            Item::Passage { .. } => out.push((w, j)),
            Item::Passing { .. } => return None,
        }
    }
    Some(out)
}

/// Closes seed items into a full tangle: every occurrence of a tangle
/// crossing must lie in the seeds or on a crossing-only walk that joins
/// wholesale.  Any crossing in `forbid` aborts the closure.
fn close_tangle(
    c: &Circuits,
    seeds: Vec<Locus>,
    forbid: &[usize],
) -> Option<(BTreeSet<Locus>, BTreeSet<usize>)> {
    let loci = c.passage_loci();
    let mut items: BTreeSet<Locus> = BTreeSet::new();
    let mut crossings: BTreeSet<usize> = BTreeSet::new();
    for (w, i) in seeds {
        let Item::Passage { label, .. } = c.walks[w][i] else {
            return None;
        };
        if forbid.contains(&label) {
            return None;
        }
        items.insert((w, i));
        crossings.insert(label);
    }
    loop {
        let mut grew = false;
        for x in crossings.clone() {
            for &(w, i) in &loci[x - 1] {
                if items.contains(&(w, i)) {
                    continue;
                }
                // The stray occurrence can only be saved by absorbing its
                // whole walk as a trapped closed component.
                if c.walks[w].iter().any(|it| it.is_passing()) {
                    return None;
                }
                for (j, it) in c.walks[w].iter().enumerate() {
                    let Item::Passage { label, .. } = *it else {
                        unreachable!()
                    };
                    if forbid.contains(&label) {
                        return None;
                    }
                    items.insert((w, j));
                    crossings.insert(label);
                }
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    Some((items, crossings))
}

/// The germ a tangle item is entered (`inward`) or left through.
fn germ(c: &Circuits, (w, i): Locus, inward: bool) -> Germ {
    let Item::Passage { label, over } = c.walks[w][i] else {
        unreachable!()
    };
    let slot = if inward {
        in_slot(c.omega[label - 1], over)
    } else {
        out_slot(c.omega[label - 1], over)
    };
    (label, slot)
}

/// The (near, far) germs of a run: near faces the anchor, far faces away.
fn near_far(c: &Circuits, run: &[Locus], back: bool) -> (Germ, Germ) {
    let first = run[0];
    let last = *run.last().expect("runs are non-empty");
    if back {
        (germ(c, first, false), germ(c, last, true))
    } else {
        (germ(c, first, true), germ(c, last, false))
    }
}

struct Boundary {
    internal: HashMap<Germ, Germ>,
    dangling: HashSet<Germ>,
}

fn arcs(c: &Circuits, items: &BTreeSet<Locus>) -> Boundary {
    let mut internal = HashMap::new();
    let mut dangling = HashSet::new();
    for &(w, i) in items {
        let len = c.walks[w].len();
        let nxt = (w, (i + 1) % len);
        if items.contains(&nxt) {
            let a = germ(c, (w, i), false);
            let b = germ(c, nxt, true);
            internal.insert(a, b);
            internal.insert(b, a);
        } else {
            dangling.insert(germ(c, (w, i), false));
        }
        let prv = (w, (i + len - 1) % len);
        if !items.contains(&prv) {
            dangling.insert(germ(c, (w, i), true));
        }
    }
    Boundary { internal, dangling }
}

/// Walks the boundary face from `start`, returning the cyclic order of
/// the four ends; `None` unless the tangle has exactly four ends on one
/// face.
fn boundary_orbit(bd: &Boundary, start: Germ) -> Option<[Germ; 4]> {
    if bd.dangling.len() != 4 || !bd.dangling.contains(&start) {
        return None;
    }
    let ccw = |g: Germ| (g.0, (g.1 + 1) % 4);
    let next_dangling = |from: Germ| -> Option<Germ> {
        let mut d = ccw(from);
        for _ in 0..=bd.internal.len() {
            match bd.internal.get(&d) {
                Some(&m) => d = ccw(m),
                None => return Some(d),
            }
        }
        None
    };
    let mut orb = [start; 4];
    let mut cur = start;
    for slot in orb.iter_mut().skip(1) {
        cur = next_dangling(cur)?;
        if cur == start {
            return None;
        }
        *slot = cur;
    }
    if next_dangling(cur)? != start {
        return None;
    }
    Some(orb)
}

type TangleParts = (BTreeSet<Locus>, BTreeSet<usize>, [Germ; 4]);

fn tangle_with_boundary(
    c: &Circuits,
    seeds: Vec<Locus>,
    forbid: &[usize],
    start: Germ,
) -> Result<TangleParts, MoveError> {
    let Some((items, crossings)) = close_tangle(c, seeds, forbid) else {
        return err("runs do not close into a tangle");
    };
    let bd = arcs(c, &items);
    let Some(orb) = boundary_orbit(&bd, start) else {
        return err("tangle does not have four ends on one face");
    };
    Ok((items, crossings, orb))
}

/// Normalizes the end cycle so the two near ends come first, and returns
/// the two far corners in the order the slid strand will meet them last
/// to first: `(f1, f2)` with the strand re-crossing `f2`'s arc first.
fn far_corners(orb: &[Germ; 4], near1: Germ) -> Option<(Germ, Germ)> {
    if near1 == orb[1] {
        Some((orb[2], orb[3]))
    } else if near1 == orb[3] {
        Some((orb[2], orb[1]))
    } else {
        None
    }
}

/// Moves the item at `locus` across its run, to the far side.
fn relocate(plan: &mut EditPlan, locus: Locus, run: &[Locus], back: bool, item: Item) {
    plan.remove(locus.0, locus.1);
    let (fw, fi) = *run.last().expect("runs are non-empty");
    if back {
        plan.insert_before(fw, fi, vec![item]);
    } else {
        plan.insert_after(fw, fi, vec![item]);
    }
}

pub(crate) fn flype(
    c: &Circuits,
    crossing: usize,
    back: [bool; 2],
    t: [usize; 2],
) -> Result<Circuits, MoveError> {
    if crossing == 0 || crossing > c.crossings() {
        return err("no such crossing");
    }
    if t[0] == 0 || t[1] == 0 {
        return err("runs must be non-empty");
    }
    let anchors = c.passage_loci()[crossing - 1];
    let mut runs = Vec::new();
    for b in 0..2 {
        let (w, i) = anchors[b];
        let Some(r) = run(c, w, i, back[b], t[b]) else {
            return err("no run of that length here");
        };
        runs.push(r);
    }
    let seeds: Vec<Locus> = runs.iter().flatten().copied().collect();
    let (near0, far0) = near_far(c, &runs[0], back[0]);
    let (near1, far1) = near_far(c, &runs[1], back[1]);
    let (items, _crossings, orb) = tangle_with_boundary(c, seeds, &[crossing], near0)?;
    let Some((f1, f2)) = far_corners(&orb, near1) else {
        return err("crossing does not sit across one tangle corner");
    };
    if !(far0 == f1 && far1 == f2 || far0 == f2 && far1 == f1) {
        return err("runs do not pass through the tangle");
    }
    let mut plan = EditPlan::new(c);
    for b in 0..2 {
        // The strand that went over before the tangle goes under after
        // it (and vice versa); the handedness is unchanged.
        let Item::Passage { label, over } = c.walks[anchors[b].0][anchors[b].1] else {
            unreachable!("anchors are passages")
        };
        let item = Item::Passage { label, over: !over };
        relocate(&mut plan, anchors[b], &runs[b], back[b], item);
    }
    for &(w, i) in &items {
        let Item::Passage { label, over } = c.walks[w][i] else {
            unreachable!()
        };
        plan.replace(w, i, Item::Passage { label, over: !over });
    }
    Ok(plan.apply(c))
}

pub(crate) fn omega_bar3(
    c: &Circuits,
    (w, i): Locus,
    back: [bool; 2],
    t: [usize; 2],
    minus: bool,
) -> Result<Circuits, MoveError> {
    let Some(walk) = c.walks.get(w) else {
        return err("no such walk");
    };
    if walk.len() < 2 || i >= walk.len() {
        return err("site out of range");
    }
    if t[0] == 0 || t[1] == 0 {
        return err("runs must be non-empty");
    }
    let j = (i + 1) % walk.len();
    let (Item::Passage { label: a, over: sa }, Item::Passage { label: b, over: sb }) =
        (walk[i], walk[j])
    else {
        return err("site items are not passages");
    };
    if a == b || sa != sb {
        return err("items are not a one-sided pair of two crossings");
    }
    let loci = c.passage_loci();
    let pa = loci[a - 1][usize::from(sa)];
    let pb = loci[b - 1][usize::from(sb)];
    let Some(run0) = run(c, pa.0, pa.1, back[0], t[0]) else {
        return err("no run of that length at the first partner");
    };
    let Some(run1) = run(c, pb.0, pb.1, back[1], t[1]) else {
        return err("no run of that length at the second partner");
    };
    let seeds: Vec<Locus> = run0.iter().chain(run1.iter()).copied().collect();
    let (near0, far0) = near_far(c, &run0, back[0]);
    let (near1, far1) = near_far(c, &run1, back[1]);
    let (items, crossings, orb) = tangle_with_boundary(c, seeds, &[a, b], near0)?;
    if crossings.len() < 2 {
        return err("single crossings are handled by the triangle move");
    }
    let Some((f1, f2)) = far_corners(&orb, near1) else {
        return err("pair does not sit across one tangle corner");
    };
    if !(far0 == f1 && far1 == f2 || far0 == f2 && far1 == f1) {
        return err("partner runs do not pass through the tangle");
    }
    let before = (w, (i + walk.len() - 1) % walk.len());
    let after = (w, (j + 1) % walk.len());
    let reenters = items.contains(&before) || items.contains(&after);
    if reenters != minus {
        return err("wrong slide kind for this site");
    }
    let mut plan = EditPlan::new(c);
    if far0 == f1 {
        plan.replace(w, i, walk[j]);
        plan.replace(w, j, walk[i]);
    }
    relocate(&mut plan, pa, &run0, back[0], c.walks[pa.0][pa.1]);
    relocate(&mut plan, pb, &run1, back[1], c.walks[pb.0][pb.1]);
    Ok(plan.apply(c))
}

pub(crate) fn theta_bar1(c: &Circuits, p: usize, t: [usize; 2]) -> Result<Circuits, MoveError> {
    if p == 0 || p + 1 > c.k {
        return err("no passing pair at p, p+1");
    }
    if t[0] == 0 || t[1] == 0 {
        return err("runs must be non-empty");
    }
    let pl = c.passing_loci();
    let (w1, i1, n1) = pl[p - 1];
    let (w2, i2, n2) = pl[p];
    let (back0, back1) = (!n1, !n2);
    let Some(run0) = run(c, w1, i1, back0, t[0]) else {
        return err("no run of that length at p");
    };
    let Some(run1) = run(c, w2, i2, back1, t[1]) else {
        return err("no run of that length at p+1");
    };
    let seeds: Vec<Locus> = run0.iter().chain(run1.iter()).copied().collect();
    let (near0, far0) = near_far(c, &run0, back0);
    let (near1, far1) = near_far(c, &run1, back1);
    let (_items, crossings, orb) = tangle_with_boundary(c, seeds, &[], near0)?;
    if crossings.len() < 2 {
        return err("single crossings are handled by the curve slide");
    }
    // The curve fixes an absolute orientation here: the end at p+1 must
    // follow the end at p counter-clockwise around the tangle.
    if near1 != orb[1] {
        return err("tangle is not attached to the curve at p, p+1");
    }
    let (f1, f2) = (orb[2], orb[3]);
    if !(far0 == f1 && far1 == f2 || far0 == f2 && far1 == f1) {
        return err("runs do not pass through the tangle");
    }
    let q1 = if far0 == f1 { p + 1 } else { p };
    let q2 = p + p + 1 - q1;
    let mut plan = EditPlan::new(c);
    relocate(
        &mut plan,
        (w1, i1),
        &run0,
        back0,
        Item::Passing { pos: q1, north: n1 },
    );
    relocate(
        &mut plan,
        (w2, i2),
        &run1,
        back1,
        Item::Passing { pos: q2, north: n2 },
    );
    Ok(plan.apply(c))
}
