//! The move catalog and the pattern rewrites for the local moves.
//!
//! Every move is phrased as an edit of the strand walks: a pattern check
//! at the named site followed by an item-level rewrite.  Moves that build
//! structure (the `Add` kinds, `Delta`) are enumerated liberally and
//! filtered by re-validation; moves that remove or slide structure only
//! fire on an exact pattern match.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuits::{Circuits, EditPlan, Item};
use crate::{delta, tangle};

/// A diagram move together with the site it acts on.
///
/// Walks, item indices and gaps refer to the strand-walk view of the
/// *canonical* form of the diagram the move is applied to; gap `g` of a
/// walk is the slot before item `g` (an empty walk has the single gap 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    /// Insert a kink: a new crossing whose two passages sit side by side
    /// in gap `gap`, over-passage first when `over_first`, with handedness
    /// `handed`.
    Omega1Add {
        walk: usize,
        gap: usize,
        over_first: bool,
        handed: i8,
    },
    /// Remove the kink at crossing `crossing`.
    Omega1Remove { crossing: usize },
    /// Push one strand over another: the over-passage pair goes into gap
    /// `(walk1, gap1)`, the under pair into `(walk2, gap2)`.  When the two
    /// gaps coincide the strand is folded over itself instead.  `variant`
    /// packs the under-pair order and the two handedness bits; impossible
    /// combinations are rejected by re-validation.
    Omega2Add {
        walk1: usize,
        gap1: usize,
        walk2: usize,
        gap2: usize,
        variant: u8,
    },
    /// Remove the bigon formed by crossings `c1` and `c2`.
    Omega2Remove { c1: usize, c2: usize },
    /// Slide a strand across the crossing opposite it in a triangle; the
    /// three sites are adjacent item pairs `(walk, index)`, one per
    /// triangle side.
    Omega3 { sites: [(usize, usize); 3] },
    /// Slide a crossing adjacent to the cutting curve at positions
    /// `p, p+1` through the curve.
    Theta1Plus { p: usize },
    /// Push a strand across the cutting curve, creating passings
    /// `slot+1, slot+2`; the strand bites into gap `(walk, gap)` and the
    /// new pair points north-first when `rightward`.
    Theta2PlusAdd {
        walk: usize,
        gap: usize,
        slot: usize,
        rightward: bool,
    },
    /// Retract the strand that crosses the curve at positions `p, p+1`
    /// and nowhere in between.
    Theta2PlusRemove { p: usize },
    /// Twist the solid torus once; `dir` is the handedness of the
    /// inserted full twist.  Cancels a literal opposite twist when one is
    /// present next to the cutting curve.
    Delta { dir: i8 },
    /// Rotate the diagram by π.
    RotateR,
    /// Reflect the diagram across the annulus plane.
    ReflectQ,
    /// Pass crossing `crossing` through the tangle adjacent to it: the
    /// runs of `t1` and `t2` passage items next to its over- and
    /// under-passage (behind them when `back1`/`back2`) span the tangle.
    Flype {
        crossing: usize,
        back1: bool,
        back2: bool,
        t1: usize,
        t2: usize,
    },
    /// Slide a two-passage strand piece across the tangle it passes; the
    /// pair sits at items `index, index+1` of `walk` and the partner runs
    /// are read like a flype's.
    OmegaBar3 {
        walk: usize,
        index: usize,
        back1: bool,
        back2: bool,
        t1: usize,
        t2: usize,
    },
    /// As `OmegaBar3`, for the variant whose sliding ends re-enter the
    /// tangle.
    OmegaBarMinus3 {
        walk: usize,
        index: usize,
        back1: bool,
        back2: bool,
        t1: usize,
        t2: usize,
    },
    /// Slide a tangle attached to the cutting curve at positions `p, p+1`
    /// through the curve; `t1`, `t2` are the run lengths next to the two
    /// passings.
    ThetaBar1 { p: usize, t1: usize, t2: usize },
}

impl Move {
    /// The move kind's name.
    pub fn kind(&self) -> &'static str {
        match self {
            Move::Omega1Add { .. } => "Omega1Add",
            Move::Omega1Remove { .. } => "Omega1Remove",
            Move::Omega2Add { .. } => "Omega2Add",
            Move::Omega2Remove { .. } => "Omega2Remove",
            Move::Omega3 { .. } => "Omega3",
            Move::Theta1Plus { .. } => "Theta1Plus",
            Move::Theta2PlusAdd { .. } => "Theta2PlusAdd",
            Move::Theta2PlusRemove { .. } => "Theta2PlusRemove",
            Move::Delta { .. } => "Delta",
            Move::RotateR => "RotateR",
            Move::ReflectQ => "ReflectQ",
            Move::Flype { .. } => "Flype",
            Move::OmegaBar3 { .. } => "OmegaBar3",
            Move::OmegaBarMinus3 { .. } => "OmegaBarMinus3",
            Move::ThetaBar1 { .. } => "ThetaBar1",
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn fb(back: bool) -> char {
            if back {
                'b'
            } else {
                'f'
            }
        }
        match self {
            Move::Omega1Add {
                walk,
                gap,
                over_first,
                handed,
            } => write!(
                f,
                "Omega1Add @ w{walk}.g{gap} {}{}",
                if *over_first { 'o' } else { 'u' },
                if *handed > 0 { '+' } else { '-' },
            ),
            Move::Omega1Remove { crossing } => write!(f, "Omega1Remove @ x{crossing}"),
            Move::Omega2Add {
                walk1,
                gap1,
                walk2,
                gap2,
                variant,
            } => write!(f, "Omega2Add @ w{walk1}.g{gap1} w{walk2}.g{gap2} v{variant}"),
            Move::Omega2Remove { c1, c2 } => write!(f, "Omega2Remove @ x{c1} x{c2}"),
            Move::Omega3 { sites } => write!(
                f,
                "Omega3 @ w{}.i{} w{}.i{} w{}.i{}",
                sites[0].0, sites[0].1, sites[1].0, sites[1].1, sites[2].0, sites[2].1
            ),
            Move::Theta1Plus { p } => write!(f, "Theta1Plus @ p{p}"),
            Move::Theta2PlusAdd {
                walk,
                gap,
                slot,
                rightward,
            } => write!(
                f,
                "Theta2PlusAdd @ w{walk}.g{gap} s{slot} {}",
                if *rightward { 'r' } else { 'l' },
            ),
            Move::Theta2PlusRemove { p } => write!(f, "Theta2PlusRemove @ p{p}"),
            Move::Delta { dir } => write!(f, "Delta @ {}", if *dir > 0 { '+' } else { '-' }),
            Move::RotateR => write!(f, "RotateR"),
            Move::ReflectQ => write!(f, "ReflectQ"),
            Move::Flype {
                crossing,
                back1,
                back2,
                t1,
                t2,
            } => write!(
                f,
                "Flype @ x{crossing} {}{t1} {}{t2}",
                fb(*back1),
                fb(*back2)
            ),
            Move::OmegaBar3 {
                walk,
                index,
                back1,
                back2,
                t1,
                t2,
            } => write!(
                f,
                "OmegaBar3 @ w{walk}.i{index} {}{t1} {}{t2}",
                fb(*back1),
                fb(*back2)
            ),
            Move::OmegaBarMinus3 {
                walk,
                index,
                back1,
                back2,
                t1,
                t2,
            } => write!(
                f,
                "OmegaBarMinus3 @ w{walk}.i{index} {}{t1} {}{t2}",
                fb(*back1),
                fb(*back2)
            ),
            Move::ThetaBar1 { p, t1, t2 } => write!(f, "ThetaBar1 @ p{p} t{t1} t{t2}"),
        }
    }
}

/// Failure to apply a move.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    /// The move's pattern is absent at the given site, or the rewrite
    /// does not produce a valid diagram there.
    #[error("move not applicable: {0}")]
    NotApplicable(String),
}

pub(crate) fn err<T>(msg: impl Into<String>) -> Result<T, MoveError> {
    Err(MoveError::NotApplicable(msg.into()))
}

/// Applies the move's rewrite to the walk view.  The result still has to
/// be converted back and validated by the caller.
pub(crate) fn rewrite(c: &Circuits, mv: &Move) -> Result<Circuits, MoveError> {
    match mv {
        Move::Omega1Add {
            walk,
            gap,
            over_first,
            handed,
        } => omega1_add(c, *walk, *gap, *over_first, *handed),
        Move::Omega1Remove { crossing } => omega1_remove(c, *crossing),
        Move::Omega2Add {
            walk1,
            gap1,
            walk2,
            gap2,
            variant,
        } => omega2_add(c, (*walk1, *gap1), (*walk2, *gap2), *variant),
        Move::Omega2Remove { c1, c2 } => omega2_remove(c, *c1, *c2),
        Move::Omega3 { sites } => omega3(c, sites),
        Move::Theta1Plus { p } => theta1_plus(c, *p),
        Move::Theta2PlusAdd {
            walk,
            gap,
            slot,
            rightward,
        } => theta2_add(c, *walk, *gap, *slot, *rightward),
        Move::Theta2PlusRemove { p } => theta2_remove(c, *p),
        Move::Delta { dir } => delta::delta(c, *dir),
        Move::RotateR => Ok(rotate_r(c)),
        Move::ReflectQ => Ok(reflect_q(c)),
        Move::Flype {
            crossing,
            back1,
            back2,
            t1,
            t2,
        } => tangle::flype(c, *crossing, [*back1, *back2], [*t1, *t2]),
        Move::OmegaBar3 {
            walk,
            index,
            back1,
            back2,
            t1,
            t2,
        } => tangle::omega_bar3(c, (*walk, *index), [*back1, *back2], [*t1, *t2], false),
        Move::OmegaBarMinus3 {
            walk,
            index,
            back1,
            back2,
            t1,
            t2,
        } => tangle::omega_bar3(c, (*walk, *index), [*back1, *back2], [*t1, *t2], true),
        Move::ThetaBar1 { p, t1, t2 } => tangle::theta_bar1(c, *p, [*t1, *t2]),
    }
}

/// Checks a gap reference and reports whether the walk is empty.
fn check_gap(c: &Circuits, walk: usize, gap: usize) -> Result<bool, MoveError> {
    let Some(w) = c.walks.get(walk) else {
        return err("no such walk");
    };
    if w.is_empty() {
        if gap != 0 {
            return err("an empty walk has only gap 0");
        }
        Ok(true)
    } else if gap < w.len() {
        Ok(false)
    } else {
        err("gap out of range")
    }
}

fn omega1_add(
    c: &Circuits,
    walk: usize,
    gap: usize,
    over_first: bool,
    handed: i8,
) -> Result<Circuits, MoveError> {
    if handed != 1 && handed != -1 {
        return err("handedness must be +1 or -1");
    }
    check_gap(c, walk, gap)?;
    let mut out = c.clone();
    let label = out.crossings() + 1;
    out.omega.push(handed);
    out.walks[walk].splice(
        gap..gap,
        [
            Item::Passage {
                label,
                over: over_first,
            },
            Item::Passage {
                label,
                over: !over_first,
            },
        ],
    );
    Ok(out)
}

fn omega1_remove(c: &Circuits, crossing: usize) -> Result<Circuits, MoveError> {
    if crossing == 0 || crossing > c.crossings() {
        return err("no such crossing");
    }
    let [(wo, io), (wu, iu)] = c.passage_loci()[crossing - 1];
    if wo != wu {
        return err("passages on different walks");
    }
    let len = c.walks[wo].len();
    if (io + 1) % len != iu && (iu + 1) % len != io {
        return err("passages not adjacent");
    }
    let mut out = c.clone();
    out.walks[wo] = out.walks[wo]
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != io && *i != iu)
        .map(|(_, it)| *it)
        .collect();
    out.drop_crossings(&[crossing]);
    Ok(out)
}

fn omega2_add(
    c: &Circuits,
    (walk1, gap1): (usize, usize),
    (walk2, gap2): (usize, usize),
    variant: u8,
) -> Result<Circuits, MoveError> {
    if variant >= 8 {
        return err("variant out of range");
    }
    let empty1 = check_gap(c, walk1, gap1)?;
    let empty2 = check_gap(c, walk2, gap2)?;
    let n = c.crossings();
    let (cl, dl) = (n + 1, n + 2);
    let wc: i8 = if variant & 2 != 0 { 1 } else { -1 };
    let wd: i8 = if variant & 4 != 0 { 1 } else { -1 };
    let x = |label, over| Item::Passage { label, over };

    let mut out = if (walk1, gap1) == (walk2, gap2) {
        // Fold the strand over itself in place.
        let s = variant & 1 == 0;
        let mut out = c.clone();
        out.walks[walk1].splice(gap1..gap1, [x(cl, s), x(dl, s), x(dl, !s), x(cl, !s)]);
        out
    } else {
        let under = if variant & 1 == 0 {
            [x(cl, false), x(dl, false)]
        } else {
            [x(dl, false), x(cl, false)]
        };
        let mut plan = EditPlan::new(c);
        plan.insert_gap(walk1, gap1, vec![x(cl, true), x(dl, true)], empty1);
        plan.insert_gap(walk2, gap2, under.to_vec(), empty2);
        plan.apply(c)
    };
    out.omega.push(wc);
    out.omega.push(wd);
    Ok(out)
}

fn omega2_remove(c: &Circuits, c1: usize, c2: usize) -> Result<Circuits, MoveError> {
    if c1 == 0 || c2 == 0 || c1 > c.crossings() || c2 > c.crossings() || c1 == c2 {
        return err("bad crossing pair");
    }
    let loci = c.passage_loci();
    let adj = |(wa, ia): (usize, usize), (wb, ib): (usize, usize)| {
        let len = c.walks[wa].len();
        wa == wb && ((ia + 1) % len == ib || (ib + 1) % len == ia)
    };
    if !adj(loci[c1 - 1][0], loci[c2 - 1][0]) {
        return err("over-passages not adjacent");
    }
    if !adj(loci[c1 - 1][1], loci[c2 - 1][1]) {
        return err("under-passages not adjacent");
    }
    let mut plan = EditPlan::new(c);
    for label in [c1, c2] {
        for (w, i) in loci[label - 1] {
            plan.remove(w, i);
        }
    }
    let mut out = plan.apply(c);
    out.drop_crossings(&[c1, c2]);
    Ok(out)
}

fn omega3(c: &Circuits, sites: &[(usize, usize); 3]) -> Result<Circuits, MoveError> {
    let mut loci = Vec::new();
    let mut pairs = Vec::new();
    for &(w, i) in sites {
        let Some(walk) = c.walks.get(w) else {
            return err("no such walk");
        };
        if i >= walk.len() || walk.len() < 2 {
            return err("site out of range");
        }
        let j = (i + 1) % walk.len();
        let (Item::Passage { label: la, over: oa }, Item::Passage { label: lb, over: ob }) =
            (walk[i], walk[j])
        else {
            return err("site items are not passages");
        };
        if la == lb {
            return err("pair repeats a crossing");
        }
        loci.push((w, i));
        loci.push((w, j));
        pairs.push(((la, oa), (lb, ob)));
    }
    loci.sort_unstable();
    loci.dedup();
    if loci.len() != 6 {
        return err("sites overlap");
    }
    let mut counts = std::collections::BTreeMap::new();
    for &((la, _), (lb, _)) in &pairs {
        *counts.entry(la).or_insert(0) += 1;
        *counts.entry(lb).or_insert(0) += 1;
    }
    if counts.len() != 3 || counts.values().any(|&c| c != 2) {
        return err("sites do not span a triangle");
    }
    if !pairs.iter().any(|&((_, oa), (_, ob))| oa == ob) {
        return err("no strand passes the opposite crossing on one side");
    }
    let mut plan = EditPlan::new(c);
    for &(w, i) in sites {
        let walk = &c.walks[w];
        let j = (i + 1) % walk.len();
        plan.replace(w, i, walk[j]);
        plan.replace(w, j, walk[i]);
    }
    Ok(plan.apply(c))
}

fn theta1_plus(c: &Circuits, p: usize) -> Result<Circuits, MoveError> {
    if p == 0 || p + 1 > c.k {
        return err("no passing pair at p, p+1");
    }
    let pl = c.passing_loci();
    let sides = [pl[p - 1], pl[p]];
    let mut matched = Vec::new();
    for (which, &(w, i, north)) in sides.iter().enumerate() {
        let len = c.walks[w].len();
        let a = if north { (i + 1) % len } else { (i + len - 1) % len };
        let Item::Passage { label, over } = c.walks[w][a] else {
            return err("no crossing next to the curve here");
        };
        matched.push((which, w, i, a, north, label, over));
    }
    let (l1, o1) = (matched[0].5, matched[0].6);
    let (l2, o2) = (matched[1].5, matched[1].6);
    if l1 != l2 || o1 == o2 {
        return err("the two positions do not flank one crossing");
    }
    let mut plan = EditPlan::new(c);
    for &(which, w, i, a, north, _, _) in &matched {
        let other = if which == 0 { p + 1 } else { p };
        plan.replace(w, i, c.walks[w][a]);
        plan.replace(w, a, Item::Passing { pos: other, north });
    }
    Ok(plan.apply(c))
}

fn theta2_add(
    c: &Circuits,
    walk: usize,
    gap: usize,
    slot: usize,
    rightward: bool,
) -> Result<Circuits, MoveError> {
    check_gap(c, walk, gap)?;
    if slot > c.k {
        return err("slot out of range");
    }
    let mut out = c.clone();
    out.shift_passings_up(slot);
    let items = if rightward {
        [
            Item::Passing {
                pos: slot + 1,
                north: true,
            },
            Item::Passing {
                pos: slot + 2,
                north: false,
            },
        ]
    } else {
        [
            Item::Passing {
                pos: slot + 2,
                north: true,
            },
            Item::Passing {
                pos: slot + 1,
                north: false,
            },
        ]
    };
    out.walks[walk].splice(gap..gap, items);
    Ok(out)
}

fn theta2_remove(c: &Circuits, p: usize) -> Result<Circuits, MoveError> {
    if p == 0 || p + 1 > c.k {
        return err("no passing pair at p, p+1");
    }
    let pl = c.passing_loci();
    let (w1, i1, n1) = pl[p - 1];
    let (w2, i2, n2) = pl[p];
    if w1 != w2 {
        return err("passings on different walks");
    }
    let len = c.walks[w1].len();
    let cup_lr = n1 && !n2 && (i1 + 1) % len == i2;
    let cup_rl = n2 && !n1 && (i2 + 1) % len == i1;
    if !cup_lr && !cup_rl {
        return err("positions p, p+1 are not a retractable bite");
    }
    let mut out = c.clone();
    out.walks[w1] = out.walks[w1]
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != i1 && *i != i2)
        .map(|(_, it)| *it)
        .collect();
    out.drop_passings(p);
    Ok(out)
}

fn rotate_r(c: &Circuits) -> Circuits {
    let mut out = c.clone();
    for walk in &mut out.walks {
        for item in walk.iter_mut() {
            if let Item::Passing { pos, north } = item {
                *pos = c.k + 1 - *pos;
                *north = !*north;
            }
        }
    }
    out
}

fn reflect_q(c: &Circuits) -> Circuits {
    let mut out = c.clone();
    for walk in &mut out.walks {
        for item in walk.iter_mut() {
            if let Item::Passing { north, .. } = item {
                *north = !*north;
            }
        }
    }
    for w in &mut out.omega {
        *w = -*w;
    }
    out
}
